//! Pointed finite groupoids as a displayed bicategory over a groupoid
//! fragment: objects over G are objects of G, 1-cells over F from x to y are
//! isomorphisms F(x) ≅ y, 2-cells over n are the equalities n(x) · q₂ = q₁.

use super::FragmentBicat;
use crate::budget::Budget;
use crate::cell::{glue, CellId};
use crate::display::{
    fill_prop_two_cell_tables, DispBicatPresentation, DispObj, DispOne, DispTwo,
};
use crate::error::{KernelError, Result};
use std::collections::BTreeMap;

/// Builds the pointed-groupoid displayed bicategory. Every category in the
/// fragment must be a groupoid.
pub fn pointed_groupoid_disp(
    frag: &FragmentBicat,
    budget: &Budget,
) -> Result<DispBicatPresentation> {
    for (name, c) in &frag.categories {
        if !c.is_groupoid() {
            return Err(KernelError::NotAGroupoid(name.clone()));
        }
    }
    let p = &frag.presentation;
    let mut d = DispBicatPresentation {
        base: p.clone(),
        ..Default::default()
    };
    for (name, c) in &frag.categories {
        for x in &c.objects {
            d.d0.insert(glue(&[x, name]), DispObj { over: name.clone() });
        }
    }
    // Displayed 1-cells over F from x̄ to ȳ: isomorphisms F(x) → y; token
    // carries the morphism and the fiber key.
    let mut q_of: BTreeMap<CellId, CellId> = BTreeMap::new();
    for (ftok, (aname, bname, f)) in &frag.functors {
        let ca = &frag.categories[aname];
        let cb = &frag.categories[bname];
        for x in &ca.objects {
            for y in &cb.objects {
                budget.charge("pgrpd", 1)?;
                let fx = f.ob_at(x)?;
                for q in cb.hom(fx, y) {
                    // Groupoid: every morphism is invertible.
                    let sx = glue(&[x, aname]);
                    let sy = glue(&[y, bname]);
                    let tok = glue(&[&q, ftok, &sx, &sy]);
                    q_of.insert(tok.clone(), q.clone());
                    d.d1.insert(
                        tok,
                        DispOne {
                            over: ftok.clone(),
                            src: sx,
                            tgt: sy,
                        },
                    );
                }
            }
        }
    }
    // Displayed 2-cells over n : F ⇒ G from q₁ to q₂: n(x) · q₂ = q₁.
    let d1list: Vec<_> = d.d1.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
    for (ntok, nat) in &frag.nats {
        let shape = p.two_cell(ntok)?.clone();
        let (_aname, bname, _) = frag.functors[&shape.src].clone();
        let cb = &frag.categories[&bname];
        for (q1, q1c) in &d1list {
            if q1c.over != shape.src {
                continue;
            }
            for (q2, q2c) in &d1list {
                if q2c.over != shape.tgt || q2c.src != q1c.src || q2c.tgt != q1c.tgt {
                    continue;
                }
                budget.charge("pgrpd", 1)?;
                let x = crate::cell::split_composed(crate::cell::GLUE_SEP, q1c.src.as_str())[0]
                    .clone();
                let lhs = cb.comp(nat.at(&x)?, &q_of[q2])?.clone();
                if lhs == q_of[q1] {
                    let tok = glue(&[ntok, q1, q2]);
                    d.d2.insert(
                        tok,
                        DispTwo {
                            over: ntok.clone(),
                            src: q1.clone(),
                            tgt: q2.clone(),
                        },
                    );
                }
            }
        }
    }
    // Identity: id_x over the identity functor; composition: F'(q) · q'.
    for (sx, xc) in &d.d0.clone() {
        let x = crate::cell::split_composed(crate::cell::GLUE_SEP, sx.as_str())[0].clone();
        let c = &frag.categories[&xc.over];
        let idq = c.id_of(&x)?.clone();
        let idf = p.id1(&xc.over)?.clone();
        let tok = glue(&[&idq, &idf, sx, sx]);
        if !d.d1.contains_key(&tok) {
            return Err(KernelError::ConstructionFailed(format!(
                "pgrpd: identity iso missing at {sx}"
            )));
        }
        d.disp_id1.insert(sx.clone(), tok);
    }
    for (t1, c1) in &d1list {
        for (t2, c2) in &d1list {
            if c1.tgt != c2.src {
                continue;
            }
            let (_a, _b, _f) = frag.functors[&c1.over].clone();
            let (b2name, cname, f2) = frag.functors[&c2.over].clone();
            if p
                .one_cells
                .get(&c1.over)
                .zip(p.one_cells.get(&c2.over))
                .map(|(x, y)| x.tgt != y.src)
                .unwrap_or(true)
            {
                continue;
            }
            budget.charge("pgrpd", 1)?;
            let _ = b2name;
            let cc = &frag.categories[&cname];
            let q = f2.mor_at(&q_of[t1])?.clone();
            let comp = cc.comp(&q, &q_of[t2])?.clone();
            let base = p.comp1(&c1.over, &c2.over)?.clone();
            let tok = glue(&[&comp, &base, &c1.src, &c2.tgt]);
            if !d.d1.contains_key(&tok) {
                return Err(KernelError::ConstructionFailed(format!(
                    "pgrpd: composite iso missing for ({t1}, {t2})"
                )));
            }
            d.disp_comp1.insert((t1.clone(), t2.clone()), tok);
        }
    }
    fill_prop_two_cell_tables(&mut d)?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::display::{check_disp_laws, check_disp_univalence};
    use crate::fincat::{fincat_fragment_bicat, FiniteCategory};
    use crate::psfun::PseudofunctorData;

    fn b() -> Budget {
        Budget::default()
    }

    fn grpd_fragment() -> FragmentBicat {
        fincat_fragment_bicat(
            &[
                (CellId::from("T"), FiniteCategory::terminal()),
                (CellId::from("D"), FiniteCategory::discrete(2)),
            ],
            &b(),
        )
        .unwrap()
    }

    #[test]
    fn pgrpd_fibers_and_laws() {
        let frag = grpd_fragment();
        let d = pointed_groupoid_disp(&frag, &b()).unwrap();
        assert!(check_disp_laws(&d, &b()).unwrap().passed());
        assert_eq!(d.d0_fiber(&CellId::from("T")).len(), 1);
        assert_eq!(d.d0_fiber(&CellId::from("D")).len(), 2);
    }

    #[test]
    fn pgrpd_rejects_non_groupoid() {
        let frag = fincat_fragment_bicat(
            &[(CellId::from("P"), FiniteCategory::poset2())],
            &b(),
        )
        .unwrap();
        assert!(matches!(
            pointed_groupoid_disp(&frag, &b()),
            Err(KernelError::NotAGroupoid(_))
        ));
    }

    #[test]
    fn pgrpd_disp_univalent_iff_gaunt() {
        // Both members gaunt: displayed univalence passes.
        let frag = grpd_fragment();
        let d = pointed_groupoid_disp(&frag, &b()).unwrap();
        assert!(check_disp_univalence(&d, &b()).unwrap().passed());

        // A non-gaunt groupoid member breaks displayed global univalence:
        // distinct points joined by an isomorphism lift along id₁.
        let frag2 = fincat_fragment_bicat(
            &[(CellId::from("K"), FiniteCategory::chaotic(2))],
            &b(),
        )
        .unwrap();
        let d2 = pointed_groupoid_disp(&frag2, &b()).unwrap();
        let r = check_disp_univalence(&d2, &b()).unwrap();
        assert!(!r.global.passed());
    }

    #[test]
    fn pgrpd_matches_constant_terminal_algebras() {
        // The pointed-groupoid fibers agree with the algebra fibers for the
        // constant pseudofunctor at the terminal groupoid.
        let frag = grpd_fragment();
        let p = &frag.presentation;
        let t_tok = CellId::from("T");
        // Constant pseudofunctor at T.
        let mut f = PseudofunctorData::default();
        let t_id1 = p.id1(&t_tok).unwrap().clone();
        let t_id2 = p.id2(&t_id1).unwrap().clone();
        for a in &p.objects {
            f.f0.insert(a.clone(), t_tok.clone());
            f.identitor.insert(a.clone(), t_id2.clone());
        }
        for k in p.one_cells.keys() {
            f.f1.insert(k.clone(), t_id1.clone());
        }
        for t in p.two_cells.keys() {
            f.f2.insert(t.clone(), t_id2.clone());
        }
        for (k, l) in p.composable_pairs() {
            f.compositor.insert((k, l), t_id2.clone());
        }
        assert!(crate::psfun::check_psfunctor(p, p, &f).unwrap().passed());
        let alg = crate::algebra::alg_disp(p, &f, &b()).unwrap();
        let pg = pointed_groupoid_disp(&frag, &b()).unwrap();
        for a in &p.objects {
            assert_eq!(
                alg.d0_fiber(a).len(),
                pg.d0_fiber(a).len(),
                "object fiber mismatch at {a}"
            );
        }
        // 1-cell fibers also biject.
        for (k, kc) in &p.one_cells {
            for xa in pg.d0_fiber(&kc.src) {
                for xb in pg.d0_fiber(&kc.tgt) {
                    let pg_n = pg.d1_fiber(k, &xa, &xb).len();
                    // Match the corresponding algebra fiber by position.
                    let alg_src = alg.d0_fiber(&kc.src);
                    let alg_tgt = alg.d0_fiber(&kc.tgt);
                    let ia = pg.d0_fiber(&kc.src).iter().position(|t| t == &xa).unwrap();
                    let ib = pg.d0_fiber(&kc.tgt).iter().position(|t| t == &xb).unwrap();
                    let alg_n = alg.d1_fiber(k, &alg_src[ia], &alg_tgt[ib]).len();
                    assert_eq!(pg_n, alg_n, "1-cell fiber mismatch over {k}");
                }
            }
        }
    }
}
