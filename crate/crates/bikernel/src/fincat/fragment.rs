//! The finite-fragment bicategory of categories: objects are the given
//! finite categories, 1-cells all functors among them, 2-cells all natural
//! transformations. Functor composition is strictly associative and unital
//! on tables, so the fragment is 1-strict and its structural 2-cells are
//! identities.

use super::{enumerate_functors, enumerate_nat_trans, FiniteCategory, Functor, NatTrans};
use crate::bicat::{BicatPresentation, OneCell, TwoCell};
use crate::budget::Budget;
use crate::cell::{glue, CellId};
use crate::error::{KernelError, Result};
use std::collections::BTreeMap;

/// The fragment presentation plus the semantic side tables identifying its
/// 1-cells with functors and its 2-cells with natural transformations.
#[derive(Debug, Clone)]
pub struct FragmentBicat {
    pub presentation: BicatPresentation,
    pub categories: BTreeMap<CellId, FiniteCategory>,
    /// 1-cell token → (source category, target category, functor)
    pub functors: BTreeMap<CellId, (CellId, CellId, Functor)>,
    /// 2-cell token → natural transformation
    pub nats: BTreeMap<CellId, NatTrans>,
    functor_index: BTreeMap<(CellId, CellId, Functor), CellId>,
    nat_index: BTreeMap<(CellId, CellId, NatTrans), CellId>,
}

impl FragmentBicat {
    pub fn functor_token(&self, src: &CellId, tgt: &CellId, f: &Functor) -> Result<&CellId> {
        self.functor_index
            .get(&(src.clone(), tgt.clone(), f.clone()))
            .ok_or_else(|| KernelError::ConstructionFailed(format!(
                "fragment: functor value not enumerated between {src} and {tgt}"
            )))
    }

    pub fn nat_token(&self, f_tok: &CellId, g_tok: &CellId, n: &NatTrans) -> Result<&CellId> {
        self.nat_index
            .get(&(f_tok.clone(), g_tok.clone(), n.clone()))
            .ok_or_else(|| KernelError::ConstructionFailed(format!(
                "fragment: natural transformation value not enumerated between {f_tok} and {g_tok}"
            )))
    }
}

/// Builds the fragment over a list of named finite categories.
pub fn fincat_fragment_bicat(
    cats: &[(CellId, FiniteCategory)],
    budget: &Budget,
) -> Result<FragmentBicat> {
    let mut p = BicatPresentation::default();
    let mut categories = BTreeMap::new();
    for (name, c) in cats {
        let report = c.validate();
        if !report.passed() {
            return Err(KernelError::PreconditionFailed(format!(
                "fragment: category {name} fails validation"
            )));
        }
        if categories.insert(name.clone(), c.clone()).is_some() {
            return Err(KernelError::DuplicateId {
                tier: "fragment categories".into(),
                token: name.clone(),
            });
        }
        p.objects.insert(name.clone());
    }

    let mut functors = BTreeMap::new();
    let mut functor_index = BTreeMap::new();
    for (a, ca) in &categories {
        for (b, cb) in &categories {
            let fs = enumerate_functors(ca, cb);
            budget.charge("fragment:functors", fs.len() as u64)?;
            for (i, f) in fs.into_iter().enumerate() {
                let tok = glue(&[a, b, &CellId::from(format!("{i}"))]);
                p.one_cells.insert(
                    tok.clone(),
                    OneCell {
                        src: a.clone(),
                        tgt: b.clone(),
                    },
                );
                functor_index.insert((a.clone(), b.clone(), f.clone()), tok.clone());
                functors.insert(tok, (a.clone(), b.clone(), f));
            }
        }
    }

    let mut nats = BTreeMap::new();
    let mut nat_index = BTreeMap::new();
    let one_list: Vec<_> = functors.iter().map(|(t, v)| (t.clone(), v.clone())).collect();
    for (ftok, (a, b, f)) in &one_list {
        for (gtok, (a2, b2, g)) in &one_list {
            if a != a2 || b != b2 {
                continue;
            }
            let ns = enumerate_nat_trans(&categories[a], &categories[b], f, g);
            budget.charge("fragment:nats", ns.len() as u64)?;
            for (j, n) in ns.into_iter().enumerate() {
                let tok = glue(&[ftok, gtok, &CellId::from(format!("{j}"))]);
                p.two_cells.insert(
                    tok.clone(),
                    TwoCell {
                        src: ftok.clone(),
                        tgt: gtok.clone(),
                    },
                );
                nat_index.insert((ftok.clone(), gtok.clone(), n.clone()), tok.clone());
                nats.insert(tok, n);
            }
        }
    }

    let frag = FragmentBicat {
        presentation: p,
        categories,
        functors,
        nats,
        functor_index,
        nat_index,
    };
    fill_fragment_tables(frag, budget)
}

fn fill_fragment_tables(mut frag: FragmentBicat, budget: &Budget) -> Result<FragmentBicat> {
    let one_list: Vec<_> = frag
        .functors
        .iter()
        .map(|(t, v)| (t.clone(), v.clone()))
        .collect();
    let two_list: Vec<_> = frag
        .presentation
        .two_cells
        .iter()
        .map(|(t, c)| (t.clone(), c.clone()))
        .collect();

    for (name, c) in &frag.categories {
        let tok = frag
            .functor_index
            .get(&(name.clone(), name.clone(), Functor::identity(c)))
            .cloned()
            .ok_or_else(|| KernelError::ConstructionFailed(format!(
                "fragment: identity functor on {name} not enumerated"
            )))?;
        frag.presentation.id1.insert(name.clone(), tok);
    }
    let mut comp1 = BTreeMap::new();
    for (ftok, (a, b, f)) in &one_list {
        for (gtok, (b2, c, g)) in &one_list {
            if b != b2 {
                continue;
            }
            budget.charge("fragment:comp1", 1)?;
            let fg = f.compose(g)?;
            let tok = frag.functor_token(a, c, &fg)?.clone();
            comp1.insert((ftok.clone(), gtok.clone()), tok);
        }
    }
    frag.presentation.comp1 = comp1;

    let mut id2 = BTreeMap::new();
    for (ftok, (a, b, f)) in &one_list {
        let n = NatTrans::identity(&frag.categories[a], f, &frag.categories[b])?;
        id2.insert(ftok.clone(), frag.nat_token(ftok, ftok, &n)?.clone());
    }
    frag.presentation.id2 = id2;

    let mut vcomp = BTreeMap::new();
    for (t1, c1) in &two_list {
        for (t2, c2) in &two_list {
            if c1.tgt != c2.src {
                continue;
            }
            budget.charge("fragment:vcomp", 1)?;
            let (_, b, _) = &frag.functors[&c1.src];
            let n = frag.nats[t1].vcomp(&frag.nats[t2], &frag.categories[b])?;
            vcomp.insert(
                (t1.clone(), t2.clone()),
                frag.nat_token(&c1.src, &c2.tgt, &n)?.clone(),
            );
        }
    }
    frag.presentation.vcomp = vcomp;

    // Whiskering: (F ◁ θ)_x = θ_{F x} and (θ ▷ H)_x = H(θ_x).
    let mut lwhisker = BTreeMap::new();
    for (ftok, (a, b, f)) in &one_list {
        for (ttok, tc) in &two_list {
            let (gsrc, _, _) = &frag.functors[&tc.src];
            if gsrc != b {
                continue;
            }
            budget.charge("fragment:lwhisker", 1)?;
            let theta = &frag.nats[ttok];
            let components = frag.categories[a]
                .objects
                .iter()
                .map(|x| -> Result<(CellId, CellId)> {
                    let fx = f.ob_at(x)?;
                    Ok((x.clone(), theta.at(fx)?.clone()))
                })
                .collect::<Result<_>>()?;
            let n = NatTrans { components };
            let src_tok = frag.presentation.comp1[&(ftok.clone(), tc.src.clone())].clone();
            let tgt_tok = frag.presentation.comp1[&(ftok.clone(), tc.tgt.clone())].clone();
            lwhisker.insert(
                (ftok.clone(), ttok.clone()),
                frag.nat_token(&src_tok, &tgt_tok, &n)?.clone(),
            );
        }
    }
    frag.presentation.lwhisker = lwhisker;

    let mut rwhisker = BTreeMap::new();
    for (ttok, tc) in &two_list {
        let (a, b, _) = frag.functors[&tc.src].clone();
        for (htok, (b2, _c, h)) in &one_list {
            if &b != b2 {
                continue;
            }
            budget.charge("fragment:rwhisker", 1)?;
            let theta = &frag.nats[ttok];
            let components = frag.categories[&a]
                .objects
                .iter()
                .map(|x| -> Result<(CellId, CellId)> {
                    Ok((x.clone(), h.mor_at(theta.at(x)?)?.clone()))
                })
                .collect::<Result<_>>()?;
            let n = NatTrans { components };
            let src_tok = frag.presentation.comp1[&(tc.src.clone(), htok.clone())].clone();
            let tgt_tok = frag.presentation.comp1[&(tc.tgt.clone(), htok.clone())].clone();
            rwhisker.insert(
                (ttok.clone(), htok.clone()),
                frag.nat_token(&src_tok, &tgt_tok, &n)?.clone(),
            );
        }
    }
    frag.presentation.rwhisker = rwhisker;

    // Strict unitors and associators: identity 2-cells on the composites.
    for (ftok, _) in &one_list {
        let idt = frag.presentation.id2[ftok].clone();
        frag.presentation.lunitor.insert(ftok.clone(), idt.clone());
        frag.presentation.lunitor_inv.insert(ftok.clone(), idt.clone());
        frag.presentation.runitor.insert(ftok.clone(), idt.clone());
        frag.presentation.runitor_inv.insert(ftok.clone(), idt);
    }
    for (f, g, h) in frag.presentation.composable_triples() {
        let gh = frag.presentation.comp1[&(g.clone(), h.clone())].clone();
        let fgh = frag.presentation.comp1[&(f.clone(), gh)].clone();
        let idt = frag.presentation.id2[&fgh].clone();
        frag.presentation
            .lassoc
            .insert((f.clone(), g.clone(), h.clone()), idt.clone());
        frag.presentation
            .lassoc_inv
            .insert((f.clone(), g.clone(), h.clone()), idt);
    }
    Ok(frag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicat::{adjoint_equivalences, check_laws, invertible_2cells};
    use crate::fincat::is_equivalence_of_categories;
    use crate::univalence::check_univalent;

    fn b() -> Budget {
        Budget::default()
    }

    fn poset2_fragment() -> FragmentBicat {
        fincat_fragment_bicat(
            &[(CellId::from("P"), FiniteCategory::poset2())],
            &b(),
        )
        .unwrap()
    }

    #[test]
    fn terminal_fragment_is_terminal_like() {
        let frag = fincat_fragment_bicat(
            &[(CellId::from("T"), FiniteCategory::terminal())],
            &b(),
        )
        .unwrap();
        let p = &frag.presentation;
        assert!(p.validate().passed());
        assert!(check_laws(p, &b()).unwrap().passed());
        assert_eq!((p.objects.len(), p.one_cells.len(), p.two_cells.len()), (1, 1, 1));
    }

    #[test]
    fn poset2_fragment_counts_and_laws() {
        let frag = poset2_fragment();
        let p = &frag.presentation;
        assert!(p.validate().passed());
        assert!(check_laws(p, &b()).unwrap().passed());
        // 3 monotone endomaps, 6 pointwise-≤ ordered pairs.
        assert_eq!(p.one_cells.len(), 3);
        assert_eq!(p.two_cells.len(), 6);
        assert!(check_univalent(p, &b()).unwrap().passed());
    }

    #[test]
    fn invertible_2cells_are_natural_isos() {
        let frag = poset2_fragment();
        let p = &frag.presentation;
        for f in p.one_cells.keys() {
            for g in p.one_cells.keys() {
                let inv = invertible_2cells(p, f, g).unwrap();
                for cell in inv {
                    let n = &frag.nats[&cell.theta];
                    let (a, bb, _) = &frag.functors[f];
                    let cat = &frag.categories[bb];
                    let _ = a;
                    for c in n.components.values() {
                        assert!(cat.is_iso(c));
                    }
                }
            }
        }
    }

    #[test]
    fn adjoint_equivalences_match_category_equivalences() {
        // In a fragment of discrete categories the adjoint equivalences are
        // exactly the equivalences of categories.
        let frag = fincat_fragment_bicat(
            &[(CellId::from("D"), FiniteCategory::discrete(2))],
            &b(),
        )
        .unwrap();
        let p = &frag.presentation;
        assert!(check_laws(p, &b()).unwrap().passed());
        let adj = adjoint_equivalences(p, &CellId::from("D"), &CellId::from("D"), &b()).unwrap();
        let equivalences: Vec<_> = frag
            .functors
            .iter()
            .filter(|(_, (a, bb, f))| {
                is_equivalence_of_categories(&frag.categories[a], &frag.categories[bb], f)
            })
            .map(|(t, _)| t.clone())
            .collect();
        let adj_ones: std::collections::BTreeSet<_> = adj.iter().map(|e| e.f.clone()).collect();
        // The 2 bijective endofunctors of the discrete 2-object category.
        assert_eq!(adj_ones.len(), 2);
        assert_eq!(
            adj_ones,
            equivalences.into_iter().collect::<std::collections::BTreeSet<_>>()
        );
    }

    #[test]
    fn empty_category_is_biinitial_in_its_fragment() {
        let empty = FiniteCategory::default();
        let frag = fincat_fragment_bicat(
            &[
                (CellId::from("E"), empty),
                (CellId::from("P"), FiniteCategory::poset2()),
            ],
            &b(),
        )
        .unwrap();
        let p = &frag.presentation;
        assert!(check_laws(p, &b()).unwrap().passed());
        let r = crate::bicat::is_biinitial(p, &CellId::from("E")).unwrap();
        assert!(r.biinitial);
        assert!(!crate::bicat::is_biinitial(p, &CellId::from("P")).unwrap().biinitial);
    }

    #[test]
    fn gaunt_fragment_univalence_criterion() {
        // Fragment of two gaunt categories with no cross equivalences is
        // univalent; duplicating a category introduces a cross adjoint
        // equivalence and breaks global univalence.
        let frag = fincat_fragment_bicat(
            &[
                (CellId::from("P"), FiniteCategory::poset2()),
                (CellId::from("T"), FiniteCategory::terminal()),
            ],
            &b(),
        )
        .unwrap();
        assert!(check_univalent(&frag.presentation, &b()).unwrap().passed());

        let dup = fincat_fragment_bicat(
            &[
                (CellId::from("T1"), FiniteCategory::terminal()),
                (CellId::from("T2"), FiniteCategory::terminal()),
            ],
            &b(),
        )
        .unwrap();
        let r = check_univalent(&dup.presentation, &b()).unwrap();
        assert!(r.local.passed());
        assert!(!r.global.passed());
    }

    #[test]
    fn chaotic_category_fragment_fails_local_univalence() {
        // The 2-object chaotic category is a groupoid but not gaunt; its
        // fragment has a non-identity natural isomorphism.
        let frag = fincat_fragment_bicat(
            &[(CellId::from("K"), FiniteCategory::chaotic(2))],
            &b(),
        )
        .unwrap();
        assert!(check_laws(&frag.presentation, &b()).unwrap().passed());
        let r = check_univalent(&frag.presentation, &b()).unwrap();
        assert!(!r.local.passed());
    }
}
