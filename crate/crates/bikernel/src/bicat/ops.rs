//! Cell searches and derived constructions on a presentation: hom-categories,
//! the op-bicategory, invertible 2-cells, adjoint equivalences, biinitiality,
//! and strictness.

use super::{BicatPresentation, OneCell, TwoCell};
use crate::budget::Budget;
use crate::cell::CellId;
use crate::error::{KernelError, Result};
use crate::fincat::{FiniteCategory, MorShape};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// An invertible 2-cell paired with its (unique) inverse.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Inv2Cell {
    pub theta: CellId,
    pub theta_inv: CellId,
}

/// An adjoint equivalence quadruple with verified triangle laws.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct AdjEquiv {
    pub f: CellId,
    pub g: CellId,
    pub eta: Inv2Cell,
    pub eps: Inv2Cell,
}

/// Extracts the hom-category: objects are 1-cells a → b, morphisms are
/// 2-cells between them, identities are id₂, composition is •.
pub fn hom_category(p: &BicatPresentation, a: &CellId, b: &CellId) -> Result<FiniteCategory> {
    for o in [a, b] {
        if !p.has_object(o) {
            return Err(KernelError::DanglingReference {
                context: "hom_category".into(),
                token: o.clone(),
            });
        }
    }
    let mut cat = FiniteCategory::default();
    let ones = p.one_cells_between(a, b);
    for f in &ones {
        cat.objects.insert(f.clone());
        cat.id.insert(f.clone(), p.id2(f)?.clone());
    }
    for (t, tc) in &p.two_cells {
        if cat.objects.contains(&tc.src) && cat.objects.contains(&tc.tgt) {
            cat.morphisms.insert(
                t.clone(),
                MorShape {
                    src: tc.src.clone(),
                    tgt: tc.tgt.clone(),
                },
            );
        }
    }
    for t in cat.morphisms.clone().keys() {
        let ttgt = p.two_cell(t)?.tgt.clone();
        for (u, uc) in &p.two_cells {
            if !cat.morphisms.contains_key(u) || uc.src != ttgt {
                continue;
            }
            cat.comp
                .insert((t.clone(), u.clone()), p.vcomp(t, u)?.clone());
        }
    }
    Ok(cat)
}

/// The op construction: 1-cell direction reversed, 2-cell direction kept.
/// Tokens are preserved, so `op_bicat` is an involution on tables.
pub fn op_bicat(p: &BicatPresentation) -> Result<BicatPresentation> {
    let mut q = BicatPresentation {
        objects: p.objects.clone(),
        ..Default::default()
    };
    for (f, c) in &p.one_cells {
        q.one_cells.insert(
            f.clone(),
            OneCell {
                src: c.tgt.clone(),
                tgt: c.src.clone(),
            },
        );
    }
    // 2-cells keep direction; their endpoints are the same 1-cell tokens.
    q.two_cells = p.two_cells.clone();
    q.id1 = p.id1.clone();
    for ((f, g), fg) in &p.comp1 {
        q.comp1.insert((g.clone(), f.clone()), fg.clone());
    }
    q.id2 = p.id2.clone();
    q.vcomp = p.vcomp.clone();
    // Whiskering swaps sides: in op, f ◁op θ is θ ▷ f and θ ▷op h is h ◁ θ.
    for ((f, t), r) in &p.rwhisker {
        q.lwhisker.insert((t.clone(), f.clone()), r.clone());
    }
    for ((t, h), r) in &p.lwhisker {
        q.rwhisker.insert((h.clone(), t.clone()), r.clone());
    }
    // id1(a) ·op f = f · id1(a), so the op left unitor is the right unitor.
    q.lunitor = p.runitor.clone();
    q.lunitor_inv = p.runitor_inv.clone();
    q.runitor = p.lunitor.clone();
    q.runitor_inv = p.lunitor_inv.clone();
    // (f,g,h) is op-composable exactly when (h,g,f) is composable in the
    // base, and f ·op (g ·op h) = (h·g)·f, so α_op(f,g,h) = α(h,g,f)⁻¹.
    for ((x, y, z), a) in &p.lassoc {
        let ai = p.lassoc_inv(x, y, z)?.clone();
        q.lassoc.insert((z.clone(), y.clone(), x.clone()), ai);
        q.lassoc_inv.insert((z.clone(), y.clone(), x.clone()), a.clone());
    }
    Ok(q)
}

/// Exhaustive list of invertible 2-cells f ⇒ g, each with its unique inverse,
/// in token order.
pub fn invertible_2cells(
    p: &BicatPresentation,
    f: &CellId,
    g: &CellId,
) -> Result<Vec<Inv2Cell>> {
    let fc = p.one_cell(f)?;
    let gc = p.one_cell(g)?;
    if fc.src != gc.src || fc.tgt != gc.tgt {
        return Err(KernelError::TypeMismatch(format!(
            "invertible_2cells: {f} and {g} are not parallel"
        )));
    }
    let idf = p.id2(f)?.clone();
    let idg = p.id2(g)?.clone();
    let mut out = Vec::new();
    for t in p.two_cells_between(f, g) {
        let mut inverses = Vec::new();
        for u in p.two_cells_between(g, f) {
            if p.vcomp(&t, &u)? == &idf && p.vcomp(&u, &t)? == &idg {
                inverses.push(u);
            }
        }
        match inverses.len() {
            0 => {}
            1 => out.push(Inv2Cell {
                theta: t,
                theta_inv: inverses.pop().unwrap(),
            }),
            _ => {
                return Err(KernelError::ConstructionFailed(format!(
                    "2-cell {t} has multiple inverses; input violates the vcomp category laws"
                )))
            }
        }
    }
    Ok(out)
}

/// Both triangle identities of an adjoint equivalence candidate, by table
/// evaluation. The composite orientation is forced by the typing of α.
pub fn triangles_hold(p: &BicatPresentation, e: &AdjEquiv) -> Result<bool> {
    let (f, g) = (&e.f, &e.g);
    // λ(f)⁻¹ • (η ▷ f) • α(f,g,f)⁻¹ • (f ◁ ε) • ρ(f) = id₂(f)
    let t1 = {
        let l = p.lunitor_inv(f)?.clone();
        let w1 = p.rwhisker(&e.eta.theta, f)?.clone();
        let ai = p.lassoc_inv(f, g, f)?.clone();
        let w2 = p.lwhisker(f, &e.eps.theta)?.clone();
        let r = p.runitor(f)?.clone();
        p.vcomp_chain([&l, &w1, &ai, &w2, &r])?
    };
    if &t1 != p.id2(f)? {
        return Ok(false);
    }
    // ρ(g)⁻¹ • (g ◁ η) • α(g,f,g) • (ε ▷ g) • λ(g) = id₂(g)
    let t2 = {
        let r = p.runitor_inv(g)?.clone();
        let w1 = p.lwhisker(g, &e.eta.theta)?.clone();
        let a = p.lassoc(g, f, g)?.clone();
        let w2 = p.rwhisker(&e.eps.theta, g)?.clone();
        let l = p.lunitor(g)?.clone();
        p.vcomp_chain([&r, &w1, &a, &w2, &l])?
    };
    Ok(&t2 == p.id2(g)?)
}

/// Exhaustive enumeration of adjoint equivalences from `a` to `b`: quadruples
/// (f, g, η, ε) with invertible unit and counit satisfying both triangles.
pub fn adjoint_equivalences(
    p: &BicatPresentation,
    a: &CellId,
    b: &CellId,
    budget: &Budget,
) -> Result<Vec<AdjEquiv>> {
    for o in [a, b] {
        if !p.has_object(o) {
            return Err(KernelError::DanglingReference {
                context: "adjoint_equivalences".into(),
                token: o.clone(),
            });
        }
    }
    let ida = p.id1(a)?.clone();
    let idb = p.id1(b)?.clone();
    let mut out = Vec::new();
    for f in p.one_cells_between(a, b) {
        for g in p.one_cells_between(b, a) {
            budget.charge("adjoint_equivalences", 1)?;
            let fg = p.comp1(&f, &g)?.clone();
            let gf = p.comp1(&g, &f)?.clone();
            let etas = invertible_2cells(p, &ida, &fg)?;
            if etas.is_empty() {
                continue;
            }
            let epss = invertible_2cells(p, &gf, &idb)?;
            for eta in &etas {
                for eps in &epss {
                    budget.charge("adjoint_equivalences", 1)?;
                    let cand = AdjEquiv {
                        f: f.clone(),
                        g: g.clone(),
                        eta: eta.clone(),
                        eps: eps.clone(),
                    };
                    if triangles_hold(p, &cand)? {
                        out.push(cand);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The canonical adjoint equivalence carried by id₁(a): unit λ(id₁ a)⁻¹,
/// counit λ(id₁ a).
pub fn canonical_identity_adjequiv(p: &BicatPresentation, a: &CellId) -> Result<AdjEquiv> {
    let u = p.id1(a)?.clone();
    let l = p.lunitor(&u)?.clone();
    let li = p.lunitor_inv(&u)?.clone();
    Ok(AdjEquiv {
        f: u.clone(),
        g: u,
        eta: Inv2Cell {
            theta: li.clone(),
            theta_inv: l.clone(),
        },
        eps: Inv2Cell {
            theta: l,
            theta_inv: li,
        },
    })
}

/// Witness report for biinitiality of one object.
#[derive(Debug, Clone, Serialize)]
pub struct BiinitialReport {
    pub object: CellId,
    pub biinitial: bool,
    /// Objects b where hom(a,b) fails to be equivalent to the unit category.
    pub failing: Vec<CellId>,
}

/// Decides biinitiality: every hom-category out of `a` must be equivalent to
/// the unit category, i.e. nonempty with exactly one 2-cell between every
/// ordered pair of its 1-cells.
pub fn is_biinitial(p: &BicatPresentation, a: &CellId) -> Result<BiinitialReport> {
    if !p.has_object(a) {
        return Err(KernelError::DanglingReference {
            context: "is_biinitial".into(),
            token: a.clone(),
        });
    }
    let mut failing = Vec::new();
    for b in &p.objects {
        let ones = p.one_cells_between(a, b);
        let unitlike = !ones.is_empty()
            && ones.iter().all(|f| {
                ones.iter()
                    .all(|g| p.two_cells_between(f, g).len() == 1)
            });
        if !unitlike {
            failing.push(b.clone());
        }
    }
    Ok(BiinitialReport {
        object: a.clone(),
        biinitial: failing.is_empty(),
        failing,
    })
}

/// Strictness report: the encoding makes hom collections sets, so
/// local strictness always holds; 1-strictness is decided by token equality
/// of the unit and associativity composites.
#[derive(Debug, Clone, Serialize)]
pub struct StrictReport {
    pub locally_strict: bool,
    pub one_strict: bool,
    /// First failing equation, if any.
    pub witness: Option<String>,
}

pub fn check_strict(p: &BicatPresentation) -> Result<StrictReport> {
    let mut witness = None;
    'out: {
        for (f, fc) in &p.one_cells {
            let li = p.comp1(p.id1(&fc.src)?, f)?;
            if li != f {
                witness = Some(format!("id1({})·{f} = {li} ≠ {f}", fc.src));
                break 'out;
            }
            let ri = p.comp1(f, p.id1(&fc.tgt)?)?;
            if ri != f {
                witness = Some(format!("{f}·id1({}) = {ri} ≠ {f}", fc.tgt));
                break 'out;
            }
        }
        for (f, g, h) in p.composable_triples() {
            let gh = p.comp1(&g, &h)?.clone();
            let l = p.comp1(&f, &gh)?;
            let fg = p.comp1(&f, &g)?.clone();
            let r = p.comp1(&fg, &h)?;
            if l != r {
                witness = Some(format!("{f}·({g}·{h}) = {l} ≠ {r} = ({f}·{g})·{h}"));
                break 'out;
            }
        }
    }
    Ok(StrictReport {
        locally_strict: true,
        one_strict: witness.is_none(),
        witness,
    })
}

/// A 2-category presentation: the strict tiers with no unitor or associator
/// tables; identity and associativity of comp1 hold as 1-cell equalities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoCatPresentation {
    pub objects: std::collections::BTreeSet<CellId>,
    pub one_cells: BTreeMap<CellId, OneCell>,
    pub two_cells: BTreeMap<CellId, TwoCell>,
    pub id1: BTreeMap<CellId, CellId>,
    pub comp1: BTreeMap<(CellId, CellId), CellId>,
    pub id2: BTreeMap<CellId, CellId>,
    pub vcomp: BTreeMap<(CellId, CellId), CellId>,
    pub lwhisker: BTreeMap<(CellId, CellId), CellId>,
    pub rwhisker: BTreeMap<(CellId, CellId), CellId>,
}

/// Strips the unitor and associator tables of a 1-strict presentation.
pub fn strict_to_two_cat(p: &BicatPresentation) -> Result<TwoCatPresentation> {
    let report = check_strict(p)?;
    if !report.one_strict {
        return Err(KernelError::NotStrict(
            report.witness.unwrap_or_else(|| "not 1-strict".into()),
        ));
    }
    Ok(TwoCatPresentation {
        objects: p.objects.clone(),
        one_cells: p.one_cells.clone(),
        two_cells: p.two_cells.clone(),
        id1: p.id1.clone(),
        comp1: p.comp1.clone(),
        id2: p.id2.clone(),
        vcomp: p.vcomp.clone(),
        lwhisker: p.lwhisker.clone(),
        rwhisker: p.rwhisker.clone(),
    })
}
