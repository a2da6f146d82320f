//! Pseudofunctors, pseudotransformations, and modifications between finite
//! presentations, with exhaustive law validation.
//!
//! Composition order is diagrammatic throughout: `F · G` applies F first,
//! so `comp_psfunctor(F, G)` sends a to G0(F0(a)).

mod biequiv;
#[cfg(test)]
mod tests;
mod enumerate;
mod pseudo;
mod weq;

pub use biequiv::{check_biequivalence, identity_biequivalence, BiequivalenceData};
pub use enumerate::{
    enumerate_modifications, enumerate_psfunctors, enumerate_pstrans, modification_is_invertible,
};
pub use pseudo::{build_pseudo_bicat, PseudoBicat};
pub use weq::{
    image_adjequiv, is_essentially_surjective, is_local_equivalence, is_weak_equivalence,
};

use crate::bicat::{BicatPresentation, Inv2Cell};
use crate::cell::CellId;
use crate::error::{KernelError, Result};
use crate::report::{LawReport, Violation};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Pseudofunctor data: cell maps plus identitor and compositor families.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct PseudofunctorData {
    pub f0: BTreeMap<CellId, CellId>,
    pub f1: BTreeMap<CellId, CellId>,
    pub f2: BTreeMap<CellId, CellId>,
    /// a → γ(a) : id1(F0 a) ⇒ F1(id1 a)
    pub identitor: BTreeMap<CellId, CellId>,
    /// (f, g) → δ(f,g) : F1 f · F1 g ⇒ F1(f·g)
    #[serde(with = "crate::serde_keys::key2")]
    pub compositor: BTreeMap<(CellId, CellId), CellId>,
}

impl PseudofunctorData {
    pub fn f0(&self, a: &CellId) -> Result<&CellId> {
        self.f0.get(a).ok_or_else(|| KernelError::DanglingReference {
            context: "psfunctor.f0".into(),
            token: a.clone(),
        })
    }

    pub fn f1(&self, f: &CellId) -> Result<&CellId> {
        self.f1.get(f).ok_or_else(|| KernelError::DanglingReference {
            context: "psfunctor.f1".into(),
            token: f.clone(),
        })
    }

    pub fn f2(&self, t: &CellId) -> Result<&CellId> {
        self.f2.get(t).ok_or_else(|| KernelError::DanglingReference {
            context: "psfunctor.f2".into(),
            token: t.clone(),
        })
    }

    pub fn identitor(&self, a: &CellId) -> Result<&CellId> {
        self.identitor
            .get(a)
            .ok_or_else(|| KernelError::DanglingReference {
                context: "psfunctor.identitor".into(),
                token: a.clone(),
            })
    }

    pub fn compositor(&self, f: &CellId, g: &CellId) -> Result<&CellId> {
        self.compositor
            .get(&(f.clone(), g.clone()))
            .ok_or_else(|| KernelError::DanglingReference {
                context: format!("psfunctor.compositor({f},{g})"),
                token: f.clone(),
            })
    }
}

/// Pseudotransformation data: 1-cell components plus invertible naturality
/// 2-cells η1(f) : η0(a)·G1(f) ⇒ F1(f)·η0(b).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct PstransData {
    pub eta0: BTreeMap<CellId, CellId>,
    pub eta1: BTreeMap<CellId, Inv2Cell>,
}

impl PstransData {
    pub fn eta0(&self, a: &CellId) -> Result<&CellId> {
        self.eta0.get(a).ok_or_else(|| KernelError::DanglingReference {
            context: "pstrans.eta0".into(),
            token: a.clone(),
        })
    }

    pub fn eta1(&self, f: &CellId) -> Result<&Inv2Cell> {
        self.eta1.get(f).ok_or_else(|| KernelError::DanglingReference {
            context: "pstrans.eta1".into(),
            token: f.clone(),
        })
    }
}

/// Modification data: a 2-cell component per object.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct ModificationData {
    pub gamma: BTreeMap<CellId, CellId>,
}

impl ModificationData {
    pub fn gamma(&self, a: &CellId) -> Result<&CellId> {
        self.gamma.get(a).ok_or_else(|| KernelError::DanglingReference {
            context: "modification.gamma".into(),
            token: a.clone(),
        })
    }
}

fn is_invertible(p: &BicatPresentation, t: &CellId) -> Result<bool> {
    let tc = p.two_cell(t)?;
    for u in p.two_cells_between(&tc.tgt, &tc.src) {
        if p.vcomp(t, &u)? == p.id2(&tc.src)? && p.vcomp(&u, t)? == p.id2(&tc.tgt)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The inverse of an invertible 2-cell; unique when it exists.
pub fn inverse_2cell(p: &BicatPresentation, t: &CellId) -> Result<CellId> {
    let tc = p.two_cell(t)?;
    for u in p.two_cells_between(&tc.tgt, &tc.src) {
        if p.vcomp(t, &u)? == p.id2(&tc.src)? && p.vcomp(&u, t)? == p.id2(&tc.tgt)? {
            return Ok(u);
        }
    }
    Err(KernelError::ConstructionFailed(format!(
        "2-cell {t} has no inverse"
    )))
}

struct Check {
    violations: Vec<Violation>,
}

impl Check {
    fn eq(&mut self, law: &str, cells: &[&CellId], lhs: Result<CellId>, rhs: Result<CellId>) {
        let show = |r: &Result<CellId>| match r {
            Ok(c) => c.to_string(),
            Err(e) => format!("<{e}>"),
        };
        if !matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b) {
            self.violations.push(Violation::new(
                law,
                cells.iter().map(|c| (*c).clone()).collect(),
                show(&lhs),
                show(&rhs),
            ));
        }
    }

    fn flag(&mut self, law: &str, cells: &[&CellId], note: &str) {
        self.violations.push(Violation::new(
            law,
            cells.iter().map(|c| (*c).clone()).collect(),
            note.to_string(),
            String::new(),
        ));
    }
}

/// Validates pseudofunctor data: totality, typing, the six
/// coherence diagrams, functoriality of F2, and invertibility of the
/// identitor and compositor.
pub fn check_psfunctor(
    src: &BicatPresentation,
    tgt: &BicatPresentation,
    fd: &PseudofunctorData,
) -> Result<LawReport> {
    let mut c = Check {
        violations: Vec::new(),
    };

    // Totality and typing of the cell maps.
    for a in &src.objects {
        match fd.f0.get(a) {
            Some(x) if tgt.has_object(x) => {}
            _ => c.flag("psfun:f0", &[a], "missing or dangling image"),
        }
    }
    for (f, fc) in &src.one_cells {
        match fd.f1.get(f) {
            Some(x) => {
                let ok = tgt.one_cells.get(x).map(|xc| {
                    Some(&xc.src) == fd.f0.get(&fc.src) && Some(&xc.tgt) == fd.f0.get(&fc.tgt)
                });
                if ok != Some(true) {
                    c.flag("psfun:f1-typing", &[f], "image endpoints disagree with F0");
                }
            }
            None => c.flag("psfun:f1", &[f], "missing image"),
        }
    }
    for (t, tc) in &src.two_cells {
        match fd.f2.get(t) {
            Some(x) => {
                let ok = tgt.two_cells.get(x).map(|xc| {
                    Some(&xc.src) == fd.f1.get(&tc.src) && Some(&xc.tgt) == fd.f1.get(&tc.tgt)
                });
                if ok != Some(true) {
                    c.flag("psfun:f2-typing", &[t], "image endpoints disagree with F1");
                }
            }
            None => c.flag("psfun:f2", &[t], "missing image"),
        }
    }
    for a in &src.objects {
        let want = (|| -> Result<(CellId, CellId)> {
            let fa = fd.f0(a)?;
            let id_fa = tgt.id1(fa)?.clone();
            let f_id = fd.f1(src.id1(a)?)?.clone();
            Ok((id_fa, f_id))
        })();
        match (fd.identitor.get(a), want) {
            (Some(g), Ok((ws, wt))) => {
                let ok = tgt
                    .two_cells
                    .get(g)
                    .map(|gc| gc.src == ws && gc.tgt == wt)
                    .unwrap_or(false);
                if !ok {
                    c.flag("psfun:identitor-typing", &[a], "identitor has wrong endpoints");
                } else if !is_invertible(tgt, g)? {
                    c.flag("psfun:identitor-invertible", &[a], "identitor not invertible");
                }
            }
            (None, _) => c.flag("psfun:identitor", &[a], "missing identitor"),
            (_, Err(_)) => c.flag("psfun:identitor", &[a], "untypable identitor"),
        }
    }
    for (f, g) in src.composable_pairs() {
        let want = (|| -> Result<(CellId, CellId)> {
            let ff = fd.f1(&f)?;
            let fg = fd.f1(&g)?;
            let lhs = tgt.comp1(ff, fg)?.clone();
            let rhs = fd.f1(src.comp1(&f, &g)?)?.clone();
            Ok((lhs, rhs))
        })();
        match (fd.compositor.get(&(f.clone(), g.clone())), want) {
            (Some(dl), Ok((ws, wt))) => {
                let ok = tgt
                    .two_cells
                    .get(dl)
                    .map(|dc| dc.src == ws && dc.tgt == wt)
                    .unwrap_or(false);
                if !ok {
                    c.flag("psfun:compositor-typing", &[&f, &g], "compositor has wrong endpoints");
                } else if !is_invertible(tgt, dl)? {
                    c.flag("psfun:compositor-invertible", &[&f, &g], "compositor not invertible");
                }
            }
            (None, _) => c.flag("psfun:compositor", &[&f, &g], "missing compositor"),
            (_, Err(_)) => c.flag("psfun:compositor", &[&f, &g], "untypable compositor"),
        }
    }
    if !c.violations.is_empty() {
        return Ok(LawReport::from_violations(c.violations));
    }

    // F2 functoriality.
    for f in src.one_cells.keys() {
        c.eq(
            "psfun:id2",
            &[f],
            src.id2(f).and_then(|i| fd.f2(i)).cloned(),
            fd.f1(f).and_then(|x| tgt.id2(x)).cloned(),
        );
    }
    for (t, u) in src.vcomposable_pairs() {
        c.eq(
            "psfun:vcomp",
            &[&t, &u],
            src.vcomp(&t, &u).and_then(|x| fd.f2(x)).cloned(),
            (|| {
                let a = fd.f2(&t)?;
                let b = fd.f2(&u)?;
                tgt.vcomp(a, b).cloned()
            })(),
        );
    }

    // Unitor coherence.
    for (f, fc) in &src.one_cells {
        let lhs = fd.f1(f).and_then(|x| tgt.lunitor(x)).cloned();
        let rhs = (|| {
            let ga = fd.identitor(&fc.src)?;
            let ff = fd.f1(f)?;
            let w = tgt.rwhisker(ga, ff)?.clone();
            let dl = fd.compositor(src.id1(&fc.src)?, f)?.clone();
            let f_lam = fd.f2(src.lunitor(f)?)?.clone();
            tgt.vcomp_chain([&w, &dl, &f_lam])
        })();
        c.eq("psfun:lunitor", &[f], lhs, rhs);

        let lhs = fd.f1(f).and_then(|x| tgt.runitor(x)).cloned();
        let rhs = (|| {
            let gb = fd.identitor(&fc.tgt)?;
            let ff = fd.f1(f)?;
            let w = tgt.lwhisker(ff, gb)?.clone();
            let dl = fd.compositor(f, src.id1(&fc.tgt)?)?.clone();
            let f_rho = fd.f2(src.runitor(f)?)?.clone();
            tgt.vcomp_chain([&w, &dl, &f_rho])
        })();
        c.eq("psfun:runitor", &[f], lhs, rhs);
    }

    // Associator coherence.
    for (f, g, h) in src.composable_triples() {
        let lhs = (|| {
            let ff = fd.f1(&f)?.clone();
            let dgh = fd.compositor(&g, &h)?.clone();
            let w = tgt.lwhisker(&ff, &dgh)?.clone();
            let gh = src.comp1(&g, &h)?.clone();
            let df_gh = fd.compositor(&f, &gh)?.clone();
            let fa = fd.f2(src.lassoc(&f, &g, &h)?)?.clone();
            tgt.vcomp_chain([&w, &df_gh, &fa])
        })();
        let rhs = (|| {
            let ff = fd.f1(&f)?.clone();
            let fg_ = fd.f1(&g)?.clone();
            let fh = fd.f1(&h)?.clone();
            let a = tgt.lassoc(&ff, &fg_, &fh)?.clone();
            let dfg = fd.compositor(&f, &g)?.clone();
            let w = tgt.rwhisker(&dfg, &fh)?.clone();
            let fg = src.comp1(&f, &g)?.clone();
            let dfg_h = fd.compositor(&fg, &h)?.clone();
            tgt.vcomp_chain([&a, &w, &dfg_h])
        })();
        c.eq("psfun:assoc", &[&f, &g, &h], lhs, rhs);
    }

    // Compositor naturality in each argument.
    for (f, fc) in &src.one_cells {
        for (t, tc) in &src.two_cells {
            let g1 = &tc.src;
            if src.one_cell(g1)?.src == fc.tgt {
                let lhs = (|| {
                    let dl = fd.compositor(f, g1)?.clone();
                    let w = fd.f2(src.lwhisker(f, t)?)?.clone();
                    tgt.vcomp(&dl, &w).cloned()
                })();
                let rhs = (|| {
                    let ff = fd.f1(f)?.clone();
                    let ft = fd.f2(t)?.clone();
                    let w = tgt.lwhisker(&ff, &ft)?.clone();
                    let dl = fd.compositor(f, &tc.tgt)?.clone();
                    tgt.vcomp(&w, &dl).cloned()
                })();
                c.eq("psfun:lwhisker", &[f, t], lhs, rhs);
            }
            if src.one_cell(g1)?.tgt == fc.src {
                let lhs = (|| {
                    let dl = fd.compositor(g1, f)?.clone();
                    let w = fd.f2(src.rwhisker(t, f)?)?.clone();
                    tgt.vcomp(&dl, &w).cloned()
                })();
                let rhs = (|| {
                    let ft = fd.f2(t)?.clone();
                    let ff = fd.f1(f)?.clone();
                    let w = tgt.rwhisker(&ft, &ff)?.clone();
                    let dl = fd.compositor(&tc.tgt, f)?.clone();
                    tgt.vcomp(&w, &dl).cloned()
                })();
                c.eq("psfun:rwhisker", &[t, f], lhs, rhs);
            }
        }
    }

    Ok(LawReport::from_violations(c.violations))
}

/// Validates pseudotransformation data from F to G: typing, invertibility of
/// the naturality cells, naturality in 2-cells, and the unit and composition
/// coherence diagrams.
pub fn check_pstrans(
    src: &BicatPresentation,
    tgt: &BicatPresentation,
    f: &PseudofunctorData,
    g: &PseudofunctorData,
    n: &PstransData,
) -> Result<LawReport> {
    let mut c = Check {
        violations: Vec::new(),
    };

    for a in &src.objects {
        let ok = (|| -> Result<bool> {
            let comp = n.eta0(a)?;
            let cc = tgt.one_cell(comp)?;
            Ok(&cc.src == f.f0(a)? && &cc.tgt == g.f0(a)?)
        })();
        if !matches!(ok, Ok(true)) {
            c.flag("pstrans:eta0", &[a], "missing or ill-typed component");
        }
    }
    for (k, kc) in &src.one_cells {
        let ok = (|| -> Result<bool> {
            let cell = n.eta1(k)?;
            let want_src = tgt.comp1(n.eta0(&kc.src)?, g.f1(k)?)?.clone();
            let want_tgt = tgt.comp1(f.f1(k)?, n.eta0(&kc.tgt)?)?.clone();
            let tc = tgt.two_cell(&cell.theta)?;
            if tc.src != want_src || tc.tgt != want_tgt {
                return Ok(false);
            }
            // Inverse laws.
            Ok(tgt.vcomp(&cell.theta, &cell.theta_inv)? == tgt.id2(&want_src)?
                && tgt.vcomp(&cell.theta_inv, &cell.theta)? == tgt.id2(&want_tgt)?)
        })();
        if !matches!(ok, Ok(true)) {
            c.flag("pstrans:eta1", &[k], "missing, ill-typed, or non-invertible naturality cell");
        }
    }
    if !c.violations.is_empty() {
        return Ok(LawReport::from_violations(c.violations));
    }

    // Naturality in 2-cells.
    for (t, tc) in &src.two_cells {
        let a = src.one_cell(&tc.src)?.src.clone();
        let b = src.one_cell(&tc.src)?.tgt.clone();
        let lhs = (|| {
            let e0 = n.eta0(&a)?.clone();
            let gt = g.f2(t)?.clone();
            let w = tgt.lwhisker(&e0, &gt)?.clone();
            let e1 = n.eta1(&tc.tgt)?.theta.clone();
            tgt.vcomp(&w, &e1).cloned()
        })();
        let rhs = (|| {
            let e1 = n.eta1(&tc.src)?.theta.clone();
            let ft = f.f2(t)?.clone();
            let e0 = n.eta0(&b)?.clone();
            let w = tgt.rwhisker(&ft, &e0)?.clone();
            tgt.vcomp(&e1, &w).cloned()
        })();
        c.eq("pstrans:natural", &[t], lhs, rhs);
    }

    // Unit coherence.
    for a in &src.objects {
        let lhs = (|| {
            let e0 = n.eta0(a)?.clone();
            let rho = tgt.runitor(&e0)?.clone();
            let lam_i = tgt.lunitor_inv(&e0)?.clone();
            let ga = f.identitor(a)?.clone();
            let w = tgt.rwhisker(&ga, &e0)?.clone();
            tgt.vcomp_chain([&rho, &lam_i, &w])
        })();
        let rhs = (|| {
            let e0 = n.eta0(a)?.clone();
            let ga = g.identitor(a)?.clone();
            let w = tgt.lwhisker(&e0, &ga)?.clone();
            let e1 = n.eta1(src.id1(a)?)?.theta.clone();
            tgt.vcomp(&w, &e1).cloned()
        })();
        c.eq("pstrans:unit", &[a], lhs, rhs);
    }

    // Composition coherence.
    for (k, l) in src.composable_pairs() {
        let a = src.one_cell(&k)?.src.clone();
        let b = src.one_cell(&k)?.tgt.clone();
        let cc = src.one_cell(&l)?.tgt.clone();
        let lhs = (|| {
            let e0a = n.eta0(&a)?.clone();
            let gk = g.f1(&k)?.clone();
            let gl = g.f1(&l)?.clone();
            let a1 = tgt.lassoc(&e0a, &gk, &gl)?.clone();
            let w1 = tgt.rwhisker(&n.eta1(&k)?.theta, &gl)?.clone();
            let fk = f.f1(&k)?.clone();
            let e0b = n.eta0(&b)?.clone();
            let a2 = tgt.lassoc_inv(&fk, &e0b, &gl)?.clone();
            let w2 = tgt.lwhisker(&fk, &n.eta1(&l)?.theta)?.clone();
            let fl = f.f1(&l)?.clone();
            let e0c = n.eta0(&cc)?.clone();
            let a3 = tgt.lassoc(&fk, &fl, &e0c)?.clone();
            let dl = f.compositor(&k, &l)?.clone();
            let w3 = tgt.rwhisker(&dl, &e0c)?.clone();
            tgt.vcomp_chain([&a1, &w1, &a2, &w2, &a3, &w3])
        })();
        let rhs = (|| {
            let e0a = n.eta0(&a)?.clone();
            let dg = g.compositor(&k, &l)?.clone();
            let w = tgt.lwhisker(&e0a, &dg)?.clone();
            let kl = src.comp1(&k, &l)?.clone();
            let e1 = n.eta1(&kl)?.theta.clone();
            tgt.vcomp(&w, &e1).cloned()
        })();
        c.eq("pstrans:comp", &[&k, &l], lhs, rhs);
    }

    Ok(LawReport::from_violations(c.violations))
}

/// Validates a modification Γ from η to θ: the square
/// (Γ(a) ▷ G1 f) • θ1(f) = η1(f) • (F1 f ◁ Γ(b)) for every f.
pub fn check_modification(
    src: &BicatPresentation,
    tgt: &BicatPresentation,
    f: &PseudofunctorData,
    g: &PseudofunctorData,
    n: &PstransData,
    m: &PstransData,
    gamma: &ModificationData,
) -> Result<LawReport> {
    let mut c = Check {
        violations: Vec::new(),
    };
    for a in &src.objects {
        let ok = (|| -> Result<bool> {
            let ga = gamma.gamma(a)?;
            let gc = tgt.two_cell(ga)?;
            Ok(&gc.src == n.eta0(a)? && &gc.tgt == m.eta0(a)?)
        })();
        if !matches!(ok, Ok(true)) {
            c.flag("modif:component", &[a], "missing or ill-typed component");
        }
    }
    if !c.violations.is_empty() {
        return Ok(LawReport::from_violations(c.violations));
    }
    for (k, kc) in &src.one_cells {
        let lhs = (|| {
            let ga = gamma.gamma(&kc.src)?.clone();
            let gk = g.f1(k)?.clone();
            let w = tgt.rwhisker(&ga, &gk)?.clone();
            let m1 = m.eta1(k)?.theta.clone();
            tgt.vcomp(&w, &m1).cloned()
        })();
        let rhs = (|| {
            let n1 = n.eta1(k)?.theta.clone();
            let fk = f.f1(k)?.clone();
            let gb = gamma.gamma(&kc.tgt)?.clone();
            let w = tgt.lwhisker(&fk, &gb)?.clone();
            tgt.vcomp(&n1, &w).cloned()
        })();
        c.eq("modif:square", &[k], lhs, rhs);
    }
    Ok(LawReport::from_violations(c.violations))
}

/// The identity pseudofunctor.
pub fn id_psfunctor(p: &BicatPresentation) -> Result<PseudofunctorData> {
    let mut f = PseudofunctorData::default();
    for a in &p.objects {
        f.f0.insert(a.clone(), a.clone());
        f.identitor.insert(a.clone(), p.id2(p.id1(a)?)?.clone());
    }
    for k in p.one_cells.keys() {
        f.f1.insert(k.clone(), k.clone());
    }
    for t in p.two_cells.keys() {
        f.f2.insert(t.clone(), t.clone());
    }
    for (k, l) in p.composable_pairs() {
        let kl = p.comp1(&k, &l)?;
        f.compositor.insert((k.clone(), l.clone()), p.id2(kl)?.clone());
    }
    Ok(f)
}

/// Composition F · G of pseudofunctors (apply F, then G).
pub fn comp_psfunctor(
    mid: &BicatPresentation,
    tgt: &BicatPresentation,
    f: &PseudofunctorData,
    g: &PseudofunctorData,
) -> Result<PseudofunctorData> {
    let mut h = PseudofunctorData::default();
    for (a, fa) in &f.f0 {
        h.f0.insert(a.clone(), g.f0(fa)?.clone());
    }
    for (k, fk) in &f.f1 {
        h.f1.insert(k.clone(), g.f1(fk)?.clone());
    }
    for (t, ft) in &f.f2 {
        h.f2.insert(t.clone(), g.f2(ft)?.clone());
    }
    for (a, ga) in &f.identitor {
        // γ_H(a) = γ_G(F a) • G2(γ_F(a))
        let gfa = g.identitor(f.f0(a)?)?.clone();
        let g_ga = g.f2(ga)?.clone();
        h.identitor.insert(a.clone(), tgt.vcomp(&gfa, &g_ga)?.clone());
    }
    for ((k, l), dl) in &f.compositor {
        // δ_H(k,l) = δ_G(F k, F l) • G2(δ_F(k,l))
        let dg = g.compositor(f.f1(k)?, f.f1(l)?)?.clone();
        let g_dl = g.f2(dl)?.clone();
        h.compositor
            .insert((k.clone(), l.clone()), tgt.vcomp(&dg, &g_dl)?.clone());
    }
    let _ = mid;
    Ok(h)
}

/// The identity pseudotransformation on F.
pub fn id_pstrans(
    src: &BicatPresentation,
    tgt: &BicatPresentation,
    f: &PseudofunctorData,
) -> Result<PstransData> {
    let mut n = PstransData::default();
    for a in &src.objects {
        n.eta0.insert(a.clone(), tgt.id1(f.f0(a)?)?.clone());
    }
    for k in src.one_cells.keys() {
        // id₁·F1(k) ⇒ F1(k)·id₁ is λ(F1 k) • ρ(F1 k)⁻¹.
        let fk = f.f1(k)?.clone();
        let lam = tgt.lunitor(&fk)?.clone();
        let rho_i = tgt.runitor_inv(&fk)?.clone();
        let fwd = tgt.vcomp(&lam, &rho_i)?.clone();
        let rho = tgt.runitor(&fk)?.clone();
        let lam_i = tgt.lunitor_inv(&fk)?.clone();
        let bwd = tgt.vcomp(&rho, &lam_i)?.clone();
        n.eta1.insert(
            k.clone(),
            Inv2Cell {
                theta: fwd,
                theta_inv: bwd,
            },
        );
    }
    Ok(n)
}

/// Composition η • θ of pseudotransformations: components η0(a)·θ0(a).
pub fn comp_pstrans(
    src: &BicatPresentation,
    tgt: &BicatPresentation,
    f: &PseudofunctorData,
    g: &PseudofunctorData,
    h: &PseudofunctorData,
    n: &PstransData,
    m: &PstransData,
) -> Result<PstransData> {
    let mut out = PstransData::default();
    for a in &src.objects {
        out.eta0
            .insert(a.clone(), tgt.comp1(n.eta0(a)?, m.eta0(a)?)?.clone());
    }
    for (k, kc) in &src.one_cells {
        let (a, b) = (kc.src.clone(), kc.tgt.clone());
        let n0a = n.eta0(&a)?.clone();
        let m0a = m.eta0(&a)?.clone();
        let n0b = n.eta0(&b)?.clone();
        let m0b = m.eta0(&b)?.clone();
        let fk = f.f1(k)?.clone();
        let gk = g.f1(k)?.clone();
        let hk = h.f1(k)?.clone();
        let n1 = n.eta1(k)?.clone();
        let m1 = m.eta1(k)?.clone();

        let parts: Vec<(CellId, CellId)> = vec![
            (
                tgt.lassoc_inv(&n0a, &m0a, &hk)?.clone(),
                tgt.lassoc(&n0a, &m0a, &hk)?.clone(),
            ),
            (
                tgt.lwhisker(&n0a, &m1.theta)?.clone(),
                tgt.lwhisker(&n0a, &m1.theta_inv)?.clone(),
            ),
            (
                tgt.lassoc(&n0a, &gk, &m0b)?.clone(),
                tgt.lassoc_inv(&n0a, &gk, &m0b)?.clone(),
            ),
            (
                tgt.rwhisker(&n1.theta, &m0b)?.clone(),
                tgt.rwhisker(&n1.theta_inv, &m0b)?.clone(),
            ),
            (
                tgt.lassoc_inv(&fk, &n0b, &m0b)?.clone(),
                tgt.lassoc(&fk, &n0b, &m0b)?.clone(),
            ),
        ];
        let fwd = tgt.vcomp_chain(parts.iter().map(|(x, _)| x))?;
        let bwd = {
            let rev: Vec<_> = parts.iter().rev().map(|(_, y)| y).collect();
            tgt.vcomp_chain(rev)?
        };
        out.eta1.insert(
            k.clone(),
            Inv2Cell {
                theta: fwd,
                theta_inv: bwd,
            },
        );
    }
    Ok(out)
}
