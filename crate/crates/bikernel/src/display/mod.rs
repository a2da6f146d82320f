//! Displayed bicategories over a finite base.
//!
//! A displayed presentation assigns token fibers to base cells and displayed
//! tables over the base tables. Because base laws hold as table equalities,
//! both sides of every displayed law inhabit the same displayed-2-cell set
//! and transport is trivial in this encoding: the heterogeneous "=_*" laws
//! become plain token equalities. This transport elimination is the single
//! most important encoding decision in the kernel — it is exactly where the
//! finite model diverges from the type-theoretic source text.

mod cells;
#[cfg(test)]
mod tests;
mod constr;
mod io;
mod total;
mod univ;

pub use cells::{
    disp_adjoint_equivalences, disp_invertible_2cells, disp_triangles_hold, DispAdjEquiv,
    DispInv2Cell,
};
pub use constr::{
    chaotic_disp, fill_prop_two_cell_tables, fullsub_disp, prod_disp, prop_disp, sigma_disp,
    trivial_disp, ChaoticData,
};
pub use io::{disp_from_json, disp_to_json};
pub use total::{projection_psfunctor, total_bicat};
pub use univ::{
    check_disp_univalence, disp_canonical_identity_adjequiv, is_locally_groupoidal,
    is_locally_propositional,
};

use crate::bicat::BicatPresentation;
use crate::budget::Budget;
use crate::cell::CellId;
use crate::error::{KernelError, Result};
use crate::report::{LawReport, ValidationReport, Violation};
use std::collections::BTreeMap;

/// A displayed object: its base object.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DispObj {
    pub over: CellId,
}

/// A displayed 1-cell: its base 1-cell and displayed endpoints.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DispOne {
    pub over: CellId,
    pub src: CellId,
    pub tgt: CellId,
}

/// A displayed 2-cell: its base 2-cell and displayed 1-cell endpoints.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DispTwo {
    pub over: CellId,
    pub src: CellId,
    pub tgt: CellId,
}

/// A displayed bicategory presentation. Token uniqueness is global per
/// displayed tier, so fiber membership is derived from the cell records.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DispBicatPresentation {
    pub base: BicatPresentation,
    pub d0: BTreeMap<CellId, DispObj>,
    pub d1: BTreeMap<CellId, DispOne>,
    pub d2: BTreeMap<CellId, DispTwo>,
    pub disp_id1: BTreeMap<CellId, CellId>,
    pub disp_comp1: BTreeMap<(CellId, CellId), CellId>,
    pub disp_id2: BTreeMap<CellId, CellId>,
    pub disp_vcomp: BTreeMap<(CellId, CellId), CellId>,
    pub disp_lwhisker: BTreeMap<(CellId, CellId), CellId>,
    pub disp_rwhisker: BTreeMap<(CellId, CellId), CellId>,
    pub disp_lunitor: BTreeMap<CellId, CellId>,
    pub disp_lunitor_inv: BTreeMap<CellId, CellId>,
    pub disp_runitor: BTreeMap<CellId, CellId>,
    pub disp_runitor_inv: BTreeMap<CellId, CellId>,
    pub disp_lassoc: BTreeMap<(CellId, CellId, CellId), CellId>,
    pub disp_lassoc_inv: BTreeMap<(CellId, CellId, CellId), CellId>,
}

impl DispBicatPresentation {
    pub fn dobj(&self, t: &CellId) -> Result<&DispObj> {
        self.d0.get(t).ok_or_else(|| KernelError::DanglingReference {
            context: "d0".into(),
            token: t.clone(),
        })
    }

    pub fn done(&self, t: &CellId) -> Result<&DispOne> {
        self.d1.get(t).ok_or_else(|| KernelError::DanglingReference {
            context: "d1".into(),
            token: t.clone(),
        })
    }

    pub fn dtwo(&self, t: &CellId) -> Result<&DispTwo> {
        self.d2.get(t).ok_or_else(|| KernelError::DanglingReference {
            context: "d2".into(),
            token: t.clone(),
        })
    }

    /// Displayed objects over a base object, in token order.
    pub fn d0_fiber(&self, a: &CellId) -> Vec<CellId> {
        self.d0
            .iter()
            .filter(|(_, c)| &c.over == a)
            .map(|(t, _)| t.clone())
            .collect()
    }

    /// Displayed 1-cells over `f` from `sa` to `sb`, in token order.
    pub fn d1_fiber(&self, f: &CellId, sa: &CellId, sb: &CellId) -> Vec<CellId> {
        self.d1
            .iter()
            .filter(|(_, c)| &c.over == f && &c.src == sa && &c.tgt == sb)
            .map(|(t, _)| t.clone())
            .collect()
    }

    /// Displayed 2-cells over `theta` from `sf` to `sg`, in token order.
    pub fn d2_fiber(&self, theta: &CellId, sf: &CellId, sg: &CellId) -> Vec<CellId> {
        self.d2
            .iter()
            .filter(|(_, c)| &c.over == theta && &c.src == sf && &c.tgt == sg)
            .map(|(t, _)| t.clone())
            .collect()
    }

    pub fn disp_id1(&self, sa: &CellId) -> Result<&CellId> {
        self.disp_id1
            .get(sa)
            .ok_or_else(|| KernelError::DanglingReference {
                context: "disp_id1".into(),
                token: sa.clone(),
            })
    }

    pub fn disp_comp1(&self, sf: &CellId, sg: &CellId) -> Result<&CellId> {
        self.disp_comp1
            .get(&(sf.clone(), sg.clone()))
            .ok_or_else(|| KernelError::DanglingReference {
                context: format!("disp_comp1({sf},{sg})"),
                token: sf.clone(),
            })
    }

    pub fn disp_id2(&self, sf: &CellId) -> Result<&CellId> {
        self.disp_id2
            .get(sf)
            .ok_or_else(|| KernelError::DanglingReference {
                context: "disp_id2".into(),
                token: sf.clone(),
            })
    }

    pub fn disp_vcomp(&self, st: &CellId, su: &CellId) -> Result<&CellId> {
        self.disp_vcomp
            .get(&(st.clone(), su.clone()))
            .ok_or_else(|| KernelError::DanglingReference {
                context: format!("disp_vcomp({st},{su})"),
                token: st.clone(),
            })
    }

    pub fn disp_lunitor(&self, sf: &CellId) -> Result<&CellId> {
        self.disp_lunitor
            .get(sf)
            .ok_or_else(|| KernelError::DanglingReference {
                context: "disp_lunitor".into(),
                token: sf.clone(),
            })
    }

    pub fn disp_lunitor_inv(&self, sf: &CellId) -> Result<&CellId> {
        self.disp_lunitor_inv
            .get(sf)
            .ok_or_else(|| KernelError::DanglingReference {
                context: "disp_lunitor_inv".into(),
                token: sf.clone(),
            })
    }

    /// Structural gate: every displayed cell lies over an existing base cell
    /// with compatible endpoints, and every displayed table is total on its
    /// mandated domain with entries over the correct base entry.
    pub fn validate(&self) -> ValidationReport {
        let mut v: Vec<Violation> = Vec::new();
        let p = &self.base;

        let push = |v: &mut Vec<Violation>, law: String, cells: Vec<CellId>, lhs: String, rhs: String| {
            v.push(Violation::new(law, cells, lhs, rhs));
        };

        for (t, c) in &self.d0 {
            if !p.has_object(&c.over) {
                push(&mut v, "dangling:d0.over".into(), vec![t.clone()], c.over.to_string(), "base object".into());
            }
        }
        for (t, c) in &self.d1 {
            match p.one_cells.get(&c.over) {
                None => push(&mut v, "dangling:d1.over".into(), vec![t.clone()], c.over.to_string(), "base 1-cell".into()),
                Some(oc) => {
                    let src_ok = self.d0.get(&c.src).map(|s| s.over == oc.src).unwrap_or(false);
                    let tgt_ok = self.d0.get(&c.tgt).map(|s| s.over == oc.tgt).unwrap_or(false);
                    if !src_ok || !tgt_ok {
                        push(&mut v, "typing:d1".into(), vec![t.clone()], format!("{} → {}", c.src, c.tgt), format!("displayed objects over {} → {}", oc.src, oc.tgt));
                    }
                }
            }
        }
        for (t, c) in &self.d2 {
            match p.two_cells.get(&c.over) {
                None => push(&mut v, "dangling:d2.over".into(), vec![t.clone()], c.over.to_string(), "base 2-cell".into()),
                Some(tc) => {
                    let sok = self.d1.get(&c.src).map(|s| s.over == tc.src).unwrap_or(false);
                    let tok = self.d1.get(&c.tgt).map(|s| s.over == tc.tgt).unwrap_or(false);
                    let ends_ok = match (self.d1.get(&c.src), self.d1.get(&c.tgt)) {
                        (Some(s), Some(g)) => s.src == g.src && s.tgt == g.tgt,
                        _ => false,
                    };
                    if !sok || !tok || !ends_ok {
                        push(&mut v, "typing:d2".into(), vec![t.clone()], format!("{} ⇒ {}", c.src, c.tgt), format!("displayed 1-cells over {} ⇒ {} with shared endpoints", tc.src, tc.tgt));
                    }
                }
            }
        }
        if !v.is_empty() {
            return LawReport::from_violations(v);
        }

        let expect = |v: &mut Vec<Violation>,
                      table: &str,
                      cells: Vec<CellId>,
                      got: Option<&CellId>,
                      over: &CellId,
                      src: &CellId,
                      tgt: &CellId,
                      d: &DispBicatPresentation| {
            match got {
                None => push(v, format!("totality:{table}"), cells, "missing".into(), String::new()),
                Some(r) => match d.d2.get(r) {
                    Some(rc) if &rc.over == over && &rc.src == src && &rc.tgt == tgt => {}
                    _ => push(
                        v,
                        format!("typing:{table}"),
                        cells,
                        r.to_string(),
                        format!("displayed 2-cell over {over} from {src} to {tgt}"),
                    ),
                },
            }
        };

        // disp_id1 and disp_comp1.
        for (t, c) in &self.d0 {
            match self.disp_id1.get(t) {
                None => push(&mut v, "totality:disp_id1".into(), vec![t.clone()], "missing".into(), String::new()),
                Some(r) => {
                    let over = p.id1.get(&c.over);
                    let ok = self.d1.get(r).map(|rc| Some(&rc.over) == over && &rc.src == t && &rc.tgt == t).unwrap_or(false);
                    if !ok {
                        push(&mut v, "typing:disp_id1".into(), vec![t.clone()], r.to_string(), format!("displayed 1-cell over id1({}) from {t} to {t}", c.over));
                    }
                }
            }
        }
        let d1list: Vec<_> = self.d1.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
        for (sf, fc) in &d1list {
            for (sg, gc) in &d1list {
                if fc.tgt != gc.src {
                    continue;
                }
                let base_ok = p
                    .one_cells
                    .get(&fc.over)
                    .zip(p.one_cells.get(&gc.over))
                    .map(|(a, b)| a.tgt == b.src)
                    .unwrap_or(false);
                if !base_ok {
                    continue;
                }
                match self.disp_comp1.get(&(sf.clone(), sg.clone())) {
                    None => push(&mut v, "totality:disp_comp1".into(), vec![sf.clone(), sg.clone()], "missing".into(), String::new()),
                    Some(r) => {
                        let over = p.comp1.get(&(fc.over.clone(), gc.over.clone()));
                        let ok = self
                            .d1
                            .get(r)
                            .map(|rc| Some(&rc.over) == over && rc.src == fc.src && rc.tgt == gc.tgt)
                            .unwrap_or(false);
                        if !ok {
                            push(&mut v, "typing:disp_comp1".into(), vec![sf.clone(), sg.clone()], r.to_string(), "displayed 1-cell over the base composite".into());
                        }
                    }
                }
            }
        }

        // disp_id2.
        for (sf, fc) in &d1list {
            let over = p.id2.get(&fc.over).cloned().unwrap_or_else(|| CellId::from("?"));
            expect(&mut v, "disp_id2", vec![sf.clone()], self.disp_id2.get(sf), &over, sf, sf, self);
        }

        // disp_vcomp.
        let d2list: Vec<_> = self.d2.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
        for (st, tc) in &d2list {
            for (su, uc) in &d2list {
                if tc.tgt != uc.src {
                    continue;
                }
                let over = match p.vcomp.get(&(tc.over.clone(), uc.over.clone())) {
                    Some(o) => o.clone(),
                    None => continue,
                };
                expect(
                    &mut v,
                    "disp_vcomp",
                    vec![st.clone(), su.clone()],
                    self.disp_vcomp.get(&(st.clone(), su.clone())),
                    &over,
                    &tc.src,
                    &uc.tgt,
                    self,
                );
            }
        }

        // disp_lwhisker: (f̄ : ā→b̄ over f, θ̄ over θ between 1-cells out of b̄).
        for (sf, fc) in &d1list {
            for (st, tc) in &d2list {
                let gsrc = match self.d1.get(&tc.src) {
                    Some(s) => s,
                    None => continue,
                };
                if gsrc.src != fc.tgt {
                    continue;
                }
                let over = match p
                    .lwhisker
                    .get(&(fc.over.clone(), tc.over.clone()))
                {
                    Some(o) => o.clone(),
                    None => continue,
                };
                let want_src = self.disp_comp1.get(&(sf.clone(), tc.src.clone()));
                let want_tgt = self.disp_comp1.get(&(sf.clone(), tc.tgt.clone()));
                if let (Some(ws), Some(wt)) = (want_src, want_tgt) {
                    expect(
                        &mut v,
                        "disp_lwhisker",
                        vec![sf.clone(), st.clone()],
                        self.disp_lwhisker.get(&(sf.clone(), st.clone())),
                        &over,
                        ws,
                        wt,
                        self,
                    );
                }
            }
        }

        // disp_rwhisker.
        for (st, tc) in &d2list {
            let fsrc = match self.d1.get(&tc.src) {
                Some(s) => s.clone(),
                None => continue,
            };
            for (sh, hc) in &d1list {
                if hc.src != fsrc.tgt {
                    continue;
                }
                let over = match p
                    .rwhisker
                    .get(&(tc.over.clone(), hc.over.clone()))
                {
                    Some(o) => o.clone(),
                    None => continue,
                };
                let want_src = self.disp_comp1.get(&(tc.src.clone(), sh.clone()));
                let want_tgt = self.disp_comp1.get(&(tc.tgt.clone(), sh.clone()));
                if let (Some(ws), Some(wt)) = (want_src, want_tgt) {
                    expect(
                        &mut v,
                        "disp_rwhisker",
                        vec![st.clone(), sh.clone()],
                        self.disp_rwhisker.get(&(st.clone(), sh.clone())),
                        &over,
                        ws,
                        wt,
                        self,
                    );
                }
            }
        }

        // Displayed unitors.
        for (sf, fc) in &d1list {
            let ida = self.disp_id1.get(&fc.src);
            let idb = self.disp_id1.get(&fc.tgt);
            if let Some(ida) = ida {
                if let Some(la) = self.disp_comp1.get(&(ida.clone(), sf.clone())) {
                    let over = p.lunitor.get(&fc.over).cloned().unwrap_or_else(|| CellId::from("?"));
                    expect(&mut v, "disp_lunitor", vec![sf.clone()], self.disp_lunitor.get(sf), &over, la, sf, self);
                    let over_i = p.lunitor_inv.get(&fc.over).cloned().unwrap_or_else(|| CellId::from("?"));
                    expect(&mut v, "disp_lunitor_inv", vec![sf.clone()], self.disp_lunitor_inv.get(sf), &over_i, sf, la, self);
                }
            }
            if let Some(idb) = idb {
                if let Some(ra) = self.disp_comp1.get(&(sf.clone(), idb.clone())) {
                    let over = p.runitor.get(&fc.over).cloned().unwrap_or_else(|| CellId::from("?"));
                    expect(&mut v, "disp_runitor", vec![sf.clone()], self.disp_runitor.get(sf), &over, ra, sf, self);
                    let over_i = p.runitor_inv.get(&fc.over).cloned().unwrap_or_else(|| CellId::from("?"));
                    expect(&mut v, "disp_runitor_inv", vec![sf.clone()], self.disp_runitor_inv.get(sf), &over_i, sf, ra, self);
                }
            }
        }

        // Displayed associators.
        for (sf, fc) in &d1list {
            for (sg, gc) in &d1list {
                if fc.tgt != gc.src {
                    continue;
                }
                for (sh, hc) in &d1list {
                    if gc.tgt != hc.src {
                        continue;
                    }
                    let gh = match self.disp_comp1.get(&(sg.clone(), sh.clone())) {
                        Some(x) => x.clone(),
                        None => continue,
                    };
                    let left = match self.disp_comp1.get(&(sf.clone(), gh.clone())) {
                        Some(x) => x.clone(),
                        None => continue,
                    };
                    let fg = match self.disp_comp1.get(&(sf.clone(), sg.clone())) {
                        Some(x) => x.clone(),
                        None => continue,
                    };
                    let right = match self.disp_comp1.get(&(fg.clone(), sh.clone())) {
                        Some(x) => x.clone(),
                        None => continue,
                    };
                    let key = (sf.clone(), sg.clone(), sh.clone());
                    let base_key = (fc.over.clone(), gc.over.clone(), hc.over.clone());
                    if let Some(over) = p.lassoc.get(&base_key) {
                        expect(&mut v, "disp_lassoc", vec![sf.clone(), sg.clone(), sh.clone()], self.disp_lassoc.get(&key), over, &left, &right, self);
                    }
                    if let Some(over_i) = p.lassoc_inv.get(&base_key) {
                        expect(&mut v, "disp_lassoc_inv", vec![sf.clone(), sg.clone(), sh.clone()], self.disp_lassoc_inv.get(&key), over_i, &right, &left, self);
                    }
                }
            }
        }

        LawReport::from_violations(v)
    }
}

/// Checks every displayed law family as token equalities over the base laws.
/// Since total-bicategory tables are componentwise, this is decided by law
/// checking the total presentation and projecting witnesses to their
/// displayed components; the base is assumed law-passing.
pub fn check_disp_laws(d: &DispBicatPresentation, budget: &Budget) -> Result<LawReport> {
    let structural = d.validate();
    if !structural.passed() {
        let first = &structural.violations[0];
        return Err(KernelError::TypeMismatch(format!(
            "displayed presentation invalid: {} at {:?}",
            first.law, first.cells
        )));
    }
    let total = total_bicat(d)?;
    let report = crate::bicat::check_laws(&total, budget)?;
    if report.passed() {
        return Ok(report);
    }
    let strip = |c: &CellId| -> CellId {
        match c.as_str().split_once(crate::cell::PAIR_SEP) {
            Some((_, disp)) => CellId::from(disp),
            None => c.clone(),
        }
    };
    let violations = report
        .violations
        .into_iter()
        .map(|v| Violation {
            law: v.law,
            cells: v.cells.iter().map(strip).collect(),
            lhs: strip(&CellId::from(v.lhs)).0,
            rhs: strip(&CellId::from(v.rhs)).0,
        })
        .collect();
    Ok(LawReport::from_violations(violations))
}
