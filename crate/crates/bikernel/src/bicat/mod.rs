//! Finitely presented bicategories.
//!
//! A presentation stores every tier as a token set and every operation as a
//! total table on its mandated domain. The tables carry both directions of
//! the unitors and the associator, so the inverse laws are checks rather than
//! definitions. Whiskering is primitive; horizontal composition of 2-cells is
//! the derived composite `(θ ▷ h') • (g' ◁ γ)` and is not stored.

mod gen;
mod io;
mod laws;
mod ops;
#[cfg(test)]
mod tests;

pub use gen::{
    chaotic_bicat, delta2, discrete_bicat, monoid_delooping, terminal_bicat, two_cell_delooping,
    weak_unit_bicat, AbGroupTable, MonoidTable,
};
pub use io::{presentation_from_json, presentation_to_json};
pub use laws::{check_laws, LAW_TAGS};
pub use ops::{
    adjoint_equivalences, canonical_identity_adjequiv, check_strict, hom_category,
    invertible_2cells, is_biinitial, op_bicat, strict_to_two_cat, triangles_hold, AdjEquiv,
    BiinitialReport, Inv2Cell, StrictReport, TwoCatPresentation,
};

use crate::cell::CellId;
use crate::error::{KernelError, Result};
use crate::report::{LawReport, ValidationReport, Violation};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Source and target of a 1-cell (objects).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OneCell {
    pub src: CellId,
    pub tgt: CellId,
}

/// Source and target of a 2-cell (parallel 1-cells).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoCell {
    pub src: CellId,
    pub tgt: CellId,
}

/// A finite bicategory presentation: identifier tiers plus total operation
/// tables. Values are immutable after construction and all operations on them
/// are pure, so presentations can be shared freely across threads.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BicatPresentation {
    pub objects: BTreeSet<CellId>,
    pub one_cells: BTreeMap<CellId, OneCell>,
    pub two_cells: BTreeMap<CellId, TwoCell>,
    /// object → identity 1-cell
    pub id1: BTreeMap<CellId, CellId>,
    /// composable (f, g) → f·g
    pub comp1: BTreeMap<(CellId, CellId), CellId>,
    /// 1-cell → identity 2-cell
    pub id2: BTreeMap<CellId, CellId>,
    /// vertically composable (θ, γ) → θ•γ
    pub vcomp: BTreeMap<(CellId, CellId), CellId>,
    /// (1-cell f, 2-cell θ) → f◁θ
    pub lwhisker: BTreeMap<(CellId, CellId), CellId>,
    /// (2-cell θ, 1-cell h) → θ▷h
    pub rwhisker: BTreeMap<(CellId, CellId), CellId>,
    /// 1-cell f → λ(f) : id1(src f)·f ⇒ f
    pub lunitor: BTreeMap<CellId, CellId>,
    pub lunitor_inv: BTreeMap<CellId, CellId>,
    /// 1-cell f → ρ(f) : f·id1(tgt f) ⇒ f
    pub runitor: BTreeMap<CellId, CellId>,
    pub runitor_inv: BTreeMap<CellId, CellId>,
    /// composable (f, g, h) → α(f,g,h) : f·(g·h) ⇒ (f·g)·h
    pub lassoc: BTreeMap<(CellId, CellId, CellId), CellId>,
    pub lassoc_inv: BTreeMap<(CellId, CellId, CellId), CellId>,
}

impl BicatPresentation {
    /// Builds a presentation from token lists, rejecting duplicate tokens
    /// within a tier.
    pub fn from_parts(
        objects: Vec<CellId>,
        one_cells: Vec<(CellId, OneCell)>,
        two_cells: Vec<(CellId, TwoCell)>,
    ) -> Result<Self> {
        let mut p = BicatPresentation::default();
        for o in objects {
            if !p.objects.insert(o.clone()) {
                return Err(KernelError::DuplicateId {
                    tier: "objects".into(),
                    token: o,
                });
            }
        }
        for (t, c) in one_cells {
            if p.one_cells.insert(t.clone(), c).is_some() {
                return Err(KernelError::DuplicateId {
                    tier: "one_cells".into(),
                    token: t,
                });
            }
        }
        for (t, c) in two_cells {
            if p.two_cells.insert(t.clone(), c).is_some() {
                return Err(KernelError::DuplicateId {
                    tier: "two_cells".into(),
                    token: t,
                });
            }
        }
        Ok(p)
    }

    pub fn one_cell(&self, f: &CellId) -> Result<&OneCell> {
        self.one_cells
            .get(f)
            .ok_or_else(|| KernelError::DanglingReference {
                context: "one_cells".into(),
                token: f.clone(),
            })
    }

    pub fn two_cell(&self, t: &CellId) -> Result<&TwoCell> {
        self.two_cells
            .get(t)
            .ok_or_else(|| KernelError::DanglingReference {
                context: "two_cells".into(),
                token: t.clone(),
            })
    }

    pub fn has_object(&self, a: &CellId) -> bool {
        self.objects.contains(a)
    }

    pub fn id1(&self, a: &CellId) -> Result<&CellId> {
        self.id1.get(a).ok_or_else(|| KernelError::DanglingReference {
            context: "id1".into(),
            token: a.clone(),
        })
    }

    pub fn comp1(&self, f: &CellId, g: &CellId) -> Result<&CellId> {
        self.comp1
            .get(&(f.clone(), g.clone()))
            .ok_or_else(|| KernelError::DanglingReference {
                context: format!("comp1({f},{g})"),
                token: f.clone(),
            })
    }

    pub fn id2(&self, f: &CellId) -> Result<&CellId> {
        self.id2.get(f).ok_or_else(|| KernelError::DanglingReference {
            context: "id2".into(),
            token: f.clone(),
        })
    }

    pub fn vcomp(&self, t: &CellId, u: &CellId) -> Result<&CellId> {
        self.vcomp
            .get(&(t.clone(), u.clone()))
            .ok_or_else(|| KernelError::DanglingReference {
                context: format!("vcomp({t},{u})"),
                token: t.clone(),
            })
    }

    /// Vertical composite of a chain of 2-cells; the empty chain is not allowed.
    pub fn vcomp_chain<'a>(&self, cells: impl IntoIterator<Item = &'a CellId>) -> Result<CellId> {
        let mut it = cells.into_iter();
        let mut acc = it
            .next()
            .ok_or_else(|| KernelError::ConstructionFailed("empty vertical chain".into()))?
            .clone();
        for next in it {
            acc = self.vcomp(&acc, next)?.clone();
        }
        Ok(acc)
    }

    pub fn lwhisker(&self, f: &CellId, t: &CellId) -> Result<&CellId> {
        self.lwhisker
            .get(&(f.clone(), t.clone()))
            .ok_or_else(|| KernelError::DanglingReference {
                context: format!("lwhisker({f},{t})"),
                token: t.clone(),
            })
    }

    pub fn rwhisker(&self, t: &CellId, h: &CellId) -> Result<&CellId> {
        self.rwhisker
            .get(&(t.clone(), h.clone()))
            .ok_or_else(|| KernelError::DanglingReference {
                context: format!("rwhisker({t},{h})"),
                token: t.clone(),
            })
    }

    pub fn lunitor(&self, f: &CellId) -> Result<&CellId> {
        self.lunitor
            .get(f)
            .ok_or_else(|| KernelError::DanglingReference {
                context: "lunitor".into(),
                token: f.clone(),
            })
    }

    pub fn lunitor_inv(&self, f: &CellId) -> Result<&CellId> {
        self.lunitor_inv
            .get(f)
            .ok_or_else(|| KernelError::DanglingReference {
                context: "lunitor_inv".into(),
                token: f.clone(),
            })
    }

    pub fn runitor(&self, f: &CellId) -> Result<&CellId> {
        self.runitor
            .get(f)
            .ok_or_else(|| KernelError::DanglingReference {
                context: "runitor".into(),
                token: f.clone(),
            })
    }

    pub fn runitor_inv(&self, f: &CellId) -> Result<&CellId> {
        self.runitor_inv
            .get(f)
            .ok_or_else(|| KernelError::DanglingReference {
                context: "runitor_inv".into(),
                token: f.clone(),
            })
    }

    pub fn lassoc(&self, f: &CellId, g: &CellId, h: &CellId) -> Result<&CellId> {
        self.lassoc
            .get(&(f.clone(), g.clone(), h.clone()))
            .ok_or_else(|| KernelError::DanglingReference {
                context: format!("lassoc({f},{g},{h})"),
                token: f.clone(),
            })
    }

    pub fn lassoc_inv(&self, f: &CellId, g: &CellId, h: &CellId) -> Result<&CellId> {
        self.lassoc_inv
            .get(&(f.clone(), g.clone(), h.clone()))
            .ok_or_else(|| KernelError::DanglingReference {
                context: format!("lassoc_inv({f},{g},{h})"),
                token: f.clone(),
            })
    }

    /// All 1-cells from `a` to `b`, in token order.
    pub fn one_cells_between(&self, a: &CellId, b: &CellId) -> Vec<CellId> {
        self.one_cells
            .iter()
            .filter(|(_, c)| &c.src == a && &c.tgt == b)
            .map(|(t, _)| t.clone())
            .collect()
    }

    /// All 2-cells from `f` to `g`, in token order.
    pub fn two_cells_between(&self, f: &CellId, g: &CellId) -> Vec<CellId> {
        self.two_cells
            .iter()
            .filter(|(_, c)| &c.src == f && &c.tgt == g)
            .map(|(t, _)| t.clone())
            .collect()
    }

    /// Composable 1-cell pairs, in token order.
    pub fn composable_pairs(&self) -> Vec<(CellId, CellId)> {
        let mut out = Vec::new();
        for (f, fc) in &self.one_cells {
            for (g, gc) in &self.one_cells {
                if fc.tgt == gc.src {
                    out.push((f.clone(), g.clone()));
                }
            }
        }
        out
    }

    /// Composable 1-cell triples, in token order.
    pub fn composable_triples(&self) -> Vec<(CellId, CellId, CellId)> {
        let mut out = Vec::new();
        for (f, fc) in &self.one_cells {
            for (g, gc) in &self.one_cells {
                if fc.tgt != gc.src {
                    continue;
                }
                for (h, hc) in &self.one_cells {
                    if gc.tgt == hc.src {
                        out.push((f.clone(), g.clone(), h.clone()));
                    }
                }
            }
        }
        out
    }

    /// Vertically composable 2-cell pairs, in token order.
    pub fn vcomposable_pairs(&self) -> Vec<(CellId, CellId)> {
        let mut out = Vec::new();
        for (t, tc) in &self.two_cells {
            for (u, uc) in &self.two_cells {
                if tc.tgt == uc.src {
                    out.push((t.clone(), u.clone()));
                }
            }
        }
        out
    }

    /// Validation gate: totality of every table on its mandated domain and
    /// well-typedness of every entry. This runs before any law check.
    pub fn validate(&self) -> ValidationReport {
        let mut v: Vec<Violation> = Vec::new();

        let miss = |v: &mut Vec<Violation>, table: &str, cells: Vec<CellId>| {
            v.push(Violation::new(
                format!("totality:{table}"),
                cells,
                "missing",
                "",
            ));
        };
        let bad = |v: &mut Vec<Violation>, table: &str, cells: Vec<CellId>, got: &CellId, want: String| {
            v.push(Violation::new(
                format!("typing:{table}"),
                cells,
                got.to_string(),
                want,
            ));
        };
        let dangling = |v: &mut Vec<Violation>, ctx: &str, t: &CellId| {
            v.push(Violation::new(
                format!("dangling:{ctx}"),
                vec![t.clone()],
                t.to_string(),
                "unknown token",
            ));
        };

        // Tier references.
        for (f, c) in &self.one_cells {
            if !self.has_object(&c.src) {
                dangling(&mut v, "one_cells.src", f);
            }
            if !self.has_object(&c.tgt) {
                dangling(&mut v, "one_cells.tgt", f);
            }
        }
        for (t, c) in &self.two_cells {
            match (self.one_cells.get(&c.src), self.one_cells.get(&c.tgt)) {
                (Some(s), Some(g)) => {
                    if s.src != g.src || s.tgt != g.tgt {
                        bad(
                            &mut v,
                            "two_cells",
                            vec![t.clone()],
                            t,
                            "parallel source and target 1-cells".into(),
                        );
                    }
                }
                _ => dangling(&mut v, "two_cells", t),
            }
        }
        if !v.is_empty() {
            // Structure is broken; table checks would cascade.
            return LawReport::from_violations(v);
        }

        // id1: total on objects, typed a → a.
        for a in &self.objects {
            match self.id1.get(a) {
                None => miss(&mut v, "id1", vec![a.clone()]),
                Some(i) => match self.one_cells.get(i) {
                    None => dangling(&mut v, "id1", i),
                    Some(c) => {
                        if &c.src != a || &c.tgt != a {
                            bad(&mut v, "id1", vec![a.clone()], i, format!("1-cell {a} → {a}"));
                        }
                    }
                },
            }
        }
        for (a, _) in self.id1.iter().filter(|(a, _)| !self.has_object(a)) {
            dangling(&mut v, "id1.key", a);
        }

        // comp1: total exactly on composable pairs.
        for (f, g) in self.composable_pairs() {
            match self.comp1.get(&(f.clone(), g.clone())) {
                None => miss(&mut v, "comp1", vec![f.clone(), g.clone()]),
                Some(fg) => match self.one_cells.get(fg) {
                    None => dangling(&mut v, "comp1", fg),
                    Some(c) => {
                        let fs = &self.one_cells[&f];
                        let gs = &self.one_cells[&g];
                        if c.src != fs.src || c.tgt != gs.tgt {
                            bad(
                                &mut v,
                                "comp1",
                                vec![f.clone(), g.clone()],
                                fg,
                                format!("1-cell {} → {}", fs.src, gs.tgt),
                            );
                        }
                    }
                },
            }
        }
        for (f, g) in self.comp1.keys() {
            let ok = match (self.one_cells.get(f), self.one_cells.get(g)) {
                (Some(fc), Some(gc)) => fc.tgt == gc.src,
                _ => false,
            };
            if !ok {
                bad(
                    &mut v,
                    "comp1",
                    vec![f.clone(), g.clone()],
                    f,
                    "composable pair".into(),
                );
            }
        }

        // id2: total on 1-cells, typed f ⇒ f.
        for f in self.one_cells.keys() {
            match self.id2.get(f) {
                None => miss(&mut v, "id2", vec![f.clone()]),
                Some(e) => match self.two_cells.get(e) {
                    None => dangling(&mut v, "id2", e),
                    Some(c) => {
                        if &c.src != f || &c.tgt != f {
                            bad(&mut v, "id2", vec![f.clone()], e, format!("2-cell {f} ⇒ {f}"));
                        }
                    }
                },
            }
        }

        // vcomp: total exactly on vertically composable pairs.
        for (t, u) in self.vcomposable_pairs() {
            match self.vcomp.get(&(t.clone(), u.clone())) {
                None => miss(&mut v, "vcomp", vec![t.clone(), u.clone()]),
                Some(r) => match self.two_cells.get(r) {
                    None => dangling(&mut v, "vcomp", r),
                    Some(c) => {
                        let tc = &self.two_cells[&t];
                        let uc = &self.two_cells[&u];
                        if c.src != tc.src || c.tgt != uc.tgt {
                            bad(
                                &mut v,
                                "vcomp",
                                vec![t.clone(), u.clone()],
                                r,
                                format!("2-cell {} ⇒ {}", tc.src, uc.tgt),
                            );
                        }
                    }
                },
            }
        }
        for (t, u) in self.vcomp.keys() {
            let ok = match (self.two_cells.get(t), self.two_cells.get(u)) {
                (Some(tc), Some(uc)) => tc.tgt == uc.src,
                _ => false,
            };
            if !ok {
                bad(
                    &mut v,
                    "vcomp",
                    vec![t.clone(), u.clone()],
                    t,
                    "vertically composable pair".into(),
                );
            }
        }

        // lwhisker: domain (f: a→b, θ: g⇒h with g,h: b→c).
        for (f, fc) in &self.one_cells {
            for (t, tc) in &self.two_cells {
                let gs = &self.one_cells[&tc.src];
                if fc.tgt != gs.src {
                    continue;
                }
                match self.lwhisker.get(&(f.clone(), t.clone())) {
                    None => miss(&mut v, "lwhisker", vec![f.clone(), t.clone()]),
                    Some(r) => {
                        let want_src = self.comp1.get(&(f.clone(), tc.src.clone()));
                        let want_tgt = self.comp1.get(&(f.clone(), tc.tgt.clone()));
                        match (self.two_cells.get(r), want_src, want_tgt) {
                            (Some(rc), Some(ws), Some(wt)) => {
                                if &rc.src != ws || &rc.tgt != wt {
                                    bad(
                                        &mut v,
                                        "lwhisker",
                                        vec![f.clone(), t.clone()],
                                        r,
                                        format!("2-cell {ws} ⇒ {wt}"),
                                    );
                                }
                            }
                            _ => dangling(&mut v, "lwhisker", r),
                        }
                    }
                }
            }
        }

        // rwhisker: domain (θ: f⇒g in hom(a,b), h: b→c).
        for (t, tc) in &self.two_cells {
            let fs = &self.one_cells[&tc.src];
            for (h, hc) in &self.one_cells {
                if fs.tgt != hc.src {
                    continue;
                }
                match self.rwhisker.get(&(t.clone(), h.clone())) {
                    None => miss(&mut v, "rwhisker", vec![t.clone(), h.clone()]),
                    Some(r) => {
                        let want_src = self.comp1.get(&(tc.src.clone(), h.clone()));
                        let want_tgt = self.comp1.get(&(tc.tgt.clone(), h.clone()));
                        match (self.two_cells.get(r), want_src, want_tgt) {
                            (Some(rc), Some(ws), Some(wt)) => {
                                if &rc.src != ws || &rc.tgt != wt {
                                    bad(
                                        &mut v,
                                        "rwhisker",
                                        vec![t.clone(), h.clone()],
                                        r,
                                        format!("2-cell {ws} ⇒ {wt}"),
                                    );
                                }
                            }
                            _ => dangling(&mut v, "rwhisker", r),
                        }
                    }
                }
            }
        }

        // Unitors: total on 1-cells, typed against the unit composites.
        for (f, fc) in &self.one_cells {
            let la = self.id1.get(&fc.src).and_then(|i| {
                self.comp1.get(&(i.clone(), f.clone()))
            });
            let ra = self.id1.get(&fc.tgt).and_then(|i| {
                self.comp1.get(&(f.clone(), i.clone()))
            });
            let unitor = |v: &mut Vec<Violation>,
                              table: &str,
                              map: &BTreeMap<CellId, CellId>,
                              want: Option<(&CellId, &CellId)>| {
                match map.get(f) {
                    None => miss(v, table, vec![f.clone()]),
                    Some(r) => match (self.two_cells.get(r), want) {
                        (Some(rc), Some((ws, wt))) => {
                            if &rc.src != ws || &rc.tgt != wt {
                                bad(
                                    v,
                                    table,
                                    vec![f.clone()],
                                    r,
                                    format!("2-cell {ws} ⇒ {wt}"),
                                );
                            }
                        }
                        _ => dangling(v, table, r),
                    },
                }
            };
            unitor(&mut v, "lunitor", &self.lunitor, la.map(|c| (c, f)));
            unitor(&mut v, "lunitor_inv", &self.lunitor_inv, la.map(|c| (f, c)));
            unitor(&mut v, "runitor", &self.runitor, ra.map(|c| (c, f)));
            unitor(&mut v, "runitor_inv", &self.runitor_inv, ra.map(|c| (f, c)));
        }

        // Associators: total on composable triples, typed f·(g·h) ⇒ (f·g)·h.
        for (f, g, h) in self.composable_triples() {
            let left = self
                .comp1
                .get(&(g.clone(), h.clone()))
                .and_then(|gh| self.comp1.get(&(f.clone(), gh.clone())));
            let right = self
                .comp1
                .get(&(f.clone(), g.clone()))
                .and_then(|fg| self.comp1.get(&(fg.clone(), h.clone())));
            let key = (f.clone(), g.clone(), h.clone());
            for (table, map, want) in [
                ("lassoc", &self.lassoc, left.zip(right)),
                ("lassoc_inv", &self.lassoc_inv, right.zip(left)),
            ] {
                match map.get(&key) {
                    None => miss(&mut v, table, vec![f.clone(), g.clone(), h.clone()]),
                    Some(r) => match (self.two_cells.get(r), want) {
                        (Some(rc), Some((ws, wt))) => {
                            if &rc.src != ws || &rc.tgt != wt {
                                bad(
                                    &mut v,
                                    table,
                                    vec![f.clone(), g.clone(), h.clone()],
                                    r,
                                    format!("2-cell {ws} ⇒ {wt}"),
                                );
                            }
                        }
                        _ => dangling(&mut v, table, r),
                    },
                }
            }
        }

        LawReport::from_violations(v)
    }
}

/// Validation gate before law checking (well-typedness and totality only).
pub fn validate_presentation(p: &BicatPresentation) -> ValidationReport {
    p.validate()
}
