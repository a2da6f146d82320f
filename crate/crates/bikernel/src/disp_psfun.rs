//! Displayed pseudofunctors, pseudotransformations, invertible
//! modifications, their identity/composition, totalization, and displayed
//! biequivalences.
//!
//! Displayed laws are token equalities over the base laws (the same
//! transport elimination as for displayed presentations), so every check
//! evaluates the displayed tables and compares tokens.


use crate::budget::Budget;
use crate::cell::{pair_token, CellId};
use crate::display::{DispBicatPresentation, DispInv2Cell};
use crate::error::{KernelError, Result};
use crate::psfun::{
    check_biequivalence, BiequivalenceData, ModificationData, PseudofunctorData, PstransData,
};
use crate::report::{LawReport, Violation};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Displayed pseudofunctor data over a base pseudofunctor: fiber maps plus
/// displayed identitor and compositor families.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DispPsfunctorData {
    pub f0: BTreeMap<CellId, CellId>,
    pub f1: BTreeMap<CellId, CellId>,
    pub f2: BTreeMap<CellId, CellId>,
    /// displayed object → displayed invertible 2-cell over the base identitor
    pub identitor: BTreeMap<CellId, DispInv2Cell>,
    /// (displayed 1-cell, displayed 1-cell) → displayed invertible 2-cell
    /// over the base compositor
    #[serde(with = "crate::serde_keys::key2")]
    pub compositor: BTreeMap<(CellId, CellId), DispInv2Cell>,
}

impl DispPsfunctorData {
    pub fn f0(&self, x: &CellId) -> Result<&CellId> {
        self.f0.get(x).ok_or_else(|| KernelError::DanglingReference {
            context: "disp_psfunctor.f0".into(),
            token: x.clone(),
        })
    }

    pub fn f1(&self, x: &CellId) -> Result<&CellId> {
        self.f1.get(x).ok_or_else(|| KernelError::DanglingReference {
            context: "disp_psfunctor.f1".into(),
            token: x.clone(),
        })
    }

    pub fn f2(&self, x: &CellId) -> Result<&CellId> {
        self.f2.get(x).ok_or_else(|| KernelError::DanglingReference {
            context: "disp_psfunctor.f2".into(),
            token: x.clone(),
        })
    }
}

/// Displayed pseudotransformation data over a base pseudotransformation.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DispPstransData {
    /// displayed object → displayed 1-cell over η0(base object)
    pub eta0: BTreeMap<CellId, CellId>,
    /// displayed 1-cell → displayed invertible 2-cell over η1(base 1-cell)
    pub eta1: BTreeMap<CellId, DispInv2Cell>,
}

/// Displayed invertible modification data over a base modification.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DispInvModificationData {
    /// displayed object → displayed invertible 2-cell over m(base object)
    pub gamma: BTreeMap<CellId, DispInv2Cell>,
}

/// A displayed biequivalence over a base biequivalence.
#[derive(Debug, Clone, Default)]
pub struct DispBiequivalenceData {
    pub l: DispPsfunctorData,
    pub r: DispPsfunctorData,
    pub eta: DispPstransData,
    pub eta_i: DispPstransData,
    pub eps: DispPstransData,
    pub eps_i: DispPstransData,
    pub m1: DispInvModificationData,
    pub m2: DispInvModificationData,
    pub m3: DispInvModificationData,
    pub m4: DispInvModificationData,
}

fn verify_disp_inv(
    d: &DispBicatPresentation,
    cell: &DispInv2Cell,
    over: &CellId,
    src: &CellId,
    tgt: &CellId,
) -> Result<bool> {
    let tc = match d.d2.get(&cell.theta) {
        Some(c) => c,
        None => return Ok(false),
    };
    if &tc.over != over || &tc.src != src || &tc.tgt != tgt {
        return Ok(false);
    }
    let fwd = d.disp_vcomp(&cell.theta, &cell.theta_inv)?;
    let bwd = d.disp_vcomp(&cell.theta_inv, &cell.theta)?;
    Ok(fwd == d.disp_id2(src)? && bwd == d.disp_id2(tgt)?)
}

/// Validates displayed pseudofunctor data over a validated base
/// pseudofunctor: fiber typing and the displayed versions of the
/// pseudofunctor laws as token equalities.
pub fn check_disp_psfunctor(
    d1: &DispBicatPresentation,
    d2: &DispBicatPresentation,
    base: &PseudofunctorData,
    df: &DispPsfunctorData,
) -> Result<LawReport> {
    let mut v: Vec<Violation> = Vec::new();
    let mut flag = |law: &str, cells: Vec<CellId>, note: &str| {
        v.push(Violation::new(law, cells, note.to_string(), String::new()));
    };

    for (x, xc) in &d1.d0 {
        match df.f0.get(x) {
            Some(y) => {
                let want = base.f0(&xc.over)?;
                if d2.d0.get(y).map(|c| &c.over) != Some(want) {
                    flag("disp_psfun:f0-typing", vec![x.clone()], "image not over F0(base)");
                }
            }
            None => flag("disp_psfun:f0", vec![x.clone()], "missing image"),
        }
    }
    for (x, xc) in &d1.d1 {
        match df.f1.get(x) {
            Some(y) => {
                let ok = (|| -> Result<bool> {
                    let want_over = base.f1(&xc.over)?;
                    let yc = d2.done(y)?;
                    Ok(&yc.over == want_over
                        && &yc.src == df.f0(&xc.src)?
                        && &yc.tgt == df.f0(&xc.tgt)?)
                })();
                if !matches!(ok, Ok(true)) {
                    flag("disp_psfun:f1-typing", vec![x.clone()], "image not over F1(base) with mapped endpoints");
                }
            }
            None => flag("disp_psfun:f1", vec![x.clone()], "missing image"),
        }
    }
    for (x, xc) in &d1.d2 {
        match df.f2.get(x) {
            Some(y) => {
                let ok = (|| -> Result<bool> {
                    let want_over = base.f2(&xc.over)?;
                    let yc = d2.dtwo(y)?;
                    Ok(&yc.over == want_over
                        && &yc.src == df.f1(&xc.src)?
                        && &yc.tgt == df.f1(&xc.tgt)?)
                })();
                if !matches!(ok, Ok(true)) {
                    flag("disp_psfun:f2-typing", vec![x.clone()], "image not over F2(base) with mapped endpoints");
                }
            }
            None => flag("disp_psfun:f2", vec![x.clone()], "missing image"),
        }
    }
    for (x, xc) in &d1.d0 {
        match df.identitor.get(x) {
            Some(cell) => {
                let ok = (|| -> Result<bool> {
                    let over = base.identitor(&xc.over)?;
                    let src = d2.disp_id1(df.f0(x)?)?.clone();
                    let tgt = df.f1(d1.disp_id1(x)?)?.clone();
                    verify_disp_inv(d2, cell, over, &src, &tgt)
                })();
                if !matches!(ok, Ok(true)) {
                    flag("disp_psfun:identitor", vec![x.clone()], "not a displayed invertible 2-cell over the base identitor");
                }
            }
            None => flag("disp_psfun:identitor", vec![x.clone()], "missing"),
        }
    }
    let d1list: Vec<_> = d1.d1.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
    for (sf, fc) in &d1list {
        for (sg, gc) in &d1list {
            if fc.tgt != gc.src {
                continue;
            }
            if !d1
                .base
                .one_cells
                .get(&fc.over)
                .zip(d1.base.one_cells.get(&gc.over))
                .map(|(a, b)| a.tgt == b.src)
                .unwrap_or(false)
            {
                continue;
            }
            match df.compositor.get(&(sf.clone(), sg.clone())) {
                Some(cell) => {
                    let ok = (|| -> Result<bool> {
                        let over = base.compositor(&fc.over, &gc.over)?;
                        let src = d2.disp_comp1(df.f1(sf)?, df.f1(sg)?)?.clone();
                        let tgt = df.f1(d1.disp_comp1(sf, sg)?)?.clone();
                        verify_disp_inv(d2, cell, over, &src, &tgt)
                    })();
                    if !matches!(ok, Ok(true)) {
                        flag(
                            "disp_psfun:compositor",
                            vec![sf.clone(), sg.clone()],
                            "not a displayed invertible 2-cell over the base compositor",
                        );
                    }
                }
                None => flag("disp_psfun:compositor", vec![sf.clone(), sg.clone()], "missing"),
            }
        }
    }
    if !v.is_empty() {
        return Ok(LawReport::from_violations(v));
    }

    let mut chk = |law: &str, cells: Vec<CellId>, lhs: Result<CellId>, rhs: Result<CellId>| {
        let show = |r: &Result<CellId>| match r {
            Ok(c) => c.to_string(),
            Err(e) => format!("<{e}>"),
        };
        if !matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b) {
            v.push(Violation::new(law, cells, show(&lhs), show(&rhs)));
        }
    };

    // Displayed F2 functoriality.
    for (sf, _) in &d1list {
        chk(
            "disp_psfun:id2",
            vec![sf.clone()],
            d1.disp_id2(sf).and_then(|i| df.f2(i)).cloned(),
            df.f1(sf).and_then(|x| d2.disp_id2(x)).cloned(),
        );
    }
    let d2cells: Vec<_> = d1.d2.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
    for (st, tc) in &d2cells {
        for (su, uc) in &d2cells {
            if tc.tgt != uc.src {
                continue;
            }
            if !d1.disp_vcomp.contains_key(&(st.clone(), su.clone())) {
                continue;
            }
            chk(
                "disp_psfun:vcomp",
                vec![st.clone(), su.clone()],
                d1.disp_vcomp(st, su).and_then(|x| df.f2(x)).cloned(),
                (|| {
                    let a = df.f2(st)?;
                    let bb = df.f2(su)?;
                    d2.disp_vcomp(a, bb).cloned()
                })(),
            );
        }
    }

    // Displayed unitor coherence.
    for (sf, fc) in &d1list {
        let lhs = df.f1(sf).and_then(|x| d2.disp_lunitor(x)).cloned();
        let rhs = (|| {
            let ga = &df.identitor[&fc.src];
            let ff = df.f1(sf)?;
            let w = d2
                .disp_rwhisker
                .get(&(ga.theta.clone(), ff.clone()))
                .cloned()
                .ok_or_else(|| KernelError::DanglingReference {
                    context: "disp_rwhisker".into(),
                    token: ga.theta.clone(),
                })?;
            let dl = &df.compositor[&(d1.disp_id1(&fc.src)?.clone(), sf.clone())];
            let f_lam = df.f2(d1.disp_lunitor(sf)?)?.clone();
            let acc = d2.disp_vcomp(&w, &dl.theta)?.clone();
            d2.disp_vcomp(&acc, &f_lam).cloned()
        })();
        chk("disp_psfun:lunitor", vec![sf.clone()], lhs, rhs);

        let lhs = df
            .f1(sf)
            .and_then(|x| {
                d2.disp_runitor
                    .get(x)
                    .ok_or_else(|| KernelError::DanglingReference {
                        context: "disp_runitor".into(),
                        token: x.clone(),
                    })
            }).cloned();
        let rhs = (|| {
            let gb = &df.identitor[&fc.tgt];
            let ff = df.f1(sf)?;
            let w = d2
                .disp_lwhisker
                .get(&(ff.clone(), gb.theta.clone()))
                .cloned()
                .ok_or_else(|| KernelError::DanglingReference {
                    context: "disp_lwhisker".into(),
                    token: gb.theta.clone(),
                })?;
            let dl = &df.compositor[&(sf.clone(), d1.disp_id1(&fc.tgt)?.clone())];
            let f_rho = df.f2(
                d1.disp_runitor
                    .get(sf)
                    .ok_or_else(|| KernelError::DanglingReference {
                        context: "disp_runitor".into(),
                        token: sf.clone(),
                    })?,
            )?
            .clone();
            let acc = d2.disp_vcomp(&w, &dl.theta)?.clone();
            d2.disp_vcomp(&acc, &f_rho).cloned()
        })();
        chk("disp_psfun:runitor", vec![sf.clone()], lhs, rhs);
    }

    // Displayed associator coherence.
    for (sf, fc) in &d1list {
        for (sg, gc) in &d1list {
            if fc.tgt != gc.src {
                continue;
            }
            for (sh, hc) in &d1list {
                if gc.tgt != hc.src {
                    continue;
                }
                if !d1
                    .disp_lassoc
                    .contains_key(&(sf.clone(), sg.clone(), sh.clone()))
                {
                    continue;
                }
                let lhs = (|| {
                    let ff = df.f1(sf)?.clone();
                    let dgh = &df.compositor[&(sg.clone(), sh.clone())];
                    let w = d2
                        .disp_lwhisker
                        .get(&(ff.clone(), dgh.theta.clone()))
                        .cloned()
                        .ok_or_else(|| KernelError::DanglingReference {
                            context: "disp_lwhisker".into(),
                            token: dgh.theta.clone(),
                        })?;
                    let gh = d1.disp_comp1(sg, sh)?.clone();
                    let df_gh = &df.compositor[&(sf.clone(), gh)];
                    let fa = df.f2(
                        d1.disp_lassoc
                            .get(&(sf.clone(), sg.clone(), sh.clone()))
                            .unwrap(),
                    )?
                    .clone();
                    let acc = d2.disp_vcomp(&w, &df_gh.theta)?.clone();
                    d2.disp_vcomp(&acc, &fa).cloned()
                })();
                let rhs = (|| {
                    let ff = df.f1(sf)?.clone();
                    let fg_ = df.f1(sg)?.clone();
                    let fh = df.f1(sh)?.clone();
                    let a = d2
                        .disp_lassoc
                        .get(&(ff.clone(), fg_.clone(), fh.clone()))
                        .cloned()
                        .ok_or_else(|| KernelError::DanglingReference {
                            context: "disp_lassoc".into(),
                            token: ff.clone(),
                        })?;
                    let dfg = &df.compositor[&(sf.clone(), sg.clone())];
                    let w = d2
                        .disp_rwhisker
                        .get(&(dfg.theta.clone(), fh.clone()))
                        .cloned()
                        .ok_or_else(|| KernelError::DanglingReference {
                            context: "disp_rwhisker".into(),
                            token: dfg.theta.clone(),
                        })?;
                    let fg = d1.disp_comp1(sf, sg)?.clone();
                    let dfg_h = &df.compositor[&(fg, sh.clone())];
                    let acc = d2.disp_vcomp(&a, &w)?.clone();
                    d2.disp_vcomp(&acc, &dfg_h.theta).cloned()
                })();
                chk(
                    "disp_psfun:assoc",
                    vec![sf.clone(), sg.clone(), sh.clone()],
                    lhs,
                    rhs,
                );
            }
        }
    }

    // Displayed compositor naturality in both arguments.
    for (sf, fc) in &d1list {
        for (st, tc) in &d2cells {
            let g1c = d1.done(&tc.src)?.clone();
            if g1c.src == fc.tgt && d1.disp_lwhisker.contains_key(&(sf.clone(), st.clone())) {
                let lhs = (|| {
                    let dl = &df.compositor[&(sf.clone(), tc.src.clone())];
                    let w = df.f2(d1.disp_lwhisker.get(&(sf.clone(), st.clone())).unwrap())?;
                    d2.disp_vcomp(&dl.theta, w).cloned()
                })();
                let rhs = (|| {
                    let ff = df.f1(sf)?.clone();
                    let ft = df.f2(st)?.clone();
                    let w = d2
                        .disp_lwhisker
                        .get(&(ff, ft))
                        .cloned()
                        .ok_or_else(|| KernelError::DanglingReference {
                            context: "disp_lwhisker".into(),
                            token: sf.clone(),
                        })?;
                    let dl = &df.compositor[&(sf.clone(), tc.tgt.clone())];
                    d2.disp_vcomp(&w, &dl.theta).cloned()
                })();
                chk("disp_psfun:lwhisker", vec![sf.clone(), st.clone()], lhs, rhs);
            }
            if g1c.tgt == fc.src && d1.disp_rwhisker.contains_key(&(st.clone(), sf.clone())) {
                let lhs = (|| {
                    let dl = &df.compositor[&(tc.src.clone(), sf.clone())];
                    let w = df.f2(d1.disp_rwhisker.get(&(st.clone(), sf.clone())).unwrap())?;
                    d2.disp_vcomp(&dl.theta, w).cloned()
                })();
                let rhs = (|| {
                    let ft = df.f2(st)?.clone();
                    let ff = df.f1(sf)?.clone();
                    let w = d2
                        .disp_rwhisker
                        .get(&(ft, ff))
                        .cloned()
                        .ok_or_else(|| KernelError::DanglingReference {
                            context: "disp_rwhisker".into(),
                            token: st.clone(),
                        })?;
                    let dl = &df.compositor[&(tc.tgt.clone(), sf.clone())];
                    d2.disp_vcomp(&w, &dl.theta).cloned()
                })();
                chk("disp_psfun:rwhisker", vec![st.clone(), sf.clone()], lhs, rhs);
            }
        }
    }

    Ok(LawReport::from_violations(v))
}

/// Validates displayed pseudotransformation data over a validated base
/// pseudotransformation between the bases of dF and dG.
#[allow(clippy::too_many_arguments)]
pub fn check_disp_pstrans(
    d1: &DispBicatPresentation,
    d2: &DispBicatPresentation,
    base_f: &PseudofunctorData,
    _base_g: &PseudofunctorData,
    base_n: &PstransData,
    df: &DispPsfunctorData,
    dg: &DispPsfunctorData,
    dn: &DispPstransData,
) -> Result<LawReport> {
    let mut v: Vec<Violation> = Vec::new();
    let _ = base_f;
    for (x, xc) in &d1.d0 {
        let ok = (|| -> Result<bool> {
            let comp = dn
                .eta0
                .get(x)
                .ok_or_else(|| KernelError::DanglingReference {
                    context: "disp_pstrans.eta0".into(),
                    token: x.clone(),
                })?;
            let cc = d2.done(comp)?;
            Ok(cc.over == *base_n.eta0(&xc.over)?
                && &cc.src == df.f0(x)?
                && &cc.tgt == dg.f0(x)?)
        })();
        if !matches!(ok, Ok(true)) {
            v.push(Violation::new(
                "disp_pstrans:eta0",
                vec![x.clone()],
                "missing or ill-typed displayed component",
                "",
            ));
        }
    }
    for (sf, fc) in &d1.d1 {
        let ok = (|| -> Result<bool> {
            let cell = dn
                .eta1
                .get(sf)
                .ok_or_else(|| KernelError::DanglingReference {
                    context: "disp_pstrans.eta1".into(),
                    token: sf.clone(),
                })?;
            let over = &base_n.eta1(&fc.over)?.theta;
            let src = d2
                .disp_comp1(&dn.eta0[&fc.src], dg.f1(sf)?)?
                .clone();
            let tgt = d2
                .disp_comp1(df.f1(sf)?, &dn.eta0[&fc.tgt])?
                .clone();
            let oc = d2.dtwo(&cell.theta)?;
            if &oc.over != over || oc.src != src || oc.tgt != tgt {
                return Ok(false);
            }
            let fwd = d2.disp_vcomp(&cell.theta, &cell.theta_inv)?;
            let bwd = d2.disp_vcomp(&cell.theta_inv, &cell.theta)?;
            Ok(fwd == d2.disp_id2(&src)? && bwd == d2.disp_id2(&tgt)?)
        })();
        if !matches!(ok, Ok(true)) {
            v.push(Violation::new(
                "disp_pstrans:eta1",
                vec![sf.clone()],
                "missing, ill-typed, or non-invertible displayed naturality cell",
                "",
            ));
        }
    }
    if !v.is_empty() {
        return Ok(LawReport::from_violations(v));
    }

    let mut chk = |law: &str, cells: Vec<CellId>, lhs: Result<CellId>, rhs: Result<CellId>| {
        let show = |r: &Result<CellId>| match r {
            Ok(c) => c.to_string(),
            Err(e) => format!("<{e}>"),
        };
        if !matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b) {
            v.push(Violation::new(law, cells, show(&lhs), show(&rhs)));
        }
    };
    let wl = |a: &CellId, t: &CellId| -> Result<CellId> {
        d2.disp_lwhisker
            .get(&(a.clone(), t.clone()))
            .cloned()
            .ok_or_else(|| KernelError::DanglingReference {
                context: "disp_lwhisker".into(),
                token: t.clone(),
            })
    };
    let wr = |t: &CellId, a: &CellId| -> Result<CellId> {
        d2.disp_rwhisker
            .get(&(t.clone(), a.clone()))
            .cloned()
            .ok_or_else(|| KernelError::DanglingReference {
                context: "disp_rwhisker".into(),
                token: t.clone(),
            })
    };

    // Displayed naturality in 2-cells.
    for (st, tc) in &d1.d2 {
        let src_one = d1.done(&tc.src)?.clone();
        let lhs = (|| {
            let w = wl(&dn.eta0[&src_one.src], dg.f2(st)?)?;
            let e1 = dn.eta1[&tc.tgt].theta.clone();
            d2.disp_vcomp(&w, &e1).map(|x| x.clone())
        })();
        let rhs = (|| {
            let e1 = dn.eta1[&tc.src].theta.clone();
            let w = wr(df.f2(st)?, &dn.eta0[&src_one.tgt])?;
            d2.disp_vcomp(&e1, &w).map(|x| x.clone())
        })();
        chk("disp_pstrans:natural", vec![st.clone()], lhs, rhs);
    }

    // Displayed unit coherence.
    for (x, _) in &d1.d0 {
        let lhs = (|| {
            let e0 = dn.eta0[x].clone();
            let rho = d2
                .disp_runitor
                .get(&e0)
                .cloned()
                .ok_or_else(|| KernelError::DanglingReference {
                    context: "disp_runitor".into(),
                    token: e0.clone(),
                })?;
            let lam_i = d2.disp_lunitor_inv(&e0)?.clone();
            let w = wr(&df.identitor[x].theta, &e0)?;
            let acc = d2.disp_vcomp(&rho, &lam_i)?.clone();
            d2.disp_vcomp(&acc, &w).map(|c| c.clone())
        })();
        let rhs = (|| {
            let e0 = dn.eta0[x].clone();
            let w = wl(&e0, &dg.identitor[x].theta)?;
            let e1 = dn.eta1[d1.disp_id1(x)?].theta.clone();
            d2.disp_vcomp(&w, &e1).map(|c| c.clone())
        })();
        chk("disp_pstrans:unit", vec![x.clone()], lhs, rhs);
    }

    // Displayed composition coherence.
    for ((sk, sl), comp) in &d1.disp_comp1 {
        let kc = d1.done(sk)?.clone();
        let lc = d1.done(sl)?.clone();
        let (x, y, z) = (kc.src.clone(), kc.tgt.clone(), lc.tgt.clone());
        let get3 = |m: &BTreeMap<(CellId, CellId, CellId), CellId>,
                    key: (CellId, CellId, CellId)|
         -> Result<CellId> {
            m.get(&key).cloned().ok_or_else(|| KernelError::DanglingReference {
                context: "disp_lassoc".into(),
                token: key.0.clone(),
            })
        };
        let lhs = (|| {
            let e0x = dn.eta0[&x].clone();
            let gk = dg.f1(sk)?.clone();
            let gl = dg.f1(sl)?.clone();
            let a1 = get3(&d2.disp_lassoc, (e0x.clone(), gk.clone(), gl.clone()))?;
            let w1 = wr(&dn.eta1[sk].theta, &gl)?;
            let fk = df.f1(sk)?.clone();
            let e0y = dn.eta0[&y].clone();
            let a2 = get3(&d2.disp_lassoc_inv, (fk.clone(), e0y.clone(), gl.clone()))?;
            let w2 = wl(&fk, &dn.eta1[sl].theta)?;
            let fl = df.f1(sl)?.clone();
            let e0z = dn.eta0[&z].clone();
            let a3 = get3(&d2.disp_lassoc, (fk.clone(), fl.clone(), e0z.clone()))?;
            let dl = df.compositor[&(sk.clone(), sl.clone())].theta.clone();
            let w3 = wr(&dl, &e0z)?;
            let mut acc = a1;
            for next in [&w1, &a2, &w2, &a3, &w3] {
                acc = d2.disp_vcomp(&acc, next)?.clone();
            }
            Ok(acc)
        })();
        let rhs = (|| {
            let e0x = dn.eta0[&x].clone();
            let dgc = dg.compositor[&(sk.clone(), sl.clone())].theta.clone();
            let w = wl(&e0x, &dgc)?;
            let e1 = dn.eta1[comp].theta.clone();
            d2.disp_vcomp(&w, &e1).map(|c| c.clone())
        })();
        chk(
            "disp_pstrans:comp",
            vec![sk.clone(), sl.clone()],
            lhs,
            rhs,
        );
    }

    Ok(LawReport::from_violations(v))
}

/// Validates a displayed invertible modification over a base modification:
/// component typing plus the displayed modification square
/// (Γ̄(x̄) ▷ dG1(f̄)) • θ̄1(f̄) = η̄1(f̄) • (dF1(f̄) ◁ Γ̄(ȳ)).
#[allow(clippy::too_many_arguments)]
pub fn check_disp_invmodification(
    d1: &DispBicatPresentation,
    d2: &DispBicatPresentation,
    base_m: &ModificationData,
    df: &DispPsfunctorData,
    dg: &DispPsfunctorData,
    dn: &DispPstransData,
    dm: &DispPstransData,
    dgamma: &DispInvModificationData,
) -> Result<LawReport> {
    let mut v: Vec<Violation> = Vec::new();
    for (x, xc) in &d1.d0 {
        let ok = (|| -> Result<bool> {
            let cell = dgamma
                .gamma
                .get(x)
                .ok_or_else(|| KernelError::DanglingReference {
                    context: "disp_invmodification.gamma".into(),
                    token: x.clone(),
                })?;
            let over = base_m.gamma(&xc.over)?;
            let src = dn.eta0[x].clone();
            let tgt = dm.eta0[x].clone();
            verify_disp_inv(d2, cell, over, &src, &tgt)
        })();
        if !matches!(ok, Ok(true)) {
            v.push(Violation::new(
                "disp_invmodif:component",
                vec![x.clone()],
                "missing or invalid displayed invertible component",
                "",
            ));
        }
    }
    if !v.is_empty() {
        return Ok(LawReport::from_violations(v));
    }
    for (sf, fc) in &d1.d1 {
        let ok = (|| -> Result<bool> {
            let lhs = {
                let w = match d2
                    .disp_rwhisker
                    .get(&(dgamma.gamma[&fc.src].theta.clone(), dg.f1(sf)?.clone()))
                {
                    Some(w) => w.clone(),
                    None => return Ok(false),
                };
                let m1 = &dm.eta1[sf].theta;
                d2.disp_vcomp(&w, m1)?.clone()
            };
            let rhs = {
                let n1 = &dn.eta1[sf].theta;
                let w = match d2
                    .disp_lwhisker
                    .get(&(df.f1(sf)?.clone(), dgamma.gamma[&fc.tgt].theta.clone()))
                {
                    Some(w) => w.clone(),
                    None => return Ok(false),
                };
                d2.disp_vcomp(n1, &w)?.clone()
            };
            Ok(lhs == rhs)
        })();
        if !matches!(ok, Ok(true)) {
            v.push(Violation::new(
                "disp_invmodif:square",
                vec![sf.clone()],
                "displayed modification square fails",
                "",
            ));
        }
    }
    Ok(LawReport::from_violations(v))
}

/// The identity displayed pseudofunctor on a displayed presentation.
pub fn disp_id_psfunctor(d: &DispBicatPresentation) -> Result<DispPsfunctorData> {
    let mut f = DispPsfunctorData::default();
    for x in d.d0.keys() {
        f.f0.insert(x.clone(), x.clone());
        let i = d.disp_id1(x)?;
        let cell = d.disp_id2(i)?.clone();
        f.identitor.insert(
            x.clone(),
            DispInv2Cell {
                theta: cell.clone(),
                theta_inv: cell,
            },
        );
    }
    for x in d.d1.keys() {
        f.f1.insert(x.clone(), x.clone());
    }
    for x in d.d2.keys() {
        f.f2.insert(x.clone(), x.clone());
    }
    let d1list: Vec<_> = d.d1.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
    for (sf, fc) in &d1list {
        for (sg, gc) in &d1list {
            if fc.tgt != gc.src {
                continue;
            }
            if let Ok(c) = d.disp_comp1(sf, sg) {
                let cell = d.disp_id2(c)?.clone();
                f.compositor.insert(
                    (sf.clone(), sg.clone()),
                    DispInv2Cell {
                        theta: cell.clone(),
                        theta_inv: cell,
                    },
                );
            }
        }
    }
    Ok(f)
}

/// Composition of displayed pseudofunctors over the composition of their
/// bases.
pub fn disp_comp_psfunctor(
    d3: &DispBicatPresentation,
    df: &DispPsfunctorData,
    dg: &DispPsfunctorData,
) -> Result<DispPsfunctorData> {
    let mut h = DispPsfunctorData::default();
    for (x, y) in &df.f0 {
        h.f0.insert(x.clone(), dg.f0(y)?.clone());
    }
    for (x, y) in &df.f1 {
        h.f1.insert(x.clone(), dg.f1(y)?.clone());
    }
    for (x, y) in &df.f2 {
        h.f2.insert(x.clone(), dg.f2(y)?.clone());
    }
    for (x, cell) in &df.identitor {
        // γ_H = γ_G(F x̄) • G2(γ_F(x̄)), displayed.
        let gfx = &dg.identitor[df.f0(x)?];
        let g_cell_f = dg.f2(&cell.theta)?.clone();
        let g_cell_b = dg.f2(&cell.theta_inv)?.clone();
        let fwd = d3.disp_vcomp(&gfx.theta, &g_cell_f)?.clone();
        let bwd = d3.disp_vcomp(&g_cell_b, &gfx.theta_inv)?.clone();
        h.identitor.insert(
            x.clone(),
            DispInv2Cell {
                theta: fwd,
                theta_inv: bwd,
            },
        );
    }
    for ((x, y), cell) in &df.compositor {
        let dgc = &dg.compositor[&(df.f1(x)?.clone(), df.f1(y)?.clone())];
        let g_cell_f = dg.f2(&cell.theta)?.clone();
        let g_cell_b = dg.f2(&cell.theta_inv)?.clone();
        let fwd = d3.disp_vcomp(&dgc.theta, &g_cell_f)?.clone();
        let bwd = d3.disp_vcomp(&g_cell_b, &dgc.theta_inv)?.clone();
        h.compositor.insert(
            (x.clone(), y.clone()),
            DispInv2Cell {
                theta: fwd,
                theta_inv: bwd,
            },
        );
    }
    Ok(h)
}

/// The total pseudofunctor of a displayed pseudofunctor: componentwise pairs.
pub fn total_psfunctor(
    d1: &DispBicatPresentation,
    d2: &DispBicatPresentation,
    base: &PseudofunctorData,
    df: &DispPsfunctorData,
) -> Result<PseudofunctorData> {
    let mut f = PseudofunctorData::default();
    for (x, xc) in &d1.d0 {
        f.f0.insert(
            pair_token(&xc.over, x),
            pair_token(base.f0(&xc.over)?, df.f0(x)?),
        );
    }
    for (x, xc) in &d1.d1 {
        f.f1.insert(
            pair_token(&xc.over, x),
            pair_token(base.f1(&xc.over)?, df.f1(x)?),
        );
    }
    for (x, xc) in &d1.d2 {
        f.f2.insert(
            pair_token(&xc.over, x),
            pair_token(base.f2(&xc.over)?, df.f2(x)?),
        );
    }
    for (x, xc) in &d1.d0 {
        let base_cell = base.identitor(&xc.over)?;
        let disp_cell = &df.identitor[x];
        let img_over = d2.dtwo(&disp_cell.theta)?.over.clone();
        if &img_over != base_cell {
            return Err(KernelError::ConstructionFailed(format!(
                "total_psfunctor: displayed identitor at {x} not over the base identitor"
            )));
        }
        f.identitor.insert(
            pair_token(&xc.over, x),
            pair_token(base_cell, &disp_cell.theta),
        );
    }
    for ((x, y), disp_cell) in &df.compositor {
        let xo = &d1.done(x)?.over;
        let yo = &d1.done(y)?.over;
        let base_cell = base.compositor(xo, yo)?;
        f.compositor.insert(
            (pair_token(xo, x), pair_token(yo, y)),
            pair_token(base_cell, &disp_cell.theta),
        );
    }
    Ok(f)
}

/// The total pseudotransformation of a displayed pseudotransformation.
pub fn total_pstrans(
    d1: &DispBicatPresentation,
    base: &PstransData,
    dn: &DispPstransData,
) -> Result<PstransData> {
    let mut n = PstransData::default();
    for (x, xc) in &d1.d0 {
        n.eta0.insert(
            pair_token(&xc.over, x),
            pair_token(base.eta0(&xc.over)?, &dn.eta0[x]),
        );
    }
    for (sf, fc) in &d1.d1 {
        let base_cell = base.eta1(&fc.over)?;
        let disp_cell = &dn.eta1[sf];
        n.eta1.insert(
            pair_token(&fc.over, sf),
            crate::bicat::Inv2Cell {
                theta: pair_token(&base_cell.theta, &disp_cell.theta),
                theta_inv: pair_token(&base_cell.theta_inv, &disp_cell.theta_inv),
            },
        );
    }
    Ok(n)
}

/// The total invertible modification of a displayed one.
pub fn total_invmodification(
    d1: &DispBicatPresentation,
    base: &ModificationData,
    dm: &DispInvModificationData,
) -> Result<ModificationData> {
    let mut m = ModificationData::default();
    for (x, xc) in &d1.d0 {
        m.gamma.insert(
            pair_token(&xc.over, x),
            pair_token(base.gamma(&xc.over)?, &dm.gamma[x].theta),
        );
    }
    Ok(m)
}

/// Validates the components of a displayed biequivalence over a validated
/// base biequivalence, then totalizes and checks the total against the full
/// biequivalence validator. Locally propositional displayed layers discharge
/// the displayed modification obligations automatically.
pub fn check_disp_biequivalence(
    d1: &DispBicatPresentation,
    d2: &DispBicatPresentation,
    base: &BiequivalenceData,
    db: &DispBiequivalenceData,
    budget: &Budget,
) -> Result<LawReport> {
    let mut v: Vec<Violation> = Vec::new();
    fn push(v: &mut Vec<Violation>, name: &str, r: LawReport) {
        for w in r.violations {
            v.push(Violation::new(
                format!("disp_biequiv:{name}:{}", w.law),
                w.cells,
                w.lhs,
                w.rhs,
            ));
        }
    }
    push(&mut v, "L", check_disp_psfunctor(d1, d2, &base.l, &db.l)?);
    push(&mut v, "R", check_disp_psfunctor(d2, d1, &base.r, &db.r)?);
    if !v.is_empty() {
        return Ok(LawReport::from_violations(v));
    }

    // The four displayed pseudotransformations, directly against their
    // displayed composite endpoints.
    let rl_base = crate::psfun::comp_psfunctor(&d1.base, &d2.base, &base.r, &base.l)?;
    let lr_base = crate::psfun::comp_psfunctor(&d2.base, &d1.base, &base.l, &base.r)?;
    let id_c = crate::psfun::id_psfunctor(&d2.base)?;
    let id_b = crate::psfun::id_psfunctor(&d1.base)?;
    let rl_disp = disp_comp_psfunctor(d2, &db.r, &db.l)?;
    let lr_disp = disp_comp_psfunctor(d1, &db.l, &db.r)?;
    let id_d2 = disp_id_psfunctor(d2)?;
    let id_d1 = disp_id_psfunctor(d1)?;
    push(
        &mut v,
        "eta",
        check_disp_pstrans(d2, d2, &rl_base, &id_c, &base.eta, &rl_disp, &id_d2, &db.eta)?,
    );
    push(
        &mut v,
        "eta_i",
        check_disp_pstrans(d2, d2, &id_c, &rl_base, &base.eta_i, &id_d2, &rl_disp, &db.eta_i)?,
    );
    push(
        &mut v,
        "eps",
        check_disp_pstrans(d1, d1, &lr_base, &id_b, &base.eps, &lr_disp, &id_d1, &db.eps)?,
    );
    push(
        &mut v,
        "eps_i",
        check_disp_pstrans(d1, d1, &id_b, &lr_base, &base.eps_i, &id_d1, &lr_disp, &db.eps_i)?,
    );
    if !v.is_empty() {
        return Ok(LawReport::from_violations(v));
    }

    // Totalization covers the displayed modification laws: a total
    // modification law is the conjunction of the base law and the displayed
    // one, and pair components are invertible exactly when both projections
    // are.
    let total = total_biequivalence(d1, d2, base, db)?;
    let t1 = crate::display::total_bicat(d1)?;
    let t2 = crate::display::total_bicat(d2)?;
    push(&mut v, "total", check_biequivalence(&t1, &t2, &total, budget)?);
    Ok(LawReport::from_violations(v))
}

/// Assembles the total biequivalence of a displayed biequivalence.
pub fn total_biequivalence(
    d1: &DispBicatPresentation,
    d2: &DispBicatPresentation,
    base: &BiequivalenceData,
    db: &DispBiequivalenceData,
) -> Result<BiequivalenceData> {
    Ok(BiequivalenceData {
        l: total_psfunctor(d1, d2, &base.l, &db.l)?,
        r: total_psfunctor(d2, d1, &base.r, &db.r)?,
        eta: total_pstrans(d2, &base.eta, &db.eta)?,
        eta_i: total_pstrans(d2, &base.eta_i, &db.eta_i)?,
        eps: total_pstrans(d1, &base.eps, &db.eps)?,
        eps_i: total_pstrans(d1, &base.eps_i, &db.eps_i)?,
        m1: total_invmodification(d2, &base.m1, &db.m1)?,
        m2: total_invmodification(d2, &base.m2, &db.m2)?,
        m3: total_invmodification(d1, &base.m3, &db.m3)?,
        m4: total_invmodification(d1, &base.m4, &db.m4)?,
    })
}

/// The identity displayed pseudotransformation on a displayed pseudofunctor:
/// components are displayed identity 1-cells, naturality cells the displayed
/// unitor composites.
pub fn disp_id_pstrans(
    d1: &DispBicatPresentation,
    d2: &DispBicatPresentation,
    df: &DispPsfunctorData,
) -> Result<DispPstransData> {
    let mut n = DispPstransData::default();
    for x in d1.d0.keys() {
        n.eta0.insert(x.clone(), d2.disp_id1(df.f0(x)?)?.clone());
    }
    for sf in d1.d1.keys() {
        let fk = df.f1(sf)?.clone();
        let lam = d2.disp_lunitor(&fk)?.clone();
        let rho_i = d2
            .disp_runitor_inv
            .get(&fk)
            .cloned()
            .ok_or_else(|| KernelError::DanglingReference {
                context: "disp_runitor_inv".into(),
                token: fk.clone(),
            })?;
        let fwd = d2.disp_vcomp(&lam, &rho_i)?.clone();
        let rho = d2
            .disp_runitor
            .get(&fk)
            .cloned()
            .ok_or_else(|| KernelError::DanglingReference {
                context: "disp_runitor".into(),
                token: fk.clone(),
            })?;
        let lam_i = d2.disp_lunitor_inv(&fk)?.clone();
        let bwd = d2.disp_vcomp(&rho, &lam_i)?.clone();
        n.eta1.insert(
            sf.clone(),
            DispInv2Cell {
                theta: fwd,
                theta_inv: bwd,
            },
        );
    }
    Ok(n)
}

/// Composition of displayed pseudotransformations over the composition of
/// their bases, componentwise with the displayed comp_pstrans composite.
#[allow(clippy::too_many_arguments)]
pub fn disp_comp_pstrans(
    d1: &DispBicatPresentation,
    d2: &DispBicatPresentation,
    df: &DispPsfunctorData,
    dg: &DispPsfunctorData,
    dh: &DispPsfunctorData,
    dn: &DispPstransData,
    dm: &DispPstransData,
) -> Result<DispPstransData> {
    let mut out = DispPstransData::default();
    for x in d1.d0.keys() {
        out.eta0
            .insert(x.clone(), d2.disp_comp1(&dn.eta0[x], &dm.eta0[x])?.clone());
    }
    for (sf, fc) in &d1.d1 {
        let (x, y) = (fc.src.clone(), fc.tgt.clone());
        let n0a = dn.eta0[&x].clone();
        let m0a = dm.eta0[&x].clone();
        let n0b = dn.eta0[&y].clone();
        let m0b = dm.eta0[&y].clone();
        let fk = df.f1(sf)?.clone();
        let gk = dg.f1(sf)?.clone();
        let hk = dh.f1(sf)?.clone();
        let n1 = dn.eta1[sf].clone();
        let m1 = dm.eta1[sf].clone();
        let get3 = |m: &std::collections::BTreeMap<(CellId, CellId, CellId), CellId>,
                    k: (CellId, CellId, CellId)|
         -> Result<CellId> {
            m.get(&k).cloned().ok_or_else(|| KernelError::DanglingReference {
                context: "disp_lassoc".into(),
                token: k.0.clone(),
            })
        };
        let wl = |a: &CellId, t: &CellId| -> Result<CellId> {
            d2.disp_lwhisker
                .get(&(a.clone(), t.clone()))
                .cloned()
                .ok_or_else(|| KernelError::DanglingReference {
                    context: "disp_lwhisker".into(),
                    token: t.clone(),
                })
        };
        let wr = |t: &CellId, a: &CellId| -> Result<CellId> {
            d2.disp_rwhisker
                .get(&(t.clone(), a.clone()))
                .cloned()
                .ok_or_else(|| KernelError::DanglingReference {
                    context: "disp_rwhisker".into(),
                    token: t.clone(),
                })
        };
        let parts: Vec<(CellId, CellId)> = vec![
            (
                get3(&d2.disp_lassoc_inv, (n0a.clone(), m0a.clone(), hk.clone()))?,
                get3(&d2.disp_lassoc, (n0a.clone(), m0a.clone(), hk.clone()))?,
            ),
            (wl(&n0a, &m1.theta)?, wl(&n0a, &m1.theta_inv)?),
            (
                get3(&d2.disp_lassoc, (n0a.clone(), gk.clone(), m0b.clone()))?,
                get3(&d2.disp_lassoc_inv, (n0a.clone(), gk.clone(), m0b.clone()))?,
            ),
            (wr(&n1.theta, &m0b)?, wr(&n1.theta_inv, &m0b)?),
            (
                get3(&d2.disp_lassoc_inv, (fk.clone(), n0b.clone(), m0b.clone()))?,
                get3(&d2.disp_lassoc, (fk.clone(), n0b.clone(), m0b.clone()))?,
            ),
        ];
        let mut fwd = parts[0].0.clone();
        for (f, _) in &parts[1..] {
            fwd = d2.disp_vcomp(&fwd, f)?.clone();
        }
        let mut bwd = parts[parts.len() - 1].1.clone();
        for (_, bcell) in parts[..parts.len() - 1].iter().rev() {
            bwd = d2.disp_vcomp(&bwd, bcell)?.clone();
        }
        out.eta1.insert(
            sf.clone(),
            DispInv2Cell {
                theta: fwd,
                theta_inv: bwd,
            },
        );
    }
    Ok(out)
}

/// Totalization commutes with composition: the total of a displayed
/// composite equals the composite of the totals. Used as a property check.
pub fn totalization_is_functorial(
    d1: &DispBicatPresentation,
    d2: &DispBicatPresentation,
    d3: &DispBicatPresentation,
    base_f: &PseudofunctorData,
    base_g: &PseudofunctorData,
    df: &DispPsfunctorData,
    dg: &DispPsfunctorData,
) -> Result<bool> {
    let t2 = crate::display::total_bicat(d2)?;
    let t3 = crate::display::total_bicat(d3)?;
    let comp_disp = disp_comp_psfunctor(d3, df, dg)?;
    let base_fg = crate::psfun::comp_psfunctor(&d2.base, &d3.base, base_f, base_g)?;
    let lhs = total_psfunctor(d1, d3, &base_fg, &comp_disp)?;
    let tf = total_psfunctor(d1, d2, base_f, df)?;
    let tg = total_psfunctor(d2, d3, base_g, dg)?;
    let rhs = crate::psfun::comp_psfunctor(&t2, &t3, &tf, &tg)?;
    Ok(lhs == rhs)
}



#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicat::{chaotic_bicat, discrete_bicat, terminal_bicat};
    use crate::display::{fullsub_disp, prod_disp, total_bicat, trivial_disp};
    use crate::psfun::{identity_biequivalence, id_psfunctor};

    fn b() -> Budget {
        Budget::default()
    }

    fn displays() -> Vec<DispBicatPresentation> {
        vec![
            fullsub_disp(&terminal_bicat(), &|_| true).unwrap(),
            fullsub_disp(&chaotic_bicat(2), &|_| true).unwrap(),
            trivial_disp(&discrete_bicat(2), &discrete_bicat(2)).unwrap(),
            prod_disp(
                &fullsub_disp(&discrete_bicat(2), &|_| true).unwrap(),
                &fullsub_disp(&discrete_bicat(2), &|_| true).unwrap(),
            )
            .unwrap(),
        ]
    }

    #[test]
    fn disp_identity_psfunctor_validates() {
        for d in displays() {
            let base = id_psfunctor(&d.base).unwrap();
            let df = disp_id_psfunctor(&d).unwrap();
            let r = check_disp_psfunctor(&d, &d, &base, &df).unwrap();
            assert!(r.passed(), "{:?}", r.violations);
        }
    }

    #[test]
    fn disp_identity_pstrans_validates() {
        for d in displays() {
            let base = id_psfunctor(&d.base).unwrap();
            let df = disp_id_psfunctor(&d).unwrap();
            let base_n = crate::psfun::id_pstrans(&d.base, &d.base, &base).unwrap();
            let dn = disp_id_pstrans(&d, &d, &df).unwrap();
            let r =
                check_disp_pstrans(&d, &d, &base, &base, &base_n, &df, &df, &dn).unwrap();
            assert!(r.passed(), "{:?}", r.violations);
        }
    }

    #[test]
    fn disp_comp_of_identities_matches_identity() {
        for d in displays() {
            let df = disp_id_psfunctor(&d).unwrap();
            let comp = disp_comp_psfunctor(&d, &df, &df).unwrap();
            assert_eq!(comp.f0, df.f0);
            assert_eq!(comp.f1, df.f1);
            assert_eq!(comp.f2, df.f2);
        }
    }

    #[test]
    fn total_of_disp_identity_is_identity_on_total() {
        for d in displays() {
            let base = id_psfunctor(&d.base).unwrap();
            let df = disp_id_psfunctor(&d).unwrap();
            let t = total_bicat(&d).unwrap();
            let tf = total_psfunctor(&d, &d, &base, &df).unwrap();
            assert_eq!(tf, id_psfunctor(&t).unwrap());
        }
    }

    #[test]
    fn totalization_functorial_on_identities() {
        for d in displays() {
            let base = id_psfunctor(&d.base).unwrap();
            let df = disp_id_psfunctor(&d).unwrap();
            assert!(totalization_is_functorial(&d, &d, &d, &base, &base, &df, &df).unwrap());
        }
    }

    #[test]
    fn identity_disp_biequivalence_over_unit_fibers() {
        // Unit fibers over 𝟙: displayed identity biequivalence totals to a
        // passing biequivalence.
        let one = terminal_bicat();
        let d = fullsub_disp(&one, &|_| true).unwrap();
        let base = identity_biequivalence(&one).unwrap();
        let df = disp_id_psfunctor(&d).unwrap();
        let dn = disp_id_pstrans(&d, &d, &df).unwrap();
        // All modification components live in singleton displayed fibers.
        let mut dm1 = DispInvModificationData::default();
        for x in d.d0.keys() {
            let m_base = base.m1.gamma(&d.d0[x].over).unwrap();
            let src = d
                .disp_comp1(&dn.eta0[x], &dn.eta0[x])
                .unwrap()
                .clone();
            let tgt = dn.eta0[x].clone();
            let fiber = d.d2_fiber(m_base, &src, &tgt);
            assert_eq!(fiber.len(), 1);
            let inv_base = crate::psfun::inverse_2cell(&one, m_base).unwrap();
            let inv_fiber = d.d2_fiber(&inv_base, &tgt, &src);
            dm1.gamma.insert(
                x.clone(),
                DispInv2Cell {
                    theta: fiber[0].clone(),
                    theta_inv: inv_fiber[0].clone(),
                },
            );
        }
        let db = DispBiequivalenceData {
            l: df.clone(),
            r: df,
            eta: dn.clone(),
            eta_i: dn.clone(),
            eps: dn.clone(),
            eps_i: dn,
            m1: dm1.clone(),
            m2: dm1.clone(),
            m3: dm1.clone(),
            m4: dm1,
        };
        let r = check_disp_biequivalence(&d, &d, &base, &db, &b()).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        let total = total_biequivalence(&d, &d, &base, &db).unwrap();
        let t = total_bicat(&d).unwrap();
        let tr = check_biequivalence(&t, &t, &total, &b()).unwrap();
        assert!(tr.passed(), "{:?}", tr.violations);
    }
}
