//! Displayed invertible 2-cells and displayed adjoint equivalences.
//!
//! Both live over a verified base witness; their laws are plain token
//! equalities over the corresponding base laws.

use super::DispBicatPresentation;
use crate::bicat::{AdjEquiv, Inv2Cell};
use crate::budget::Budget;
use crate::cell::CellId;
use crate::error::Result;
use serde::{Deserialize, Serialize};

/// A displayed invertible 2-cell over a base invertible 2-cell.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DispInv2Cell {
    pub theta: CellId,
    pub theta_inv: CellId,
}

/// A displayed adjoint equivalence over a base adjoint equivalence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DispAdjEquiv {
    pub f: CellId,
    pub g: CellId,
    pub eta: DispInv2Cell,
    pub eps: DispInv2Cell,
}

/// All displayed invertible 2-cells over `base` from `sf` to `sg`, each with
/// its displayed inverse over the base inverse, independently re-verified.
pub fn disp_invertible_2cells(
    d: &DispBicatPresentation,
    base: &Inv2Cell,
    sf: &CellId,
    sg: &CellId,
) -> Result<Vec<DispInv2Cell>> {
    let mut out = Vec::new();
    let id_sf = d.disp_id2(sf)?.clone();
    let id_sg = d.disp_id2(sg)?.clone();
    for st in d.d2_fiber(&base.theta, sf, sg) {
        for su in d.d2_fiber(&base.theta_inv, sg, sf) {
            let fwd = d.disp_vcomp(&st, &su)?;
            let bwd = d.disp_vcomp(&su, &st)?;
            if fwd == &id_sf && bwd == &id_sg {
                out.push(DispInv2Cell {
                    theta: st.clone(),
                    theta_inv: su,
                });
                break;
            }
        }
    }
    Ok(out)
}

/// Both displayed triangle identities over the base triangles, by displayed
/// table evaluation.
pub fn disp_triangles_hold(d: &DispBicatPresentation, e: &DispAdjEquiv) -> Result<bool> {
    let (sf, sg) = (&e.f, &e.g);
    let t1 = {
        let l = d.disp_lunitor_inv(sf)?.clone();
        let w1 = {
            let key = (e.eta.theta.clone(), sf.clone());
            d.disp_rwhisker
                .get(&key)
                .cloned()
                .ok_or_else(|| crate::error::KernelError::DanglingReference {
                    context: "disp_rwhisker".into(),
                    token: key.0.clone(),
                })?
        };
        let ai = {
            let key = (sf.clone(), sg.clone(), sf.clone());
            d.disp_lassoc_inv
                .get(&key)
                .cloned()
                .ok_or_else(|| crate::error::KernelError::DanglingReference {
                    context: "disp_lassoc_inv".into(),
                    token: sf.clone(),
                })?
        };
        let w2 = {
            let key = (sf.clone(), e.eps.theta.clone());
            d.disp_lwhisker
                .get(&key)
                .cloned()
                .ok_or_else(|| crate::error::KernelError::DanglingReference {
                    context: "disp_lwhisker".into(),
                    token: key.1.clone(),
                })?
        };
        let r = d
            .disp_runitor
            .get(sf)
            .cloned()
            .ok_or_else(|| crate::error::KernelError::DanglingReference {
                context: "disp_runitor".into(),
                token: sf.clone(),
            })?;
        let mut acc = l;
        for next in [&w1, &ai, &w2, &r] {
            acc = d.disp_vcomp(&acc, next)?.clone();
        }
        acc
    };
    if &t1 != d.disp_id2(sf)? {
        return Ok(false);
    }
    let t2 = {
        let r = d
            .disp_runitor_inv
            .get(sg)
            .cloned()
            .ok_or_else(|| crate::error::KernelError::DanglingReference {
                context: "disp_runitor_inv".into(),
                token: sg.clone(),
            })?;
        let w1 = {
            let key = (sg.clone(), e.eta.theta.clone());
            d.disp_lwhisker
                .get(&key)
                .cloned()
                .ok_or_else(|| crate::error::KernelError::DanglingReference {
                    context: "disp_lwhisker".into(),
                    token: key.1.clone(),
                })?
        };
        let a = {
            let key = (sg.clone(), sf.clone(), sg.clone());
            d.disp_lassoc
                .get(&key)
                .cloned()
                .ok_or_else(|| crate::error::KernelError::DanglingReference {
                    context: "disp_lassoc".into(),
                    token: sg.clone(),
                })?
        };
        let w2 = {
            let key = (e.eps.theta.clone(), sg.clone());
            d.disp_rwhisker
                .get(&key)
                .cloned()
                .ok_or_else(|| crate::error::KernelError::DanglingReference {
                    context: "disp_rwhisker".into(),
                    token: key.0.clone(),
                })?
        };
        let l = d.disp_lunitor(sg)?.clone();
        let mut acc = r;
        for next in [&w1, &a, &w2, &l] {
            acc = d.disp_vcomp(&acc, next)?.clone();
        }
        acc
    };
    Ok(&t2 == d.disp_id2(sg)?)
}

/// Exhaustive enumeration of displayed adjoint equivalences over `base`
/// from `sa` to `sb`.
pub fn disp_adjoint_equivalences(
    d: &DispBicatPresentation,
    base: &AdjEquiv,
    sa: &CellId,
    sb: &CellId,
    budget: &Budget,
) -> Result<Vec<DispAdjEquiv>> {
    let mut out = Vec::new();
    let ida = d.disp_id1(sa)?.clone();
    let idb = d.disp_id1(sb)?.clone();
    for sf in d.d1_fiber(&base.f, sa, sb) {
        for sg in d.d1_fiber(&base.g, sb, sa) {
            budget.charge("disp_adjoint_equivalences", 1)?;
            let fg = d.disp_comp1(&sf, &sg)?.clone();
            let gf = d.disp_comp1(&sg, &sf)?.clone();
            for eta in disp_invertible_2cells(d, &base.eta, &ida, &fg)? {
                for eps in disp_invertible_2cells(d, &base.eps, &gf, &idb)? {
                    budget.charge("disp_adjoint_equivalences", 1)?;
                    let cand = DispAdjEquiv {
                        f: sf.clone(),
                        g: sg.clone(),
                        eta: eta.clone(),
                        eps,
                    };
                    if disp_triangles_hold(d, &cand)? {
                        out.push(cand);
                    }
                }
            }
        }
    }
    Ok(out)
}
