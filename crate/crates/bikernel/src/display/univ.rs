//! Displayed univalence, checked fiberwise over reflexivity, plus the
//! local-shape predicates used by the sigma univalence criteria.

use super::{
    disp_adjoint_equivalences, disp_invertible_2cells, DispAdjEquiv, DispBicatPresentation,
    DispInv2Cell,
};
use crate::bicat::{canonical_identity_adjequiv, Inv2Cell};
use crate::budget::Budget;
use crate::cell::CellId;
use crate::error::Result;
use crate::report::{UnivalenceReport, UnivalenceSide, UnivalenceWitness};

/// The canonical displayed identity adjoint equivalence on a displayed
/// object, over the base canonical identity one.
pub fn disp_canonical_identity_adjequiv(
    d: &DispBicatPresentation,
    sa: &CellId,
) -> Result<DispAdjEquiv> {
    let u = d.disp_id1(sa)?.clone();
    let l = d.disp_lunitor(&u)?.clone();
    let li = d.disp_lunitor_inv(&u)?.clone();
    Ok(DispAdjEquiv {
        f: u.clone(),
        g: u,
        eta: DispInv2Cell {
            theta: li.clone(),
            theta_inv: l.clone(),
        },
        eps: DispInv2Cell {
            theta: l,
            theta_inv: li,
        },
    })
}

/// Fiberwise local univalence: over each base 1-cell f and pair of displayed
/// 1-cells in the same fiber, displayed invertible 2-cells over id₂(f) count
/// the equality proofs, with the displayed identity as the canonical one.
pub fn check_disp_local_univalence(
    d: &DispBicatPresentation,
    budget: &Budget,
) -> Result<UnivalenceSide> {
    let mut witnesses = Vec::new();
    let p = &d.base;
    let d1list: Vec<_> = d.d1.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
    for (sf, fc) in &d1list {
        let idf = p.id2(&fc.over)?.clone();
        let base = Inv2Cell {
            theta: idf.clone(),
            theta_inv: idf,
        };
        for (sg, gc) in &d1list {
            if gc.over != fc.over || gc.src != fc.src || gc.tgt != fc.tgt {
                continue;
            }
            budget.charge("disp_local_univalence", 1)?;
            let cells = disp_invertible_2cells(d, &base, sf, sg)?;
            if sf != sg {
                if !cells.is_empty() {
                    witnesses.push(UnivalenceWitness {
                        cells: (sf.clone(), sg.clone()),
                        count: cells.len(),
                        non_canonical: false,
                    });
                }
            } else {
                let canonical = DispInv2Cell {
                    theta: d.disp_id2(sf)?.clone(),
                    theta_inv: d.disp_id2(sf)?.clone(),
                };
                if cells.len() != 1 {
                    witnesses.push(UnivalenceWitness {
                        cells: (sf.clone(), sg.clone()),
                        count: cells.len(),
                        non_canonical: false,
                    });
                } else if cells[0] != canonical {
                    witnesses.push(UnivalenceWitness {
                        cells: (sf.clone(), sg.clone()),
                        count: 1,
                        non_canonical: true,
                    });
                }
            }
        }
    }
    Ok(UnivalenceSide::from_witnesses(witnesses))
}

/// Fiberwise global univalence: over each base object, displayed adjoint
/// equivalences over the canonical identity equivalence count the equality
/// proofs of displayed objects.
pub fn check_disp_global_univalence(
    d: &DispBicatPresentation,
    budget: &Budget,
) -> Result<UnivalenceSide> {
    let mut witnesses = Vec::new();
    let p = &d.base;
    for a in &p.objects {
        let base = canonical_identity_adjequiv(p, a)?;
        let fiber = d.d0_fiber(a);
        for sa in &fiber {
            for sb in &fiber {
                budget.charge("disp_global_univalence", 1)?;
                let found = disp_adjoint_equivalences(d, &base, sa, sb, budget)?;
                if sa != sb {
                    if !found.is_empty() {
                        witnesses.push(UnivalenceWitness {
                            cells: (sa.clone(), sb.clone()),
                            count: found.len(),
                            non_canonical: false,
                        });
                    }
                } else {
                    let canonical = disp_canonical_identity_adjequiv(d, sa)?;
                    if found.len() != 1 {
                        witnesses.push(UnivalenceWitness {
                            cells: (sa.clone(), sb.clone()),
                            count: found.len(),
                            non_canonical: false,
                        });
                    } else if found[0] != canonical {
                        witnesses.push(UnivalenceWitness {
                            cells: (sa.clone(), sb.clone()),
                            count: 1,
                            non_canonical: true,
                        });
                    }
                }
            }
        }
    }
    Ok(UnivalenceSide::from_witnesses(witnesses))
}

/// Displayed univalence, both sides, fiberwise over reflexivity.
pub fn check_disp_univalence(
    d: &DispBicatPresentation,
    budget: &Budget,
) -> Result<UnivalenceReport> {
    let local = check_disp_local_univalence(d, budget)?;
    let global = check_disp_global_univalence(d, budget)?;
    Ok(UnivalenceReport::new(local, global))
}

/// Locally groupoidal: every displayed 2-cell over an invertible base 2-cell
/// admits a displayed inverse over the base inverse.
pub fn is_locally_groupoidal(d: &DispBicatPresentation) -> Result<bool> {
    let p = &d.base;
    for (st, tc) in &d.d2 {
        let base_theta = &tc.over;
        let bc = p.two_cell(base_theta)?;
        // Base inverse, if any; in a lawful presentation it is unique.
        let mut base_inv = None;
        for u in p.two_cells_between(&bc.tgt, &bc.src) {
            if p.vcomp(base_theta, &u)? == p.id2(&bc.src)?
                && p.vcomp(&u, base_theta)? == p.id2(&bc.tgt)?
            {
                base_inv = Some(u);
                break;
            }
        }
        let base_inv = match base_inv {
            Some(u) => u,
            None => continue,
        };
        let id_sf = d.disp_id2(&tc.src)?.clone();
        let id_sg = d.disp_id2(&tc.tgt)?.clone();
        let mut has_inverse = false;
        for su in d.d2_fiber(&base_inv, &tc.tgt, &tc.src) {
            if d.disp_vcomp(st, &su)? == &id_sf && d.disp_vcomp(&su, st)? == &id_sg {
                has_inverse = true;
                break;
            }
        }
        if !has_inverse {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Locally propositional: every displayed 2-cell fiber has at most one
/// element.
pub fn is_locally_propositional(d: &DispBicatPresentation) -> Result<bool> {
    for (st, tc) in &d.d2 {
        let fiber = d.d2_fiber(&tc.over, &tc.src, &tc.tgt);
        if fiber.len() > 1 {
            return Ok(false);
        }
        debug_assert!(fiber.contains(st));
    }
    Ok(true)
}
