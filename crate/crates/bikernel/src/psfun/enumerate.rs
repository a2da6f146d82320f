//! Brute-force enumeration of pseudofunctors, pseudotransformations, and
//! modifications. These are the oracles the layered Pseudo construction is
//! cross-checked against.

use super::{
    check_modification, check_psfunctor, check_pstrans, inverse_2cell, ModificationData,
    PseudofunctorData, PstransData,
};
use crate::bicat::{BicatPresentation, Inv2Cell};
use crate::budget::Budget;
use crate::cell::CellId;
use crate::error::Result;
use crate::fincat::cartesian;
use std::collections::BTreeMap;

/// The complete duplicate-free list of law-passing pseudofunctors from `src`
/// to `tgt`, in deterministic order.
pub fn enumerate_psfunctors(
    src: &BicatPresentation,
    tgt: &BicatPresentation,
    budget: &Budget,
) -> Result<Vec<PseudofunctorData>> {
    let objects: Vec<_> = src.objects.iter().cloned().collect();
    let ones: Vec<_> = src.one_cells.keys().cloned().collect();
    let twos: Vec<_> = src.two_cells.keys().cloned().collect();
    let pairs = src.composable_pairs();
    let mut out = Vec::new();

    let ob_choices: Vec<Vec<CellId>> = objects
        .iter()
        .map(|_| tgt.objects.iter().cloned().collect())
        .collect();
    for ob_pick in cartesian(&ob_choices) {
        budget.charge("enumerate_psfunctors", 1)?;
        let f0: BTreeMap<_, _> = objects.iter().cloned().zip(ob_pick.iter().cloned()).collect();
        let one_choices: Vec<Vec<CellId>> = ones
            .iter()
            .map(|f| {
                let fc = &src.one_cells[f];
                tgt.one_cells_between(&f0[&fc.src], &f0[&fc.tgt])
            })
            .collect();
        if one_choices.iter().any(|c| c.is_empty()) && !ones.is_empty() {
            continue;
        }
        for one_pick in cartesian(&one_choices) {
            budget.charge("enumerate_psfunctors", 1)?;
            let f1: BTreeMap<_, _> = ones.iter().cloned().zip(one_pick.iter().cloned()).collect();
            let two_choices: Vec<Vec<CellId>> = twos
                .iter()
                .map(|t| {
                    let tc = &src.two_cells[t];
                    tgt.two_cells_between(&f1[&tc.src], &f1[&tc.tgt])
                })
                .collect();
            if two_choices.iter().any(|c| c.is_empty()) && !twos.is_empty() {
                continue;
            }
            // Identitor and compositor candidates must be invertible; collect
            // invertible 2-cells between the mandated endpoints.
            let identitor_choices: Vec<Vec<CellId>> = objects
                .iter()
                .map(|a| -> Result<Vec<CellId>> {
                    let ida = tgt.id1(&f0[a])?.clone();
                    let fid = f1[src.id1(a)?].clone();
                    Ok(crate::bicat::invertible_2cells(tgt, &ida, &fid)?
                        .into_iter()
                        .map(|c| c.theta)
                        .collect())
                })
                .collect::<Result<_>>()?;
            if identitor_choices.iter().any(|c| c.is_empty()) && !objects.is_empty() {
                continue;
            }
            let compositor_choices: Vec<Vec<CellId>> = pairs
                .iter()
                .map(|(f, g)| -> Result<Vec<CellId>> {
                    let lhs = tgt.comp1(&f1[f], &f1[g])?.clone();
                    let rhs = f1[src.comp1(f, g)?].clone();
                    Ok(crate::bicat::invertible_2cells(tgt, &lhs, &rhs)?
                        .into_iter()
                        .map(|c| c.theta)
                        .collect())
                })
                .collect::<Result<_>>()?;
            if compositor_choices.iter().any(|c| c.is_empty()) && !pairs.is_empty() {
                continue;
            }
            for two_pick in cartesian(&two_choices) {
                let f2: BTreeMap<_, _> =
                    twos.iter().cloned().zip(two_pick.iter().cloned()).collect();
                for id_pick in cartesian(&identitor_choices) {
                    for comp_pick in cartesian(&compositor_choices) {
                        budget.charge("enumerate_psfunctors", 1)?;
                        let cand = PseudofunctorData {
                            f0: f0.clone(),
                            f1: f1.clone(),
                            f2: f2.clone(),
                            identitor: objects
                                .iter()
                                .cloned()
                                .zip(id_pick.iter().cloned())
                                .collect(),
                            compositor: pairs
                                .iter()
                                .cloned()
                                .zip(comp_pick.iter().cloned())
                                .collect(),
                        };
                        if check_psfunctor(src, tgt, &cand)?.passed() {
                            out.push(cand);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// All law-passing pseudotransformations from F to G.
pub fn enumerate_pstrans(
    src: &BicatPresentation,
    tgt: &BicatPresentation,
    f: &PseudofunctorData,
    g: &PseudofunctorData,
    budget: &Budget,
) -> Result<Vec<PstransData>> {
    let objects: Vec<_> = src.objects.iter().cloned().collect();
    let ones: Vec<_> = src.one_cells.keys().cloned().collect();
    let comp_choices: Vec<Vec<CellId>> = objects
        .iter()
        .map(|a| -> Result<Vec<CellId>> {
            Ok(tgt.one_cells_between(f.f0(a)?, g.f0(a)?))
        })
        .collect::<Result<_>>()?;
    if comp_choices.iter().any(|c| c.is_empty()) && !objects.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for pick in cartesian(&comp_choices) {
        budget.charge("enumerate_pstrans", 1)?;
        let eta0: BTreeMap<_, _> = objects.iter().cloned().zip(pick.iter().cloned()).collect();
        let nat_choices: Vec<Vec<Inv2Cell>> = ones
            .iter()
            .map(|k| -> Result<Vec<Inv2Cell>> {
                let kc = &src.one_cells[k];
                let lhs = tgt.comp1(&eta0[&kc.src], g.f1(k)?)?.clone();
                let rhs = tgt.comp1(f.f1(k)?, &eta0[&kc.tgt])?.clone();
                crate::bicat::invertible_2cells(tgt, &lhs, &rhs)
            })
            .collect::<Result<_>>()?;
        if nat_choices.iter().any(|c| c.is_empty()) && !ones.is_empty() {
            continue;
        }
        for nat_pick in cartesian(&nat_choices) {
            budget.charge("enumerate_pstrans", 1)?;
            let cand = PstransData {
                eta0: eta0.clone(),
                eta1: ones.iter().cloned().zip(nat_pick.iter().cloned()).collect(),
            };
            if check_pstrans(src, tgt, f, g, &cand)?.passed() {
                out.push(cand);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// All modifications from η to θ.
pub fn enumerate_modifications(
    src: &BicatPresentation,
    tgt: &BicatPresentation,
    f: &PseudofunctorData,
    g: &PseudofunctorData,
    n: &PstransData,
    m: &PstransData,
    budget: &Budget,
) -> Result<Vec<ModificationData>> {
    let objects: Vec<_> = src.objects.iter().cloned().collect();
    let choices: Vec<Vec<CellId>> = objects
        .iter()
        .map(|a| -> Result<Vec<CellId>> {
            Ok(tgt.two_cells_between(n.eta0(a)?, m.eta0(a)?))
        })
        .collect::<Result<_>>()?;
    if choices.iter().any(|c| c.is_empty()) && !objects.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for pick in cartesian(&choices) {
        budget.charge("enumerate_modifications", 1)?;
        let cand = ModificationData {
            gamma: objects.iter().cloned().zip(pick.iter().cloned()).collect(),
        };
        if check_modification(src, tgt, f, g, n, m, &cand)?.passed() {
            out.push(cand);
        }
    }
    Ok(out)
}

/// A modification is invertible exactly when each component is an invertible
/// 2-cell (the 2-cells of Pseudo are componentwise).
pub fn modification_is_invertible(
    tgt: &BicatPresentation,
    gamma: &ModificationData,
) -> Result<bool> {
    for c in gamma.gamma.values() {
        if inverse_2cell(tgt, c).is_err() {
            return Ok(false);
        }
    }
    Ok(true)
}
