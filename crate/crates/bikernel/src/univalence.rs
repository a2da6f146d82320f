//! Decision procedures for local and global univalence in the finite
//! set-model, and the consequences that hold in univalent presentations.
//!
//! In this model an identity type `f = g` has zero or one inhabitants, so
//! "idtoiso is an equivalence" becomes a counting-plus-canonicity condition:
//! distinct parallel 1-cells admit no invertible 2-cell and each 1-cell
//! admits exactly the identity; distinct objects admit no adjoint
//! equivalence and each object admits exactly the canonical identity one.

use crate::bicat::{
    adjoint_equivalences, canonical_identity_adjequiv, invertible_2cells, is_biinitial,
    triangles_hold, AdjEquiv, BicatPresentation, Inv2Cell,
};
use crate::budget::Budget;
use crate::cell::CellId;
use crate::error::{KernelError, Result};
use crate::report::{UnivalenceReport, UnivalenceSide, UnivalenceWitness};

/// Local univalence: for parallel f, g the invertible 2-cells count their
/// equality proofs, and on f = f the unique one is id₂(f).
pub fn check_local_univalence(p: &BicatPresentation, budget: &Budget) -> Result<UnivalenceSide> {
    let mut witnesses = Vec::new();
    let ones: Vec<_> = p.one_cells.keys().cloned().collect();
    for f in &ones {
        let fc = p.one_cell(f)?.clone();
        for g in &ones {
            let gc = p.one_cell(g)?;
            if fc.src != gc.src || fc.tgt != gc.tgt {
                continue;
            }
            budget.charge("local_univalence", 1)?;
            let inv = invertible_2cells(p, f, g)?;
            if f != g {
                if !inv.is_empty() {
                    witnesses.push(UnivalenceWitness {
                        cells: (f.clone(), g.clone()),
                        count: inv.len(),
                        non_canonical: false,
                    });
                }
            } else {
                let idf = p.id2(f)?.clone();
                let canonical = Inv2Cell {
                    theta: idf.clone(),
                    theta_inv: idf,
                };
                if inv.len() != 1 {
                    witnesses.push(UnivalenceWitness {
                        cells: (f.clone(), g.clone()),
                        count: inv.len(),
                        non_canonical: false,
                    });
                } else if inv[0] != canonical {
                    witnesses.push(UnivalenceWitness {
                        cells: (f.clone(), g.clone()),
                        count: 1,
                        non_canonical: true,
                    });
                }
            }
        }
    }
    Ok(UnivalenceSide::from_witnesses(witnesses))
}

/// Global univalence: adjoint equivalences count the equality proofs of
/// objects, and on a = a the unique one is the canonical identity
/// equivalence (unit λ(id₁ a)⁻¹, counit λ(id₁ a)).
pub fn check_global_univalence(p: &BicatPresentation, budget: &Budget) -> Result<UnivalenceSide> {
    let mut witnesses = Vec::new();
    for a in &p.objects {
        for b in &p.objects {
            budget.charge("global_univalence", 1)?;
            let adj = adjoint_equivalences(p, a, b, budget)?;
            if a != b {
                if !adj.is_empty() {
                    witnesses.push(UnivalenceWitness {
                        cells: (a.clone(), b.clone()),
                        count: adj.len(),
                        non_canonical: false,
                    });
                }
            } else {
                let canonical = canonical_identity_adjequiv(p, a)?;
                if adj.len() != 1 {
                    witnesses.push(UnivalenceWitness {
                        cells: (a.clone(), b.clone()),
                        count: adj.len(),
                        non_canonical: false,
                    });
                } else if adj[0] != canonical {
                    witnesses.push(UnivalenceWitness {
                        cells: (a.clone(), b.clone()),
                        count: 1,
                        non_canonical: true,
                    });
                }
            }
        }
    }
    Ok(UnivalenceSide::from_witnesses(witnesses))
}

/// Conjunction of the local and global checks; both run unconditionally.
pub fn check_univalent(p: &BicatPresentation, budget: &Budget) -> Result<UnivalenceReport> {
    let local = check_local_univalence(p, budget)?;
    let global = check_global_univalence(p, budget)?;
    Ok(UnivalenceReport::new(local, global))
}

/// The number of adjoint-equivalence structures (g, η, ε) on a fixed 1-cell.
/// In a locally univalent presentation this is at most 1.
pub fn adjequiv_structure_count(
    p: &BicatPresentation,
    f: &CellId,
    budget: &Budget,
) -> Result<usize> {
    let fc = p.one_cell(f)?.clone();
    let ida = p.id1(&fc.src)?.clone();
    let idb = p.id1(&fc.tgt)?.clone();
    let mut count = 0;
    for g in p.one_cells_between(&fc.tgt, &fc.src) {
        budget.charge("adjequiv_structure_count", 1)?;
        let fg = p.comp1(f, &g)?.clone();
        let gf = p.comp1(&g, f)?.clone();
        for eta in invertible_2cells(p, &ida, &fg)? {
            for eps in invertible_2cells(p, &gf, &idb)? {
                budget.charge("adjequiv_structure_count", 1)?;
                let cand = AdjEquiv {
                    f: f.clone(),
                    g: g.clone(),
                    eta: eta.clone(),
                    eps: eps.clone(),
                };
                if triangles_hold(p, &cand)? {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

fn inverse_of_chain(p: &BicatPresentation, parts: &[(CellId, CellId)]) -> Result<CellId> {
    // parts are (cell, inverse) pairs of the forward chain, in order; the
    // inverse composite runs the inverses backwards.
    let invs: Vec<_> = parts.iter().rev().map(|(_, inv)| inv).collect();
    p.vcomp_chain(invs)
}

fn verified_inv2cell(p: &BicatPresentation, theta: CellId, theta_inv: CellId) -> Result<Inv2Cell> {
    let tc = p.two_cell(&theta)?.clone();
    let fwd = p.vcomp(&theta, &theta_inv)?;
    let bwd = p.vcomp(&theta_inv, &theta)?;
    if fwd != p.id2(&tc.src)? || bwd != p.id2(&tc.tgt)? {
        return Err(KernelError::ConstructionFailed(format!(
            "candidate inverse pair ({theta}, {theta_inv}) fails the inverse laws"
        )));
    }
    Ok(Inv2Cell { theta, theta_inv })
}

/// Sequential composition of adjoint equivalences, built directly from the
/// composed unit and counit and re-verified against the triangle laws.
pub fn compose_adjequiv(
    p: &BicatPresentation,
    e1: &AdjEquiv,
    e2: &AdjEquiv,
) -> Result<AdjEquiv> {
    let f1t = p.one_cell(&e1.f)?.tgt.clone();
    let f2s = p.one_cell(&e2.f)?.src.clone();
    if f1t != f2s {
        return Err(KernelError::TypeMismatch(format!(
            "compose_adjequiv: target of {} is not source of {}",
            e1.f, e2.f
        )));
    }
    let f = p.comp1(&e1.f, &e2.f)?.clone();
    let g = p.comp1(&e2.g, &e1.g)?.clone();

    // η : id₁(a) ⇒ (f₁·f₂)·(g₂·g₁), threading e2.η inside e1's image.
    let g2g1 = p.comp1(&e2.g, &e1.g)?.clone();
    let eta_parts: Vec<(CellId, CellId)> = {
        let lam = p.lunitor(&e1.g)?.clone();
        let lam_i = p.lunitor_inv(&e1.g)?.clone();
        let w_eta2 = p.rwhisker(&e2.eta.theta, &e1.g)?.clone();
        let w_eta2_i = p.rwhisker(&e2.eta.theta_inv, &e1.g)?.clone();
        let assoc_i = p.lassoc_inv(&e2.f, &e2.g, &e1.g)?.clone();
        let assoc = p.lassoc(&e2.f, &e2.g, &e1.g)?.clone();
        let inner_fwd = p.vcomp_chain([&lam_i, &w_eta2, &assoc_i])?;
        let inner_bwd = p.vcomp_chain([&assoc, &w_eta2_i, &lam])?;
        let w_inner = p.lwhisker(&e1.f, &inner_fwd)?.clone();
        let w_inner_i = p.lwhisker(&e1.f, &inner_bwd)?.clone();
        let outer = p.lassoc(&e1.f, &e2.f, &g2g1)?.clone();
        let outer_i = p.lassoc_inv(&e1.f, &e2.f, &g2g1)?.clone();
        vec![
            (e1.eta.theta.clone(), e1.eta.theta_inv.clone()),
            (w_inner, w_inner_i),
            (outer, outer_i),
        ]
    };
    let eta_fwd = p.vcomp_chain(eta_parts.iter().map(|(c, _)| c))?;
    let eta_bwd = inverse_of_chain(p, &eta_parts)?;
    let eta = verified_inv2cell(p, eta_fwd, eta_bwd)?;

    // ε : (g₂·g₁)·(f₁·f₂) ⇒ id₁(c), collapsing e1 inside e2's image.
    let f1f2 = p.comp1(&e1.f, &e2.f)?.clone();
    let eps_parts: Vec<(CellId, CellId)> = {
        let a1 = p.lassoc(&g2g1, &e1.f, &e2.f)?.clone();
        let a1_i = p.lassoc_inv(&g2g1, &e1.f, &e2.f)?.clone();
        let a2 = p.lassoc_inv(&e2.g, &e1.g, &e1.f)?.clone();
        let a2_i = p.lassoc(&e2.g, &e1.g, &e1.f)?.clone();
        let a2w = p.rwhisker(&a2, &e2.f)?.clone();
        let a2w_i = p.rwhisker(&a2_i, &e2.f)?.clone();
        let w_eps1 = p.lwhisker(&e2.g, &e1.eps.theta)?.clone();
        let w_eps1_i = p.lwhisker(&e2.g, &e1.eps.theta_inv)?.clone();
        let w_eps1w = p.rwhisker(&w_eps1, &e2.f)?.clone();
        let w_eps1w_i = p.rwhisker(&w_eps1_i, &e2.f)?.clone();
        let rho = p.runitor(&e2.g)?.clone();
        let rho_i = p.runitor_inv(&e2.g)?.clone();
        let rhow = p.rwhisker(&rho, &e2.f)?.clone();
        let rhow_i = p.rwhisker(&rho_i, &e2.f)?.clone();
        vec![
            (a1, a1_i),
            (a2w, a2w_i),
            (w_eps1w, w_eps1w_i),
            (rhow, rhow_i),
            (e2.eps.theta.clone(), e2.eps.theta_inv.clone()),
        ]
    };
    let _ = f1f2;
    let eps_fwd = p.vcomp_chain(eps_parts.iter().map(|(c, _)| c))?;
    let eps_bwd = inverse_of_chain(p, &eps_parts)?;
    let eps = verified_inv2cell(p, eps_fwd, eps_bwd)?;

    let out = AdjEquiv { f, g, eta, eps };
    if !triangles_hold(p, &out)? {
        return Err(KernelError::ConstructionFailed(
            "composed adjoint equivalence fails the triangle laws".into(),
        ));
    }
    Ok(out)
}

/// Transport of an adjoint equivalence structure along an invertible 2-cell
/// θ : e.f ⇒ f', built directly and re-verified.
pub fn transport_adjequiv(
    p: &BicatPresentation,
    e: &AdjEquiv,
    theta: &Inv2Cell,
) -> Result<AdjEquiv> {
    let tc = p.two_cell(&theta.theta)?.clone();
    if tc.src != e.f {
        return Err(KernelError::TypeMismatch(format!(
            "transport_adjequiv: 2-cell source {} is not the underlying 1-cell {}",
            tc.src, e.f
        )));
    }
    let f2 = tc.tgt.clone();
    let eta_parts = vec![
        (e.eta.theta.clone(), e.eta.theta_inv.clone()),
        (
            p.rwhisker(&theta.theta, &e.g)?.clone(),
            p.rwhisker(&theta.theta_inv, &e.g)?.clone(),
        ),
    ];
    let eta = verified_inv2cell(
        p,
        p.vcomp_chain(eta_parts.iter().map(|(c, _)| c))?,
        inverse_of_chain(p, &eta_parts)?,
    )?;
    let eps_parts = vec![
        (
            p.lwhisker(&e.g, &theta.theta_inv)?.clone(),
            p.lwhisker(&e.g, &theta.theta)?.clone(),
        ),
        (e.eps.theta.clone(), e.eps.theta_inv.clone()),
    ];
    let eps = verified_inv2cell(
        p,
        p.vcomp_chain(eps_parts.iter().map(|(c, _)| c))?,
        inverse_of_chain(p, &eps_parts)?,
    )?;
    let out = AdjEquiv {
        f: f2,
        g: e.g.clone(),
        eta,
        eps,
    };
    if !triangles_hold(p, &out)? {
        return Err(KernelError::ConstructionFailed(
            "transported adjoint equivalence fails the triangle laws".into(),
        ));
    }
    Ok(out)
}

/// In a univalent presentation the biinitial objects form a proposition:
/// there is at most one. Refuses non-univalent inputs, where the claim is
/// not made.
pub fn biinitial_uniqueness_check(p: &BicatPresentation, budget: &Budget) -> Result<bool> {
    let report = check_univalent(p, budget)?;
    if !report.passed() {
        return Err(KernelError::PreconditionFailed(
            "biinitial_uniqueness_check requires a univalent presentation".into(),
        ));
    }
    let mut found = 0usize;
    for a in &p.objects {
        if is_biinitial(p, a)?.biinitial {
            found += 1;
        }
    }
    Ok(found <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicat::{
        chaotic_bicat, delta2, discrete_bicat, monoid_delooping, terminal_bicat, weak_unit_bicat,
        MonoidTable,
    };

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn discrete_and_terminal_are_univalent() {
        for p in [
            discrete_bicat(0),
            discrete_bicat(1),
            discrete_bicat(2),
            discrete_bicat(3),
            terminal_bicat(),
        ] {
            assert!(check_univalent(&p, &b()).unwrap().passed());
        }
    }

    #[test]
    fn bool_delooping_is_univalent() {
        let p = monoid_delooping(&MonoidTable::bool_and()).unwrap();
        assert!(check_univalent(&p, &b()).unwrap().passed());
    }

    #[test]
    fn zmod2_delooping_fails_global_with_count_2() {
        let p = monoid_delooping(&MonoidTable::zmod2()).unwrap();
        let r = check_univalent(&p, &b()).unwrap();
        assert!(r.local.passed());
        assert!(!r.global.passed());
        assert_eq!(r.global.witnesses.len(), 1);
        assert_eq!(r.global.witnesses[0].count, 2);
        assert_eq!(
            r.global.witnesses[0].cells,
            (CellId::from("*"), CellId::from("*"))
        );
    }

    #[test]
    fn delta2_fails_local_with_count_2() {
        let p = delta2();
        let r = check_univalent(&p, &b()).unwrap();
        assert!(!r.local.passed());
        let w = &r.local.witnesses[0];
        assert_eq!(w.count, 2);
        assert_eq!(w.cells.0, w.cells.1);
        assert!(!r.passed());
    }

    #[test]
    fn chaotic2_passes_local_fails_global() {
        let p = chaotic_bicat(2);
        let r = check_univalent(&p, &b()).unwrap();
        assert!(r.local.passed());
        assert!(!r.global.passed());
        assert!(r
            .global
            .witnesses
            .iter()
            .any(|w| w.cells.0 != w.cells.1));
    }

    #[test]
    fn weak_unit_presentation_is_univalent_but_not_strict() {
        // The weak-unit instance has one invertible 2-cell between the
        // distinct parallel 1-cells f and fp, so local univalence fails.
        let p = weak_unit_bicat();
        let r = check_univalent(&p, &b()).unwrap();
        assert!(!r.local.passed());
    }

    #[test]
    fn structure_counts() {
        let p = terminal_bicat();
        assert_eq!(
            adjequiv_structure_count(&p, &CellId::from("i"), &b()).unwrap(),
            1
        );
        let z = monoid_delooping(&MonoidTable::zmod2()).unwrap();
        assert_eq!(
            adjequiv_structure_count(&z, &CellId::from("s"), &b()).unwrap(),
            1
        );
        let m = monoid_delooping(&MonoidTable::bool_and()).unwrap();
        assert_eq!(
            adjequiv_structure_count(&m, &CellId::from("0"), &b()).unwrap(),
            0
        );
    }

    #[test]
    fn prop_3_9_finite_form_on_locally_univalent_corpus() {
        for p in [
            discrete_bicat(3),
            chaotic_bicat(2),
            monoid_delooping(&MonoidTable::bool_and()).unwrap(),
            monoid_delooping(&MonoidTable::zmod2()).unwrap(),
        ] {
            assert!(check_local_univalence(&p, &b()).unwrap().passed());
            for f in p.one_cells.keys() {
                assert!(adjequiv_structure_count(&p, f, &b()).unwrap() <= 1);
            }
        }
    }

    #[test]
    fn compose_and_transport_identities() {
        let p = terminal_bicat();
        let id = canonical_identity_adjequiv(&p, &CellId::from("*")).unwrap();
        let comp = compose_adjequiv(&p, &id, &id).unwrap();
        assert_eq!(comp.f, id.f);
        assert!(triangles_hold(&p, &comp).unwrap());

        let idcell = Inv2Cell {
            theta: CellId::from("e"),
            theta_inv: CellId::from("e"),
        };
        let tr = transport_adjequiv(&p, &id, &idcell).unwrap();
        assert_eq!(tr.f, id.f);
    }

    #[test]
    fn compose_zmod2_equivalences_lands_on_unit() {
        let p = monoid_delooping(&MonoidTable::zmod2()).unwrap();
        let star = CellId::from("*");
        let all = adjoint_equivalences(&p, &star, &star, &b()).unwrap();
        let sigma = all.iter().find(|e| e.f == CellId::from("s")).unwrap();
        let comp = compose_adjequiv(&p, sigma, sigma).unwrap();
        assert_eq!(comp.f, CellId::from("1"));
        assert!(triangles_hold(&p, &comp).unwrap());
    }

    #[test]
    fn transport_moves_the_underlying_cell() {
        let p = delta2();
        let star = CellId::from("*");
        let id = canonical_identity_adjequiv(&p, &star).unwrap();
        // Transport along the non-identity invertible 2-cell g_z1 : 1 ⇒ 1.
        let theta = Inv2Cell {
            theta: CellId::from("g_z1"),
            theta_inv: CellId::from("g_z1"),
        };
        let tr = transport_adjequiv(&p, &id, &theta).unwrap();
        assert_eq!(tr.f, CellId::from("1"));
        assert!(triangles_hold(&p, &tr).unwrap());
    }

    #[test]
    fn biinitial_uniqueness() {
        assert!(biinitial_uniqueness_check(&discrete_bicat(1), &b()).unwrap());
        assert!(biinitial_uniqueness_check(&discrete_bicat(2), &b()).unwrap());
        let z = monoid_delooping(&MonoidTable::zmod2()).unwrap();
        assert!(matches!(
            biinitial_uniqueness_check(&z, &b()),
            Err(KernelError::PreconditionFailed(_))
        ));
    }

    #[test]
    fn j_consequences_on_univalent_corpus() {
        for p in [
            discrete_bicat(2),
            terminal_bicat(),
            monoid_delooping(&MonoidTable::bool_and()).unwrap(),
        ] {
            assert!(check_univalent(&p, &b()).unwrap().passed());
            // Local J: any invertible 2-cell forces f = g and is id₂(f).
            for f in p.one_cells.keys() {
                for g in p.one_cells.keys() {
                    let fc = p.one_cell(f).unwrap();
                    let gc = p.one_cell(g).unwrap();
                    if fc.src != gc.src || fc.tgt != gc.tgt {
                        continue;
                    }
                    let inv = invertible_2cells(&p, f, g).unwrap();
                    if !inv.is_empty() {
                        assert_eq!(f, g);
                        assert_eq!(&inv[0].theta, p.id2(f).unwrap());
                    }
                }
            }
            // Global J: any adjoint equivalence forces a = b and is canonical.
            for a in &p.objects {
                for bb in &p.objects {
                    let adj = adjoint_equivalences(&p, a, bb, &b()).unwrap();
                    if !adj.is_empty() {
                        assert_eq!(a, bb);
                        assert_eq!(adj[0], canonical_identity_adjequiv(&p, a).unwrap());
                    }
                }
            }
        }
    }
}
