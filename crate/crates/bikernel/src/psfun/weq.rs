//! Local equivalence, essential surjectivity, and weak equivalence of
//! pseudofunctors.

use super::PseudofunctorData;
use crate::bicat::{adjoint_equivalences, hom_category, BicatPresentation};
use crate::budget::Budget;
use crate::error::Result;
use crate::fincat::{is_equivalence_of_categories, Functor};
use std::collections::BTreeMap;

/// The functor between hom-categories induced by F at a pair of objects.
pub fn induced_hom_functor(
    src: &BicatPresentation,
    f: &PseudofunctorData,
    x: &crate::cell::CellId,
    y: &crate::cell::CellId,
) -> Result<Functor> {
    let dom = hom_category(src, x, y)?;
    let mut ob = BTreeMap::new();
    let mut mor = BTreeMap::new();
    for k in &dom.objects {
        ob.insert(k.clone(), f.f1(k)?.clone());
    }
    for t in dom.morphisms.keys() {
        mor.insert(t.clone(), f.f2(t)?.clone());
    }
    Ok(Functor { ob, mor })
}

/// F is a local equivalence when each induced hom-functor is an equivalence
/// of finite categories (fully faithful and essentially surjective).
pub fn is_local_equivalence(
    src: &BicatPresentation,
    tgt: &BicatPresentation,
    f: &PseudofunctorData,
) -> Result<bool> {
    for x in &src.objects {
        for y in &src.objects {
            let dom = hom_category(src, x, y)?;
            let cod = hom_category(tgt, f.f0(x)?, f.f0(y)?)?;
            let functor = induced_hom_functor(src, f, x, y)?;
            if !functor.validate(&dom, &cod).passed() {
                return Ok(false);
            }
            if !is_equivalence_of_categories(&dom, &cod, &functor) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// F is essentially surjective when every target object admits an adjoint
/// equivalence from some image object. Mere existence collapses to decidable
/// existence at this finite level.
pub fn is_essentially_surjective(
    src: &BicatPresentation,
    tgt: &BicatPresentation,
    f: &PseudofunctorData,
    budget: &Budget,
) -> Result<bool> {
    for y in &tgt.objects {
        let mut hit = false;
        for x in &src.objects {
            let fx = f.f0(x)?;
            if fx == y || !adjoint_equivalences(tgt, fx, y, budget)?.is_empty() {
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_weak_equivalence(
    src: &BicatPresentation,
    tgt: &BicatPresentation,
    f: &PseudofunctorData,
    budget: &Budget,
) -> Result<bool> {
    Ok(is_local_equivalence(src, tgt, f)? && is_essentially_surjective(src, tgt, f, budget)?)
}

/// The image of an adjoint equivalence under a pseudofunctor, corrected by
/// the identitor and compositor and re-verified against the triangle laws.
pub fn image_adjequiv(
    src: &BicatPresentation,
    tgt: &BicatPresentation,
    f: &super::PseudofunctorData,
    e: &crate::bicat::AdjEquiv,
) -> Result<crate::bicat::AdjEquiv> {
    use crate::bicat::Inv2Cell;
    let a = src.one_cell(&e.f)?.src.clone();
    let bb = src.one_cell(&e.f)?.tgt.clone();
    let ff = f.f1(&e.f)?.clone();
    let fg = f.f1(&e.g)?.clone();

    // η' = γ_F(a) • F2(η) • δ_F(f,g)⁻¹ : id₁(F a) ⇒ F1(f)·F1(g)
    let eta_parts: Vec<(crate::cell::CellId, crate::cell::CellId)> = vec![
        (
            f.identitor(&a)?.clone(),
            super::inverse_2cell(tgt, f.identitor(&a)?)?,
        ),
        (
            f.f2(&e.eta.theta)?.clone(),
            f.f2(&e.eta.theta_inv)?.clone(),
        ),
        (
            super::inverse_2cell(tgt, f.compositor(&e.f, &e.g)?)?,
            f.compositor(&e.f, &e.g)?.clone(),
        ),
    ];
    let eta_fwd = tgt.vcomp_chain(eta_parts.iter().map(|(x, _)| x))?;
    let eta_bwd = {
        let rev: Vec<_> = eta_parts.iter().rev().map(|(_, y)| y).collect();
        tgt.vcomp_chain(rev)?
    };
    // ε' = δ_F(g,f) • F2(ε) • γ_F(b)⁻¹ : F1(g)·F1(f) ⇒ id₁(F b)
    let eps_parts: Vec<(crate::cell::CellId, crate::cell::CellId)> = vec![
        (
            f.compositor(&e.g, &e.f)?.clone(),
            super::inverse_2cell(tgt, f.compositor(&e.g, &e.f)?)?,
        ),
        (
            f.f2(&e.eps.theta)?.clone(),
            f.f2(&e.eps.theta_inv)?.clone(),
        ),
        (
            super::inverse_2cell(tgt, f.identitor(&bb)?)?,
            f.identitor(&bb)?.clone(),
        ),
    ];
    let eps_fwd = tgt.vcomp_chain(eps_parts.iter().map(|(x, _)| x))?;
    let eps_bwd = {
        let rev: Vec<_> = eps_parts.iter().rev().map(|(_, y)| y).collect();
        tgt.vcomp_chain(rev)?
    };
    let out = crate::bicat::AdjEquiv {
        f: ff,
        g: fg,
        eta: Inv2Cell {
            theta: eta_fwd,
            theta_inv: eta_bwd,
        },
        eps: Inv2Cell {
            theta: eps_fwd,
            theta_inv: eps_bwd,
        },
    };
    if !crate::bicat::triangles_hold(tgt, &out)? {
        return Err(crate::error::KernelError::ConstructionFailed(
            "image adjoint equivalence fails the triangle laws".into(),
        ));
    }
    Ok(out)
}
