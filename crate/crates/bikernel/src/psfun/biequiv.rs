//! Biequivalence data and its validator.

use super::{
    check_modification, check_psfunctor, check_pstrans, comp_psfunctor, comp_pstrans,
    id_psfunctor, id_pstrans, modification_is_invertible, ModificationData, PseudofunctorData,
    PstransData,
};
use crate::bicat::BicatPresentation;
use crate::budget::Budget;
use crate::error::Result;
use crate::report::{LawReport, Violation};
use crate::univalence::check_univalent;

/// A biequivalence between two presentations: pseudofunctors in both
/// directions, unit/counit pseudotransformations in both directions, and
/// four invertible modifications.
///
/// η : R·L ⇒ id(C) and η_i its reverse live on the target side; ε : L·R ⇒
/// id(B) and ε_i on the source side. m1 : η • η_i ⇒ id(R·L),
/// m2 : η_i • η ⇒ id(id C), m3 : ε • ε_i ⇒ id(L·R), m4 : ε_i • ε ⇒ id(id B).
#[derive(Debug, Clone, Default)]
pub struct BiequivalenceData {
    pub l: PseudofunctorData,
    pub r: PseudofunctorData,
    pub eta: PstransData,
    pub eta_i: PstransData,
    pub eps: PstransData,
    pub eps_i: PstransData,
    pub m1: ModificationData,
    pub m2: ModificationData,
    pub m3: ModificationData,
    pub m4: ModificationData,
}

/// Verifies every component of a biequivalence against its stated composite
/// endpoints, the modification laws, componentwise invertibility of the four
/// modifications, and — when both sides are univalent — that L is a
/// bijection on objects.
pub fn check_biequivalence(
    src: &BicatPresentation,
    tgt: &BicatPresentation,
    b: &BiequivalenceData,
    budget: &Budget,
) -> Result<LawReport> {
    let mut violations: Vec<Violation> = Vec::new();
    fn push(violations: &mut Vec<Violation>, name: &str, report: LawReport) {
        for v in report.violations {
            violations.push(Violation::new(
                format!("biequiv:{name}:{}", v.law),
                v.cells,
                v.lhs,
                v.rhs,
            ));
        }
    }

    push(&mut violations, "L", check_psfunctor(src, tgt, &b.l)?);
    push(&mut violations, "R", check_psfunctor(tgt, src, &b.r)?);
    if !violations.is_empty() {
        return Ok(LawReport::from_violations(violations));
    }

    let rl = comp_psfunctor(src, tgt, &b.r, &b.l)?;
    let lr = comp_psfunctor(tgt, src, &b.l, &b.r)?;
    let id_c = id_psfunctor(tgt)?;
    let id_b = id_psfunctor(src)?;

    push(&mut violations, "eta", check_pstrans(tgt, tgt, &rl, &id_c, &b.eta)?);
    push(&mut violations, "eta_i", check_pstrans(tgt, tgt, &id_c, &rl, &b.eta_i)?);
    push(&mut violations, "eps", check_pstrans(src, src, &lr, &id_b, &b.eps)?);
    push(&mut violations, "eps_i", check_pstrans(src, src, &id_b, &lr, &b.eps_i)?);
    if !violations.is_empty() {
        return Ok(LawReport::from_violations(violations));
    }

    // m1 : η • η_i ⇒ id(R·L)    m2 : η_i • η ⇒ id(id C)
    let ee = comp_pstrans(tgt, tgt, &rl, &id_c, &rl, &b.eta, &b.eta_i)?;
    let id_rl = id_pstrans(tgt, tgt, &rl)?;
    push(
        &mut violations,
        "m1",
        check_modification(tgt, tgt, &rl, &rl, &ee, &id_rl, &b.m1)?,
    );
    let ee2 = comp_pstrans(tgt, tgt, &id_c, &rl, &id_c, &b.eta_i, &b.eta)?;
    let id_idc = id_pstrans(tgt, tgt, &id_c)?;
    push(
        &mut violations,
        "m2",
        check_modification(tgt, tgt, &id_c, &id_c, &ee2, &id_idc, &b.m2)?,
    );
    // m3 : ε • ε_i ⇒ id(L·R)    m4 : ε_i • ε ⇒ id(id B)
    let ff = comp_pstrans(src, src, &lr, &id_b, &lr, &b.eps, &b.eps_i)?;
    let id_lr = id_pstrans(src, src, &lr)?;
    push(
        &mut violations,
        "m3",
        check_modification(src, src, &lr, &lr, &ff, &id_lr, &b.m3)?,
    );
    let ff2 = comp_pstrans(src, src, &id_b, &lr, &id_b, &b.eps_i, &b.eps)?;
    let id_idb = id_pstrans(src, src, &id_b)?;
    push(
        &mut violations,
        "m4",
        check_modification(src, src, &id_b, &id_b, &ff2, &id_idb, &b.m4)?,
    );

    for (name, m, amb) in [
        ("m1", &b.m1, tgt),
        ("m2", &b.m2, tgt),
        ("m3", &b.m3, src),
        ("m4", &b.m4, src),
    ] {
        if !modification_is_invertible(amb, m)? {
            violations.push(Violation::new(
                format!("biequiv:{name}:invertible"),
                vec![],
                "some component has no inverse",
                "",
            ));
        }
    }

    // Finite form of biequivalence_to_object_equivalence: for univalent
    // source and target, L0 must be a bijection on objects.
    if violations.is_empty()
        && check_univalent(src, budget)?.passed()
        && check_univalent(tgt, budget)?.passed()
    {
        let mut image: Vec<_> = b.l.f0.values().cloned().collect();
        image.sort();
        image.dedup();
        if b.l.f0.len() != src.objects.len()
            || image.len() != src.objects.len()
            || image.len() != tgt.objects.len()
        {
            violations.push(Violation::new(
                "biequiv:object-bijection",
                vec![],
                format!("|B0| = {}, |image| = {}", src.objects.len(), image.len()),
                format!("|C0| = {}", tgt.objects.len()),
            ));
        }
    }

    Ok(LawReport::from_violations(violations))
}

/// The identity biequivalence on a presentation: identity pseudofunctors,
/// identity pseudotransformations, and identity modifications.
pub fn identity_biequivalence(p: &BicatPresentation) -> Result<BiequivalenceData> {
    let id = id_psfunctor(p)?;
    let rl = comp_psfunctor(p, p, &id, &id)?;
    let id_ps = id_pstrans(p, p, &rl)?;
    // η = η_i = id pseudotransformation on id·id = id.
    let eta = id_ps.clone();
    let eta_i = id_ps.clone();
    let ee = comp_pstrans(p, p, &rl, &rl, &rl, &eta, &eta_i)?;
    // m-components: the unique structural 2-cell id₁·id₁ ⇒ id₁ per object,
    // namely the unitor.
    let mut m1 = ModificationData::default();
    for a in &p.objects {
        let comp_component = ee.eta0(a)?.clone();
        let target_component = id_ps.eta0(a)?.clone();
        // comp = id1(a)·id1(a) target id1(a): unitor λ.
        let lam = p.lunitor(p.id1(a)?)?.clone();
        let got = p.one_cell(&comp_component)?;
        let _ = got;
        let _ = target_component;
        m1.gamma.insert(a.clone(), lam);
    }
    Ok(BiequivalenceData {
        l: id.clone(),
        r: id,
        eta: eta.clone(),
        eta_i: eta_i.clone(),
        eps: eta,
        eps_i: eta_i,
        m1: m1.clone(),
        m2: m1.clone(),
        m3: m1.clone(),
        m4: m1,
    })
}
