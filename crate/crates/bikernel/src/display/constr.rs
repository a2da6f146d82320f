//! The displayed construction library: full sub, product, sigma, trivial,
//! and chaotic displayed bicategories.

use super::{total_bicat, DispBicatPresentation, DispObj, DispOne, DispTwo};
use crate::bicat::BicatPresentation;
use crate::cell::{glue, pair_token, CellId};
use crate::error::{KernelError, Result};
use std::collections::BTreeMap;

/// Full subbicategory as a displayed presentation: a unit fiber over each
/// object satisfying the predicate, unit 1- and 2-cell fibers everywhere
/// above. Displayed tokens reuse the base tokens.
pub fn fullsub_disp(
    p: &BicatPresentation,
    pred: &dyn Fn(&CellId) -> bool,
) -> Result<DispBicatPresentation> {
    let mut d = DispBicatPresentation {
        base: p.clone(),
        ..Default::default()
    };
    for a in &p.objects {
        if pred(a) {
            d.d0.insert(a.clone(), DispObj { over: a.clone() });
        }
    }
    for (f, fc) in &p.one_cells {
        if d.d0.contains_key(&fc.src) && d.d0.contains_key(&fc.tgt) {
            d.d1.insert(
                f.clone(),
                DispOne {
                    over: f.clone(),
                    src: fc.src.clone(),
                    tgt: fc.tgt.clone(),
                },
            );
        }
    }
    for (t, tc) in &p.two_cells {
        if d.d1.contains_key(&tc.src) && d.d1.contains_key(&tc.tgt) {
            d.d2.insert(
                t.clone(),
                DispTwo {
                    over: t.clone(),
                    src: tc.src.clone(),
                    tgt: tc.tgt.clone(),
                },
            );
        }
    }
    let keep1 = |f: &CellId| d.d1.contains_key(f);
    let keep2 = |t: &CellId| d.d2.contains_key(t);
    for (a, i) in &p.id1 {
        if d.d0.contains_key(a) {
            d.disp_id1.insert(a.clone(), i.clone());
        }
    }
    for ((f, g), r) in &p.comp1 {
        if keep1(f) && keep1(g) {
            d.disp_comp1.insert((f.clone(), g.clone()), r.clone());
        }
    }
    for (f, e) in &p.id2 {
        if keep1(f) {
            d.disp_id2.insert(f.clone(), e.clone());
        }
    }
    for ((t, u), r) in &p.vcomp {
        if keep2(t) && keep2(u) {
            d.disp_vcomp.insert((t.clone(), u.clone()), r.clone());
        }
    }
    for ((f, t), r) in &p.lwhisker {
        if keep1(f) && keep2(t) {
            d.disp_lwhisker.insert((f.clone(), t.clone()), r.clone());
        }
    }
    for ((t, h), r) in &p.rwhisker {
        if keep2(t) && keep1(h) {
            d.disp_rwhisker.insert((t.clone(), h.clone()), r.clone());
        }
    }
    for (m_src, m_dst) in [
        (&p.lunitor, &mut d.disp_lunitor),
        (&p.lunitor_inv, &mut d.disp_lunitor_inv),
        (&p.runitor, &mut d.disp_runitor),
        (&p.runitor_inv, &mut d.disp_runitor_inv),
    ] {
        for (f, r) in m_src {
            if d.d1.contains_key(f) {
                m_dst.insert(f.clone(), r.clone());
            }
        }
    }
    for ((f, g, h), r) in &p.lassoc {
        if keep1(f) && keep1(g) && keep1(h) {
            d.disp_lassoc.insert((f.clone(), g.clone(), h.clone()), r.clone());
        }
    }
    for ((f, g, h), r) in &p.lassoc_inv {
        if keep1(f) && keep1(g) && keep1(h) {
            d.disp_lassoc_inv
                .insert((f.clone(), g.clone(), h.clone()), r.clone());
        }
    }
    Ok(d)
}

/// Product of two displayed presentations over the same base: fibers are
/// pairs, tables are componentwise.
pub fn prod_disp(
    d1: &DispBicatPresentation,
    d2: &DispBicatPresentation,
) -> Result<DispBicatPresentation> {
    if d1.base != d2.base {
        return Err(KernelError::TypeMismatch(
            "prod_disp: factors live over different bases".into(),
        ));
    }
    let mut d = DispBicatPresentation {
        base: d1.base.clone(),
        ..Default::default()
    };
    for (x, xc) in &d1.d0 {
        for (y, yc) in &d2.d0 {
            if xc.over == yc.over {
                d.d0.insert(glue(&[x, y]), DispObj { over: xc.over.clone() });
            }
        }
    }
    for (x, xc) in &d1.d1 {
        for (y, yc) in &d2.d1 {
            if xc.over == yc.over {
                d.d1.insert(
                    glue(&[x, y]),
                    DispOne {
                        over: xc.over.clone(),
                        src: glue(&[&xc.src, &yc.src]),
                        tgt: glue(&[&xc.tgt, &yc.tgt]),
                    },
                );
            }
        }
    }
    for (x, xc) in &d1.d2 {
        for (y, yc) in &d2.d2 {
            if xc.over == yc.over {
                d.d2.insert(
                    glue(&[x, y]),
                    DispTwo {
                        over: xc.over.clone(),
                        src: glue(&[&xc.src, &yc.src]),
                        tgt: glue(&[&xc.tgt, &yc.tgt]),
                    },
                );
            }
        }
    }
    for (x, r1) in &d1.disp_id1 {
        for (y, r2) in &d2.disp_id1 {
            if d.d0.contains_key(&glue(&[x, y])) {
                d.disp_id1.insert(glue(&[x, y]), glue(&[r1, r2]));
            }
        }
    }
    let pairwise2 = |m1: &BTreeMap<(CellId, CellId), CellId>,
                     m2: &BTreeMap<(CellId, CellId), CellId>,
                     valid_l: &dyn Fn(&CellId) -> bool,
                     valid_r: &dyn Fn(&CellId) -> bool|
     -> BTreeMap<(CellId, CellId), CellId> {
        let mut out = BTreeMap::new();
        for ((a1, b1), r1) in m1 {
            for ((a2, b2), r2) in m2 {
                let l = glue(&[a1, a2]);
                let r = glue(&[b1, b2]);
                if valid_l(&l) && valid_r(&r) {
                    out.insert((l, r), glue(&[r1, r2]));
                }
            }
        }
        out
    };
    let in1 = |t: &CellId| d.d1.contains_key(t);
    let in2 = |t: &CellId| d.d2.contains_key(t);
    d.disp_comp1 = pairwise2(&d1.disp_comp1, &d2.disp_comp1, &in1, &in1);
    d.disp_vcomp = pairwise2(&d1.disp_vcomp, &d2.disp_vcomp, &in2, &in2);
    d.disp_lwhisker = pairwise2(&d1.disp_lwhisker, &d2.disp_lwhisker, &in1, &in2);
    d.disp_rwhisker = pairwise2(&d1.disp_rwhisker, &d2.disp_rwhisker, &in2, &in1);
    for (x, r1) in &d1.disp_id2 {
        for (y, r2) in &d2.disp_id2 {
            if d.d1.contains_key(&glue(&[x, y])) {
                d.disp_id2.insert(glue(&[x, y]), glue(&[r1, r2]));
            }
        }
    }
    for (src1, src2, dst) in [
        (&d1.disp_lunitor, &d2.disp_lunitor, &mut d.disp_lunitor),
        (&d1.disp_lunitor_inv, &d2.disp_lunitor_inv, &mut d.disp_lunitor_inv),
        (&d1.disp_runitor, &d2.disp_runitor, &mut d.disp_runitor),
        (&d1.disp_runitor_inv, &d2.disp_runitor_inv, &mut d.disp_runitor_inv),
    ] {
        for (x, r1) in src1 {
            for (y, r2) in src2 {
                let key = glue(&[x, y]);
                if d.d1.contains_key(&key) {
                    dst.insert(key, glue(&[r1, r2]));
                }
            }
        }
    }
    for (src1, src2, dst) in [
        (&d1.disp_lassoc, &d2.disp_lassoc, &mut d.disp_lassoc),
        (&d1.disp_lassoc_inv, &d2.disp_lassoc_inv, &mut d.disp_lassoc_inv),
    ] {
        for ((f1, g1, h1), r1) in src1.iter() {
            for ((f2, g2, h2), r2) in src2.iter() {
                let kf = glue(&[f1, f2]);
                let kg = glue(&[g1, g2]);
                let kh = glue(&[h1, h2]);
                if d.d1.contains_key(&kf) && d.d1.contains_key(&kg) && d.d1.contains_key(&kh) {
                    dst.insert((kf, kg, kh), glue(&[r1, r2]));
                }
            }
        }
    }
    Ok(d)
}

/// Sigma of a displayed presentation `e` over the total of `d`: fibers over
/// the base of `d` are dependent pairs.
pub fn sigma_disp(
    d: &DispBicatPresentation,
    e: &DispBicatPresentation,
) -> Result<DispBicatPresentation> {
    let td = total_bicat(d)?;
    if e.base != td {
        return Err(KernelError::TypeMismatch(
            "sigma_disp: second layer does not live over the total of the first".into(),
        ));
    }
    let mut s = DispBicatPresentation {
        base: d.base.clone(),
        ..Default::default()
    };
    // Pair lookup helpers: which d-cell a given e-cell's base pair projects to.
    let d0_of = |u: &CellId| -> Result<(CellId, CellId)> {
        // e.d0 over pair_token(a, x): recover (a, x) via d's records.
        let over = &e.dobj(u)?.over;
        for (x, xc) in &d.d0 {
            if &pair_token(&xc.over, x) == over {
                return Ok((xc.over.clone(), x.clone()));
            }
        }
        Err(KernelError::DanglingReference {
            context: "sigma_disp: total object".into(),
            token: over.clone(),
        })
    };
    let d1_of = |phi: &CellId| -> Result<(CellId, CellId)> {
        let over = &e.done(phi)?.over;
        for (x, xc) in &d.d1 {
            if &pair_token(&xc.over, x) == over {
                return Ok((xc.over.clone(), x.clone()));
            }
        }
        Err(KernelError::DanglingReference {
            context: "sigma_disp: total 1-cell".into(),
            token: over.clone(),
        })
    };
    let d2_of = |psi: &CellId| -> Result<(CellId, CellId)> {
        let over = &e.dtwo(psi)?.over;
        for (x, xc) in &d.d2 {
            if &pair_token(&xc.over, x) == over {
                return Ok((xc.over.clone(), x.clone()));
            }
        }
        Err(KernelError::DanglingReference {
            context: "sigma_disp: total 2-cell".into(),
            token: over.clone(),
        })
    };

    for u in e.d0.keys() {
        let (a, x) = d0_of(u)?;
        s.d0.insert(glue(&[&x, u]), DispObj { over: a });
    }
    for (phi, pc) in &e.d1 {
        let (f, x) = d1_of(phi)?;
        let (_, src_x) = d0_of(&pc.src)?;
        let (_, tgt_x) = d0_of(&pc.tgt)?;
        s.d1.insert(
            glue(&[&x, phi]),
            DispOne {
                over: f,
                src: glue(&[&src_x, &pc.src]),
                tgt: glue(&[&tgt_x, &pc.tgt]),
            },
        );
    }
    for (psi, pc) in &e.d2 {
        let (t, x) = d2_of(psi)?;
        let (_, src_x) = d1_of(&pc.src)?;
        let (_, tgt_x) = d1_of(&pc.tgt)?;
        s.d2.insert(
            glue(&[&x, psi]),
            DispTwo {
                over: t,
                src: glue(&[&src_x, &pc.src]),
                tgt: glue(&[&tgt_x, &pc.tgt]),
            },
        );
    }
    for (u, r) in &e.disp_id1 {
        let (_, x) = d0_of(u)?;
        let (_, rx) = d1_of(r)?;
        s.disp_id1.insert(glue(&[&x, u]), glue(&[&rx, r]));
    }
    for ((phi, chi), r) in &e.disp_comp1 {
        let (_, x) = d1_of(phi)?;
        let (_, y) = d1_of(chi)?;
        let (_, rx) = d1_of(r)?;
        s.disp_comp1
            .insert((glue(&[&x, phi]), glue(&[&y, chi])), glue(&[&rx, r]));
    }
    for (phi, r) in &e.disp_id2 {
        let (_, x) = d1_of(phi)?;
        let (_, rx) = d2_of(r)?;
        s.disp_id2.insert(glue(&[&x, phi]), glue(&[&rx, r]));
    }
    for ((psi, om), r) in &e.disp_vcomp {
        let (_, x) = d2_of(psi)?;
        let (_, y) = d2_of(om)?;
        let (_, rx) = d2_of(r)?;
        s.disp_vcomp
            .insert((glue(&[&x, psi]), glue(&[&y, om])), glue(&[&rx, r]));
    }
    for ((phi, psi), r) in &e.disp_lwhisker {
        let (_, x) = d1_of(phi)?;
        let (_, y) = d2_of(psi)?;
        let (_, rx) = d2_of(r)?;
        s.disp_lwhisker
            .insert((glue(&[&x, phi]), glue(&[&y, psi])), glue(&[&rx, r]));
    }
    for ((psi, phi), r) in &e.disp_rwhisker {
        let (_, x) = d2_of(psi)?;
        let (_, y) = d1_of(phi)?;
        let (_, rx) = d2_of(r)?;
        s.disp_rwhisker
            .insert((glue(&[&x, psi]), glue(&[&y, phi])), glue(&[&rx, r]));
    }
    for (src, dst) in [
        (&e.disp_lunitor, &mut s.disp_lunitor),
        (&e.disp_lunitor_inv, &mut s.disp_lunitor_inv),
        (&e.disp_runitor, &mut s.disp_runitor),
        (&e.disp_runitor_inv, &mut s.disp_runitor_inv),
    ] {
        for (phi, r) in src {
            let (_, x) = d1_of(phi)?;
            let (_, rx) = d2_of(r)?;
            dst.insert(glue(&[&x, phi]), glue(&[&rx, r]));
        }
    }
    for (src, dst) in [
        (&e.disp_lassoc, &mut s.disp_lassoc),
        (&e.disp_lassoc_inv, &mut s.disp_lassoc_inv),
    ] {
        for ((f1, g1, h1), r) in src.iter() {
            let (_, x) = d1_of(f1)?;
            let (_, y) = d1_of(g1)?;
            let (_, z) = d1_of(h1)?;
            let (_, rx) = d2_of(r)?;
            dst.insert(
                (glue(&[&x, f1]), glue(&[&y, g1]), glue(&[&z, h1])),
                glue(&[&rx, r]),
            );
        }
    }
    Ok(s)
}

/// Every presentation q is trivially displayed over p; the total is the
/// direct product p × q.
pub fn trivial_disp(p: &BicatPresentation, q: &BicatPresentation) -> Result<DispBicatPresentation> {
    let mut d = DispBicatPresentation {
        base: p.clone(),
        ..Default::default()
    };
    for a in &p.objects {
        for x in &q.objects {
            d.d0.insert(glue(&[a, x]), DispObj { over: a.clone() });
        }
    }
    for (f, fc) in &p.one_cells {
        for (k, kc) in &q.one_cells {
            d.d1.insert(
                glue(&[f, k]),
                DispOne {
                    over: f.clone(),
                    src: glue(&[&fc.src, &kc.src]),
                    tgt: glue(&[&fc.tgt, &kc.tgt]),
                },
            );
        }
    }
    for (t, tc) in &p.two_cells {
        for (m, mc) in &q.two_cells {
            d.d2.insert(
                glue(&[t, m]),
                DispTwo {
                    over: t.clone(),
                    src: glue(&[&tc.src, &mc.src]),
                    tgt: glue(&[&tc.tgt, &mc.tgt]),
                },
            );
        }
    }
    for (a, i) in &p.id1 {
        for (x, j) in &q.id1 {
            d.disp_id1.insert(glue(&[a, x]), glue(&[i, j]));
        }
    }
    for ((f, g), r) in &p.comp1 {
        for ((k, l), u) in &q.comp1 {
            d.disp_comp1
                .insert((glue(&[f, k]), glue(&[g, l])), glue(&[r, u]));
        }
    }
    for (f, e) in &p.id2 {
        for (k, j) in &q.id2 {
            d.disp_id2.insert(glue(&[f, k]), glue(&[e, j]));
        }
    }
    for ((t, u), r) in &p.vcomp {
        for ((m, n), w) in &q.vcomp {
            d.disp_vcomp
                .insert((glue(&[t, m]), glue(&[u, n])), glue(&[r, w]));
        }
    }
    for ((f, t), r) in &p.lwhisker {
        for ((k, m), w) in &q.lwhisker {
            d.disp_lwhisker
                .insert((glue(&[f, k]), glue(&[t, m])), glue(&[r, w]));
        }
    }
    for ((t, h), r) in &p.rwhisker {
        for ((m, k), w) in &q.rwhisker {
            d.disp_rwhisker
                .insert((glue(&[t, m]), glue(&[h, k])), glue(&[r, w]));
        }
    }
    for (psrc, qsrc, dst) in [
        (&p.lunitor, &q.lunitor, &mut d.disp_lunitor),
        (&p.lunitor_inv, &q.lunitor_inv, &mut d.disp_lunitor_inv),
        (&p.runitor, &q.runitor, &mut d.disp_runitor),
        (&p.runitor_inv, &q.runitor_inv, &mut d.disp_runitor_inv),
    ] {
        for (f, r) in psrc {
            for (k, w) in qsrc {
                dst.insert(glue(&[f, k]), glue(&[r, w]));
            }
        }
    }
    for (psrc, qsrc, dst) in [
        (&p.lassoc, &q.lassoc, &mut d.disp_lassoc),
        (&p.lassoc_inv, &q.lassoc_inv, &mut d.disp_lassoc_inv),
    ] {
        for ((f, g, h), r) in psrc.iter() {
            for ((k, l, m), w) in qsrc.iter() {
                dst.insert(
                    (glue(&[f, k]), glue(&[g, l]), glue(&[h, m])),
                    glue(&[r, w]),
                );
            }
        }
    }
    Ok(d)
}

/// Input data for the chaotic construction: object and 1-cell fibers plus
/// the displayed identity and composition choices on the 1-cell tier.
#[derive(Debug, Clone, Default)]
pub struct ChaoticData {
    /// base object → displayed object tokens
    pub d0: BTreeMap<CellId, Vec<CellId>>,
    /// (base 1-cell, disp src, disp tgt) → displayed 1-cell tokens
    pub d1: BTreeMap<(CellId, CellId, CellId), Vec<CellId>>,
    /// disp object → displayed identity 1-cell
    pub id_table: BTreeMap<CellId, CellId>,
    /// (disp 1-cell, disp 1-cell) → displayed composite
    pub comp_table: BTreeMap<(CellId, CellId), CellId>,
}

/// The chaotic displayed bicategory: the supplied object/1-cell fibers with
/// singleton 2-cell fibers everywhere. The identity and composition tables
/// are taken as given and validated for closure, never completed silently.
pub fn chaotic_disp(p: &BicatPresentation, data: &ChaoticData) -> Result<DispBicatPresentation> {
    prop_disp(p, data, &|_, _, _| Ok(true))
}

/// Generalization of the chaotic construction to propositional 2-cell
/// fibers: the fiber over (θ, f̄, ḡ) is a singleton when `d2_pred` holds and
/// empty otherwise. All displayed 2-cell tables are forced; a mandated table
/// entry whose fiber is empty is a closure violation.
pub fn prop_disp(
    p: &BicatPresentation,
    data: &ChaoticData,
    d2_pred: &dyn Fn(&CellId, &CellId, &CellId) -> Result<bool>,
) -> Result<DispBicatPresentation> {
    let mut d = DispBicatPresentation {
        base: p.clone(),
        ..Default::default()
    };
    for (a, fiber) in &data.d0 {
        if !p.has_object(a) {
            return Err(KernelError::DanglingReference {
                context: "chaotic_disp.d0".into(),
                token: a.clone(),
            });
        }
        for x in fiber {
            if d.d0.insert(x.clone(), DispObj { over: a.clone() }).is_some() {
                return Err(KernelError::DuplicateId {
                    tier: "chaotic d0".into(),
                    token: x.clone(),
                });
            }
        }
    }
    for ((f, sa, sb), fiber) in &data.d1 {
        let fc = p.one_cell(f)?;
        let sa_ok = d.d0.get(sa).map(|c| c.over == fc.src).unwrap_or(false);
        let sb_ok = d.d0.get(sb).map(|c| c.over == fc.tgt).unwrap_or(false);
        if !sa_ok || !sb_ok {
            return Err(KernelError::TypeMismatch(format!(
                "chaotic_disp: fiber ({f},{sa},{sb}) endpoints not over the base endpoints"
            )));
        }
        for x in fiber {
            if d
                .d1
                .insert(
                    x.clone(),
                    DispOne {
                        over: f.clone(),
                        src: sa.clone(),
                        tgt: sb.clone(),
                    },
                )
                .is_some()
            {
                return Err(KernelError::DuplicateId {
                    tier: "chaotic d1".into(),
                    token: x.clone(),
                });
            }
        }
    }
    // Closure of the supplied tables over the mandated domain.
    for (x, xc) in &d.d0 {
        match data.id_table.get(x) {
            Some(i) => {
                let want_over = p.id1(&xc.over)?;
                let ok = d
                    .d1
                    .get(i)
                    .map(|c| &c.over == want_over && &c.src == x && &c.tgt == x)
                    .unwrap_or(false);
                if !ok {
                    return Err(KernelError::ChaoticClosureViolation(format!(
                        "id table entry for {x} is not a displayed 1-cell over id1({}) at {x}",
                        xc.over
                    )));
                }
            }
            None => {
                return Err(KernelError::ChaoticClosureViolation(format!(
                    "missing displayed identity over {x}"
                )))
            }
        }
    }
    let d1list: Vec<_> = d.d1.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
    for (sf, fc) in &d1list {
        for (sg, gc) in &d1list {
            if fc.tgt != gc.src {
                continue;
            }
            if !p
                .one_cells
                .get(&fc.over)
                .zip(p.one_cells.get(&gc.over))
                .map(|(a, b)| a.tgt == b.src)
                .unwrap_or(false)
            {
                continue;
            }
            match data.comp_table.get(&(sf.clone(), sg.clone())) {
                Some(r) => {
                    let want_over = p.comp1(&fc.over, &gc.over)?;
                    let ok = d
                        .d1
                        .get(r)
                        .map(|c| &c.over == want_over && c.src == fc.src && c.tgt == gc.tgt)
                        .unwrap_or(false);
                    if !ok {
                        return Err(KernelError::ChaoticClosureViolation(format!(
                            "composite of {sf} and {sg} is not in the mandated fiber"
                        )));
                    }
                }
                None => {
                    return Err(KernelError::ChaoticClosureViolation(format!(
                        "missing displayed composite of {sf} and {sg}"
                    )))
                }
            }
        }
    }
    d.disp_id1 = data.id_table.clone();
    d.disp_comp1 = data.comp_table.clone();

    // Sub-singleton 2-cell fibers: one displayed 2-cell over each base
    // 2-cell between displayed 1-cells with shared endpoints, where the
    // fiber predicate holds.
    let two = |t: &CellId, sf: &CellId, sg: &CellId| glue(&[t, sf, sg]);
    for (t, tc) in &p.two_cells {
        for (sf, fc) in &d1list {
            if fc.over != tc.src {
                continue;
            }
            for (sg, gc) in &d1list {
                if gc.over != tc.tgt || gc.src != fc.src || gc.tgt != fc.tgt {
                    continue;
                }
                if d2_pred(t, sf, sg)? {
                    d.d2.insert(
                        two(t, sf, sg),
                        DispTwo {
                            over: t.clone(),
                            src: sf.clone(),
                            tgt: sg.clone(),
                        },
                    );
                }
            }
        }
    }
    // All displayed 2-cell tables are forced: each result is the unique
    // inhabitant of its fiber, and a missing inhabitant on a mandated
    // domain entry breaks closure.
    let need = |d: &DispBicatPresentation, t: CellId, what: &str| -> Result<CellId> {
        if d.d2.contains_key(&t) {
            Ok(t)
        } else {
            Err(KernelError::ChaoticClosureViolation(format!(
                "{what}: required displayed 2-cell fiber at {t} is empty"
            )))
        }
    };
    let d2list: Vec<_> = d.d2.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
    for (sf, _) in &d1list {
        let fc = d.d1[sf].clone();
        let over = p.id2(&fc.over)?.clone();
        let tok = need(&d, two(&over, sf, sf), "disp_id2")?;
        d.disp_id2.insert(sf.clone(), tok);
    }
    for (st, tc) in &d2list {
        for (su, uc) in &d2list {
            if tc.tgt != uc.src {
                continue;
            }
            if let Some(over) = p.vcomp.get(&(tc.over.clone(), uc.over.clone())) {
                let tok = need(&d, two(over, &tc.src, &uc.tgt), "disp_vcomp")?;
                d.disp_vcomp.insert((st.clone(), su.clone()), tok);
            }
        }
    }
    for (sf, fc) in &d1list {
        for (st, tc) in &d2list {
            let gsrc = &d.d1[&tc.src];
            if gsrc.src != fc.tgt {
                continue;
            }
            if let Some(over) = p.lwhisker.get(&(fc.over.clone(), tc.over.clone())) {
                let ws = d.disp_comp1(sf, &tc.src)?.clone();
                let wt = d.disp_comp1(sf, &tc.tgt)?.clone();
                let tok = need(&d, two(over, &ws, &wt), "disp_lwhisker")?;
                d.disp_lwhisker.insert((sf.clone(), st.clone()), tok);
            }
        }
    }
    for (st, tc) in &d2list {
        let fsrc = d.d1[&tc.src].clone();
        for (sh, hc) in &d1list {
            if hc.src != fsrc.tgt {
                continue;
            }
            if let Some(over) = p.rwhisker.get(&(tc.over.clone(), hc.over.clone())) {
                let ws = d.disp_comp1(&tc.src, sh)?.clone();
                let wt = d.disp_comp1(&tc.tgt, sh)?.clone();
                let tok = need(&d, two(over, &ws, &wt), "disp_rwhisker")?;
                d.disp_rwhisker.insert((st.clone(), sh.clone()), tok);
            }
        }
    }
    for (sf, fc) in &d1list {
        let ida = d.disp_id1(&fc.src)?.clone();
        let idb = d.disp_id1(&fc.tgt)?.clone();
        let la = d.disp_comp1(&ida, sf)?.clone();
        let ra = d.disp_comp1(sf, &idb)?.clone();
        let tok = need(&d, two(p.lunitor(&fc.over)?, &la, sf), "disp_lunitor")?;
        d.disp_lunitor.insert(sf.clone(), tok);
        let tok = need(&d, two(p.lunitor_inv(&fc.over)?, sf, &la), "disp_lunitor_inv")?;
        d.disp_lunitor_inv.insert(sf.clone(), tok);
        let tok = need(&d, two(p.runitor(&fc.over)?, &ra, sf), "disp_runitor")?;
        d.disp_runitor.insert(sf.clone(), tok);
        let tok = need(&d, two(p.runitor_inv(&fc.over)?, sf, &ra), "disp_runitor_inv")?;
        d.disp_runitor_inv.insert(sf.clone(), tok);
    }
    for (sf, fc) in &d1list {
        for (sg, gc) in &d1list {
            if fc.tgt != gc.src {
                continue;
            }
            for (sh, hc) in &d1list {
                if gc.tgt != hc.src {
                    continue;
                }
                let key = (fc.over.clone(), gc.over.clone(), hc.over.clone());
                if let (Some(a), Some(ai)) = (p.lassoc.get(&key), p.lassoc_inv.get(&key)) {
                    let gh = d.disp_comp1(sg, sh)?.clone();
                    let left = d.disp_comp1(sf, &gh)?.clone();
                    let fg = d.disp_comp1(sf, sg)?.clone();
                    let right = d.disp_comp1(&fg, sh)?.clone();
                    let tok = need(&d, two(a, &left, &right), "disp_lassoc")?;
                    d.disp_lassoc.insert((sf.clone(), sg.clone(), sh.clone()), tok);
                    let tok = need(&d, two(ai, &right, &left), "disp_lassoc_inv")?;
                    d.disp_lassoc_inv
                        .insert((sf.clone(), sg.clone(), sh.clone()), tok);
                }
            }
        }
    }
    Ok(d)
}

/// Completes the displayed 2-cell tables of a locally propositional
/// displayed presentation whose d1-level tables are already fixed: every
/// entry is the unique inhabitant of its mandated fiber.
pub fn fill_prop_two_cell_tables(d: &mut DispBicatPresentation) -> Result<()> {
    let p = d.base.clone();
    let unique = |d: &DispBicatPresentation, over: &CellId, sf: &CellId, sg: &CellId, what: &str| -> Result<CellId> {
        let fiber = d.d2_fiber(over, sf, sg);
        match fiber.len() {
            1 => Ok(fiber.into_iter().next().unwrap()),
            0 => Err(KernelError::ConstructionFailed(format!(
                "{what}: mandated displayed 2-cell fiber over {over} from {sf} to {sg} is empty"
            ))),
            _ => Err(KernelError::ConstructionFailed(format!(
                "{what}: displayed 2-cell fiber over {over} is not propositional"
            ))),
        }
    };
    let d1list: Vec<_> = d.d1.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
    for (sf, fc) in &d1list {
        let over = p.id2(&fc.over)?.clone();
        let tok = unique(d, &over, sf, sf, "disp_id2")?;
        d.disp_id2.insert(sf.clone(), tok);
    }
    let d2list: Vec<_> = d.d2.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
    for (st, tc) in &d2list {
        for (su, uc) in &d2list {
            if tc.tgt != uc.src {
                continue;
            }
            if let Some(over) = p.vcomp.get(&(tc.over.clone(), uc.over.clone())) {
                let tok = unique(d, over, &tc.src, &uc.tgt, "disp_vcomp")?;
                d.disp_vcomp.insert((st.clone(), su.clone()), tok);
            }
        }
    }
    for (sf, fc) in &d1list {
        for (st, tc) in &d2list {
            let gsrc = &d.d1[&tc.src].clone();
            if gsrc.src != fc.tgt {
                continue;
            }
            if let Some(over) = p.lwhisker.get(&(fc.over.clone(), tc.over.clone())) {
                let ws = d.disp_comp1(sf, &tc.src)?.clone();
                let wt = d.disp_comp1(sf, &tc.tgt)?.clone();
                let tok = unique(d, over, &ws, &wt, "disp_lwhisker")?;
                d.disp_lwhisker.insert((sf.clone(), st.clone()), tok);
            }
        }
    }
    for (st, tc) in &d2list {
        let fsrc = d.d1[&tc.src].clone();
        for (sh, hc) in &d1list {
            if hc.src != fsrc.tgt {
                continue;
            }
            if let Some(over) = p.rwhisker.get(&(tc.over.clone(), hc.over.clone())) {
                let ws = d.disp_comp1(&tc.src, sh)?.clone();
                let wt = d.disp_comp1(&tc.tgt, sh)?.clone();
                let tok = unique(d, over, &ws, &wt, "disp_rwhisker")?;
                d.disp_rwhisker.insert((st.clone(), sh.clone()), tok);
            }
        }
    }
    for (sf, fc) in &d1list {
        let ida = d.disp_id1(&fc.src)?.clone();
        let idb = d.disp_id1(&fc.tgt)?.clone();
        let la = d.disp_comp1(&ida, sf)?.clone();
        let ra = d.disp_comp1(sf, &idb)?.clone();
        let tok = unique(d, &p.lunitor(&fc.over)?.clone(), &la, sf, "disp_lunitor")?;
        d.disp_lunitor.insert(sf.clone(), tok);
        let tok = unique(d, &p.lunitor_inv(&fc.over)?.clone(), sf, &la, "disp_lunitor_inv")?;
        d.disp_lunitor_inv.insert(sf.clone(), tok);
        let tok = unique(d, &p.runitor(&fc.over)?.clone(), &ra, sf, "disp_runitor")?;
        d.disp_runitor.insert(sf.clone(), tok);
        let tok = unique(d, &p.runitor_inv(&fc.over)?.clone(), sf, &ra, "disp_runitor_inv")?;
        d.disp_runitor_inv.insert(sf.clone(), tok);
    }
    for (sf, fc) in &d1list {
        for (sg, gc) in &d1list {
            if fc.tgt != gc.src {
                continue;
            }
            for (sh, hc) in &d1list {
                if gc.tgt != hc.src {
                    continue;
                }
                let key = (fc.over.clone(), gc.over.clone(), hc.over.clone());
                if let (Some(a), Some(ai)) = (p.lassoc.get(&key), p.lassoc_inv.get(&key)) {
                    let gh = d.disp_comp1(sg, sh)?.clone();
                    let left = d.disp_comp1(sf, &gh)?.clone();
                    let fg = d.disp_comp1(sf, sg)?.clone();
                    let right = d.disp_comp1(&fg, sh)?.clone();
                    let tok = unique(d, a, &left, &right, "disp_lassoc")?;
                    d.disp_lassoc.insert((sf.clone(), sg.clone(), sh.clone()), tok);
                    let tok = unique(d, ai, &right, &left, "disp_lassoc_inv")?;
                    d.disp_lassoc_inv
                        .insert((sf.clone(), sg.clone(), sh.clone()), tok);
                }
            }
        }
    }
    Ok(())
}
