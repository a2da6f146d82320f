//! Algebras for a pseudofunctor, the Add2Cell construction, and the
//! bicategory of internal monads assembled as a displayed tower.
//!
//! The monad tower is built exactly as the stratified construction
//! prescribes: Alg(id), two Add2Cell layers, product, sigma, full sub. The
//! direct enumeration of monad structures exists separately as the oracle;
//! agreement of the two is the module's core test.

use crate::bicat::{BicatPresentation, Inv2Cell};
use crate::budget::Budget;
use crate::cell::{glue, split_composed, CellId, GLUE_SEP, PAIR_SEP};
use crate::display::{
    chaotic_disp, fill_prop_two_cell_tables, fullsub_disp, prod_disp, projection_psfunctor,
    sigma_disp, total_bicat, ChaoticData, DispBicatPresentation, DispObj, DispOne, DispTwo,
};
use crate::error::{KernelError, Result};
use crate::psfun::{
    check_psfunctor, check_pstrans, comp_psfunctor, id_psfunctor, PseudofunctorData, PstransData,
};
use std::collections::BTreeMap;

/// A monad structure internal to a presentation: a carrier endomorphism
/// 1-cell with unit and multiplication satisfying the unit triangles and
/// the associativity square.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MonadStructure {
    pub carrier: CellId,
    pub m: CellId,
    pub eta: CellId,
    pub mu: CellId,
}

/// Checks the monad laws of a candidate by table evaluation:
/// (m◁η)•μ = ρ(m), (η▷m)•μ = λ(m), and (m◁μ)•μ = α(m,m,m)•(μ▷m)•μ.
pub fn monad_laws_hold(p: &BicatPresentation, s: &MonadStructure) -> Result<bool> {
    let m = &s.m;
    let right_unit = {
        let w = p.lwhisker(m, &s.eta)?.clone();
        p.vcomp(&w, &s.mu)?.clone()
    };
    if &right_unit != p.runitor(m)? {
        return Ok(false);
    }
    let left_unit = {
        let w = p.rwhisker(&s.eta, m)?.clone();
        p.vcomp(&w, &s.mu)?.clone()
    };
    if &left_unit != p.lunitor(m)? {
        return Ok(false);
    }
    let lhs = {
        let w = p.lwhisker(m, &s.mu)?.clone();
        p.vcomp(&w, &s.mu)?.clone()
    };
    let rhs = {
        let a = p.lassoc(m, m, m)?.clone();
        let w = p.rwhisker(&s.mu, m)?.clone();
        p.vcomp_chain([&a, &w, &s.mu])?
    };
    Ok(lhs == rhs)
}

/// Brute-force enumeration of all monad structures: the oracle the tower is
/// cross-checked against.
pub fn enumerate_monads(p: &BicatPresentation, budget: &Budget) -> Result<Vec<MonadStructure>> {
    let mut out = Vec::new();
    for a in &p.objects {
        let ida = p.id1(a)?.clone();
        for m in p.one_cells_between(a, a) {
            let mm = p.comp1(&m, &m)?.clone();
            for eta in p.two_cells_between(&ida, &m) {
                for mu in p.two_cells_between(&mm, &m) {
                    budget.charge("enumerate_monads", 1)?;
                    let cand = MonadStructure {
                        carrier: a.clone(),
                        m: m.clone(),
                        eta: eta.clone(),
                        mu: mu.clone(),
                    };
                    if monad_laws_hold(p, &cand)? {
                        out.push(cand);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The displayed bicategory of algebras for a pseudofunctor F : B → B.
/// Objects over a are 1-cells F(a) → a; 1-cells over f are invertible
/// 2-cells h_a·f ⇒ F1(f)·h_b; 2-cells over θ are the commuting squares.
pub fn alg_disp(
    p: &BicatPresentation,
    f: &PseudofunctorData,
    budget: &Budget,
) -> Result<DispBicatPresentation> {
    let report = check_psfunctor(p, p, f)?;
    if !report.passed() {
        return Err(KernelError::PreconditionFailed(
            "alg_disp: endofunctor fails the pseudofunctor laws".into(),
        ));
    }
    let mut d = DispBicatPresentation {
        base: p.clone(),
        ..Default::default()
    };
    // Displayed objects: a 1-cell F0(a) → a is uniquely named by its token
    // (its target determines the fiber).
    for a in &p.objects {
        for h in p.one_cells_between(f.f0(a)?, a) {
            d.d0.insert(h.clone(), DispObj { over: a.clone() });
        }
    }
    // Displayed 1-cells: invertible structure cells, qualified by their
    // fiber key.
    let mut one_data: BTreeMap<CellId, Inv2Cell> = BTreeMap::new();
    let d0list: Vec<_> = d.d0.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
    for (k, kc) in &p.one_cells {
        for (ha, hac) in &d0list {
            if hac.over != kc.src {
                continue;
            }
            for (hb, hbc) in &d0list {
                if hbc.over != kc.tgt {
                    continue;
                }
                budget.charge("alg_disp", 1)?;
                let lhs = p.comp1(ha, k)?.clone();
                let rhs = p.comp1(f.f1(k)?, hb)?.clone();
                for cell in crate::bicat::invertible_2cells(p, &lhs, &rhs)? {
                    let tok = glue(&[&cell.theta, k, ha, hb]);
                    one_data.insert(tok.clone(), cell);
                    d.d1.insert(
                        tok,
                        DispOne {
                            over: k.clone(),
                            src: ha.clone(),
                            tgt: hb.clone(),
                        },
                    );
                }
            }
        }
    }
    // Displayed 2-cells: the square h_f • (F2 θ ▷ h_b) = (h_a ◁ θ) • h_g,
    // fiberwise propositional.
    let d1list: Vec<_> = d.d1.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
    for (t, tc) in &p.two_cells {
        for (nf, nfc) in &d1list {
            if nfc.over != tc.src {
                continue;
            }
            for (ng, ngc) in &d1list {
                if ngc.over != tc.tgt || ngc.src != nfc.src || ngc.tgt != nfc.tgt {
                    continue;
                }
                budget.charge("alg_disp", 1)?;
                let hf = &one_data[nf];
                let hg = &one_data[ng];
                let lhs = {
                    let w = p.rwhisker(f.f2(t)?, &ngc.tgt)?.clone();
                    p.vcomp(&hf.theta, &w)?.clone()
                };
                let rhs = {
                    let w = p.lwhisker(&nfc.src, t)?.clone();
                    p.vcomp(&w, &hg.theta)?.clone()
                };
                if lhs == rhs {
                    let tok = glue(&[t, nf, ng]);
                    d.d2.insert(
                        tok,
                        DispTwo {
                            over: t.clone(),
                            src: nf.clone(),
                            tgt: ng.clone(),
                        },
                    );
                }
            }
        }
    }
    // Displayed identity: ρ(h) • λ(h)⁻¹ • (γ_F(a) ▷ h).
    for (h, hc) in &d0list {
        let a = &hc.over;
        let parts: Vec<(CellId, CellId)> = vec![
            (p.runitor(h)?.clone(), p.runitor_inv(h)?.clone()),
            (p.lunitor_inv(h)?.clone(), p.lunitor(h)?.clone()),
            (
                p.rwhisker(f.identitor(a)?, h)?.clone(),
                p.rwhisker(&crate::psfun::inverse_2cell(p, f.identitor(a)?)?, h)?.clone(),
            ),
        ];
        let fwd = p.vcomp_chain(parts.iter().map(|(x, _)| x))?;
        let bwd = {
            let rev: Vec<_> = parts.iter().rev().map(|(_, y)| y).collect();
            p.vcomp_chain(rev)?
        };
        let k = p.id1(a)?.clone();
        let tok = glue(&[&fwd, &k, h, h]);
        if !d.d1.contains_key(&tok) {
            return Err(KernelError::ConstructionFailed(format!(
                "alg_disp: identity structure cell missing at {h}"
            )));
        }
        let _ = bwd;
        d.disp_id1.insert(h.clone(), tok);
    }
    // Displayed composition: thread the two structure cells through the
    // associators and the compositor.
    for (nf, nfc) in &d1list {
        for (ng, ngc) in &d1list {
            if nfc.tgt != ngc.src {
                continue;
            }
            let kf = &nfc.over;
            let kg = &ngc.over;
            if p
                .one_cells
                .get(kf)
                .zip(p.one_cells.get(kg))
                .map(|(x, y)| x.tgt != y.src)
                .unwrap_or(true)
            {
                continue;
            }
            budget.charge("alg_disp", 1)?;
            let n = &one_data[nf];
            let m = &one_data[ng];
            let (ha, hb, hcell) = (&nfc.src, &nfc.tgt, &ngc.tgt);
            let f1f = f.f1(kf)?.clone();
            let f1g = f.f1(kg)?.clone();
            let parts: Vec<(CellId, CellId)> = vec![
                (
                    p.lassoc(ha, kf, kg)?.clone(),
                    p.lassoc_inv(ha, kf, kg)?.clone(),
                ),
                (
                    p.rwhisker(&n.theta, kg)?.clone(),
                    p.rwhisker(&n.theta_inv, kg)?.clone(),
                ),
                (
                    p.lassoc_inv(&f1f, hb, kg)?.clone(),
                    p.lassoc(&f1f, hb, kg)?.clone(),
                ),
                (
                    p.lwhisker(&f1f, &m.theta)?.clone(),
                    p.lwhisker(&f1f, &m.theta_inv)?.clone(),
                ),
                (
                    p.lassoc(&f1f, &f1g, hcell)?.clone(),
                    p.lassoc_inv(&f1f, &f1g, hcell)?.clone(),
                ),
                (
                    p.rwhisker(f.compositor(kf, kg)?, hcell)?.clone(),
                    p.rwhisker(
                        &crate::psfun::inverse_2cell(p, f.compositor(kf, kg)?)?,
                        hcell,
                    )?
                    .clone(),
                ),
            ];
            let fwd = p.vcomp_chain(parts.iter().map(|(x, _)| x))?;
            let comp_base = p.comp1(kf, kg)?.clone();
            let tok = glue(&[&fwd, &comp_base, ha, hcell]);
            if !d.d1.contains_key(&tok) {
                return Err(KernelError::ConstructionFailed(format!(
                    "alg_disp: composite structure cell missing for ({nf}, {ng})"
                )));
            }
            d.disp_comp1.insert((nf.clone(), ng.clone()), tok);
        }
    }
    fill_prop_two_cell_tables(&mut d)?;
    Ok(d)
}

/// The Add2Cell construction: a chaotic displayed bicategory over the total
/// of D whose objects are 2-cells l(x) ⇒ r(x) and whose 1-cell fibers are
/// the commuting squares (β ▷ f) • r₁ = l₁ • (S f ◁ β').
pub fn add2cell_disp(
    d: &DispBicatPresentation,
    s: &PseudofunctorData,
    l: &PstransData,
    r: &PstransData,
    budget: &Budget,
) -> Result<DispBicatPresentation> {
    let p = &d.base;
    let total = total_bicat(d)?;
    // Verify the endpoints: l, r must be pseudotransformations π·S ⇒ π·id.
    let proj = projection_psfunctor(d)?;
    let pi_s = comp_psfunctor(p, p, &proj, s)?;
    let pi_id = comp_psfunctor(p, p, &proj, &id_psfunctor(p)?)?;
    for (name, n) in [("l", l), ("r", r)] {
        let rep = check_pstrans(&total, p, &pi_s, &pi_id, n)?;
        if !rep.passed() {
            return Err(KernelError::TypeMismatch(format!(
                "add2cell_disp: endpoint {name} is not a pseudotransformation π·S ⇒ π·id: {:?}",
                rep.violations.first()
            )));
        }
    }
    let mut data = ChaoticData::default();
    for x in &total.objects {
        let l0 = l.eta0(x)?;
        let r0 = r.eta0(x)?;
        let mut fiber = Vec::new();
        for cell in p.two_cells_between(l0, r0) {
            budget.charge("add2cell", 1)?;
            fiber.push(glue(&[&cell, x]));
        }
        data.d0.insert(x.clone(), fiber);
    }
    let decode = |tok: &CellId| -> CellId {
        split_composed(GLUE_SEP, tok.as_str())[0].clone()
    };
    for (one, oc) in &total.one_cells {
        let sf = s.f1(&split_composed(PAIR_SEP, one.as_str())[0])?.clone();
        for beta_tok in &data.d0[&oc.src].clone() {
            for beta2_tok in &data.d0[&oc.tgt].clone() {
                budget.charge("add2cell", 1)?;
                let beta = decode(beta_tok);
                let beta2 = decode(beta2_tok);
                // (β ▷ f) • r₁(one) = l₁(one) • (S f ◁ β')
                let base_f = &split_composed(PAIR_SEP, one.as_str())[0];
                let lhs = {
                    let w = p.rwhisker(&beta, base_f)?.clone();
                    p.vcomp(&w, &r.eta1(one)?.theta)?.clone()
                };
                let rhs = {
                    let w = p.lwhisker(&sf, &beta2)?.clone();
                    p.vcomp(&l.eta1(one)?.theta, &w)?.clone()
                };
                if lhs == rhs {
                    let tok = glue(&[one, beta_tok, beta2_tok]);
                    data.d1
                        .entry((one.clone(), beta_tok.clone(), beta2_tok.clone()))
                        .or_default()
                        .push(tok);
                }
            }
        }
    }
    // Forced identity and composition choices in the propositional fibers.
    for (x, fiber) in &data.d0.clone() {
        for beta in fiber {
            let key = (total.id1(x)?.clone(), beta.clone(), beta.clone());
            match data.d1.get(&key).and_then(|f| f.first()).cloned() {
                Some(t) => {
                    data.id_table.insert(beta.clone(), t);
                }
                None => {
                    return Err(KernelError::ConstructionFailed(format!(
                        "add2cell_disp: identity square missing at {beta}"
                    )))
                }
            }
        }
    }
    let entries: Vec<((CellId, CellId, CellId), Vec<CellId>)> =
        data.d1.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    for ((f1, b1, b2), fib1) in &entries {
        for ((f2, b2x, b3), fib2) in &entries {
            if b2 != b2x {
                continue;
            }
            let c1 = &total.one_cells[f1];
            let c2 = &total.one_cells[f2];
            if c1.tgt != c2.src {
                continue;
            }
            let comp = total.comp1(f1, f2)?.clone();
            match data
                .d1
                .get(&(comp.clone(), b1.clone(), b3.clone()))
                .and_then(|f| f.first())
                .cloned()
            {
                Some(t) => {
                    for a in fib1 {
                        for bb in fib2 {
                            data.comp_table.insert((a.clone(), bb.clone()), t.clone());
                        }
                    }
                }
                None => {
                    return Err(KernelError::ConstructionFailed(
                        "add2cell_disp: composite square missing".into(),
                    ))
                }
            }
        }
    }
    chaotic_disp(&total, &data)
}

/// The two endpoint pseudotransformations for the monad layers over
/// Alg(id): the identity endpoint (unit layer) and the squared-carrier
/// endpoint (multiplication layer), both with the carrier endpoint on the
/// right. Their pstrans laws are verified by the caller through
/// `add2cell_disp`.
fn monad_endpoints(
    p: &BicatPresentation,
    alg: &DispBicatPresentation,
) -> Result<(PstransData, PstransData, PstransData)> {
    let total = total_bicat(alg)?;
    let mut l_unit = PstransData::default();
    let mut l_mult = PstransData::default();
    let mut r_carrier = PstransData::default();
    for x in &total.objects {
        let parts = split_composed(PAIR_SEP, x.as_str());
        let (a, h) = (parts[0].clone(), parts[1].clone());
        l_unit.eta0.insert(x.clone(), p.id1(&a)?.clone());
        l_mult.eta0.insert(x.clone(), p.comp1(&h, &h)?.clone());
        r_carrier.eta0.insert(x.clone(), h);
    }
    for (one, oc) in &total.one_cells {
        let parts = split_composed(PAIR_SEP, one.as_str());
        let (k, ntok) = (parts[0].clone(), parts[1].clone());
        let nparts = split_composed(GLUE_SEP, ntok.as_str());
        let ncell = nparts[0].clone();
        let src_parts = split_composed(PAIR_SEP, oc.src.as_str());
        let tgt_parts = split_composed(PAIR_SEP, oc.tgt.as_str());
        let ha = src_parts[1].clone();
        let hb = tgt_parts[1].clone();
        let n_inv = crate::psfun::inverse_2cell(p, &ncell)?;

        // Unit endpoint: id₁(a)·k ⇒ k·id₁(b) is λ(k) • ρ(k)⁻¹.
        let fwd = {
            let lam = p.lunitor(&k)?.clone();
            let rho_i = p.runitor_inv(&k)?.clone();
            p.vcomp(&lam, &rho_i)?.clone()
        };
        let bwd = {
            let rho = p.runitor(&k)?.clone();
            let lam_i = p.lunitor_inv(&k)?.clone();
            p.vcomp(&rho, &lam_i)?.clone()
        };
        l_unit.eta1.insert(
            one.clone(),
            Inv2Cell {
                theta: fwd,
                theta_inv: bwd,
            },
        );

        // Carrier endpoint: h_a·k ⇒ k·h_b is the structure cell itself.
        r_carrier.eta1.insert(
            one.clone(),
            Inv2Cell {
                theta: ncell.clone(),
                theta_inv: n_inv.clone(),
            },
        );

        // Squared endpoint: (h_a·h_a)·k ⇒ k·(h_b·h_b) threads the structure
        // cell twice through the associators.
        let parts2: Vec<(CellId, CellId)> = vec![
            (
                p.lassoc_inv(&ha, &ha, &k)?.clone(),
                p.lassoc(&ha, &ha, &k)?.clone(),
            ),
            (
                p.lwhisker(&ha, &ncell)?.clone(),
                p.lwhisker(&ha, &n_inv)?.clone(),
            ),
            (
                p.lassoc(&ha, &k, &hb)?.clone(),
                p.lassoc_inv(&ha, &k, &hb)?.clone(),
            ),
            (
                p.rwhisker(&ncell, &hb)?.clone(),
                p.rwhisker(&n_inv, &hb)?.clone(),
            ),
            (
                p.lassoc_inv(&k, &hb, &hb)?.clone(),
                p.lassoc(&k, &hb, &hb)?.clone(),
            ),
        ];
        let fwd = p.vcomp_chain(parts2.iter().map(|(x, _)| x))?;
        let bwd = {
            let rev: Vec<_> = parts2.iter().rev().map(|(_, y)| y).collect();
            p.vcomp_chain(rev)?
        };
        l_mult.eta1.insert(
            one.clone(),
            Inv2Cell {
                theta: fwd,
                theta_inv: bwd,
            },
        );
    }
    Ok((l_unit, l_mult, r_carrier))
}

/// The bicategory of monads internal to B, with its displayed tower exposed.
#[derive(Debug, Clone)]
pub struct MonadBicat {
    /// The total bicategory of the tower: the bicategory of internal monads.
    pub presentation: BicatPresentation,
    /// The tower as a displayed presentation over B.
    pub disp: DispBicatPresentation,
    /// Object token → decoded monad structure.
    pub objects: BTreeMap<CellId, MonadStructure>,
    /// Displayed object token → decoded monad structure.
    pub disp_objects: BTreeMap<CellId, MonadStructure>,
    /// Displayed 1-cell token → its algebra structure cell n : m_a·f ⇒ f·m_b.
    pub disp_one_structure: BTreeMap<CellId, Inv2Cell>,
}

/// Assembles the monad bicategory: Alg(id), the two Add2Cell layers, their
/// product, the sigma back over B, and the full sub on the monad laws.
pub fn monad_bicat(p: &BicatPresentation, budget: &Budget) -> Result<MonadBicat> {
    let idf = id_psfunctor(p)?;
    let m1 = alg_disp(p, &idf, budget)?;
    let (l_unit, l_mult, r_carrier) = monad_endpoints(p, &m1)?;
    let s = id_psfunctor(p)?;
    let add_unit = add2cell_disp(&m1, &s, &l_unit, &r_carrier, budget)?;
    let add_mult = add2cell_disp(&m1, &s, &l_mult, &r_carrier, budget)?;
    let m2prime = prod_disp(&add_unit, &add_mult)?;
    let m2 = sigma_disp(&m1, &m2prime)?;
    let t2 = total_bicat(&m2)?;

    // Decode a t2 object into its monad data and evaluate the monad laws.
    let decode = |tok: &CellId| -> Result<MonadStructure> {
        let top = split_composed(PAIR_SEP, tok.as_str());
        let (a, rest) = (top[0].clone(), top[1].clone());
        let pair = split_composed(GLUE_SEP, rest.as_str());
        if pair.len() != 2 {
            return Err(KernelError::ConstructionFailed(format!(
                "monad_bicat: unexpected object token {tok}"
            )));
        }
        let (h, prodtok) = (pair[0].clone(), pair[1].clone());
        let cells = split_composed(GLUE_SEP, prodtok.as_str());
        if cells.len() != 2 {
            return Err(KernelError::ConstructionFailed(format!(
                "monad_bicat: unexpected layer token {prodtok}"
            )));
        }
        let eta = split_composed(GLUE_SEP, cells[0].as_str())[0].clone();
        let mu = split_composed(GLUE_SEP, cells[1].as_str())[0].clone();
        Ok(MonadStructure {
            carrier: a,
            m: h,
            eta,
            mu,
        })
    };
    let mut lawful: BTreeMap<CellId, bool> = BTreeMap::new();
    for obj in &t2.objects {
        let s = decode(obj)?;
        lawful.insert(obj.clone(), monad_laws_hold(p, &s)?);
    }
    let sub = fullsub_disp(&t2, &|obj| lawful.get(obj).copied().unwrap_or(false))?;
    let m_final = sigma_disp(&m2, &sub)?;
    let presentation = total_bicat(&m_final)?;

    let mut objects = BTreeMap::new();
    for obj in &presentation.objects {
        // Final object token is a|(pair & fullsub-copy); the fullsub copy is
        // the t2 token itself.
        let top = split_composed(PAIR_SEP, obj.as_str());
        let rest = split_composed(GLUE_SEP, top[1].as_str());
        let t2_tok = rest.last().unwrap().clone();
        objects.insert(obj.clone(), decode(&t2_tok)?);
    }
    let mut disp_objects = BTreeMap::new();
    for x in m_final.d0.keys() {
        let rest = split_composed(GLUE_SEP, x.as_str());
        let t2_tok = rest.last().unwrap().clone();
        disp_objects.insert(x.clone(), decode(&t2_tok)?);
    }
    // Displayed 1-cell token = glue(m2 d1, sub d1); m2 d1 = glue(alg d1,
    // layer squares); alg d1 = glue(n, k, h_a, h_b).
    let mut disp_one_structure = BTreeMap::new();
    for sf in m_final.d1.keys() {
        let outer = split_composed(GLUE_SEP, sf.as_str());
        let m2_d1 = split_composed(GLUE_SEP, outer[0].as_str());
        let alg_d1 = split_composed(GLUE_SEP, m2_d1[0].as_str());
        let theta = alg_d1[0].clone();
        let theta_inv = crate::psfun::inverse_2cell(p, &theta)?;
        disp_one_structure.insert(sf.clone(), Inv2Cell { theta, theta_inv });
    }
    Ok(MonadBicat {
        presentation,
        disp: m_final,
        objects,
        disp_objects,
        disp_one_structure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicat::{
        check_laws, chaotic_bicat, discrete_bicat, monoid_delooping, terminal_bicat, MonoidTable,
    };
    use crate::display::check_disp_laws;
    use crate::univalence::check_univalent;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn alg_disp_fibers_over_bool_delooping() {
        // Objects over * for Alg(id) are the 1-cells * → *, here {1, 0}.
        let p = monoid_delooping(&MonoidTable::bool_and()).unwrap();
        let idf = id_psfunctor(&p).unwrap();
        let d = alg_disp(&p, &idf, &b()).unwrap();
        assert!(check_disp_laws(&d, &b()).unwrap().passed());
        assert_eq!(d.d0_fiber(&CellId::from("*")).len(), 2);
    }

    #[test]
    fn alg_disp_over_terminal_has_singleton_fibers() {
        let p = terminal_bicat();
        let idf = id_psfunctor(&p).unwrap();
        let d = alg_disp(&p, &idf, &b()).unwrap();
        assert!(check_disp_laws(&d, &b()).unwrap().passed());
        assert_eq!(d.d0.len(), 1);
        assert_eq!(d.d1.len(), 1);
        assert_eq!(d.d2.len(), 1);
    }

    #[test]
    fn alg_total_univalent_over_univalent_corpus() {
        for p in [
            terminal_bicat(),
            discrete_bicat(2),
            monoid_delooping(&MonoidTable::bool_and()).unwrap(),
        ] {
            assert!(check_univalent(&p, &b()).unwrap().passed());
            let idf = id_psfunctor(&p).unwrap();
            let d = alg_disp(&p, &idf, &b()).unwrap();
            let t = total_bicat(&d).unwrap();
            assert!(check_laws(&t, &b()).unwrap().passed());
            assert!(check_univalent(&t, &b()).unwrap().passed());
        }
    }

    #[test]
    fn monad_oracle_counts() {
        // 𝟙 has exactly one monad; Δ(M) with identity 2-cells only admits
        // the identity monad (η forces m = id).
        assert_eq!(enumerate_monads(&terminal_bicat(), &b()).unwrap().len(), 1);
        let m = monoid_delooping(&MonoidTable::bool_and()).unwrap();
        let monads = enumerate_monads(&m, &b()).unwrap();
        assert_eq!(monads.len(), 1);
        assert_eq!(monads[0].m, CellId::from("1"));
        let z = monoid_delooping(&MonoidTable::zmod2()).unwrap();
        assert_eq!(enumerate_monads(&z, &b()).unwrap().len(), 1);
    }

    #[test]
    fn monad_tower_matches_oracle() {
        for p in [
            terminal_bicat(),
            discrete_bicat(2),
            chaotic_bicat(2),
            monoid_delooping(&MonoidTable::bool_and()).unwrap(),
            crate::bicat::delta2(),
        ] {
            let tower = monad_bicat(&p, &b()).unwrap();
            assert!(check_laws(&tower.presentation, &b()).unwrap().passed());
            let oracle = enumerate_monads(&p, &b()).unwrap();
            assert_eq!(
                tower.presentation.objects.len(),
                oracle.len(),
                "tower/oracle object mismatch"
            );
            let mut decoded: Vec<_> = tower.objects.values().cloned().collect();
            decoded.sort();
            let mut expected = oracle.clone();
            expected.sort();
            assert_eq!(decoded, expected);
        }
    }

    #[test]
    fn monad_bicat_univalent_over_univalent_corpus() {
        for p in [
            terminal_bicat(),
            discrete_bicat(2),
            monoid_delooping(&MonoidTable::bool_and()).unwrap(),
        ] {
            let tower = monad_bicat(&p, &b()).unwrap();
            assert!(check_univalent(&tower.presentation, &b()).unwrap().passed());
        }
    }

    #[test]
    fn add2cell_layers_are_locally_displayed_univalent() {
        let p = monoid_delooping(&MonoidTable::bool_and()).unwrap();
        let idf = id_psfunctor(&p).unwrap();
        let m1 = alg_disp(&p, &idf, &b()).unwrap();
        let (l_unit, l_mult, r_carrier) = monad_endpoints(&p, &m1).unwrap();
        let s = id_psfunctor(&p).unwrap();
        for l in [&l_unit, &l_mult] {
            let layer = add2cell_disp(&m1, &s, l, &r_carrier, &b()).unwrap();
            assert!(check_disp_laws(&layer, &b()).unwrap().passed());
            let r = crate::display::check_disp_univalence(&layer, &b()).unwrap();
            assert!(r.local.passed());
        }
    }
}
