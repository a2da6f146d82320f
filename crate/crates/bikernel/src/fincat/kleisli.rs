//! Kleisli triples over a fragment of finite categories, the displayed
//! bicategory of Kleisli triples, and the displayed biequivalence with
//! internal monads at finite scale.

use super::{FiniteCategory, FragmentBicat, Functor, NatTrans};
use crate::algebra::{monad_bicat, MonadBicat};
use crate::budget::Budget;
use crate::cell::{glue, CellId};
use crate::display::{
    fill_prop_two_cell_tables, total_bicat, DispBicatPresentation, DispInv2Cell, DispObj, DispOne,
    DispTwo,
};
use crate::disp_psfun::{
    check_disp_biequivalence, disp_id_psfunctor, disp_id_pstrans, DispBiequivalenceData,
    DispInvModificationData, DispPsfunctorData, DispPstransData,
};
use crate::error::{KernelError, Result};
use crate::fincat::cartesian;
use crate::psfun::identity_biequivalence;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A Kleisli triple: an object map, unit arrows, and a bind operation
/// satisfying η(a)* = id, η(a)·f* = f, and f*·g* = (f·g*)*.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KleisliTriple {
    pub object_map: BTreeMap<CellId, CellId>,
    pub unit: BTreeMap<CellId, CellId>,
    /// (source object, morphism f : a → M(b), target object b) is keyed by
    /// the morphism token: the endpoints are recoverable from the category.
    pub star: BTreeMap<CellId, CellId>,
}

impl KleisliTriple {
    pub fn m(&self, a: &CellId) -> Result<&CellId> {
        self.object_map
            .get(a)
            .ok_or_else(|| KernelError::DanglingReference {
                context: "kleisli.object_map".into(),
                token: a.clone(),
            })
    }

    pub fn star_of(&self, f: &CellId) -> Result<&CellId> {
        self.star.get(f).ok_or_else(|| KernelError::DanglingReference {
            context: "kleisli.star".into(),
            token: f.clone(),
        })
    }

    /// The derived functorial action: M(g) = (g · η(tgt g))*.
    pub fn lift(&self, c: &FiniteCategory, g: &CellId) -> Result<CellId> {
        let shape = c.mor(g)?;
        let eta = self
            .unit
            .get(&shape.tgt)
            .ok_or_else(|| KernelError::DanglingReference {
                context: "kleisli.unit".into(),
                token: shape.tgt.clone(),
            })?;
        let composite = c.comp(g, eta)?.clone();
        Ok(self.star_of(&composite)?.clone())
    }

    /// The three Kleisli laws by table evaluation.
    pub fn laws_hold(&self, c: &FiniteCategory) -> Result<bool> {
        for (a, eta) in &self.unit {
            // η(a)* = id_{M(a)}
            if self.star_of(eta)? != c.id_of(self.m(a)?)? {
                return Ok(false);
            }
        }
        for (f, fs) in &c.morphisms {
            // Domain of star: f : a → M(b) for some b.
            for (bb, mb) in &self.object_map {
                if &fs.tgt != mb {
                    continue;
                }
                let fstar = self.star_of(f)?;
                // η(a) · f* = f
                let eta = &self.unit[&fs.src];
                if c.comp(eta, fstar)? != f {
                    return Ok(false);
                }
                // f* · g* = (f · g*)* for g : b → M(c)
                for (g, gs) in &c.morphisms {
                    if gs.src != *bb {
                        continue;
                    }
                    if self.object_map.values().any(|mc| mc == &gs.tgt) {
                        for (_cc, mc) in self.object_map.iter().filter(|(_, mc)| *mc == &gs.tgt) {
                            let _ = mc;
                            let gstar = self.star_of(g)?;
                            let lhs = c.comp(fstar, gstar)?.clone();
                            let fg = c.comp(f, gstar)?.clone();
                            let rhs = self.star_of(&fg)?.clone();
                            if lhs != rhs {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Brute-force enumeration of all Kleisli triples on a finite category.
pub fn enumerate_kleisli_triples(
    c: &FiniteCategory,
    budget: &Budget,
) -> Result<Vec<KleisliTriple>> {
    let objects: Vec<_> = c.objects.iter().cloned().collect();
    let ob_choices: Vec<Vec<CellId>> = objects.iter().map(|_| objects.clone()).collect();
    let mut out = Vec::new();
    for ob_pick in cartesian(&ob_choices) {
        budget.charge("enumerate_kleisli", 1)?;
        let object_map: BTreeMap<_, _> = objects
            .iter()
            .cloned()
            .zip(ob_pick.iter().cloned())
            .collect();
        let unit_choices: Vec<Vec<CellId>> = objects
            .iter()
            .map(|a| c.hom(a, &object_map[a]))
            .collect();
        if unit_choices.iter().any(|ch| ch.is_empty()) && !objects.is_empty() {
            continue;
        }
        // Star domain: morphisms landing in some M(b); one bind choice per
        // (f, b) pairing, but b is determined only up to M-collisions —
        // a single star entry per morphism must satisfy the laws for every
        // reading, which laws_hold checks.
        let star_dom: Vec<CellId> = c
            .morphisms
            .iter()
            .filter(|(_, s)| object_map.values().any(|mb| mb == &s.tgt))
            .map(|(f, _)| f.clone())
            .collect();
        let star_choices: Vec<Vec<CellId>> = star_dom
            .iter()
            .map(|f| {
                let fs = &c.morphisms[f];
                // M(a) → tgt, where tgt = M(b) is the landing object itself.
                c.hom(&object_map[&fs.src], &fs.tgt)
            })
            .collect();
        if star_choices.iter().any(|ch| ch.is_empty()) && !star_dom.is_empty() {
            continue;
        }
        for unit_pick in cartesian(&unit_choices) {
            for star_pick in cartesian(&star_choices) {
                budget.charge("enumerate_kleisli", 1)?;
                let cand = KleisliTriple {
                    object_map: object_map.clone(),
                    unit: objects
                        .iter()
                        .cloned()
                        .zip(unit_pick.iter().cloned())
                        .collect(),
                    star: star_dom
                        .iter()
                        .cloned()
                        .zip(star_pick.iter().cloned())
                        .collect(),
                };
                if cand.laws_hold(c)? {
                    out.push(cand);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// A morphism of Kleisli triples over a functor F: a family of isomorphisms
/// F_M(a) : M_D(F a) → F(M_C a) compatible with the units and binds.
fn kleisli_morphism_laws(
    c: &FiniteCategory,
    d: &FiniteCategory,
    f: &Functor,
    kc: &KleisliTriple,
    kd: &KleisliTriple,
    fam: &BTreeMap<CellId, CellId>,
) -> Result<bool> {
    for (a, fm) in fam {
        // η_D(F a) · F_M(a) = F(η_C(a))
        let lhs = d.comp(&kd.unit[f.ob_at(a)?], fm)?.clone();
        let rhs = f.mor_at(&kc.unit[a])?.clone();
        if lhs != rhs {
            return Ok(false);
        }
    }
    // F_M(a) · F(f*) = (F f · F_M(b)⁻¹)* · F_M(b) for f : a → M_C(b)
    for (m, ms) in &c.morphisms {
        for (bb, mcb) in &kc.object_map {
            if &ms.tgt != mcb {
                continue;
            }
            let a = &ms.src;
            let lhs = {
                let fstar = f.mor_at(kc.star_of(m)?)?;
                d.comp(&fam[a], fstar)?.clone()
            };
            let rhs = {
                let fm_b = &fam[bb];
                let fm_b_inv = d
                    .isos()
                    .into_iter()
                    .find(|(x, _)| x == fm_b)
                    .map(|(_, inv)| inv)
                    .ok_or_else(|| KernelError::ConstructionFailed(format!(
                        "kleisli morphism family component {fm_b} is not invertible"
                    )))?;
                let ff = f.mor_at(m)?;
                let channel = d.comp(ff, &fm_b_inv)?.clone();
                let star = kd.star_of(&channel)?.clone();
                d.comp(&star, fm_b)?.clone()
            };
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The displayed bicategory of Kleisli triples over a fragment, with side
/// tables identifying displayed cells with their semantic data.
#[derive(Debug, Clone)]
pub struct KleisliDisp {
    pub disp: DispBicatPresentation,
    pub triples: BTreeMap<CellId, KleisliTriple>,
    /// displayed 1-cell token → the family F_M
    pub families: BTreeMap<CellId, BTreeMap<CellId, CellId>>,
}

/// Builds the Kleisli displayed bicategory: fibers over each category are
/// the Kleisli triples, 1-cell fibers the compatible isomorphism families,
/// 2-cell fibers the stated equalities.
pub fn kleisli_disp(frag: &FragmentBicat, budget: &Budget) -> Result<KleisliDisp> {
    let p = &frag.presentation;
    let mut d = DispBicatPresentation {
        base: p.clone(),
        ..Default::default()
    };
    let mut triples = BTreeMap::new();
    for (name, cat) in &frag.categories {
        for (i, k) in enumerate_kleisli_triples(cat, budget)?.into_iter().enumerate() {
            let tok = glue(&[&CellId::from(format!("kt{i}")), name]);
            triples.insert(tok.clone(), k);
            d.d0.insert(tok, DispObj { over: name.clone() });
        }
    }
    let d0list: Vec<_> = d.d0.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
    let mut families: BTreeMap<CellId, BTreeMap<CellId, CellId>> = BTreeMap::new();
    for (ftok, (aname, bname, f)) in &frag.functors {
        let ca = &frag.categories[aname];
        let cb = &frag.categories[bname];
        for (ka_tok, kac) in &d0list {
            if &kac.over != aname {
                continue;
            }
            for (kb_tok, kbc) in &d0list {
                if &kbc.over != bname {
                    continue;
                }
                budget.charge("kleisli_disp", 1)?;
                let ka = &triples[ka_tok];
                let kb = &triples[kb_tok];
                // Families of isomorphisms M_D(F a) → F(M_C a).
                let objs: Vec<_> = ca.objects.iter().cloned().collect();
                let choices: Vec<Vec<CellId>> = objs
                    .iter()
                    .map(|a| -> Result<Vec<CellId>> {
                        let src = kb.m(f.ob_at(a)?)?.clone();
                        let tgt = f.ob_at(ka.m(a)?)?.clone();
                        Ok(cb
                            .hom(&src, &tgt)
                            .into_iter()
                            .filter(|m| cb.is_iso(m))
                            .collect())
                    })
                    .collect::<Result<_>>()?;
                if choices.iter().any(|ch| ch.is_empty()) && !objs.is_empty() {
                    continue;
                }
                for pick in cartesian(&choices) {
                    budget.charge("kleisli_disp", 1)?;
                    let fam: BTreeMap<_, _> =
                        objs.iter().cloned().zip(pick.iter().cloned()).collect();
                    if kleisli_morphism_laws(ca, cb, f, ka, kb, &fam)? {
                        let refs: Vec<&CellId> = pick.iter().collect();
                        let tok = glue(&[&glue(&refs), ftok, ka_tok, kb_tok]);
                        families.insert(tok.clone(), fam);
                        d.d1.insert(
                            tok,
                            DispOne {
                                over: ftok.clone(),
                                src: ka_tok.clone(),
                                tgt: kb_tok.clone(),
                            },
                        );
                    }
                }
            }
        }
    }
    // Displayed 2-cells over n : F ⇒ G from F_M to G_M: the equality
    // F_M(a) · n(M_C a) = M_D(n a) · G_M(a), fiberwise propositional.
    let d1list: Vec<_> = d.d1.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
    for (ntok, nat) in &frag.nats {
        let shape = p.two_cell(ntok)?.clone();
        let (aname, bname, _f) = frag.functors[&shape.src].clone();
        let ca = &frag.categories[&aname];
        let cb = &frag.categories[&bname];
        for (fm_tok, fmc) in &d1list {
            if fmc.over != shape.src {
                continue;
            }
            for (gm_tok, gmc) in &d1list {
                if gmc.over != shape.tgt || gmc.src != fmc.src || gmc.tgt != fmc.tgt {
                    continue;
                }
                budget.charge("kleisli_disp", 1)?;
                let ka = &triples[&fmc.src];
                let kb = &triples[&fmc.tgt];
                let fm = &families[fm_tok];
                let gm = &families[gm_tok];
                let mut holds = true;
                for a in &ca.objects {
                    let lhs = cb.comp(&fm[a], nat.at(ka.m(a)?)?)?.clone();
                    let lifted = kb.lift(cb, nat.at(a)?)?;
                    let rhs = cb.comp(&lifted, &gm[a])?.clone();
                    if lhs != rhs {
                        holds = false;
                        break;
                    }
                }
                if holds {
                    let tok = glue(&[ntok, fm_tok, gm_tok]);
                    d.d2.insert(
                        tok,
                        DispTwo {
                            over: ntok.clone(),
                            src: fm_tok.clone(),
                            tgt: gm_tok.clone(),
                        },
                    );
                }
            }
        }
    }
    // Displayed identity: the identity family over the identity functor.
    for (ktok, kc) in &d0list {
        let cat = &frag.categories[&kc.over];
        let k = &triples[ktok];
        let fam: BTreeMap<_, _> = cat
            .objects
            .iter()
            .map(|a| -> Result<(CellId, CellId)> {
                Ok((a.clone(), cat.id_of(k.m(a)?)?.clone()))
            })
            .collect::<Result<_>>()?;
        let id_f = p.id1(&kc.over)?.clone();
        let vals: Vec<&CellId> = fam.values().collect();
        let tok = glue(&[&glue(&vals), &id_f, ktok, ktok]);
        if !d.d1.contains_key(&tok) {
            return Err(KernelError::ConstructionFailed(format!(
                "kleisli_disp: identity family missing at {ktok}"
            )));
        }
        d.disp_id1.insert(ktok.clone(), tok);
    }
    // Displayed composition: (F·G)_M(a) = G_M(F a) · G(F_M(a)).
    for (fm_tok, fmc) in &d1list {
        for (gm_tok, gmc) in &d1list {
            if fmc.tgt != gmc.src {
                continue;
            }
            let (aname, _bname, f) = frag.functors[&fmc.over].clone();
            let (_b2, cname, g) = frag.functors[&gmc.over].clone();
            if p
                .one_cells
                .get(&fmc.over)
                .zip(p.one_cells.get(&gmc.over))
                .map(|(x, y)| x.tgt != y.src)
                .unwrap_or(true)
            {
                continue;
            }
            budget.charge("kleisli_disp", 1)?;
            let ca = &frag.categories[&aname];
            let ccat = &frag.categories[&cname];
            let fm = &families[fm_tok];
            let gm = &families[gm_tok];
            let fam: BTreeMap<_, _> = ca
                .objects
                .iter()
                .map(|a| -> Result<(CellId, CellId)> {
                    let first = &gm[f.ob_at(a)?];
                    let second = g.mor_at(&fm[a])?;
                    Ok((a.clone(), ccat.comp(first, second)?.clone()))
                })
                .collect::<Result<_>>()?;
            let comp_f = p.comp1(&fmc.over, &gmc.over)?.clone();
            let vals: Vec<&CellId> = fam.values().collect();
            let tok = glue(&[&glue(&vals), &comp_f, &fmc.src, &gmc.tgt]);
            if !d.d1.contains_key(&tok) {
                return Err(KernelError::ConstructionFailed(format!(
                    "kleisli_disp: composite family missing for ({fm_tok}, {gm_tok})"
                )));
            }
            d.disp_comp1.insert((fm_tok.clone(), gm_tok.clone()), tok);
        }
    }
    fill_prop_two_cell_tables(&mut d)?;
    Ok(KleisliDisp {
        disp: d,
        triples,
        families,
    })
}

/// The total bicategory of the Kleisli displayed bicategory.
pub fn kleisli_bicat(frag: &FragmentBicat, budget: &Budget) -> Result<crate::bicat::BicatPresentation> {
    total_bicat(&kleisli_disp(frag, budget)?.disp)
}

/// Translates a monad structure in a fragment to a Kleisli triple:
/// M = object map of the carrier functor, η from the unit components,
/// f* = m(f) · μ.
pub fn monad_to_kleisli(
    frag: &FragmentBicat,
    s: &crate::algebra::MonadStructure,
) -> Result<KleisliTriple> {
    let (cname, _, m) = frag.functors[&s.m].clone();
    let cat = &frag.categories[&cname];
    let eta = &frag.nats[&s.eta];
    let mu = &frag.nats[&s.mu];
    let object_map = m.ob.clone();
    let unit = eta.components.clone();
    let mut star = BTreeMap::new();
    for (f, fs) in &cat.morphisms {
        for (bb, mb) in &object_map {
            if &fs.tgt != mb {
                continue;
            }
            let lifted = m.mor_at(f)?;
            let entry = cat.comp(lifted, mu.at(bb)?)?.clone();
            if let Some(prev) = star.insert(f.clone(), entry.clone()) {
                if prev != entry {
                    return Err(KernelError::ConstructionFailed(format!(
                        "monad_to_kleisli: ambiguous bind for {f}"
                    )));
                }
            }
        }
    }
    Ok(KleisliTriple {
        object_map,
        unit,
        star,
    })
}

/// Translates a Kleisli triple to a monad structure: the carrier functor is
/// the derived lift, the multiplication is (id_{M a})*.
pub fn kleisli_to_monad(
    frag: &FragmentBicat,
    cname: &CellId,
    k: &KleisliTriple,
) -> Result<crate::algebra::MonadStructure> {
    let cat = &frag.categories[cname];
    let mut mor = BTreeMap::new();
    for f in cat.morphisms.keys() {
        mor.insert(f.clone(), k.lift(cat, f)?);
    }
    let m_fun = Functor {
        ob: k.object_map.clone(),
        mor,
    };
    let m_tok = frag.functor_token(cname, cname, &m_fun)?.clone();
    let id_tok = frag.presentation.id1(cname)?.clone();
    let eta = NatTrans {
        components: k.unit.clone(),
    };
    let eta_tok = frag.nat_token(&id_tok, &m_tok, &eta)?.clone();
    let mm_tok = frag.presentation.comp1(&m_tok, &m_tok)?.clone();
    let mu = NatTrans {
        components: cat
            .objects
            .iter()
            .map(|a| -> Result<(CellId, CellId)> {
                let ma = k.m(a)?;
                Ok((a.clone(), k.star_of(cat.id_of(ma)?)?.clone()))
            })
            .collect::<Result<_>>()?,
    };
    let mu_tok = frag.nat_token(&mm_tok, &m_tok, &mu)?.clone();
    Ok(crate::algebra::MonadStructure {
        carrier: cname.clone(),
        m: m_tok,
        eta: eta_tok,
        mu: mu_tok,
    })
}

/// The monad↔Kleisli displayed biequivalence over the identity biequivalence
/// of the fragment, together with the data needed to inspect it.
pub struct MonadKleisliBiequiv {
    pub monads: MonadBicat,
    pub kleisli: KleisliDisp,
    pub base: crate::psfun::BiequivalenceData,
    pub db: DispBiequivalenceData,
}

/// Builds and validates the displayed biequivalence between the monad tower
/// and the Kleisli displayed bicategory. The round trips are identities on
/// the nose in the finite model, so all transformation components are
/// displayed identities and all modification components live in singleton
/// fibers.
pub fn monad_kleisli_biequiv(frag: &FragmentBicat, budget: &Budget) -> Result<MonadKleisliBiequiv> {
    let p = &frag.presentation;
    let monads = monad_bicat(p, budget)?;
    let kleisli = kleisli_disp(frag, budget)?;
    let md = &monads.disp;
    let kd = &kleisli.disp;

    // dL : monads → kleisli over the identity.
    let mut dl = DispPsfunctorData::default();
    let kt_index: BTreeMap<(CellId, KleisliTriple), CellId> = kleisli
        .triples
        .iter()
        .map(|(t, k)| ((kd.d0[t].over.clone(), k.clone()), t.clone()))
        .collect();
    for (x, s) in &monads.disp_objects {
        let k = monad_to_kleisli(frag, s)?;
        let cname = md.d0[x].over.clone();
        let tok = kt_index
            .get(&(cname, k))
            .ok_or_else(|| KernelError::ConstructionFailed(format!(
                "monad_kleisli: translated triple of {x} not found in the Kleisli fiber"
            )))?;
        dl.f0.insert(x.clone(), tok.clone());
    }
    let fam_index: BTreeMap<(CellId, CellId, CellId, BTreeMap<CellId, CellId>), CellId> = kleisli
        .families
        .iter()
        .map(|(t, fam)| {
            let c = &kd.d1[t];
            ((c.over.clone(), c.src.clone(), c.tgt.clone(), fam.clone()), t.clone())
        })
        .collect();
    for (sf, fc) in &md.d1 {
        let n = &monads.disp_one_structure[sf];
        let (aname, bname, _f) = frag.functors[&fc.over].clone();
        let _ = aname;
        let cb = &frag.categories[&bname];
        let nat = &frag.nats[&n.theta];
        // F_M(a) is the inverse component of n at a.
        let fam: BTreeMap<_, _> = nat
            .components
            .iter()
            .map(|(a, comp)| -> Result<(CellId, CellId)> {
                let inv = cb
                    .isos()
                    .into_iter()
                    .find(|(x, _)| x == comp)
                    .map(|(_, i)| i)
                    .ok_or_else(|| KernelError::ConstructionFailed(format!(
                        "monad_kleisli: structure component {comp} is not invertible"
                    )))?;
                Ok((a.clone(), inv))
            })
            .collect::<Result<_>>()?;
        let key = (
            fc.over.clone(),
            dl.f0[&fc.src].clone(),
            dl.f0[&fc.tgt].clone(),
            fam,
        );
        let tok = fam_index
            .get(&key)
            .ok_or_else(|| KernelError::ConstructionFailed(format!(
                "monad_kleisli: translated family of {sf} not found in the Kleisli fiber"
            )))?;
        dl.f1.insert(sf.clone(), tok.clone());
    }
    for (st, tc) in &md.d2 {
        // Both sides are propositional; the image is the unique inhabitant.
        let fiber = kd.d2_fiber(&tc.over, &dl.f1[&tc.src], &dl.f1[&tc.tgt]);
        if fiber.len() != 1 {
            return Err(KernelError::ConstructionFailed(format!(
                "monad_kleisli: expected singleton Kleisli 2-cell fiber for {st}"
            )));
        }
        dl.f2.insert(st.clone(), fiber[0].clone());
    }
    let prop_inv = |d: &DispBicatPresentation, over: &CellId, src: &CellId, tgt: &CellId, what: &str| -> Result<DispInv2Cell> {
        let fwd = d.d2_fiber(over, src, tgt);
        let inv_over = crate::psfun::inverse_2cell(&d.base, over)?;
        let bwd = d.d2_fiber(&inv_over, tgt, src);
        match (fwd.len(), bwd.len()) {
            (1, 1) => Ok(DispInv2Cell {
                theta: fwd[0].clone(),
                theta_inv: bwd[0].clone(),
            }),
            _ => Err(KernelError::ConstructionFailed(format!(
                "{what}: expected singleton displayed fibers over {over}"
            ))),
        }
    };
    for (x, xc) in &md.d0 {
        let base_id = p.id2(p.id1(&xc.over)?)?.clone();
        let src = kd.disp_id1(&dl.f0[x])?.clone();
        let tgt = dl.f1[md.disp_id1(x)?].clone();
        dl.identitor
            .insert(x.clone(), prop_inv(kd, &base_id, &src, &tgt, "dL identitor")?);
    }
    for ((sf, sg), comp) in &md.disp_comp1 {
        let base_cell = {
            let bf = &md.d1[sf].over;
            let bg = &md.d1[sg].over;
            p.id2(p.comp1(bf, bg)?)?.clone()
        };
        let src = kd.disp_comp1(&dl.f1[sf], &dl.f1[sg])?.clone();
        let tgt = dl.f1[comp].clone();
        dl.compositor.insert(
            (sf.clone(), sg.clone()),
            prop_inv(kd, &base_cell, &src, &tgt, "dL compositor")?,
        );
    }

    // dR : kleisli → monads over the identity; on objects and 1-cells it is
    // the inverse translation, which round-trips to the identity.
    let mut dr = DispPsfunctorData::default();
    let monad_index: BTreeMap<(CellId, crate::algebra::MonadStructure), CellId> = monads
        .disp_objects
        .iter()
        .map(|(t, s)| ((md.d0[t].over.clone(), s.clone()), t.clone()))
        .collect();
    for (ktok, kc) in &kd.d0 {
        let s = kleisli_to_monad(frag, &kc.over, &kleisli.triples[ktok])?;
        let tok = monad_index
            .get(&(kc.over.clone(), s))
            .ok_or_else(|| KernelError::ConstructionFailed(format!(
                "monad_kleisli: translated monad of {ktok} not found in the tower fiber"
            )))?;
        dr.f0.insert(ktok.clone(), tok.clone());
    }
    let structure_index: BTreeMap<(CellId, CellId, CellId, CellId), CellId> = monads
        .disp_one_structure
        .iter()
        .map(|(t, n)| {
            let c = &md.d1[t];
            ((c.over.clone(), c.src.clone(), c.tgt.clone(), n.theta.clone()), t.clone())
        })
        .collect();
    for (fm_tok, fmc) in &kd.d1 {
        let (aname, bname, _f) = frag.functors[&fmc.over].clone();
        let _ = aname;
        let cb = &frag.categories[&bname];
        let fam = &kleisli.families[fm_tok];
        // n(a) is the inverse of F_M(a); assemble the natural transformation
        // token in the fragment.
        let comps: BTreeMap<_, _> = fam
            .iter()
            .map(|(a, fma)| -> Result<(CellId, CellId)> {
                let inv = cb
                    .isos()
                    .into_iter()
                    .find(|(x, _)| x == fma)
                    .map(|(_, i)| i)
                    .ok_or_else(|| KernelError::ConstructionFailed(format!(
                        "monad_kleisli: family component {fma} is not invertible"
                    )))?;
                Ok((a.clone(), inv))
            })
            .collect::<Result<_>>()?;
        let src_monad = &monads.disp_objects[&dr.f0[&fmc.src]];
        let tgt_monad = &monads.disp_objects[&dr.f0[&fmc.tgt]];
        let lhs_tok = p.comp1(&src_monad.m, &fmc.over)?.clone();
        let rhs_tok = p.comp1(&fmc.over, &tgt_monad.m)?.clone();
        let n = NatTrans { components: comps };
        let theta = frag.nat_token(&lhs_tok, &rhs_tok, &n)?.clone();
        let key = (
            fmc.over.clone(),
            dr.f0[&fmc.src].clone(),
            dr.f0[&fmc.tgt].clone(),
            theta,
        );
        let tok = structure_index
            .get(&key)
            .ok_or_else(|| KernelError::ConstructionFailed(format!(
                "monad_kleisli: translated structure of {fm_tok} not found in the tower fiber"
            )))?;
        dr.f1.insert(fm_tok.clone(), tok.clone());
    }
    for (st, tc) in &kd.d2 {
        let fiber = md.d2_fiber(&tc.over, &dr.f1[&tc.src], &dr.f1[&tc.tgt]);
        if fiber.len() != 1 {
            return Err(KernelError::ConstructionFailed(format!(
                "monad_kleisli: expected singleton monad 2-cell fiber for {st}"
            )));
        }
        dr.f2.insert(st.clone(), fiber[0].clone());
    }
    for (x, xc) in &kd.d0 {
        let base_id = p.id2(p.id1(&xc.over)?)?.clone();
        let src = md.disp_id1(&dr.f0[x])?.clone();
        let tgt = dr.f1[kd.disp_id1(x)?].clone();
        dr.identitor
            .insert(x.clone(), prop_inv(md, &base_id, &src, &tgt, "dR identitor")?);
    }
    for ((sf, sg), comp) in &kd.disp_comp1 {
        let base_cell = {
            let bf = &kd.d1[sf].over;
            let bg = &kd.d1[sg].over;
            p.id2(p.comp1(bf, bg)?)?.clone()
        };
        let src = md.disp_comp1(&dr.f1[sf], &dr.f1[sg])?.clone();
        let tgt = dr.f1[comp].clone();
        dr.compositor.insert(
            (sf.clone(), sg.clone()),
            prop_inv(md, &base_cell, &src, &tgt, "dR compositor")?,
        );
    }

    // The displayed unit/counit transformations: the round trips are
    // identities on objects, so the components are displayed identity
    // 1-cells and the naturality cells the displayed unitor composites.
    let id_md = disp_id_psfunctor(md)?;
    let id_kd = disp_id_psfunctor(kd)?;
    let _ = (&id_md, &id_kd);
    for (x, s) in &monads.disp_objects {
        let round = kleisli_to_monad(frag, &md.d0[x].over, &kleisli.triples[&dl.f0[x]])?;
        if &round != s {
            return Err(KernelError::ConstructionFailed(format!(
                "monad_kleisli: monad round trip differs at {x}"
            )));
        }
    }
    for (x, k) in &kleisli.triples {
        let round = monad_to_kleisli(frag, &monads.disp_objects[&dr.f0[x]])?;
        if &round != k {
            return Err(KernelError::ConstructionFailed(format!(
                "monad_kleisli: Kleisli round trip differs at {x}"
            )));
        }
    }
    let eta = disp_id_pstrans(kd, kd, &id_kd)?;
    let eps = disp_id_pstrans(md, md, &id_md)?;

    let base = identity_biequivalence(p)?;
    let disp_modif = |d: &DispBicatPresentation,
                      n: &DispPstransData,
                      base_m: &crate::psfun::ModificationData|
     -> Result<DispInvModificationData> {
        let mut m = DispInvModificationData::default();
        for x in d.d0.keys() {
            let over = base_m.gamma(&d.d0[x].over)?.clone();
            let src = d.disp_comp1(&n.eta0[x], &n.eta0[x])?.clone();
            let tgt = n.eta0[x].clone();
            m.gamma
                .insert(x.clone(), prop_inv(d, &over, &src, &tgt, "disp modification")?);
        }
        Ok(m)
    };
    let m_k = disp_modif(kd, &eta, &base.m1)?;
    let m_m = disp_modif(md, &eps, &base.m3)?;
    let db = DispBiequivalenceData {
        l: dl,
        r: dr,
        eta: eta.clone(),
        eta_i: eta.clone(),
        eps: eps.clone(),
        eps_i: eps,
        m1: m_k.clone(),
        m2: m_k,
        m3: m_m.clone(),
        m4: m_m,
    };
    let report = check_disp_biequivalence(md, kd, &base, &db, budget)?;
    if !report.passed() {
        return Err(KernelError::ConstructionFailed(format!(
            "monad_kleisli: displayed biequivalence fails validation: {:?}",
            report.violations.first()
        )));
    }
    Ok(MonadKleisliBiequiv {
        monads,
        kleisli,
        base,
        db,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disp_psfun::total_biequivalence;
    use crate::fincat::fincat_fragment_bicat;
    use crate::psfun::check_biequivalence;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn kleisli_triples_on_poset2_count_2() {
        let ks = enumerate_kleisli_triples(&FiniteCategory::poset2(), &b()).unwrap();
        assert_eq!(ks.len(), 2);
    }

    #[test]
    fn kleisli_triples_on_terminal_count_1() {
        let ks = enumerate_kleisli_triples(&FiniteCategory::terminal(), &b()).unwrap();
        assert_eq!(ks.len(), 1);
    }

    #[test]
    fn kleisli_disp_over_poset2_is_lawful() {
        let frag = fincat_fragment_bicat(
            &[(CellId::from("P"), FiniteCategory::poset2())],
            &b(),
        )
        .unwrap();
        let k = kleisli_disp(&frag, &b()).unwrap();
        assert_eq!(k.disp.d0.len(), 2);
        let r = crate::display::check_disp_laws(&k.disp, &b()).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        // 2-cell fibers are equation sets, hence propositions.
        assert!(crate::display::is_locally_propositional(&k.disp).unwrap());
    }

    #[test]
    fn monad_and_kleisli_tiers_agree_on_fragments() {
        for cats in [
            vec![(CellId::from("T"), FiniteCategory::terminal())],
            vec![(CellId::from("P"), FiniteCategory::poset2())],
        ] {
            let frag = fincat_fragment_bicat(&cats, &b()).unwrap();
            let monads = monad_bicat(&frag.presentation, &b()).unwrap();
            let kb = kleisli_bicat(&frag, &b()).unwrap();
            assert_eq!(monads.presentation.objects.len(), kb.objects.len());
            assert_eq!(monads.presentation.one_cells.len(), kb.one_cells.len());
            assert_eq!(monads.presentation.two_cells.len(), kb.two_cells.len());
        }
    }

    #[test]
    fn monad_kleisli_biequivalence_on_poset2() {
        let frag = fincat_fragment_bicat(
            &[(CellId::from("P"), FiniteCategory::poset2())],
            &b(),
        )
        .unwrap();
        let bi = monad_kleisli_biequiv(&frag, &b()).unwrap();
        assert_eq!(bi.monads.presentation.objects.len(), 2);

        let total = total_biequivalence(&bi.monads.disp, &bi.kleisli.disp, &bi.base, &bi.db).unwrap();
        let tm = crate::display::total_bicat(&bi.monads.disp).unwrap();
        let tk = crate::display::total_bicat(&bi.kleisli.disp).unwrap();
        let r = check_biequivalence(&tm, &tk, &total, &b()).unwrap();
        assert!(r.passed(), "{:?}", r.violations);

        // Object maps are mutually inverse bijections.
        for (x, y) in &total.l.f0 {
            assert_eq!(total.r.f0.get(y), Some(x));
        }
        for (y, x) in &total.r.f0 {
            assert_eq!(total.l.f0.get(x), Some(y));
        }
    }

    #[test]
    fn monad_kleisli_biequivalence_on_terminal() {
        let frag = fincat_fragment_bicat(
            &[(CellId::from("T"), FiniteCategory::terminal())],
            &b(),
        )
        .unwrap();
        let bi = monad_kleisli_biequiv(&frag, &b()).unwrap();
        assert_eq!(bi.monads.presentation.objects.len(), 1);
        assert_eq!(bi.kleisli.disp.d0.len(), 1);
    }
}
