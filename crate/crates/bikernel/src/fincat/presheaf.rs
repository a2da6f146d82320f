//! Presheaves on finite categories, the displayed presheaf layer, and the
//! CwF tower: two presheaf layers, the projection layer, and the full sub
//! on the comprehension predicate.

use super::{FiniteCategory, FragmentBicat};
use crate::budget::Budget;
use crate::cell::{glue, split_composed, CellId, GLUE_SEP, PAIR_SEP};
use crate::display::{
    fill_prop_two_cell_tables, fullsub_disp, prod_disp, sigma_disp, total_bicat,
    DispBicatPresentation, DispObj, DispOne, DispTwo,
};
use crate::error::{KernelError, Result};
use crate::fincat::cartesian;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// A presheaf on a finite category: contravariant into finite sets. For a
/// morphism f : a → b the action maps T(b) → T(a).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Presheaf {
    pub on_ob: BTreeMap<CellId, BTreeSet<CellId>>,
    pub on_mor: BTreeMap<CellId, BTreeMap<CellId, CellId>>,
}

impl Presheaf {
    pub fn at(&self, a: &CellId) -> Result<&BTreeSet<CellId>> {
        self.on_ob.get(a).ok_or_else(|| KernelError::DanglingReference {
            context: "presheaf.on_ob".into(),
            token: a.clone(),
        })
    }

    pub fn action(&self, f: &CellId) -> Result<&BTreeMap<CellId, CellId>> {
        self.on_mor
            .get(f)
            .ok_or_else(|| KernelError::DanglingReference {
                context: "presheaf.on_mor".into(),
                token: f.clone(),
            })
    }

    /// Contravariant functoriality over an explicit category.
    pub fn validate(&self, c: &FiniteCategory) -> Result<bool> {
        for a in &c.objects {
            if !self.on_ob.contains_key(a) {
                return Ok(false);
            }
        }
        for (f, fs) in &c.morphisms {
            let act = match self.on_mor.get(f) {
                Some(m) => m,
                None => return Ok(false),
            };
            let dom = self.at(&fs.tgt)?;
            let cod = self.at(&fs.src)?;
            if act.len() != dom.len() {
                return Ok(false);
            }
            for (v, w) in act {
                if !dom.contains(v) || !cod.contains(w) {
                    return Ok(false);
                }
            }
        }
        for (a, i) in &c.id {
            let act = self.action(i)?;
            for v in self.at(a)? {
                if act.get(v) != Some(v) {
                    return Ok(false);
                }
            }
        }
        for ((f, g), fg) in &c.comp {
            // T(f·g) = T(g) then T(f).
            let gs = &c.morphisms[g];
            let act_fg = self.action(fg)?;
            let act_f = self.action(f)?;
            let act_g = self.action(g)?;
            for v in self.at(&gs.tgt)? {
                let direct = act_fg.get(v);
                let composed = act_g.get(v).and_then(|w| act_f.get(w));
                if direct != composed {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// All presheaves on C valued in subsets of a canonical universe of size
/// `bound`, in deterministic order.
pub fn enumerate_presheaves(
    c: &FiniteCategory,
    bound: usize,
    budget: &Budget,
) -> Result<Vec<Presheaf>> {
    let universe: Vec<CellId> = (0..bound).map(|k| CellId::from(format!("v{k}"))).collect();
    let mut subsets: Vec<BTreeSet<CellId>> = vec![BTreeSet::new()];
    for v in &universe {
        let mut next = subsets.clone();
        for s in &subsets {
            let mut s2 = s.clone();
            s2.insert(v.clone());
            next.push(s2);
        }
        subsets = next;
    }
    subsets.sort();
    let objects: Vec<_> = c.objects.iter().cloned().collect();
    let ob_choices: Vec<Vec<BTreeSet<CellId>>> =
        objects.iter().map(|_| subsets.clone()).collect();
    let mut out = Vec::new();
    for ob_pick in cartesian(&ob_choices) {
        budget.charge("enumerate_presheaves", 1)?;
        let on_ob: BTreeMap<_, _> = objects
            .iter()
            .cloned()
            .zip(ob_pick.iter().cloned())
            .collect();
        let morphisms: Vec<_> = c.morphisms.keys().cloned().collect();
        let mor_choices: Vec<Vec<BTreeMap<CellId, CellId>>> = morphisms
            .iter()
            .map(|f| {
                let fs = &c.morphisms[f];
                functions(&on_ob[&fs.tgt], &on_ob[&fs.src])
            })
            .collect();
        if mor_choices.iter().any(|ch| ch.is_empty()) && !morphisms.is_empty() {
            continue;
        }
        for mor_pick in cartesian(&mor_choices) {
            budget.charge("enumerate_presheaves", 1)?;
            let cand = Presheaf {
                on_ob: on_ob.clone(),
                on_mor: morphisms
                    .iter()
                    .cloned()
                    .zip(mor_pick.iter().cloned())
                    .collect(),
            };
            if cand.validate(c)? {
                out.push(cand);
            }
        }
    }
    Ok(out)
}

/// All functions between two finite sets, in deterministic order.
fn functions(dom: &BTreeSet<CellId>, cod: &BTreeSet<CellId>) -> Vec<BTreeMap<CellId, CellId>> {
    let dom_list: Vec<_> = dom.iter().cloned().collect();
    if dom_list.is_empty() {
        return vec![BTreeMap::new()];
    }
    if cod.is_empty() {
        return Vec::new();
    }
    let choices: Vec<Vec<CellId>> = dom_list.iter().map(|_| cod.iter().cloned().collect()).collect();
    cartesian(&choices)
        .into_iter()
        .map(|pick| dom_list.iter().cloned().zip(pick).collect())
        .collect()
}

/// A morphism of presheaves over a functor F: components T(x) → T'(F x),
/// natural in x.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct PshNatTrans {
    pub components: BTreeMap<CellId, BTreeMap<CellId, CellId>>,
}

impl PshNatTrans {
    /// Naturality: β_x ∘ T(f) = T'(F f) ∘ β_y for f : x → y.
    pub fn validate(
        &self,
        c: &FiniteCategory,
        f_ob: &BTreeMap<CellId, CellId>,
        f_mor: &BTreeMap<CellId, CellId>,
        t: &Presheaf,
        t2: &Presheaf,
    ) -> Result<bool> {
        for x in &c.objects {
            let comp = match self.components.get(x) {
                Some(m) => m,
                None => return Ok(false),
            };
            let dom = t.at(x)?;
            let cod = t2.at(&f_ob[x])?;
            if comp.len() != dom.len() {
                return Ok(false);
            }
            for (v, w) in comp {
                if !dom.contains(v) || !cod.contains(w) {
                    return Ok(false);
                }
            }
        }
        for (m, ms) in &c.morphisms {
            let act_t = t.action(m)?;
            let act_t2 = t2.action(&f_mor[m])?;
            for v in t.at(&ms.tgt)? {
                let lhs = act_t.get(v).and_then(|w| self.components[&ms.src].get(w));
                let rhs = self.components[&ms.tgt].get(v).and_then(|w| act_t2.get(w));
                if lhs != rhs || lhs.is_none() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// All presheaf morphisms T ⇒ T'∘F over a fixed functor.
pub fn enumerate_nat_trans_presheaf(
    c: &FiniteCategory,
    f_ob: &BTreeMap<CellId, CellId>,
    f_mor: &BTreeMap<CellId, CellId>,
    t: &Presheaf,
    t2: &Presheaf,
) -> Result<Vec<PshNatTrans>> {
    let objects: Vec<_> = c.objects.iter().cloned().collect();
    let choices: Vec<Vec<BTreeMap<CellId, CellId>>> = objects
        .iter()
        .map(|x| -> Result<Vec<BTreeMap<CellId, CellId>>> {
            Ok(functions(t.at(x)?, t2.at(&f_ob[x])?))
        })
        .collect::<Result<_>>()?;
    if choices.iter().any(|ch| ch.is_empty()) && !objects.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for pick in cartesian(&choices) {
        let cand = PshNatTrans {
            components: objects.iter().cloned().zip(pick).collect(),
        };
        if cand.validate(c, f_ob, f_mor, t, t2)? {
            out.push(cand);
        }
    }
    Ok(out)
}

/// The displayed presheaf bicategory over a fragment, enumerated up to the
/// value-set bound, with side tables.
#[derive(Debug, Clone)]
pub struct PresheafDisp {
    pub disp: DispBicatPresentation,
    pub presheaves: BTreeMap<CellId, Presheaf>,
    pub morphisms: BTreeMap<CellId, PshNatTrans>,
}

/// Builds PShD: objects over C are presheaves, 1-cells over F are presheaf
/// morphisms T ⇒ T'∘F, 2-cells over γ are the equalities
/// β = β' • (op γ ▷ T').
pub fn presheaf_disp(frag: &FragmentBicat, bound: usize, budget: &Budget) -> Result<PresheafDisp> {
    let p = &frag.presentation;
    let mut d = DispBicatPresentation {
        base: p.clone(),
        ..Default::default()
    };
    let mut presheaves = BTreeMap::new();
    for (name, cat) in &frag.categories {
        for (i, t) in enumerate_presheaves(cat, bound, budget)?.into_iter().enumerate() {
            let tok = glue(&[&CellId::from(format!("psh{i}")), name]);
            presheaves.insert(tok.clone(), t);
            d.d0.insert(tok, DispObj { over: name.clone() });
        }
    }
    let d0list: Vec<_> = d.d0.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
    let mut morphisms = BTreeMap::new();
    for (ftok, (aname, _bname, f)) in &frag.functors {
        let ca = &frag.categories[aname];
        for (t_tok, tc) in &d0list {
            if &tc.over != aname {
                continue;
            }
            for (t2_tok, t2c) in &d0list {
                if t2c.over != p.one_cell(ftok)?.tgt {
                    continue;
                }
                budget.charge("presheaf_disp", 1)?;
                let t = &presheaves[t_tok];
                let t2 = &presheaves[t2_tok];
                for (j, beta) in
                    enumerate_nat_trans_presheaf(ca, &f.ob, &f.mor, t, t2)?.into_iter().enumerate()
                {
                    let tok = glue(&[
                        &CellId::from(format!("m{j}")),
                        ftok,
                        t_tok,
                        t2_tok,
                    ]);
                    morphisms.insert(tok.clone(), beta);
                    d.d1.insert(
                        tok,
                        DispOne {
                            over: ftok.clone(),
                            src: t_tok.clone(),
                            tgt: t2_tok.clone(),
                        },
                    );
                }
            }
        }
    }
    // d2 over γ : F ⇒ G from β to β': β_x(v) = T'(γ_x)(β'_x(v)).
    let d1list: Vec<_> = d.d1.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
    for (gtok, gam) in &frag.nats {
        let shape = p.two_cell(gtok)?.clone();
        let (aname, _bname, _) = frag.functors[&shape.src].clone();
        let ca = &frag.categories[&aname];
        for (b1, b1c) in &d1list {
            if b1c.over != shape.src {
                continue;
            }
            for (b2, b2c) in &d1list {
                if b2c.over != shape.tgt || b2c.src != b1c.src || b2c.tgt != b1c.tgt {
                    continue;
                }
                budget.charge("presheaf_disp", 1)?;
                let t = &presheaves[&b1c.src];
                let t2 = &presheaves[&b1c.tgt];
                let beta = &morphisms[b1];
                let beta2 = &morphisms[b2];
                let mut holds = true;
                'outer: for x in &ca.objects {
                    let act = t2.action(gam.at(x)?)?;
                    for v in t.at(x)? {
                        let lhs = beta.components[x].get(v);
                        let rhs = beta2.components[x].get(v).and_then(|w| act.get(w));
                        if lhs != rhs || lhs.is_none() {
                            holds = false;
                            break 'outer;
                        }
                    }
                }
                if holds {
                    let tok = glue(&[gtok, b1, b2]);
                    d.d2.insert(
                        tok,
                        DispTwo {
                            over: gtok.clone(),
                            src: b1.clone(),
                            tgt: b2.clone(),
                        },
                    );
                }
            }
        }
    }
    // Identity and composition of presheaf morphisms.
    let mor_index: BTreeMap<(CellId, CellId, CellId, PshNatTrans), CellId> = morphisms
        .iter()
        .map(|(tok, m)| {
            let c = &d.d1[tok];
            ((c.over.clone(), c.src.clone(), c.tgt.clone(), m.clone()), tok.clone())
        })
        .collect();
    for (t_tok, tc) in &d0list {
        let cat = &frag.categories[&tc.over];
        let t = &presheaves[t_tok];
        let components: BTreeMap<_, _> = cat
            .objects
            .iter()
            .map(|x| -> Result<(CellId, BTreeMap<CellId, CellId>)> {
                Ok((
                    x.clone(),
                    t.at(x)?.iter().map(|v| (v.clone(), v.clone())).collect(),
                ))
            })
            .collect::<Result<_>>()?;
        let idm = PshNatTrans { components };
        let id_f = p.id1(&tc.over)?.clone();
        let tok = mor_index
            .get(&(id_f, t_tok.clone(), t_tok.clone(), idm))
            .ok_or_else(|| KernelError::ConstructionFailed(format!(
                "presheaf_disp: identity morphism missing at {t_tok}"
            )))?;
        d.disp_id1.insert(t_tok.clone(), tok.clone());
    }
    for (b1, b1c) in &d1list {
        for (b2, b2c) in &d1list {
            if b1c.tgt != b2c.src {
                continue;
            }
            let (aname, _b, f) = frag.functors[&b1c.over].clone();
            if p
                .one_cells
                .get(&b1c.over)
                .zip(p.one_cells.get(&b2c.over))
                .map(|(x, y)| x.tgt != y.src)
                .unwrap_or(true)
            {
                continue;
            }
            budget.charge("presheaf_disp", 1)?;
            let ca = &frag.categories[&aname];
            let beta = &morphisms[b1];
            let beta2 = &morphisms[b2];
            let components: BTreeMap<_, _> = ca
                .objects
                .iter()
                .map(|x| -> Result<(CellId, BTreeMap<CellId, CellId>)> {
                    let fx = f.ob_at(x)?;
                    let inner: BTreeMap<_, _> = beta.components[x]
                        .iter()
                        .map(|(v, w)| (v.clone(), beta2.components[fx][w].clone()))
                        .collect();
                    Ok((x.clone(), inner))
                })
                .collect::<Result<_>>()?;
            let comp = PshNatTrans { components };
            let base = p.comp1(&b1c.over, &b2c.over)?.clone();
            let tok = mor_index
                .get(&(base, b1c.src.clone(), b2c.tgt.clone(), comp))
                .ok_or_else(|| KernelError::ConstructionFailed(format!(
                    "presheaf_disp: composite morphism missing for ({b1}, {b2})"
                )))?;
            d.disp_comp1.insert((b1.clone(), b2.clone()), tok.clone());
        }
    }
    fill_prop_two_cell_tables(&mut d)?;
    Ok(PresheafDisp {
        disp: d,
        presheaves,
        morphisms,
    })
}

/// CwF data over one finite category: type and term presheaves with the
/// projection from terms to types.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CwFData {
    pub category: FiniteCategory,
    pub ty: Presheaf,
    pub tm: Presheaf,
    /// per object: Tm(Γ) → Ty(Γ)
    pub p: BTreeMap<CellId, BTreeMap<CellId, CellId>>,
}

/// One comprehension witness: the context extension, its projection, and
/// the generic term.
#[derive(Debug, Clone, Serialize)]
pub struct ComprehensionWitness {
    pub gamma: CellId,
    pub ty: CellId,
    pub ext: CellId,
    pub proj: CellId,
    pub term: CellId,
}

/// Decides the comprehension property: for each Γ and A : Ty(Γ) there must
/// be an extension Γ.A with projection π and generic term t with
/// p(t) = Ty(π)(A), universal in the strict sense that every (f, s) with
/// p(s) = Ty(f)(A) factors through a unique g with g·π = f and Tm(g)(t) = s.
pub fn check_cwf_representation(
    data: &CwFData,
    budget: &Budget,
) -> Result<(bool, Vec<ComprehensionWitness>)> {
    let c = &data.category;
    // Naturality of p.
    for (m, ms) in &c.morphisms {
        let tm_act = data.tm.action(m)?;
        let ty_act = data.ty.action(m)?;
        for v in data.tm.at(&ms.tgt)? {
            let lhs = tm_act.get(v).and_then(|w| data.p[&ms.src].get(w));
            let rhs = data.p[&ms.tgt].get(v).and_then(|w| ty_act.get(w));
            if lhs != rhs || lhs.is_none() {
                return Err(KernelError::PreconditionFailed(
                    "check_cwf_representation: p is not natural".into(),
                ));
            }
        }
    }
    let mut witnesses = Vec::new();
    for gamma in &c.objects {
        for a in data.ty.at(gamma)? {
            budget.charge("cwf_representation", 1)?;
            let mut found = None;
            'candidates: for ext in &c.objects {
                for proj in c.hom(ext, gamma) {
                    let restricted = data.ty.action(&proj)?.get(a).cloned();
                    for t in data.tm.at(ext)? {
                        budget.charge("cwf_representation", 1)?;
                        if data.p[ext].get(t).cloned() != restricted {
                            continue;
                        }
                        // Universality over all (Δ, f, s).
                        let mut universal = true;
                        'univ: for delta in &c.objects {
                            for f in c.hom(delta, gamma) {
                                let want_ty = data.ty.action(&f)?.get(a).cloned();
                                for s in data.tm.at(delta)? {
                                    if data.p[delta].get(s).cloned() != want_ty {
                                        continue;
                                    }
                                    let mut count = 0;
                                    for g in c.hom(delta, ext) {
                                        let comp = c.comp(&g, &proj)?;
                                        let tm_g = data.tm.action(&g)?.get(t);
                                        if comp == &f && tm_g == Some(s) {
                                            count += 1;
                                        }
                                    }
                                    if count != 1 {
                                        universal = false;
                                        break 'univ;
                                    }
                                }
                            }
                        }
                        if universal {
                            found = Some(ComprehensionWitness {
                                gamma: gamma.clone(),
                                ty: a.clone(),
                                ext: ext.clone(),
                                proj: proj.clone(),
                                term: t.clone(),
                            });
                            break 'candidates;
                        }
                    }
                }
            }
            match found {
                Some(w) => witnesses.push(w),
                None => return Ok((false, witnesses)),
            }
        }
    }
    Ok((true, witnesses))
}

/// The CwF tower and its final bicategory over a fragment.
#[derive(Debug, Clone)]
pub struct CwfBicat {
    pub presentation: crate::bicat::BicatPresentation,
    pub objects: BTreeMap<CellId, CwFData>,
}

/// Builds the CwF bicategory: the product of two presheaf layers, the
/// projection layer as a sigma, and the full sub on the comprehension
/// predicate.
pub fn cwf_bicat(frag: &FragmentBicat, bound: usize, budget: &Budget) -> Result<CwfBicat> {
    let psh = presheaf_disp(frag, bound, budget)?;
    let pp = prod_disp(&psh.disp, &psh.disp)?;
    let cwf1 = total_bicat(&pp)?;

    // The projection layer over CwF₁: objects over (C,(Ty,Tm)) are natural
    // transformations p : Tm ⇒ Ty; 1-cells are the compatibility equalities.
    let mut d = DispBicatPresentation {
        base: cwf1.clone(),
        ..Default::default()
    };
    let decode_obj = |tok: &CellId| -> (CellId, CellId, CellId) {
        // cwf1 object = pair(C, glue(Ty-token, Tm-token))
        let top = split_composed(PAIR_SEP, tok.as_str());
        let pair = split_composed(GLUE_SEP, top[1].as_str());
        (top[0].clone(), pair[0].clone(), pair[1].clone())
    };
    let mut proj_sem: BTreeMap<CellId, BTreeMap<CellId, BTreeMap<CellId, CellId>>> =
        BTreeMap::new();
    for obj in &cwf1.objects {
        let (cname, ty_tok, tm_tok) = decode_obj(obj);
        let cat = &frag.categories[&cname];
        let ty = &psh.presheaves[&ty_tok];
        let tm = &psh.presheaves[&tm_tok];
        // Natural families p with components Tm(x) → Ty(x): reuse the
        // presheaf-morphism machinery over the identity functor.
        let idf = crate::fincat::Functor::identity(cat);
        for (i, p) in
            enumerate_nat_trans_presheaf(cat, &idf.ob, &idf.mor, tm, ty)?.into_iter().enumerate()
        {
            budget.charge("cwf", 1)?;
            let tok = glue(&[&CellId::from(format!("p{i}")), obj]);
            proj_sem.insert(tok.clone(), p.components);
            d.d0.insert(tok, DispObj { over: obj.clone() });
        }
    }
    // d1 over a cwf1 1-cell (F, (β_Ty, β_Tm)) from p to p':
    // β_Ty(p(v)) = p'(β_Tm(v)).
    let d0list: Vec<_> = d.d0.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
    for (one, oc) in &cwf1.one_cells {
        let top = split_composed(PAIR_SEP, one.as_str());
        let (ftok, rest) = (top[0].clone(), top[1].clone());
        let pair = split_composed(GLUE_SEP, rest.as_str());
        let (bty_tok, btm_tok) = (pair[0].clone(), pair[1].clone());
        let (aname, _b, f) = frag.functors[&ftok].clone();
        let ca = &frag.categories[&aname];
        let beta_ty = &psh.morphisms[&bty_tok];
        let beta_tm = &psh.morphisms[&btm_tok];
        for (p1, p1c) in &d0list {
            if p1c.over != oc.src {
                continue;
            }
            for (p2, p2c) in &d0list {
                if p2c.over != oc.tgt {
                    continue;
                }
                budget.charge("cwf", 1)?;
                let pm1 = &proj_sem[p1];
                let pm2 = &proj_sem[p2];
                let (_c1, _ty1, tm1_tok) = decode_obj(&oc.src);
                let tm1 = &psh.presheaves[&tm1_tok];
                let mut holds = true;
                'chk: for x in &ca.objects {
                    let fx = f.ob_at(x)?;
                    for v in tm1.at(x)? {
                        let lhs = pm1[x].get(v).and_then(|w| beta_ty.components[x].get(w));
                        let rhs = beta_tm.components[x]
                            .get(v)
                            .and_then(|w| pm2[fx].get(w));
                        if lhs != rhs || lhs.is_none() {
                            holds = false;
                            break 'chk;
                        }
                    }
                }
                if holds {
                    let tok = glue(&[one, p1, p2]);
                    d.d1.insert(
                        tok,
                        DispOne {
                            over: one.clone(),
                            src: p1.clone(),
                            tgt: p2.clone(),
                        },
                    );
                }
            }
        }
    }
    // Chaotic 2-cells over every cwf1 2-cell.
    let d1list: Vec<_> = d.d1.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
    for (two, tc) in &cwf1.two_cells {
        for (q1, q1c) in &d1list {
            if q1c.over != tc.src {
                continue;
            }
            for (q2, q2c) in &d1list {
                if q2c.over != tc.tgt || q2c.src != q1c.src || q2c.tgt != q1c.tgt {
                    continue;
                }
                let tok = glue(&[two, q1, q2]);
                d.d2.insert(
                    tok,
                    DispTwo {
                        over: two.clone(),
                        src: q1.clone(),
                        tgt: q2.clone(),
                    },
                );
            }
        }
    }
    for (x, xc) in &d.d0.clone() {
        let key = (cwf1.id1(&xc.over)?.clone(), x.clone(), x.clone());
        let fiber = d
            .d1
            .iter()
            .filter(|(_, c)| c.over == key.0 && &c.src == x && &c.tgt == x)
            .map(|(t, _)| t.clone())
            .collect::<Vec<_>>();
        match fiber.first() {
            Some(t) => {
                d.disp_id1.insert(x.clone(), t.clone());
            }
            None => {
                return Err(KernelError::ConstructionFailed(format!(
                    "cwf: identity compatibility square missing at {x}"
                )))
            }
        }
    }
    for (q1, q1c) in &d1list {
        for (q2, q2c) in &d1list {
            if q1c.tgt != q2c.src {
                continue;
            }
            if cwf1
                .one_cells
                .get(&q1c.over)
                .zip(cwf1.one_cells.get(&q2c.over))
                .map(|(x, y)| x.tgt != y.src)
                .unwrap_or(true)
            {
                continue;
            }
            let comp = cwf1.comp1(&q1c.over, &q2c.over)?.clone();
            let fiber = d
                .d1
                .iter()
                .filter(|(_, c)| c.over == comp && c.src == q1c.src && c.tgt == q2c.tgt)
                .map(|(t, _)| t.clone())
                .collect::<Vec<_>>();
            match fiber.first() {
                Some(t) => {
                    d.disp_comp1.insert((q1.clone(), q2.clone()), t.clone());
                }
                None => {
                    return Err(KernelError::ConstructionFailed(
                        "cwf: composite compatibility square missing".into(),
                    ))
                }
            }
        }
    }
    fill_prop_two_cell_tables(&mut d)?;

    // Sigma back over the fragment, then the comprehension full sub.
    let cwf2_disp = sigma_disp(&pp, &d)?;
    let t2 = total_bicat(&cwf2_disp)?;
    let decode_full = |tok: &CellId| -> Result<CwFData> {
        // t2 object = pair(C, glue(glue(Ty,Tm), p-layer token)).
        let top = split_composed(PAIR_SEP, tok.as_str());
        let pair = split_composed(GLUE_SEP, top[1].as_str());
        let tys = split_composed(GLUE_SEP, pair[0].as_str());
        let p_layer = split_composed(GLUE_SEP, pair[1].as_str());
        let cname = top[0].clone();
        Ok(CwFData {
            category: frag.categories[&cname].clone(),
            ty: psh.presheaves[&tys[0]].clone(),
            tm: psh.presheaves[&tys[1]].clone(),
            p: proj_sem[&glue(&[&p_layer[0], &pair_of(&cname, &pair[0])])].clone(),
        })
    };
    fn pair_of(c: &CellId, rest: &CellId) -> CellId {
        crate::cell::pair_token(c, rest)
    }
    let mut keep = BTreeMap::new();
    let mut object_data = BTreeMap::new();
    for obj in &t2.objects {
        let data = decode_full(obj)?;
        let (ok, _) = check_cwf_representation(&data, budget)?;
        keep.insert(obj.clone(), ok);
        object_data.insert(obj.clone(), data);
    }
    let sub = fullsub_disp(&t2, &|obj| keep.get(obj).copied().unwrap_or(false))?;
    let final_disp = sigma_disp(&cwf2_disp, &sub)?;
    let presentation = total_bicat(&final_disp)?;
    let mut objects = BTreeMap::new();
    for obj in &presentation.objects {
        let top = split_composed(PAIR_SEP, obj.as_str());
        let rest = split_composed(GLUE_SEP, top[1].as_str());
        let t2_tok = rest.last().unwrap().clone();
        objects.insert(obj.clone(), object_data[&t2_tok].clone());
    }
    Ok(CwfBicat {
        presentation,
        objects,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicat::check_laws;
    use crate::display::check_disp_laws;
    use crate::fincat::fincat_fragment_bicat;
    use crate::univalence::check_univalent;

    fn b() -> Budget {
        Budget::default()
    }

    fn terminal_frag() -> FragmentBicat {
        fincat_fragment_bicat(
            &[(CellId::from("T"), FiniteCategory::terminal())],
            &b(),
        )
        .unwrap()
    }

    #[test]
    fn presheaves_on_terminal_bound1() {
        // A presheaf on the terminal category is a single set: ∅ or {v0}.
        let ps = enumerate_presheaves(&FiniteCategory::terminal(), 1, &b()).unwrap();
        assert_eq!(ps.len(), 2);
    }

    #[test]
    fn presheaves_on_poset2_bound1() {
        // (T0, T1) with a map T1 → T0: (∅,∅), ({v0},∅), ({v0},{v0}).
        let ps = enumerate_presheaves(&FiniteCategory::poset2(), 1, &b()).unwrap();
        assert_eq!(ps.len(), 3);
    }

    #[test]
    fn presheaf_disp_is_lawful_and_locally_propositional() {
        let frag = terminal_frag();
        let psh = presheaf_disp(&frag, 1, &b()).unwrap();
        assert!(check_disp_laws(&psh.disp, &b()).unwrap().passed());
        assert!(crate::display::is_locally_propositional(&psh.disp).unwrap());
    }

    #[test]
    fn cwf_representation_terminal_instances() {
        let c = FiniteCategory::terminal();
        let star = CellId::from("*");
        let singleton: BTreeSet<CellId> = [CellId::from("A")].into();
        let tm_set: BTreeSet<CellId> = [CellId::from("t")].into();
        let ty = Presheaf {
            on_ob: [(star.clone(), singleton)].into(),
            on_mor: [(
                CellId::from("id*"),
                [(CellId::from("A"), CellId::from("A"))].into(),
            )]
            .into(),
        };
        let tm = Presheaf {
            on_ob: [(star.clone(), tm_set)].into(),
            on_mor: [(
                CellId::from("id*"),
                [(CellId::from("t"), CellId::from("t"))].into(),
            )]
            .into(),
        };
        let data = CwFData {
            category: c.clone(),
            ty: ty.clone(),
            tm,
            p: [(star.clone(), [(CellId::from("t"), CellId::from("A"))].into())].into(),
        };
        let (ok, witnesses) = check_cwf_representation(&data, &b()).unwrap();
        assert!(ok);
        assert_eq!(witnesses.len(), 1);
        assert_eq!(witnesses[0].ext, star);

        // Empty terms: no generic term exists.
        let data2 = CwFData {
            category: c,
            ty,
            tm: Presheaf {
                on_ob: [(star.clone(), BTreeSet::new())].into(),
                on_mor: [(CellId::from("id*"), BTreeMap::new())].into(),
            },
            p: [(star, BTreeMap::new())].into(),
        };
        let (ok, _) = check_cwf_representation(&data2, &b()).unwrap();
        assert!(!ok);
    }

    #[test]
    fn cwf_bicat_over_terminal_fragment() {
        let frag = terminal_frag();
        let cwf = cwf_bicat(&frag, 1, &b()).unwrap();
        assert!(cwf.presentation.validate().passed());
        assert!(check_laws(&cwf.presentation, &b()).unwrap().passed());
        // (∅,∅) with the empty projection and ({v0},{v0}) with the unique
        // projection admit comprehension; ({v0},∅) does not.
        assert_eq!(cwf.presentation.objects.len(), 2);
        assert!(check_univalent(&cwf.presentation, &b()).unwrap().passed());
    }
}
