//! Representable pseudofunctors into finite-category semantics, the Yoneda
//! lemma check on tiny instances, and full image/restriction.
//!
//! Category-valued pseudofunctors are semantic records: each object maps to
//! an actual finite category, never into a pre-enumerated bicategory of
//! categories. That choice is what keeps the Yoneda check feasible.

use crate::bicat::{hom_category, op_bicat, BicatPresentation};
use crate::budget::Budget;
use crate::cell::{pair_token, CellId};
use crate::display::{fullsub_disp, total_bicat};
use crate::error::{KernelError, Result};
use crate::fincat::{enumerate_functors, FiniteCategory, Functor, NatTrans};
use crate::psfun::PseudofunctorData;
use crate::univalence::check_local_univalence;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A pseudofunctor from a presentation into finite-category semantics:
/// categories for objects, functors for 1-cells, natural transformations
/// for 2-cells, with identitor and compositor natural isomorphisms. The
/// structural cells of the semantic target are strict, so its unitors and
/// associators are identity transformations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatValuedPsfunctor {
    pub on_ob: BTreeMap<CellId, FiniteCategory>,
    pub on_one: BTreeMap<CellId, Functor>,
    pub on_two: BTreeMap<CellId, NatTrans>,
    /// a → natural iso id_{P(a)} ⇒ P(id1 a)
    pub identitor: BTreeMap<CellId, NatTrans>,
    /// (f, g) → natural iso P(f)·P(g) ⇒ P(f·g)
    #[serde(with = "crate::serde_keys::key2")]
    pub compositor: BTreeMap<(CellId, CellId), NatTrans>,
}

impl CatValuedPsfunctor {
    pub fn ob(&self, a: &CellId) -> Result<&FiniteCategory> {
        self.on_ob.get(a).ok_or_else(|| KernelError::DanglingReference {
            context: "catvalued.on_ob".into(),
            token: a.clone(),
        })
    }

    pub fn one(&self, f: &CellId) -> Result<&Functor> {
        self.on_one.get(f).ok_or_else(|| KernelError::DanglingReference {
            context: "catvalued.on_one".into(),
            token: f.clone(),
        })
    }

    pub fn two(&self, t: &CellId) -> Result<&NatTrans> {
        self.on_two.get(t).ok_or_else(|| KernelError::DanglingReference {
            context: "catvalued.on_two".into(),
            token: t.clone(),
        })
    }
}

/// Validates a Cat-valued pseudofunctor on a presentation: functor and
/// naturality laws pointwise, functoriality of the 2-cell action, and the
/// unit/composition coherence against the strict semantic structure.
pub fn check_cat_valued(src: &BicatPresentation, p: &CatValuedPsfunctor) -> Result<bool> {
    for (f, fc) in &src.one_cells {
        let fun = p.one(f)?;
        if !fun.validate(p.ob(&fc.src)?, p.ob(&fc.tgt)?).passed() {
            return Ok(false);
        }
    }
    for (t, tc) in &src.two_cells {
        let n = p.two(t)?;
        let shape = src.one_cell(&tc.src)?;
        let dom = p.ob(&shape.src)?;
        let cod = p.ob(&shape.tgt)?;
        if !n.validate(dom, cod, p.one(&tc.src)?, p.one(&tc.tgt)?).passed() {
            return Ok(false);
        }
    }
    // F2 functoriality.
    for f in src.one_cells.keys() {
        let idn = NatTrans::identity(
            p.ob(&src.one_cell(f)?.src)?,
            p.one(f)?,
            p.ob(&src.one_cell(f)?.tgt)?,
        )?;
        if p.two(src.id2(f)?)? != &idn {
            return Ok(false);
        }
    }
    for (t, u) in src.vcomposable_pairs() {
        let shape = src.one_cell(&src.two_cell(&t)?.src)?.clone();
        let cod = p.ob(&shape.tgt)?;
        let comp = p.two(&t)?.vcomp(p.two(&u)?, cod)?;
        if p.two(src.vcomp(&t, &u)?)? != &comp {
            return Ok(false);
        }
    }
    // Identitor/compositor invertibility and typing.
    for a in &src.objects {
        let n = p
            .identitor
            .get(a)
            .ok_or_else(|| KernelError::DanglingReference {
                context: "catvalued.identitor".into(),
                token: a.clone(),
            })?;
        let cat = p.ob(a)?;
        let idf = Functor::identity(cat);
        let target = p.one(src.id1(a)?)?;
        if !n.validate(cat, cat, &idf, target).passed() {
            return Ok(false);
        }
        if n.components.values().any(|c| !cat.is_iso(c)) {
            return Ok(false);
        }
    }
    for (f, g) in src.composable_pairs() {
        let n = p
            .compositor
            .get(&(f.clone(), g.clone()))
            .ok_or_else(|| KernelError::DanglingReference {
                context: "catvalued.compositor".into(),
                token: f.clone(),
            })?;
        let a = src.one_cell(&f)?.src.clone();
        let c = src.one_cell(&g)?.tgt.clone();
        let dom = p.ob(&a)?;
        let cod = p.ob(&c)?;
        let composite = p.one(&f)?.compose(p.one(&g)?)?;
        let target = p.one(src.comp1(&f, &g)?)?;
        if !n.validate(dom, cod, &composite, target).passed() {
            return Ok(false);
        }
        if n.components.values().any(|cmp| !cod.is_iso(cmp)) {
            return Ok(false);
        }
    }
    // Unitor coherence in strict semantics: λ(P f) is the identity, so the
    // composite (identitor ▷ P f) • compositor(id1, f) • P2(λ f) must be
    // the identity transformation, and symmetrically for ρ.
    for (f, fc) in &src.one_cells {
        let dom = p.ob(&fc.src)?;
        let cod = p.ob(&fc.tgt)?;
        let pf = p.one(f)?;
        let lhs = {
            let ga = &p.identitor[&fc.src];
            // (γ ▷ P f)_x = Pf(γ_x)
            let whisk = NatTrans {
                components: dom
                    .objects
                    .iter()
                    .map(|x| -> Result<(CellId, CellId)> {
                        Ok((x.clone(), pf.mor_at(ga.at(x)?)?.clone()))
                    })
                    .collect::<Result<_>>()?,
            };
            let dl = &p.compositor[&(src.id1(&fc.src)?.clone(), f.clone())];
            let lam = p.two(src.lunitor(f)?)?;
            whisk.vcomp(dl, cod)?.vcomp(lam, cod)?
        };
        if lhs != NatTrans::identity(dom, pf, cod)? {
            return Ok(false);
        }
        let rhs = {
            let gb = &p.identitor[&fc.tgt];
            // (P f ◁ γ)_x = γ_{Pf x}
            let whisk = NatTrans {
                components: dom
                    .objects
                    .iter()
                    .map(|x| -> Result<(CellId, CellId)> {
                        Ok((x.clone(), gb.at(pf.ob_at(x)?)?.clone()))
                    })
                    .collect::<Result<_>>()?,
            };
            let dl = &p.compositor[&(f.clone(), src.id1(&fc.tgt)?.clone())];
            let rho = p.two(src.runitor(f)?)?;
            whisk.vcomp(dl, cod)?.vcomp(rho, cod)?
        };
        if rhs != NatTrans::identity(dom, pf, cod)? {
            return Ok(false);
        }
    }
    // Associator coherence, again against identity associators.
    for (f, g, h) in src.composable_triples() {
        let a = src.one_cell(&f)?.src.clone();
        let dd = src.one_cell(&h)?.tgt.clone();
        let dom = p.ob(&a)?;
        let cod = p.ob(&dd)?;
        let pf = p.one(&f)?;
        let lhs = {
            // (P f ◁ δ(g,h)) • δ(f, g·h) • P2(α)
            let dgh = &p.compositor[&(g.clone(), h.clone())];
            let whisk = NatTrans {
                components: dom
                    .objects
                    .iter()
                    .map(|x| -> Result<(CellId, CellId)> {
                        Ok((x.clone(), dgh.at(pf.ob_at(x)?)?.clone()))
                    })
                    .collect::<Result<_>>()?,
            };
            let gh = src.comp1(&g, &h)?.clone();
            let d2 = &p.compositor[&(f.clone(), gh)];
            let pa = p.two(src.lassoc(&f, &g, &h)?)?;
            whisk.vcomp(d2, cod)?.vcomp(pa, cod)?
        };
        let rhs = {
            // (δ(f,g) ▷ P h) • δ(f·g, h)
            let dfg = &p.compositor[&(f.clone(), g.clone())];
            let ph = p.one(&h)?;
            let whisk = NatTrans {
                components: dom
                    .objects
                    .iter()
                    .map(|x| -> Result<(CellId, CellId)> {
                        Ok((x.clone(), ph.mor_at(dfg.at(x)?)?.clone()))
                    })
                    .collect::<Result<_>>()?,
            };
            let fg = src.comp1(&f, &g)?.clone();
            let d2 = &p.compositor[&(fg, h.clone())];
            whisk.vcomp(d2, cod)?
        };
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The representable pseudofunctor at an object: op B → Cat semantics,
/// sending b to the hom-category B₁(b, a) and an op-1-cell to
/// precomposition. Requires a locally univalent base.
pub fn representable0(
    b: &BicatPresentation,
    a: &CellId,
    budget: &Budget,
) -> Result<CatValuedPsfunctor> {
    if !check_local_univalence(b, budget)?.passed() {
        return Err(KernelError::PreconditionFailed(
            "representable0 requires a locally univalent base".into(),
        ));
    }
    let op = op_bicat(b)?;
    let mut p = CatValuedPsfunctor {
        on_ob: BTreeMap::new(),
        on_one: BTreeMap::new(),
        on_two: BTreeMap::new(),
        identitor: BTreeMap::new(),
        compositor: BTreeMap::new(),
    };
    for x in &op.objects {
        p.on_ob.insert(x.clone(), hom_category(b, x, a)?);
    }
    // An op-1-cell f : b₁ → b₂ is f : b₂ → b₁ in B; it acts by g ↦ f·g.
    for (f, fc) in &op.one_cells {
        let dom = &p.on_ob[&fc.src];
        let mut ob = BTreeMap::new();
        let mut mor = BTreeMap::new();
        for g in &dom.objects {
            ob.insert(g.clone(), b.comp1(f, g)?.clone());
        }
        for m in dom.morphisms.keys() {
            mor.insert(m.clone(), b.lwhisker(f, m)?.clone());
        }
        p.on_one.insert(f.clone(), Functor { ob, mor });
    }
    // An op-2-cell θ : f ⇒ f' acts with components θ ▷ h.
    for (t, tc) in &op.two_cells {
        let fsrc = op.one_cell(&tc.src)?.src.clone();
        let dom = &p.on_ob[&fsrc];
        let components = dom
            .objects
            .iter()
            .map(|h| -> Result<(CellId, CellId)> {
                Ok((h.clone(), b.rwhisker(t, h)?.clone()))
            })
            .collect::<Result<_>>()?;
        p.on_two.insert(t.clone(), NatTrans { components });
    }
    for x in &op.objects {
        // id ⇒ (g ↦ id1(x)·g): component λ(g)⁻¹.
        let dom = &p.on_ob[x];
        let components = dom
            .objects
            .iter()
            .map(|g| -> Result<(CellId, CellId)> {
                Ok((g.clone(), b.lunitor_inv(g)?.clone()))
            })
            .collect::<Result<_>>()?;
        p.identitor.insert(x.clone(), NatTrans { components });
    }
    for (f, g) in op.composable_pairs() {
        // P(f)·P(g) sends h to g·(f·h) in B; P(f ·op g) sends h to (g·f)·h.
        let a1 = op.one_cell(&f)?.src.clone();
        let dom = &p.on_ob[&a1];
        let components = dom
            .objects
            .iter()
            .map(|h| -> Result<(CellId, CellId)> {
                Ok((h.clone(), b.lassoc(&g, &f, h)?.clone()))
            })
            .collect::<Result<_>>()?;
        p.compositor
            .insert((f.clone(), g.clone()), NatTrans { components });
    }
    Ok(p)
}

/// A pseudotransformation between Cat-valued pseudofunctors on op B:
/// component functors plus naturality isomorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatValuedPstrans {
    pub component: BTreeMap<CellId, Functor>,
    pub naturality: BTreeMap<CellId, NatTrans>,
}

/// A modification between Cat-valued pseudotransformations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CatValuedModification {
    pub component: BTreeMap<CellId, NatTrans>,
}

/// Validates a semantic pseudotransformation τ : P ⇒ Q over op B: component
/// typing, invertibility and naturality of the η₁ family, the naturality-in-
/// 2-cells law, and the unit/composition coherence against the strict
/// semantic structure.
pub fn check_cat_valued_pstrans(
    opb: &BicatPresentation,
    p: &CatValuedPsfunctor,
    q: &CatValuedPsfunctor,
    tau: &CatValuedPstrans,
) -> Result<bool> {
    for x in &opb.objects {
        let f = match tau.component.get(x) {
            Some(f) => f,
            None => return Ok(false),
        };
        if !f.validate(p.ob(x)?, q.ob(x)?).passed() {
            return Ok(false);
        }
    }
    for (f, fc) in &opb.one_cells {
        let n = match tau.naturality.get(f) {
            Some(n) => n,
            None => return Ok(false),
        };
        // n : τ(src)·Q(f) ⇒ P(f)·τ(tgt), functors P(src f) → Q(tgt f).
        let dom = p.ob(&fc.src)?;
        let cod = q.ob(&fc.tgt)?;
        let lhs = tau.component[&fc.src].compose(q.one(f)?)?;
        let rhs = p.one(f)?.compose(&tau.component[&fc.tgt])?;
        if !n.validate(dom, cod, &lhs, &rhs).passed() {
            return Ok(false);
        }
        if n.components.values().any(|c| !cod.is_iso(c)) {
            return Ok(false);
        }
    }
    // Naturality in 2-cells: (τ(a) ◁ Q2 θ) • n(g) = n(f) • (P2 θ ▷ τ(b)).
    for (t, tc) in &opb.two_cells {
        let shape = opb.one_cell(&tc.src)?.clone();
        let dom = p.ob(&shape.src)?;
        let cod = q.ob(&shape.tgt)?;
        let taua = &tau.component[&shape.src];
        let taub = &tau.component[&shape.tgt];
        let q2 = q.two(t)?;
        let p2 = p.two(t)?;
        let lhs = {
            let whisk = NatTrans {
                components: dom
                    .objects
                    .iter()
                    .map(|x| -> Result<(CellId, CellId)> {
                        Ok((x.clone(), q2.at(taua.ob_at(x)?)?.clone()))
                    })
                    .collect::<Result<_>>()?,
            };
            whisk.vcomp(&tau.naturality[&tc.tgt], cod)?
        };
        let rhs = {
            let whisk = NatTrans {
                components: dom
                    .objects
                    .iter()
                    .map(|x| -> Result<(CellId, CellId)> {
                        Ok((x.clone(), taub.mor_at(p2.at(x)?)?.clone()))
                    })
                    .collect::<Result<_>>()?,
            };
            tau.naturality[&tc.src].vcomp(&whisk, cod)?
        };
        if lhs != rhs {
            return Ok(false);
        }
    }
    // Unit coherence in strict semantics: (τ(a) ◁ γ_Q(a)) • n(id1 a) =
    // γ_P(a) ▷ τ(a).
    for a in &opb.objects {
        let dom = p.ob(a)?;
        let cod = q.ob(a)?;
        let taua = &tau.component[a];
        let lhs = {
            let gq = &q.identitor[a];
            let whisk = NatTrans {
                components: dom
                    .objects
                    .iter()
                    .map(|x| -> Result<(CellId, CellId)> {
                        Ok((x.clone(), gq.at(taua.ob_at(x)?)?.clone()))
                    })
                    .collect::<Result<_>>()?,
            };
            whisk.vcomp(&tau.naturality[opb.id1(a)?], cod)?
        };
        let rhs = {
            let gp = &p.identitor[a];
            NatTrans {
                components: dom
                    .objects
                    .iter()
                    .map(|x| -> Result<(CellId, CellId)> {
                        Ok((x.clone(), taua.mor_at(gp.at(x)?)?.clone()))
                    })
                    .collect::<Result<_>>()?,
            }
        };
        if lhs != rhs {
            return Ok(false);
        }
    }
    // Composition coherence: (τ(a) ◁ δ_Q(f,g)) • n(f·g) =
    // (n(f) ▷ Q g... in strict semantics: n(f) whiskered then n(g) then
    // δ_P pushed forward; associators are identities.
    for (f, g) in opb.composable_pairs() {
        let a = opb.one_cell(&f)?.src.clone();
        let c = opb.one_cell(&g)?.tgt.clone();
        let dom = p.ob(&a)?;
        let cod = q.ob(&c)?;
        let taua = &tau.component[&a];
        let lhs = {
            let dq = &q.compositor[&(f.clone(), g.clone())];
            let whisk = NatTrans {
                components: dom
                    .objects
                    .iter()
                    .map(|x| -> Result<(CellId, CellId)> {
                        Ok((x.clone(), dq.at(taua.ob_at(x)?)?.clone()))
                    })
                    .collect::<Result<_>>()?,
            };
            let fg = opb.comp1(&f, &g)?.clone();
            whisk.vcomp(&tau.naturality[&fg], cod)?
        };
        let rhs = {
            // (n(f) ▷ Q(g)) then (P(f) ◁ n(g)) then (δ_P(f,g) ▷ τ(c)).
            let qg = q.one(&g)?;
            let step1 = NatTrans {
                components: dom
                    .objects
                    .iter()
                    .map(|x| -> Result<(CellId, CellId)> {
                        Ok((x.clone(), qg.mor_at(tau.naturality[&f].at(x)?)?.clone()))
                    })
                    .collect::<Result<_>>()?,
            };
            let pf = p.one(&f)?;
            let step2 = NatTrans {
                components: dom
                    .objects
                    .iter()
                    .map(|x| -> Result<(CellId, CellId)> {
                        Ok((
                            x.clone(),
                            tau.naturality[&g].at(pf.ob_at(x)?)?.clone(),
                        ))
                    })
                    .collect::<Result<_>>()?,
            };
            let dp = &p.compositor[&(f.clone(), g.clone())];
            let tauc = &tau.component[&c];
            let step3 = NatTrans {
                components: dom
                    .objects
                    .iter()
                    .map(|x| -> Result<(CellId, CellId)> {
                        Ok((x.clone(), tauc.mor_at(dp.at(x)?)?.clone()))
                    })
                    .collect::<Result<_>>()?,
            };
            step1.vcomp(&step2, cod)?.vcomp(&step3, cod)?
        };
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Validates a modification between semantic pseudotransformations:
/// componentwise natural transformations satisfying the modification square.
pub fn check_cat_valued_modification(
    opb: &BicatPresentation,
    p: &CatValuedPsfunctor,
    q: &CatValuedPsfunctor,
    tau: &CatValuedPstrans,
    sig: &CatValuedPstrans,
    m: &CatValuedModification,
) -> Result<bool> {
    for x in &opb.objects {
        let n = match m.component.get(x) {
            Some(n) => n,
            None => return Ok(false),
        };
        if !n
            .validate(p.ob(x)?, q.ob(x)?, &tau.component[x], &sig.component[x])
            .passed()
        {
            return Ok(false);
        }
    }
    // (m(a) ▷ Q f) • σ₁(f) = τ₁(f) • (P f ◁ m(b)).
    for (f, fc) in &opb.one_cells {
        let dom = p.ob(&fc.src)?;
        let cod = q.ob(&fc.tgt)?;
        let lhs = {
            let qf = q.one(f)?;
            let whisk = NatTrans {
                components: dom
                    .objects
                    .iter()
                    .map(|x| -> Result<(CellId, CellId)> {
                        Ok((x.clone(), qf.mor_at(m.component[&fc.src].at(x)?)?.clone()))
                    })
                    .collect::<Result<_>>()?,
            };
            whisk.vcomp(&sig.naturality[f], cod)?
        };
        let rhs = {
            let pf = p.one(f)?;
            let whisk = NatTrans {
                components: dom
                    .objects
                    .iter()
                    .map(|x| -> Result<(CellId, CellId)> {
                        Ok((x.clone(), m.component[&fc.tgt].at(pf.ob_at(x)?)?.clone()))
                    })
                    .collect::<Result<_>>()?,
            };
            tau.naturality[f].vcomp(&whisk, cod)?
        };
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The representable pseudotransformation at a 1-cell f : a → b, from
/// Rep₀(a) to Rep₀(b): the component at c is postcomposition g ↦ g·f, with
/// naturality cells the associators.
pub fn representable1(
    bpres: &BicatPresentation,
    ya: &CatValuedPsfunctor,
    yb: &CatValuedPsfunctor,
    f: &CellId,
) -> Result<CatValuedPstrans> {
    let op = op_bicat(bpres)?;
    let mut component = BTreeMap::new();
    for (c, cat) in &ya.on_ob {
        let mut ob = BTreeMap::new();
        let mut mor = BTreeMap::new();
        for g in &cat.objects {
            ob.insert(g.clone(), bpres.comp1(g, f)?.clone());
        }
        for m in cat.morphisms.keys() {
            mor.insert(m.clone(), bpres.rwhisker(m, f)?.clone());
        }
        component.insert(c.clone(), Functor { ob, mor });
    }
    // Naturality at an op-1-cell g (a B-1-cell c₂ → c₁): at h ∈ hom(c₁,a)
    // both routes land at composites of g, h, f; the connecting iso is
    // α(g, h, f) : g·(h·f) ⇒ (g·h)·f.
    let mut naturality = BTreeMap::new();
    for (g, gc) in &op.one_cells {
        let dom = &ya.on_ob[&gc.src];
        let components = dom
            .objects
            .iter()
            .map(|h| -> Result<(CellId, CellId)> {
                Ok((h.clone(), bpres.lassoc(g, h, f)?.clone()))
            })
            .collect::<Result<_>>()?;
        naturality.insert(g.clone(), NatTrans { components });
    }
    let _ = yb;
    Ok(CatValuedPstrans {
        component,
        naturality,
    })
}

/// The representable modification at a 2-cell θ : f ⇒ g, from Rep₁(f) to
/// Rep₁(g): the component at c is the transformation h ↦ h ◁ θ.
pub fn representable2(
    bpres: &BicatPresentation,
    ya: &CatValuedPsfunctor,
    theta: &CellId,
) -> Result<CatValuedModification> {
    let mut component = BTreeMap::new();
    for (c, cat) in &ya.on_ob {
        let components = cat
            .objects
            .iter()
            .map(|h| -> Result<(CellId, CellId)> {
                Ok((h.clone(), bpres.lwhisker(h, theta)?.clone()))
            })
            .collect::<Result<_>>()?;
        component.insert(c.clone(), NatTrans { components });
    }
    Ok(CatValuedModification { component })
}

/// All semantic pseudotransformations y(a) ⇒ P, enumerated within budget.
pub fn enumerate_cat_valued_pstrans(
    opb: &BicatPresentation,
    p: &CatValuedPsfunctor,
    q: &CatValuedPsfunctor,
    budget: &Budget,
) -> Result<Vec<CatValuedPstrans>> {
    let objects: Vec<_> = opb.objects.iter().cloned().collect();
    let comp_choices: Vec<Vec<Functor>> = objects
        .iter()
        .map(|x| -> Result<Vec<Functor>> {
            Ok(enumerate_functors(p.ob(x)?, q.ob(x)?))
        })
        .collect::<Result<_>>()?;
    if comp_choices.iter().any(|c| c.is_empty()) && !objects.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for pick in crate::fincat::cartesian(&comp_choices) {
        budget.charge("enumerate_cat_pstrans", 1)?;
        let component: BTreeMap<_, _> = objects.iter().cloned().zip(pick.iter().cloned()).collect();
        let ones: Vec<_> = opb.one_cells.keys().cloned().collect();
        let nat_choices: Vec<Vec<NatTrans>> = ones
            .iter()
            .map(|f| -> Result<Vec<NatTrans>> {
                let fc = opb.one_cell(f)?;
                let dom = p.ob(&fc.src)?;
                let cod = q.ob(&fc.tgt)?;
                let lhs = component[&fc.src].compose(q.one(f)?)?;
                let rhs = p.one(f)?.compose(&component[&fc.tgt])?;
                Ok(crate::fincat::enumerate_nat_trans(dom, cod, &lhs, &rhs)
                    .into_iter()
                    .filter(|n| n.components.values().all(|c| cod.is_iso(c)))
                    .collect())
            })
            .collect::<Result<_>>()?;
        if nat_choices.iter().any(|c| c.is_empty()) && !ones.is_empty() {
            continue;
        }
        for nat_pick in crate::fincat::cartesian(&nat_choices) {
            budget.charge("enumerate_cat_pstrans", 1)?;
            let cand = CatValuedPstrans {
                component: component.clone(),
                naturality: ones.iter().cloned().zip(nat_pick.iter().cloned()).collect(),
            };
            if check_cat_valued_pstrans(opb, p, q, &cand)? {
                out.push(cand);
            }
        }
    }
    Ok(out)
}

/// The outcome of the Yoneda check: the two functor tables and the verified
/// unit/counit component families.
#[derive(Debug, Clone, Serialize)]
pub struct YonedaReport {
    pub pstrans_count: usize,
    pub target_objects: usize,
    pub passed: bool,
}

/// The bicategorical Yoneda lemma at (B, P, a): materializes the finite
/// category of pseudotransformations y(a) ⇒ P and modifications, computes
/// the two functors of the construction, and verifies both composites are
/// naturally isomorphic to identities via explicit unit and counit families.
pub fn yoneda_check(
    bpres: &BicatPresentation,
    p: &CatValuedPsfunctor,
    a: &CellId,
    budget: &Budget,
) -> Result<YonedaReport> {
    let op = op_bicat(bpres)?;
    let ya = representable0(bpres, a, budget)?;
    if !check_cat_valued(&op, &ya)? {
        return Err(KernelError::ConstructionFailed(
            "yoneda_check: representable fails the semantic pseudofunctor laws".into(),
        ));
    }
    if !check_cat_valued(&op, p)? {
        return Err(KernelError::PreconditionFailed(
            "yoneda_check: target fails the semantic pseudofunctor laws".into(),
        ));
    }

    let taus = enumerate_cat_valued_pstrans(&op, &ya, p, budget)?;
    let pa = p.ob(a)?.clone();
    let ida = bpres.id1(a)?.clone();

    // F sends τ to τ(a)(id₁ a).
    let f_on_tau =
        |tau: &CatValuedPstrans| -> Result<CellId> { Ok(tau.component[a].ob_at(&ida)?.clone()) };

    // G sends z : P(a) to the pseudotransformation with components
    // g ↦ P(ǧ)(z) and naturality from the compositor of P.
    let g_on_z = |z: &CellId| -> Result<CatValuedPstrans> {
        let mut component = BTreeMap::new();
        for (c, cat) in &ya.on_ob {
            let mut ob = BTreeMap::new();
            let mut mor = BTreeMap::new();
            for g in &cat.objects {
                ob.insert(g.clone(), p.one(g)?.ob_at(z)?.clone());
            }
            for m in cat.morphisms.keys() {
                mor.insert(m.clone(), p.two(m)?.at(z)?.clone());
            }
            component.insert(c.clone(), Functor { ob, mor });
        }
        let mut naturality = BTreeMap::new();
        for (f, fc) in &op.one_cells {
            let dom = &ya.on_ob[&fc.src];
            let components = dom
                .objects
                .iter()
                .map(|g| -> Result<(CellId, CellId)> {
                    // δ_P(ǧ, f) evaluated at z.
                    Ok((g.clone(), p.compositor[&(g.clone(), f.clone())].at(z)?.clone()))
                })
                .collect::<Result<_>>()?;
            naturality.insert(f.clone(), NatTrans { components });
        }
        Ok(CatValuedPstrans {
            component,
            naturality,
        })
    };

    // G(z) must always be a valid pseudotransformation.
    for z in &pa.objects {
        let gz = g_on_z(z)?;
        if !check_cat_valued_pstrans(&op, &ya, p, &gz)? {
            return Err(KernelError::ConstructionFailed(format!(
                "yoneda_check: G({z}) fails the pseudotransformation laws"
            )));
        }
    }

    // Counit on P(a): G·F sends z to P(id₁ᵒᵖ a)(z); the identitor gives the
    // natural isomorphism to the identity.
    let mut counit_ok = true;
    for z in &pa.objects {
        let gz = g_on_z(z)?;
        let round = f_on_tau(&gz)?;
        let expected = p.one(&ida)?.ob_at(z)?.clone();
        if round != expected {
            counit_ok = false;
        }
        // The identitor component at z is an iso round → z.
        let comp = p.identitor[a].at(z)?;
        if !pa.is_iso(comp) {
            counit_ok = false;
        }
        let shape = pa.mor(comp)?;
        if &shape.src != z || shape.tgt != round {
            counit_ok = false;
        }
    }

    // Unit on the pseudotransformation category: for every τ, G(F(τ)) is
    // isomorphic to τ via the modification with components
    // τ(c)(ρ(g)⁻¹) then τ₁(ǧ)⁻¹ at id₁(a).
    let mut unit_ok = true;
    for tau in &taus {
        let z = f_on_tau(tau)?;
        let gz = g_on_z(&z)?;
        let mut component = BTreeMap::new();
        for (c, cat) in &ya.on_ob {
            let cod = p.ob(c)?;
            let comps = cat
                .objects
                .iter()
                .map(|g| -> Result<(CellId, CellId)> {
                    // τ(c)(ρ(g)⁻¹) : τ(c)(g) → τ(c)(g·id₁ a)
                    let step1 = tau.component[c].mor_at(bpres.runitor_inv(g)?)?.clone();
                    // τ₁(ǧ)⁻¹ at id₁(a) : τ(c)(g·id) → P(ǧ)(τ(a)(id)).
                    let nat = tau.naturality[g].at(&ida)?.clone();
                    let inv = cod
                        .isos()
                        .into_iter()
                        .find(|(x, _)| x == &nat)
                        .map(|(_, i)| i)
                        .ok_or_else(|| KernelError::ConstructionFailed(
                            "yoneda_check: naturality component not invertible".into(),
                        ))?;
                    Ok((g.clone(), cod.comp(&step1, &inv)?.clone()))
                })
                .collect::<Result<_>>()?;
            component.insert(c.clone(), NatTrans { components: comps });
        }
        let m = CatValuedModification { component };
        if !check_cat_valued_modification(&op, &ya, p, tau, &gz, &m)? {
            unit_ok = false;
        }
        // Componentwise invertibility makes the modification invertible.
        for (c, n) in &m.component {
            let cod = p.ob(c)?;
            if n.components.values().any(|x| !cod.is_iso(x)) {
                unit_ok = false;
            }
        }
    }

    // F is essentially bijective on objects exactly when the two families
    // verify, and the counts agree.
    let passed = counit_ok && unit_ok && taus.len() == pa.objects.len();
    Ok(YonedaReport {
        pstrans_count: taus.len(),
        target_objects: pa.objects.len(),
        passed,
    })
}

/// The full image of a pseudofunctor: the full subbicategory of the target
/// on the objects hit by F0. Mere existence collapses to decidable
/// membership at this finite level.
pub fn full_image(
    tgt: &BicatPresentation,
    f: &PseudofunctorData,
) -> Result<BicatPresentation> {
    let image: std::collections::BTreeSet<CellId> = f.f0.values().cloned().collect();
    let d = fullsub_disp(tgt, &|c| image.contains(c))?;
    total_bicat(&d)
}

/// The restriction of F to its full image: the same data retargeted at the
/// pair tokens of the image presentation.
pub fn restrict(
    tgt: &BicatPresentation,
    f: &PseudofunctorData,
) -> Result<PseudofunctorData> {
    let image: std::collections::BTreeSet<CellId> = f.f0.values().cloned().collect();
    let _ = tgt;
    let retag = |c: &CellId| pair_token(c, c);
    let mut out = PseudofunctorData::default();
    for (a, fa) in &f.f0 {
        if !image.contains(fa) {
            return Err(KernelError::ConstructionFailed(format!(
                "restrict: image object {fa} missing"
            )));
        }
        out.f0.insert(a.clone(), retag(fa));
    }
    for (k, fk) in &f.f1 {
        out.f1.insert(k.clone(), retag(fk));
    }
    for (t, ft) in &f.f2 {
        out.f2.insert(t.clone(), retag(ft));
    }
    for (a, g) in &f.identitor {
        out.identitor.insert(a.clone(), retag(g));
    }
    for (kl, dl) in &f.compositor {
        out.compositor.insert(kl.clone(), retag(dl));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicat::{discrete_bicat, monoid_delooping, terminal_bicat, MonoidTable};
    use crate::psfun::{check_psfunctor, id_psfunctor, is_essentially_surjective};
    use crate::univalence::check_univalent;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn representable_on_terminal_is_constant_unit() {
        let one = terminal_bicat();
        let star = CellId::from("*");
        let y = representable0(&one, &star, &b()).unwrap();
        let op = op_bicat(&one).unwrap();
        assert!(check_cat_valued(&op, &y).unwrap());
        assert_eq!(y.on_ob[&star].objects.len(), 1);
    }

    #[test]
    fn representable_on_bool_delooping() {
        let m = monoid_delooping(&MonoidTable::bool_and()).unwrap();
        let star = CellId::from("*");
        let y = representable0(&m, &star, &b()).unwrap();
        let op = op_bicat(&m).unwrap();
        assert!(check_cat_valued(&op, &y).unwrap());
        // * maps to the discrete 2-object hom category; the 1-cell 0 acts by
        // multiplication by 0.
        assert_eq!(y.on_ob[&star].objects.len(), 2);
        let zero = CellId::from("0");
        assert_eq!(y.on_one[&zero].ob[&CellId::from("1")], zero);
    }

    #[test]
    fn representable1_and_2_validate() {
        let m = monoid_delooping(&MonoidTable::bool_and()).unwrap();
        let op = op_bicat(&m).unwrap();
        let star = CellId::from("*");
        let y = representable0(&m, &star, &b()).unwrap();
        for f in m.one_cells.keys() {
            let tau = representable1(&m, &y, &y, f).unwrap();
            assert!(check_cat_valued_pstrans(&op, &y, &y, &tau).unwrap());
        }
        for t in m.two_cells.keys() {
            let f = m.two_cell(t).unwrap().src.clone();
            let tau = representable1(&m, &y, &y, &f).unwrap();
            let md = representable2(&m, &y, t).unwrap();
            assert!(check_cat_valued_modification(&op, &y, &y, &tau, &tau, &md).unwrap());
            // Over an identity 2-cell the representable modification is the
            // identity modification.
            if m.id2.values().any(|i| i == t) {
                for (c, n) in &md.component {
                    let cat = y.ob(c).unwrap();
                    for (h, comp) in &n.components {
                        let expected = cat.id_of(&tau.component[c].ob[h]).unwrap();
                        assert_eq!(comp, expected);
                    }
                }
            }
        }
    }

    #[test]
    fn yoneda_on_terminal() {
        let one = terminal_bicat();
        let star = CellId::from("*");
        let y = representable0(&one, &star, &b()).unwrap();
        let report = yoneda_check(&one, &y, &star, &b()).unwrap();
        assert!(report.passed);
        assert_eq!(report.pstrans_count, 1);
        assert_eq!(report.target_objects, 1);
    }

    #[test]
    fn representable1_is_injective_on_bool_delooping() {
        // The hom-functor of the embedding is injective on 1-cells: distinct
        // 1-cells give distinct pseudotransformations, and the count matches
        // the hom-category, which is the local-equivalence shadow.
        let m = monoid_delooping(&MonoidTable::bool_and()).unwrap();
        let star = CellId::from("*");
        let y = representable0(&m, &star, &b()).unwrap();
        let images: Vec<_> = m
            .one_cells
            .keys()
            .map(|f| representable1(&m, &y, &y, f).unwrap())
            .collect();
        for (i, x) in images.iter().enumerate() {
            for (j, z) in images.iter().enumerate() {
                assert_eq!(i == j, x == z);
            }
        }
        let op = op_bicat(&m).unwrap();
        let all = enumerate_cat_valued_pstrans(&op, &y, &y, &b()).unwrap();
        assert_eq!(all.len(), m.one_cells.len());
    }

    #[test]
    fn yoneda_on_bool_delooping() {
        let m = monoid_delooping(&MonoidTable::bool_and()).unwrap();
        let star = CellId::from("*");
        let y = representable0(&m, &star, &b()).unwrap();
        let report = yoneda_check(&m, &y, &star, &b()).unwrap();
        assert!(report.passed);
        assert_eq!(report.pstrans_count, 2);
        assert_eq!(report.target_objects, 2);
    }

    #[test]
    fn full_image_of_identity_is_whole() {
        let p = discrete_bicat(2);
        let id = id_psfunctor(&p).unwrap();
        let img = full_image(&p, &id).unwrap();
        assert_eq!(img.objects.len(), 2);
        assert!(crate::bicat::check_laws(&img, &b()).unwrap().passed());
    }

    #[test]
    fn full_image_of_inclusion_and_univalence() {
        // discrete(1) ↪ discrete(2): the image is a single-object discrete
        // presentation, and the restriction is essentially surjective.
        let d2 = discrete_bicat(2);
        let mut inc = PseudofunctorData::default();
        inc.f0.insert(CellId::from("a0"), CellId::from("a0"));
        inc.f1.insert(CellId::from("i0"), CellId::from("i0"));
        inc.f2.insert(CellId::from("e0"), CellId::from("e0"));
        inc.identitor.insert(CellId::from("a0"), CellId::from("e0"));
        inc.compositor
            .insert((CellId::from("i0"), CellId::from("i0")), CellId::from("e0"));
        let img = full_image(&d2, &inc).unwrap();
        assert_eq!(img.objects.len(), 1);
        assert!(check_univalent(&img, &b()).unwrap().passed());

        let d1 = discrete_bicat(1);
        let restricted = restrict(&d2, &inc).unwrap();
        assert!(check_psfunctor(&d1, &img, &restricted).unwrap().passed());
        assert!(is_essentially_surjective(&d1, &img, &restricted, &b()).unwrap());
    }
}
