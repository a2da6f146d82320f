//! Finite categories, functors, natural transformations, and presheaves.
//!
//! These are the semantic targets for hom-categories, representables,
//! Kleisli triples, and the CwF layers. Composition is written
//! diagrammatically throughout: `comp(f, g)` is "f then g".

mod fragment;
mod kleisli;
mod pgrpd;
mod presheaf;

pub use fragment::{fincat_fragment_bicat, FragmentBicat};
pub use pgrpd::pointed_groupoid_disp;
pub use presheaf::{
    check_cwf_representation, cwf_bicat, enumerate_nat_trans_presheaf, enumerate_presheaves,
    presheaf_disp, ComprehensionWitness, CwFData, CwfBicat, Presheaf, PresheafDisp, PshNatTrans,
};
pub use kleisli::{
    enumerate_kleisli_triples, kleisli_bicat, kleisli_disp, kleisli_to_monad, monad_kleisli_biequiv,
    monad_to_kleisli, KleisliDisp, KleisliTriple, MonadKleisliBiequiv,
};

use crate::cell::CellId;
use crate::error::{KernelError, Result};
use crate::report::{LawReport, Violation};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Source and target of a morphism.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MorShape {
    pub src: CellId,
    pub tgt: CellId,
}

/// A finite category as identifier sets plus total tables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct FiniteCategory {
    pub objects: BTreeSet<CellId>,
    pub morphisms: BTreeMap<CellId, MorShape>,
    /// object → identity morphism
    pub id: BTreeMap<CellId, CellId>,
    /// composable (f, g) → f·g
    #[serde(with = "crate::serde_keys::key2")]
    pub comp: BTreeMap<(CellId, CellId), CellId>,
}

impl FiniteCategory {
    pub fn mor(&self, f: &CellId) -> Result<&MorShape> {
        self.morphisms
            .get(f)
            .ok_or_else(|| KernelError::DanglingReference {
                context: "morphisms".into(),
                token: f.clone(),
            })
    }

    pub fn id_of(&self, a: &CellId) -> Result<&CellId> {
        self.id.get(a).ok_or_else(|| KernelError::DanglingReference {
            context: "id".into(),
            token: a.clone(),
        })
    }

    pub fn comp(&self, f: &CellId, g: &CellId) -> Result<&CellId> {
        self.comp
            .get(&(f.clone(), g.clone()))
            .ok_or_else(|| KernelError::DanglingReference {
                context: format!("comp({f},{g})"),
                token: f.clone(),
            })
    }

    pub fn hom(&self, a: &CellId, b: &CellId) -> Vec<CellId> {
        self.morphisms
            .iter()
            .filter(|(_, s)| &s.src == a && &s.tgt == b)
            .map(|(t, _)| t.clone())
            .collect()
    }

    /// Totality, typing, and the category axioms as table equalities.
    pub fn validate(&self) -> LawReport {
        let mut v = Vec::new();
        for (f, s) in &self.morphisms {
            if !self.objects.contains(&s.src) || !self.objects.contains(&s.tgt) {
                v.push(Violation::new(
                    "dangling:morphisms",
                    vec![f.clone()],
                    f.to_string(),
                    "unknown endpoint",
                ));
            }
        }
        for a in &self.objects {
            match self.id.get(a) {
                None => v.push(Violation::new(
                    "totality:id",
                    vec![a.clone()],
                    "missing",
                    "",
                )),
                Some(i) => {
                    if self
                        .morphisms
                        .get(i)
                        .map(|s| &s.src != a || &s.tgt != a)
                        .unwrap_or(true)
                    {
                        v.push(Violation::new(
                            "typing:id",
                            vec![a.clone()],
                            i.to_string(),
                            format!("morphism {a} → {a}"),
                        ));
                    }
                }
            }
        }
        for (f, fs) in &self.morphisms {
            for (g, gs) in &self.morphisms {
                if fs.tgt != gs.src {
                    continue;
                }
                match self.comp.get(&(f.clone(), g.clone())) {
                    None => v.push(Violation::new(
                        "totality:comp",
                        vec![f.clone(), g.clone()],
                        "missing",
                        "",
                    )),
                    Some(fg) => {
                        if self
                            .morphisms
                            .get(fg)
                            .map(|s| s.src != fs.src || s.tgt != gs.tgt)
                            .unwrap_or(true)
                        {
                            v.push(Violation::new(
                                "typing:comp",
                                vec![f.clone(), g.clone()],
                                fg.to_string(),
                                format!("morphism {} → {}", fs.src, gs.tgt),
                            ));
                        }
                    }
                }
            }
        }
        if !v.is_empty() {
            return LawReport::from_violations(v);
        }
        // Category axioms.
        for (f, fs) in &self.morphisms {
            let li = self.comp.get(&(self.id[&fs.src].clone(), f.clone()));
            if li != Some(f) {
                v.push(Violation::new(
                    "cat:left-identity",
                    vec![f.clone()],
                    li.map(|c| c.to_string()).unwrap_or_default(),
                    f.to_string(),
                ));
            }
            let ri = self.comp.get(&(f.clone(), self.id[&fs.tgt].clone()));
            if ri != Some(f) {
                v.push(Violation::new(
                    "cat:right-identity",
                    vec![f.clone()],
                    ri.map(|c| c.to_string()).unwrap_or_default(),
                    f.to_string(),
                ));
            }
        }
        for (f, fs) in &self.morphisms {
            for (g, gs) in &self.morphisms {
                if fs.tgt != gs.src {
                    continue;
                }
                for (h, hs) in &self.morphisms {
                    if gs.tgt != hs.src {
                        continue;
                    }
                    let lhs = self
                        .comp
                        .get(&(f.clone(), g.clone()))
                        .and_then(|fg| self.comp.get(&(fg.clone(), h.clone())));
                    let rhs = self
                        .comp
                        .get(&(g.clone(), h.clone()))
                        .and_then(|gh| self.comp.get(&(f.clone(), gh.clone())));
                    if lhs != rhs || lhs.is_none() {
                        v.push(Violation::new(
                            "cat:associativity",
                            vec![f.clone(), g.clone(), h.clone()],
                            lhs.map(|c| c.to_string()).unwrap_or_default(),
                            rhs.map(|c| c.to_string()).unwrap_or_default(),
                        ));
                    }
                }
            }
        }
        LawReport::from_violations(v)
    }

    /// Morphisms with a two-sided inverse, paired with the inverse.
    pub fn isos(&self) -> Vec<(CellId, CellId)> {
        let mut out = Vec::new();
        for (f, fs) in &self.morphisms {
            for (g, gs) in &self.morphisms {
                if fs.tgt != gs.src || fs.src != gs.tgt {
                    continue;
                }
                let fg = self.comp.get(&(f.clone(), g.clone()));
                let gf = self.comp.get(&(g.clone(), f.clone()));
                if fg == self.id.get(&fs.src) && gf == self.id.get(&fs.tgt) {
                    out.push((f.clone(), g.clone()));
                }
            }
        }
        out
    }

    pub fn is_iso(&self, f: &CellId) -> bool {
        self.isos().iter().any(|(x, _)| x == f)
    }

    /// A finite category models a univalent category exactly when every
    /// isomorphism is an identity.
    pub fn is_gaunt(&self) -> bool {
        self.isos().iter().all(|(f, _)| self.id.values().any(|i| i == f))
    }

    /// Every morphism invertible.
    pub fn is_groupoid(&self) -> bool {
        let isos: BTreeSet<_> = self.isos().into_iter().map(|(f, _)| f).collect();
        self.morphisms.keys().all(|f| isos.contains(f))
    }

    /// The terminal category: one object, one morphism.
    pub fn terminal() -> Self {
        let mut c = FiniteCategory::default();
        let star = CellId::from("*");
        let i = CellId::from("id*");
        c.objects.insert(star.clone());
        c.morphisms.insert(
            i.clone(),
            MorShape {
                src: star.clone(),
                tgt: star.clone(),
            },
        );
        c.id.insert(star, i.clone());
        c.comp.insert((i.clone(), i.clone()), i);
        c
    }

    /// The discrete category on `n` objects.
    pub fn discrete(n: usize) -> Self {
        let mut c = FiniteCategory::default();
        for k in 0..n {
            let o = CellId::from(format!("o{k}"));
            let i = CellId::from(format!("id{k}"));
            c.objects.insert(o.clone());
            c.morphisms.insert(
                i.clone(),
                MorShape {
                    src: o.clone(),
                    tgt: o.clone(),
                },
            );
            c.id.insert(o, i.clone());
            c.comp.insert((i.clone(), i.clone()), i);
        }
        c
    }

    /// The poset 2 category: objects 0 ≤ 1.
    pub fn poset2() -> Self {
        let mut c = FiniteCategory::default();
        let (o0, o1) = (CellId::from("0"), CellId::from("1"));
        let (i0, i1, le) = (CellId::from("id0"), CellId::from("id1"), CellId::from("le"));
        c.objects.extend([o0.clone(), o1.clone()]);
        c.morphisms.insert(i0.clone(), MorShape { src: o0.clone(), tgt: o0.clone() });
        c.morphisms.insert(i1.clone(), MorShape { src: o1.clone(), tgt: o1.clone() });
        c.morphisms.insert(le.clone(), MorShape { src: o0.clone(), tgt: o1.clone() });
        c.id.insert(o0, i0.clone());
        c.id.insert(o1, i1.clone());
        c.comp.insert((i0.clone(), i0.clone()), i0.clone());
        c.comp.insert((i1.clone(), i1.clone()), i1.clone());
        c.comp.insert((i0.clone(), le.clone()), le.clone());
        c.comp.insert((le.clone(), i1.clone()), le.clone());
        c
    }

    /// The chaotic (indiscrete) category on `n` objects: exactly one
    /// morphism between every ordered pair.
    pub fn chaotic(n: usize) -> Self {
        let mut c = FiniteCategory::default();
        let obj = |k: usize| CellId::from(format!("o{k}"));
        let mor = |j: usize, k: usize| CellId::from(format!("m{j}{k}"));
        for k in 0..n {
            c.objects.insert(obj(k));
        }
        for j in 0..n {
            for k in 0..n {
                c.morphisms.insert(
                    mor(j, k),
                    MorShape {
                        src: obj(j),
                        tgt: obj(k),
                    },
                );
            }
        }
        for k in 0..n {
            c.id.insert(obj(k), mor(k, k));
        }
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    c.comp.insert((mor(j, k), mor(k, l)), mor(j, l));
                }
            }
        }
        c
    }
}

/// A functor between finite categories, as object and morphism maps.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Functor {
    pub ob: BTreeMap<CellId, CellId>,
    pub mor: BTreeMap<CellId, CellId>,
}

impl Functor {
    pub fn identity(c: &FiniteCategory) -> Self {
        Functor {
            ob: c.objects.iter().map(|o| (o.clone(), o.clone())).collect(),
            mor: c.morphisms.keys().map(|f| (f.clone(), f.clone())).collect(),
        }
    }

    pub fn compose(&self, other: &Functor) -> Result<Functor> {
        let ob = self
            .ob
            .iter()
            .map(|(a, b)| {
                other
                    .ob
                    .get(b)
                    .map(|c| (a.clone(), c.clone()))
                    .ok_or_else(|| KernelError::TypeMismatch(format!("functor composition at {a}")))
            })
            .collect::<Result<_>>()?;
        let mor = self
            .mor
            .iter()
            .map(|(f, g)| {
                other
                    .mor
                    .get(g)
                    .map(|h| (f.clone(), h.clone()))
                    .ok_or_else(|| KernelError::TypeMismatch(format!("functor composition at {f}")))
            })
            .collect::<Result<_>>()?;
        Ok(Functor { ob, mor })
    }

    pub fn ob_at(&self, a: &CellId) -> Result<&CellId> {
        self.ob.get(a).ok_or_else(|| KernelError::DanglingReference {
            context: "functor.ob".into(),
            token: a.clone(),
        })
    }

    pub fn mor_at(&self, f: &CellId) -> Result<&CellId> {
        self.mor.get(f).ok_or_else(|| KernelError::DanglingReference {
            context: "functor.mor".into(),
            token: f.clone(),
        })
    }

    /// Functor laws over explicit source and target categories.
    pub fn validate(&self, src: &FiniteCategory, tgt: &FiniteCategory) -> LawReport {
        let mut v = Vec::new();
        for a in &src.objects {
            match self.ob.get(a) {
                Some(b) if tgt.objects.contains(b) => {}
                _ => v.push(Violation::new(
                    "functor:ob",
                    vec![a.clone()],
                    "missing or dangling",
                    "",
                )),
            }
        }
        for (f, fs) in &src.morphisms {
            match self.mor.get(f) {
                Some(g) => {
                    let ok = tgt.morphisms.get(g).map(|gs| {
                        Some(&gs.src) == self.ob.get(&fs.src) && Some(&gs.tgt) == self.ob.get(&fs.tgt)
                    });
                    if ok != Some(true) {
                        v.push(Violation::new(
                            "functor:mor-typing",
                            vec![f.clone()],
                            g.to_string(),
                            "image morphism with mapped endpoints",
                        ));
                    }
                }
                None => v.push(Violation::new(
                    "functor:mor",
                    vec![f.clone()],
                    "missing",
                    "",
                )),
            }
        }
        if !v.is_empty() {
            return LawReport::from_violations(v);
        }
        for (a, i) in &src.id {
            let lhs = self.mor.get(i);
            let rhs = self.ob.get(a).and_then(|b| tgt.id.get(b));
            if lhs != rhs {
                v.push(Violation::new(
                    "functor:id",
                    vec![a.clone()],
                    lhs.map(|c| c.to_string()).unwrap_or_default(),
                    rhs.map(|c| c.to_string()).unwrap_or_default(),
                ));
            }
        }
        for ((f, g), fg) in &src.comp {
            let lhs = self.mor.get(fg);
            let rhs = self
                .mor
                .get(f)
                .zip(self.mor.get(g))
                .and_then(|(mf, mg)| tgt.comp.get(&(mf.clone(), mg.clone())));
            if lhs != rhs {
                v.push(Violation::new(
                    "functor:comp",
                    vec![f.clone(), g.clone()],
                    lhs.map(|c| c.to_string()).unwrap_or_default(),
                    rhs.map(|c| c.to_string()).unwrap_or_default(),
                ));
            }
        }
        LawReport::from_violations(v)
    }
}

/// A natural transformation as its component family.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NatTrans {
    pub components: BTreeMap<CellId, CellId>,
}

impl NatTrans {
    pub fn identity(src_cat: &FiniteCategory, f: &Functor, tgt: &FiniteCategory) -> Result<Self> {
        let components = src_cat
            .objects
            .iter()
            .map(|a| {
                let fa = f.ob_at(a)?;
                Ok((a.clone(), tgt.id_of(fa)?.clone()))
            })
            .collect::<Result<_>>()?;
        Ok(NatTrans { components })
    }

    pub fn at(&self, a: &CellId) -> Result<&CellId> {
        self.components
            .get(a)
            .ok_or_else(|| KernelError::DanglingReference {
                context: "nattrans.component".into(),
                token: a.clone(),
            })
    }

    /// Vertical composite, componentwise in the target category.
    pub fn vcomp(&self, other: &NatTrans, tgt: &FiniteCategory) -> Result<NatTrans> {
        let components = self
            .components
            .iter()
            .map(|(a, f)| {
                let g = other.at(a)?;
                Ok((a.clone(), tgt.comp(f, g)?.clone()))
            })
            .collect::<Result<_>>()?;
        Ok(NatTrans { components })
    }

    /// Naturality squares for components from `f` to `g`.
    pub fn validate(
        &self,
        src_cat: &FiniteCategory,
        tgt_cat: &FiniteCategory,
        f: &Functor,
        g: &Functor,
    ) -> LawReport {
        let mut v = Vec::new();
        for a in &src_cat.objects {
            let ok = (|| -> Result<bool> {
                let c = self.at(a)?;
                let shape = tgt_cat.mor(c)?;
                Ok(&shape.src == f.ob_at(a)? && &shape.tgt == g.ob_at(a)?)
            })();
            if !matches!(ok, Ok(true)) {
                v.push(Violation::new(
                    "nattrans:component",
                    vec![a.clone()],
                    self.components
                        .get(a)
                        .map(|c| c.to_string())
                        .unwrap_or_else(|| "missing".into()),
                    "morphism F(a) → G(a)",
                ));
            }
        }
        if !v.is_empty() {
            return LawReport::from_violations(v);
        }
        for (m, ms) in &src_cat.morphisms {
            let lhs = (|| -> Result<CellId> {
                let fm = f.mor_at(m)?;
                let c = self.at(&ms.tgt)?;
                Ok(tgt_cat.comp(fm, c)?.clone())
            })();
            let rhs = (|| -> Result<CellId> {
                let c = self.at(&ms.src)?;
                let gm = g.mor_at(m)?;
                Ok(tgt_cat.comp(c, gm)?.clone())
            })();
            if !matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b) {
                v.push(Violation::new(
                    "nattrans:naturality",
                    vec![m.clone()],
                    lhs.map(|c| c.to_string()).unwrap_or_else(|e| e.to_string()),
                    rhs.map(|c| c.to_string()).unwrap_or_else(|e| e.to_string()),
                ));
            }
        }
        LawReport::from_violations(v)
    }
}

/// All functors from `src` to `tgt`, in deterministic order.
pub fn enumerate_functors(src: &FiniteCategory, tgt: &FiniteCategory) -> Vec<Functor> {
    let objects: Vec<_> = src.objects.iter().cloned().collect();
    let morphisms: Vec<_> = src.morphisms.keys().cloned().collect();
    let mut out = Vec::new();
    let mut ob_choices: Vec<Vec<CellId>> = Vec::new();
    for _ in &objects {
        ob_choices.push(tgt.objects.iter().cloned().collect());
    }
    for ob_pick in cartesian(&ob_choices) {
        let ob: BTreeMap<_, _> = objects.iter().cloned().zip(ob_pick.iter().cloned()).collect();
        // Candidate images per morphism given the endpoint assignment.
        let mor_choices: Vec<Vec<CellId>> = morphisms
            .iter()
            .map(|m| {
                let s = &src.morphisms[m];
                tgt.hom(&ob[&s.src], &ob[&s.tgt])
            })
            .collect();
        if mor_choices.iter().any(|c| c.is_empty()) {
            continue;
        }
        for mor_pick in cartesian(&mor_choices) {
            let mor: BTreeMap<_, _> = morphisms
                .iter()
                .cloned()
                .zip(mor_pick.iter().cloned())
                .collect();
            let f = Functor { ob: ob.clone(), mor };
            if f.validate(src, tgt).passed() {
                out.push(f);
            }
        }
    }
    out
}

/// All natural transformations between two parallel functors.
pub fn enumerate_nat_trans(
    src_cat: &FiniteCategory,
    tgt_cat: &FiniteCategory,
    f: &Functor,
    g: &Functor,
) -> Vec<NatTrans> {
    let objects: Vec<_> = src_cat.objects.iter().cloned().collect();
    let choices: Vec<Vec<CellId>> = objects
        .iter()
        .map(|a| tgt_cat.hom(&f.ob[a], &g.ob[a]))
        .collect();
    if choices.iter().any(|c| c.is_empty()) {
        return Vec::new();
    }
    let mut out = Vec::new();
    for pick in cartesian(&choices) {
        let n = NatTrans {
            components: objects.iter().cloned().zip(pick.iter().cloned()).collect(),
        };
        if n.validate(src_cat, tgt_cat, f, g).passed() {
            out.push(n);
        }
    }
    out
}

/// Equivalence of finite categories, decided by fully-faithful plus
/// essentially-surjective counting.
pub fn is_equivalence_of_categories(
    src: &FiniteCategory,
    tgt: &FiniteCategory,
    f: &Functor,
) -> bool {
    // Fully faithful: hom maps are bijections.
    for a in &src.objects {
        for b in &src.objects {
            let dom = src.hom(a, b);
            let images: BTreeSet<_> = dom.iter().map(|m| f.mor[m].clone()).collect();
            if images.len() != dom.len() {
                return false;
            }
            let cod = tgt.hom(&f.ob[a], &f.ob[b]);
            if images.len() != cod.len() {
                return false;
            }
        }
    }
    // Essentially surjective: every target object isomorphic to an image.
    let isos = tgt.isos();
    for d in &tgt.objects {
        let hit = src.objects.iter().any(|a| {
            let fa = &f.ob[a];
            fa == d || isos.iter().any(|(m, _)| {
                let s = &tgt.morphisms[m];
                &s.src == fa && &s.tgt == d
            })
        });
        if !hit {
            return false;
        }
    }
    true
}

/// Cartesian product of choice lists, in lexicographic order.
pub fn cartesian<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for c in choices {
        let mut next = Vec::with_capacity(out.len() * c.len().max(1));
        for partial in &out {
            for x in c {
                let mut row = partial.clone();
                row.push(x.clone());
                next.push(row);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset2_validates_and_is_gaunt() {
        let c = FiniteCategory::poset2();
        assert!(c.validate().passed());
        assert!(c.is_gaunt());
        assert!(!c.is_groupoid());
    }

    #[test]
    fn chaotic2_is_groupoid_not_gaunt() {
        let c = FiniteCategory::chaotic(2);
        assert!(c.validate().passed());
        assert!(c.is_groupoid());
        assert!(!c.is_gaunt());
    }

    #[test]
    fn poset2_has_three_monotone_endofunctors() {
        let c = FiniteCategory::poset2();
        let fns = enumerate_functors(&c, &c);
        assert_eq!(fns.len(), 3);
    }

    #[test]
    fn nat_trans_on_poset2_is_pointwise_order() {
        let c = FiniteCategory::poset2();
        let fns = enumerate_functors(&c, &c);
        let mut total = 0;
        for f in &fns {
            for g in &fns {
                total += enumerate_nat_trans(&c, &c, f, g).len();
            }
        }
        // const0 ≤ id ≤ const1 pointwise: 6 comparable ordered pairs.
        assert_eq!(total, 6);
    }

    #[test]
    fn identity_functor_is_equivalence() {
        let c = FiniteCategory::poset2();
        let f = Functor::identity(&c);
        assert!(f.validate(&c, &c).passed());
        assert!(is_equivalence_of_categories(&c, &c, &f));
    }
}
