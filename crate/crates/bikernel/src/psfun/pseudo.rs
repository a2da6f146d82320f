//! The layered construction of the finite bicategory Pseudo(B,C).
//!
//! The build follows the displayed stratification: a base bicategory of
//! object maps, a displayed layer of 1-cell actions, three propositional
//! layers over its total (2-cell actions, identitors, compositors), the
//! product of those three, its total, and the full subbicategory on the
//! pseudofunctor laws. Direct enumeration exists separately as the oracle.

use super::{check_psfunctor, ModificationData, PseudofunctorData, PstransData};
use crate::bicat::{BicatPresentation, Inv2Cell, OneCell, TwoCell};
use crate::budget::Budget;
use crate::cell::{compose_token, glue, pair_token, CellId};
use crate::display::{
    fill_prop_two_cell_tables, fullsub_disp, prod_disp, total_bicat, ChaoticData,
    DispBicatPresentation, DispObj, DispOne, DispTwo,
};
use crate::error::{KernelError, Result};
use crate::fincat::cartesian;
use std::collections::BTreeMap;

/// A family token: the images of an indexed family in index order.
fn fam(parts: &[&CellId]) -> CellId {
    CellId(format!("[{}]", compose_token(',', parts.iter().copied()).0))
}

/// The Pseudo(B,C) presentation together with the semantic bookkeeping that
/// identifies its tiers with pseudofunctors, pseudotransformations, and
/// modifications.
#[derive(Debug, Clone)]
pub struct PseudoBicat {
    pub presentation: BicatPresentation,
    pub objects: BTreeMap<CellId, PseudofunctorData>,
    pub one_cells: BTreeMap<CellId, PstransData>,
    pub two_cells: BTreeMap<CellId, ModificationData>,
}

struct Tower<'a> {
    b: &'a BicatPresentation,
    c: &'a BicatPresentation,
    budget: &'a Budget,
    b_objects: Vec<CellId>,
    b_ones: Vec<CellId>,
    b_twos: Vec<CellId>,
    b_pairs: Vec<(CellId, CellId)>,
    // token → semantic data, per layer
    base_obj: BTreeMap<CellId, BTreeMap<CellId, CellId>>,
    base_one: BTreeMap<CellId, BTreeMap<CellId, CellId>>,
    base_two: BTreeMap<CellId, BTreeMap<CellId, CellId>>,
    map1_obj: BTreeMap<CellId, BTreeMap<CellId, CellId>>,
    map1_one: BTreeMap<CellId, BTreeMap<CellId, Inv2Cell>>,
}

impl<'a> Tower<'a> {
    fn new(b: &'a BicatPresentation, c: &'a BicatPresentation, budget: &'a Budget) -> Self {
        Tower {
            b,
            c,
            budget,
            b_objects: b.objects.iter().cloned().collect(),
            b_ones: b.one_cells.keys().cloned().collect(),
            b_twos: b.two_cells.keys().cloned().collect(),
            b_pairs: b.composable_pairs(),
            base_obj: BTreeMap::new(),
            base_one: BTreeMap::new(),
            base_two: BTreeMap::new(),
            map1_obj: BTreeMap::new(),
            map1_one: BTreeMap::new(),
        }
    }

    /// Base(B,C): objects are maps B₀ → C₀; 1-cells and 2-cells are object-
    /// indexed families of C 1-cells and 2-cells; operations are pointwise.
    fn base(&mut self) -> Result<BicatPresentation> {
        let mut p = BicatPresentation::default();
        let obj_choices: Vec<Vec<CellId>> = self
            .b_objects
            .iter()
            .map(|_| self.c.objects.iter().cloned().collect())
            .collect();
        for pick in cartesian(&obj_choices) {
            self.budget.charge("pseudo:base", 1)?;
            let refs: Vec<&CellId> = pick.iter().collect();
            let tok = fam(&refs);
            self.base_obj.insert(
                tok.clone(),
                self.b_objects.iter().cloned().zip(pick.iter().cloned()).collect(),
            );
            p.objects.insert(tok);
        }
        let obj_data = self.base_obj.clone();
        for (ftok, f0) in &obj_data {
            for (gtok, g0) in &obj_data {
                let one_choices: Vec<Vec<CellId>> = self
                    .b_objects
                    .iter()
                    .map(|a| self.c.one_cells_between(&f0[a], &g0[a]))
                    .collect();
                if one_choices.iter().any(|ch| ch.is_empty()) && !self.b_objects.is_empty() {
                    continue;
                }
                for pick in cartesian(&one_choices) {
                    self.budget.charge("pseudo:base", 1)?;
                    let refs: Vec<&CellId> = pick.iter().collect();
                    let tok = fam(&refs);
                    self.base_one.insert(
                        tok.clone(),
                        self.b_objects.iter().cloned().zip(pick.iter().cloned()).collect(),
                    );
                    p.one_cells.insert(
                        tok,
                        OneCell {
                            src: ftok.clone(),
                            tgt: gtok.clone(),
                        },
                    );
                }
            }
        }
        let one_data = self.base_one.clone();
        for (etok, e0) in &one_data {
            for (btok, b0) in &one_data {
                if p.one_cells[etok].src != p.one_cells[btok].src
                    || p.one_cells[etok].tgt != p.one_cells[btok].tgt
                {
                    continue;
                }
                let two_choices: Vec<Vec<CellId>> = self
                    .b_objects
                    .iter()
                    .map(|a| self.c.two_cells_between(&e0[a], &b0[a]))
                    .collect();
                if two_choices.iter().any(|ch| ch.is_empty()) && !self.b_objects.is_empty() {
                    continue;
                }
                for pick in cartesian(&two_choices) {
                    self.budget.charge("pseudo:base", 1)?;
                    let refs: Vec<&CellId> = pick.iter().collect();
                    let tok = fam(&refs);
                    self.base_two.insert(
                        tok.clone(),
                        self.b_objects.iter().cloned().zip(pick.iter().cloned()).collect(),
                    );
                    p.two_cells.insert(
                        tok,
                        TwoCell {
                            src: etok.clone(),
                            tgt: btok.clone(),
                        },
                    );
                }
            }
        }

        // Pointwise tables.
        #[allow(clippy::type_complexity)]
        let lift1 = |fams: &BTreeMap<CellId, BTreeMap<CellId, CellId>>,
                     per: &dyn Fn(&BTreeMap<CellId, CellId>) -> Result<Option<Vec<CellId>>>|
         -> Result<BTreeMap<CellId, CellId>> {
            let mut out = BTreeMap::new();
            for (tok, fam_map) in fams {
                if let Some(vals) = per(fam_map)? {
                    let refs: Vec<&CellId> = vals.iter().collect();
                    out.insert(tok.clone(), fam(&refs));
                }
            }
            Ok(out)
        };
        let objs = &self.b_objects;
        p.id1 = lift1(&self.base_obj, &|f0| {
            let mut vals = Vec::new();
            for a in objs {
                vals.push(self.c.id1(&f0[a])?.clone());
            }
            Ok(Some(vals))
        })?;
        p.id2 = lift1(&self.base_one, &|e0| {
            let mut vals = Vec::new();
            for a in objs {
                vals.push(self.c.id2(&e0[a])?.clone());
            }
            Ok(Some(vals))
        })?;
        p.lunitor = lift1(&self.base_one, &|e0| {
            let mut vals = Vec::new();
            for a in objs {
                vals.push(self.c.lunitor(&e0[a])?.clone());
            }
            Ok(Some(vals))
        })?;
        p.lunitor_inv = lift1(&self.base_one, &|e0| {
            let mut vals = Vec::new();
            for a in objs {
                vals.push(self.c.lunitor_inv(&e0[a])?.clone());
            }
            Ok(Some(vals))
        })?;
        p.runitor = lift1(&self.base_one, &|e0| {
            let mut vals = Vec::new();
            for a in objs {
                vals.push(self.c.runitor(&e0[a])?.clone());
            }
            Ok(Some(vals))
        })?;
        p.runitor_inv = lift1(&self.base_one, &|e0| {
            let mut vals = Vec::new();
            for a in objs {
                vals.push(self.c.runitor_inv(&e0[a])?.clone());
            }
            Ok(Some(vals))
        })?;

        for (t1, c1) in &p.one_cells.clone() {
            for (t2, c2) in &p.one_cells.clone() {
                if c1.tgt != c2.src {
                    continue;
                }
                let e1 = &self.base_one[t1];
                let e2 = &self.base_one[t2];
                let mut vals = Vec::new();
                for a in objs {
                    vals.push(self.c.comp1(&e1[a], &e2[a])?.clone());
                }
                let refs: Vec<&CellId> = vals.iter().collect();
                p.comp1.insert((t1.clone(), t2.clone()), fam(&refs));
            }
        }
        for (t1, c1) in &p.two_cells.clone() {
            for (t2, c2) in &p.two_cells.clone() {
                if c1.tgt != c2.src {
                    continue;
                }
                let g1 = &self.base_two[t1];
                let g2 = &self.base_two[t2];
                let mut vals = Vec::new();
                for a in objs {
                    vals.push(self.c.vcomp(&g1[a], &g2[a])?.clone());
                }
                let refs: Vec<&CellId> = vals.iter().collect();
                p.vcomp.insert((t1.clone(), t2.clone()), fam(&refs));
            }
        }
        for (ft, fc) in &p.one_cells.clone() {
            for (tt, tc) in &p.two_cells.clone() {
                let tsrc = &p.one_cells[&tc.src];
                if fc.tgt == tsrc.src {
                    let e0 = &self.base_one[ft];
                    let g0 = &self.base_two[tt];
                    let mut vals = Vec::new();
                    for a in objs {
                        vals.push(self.c.lwhisker(&e0[a], &g0[a])?.clone());
                    }
                    let refs: Vec<&CellId> = vals.iter().collect();
                    p.lwhisker.insert((ft.clone(), tt.clone()), fam(&refs));
                }
                if tsrc.tgt == fc.src {
                    let e0 = &self.base_one[ft];
                    let g0 = &self.base_two[tt];
                    let mut vals = Vec::new();
                    for a in objs {
                        vals.push(self.c.rwhisker(&g0[a], &e0[a])?.clone());
                    }
                    let refs: Vec<&CellId> = vals.iter().collect();
                    p.rwhisker.insert((tt.clone(), ft.clone()), fam(&refs));
                }
            }
        }
        for (f, g, h) in p.composable_triples() {
            let e1 = &self.base_one[&f];
            let e2 = &self.base_one[&g];
            let e3 = &self.base_one[&h];
            let mut vals = Vec::new();
            let mut vals_i = Vec::new();
            for a in objs {
                vals.push(self.c.lassoc(&e1[a], &e2[a], &e3[a])?.clone());
                vals_i.push(self.c.lassoc_inv(&e1[a], &e2[a], &e3[a])?.clone());
            }
            let refs: Vec<&CellId> = vals.iter().collect();
            let refs_i: Vec<&CellId> = vals_i.iter().collect();
            p.lassoc.insert((f.clone(), g.clone(), h.clone()), fam(&refs));
            p.lassoc_inv
                .insert((f.clone(), g.clone(), h.clone()), fam(&refs_i));
        }
        Ok(p)
    }

    /// Map1D over Base(B,C): displayed objects are 1-cell actions, displayed
    /// 1-cells are invertible naturality families, displayed 2-cells are the
    /// modification equalities.
    fn map1d(&mut self, base: &BicatPresentation) -> Result<DispBicatPresentation> {
        let mut d = DispBicatPresentation {
            base: base.clone(),
            ..Default::default()
        };
        // d0: F1 families, qualified by their F0 token.
        let mut d1_data: BTreeMap<CellId, BTreeMap<CellId, Inv2Cell>> = BTreeMap::new();
        let base_obj = self.base_obj.clone();
        for (f0tok, f0) in &base_obj {
            let choices: Vec<Vec<CellId>> = self
                .b_ones
                .iter()
                .map(|k| {
                    let kc = &self.b.one_cells[k];
                    self.c.one_cells_between(&f0[&kc.src], &f0[&kc.tgt])
                })
                .collect();
            if choices.iter().any(|ch| ch.is_empty()) && !self.b_ones.is_empty() {
                continue;
            }
            for pick in cartesian(&choices) {
                self.budget.charge("pseudo:map1d", 1)?;
                let refs: Vec<&CellId> = pick.iter().collect();
                let tok = glue(&[&fam(&refs), f0tok]);
                self.map1_obj.insert(
                    tok.clone(),
                    self.b_ones.iter().cloned().zip(pick.iter().cloned()).collect(),
                );
                d.d0.insert(tok, DispObj { over: f0tok.clone() });
            }
        }
        // d1: invertible naturality families over each base 1-cell.
        let d0list: Vec<_> = d.d0.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
        for (e0tok, e0) in self.base_one.clone() {
            let (src_f0, tgt_g0) = {
                let oc = base.one_cell(&e0tok)?;
                (oc.src.clone(), oc.tgt.clone())
            };
            for (f1tok, f1c) in &d0list {
                if f1c.over != src_f0 {
                    continue;
                }
                for (g1tok, g1c) in &d0list {
                    if g1c.over != tgt_g0 {
                        continue;
                    }
                    let f1 = &self.map1_obj[f1tok];
                    let g1 = &self.map1_obj[g1tok];
                    let choices: Vec<Vec<Inv2Cell>> = self
                        .b_ones
                        .iter()
                        .map(|k| -> Result<Vec<Inv2Cell>> {
                            let kc = &self.b.one_cells[k];
                            let lhs = self.c.comp1(&e0[&kc.src], &g1[k])?.clone();
                            let rhs = self.c.comp1(&f1[k], &e0[&kc.tgt])?.clone();
                            crate::bicat::invertible_2cells(self.c, &lhs, &rhs)
                        })
                        .collect::<Result<_>>()?;
                    if choices.iter().any(|ch| ch.is_empty()) && !self.b_ones.is_empty() {
                        continue;
                    }
                    for pick in cartesian(&choices) {
                        self.budget.charge("pseudo:map1d", 1)?;
                        let thetas: Vec<&CellId> = pick.iter().map(|c| &c.theta).collect();
                        let tok = glue(&[&fam(&thetas), &e0tok, f1tok, g1tok]);
                        d1_data.insert(
                            tok.clone(),
                            self.b_ones.iter().cloned().zip(pick.iter().cloned()).collect(),
                        );
                        d.d1.insert(
                            tok,
                            DispOne {
                                over: e0tok.clone(),
                                src: f1tok.clone(),
                                tgt: g1tok.clone(),
                            },
                        );
                    }
                }
            }
        }
        self.map1_one = d1_data;

        // d2: the modification equality, fiberwise propositional.
        let d1list: Vec<_> = d.d1.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
        for (gtok, gam) in self.base_two.clone() {
            let (src_e0, tgt_b0) = {
                let tc = base.two_cell(&gtok)?;
                (tc.src.clone(), tc.tgt.clone())
            };
            for (n1tok, n1c) in &d1list {
                if n1c.over != src_e0 {
                    continue;
                }
                for (b1tok, b1c) in &d1list {
                    if b1c.over != tgt_b0 || b1c.src != n1c.src || b1c.tgt != n1c.tgt {
                        continue;
                    }
                    self.budget.charge("pseudo:map1d", 1)?;
                    let n1 = &self.map1_one[n1tok];
                    let b1 = &self.map1_one[b1tok];
                    let f1 = &self.map1_obj[&n1c.src];
                    let g1 = &self.map1_obj[&n1c.tgt];
                    let mut holds = true;
                    for k in &self.b_ones {
                        let kc = &self.b.one_cells[k];
                        // η1(k) • (F1 k ◁ Γ(tgt k)) = (Γ(src k) ▷ G1 k) • β1(k)
                        let lhs = {
                            let w = self.c.lwhisker(&f1[k], &gam[&kc.tgt])?.clone();
                            self.c.vcomp(&n1[k].theta, &w)?.clone()
                        };
                        let rhs = {
                            let w = self.c.rwhisker(&gam[&kc.src], &g1[k])?.clone();
                            self.c.vcomp(&w, &b1[k].theta)?.clone()
                        };
                        if lhs != rhs {
                            holds = false;
                            break;
                        }
                    }
                    if holds {
                        let tok = glue(&[&gtok, n1tok, b1tok]);
                        d.d2.insert(
                            tok,
                            DispTwo {
                                over: gtok.clone(),
                                src: n1tok.clone(),
                                tgt: b1tok.clone(),
                            },
                        );
                    }
                }
            }
        }

        // 1-cell-level tables: identity and composite naturality families.
        for (f1tok, f1c) in &d0list {
            let f1 = self.map1_obj[f1tok].clone();
            let mut cells = BTreeMap::new();
            let mut thetas = Vec::new();
            for k in &self.b_ones {
                let fk = f1[k].clone();
                let lam = self.c.lunitor(&fk)?.clone();
                let rho_i = self.c.runitor_inv(&fk)?.clone();
                let fwd = self.c.vcomp(&lam, &rho_i)?.clone();
                let rho = self.c.runitor(&fk)?.clone();
                let lam_i = self.c.lunitor_inv(&fk)?.clone();
                let bwd = self.c.vcomp(&rho, &lam_i)?.clone();
                thetas.push(fwd.clone());
                cells.insert(k.clone(), Inv2Cell { theta: fwd, theta_inv: bwd });
            }
            let refs: Vec<&CellId> = thetas.iter().collect();
            let id_base = base.id1(&f1c.over)?.clone();
            let tok = glue(&[&fam(&refs), &id_base, f1tok, f1tok]);
            if !d.d1.contains_key(&tok) {
                return Err(KernelError::ConstructionFailed(format!(
                    "identity naturality family missing from Map1D fiber at {f1tok}"
                )));
            }
            d.disp_id1.insert(f1tok.clone(), tok);
        }
        let d1list2: Vec<_> = d.d1.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
        for (n1tok, n1c) in &d1list2 {
            for (m1tok, m1c) in &d1list2 {
                if n1c.tgt != m1c.src {
                    continue;
                }
                let e0tok = &n1c.over;
                let t0tok = &m1c.over;
                if base
                    .one_cells
                    .get(e0tok)
                    .zip(base.one_cells.get(t0tok))
                    .map(|(x, y)| x.tgt != y.src)
                    .unwrap_or(true)
                {
                    continue;
                }
                self.budget.charge("pseudo:map1d", 1)?;
                let e0 = &self.base_one[e0tok];
                let t0 = &self.base_one[t0tok];
                let n1 = &self.map1_one[n1tok];
                let m1 = &self.map1_one[m1tok];
                let f1 = &self.map1_obj[&n1c.src];
                let g1 = &self.map1_obj[&n1c.tgt];
                let h1 = &self.map1_obj[&m1c.tgt];
                let mut cells = BTreeMap::new();
                let mut thetas = Vec::new();
                for k in &self.b_ones {
                    let kc = &self.b.one_cells[k];
                    let (a, bb) = (kc.src.clone(), kc.tgt.clone());
                    let parts: Vec<(CellId, CellId)> = vec![
                        (
                            self.c.lassoc_inv(&e0[&a], &t0[&a], &h1[k])?.clone(),
                            self.c.lassoc(&e0[&a], &t0[&a], &h1[k])?.clone(),
                        ),
                        (
                            self.c.lwhisker(&e0[&a], &m1[k].theta)?.clone(),
                            self.c.lwhisker(&e0[&a], &m1[k].theta_inv)?.clone(),
                        ),
                        (
                            self.c.lassoc(&e0[&a], &g1[k], &t0[&bb])?.clone(),
                            self.c.lassoc_inv(&e0[&a], &g1[k], &t0[&bb])?.clone(),
                        ),
                        (
                            self.c.rwhisker(&n1[k].theta, &t0[&bb])?.clone(),
                            self.c.rwhisker(&n1[k].theta_inv, &t0[&bb])?.clone(),
                        ),
                        (
                            self.c.lassoc_inv(&f1[k], &e0[&bb], &t0[&bb])?.clone(),
                            self.c.lassoc(&f1[k], &e0[&bb], &t0[&bb])?.clone(),
                        ),
                    ];
                    let fwd = self.c.vcomp_chain(parts.iter().map(|(x, _)| x))?;
                    let bwd = {
                        let rev: Vec<_> = parts.iter().rev().map(|(_, y)| y).collect();
                        self.c.vcomp_chain(rev)?
                    };
                    thetas.push(fwd.clone());
                    cells.insert(k.clone(), Inv2Cell { theta: fwd, theta_inv: bwd });
                }
                let refs: Vec<&CellId> = thetas.iter().collect();
                let comp_base = base.comp1(e0tok, t0tok)?.clone();
                let tok = glue(&[&fam(&refs), &comp_base, &n1c.src, &m1c.tgt]);
                if !d.d1.contains_key(&tok) {
                    return Err(KernelError::ConstructionFailed(format!(
                        "composite naturality family missing from Map1D fiber ({n1tok}, {m1tok})"
                    )));
                }
                d.disp_comp1.insert((n1tok.clone(), m1tok.clone()), tok);
            }
        }

        // 2-cell tables: all fibers are propositions, so every mandated
        // entry is the unique inhabitant.
        fill_prop_two_cell_tables(&mut d)?;
        Ok(d)
    }
}

/// Constructs Pseudo(B,C) by the displayed layering and identifies its tiers
/// with directly validated pseudofunctor, pseudotransformation, and
/// modification data.
pub fn build_pseudo_bicat(
    b: &BicatPresentation,
    c: &BicatPresentation,
    budget: &Budget,
) -> Result<PseudoBicat> {
    let mut tower = Tower::new(b, c, budget);
    let base = tower.base()?;
    let map1d = tower.map1d(&base)?;
    let map1 = total_bicat(&map1d)?;

    // The three propositional layers over Map1, all chaotic in their 2-cells.
    // Displayed objects carry the extra data; displayed 1-cells are the
    // unit/composition coherence squares of a pseudotransformation and the
    // naturality square.
    let map1_objs: Vec<CellId> = map1.objects.iter().cloned().collect();
    let decode_obj = |tok: &CellId| -> Result<(CellId, CellId)> {
        // map1 object token is pair_token(F0tok, F1tok-qualified).
        for (f1tok, f1c) in &map1d.d0 {
            if &pair_token(&f1c.over, f1tok) == tok {
                return Ok((f1c.over.clone(), f1tok.clone()));
            }
        }
        Err(KernelError::DanglingReference {
            context: "pseudo: map1 object".into(),
            token: tok.clone(),
        })
    };
    let decode_one = |tok: &CellId| -> Result<(CellId, CellId)> {
        for (n1tok, n1c) in &map1d.d1 {
            if &pair_token(&n1c.over, n1tok) == tok {
                return Ok((n1c.over.clone(), n1tok.clone()));
            }
        }
        Err(KernelError::DanglingReference {
            context: "pseudo: map1 1-cell".into(),
            token: tok.clone(),
        })
    };

    // Identitor layer.
    let mut mapid_data = ChaoticData::default();
    let mut mapid_sem: BTreeMap<CellId, BTreeMap<CellId, CellId>> = BTreeMap::new();
    for obj in &map1_objs {
        let (f0tok, f1tok) = decode_obj(obj)?;
        let f0 = &tower.base_obj[&f0tok];
        let f1 = &tower.map1_obj[&f1tok];
        let choices: Vec<Vec<CellId>> = tower
            .b_objects
            .iter()
            .map(|a| -> Result<Vec<CellId>> {
                let ida = c.id1(&f0[a])?.clone();
                let fid = f1[b.id1(a)?].clone();
                Ok(c.two_cells_between(&ida, &fid))
            })
            .collect::<Result<_>>()?;
        let mut fiber = Vec::new();
        if !(choices.iter().any(|ch| ch.is_empty()) && !tower.b_objects.is_empty()) {
            for pick in cartesian(&choices) {
                budget.charge("pseudo:identitor", 1)?;
                let refs: Vec<&CellId> = pick.iter().collect();
                let tok = glue(&[&fam(&refs), obj]);
                mapid_sem.insert(
                    tok.clone(),
                    tower.b_objects.iter().cloned().zip(pick.iter().cloned()).collect(),
                );
                fiber.push(tok);
            }
        }
        mapid_data.d0.insert(obj.clone(), fiber);
    }

    // Compositor layer.
    let mut mapc_data = ChaoticData::default();
    let mut mapc_sem: BTreeMap<CellId, BTreeMap<(CellId, CellId), CellId>> = BTreeMap::new();
    for obj in &map1_objs {
        let (_f0tok, f1tok) = decode_obj(obj)?;
        let f1 = &tower.map1_obj[&f1tok];
        let choices: Vec<Vec<CellId>> = tower
            .b_pairs
            .iter()
            .map(|(f, g)| -> Result<Vec<CellId>> {
                let lhs = c.comp1(&f1[f], &f1[g])?.clone();
                let rhs = f1[b.comp1(f, g)?].clone();
                Ok(c.two_cells_between(&lhs, &rhs))
            })
            .collect::<Result<_>>()?;
        let mut fiber = Vec::new();
        if !(choices.iter().any(|ch| ch.is_empty()) && !tower.b_pairs.is_empty()) {
            for pick in cartesian(&choices) {
                budget.charge("pseudo:compositor", 1)?;
                let refs: Vec<&CellId> = pick.iter().collect();
                let tok = glue(&[&fam(&refs), obj]);
                mapc_sem.insert(
                    tok.clone(),
                    tower.b_pairs.iter().cloned().zip(pick.iter().cloned()).collect(),
                );
                fiber.push(tok);
            }
        }
        mapc_data.d0.insert(obj.clone(), fiber);
    }

    // 2-cell action layer.
    let mut map2_data = ChaoticData::default();
    let mut map2_sem: BTreeMap<CellId, BTreeMap<CellId, CellId>> = BTreeMap::new();
    for obj in &map1_objs {
        let (_f0tok, f1tok) = decode_obj(obj)?;
        let f1 = &tower.map1_obj[&f1tok];
        let choices: Vec<Vec<CellId>> = tower
            .b_twos
            .iter()
            .map(|t| -> Result<Vec<CellId>> {
                let tc = &b.two_cells[t];
                Ok(c.two_cells_between(&f1[&tc.src], &f1[&tc.tgt]))
            })
            .collect::<Result<_>>()?;
        let mut fiber = Vec::new();
        if !(choices.iter().any(|ch| ch.is_empty()) && !tower.b_twos.is_empty()) {
            for pick in cartesian(&choices) {
                budget.charge("pseudo:map2", 1)?;
                let refs: Vec<&CellId> = pick.iter().collect();
                let tok = glue(&[&fam(&refs), obj]);
                map2_sem.insert(
                    tok.clone(),
                    tower.b_twos.iter().cloned().zip(pick.iter().cloned()).collect(),
                );
                fiber.push(tok);
            }
        }
        map2_data.d0.insert(obj.clone(), fiber);
    }

    // Propositional d1 fibers of the three layers over each Map1 1-cell, and
    // the forced id/comp tables.
    let layer = |data: &mut ChaoticData,
                 holds: &dyn Fn(&CellId, &CellId, &CellId) -> Result<bool>|
     -> Result<()> {
        for one in map1.one_cells.keys() {
            let oc = &map1.one_cells[one];
            for x in &data.d0[&oc.src].clone() {
                for y in &data.d0[&oc.tgt].clone() {
                    budget.charge("pseudo:layer-d1", 1)?;
                    if holds(one, x, y)? {
                        let tok = glue(&[one, x, y]);
                        data.d1
                            .entry((one.clone(), x.clone(), y.clone()))
                            .or_default()
                            .push(tok);
                    }
                }
            }
        }
        // id and comp tables: fibers are propositions, entries forced.
        for (obj, fiber) in &data.d0.clone() {
            for x in fiber {
                let key = (map1.id1(obj)?.clone(), x.clone(), x.clone());
                let tok = data.d1.get(&key).and_then(|f| f.first()).cloned();
                match tok {
                    Some(t) => {
                        data.id_table.insert(x.clone(), t);
                    }
                    None => {
                        return Err(KernelError::ConstructionFailed(format!(
                            "pseudo layer: identity coherence square missing at {x}"
                        )))
                    }
                }
            }
        }
        let d1_entries: Vec<((CellId, CellId, CellId), Vec<CellId>)> =
            data.d1.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        for ((one1, x1, y1), f1s) in &d1_entries {
            for ((one2, x2, y2), f2s) in &d1_entries {
                if y1 != x2 {
                    continue;
                }
                let c1 = &map1.one_cells[one1];
                let c2 = &map1.one_cells[one2];
                if c1.tgt != c2.src {
                    continue;
                }
                let comp = map1.comp1(one1, one2)?.clone();
                let key = (comp, x1.clone(), y2.clone());
                let tok = data.d1.get(&key).and_then(|f| f.first()).cloned();
                match tok {
                    Some(t) => {
                        for a in f1s {
                            for bb in f2s {
                                data.comp_table.insert((a.clone(), bb.clone()), t.clone());
                            }
                        }
                    }
                    None => {
                        return Err(KernelError::ConstructionFailed(
                            "pseudo layer: composite coherence square missing".into(),
                        ))
                    }
                }
            }
        }
        Ok(())
    };

    // Identitor layer 1-cells: the pseudotransformation unit square.
    {
        let tower_ref = &tower;
        let c_ref = c;
        let b_ref = b;
        let mapid_sem_ref = &mapid_sem;
        let decode = &decode_one;
        layer(&mut mapid_data, &|one, x, y| {
            let (e0tok, n1tok) = decode(one)?;
            let e0 = &tower_ref.base_one[&e0tok];
            let n1 = &tower_ref.map1_one[&n1tok];
            let gf = &mapid_sem_ref[x];
            let gg = &mapid_sem_ref[y];
            for a in &tower_ref.b_objects {
                let e0a = e0[a].clone();
                let lhs = {
                    let rho = c_ref.runitor(&e0a)?.clone();
                    let lam_i = c_ref.lunitor_inv(&e0a)?.clone();
                    let w = c_ref.rwhisker(&gf[a], &e0a)?.clone();
                    c_ref.vcomp_chain([&rho, &lam_i, &w])?
                };
                let rhs = {
                    let w = c_ref.lwhisker(&e0a, &gg[a])?.clone();
                    let n = n1[b_ref.id1(a)?].theta.clone();
                    c_ref.vcomp(&w, &n)?.clone()
                };
                if lhs != rhs {
                    return Ok(false);
                }
            }
            Ok(true)
        })?;
    }

    // Compositor layer 1-cells: the pseudotransformation composition square.
    {
        let tower_ref = &tower;
        let c_ref = c;
        let b_ref = b;
        let mapc_sem_ref = &mapc_sem;
        let decode = &decode_one;
        let decode_o = &decode_obj;
        let map1d_ref = &map1d;
        layer(&mut mapc_data, &|one, x, y| {
            let (e0tok, n1tok) = decode(one)?;
            let e0 = &tower_ref.base_one[&e0tok];
            let n1 = &tower_ref.map1_one[&n1tok];
            let n1c = &map1d_ref.d1[&n1tok];
            let (_, f1tok) = decode_o(&pair_token(&map1d_ref.d0[&n1c.src].over, &n1c.src))?;
            let (_, g1tok) = decode_o(&pair_token(&map1d_ref.d0[&n1c.tgt].over, &n1c.tgt))?;
            let f1 = &tower_ref.map1_obj[&f1tok];
            let g1 = &tower_ref.map1_obj[&g1tok];
            let df = &mapc_sem_ref[x];
            let dg = &mapc_sem_ref[y];
            for (k, l) in &tower_ref.b_pairs {
                let kc = &b_ref.one_cells[k];
                let a = kc.src.clone();
                let bb = kc.tgt.clone();
                let cc = b_ref.one_cells[l].tgt.clone();
                let lhs = {
                    let a1 = c_ref.lassoc(&e0[&a], &g1[k], &g1[l])?.clone();
                    let w1 = c_ref.rwhisker(&n1[k].theta, &g1[l])?.clone();
                    let a2 = c_ref.lassoc_inv(&f1[k], &e0[&bb], &g1[l])?.clone();
                    let w2 = c_ref.lwhisker(&f1[k], &n1[l].theta)?.clone();
                    let a3 = c_ref.lassoc(&f1[k], &f1[l], &e0[&cc])?.clone();
                    let w3 = c_ref
                        .rwhisker(&df[&(k.clone(), l.clone())], &e0[&cc])?
                        .clone();
                    c_ref.vcomp_chain([&a1, &w1, &a2, &w2, &a3, &w3])?
                };
                let rhs = {
                    let w = c_ref
                        .lwhisker(&e0[&a], &dg[&(k.clone(), l.clone())])?
                        .clone();
                    let kl = b_ref.comp1(k, l)?;
                    let n = n1[kl].theta.clone();
                    c_ref.vcomp(&w, &n)?.clone()
                };
                if lhs != rhs {
                    return Ok(false);
                }
            }
            Ok(true)
        })?;
    }

    // Map2D d1: the naturality square as an equality.
    {
        let tower_ref = &tower;
        let c_ref = c;
        let b_ref = b;
        let map2_sem_ref = &map2_sem;
        let decode = &decode_one;
        layer(&mut map2_data, &|one, x, y| {
            let (e0tok, n1tok) = decode(one)?;
            let e0 = &tower_ref.base_one[&e0tok];
            let n1 = &tower_ref.map1_one[&n1tok];
            let f2 = &map2_sem_ref[x];
            let g2 = &map2_sem_ref[y];
            for t in &tower_ref.b_twos {
                let tc = &b_ref.two_cells[t];
                let kc = &b_ref.one_cells[&tc.src];
                let lhs = {
                    let w = c_ref.lwhisker(&e0[&kc.src], &g2[t])?.clone();
                    let n = n1[&tc.tgt].theta.clone();
                    c_ref.vcomp(&w, &n)?.clone()
                };
                let rhs = {
                    let n = n1[&tc.src].theta.clone();
                    let w = c_ref.rwhisker(&f2[t], &e0[&kc.tgt])?.clone();
                    c_ref.vcomp(&n, &w)?.clone()
                };
                if lhs != rhs {
                    return Ok(false);
                }
            }
            Ok(true)
        })?;
    }

    let mapid = crate::display::chaotic_disp(&map1, &mapid_data)?;
    let mapc = crate::display::chaotic_disp(&map1, &mapc_data)?;
    let map2 = crate::display::chaotic_disp(&map1, &map2_data)?;
    let raw_disp = prod_disp(&map2, &prod_disp(&mapid, &mapc)?)?;
    let raw = total_bicat(&raw_disp)?;

    // Assemble the semantic pseudofunctor carried by each Raw object, then
    // take the full subbicategory on the pseudofunctor laws. Pair and glue
    // tokens decode exactly because their components are escaped.
    let split_pair = |tok: &CellId, what: &str| -> Result<(CellId, CellId)> {
        let parts = crate::cell::split_composed(crate::cell::PAIR_SEP, tok.as_str());
        if parts.len() != 2 {
            return Err(KernelError::ConstructionFailed(format!(
                "pseudo: {what} token {tok} is not a pair"
            )));
        }
        Ok((parts[0].clone(), parts[1].clone()))
    };
    let split_glue = |tok: &CellId, what: &str| -> Result<(CellId, CellId)> {
        let parts = crate::cell::split_composed(crate::cell::GLUE_SEP, tok.as_str());
        if parts.len() != 2 {
            return Err(KernelError::ConstructionFailed(format!(
                "pseudo: {what} token {tok} is not a glued pair"
            )));
        }
        Ok((parts[0].clone(), parts[1].clone()))
    };
    let mut raw_obj_sem: BTreeMap<CellId, PseudofunctorData> = BTreeMap::new();
    for obj in &raw.objects {
        let (m1obj, prodtok) = split_pair(obj, "raw object")?;
        let (f2tok, rest) = split_glue(&prodtok, "raw object layers")?;
        let (idtok, ctok) = split_glue(&rest, "raw object id/comp layers")?;
        let (f0tok, f1tok) = decode_obj(&m1obj)?;
        raw_obj_sem.insert(
            obj.clone(),
            PseudofunctorData {
                f0: tower.base_obj[&f0tok].clone(),
                f1: tower.map1_obj[&f1tok].clone(),
                f2: map2_sem[&f2tok].clone(),
                identitor: mapid_sem[&idtok].clone(),
                compositor: mapc_sem[&ctok].clone(),
            },
        );
    }
    let raw_obj_sem_ref = &raw_obj_sem;
    let keep: BTreeMap<CellId, bool> = raw
        .objects
        .iter()
        .map(|obj| -> Result<(CellId, bool)> {
            let fd = &raw_obj_sem_ref[obj];
            Ok((obj.clone(), check_psfunctor(b, c, fd)?.passed()))
        })
        .collect::<Result<_>>()?;
    let sub = fullsub_disp(&raw, &|obj| keep.get(obj).copied().unwrap_or(false))?;
    let presentation = total_bicat(&sub)?;

    // Tier bookkeeping for the final bicategory: full-sub total tokens are
    // pair_token(x, x); unwrap and decode layer by layer.
    let mut objects = BTreeMap::new();
    for obj in &presentation.objects {
        let (raw_tok, _) = split_pair(obj, "pseudo object")?;
        let fd = raw_obj_sem
            .get(&raw_tok)
            .ok_or_else(|| KernelError::ConstructionFailed(format!(
                "pseudo: unknown raw object behind {obj}"
            )))?;
        objects.insert(obj.clone(), fd.clone());
    }
    let mut one_cells = BTreeMap::new();
    for one in presentation.one_cells.keys() {
        let (raw1, _) = split_pair(one, "pseudo 1-cell")?;
        let (m1one, _squares) = split_pair(&raw1, "raw 1-cell")?;
        let (base_one_tok, map1d_one_tok) = split_pair(&m1one, "map1 1-cell")?;
        let eta0 = tower.base_one[&base_one_tok].clone();
        let eta1 = tower.map1_one[&map1d_one_tok].clone();
        one_cells.insert(one.clone(), PstransData { eta0, eta1 });
    }
    let mut two_cells = BTreeMap::new();
    for two in presentation.two_cells.keys() {
        let (raw2, _) = split_pair(two, "pseudo 2-cell")?;
        let (m1two, _unit) = split_pair(&raw2, "raw 2-cell")?;
        let (base_two_tok, _map1d_two) = split_pair(&m1two, "map1 2-cell")?;
        let gamma = tower.base_two[&base_two_tok].clone();
        two_cells.insert(two.clone(), ModificationData { gamma });
    }

    Ok(PseudoBicat {
        presentation,
        objects,
        one_cells,
        two_cells,
    })
}
