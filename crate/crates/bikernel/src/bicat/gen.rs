//! Lawful-instance generators for tests, fuzzing, and the CLI.
//!
//! Every generator output passes `validate_presentation` and `check_laws` by
//! construction; the monoid- and group-table inputs are validated first.

use super::{BicatPresentation, OneCell, TwoCell};
use crate::cell::CellId;
use crate::error::{KernelError, Result};
use std::collections::BTreeMap;

/// A finite monoid given by its multiplication table.
#[derive(Debug, Clone)]
pub struct MonoidTable {
    pub elements: Vec<CellId>,
    pub unit: CellId,
    pub table: BTreeMap<(CellId, CellId), CellId>,
}

impl MonoidTable {
    pub fn new(
        elements: Vec<CellId>,
        unit: CellId,
        table: BTreeMap<(CellId, CellId), CellId>,
    ) -> Result<Self> {
        let m = MonoidTable {
            elements,
            unit,
            table,
        };
        m.check()?;
        Ok(m)
    }

    fn mul(&self, x: &CellId, y: &CellId) -> Result<&CellId> {
        self.table
            .get(&(x.clone(), y.clone()))
            .ok_or_else(|| KernelError::InvalidMonoid(format!("missing product {x}·{y}")))
    }

    fn check(&self) -> Result<()> {
        if !self.elements.contains(&self.unit) {
            return Err(KernelError::InvalidMonoid("unit not an element".into()));
        }
        for x in &self.elements {
            if self.mul(&self.unit, x)? != x || self.mul(x, &self.unit)? != x {
                return Err(KernelError::InvalidMonoid(format!("unit law fails at {x}")));
            }
            for y in &self.elements {
                let xy = self.mul(x, y)?.clone();
                if !self.elements.contains(&xy) {
                    return Err(KernelError::InvalidMonoid(format!("{x}·{y} = {xy} not an element")));
                }
                for z in &self.elements {
                    let l = self.mul(&xy, z)?.clone();
                    let yz = self.mul(y, z)?.clone();
                    let r = self.mul(x, &yz)?.clone();
                    if l != r {
                        return Err(KernelError::InvalidMonoid(format!(
                            "associativity fails at ({x},{y},{z})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The multiplicative monoid on {0,1}.
    pub fn bool_and() -> Self {
        let e1 = CellId::from("1");
        let e0 = CellId::from("0");
        let mut table = BTreeMap::new();
        for (x, y, z) in [
            ("1", "1", "1"),
            ("1", "0", "0"),
            ("0", "1", "0"),
            ("0", "0", "0"),
        ] {
            table.insert((CellId::from(x), CellId::from(y)), CellId::from(z));
        }
        MonoidTable::new(vec![e1.clone(), e0], e1, table).unwrap()
    }

    /// The group Z/2 written multiplicatively: elements 1 and s.
    pub fn zmod2() -> Self {
        let mut table = BTreeMap::new();
        for (x, y, z) in [
            ("1", "1", "1"),
            ("1", "s", "s"),
            ("s", "1", "s"),
            ("s", "s", "1"),
        ] {
            table.insert((CellId::from(x), CellId::from(y)), CellId::from(z));
        }
        MonoidTable::new(vec![CellId::from("1"), CellId::from("s")], CellId::from("1"), table)
            .unwrap()
    }

    /// The trivial monoid.
    pub fn trivial() -> Self {
        let e = CellId::from("1");
        let mut table = BTreeMap::new();
        table.insert((e.clone(), e.clone()), e.clone());
        MonoidTable::new(vec![e.clone()], e, table).unwrap()
    }

    /// Left-zero semigroup on {a,b} with an adjoined unit: x·y = x for
    /// x,y ∈ {a,b}. Noncommutative; used for the op transposition check.
    pub fn left_zero_unit() -> Self {
        let (e, a, b) = (CellId::from("1"), CellId::from("a"), CellId::from("b"));
        let mut table = BTreeMap::new();
        for x in [&e, &a, &b] {
            table.insert((e.clone(), x.clone()), x.clone());
            table.insert((x.clone(), e.clone()), x.clone());
        }
        for x in [&a, &b] {
            for y in [&a, &b] {
                table.insert((x.clone(), y.clone()), x.clone());
            }
        }
        MonoidTable::new(vec![e.clone(), a, b], e, table).unwrap()
    }
}

/// A finite abelian group given by its addition table.
#[derive(Debug, Clone)]
pub struct AbGroupTable {
    pub elements: Vec<CellId>,
    pub unit: CellId,
    pub table: BTreeMap<(CellId, CellId), CellId>,
}

impl AbGroupTable {
    pub fn new(
        elements: Vec<CellId>,
        unit: CellId,
        table: BTreeMap<(CellId, CellId), CellId>,
    ) -> Result<Self> {
        let monoid = MonoidTable::new(elements.clone(), unit.clone(), table.clone())
            .map_err(|e| KernelError::InvalidGroup(e.to_string()))?;
        for x in &elements {
            let has_inverse = elements
                .iter()
                .any(|y| monoid.table.get(&(x.clone(), y.clone())) == Some(&unit));
            if !has_inverse {
                return Err(KernelError::InvalidGroup(format!("{x} has no inverse")));
            }
            for y in &elements {
                if monoid.table.get(&(x.clone(), y.clone()))
                    != monoid.table.get(&(y.clone(), x.clone()))
                {
                    return Err(KernelError::InvalidGroup(format!(
                        "not commutative at ({x},{y})"
                    )));
                }
            }
        }
        Ok(AbGroupTable {
            elements,
            unit,
            table,
        })
    }

    pub fn zmod(n: usize, prefix: &str) -> Self {
        let el = |k: usize| CellId::from(format!("{prefix}{k}"));
        let elements: Vec<_> = (0..n).map(el).collect();
        let mut table = BTreeMap::new();
        for j in 0..n {
            for k in 0..n {
                table.insert((el(j), el(k)), el((j + k) % n));
            }
        }
        AbGroupTable::new(elements, el(0), table).unwrap()
    }
}

/// The terminal presentation 𝟙: one object `*`, one 1-cell `i`, one 2-cell
/// `e`, all tables constant.
pub fn terminal_bicat() -> BicatPresentation {
    monoid_delooping(&MonoidTable::trivial()).map(rename_terminal).unwrap()
}

fn rename_terminal(p: BicatPresentation) -> BicatPresentation {
    // The trivial delooping already is 𝟙; rename its cells to (*, i, e).
    let mut q = BicatPresentation::default();
    let star = CellId::from("*");
    let i = CellId::from("i");
    let e = CellId::from("e");
    q.objects.insert(star.clone());
    q.one_cells.insert(i.clone(), OneCell { src: star.clone(), tgt: star.clone() });
    q.two_cells.insert(e.clone(), TwoCell { src: i.clone(), tgt: i.clone() });
    q.id1.insert(star, i.clone());
    q.comp1.insert((i.clone(), i.clone()), i.clone());
    q.id2.insert(i.clone(), e.clone());
    q.vcomp.insert((e.clone(), e.clone()), e.clone());
    q.lwhisker.insert((i.clone(), e.clone()), e.clone());
    q.rwhisker.insert((e.clone(), i.clone()), e.clone());
    q.lunitor.insert(i.clone(), e.clone());
    q.lunitor_inv.insert(i.clone(), e.clone());
    q.runitor.insert(i.clone(), e.clone());
    q.runitor_inv.insert(i.clone(), e.clone());
    q.lassoc.insert((i.clone(), i.clone(), i.clone()), e.clone());
    q.lassoc_inv.insert((i.clone(), i.clone(), i), e);
    let _ = p;
    q
}

/// The discrete presentation on `n` objects: only identity 1- and 2-cells.
pub fn discrete_bicat(n: usize) -> BicatPresentation {
    let mut p = BicatPresentation::default();
    for k in 0..n {
        let a = CellId::from(format!("a{k}"));
        let i = CellId::from(format!("i{k}"));
        let e = CellId::from(format!("e{k}"));
        p.objects.insert(a.clone());
        p.one_cells.insert(i.clone(), OneCell { src: a.clone(), tgt: a.clone() });
        p.two_cells.insert(e.clone(), TwoCell { src: i.clone(), tgt: i.clone() });
        p.id1.insert(a, i.clone());
        p.comp1.insert((i.clone(), i.clone()), i.clone());
        p.id2.insert(i.clone(), e.clone());
        p.vcomp.insert((e.clone(), e.clone()), e.clone());
        p.lwhisker.insert((i.clone(), e.clone()), e.clone());
        p.rwhisker.insert((e.clone(), i.clone()), e.clone());
        p.lunitor.insert(i.clone(), e.clone());
        p.lunitor_inv.insert(i.clone(), e.clone());
        p.runitor.insert(i.clone(), e.clone());
        p.runitor_inv.insert(i.clone(), e.clone());
        p.lassoc.insert((i.clone(), i.clone(), i.clone()), e.clone());
        p.lassoc_inv.insert((i.clone(), i.clone(), i), e);
    }
    p
}

/// The chaotic presentation on `n` objects: one 1-cell per ordered pair of
/// objects and one 2-cell per ordered pair of parallel 1-cells.
pub fn chaotic_bicat(n: usize) -> BicatPresentation {
    let mut p = BicatPresentation::default();
    let obj = |k: usize| CellId::from(format!("a{k}"));
    let one = |j: usize, k: usize| CellId::from(format!("f{j}{k}"));
    let two = |j: usize, k: usize| CellId::from(format!("e{j}{k}"));
    for k in 0..n {
        p.objects.insert(obj(k));
    }
    for j in 0..n {
        for k in 0..n {
            p.one_cells.insert(one(j, k), OneCell { src: obj(j), tgt: obj(k) });
            p.two_cells.insert(two(j, k), TwoCell { src: one(j, k), tgt: one(j, k) });
            p.id2.insert(one(j, k), two(j, k));
        }
    }
    for k in 0..n {
        p.id1.insert(obj(k), one(k, k));
    }
    for j in 0..n {
        for k in 0..n {
            for l in 0..n {
                p.comp1.insert((one(j, k), one(k, l)), one(j, l));
                // g ◁ θ and θ ▷ h collapse to the unique parallel 2-cell.
                p.lwhisker.insert((one(j, k), two(k, l)), two(j, l));
                p.rwhisker.insert((two(j, k), one(k, l)), two(j, l));
                for m in 0..n {
                    p.lassoc.insert((one(j, k), one(k, l), one(l, m)), two(j, m));
                    p.lassoc_inv.insert((one(j, k), one(k, l), one(l, m)), two(j, m));
                }
            }
            p.vcomp.insert((two(j, k), two(j, k)), two(j, k));
            p.lunitor.insert(one(j, k), two(j, k));
            p.lunitor_inv.insert(one(j, k), two(j, k));
            p.runitor.insert(one(j, k), two(j, k));
            p.runitor_inv.insert(one(j, k), two(j, k));
        }
    }
    p
}

/// The delooping Δ(M): one object, 1-cells the monoid elements, only
/// identity 2-cells; composition is the monoid table, so the result is
/// 1-strict and all structural 2-cells are identities.
pub fn monoid_delooping(m: &MonoidTable) -> Result<BicatPresentation> {
    m.check()?;
    let mut p = BicatPresentation::default();
    let star = CellId::from("*");
    p.objects.insert(star.clone());
    let id2 = |f: &CellId| CellId::from(format!("id_{f}"));
    for f in &m.elements {
        p.one_cells.insert(f.clone(), OneCell { src: star.clone(), tgt: star.clone() });
        p.two_cells.insert(id2(f), TwoCell { src: f.clone(), tgt: f.clone() });
        p.id2.insert(f.clone(), id2(f));
    }
    p.id1.insert(star, m.unit.clone());
    for ((x, y), z) in &m.table {
        p.comp1.insert((x.clone(), y.clone()), z.clone());
    }
    for f in &m.elements {
        for g in &m.elements {
            let fg = m.table[&(f.clone(), g.clone())].clone();
            p.lwhisker.insert((f.clone(), id2(g)), id2(&fg));
            p.rwhisker.insert((id2(f), g.clone()), id2(&fg));
            for h in &m.elements {
                let gh = m.table[&(g.clone(), h.clone())].clone();
                let fgh = m.table[&(f.clone(), gh.clone())].clone();
                p.lassoc.insert((f.clone(), g.clone(), h.clone()), id2(&fgh));
                p.lassoc_inv.insert((f.clone(), g.clone(), h.clone()), id2(&fgh));
            }
        }
        p.vcomp.insert((id2(f), id2(f)), id2(f));
        p.lunitor.insert(f.clone(), id2(f));
        p.lunitor_inv.insert(f.clone(), id2(f));
        p.runitor.insert(f.clone(), id2(f));
        p.runitor_inv.insert(f.clone(), id2(f));
    }
    Ok(p)
}

/// Puts an abelian group G of 2-cells on the identity 1-cell of Δ(M).
/// Requires that the monoid unit has no nontrivial factorization (otherwise
/// whiskering cannot be defined lawfully: a G-cell whiskered around a
/// factorization of the unit would have to be both trivial and not).
pub fn two_cell_delooping(m: &MonoidTable, g: &AbGroupTable) -> Result<BicatPresentation> {
    m.check()?;
    for x in &m.elements {
        for y in &m.elements {
            if m.table[&(x.clone(), y.clone())] == m.unit && (x != &m.unit || y != &m.unit) {
                return Err(KernelError::InvalidMonoid(format!(
                    "two_cell_delooping needs a unit with no nontrivial factorization; {x}·{y} = unit"
                )));
            }
        }
    }
    let mut p = monoid_delooping(m)?;
    let unit1 = m.unit.clone();
    let old_id = p.id2[&unit1].clone();

    // Replace the single identity 2-cell on the unit 1-cell by G; the group
    // identity becomes id₂(unit).
    let gcell = |x: &CellId| CellId::from(format!("g_{x}"));
    p.two_cells.remove(&old_id);
    p.vcomp.remove(&(old_id.clone(), old_id.clone()));
    p.lwhisker.retain(|(_, t), _| t != &old_id);
    p.rwhisker.retain(|(t, _), _| t != &old_id);
    for x in &g.elements {
        p.two_cells.insert(gcell(x), TwoCell { src: unit1.clone(), tgt: unit1.clone() });
    }
    let gid = gcell(&g.unit);
    p.id2.insert(unit1.clone(), gid.clone());
    for x in &g.elements {
        for y in &g.elements {
            let z = g.table[&(x.clone(), y.clone())].clone();
            p.vcomp.insert((gcell(x), gcell(y)), gcell(&z));
        }
    }
    // Unitors and associators that pointed at the old identity 2-cell now
    // point at the group identity.
    for table in [
        &mut p.lunitor,
        &mut p.lunitor_inv,
        &mut p.runitor,
        &mut p.runitor_inv,
    ] {
        for v in table.values_mut() {
            if v == &old_id {
                *v = gid.clone();
            }
        }
    }
    for table in [&mut p.lassoc, &mut p.lassoc_inv] {
        for v in table.values_mut() {
            if v == &old_id {
                *v = gid.clone();
            }
        }
    }
    for table in [&mut p.lwhisker] {
        for v in table.values_mut() {
            if v == &old_id {
                *v = gid.clone();
            }
        }
    }
    for v in p.rwhisker.values_mut() {
        if v == &old_id {
            *v = gid.clone();
        }
    }
    // Whiskering with G-cells: by the unit 1-cell it is the cell itself;
    // by any other 1-cell it collapses to that cell's identity 2-cell.
    for x in &g.elements {
        for f in &m.elements {
            let l = if f == &unit1 { gcell(x) } else { p.id2[f].clone() };
            p.lwhisker.insert((f.clone(), gcell(x)), l.clone());
            p.rwhisker.insert((gcell(x), f.clone()), l);
        }
        // G-cells compose vertically with the identities on the unit 1-cell
        // via the group table; nothing else is parallel to them.
    }
    Ok(p)
}

/// The two-2-cell presentation Δ₂: one 1-cell `1`, 2-cells {g_z0, g_z1} with
/// g_z1 • g_z1 = g_z0. This is the smallest locally non-univalent instance.
pub fn delta2() -> BicatPresentation {
    two_cell_delooping(&MonoidTable::trivial(), &AbGroupTable::zmod(2, "z")).unwrap()
}

/// A lawful presentation with a weak unit: comp1(id_a, f) is a distinct
/// 1-cell f' and λ(f) is a non-identity invertible 2-cell, so the
/// presentation is not 1-strict.
pub fn weak_unit_bicat() -> BicatPresentation {
    let mut p = BicatPresentation::default();
    let (a, b) = (CellId::from("a"), CellId::from("b"));
    let (ia, ib, f, fp) = (
        CellId::from("ia"),
        CellId::from("ib"),
        CellId::from("f"),
        CellId::from("fp"),
    );
    let (ea, eb, ef, efp, u, uinv) = (
        CellId::from("ea"),
        CellId::from("eb"),
        CellId::from("ef"),
        CellId::from("efp"),
        CellId::from("u"),
        CellId::from("uinv"),
    );
    p.objects.extend([a.clone(), b.clone()]);
    for (t, s, g) in [
        (&ia, &a, &a),
        (&ib, &b, &b),
        (&f, &a, &b),
        (&fp, &a, &b),
    ] {
        p.one_cells.insert(t.clone(), OneCell { src: s.clone(), tgt: g.clone() });
    }
    for (t, s, g) in [
        (&ea, &ia, &ia),
        (&eb, &ib, &ib),
        (&ef, &f, &f),
        (&efp, &fp, &fp),
        (&u, &fp, &f),
        (&uinv, &f, &fp),
    ] {
        p.two_cells.insert(t.clone(), TwoCell { src: s.clone(), tgt: g.clone() });
    }
    p.id1.insert(a, ia.clone());
    p.id1.insert(b, ib.clone());
    for (x, y, z) in [
        (&ia, &ia, &ia),
        (&ib, &ib, &ib),
        (&ia, &f, &fp),
        (&ia, &fp, &fp),
        (&f, &ib, &f),
        (&fp, &ib, &fp),
    ] {
        p.comp1.insert((x.clone(), y.clone()), z.clone());
    }
    for (c, e) in [(&ia, &ea), (&ib, &eb), (&f, &ef), (&fp, &efp)] {
        p.id2.insert(c.clone(), e.clone());
    }
    for (x, y, z) in [
        (&ea, &ea, &ea),
        (&eb, &eb, &eb),
        (&ef, &ef, &ef),
        (&efp, &efp, &efp),
        (&efp, &u, &u),
        (&u, &ef, &u),
        (&ef, &uinv, &uinv),
        (&uinv, &efp, &uinv),
        (&u, &uinv, &efp),
        (&uinv, &u, &ef),
    ] {
        p.vcomp.insert((x.clone(), y.clone()), z.clone());
    }
    for (x, t, r) in [
        (&ia, &ea, &ea),
        (&ia, &ef, &efp),
        (&ia, &efp, &efp),
        (&ia, &u, &efp),
        (&ia, &uinv, &efp),
        (&ib, &eb, &eb),
        (&f, &eb, &ef),
        (&fp, &eb, &efp),
    ] {
        p.lwhisker.insert((x.clone(), t.clone()), r.clone());
    }
    for (t, h, r) in [
        (&ea, &ia, &ea),
        (&ea, &f, &efp),
        (&ea, &fp, &efp),
        (&eb, &ib, &eb),
        (&ef, &ib, &ef),
        (&efp, &ib, &efp),
        (&u, &ib, &u),
        (&uinv, &ib, &uinv),
    ] {
        p.rwhisker.insert((t.clone(), h.clone()), r.clone());
    }
    for (c, l, li) in [
        (&ia, &ea, &ea),
        (&ib, &eb, &eb),
        (&f, &u, &uinv),
        (&fp, &efp, &efp),
    ] {
        p.lunitor.insert(c.clone(), l.clone());
        p.lunitor_inv.insert(c.clone(), li.clone());
    }
    for (c, r, ri) in [
        (&ia, &ea, &ea),
        (&ib, &eb, &eb),
        (&f, &ef, &ef),
        (&fp, &efp, &efp),
    ] {
        p.runitor.insert(c.clone(), r.clone());
        p.runitor_inv.insert(c.clone(), ri.clone());
    }
    for (x, y, z, r) in [
        (&ia, &ia, &ia, &ea),
        (&ib, &ib, &ib, &eb),
        (&ia, &ia, &f, &efp),
        (&ia, &ia, &fp, &efp),
        (&ia, &f, &ib, &efp),
        (&ia, &fp, &ib, &efp),
        (&f, &ib, &ib, &ef),
        (&fp, &ib, &ib, &efp),
    ] {
        p.lassoc.insert((x.clone(), y.clone(), z.clone()), r.clone());
        p.lassoc_inv.insert((x.clone(), y.clone(), z.clone()), r.clone());
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicat::{check_laws, validate_presentation};
    use crate::budget::Budget;

    fn lawful(p: &BicatPresentation) {
        let v = validate_presentation(p);
        assert!(v.passed(), "validation failed: {:?}", v.violations);
        let r = check_laws(p, &Budget::default()).unwrap();
        assert!(r.passed(), "law check failed: {:?}", r.violations);
    }

    #[test]
    fn generators_are_lawful() {
        lawful(&terminal_bicat());
        for n in 0..4 {
            lawful(&discrete_bicat(n));
        }
        lawful(&chaotic_bicat(2));
        lawful(&chaotic_bicat(3));
        lawful(&monoid_delooping(&MonoidTable::bool_and()).unwrap());
        lawful(&monoid_delooping(&MonoidTable::zmod2()).unwrap());
        lawful(&monoid_delooping(&MonoidTable::left_zero_unit()).unwrap());
        lawful(&delta2());
        lawful(&two_cell_delooping(&MonoidTable::bool_and(), &AbGroupTable::zmod(3, "z")).unwrap());
        lawful(&weak_unit_bicat());
    }

    #[test]
    fn tier_counts_match_construction() {
        let d = discrete_bicat(3);
        assert_eq!((d.objects.len(), d.one_cells.len(), d.two_cells.len()), (3, 3, 3));
        let m = monoid_delooping(&MonoidTable::zmod2()).unwrap();
        assert_eq!((m.objects.len(), m.one_cells.len(), m.two_cells.len()), (1, 2, 2));
        let c = chaotic_bicat(2);
        assert_eq!((c.objects.len(), c.one_cells.len(), c.two_cells.len()), (2, 4, 4));
    }

    #[test]
    fn two_cell_delooping_rejects_nontrivial_unit_factorization() {
        let err = two_cell_delooping(&MonoidTable::zmod2(), &AbGroupTable::zmod(2, "z"));
        assert!(matches!(err, Err(KernelError::InvalidMonoid(_))));
    }

    #[test]
    fn empty_presentation_is_lawful() {
        lawful(&BicatPresentation::default());
    }
}
