//! The total bicategory of a displayed presentation and its projection.

use super::DispBicatPresentation;
use crate::bicat::{BicatPresentation, OneCell, TwoCell};
use crate::cell::{pair_token, CellId};
use crate::error::Result;
use crate::psfun::PseudofunctorData;
use std::collections::BTreeMap;

/// Builds the total bicategory: cells are `base|disp` pair tokens and every
/// table is componentwise.
pub fn total_bicat(d: &DispBicatPresentation) -> Result<BicatPresentation> {
    let p = &d.base;
    let mut t = BicatPresentation::default();

    for (x, c) in &d.d0 {
        t.objects.insert(pair_token(&c.over, x));
    }
    for (x, c) in &d.d1 {
        let oc = p.one_cell(&c.over)?;
        t.one_cells.insert(
            pair_token(&c.over, x),
            OneCell {
                src: pair_token(&oc.src, &c.src),
                tgt: pair_token(&oc.tgt, &c.tgt),
            },
        );
    }
    for (x, c) in &d.d2 {
        let tc = p.two_cell(&c.over)?;
        t.two_cells.insert(
            pair_token(&c.over, x),
            TwoCell {
                src: pair_token(&tc.src, &c.src),
                tgt: pair_token(&tc.tgt, &c.tgt),
            },
        );
    }

    for (x, c) in &d.d0 {
        let i = d.disp_id1(x)?;
        t.id1.insert(
            pair_token(&c.over, x),
            pair_token(&d.done(i)?.over, i),
        );
    }
    for ((sf, sg), r) in &d.disp_comp1 {
        let f = &d.done(sf)?.over;
        let g = &d.done(sg)?.over;
        t.comp1.insert(
            (pair_token(f, sf), pair_token(g, sg)),
            pair_token(&d.done(r)?.over, r),
        );
    }
    for (sf, r) in &d.disp_id2 {
        let f = &d.done(sf)?.over;
        t.id2
            .insert(pair_token(f, sf), pair_token(&d.dtwo(r)?.over, r));
    }
    for ((st, su), r) in &d.disp_vcomp {
        let a = &d.dtwo(st)?.over;
        let b = &d.dtwo(su)?.over;
        t.vcomp.insert(
            (pair_token(a, st), pair_token(b, su)),
            pair_token(&d.dtwo(r)?.over, r),
        );
    }
    for ((sf, st), r) in &d.disp_lwhisker {
        let f = &d.done(sf)?.over;
        let a = &d.dtwo(st)?.over;
        t.lwhisker.insert(
            (pair_token(f, sf), pair_token(a, st)),
            pair_token(&d.dtwo(r)?.over, r),
        );
    }
    for ((st, sh), r) in &d.disp_rwhisker {
        let a = &d.dtwo(st)?.over;
        let h = &d.done(sh)?.over;
        t.rwhisker.insert(
            (pair_token(a, st), pair_token(h, sh)),
            pair_token(&d.dtwo(r)?.over, r),
        );
    }
    let unitor = |m: &BTreeMap<CellId, CellId>,
                  out: &mut BTreeMap<CellId, CellId>|
     -> Result<()> {
        for (sf, r) in m {
            let f = &d.done(sf)?.over;
            out.insert(pair_token(f, sf), pair_token(&d.dtwo(r)?.over, r));
        }
        Ok(())
    };
    unitor(&d.disp_lunitor, &mut t.lunitor)?;
    unitor(&d.disp_lunitor_inv, &mut t.lunitor_inv)?;
    unitor(&d.disp_runitor, &mut t.runitor)?;
    unitor(&d.disp_runitor_inv, &mut t.runitor_inv)?;
    for ((sf, sg, sh), r) in &d.disp_lassoc {
        let f = &d.done(sf)?.over;
        let g = &d.done(sg)?.over;
        let h = &d.done(sh)?.over;
        t.lassoc.insert(
            (pair_token(f, sf), pair_token(g, sg), pair_token(h, sh)),
            pair_token(&d.dtwo(r)?.over, r),
        );
    }
    for ((sf, sg, sh), r) in &d.disp_lassoc_inv {
        let f = &d.done(sf)?.over;
        let g = &d.done(sg)?.over;
        let h = &d.done(sh)?.over;
        t.lassoc_inv.insert(
            (pair_token(f, sf), pair_token(g, sg), pair_token(h, sh)),
            pair_token(&d.dtwo(r)?.over, r),
        );
    }
    Ok(t)
}

/// The projection pseudofunctor π : ∫D → B. It strips the displayed
/// component; identitor and compositor are identity 2-cells because the
/// total tables are componentwise over the base tables.
pub fn projection_psfunctor(d: &DispBicatPresentation) -> Result<PseudofunctorData> {
    let p = &d.base;
    let mut f = PseudofunctorData::default();
    for (x, c) in &d.d0 {
        f.f0.insert(pair_token(&c.over, x), c.over.clone());
    }
    for (x, c) in &d.d1 {
        f.f1.insert(pair_token(&c.over, x), c.over.clone());
    }
    for (x, c) in &d.d2 {
        f.f2.insert(pair_token(&c.over, x), c.over.clone());
    }
    for (x, c) in &d.d0 {
        let ida = p.id1(&c.over)?;
        f.identitor
            .insert(pair_token(&c.over, x), p.id2(ida)?.clone());
    }
    for (sf, sg) in d.disp_comp1.keys() {
        let bf = d.done(sf)?.over.clone();
        let bg = d.done(sg)?.over.clone();
        let comp = p.comp1(&bf, &bg)?;
        f.compositor.insert(
            (
                pair_token(&bf, sf),
                pair_token(&bg, sg),
            ),
            p.id2(comp)?.clone(),
        );
    }
    Ok(f)
}
