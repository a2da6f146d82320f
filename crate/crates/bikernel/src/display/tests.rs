//! Tests for the displayed constructions, law checking, and displayed
//! univalence, pinned to hand-computed fiber counts.

use super::*;
use crate::bicat::{
    canonical_identity_adjequiv, check_laws, chaotic_bicat, delta2, discrete_bicat,
    monoid_delooping, terminal_bicat, MonoidTable,
};
use crate::budget::Budget;
use crate::cell::{glue, CellId};
use crate::univalence::check_univalent;

fn b() -> Budget {
    Budget::default()
}

fn lawful_disp(d: &DispBicatPresentation) {
    let v = d.validate();
    assert!(v.passed(), "disp validation failed: {:?}", v.violations);
    let r = check_disp_laws(d, &b()).unwrap();
    assert!(r.passed(), "disp laws failed: {:?}", r.violations);
}

#[test]
fn fullsub_over_discrete_total_is_smaller_discrete() {
    let p = discrete_bicat(2);
    let d = fullsub_disp(&p, &|a| a == &CellId::from("a0")).unwrap();
    lawful_disp(&d);
    let t = total_bicat(&d).unwrap();
    assert!(t.validate().passed());
    assert!(check_laws(&t, &b()).unwrap().passed());
    assert_eq!(t.objects.len(), 1);
    assert_eq!(t.one_cells.len(), 1);
    assert_eq!(t.two_cells.len(), 1);
}

#[test]
fn trivial_disp_total_is_direct_product() {
    let p = chaotic_bicat(2);
    let q = delta2();
    let d = trivial_disp(&p, &q).unwrap();
    lawful_disp(&d);
    let t = total_bicat(&d).unwrap();
    assert!(check_laws(&t, &b()).unwrap().passed());
    assert_eq!(t.objects.len(), p.objects.len() * q.objects.len());
    assert_eq!(t.one_cells.len(), p.one_cells.len() * q.one_cells.len());
    assert_eq!(t.two_cells.len(), p.two_cells.len() * q.two_cells.len());
}

#[test]
fn prod_disp_fibers_multiply() {
    let p = discrete_bicat(2);
    let d1 = fullsub_disp(&p, &|_| true).unwrap();
    let d2 = trivial_disp(&p, &discrete_bicat(2)).unwrap();
    let d = prod_disp(&d1, &d2).unwrap();
    lawful_disp(&d);
    for a in &p.objects {
        assert_eq!(
            d.d0_fiber(a).len(),
            d1.d0_fiber(a).len() * d2.d0_fiber(a).len()
        );
    }
    let t = total_bicat(&d).unwrap();
    assert!(check_laws(&t, &b()).unwrap().passed());
}

#[test]
fn sigma_disp_iterated_fullsub_fibers() {
    let p = discrete_bicat(2);
    let d1 = fullsub_disp(&p, &|_| true).unwrap();
    let t1 = total_bicat(&d1).unwrap();
    // Keep only the pair over a0 in the second layer.
    let d2 = fullsub_disp(&t1, &|x| x.as_str().starts_with("a0")).unwrap();
    let s = sigma_disp(&d1, &d2).unwrap();
    lawful_disp(&s);
    assert_eq!(s.d0_fiber(&CellId::from("a0")).len(), 1);
    assert_eq!(s.d0_fiber(&CellId::from("a1")).len(), 0);
    let t = total_bicat(&s).unwrap();
    assert!(check_laws(&t, &b()).unwrap().passed());
    assert_eq!(t.objects.len(), 1);
}

#[test]
fn chaotic_disp_over_terminal_with_singleton_fibers() {
    let p = terminal_bicat();
    let mut data = ChaoticData::default();
    let x = CellId::from("x");
    let k = CellId::from("k");
    data.d0.insert(CellId::from("*"), vec![x.clone()]);
    data.d1
        .insert((CellId::from("i"), x.clone(), x.clone()), vec![k.clone()]);
    data.id_table.insert(x.clone(), k.clone());
    data.comp_table.insert((k.clone(), k.clone()), k.clone());
    let d = chaotic_disp(&p, &data).unwrap();
    lawful_disp(&d);
    let t = total_bicat(&d).unwrap();
    assert!(check_laws(&t, &b()).unwrap().passed());
    assert_eq!(
        (t.objects.len(), t.one_cells.len(), t.two_cells.len()),
        (1, 1, 1)
    );
    // Both local shape predicates hold for chaotic fibers.
    assert!(is_locally_groupoidal(&d).unwrap());
    assert!(is_locally_propositional(&d).unwrap());
    assert!(check_disp_univalence(&d, &b()).unwrap().passed());
}

#[test]
fn chaotic_disp_rejects_partial_tables() {
    let p = terminal_bicat();
    let mut data = ChaoticData::default();
    let x = CellId::from("x");
    let k = CellId::from("k");
    data.d0.insert(CellId::from("*"), vec![x.clone()]);
    data.d1
        .insert((CellId::from("i"), x.clone(), x.clone()), vec![k.clone()]);
    data.id_table.insert(x, k.clone());
    // comp table left empty.
    let e = chaotic_disp(&p, &data);
    assert!(matches!(
        e,
        Err(crate::error::KernelError::ChaoticClosureViolation(_))
    ));
}

#[test]
fn fullsub_is_displayed_univalent_over_corpus() {
    for p in [
        terminal_bicat(),
        discrete_bicat(3),
        chaotic_bicat(2),
        monoid_delooping(&MonoidTable::bool_and()).unwrap(),
        delta2(),
    ] {
        let objs: Vec<_> = p.objects.iter().cloned().collect();
        #[allow(clippy::type_complexity)]
        let preds: Vec<Box<dyn Fn(&CellId) -> bool>> = vec![
            Box::new(|_| true),
            Box::new(move |a: &CellId| objs.first() == Some(a)),
        ];
        for pred in preds {
            let d = fullsub_disp(&p, &pred).unwrap();
            lawful_disp(&d);
            assert!(check_disp_univalence(&d, &b()).unwrap().passed());
            assert!(is_locally_propositional(&d).unwrap());
            assert!(is_locally_groupoidal(&d).unwrap());
        }
    }
}

#[test]
fn trivial_disp_univalence_tracks_fiber_univalence() {
    let base = discrete_bicat(2);
    // Univalent fiber presentation → displayed univalent.
    let d = trivial_disp(&base, &discrete_bicat(2)).unwrap();
    assert!(check_disp_univalence(&d, &b()).unwrap().passed());
    // Δ₂ is not locally univalent → displayed local univalence fails.
    let d = trivial_disp(&base, &delta2()).unwrap();
    let r = check_disp_univalence(&d, &b()).unwrap();
    assert!(!r.local.passed());
    // Δ(Z/2) is not globally univalent → displayed global univalence fails.
    let d = trivial_disp(&base, &monoid_delooping(&MonoidTable::zmod2()).unwrap()).unwrap();
    let r = check_disp_univalence(&d, &b()).unwrap();
    assert!(r.local.passed());
    assert!(!r.global.passed());
}

#[test]
fn chaotic_two_object_fiber_fails_global_disp_univalence() {
    // Two displayed objects over the one base object, all four 1-cell
    // fibers singletons: the cross displayed adjoint equivalence exists, so
    // fiberwise global univalence fails.
    let p = terminal_bicat();
    let mut data = ChaoticData::default();
    let (x, y) = (CellId::from("x"), CellId::from("y"));
    data.d0.insert(CellId::from("*"), vec![x.clone(), y.clone()]);
    let i = CellId::from("i");
    let k = |a: &CellId, bb: &CellId| glue(&[&CellId::from("k"), a, bb]);
    for a in [&x, &y] {
        for bb in [&x, &y] {
            data.d1
                .insert((i.clone(), a.clone(), bb.clone()), vec![k(a, bb)]);
        }
    }
    for a in [&x, &y] {
        data.id_table.insert(a.clone(), k(a, a));
    }
    for a in [&x, &y] {
        for bb in [&x, &y] {
            for cc in [&x, &y] {
                data.comp_table.insert((k(a, bb), k(bb, cc)), k(a, cc));
            }
        }
    }
    let d = chaotic_disp(&p, &data).unwrap();
    lawful_disp(&d);
    let r = check_disp_univalence(&d, &b()).unwrap();
    assert!(r.local.passed());
    assert!(!r.global.passed());
    assert!(r.global.witnesses.iter().any(|w| w.cells.0 != w.cells.1));
    // But the total is still univalent-checkable and lawful.
    let t = total_bicat(&d).unwrap();
    assert!(check_laws(&t, &b()).unwrap().passed());
}

#[test]
fn theorem_total_univalence_on_concrete_instances() {
    // Base univalent + displayed univalent ⇒ total univalent.
    let bases = vec![
        terminal_bicat(),
        discrete_bicat(2),
        monoid_delooping(&MonoidTable::bool_and()).unwrap(),
    ];
    for p in bases {
        assert!(check_univalent(&p, &b()).unwrap().passed());
        for d in [
            fullsub_disp(&p, &|_| true).unwrap(),
            trivial_disp(&p, &discrete_bicat(2)).unwrap(),
            prod_disp(
                &fullsub_disp(&p, &|_| true).unwrap(),
                &fullsub_disp(&p, &|_| true).unwrap(),
            )
            .unwrap(),
        ] {
            lawful_disp(&d);
            assert!(check_disp_univalence(&d, &b()).unwrap().passed());
            let t = total_bicat(&d).unwrap();
            assert!(
                check_univalent(&t, &b()).unwrap().passed(),
                "total not univalent"
            );
        }
    }
}

#[test]
fn displayed_cells_in_product_are_componentwise() {
    let p = discrete_bicat(1);
    let d1 = fullsub_disp(&p, &|_| true).unwrap();
    let d2 = fullsub_disp(&p, &|_| true).unwrap();
    let d = prod_disp(&d1, &d2).unwrap();
    let a = CellId::from("a0");
    let base = canonical_identity_adjequiv(&p, &a).unwrap();
    let fiber = d.d0_fiber(&a);
    assert_eq!(fiber.len(), 1);
    let found = disp_adjoint_equivalences(&d, &base, &fiber[0], &fiber[0], &b()).unwrap();
    assert_eq!(found.len(), 1);
    assert_eq!(found[0], disp_canonical_identity_adjequiv(&d, &fiber[0]).unwrap());
}

#[test]
fn disp_inv_2cells_in_product_count_multiplicatively() {
    let p = terminal_bicat();
    let q = delta2();
    let d1 = trivial_disp(&p, &q).unwrap();
    let d = prod_disp(&d1, &d1).unwrap();
    let i = CellId::from("i");
    let base = crate::bicat::Inv2Cell {
        theta: CellId::from("e"),
        theta_inv: CellId::from("e"),
    };
    // In each factor there are two displayed invertible 2-cells over id₂
    // between the unique displayed 1-cell and itself (the two Z/2 lifts);
    // in the product the count is the square.
    let f1 = d1.d1_fiber(&i, &d1.d0_fiber(&CellId::from("*"))[0], &d1.d0_fiber(&CellId::from("*"))[0]);
    let single = disp_invertible_2cells(&d1, &base, &f1[0], &f1[0]).unwrap();
    assert_eq!(single.len(), 2);
    let f2 = d.d1_fiber(&i, &d.d0_fiber(&CellId::from("*"))[0], &d.d0_fiber(&CellId::from("*"))[0]);
    let pair = disp_invertible_2cells(&d, &base, &f2[0], &f2[0]).unwrap();
    assert_eq!(pair.len(), 4);
}

#[test]
fn projection_composes_with_base_psfunctors() {
    // π_D · F validates for a pseudofunctor F out of the base.
    let p = chaotic_bicat(2);
    let d = trivial_disp(&p, &discrete_bicat(2)).unwrap();
    let t = total_bicat(&d).unwrap();
    let proj = projection_psfunctor(&d).unwrap();
    let f = crate::psfun::id_psfunctor(&p).unwrap();
    let comp = crate::psfun::comp_psfunctor(&p, &p, &proj, &f).unwrap();
    let r = crate::psfun::check_psfunctor(&t, &p, &comp).unwrap();
    assert!(r.passed(), "{:?}", r.violations);
}

#[test]
fn projection_of_total_is_lawful_psfunctor() {
    let p = chaotic_bicat(2);
    let d = trivial_disp(&p, &discrete_bicat(2)).unwrap();
    let t = total_bicat(&d).unwrap();
    let proj = projection_psfunctor(&d).unwrap();
    let r = crate::psfun::check_psfunctor(&t, &p, &proj).unwrap();
    assert!(r.passed(), "{:?}", r.violations);
}

#[test]
fn disp_json_round_trip() {
    let p = discrete_bicat(2);
    let d = trivial_disp(&p, &delta2()).unwrap();
    let text = disp_to_json(&d);
    let d2 = disp_from_json(&text).unwrap();
    assert_eq!(d, d2);
}

#[test]
fn disp_law_check_rejects_broken_structure() {
    let p = discrete_bicat(1);
    let mut d = fullsub_disp(&p, &|_| true).unwrap();
    // Point a displayed table at a cell over the wrong base.
    d.disp_id1.insert(CellId::from("a0"), CellId::from("bogus"));
    assert!(matches!(
        check_disp_laws(&d, &b()),
        Err(crate::error::KernelError::TypeMismatch(_))
    ));
}
