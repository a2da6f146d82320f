//! Tests for enumeration, weak equivalence, biequivalence, and the layered
//! Pseudo construction, cross-checked against the brute-force oracles.

use super::*;
use crate::bicat::{
    check_laws, chaotic_bicat, discrete_bicat, monoid_delooping, terminal_bicat, MonoidTable,
};
use crate::budget::Budget;
use crate::cell::CellId;
use crate::univalence::check_univalent;

fn b() -> Budget {
    Budget::default()
}

#[test]
fn enumerate_psfunctors_terminal_to_terminal() {
    let one = terminal_bicat();
    let fs = enumerate_psfunctors(&one, &one, &b()).unwrap();
    assert_eq!(fs.len(), 1);
}

#[test]
fn enumerate_psfunctors_terminal_to_discrete2() {
    let one = terminal_bicat();
    let d2 = discrete_bicat(2);
    let fs = enumerate_psfunctors(&one, &d2, &b()).unwrap();
    assert_eq!(fs.len(), 2);
}

#[test]
fn enumerate_psfunctors_terminal_to_bool_delooping() {
    // The identitor id₁ ⇒ F1(i) forces F1(i) = 1, so exactly one
    // pseudofunctor exists even though the target has two 1-cells.
    let one = terminal_bicat();
    let m = monoid_delooping(&MonoidTable::bool_and()).unwrap();
    let fs = enumerate_psfunctors(&one, &m, &b()).unwrap();
    assert_eq!(fs.len(), 1);
    assert_eq!(fs[0].f1[&CellId::from("i")], CellId::from("1"));
}

#[test]
fn enumerate_psfunctors_terminal_to_zmod2() {
    // Same forcing in Δ(Z/2): only identity 2-cells exist, so the identitor
    // pins F1(i) to the unit.
    let one = terminal_bicat();
    let z = monoid_delooping(&MonoidTable::zmod2()).unwrap();
    let fs = enumerate_psfunctors(&one, &z, &b()).unwrap();
    assert_eq!(fs.len(), 1);
}

#[test]
fn weak_equivalence_decisions() {
    let c2 = chaotic_bicat(2);
    let id = id_psfunctor(&c2).unwrap();
    assert!(is_weak_equivalence(&c2, &c2, &id, &b()).unwrap());

    // discrete(1) ↪ chaotic(2) is a weak equivalence.
    let d1 = discrete_bicat(1);
    let mut inc = PseudofunctorData::default();
    inc.f0.insert(CellId::from("a0"), CellId::from("a0"));
    inc.f1.insert(CellId::from("i0"), CellId::from("f00"));
    inc.f2.insert(CellId::from("e0"), CellId::from("e00"));
    inc.identitor
        .insert(CellId::from("a0"), CellId::from("e00"));
    inc.compositor.insert(
        (CellId::from("i0"), CellId::from("i0")),
        CellId::from("e00"),
    );
    assert!(check_psfunctor(&d1, &c2, &inc).unwrap().passed());
    assert!(is_local_equivalence(&d1, &c2, &inc).unwrap());
    assert!(is_essentially_surjective(&d1, &c2, &inc, &b()).unwrap());

    // discrete(1) ↪ discrete(2) is not essentially surjective.
    let d2 = discrete_bicat(2);
    let mut inc2 = PseudofunctorData::default();
    inc2.f0.insert(CellId::from("a0"), CellId::from("a0"));
    inc2.f1.insert(CellId::from("i0"), CellId::from("i0"));
    inc2.f2.insert(CellId::from("e0"), CellId::from("e0"));
    inc2.identitor.insert(CellId::from("a0"), CellId::from("e0"));
    inc2.compositor.insert(
        (CellId::from("i0"), CellId::from("i0")),
        CellId::from("e0"),
    );
    assert!(check_psfunctor(&d1, &d2, &inc2).unwrap().passed());
    assert!(!is_essentially_surjective(&d1, &d2, &inc2, &b()).unwrap());
}

#[test]
fn identity_biequivalence_validates_on_corpus() {
    for p in [
        terminal_bicat(),
        discrete_bicat(2),
        chaotic_bicat(2),
        monoid_delooping(&MonoidTable::bool_and()).unwrap(),
    ] {
        let bi = identity_biequivalence(&p).unwrap();
        let r = check_biequivalence(&p, &p, &bi, &b()).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
    }
}

#[test]
fn swap_biequivalence_on_chaotic2() {
    // Exchange the two objects of Chaotic2; every cell collapses along the
    // unique fibers.
    let c2 = chaotic_bicat(2);
    let sw = |s: &str| -> CellId {
        CellId::from(
            s.chars()
                .map(|ch| match ch {
                    '0' => '1',
                    '1' => '0',
                    other => other,
                })
                .collect::<String>(),
        )
    };
    let mut l = PseudofunctorData::default();
    for a in &c2.objects {
        l.f0.insert(a.clone(), sw(a.as_str()));
    }
    for f in c2.one_cells.keys() {
        l.f1.insert(f.clone(), sw(f.as_str()));
    }
    for t in c2.two_cells.keys() {
        l.f2.insert(t.clone(), sw(t.as_str()));
    }
    for a in &c2.objects {
        let img = sw(a.as_str());
        l.identitor
            .insert(a.clone(), c2.id2(c2.id1(&img).unwrap()).unwrap().clone());
    }
    for (f, g) in c2.composable_pairs() {
        let fg = c2.comp1(&sw(f.as_str()), &sw(g.as_str())).unwrap();
        l.compositor
            .insert((f, g), c2.id2(fg).unwrap().clone());
    }
    assert!(check_psfunctor(&c2, &c2, &l).unwrap().passed());

    // L is its own inverse; build the biequivalence with the composite
    // R·L = id and reuse the identity unit/counit data.
    let rl = comp_psfunctor(&c2, &c2, &l, &l).unwrap();
    assert_eq!(rl, id_psfunctor(&c2).unwrap());
    let idb = identity_biequivalence(&c2).unwrap();
    let bi = BiequivalenceData {
        l: l.clone(),
        r: l,
        eta: idb.eta.clone(),
        eta_i: idb.eta_i.clone(),
        eps: idb.eps.clone(),
        eps_i: idb.eps_i.clone(),
        m1: idb.m1.clone(),
        m2: idb.m2.clone(),
        m3: idb.m3.clone(),
        m4: idb.m4,
    };
    let r = check_biequivalence(&c2, &c2, &bi, &b()).unwrap();
    assert!(r.passed(), "{:?}", r.violations);
}

#[test]
fn broken_modification_is_rejected() {
    // Ambient with parallel 2-cell variety across objects: chaotic(2) × Δ₂.
    // Twisting m1 at a single object breaks the modification square on the
    // cross 1-cells.
    let d = crate::display::trivial_disp(&chaotic_bicat(2), &crate::bicat::delta2()).unwrap();
    let p = crate::display::total_bicat(&d).unwrap();
    let mut bi = identity_biequivalence(&p).unwrap();
    let a = p.objects.iter().next().unwrap().clone();
    let current = bi.m1.gamma[&a].clone();
    let cc = p.two_cell(&current).unwrap().clone();
    let other = p
        .two_cells_between(&cc.src, &cc.tgt)
        .into_iter()
        .find(|t| t != &current)
        .expect("a parallel alternative exists");
    bi.m1.gamma.insert(a, other);
    let r = check_biequivalence(&p, &p, &bi, &b()).unwrap();
    assert!(!r.passed());
    assert!(r.violations.iter().any(|v| v.law.starts_with("biequiv:m1")));
}

#[test]
fn pseudo_terminal_terminal_is_terminal() {
    let one = terminal_bicat();
    let ps = build_pseudo_bicat(&one, &one, &b()).unwrap();
    assert!(ps.presentation.validate().passed());
    assert!(check_laws(&ps.presentation, &b()).unwrap().passed());
    assert_eq!(ps.presentation.objects.len(), 1);
    assert_eq!(ps.presentation.one_cells.len(), 1);
    assert_eq!(ps.presentation.two_cells.len(), 1);
    assert!(check_univalent(&ps.presentation, &b()).unwrap().passed());
}

#[test]
fn pseudo_terminal_discrete2_counts() {
    let one = terminal_bicat();
    let d2 = discrete_bicat(2);
    let ps = build_pseudo_bicat(&one, &d2, &b()).unwrap();
    assert!(check_laws(&ps.presentation, &b()).unwrap().passed());
    assert_eq!(ps.presentation.objects.len(), 2);
    assert_eq!(ps.presentation.one_cells.len(), 2);
    assert_eq!(ps.presentation.two_cells.len(), 2);
    assert!(check_univalent(&ps.presentation, &b()).unwrap().passed());
}

#[test]
fn pseudo_matches_oracle_on_bool_delooping() {
    let one = terminal_bicat();
    let m = monoid_delooping(&MonoidTable::bool_and()).unwrap();
    let ps = build_pseudo_bicat(&one, &m, &b()).unwrap();
    assert!(check_laws(&ps.presentation, &b()).unwrap().passed());

    // Objects ↔ pseudofunctors.
    let oracle_fs = enumerate_psfunctors(&one, &m, &b()).unwrap();
    assert_eq!(ps.presentation.objects.len(), oracle_fs.len());
    let mut built: Vec<_> = ps.objects.values().cloned().collect();
    built.sort();
    assert_eq!(built, oracle_fs);

    // 1-cells ↔ pseudotransformations, per ordered pair of objects.
    let mut total_pstrans = 0;
    for f in &oracle_fs {
        for g in &oracle_fs {
            total_pstrans += enumerate_pstrans(&one, &m, f, g, &b()).unwrap().len();
        }
    }
    assert_eq!(ps.presentation.one_cells.len(), total_pstrans);
    assert_eq!(total_pstrans, 2);

    // 2-cells ↔ modifications.
    let mut total_modifs = 0;
    for f in &oracle_fs {
        for g in &oracle_fs {
            let ns = enumerate_pstrans(&one, &m, f, g, &b()).unwrap();
            for n in &ns {
                for mm in &ns {
                    total_modifs += enumerate_modifications(&one, &m, f, g, n, mm, &b())
                        .unwrap()
                        .len();
                }
            }
        }
    }
    assert_eq!(ps.presentation.two_cells.len(), total_modifs);

    // Every bookkept 1-cell independently re-validates.
    for n in ps.one_cells.values() {
        // Identify its endpoints via the oracle list membership.
        let mut ok = false;
        for f in &oracle_fs {
            for g in &oracle_fs {
                if check_pstrans(&one, &m, f, g, n).unwrap().passed() {
                    ok = true;
                }
            }
        }
        assert!(ok);
    }

    assert!(check_univalent(&ps.presentation, &b()).unwrap().passed());
}

#[test]
fn pseudo_discrete2_source_counts() {
    // B = discrete(2), C = discrete(2): pseudofunctors are the 4 object
    // maps; pseudotransformations exist only from F to F.
    let d2 = discrete_bicat(2);
    let ps = build_pseudo_bicat(&d2, &d2, &b()).unwrap();
    assert!(check_laws(&ps.presentation, &b()).unwrap().passed());
    let oracle = enumerate_psfunctors(&d2, &d2, &b()).unwrap();
    assert_eq!(ps.presentation.objects.len(), oracle.len());
    assert_eq!(oracle.len(), 4);
    assert!(check_univalent(&ps.presentation, &b()).unwrap().passed());
}

#[test]
fn psfunctor_preserves_adjoint_equivalences() {
    // The image of an adjoint equivalence under a validated pseudofunctor,
    // corrected by the identitor and compositor, re-passes the triangle
    // check. Exercised with the identity and with every enumerated
    // pseudofunctor between small corpus members.
    let c2 = chaotic_bicat(2);
    let id = id_psfunctor(&c2).unwrap();
    for a in &c2.objects {
        for bb in &c2.objects {
            for e in crate::bicat::adjoint_equivalences(&c2, a, bb, &b()).unwrap() {
                let fe = image_adjequiv(&c2, &c2, &id, &e).unwrap();
                assert!(crate::bicat::triangles_hold(&c2, &fe).unwrap());
            }
        }
    }
    // Non-identity pseudofunctors: everything 𝟙 → C and discrete(2) → C.
    let one = terminal_bicat();
    let d2 = discrete_bicat(2);
    for c in [
        monoid_delooping(&MonoidTable::bool_and()).unwrap(),
        chaotic_bicat(2),
        discrete_bicat(2),
    ] {
        for src in [&one, &d2] {
            for f in enumerate_psfunctors(src, &c, &b()).unwrap() {
                for a in &src.objects {
                    for bb in &src.objects {
                        for e in
                            crate::bicat::adjoint_equivalences(src, a, bb, &b()).unwrap()
                        {
                            let fe = image_adjequiv(src, &c, &f, &e).unwrap();
                            assert!(crate::bicat::triangles_hold(&c, &fe).unwrap());
                            assert_eq!(&fe.f, f.f1(&e.f).unwrap());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn pseudo_univalent_over_discrete2_source() {
    // Pseudo(B,C) is univalent for univalent C independently of B; exercise
    // a two-object source against a nontrivial target.
    let d2 = discrete_bicat(2);
    let c = monoid_delooping(&MonoidTable::bool_and()).unwrap();
    let ps = build_pseudo_bicat(&d2, &c, &b()).unwrap();
    assert!(check_laws(&ps.presentation, &b()).unwrap().passed());
    assert!(check_univalent(&ps.presentation, &b()).unwrap().passed());
    let oracle = enumerate_psfunctors(&d2, &c, &b()).unwrap();
    assert_eq!(ps.presentation.objects.len(), oracle.len());
}

fn corpus() -> Vec<crate::bicat::BicatPresentation> {
    vec![
        terminal_bicat(),
        discrete_bicat(2),
        chaotic_bicat(2),
        monoid_delooping(&MonoidTable::bool_and()).unwrap(),
        monoid_delooping(&MonoidTable::zmod2()).unwrap(),
        crate::bicat::delta2(),
        crate::bicat::weak_unit_bicat(),
    ]
}

#[test]
fn identity_psfunctor_validates_on_corpus() {
    for p in corpus() {
        let f = id_psfunctor(&p).unwrap();
        let r = check_psfunctor(&p, &p, &f).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
    }
}

#[test]
fn comp_of_identities_is_identity() {
    let p = chaotic_bicat(2);
    let f = id_psfunctor(&p).unwrap();
    let h = comp_psfunctor(&p, &p, &f, &f).unwrap();
    assert_eq!(h, f);
}

#[test]
fn id_pstrans_validates_on_corpus() {
    for p in corpus() {
        let f = id_psfunctor(&p).unwrap();
        let n = id_pstrans(&p, &p, &f).unwrap();
        let r = check_pstrans(&p, &p, &f, &f, &n).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
    }
}

#[test]
fn comp_of_id_pstrans_validates() {
    for p in corpus() {
        let f = id_psfunctor(&p).unwrap();
        let n = id_pstrans(&p, &p, &f).unwrap();
        let nn = comp_pstrans(&p, &p, &f, &f, &f, &n, &n).unwrap();
        let r = check_pstrans(&p, &p, &f, &f, &nn).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
    }
}

#[test]
fn identity_modification_validates() {
    for p in corpus() {
        let f = id_psfunctor(&p).unwrap();
        let n = id_pstrans(&p, &p, &f).unwrap();
        let mut gamma = ModificationData::default();
        for a in &p.objects {
            let comp = n.eta0(a).unwrap();
            gamma.gamma.insert(a.clone(), p.id2(comp).unwrap().clone());
        }
        let r = check_modification(&p, &p, &f, &f, &n, &n, &gamma).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
    }
}

#[test]
fn swapped_f0_is_rejected() {
    let p = chaotic_bicat(2);
    let mut f = id_psfunctor(&p).unwrap();
    f.f0.insert(CellId::from("a0"), CellId::from("a1"));
    f.f0.insert(CellId::from("a1"), CellId::from("a0"));
    let r = check_psfunctor(&p, &p, &f).unwrap();
    assert!(!r.passed());
    assert!(r.violations.iter().any(|v| v.law.starts_with("psfun:f1")));
}
