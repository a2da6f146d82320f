//! Property tests over seed-generated lawful presentations.

use bikernel::bicat::{
    adjoint_equivalences, canonical_identity_adjequiv, check_laws, chaotic_bicat, delta2,
    discrete_bicat, hom_category, invertible_2cells, monoid_delooping, op_bicat,
    presentation_from_json, presentation_to_json, terminal_bicat, triangles_hold,
    weak_unit_bicat, BicatPresentation, MonoidTable,
};
use bikernel::budget::Budget;
use bikernel::corpus::displayed_corpus;
use bikernel::display::total_bicat;
use proptest::prelude::*;

fn seed_member(idx: u8, seed: u64) -> BicatPresentation {
    match idx % 10 {
        0 => terminal_bicat(),
        1 => discrete_bicat((seed % 4) as usize),
        2 => chaotic_bicat(1 + (seed % 2) as usize),
        3 => monoid_delooping(&MonoidTable::bool_and()).unwrap(),
        4 => monoid_delooping(&MonoidTable::zmod2()).unwrap(),
        5 => monoid_delooping(&MonoidTable::left_zero_unit()).unwrap(),
        6 => delta2(),
        7 => weak_unit_bicat(),
        _ => {
            // A displayed-corpus total: lawful by construction.
            let corpus = displayed_corpus(seed, 1).unwrap();
            total_bicat(&corpus[0].disp).unwrap()
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn op_is_an_involution_on_tables(idx in 0u8..10, seed in 0u64..1000) {
        let p = seed_member(idx, seed);
        let q = op_bicat(&p).unwrap();
        prop_assert_eq!(op_bicat(&q).unwrap(), p);
    }

    #[test]
    fn op_preserves_lawfulness(idx in 0u8..10, seed in 0u64..1000) {
        let p = seed_member(idx, seed);
        let q = op_bicat(&p).unwrap();
        prop_assert!(q.validate().passed());
        prop_assert!(check_laws(&q, &Budget::default()).unwrap().passed());
    }

    #[test]
    fn hom_categories_satisfy_category_axioms(idx in 0u8..10, seed in 0u64..1000) {
        let p = seed_member(idx, seed);
        for a in &p.objects {
            for b in &p.objects {
                let h = hom_category(&p, a, b).unwrap();
                prop_assert!(h.validate().passed());
            }
        }
    }

    #[test]
    fn invertible_2cells_have_unique_inverses(idx in 0u8..10, seed in 0u64..1000) {
        let p = seed_member(idx, seed);
        for f in p.one_cells.keys() {
            for g in p.one_cells.keys() {
                let fc = p.one_cell(f).unwrap();
                let gc = p.one_cell(g).unwrap();
                if fc.src != gc.src || fc.tgt != gc.tgt {
                    continue;
                }
                let cells = invertible_2cells(&p, f, g).unwrap();
                let mut thetas: Vec<_> = cells.iter().map(|c| c.theta.clone()).collect();
                thetas.dedup();
                prop_assert_eq!(thetas.len(), cells.len());
            }
        }
    }

    #[test]
    fn enumerated_adjequivs_pass_independent_recheck(idx in 0u8..10, seed in 0u64..1000) {
        let p = seed_member(idx, seed);
        let budget = Budget::default();
        for a in &p.objects {
            for b in &p.objects {
                for e in adjoint_equivalences(&p, a, b, &budget).unwrap() {
                    prop_assert!(triangles_hold(&p, &e).unwrap());
                }
            }
        }
    }

    #[test]
    fn canonical_identity_is_always_enumerated(idx in 0u8..10, seed in 0u64..1000) {
        let p = seed_member(idx, seed);
        let budget = Budget::default();
        for a in &p.objects {
            let canon = canonical_identity_adjequiv(&p, a).unwrap();
            let all = adjoint_equivalences(&p, a, a, &budget).unwrap();
            prop_assert!(all.contains(&canon));
        }
    }

    #[test]
    fn presentation_json_round_trips(idx in 0u8..10, seed in 0u64..1000) {
        let p = seed_member(idx, seed);
        let text = presentation_to_json(&p);
        prop_assert_eq!(presentation_from_json(&text).unwrap(), p);
    }
}
