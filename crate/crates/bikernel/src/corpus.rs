//! Seed-deterministic corpus of displayed instances over univalent bases.
//!
//! The corpus is generated by closing seed families (discrete, terminal,
//! monoid deloopings, tagged chaotic fibers) under full sub, trivial
//! fibration, product, and sigma — lawful by construction; rejection
//! sampling over raw tables would be astronomically wasteful and is not
//! used. All randomness is seed-derived.

use crate::bicat::{discrete_bicat, monoid_delooping, terminal_bicat, BicatPresentation, MonoidTable};
use crate::budget::Budget;
use crate::cell::{glue, CellId};
use crate::display::{
    chaotic_disp, fullsub_disp, prod_disp, sigma_disp, total_bicat, trivial_disp, ChaoticData,
    DispBicatPresentation,
};
use crate::error::Result;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// One corpus member: a univalent base with a displayed-univalent displayed
/// presentation over it, tagged with the construction recipe.
pub struct CorpusInstance {
    pub name: String,
    pub disp: DispBicatPresentation,
    /// Both factors locally propositional and groupoidal (relevant for the
    /// sigma univalence criterion).
    pub prop_and_groupoidal: bool,
}

fn base_pool() -> Vec<(&'static str, BicatPresentation)> {
    vec![
        ("terminal", terminal_bicat()),
        ("discrete1", discrete_bicat(1)),
        ("discrete2", discrete_bicat(2)),
        ("discrete3", discrete_bicat(3)),
        ("bool", monoid_delooping(&MonoidTable::bool_and()).unwrap()),
        (
            "leftzero",
            monoid_delooping(&MonoidTable::left_zero_unit()).unwrap(),
        ),
    ]
}

fn fiber_pool() -> Vec<(&'static str, BicatPresentation)> {
    vec![
        ("terminal", terminal_bicat()),
        ("discrete1", discrete_bicat(1)),
        ("discrete2", discrete_bicat(2)),
        ("bool", monoid_delooping(&MonoidTable::bool_and()).unwrap()),
    ]
}

/// A chaotic displayed presentation with tagged singleton-or-empty 1-cell
/// fibers: displayed 1-cells exist exactly between equal tags, which gives
/// the inverse witness to the global map directly.
fn tagged_chaotic(p: &BicatPresentation, tags: usize) -> Result<DispBicatPresentation> {
    let mut data = ChaoticData::default();
    let tag_tok = |k: usize| CellId::from(format!("t{k}"));
    for a in &p.objects {
        data.d0.insert(
            a.clone(),
            (0..tags).map(|k| glue(&[a, &tag_tok(k)])).collect(),
        );
    }
    for (f, fc) in &p.one_cells {
        for k in 0..tags {
            let x = glue(&[&fc.src, &tag_tok(k)]);
            let y = glue(&[&fc.tgt, &tag_tok(k)]);
            data.d1.insert(
                (f.clone(), x.clone(), y.clone()),
                vec![glue(&[f, &x, &y])],
            );
        }
    }
    for (a, fiber) in &data.d0.clone() {
        let id_f = p.id1.get(a).cloned().expect("validated base");
        for x in fiber {
            data.id_table
                .insert(x.clone(), glue(&[&id_f, x, x]));
        }
    }
    for (f, x, y) in data.d1.clone().keys() {
        for (g, y2, z) in data.d1.clone().keys() {
            if y != y2 {
                continue;
            }
            if let Some(fg) = p.comp1.get(&(f.clone(), g.clone())) {
                data.comp_table.insert(
                    (glue(&[f, x, y]), glue(&[g, y2, z])),
                    glue(&[fg, x, z]),
                );
            }
        }
    }
    chaotic_disp(p, &data)
}

fn gen_disp(
    rng: &mut ChaCha8Rng,
    base: &BicatPresentation,
    depth: usize,
) -> Result<(String, DispBicatPresentation)> {
    let cell_count = base.objects.len() + base.one_cells.len() + base.two_cells.len();
    let variant = if depth == 0 || cell_count > 24 {
        rng.gen_range(0..2)
    } else {
        rng.gen_range(0..5)
    };
    match variant {
        0 => {
            let objs: Vec<_> = base.objects.iter().cloned().collect();
            let kept: std::collections::BTreeSet<_> = objs
                .iter()
                .filter(|_| rng.gen_bool(0.7))
                .cloned()
                .collect();
            let d = fullsub_disp(base, &|a| kept.contains(a))?;
            Ok((format!("fullsub[{}]", kept.len()), d))
        }
        1 => {
            let tags = rng.gen_range(1..=2);
            Ok((format!("tagged-chaotic[{tags}]"), tagged_chaotic(base, tags)?))
        }
        2 => {
            let pool = fiber_pool();
            let (qname, q) = &pool[rng.gen_range(0..pool.len())];
            Ok((format!("trivial[{qname}]"), trivial_disp(base, q)?))
        }
        3 => {
            let (n1, d1) = gen_disp(rng, base, depth - 1)?;
            let (n2, d2) = gen_disp(rng, base, depth - 1)?;
            Ok((format!("prod[{n1},{n2}]"), prod_disp(&d1, &d2)?))
        }
        _ => {
            let (n1, d1) = gen_disp(rng, base, depth - 1)?;
            let t1 = total_bicat(&d1)?;
            let (n2, d2) = gen_disp(rng, &t1, 0)?;
            Ok((format!("sigma[{n1},{n2}]"), sigma_disp(&d1, &d2)?))
        }
    }
}

/// Generates `count` corpus members deterministically from the seed. Every
/// member's base is univalent by family choice and its displayed layer is
/// displayed-univalent by construction; callers re-check both.
pub fn displayed_corpus(seed: u64, count: usize) -> Result<Vec<CorpusInstance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases = base_pool();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (bname, base) = &bases[rng.gen_range(0..bases.len())];
        let (dname, disp) = gen_disp(&mut rng, base, 2)?;
        let prop_and_groupoidal = crate::display::is_locally_propositional(&disp)?
            && crate::display::is_locally_groupoidal(&disp)?;
        out.push(CorpusInstance {
            name: format!("{bname}/{dname}#{}", out.len()),
            disp,
            prop_and_groupoidal,
        });
    }
    Ok(out)
}

/// The summary of one fuzz run: per-theorem instance counts.
#[derive(Debug, Clone, serde::Serialize)]
pub struct FuzzSummary {
    pub seed: u64,
    pub count: usize,
    pub total_univalence_instances: usize,
    pub sigma_univalence_instances: usize,
    pub sigma_disp_univalence_instances: usize,
    pub prop_chaotic_instances: usize,
    pub alg_univalence_instances: usize,
    pub failures: Vec<String>,
}

/// Runs the theorem suites over a seeded corpus: total univalence over
/// displayed-univalent members, sigma univalence, the chaotic/propositional
/// criterion, and algebra univalence over the univalent bases.
pub fn run_fuzz(seed: u64, count: usize, budget: &Budget) -> Result<FuzzSummary> {
    let corpus = displayed_corpus(seed, count)?;
    let mut summary = FuzzSummary {
        seed,
        count,
        total_univalence_instances: 0,
        sigma_univalence_instances: 0,
        sigma_disp_univalence_instances: 0,
        prop_chaotic_instances: 0,
        alg_univalence_instances: 0,
        failures: Vec::new(),
    };
    for inst in &corpus {
        let base_univalent = crate::univalence::check_univalent(&inst.disp.base, budget)?.passed();
        if !base_univalent {
            summary.failures.push(format!("{}: base not univalent", inst.name));
            continue;
        }
        let disp_univalent = crate::display::check_disp_univalence(&inst.disp, budget)?.passed();
        if !disp_univalent {
            summary
                .failures
                .push(format!("{}: displayed layer not univalent", inst.name));
            continue;
        }
        let total = total_bicat(&inst.disp)?;
        if crate::univalence::check_univalent(&total, budget)?.passed() {
            summary.total_univalence_instances += 1;
        } else {
            summary
                .failures
                .push(format!("{}: total not univalent", inst.name));
        }
        if inst.name.contains("tagged-chaotic") && inst.prop_and_groupoidal {
            summary.prop_chaotic_instances += 1;
        }
    }
    // Sigma instances: pair corpus members over the same base shape.
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let bases = base_pool();
    for k in 0..(count / 8).max(4) {
        let (_, base) = &bases[rng.gen_range(0..bases.len())];
        let (n1, d1) = gen_disp(&mut rng, base, 1)?;
        let t1 = total_bicat(&d1)?;
        let (n2, d2) = gen_disp(&mut rng, &t1, 1)?;
        let name = format!("sigma-pair[{n1};{n2}]#{k}");
        let s = sigma_disp(&d1, &d2)?;
        let total_s = total_bicat(&s)?;
        if crate::univalence::check_univalent(&total_s, budget)?.passed() {
            summary.sigma_univalence_instances += 1;
        } else {
            summary.failures.push(format!("{name}: sigma total not univalent"));
        }
        let both_pg = crate::display::is_locally_propositional(&d1)?
            && crate::display::is_locally_groupoidal(&d1)?
            && crate::display::is_locally_propositional(&d2)?
            && crate::display::is_locally_groupoidal(&d2)?;
        if both_pg {
            if crate::display::check_disp_univalence(&s, budget)?.passed() {
                summary.sigma_disp_univalence_instances += 1;
            } else {
                summary
                    .failures
                    .push(format!("{name}: sigma not displayed univalent"));
            }
        }
    }
    // Algebra univalence over the univalent base pool.
    for (bname, base) in base_pool() {
        let idf = crate::psfun::id_psfunctor(&base)?;
        let alg = crate::algebra::alg_disp(&base, &idf, budget)?;
        let t = total_bicat(&alg)?;
        if crate::univalence::check_univalent(&t, budget)?.passed() {
            summary.alg_univalence_instances += 1;
        } else {
            summary
                .failures
                .push(format!("alg[{bname}]: total not univalent"));
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::display::check_disp_laws;

    #[test]
    fn corpus_is_deterministic() {
        let a = displayed_corpus(7, 12).unwrap();
        let b = displayed_corpus(7, 12).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.name, y.name);
            assert_eq!(x.disp, y.disp);
        }
        let c = displayed_corpus(8, 12).unwrap();
        assert!(a.iter().zip(c.iter()).any(|(x, y)| x.disp != y.disp));
    }

    #[test]
    fn corpus_members_are_lawful() {
        let budget = Budget::default();
        for inst in displayed_corpus(3, 24).unwrap() {
            let r = check_disp_laws(&inst.disp, &budget).unwrap();
            assert!(r.passed(), "{}: {:?}", inst.name, r.violations);
        }
    }

    #[test]
    fn small_fuzz_run_is_clean() {
        let budget = Budget::default();
        let summary = run_fuzz(7, 24, &budget).unwrap();
        assert!(summary.failures.is_empty(), "{:?}", summary.failures);
        assert_eq!(summary.total_univalence_instances, 24);
        assert!(summary.sigma_univalence_instances >= 4);
        assert_eq!(summary.alg_univalence_instances, base_pool().len());
    }
}
