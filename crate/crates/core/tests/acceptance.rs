//! Acceptance suite: one line per criterion with its verdict and timing.
//! Runs without the libtest harness so the lines always print.

mod common;

use std::collections::{BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hullkit::algebra::{make_cyclic_group, make_set, make_vector_space, Transf};
use hullkit::audit::audit;
use hullkit::cases::{
    build_matrix_semiring, build_sn_model, check_prop_semiring, check_prop_semiring_plus, clifford_counterexample,
    matrix_unit, sn_eggbox_shape, sn_ideal_analysis, FiniteSemiring, PropStatus, SnIdeal,
};
use hullkit::conditions::{build_pipeline, is_separable, sigma, sigma_matches_map};
use hullkit::config::RunConfig;
use hullkit::corpus::corpus;
use hullkit::hull::{
    enumerate_bitranslations, enumerate_left_translations, enumerate_right_translations, hull_report,
    idealiser_in_maps, is_left_balanced, is_left_translation, natural_chi, omega_semigroup, BiTranslation,
};
use hullkit::semigroup::{
    enumerate_endomorphisms, full_transformation_monoid, iso_check, null_semigroup, rank_ideal_in, right_zero,
    semigroup_of_op, FinSemigroup, Side,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn h<T>(r: hullkit::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn cfg() -> RunConfig {
    RunConfig::default()
}

/// `|Ω(M)| = |M|` with χ a bijective morphism.
fn monoid_hull_matches(m: &FinSemigroup) -> Result<bool, String> {
    let all: Vec<usize> = (0..m.order()).collect();
    let omega = h(enumerate_bitranslations(m, &cfg()))?;
    let chi = h(natural_chi(m, &all, Some(&omega)))?;
    Ok(omega.len() == m.order() && chi.morphism && chi.injective && chi.surjective == Some(true))
}

const RANDOM_PER_ORDER: usize = 10;
const RANDOM_ATTEMPTS: usize = 2_000_000;

/// Distinct associative tables with identity 0, by rejection sampling.
fn random_monoids(order: usize, rng: &mut ChaCha8Rng) -> Result<Vec<FinSemigroup>, String> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for _ in 0..RANDOM_ATTEMPTS {
        let mut t = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                t[a * order + b] = if a == 0 {
                    b
                } else if b == 0 {
                    a
                } else {
                    rng.gen_range(0..order)
                };
            }
        }
        if common::associative(order, &t) && seen.insert(t.clone()) {
            out.push(h(FinSemigroup::from_table(order, t, 1))?);
            if out.len() == RANDOM_PER_ORDER {
                return Ok(out);
            }
        }
    }
    Err(format!("only {} random monoids of order {order} found", out.len()))
}

fn monoid_law() -> Outcome {
    let c = cfg();
    let mut monoids: Vec<(String, FinSemigroup)> = Vec::new();
    for n in 1..=6 {
        monoids.push((format!("C{n}"), h(semigroup_of_op(&make_cyclic_group(n), 0))?));
    }
    monoids.push(("T2".into(), h(full_transformation_monoid(2, &c))?));
    let t3 = h(full_transformation_monoid(3, &c))?;
    let t3maps = h(t3.maps())?.to_vec();
    let id = Transf::identity(3);
    let mut subs: BTreeSet<Vec<Transf>> = BTreeSet::new();
    for a in &t3maps {
        for b in &t3maps {
            let s = h(FinSemigroup::generated_by_maps(3, &[id.clone(), a.clone(), b.clone()], &c))?;
            if s.order() <= 6 {
                subs.insert(h(s.maps())?.to_vec());
            }
        }
    }
    let n_subs = subs.len();
    for maps in subs {
        monoids.push(("T3-sub".into(), h(FinSemigroup::from_maps(3, maps, c.max_table_order))?));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    for order in [3, 4] {
        for m in random_monoids(order, &mut rng)? {
            monoids.push((format!("random{order}"), m));
        }
    }
    for (name, m) in &monoids {
        ensure(m.order() <= 6 && m.identity().is_some(), format!("{name} is not a small monoid"))?;
        ensure(monoid_hull_matches(m)?, format!("{name} of order {}: Ω(M) ≇ M via χ", m.order()))?;
    }
    Ok(format!("{} monoids ({n_subs} T3 submonoids, {} random)", monoids.len(), 2 * RANDOM_PER_ORDER))
}

fn null_semigroups() -> Outcome {
    for m in 2..=5usize {
        let z = h(null_semigroup(m))?;
        let l = h(enumerate_left_translations(&z, &cfg()))?.len();
        let r = h(enumerate_right_translations(&z, &cfg()))?.len();
        let o = h(enumerate_bitranslations(&z, &cfg()))?.len();
        let expect = m.pow(m as u32 - 1);
        ensure(
            l == expect && r == expect && o == expect * expect,
            format!("m = {m}: |Λ| = {l}, |P| = {r}, |Ω| = {o}, expected {expect}, {expect}, {}", expect * expect),
        )?;
    }
    Ok("m = 2..5 exact".into())
}

fn right_zero_semigroups() -> Outcome {
    for m in 2..=4usize {
        let s = h(right_zero(m))?;
        let lefts = h(enumerate_left_translations(&s, &cfg()))?;
        let id: Vec<usize> = (0..m).collect();
        ensure(
            lefts.len() == 1 && lefts[0].table == id,
            format!("m = {m}: left translations are not just the identity"),
        )?;
        let omega = h(enumerate_bitranslations(&s, &cfg()))?;
        ensure(omega.len() == m.pow(m as u32), format!("m = {m}: |Ω| = {}", omega.len()))?;
        // Ω -> T_m, (id, ρ) ↦ ρ, must be a bijective morphism
        let images: HashSet<Vec<usize>> = omega.iter().map(|b| b.rho().to_vec()).collect();
        ensure(images.len() == omega.len(), format!("m = {m}: ρ does not determine the pair"))?;
        for a in &omega {
            for b in &omega {
                let ab = a.compose(b);
                let expect = Transf::new(a.rho().to_vec()).then(&Transf::new(b.rho().to_vec()));
                ensure(ab.rho() == expect.values(), format!("m = {m}: product not preserved"))?;
            }
        }
        let o = h(omega_semigroup(&omega, &cfg()))?;
        let tm = h(full_transformation_monoid(m, &cfg()))?;
        ensure(h(iso_check(&o, &tm))?.is_some(), format!("m = {m}: isomorphism search failed"))?;
    }
    Ok("m = 2..4, Ω ≅ T_m".into())
}

fn t3_rank_ideals() -> Outcome {
    let c = cfg();
    let alg = make_set(3);
    let end = h(enumerate_endomorphisms(&alg, None, &c))?;
    ensure(end.order() == 27, "End of a 3-set is not T3")?;
    let load = |k: usize| -> Result<FinSemigroup, String> {
        let members = h(rank_ideal_in(&alg, &end, k))?;
        Ok(h(end.restrict(&members))?.0)
    };
    let i2 = load(2)?;
    let o2 = h(enumerate_bitranslations(&i2, &c))?;
    ensure(i2.order() == 3 && o2.len() == 27, format!("I2: |I| = {}, |Ω| = {}", i2.order(), o2.len()))?;
    let os = h(omega_semigroup(&o2, &c))?;
    ensure(h(iso_check(&os, &end))?.is_some(), "Ω(I2) ≇ T3")?;
    let ti2 = h(FinSemigroup::from_maps(3, h(idealiser_in_maps(&i2, Side::TwoSided, &c))?, c.max_table_order))?;
    ensure(h(iso_check(&os, &ti2))?.is_some(), "Ω(I2) ≇ T(A, I2)")?;
    ensure(!h(is_separable(&alg, &i2))?, "I2 separates points")?;

    let i3 = load(3)?;
    let o3 = h(enumerate_bitranslations(&i3, &c))?;
    ensure(i3.order() == 21 && o3.len() == 27, format!("I3: |I| = {}, |Ω| = {}", i3.order(), o3.len()))?;
    let r = h(hull_report(&alg, &i3, Some(&end), &c))?;
    let v = &r.verdicts;
    ensure(
        v.chi_s_injective == Some(true) && v.chi_s_surjective == Some(true),
        "χ: T3 -> Ω(I3) not bijective",
    )?;
    ensure(h(is_separable(&alg, &i3))?, "I3 does not separate points")?;
    Ok("I2: Ω ≅ T3 ≅ T(A,I2); I3: χ bijective".into())
}

fn vector_space_rank_ideal() -> Outcome {
    let c = cfg();
    let alg = h(make_vector_space(2, 2))?;
    let end = h(enumerate_endomorphisms(&alg, None, &c))?;
    let members = h(rank_ideal_in(&alg, &end, 2))?;
    let (i, _) = h(end.restrict(&members))?;
    ensure(i.order() == 10, format!("|I2| = {}", i.order()))?;
    let r = h(hull_report(&alg, &i, Some(&end), &c))?;
    ensure(r.counts.bitranslations == Some(16), format!("|Ω| = {:?}", r.counts.bitranslations))?;
    let v = &r.verdicts;
    ensure(
        v.chi_s_injective == Some(true) && v.chi_s_surjective == Some(true),
        "χ: End -> Ω not bijective",
    )?;
    Ok("|I2| = 10, |Ω| = 16".into())
}

fn boolean_matrices() -> Outcome {
    let c = cfg();
    let b = FiniteSemiring::boolean();
    let m2 = h(build_matrix_semiring(&b, 2))?;
    let s = m2.multiplicative_semigroup();
    let e11 = h(matrix_unit(&b, 2, 0, 0))?;
    let e22 = h(matrix_unit(&b, 2, 1, 1))?;
    let ideal = h(s.ideal_generated(&[e11], Side::TwoSided))?;
    ensure(ideal.len() == 10, format!("ideal of E11 has order {}", ideal.len()))?;
    let p = h(check_prop_semiring(&m2, &ideal, &c))?;
    ensure(p.decomposition.is_some(), "no decomposition of the identity")?;
    ensure(p.status == PropStatus::Confirmed, format!("{:?}", p.status))?;
    let q = h(check_prop_semiring_plus(&m2, &ideal, &[e11, e22], &c))?;
    ensure(
        q.cond1_subset.is_some() && q.cond2 && q.cond2_exhaustive && q.cond3,
        "idempotent conditions not verified exhaustively",
    )?;
    let chi = q.chi.as_ref().ok_or("χ not computed")?;
    ensure(chi.omega == 16 && chi.bijective(), format!("|Ω| = {}, bijective = {}", chi.omega, chi.bijective()))?;
    Ok(format!("|I| = 10, |Ω| = 16, {} choice tuples", q.cond2_tuples))
}

fn s3_end_to_end() -> Outcome {
    let c = cfg();
    let model = h(build_sn_model(3, false))?;
    let (cross, end) = h(model.cross_check(&c))?;
    ensure(end.order() == 10 && cross.equal(), format!("|End(S3)| = {}", end.order()))?;
    let oracle = common::naive_endomorphisms(&model.group);
    ensure(oracle.len() == 10, format!("brute force finds {} endomorphisms", oracle.len()))?;

    let a = sn_ideal_analysis(&model, SnIdeal::NonAut, &c).map_err(|e| e.to_string())?;
    let rc = a.realization.as_ref().ok_or("realisation check skipped")?;
    ensure(rc.omega_equals_realized, "Ω(I) differs from the realised pairs")?;
    ensure(rc.quotient_isomorphic, "Ω(I) ≇ T/≡_im")?;

    let non_units = end.non_units();
    let (i, _) = h(end.restrict(&non_units))?;
    let omega = h(enumerate_bitranslations(&i, &c))?;
    let naive = common::naive_realized(&i);
    let mine: BTreeSet<(Vec<usize>, Vec<usize>)> =
        omega.iter().map(|b| (b.lambda().to_vec(), b.rho().to_vec())).collect();
    ensure(mine == naive, "Ω(I) differs from the pairs realised over all 6^6 maps")?;

    let p = h(build_pipeline(&model.group, &i, &c))?;
    ensure(p.size() == 2 && p.i_mod.order() == 2, format!("|A/∼| = {}, |I/≈| = {}", p.size(), p.i_mod.order()))?;
    h(sigma(&p, &omega, &c))?;
    let tmaps = h(idealiser_in_maps(&i, Side::TwoSided, &c))?;
    for phi in &tmaps {
        ensure(h(sigma_matches_map(&p, &i, phi))?, format!("σ disagrees with {phi:?}"))?;
    }
    Ok(format!("|Ω| = {}, σ checked on {} maps", omega.len(), tmaps.len()))
}

fn s5() -> Outcome {
    let c = cfg();
    let model = h(build_sn_model(5, false))?;
    let (cross, _) = h(model.cross_check(&c))?;
    ensure(cross.equal() && cross.model == 146, format!("{cross:?}"))?;
    let rules = model.verify_rules();
    ensure(rules.iter().all(|r| r.holds()), "a composition rule fails")?;
    let end = h(model.semigroup(&c))?;
    let (shape, _) = h(sn_eggbox_shape(&model, &end))?;
    ensure(shape.matches_classification(120), format!("{shape:?}"))?;
    let a = sn_ideal_analysis(&model, SnIdeal::EvenGenerated, &c).map_err(|e| e.to_string())?;
    let u = a.unrealizable_left.as_ref().ok_or("no candidate left translation")?;
    ensure(u.is_left_translation && !u.left_balanced, "the swapped λ is balanced")?;
    // recheck balance independently of the analysis
    let (k, members) = h(end.restrict(
        &model.even_generated().iter().map(|f| end.index_of(f).unwrap()).collect::<Vec<_>>(),
    ))?;
    ensure(members.len() == 16, "K ∪ {φ_e} has the wrong size")?;
    let pos = |p: &[usize]| model.perms.binary_search(&p.to_vec()).unwrap();
    let (s, t) = (pos(&u.s), pos(&u.t));
    let phi = |x: usize| k.index_of(model.phi_of(x).unwrap()).unwrap();
    let lam: Vec<usize> = (0..k.order())
        .map(|x| if x == phi(s) { phi(t) } else { x })
        .collect();
    ensure(h(is_left_translation(&k, &lam))?, "the swapped map is not a left translation")?;
    ensure(h(is_left_balanced(&k, &lam))?.is_none(), "independent balance check disagrees")?;
    Ok("|End(S5)| = 146, rules and egg-box verified".into())
}

fn clifford() -> Outcome {
    let v = h(clifford_counterexample(&cfg()))?;
    ensure(v.is_ideal, "I is not an ideal")?;
    ensure(v.right_reductive, "I is not right reductive")?;
    ensure(!v.separable, "A is I-separable")?;
    ensure(v.pi_lambda_injective, "π_Λ is not injective")?;
    Ok(format!("|I| = {}, |Ω| = {}", v.ideal_order, v.omega))
}

fn theorem_sweep() -> Outcome {
    let c = cfg();
    let instances = h(corpus(&c))?;
    ensure(instances.len() >= 30, format!("only {} instances", instances.len()))?;
    let r = h(audit(&instances, &c))?;
    let never_run: Vec<&String> = r.tallies.iter().filter(|(_, t)| t.checked == 0).map(|(k, _)| k).collect();
    ensure(never_run.is_empty(), format!("checks never exercised: {never_run:?}"))?;
    let n = r.violation_count();
    ensure(n == 0, format!("{n} violations: {:?}", r.tallies.values().flat_map(|t| &t.violations).collect::<Vec<_>>()))?;
    Ok(format!("{} instances, {} checks, {} skipped, 0 violations", instances.len(), r.checked(), r.skipped()))
}

fn as_set(omega: &[BiTranslation]) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    omega.iter().map(|b| (b.lambda().to_vec(), b.rho().to_vec())).collect()
}

fn oracle_equivalence() -> Outcome {
    let c = cfg();
    let mut cases: Vec<(String, FinSemigroup)> = Vec::new();
    for m in 1..=3 {
        for (k, t) in common::all_semigroup_tables(m).into_iter().enumerate() {
            cases.push((format!("table{m}#{k}"), h(FinSemigroup::from_table(m, t, 1))?));
        }
    }
    for m in 4..=5 {
        cases.push((format!("null{m}"), h(null_semigroup(m))?));
        cases.push((format!("rz{m}"), h(right_zero(m))?));
        cases.push((format!("C{m}"), h(semigroup_of_op(&make_cyclic_group(m), 0))?));
    }
    for inst in h(corpus(&c))? {
        if inst.ideal.order() <= 5 {
            cases.push((inst.name.clone(), inst.ideal));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed ^ 0x11);
    let mut sampled = 0;
    while sampled < 40 {
        let gens: Vec<Transf> = (0..rng.gen_range(1..=2))
            .map(|_| Transf::new((0..4).map(|_| rng.gen_range(0..4)).collect()))
            .collect();
        let s = h(FinSemigroup::generated_by_maps(4, &gens, &c))?;
        if s.order() <= 5 {
            sampled += 1;
            cases.push((format!("random-maps#{sampled}"), s));
        }
    }
    for (name, s) in &cases {
        let omega = h(enumerate_bitranslations(s, &c))?;
        ensure(as_set(&omega) == common::naive_bitranslations(s), format!("{name}: Ω differs"))?;
        let (l, r) = common::naive_translation_counts(s);
        let (l2, r2) = (
            h(enumerate_left_translations(s, &c))?.len(),
            h(enumerate_right_translations(s, &c))?.len(),
        );
        ensure((l, r) == (l2, r2), format!("{name}: translation counts differ"))?;
    }
    Ok(format!("{} semigroups of order <= 5", cases.len()))
}

struct Criterion {
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { name: "monoid-hull-is-the-monoid", limit: Duration::from_secs(10), run: monoid_law },
        Criterion { name: "null-semigroup-translation-counts", limit: Duration::from_secs(10), run: null_semigroups },
        Criterion { name: "right-zero-hull-is-full-transformation-monoid", limit: Duration::from_secs(10), run: right_zero_semigroups },
        Criterion { name: "t3-rank-ideals", limit: Duration::from_secs(60), run: t3_rank_ideals },
        Criterion { name: "gf2-squared-rank-ideal", limit: Duration::from_secs(30), run: vector_space_rank_ideal },
        Criterion { name: "boolean-2x2-matrices", limit: Duration::from_secs(30), run: boolean_matrices },
        Criterion { name: "s3-end-to-end", limit: Duration::from_secs(120), run: s3_end_to_end },
        Criterion { name: "s5-endomorphisms-and-unbalanced-left-translation", limit: Duration::from_secs(120), run: s5 },
        Criterion { name: "clifford-right-reductive-not-separable", limit: Duration::from_secs(10), run: clifford },
        Criterion { name: "theorem-sweep-over-corpus", limit: Duration::from_secs(300), run: theorem_sweep },
        Criterion { name: "naive-translation-oracle", limit: Duration::from_secs(30), run: oracle_equivalence },
    ];
    let width = criteria.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if took <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} {:width$}  {:>7.2}s / {:>3}s  {detail}",
            if ok { "PASS" } else { "FAIL" },
            c.name,
            took.as_secs_f64(),
            c.limit.as_secs(),
        );
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
