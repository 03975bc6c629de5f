use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{image_of, is_representable, is_separable};
use crate::algebra::{for_each_choice, FiniteAlgebra, Partition, Transf};
use crate::config::RunConfig;
use crate::error::{HullError, Result};
use crate::hull::{induced_bitranslation, is_bitranslation, BiTranslation};
use crate::semigroup::FinSemigroup;

/// Most lifts materialised by [`lifts`].
pub const LIFT_LIMIT: usize = 1_000_000;
/// Lifts compared when checking that `f ⋆ α` does not depend on the lift.
const LIFT_CHECKS: usize = 4096;
const SIGMA_PAIR_LIMIT: usize = 1_000_000;
const SIGMA_SAMPLES: usize = 100_000;

fn violation(msg: impl Into<String>) -> HullError {
    HullError::TheoremViolation(msg.into())
}

/// The chain `∼_1 ⊆ ∼_2 ⊆ ...` where `a ∼_j b` iff `aγ = bγ` for all `γ ∈ I^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimChain {
    /// `levels[j - 1]` is `∼_j`, up to the point where both the powers of `I`
    /// and the relations have stopped changing.
    pub levels: Vec<Partition>,
    /// `powers[j - 1]` is `I^j` as sorted element indices of `I`.
    pub powers: Vec<Vec<usize>>,
    /// Least `k` with `∼_k = ∼_{k+1}`.
    pub k: usize,
}

impl SimChain {
    pub fn sim(&self) -> &Partition {
        &self.levels[self.k - 1]
    }
}

fn relation_for(maps: &[Transf], power: &[usize], n: usize) -> Partition {
    Partition::from_key(n, |x| power.iter().map(|&g| maps[g][x]).collect::<Vec<_>>())
}

/// Computes the chain and checks that it is constant from `k` on, that
/// `∼_j = ∼_{j+1}` exactly when `I` acts separably on `A/∼_j`, and that
/// `k = 1` whenever `I^2 = I`.
pub fn sim_chain(i: &FinSemigroup, step_bound: usize) -> Result<SimChain> {
    let maps = i.maps()?;
    let n = i.carrier().unwrap_or(0);
    let all: Vec<usize> = (0..i.order()).collect();
    let mut powers = vec![all.clone()];
    let mut levels = vec![relation_for(maps, &all, n)];
    let mut k = None;
    loop {
        let j = levels.len();
        if j > step_bound {
            return Err(HullError::size("length of the ∼ chain", j, step_bound));
        }
        let next_power = i.set_product(&powers[j - 1], &all);
        let next = relation_for(maps, &next_power, n);
        let cur = &levels[j - 1];
        // I acts separably on A/∼_j: classes of aα for all α determine [a]
        let idx = cur.class_index();
        let acted = Partition::from_key(n, |x| maps.iter().map(|a| idx[a[x]]).collect::<Vec<_>>());
        let separable_action = acted.refines(cur);
        let stable = next == *cur;
        if separable_action != stable {
            return Err(violation(format!(
                "at step {j}: separable action is {separable_action} but ∼_{j} = ∼_{} is {stable}",
                j + 1
            )));
        }
        match (k, stable) {
            (None, true) => k = Some(j),
            (Some(kk), false) => {
                return Err(violation(format!("∼ changes again at step {j} after stabilising at {kk}")))
            }
            _ => {}
        }
        let power_stable = next_power == powers[j - 1];
        powers.push(next_power);
        levels.push(next);
        if k.is_some() && power_stable {
            break;
        }
    }
    let k = k.expect("loop ends after stabilising");
    if powers[1] == powers[0] && k != 1 {
        return Err(violation(format!("I is idempotent but the chain stabilises at {k}")));
    }
    Ok(SimChain { levels, powers, k })
}

/// `A/∼` with the induced action of `I/≈`.
#[derive(Debug, Clone)]
pub struct QuotientPipeline {
    pub chain: SimChain,
    pub quotient: FiniteAlgebra,
    /// `a ↦ [a]`.
    pub projection: Transf,
    /// `α ≈ β` iff `aα ∼ aβ` for all `a`, on element indices of `I`.
    pub approx: Partition,
    /// The maps `[a] ↦ [aα]`, one per class of `≈`.
    pub i_mod: FinSemigroup,
    /// Index in `i_mod` of the class of each element of `I`.
    pub class_map: Vec<usize>,
}

impl QuotientPipeline {
    pub fn k(&self) -> usize {
        self.chain.k
    }

    pub fn sim(&self) -> &Partition {
        self.chain.sim()
    }

    /// Quotient carrier size.
    pub fn size(&self) -> usize {
        self.quotient.size()
    }
}

/// Builds `A/∼`, `≈` and `I/≈` for `I ⊆ End(A)` and checks that `I/≈` acts
/// by endomorphisms, separates `A/∼`, represents it whenever `I` represents
/// `A`, and that `α ≈ β` iff `αγ = βγ` for all `γ ∈ I^k`.
pub fn build_pipeline(alg: &FiniteAlgebra, i: &FinSemigroup, cfg: &RunConfig) -> Result<QuotientPipeline> {
    let maps = i.maps()?;
    let n = alg.size();
    if i.carrier() != Some(n) {
        return Err(HullError::dim(n, i.carrier().unwrap_or(0), "carrier of I vs algebra size"));
    }
    for (k, a) in maps.iter().enumerate() {
        if !alg.is_endomorphism(a)? {
            return Err(HullError::Precondition(format!("element {k} of I is not an endomorphism")));
        }
    }
    let chain = sim_chain(i, i.order() + 2)?;
    let sim = chain.sim().clone();
    let (quotient, projection) = match alg.quotient(&sim) {
        Ok(q) => q,
        Err(HullError::NotACongruence { op, tuple }) => {
            return Err(violation(format!("∼ is not a congruence (op `{op}` at {tuple:?})")))
        }
        Err(e) => return Err(e),
    };
    let qn = quotient.size();
    let reps = sim.representatives();
    let mut bars = Vec::with_capacity(maps.len());
    for (k, a) in maps.iter().enumerate() {
        let bar = Transf::new(reps.iter().map(|&r| projection[a[r]]).collect());
        if (0..n).any(|x| projection[a[x]] != bar[projection[x]]) {
            return Err(violation(format!("element {k} of I does not act on A/∼")));
        }
        if !quotient.is_endomorphism(&bar)? {
            return Err(violation(format!("element {k} of I acts on A/∼ by a non-endomorphism")));
        }
        bars.push(bar);
    }
    let approx = Partition::from_key(maps.len(), |k| bars[k].clone());
    let i_mod = FinSemigroup::from_maps(qn, bars.clone(), cfg.max_table_order)?;
    let class_map: Vec<usize> = bars.iter().map(|b| i_mod.index_of(b).expect("present")).collect();

    if !is_separable(&quotient, &i_mod)? {
        return Err(violation("A/∼ is not separable by I/≈"));
    }
    if is_representable(alg, i)? && !is_representable(&quotient, &i_mod)? {
        return Err(violation("A is representable by I but A/∼ is not by I/≈"));
    }
    let top = &chain.powers[chain.k - 1];
    let described = Partition::from_key(maps.len(), |k| {
        top.iter().map(|&g| maps[k].then(&maps[g])).collect::<Vec<_>>()
    });
    if described != approx {
        return Err(violation("≈ differs from agreement after every element of I^k"));
    }
    Ok(QuotientPipeline {
        chain,
        quotient,
        projection,
        approx,
        i_mod,
        class_map,
    })
}

/// Pushes a table over `I` down to `I/≈`, checking it respects `≈`.
fn push_down(p: &QuotientPipeline, table: &[usize], what: &str) -> Result<Vec<usize>> {
    let m = p.i_mod.order();
    let mut out = vec![usize::MAX; m];
    for (a, &t) in table.iter().enumerate() {
        let c = p.class_map[a];
        let v = p.class_map[t];
        if out[c] == usize::MAX {
            out[c] = v;
        } else if out[c] != v {
            return Err(violation(format!("{what} does not respect ≈")));
        }
    }
    Ok(out)
}

/// The images `σ(λ, ρ) = (λ̄, ρ̄)` in the hull of `I/≈`, aligned with
/// `omega`. Each image must be a bi-translation, and `σ` a morphism
/// (checked on all pairs up to a million, else on a seeded sample).
pub fn sigma(p: &QuotientPipeline, omega: &[BiTranslation], cfg: &RunConfig) -> Result<Vec<BiTranslation>> {
    let mut out = Vec::with_capacity(omega.len());
    for bt in omega {
        let img = BiTranslation::new(push_down(p, bt.lambda(), "λ")?, push_down(p, bt.rho(), "ρ")?);
        if !is_bitranslation(&p.i_mod, &img)? {
            return Err(violation("σ image is not a bi-translation"));
        }
        out.push(img);
    }
    let k = omega.len();
    let check = |a: usize, b: usize| -> Result<()> {
        let ab = omega[a].compose(&omega[b]);
        let lhs = BiTranslation::new(push_down(p, ab.lambda(), "λ")?, push_down(p, ab.rho(), "ρ")?);
        if lhs != out[a].compose(&out[b]) {
            return Err(violation(format!("σ is not multiplicative at ({a}, {b})")));
        }
        Ok(())
    };
    if k.saturating_mul(k) <= SIGMA_PAIR_LIMIT {
        for a in 0..k {
            for b in 0..k {
                check(a, b)?;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for _ in 0..SIGMA_SAMPLES {
            check(rng.gen_range(0..k), rng.gen_range(0..k))?;
        }
    }
    Ok(out)
}

/// For `φ ∈ T(A, I)`: `φ̄ : [a] ↦ [aφ]` is well defined and
/// `σ(λ_φ, ρ_φ) = (λ_φ̄, ρ_φ̄)`.
pub fn sigma_matches_map(p: &QuotientPipeline, i: &FinSemigroup, phi: &Transf) -> Result<bool> {
    let bt = induced_bitranslation(i, phi)?;
    let reps = p.sim().representatives();
    let bar = Transf::new(reps.iter().map(|&r| p.projection[phi[r]]).collect());
    let n = phi.domain_size();
    if (0..n).any(|x| p.projection[phi[x]] != bar[p.projection[x]]) {
        return Err(violation("a map idealising I does not respect ∼"));
    }
    let lhs = BiTranslation::new(push_down(p, bt.lambda(), "λ")?, push_down(p, bt.rho(), "ρ")?);
    Ok(lhs == induced_bitranslation(&p.i_mod, &bar)?)
}

fn lift_lists(p: &QuotientPipeline, f: &Transf) -> Result<Vec<Vec<usize>>> {
    let qn = p.size();
    if f.domain_size() != qn || f.values().iter().any(|&v| v >= qn) {
        return Err(HullError::dim(qn, f.domain_size(), "map on A/∼"));
    }
    let classes = p.sim().classes();
    Ok(p.projection.values().iter().map(|&c| classes[f[c]].clone()).collect())
}

/// Number of maps `f̂` on `A` with `[a f̂] = [a] f`.
pub fn lift_count(p: &QuotientPipeline, f: &Transf) -> Result<usize> {
    let lists = lift_lists(p, f)?;
    Ok(lists.iter().try_fold(1usize, |acc, l| acc.checked_mul(l.len())).unwrap_or(usize::MAX))
}

/// Every lift of `f`, lexicographically; refused above a million.
pub fn lifts(p: &QuotientPipeline, f: &Transf) -> Result<Vec<Transf>> {
    let count = lift_count(p, f)?;
    if count > LIFT_LIMIT {
        return Err(HullError::size("number of lifts", count, LIFT_LIMIT));
    }
    let mut out = Vec::with_capacity(count);
    for_each_choice(&lift_lists(p, f)?, |v| out.push(Transf::new(v.to_vec())));
    Ok(out)
}

/// `f ⋆ α = f̂ α` for `α ∈ I^k`, checked to be independent of the lift `f̂`
/// (all lifts when few, otherwise a seeded sample), and to be an
/// endomorphism of `A` whenever `f` is one of `A/∼`.
pub fn f_star(
    alg: &FiniteAlgebra,
    p: &QuotientPipeline,
    i: &FinSemigroup,
    f: &Transf,
    alpha: usize,
    cfg: &RunConfig,
) -> Result<Transf> {
    if !p.chain.powers[p.k() - 1].contains(&alpha) {
        return Err(HullError::Precondition(format!("element {alpha} is not in I^k")));
    }
    let a = &i.maps()?[alpha];
    let lists = lift_lists(p, f)?;
    let first = Transf::new(lists.iter().map(|l| l[0]).collect());
    let result = first.then(a);
    let count = lift_count(p, f)?;
    let mut differs = false;
    if count <= LIFT_CHECKS {
        for_each_choice(&lists, |v| differs |= Transf::new(v.to_vec()).then(a) != result);
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for _ in 0..LIFT_CHECKS {
            let lift = Transf::new(lists.iter().map(|l| l[rng.gen_range(0..l.len())]).collect());
            differs |= lift.then(a) != result;
        }
    }
    if differs {
        return Err(violation("f ⋆ α depends on the choice of lift"));
    }
    if p.quotient.is_endomorphism(f)? && !alg.is_endomorphism(&result)? {
        return Err(violation("f ⋆ α is not an endomorphism although f is"));
    }
    Ok(result)
}

/// The endomorphism `f_ρ` of `A/∼` with `f_ρ([xα]) = [x(αρ)]`, for `A`
/// representable by `I` and `ρ` a right translation linked to some left
/// translation, `I` an ideal of `End(A)`. Built on `im I` and extended along
/// closure witnesses, then checked to be well defined and a morphism.
/// When `k = 1`, also returns the table `α ↦ f_ρ ⋆ α`.
pub fn f_rho(
    alg: &FiniteAlgebra,
    p: &QuotientPipeline,
    i: &FinSemigroup,
    rho: &[usize],
    cfg: &RunConfig,
) -> Result<(Transf, Option<Vec<usize>>)> {
    if !is_representable(alg, i)? {
        return Err(HullError::Precondition("A is not representable by I".into()));
    }
    let maps = i.maps()?;
    let n = alg.size();
    if rho.len() != maps.len() {
        return Err(HullError::dim(maps.len(), rho.len(), "right translation table length"));
    }
    let proj = &p.projection;
    let mut values: Vec<Option<usize>> = vec![None; n];
    for (ai, a) in maps.iter().enumerate() {
        let target = &maps[rho[ai]];
        for x in 0..n {
            let v = proj[target[x]];
            match values[a[x]] {
                Some(w) if w != v => return Err(violation("f_ρ is not well defined on im I")),
                _ => values[a[x]] = Some(v),
            }
        }
    }
    let closure = alg.closure(&image_of(i)?)?;
    if closure.dag().extend(&p.quotient, &mut values).is_err() {
        return Err(violation("f_ρ cannot be extended along the witnesses"));
    }
    let g: Vec<usize> = values.iter().map(|v| v.expect("representable")).collect();
    let reps = p.sim().representatives();
    let fr = Transf::new(reps.iter().map(|&r| g[r]).collect());
    if (0..n).any(|x| g[x] != fr[proj[x]]) {
        return Err(violation("f_ρ is not constant on ∼-classes"));
    }
    if !p.quotient.is_endomorphism(&fr)? {
        return Err(violation("f_ρ is not an endomorphism of A/∼"));
    }
    let lambda = if p.k() == 1 {
        let mut table = Vec::with_capacity(maps.len());
        for a in 0..maps.len() {
            let s = f_star(alg, p, i, &fr, a, cfg)?;
            table.push(i.index_of(&s).ok_or_else(|| violation("f_ρ ⋆ α lies outside I"))?);
        }
        Some(table)
    } else {
        None
    };
    Ok((fr, lambda))
}
