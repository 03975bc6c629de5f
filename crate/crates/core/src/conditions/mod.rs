//! Representability, separability and reductivity conditions, and the
//! reduction of a pair `(A, I)` to its separable quotient.

mod quotient;

use std::collections::HashSet;

use serde::Serialize;

use crate::algebra::{for_each_map, FiniteAlgebra, Partition, Transf};
use crate::config::RunConfig;
use crate::error::{HullError, Result};
use crate::semigroup::FinSemigroup;

pub use quotient::{
    build_pipeline, f_rho, f_star, lift_count, lifts, sigma, sigma_matches_map, sim_chain,
    QuotientPipeline, SimChain,
};

/// Largest carrier for which right `T_A`-reductivity is decided by scanning `T_A`.
pub const TA_REDUCTIVE_LIMIT: usize = 5;

fn check_carrier(alg: &FiniteAlgebra, i: &FinSemigroup) -> Result<usize> {
    let n = i
        .carrier()
        .ok_or_else(|| HullError::Precondition("semigroup has no transformation representation".into()))?;
    if n != alg.size() {
        return Err(HullError::dim(alg.size(), n, "carrier of I vs algebra size"));
    }
    Ok(n)
}

/// `⋃ im α` over `α ∈ I`, ascending.
pub fn image_of(i: &FinSemigroup) -> Result<Vec<usize>> {
    let maps = i.maps()?;
    let n = i.carrier().unwrap_or(0);
    let mut inside = vec![false; n];
    for a in maps {
        for &x in a.values() {
            inside[x] = true;
        }
    }
    Ok((0..n).filter(|&x| inside[x]).collect())
}

/// `⋂ ker α` over `α ∈ I`, as a partition of the carrier.
pub fn kernel_of(i: &FinSemigroup) -> Result<Partition> {
    let maps = i.maps()?;
    let n = i.carrier().unwrap_or(0);
    Ok(Partition::from_key(n, |x| maps.iter().map(|a| a[x]).collect::<Vec<_>>()))
}

/// Whether `im I` generates `A`.
pub fn is_representable(alg: &FiniteAlgebra, i: &FinSemigroup) -> Result<bool> {
    check_carrier(alg, i)?;
    Ok(alg.closure(&image_of(i)?)?.members().len() == alg.size())
}

/// Whether the maps in `I` jointly separate points.
pub fn is_separable(alg: &FiniteAlgebra, i: &FinSemigroup) -> Result<bool> {
    check_carrier(alg, i)?;
    Ok(kernel_of(i)?.is_equality())
}

/// Whether the maps in `I` separate the points of `c`.
pub fn is_separable_on(i: &FinSemigroup, c: &[usize]) -> Result<bool> {
    let ker = kernel_of(i)?;
    if let Some(&x) = c.iter().find(|&&x| x >= ker.carrier_size()) {
        return Err(HullError::Precondition(format!("point {x} outside the carrier")));
    }
    let points: HashSet<usize> = c.iter().copied().collect();
    let classes: HashSet<usize> = points.iter().map(|&x| ker.rep(x)).collect();
    Ok(points.len() == classes.len())
}

/// For all `β, γ ∈ End(A)` and `a`: `aβ ker I aγ` implies `aβ = aγ`.
pub fn is_weakly_separable(alg: &FiniteAlgebra, i: &FinSemigroup, end: &FinSemigroup) -> Result<bool> {
    let n = check_carrier(alg, i)?;
    let ker = kernel_of(i)?;
    let maps = end.maps()?;
    Ok((0..n).all(|a| {
        let mut orbit: Vec<usize> = maps.iter().map(|b| b[a]).collect();
        orbit.sort_unstable();
        orbit.dedup();
        let reps: HashSet<usize> = orbit.iter().map(|&x| ker.rep(x)).collect();
        reps.len() == orbit.len()
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Reductivity {
    /// `γα = γβ` for all `γ ∈ I` implies `α = β`.
    pub left: bool,
    /// `αγ = βγ` for all `γ ∈ I` implies `α = β`.
    pub right: bool,
    /// Both together imply `α = β`.
    pub weak: bool,
}

/// Reductivity of the subset `ideal` of `u`, with `α, β` ranging over `u`.
pub fn reductivity(u: &FinSemigroup, ideal: &[usize]) -> Result<Reductivity> {
    if ideal.is_empty() {
        return Err(HullError::EmptyIdeal("reductivity of the empty set".into()));
    }
    if let Some(&x) = ideal.iter().find(|&&x| x >= u.order()) {
        return Err(HullError::Precondition(format!("element {x} outside U")));
    }
    let m = u.order();
    let lkey = |a: usize| ideal.iter().map(|&g| u.mul(g, a)).collect::<Vec<_>>();
    let rkey = |a: usize| ideal.iter().map(|&g| u.mul(a, g)).collect::<Vec<_>>();
    let distinct = |keys: Vec<Vec<usize>>| keys.iter().collect::<HashSet<_>>().len() == m;
    Ok(Reductivity {
        left: distinct((0..m).map(lkey).collect()),
        right: distinct((0..m).map(rkey).collect()),
        weak: (0..m).map(|a| (lkey(a), rkey(a))).collect::<HashSet<_>>().len() == m,
    })
}

/// Right reductivity with `α, β` ranging over all of `T_A`.
pub fn is_right_ta_reductive(i: &FinSemigroup, cfg: &RunConfig) -> Result<bool> {
    let maps = i.maps()?;
    let n = i.carrier().unwrap_or(0);
    if n > TA_REDUCTIVE_LIMIT {
        return Err(HullError::size("carrier for a T_A reductivity scan", n, TA_REDUCTIVE_LIMIT));
    }
    cfg.check_map_scan(n)?;
    let mut seen: HashSet<Vec<Transf>> = HashSet::new();
    let mut ok = true;
    for_each_map(n, n, |v| {
        if !ok {
            return;
        }
        let a = Transf::new(v.to_vec());
        ok = seen.insert(maps.iter().map(|g| a.then(g)).collect());
    });
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_set, make_sym_group, make_vector_space};
    use crate::semigroup::{enumerate_endomorphisms, rank_ideal, rank_ideal_in};

    #[test]
    fn set_rank_ideals() {
        let cfg = RunConfig::default();
        let set = make_set(3);
        let consts = rank_ideal(3, 2, &cfg).unwrap();
        assert!(is_representable(&set, &consts).unwrap());
        assert!(!is_separable(&set, &consts).unwrap());
        assert!(!is_right_ta_reductive(&consts, &cfg).unwrap());
        let i = rank_ideal(3, 3, &cfg).unwrap();
        assert!(is_separable(&set, &i).unwrap());
        assert!(is_right_ta_reductive(&i, &cfg).unwrap());
        let single = FinSemigroup::from_maps(3, vec![Transf::new(vec![0, 0, 1])], 8);
        assert!(single.is_err());
        let idem = FinSemigroup::from_maps(3, vec![Transf::new(vec![0, 0, 2])], 8).unwrap();
        assert!(!is_separable(&set, &idem).unwrap());
        assert!(!is_right_ta_reductive(&idem, &cfg).unwrap());
        assert!(is_separable_on(&idem, &[0, 2]).unwrap());
        assert!(!is_separable_on(&idem, &[0, 1]).unwrap());
    }

    #[test]
    fn reductivity_in_t3() {
        let cfg = RunConfig::default();
        let set = make_set(3);
        let t3 = enumerate_endomorphisms(&set, None, &cfg).unwrap();
        let consts = rank_ideal_in(&set, &t3, 2).unwrap();
        let r = reductivity(&t3, &consts).unwrap();
        // constants see every value, but absorb on the right
        assert!(r.left && !r.right && r.weak);
    }

    #[test]
    fn sym_group_non_units() {
        let cfg = RunConfig::default();
        let s3 = make_sym_group(3).unwrap();
        let end = enumerate_endomorphisms(&s3, None, &cfg).unwrap();
        let (i, _) = end.restrict(&end.non_units()).unwrap();
        assert_eq!(i.order(), 4);
        // the transpositions in the images generate the whole group
        assert!(is_representable(&s3, &i).unwrap());
        assert!(!is_separable(&s3, &i).unwrap());
        assert!(is_weakly_separable(&s3, &i, &end).is_ok());
        let v = make_vector_space(2, 2).unwrap();
        let vend = enumerate_endomorphisms(&v, None, &cfg).unwrap();
        let (i2, _) = vend.restrict(&rank_ideal_in(&v, &vend, 2).unwrap()).unwrap();
        assert!(is_representable(&v, &i2).unwrap() && is_separable(&v, &i2).unwrap());
    }
}
