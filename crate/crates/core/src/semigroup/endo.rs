use std::collections::HashMap;

use super::FinSemigroup;
use crate::algebra::{for_each_map, for_each_tuple, tuple_index, FiniteAlgebra, Transf};
use crate::config::{checked_pow, RunConfig};
use crate::error::{HullError, Result};

/// Largest carrier accepted by [`full_transformation_monoid`] and [`rank_ideal`].
pub const FULL_MONOID_LIMIT: usize = 8;

struct Constraint {
    op: usize,
    args: Vec<usize>,
    result: usize,
}

/// Backtracking search for maps `f` on the carrier of `alg` that preserve
/// every operation and satisfy `f(x) ∈ domains[x]`. Points are assigned in
/// order of increasing domain size; each operation tuple is checked as soon
/// as all points it mentions are assigned. `visit` returns `false` to stop.
pub fn search_homs(
    alg: &FiniteAlgebra,
    domains: &[Vec<usize>],
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Result<()> {
    let n = alg.size();
    if domains.len() != n {
        return Err(HullError::dim(n, domains.len(), "candidate sets vs carrier"));
    }
    if domains.iter().any(|d| d.is_empty()) {
        return Ok(());
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (domains[x].len(), x));
    let mut rank = vec![0; n];
    for (r, &x) in order.iter().enumerate() {
        rank[x] = r;
    }
    let mut by_step: Vec<Vec<Constraint>> = (0..n).map(|_| Vec::new()).collect();
    for (oi, op) in alg.ops().iter().enumerate() {
        for_each_tuple(n, op.arity, |t| {
            let result = op.table[tuple_index(n, t)];
            let step = t.iter().map(|&a| rank[a]).max().unwrap_or(0).max(rank[result]);
            by_step[step].push(Constraint {
                op: oi,
                args: t.to_vec(),
                result,
            });
        });
    }

    let mut f = vec![usize::MAX; n];
    let mut buf = Vec::new();
    let ok_at = |f: &[usize], step: usize, buf: &mut Vec<usize>| {
        by_step[step].iter().all(|c| {
            buf.clear();
            buf.extend(c.args.iter().map(|&a| f[a]));
            alg.eval(c.op, buf) == f[c.result]
        })
    };
    // explicit stack of choice indices
    let mut choice = vec![0usize; n];
    let mut step = 0usize;
    loop {
        if step == n {
            if !visit(&f) {
                return Ok(());
            }
            step -= 1;
            choice[step] += 1;
        }
        let x = order[step];
        let dom = &domains[x];
        let mut advanced = false;
        while choice[step] < dom.len() {
            f[x] = dom[choice[step]];
            if ok_at(&f, step, &mut buf) {
                advanced = true;
                break;
            }
            choice[step] += 1;
        }
        if advanced {
            step += 1;
            if step < n {
                choice[step] = 0;
            }
        } else {
            f[x] = usize::MAX;
            if step == 0 {
                return Ok(());
            }
            step -= 1;
            choice[step] += 1;
        }
    }
}

fn endomorphism_maps_exhaustive(alg: &FiniteAlgebra, cfg: &RunConfig) -> Result<Vec<Transf>> {
    let n = alg.size();
    if n > cfg.exhaustive_map_bound {
        return Err(HullError::size(
            "carrier size for endomorphism search without generators",
            n,
            cfg.exhaustive_map_bound,
        ));
    }
    let domains: Vec<Vec<usize>> = (0..n).map(|_| (0..n).collect()).collect();
    let mut out = Vec::new();
    let mut overflow = false;
    search_homs(alg, &domains, |f| {
        out.push(Transf::new(f.to_vec()));
        if out.len() > cfg.max_table_order {
            overflow = true;
            return false;
        }
        true
    })?;
    if overflow {
        return Err(HullError::size("number of endomorphisms", out.len(), cfg.max_table_order));
    }
    Ok(out)
}

fn endomorphism_maps_from_gens(alg: &FiniteAlgebra, gens: &[usize], cfg: &RunConfig) -> Result<Vec<Transf>> {
    let n = alg.size();
    let closure = alg.closure(gens)?;
    if closure.members().len() != n {
        return Err(HullError::Precondition(format!(
            "generators {gens:?} generate {} of {n} elements",
            closure.members().len()
        )));
    }
    let seeds: Vec<usize> = closure.dag().generators().collect();
    let total = checked_pow(n, seeds.len()).unwrap_or(usize::MAX);
    if total > cfg.max_map_scan {
        return Err(HullError::size("generator image assignments", total, cfg.max_map_scan));
    }
    let mut out = Vec::new();
    let mut values = vec![None; n];
    for_each_map(seeds.len(), n, |images| {
        values.iter_mut().for_each(|v| *v = None);
        for (&g, &img) in seeds.iter().zip(images) {
            values[g] = Some(img);
        }
        if closure.dag().extend(alg, &mut values).is_err() {
            return;
        }
        let f: Vec<usize> = values.iter().map(|v| v.expect("closure covers the carrier")).collect();
        if alg.preserves(&f) {
            out.push(Transf::new(f));
        }
    });
    if out.len() > cfg.max_table_order {
        return Err(HullError::size("number of endomorphisms", out.len(), cfg.max_table_order));
    }
    Ok(out)
}

/// `End(A)` as a semigroup of maps, elements sorted by value array.
///
/// With `gens`, every assignment of images to the generators is extended
/// along the closure witnesses and kept when it is a homomorphism; `gens`
/// must generate the algebra. Without `gens` a pruned search over all maps
/// is used, which is refused above `cfg.exhaustive_map_bound` points.
pub fn enumerate_endomorphisms(
    alg: &FiniteAlgebra,
    gens: Option<&[usize]>,
    cfg: &RunConfig,
) -> Result<FinSemigroup> {
    let maps = match gens {
        Some(g) => endomorphism_maps_from_gens(alg, g, cfg)?,
        None => endomorphism_maps_exhaustive(alg, cfg)?,
    };
    FinSemigroup::from_maps(alg.size(), maps, cfg.max_table_order)
}

fn all_maps_where(n: usize, cfg: &RunConfig, keep: impl Fn(&Transf) -> bool) -> Result<Vec<Transf>> {
    if n > FULL_MONOID_LIMIT {
        return Err(HullError::size("carrier size for a transformation monoid", n, FULL_MONOID_LIMIT));
    }
    let total = checked_pow(n, n).unwrap_or(usize::MAX);
    if total > cfg.max_map_scan {
        return Err(HullError::size("number of maps in T_A", total, cfg.max_map_scan));
    }
    let mut out = Vec::new();
    for_each_map(n, n, |v| {
        let f = Transf::new(v.to_vec());
        if keep(&f) {
            out.push(f);
        }
    });
    Ok(out)
}

/// The full transformation monoid `T_n`.
pub fn full_transformation_monoid(n: usize, cfg: &RunConfig) -> Result<FinSemigroup> {
    if n == 0 {
        return Err(HullError::EmptyIdeal("T_0 has no points".into()));
    }
    let maps = all_maps_where(n, cfg, |_| true)?;
    FinSemigroup::from_maps(n, maps, cfg.max_table_order)
}

/// Maps on `n` points of rank less than `k`.
pub fn rank_ideal(n: usize, k: usize, cfg: &RunConfig) -> Result<FinSemigroup> {
    if n == 0 || k <= 1 {
        return Err(HullError::EmptyIdeal(format!("no maps on {n} points have rank below {k}")));
    }
    let maps = all_maps_where(n, cfg, |f| f.rank() < k)?;
    FinSemigroup::from_maps(n, maps, cfg.max_table_order)
}

/// Fewest elements generating the subalgebra `members` (which must be closed).
pub fn subalgebra_rank(alg: &FiniteAlgebra, members: &[usize]) -> Result<usize> {
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if alg.closure(&sorted)?.members() != sorted.as_slice() {
        return Err(HullError::Precondition("subset is not a subalgebra".into()));
    }
    for size in 0..=sorted.len() {
        let mut pick: Vec<usize> = (0..size).collect();
        loop {
            let ys: Vec<usize> = pick.iter().map(|&i| sorted[i]).collect();
            if alg.closure(&ys)?.members().len() == sorted.len() {
                return Ok(size);
            }
            if !next_combination(&mut pick, sorted.len()) {
                break;
            }
        }
    }
    Ok(sorted.len())
}

/// Advances a strictly increasing index vector over `0..n` in lex order.
fn next_combination(pick: &mut [usize], n: usize) -> bool {
    let k = pick.len();
    for i in (0..k).rev() {
        if pick[i] < n - k + i {
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Indices of the elements of `end` whose image is generated by fewer than
/// `k` elements. For sets this is rank below `k`; for vector spaces,
/// dimension below `k`.
pub fn rank_ideal_in(alg: &FiniteAlgebra, end: &FinSemigroup, k: usize) -> Result<Vec<usize>> {
    let maps = end.maps()?;
    let mut memo: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut out = Vec::new();
    for (i, f) in maps.iter().enumerate() {
        let im = f.image();
        let r = match memo.get(&im) {
            Some(&r) => r,
            None => {
                let r = subalgebra_rank(alg, &im)?;
                memo.insert(im, r);
                r
            }
        };
        if r < k {
            out.push(i);
        }
    }
    if out.is_empty() {
        return Err(HullError::EmptyIdeal(format!("no endomorphism has rank below {k}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_cyclic_group, make_set, make_sym_group, make_vector_space};

    /// Filter all n^n maps.
    fn brute_end(alg: &FiniteAlgebra) -> Vec<Transf> {
        let mut out = Vec::new();
        for_each_map(alg.size(), alg.size(), |v| {
            let f = Transf::new(v.to_vec());
            if alg.is_endomorphism(&f).unwrap() {
                out.push(f);
            }
        });
        out
    }

    #[test]
    fn pruned_search_matches_filter() {
        let cfg = RunConfig::default();
        let algs = [
            make_set(3),
            make_cyclic_group(4),
            make_cyclic_group(5),
            make_vector_space(2, 2).unwrap(),
            make_vector_space(3, 1).unwrap(),
            make_sym_group(3).unwrap(),
        ];
        for alg in &algs {
            let end = enumerate_endomorphisms(alg, None, &cfg).unwrap();
            assert_eq!(end.maps().unwrap(), brute_end(alg).as_slice());
        }
    }

    #[test]
    fn sym_group_counts() {
        let cfg = RunConfig::default();
        let s3 = make_sym_group(3).unwrap();
        assert_eq!(enumerate_endomorphisms(&s3, None, &cfg).unwrap().order(), 10);
        // (0 1) and (0 1 2) in one-line notation
        let gens = [2, 3];
        assert_eq!(enumerate_endomorphisms(&s3, Some(&gens), &cfg).unwrap().order(), 10);
        assert!(enumerate_endomorphisms(&s3, Some(&[2]), &cfg).is_err());
        for (n, count) in [(4, 58), (5, 146)] {
            let sn = make_sym_group(n).unwrap();
            let perms = crate::algebra::permutations(n);
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            let gens = [
                perms.iter().position(|p| *p == swap).unwrap(),
                perms.iter().position(|p| *p == cycle).unwrap(),
            ];
            assert_eq!(enumerate_endomorphisms(&sn, Some(&gens), &cfg).unwrap().order(), count);
        }
    }

    #[test]
    fn rank_ideals() {
        let cfg = RunConfig::default();
        assert_eq!(full_transformation_monoid(3, &cfg).unwrap().order(), 27);
        assert_eq!(rank_ideal(3, 2, &cfg).unwrap().order(), 3);
        assert_eq!(rank_ideal(3, 3, &cfg).unwrap().order(), 21);
        assert!(matches!(rank_ideal(3, 1, &cfg), Err(HullError::EmptyIdeal(_))));

        let v = make_vector_space(2, 2).unwrap();
        let end = enumerate_endomorphisms(&v, None, &cfg).unwrap();
        assert_eq!(end.order(), 16);
        assert_eq!(rank_ideal_in(&v, &end, 1).unwrap().len(), 1);
        assert_eq!(rank_ideal_in(&v, &end, 2).unwrap().len(), 10);

        let set = make_set(3);
        let t3 = enumerate_endomorphisms(&set, None, &cfg).unwrap();
        assert_eq!(rank_ideal_in(&set, &t3, 3).unwrap().len(), 21);
    }

    #[test]
    fn search_respects_domains() {
        let c4 = make_cyclic_group(4);
        let mut doms: Vec<Vec<usize>> = (0..4).map(|_| (0..4).collect()).collect();
        doms[1] = vec![3];
        let mut found = Vec::new();
        search_homs(&c4, &doms, |f| {
            found.push(f.to_vec());
            true
        })
        .unwrap();
        assert_eq!(found, vec![vec![0, 3, 2, 1]]);
    }
}
