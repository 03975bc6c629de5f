//! Brute-force oracles shared by the integration tests. They use nothing
//! from the library beyond its data types, so agreement with the library
//! is a real cross-check.

#![allow(dead_code)]

use std::collections::BTreeSet;

use hullkit::algebra::{FiniteAlgebra, Transf};
use hullkit::semigroup::FinSemigroup;

/// Every map `0..n -> 0..n` as a value vector, in lexicographic order.
pub fn all_maps(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    loop {
        out.push(cur.clone());
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < n {
                break;
            }
            cur[k] = 0;
        }
    }
}

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |x| {
                    let mut u = t.clone();
                    u.push(x);
                    u
                })
            })
            .collect();
    }
    out
}

fn index(n: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &x| acc * n + x)
}

/// `End(A)` by testing every map against every operation table.
pub fn naive_endomorphisms(alg: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let n = alg.size();
    let per_op: Vec<(usize, &[usize], Vec<Vec<usize>>)> = alg
        .ops()
        .iter()
        .map(|o| (o.arity, o.table.as_slice(), tuples(n, o.arity)))
        .collect();
    all_maps(n)
        .into_iter()
        .filter(|f| {
            per_op.iter().all(|(_, table, ts)| {
                ts.iter().all(|t| {
                    let img: Vec<usize> = t.iter().map(|&x| f[x]).collect();
                    f[table[index(n, t)]] == table[index(n, &img)]
                })
            })
        })
        .collect()
}

/// `Ω(S)` by filtering all `|S|^|S|` maps for each side, then all pairs.
pub fn naive_bitranslations(s: &FinSemigroup) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    let m = s.order();
    let maps = all_maps(m);
    let lefts: Vec<&Vec<usize>> = maps
        .iter()
        .filter(|l| (0..m).all(|a| (0..m).all(|b| l[s.mul(a, b)] == s.mul(l[a], b))))
        .collect();
    let rights: Vec<&Vec<usize>> = maps
        .iter()
        .filter(|r| (0..m).all(|a| (0..m).all(|b| r[s.mul(a, b)] == s.mul(a, r[b]))))
        .collect();
    let mut out = BTreeSet::new();
    for l in &lefts {
        for r in &rights {
            if (0..m).all(|a| (0..m).all(|b| s.mul(a, l[b]) == s.mul(r[a], b))) {
                out.insert(((*l).clone(), (*r).clone()));
            }
        }
    }
    out
}

/// Left and right translation counts by the same filtering.
pub fn naive_translation_counts(s: &FinSemigroup) -> (usize, usize) {
    let m = s.order();
    let maps = all_maps(m);
    let l = maps
        .iter()
        .filter(|l| (0..m).all(|a| (0..m).all(|b| l[s.mul(a, b)] == s.mul(l[a], b))))
        .count();
    let r = maps
        .iter()
        .filter(|r| (0..m).all(|a| (0..m).all(|b| r[s.mul(a, b)] == s.mul(a, r[b]))))
        .count();
    (l, r)
}

/// Pairs `(λ_f, ρ_f)` over maps `f` of the carrier that idealise `I`,
/// with translations indexed by the elements of `i`.
pub fn naive_realized(i: &FinSemigroup) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    let maps = i.maps().expect("semigroup of maps");
    let n = i.carrier().expect("carrier");
    let find = |t: &Transf| i.index_of(t);
    let mut out = BTreeSet::new();
    for f in all_maps(n) {
        let f = Transf::new(f);
        let lam: Option<Vec<usize>> = maps.iter().map(|a| find(&f.then(a))).collect();
        let rho: Option<Vec<usize>> = maps.iter().map(|a| find(&a.then(&f))).collect();
        if let (Some(l), Some(r)) = (lam, rho) {
            out.insert((l, r));
        }
    }
    out
}

/// Whether a row-major table is associative.
pub fn associative(m: usize, t: &[usize]) -> bool {
    (0..m).all(|a| (0..m).all(|b| (0..m).all(|c| t[t[a * m + b] * m + c] == t[a * m + t[b * m + c]])))
}

/// Every associative table of order `m` (labelled, not up to isomorphism).
pub fn all_semigroup_tables(m: usize) -> Vec<Vec<usize>> {
    tuples(m, m * m).into_iter().filter(|t| associative(m, t)).collect()
}
