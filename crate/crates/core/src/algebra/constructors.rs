use serde::{Deserialize, Serialize};

use super::{AlgebraKind, FiniteAlgebra, NamedOp};
use crate::config::checked_pow;
use crate::error::{HullError, Result};

/// Largest carrier produced by [`make_vector_space`].
pub const VECTOR_SPACE_LIMIT: usize = 4096;

/// Largest `n` accepted by [`make_sym_group`]; the table of S_7 would hold 25M entries.
const SYM_LIMIT: usize = 6;

/// The `n`-element set with empty signature. Panics if `n == 0`.
pub fn make_set(n: usize) -> FiniteAlgebra {
    FiniteAlgebra::new(n, Vec::new(), Some(AlgebraKind::Set)).expect("a set needs at least one element")
}

fn group_algebra(g: &GroupTable) -> FiniteAlgebra {
    let n = g.order;
    let inv: Vec<usize> = (0..n)
        .map(|a| {
            (0..n)
                .find(|&b| g.mul[a * n + b] == g.identity)
                .expect("group element without inverse")
        })
        .collect();
    let ops = vec![
        NamedOp::new("mul", 2, g.mul.clone()),
        NamedOp::new("inv", 1, inv),
        NamedOp::new("e", 0, vec![g.identity]),
    ];
    FiniteAlgebra::new(n, ops, Some(AlgebraKind::Group)).expect("valid group")
}

/// Z/n with addition, negation and the constant 0. Panics if `n == 0`.
pub fn make_cyclic_group(n: usize) -> FiniteAlgebra {
    assert!(n >= 1, "a cyclic group needs at least one element");
    group_algebra(&GroupTable::cyclic(n))
}

/// All permutations of `0..n` in one-line notation, lexicographically ordered.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next permutation in lexicographic order
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// The symmetric group on `n` points. Elements are permutations in
/// lexicographic order (identity first) and `s * t` applies `s` then `t`.
pub fn make_sym_group(n: usize) -> Result<FiniteAlgebra> {
    if n == 0 {
        return Err(HullError::Construction("symmetric group needs n >= 1".into()));
    }
    if n > SYM_LIMIT {
        return Err(HullError::size("degree of symmetric group", n, SYM_LIMIT));
    }
    let perms = permutations(n);
    let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).expect("permutation");
    let m = perms.len();
    let mut mul = Vec::with_capacity(m * m);
    let mut buf = vec![0; n];
    for s in &perms {
        for t in &perms {
            for i in 0..n {
                buf[i] = t[s[i]];
            }
            mul.push(index(&buf));
        }
    }
    Ok(group_algebra(&GroupTable {
        order: m,
        mul,
        identity: 0,
    }))
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// GF(p)^d with `+`, the constant `0` and one unary `scalar*c` per nonzero
/// scalar `c`. The vector `(c_0, ..., c_{d-1})` has index `sum c_i p^i`.
pub fn make_vector_space(p: usize, d: usize) -> Result<FiniteAlgebra> {
    if !is_prime(p) {
        return Err(HullError::Construction(format!("{p} is not prime")));
    }
    if d == 0 {
        return Err(HullError::Construction("dimension must be at least 1".into()));
    }
    let n = checked_pow(p, d)
        .filter(|&n| n <= VECTOR_SPACE_LIMIT)
        .ok_or_else(|| HullError::size("vector space order", checked_pow(p, d).unwrap_or(usize::MAX), VECTOR_SPACE_LIMIT))?;
    let digits = |mut x: usize| {
        let mut v = vec![0; d];
        for c in v.iter_mut() {
            *c = x % p;
            x /= p;
        }
        v
    };
    let encode = |v: &[usize]| v.iter().rev().fold(0, |acc, &c| acc * p + c);
    let coords: Vec<Vec<usize>> = (0..n).map(digits).collect();
    let mut ops = vec![NamedOp::from_fn("+", n, 2, |t| {
        let sum: Vec<usize> = (0..d).map(|i| (coords[t[0]][i] + coords[t[1]][i]) % p).collect();
        encode(&sum)
    })];
    ops.push(NamedOp::new("0", 0, vec![0]));
    for c in 1..p {
        ops.push(NamedOp::from_fn(format!("scalar*{c}"), n, 1, |t| {
            let v: Vec<usize> = coords[t[0]].iter().map(|&x| (x * c) % p).collect();
            encode(&v)
        }));
    }
    FiniteAlgebra::new(n, ops, Some(AlgebraKind::VectorSpace))
}

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    pub order: usize,
    /// Row-major: `mul[a * order + b]` is `ab`.
    pub mul: Vec<usize>,
    pub identity: usize,
}

impl GroupTable {
    pub fn cyclic(n: usize) -> Self {
        let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        GroupTable {
            order: n,
            mul,
            identity: 0,
        }
    }

    fn validate(&self, which: usize) -> Result<()> {
        let n = self.order;
        let bad = |msg: String| Err(HullError::Construction(format!("group {which}: {msg}")));
        if n == 0 || self.mul.len() != n * n || self.identity >= n {
            return bad("table shape or identity out of range".into());
        }
        if self.mul.iter().any(|&v| v >= n) {
            return bad("entry out of range".into());
        }
        let m = |a: usize, b: usize| self.mul[a * n + b];
        for a in 0..n {
            if m(a, self.identity) != a || m(self.identity, a) != a {
                return bad(format!("{} is not an identity", self.identity));
            }
            if !(0..n).any(|b| m(a, b) == self.identity) {
                return bad(format!("element {a} has no inverse"));
            }
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return bad(format!("not associative at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A strong semilattice of groups over a chain `G_0 > G_1 > ... > G_{k-1}`.
///
/// `links[i]` is the homomorphism `G_i -> G_{i+1}`; `None` means the
/// identity map and requires equal orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemilatticeOfGroupsSpec {
    pub groups: Vec<GroupTable>,
    #[serde(default)]
    pub links: Vec<Option<Vec<usize>>>,
}

impl SemilatticeOfGroupsSpec {
    /// A chain of `levels` copies of the cyclic group of order `n`, linked by identities.
    pub fn cyclic_chain(levels: usize, n: usize) -> Self {
        SemilatticeOfGroupsSpec {
            groups: vec![GroupTable::cyclic(n); levels],
            links: vec![None; levels.saturating_sub(1)],
        }
    }

    /// Global index of the identity of each level.
    pub fn identities(&self) -> Vec<usize> {
        let mut base = 0;
        self.groups
            .iter()
            .map(|g| {
                let e = base + g.identity;
                base += g.order;
                e
            })
            .collect()
    }
}

/// The semigroup `A = G_0 ∪ ... ∪ G_{k-1}` with the single binary op `·`.
/// Elements are numbered level by level.
pub fn make_semilattice_of_groups(spec: &SemilatticeOfGroupsSpec) -> Result<FiniteAlgebra> {
    let k = spec.groups.len();
    if k == 0 {
        return Err(HullError::Construction("semilattice of groups needs a group".into()));
    }
    if spec.links.len() != k - 1 && !spec.links.is_empty() {
        return Err(HullError::Construction(format!(
            "expected {} linking maps, got {}",
            k - 1,
            spec.links.len()
        )));
    }
    for (i, g) in spec.groups.iter().enumerate() {
        g.validate(i)?;
    }
    let mut links: Vec<Vec<usize>> = Vec::with_capacity(k.saturating_sub(1));
    for i in 0..k - 1 {
        let (src, dst) = (&spec.groups[i], &spec.groups[i + 1]);
        let map = match spec.links.get(i).cloned().flatten() {
            Some(m) => m,
            None if src.order == dst.order => (0..src.order).collect(),
            None => {
                return Err(HullError::Construction(format!(
                    "link {i} defaults to the identity but orders differ ({} vs {})",
                    src.order, dst.order
                )))
            }
        };
        if map.len() != src.order || map.iter().any(|&v| v >= dst.order) {
            return Err(HullError::Construction(format!("link {i} has the wrong shape")));
        }
        let (n, m) = (src.order, dst.order);
        for a in 0..n {
            for b in 0..n {
                if map[src.mul[a * n + b]] != dst.mul[map[a] * m + map[b]] {
                    return Err(HullError::Construction(format!(
                        "link {i} is not a homomorphism at ({a}, {b})"
                    )));
                }
            }
        }
        links.push(map);
    }

    let mut offsets = Vec::with_capacity(k);
    let mut total = 0;
    for g in &spec.groups {
        offsets.push(total);
        total += g.order;
    }
    let mut level = Vec::with_capacity(total);
    let mut local = Vec::with_capacity(total);
    for (i, g) in spec.groups.iter().enumerate() {
        for a in 0..g.order {
            level.push(i);
            local.push(a);
        }
    }
    // carry a local element of level `from` down to level `to`
    let descend = |mut x: usize, from: usize, to: usize| {
        for map in &links[from..to] {
            x = map[x];
        }
        x
    };
    let table = NamedOp::from_fn("·", total, 2, |t| {
        let (la, lb) = (level[t[0]], level[t[1]]);
        let l = la.max(lb);
        let g = &spec.groups[l];
        let a = descend(local[t[0]], la, l);
        let b = descend(local[t[1]], lb, l);
        offsets[l] + g.mul[a * g.order + b]
    });
    FiniteAlgebra::new(total, vec![table], Some(AlgebraKind::SemilatticeOfGroups))
}
