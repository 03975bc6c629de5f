//! Finite universal algebras given by dense operation tables.
//!
//! Elements are the indices `0..n`. An operation of arity `k` is stored as a
//! row-major table of `n^k` result indices, so `o(a1, ..., ak)` lives at
//! `((a1 * n + a2) * n + ...) + ak`.

mod closure;
mod constructors;
mod io;
pub(crate) use io::json_error;
mod partition;
mod transf;

use serde::{Deserialize, Serialize};

use crate::config::checked_pow;
use crate::error::{HullError, Result};

pub use closure::{Closure, ReplayError, Witness, WitnessDag};
pub use constructors::{
    make_cyclic_group, make_semilattice_of_groups, make_set, make_sym_group, make_vector_space,
    permutations, GroupTable, SemilatticeOfGroupsSpec, VECTOR_SPACE_LIMIT,
};
pub use io::{algebra_from_json, algebra_to_json, AlgebraFile, OpFile};
pub use partition::Partition;
pub use transf::{for_each_map, MapOdometer, Transf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraKind {
    Set,
    Group,
    VectorSpace,
    SemilatticeOfGroups,
    Custom,
}

impl AlgebraKind {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "set" => AlgebraKind::Set,
            "group" => AlgebraKind::Group,
            "vector_space" => AlgebraKind::VectorSpace,
            "semilattice_of_groups" => AlgebraKind::SemilatticeOfGroups,
            "custom" => AlgebraKind::Custom,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AlgebraKind::Set => "set",
            AlgebraKind::Group => "group",
            AlgebraKind::VectorSpace => "vector_space",
            AlgebraKind::SemilatticeOfGroups => "semilattice_of_groups",
            AlgebraKind::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NamedOp {
    pub name: String,
    pub arity: usize,
    pub table: Vec<usize>,
}

impl NamedOp {
    pub fn new(name: impl Into<String>, arity: usize, table: Vec<usize>) -> Self {
        NamedOp {
            name: name.into(),
            arity,
            table,
        }
    }

    /// Builds the table of a `k`-ary operation from a closure over argument tuples.
    pub fn from_fn(
        name: impl Into<String>,
        n: usize,
        arity: usize,
        f: impl Fn(&[usize]) -> usize,
    ) -> Self {
        let mut table = Vec::with_capacity(checked_pow(n, arity).unwrap_or(0));
        for_each_tuple(n, arity, |t| table.push(f(t)));
        NamedOp::new(name, arity, table)
    }
}

/// Row-major index of an argument tuple.
#[inline]
pub fn tuple_index(n: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a)
}

/// Visits every tuple in `(0..n)^k` in lexicographic order.
pub fn for_each_tuple(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    for_each_tuple_over(&(0..n).collect::<Vec<_>>(), k, &mut visit);
}

/// Visits every tuple over `elems` (in the order given) of length `k`, lexicographically.
pub fn for_each_tuple_over(elems: &[usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    all_tuples_over(elems, k, |t| {
        visit(t);
        true
    });
}

/// Calls `visit` on every vector picking one entry from each list, in
/// lexicographic order of positions. Nothing is visited if a list is empty.
pub fn for_each_choice(lists: &[Vec<usize>], mut visit: impl FnMut(&[usize])) {
    if lists.iter().any(Vec::is_empty) {
        return;
    }
    let mut idx = vec![0usize; lists.len()];
    let mut cur: Vec<usize> = lists.iter().map(|l| l[0]).collect();
    loop {
        visit(&cur);
        let mut k = lists.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                cur[k] = lists[k][idx[k]];
                break;
            }
            idx[k] = 0;
            cur[k] = lists[k][0];
        }
    }
}

/// Lexicographic walk over tuples of `elems` that stops at the first tuple
/// for which `pred` is false. Returns whether every visited tuple passed.
pub fn all_tuples_over(elems: &[usize], k: usize, mut pred: impl FnMut(&[usize]) -> bool) -> bool {
    if k == 0 {
        return pred(&[]);
    }
    if elems.is_empty() {
        return true;
    }
    let mut pos = vec![0usize; k];
    let mut tuple: Vec<usize> = vec![elems[0]; k];
    loop {
        if !pred(&tuple) {
            return false;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            pos[i] += 1;
            if pos[i] < elems.len() {
                tuple[i] = elems[pos[i]];
                break;
            }
            pos[i] = 0;
            tuple[i] = elems[0];
        }
    }
}

/// A finite algebra: carrier `0..size` and a list of finitary operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    size: usize,
    ops: Vec<NamedOp>,
    kind: Option<AlgebraKind>,
}

impl FiniteAlgebra {
    pub fn new(size: usize, ops: Vec<NamedOp>, kind: Option<AlgebraKind>) -> Result<Self> {
        if size == 0 {
            return Err(HullError::Construction("an algebra needs at least one element".into()));
        }
        for (i, op) in ops.iter().enumerate() {
            let expected = checked_pow(size, op.arity).ok_or_else(|| {
                HullError::size(format!("table of op {i} (`{}`)", op.name), usize::MAX, usize::MAX)
            })?;
            if op.table.len() != expected {
                return Err(HullError::Construction(format!(
                    "op {i} (`{}`) of arity {} needs {expected} entries, has {}",
                    op.name,
                    op.arity,
                    op.table.len()
                )));
            }
            if let Some(pos) = op.table.iter().position(|&v| v >= size) {
                return Err(HullError::Construction(format!(
                    "op {i} (`{}`) entry {pos} is {}, outside 0..{size}",
                    op.name, op.table[pos]
                )));
            }
        }
        Ok(FiniteAlgebra { size, ops, kind })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn ops(&self) -> &[NamedOp] {
        &self.ops
    }

    pub fn kind(&self) -> Option<AlgebraKind> {
        self.kind
    }

    #[inline]
    pub fn eval(&self, op: usize, args: &[usize]) -> usize {
        self.ops[op].table[tuple_index(self.size, args)]
    }

    /// Values of the nullary operations, sorted and deduplicated.
    pub fn constants(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self
            .ops
            .iter()
            .filter(|o| o.arity == 0)
            .map(|o| o.table[0])
            .collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    /// Index of the first operation with the given name.
    pub fn op_index(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|o| o.name == name)
    }

    fn check_map(&self, f: &Transf) -> Result<()> {
        if f.domain_size() != self.size {
            return Err(HullError::dim(self.size, f.domain_size(), "map domain vs algebra size"));
        }
        if f.values().iter().any(|&v| v >= self.size) {
            return Err(HullError::Precondition("map value outside the carrier".into()));
        }
        Ok(())
    }

    /// Whether `f` preserves every operation. Operations are checked in
    /// increasing arity so that cheap violations are found first.
    pub fn is_endomorphism(&self, f: &Transf) -> Result<bool> {
        self.check_map(f)?;
        Ok(self.preserves(f.values()))
    }

    pub(crate) fn preserves(&self, f: &[usize]) -> bool {
        let all: Vec<usize> = (0..self.size).collect();
        let mut order: Vec<usize> = (0..self.ops.len()).collect();
        order.sort_by_key(|&i| self.ops[i].arity);
        order.into_iter().all(|i| self.op_preserved_on(i, f, &all))
    }

    fn op_preserved_on(&self, oi: usize, f: &[usize], dom: &[usize]) -> bool {
        let n = self.size;
        let op = &self.ops[oi];
        let mut image = Vec::with_capacity(op.arity);
        all_tuples_over(dom, op.arity, |t| {
            image.clear();
            image.extend(t.iter().map(|&a| f[a]));
            f[op.table[tuple_index(n, t)]] == op.table[tuple_index(n, &image)]
        })
    }

    /// Whether `f` restricted to the subset `dom` commutes with every
    /// operation on tuples drawn from `dom`. `dom` need not be closed; tuples
    /// whose result leaves `dom` are still required to satisfy `o(a)f = o(af)`.
    pub fn preserves_on(&self, f: &[usize], dom: &[usize]) -> bool {
        (0..self.ops.len()).all(|oi| self.op_preserved_on(oi, f, dom))
    }

    /// First operation and argument tuple at which `theta` fails to be compatible.
    pub fn congruence_violation(&self, theta: &Partition) -> Result<Option<(usize, Vec<usize>)>> {
        if theta.carrier_size() != self.size {
            return Err(HullError::dim(self.size, theta.carrier_size(), "partition vs algebra size"));
        }
        let n = self.size;
        // Compatibility follows from compatibility in each coordinate separately.
        for (oi, op) in self.ops.iter().enumerate() {
            let mut bad = None;
            let mut moved = Vec::new();
            for_each_tuple(n, op.arity, |t| {
                if bad.is_some() {
                    return;
                }
                let base = theta.rep(op.table[tuple_index(n, t)]);
                for i in 0..t.len() {
                    if theta.rep(t[i]) == t[i] {
                        continue;
                    }
                    moved.clear();
                    moved.extend_from_slice(t);
                    moved[i] = theta.rep(t[i]);
                    if theta.rep(op.table[tuple_index(n, &moved)]) != base {
                        bad = Some(t.to_vec());
                        return;
                    }
                }
            });
            if let Some(t) = bad {
                return Ok(Some((oi, t)));
            }
        }
        Ok(None)
    }

    pub fn is_congruence(&self, theta: &Partition) -> Result<bool> {
        Ok(self.congruence_violation(theta)?.is_none())
    }

    /// Quotient by a congruence; classes are re-indexed in representative order.
    pub fn quotient(&self, theta: &Partition) -> Result<(FiniteAlgebra, Transf)> {
        if let Some((oi, tuple)) = self.congruence_violation(theta)? {
            return Err(HullError::NotACongruence {
                op: self.ops[oi].name.clone(),
                tuple,
            });
        }
        let idx = theta.class_index();
        let reps = theta.representatives();
        let m = reps.len();
        let ops = self
            .ops
            .iter()
            .map(|op| {
                let mut table = Vec::with_capacity(checked_pow(m, op.arity).unwrap_or(0));
                let mut args = Vec::with_capacity(op.arity);
                for_each_tuple(m, op.arity, |t| {
                    args.clear();
                    args.extend(t.iter().map(|&c| reps[c]));
                    table.push(idx[op.table[tuple_index(self.size, &args)]]);
                });
                NamedOp::new(op.name.clone(), op.arity, table)
            })
            .collect();
        let quotient = FiniteAlgebra::new(m, ops, self.kind.map(|_| AlgebraKind::Custom))?;
        Ok((quotient, Transf::new(idx)))
    }

    /// The subalgebra on a closed subset, re-indexed by position in `members`
    /// (which must be sorted). Returns the algebra and the embedding.
    pub fn subalgebra(&self, members: &[usize]) -> Result<(FiniteAlgebra, Vec<usize>)> {
        let mut pos = vec![usize::MAX; self.size];
        for (i, &x) in members.iter().enumerate() {
            pos[x] = i;
        }
        let m = members.len();
        let mut ops = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            let mut table = Vec::with_capacity(checked_pow(m, op.arity).unwrap_or(0));
            let mut args = Vec::with_capacity(op.arity);
            let mut closed = true;
            for_each_tuple(m, op.arity, |t| {
                args.clear();
                args.extend(t.iter().map(|&i| members[i]));
                let v = pos[op.table[tuple_index(self.size, &args)]];
                closed &= v != usize::MAX;
                table.push(v);
            });
            if !closed {
                return Err(HullError::Precondition(format!(
                    "subset is not closed under `{}`",
                    op.name
                )));
            }
            ops.push(NamedOp::new(op.name.clone(), op.arity, table));
        }
        Ok((FiniteAlgebra::new(m, ops, self.kind)?, members.to_vec()))
    }

    pub fn closure(&self, seeds: &[usize]) -> Result<Closure> {
        Closure::compute(self, seeds)
    }

    /// Whether `seeds` generate the whole algebra.
    pub fn generates(&self, seeds: &[usize]) -> Result<bool> {
        Ok(self.closure(seeds)?.members().len() == self.size)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endomorphism_examples() {
        let c3 = make_cyclic_group(3);
        assert!(c3.is_endomorphism(&Transf::identity(3)).unwrap());
        assert!(c3.is_endomorphism(&Transf::new(vec![0, 2, 1])).unwrap());
        assert!(!c3.is_endomorphism(&Transf::new(vec![1, 1, 1])).unwrap());
        assert!(matches!(
            c3.is_endomorphism(&Transf::identity(4)),
            Err(HullError::Dimension { .. })
        ));
    }

    #[test]
    fn quotient_examples() {
        let v = make_vector_space(2, 2).unwrap();
        let (q, proj) = v.quotient(&Partition::equality(4)).unwrap();
        assert_eq!(q.ops(), v.ops());
        assert!(proj.is_identity());

        let (q1, _) = v.quotient(&Partition::universal(4)).unwrap();
        assert_eq!(q1.size(), 1);

        // cosets of span{(1,1)}: element index is x + 2y, so (1,1) = 3.
        let theta = Partition::from_classes(4, &[vec![0, 3], vec![1, 2]]).unwrap();
        let (q2, proj) = v.quotient(&theta).unwrap();
        assert_eq!(q2.size(), 2);
        let plus = q2.op_index("+").unwrap();
        assert_eq!(q2.ops()[plus].table, vec![0, 1, 1, 0]);
        for a in 0..4 {
            for b in 0..4 {
                let s = v.eval(plus, &[a, b]);
                assert_eq!(proj[s], q2.eval(plus, &[proj[a], proj[b]]));
            }
        }
    }

    #[test]
    fn non_congruence_named() {
        let c4 = make_cyclic_group(4);
        let theta = Partition::from_classes(4, &[vec![0, 1], vec![2], vec![3]]).unwrap();
        match c4.quotient(&theta) {
            Err(HullError::NotACongruence { op, .. }) => assert!(!op.is_empty()),
            other => panic!("expected congruence error, got {other:?}"),
        }
        let parity = Partition::from_key(4, |x| x % 2);
        assert!(c4.is_congruence(&parity).unwrap());
    }

    #[test]
    fn bad_tables_rejected() {
        let short = NamedOp::new("f", 2, vec![0; 3]);
        assert!(FiniteAlgebra::new(2, vec![short], None).is_err());
        let wide = NamedOp::new("g", 1, vec![0, 2]);
        assert!(FiniteAlgebra::new(2, vec![wide], None).is_err());
        assert!(FiniteAlgebra::new(0, vec![], None).is_err());
    }

    #[test]
    fn tuples_over_subset() {
        let mut seen = Vec::new();
        for_each_tuple_over(&[2, 5], 2, &mut |t: &[usize]| seen.push(t.to_vec()));
        assert_eq!(seen, vec![vec![2, 2], vec![2, 5], vec![5, 2], vec![5, 5]]);
        let mut nullary = 0;
        for_each_tuple_over(&[], 0, &mut |_: &[usize]| nullary += 1);
        assert_eq!(nullary, 1);
    }
}
