use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{HullError, Result};

/// An equivalence on `0..n`, stored as the smallest member of each class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    rep: Vec<usize>,
}

impl Partition {
    /// Groups elements with equal keys.
    pub fn from_key<K: Hash + Eq>(n: usize, key: impl Fn(usize) -> K) -> Self {
        let mut first: HashMap<K, usize> = HashMap::with_capacity(n);
        let rep = (0..n).map(|x| *first.entry(key(x)).or_insert(x)).collect();
        Partition { rep }
    }

    pub fn from_reps(rep: Vec<usize>) -> Result<Self> {
        for (x, &r) in rep.iter().enumerate() {
            if r > x || rep[r] != r {
                return Err(HullError::Precondition(format!(
                    "invalid representative array: rep[{x}] = {r}"
                )));
            }
        }
        Ok(Partition { rep })
    }

    /// Partition whose classes are the given blocks; blocks must cover `0..n` disjointly.
    pub fn from_classes(n: usize, classes: &[Vec<usize>]) -> Result<Self> {
        let mut rep = vec![usize::MAX; n];
        for class in classes {
            let Some(&min) = class.iter().min() else { continue };
            for &x in class {
                if x >= n || rep[x] != usize::MAX {
                    return Err(HullError::Precondition(format!(
                        "element {x} is out of range or in two classes"
                    )));
                }
                rep[x] = min;
            }
        }
        if let Some(x) = rep.iter().position(|&r| r == usize::MAX) {
            return Err(HullError::Precondition(format!("element {x} is in no class")));
        }
        Ok(Partition { rep })
    }

    pub fn equality(n: usize) -> Self {
        Partition { rep: (0..n).collect() }
    }

    pub fn universal(n: usize) -> Self {
        Partition { rep: vec![0; n] }
    }

    pub fn carrier_size(&self) -> usize {
        self.rep.len()
    }

    pub fn reps(&self) -> &[usize] {
        &self.rep
    }

    #[inline]
    pub fn rep(&self, x: usize) -> usize {
        self.rep[x]
    }

    #[inline]
    pub fn same(&self, x: usize, y: usize) -> bool {
        self.rep[x] == self.rep[y]
    }

    /// Class representatives in increasing order.
    pub fn representatives(&self) -> Vec<usize> {
        self.rep
            .iter()
            .enumerate()
            .filter(|(x, &r)| *x == r)
            .map(|(x, _)| x)
            .collect()
    }

    pub fn class_count(&self) -> usize {
        self.rep.iter().enumerate().filter(|(x, &r)| *x == r).count()
    }

    /// For each element, the position of its class in representative order.
    pub fn class_index(&self) -> Vec<usize> {
        let mut index = vec![usize::MAX; self.rep.len()];
        let mut next = 0;
        for (x, slot) in index.iter_mut().enumerate() {
            if self.rep[x] == x {
                *slot = next;
                next += 1;
            }
        }
        (0..self.rep.len()).map(|x| index[self.rep[x]]).collect()
    }

    /// Classes in representative order, members ascending.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let idx = self.class_index();
        let mut out = vec![Vec::new(); self.class_count()];
        for (x, &c) in idx.iter().enumerate() {
            out[c].push(x);
        }
        out
    }

    pub fn is_equality(&self) -> bool {
        self.rep.iter().enumerate().all(|(x, &r)| x == r)
    }

    pub fn is_universal(&self) -> bool {
        self.rep.iter().all(|&r| r == 0)
    }

    /// Whether every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.rep.len() == coarser.rep.len()
            && (0..self.rep.len()).all(|x| coarser.same(x, self.rep[x]))
    }

    pub fn meet(&self, other: &Partition) -> Partition {
        Partition::from_key(self.rep.len(), |x| (self.rep[x], other.rep[x]))
    }

    /// Pairs `(x, y)` with `x < y` in the same class.
    pub fn nontrivial_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for class in self.classes() {
            for (i, &x) in class.iter().enumerate() {
                for &y in &class[i + 1..] {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn classes_and_indices() {
        let p = Partition::from_key(6, |x| x % 3);
        assert_eq!(p.reps(), &[0, 1, 2, 0, 1, 2]);
        assert_eq!(p.classes(), vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        assert_eq!(p.class_index(), vec![0, 1, 2, 0, 1, 2]);
        assert!(Partition::equality(6).refines(&p));
        assert!(p.refines(&Partition::universal(6)));
        assert!(!p.refines(&Partition::equality(6)));
    }

    #[test]
    fn bad_reps_rejected() {
        assert!(Partition::from_reps(vec![0, 0, 1]).is_err());
        assert!(Partition::from_reps(vec![1, 1]).is_err());
        assert!(Partition::from_reps(vec![0, 0, 2]).is_ok());
    }

    proptest! {
        #[test]
        fn rep_invariants(keys in proptest::collection::vec(0u8..4, 1..20)) {
            let p = Partition::from_key(keys.len(), |x| keys[x]);
            for x in 0..keys.len() {
                prop_assert!(p.rep(x) <= x);
                prop_assert_eq!(p.rep(p.rep(x)), p.rep(x));
            }
            let q = Partition::from_classes(keys.len(), &p.classes()).unwrap();
            prop_assert_eq!(q, p);
        }
    }
}
