use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{HullError, Result};

/// A total map on a finite carrier, stored as its value array.
///
/// Maps act on the right and compose left to right: `a.then(b)` first
/// applies `a`, then `b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Transf(Vec<usize>);

impl Transf {
    pub fn new(values: Vec<usize>) -> Self {
        Transf(values)
    }

    /// Builds a map and checks every value lies in `0..codomain`.
    pub fn with_codomain(values: Vec<usize>, codomain: usize) -> Result<Self> {
        if let Some((i, &v)) = values.iter().enumerate().find(|(_, &v)| v >= codomain) {
            return Err(HullError::Precondition(format!(
                "map value {v} at position {i} is outside a carrier of size {codomain}"
            )));
        }
        Ok(Transf(values))
    }

    pub fn identity(n: usize) -> Self {
        Transf((0..n).collect())
    }

    pub fn constant(n: usize, c: usize) -> Self {
        Transf(vec![c; n])
    }

    pub fn domain_size(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn into_values(self) -> Vec<usize> {
        self.0
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Transf) -> Transf {
        Transf(self.0.iter().map(|&x| next.0[x]).collect())
    }

    /// Sorted, duplicate-free image.
    pub fn image(&self) -> Vec<usize> {
        let mut im = self.0.clone();
        im.sort_unstable();
        im.dedup();
        im
    }

    pub fn rank(&self) -> usize {
        self.image().len()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }
}

impl fmt::Debug for Transf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Transf{:?}", self.0)
    }
}

impl From<Vec<usize>> for Transf {
    fn from(v: Vec<usize>) -> Self {
        Transf(v)
    }
}

impl std::ops::Index<usize> for Transf {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

/// Odometer over all maps `0..n -> 0..m`, in lexicographic order of value arrays.
pub struct MapOdometer {
    values: Vec<usize>,
    codomain: usize,
    done: bool,
}

impl MapOdometer {
    pub fn new(n: usize, codomain: usize) -> Self {
        MapOdometer {
            values: vec![0; n],
            codomain,
            done: codomain == 0 && n > 0,
        }
    }

    /// Current map, or `None` once exhausted.
    pub fn current(&self) -> Option<&[usize]> {
        (!self.done).then_some(self.values.as_slice())
    }

    pub fn advance(&mut self) {
        for i in (0..self.values.len()).rev() {
            self.values[i] += 1;
            if self.values[i] < self.codomain {
                return;
            }
            self.values[i] = 0;
        }
        self.done = true;
    }
}

/// Calls `visit` on every map `0..n -> 0..m`.
pub fn for_each_map(n: usize, m: usize, mut visit: impl FnMut(&[usize])) {
    let mut odo = MapOdometer::new(n, m);
    while let Some(v) = odo.current() {
        visit(v);
        odo.advance();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_left_to_right() {
        let a = Transf::new(vec![1, 2, 0]);
        let b = Transf::new(vec![0, 0, 2]);
        assert_eq!(a.then(&b).values(), &[0, 2, 0]);
        assert_eq!(b.then(&a).values(), &[1, 1, 0]);
    }

    #[test]
    fn odometer_counts() {
        let mut count = 0;
        let mut last = Vec::new();
        for_each_map(3, 2, |v| {
            count += 1;
            last = v.to_vec();
        });
        assert_eq!(count, 8);
        assert_eq!(last, vec![1, 1, 1]);
        let mut empty = 0;
        for_each_map(0, 5, |_| empty += 1);
        assert_eq!(empty, 1);
    }

    #[test]
    fn codomain_checked() {
        assert!(Transf::with_codomain(vec![0, 3], 3).is_err());
        assert!(Transf::with_codomain(vec![0, 2], 3).is_ok());
    }
}
