//! Finite semigroups as dense multiplication tables, optionally carrying a
//! faithful representation by maps on a carrier.

mod endo;
mod green;
mod io;
mod iso;
mod special;

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Partition, Transf};
use crate::config::RunConfig;
use crate::error::{HullError, Result};

pub use endo::{
    enumerate_endomorphisms, full_transformation_monoid, rank_ideal, rank_ideal_in, search_homs,
    subalgebra_rank,
};
pub use green::{DClass, EggBox};
pub use io::{semigroup_from_json, semigroup_to_json, SemigroupFile};
pub use iso::iso_check;
pub use special::{left_zero, null_semigroup, right_zero, semigroup_of_op};

/// Orders up to which associativity is checked on every triple.
pub const EXHAUSTIVE_ASSOC_LIMIT: usize = 60;
/// Triples sampled above [`EXHAUSTIVE_ASSOC_LIMIT`].
pub const ASSOC_SAMPLES: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::TwoSided => "two-sided",
        }
    }
}

#[derive(Debug, Clone)]
pub struct FinSemigroup {
    order: usize,
    mul: Vec<usize>,
    repr: Option<Vec<Transf>>,
    index: HashMap<Transf, usize>,
    names: Option<Vec<String>>,
}

impl PartialEq for FinSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul && self.repr == other.repr
    }
}

impl Eq for FinSemigroup {}

/// First triple `(a, b, c)` with `(ab)c != a(bc)`.
fn assoc_violation(order: usize, mul: &[usize], seed: u64) -> Option<(usize, usize, usize)> {
    let m = |a: usize, b: usize| mul[a * order + b];
    if order <= EXHAUSTIVE_ASSOC_LIMIT {
        for a in 0..order {
            for b in 0..order {
                let ab = m(a, b);
                for c in 0..order {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ASSOC_SAMPLES {
        let (a, b, c) = (rng.gen_range(0..order), rng.gen_range(0..order), rng.gen_range(0..order));
        if m(m(a, b), c) != m(a, m(b, c)) {
            return Some((a, b, c));
        }
    }
    None
}

impl FinSemigroup {
    /// An abstract semigroup from a row-major table, checked for
    /// associativity (sampled above order 60, using `seed`).
    pub fn from_table(order: usize, mul: Vec<usize>, seed: u64) -> Result<Self> {
        if order == 0 {
            return Err(HullError::EmptyIdeal("a semigroup needs at least one element".into()));
        }
        if mul.len() != order * order {
            return Err(HullError::dim(order * order, mul.len(), "multiplication table entries"));
        }
        if let Some(pos) = mul.iter().position(|&v| v >= order) {
            return Err(HullError::Construction(format!(
                "table entry {pos} is {}, outside 0..{order}",
                mul[pos]
            )));
        }
        if let Some((a, b, c)) = assoc_violation(order, &mul, seed) {
            return Err(HullError::Construction(format!(
                "table is not associative at ({a}, {b}, {c})"
            )));
        }
        Ok(Self::from_trusted_table(order, mul))
    }

    /// No associativity check; for tables produced by trusted constructions.
    pub(crate) fn from_trusted_table(order: usize, mul: Vec<usize>) -> Self {
        FinSemigroup {
            order,
            mul,
            repr: None,
            index: HashMap::new(),
            names: None,
        }
    }

    /// The semigroup of maps on `0..carrier` given by `maps`, which must be
    /// closed under composition. Elements are sorted by value array.
    pub fn from_maps(carrier: usize, maps: Vec<Transf>, max_order: usize) -> Result<Self> {
        let mut maps = maps;
        maps.sort_unstable();
        maps.dedup();
        if maps.is_empty() {
            return Err(HullError::EmptyIdeal("no maps given".into()));
        }
        if maps.len() > max_order {
            return Err(HullError::size("semigroup order for a dense table", maps.len(), max_order));
        }
        for (i, f) in maps.iter().enumerate() {
            if f.domain_size() != carrier {
                return Err(HullError::dim(carrier, f.domain_size(), format!("domain of map {i}")));
            }
            if f.values().iter().any(|&v| v >= carrier) {
                return Err(HullError::Precondition(format!("map {i} leaves the carrier")));
            }
        }
        let index: HashMap<Transf, usize> =
            maps.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let m = maps.len();
        let mut mul = Vec::with_capacity(m * m);
        for a in &maps {
            for b in &maps {
                let ab = a.then(b);
                match index.get(&ab) {
                    Some(&k) => mul.push(k),
                    None => {
                        return Err(HullError::Precondition(format!(
                            "maps are not closed under composition: {a:?} then {b:?} gives {ab:?}"
                        )))
                    }
                }
            }
        }
        Ok(FinSemigroup {
            order: m,
            mul,
            repr: Some(maps),
            index,
            names: None,
        })
    }

    /// Closes `gens` under composition and builds the resulting semigroup.
    pub fn generated_by_maps(carrier: usize, gens: &[Transf], cfg: &RunConfig) -> Result<Self> {
        let mut seen: HashSet<Transf> = HashSet::new();
        let mut all: Vec<Transf> = Vec::new();
        for g in gens {
            if seen.insert(g.clone()) {
                all.push(g.clone());
            }
        }
        let mut frontier = 0;
        while frontier < all.len() {
            let a = all[frontier].clone();
            frontier += 1;
            for g in gens {
                let p = a.then(g);
                if seen.insert(p.clone()) {
                    all.push(p);
                    if all.len() > cfg.max_table_order {
                        return Err(HullError::size(
                            "semigroup order for a dense table",
                            all.len(),
                            cfg.max_table_order,
                        ));
                    }
                }
            }
        }
        Self::from_maps(carrier, all, cfg.max_table_order)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.order {
            return Err(HullError::dim(self.order, names.len(), "element names"));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn table(&self) -> &[usize] {
        &self.mul
    }

    pub fn repr(&self) -> Option<&[Transf]> {
        self.repr.as_deref()
    }

    /// Carrier size of the representation, if any.
    pub fn carrier(&self) -> Option<usize> {
        self.repr.as_ref().map(|r| r.first().map_or(0, Transf::domain_size))
    }

    pub fn element(&self, i: usize) -> Option<&Transf> {
        self.repr.as_ref().map(|r| &r[i])
    }

    pub fn index_of(&self, f: &Transf) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, i: usize) -> String {
        match &self.names {
            Some(n) => n[i].clone(),
            None => i.to_string(),
        }
    }

    /// The representing maps, or an error for abstract semigroups.
    pub fn maps(&self) -> Result<&[Transf]> {
        self.repr()
            .ok_or_else(|| HullError::Precondition("semigroup has no transformation representation".into()))
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.order).filter(|&a| self.is_idempotent(a)).collect()
    }

    /// The two-sided identity, if there is one.
    pub fn identity(&self) -> Option<usize> {
        (0..self.order).find(|&e| (0..self.order).all(|a| self.mul(e, a) == a && self.mul(a, e) == a))
    }

    /// The group of units; empty when there is no identity.
    pub fn units(&self) -> Vec<usize> {
        let Some(e) = self.identity() else { return Vec::new() };
        (0..self.order)
            .filter(|&a| (0..self.order).any(|b| self.mul(a, b) == e && self.mul(b, a) == e))
            .collect()
    }

    /// Complement of the group of units (everything when there is no identity).
    pub fn non_units(&self) -> Vec<usize> {
        let units = self.units();
        (0..self.order).filter(|a| !units.contains(a)).collect()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    fn check_subset(&self, subset: &[usize]) -> Result<()> {
        if let Some(&x) = subset.iter().find(|&&x| x >= self.order) {
            return Err(HullError::Precondition(format!(
                "element {x} outside a semigroup of order {}",
                self.order
            )));
        }
        Ok(())
    }

    fn membership(&self, subset: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.order];
        for &x in subset {
            inside[x] = true;
        }
        inside
    }

    pub fn is_closed(&self, subset: &[usize]) -> bool {
        let inside = self.membership(subset);
        subset.iter().all(|&a| subset.iter().all(|&b| inside[self.mul(a, b)]))
    }

    /// Whether `subset` absorbs multiplication by all of `self` on the given side(s).
    pub fn is_ideal(&self, subset: &[usize], side: Side) -> bool {
        let inside = self.membership(subset);
        subset.iter().all(|&a| {
            (0..self.order).all(|s| {
                let left_ok = side == Side::Right || inside[self.mul(s, a)];
                let right_ok = side == Side::Left || inside[self.mul(a, s)];
                left_ok && right_ok
            })
        })
    }

    /// `{ab : a in xs, b in ys}`, sorted.
    pub fn set_product(&self, xs: &[usize], ys: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        for &a in xs {
            for &b in ys {
                seen[self.mul(a, b)] = true;
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    /// Smallest ideal of the given side containing `gens`: `S^1 G`, `G S^1` or `S^1 G S^1`.
    pub fn ideal_generated(&self, gens: &[usize], side: Side) -> Result<Vec<usize>> {
        if gens.is_empty() {
            return Err(HullError::EmptyIdeal("ideal generated by the empty set".into()));
        }
        self.check_subset(gens)?;
        let mut inside = vec![false; self.order];
        let mut stack: Vec<usize> = Vec::new();
        for &g in gens {
            if !inside[g] {
                inside[g] = true;
                stack.push(g);
            }
        }
        while let Some(a) = stack.pop() {
            for s in 0..self.order {
                let mut products = [None, None];
                if side != Side::Right {
                    products[0] = Some(self.mul(s, a));
                }
                if side != Side::Left {
                    products[1] = Some(self.mul(a, s));
                }
                for p in products.into_iter().flatten() {
                    if !inside[p] {
                        inside[p] = true;
                        stack.push(p);
                    }
                }
            }
        }
        Ok((0..self.order).filter(|&x| inside[x]).collect())
    }

    /// Subsemigroup generated by `gens`.
    pub fn subsemigroup_generated(&self, gens: &[usize]) -> Result<Vec<usize>> {
        if gens.is_empty() {
            return Err(HullError::EmptyIdeal("subsemigroup generated by the empty set".into()));
        }
        self.check_subset(gens)?;
        let mut inside = self.membership(gens);
        let mut members: Vec<usize> = (0..self.order).filter(|&x| inside[x]).collect();
        let mut frontier = 0;
        while frontier < members.len() {
            let a = members[frontier];
            frontier += 1;
            for &g in gens {
                for p in [self.mul(a, g), self.mul(g, a)] {
                    if !inside[p] {
                        inside[p] = true;
                        members.push(p);
                    }
                }
            }
        }
        members.sort_unstable();
        Ok(members)
    }

    /// `{u : uI ⊆ I}` (left), `{u : Iu ⊆ I}` (right) or both (two-sided).
    pub fn idealiser_in(&self, subset: &[usize], side: Side) -> Result<Vec<usize>> {
        self.check_subset(subset)?;
        if subset.is_empty() {
            return Err(HullError::EmptyIdeal("idealiser of the empty set".into()));
        }
        if !self.is_closed(subset) {
            return Err(HullError::Precondition("subset is not a subsemigroup".into()));
        }
        let inside = self.membership(subset);
        Ok((0..self.order)
            .filter(|&u| {
                subset.iter().all(|&a| {
                    (side == Side::Right || inside[self.mul(u, a)])
                        && (side == Side::Left || inside[self.mul(a, u)])
                })
            })
            .collect())
    }

    /// The subsemigroup on a closed subset (sorted ascending), with the
    /// positions of its elements in `self`.
    pub fn restrict(&self, subset: &[usize]) -> Result<(FinSemigroup, Vec<usize>)> {
        self.check_subset(subset)?;
        let mut members = subset.to_vec();
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(HullError::EmptyIdeal("restriction to the empty set".into()));
        }
        let mut pos = vec![usize::MAX; self.order];
        for (i, &x) in members.iter().enumerate() {
            pos[x] = i;
        }
        let m = members.len();
        let mut mul = Vec::with_capacity(m * m);
        for &a in &members {
            for &b in &members {
                let p = pos[self.mul(a, b)];
                if p == usize::MAX {
                    return Err(HullError::Precondition(format!(
                        "subset is not closed: {a} * {b} = {} is outside",
                        self.mul(a, b)
                    )));
                }
                mul.push(p);
            }
        }
        let repr = self
            .repr
            .as_ref()
            .map(|r| members.iter().map(|&x| r[x].clone()).collect::<Vec<_>>());
        let index = repr
            .as_ref()
            .map(|r| r.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect())
            .unwrap_or_default();
        let names = self
            .names
            .as_ref()
            .map(|n| members.iter().map(|&x| n[x].clone()).collect());
        Ok((
            FinSemigroup {
                order: m,
                mul,
                repr,
                index,
                names,
            },
            members,
        ))
    }

    /// Whether `theta` is compatible with multiplication.
    pub fn is_congruence(&self, theta: &Partition) -> Result<bool> {
        if theta.carrier_size() != self.order {
            return Err(HullError::dim(self.order, theta.carrier_size(), "partition vs semigroup order"));
        }
        Ok((0..self.order).all(|a| {
            let ra = theta.rep(a);
            ra == a
                || (0..self.order).all(|s| {
                    theta.same(self.mul(a, s), self.mul(ra, s)) && theta.same(self.mul(s, a), self.mul(s, ra))
                })
        }))
    }

    /// Quotient by a congruence, re-indexed in representative order.
    pub fn quotient(&self, theta: &Partition) -> Result<FinSemigroup> {
        if !self.is_congruence(theta)? {
            return Err(HullError::Precondition("partition is not a semigroup congruence".into()));
        }
        let idx = theta.class_index();
        let reps = theta.representatives();
        let m = reps.len();
        let mut mul = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                mul.push(idx[self.mul(a, b)]);
            }
        }
        Ok(FinSemigroup::from_trusted_table(m, mul))
    }

    /// Checks that every product in the table is the composite of the representing maps.
    pub fn repr_is_faithful(&self) -> bool {
        let Some(r) = &self.repr else { return true };
        (0..self.order).all(|a| (0..self.order).all(|b| r[a].then(&r[b]) == r[self.mul(a, b)]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[usize]) -> Transf {
        Transf::new(v.to_vec())
    }

    #[test]
    fn associativity_rejected() {
        // a 2-element table with xy = 1 - x fails associativity
        let bad = vec![1, 1, 0, 0];
        assert!(FinSemigroup::from_table(2, bad, 1).is_err());
        assert!(FinSemigroup::from_table(2, vec![0, 1, 1, 0], 1).is_ok());
    }

    #[test]
    fn maps_sorted_and_faithful() {
        let s = FinSemigroup::from_maps(2, vec![t(&[1, 0]), t(&[0, 1])], 16).unwrap();
        assert_eq!(s.element(0), Some(&t(&[0, 1])));
        assert_eq!(s.identity(), Some(0));
        assert!(s.repr_is_faithful());
        assert!(FinSemigroup::from_maps(2, vec![t(&[1, 0])], 16).is_err());
    }

    #[test]
    fn ideals_in_t3() {
        let t3 = full_transformation_monoid(3, &RunConfig::default()).unwrap();
        let c = t3.index_of(&t(&[1, 1, 1])).unwrap();
        let consts = t3.ideal_generated(&[c], Side::TwoSided).unwrap();
        assert_eq!(consts.len(), 3);
        let r2 = t3.index_of(&t(&[0, 0, 1])).unwrap();
        assert_eq!(t3.ideal_generated(&[r2], Side::TwoSided).unwrap().len(), 21);
        assert_eq!(t3.idealiser_in(&consts, Side::TwoSided).unwrap().len(), 27);
        assert!(t3.ideal_generated(&[], Side::Left).is_err());
        assert_eq!(t3.units().len(), 6);
    }

    #[test]
    fn group_ideals_are_whole() {
        let c4 = semigroup_of_op(&crate::algebra::make_cyclic_group(4), 0).unwrap();
        for g in 0..4 {
            assert_eq!(c4.ideal_generated(&[g], Side::TwoSided).unwrap(), vec![0, 1, 2, 3]);
        }
    }

    #[test]
    fn idealiser_needs_closed_subset() {
        let t3 = full_transformation_monoid(3, &RunConfig::default()).unwrap();
        let a = t3.index_of(&t(&[1, 2, 0])).unwrap();
        assert!(t3.idealiser_in(&[a], Side::Left).is_err());
    }
}
