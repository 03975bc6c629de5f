use super::{EggBox, FinSemigroup};
use crate::error::{HullError, Result};

/// Largest order accepted by [`iso_check`].
pub const ISO_LIMIT: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Profile {
    idempotent: bool,
    index: usize,
    period: usize,
    r_size: usize,
    l_size: usize,
    d_size: usize,
    left_fixed: usize,
    right_fixed: usize,
}

fn profiles(s: &FinSemigroup) -> Vec<Profile> {
    let m = s.order();
    let eb = EggBox::compute(s);
    let count = |p: &crate::algebra::Partition| {
        let idx = p.class_index();
        let mut c = vec![0; p.class_count()];
        for &i in &idx {
            c[i] += 1;
        }
        (0..m).map(|a| c[idx[a]]).collect::<Vec<usize>>()
    };
    let (rs, ls, ds) = (count(&eb.r), count(&eb.l), count(&eb.d));
    (0..m)
        .map(|a| {
            // powers a, a^2, ... until the first repeat
            let mut seen = vec![0usize; m];
            let mut x = a;
            let mut k = 1;
            while seen[x] == 0 {
                seen[x] = k;
                x = s.mul(x, a);
                k += 1;
            }
            let index = seen[x];
            let period = k - seen[x];
            Profile {
                idempotent: s.is_idempotent(a),
                index,
                period,
                r_size: rs[a],
                l_size: ls[a],
                d_size: ds[a],
                left_fixed: (0..m).filter(|&y| s.mul(a, y) == y).count(),
                right_fixed: (0..m).filter(|&y| s.mul(y, a) == y).count(),
            }
        })
        .collect()
}

struct Search<'a> {
    s1: &'a FinSemigroup,
    s2: &'a FinSemigroup,
    p1: Vec<Profile>,
    p2: Vec<Profile>,
    phi: Vec<Option<usize>>,
    inv: Vec<Option<usize>>,
    assigned: Vec<usize>,
}

impl Search<'_> {
    /// Assigns `a -> b` and everything it forces; returns false on conflict.
    /// New assignments are appended to `assigned` so callers can roll back.
    fn assign(&mut self, a: usize, b: usize) -> bool {
        let mut queue = vec![(a, b)];
        while let Some((u, v)) = queue.pop() {
            match (self.phi[u], self.inv[v]) {
                (Some(w), _) if w == v => continue,
                (Some(_), _) | (None, Some(_)) => return false,
                _ => {}
            }
            if self.p1[u] != self.p2[v] {
                return false;
            }
            self.phi[u] = Some(v);
            self.inv[v] = Some(u);
            self.assigned.push(u);
            for i in 0..self.assigned.len() {
                let x = self.assigned[i];
                let y = self.phi[x].expect("assigned");
                queue.push((self.s1.mul(u, x), self.s2.mul(v, y)));
                queue.push((self.s1.mul(x, u), self.s2.mul(y, v)));
            }
        }
        true
    }

    fn rollback(&mut self, len: usize) {
        while self.assigned.len() > len {
            let u = self.assigned.pop().expect("non-empty");
            let v = self.phi[u].take().expect("assigned");
            self.inv[v] = None;
        }
    }

    fn solve(&mut self) -> bool {
        let Some(a) = (0..self.s1.order()).find(|&a| self.phi[a].is_none()) else {
            return true;
        };
        for b in 0..self.s2.order() {
            if self.inv[b].is_some() || self.p1[a] != self.p2[b] {
                continue;
            }
            let mark = self.assigned.len();
            if self.assign(a, b) && self.solve() {
                return true;
            }
            self.rollback(mark);
        }
        false
    }
}

/// An isomorphism `s1 -> s2` as an image array, if one exists. Candidate
/// images are pruned by idempotency, index and period, Green class sizes and
/// fixed-point counts, and every assignment propagates through products.
pub fn iso_check(s1: &FinSemigroup, s2: &FinSemigroup) -> Result<Option<Vec<usize>>> {
    for s in [s1, s2] {
        if s.order() > ISO_LIMIT {
            return Err(HullError::size("semigroup order for isomorphism search", s.order(), ISO_LIMIT));
        }
    }
    if s1.order() != s2.order() {
        return Ok(None);
    }
    let (p1, p2) = (profiles(s1), profiles(s2));
    let (mut q1, mut q2) = (p1.clone(), p2.clone());
    q1.sort_unstable();
    q2.sort_unstable();
    if q1 != q2 {
        return Ok(None);
    }
    let m = s1.order();
    let mut search = Search {
        s1,
        s2,
        p1,
        p2,
        phi: vec![None; m],
        inv: vec![None; m],
        assigned: Vec::new(),
    };
    if !search.solve() {
        return Ok(None);
    }
    let phi: Vec<usize> = search.phi.into_iter().map(|x| x.expect("complete")).collect();
    debug_assert!((0..m).all(|a| (0..m).all(|b| phi[s1.mul(a, b)] == s2.mul(phi[a], phi[b]))));
    Ok(Some(phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_cyclic_group, make_sym_group};
    use crate::semigroup::{left_zero, right_zero, semigroup_of_op};

    fn is_iso(s1: &FinSemigroup, s2: &FinSemigroup, phi: &[usize]) -> bool {
        let m = s1.order();
        let mut hit = vec![false; m];
        phi.iter().for_each(|&y| hit[y] = true);
        hit.iter().all(|&h| h) && (0..m).all(|a| (0..m).all(|b| phi[s1.mul(a, b)] == s2.mul(phi[a], phi[b])))
    }

    #[test]
    fn relabelled_copies_are_found() {
        let c6 = semigroup_of_op(&make_cyclic_group(6), 0).unwrap();
        let s3 = semigroup_of_op(&make_sym_group(3).unwrap(), 0).unwrap();
        assert!(iso_check(&c6, &s3).unwrap().is_none());
        // relabel S3 by a fixed permutation
        let sigma = [3, 5, 0, 1, 4, 2];
        let mut inv = [0; 6];
        for (i, &x) in sigma.iter().enumerate() {
            inv[x] = i;
        }
        let mul: Vec<usize> = (0..6)
            .flat_map(|a| (0..6).map(move |b| (a, b)))
            .map(|(a, b)| sigma[s3.mul(inv[a], inv[b])])
            .collect();
        let copy = FinSemigroup::from_table(6, mul, 0).unwrap();
        let phi = iso_check(&s3, &copy).unwrap().unwrap();
        assert!(is_iso(&s3, &copy, &phi));
    }

    #[test]
    fn left_and_right_zero_differ() {
        let (l, r) = (left_zero(3).unwrap(), right_zero(3).unwrap());
        assert!(iso_check(&l, &r).unwrap().is_none());
        assert!(iso_check(&r, &r).unwrap().is_some());
    }
}
