//! Left and right translations, bi-translations and the translational hull
//! of a finite semigroup, and their realisation by maps on a carrier.

mod chi;
mod realize;
mod report;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{HullError, Result};
use crate::semigroup::FinSemigroup;

pub use chi::{equiv_congruences, natural_chi, natural_chi_maps, ChiReport, EquivCongruences};
pub use realize::{
    idealiser_in_maps, induced_bitranslation, induced_translation, is_left_balanced,
    is_right_balanced, is_strongly_left_balanced, is_strongly_right_balanced, left_witnesses,
    realized_bitranslations, realizers_in_maps, right_seed, Realizers, StrongRight,
};
pub use report::{hull_report, HullCounts, HullReport, HullVerdicts};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransSide {
    Left,
    Right,
}

/// A translation stored as its table over the elements of `I`. Right
/// translations act on the right: `table[a]` is `aρ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Translation {
    pub side: TransSide,
    pub table: Vec<usize>,
}

impl Translation {
    pub fn left(table: Vec<usize>) -> Self {
        Translation { side: TransSide::Left, table }
    }

    pub fn right(table: Vec<usize>) -> Self {
        Translation { side: TransSide::Right, table }
    }
}

/// A linked pair `(λ, ρ)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BiTranslation {
    pub left: Translation,
    pub right: Translation,
}

impl BiTranslation {
    pub fn new(lambda: Vec<usize>, rho: Vec<usize>) -> Self {
        BiTranslation {
            left: Translation::left(lambda),
            right: Translation::right(rho),
        }
    }

    pub fn lambda(&self) -> &[usize] {
        &self.left.table
    }

    pub fn rho(&self) -> &[usize] {
        &self.right.table
    }

    /// Product in the hull: `λλ'` applies `λ'` first, `ρρ'` applies `ρ` first.
    pub fn compose(&self, other: &BiTranslation) -> BiTranslation {
        let lambda = other.lambda().iter().map(|&x| self.lambda()[x]).collect();
        let rho = self.rho().iter().map(|&x| other.rho()[x]).collect();
        BiTranslation::new(lambda, rho)
    }

    /// The inner bi-translation of an element `s`: `(a ↦ sa, a ↦ as)`.
    pub fn inner(i: &FinSemigroup, s: usize) -> BiTranslation {
        let m = i.order();
        BiTranslation::new((0..m).map(|a| i.mul(s, a)).collect(), (0..m).map(|a| i.mul(a, s)).collect())
    }
}

fn check_table(i: &FinSemigroup, t: &[usize], what: &str) -> Result<()> {
    if t.len() != i.order() {
        return Err(HullError::dim(i.order(), t.len(), format!("{what} table length")));
    }
    if t.iter().any(|&v| v >= i.order()) {
        return Err(HullError::Precondition(format!("{what} table leaves the semigroup")));
    }
    Ok(())
}

/// `(ab)ρ = a(bρ)` for all `a, b`.
pub fn is_right_translation(i: &FinSemigroup, rho: &[usize]) -> Result<bool> {
    check_table(i, rho, "right translation")?;
    let m = i.order();
    Ok((0..m).all(|a| (0..m).all(|b| rho[i.mul(a, b)] == i.mul(a, rho[b]))))
}

/// `λ(ab) = λ(a)b` for all `a, b`.
pub fn is_left_translation(i: &FinSemigroup, lambda: &[usize]) -> Result<bool> {
    check_table(i, lambda, "left translation")?;
    let m = i.order();
    Ok((0..m).all(|a| (0..m).all(|b| lambda[i.mul(a, b)] == i.mul(lambda[a], b))))
}

/// `a λ(b) = (aρ) b` for all `a, b`.
pub fn is_linked(i: &FinSemigroup, lambda: &[usize], rho: &[usize]) -> Result<bool> {
    check_table(i, lambda, "left translation")?;
    check_table(i, rho, "right translation")?;
    let m = i.order();
    Ok((0..m).all(|a| (0..m).all(|b| i.mul(a, lambda[b]) == i.mul(rho[a], b))))
}

pub fn is_bitranslation(i: &FinSemigroup, bt: &BiTranslation) -> Result<bool> {
    Ok(is_left_translation(i, bt.lambda())?
        && is_right_translation(i, bt.rho())?
        && is_linked(i, bt.lambda(), bt.rho())?)
}

/// Propagating backtracking search for translations of one side.
struct TransSearch<'a> {
    s: &'a FinSemigroup,
    side: TransSide,
    /// `allowed[x][v]`: whether `x ↦ v` is permitted.
    allowed: Option<&'a [Vec<bool>]>,
    order: &'a [usize],
    value: Vec<usize>,
    trail: Vec<usize>,
    stack: Vec<(usize, usize)>,
}

const UNSET: usize = usize::MAX;

impl TransSearch<'_> {
    /// Sets `x ↦ v` and every value it forces. A right translation with
    /// `bρ = v` forces `(ab)ρ = av`; a left translation with `λ(a) = v`
    /// forces `λ(ab) = vb`.
    fn assign(&mut self, x: usize, v: usize) -> bool {
        let m = self.s.order();
        self.stack.clear();
        self.stack.push((x, v));
        while let Some((y, w)) = self.stack.pop() {
            let cur = self.value[y];
            if cur != UNSET {
                if cur != w {
                    return false;
                }
                continue;
            }
            if let Some(a) = self.allowed {
                if !a[y][w] {
                    return false;
                }
            }
            self.value[y] = w;
            self.trail.push(y);
            for z in 0..m {
                let pair = match self.side {
                    TransSide::Right => (self.s.mul(z, y), self.s.mul(z, w)),
                    TransSide::Left => (self.s.mul(y, z), self.s.mul(w, z)),
                };
                self.stack.push(pair);
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let y = self.trail.pop().expect("non-empty");
            self.value[y] = UNSET;
        }
    }

    fn run(&mut self, pos: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let mut pos = pos;
        while pos < self.order.len() && self.value[self.order[pos]] != UNSET {
            pos += 1;
        }
        if pos == self.order.len() {
            return visit(&self.value);
        }
        let x = self.order[pos];
        for v in 0..self.s.order() {
            if self.allowed.is_some_and(|a| !a[x][v]) {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(x, v) && !self.run(pos + 1, visit) {
                self.undo(mark);
                return false;
            }
            self.undo(mark);
        }
        true
    }
}

/// Elements ordered by how often they occur as a product, most first.
fn variable_order(s: &FinSemigroup) -> Vec<usize> {
    let m = s.order();
    let mut count = vec![0usize; m];
    for &p in s.table() {
        count[p] += 1;
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&x| (std::cmp::Reverse(count[x]), x));
    order
}

fn check_bound(i: &FinSemigroup, cfg: &RunConfig) -> Result<()> {
    if i.order() > cfg.enumeration_bound {
        return Err(HullError::size(
            "semigroup order for translation enumeration",
            i.order(),
            cfg.enumeration_bound,
        ));
    }
    Ok(())
}

fn search_tables(
    i: &FinSemigroup,
    side: TransSide,
    allowed: Option<&[Vec<bool>]>,
    order: &[usize],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    let mut search = TransSearch {
        s: i,
        side,
        allowed,
        order,
        value: vec![UNSET; i.order()],
        trail: Vec::new(),
        stack: Vec::new(),
    };
    search.run(0, visit);
}

fn enumerate_side(i: &FinSemigroup, side: TransSide, cfg: &RunConfig) -> Result<Vec<Translation>> {
    check_bound(i, cfg)?;
    let order = variable_order(i);
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut overflow = false;
    search_tables(i, side, None, &order, &mut |t| {
        if out.len() == cfg.max_results {
            overflow = true;
            return false;
        }
        out.push(t.to_vec());
        true
    });
    if overflow {
        return Err(HullError::size("number of translations", cfg.max_results + 1, cfg.max_results));
    }
    out.sort_unstable();
    Ok(out.into_iter().map(|table| Translation { side, table }).collect())
}

/// All right translations, sorted by table.
pub fn enumerate_right_translations(i: &FinSemigroup, cfg: &RunConfig) -> Result<Vec<Translation>> {
    enumerate_side(i, TransSide::Right, cfg)
}

/// All left translations, sorted by table.
pub fn enumerate_left_translations(i: &FinSemigroup, cfg: &RunConfig) -> Result<Vec<Translation>> {
    enumerate_side(i, TransSide::Left, cfg)
}

/// Every bi-translation, sorted by `(λ, ρ)`. For each right translation `ρ`
/// the left translations linked to it are searched with `λ(b)` restricted to
/// `{x : ax = (aρ)b for all a}`.
pub fn enumerate_bitranslations(i: &FinSemigroup, cfg: &RunConfig) -> Result<Vec<BiTranslation>> {
    let rhos = enumerate_right_translations(i, cfg)?;
    let m = i.order();
    let order = variable_order(i);
    let mut out: Vec<BiTranslation> = Vec::new();
    let mut overflow = false;
    for rho in &rhos {
        let rho = &rho.table;
        let allowed: Vec<Vec<bool>> = (0..m)
            .map(|b| (0..m).map(|x| (0..m).all(|a| i.mul(a, x) == i.mul(rho[a], b))).collect())
            .collect();
        if allowed.iter().any(|row| !row.iter().any(|&ok| ok)) {
            continue;
        }
        search_tables(i, TransSide::Left, Some(&allowed), &order, &mut |lambda| {
            if out.len() == cfg.max_results {
                overflow = true;
                return false;
            }
            out.push(BiTranslation::new(lambda.to_vec(), rho.clone()));
            true
        });
        if overflow {
            return Err(HullError::size("number of bi-translations", cfg.max_results + 1, cfg.max_results));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Distinct left components, sorted.
pub fn lambda_tilde(omega: &[BiTranslation]) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = omega.iter().map(|b| b.lambda().to_vec()).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Distinct right components, sorted.
pub fn rho_tilde(omega: &[BiTranslation]) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = omega.iter().map(|b| b.rho().to_vec()).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// The hull as a semigroup on the given (sorted, distinct) bi-translations.
pub fn omega_semigroup(omega: &[BiTranslation], cfg: &RunConfig) -> Result<FinSemigroup> {
    let k = omega.len();
    if k == 0 {
        return Err(HullError::EmptyIdeal("no bi-translations".into()));
    }
    if k > cfg.max_table_order {
        return Err(HullError::size("hull order for a dense table", k, cfg.max_table_order));
    }
    let index: HashMap<&BiTranslation, usize> = omega.iter().enumerate().map(|(p, b)| (b, p)).collect();
    let mut mul = Vec::with_capacity(k * k);
    for a in omega {
        for b in omega {
            let ab = a.compose(b);
            let p = index
                .get(&ab)
                .ok_or_else(|| HullError::Precondition("bi-translations are not closed under product".into()))?;
            mul.push(*p);
        }
    }
    Ok(FinSemigroup::from_trusted_table(k, mul))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::for_each_map;
    use crate::semigroup::{full_transformation_monoid, left_zero, null_semigroup, rank_ideal, right_zero};

    /// All tables checked directly.
    fn brute(i: &FinSemigroup) -> (Vec<Vec<usize>>, Vec<Vec<usize>>, Vec<(Vec<usize>, Vec<usize>)>) {
        let m = i.order();
        let mut lefts = Vec::new();
        let mut rights = Vec::new();
        for_each_map(m, m, |t| {
            if is_left_translation(i, t).unwrap() {
                lefts.push(t.to_vec());
            }
            if is_right_translation(i, t).unwrap() {
                rights.push(t.to_vec());
            }
        });
        let mut bis = Vec::new();
        for l in &lefts {
            for r in &rights {
                if is_linked(i, l, r).unwrap() {
                    bis.push((l.clone(), r.clone()));
                }
            }
        }
        (lefts, rights, bis)
    }

    fn check_against_brute(i: &FinSemigroup) {
        let cfg = RunConfig::default();
        let (l, r, b) = brute(i);
        let el: Vec<Vec<usize>> = enumerate_left_translations(i, &cfg).unwrap().into_iter().map(|t| t.table).collect();
        let er: Vec<Vec<usize>> = enumerate_right_translations(i, &cfg).unwrap().into_iter().map(|t| t.table).collect();
        let eb: Vec<(Vec<usize>, Vec<usize>)> = enumerate_bitranslations(i, &cfg)
            .unwrap()
            .into_iter()
            .map(|x| (x.left.table, x.right.table))
            .collect();
        assert_eq!(el, l);
        assert_eq!(er, r);
        assert_eq!(eb, b);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let cfg = RunConfig::default();
        check_against_brute(&null_semigroup(3).unwrap());
        check_against_brute(&right_zero(3).unwrap());
        check_against_brute(&left_zero(4).unwrap());
        check_against_brute(&rank_ideal(3, 2, &cfg).unwrap());
        check_against_brute(&full_transformation_monoid(2, &cfg).unwrap());
    }

    #[test]
    fn null_semigroup_counts() {
        let cfg = RunConfig::default();
        for m in 1..=4usize {
            let z = null_semigroup(m).unwrap();
            let p = m.pow(m as u32 - 1);
            assert_eq!(enumerate_left_translations(&z, &cfg).unwrap().len(), p);
            assert_eq!(enumerate_right_translations(&z, &cfg).unwrap().len(), p);
            assert_eq!(enumerate_bitranslations(&z, &cfg).unwrap().len(), p * p);
        }
    }

    #[test]
    fn inner_translations_are_bitranslations() {
        let t3 = full_transformation_monoid(3, &RunConfig::default()).unwrap();
        for s in 0..t3.order() {
            assert!(is_bitranslation(&t3, &BiTranslation::inner(&t3, s)).unwrap());
        }
    }

    #[test]
    fn omega_of_right_zero_is_full_monoid() {
        let cfg = RunConfig::default();
        let rz = right_zero(3).unwrap();
        let omega = enumerate_bitranslations(&rz, &cfg).unwrap();
        assert_eq!(omega.len(), 27);
        assert_eq!(lambda_tilde(&omega).len(), 1);
        let s = omega_semigroup(&omega, &cfg).unwrap();
        let t3 = full_transformation_monoid(3, &cfg).unwrap();
        assert!(crate::semigroup::iso_check(&s, &t3).unwrap().is_some());
    }

    #[test]
    fn bound_is_enforced() {
        let cfg = RunConfig {
            enumeration_bound: 2,
            ..RunConfig::default()
        };
        assert!(matches!(
            enumerate_right_translations(&null_semigroup(3).unwrap(), &cfg),
            Err(HullError::Size { .. })
        ));
        let cfg = RunConfig {
            max_results: 3,
            ..RunConfig::default()
        };
        assert!(matches!(
            enumerate_right_translations(&null_semigroup(3).unwrap(), &cfg),
            Err(HullError::Size { .. })
        ));
    }
}
