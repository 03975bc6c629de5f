//! Finite semirings, matrix semirings over them, and the two hull results
//! for multiplicative ideals.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::json_error;
use crate::config::RunConfig;
use crate::error::{HullError, Result};
use crate::hull::{enumerate_bitranslations, natural_chi};
use crate::semigroup::{FinSemigroup, Side};

/// Largest semiring whose axioms are checked (cubic in the order).
pub const SEMIRING_LIMIT: usize = 256;
/// Choice tuples for condition (2) are enumerated up to this many.
pub const CHOICE_LIMIT: usize = 1_000_000;
pub const CHOICE_SAMPLES: usize = 100_000;
/// Largest idempotent list for which subsets are searched in condition (1).
pub const SUBSET_SEARCH_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemiring {
    order: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    zero: usize,
    one: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemiringFile {
    pub order: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
    #[serde(default)]
    pub one: Option<usize>,
}

fn flatten(rows: &[Vec<usize>], m: usize, name: &str) -> Result<Vec<usize>> {
    if rows.len() != m {
        return Err(HullError::Parse {
            location: name.into(),
            message: format!("expected {m} rows, got {}", rows.len()),
        });
    }
    let mut out = Vec::with_capacity(m * m);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != m {
            return Err(HullError::Parse {
                location: format!("{name}[{i}]"),
                message: format!("expected {m} entries, got {}", row.len()),
            });
        }
        for (j, &v) in row.iter().enumerate() {
            if v >= m {
                return Err(HullError::Parse {
                    location: format!("{name}[{i}][{j}]"),
                    message: format!("entry {v} out of range for order {m}"),
                });
            }
            out.push(v);
        }
    }
    Ok(out)
}

impl FiniteSemiring {
    /// Validates the semiring axioms: both operations associative, `+`
    /// commutative, two-sided distributivity, `0` an additive identity and
    /// multiplicatively absorbing, and `1` (if given) a multiplicative identity.
    pub fn new(order: usize, add: Vec<usize>, mul: Vec<usize>, zero: usize, one: Option<usize>) -> Result<Self> {
        if order == 0 {
            return Err(HullError::Construction("semiring must be non-empty".into()));
        }
        if order > SEMIRING_LIMIT {
            return Err(HullError::size("semiring order", order, SEMIRING_LIMIT));
        }
        for (name, t) in [("add", &add), ("mul", &mul)] {
            if t.len() != order * order {
                return Err(HullError::dim(order * order, t.len(), format!("{name} table")));
            }
            if let Some(&v) = t.iter().find(|&&v| v >= order) {
                return Err(HullError::Construction(format!("{name} table value {v} out of range")));
            }
        }
        if zero >= order || one.is_some_and(|o| o >= order) {
            return Err(HullError::Construction("distinguished element out of range".into()));
        }
        let r = FiniteSemiring {
            order,
            add,
            mul,
            zero,
            one,
        };
        r.check_axioms()?;
        Ok(r)
    }

    fn check_axioms(&self) -> Result<()> {
        let m = self.order;
        let bad = |what: &str, a: usize, b: usize, c: usize| {
            Err(HullError::Construction(format!("{what} fails at ({a}, {b}, {c})")))
        };
        for a in 0..m {
            for b in 0..m {
                if self.add(a, b) != self.add(b, a) {
                    return bad("commutativity of +", a, b, 0);
                }
                for c in 0..m {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return bad("associativity of +", a, b, c);
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return bad("associativity of *", a, b, c);
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return bad("left distributivity", a, b, c);
                    }
                    if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                        return bad("right distributivity", a, b, c);
                    }
                }
            }
            if self.add(self.zero, a) != a || self.mul(self.zero, a) != self.zero || self.mul(a, self.zero) != self.zero {
                return bad("zero", a, 0, 0);
            }
            if let Some(o) = self.one {
                if self.mul(o, a) != a || self.mul(a, o) != a {
                    return bad("one", a, 0, 0);
                }
            }
        }
        Ok(())
    }

    /// `({0, 1}, or, and)`.
    pub fn boolean() -> Self {
        FiniteSemiring::new(2, vec![0, 1, 1, 1], vec![0, 0, 0, 1], 0, Some(1)).expect("boolean semiring")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> Option<usize> {
        self.one
    }

    pub fn multiplicative_semigroup(&self) -> FinSemigroup {
        FinSemigroup::from_trusted_table(self.order, self.mul.clone())
    }

    pub fn from_file(f: SemiringFile) -> Result<Self> {
        let add = flatten(&f.add, f.order, "add")?;
        let mul = flatten(&f.mul, f.order, "mul")?;
        FiniteSemiring::new(f.order, add, mul, f.zero, f.one)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: SemiringFile = serde_json::from_str(text).map_err(|e| json_error(&e))?;
        FiniteSemiring::from_file(f)
    }

    pub fn to_file(&self) -> SemiringFile {
        let rows = |t: &[usize]| t.chunks(self.order).map(<[usize]>::to_vec).collect();
        SemiringFile {
            order: self.order,
            add: rows(&self.add),
            mul: rows(&self.mul),
            zero: self.zero,
            one: self.one,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("semiring serialises")
    }

    /// Sum of a non-empty list, or zero for the empty list.
    pub fn sum(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.zero, |acc, &x| self.add(acc, x))
    }
}

/// `n × n` matrices over `r`. The entry at `(i, j)` is digit `i·n + j`
/// of the element index in base `|R|`.
pub fn build_matrix_semiring(r: &FiniteSemiring, n: usize) -> Result<FiniteSemiring> {
    if n == 0 {
        return Err(HullError::Construction("matrix size must be at least 1".into()));
    }
    let q = r.order();
    let size = crate::config::checked_pow(q, n * n)
        .filter(|&s| s <= SEMIRING_LIMIT)
        .ok_or_else(|| HullError::size("matrix semiring order", crate::config::checked_pow(q, n * n).unwrap_or(usize::MAX), SEMIRING_LIMIT))?;
    let entries: Vec<Vec<usize>> = (0..size).map(|x| matrix_entries(q, n, x)).collect();
    let encode = |e: &[usize]| e.iter().rev().fold(0, |acc, &d| acc * q + d);
    let mut add = Vec::with_capacity(size * size);
    let mut mul = Vec::with_capacity(size * size);
    let mut buf = vec![0; n * n];
    for a in &entries {
        for b in &entries {
            for k in 0..n * n {
                buf[k] = r.add(a[k], b[k]);
            }
            add.push(encode(&buf));
            for i in 0..n {
                for j in 0..n {
                    buf[i * n + j] = (0..n).fold(r.zero(), |acc, l| r.add(acc, r.mul(a[i * n + l], b[l * n + j])));
                }
            }
            mul.push(encode(&buf));
        }
    }
    let zero = encode(&vec![r.zero(); n * n]);
    let one = r.one().map(|o| {
        let ident: Vec<usize> = (0..n * n).map(|k| if k / n == k % n { o } else { r.zero() }).collect();
        encode(&ident)
    });
    FiniteSemiring::new(size, add, mul, zero, one)
}

/// Entries of matrix `x` in row-major order.
pub fn matrix_entries(q: usize, n: usize, mut x: usize) -> Vec<usize> {
    let mut e = vec![0; n * n];
    for d in e.iter_mut() {
        *d = x % q;
        x /= q;
    }
    e
}

/// The matrix unit `E_ij` over `r`, which needs a one.
pub fn matrix_unit(r: &FiniteSemiring, n: usize, i: usize, j: usize) -> Result<usize> {
    let one = r
        .one()
        .ok_or_else(|| HullError::Precondition("matrix units need a semiring with one".into()))?;
    if i >= n || j >= n {
        return Err(HullError::Precondition(format!("unit ({i}, {j}) outside {n}x{n}")));
    }
    let q = r.order();
    Ok((0..n * n)
        .rev()
        .fold(0, |acc, k| acc * q + if k == i * n + j { one } else { r.zero() }))
}

/// Closure of `gens` under `+` and multiplication by `R` on either side.
pub fn semiring_ideal_closure(r: &FiniteSemiring, gens: &[usize]) -> Result<Vec<usize>> {
    let m = r.order();
    if let Some(&g) = gens.iter().find(|&&g| g >= m) {
        return Err(HullError::Precondition(format!("element {g} outside the semiring")));
    }
    let mut inside = vec![false; m];
    let mut members: Vec<usize> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    let push = |x: usize, inside: &mut Vec<bool>, members: &mut Vec<usize>, queue: &mut VecDeque<usize>| {
        if !inside[x] {
            inside[x] = true;
            members.push(x);
            queue.push_back(x);
        }
    };
    for &g in gens {
        push(g, &mut inside, &mut members, &mut queue);
    }
    while let Some(a) = queue.pop_front() {
        let mut new = Vec::new();
        for s in 0..m {
            new.push(r.mul(s, a));
            new.push(r.mul(a, s));
        }
        for &b in &members {
            new.push(r.add(a, b));
        }
        for x in new {
            push(x, &mut inside, &mut members, &mut queue);
        }
    }
    members.sort_unstable();
    Ok(members)
}

/// Writes `target` as a sum of elements of `xs` if possible, preferring
/// fewest summands.
pub fn decompose_as_sum(r: &FiniteSemiring, xs: &[usize], target: usize) -> Option<Vec<usize>> {
    let m = r.order();
    let mut parent: Vec<Option<(Option<usize>, usize)>> = vec![None; m];
    let mut queue = VecDeque::new();
    for &a in xs {
        if parent[a].is_none() {
            parent[a] = Some((None, a));
            queue.push_back(a);
        }
    }
    while let Some(s) = queue.pop_front() {
        if s == target {
            let mut out = Vec::new();
            let mut cur = Some(s);
            while let Some(c) = cur {
                let (prev, a) = parent[c].expect("reached");
                out.push(a);
                cur = prev;
            }
            out.sort_unstable();
            return Some(out);
        }
        for &a in xs {
            let t = r.add(s, a);
            if parent[t].is_none() {
                parent[t] = Some((Some(s), a));
                queue.push_back(t);
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PropStatus {
    /// The hypotheses fail, so nothing is claimed.
    HypothesisNotMet,
    /// Hypotheses hold and χ is a bijective morphism onto `Ω(I)`.
    Confirmed,
    /// Hypotheses hold but the conclusion fails.
    Violated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChiOutcome {
    pub omega: usize,
    pub morphism: bool,
    pub injective: bool,
    pub surjective: bool,
}

impl ChiOutcome {
    pub fn bijective(&self) -> bool {
        self.morphism && self.injective && self.surjective
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemiringVerdict {
    pub status: PropStatus,
    pub ideal_order: usize,
    /// Elements of `I` summing to one.
    pub decomposition: Option<Vec<usize>>,
    pub semiring_ideal_is_everything: bool,
    pub chi: Option<ChiOutcome>,
}

fn check_mult_ideal(r: &FiniteSemiring, ideal: &[usize]) -> Result<(FinSemigroup, Vec<usize>)> {
    let s = r.multiplicative_semigroup();
    let (_, members) = s.restrict(ideal)?;
    if members.is_empty() {
        return Err(HullError::EmptyIdeal("empty multiplicative ideal".into()));
    }
    if !s.is_ideal(&members, Side::TwoSided) {
        return Err(HullError::Precondition("subset is not a multiplicative ideal".into()));
    }
    Ok((s, members))
}

fn chi_outcome(s: &FinSemigroup, members: &[usize], cfg: &RunConfig) -> Result<ChiOutcome> {
    let (i, _) = s.restrict(members)?;
    let omega = enumerate_bitranslations(&i, cfg)?;
    let chi = natural_chi(s, members, Some(&omega))?;
    Ok(ChiOutcome {
        omega: omega.len(),
        morphism: chi.morphism,
        injective: chi.injective,
        surjective: chi.surjective == Some(true),
    })
}

/// For a multiplicative ideal `I` not inside a proper semiring ideal, `χ`
/// from `R` to `Ω(I)` should be an isomorphism.
pub fn check_prop_semiring(r: &FiniteSemiring, ideal: &[usize], cfg: &RunConfig) -> Result<SemiringVerdict> {
    let one = r
        .one()
        .ok_or_else(|| HullError::Precondition("the semiring needs a one".into()))?;
    let (s, members) = check_mult_ideal(r, ideal)?;
    let decomposition = decompose_as_sum(r, &members, one);
    let semiring_ideal_is_everything = semiring_ideal_closure(r, &members)?.len() == r.order();
    if decomposition.is_some() != semiring_ideal_is_everything {
        return Err(HullError::TheoremViolation(
            "decomposition of one disagrees with the semiring ideal closure".into(),
        ));
    }
    let mut verdict = SemiringVerdict {
        status: PropStatus::HypothesisNotMet,
        ideal_order: members.len(),
        decomposition,
        semiring_ideal_is_everything,
        chi: None,
    };
    if verdict.decomposition.is_some() {
        let chi = chi_outcome(&s, &members, cfg)?;
        verdict.status = if chi.bijective() { PropStatus::Confirmed } else { PropStatus::Violated };
        verdict.chi = Some(chi);
    }
    Ok(verdict)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemiringPlusVerdict {
    pub status: PropStatus,
    pub ideal_order: usize,
    /// A subset `K` of the idempotents with `p = p·ΣK` for every `p ∈ I`.
    pub cond1_subset: Option<Vec<usize>>,
    pub cond2: bool,
    pub cond2_exhaustive: bool,
    pub cond2_tuples: usize,
    /// A choice tuple with no `q`, if one was found.
    pub cond2_counterexample: Option<Vec<usize>>,
    pub cond3: bool,
    pub chi: Option<ChiOutcome>,
}

/// Checks the three conditions on the idempotents `es ⊆ I` and then that
/// `χ` from `R` onto `Ω(I)` is bijective.
pub fn check_prop_semiring_plus(
    r: &FiniteSemiring,
    ideal: &[usize],
    es: &[usize],
    cfg: &RunConfig,
) -> Result<SemiringPlusVerdict> {
    let (s, members) = check_mult_ideal(r, ideal)?;
    if es.is_empty() {
        return Err(HullError::Precondition("need at least one idempotent".into()));
    }
    if es.len() > SUBSET_SEARCH_LIMIT {
        return Err(HullError::size("idempotent list", es.len(), SUBSET_SEARCH_LIMIT));
    }
    for &e in es {
        if members.binary_search(&e).is_err() || r.mul(e, e) != e {
            return Err(HullError::Precondition(format!("{e} is not an idempotent of I")));
        }
    }
    let m = r.order();

    let cond1_subset = (1u32..(1 << es.len())).find_map(|mask| {
        let ks: Vec<usize> = (0..es.len()).filter(|&k| mask & (1 << k) != 0).map(|k| es[k]).collect();
        let total = r.sum(&ks);
        members.iter().all(|&p| r.mul(p, total) == p).then_some(ks)
    });

    let key = |f: &dyn Fn(usize) -> usize| es.iter().enumerate().map(|(k, &e)| r.mul(e, f(k))).collect::<Vec<_>>();
    let reachable: HashSet<Vec<usize>> = (0..m).map(|q| key(&|_| q)).collect();
    let tuples = crate::config::checked_pow(members.len(), es.len()).unwrap_or(usize::MAX);
    let cond2_exhaustive = tuples <= CHOICE_LIMIT;
    let mut cond2_counterexample = None;
    let mut cond2_tuples = 0;
    if cond2_exhaustive {
        let lists = vec![members.clone(); es.len()];
        crate::algebra::for_each_choice(&lists, |c| {
            cond2_tuples += 1;
            if cond2_counterexample.is_none() && !reachable.contains(&key(&|k| c[k])) {
                cond2_counterexample = Some(c.to_vec());
            }
        });
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for _ in 0..CHOICE_SAMPLES {
            let c: Vec<usize> = (0..es.len()).map(|_| members[rng.gen_range(0..members.len())]).collect();
            cond2_tuples += 1;
            if !reachable.contains(&key(&|k| c[k])) {
                cond2_counterexample = Some(c);
                break;
            }
        }
    }
    let cond2 = cond2_counterexample.is_none();

    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let cond3 = (0..m).all(|a| seen.insert(key(&|_| a), a).is_none());

    let mut verdict = SemiringPlusVerdict {
        status: PropStatus::HypothesisNotMet,
        ideal_order: members.len(),
        cond1_subset,
        cond2,
        cond2_exhaustive,
        cond2_tuples,
        cond2_counterexample,
        cond3,
        chi: None,
    };
    if verdict.cond1_subset.is_some() && cond2 && cond3 {
        let chi = chi_outcome(&s, &members, cfg)?;
        verdict.status = if chi.bijective() { PropStatus::Confirmed } else { PropStatus::Violated };
        verdict.chi = Some(chi);
    }
    Ok(verdict)
}
