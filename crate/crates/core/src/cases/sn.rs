//! Closed-form description of `End(S_n)` for `n ≥ 3`, `n ∉ {4, 6}`.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{for_each_map, make_sym_group, permutations, FiniteAlgebra, Transf};
use crate::config::RunConfig;
use crate::error::{HullError, Result};
use crate::hull::{
    enumerate_bitranslations, equiv_congruences, hull_report, idealiser_in_maps, is_left_balanced,
    is_left_translation, omega_semigroup, realized_bitranslations, BiTranslation, HullReport,
};
use crate::semigroup::{enumerate_endomorphisms, iso_check, EggBox, FinSemigroup, Side};

/// Samples per generator strategy in the `n = 5` idealiser check.
pub const SPP_SAMPLES: usize = 3000;

/// Endomorphisms of `S_n` built from the closed-form classification.
/// Group elements are indices into the lexicographic list of permutations.
#[derive(Debug, Clone)]
pub struct SnEndModel {
    pub n: usize,
    pub group: FiniteAlgebra,
    pub perms: Vec<Vec<usize>>,
    /// `psi[s]`: `σ ↦ s⁻¹σs`.
    pub psi: Vec<Transf>,
    /// `D = {t : t² = e}`, ascending; contains the identity.
    pub involutions: Vec<usize>,
    /// `phi[k]` is φ_t for `t = involutions[k]`: even elements go to `e`,
    /// odd ones to `t`.
    pub phi: Vec<Transf>,
    pub phi_e: Transf,
    /// Odd involutions, indexing `E`.
    pub odd: Vec<usize>,
    /// Even involutions other than `e`, indexing `K`.
    pub even: Vec<usize>,
    pub even_parity: Vec<bool>,
}

fn is_even(p: &[usize]) -> bool {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    inversions % 2 == 0
}

/// Cycle lengths of a permutation, sorted.
pub fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out.sort_unstable();
    out
}

/// Builds the model. `n = 4` needs `allow_n4`, since there `S_4` has an
/// extra normal subgroup and the model misses some endomorphisms; `n = 6`
/// has outer automorphisms and is refused.
pub fn build_sn_model(n: usize, allow_n4: bool) -> Result<SnEndModel> {
    if n < 3 {
        return Err(HullError::Precondition(format!(
            "n = {n}: the classification needs n >= 3"
        )));
    }
    if n == 6 {
        return Err(HullError::Precondition(
            "n = 6: S_6 has outer automorphisms, so not every automorphism is inner".into(),
        ));
    }
    if n == 4 && !allow_n4 {
        return Err(HullError::Precondition(
            "n = 4: the kernel of an endomorphism need not be one of {e}, A_n or S_n (Klein four); pass the n = 4 flag to build the partial model".into(),
        ));
    }
    let group = make_sym_group(n)?;
    let perms = permutations(n);
    let m = perms.len();
    let mul = |s: usize, t: usize| group.eval(0, &[s, t]);
    let inv = |s: usize| group.eval(1, &[s]);
    let psi: Vec<Transf> = (0..m)
        .map(|s| Transf::new((0..m).map(|x| mul(mul(inv(s), x), s)).collect()))
        .collect();
    let even_parity: Vec<bool> = perms.iter().map(|p| is_even(p)).collect();
    let involutions: Vec<usize> = (0..m).filter(|&t| mul(t, t) == 0).collect();
    let phi: Vec<Transf> = involutions
        .iter()
        .map(|&t| Transf::new((0..m).map(|x| if even_parity[x] { 0 } else { t }).collect()))
        .collect();
    let odd = involutions.iter().copied().filter(|&t| !even_parity[t]).collect();
    let even = involutions.iter().copied().filter(|&t| t != 0 && even_parity[t]).collect();
    Ok(SnEndModel {
        n,
        phi_e: Transf::constant(m, 0),
        group,
        perms,
        psi,
        involutions,
        phi,
        odd,
        even,
        even_parity,
    })
}

/// Outcome of checking one composition rule on every instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleCheck {
    pub rule: usize,
    pub statement: &'static str,
    pub instances: usize,
    pub failures: usize,
}

impl RuleCheck {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

/// Where the model and a generator search for `End(S_n)` disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub model: usize,
    pub searched: usize,
    /// Model maps missing from the search.
    pub missing: usize,
    /// Searched maps the model lacks.
    pub extra: usize,
}

impl CrossCheck {
    pub fn equal(&self) -> bool {
        self.missing == 0 && self.extra == 0
    }

    pub fn strictly_contained(&self) -> bool {
        self.missing == 0 && self.extra > 0
    }
}

impl SnEndModel {
    pub fn order(&self) -> usize {
        self.perms.len()
    }

    fn mul(&self, s: usize, t: usize) -> usize {
        self.group.eval(0, &[s, t])
    }

    fn conj(&self, s: usize, t: usize) -> usize {
        self.mul(self.mul(self.group.eval(1, &[s]), t), s)
    }

    /// `φ_t` for an involution `t` (φ_e for the identity).
    pub fn phi_of(&self, t: usize) -> Option<&Transf> {
        self.involutions.binary_search(&t).ok().map(|k| &self.phi[k])
    }

    /// Every map of the model, sorted and distinct.
    pub fn maps(&self) -> Vec<Transf> {
        let mut all: Vec<Transf> = self.psi.iter().chain(&self.phi).cloned().collect();
        all.sort();
        all.dedup();
        all
    }

    pub fn semigroup(&self, cfg: &RunConfig) -> Result<FinSemigroup> {
        FinSemigroup::from_maps(self.order(), self.maps(), cfg.max_table_order)
    }

    /// Images of the transposition `(0 1)` and the cycle `(0 1 ... n-1)`.
    pub fn generators(&self) -> [usize; 2] {
        let n = self.n;
        let mut tr: Vec<usize> = (0..n).collect();
        tr.swap(0, 1);
        let cyc: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let find = |p: &Vec<usize>| self.perms.binary_search(p).expect("permutation");
        [find(&tr), find(&cyc)]
    }

    /// Checks rules (1) to (5) on every instance.
    pub fn verify_rules(&self) -> Vec<RuleCheck> {
        let m = self.order();
        let mut checks = vec![
            RuleCheck { rule: 1, statement: "psi_s psi_t = psi_st", instances: 0, failures: 0 },
            RuleCheck { rule: 2, statement: "phi_t psi_s = phi_{s^-1 t s}", instances: 0, failures: 0 },
            RuleCheck { rule: 3, statement: "psi_s phi_t = phi_t", instances: 0, failures: 0 },
            RuleCheck { rule: 4, statement: "phi_s phi_t = phi_e for s even", instances: 0, failures: 0 },
            RuleCheck { rule: 5, statement: "phi_s phi_t = phi_t for s odd", instances: 0, failures: 0 },
        ];
        let mut tally = |k: usize, ok: bool| {
            checks[k].instances += 1;
            checks[k].failures += usize::from(!ok);
        };
        for s in 0..m {
            for t in 0..m {
                tally(0, self.psi[s].then(&self.psi[t]) == self.psi[self.mul(s, t)]);
            }
        }
        for (k, &t) in self.involutions.iter().enumerate() {
            for s in 0..m {
                tally(1, Some(&self.phi[k].then(&self.psi[s])) == self.phi_of(self.conj(s, t)));
                tally(2, self.psi[s].then(&self.phi[k]) == self.phi[k]);
            }
        }
        for (ks, &s) in self.involutions.iter().enumerate() {
            for kt in 0..self.involutions.len() {
                let prod = self.phi[ks].then(&self.phi[kt]);
                if self.even_parity[s] {
                    tally(3, prod == self.phi_e);
                } else {
                    tally(4, prod == self.phi[kt]);
                }
            }
        }
        checks
    }

    /// Compares the model with the generator-based search for `End(S_n)`.
    pub fn cross_check(&self, cfg: &RunConfig) -> Result<(CrossCheck, FinSemigroup)> {
        let gens = self.generators();
        let end = enumerate_endomorphisms(&self.group, Some(&gens), cfg)?;
        let searched: BTreeSet<&Transf> = end.maps()?.iter().collect();
        let model = self.maps();
        let mine: BTreeSet<&Transf> = model.iter().collect();
        let check = CrossCheck {
            model: mine.len(),
            searched: searched.len(),
            missing: mine.difference(&searched).count(),
            extra: searched.difference(&mine).count(),
        };
        Ok((check, end))
    }

    /// `E ∪ K ∪ {φ_e}`: all non-automorphisms.
    pub fn non_aut(&self) -> Vec<Transf> {
        let mut v = self.phi.clone();
        v.sort();
        v
    }

    /// `K ∪ {φ_e}`: the ideal generated by the even involutions.
    pub fn even_generated(&self) -> Vec<Transf> {
        let mut v: Vec<Transf> = std::iter::once(&self.phi_e)
            .chain(self.even.iter().filter_map(|&p| self.phi_of(p)))
            .cloned()
            .collect();
        v.sort();
        v
    }

    /// `ef = e`, `Df ⊆ D`, and `f` either preserves both parity classes or
    /// maps everything to even permutations.
    pub fn in_idealiser_closed_form(&self, f: &[usize]) -> bool {
        if f[0] != 0 {
            return false;
        }
        if self.involutions.iter().any(|&d| self.involutions.binary_search(&f[d]).is_err()) {
            return false;
        }
        let p = &self.even_parity;
        let preserving = (0..f.len()).all(|x| p[f[x]] == p[x]);
        let into_even = f.iter().all(|&y| p[y]);
        preserving || into_even
    }

    /// Two smallest distinct even involutions of the same cycle type.
    pub fn unrealizable_pair(&self) -> Option<(usize, usize)> {
        let mut by_type: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for &p in &self.even {
            by_type.entry(cycle_type(&self.perms[p])).or_default().push(p);
        }
        by_type
            .values()
            .filter(|ps| ps.len() >= 2)
            .map(|ps| (ps[0], ps[1]))
            .min()
    }
}

/// Sizes read off the egg-box of `End(S_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SnEggBoxShape {
    pub unit_group: usize,
    /// Whether `E` is exactly one R-class.
    pub e_single_r_class: bool,
    pub e_size: usize,
    pub e_singleton_l_classes: bool,
    /// Sizes of the R-classes covering `K`.
    pub k_r_classes: Vec<usize>,
    /// Whether those R-classes are the conjugacy classes in `K`.
    pub k_by_conjugacy: bool,
    pub k_singleton_l_classes: bool,
    /// `{φ_e}` is an ideal and its own D-class.
    pub zero_minimal: bool,
}

impl SnEggBoxShape {
    /// Units form one H-class isomorphic to S_n, `E` is one R-class with
    /// singleton L-classes, `K` splits by conjugacy, `{φ_e}` is minimal.
    pub fn matches_classification(&self, n_fact: usize) -> bool {
        self.unit_group == n_fact
            && self.e_single_r_class
            && self.e_singleton_l_classes
            && self.k_by_conjugacy
            && self.k_singleton_l_classes
            && self.zero_minimal
    }
}

pub fn sn_eggbox_shape(model: &SnEndModel, end: &FinSemigroup) -> Result<(SnEggBoxShape, EggBox)> {
    let eb = EggBox::compute(end);
    let idx = |f: &Transf| {
        end.index_of(f)
            .ok_or_else(|| HullError::Precondition("model map missing from End(S_n)".into()))
    };
    let e_idx = model
        .odd
        .iter()
        .map(|&t| idx(model.phi_of(t).expect("involution")))
        .collect::<Result<Vec<_>>>()?;
    let k_idx = model
        .even
        .iter()
        .map(|&t| idx(model.phi_of(t).expect("involution")))
        .collect::<Result<Vec<_>>>()?;
    let zero = idx(&model.phi_e)?;
    let units = end.units();
    let r_class = |x: usize| -> BTreeSet<usize> { (0..end.order()).filter(|&y| eb.r.same(x, y)).collect() };
    let l_singleton = |xs: &[usize]| xs.iter().all(|&x| (0..end.order()).all(|y| y == x || !eb.l.same(x, y)));

    let e_set: BTreeSet<usize> = e_idx.iter().copied().collect();
    let e_single_r_class = !e_idx.is_empty() && r_class(e_idx[0]) == e_set;

    let mut k_classes: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut k_ok = true;
    for (pos, &x) in k_idx.iter().enumerate() {
        let rc = r_class(x);
        let ty = cycle_type(&model.perms[model.even[pos]]);
        let conj: BTreeSet<usize> = model
            .even
            .iter()
            .zip(&k_idx)
            .filter(|(&p, _)| cycle_type(&model.perms[p]) == ty)
            .map(|(_, &y)| y)
            .collect();
        k_ok &= rc == conj;
        k_classes.insert(rc.into_iter().collect());
    }
    let mut k_r_classes: Vec<usize> = k_classes.iter().map(Vec::len).collect();
    k_r_classes.sort_unstable();
    let zero_minimal = end.is_ideal(&[zero], Side::TwoSided) && (0..end.order()).all(|y| y == zero || !eb.d.same(zero, y));
    let unit_h = units.first().map_or(0, |&u| (0..end.order()).filter(|&y| eb.h.same(u, y)).count());
    Ok((
        SnEggBoxShape {
            unit_group: if unit_h == units.len() { units.len() } else { 0 },
            e_single_r_class,
            e_size: e_idx.len(),
            e_singleton_l_classes: l_singleton(&e_idx),
            k_r_classes,
            k_by_conjugacy: k_ok,
            k_singleton_l_classes: l_singleton(&k_idx),
            zero_minimal,
        },
        eb,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SnIdeal {
    Full,
    NonAut,
    EvenGenerated,
}

impl SnIdeal {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "full" => Some(SnIdeal::Full),
            "non_aut" | "non-aut" => Some(SnIdeal::NonAut),
            "even_generated" | "even-generated" => Some(SnIdeal::EvenGenerated),
            _ => None,
        }
    }
}

/// Comparison of the idealiser `T(S_n, I)` with its closed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealiserCheck {
    pub exhaustive: bool,
    pub maps_checked: usize,
    pub members: usize,
    pub mismatches: usize,
}

/// Checks on `Ω(I) = {(λ_f, ρ_f) : f ∈ T}` and `Ω(I) ≅ T/≡_im`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizationCheck {
    pub t_order: usize,
    pub omega: usize,
    pub realized: usize,
    pub omega_equals_realized: bool,
    pub im_classes: usize,
    pub quotient_isomorphic: bool,
    /// `f ≡_im g` exactly when `f` and `g` agree on `D`.
    pub im_is_agreement_on_d: bool,
}

/// The left translation of `K ∪ {φ_e}` swapping in a second involution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnrealizableLeft {
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub is_left_translation: bool,
    pub left_balanced: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SnIdealAnalysis {
    pub n: usize,
    pub which: SnIdeal,
    pub ideal_order: usize,
    pub is_ideal: bool,
    pub report: Option<HullReport>,
    pub idealiser: Option<IdealiserCheck>,
    pub realization: Option<RealizationCheck>,
    pub unrealizable_left: Option<UnrealizableLeft>,
}

fn random_spp(model: &SnEndModel, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let m = model.order();
    let evens: Vec<usize> = (0..m).filter(|&x| model.even_parity[x]).collect();
    let odds: Vec<usize> = (0..m).filter(|&x| !model.even_parity[x]).collect();
    let d_even: Vec<usize> = model.involutions.iter().copied().filter(|&t| model.even_parity[t]).collect();
    let into_even = rng.gen_bool(0.3);
    let pick = |xs: &[usize], rng: &mut ChaCha8Rng| xs[rng.gen_range(0..xs.len())];
    let mut f: Vec<usize> = (0..m)
        .map(|x| {
            if into_even || model.even_parity[x] {
                pick(&evens, rng)
            } else {
                pick(&odds, rng)
            }
        })
        .collect();
    if rng.gen_bool(0.7) {
        f[0] = 0;
        for &d in &model.involutions {
            f[d] = if into_even || model.even_parity[d] {
                pick(&d_even, rng)
            } else {
                pick(&model.odd, rng)
            };
        }
    }
    if rng.gen_bool(0.3) {
        let x = rng.gen_range(0..m);
        f[x] = rng.gen_range(0..m);
    }
    f
}

fn in_idealiser(i: &FinSemigroup, imaps: &[Transf], f: &Transf) -> bool {
    imaps
        .iter()
        .all(|a| i.index_of(&a.then(f)).is_some() && i.index_of(&f.then(a)).is_some())
}

fn check_idealiser(model: &SnEndModel, i: &FinSemigroup, cfg: &RunConfig) -> Result<IdealiserCheck> {
    let imaps = i.maps()?;
    let m = model.order();
    let mut check = IdealiserCheck {
        exhaustive: false,
        maps_checked: 0,
        members: 0,
        mismatches: 0,
    };
    let mut visit = |f: &[usize]| {
        let t = Transf::new(f.to_vec());
        let member = in_idealiser(i, imaps, &t);
        check.maps_checked += 1;
        check.members += usize::from(member);
        check.mismatches += usize::from(member != model.in_idealiser_closed_form(f));
    };
    if cfg.check_map_scan(m).is_ok() {
        check.exhaustive = true;
        for_each_map(m, m, &mut visit);
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for _ in 0..SPP_SAMPLES {
            let f: Vec<usize> = (0..m).map(|_| rng.gen_range(0..m)).collect();
            visit(&f);
            let g = random_spp(model, &mut rng);
            visit(&g);
        }
    }
    Ok(check)
}

fn check_realization(model: &SnEndModel, i: &FinSemigroup, cfg: &RunConfig) -> Result<RealizationCheck> {
    let tmaps = idealiser_in_maps(i, Side::TwoSided, cfg)?;
    let omega = enumerate_bitranslations(i, cfg)?;
    let mut realized: Vec<BiTranslation> = realized_bitranslations(i, &tmaps)?;
    realized.sort();
    realized.dedup();
    let t = FinSemigroup::from_maps(model.order(), tmaps.clone(), cfg.max_table_order)?;
    let eq = equiv_congruences(i, &t)?;
    let quotient = t.quotient(&eq.im)?;
    let hull = omega_semigroup(&omega, cfg)?;
    let tm = t.maps()?;
    let on_d = |k: usize| model.involutions.iter().map(|&d| tm[k][d]).collect::<Vec<_>>();
    let im_is_agreement_on_d =
        (0..t.order()).all(|a| (0..t.order()).all(|b| eq.im.same(a, b) == (on_d(a) == on_d(b))));
    Ok(RealizationCheck {
        t_order: t.order(),
        omega: omega.len(),
        realized: realized.len(),
        omega_equals_realized: omega == realized,
        im_classes: eq.im.class_count(),
        quotient_isomorphic: iso_check(&quotient, &hull)?.is_some(),
        im_is_agreement_on_d,
    })
}

fn unrealizable_left(model: &SnEndModel, i: &FinSemigroup) -> Result<Option<UnrealizableLeft>> {
    let Some((s, t)) = model.unrealizable_pair() else { return Ok(None) };
    let (Some(ps), Some(pt)) = (model.phi_of(s), model.phi_of(t)) else { return Ok(None) };
    let (si, ti) = (i.index_of(ps).expect("in ideal"), i.index_of(pt).expect("in ideal"));
    let mut lambda: Vec<usize> = (0..i.order()).collect();
    lambda[si] = ti;
    Ok(Some(UnrealizableLeft {
        s: model.perms[s].clone(),
        t: model.perms[t].clone(),
        is_left_translation: is_left_translation(i, &lambda)?,
        left_balanced: is_left_balanced(i, &lambda)?.is_some(),
    }))
}

/// Analyses one of the three kinds of ideal of `End(S_n)`. The hull report
/// and the realisation checks need the whole of `T_A`, so they run only when
/// the carrier is small enough; the idealiser is otherwise sampled.
pub fn sn_ideal_analysis(model: &SnEndModel, which: SnIdeal, cfg: &RunConfig) -> Result<SnIdealAnalysis> {
    let end = model.semigroup(cfg)?;
    let maps = match which {
        SnIdeal::Full => model.maps(),
        SnIdeal::NonAut => model.non_aut(),
        SnIdeal::EvenGenerated => model.even_generated(),
    };
    let members: Vec<usize> = maps.iter().map(|f| end.index_of(f).expect("model map")).collect();
    let is_ideal = end.is_ideal(&members, Side::TwoSided);
    let (i, _) = end.restrict(&members)?;
    let small = cfg.check_map_scan(model.order()).is_ok();
    let report = if small || which == SnIdeal::Full {
        Some(hull_report(&model.group, &i, Some(&end), cfg)?)
    } else {
        None
    };
    let (idealiser, realization) = match which {
        SnIdeal::NonAut => (
            Some(check_idealiser(model, &i, cfg)?),
            if small { Some(check_realization(model, &i, cfg)?) } else { None },
        ),
        _ => (None, None),
    };
    let unrealizable_left = match which {
        SnIdeal::EvenGenerated => unrealizable_left(model, &i)?,
        _ => None,
    };
    Ok(SnIdealAnalysis {
        n: model.n,
        which,
        ideal_order: i.order(),
        is_ideal,
        report,
        idealiser,
        realization,
        unrealizable_left,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refusals() {
        for n in [1, 2, 4, 6] {
            assert!(matches!(build_sn_model(n, false), Err(HullError::Precondition(_))));
        }
        assert!(build_sn_model(4, true).is_ok());
        assert!(matches!(build_sn_model(7, true), Err(HullError::Size { .. })));
    }

    #[test]
    fn s3_model() {
        let cfg = RunConfig::default();
        let m = build_sn_model(3, false).unwrap();
        assert_eq!((m.odd.len(), m.even.len()), (3, 0));
        assert!(m.verify_rules().iter().all(RuleCheck::holds));
        let (cc, _) = m.cross_check(&cfg).unwrap();
        assert!(cc.equal());
        assert_eq!(cc.model, 10);
        assert_eq!(m.unrealizable_pair(), None);
    }

    #[test]
    fn s4_model_is_strictly_smaller() {
        let cfg = RunConfig::default();
        let m = build_sn_model(4, true).unwrap();
        assert!(m.verify_rules().iter().all(RuleCheck::holds));
        let (cc, _) = m.cross_check(&cfg).unwrap();
        assert!(cc.strictly_contained());
        assert_eq!((cc.model, cc.searched), (34, 58));
    }

    #[test]
    fn s3_non_aut_realization() {
        let cfg = RunConfig::default();
        let m = build_sn_model(3, false).unwrap();
        let a = sn_ideal_analysis(&m, SnIdeal::NonAut, &cfg).unwrap();
        assert!(a.is_ideal);
        let id = a.idealiser.unwrap();
        assert!(id.exhaustive);
        assert_eq!((id.maps_checked, id.mismatches), (46656, 0));
        let r = a.realization.unwrap();
        assert!(r.omega_equals_realized && r.quotient_isomorphic && r.im_is_agreement_on_d);
        assert_eq!(r.omega, 28);
        assert_eq!(r.im_classes, 28);
        assert_eq!(r.t_order, id.members);
    }

    #[test]
    fn s5_structure() {
        let cfg = RunConfig::default();
        let m = build_sn_model(5, false).unwrap();
        assert_eq!((m.odd.len(), m.even.len()), (10, 15));
        assert!(m.verify_rules().iter().all(RuleCheck::holds));
        let (cc, end) = m.cross_check(&cfg).unwrap();
        assert!(cc.equal());
        assert_eq!(cc.searched, 146);
        let (shape, _) = sn_eggbox_shape(&m, &end).unwrap();
        assert!(shape.matches_classification(120));
        assert_eq!((shape.e_size, shape.k_r_classes.clone()), (10, vec![15]));

        let a = sn_ideal_analysis(&m, SnIdeal::EvenGenerated, &cfg).unwrap();
        assert_eq!(a.ideal_order, 16);
        let u = a.unrealizable_left.unwrap();
        assert!(u.is_left_translation && !u.left_balanced);
        let b = sn_ideal_analysis(&m, SnIdeal::NonAut, &cfg).unwrap();
        let id = b.idealiser.unwrap();
        assert!(!id.exhaustive && id.mismatches == 0);
        assert!(id.members > 0 && id.members < id.maps_checked);
    }
}
