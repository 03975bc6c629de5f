//! Checks the structure theorems relating `Ω(I)` to maps, endomorphisms and
//! the separable quotient over a list of instances. Every check is counted;
//! steps refused by a size bound are counted as skipped, never as passes.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::algebra::{for_each_map, Partition, Transf};
use crate::conditions::{
    build_pipeline, f_rho, f_star, image_of, is_representable, is_right_ta_reductive, is_separable,
    is_separable_on, is_weakly_separable, kernel_of, lift_count, lifts, reductivity, sigma, sigma_matches_map, QuotientPipeline,
    TA_REDUCTIVE_LIMIT,
};
use crate::config::RunConfig;
use crate::corpus::Instance;
use crate::error::{HullError, Result};
use crate::hull::{
    enumerate_bitranslations, enumerate_left_translations, enumerate_right_translations, equiv_congruences,
    idealiser_in_maps, induced_translation, is_left_balanced, is_left_translation, is_right_balanced,
    is_right_translation, is_strongly_left_balanced, is_strongly_right_balanced, lambda_tilde, natural_chi_maps,
    realized_bitranslations, rho_tilde, BiTranslation, TransSide,
};
use crate::semigroup::{enumerate_endomorphisms, FinSemigroup, Side};

/// Lifts examined per quotient map when testing where `f ⋆ α` lands.
const LIFT_SCAN_LIMIT: usize = 4096;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    /// Instances where the hypotheses held and the conclusion was tested.
    pub checked: usize,
    /// Instances where the hypotheses failed.
    pub vacuous: usize,
    /// Instances where a size bound refused a step.
    pub skipped: usize,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub instances: Vec<String>,
    pub tallies: BTreeMap<String, Tally>,
}

impl AuditReport {
    pub fn violation_count(&self) -> usize {
        self.tallies.values().map(|t| t.violations.len()).sum()
    }

    pub fn checked(&self) -> usize {
        self.tallies.values().map(|t| t.checked).sum()
    }

    pub fn skipped(&self) -> usize {
        self.tallies.values().map(|t| t.skipped).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("audit serialises")
    }
}

struct Rec<'a> {
    inst: &'a str,
    tallies: &'a mut BTreeMap<String, Tally>,
}

impl Rec<'_> {
    /// `Some(true)`: held; `Some(false)`: violated; `None`: hypotheses not met.
    fn record(&mut self, name: &str, r: Result<Option<bool>>) {
        let inst = self.inst.to_string();
        let t = self.tallies.entry(name.to_string()).or_default();
        match r {
            Ok(Some(true)) => t.checked += 1,
            Ok(Some(false)) => {
                t.checked += 1;
                t.violations.push(format!("{inst}: conclusion fails"));
            }
            Ok(None) => t.vacuous += 1,
            Err(HullError::Size { .. }) => t.skipped += 1,
            Err(e) => {
                t.checked += 1;
                t.violations.push(format!("{inst}: {e}"));
            }
        }
    }

    fn holds(&mut self, name: &str, r: Result<bool>) {
        self.record(name, r.map(Some));
    }

    fn implies(&mut self, name: &str, hyp: bool, concl: impl FnOnce() -> Result<bool>) {
        let r = if hyp { concl().map(Some) } else { Ok(None) };
        self.record(name, r);
    }
}

fn need<T>(r: &Result<T>) -> Result<&T> {
    r.as_ref().map_err(Clone::clone)
}

/// Everything computed once per instance.
struct Ctx<'a> {
    inst: &'a Instance,
    cfg: &'a RunConfig,
    n: usize,
    imaps: &'a [Transf],
    image: Vec<usize>,
    closure: Vec<usize>,
    ker: Partition,
    rep: bool,
    sep: bool,
    ideal: bool,
    right_ideal: bool,
    left_ideal: bool,
    idempotent: bool,
    omega: Result<Vec<BiTranslation>>,
    rights: Result<Vec<Vec<usize>>>,
    lefts: Result<Vec<Vec<usize>>>,
    /// Every map on the carrier with flags `(If ⊆ I, fI ⊆ I)`.
    all_maps: Result<Vec<(Transf, bool, bool)>>,
    /// `End(A) ∩` two-sided idealiser.
    s: Vec<Transf>,
    /// Endomorphisms with `fI ⊆ I`.
    s_left: Vec<Transf>,
}

impl Ctx<'_> {
    fn t_side(&self, right: bool, left: bool) -> Result<Vec<Transf>> {
        Ok(need(&self.all_maps)?
            .iter()
            .filter(|(_, r, l)| (!right || *r) && (!left || *l))
            .map(|(f, _, _)| f.clone())
            .collect())
    }

    fn t(&self) -> Result<Vec<Transf>> {
        self.t_side(true, true)
    }

    fn rho_of(&self, f: &Transf) -> Option<Vec<usize>> {
        self.imaps.iter().map(|a| self.inst.ideal.index_of(&a.then(f))).collect()
    }

    fn lambda_of(&self, f: &Transf) -> Option<Vec<usize>> {
        self.imaps.iter().map(|a| self.inst.ideal.index_of(&f.then(a))).collect()
    }

    fn im_key(&self, f: &Transf) -> Vec<usize> {
        self.image.iter().map(|&x| f[x]).collect()
    }

    fn ker_key(&self, f: &Transf) -> Vec<usize> {
        f.values().iter().map(|&y| self.ker.rep(y)).collect()
    }
}

fn partition_of<K: std::hash::Hash + Eq>(items: &[Transf], key: impl Fn(&Transf) -> K) -> Partition {
    Partition::from_key(items.len(), |k| key(&items[k]))
}

fn build_ctx<'a>(inst: &'a Instance, cfg: &'a RunConfig) -> Result<Ctx<'a>> {
    let i = &inst.ideal;
    let alg = &inst.alg;
    let n = alg.size();
    let imaps = i.maps()?;
    let image = image_of(i)?;
    let closure = alg.closure(&image)?.members().to_vec();
    let all: Vec<usize> = (0..i.order()).collect();
    let omega = enumerate_bitranslations(i, cfg);
    let rights = enumerate_right_translations(i, cfg).map(|v| v.into_iter().map(|t| t.table).collect());
    let lefts = enumerate_left_translations(i, cfg).map(|v| v.into_iter().map(|t| t.table).collect());
    let all_maps = cfg.check_map_scan(n).map(|_| {
        let mut out = Vec::new();
        for_each_map(n, n, |v| {
            let f = Transf::new(v.to_vec());
            let r = imaps.iter().all(|a| i.index_of(&a.then(&f)).is_some());
            let l = imaps.iter().all(|a| i.index_of(&f.then(a)).is_some());
            out.push((f, r, l));
        });
        out
    });
    let emaps = inst.end.maps()?;
    let s_left: Vec<Transf> = emaps
        .iter()
        .filter(|f| imaps.iter().all(|a| i.index_of(&f.then(a)).is_some()))
        .cloned()
        .collect();
    let s = s_left
        .iter()
        .filter(|f| imaps.iter().all(|a| i.index_of(&a.then(f)).is_some()))
        .cloned()
        .collect();
    Ok(Ctx {
        inst,
        cfg,
        n,
        imaps,
        image,
        closure,
        ker: kernel_of(i)?,
        rep: is_representable(alg, i)?,
        sep: is_separable(alg, i)?,
        ideal: inst.is_ideal(Side::TwoSided),
        right_ideal: inst.is_ideal(Side::Right),
        left_ideal: inst.is_ideal(Side::Left),
        idempotent: i.set_product(&all, &all) == all,
        omega,
        rights,
        lefts,
        all_maps,
        s,
        s_left,
    })
}

/// Runs every check on every instance.
pub fn audit(instances: &[Instance], cfg: &RunConfig) -> Result<AuditReport> {
    let mut report = AuditReport::default();
    for inst in instances {
        report.instances.push(inst.name.clone());
        let ctx = build_ctx(inst, cfg)?;
        let mut rec = Rec {
            inst: &inst.name,
            tallies: &mut report.tallies,
        };
        induced_translations(&ctx, &mut rec);
        agreement_congruences(&ctx, &mut rec);
        reductivity_checks(&ctx, &mut rec);
        balance_checks(&ctx, &mut rec);
        morphism_checks(&ctx, &mut rec);
        quotient_checks(&ctx, &mut rec);
    }
    Ok(report)
}

fn induced_translations(c: &Ctx, rec: &mut Rec) {
    let i = &c.inst.ideal;
    let alg = &c.inst.alg;
    rec.holds(
        "induced-translations-are-translations",
        (|| {
            for f in c.t_side(true, false)? {
                if !is_right_translation(i, &induced_translation(i, &f, TransSide::Right)?.table)? {
                    return Ok(false);
                }
            }
            for f in c.t_side(false, true)? {
                if !is_left_translation(i, &induced_translation(i, &f, TransSide::Left)?.table)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })(),
    );
    // ρ_f = ρ_g iff f and g agree on im I; λ_f = λ_g iff f(a), g(a) share a kernel class
    rec.holds(
        "rho-equal-iff-agree-on-image",
        (|| {
            let tr = c.t_side(true, false)?;
            Ok(partition_of(&tr, |f| c.rho_of(f)) == partition_of(&tr, |f| c.im_key(f)))
        })(),
    );
    rec.holds(
        "lambda-equal-iff-kernel-agreement",
        (|| {
            let tl = c.t_side(false, true)?;
            Ok(partition_of(&tl, |f| c.lambda_of(f)) == partition_of(&tl, |f| c.ker_key(f)))
        })(),
    );
    rec.holds(
        "right-composite-endo-iff-restriction-morphic",
        (|| {
            for (f, r, _) in need(&c.all_maps)? {
                if !*r && c.n > 4 {
                    continue;
                }
                for a in c.imaps {
                    if alg.is_endomorphism(&a.then(f))? != alg.preserves_on(f.values(), &a.image()) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        })(),
    );
    rec.holds(
        "left-composite-endo-iff-kernel-term-condition",
        (|| {
            for (f, _, l) in need(&c.all_maps)? {
                if !*l && c.n > 4 {
                    continue;
                }
                for a in c.imaps {
                    let mut cond = true;
                    for (oi, o) in alg.ops().iter().enumerate() {
                        crate::algebra::for_each_tuple(c.n, o.arity, |t| {
                            let fa: Vec<usize> = t.iter().map(|&x| f[x]).collect();
                            cond &= a[f[alg.eval(oi, t)]] == a[alg.eval(oi, &fa)];
                        });
                    }
                    if alg.is_endomorphism(&f.then(a))? != cond {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        })(),
    );
    rec.implies(
        "right-idealiser-iff-restrictions-morphic",
        c.right_ideal && c.idempotent,
        || {
            Ok(need(&c.all_maps)?
                .iter()
                .all(|(f, r, _)| *r == c.imaps.iter().all(|a| alg.preserves_on(f.values(), &a.image()))))
        },
    );
    rec.implies("left-idealiser-iff-composites-endo", c.left_ideal && c.idempotent, || {
        for (f, _, l) in need(&c.all_maps)? {
            let composites = c
                .imaps
                .iter()
                .map(|a| alg.is_endomorphism(&f.then(a)))
                .collect::<Result<Vec<_>>>()?;
            if *l != composites.iter().all(|&b| b) {
                return Ok(false);
            }
        }
        Ok(true)
    });
}

fn agreement_congruences(c: &Ctx, rec: &mut Rec) {
    let i = &c.inst.ideal;
    let sets: [(&str, Result<Vec<Transf>>); 2] = [("T", c.t()), ("S", Ok(c.s.clone()))];
    for (label, maps) in sets {
        rec.holds(
            &format!("agreement-relations-are-congruences-on-{label}"),
            (|| {
                let v = FinSemigroup::from_maps(c.n, maps?, c.cfg.max_table_order)?;
                equiv_congruences(i, &v).map(|_| true)
            })(),
        );
    }
    // χ identifies exactly the pairs agreeing on im I and modulo ker I
    for (label, maps) in [("T", c.t()), ("S", Ok(c.s.clone()))] {
        rec.holds(
            &format!("chi-kernel-is-agreement-on-{label}"),
            (|| {
                let maps = maps?;
                let by_pair = partition_of(&maps, |f| (c.lambda_of(f), c.rho_of(f)));
                let by_agreement = partition_of(&maps, |f| (c.im_key(f), c.ker_key(f)));
                if maps.is_empty() {
                    return Ok(true);
                }
                let realized = realized_bitranslations(i, &maps)?;
                let morphism = natural_chi_maps(i, &maps, None, c.cfg)?.morphism;
                Ok(by_pair == by_agreement && realized.len() == by_agreement.class_count() && morphism)
            })(),
        );
    }
}

fn reductivity_checks(c: &Ctx, rec: &mut Rec) {
    let i = &c.inst.ideal;
    let own: Vec<usize> = (0..i.order()).collect();
    let red = match reductivity(i, &own) {
        Ok(r) => r,
        Err(e) => {
            rec.holds("reductivity", Err(e));
            return;
        }
    };
    let refines = |maps: &[Transf], fine: &dyn Fn(&Transf) -> Vec<usize>, coarse: &dyn Fn(&Transf) -> Vec<usize>| {
        partition_of(maps, fine).refines(&partition_of(maps, coarse))
    };
    let im = |f: &Transf| c.im_key(f);
    let ker = |f: &Transf| c.ker_key(f);
    rec.implies("left-reductive-rho-determines-pair", red.left, || {
        let omega = need(&c.omega)?;
        Ok(rho_tilde(omega).len() == omega.len() && refines(&c.t()?, &im, &ker) && refines(&c.s, &im, &ker))
    });
    rec.implies("right-reductive-lambda-determines-pair", red.right, || {
        let omega = need(&c.omega)?;
        Ok(lambda_tilde(omega).len() == omega.len() && refines(&c.t()?, &ker, &im) && refines(&c.s, &ker, &im))
    });
    // ≡_im trivial on U iff I is left U-reductive; ≡_ker trivial iff right U-reductive
    rec.holds(
        "image-agreement-trivial-iff-left-reductive",
        (|| {
            for maps in [c.t()?, c.s.clone()] {
                let left_red = partition_of(&maps, |f| c.imaps.iter().map(|g| g.then(f)).collect::<Vec<_>>());
                if left_red.is_equality() != partition_of(&maps, im).is_equality() {
                    return Ok(false);
                }
            }
            Ok(true)
        })(),
    );
    rec.holds(
        "kernel-agreement-trivial-iff-right-reductive",
        (|| {
            for maps in [c.t()?, c.s.clone()] {
                let right_red = partition_of(&maps, |f| c.imaps.iter().map(|g| f.then(g)).collect::<Vec<_>>());
                if right_red.is_equality() != partition_of(&maps, ker).is_equality() {
                    return Ok(false);
                }
            }
            Ok(true)
        })(),
    );
    if c.ideal {
        rec.holds(
            "end-reductivity-matches-agreement",
            (|| {
                let r = reductivity(&c.inst.end, &c.inst.members)?;
                Ok(r.left == partition_of(&c.s, im).is_equality()
                    && r.right == partition_of(&c.s, ker).is_equality())
            })(),
        );
    }
    if c.ideal {
        let weak = is_weakly_separable(&c.inst.alg, &c.inst.ideal, &c.inst.end);
        match weak {
            Ok(w) => rec.implies("weakly-separable-implies-right-end-reductive", w, || {
                Ok(reductivity(&c.inst.end, &c.inst.members)?.right)
            }),
            Err(e) => rec.record("weakly-separable-implies-right-end-reductive", Err(e)),
        }
    }
    rec.implies("representable-implies-left-end-reductive", c.rep, || {
        let r = reductivity(&c.inst.end, &c.inst.members)?;
        Ok(r.left && refines(&c.t()?, &im, &ker) && partition_of(&c.s, im).is_equality())
    });
    rec.holds(
        "separable-iff-right-ta-reductive",
        (|| {
            if c.n > TA_REDUCTIVE_LIMIT {
                return Err(HullError::Size {
                    what: "carrier for a T_A reductivity scan".into(),
                    actual: c.n,
                    limit: TA_REDUCTIVE_LIMIT,
                });
            }
            Ok(is_right_ta_reductive(i, c.cfg)? == c.sep)
        })(),
    );
    rec.implies("separable-implies-chi-injective", c.sep, || {
        Ok(partition_of(&c.t()?, ker).is_equality() && partition_of(&c.s, ker).is_equality())
    });
}

fn balance_checks(c: &Ctx, rec: &mut Rec) {
    let i = &c.inst.ideal;
    let all_rb = |rhos: &[Vec<usize>]| -> Result<bool> {
        for r in rhos {
            if !is_right_balanced(i, r)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let all_lb = |lams: &[Vec<usize>]| -> Result<bool> {
        for l in lams {
            if is_left_balanced(i, l)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    rec.holds(
        "hull-realized-by-maps-iff-balanced",
        (|| {
            let omega = need(&c.omega)?;
            let realized = realized_bitranslations(i, &c.t()?)?;
            Ok((realized == *omega) == (all_lb(&lambda_tilde(omega))? && all_rb(&rho_tilde(omega))?))
        })(),
    );
    rec.holds(
        "right-translation-realized-by-map-iff-balanced",
        (|| {
            let by_maps: BTreeSet<Vec<usize>> =
                c.t_side(true, false)?.iter().filter_map(|f| c.rho_of(f)).collect();
            let mut balanced = BTreeSet::new();
            for r in need(&c.rights)? {
                if is_right_balanced(i, r)? {
                    balanced.insert(r.clone());
                }
            }
            Ok(by_maps == balanced)
        })(),
    );
    rec.holds(
        "left-translation-realized-by-map-iff-balanced",
        (|| {
            let by_maps: BTreeSet<Vec<usize>> =
                c.t_side(false, true)?.iter().filter_map(|f| c.lambda_of(f)).collect();
            let mut balanced = BTreeSet::new();
            for l in need(&c.lefts)? {
                if is_left_balanced(i, l)?.is_some() {
                    balanced.insert(l.clone());
                }
            }
            Ok(by_maps == balanced)
        })(),
    );
    rec.implies("representable-linked-lambda-left-balanced", c.rep, || {
        all_lb(&lambda_tilde(need(&c.omega)?))
    });
    rec.implies("separable-linked-rho-right-balanced", c.sep, || all_rb(&rho_tilde(need(&c.omega)?)));
    rec.implies("rep-sep-hull-realized-by-maps", c.rep && c.sep, || {
        let t = c.t()?;
        let chi = natural_chi_maps(i, &t, Some(need(&c.omega)?), c.cfg)?;
        Ok(chi.surjective == Some(true) && chi.injective && chi.morphism)
    });
    let hyp = c.idempotent && constant_witnesses(c);
    rec.implies("constant-witnesses-give-right-balance", hyp, || {
        if !all_rb(need(&c.rights)?)? {
            return Ok(false);
        }
        if !c.rep {
            return Ok(true);
        }
        let t = c.t()?;
        let omega = need(&c.omega)?;
        Ok(realized_bitranslations(i, &t)? == *omega && partition_of(&t, |f| c.im_key(f)).class_count() == omega.len())
    });
}

/// Some generating set `X` admits, for each `c ∈ im I`, an element of `I`
/// sending all of `X` to `c`.
fn constant_witnesses(c: &Ctx) -> bool {
    let n = c.n;
    let alg = &c.inst.alg;
    (0u64..1 << n).any(|mask| {
        let xs: Vec<usize> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
        alg.generates(&xs).unwrap_or(false)
            && c
                .image
                .iter()
                .all(|&p| c.imaps.iter().any(|g| xs.iter().all(|&x| g[x] == p)))
    })
}

fn morphism_checks(c: &Ctx, rec: &mut Rec) {
    let i = &c.inst.ideal;
    let alg = &c.inst.alg;
    rec.holds(
        "right-translation-realized-by-morphism-iff-strongly-balanced",
        (|| {
            // every morphism ⟨im I⟩ -> A, by brute force
            let cl = &c.closure;
            let total = crate::config::checked_pow(c.n, cl.len()).unwrap_or(usize::MAX);
            if total > c.cfg.max_map_scan {
                return Err(HullError::Size {
                    what: "maps from the image closure".into(),
                    actual: total,
                    limit: c.cfg.max_map_scan,
                });
            }
            let mut by_morphisms = BTreeSet::new();
            let mut full = vec![0usize; c.n];
            for_each_map(cl.len(), c.n, |v| {
                for (k, &x) in cl.iter().enumerate() {
                    full[x] = v[k];
                }
                if alg.preserves_on(&full, cl) {
                    if let Some(r) = c.rho_of(&Transf::new(full.clone())) {
                        by_morphisms.insert(r);
                    }
                }
            });
            let mut strong = BTreeSet::new();
            for r in need(&c.rights)? {
                if is_strongly_right_balanced(alg, i, r)?.is_some() {
                    strong.insert(r.clone());
                }
            }
            Ok(by_morphisms == strong)
        })(),
    );
    rec.holds(
        "left-translation-realized-by-endomorphism-iff-strongly-balanced",
        (|| {
            let by_endos: BTreeSet<Vec<usize>> = c.s_left.iter().filter_map(|f| c.lambda_of(f)).collect();
            let mut strong = BTreeSet::new();
            for l in need(&c.lefts)? {
                if is_strongly_left_balanced(alg, i, l, None)?.is_some() {
                    strong.insert(l.clone());
                }
            }
            Ok(by_endos == strong)
        })(),
    );
    rec.implies("separable-linked-lambda-strong-iff-balanced", c.sep, || {
        for l in lambda_tilde(need(&c.omega)?) {
            if is_strongly_left_balanced(alg, i, &l, None)?.is_some() != is_left_balanced(i, &l)?.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    });
    rec.holds(
        "hull-realized-by-endomorphisms-iff-strongly-balanced",
        (|| {
            let omega = need(&c.omega)?;
            let mut strong = true;
            for bt in omega {
                let Some(sr) = is_strongly_right_balanced(alg, i, bt.rho())? else {
                    strong = false;
                    break;
                };
                if is_strongly_left_balanced(alg, i, bt.lambda(), Some(&sr.map))?.is_none() {
                    strong = false;
                    break;
                }
            }
            let realized = if c.s.is_empty() { Vec::new() } else { realized_bitranslations(i, &c.s)? };
            Ok((realized == *omega) == strong)
        })(),
    );
    let closure_separated = is_separable_on(i, &c.closure).unwrap_or(false);
    rec.implies("separable-closure-gives-strong-right-balance", closure_separated, || {
        let omega = need(&c.omega)?;
        let lefts = need(&c.lefts)?;
        let mut linked: HashMap<&[usize], BTreeSet<&[usize]>> = HashMap::new();
        for bt in omega {
            linked.entry(bt.rho()).or_default().insert(bt.lambda());
        }
        for (rho, lams) in &linked {
            let Some(sr) = is_strongly_right_balanced(alg, i, rho)? else { return Ok(false) };
            let predicted: BTreeSet<&[usize]> = lefts
                .iter()
                .filter(|l| {
                    c.imaps.iter().zip(l.iter()).all(|(a, &la)| {
                        let target = &c.imaps[la];
                        c.closure.iter().all(|&x| target[x] == a[sr.map[x].expect("closure value")])
                    })
                })
                .map(|l| l.as_slice())
                .collect();
            if predicted != *lams {
                return Ok(false);
            }
        }
        Ok(true)
    });
    rec.implies("rep-sep-hull-is-endomorphism-idealiser", c.rep && c.sep, || {
        let omega = need(&c.omega)?;
        let chi = natural_chi_maps(i, &c.s, Some(omega), c.cfg)?;
        Ok(chi.surjective == Some(true)
            && chi.injective
            && chi.morphism
            && rho_tilde(omega).len() == omega.len()
            && lambda_tilde(omega).len() == omega.len())
    });
}

fn respects(p: &Partition, f: &Transf) -> bool {
    let n = p.carrier_size();
    (0..n).all(|a| p.same(f[a], f[p.rep(a)]))
}

fn quotient_checks(c: &Ctx, rec: &mut Rec) {
    let i = &c.inst.ideal;
    let alg = &c.inst.alg;
    let p = match build_pipeline(alg, i, c.cfg) {
        Ok(p) => p,
        Err(e) => {
            rec.holds("quotient-pipeline", Err(e));
            return;
        }
    };
    rec.holds("quotient-pipeline", Ok(true));
    rec.holds("sim-chain-congruences-and-action", sim_checks(c, &p));
    rec.holds(
        "approx-via-powers",
        {
            let powers = &p.chain.powers[p.k() - 1];
            let imaps = c.imaps;
            let by_powers = Partition::from_key(i.order(), |a| {
                powers.iter().map(|&g| imaps[a].then(&imaps[g])).collect::<Vec<_>>()
            });
            let idx = p.sim().class_index();
            let by_def = Partition::from_key(i.order(), |a| imaps[a].values().iter().map(|&y| idx[y]).collect::<Vec<_>>());
            Ok(by_powers == p.approx && by_def == p.approx)
        },
    );
    rec.holds(
        "quotient-separable-and-representable",
        (|| Ok(is_separable(&p.quotient, &p.i_mod)? && (!c.rep || is_representable(&p.quotient, &p.i_mod)?)))(),
    );
    rec.implies("quotient-hull-is-endomorphism-idealiser", c.rep, || {
        let qend = enumerate_endomorphisms(&p.quotient, None, c.cfg)?;
        let qmaps = p.i_mod.maps()?;
        let sq: Vec<Transf> = qend
            .maps()?
            .iter()
            .filter(|f| {
                qmaps
                    .iter()
                    .all(|a| p.i_mod.index_of(&a.then(f)).is_some() && p.i_mod.index_of(&f.then(a)).is_some())
            })
            .cloned()
            .collect();
        let omega_q = enumerate_bitranslations(&p.i_mod, c.cfg)?;
        let chi = natural_chi_maps(&p.i_mod, &sq, Some(&omega_q), c.cfg)?;
        Ok(chi.surjective == Some(true) && chi.injective)
    });
    rec.holds(
        "sigma-is-morphism-and-matches-maps",
        (|| {
            sigma(&p, need(&c.omega)?, c.cfg)?;
            for f in c.t()? {
                if !sigma_matches_map(&p, i, &f)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })(),
    );
    rec.holds(
        "induced-quotient-maps-idealise",
        (|| {
            let reps = p.sim().representatives();
            let qmaps = p.i_mod.maps()?;
            let bar = |f: &Transf| Transf::new(reps.iter().map(|&r| p.projection[f[r]]).collect());
            let idealises = |g: &Transf| {
                qmaps
                    .iter()
                    .all(|a| p.i_mod.index_of(&a.then(g)).is_some() && p.i_mod.index_of(&g.then(a)).is_some())
            };
            for f in c.t()? {
                if !respects(p.sim(), &f) || !idealises(&bar(&f)) {
                    return Ok(false);
                }
            }
            for f in &c.s {
                if !p.quotient.is_endomorphism(&bar(f))? {
                    return Ok(false);
                }
            }
            Ok(true)
        })(),
    );
    rec.holds("star-independent-of-lift", star_checks(c, &p));
    rec.implies("endomorphic-composites-respect-sim", c.rep, || {
        for f in c.t()? {
            let composites = c
                .imaps
                .iter()
                .map(|a| alg.is_endomorphism(&f.then(a)))
                .collect::<Result<Vec<_>>>()?;
            if composites.iter().all(|&b| b) && !respects(p.sim(), &f) {
                return Ok(false);
            }
        }
        Ok(true)
    });
    rec.implies("quotient-morphism-from-rho", c.rep && c.ideal, || rho_quotient_checks(c, &p));
}

fn sim_checks(c: &Ctx, p: &QuotientPipeline) -> Result<bool> {
    let alg = &c.inst.alg;
    let levels = &p.chain.levels;
    for (j, lvl) in levels.iter().enumerate() {
        if !alg.is_congruence(lvl)? {
            return Ok(false);
        }
        if j + 1 < levels.len() && !lvl.refines(&levels[j + 1]) {
            return Ok(false);
        }
        // I acts on A/∼_j
        for (a, b) in lvl.nontrivial_pairs() {
            if c.imaps.iter().any(|g| !lvl.same(g[a], g[b])) {
                return Ok(false);
            }
        }
    }
    Ok(p.sim().is_equality() == c.sep && levels[p.k() - 1] == *levels.last().expect("non-empty"))
}

fn star_checks(c: &Ctx, p: &QuotientPipeline) -> Result<bool> {
    let i = &c.inst.ideal;
    let alg = &c.inst.alg;
    let tq = idealiser_in_maps(&p.i_mod, Side::TwoSided, c.cfg)?;
    let t: HashSet<Transf> = c.t()?.into_iter().collect();
    let power: &[usize] = &p.chain.powers[p.k() - 1];
    for f in &tq {
        let lifted_in_t = if lift_count(p, f)? <= LIFT_SCAN_LIMIT {
            Some(lifts(p, f)?.iter().any(|l| t.contains(l)))
        } else {
            None
        };
        for &a in power {
            let s = f_star(alg, p, i, f, a, c.cfg)?;
            if lifted_in_t == Some(true) && !i.index_of(&s).is_some_and(|k| power.contains(&k)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn rho_quotient_checks(c: &Ctx, p: &QuotientPipeline) -> Result<bool> {
    let i = &c.inst.ideal;
    let alg = &c.inst.alg;
    let omega = need(&c.omega)?;
    let mut linked: BTreeMap<&[usize], Vec<&[usize]>> = BTreeMap::new();
    for bt in omega {
        linked.entry(bt.rho()).or_default().push(bt.lambda());
    }
    let mut f_of: Vec<(&[usize], Transf, &[usize])> = Vec::new();
    for (rho, lams) in &linked {
        // representable: at most one linked left translation
        if lams.len() != 1 {
            return Ok(false);
        }
        let (fr, lam) = f_rho(alg, p, i, rho, c.cfg)?;
        if let Some(lam) = lam {
            if lam.as_slice() != lams[0] {
                return Ok(false);
            }
        }
        f_of.push((rho, fr, lams[0]));
    }
    if p.k() == 1 {
        for (_, f1, l1) in &f_of {
            for (_, f2, l2) in &f_of {
                if (f1 == f2) != (l1 == l2) {
                    return Ok(false);
                }
            }
        }
    }
    let reps = p.sim().representatives();
    for g in &c.s {
        let Some(rho) = c.rho_of(g) else { continue };
        let bar = Transf::new(reps.iter().map(|&r| p.projection[g[r]]).collect());
        if f_rho(alg, p, i, &rho, c.cfg)?.0 != bar {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::corpus;

    #[test]
    fn corpus_sweep_is_clean() {
        let cfg = RunConfig::default();
        let report = audit(&corpus(&cfg).unwrap(), &cfg).unwrap();
        let bad: Vec<_> = report
            .tallies
            .iter()
            .filter(|(_, t)| !t.violations.is_empty())
            .collect();
        assert!(bad.is_empty(), "{bad:#?}");
        for (name, t) in &report.tallies {
            assert!(t.checked > 0, "{name} never ran");
        }
    }
}
