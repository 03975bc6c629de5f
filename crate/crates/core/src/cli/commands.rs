use serde::Serialize;
use serde_json::{json, Value};

use hullkit::algebra::{algebra_to_json, AlgebraFile, FiniteAlgebra};
use hullkit::audit::audit;
use hullkit::cases::{
    build_matrix_semiring, build_sn_model, check_prop_semiring, check_prop_semiring_plus, matrix_unit,
    sn_eggbox_shape, sn_ideal_analysis, FiniteSemiring, PropStatus, SnIdeal,
};
use hullkit::conditions::{build_pipeline, is_representable, is_separable, reductivity, sigma};
use hullkit::config::RunConfig;
use hullkit::corpus::corpus;
use hullkit::hull::{
    enumerate_bitranslations, hull_report, idealiser_in_maps, is_left_balanced, is_right_balanced, lambda_tilde,
    omega_semigroup, rho_tilde,
};
use hullkit::select::{builtin_algebra, load_algebra, IdealSpec};
use hullkit::semigroup::{enumerate_endomorphisms, iso_check, EggBox, FinSemigroup, Side};
use hullkit::{HullError, Result};

use super::{Command, Outcome, Property, SnIdealArg};

/// Elements are listed in full only up to this order.
const LIST_LIMIT: usize = 64;

fn value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("output serialises")
}

/// `Ok(None)` for a size refusal, so that partial results still print.
fn soft<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(HullError::Size { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn write_file(path: &std::path::Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| HullError::Io(format!("{}: {e}", path.display())))
}

pub fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<Outcome> {
    match cmd {
        Command::Make { name } => make(name),
        Command::End { algebra, gens, dot } => end(algebra, gens.as_deref(), dot.as_deref(), cfg),
        Command::Hull { algebra, ideal } => hull(algebra, ideal, cfg),
        Command::Quotient { algebra, ideal } => quotient(algebra, ideal, cfg),
        Command::Check {
            algebra,
            ideal,
            properties,
        } => check(algebra, ideal, properties, cfg),
        Command::Sn {
            n,
            allow_n4,
            ideal,
            dot,
        } => sn(*n, *allow_n4, *ideal, dot.as_deref(), cfg),
        Command::Semiring {
            file,
            matrix,
            ideal,
            idempotents,
        } => semiring(file, *matrix, ideal, idempotents.as_deref(), cfg),
        Command::Audit => run_audit(cfg),
    }
}

fn make(name: &str) -> Result<Outcome> {
    let alg = builtin_algebra(name)?;
    Ok(Outcome::ok(value(&AlgebraFile::from_algebra(&alg))))
}

struct Loaded {
    alg: FiniteAlgebra,
    end: FinSemigroup,
    members: Vec<usize>,
    ideal: FinSemigroup,
    spec: IdealSpec,
}

fn load(algebra: &str, ideal: &str, cfg: &RunConfig) -> Result<Loaded> {
    let spec = IdealSpec::parse(ideal)?;
    let alg = load_algebra(algebra)?;
    let end = enumerate_endomorphisms(&alg, None, cfg)?;
    let members = spec.resolve(&alg, &end, cfg)?;
    let (ideal, members) = end.restrict(&members)?;
    Ok(Loaded {
        alg,
        end,
        members,
        ideal,
        spec,
    })
}

fn describe(l: &Loaded) -> Value {
    json!({
        "spec": l.spec.to_string(),
        "order": l.ideal.order(),
        "two_sided_ideal": l.end.is_ideal(&l.members, Side::TwoSided),
    })
}

#[derive(Serialize)]
struct DClassSummary {
    size: usize,
    r_classes: usize,
    l_classes: usize,
    regular: bool,
    group_h_classes: usize,
}

fn end(algebra: &str, gens: Option<&[usize]>, dot: Option<&std::path::Path>, cfg: &RunConfig) -> Result<Outcome> {
    let alg = load_algebra(algebra)?;
    let end = enumerate_endomorphisms(&alg, gens, cfg)?;
    let eb = EggBox::compute(&end);
    if let Some(path) = dot {
        write_file(path, &eb.to_dot(&end))?;
    }
    let d_classes: Vec<DClassSummary> = eb
        .d_classes
        .iter()
        .map(|d| DClassSummary {
            size: d.elements.len(),
            r_classes: d.r_classes.len(),
            l_classes: d.l_classes.len(),
            regular: d.regular,
            group_h_classes: d.group_cells.iter().flatten().filter(|&&g| g).count(),
        })
        .collect();
    let elements = (end.order() <= LIST_LIMIT)
        .then(|| end.maps().map(|ms| ms.iter().map(|f| f.values().to_vec()).collect::<Vec<_>>()))
        .transpose()?;
    let head = format!("End(A) has order {}", end.order());
    Ok(Outcome::ok(json!({
        "algebra_size": alg.size(),
        "order": end.order(),
        "idempotents": end.idempotents().len(),
        "units": end.units().len(),
        "d_classes": d_classes,
        "elements": elements,
    }))
    .headed(head))
}

fn hull(algebra: &str, ideal: &str, cfg: &RunConfig) -> Result<Outcome> {
    let l = load(algebra, ideal, cfg)?;
    let report = hull_report(&l.alg, &l.ideal, Some(&l.end), cfg)?;
    let omega = soft(enumerate_bitranslations(&l.ideal, cfg))?;
    let omega_s = match &omega {
        Some(o) => soft(omega_semigroup(o, cfg))?,
        None => None,
    };
    let t_idealiser = match soft(idealiser_in_maps(&l.ideal, Side::TwoSided, cfg))? {
        Some(maps) => Some(FinSemigroup::from_maps(l.alg.size(), maps, cfg.max_table_order)?),
        None => None,
    };
    let iso = |other: Option<&FinSemigroup>| -> Result<Option<bool>> {
        match (&omega_s, other) {
            (Some(o), Some(t)) => Ok(soft(iso_check(o, t))?.map(|m| m.is_some())),
            _ => Ok(None),
        }
    };
    let iso_end = iso(Some(&l.end))?;
    let iso_t = iso(t_idealiser.as_ref())?;
    let v = &report.verdicts;
    let chi_s_bijective = match (v.chi_s_injective, v.chi_s_surjective) {
        (Some(a), Some(b)) => Some(a && b),
        _ => None,
    };
    let mut violation = None;
    if v.representable && v.separable && v.omega_realized_by_t == Some(false) {
        violation = Some("representable and separable, but some bi-translation is not realised by a map".into());
    }
    if let (Some(full), Some(rb), Some(lb)) = (
        v.omega_realized_by_t,
        v.all_rho_right_balanced,
        v.all_lambda_left_balanced,
    ) {
        if full != (rb && lb) {
            violation = Some("realisation by maps disagrees with the balance conditions".into());
        }
    }
    let head = match report.counts.bitranslations {
        Some(k) => format!("Ω(I) has order {k} for |I| = {}", l.ideal.order()),
        None => format!("Ω(I) not enumerated for |I| = {}", l.ideal.order()),
    };
    Ok(Outcome {
        headline: Some(head),
        value: json!({
            "ideal": describe(&l),
            "end_order": l.end.order(),
            "report": value(&report),
            "omega_isomorphic_to_end": iso_end,
            "omega_isomorphic_to_t_idealiser": iso_t,
            "chi_s_bijective": chi_s_bijective,
        }),
        violation,
    })
}

fn quotient(algebra: &str, ideal: &str, cfg: &RunConfig) -> Result<Outcome> {
    let l = load(algebra, ideal, cfg)?;
    let p = build_pipeline(&l.alg, &l.ideal, cfg)?;
    let i_mod_maps: Vec<Vec<usize>> = p.i_mod.maps()?.iter().map(|f| f.values().to_vec()).collect();
    // σ checks itself and reports a theorem violation on failure
    let sigma_checked = match soft(enumerate_bitranslations(&l.ideal, cfg))? {
        Some(o) => soft(sigma(&p, &o, cfg))?.map(|_| true),
        None => None,
    };
    let quotient_file: Value = serde_json::from_str(&algebra_to_json(&p.quotient)).expect("algebra json");
    let head = format!("A/~ has size {} and I/≈ has order {}", p.size(), p.i_mod.order());
    Ok(Outcome::ok(json!({
        "ideal": describe(&l),
        "k": p.k(),
        "size": p.size(),
        "sim_classes": p.sim().classes(),
        "projection": p.projection.values(),
        "approx_classes": p.approx.classes(),
        "i_mod_order": p.i_mod.order(),
        "i_mod": i_mod_maps,
        "quotient_representable": is_representable(&p.quotient, &p.i_mod)?,
        "quotient_separable": is_separable(&p.quotient, &p.i_mod)?,
        "sigma_morphism": sigma_checked,
        "quotient": quotient_file,
    }))
    .headed(head))
}

fn check(algebra: &str, ideal: &str, props: &[Property], cfg: &RunConfig) -> Result<Outcome> {
    let l = load(algebra, ideal, cfg)?;
    let mut out = serde_json::Map::new();
    out.insert("ideal".into(), describe(&l));
    for p in props {
        match p {
            Property::Rep => {
                out.insert("representable".into(), json!(is_representable(&l.alg, &l.ideal)?));
            }
            Property::Sep => {
                out.insert("separable".into(), json!(is_separable(&l.alg, &l.ideal)?));
            }
            Property::Reductive => {
                let all: Vec<usize> = (0..l.ideal.order()).collect();
                out.insert(
                    "reductive".into(),
                    json!({
                        "in_end": value(&reductivity(&l.end, &l.members)?),
                        "in_ideal": value(&reductivity(&l.ideal, &all)?),
                    }),
                );
            }
            Property::Balanced => {
                let v = match soft(enumerate_bitranslations(&l.ideal, cfg))? {
                    Some(o) => {
                        let mut rb = true;
                        for r in rho_tilde(&o) {
                            rb &= is_right_balanced(&l.ideal, &r)?;
                        }
                        let mut lb = true;
                        for lam in lambda_tilde(&o) {
                            lb &= is_left_balanced(&l.ideal, &lam)?.is_some();
                        }
                        json!({"right": rb, "left": lb, "hull_order": o.len()})
                    }
                    None => Value::Null,
                };
                out.insert("balanced".into(), v);
            }
        }
    }
    Ok(Outcome::ok(Value::Object(out)))
}

fn sn(n: usize, allow_n4: bool, ideal: Option<SnIdealArg>, dot: Option<&std::path::Path>, cfg: &RunConfig) -> Result<Outcome> {
    let model = build_sn_model(n, allow_n4)?;
    let rules = model.verify_rules();
    let (cross, searched) = model.cross_check(cfg)?;
    let end = model.semigroup(cfg)?;
    let (shape, eb) = sn_eggbox_shape(&model, &end)?;
    if let Some(path) = dot {
        write_file(path, &eb.to_dot(&end))?;
    }
    let n_fact: usize = (1..=n).product();
    let classification = shape.matches_classification(n_fact);
    let analysis = match ideal {
        None => None,
        Some(w) => {
            let which = match w {
                SnIdealArg::Full => SnIdeal::Full,
                SnIdealArg::NonAut => SnIdeal::NonAut,
                SnIdealArg::EvenGenerated => SnIdeal::EvenGenerated,
            };
            Some(sn_ideal_analysis(&model, which, cfg)?)
        }
    };
    let rules_hold = rules.iter().all(|r| r.holds());
    let mut violation = None;
    if !rules_hold {
        violation = Some(format!("composition rules fail for n = {n}"));
    } else if n != 4 && !cross.equal() {
        violation = Some(format!("model and search disagree for n = {n}"));
    } else if n != 4 && !classification {
        violation = Some(format!("egg-box shape differs from the classification for n = {n}"));
    }
    Ok(Outcome {
        headline: Some(format!(
            "End(S_{n}) has order {}, rules {}",
            end.order(),
            if rules_hold { "verified" } else { "FAILED" }
        )),
        value: json!({
            "n": n,
            "order": end.order(),
            "searched_order": searched.order(),
            "involutions": model.involutions.len(),
            "rules": value(&rules),
            "rules_hold": rules_hold,
            "cross_check": value(&cross),
            "eggbox": value(&shape),
            "matches_classification": classification,
            "ideal": analysis.as_ref().map(value),
        }),
        violation,
    })
}

fn numbers(raw: &str) -> Result<Vec<usize>> {
    raw.split(',')
        .map(|p| {
            p.trim().parse::<usize>().map_err(|_| HullError::Parse {
                location: "argument".into(),
                message: format!("`{raw}`: expected comma-separated integers"),
            })
        })
        .collect()
}

fn semiring(file: &str, matrix: Option<usize>, ideal: &str, idem: Option<&str>, cfg: &RunConfig) -> Result<Outcome> {
    let text = std::fs::read_to_string(file).map_err(|e| HullError::Io(format!("{file}: {e}")))?;
    let base = FiniteSemiring::from_json(&text)?;
    let r = match matrix {
        Some(n) => build_matrix_semiring(&base, n)?,
        None => base.clone(),
    };
    let s = r.multiplicative_semigroup();
    let members = if ideal == "all" {
        (0..r.order()).collect()
    } else if let Some(g) = ideal.strip_prefix("gens:") {
        let g = numbers(g)?;
        if let Some(&bad) = g.iter().find(|&&x| x >= r.order()) {
            return Err(HullError::Precondition(format!("element {bad} outside the semiring")));
        }
        s.ideal_generated(&g, Side::TwoSided)?
    } else if let Some(ij) = ideal.strip_prefix("unit:") {
        let n = matrix.ok_or_else(|| HullError::Precondition("unit:I,J needs --matrix".into()))?;
        let ij = numbers(ij)?;
        let [i, j] = ij[..] else {
            return Err(HullError::Parse {
                location: "ideal".into(),
                message: format!("`{ideal}`: expected unit:I,J"),
            });
        };
        s.ideal_generated(&[matrix_unit(&base, n, i, j)?], Side::TwoSided)?
    } else {
        return Err(HullError::Parse {
            location: "ideal".into(),
            message: format!("`{ideal}`: expected all, gens:I,J,... or unit:I,J"),
        });
    };
    let prop = check_prop_semiring(&r, &members, cfg)?;
    let es = match idem {
        None => None,
        Some("diag") => {
            let n = matrix.ok_or_else(|| HullError::Precondition("diag needs --matrix".into()))?;
            Some((0..n).map(|k| matrix_unit(&base, n, k, k)).collect::<Result<Vec<_>>>()?)
        }
        Some(list) => Some(numbers(list)?),
    };
    let plus = match es {
        Some(es) => Some(check_prop_semiring_plus(&r, &members, &es, cfg)?),
        None => None,
    };
    let mut violation = None;
    if prop.status == PropStatus::Violated || plus.as_ref().is_some_and(|p| p.status == PropStatus::Violated) {
        violation = Some("hypotheses hold but χ is not bijective onto the hull".into());
    }
    Ok(Outcome {
        headline: None,
        value: json!({
            "order": r.order(),
            "ideal": if members.len() <= LIST_LIMIT { json!(members) } else { json!(members.len()) },
            "one_as_sum": value(&prop),
            "idempotent_conditions": plus.as_ref().map(value),
        }),
        violation,
    })
}

fn run_audit(cfg: &RunConfig) -> Result<Outcome> {
    let instances = corpus(cfg)?;
    let report = audit(&instances, cfg)?;
    let violations = report.violation_count();
    let summary: serde_json::Map<String, Value> = report
        .tallies
        .iter()
        .map(|(k, t)| (k.clone(), json!({
                    "checked": t.checked,
                    "vacuous": t.vacuous,
                    "skipped": t.skipped,
                    "violations": t.violations.len(),
                })))
        .collect();
    let value = json!({
        "instances": report.instances,
        "checked": report.checked(),
        "skipped": report.skipped(),
        "violations": violations,
        "checks": summary,
        "violation_messages": report.tallies.values().flat_map(|t| t.violations.clone()).collect::<Vec<_>>(),
    });
    let violation = (violations > 0).then(|| format!("{violations} theorem check(s) failed"));
    Ok(Outcome {
        headline: Some(format!("{} instances, {violations} violations", report.instances.len())),
        value,
        violation,
    })
}
