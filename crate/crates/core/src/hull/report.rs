use serde::Serialize;

use super::{
    enumerate_bitranslations, enumerate_left_translations, enumerate_right_translations,
    idealiser_in_maps, is_left_balanced, is_right_balanced, lambda_tilde, natural_chi_maps,
    realized_bitranslations, rho_tilde,
};
use crate::algebra::{FiniteAlgebra, Transf};
use crate::conditions::{is_representable, is_separable};
use crate::config::RunConfig;
use crate::error::{HullError, Result};
use crate::semigroup::{enumerate_endomorphisms, FinSemigroup, Side};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct HullCounts {
    pub algebra_size: usize,
    pub ideal_order: usize,
    pub left_translations: Option<usize>,
    pub right_translations: Option<usize>,
    pub bitranslations: Option<usize>,
    pub lambda_tilde: Option<usize>,
    pub rho_tilde: Option<usize>,
    pub t_idealiser: Option<usize>,
    pub s_idealiser: Option<usize>,
    pub realized_by_t: Option<usize>,
    pub realized_by_s: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct HullVerdicts {
    pub representable: bool,
    pub separable: bool,
    pub omega_realized_by_t: Option<bool>,
    pub omega_realized_by_s: Option<bool>,
    pub chi_t_injective: Option<bool>,
    pub chi_t_surjective: Option<bool>,
    pub chi_s_injective: Option<bool>,
    pub chi_s_surjective: Option<bool>,
    pub pi_rho_injective: Option<bool>,
    pub pi_lambda_injective: Option<bool>,
    pub all_rho_right_balanced: Option<bool>,
    pub all_lambda_left_balanced: Option<bool>,
}

/// Counts and verdicts for one pair `(A, I)`. Steps refused by a size
/// bound are left as `null` and listed in `skipped`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct HullReport {
    pub counts: HullCounts,
    pub verdicts: HullVerdicts,
    pub skipped: Vec<String>,
}

impl HullReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

fn soft<T>(r: Result<T>, what: &str, skipped: &mut Vec<String>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e @ HullError::Size { .. }) => {
            skipped.push(format!("{what}: {e}"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Builds the report. `end` is `End(A)` when already known; otherwise it is
/// enumerated when the carrier is small enough.
pub fn hull_report(
    alg: &FiniteAlgebra,
    i: &FinSemigroup,
    end: Option<&FinSemigroup>,
    cfg: &RunConfig,
) -> Result<HullReport> {
    let imaps = i.maps()?;
    let mut skipped = Vec::new();
    let mut counts = HullCounts {
        algebra_size: alg.size(),
        ideal_order: i.order(),
        ..Default::default()
    };
    let mut verdicts = HullVerdicts {
        representable: is_representable(alg, i)?,
        separable: is_separable(alg, i)?,
        ..Default::default()
    };

    let lefts = soft(enumerate_left_translations(i, cfg), "left translations", &mut skipped)?;
    let rights = soft(enumerate_right_translations(i, cfg), "right translations", &mut skipped)?;
    counts.left_translations = lefts.as_ref().map(Vec::len);
    counts.right_translations = rights.as_ref().map(Vec::len);
    let omega = soft(enumerate_bitranslations(i, cfg), "bi-translations", &mut skipped)?;
    if let Some(o) = &omega {
        let (lt, rt) = (lambda_tilde(o), rho_tilde(o));
        counts.bitranslations = Some(o.len());
        counts.lambda_tilde = Some(lt.len());
        counts.rho_tilde = Some(rt.len());
        verdicts.pi_rho_injective = Some(rt.len() == o.len());
        verdicts.pi_lambda_injective = Some(lt.len() == o.len());
        let mut rb = true;
        for r in &rt {
            rb &= is_right_balanced(i, r)?;
        }
        let mut lb = true;
        for l in &lt {
            lb &= is_left_balanced(i, l)?.is_some();
        }
        verdicts.all_rho_right_balanced = Some(rb);
        verdicts.all_lambda_left_balanced = Some(lb);
    }

    let tmaps = soft(idealiser_in_maps(i, Side::TwoSided, cfg), "idealiser in T_A", &mut skipped)?;
    let owned_end;
    let end = match end {
        Some(e) => Some(e),
        None => {
            owned_end = soft(enumerate_endomorphisms(alg, None, cfg), "End(A)", &mut skipped)?;
            owned_end.as_ref()
        }
    };
    let smaps: Option<Vec<Transf>> = end.map(|e| {
        e.maps()
            .map(|ms| {
                ms.iter()
                    .filter(|f| {
                        imaps
                            .iter()
                            .all(|a| i.index_of(&a.then(f)).is_some() && i.index_of(&f.then(a)).is_some())
                    })
                    .cloned()
                    .collect()
            })
    })
    .transpose()?;

    for (maps, is_t) in [(&tmaps, true), (&smaps, false)] {
        let Some(maps) = maps else { continue };
        let realized = realized_bitranslations(i, maps)?;
        let chi = natural_chi_maps(i, maps, omega.as_deref(), cfg)?;
        let full = omega.as_ref().map(|o| *o == realized);
        if is_t {
            counts.t_idealiser = Some(maps.len());
            counts.realized_by_t = Some(realized.len());
            verdicts.omega_realized_by_t = full;
            verdicts.chi_t_injective = Some(chi.injective);
            verdicts.chi_t_surjective = chi.surjective;
        } else {
            counts.s_idealiser = Some(maps.len());
            counts.realized_by_s = Some(realized.len());
            verdicts.omega_realized_by_s = full;
            verdicts.chi_s_injective = Some(chi.injective);
            verdicts.chi_s_surjective = chi.surjective;
        }
    }

    Ok(HullReport {
        counts,
        verdicts,
        skipped,
    })
}
