//! Rank ideals of finite sets and finite vector spaces.

use serde::Serialize;

use crate::algebra::{AlgebraKind, FiniteAlgebra, Transf};
use crate::conditions::{is_representable, is_right_ta_reductive, is_separable, reductivity};
use crate::config::RunConfig;
use crate::error::{HullError, Result};
use crate::hull::{enumerate_bitranslations, lambda_tilde, natural_chi, omega_semigroup, rho_tilde};
use crate::semigroup::{
    enumerate_endomorphisms, full_transformation_monoid, iso_check, rank_ideal_in, subalgebra_rank, FinSemigroup,
    Side,
};

/// Largest `|A|` for which unary term functions are enumerated.
pub const TERM_CLONE_LIMIT: usize = 6;

/// What the unary-term criterion for `I_1` predicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct I1Criterion {
    pub constants: usize,
    pub unary_terms: usize,
    /// Every unary term fixing `C` pointwise is the identity.
    pub fixing_c_is_identity: bool,
    pub predicts_separable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependenceSuite {
    pub kind: &'static str,
    pub algebra_size: usize,
    pub dimension: usize,
    pub k: usize,
    pub end_order: usize,
    pub ideal_order: usize,
    pub representable: bool,
    pub separable: bool,
    pub omega: Option<usize>,
    /// `Ω ≅ P̃ ≅ Λ̃ ≅ End(A)` through χ and the projections.
    pub hull_is_end: Option<bool>,
    /// `I_k` is left and right reductive.
    pub reductive: bool,
    pub right_reductive: bool,
    /// `k > 2`, or `k = 2` and every 1-generated subalgebra has two elements.
    pub dimension_condition: bool,
    pub right_ta_reductive: Option<bool>,
    pub right_end_reductive: bool,
    /// Whether the equivalent conditions agree (only claimed for `k ≥ 2`).
    pub conditions_agree: Option<bool>,
    pub iso_end: Option<bool>,
    pub iso_full_on_ideal: Option<bool>,
    pub minimal_ideal: bool,
    /// `Ω ≅ End(A)` or `Ω ≅ T_I`, and the latter only for the minimal ideal.
    pub dichotomy_holds: Option<bool>,
    pub i1: Option<I1Criterion>,
}

/// Unary term functions: the functions `A -> A` generated from the
/// identity by the operations, pointwise.
fn unary_terms(alg: &FiniteAlgebra) -> Result<Vec<Transf>> {
    let n = alg.size();
    if n > TERM_CLONE_LIMIT {
        return Err(HullError::size("algebra size for unary terms", n, TERM_CLONE_LIMIT));
    }
    let mut terms: Vec<Transf> = vec![Transf::identity(n)];
    let mut seen: std::collections::HashSet<Transf> = terms.iter().cloned().collect();
    let mut grew = true;
    while grew {
        grew = false;
        for (op, o) in alg.ops().iter().enumerate() {
            let k = o.arity;
            let mut new = Vec::new();
            let lists = vec![(0..terms.len()).collect::<Vec<_>>(); k];
            crate::algebra::for_each_choice(&lists, |pick| {
                let f = Transf::new(
                    (0..n)
                        .map(|x| {
                            let args: Vec<usize> = pick.iter().map(|&t| terms[t][x]).collect();
                            alg.eval(op, &args)
                        })
                        .collect(),
                );
                new.push(f);
            });
            for f in new {
                if seen.insert(f.clone()) {
                    terms.push(f);
                    grew = true;
                }
            }
        }
    }
    terms.sort();
    Ok(terms)
}

fn i1_criterion(alg: &FiniteAlgebra) -> Result<Option<I1Criterion>> {
    let constants = alg.closure(&[])?.members().to_vec();
    if constants.is_empty() {
        return Ok(None);
    }
    let terms = unary_terms(alg)?;
    let fixing_c_is_identity = terms
        .iter()
        .filter(|t| constants.iter().all(|&c| t[c] == c))
        .all(Transf::is_identity);
    Ok(Some(I1Criterion {
        constants: constants.len(),
        unary_terms: terms.len(),
        fixing_c_is_identity,
        predicts_separable: constants.len() >= 2 && fixing_c_is_identity,
    }))
}

/// Runs the checks for the ideal `I_k` (rank below `k`) of `End(A)`.
pub fn independence_algebra_suite(alg: &FiniteAlgebra, k: usize, cfg: &RunConfig) -> Result<IndependenceSuite> {
    let kind = match alg.kind() {
        Some(AlgebraKind::Set) => "set",
        Some(AlgebraKind::VectorSpace) => "vector_space",
        _ => return Err(HullError::Precondition("expected a set or a vector space".into())),
    };
    let all: Vec<usize> = (0..alg.size()).collect();
    let dimension = subalgebra_rank(alg, &all)?;
    if k == 0 || k > dimension {
        return Err(HullError::Precondition(format!("k = {k} outside 1..={dimension}")));
    }
    let end = enumerate_endomorphisms(alg, None, cfg)?;
    let members = rank_ideal_in(alg, &end, k)?;
    if members.is_empty() {
        return Err(HullError::EmptyIdeal(format!("I_{k} is empty")));
    }
    let (i, _) = end.restrict(&members)?;
    let representable = is_representable(alg, &i)?;
    let separable = is_separable(alg, &i)?;
    let own: Vec<usize> = (0..i.order()).collect();
    let red = reductivity(&i, &own)?;
    let right_end_reductive = reductivity(&end, &members)?.right;
    let right_ta_reductive = match is_right_ta_reductive(&i, cfg) {
        Ok(v) => Some(v),
        Err(HullError::Size { .. }) => None,
        Err(e) => return Err(e),
    };
    let constants = alg.closure(&[])?.members().to_vec();
    let one_gen_min = (0..alg.size())
        .filter(|a| !constants.contains(a))
        .map(|a| alg.closure(&[a]).map(|c| c.members().len()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .unwrap_or(0);
    let dimension_condition = k > 2 || (k == 2 && one_gen_min >= 2);

    let omega = enumerate_bitranslations(&i, cfg)?;
    let chi = natural_chi(&end, &members, Some(&omega))?;
    let projections = lambda_tilde(&omega).len() == omega.len() && rho_tilde(&omega).len() == omega.len();
    let hull_is_end = chi.morphism && chi.injective && chi.surjective == Some(true) && projections;

    let hull = omega_semigroup(&omega, cfg)?;
    let iso_end = if hull.order() == end.order() {
        Some(iso_check(&hull, &end)?.is_some())
    } else {
        Some(false)
    };
    let ti_order = crate::config::checked_pow(i.order(), i.order());
    let iso_full_on_ideal = if ti_order != Some(hull.order()) {
        Some(false)
    } else {
        match full_transformation_monoid(i.order(), cfg) {
            Ok(t) => Some(iso_check(&hull, &t)?.is_some()),
            Err(HullError::Size { .. }) => None,
            Err(e) => return Err(e),
        }
    };
    let minimal_ideal = members
        .iter()
        .all(|&x| end.ideal_generated(&[x], Side::TwoSided).map(|g| g == members).unwrap_or(false));
    let dichotomy_holds = match (iso_end, iso_full_on_ideal) {
        (Some(e), Some(t)) => Some((e || t) && (!t || minimal_ideal)),
        _ => None,
    };
    let conditions_agree = (k >= 2).then(|| {
        let mut v = vec![separable, hull_is_end, red.left && red.right, dimension_condition, red.right, right_end_reductive];
        if let Some(t) = right_ta_reductive {
            v.push(t);
        }
        v.iter().all(|&b| b == separable)
    });
    let i1 = if k == 1 { i1_criterion(alg)? } else { None };
    Ok(IndependenceSuite {
        kind,
        algebra_size: alg.size(),
        dimension,
        k,
        end_order: end.order(),
        ideal_order: i.order(),
        representable,
        separable,
        omega: Some(omega.len()),
        hull_is_end: Some(hull_is_end),
        reductive: red.left && red.right,
        right_reductive: red.right,
        dimension_condition,
        right_ta_reductive,
        right_end_reductive,
        conditions_agree,
        iso_end,
        iso_full_on_ideal,
        minimal_ideal,
        dichotomy_holds,
        i1,
    })
}

/// `End(A)` restricted to `I_k`, for callers that want the semigroup itself.
pub fn rank_ideal_semigroup(alg: &FiniteAlgebra, k: usize, cfg: &RunConfig) -> Result<(FinSemigroup, FinSemigroup)> {
    let end = enumerate_endomorphisms(alg, None, cfg)?;
    let members = rank_ideal_in(alg, &end, k)?;
    let (i, _) = end.restrict(&members)?;
    Ok((end, i))
}
