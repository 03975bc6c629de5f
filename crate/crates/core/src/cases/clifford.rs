//! A two-level chain of cyclic groups of order two, as a semigroup, with the
//! ideal of endomorphisms whose image lies in the idempotents.

use serde::Serialize;

use crate::algebra::{make_semilattice_of_groups, SemilatticeOfGroupsSpec, Transf};
use crate::conditions::{is_separable, reductivity};
use crate::config::RunConfig;
use crate::error::Result;
use crate::hull::{enumerate_bitranslations, lambda_tilde, rho_tilde};
use crate::semigroup::{enumerate_endomorphisms, Side};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliffordVerdict {
    pub algebra_size: usize,
    pub end_order: usize,
    pub ideal_order: usize,
    pub is_ideal: bool,
    pub right_reductive: bool,
    pub left_reductive: bool,
    pub right_end_reductive: bool,
    pub separable: bool,
    pub omega: usize,
    pub lambda_tilde: usize,
    pub rho_tilde: usize,
    pub pi_lambda_injective: bool,
    /// The map sending each element to the identity of its group.
    pub delta_in_ideal: bool,
    pub delta_right_identity_on_images: bool,
    /// Each group element and its group's identity agree under every `γ ∈ I`.
    pub group_elements_unseparated: bool,
}

pub fn clifford_counterexample(cfg: &RunConfig) -> Result<CliffordVerdict> {
    let spec = SemilatticeOfGroupsSpec::cyclic_chain(2, 2);
    let alg = make_semilattice_of_groups(&spec)?;
    let ids = spec.identities();
    let mut level_of = Vec::with_capacity(alg.size());
    for (lvl, g) in spec.groups.iter().enumerate() {
        level_of.extend(std::iter::repeat_n(lvl, g.order));
    }
    let end = enumerate_endomorphisms(&alg, None, cfg)?;
    let maps = end.maps()?;
    let members: Vec<usize> = (0..end.order())
        .filter(|&k| maps[k].values().iter().all(|y| ids.contains(y)))
        .collect();
    let (i, _) = end.restrict(&members)?;
    let own: Vec<usize> = (0..i.order()).collect();
    let red = reductivity(&i, &own)?;
    let omega = enumerate_bitranslations(&i, cfg)?;
    let (lt, rt) = (lambda_tilde(&omega).len(), rho_tilde(&omega).len());
    let delta = Transf::new(level_of.iter().map(|&l| ids[l]).collect());
    let imaps = i.maps()?;
    let group_elements_unseparated = (0..alg.size()).all(|x| imaps.iter().all(|g| g[x] == g[ids[level_of[x]]]));
    Ok(CliffordVerdict {
        algebra_size: alg.size(),
        end_order: end.order(),
        ideal_order: i.order(),
        is_ideal: end.is_ideal(&members, Side::TwoSided),
        right_reductive: red.right,
        left_reductive: red.left,
        right_end_reductive: reductivity(&end, &members)?.right,
        separable: is_separable(&alg, &i)?,
        omega: omega.len(),
        lambda_tilde: lt,
        rho_tilde: rt,
        pi_lambda_injective: lt == omega.len(),
        delta_in_ideal: i.index_of(&delta).is_some(),
        delta_right_identity_on_images: imaps.iter().all(|a| &a.then(&delta) == a),
        group_elements_unseparated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        let v = clifford_counterexample(&RunConfig::default()).unwrap();
        assert_eq!(v.algebra_size, 4);
        assert!(v.is_ideal && v.right_reductive && !v.separable && v.pi_lambda_injective);
        assert!(v.delta_in_ideal && v.delta_right_identity_on_images && v.group_elements_unseparated);
        assert!(!v.right_end_reductive);
    }
}
