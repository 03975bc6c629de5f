use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{induced_bitranslation, BiTranslation};
use crate::algebra::{Partition, Transf};
use crate::config::RunConfig;
use crate::error::{HullError, Result};
use crate::semigroup::{FinSemigroup, Side};

/// Pair products checked exhaustively below this count, sampled above.
const MORPHISM_PAIR_LIMIT: usize = 1_000_000;
const MORPHISM_SAMPLES: usize = 100_000;

/// The three equivalences on a semigroup `V` of maps idealising `I`:
/// agreement on `im I`, agreement modulo `ker I` pointwise, and both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivCongruences {
    pub im: Partition,
    pub ker: Partition,
    pub both: Partition,
}

/// Computes `≡_im`, `≡_ker` and `≡` on `v` and checks each is a congruence.
/// Every element of `v` must idealise `i` on both sides.
pub fn equiv_congruences(i: &FinSemigroup, v: &FinSemigroup) -> Result<EquivCongruences> {
    let imaps = i.maps()?;
    let vmaps = v.maps()?;
    let n = i.carrier().unwrap_or(0);
    if v.carrier() != Some(n) {
        return Err(HullError::dim(n, v.carrier().unwrap_or(0), "carrier of V vs carrier of I"));
    }
    for (k, f) in vmaps.iter().enumerate() {
        if imaps
            .iter()
            .any(|a| i.index_of(&a.then(f)).is_none() || i.index_of(&f.then(a)).is_none())
        {
            return Err(HullError::Precondition(format!("element {k} of V does not idealise I")));
        }
    }
    let mut in_image = vec![false; n];
    for a in imaps {
        for &x in a.values() {
            in_image[x] = true;
        }
    }
    let image: Vec<usize> = (0..n).filter(|&x| in_image[x]).collect();
    let ker = Partition::from_key(n, |x| imaps.iter().map(|a| a[x]).collect::<Vec<_>>());
    let m = v.order();
    let im = Partition::from_key(m, |k| image.iter().map(|&x| vmaps[k][x]).collect::<Vec<_>>());
    let kerp = Partition::from_key(m, |k| vmaps[k].values().iter().map(|&y| ker.rep(y)).collect::<Vec<_>>());
    let both = im.meet(&kerp);
    for (name, p) in [("agreement on the image", &im), ("kernel agreement", &kerp), ("their meet", &both)] {
        if !v.is_congruence(p)? {
            return Err(HullError::TheoremViolation(format!("{name} is not a congruence on V")));
        }
    }
    Ok(EquivCongruences { im, ker: kerp, both })
}

/// The map `V -> Ω(I)` sending each element to its inner bi-translation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiReport {
    pub images: Vec<BiTranslation>,
    pub morphism: bool,
    pub injective: bool,
    /// Compared against the supplied hull; `None` when none was given.
    pub surjective: Option<bool>,
}

fn finish(images: Vec<BiTranslation>, morphism: bool, omega: Option<&[BiTranslation]>) -> ChiReport {
    let distinct: HashSet<&BiTranslation> = images.iter().collect();
    let injective = distinct.len() == images.len();
    let surjective = omega.map(|o| o.len() == distinct.len() && o.iter().all(|b| distinct.contains(b)));
    ChiReport {
        images,
        morphism,
        injective,
        surjective,
    }
}

/// χ for an abstract semigroup `v` with an ideal given by element indices.
/// The bi-translations are indexed over the ideal's elements in ascending order.
pub fn natural_chi(v: &FinSemigroup, ideal: &[usize], omega: Option<&[BiTranslation]>) -> Result<ChiReport> {
    let (_, members) = v.restrict(ideal)?;
    if !v.is_ideal(&members, Side::TwoSided) {
        return Err(HullError::Precondition("subset is not a two-sided ideal of V".into()));
    }
    let mut pos = vec![usize::MAX; v.order()];
    for (p, &x) in members.iter().enumerate() {
        pos[x] = p;
    }
    let images: Vec<BiTranslation> = (0..v.order())
        .map(|u| {
            BiTranslation::new(
                members.iter().map(|&a| pos[v.mul(u, a)]).collect(),
                members.iter().map(|&a| pos[v.mul(a, u)]).collect(),
            )
        })
        .collect();
    let m = v.order();
    let morphism = (0..m).all(|a| (0..m).all(|b| images[v.mul(a, b)] == images[a].compose(&images[b])));
    Ok(finish(images, morphism, omega))
}

/// χ restricted to a list of maps idealising `i`. The morphism property is
/// checked on every pair when there are at most a million pairs, otherwise
/// on a seeded sample.
pub fn natural_chi_maps(
    i: &FinSemigroup,
    maps: &[Transf],
    omega: Option<&[BiTranslation]>,
    cfg: &RunConfig,
) -> Result<ChiReport> {
    let images = maps
        .iter()
        .map(|f| induced_bitranslation(i, f))
        .collect::<Result<Vec<_>>>()?;
    let k = maps.len();
    let check = |a: usize, b: usize| -> Result<bool> {
        Ok(induced_bitranslation(i, &maps[a].then(&maps[b]))? == images[a].compose(&images[b]))
    };
    let mut morphism = true;
    if k.saturating_mul(k) <= MORPHISM_PAIR_LIMIT {
        'outer: for a in 0..k {
            for b in 0..k {
                if !check(a, b)? {
                    morphism = false;
                    break 'outer;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for _ in 0..MORPHISM_SAMPLES {
            if !check(rng.gen_range(0..k), rng.gen_range(0..k))? {
                morphism = false;
                break;
            }
        }
    }
    Ok(finish(images, morphism, omega))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull::{enumerate_bitranslations, idealiser_in_maps};
    use crate::semigroup::{full_transformation_monoid, rank_ideal};

    #[test]
    fn chi_on_t3_rank_ideals() {
        let cfg = RunConfig::default();
        let t3 = full_transformation_monoid(3, &cfg).unwrap();
        for k in [2, 3] {
            let i = rank_ideal(3, k, &cfg).unwrap();
            let members: Vec<usize> = i.maps().unwrap().iter().map(|f| t3.index_of(f).unwrap()).collect();
            let omega = enumerate_bitranslations(&i, &cfg).unwrap();
            assert_eq!(omega.len(), 27);
            let chi = natural_chi(&t3, &members, Some(&omega)).unwrap();
            assert!(chi.morphism && chi.injective);
            assert_eq!(chi.surjective, Some(true));

            let tmaps = idealiser_in_maps(&i, Side::TwoSided, &cfg).unwrap();
            let chi2 = natural_chi_maps(&i, &tmaps, Some(&omega), &cfg).unwrap();
            assert!(chi2.morphism && chi2.injective);
            assert_eq!(chi2.surjective, Some(true));
            assert_eq!(chi2.images, chi.images);

            let e = equiv_congruences(&i, &t3).unwrap();
            assert!(e.both.is_equality());
        }
    }
}
