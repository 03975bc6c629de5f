use super::{BiTranslation, TransSide, Translation};
use crate::algebra::{for_each_choice, for_each_map, FiniteAlgebra, Transf};
use crate::config::RunConfig;
use crate::error::{HullError, Result};
use crate::semigroup::{search_homs, FinSemigroup, Side};

fn carrier_of(i: &FinSemigroup) -> Result<usize> {
    i.carrier()
        .ok_or_else(|| HullError::Precondition("semigroup has no transformation representation".into()))
}

fn check_map(i: &FinSemigroup, f: &Transf) -> Result<usize> {
    let n = carrier_of(i)?;
    if f.domain_size() != n {
        return Err(HullError::dim(n, f.domain_size(), "map domain vs carrier"));
    }
    if f.values().iter().any(|&v| v >= n) {
        return Err(HullError::Precondition("map value outside the carrier".into()));
    }
    Ok(n)
}

/// `ρ_f : α ↦ αf` (right) or `λ_f : α ↦ fα` (left); fails when `f` is not in
/// the corresponding idealiser.
pub fn induced_translation(i: &FinSemigroup, f: &Transf, side: TransSide) -> Result<Translation> {
    check_map(i, f)?;
    let maps = i.maps()?;
    let mut table = Vec::with_capacity(maps.len());
    for (a, alpha) in maps.iter().enumerate() {
        let g = match side {
            TransSide::Right => alpha.then(f),
            TransSide::Left => f.then(alpha),
        };
        let side_name = match side {
            TransSide::Right => "right",
            TransSide::Left => "left",
        };
        table.push(i.index_of(&g).ok_or(HullError::NotIdealiser { side: side_name, alpha: a })?);
    }
    Ok(Translation { side, table })
}

pub fn induced_bitranslation(i: &FinSemigroup, f: &Transf) -> Result<BiTranslation> {
    Ok(BiTranslation {
        left: induced_translation(i, f, TransSide::Left)?,
        right: induced_translation(i, f, TransSide::Right)?,
    })
}

fn in_idealiser(i: &FinSemigroup, maps: &[Transf], f: &Transf, side: Side) -> bool {
    maps.iter().all(|alpha| {
        (side == Side::Left || i.index_of(&alpha.then(f)).is_some())
            && (side == Side::Right || i.index_of(&f.then(alpha)).is_some())
    })
}

/// The idealiser of `I` in the full transformation monoid on its carrier,
/// by scanning every map. `Side::Left` keeps `f` with `fI ⊆ I`,
/// `Side::Right` those with `If ⊆ I`.
pub fn idealiser_in_maps(i: &FinSemigroup, side: Side, cfg: &RunConfig) -> Result<Vec<Transf>> {
    let n = carrier_of(i)?;
    cfg.check_map_scan(n)?;
    let maps = i.maps()?;
    let mut out = Vec::new();
    for_each_map(n, n, |v| {
        let f = Transf::new(v.to_vec());
        if in_idealiser(i, maps, &f, side) {
            out.push(f);
        }
    });
    Ok(out)
}

/// Distinct `(λ_f, ρ_f)` over the given maps, sorted.
pub fn realized_bitranslations(i: &FinSemigroup, maps: &[Transf]) -> Result<Vec<BiTranslation>> {
    let mut out = maps
        .iter()
        .map(|f| induced_bitranslation(i, f))
        .collect::<Result<Vec<_>>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Values `f(xα) := x(αρ)` forced on `im I`, or `None` when two
/// presentations of the same point disagree (ρ is not right-balanced).
pub fn right_seed(i: &FinSemigroup, rho: &[usize]) -> Result<Option<Vec<Option<usize>>>> {
    let n = carrier_of(i)?;
    if rho.len() != i.order() {
        return Err(HullError::dim(i.order(), rho.len(), "right translation table length"));
    }
    let maps = i.maps()?;
    let mut seed: Vec<Option<usize>> = vec![None; n];
    for (a, alpha) in maps.iter().enumerate() {
        let target = &maps[rho[a]];
        for x in 0..n {
            let p = alpha[x];
            let v = target[x];
            match seed[p] {
                Some(w) if w != v => return Ok(None),
                _ => seed[p] = Some(v),
            }
        }
    }
    Ok(Some(seed))
}

pub fn is_right_balanced(i: &FinSemigroup, rho: &[usize]) -> Result<bool> {
    Ok(right_seed(i, rho)?.is_some())
}

/// For each point `a`, all `x` with `xα = aλ(α)` for every `α ∈ I`.
pub fn left_witnesses(i: &FinSemigroup, lambda: &[usize]) -> Result<Vec<Vec<usize>>> {
    let n = carrier_of(i)?;
    if lambda.len() != i.order() {
        return Err(HullError::dim(i.order(), lambda.len(), "left translation table length"));
    }
    let maps = i.maps()?;
    Ok((0..n)
        .map(|a| {
            (0..n)
                .filter(|&x| maps.iter().zip(lambda).all(|(alpha, &l)| alpha[x] == maps[l][a]))
                .collect()
        })
        .collect())
}

/// Smallest witness for every point, or `None` when some point has none.
pub fn is_left_balanced(i: &FinSemigroup, lambda: &[usize]) -> Result<Option<Vec<usize>>> {
    Ok(left_witnesses(i, lambda)?
        .into_iter()
        .map(|xs| xs.first().copied())
        .collect())
}

/// A morphism of the subalgebra generated by `im I` inducing a given right
/// translation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongRight {
    /// Members of `⟨im I⟩`, ascending.
    pub closure: Vec<usize>,
    /// Values on the closure, `None` elsewhere.
    pub map: Vec<Option<usize>>,
}

/// Seeds `f` on `im I` from ρ, extends it along the closure witnesses of
/// `⟨im I⟩` and checks the result is a morphism there.
pub fn is_strongly_right_balanced(
    alg: &FiniteAlgebra,
    i: &FinSemigroup,
    rho: &[usize],
) -> Result<Option<StrongRight>> {
    let n = carrier_of(i)?;
    if alg.size() != n {
        return Err(HullError::dim(n, alg.size(), "algebra size vs carrier"));
    }
    let Some(mut seed) = right_seed(i, rho)? else { return Ok(None) };
    let im: Vec<usize> = (0..n).filter(|&a| seed[a].is_some()).collect();
    let closure = alg.closure(&im)?;
    if closure.dag().extend(alg, &mut seed).is_err() {
        return Ok(None);
    }
    let members = closure.members().to_vec();
    let full: Vec<usize> = seed.iter().map(|v| v.unwrap_or(0)).collect();
    if !alg.preserves_on(&full, &members) {
        return Ok(None);
    }
    Ok(Some(StrongRight {
        closure: members,
        map: seed,
    }))
}

/// An endomorphism `f` with `fα = λ(α)` for every `α`, if any; `prescribed`
/// fixes `f` at some points.
pub fn is_strongly_left_balanced(
    alg: &FiniteAlgebra,
    i: &FinSemigroup,
    lambda: &[usize],
    prescribed: Option<&[Option<usize>]>,
) -> Result<Option<Transf>> {
    let n = carrier_of(i)?;
    if alg.size() != n {
        return Err(HullError::dim(n, alg.size(), "algebra size vs carrier"));
    }
    let mut domains = left_witnesses(i, lambda)?;
    if let Some(p) = prescribed {
        if p.len() != n {
            return Err(HullError::dim(n, p.len(), "prescribed values"));
        }
        for (a, v) in p.iter().enumerate() {
            if let Some(v) = v {
                domains[a].retain(|x| x == v);
            }
        }
    }
    let mut found = None;
    search_homs(alg, &domains, |f| {
        found = Some(Transf::new(f.to_vec()));
        false
    })?;
    Ok(found)
}

/// Maps realising a bi-translation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Realizers {
    /// Every realiser, sorted.
    Exhaustive(Vec<Transf>),
    /// One realiser built from the right seed and the smallest left witnesses,
    /// or `None` when that construction fails.
    Constructive(Option<Transf>),
}

impl Realizers {
    pub fn any(&self) -> Option<&Transf> {
        match self {
            Realizers::Exhaustive(v) => v.first(),
            Realizers::Constructive(f) => f.as_ref(),
        }
    }
}

/// Maps `f` on the carrier with `(λ_f, ρ_f) = (λ, ρ)`. Both conditions are
/// pointwise: `f(a)` must be a left witness for `a`, and equal the right seed
/// on `im I`. All realisers are listed when the carrier is at most
/// `cfg.exhaustive_map_bound` and there are at most `cfg.max_map_scan`.
pub fn realizers_in_maps(i: &FinSemigroup, bt: &BiTranslation, cfg: &RunConfig) -> Result<Realizers> {
    let n = carrier_of(i)?;
    let seed = right_seed(i, bt.rho())?;
    let witnesses = left_witnesses(i, bt.lambda())?;
    let candidates: Option<Vec<Vec<usize>>> = seed.as_ref().map(|seed| {
        witnesses
            .iter()
            .enumerate()
            .map(|(a, xs)| match seed[a] {
                Some(v) => xs.iter().copied().filter(|&x| x == v).collect(),
                None => xs.clone(),
            })
            .collect()
    });
    let total = candidates
        .as_ref()
        .map_or(0, |c| c.iter().try_fold(1usize, |acc, xs| acc.checked_mul(xs.len())).unwrap_or(usize::MAX));
    if n <= cfg.exhaustive_map_bound && total <= cfg.max_map_scan {
        let Some(c) = candidates else { return Ok(Realizers::Exhaustive(Vec::new())) };
        let mut out = Vec::with_capacity(total);
        for_each_choice(&c, |v| out.push(Transf::new(v.to_vec())));
        return Ok(Realizers::Exhaustive(out));
    }
    // constructive: ρ-values on im I, smallest left witness elsewhere
    let Some(seed) = seed else { return Ok(Realizers::Constructive(None)) };
    let mut f = Vec::with_capacity(n);
    for a in 0..n {
        match seed[a].or_else(|| witnesses[a].first().copied()) {
            Some(v) => f.push(v),
            None => return Ok(Realizers::Constructive(None)),
        }
    }
    let f = Transf::new(f);
    let ok = match induced_bitranslation(i, &f) {
        Ok(b) => b == *bt,
        Err(HullError::NotIdealiser { .. }) => false,
        Err(e) => return Err(e),
    };
    Ok(Realizers::Constructive(ok.then_some(f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_set, make_vector_space};
    use crate::hull::enumerate_bitranslations;
    use crate::semigroup::{enumerate_endomorphisms, rank_ideal, rank_ideal_in};

    /// Scan every map and keep realisers.
    fn brute_realizers(i: &FinSemigroup, bt: &BiTranslation) -> Vec<Transf> {
        let n = i.carrier().unwrap();
        let mut out = Vec::new();
        for_each_map(n, n, |v| {
            let f = Transf::new(v.to_vec());
            if induced_bitranslation(i, &f).is_ok_and(|b| b == *bt) {
                out.push(f);
            }
        });
        out
    }

    #[test]
    fn realizers_match_scan() {
        let cfg = RunConfig::default();
        let i = rank_ideal(3, 3, &cfg).unwrap();
        for bt in enumerate_bitranslations(&i, &cfg).unwrap() {
            let Realizers::Exhaustive(found) = realizers_in_maps(&i, &bt, &cfg).unwrap() else { panic!() };
            assert_eq!(found, brute_realizers(&i, &bt));
            assert!(!found.is_empty());
        }
        let v = make_vector_space(2, 2).unwrap();
        let end = enumerate_endomorphisms(&v, None, &cfg).unwrap();
        let (i2, _) = end.restrict(&rank_ideal_in(&v, &end, 2).unwrap()).unwrap();
        let small = RunConfig {
            exhaustive_map_bound: 3,
            ..cfg.clone()
        };
        for bt in enumerate_bitranslations(&i2, &cfg).unwrap() {
            let Realizers::Exhaustive(found) = realizers_in_maps(&i2, &bt, &cfg).unwrap() else { panic!() };
            assert_eq!(found, brute_realizers(&i2, &bt));
            // constructive mode agrees on existence
            let Realizers::Constructive(one) = realizers_in_maps(&i2, &bt, &small).unwrap() else { panic!() };
            assert_eq!(one.is_some(), !found.is_empty());
        }
    }

    #[test]
    fn identity_is_strongly_balanced() {
        let cfg = RunConfig::default();
        let set = make_set(3);
        let i = rank_ideal(3, 3, &cfg).unwrap();
        let id: Vec<usize> = (0..i.order()).collect();
        assert!(is_strongly_right_balanced(&set, &i, &id).unwrap().is_some());
        assert_eq!(is_strongly_left_balanced(&set, &i, &id, None).unwrap(), Some(Transf::identity(3)));
        assert!(is_left_balanced(&i, &id).unwrap().is_some());
    }

    #[test]
    fn not_in_idealiser() {
        let cfg = RunConfig::default();
        let i = rank_ideal(3, 2, &cfg).unwrap();
        // constants absorb everything on the right, so any map works there
        assert!(induced_translation(&i, &Transf::new(vec![1, 0, 2]), TransSide::Right).is_ok());
        let i3 = FinSemigroup::from_maps(3, vec![Transf::identity(3)], 8).unwrap();
        assert!(matches!(
            induced_translation(&i3, &Transf::new(vec![1, 0, 2]), TransSide::Left),
            Err(HullError::NotIdealiser { side: "left", alpha: 0 })
        ));
    }
}
