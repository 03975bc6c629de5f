//! A fixed collection of small pairs `(A, I)` with `I` a subsemigroup of
//! `End(A)`, used by the theorem audit and the acceptance tests.

use crate::algebra::{
    make_cyclic_group, make_semilattice_of_groups, make_set, make_sym_group, make_vector_space, FiniteAlgebra,
    NamedOp, SemilatticeOfGroupsSpec, Transf,
};
use crate::config::RunConfig;
use crate::error::{HullError, Result};
use crate::semigroup::{enumerate_endomorphisms, rank_ideal_in, FinSemigroup, Side};

/// One pair `(A, I)`: `members` are the indices in `end` of the elements of `I`.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub alg: FiniteAlgebra,
    pub end: FinSemigroup,
    pub members: Vec<usize>,
    pub ideal: FinSemigroup,
}

impl Instance {
    pub fn is_ideal(&self, side: Side) -> bool {
        self.end.is_ideal(&self.members, side)
    }
}

/// How `I` is chosen inside `End(A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pick {
    All,
    /// Elements whose image needs fewer than `k` generators.
    Rank(usize),
    NonUnits,
    /// The least two-sided ideal.
    Minimal,
    /// Subsemigroup generated by maps given as value arrays.
    Gens(Vec<Vec<usize>>),
    /// Elements whose image lies in the given points.
    ImageIn(Vec<usize>),
}

impl Pick {
    fn label(&self) -> String {
        match self {
            Pick::All => "all".into(),
            Pick::Rank(k) => format!("rank{k}"),
            Pick::NonUnits => "non-units".into(),
            Pick::Minimal => "minimal".into(),
            Pick::Gens(g) => {
                let parts: Vec<String> = g
                    .iter()
                    .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""))
                    .collect();
                format!("gens[{}]", parts.join(","))
            }
            Pick::ImageIn(_) => "image-in-idempotents".into(),
        }
    }
}

pub fn minimal_ideal(end: &FinSemigroup) -> Result<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    for x in 0..end.order() {
        let g = end.ideal_generated(&[x], Side::TwoSided)?;
        if best.as_ref().is_none_or(|b| g.len() < b.len()) {
            best = Some(g);
        }
    }
    best.ok_or_else(|| HullError::EmptyIdeal("empty semigroup".into()))
}

/// Resolves `pick` inside an already enumerated `End(A)`.
pub fn instance_from(name: &str, alg: FiniteAlgebra, end: FinSemigroup, pick: &Pick) -> Result<Instance> {
    let maps = end.maps()?.to_vec();
    let members = match pick {
        Pick::All => (0..end.order()).collect(),
        Pick::Rank(k) => rank_ideal_in(&alg, &end, *k)?,
        Pick::NonUnits => end.non_units(),
        Pick::Minimal => minimal_ideal(&end)?,
        Pick::Gens(gens) => {
            let idx = gens
                .iter()
                .map(|g| {
                    end.index_of(&Transf::new(g.clone()))
                        .ok_or_else(|| HullError::Precondition(format!("{g:?} is not an endomorphism")))
                })
                .collect::<Result<Vec<_>>>()?;
            end.subsemigroup_generated(&idx)?
        }
        Pick::ImageIn(pts) => (0..end.order())
            .filter(|&k| maps[k].values().iter().all(|y| pts.contains(y)))
            .collect(),
    };
    if members.is_empty() {
        return Err(HullError::EmptyIdeal(format!("{name}: nothing picked")));
    }
    let (ideal, members) = end.restrict(&members)?;
    Ok(Instance {
        name: format!("{name}/{}", pick.label()),
        alg,
        end,
        members,
        ideal,
    })
}

fn chain_meet(n: usize) -> Result<FiniteAlgebra> {
    FiniteAlgebra::new(n, vec![NamedOp::from_fn("meet", n, 2, |t| t[0].min(t[1]))], None)
}

fn chain_lattice(n: usize) -> Result<FiniteAlgebra> {
    FiniteAlgebra::new(
        n,
        vec![
            NamedOp::from_fn("meet", n, 2, |t| t[0].min(t[1])),
            NamedOp::from_fn("join", n, 2, |t| t[0].max(t[1])),
        ],
        None,
    )
}

/// Three points with the unary map `0 -> 1 -> 2 -> 2`.
fn tail() -> Result<FiniteAlgebra> {
    FiniteAlgebra::new(3, vec![NamedOp::new("succ", 1, vec![1, 2, 2])], None)
}

/// Every instance, in a fixed order.
pub fn corpus(cfg: &RunConfig) -> Result<Vec<Instance>> {
    let clifford_spec = SemilatticeOfGroupsSpec::cyclic_chain(2, 2);
    let clifford = make_semilattice_of_groups(&clifford_spec)?;
    let plan: Vec<(&str, FiniteAlgebra, Vec<Pick>)> = vec![
        ("set2", make_set(2), vec![Pick::All, Pick::Rank(2)]),
        (
            "set3",
            make_set(3),
            vec![
                Pick::All,
                Pick::Rank(2),
                Pick::Rank(3),
                Pick::Gens(vec![vec![1, 2, 0]]),
                Pick::Gens(vec![vec![0, 0, 2]]),
                Pick::Gens(vec![vec![0, 1, 0], vec![0, 1, 1]]),
                Pick::Gens(vec![vec![0, 0, 1]]),
                Pick::Gens(vec![vec![1, 0, 0]]),
                Pick::Gens(vec![vec![1, 0, 2], vec![0, 0, 2]]),
            ],
        ),
        (
            "set4",
            make_set(4),
            vec![Pick::Rank(2), Pick::Gens(vec![vec![0, 0, 1, 1], vec![0, 0, 0, 1]])],
        ),
        ("c2", make_cyclic_group(2), vec![Pick::All]),
        ("c3", make_cyclic_group(3), vec![Pick::All]),
        ("c4", make_cyclic_group(4), vec![Pick::All, Pick::NonUnits]),
        ("c6", make_cyclic_group(6), vec![Pick::All, Pick::NonUnits]),
        ("s3", make_sym_group(3)?, vec![Pick::All, Pick::NonUnits, Pick::Minimal]),
        ("gf2^1", make_vector_space(2, 1)?, vec![Pick::All]),
        ("gf3^1", make_vector_space(3, 1)?, vec![Pick::All, Pick::Rank(1)]),
        ("gf2^2", make_vector_space(2, 2)?, vec![Pick::All, Pick::Rank(2), Pick::Rank(1)]),
        ("clifford", clifford, vec![Pick::All, Pick::ImageIn(clifford_spec.identities())]),
        ("chain3-meet", chain_meet(3)?, vec![Pick::All, Pick::Minimal]),
        ("chain3-lattice", chain_lattice(3)?, vec![Pick::All]),
        ("tail3", tail()?, vec![Pick::All, Pick::Minimal]),
    ];
    let mut out = Vec::new();
    for (name, alg, picks) in plan {
        let end = enumerate_endomorphisms(&alg, None, cfg)?;
        for pick in &picks {
            out.push(instance_from(name, alg.clone(), end.clone(), pick)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let c = corpus(&RunConfig::default()).unwrap();
        assert!(c.len() >= 30);
        let mut names: Vec<&str> = c.iter().map(|i| i.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), c.len());
        let get = |n: &str| c.iter().find(|i| i.name == n).unwrap();
        assert_eq!(get("set3/all").ideal.order(), 27);
        assert_eq!(get("set3/rank3").ideal.order(), 21);
        assert_eq!(get("s3/non-units").ideal.order(), 4);
        assert_eq!(get("s3/minimal").ideal.order(), 1);
        assert_eq!(get("gf2^2/rank2").ideal.order(), 10);
        // the two null examples
        for n in ["set3/gens[001]", "set4/gens[0011,0001]"] {
            let s = &get(n).ideal;
            let z = s.mul(0, 0);
            assert!((0..s.order()).all(|a| (0..s.order()).all(|b| s.mul(a, b) == z)), "{n}");
        }
        let lz = &get("set3/gens[010,011]").ideal;
        assert!((0..2).all(|a| (0..2).all(|b| lz.mul(a, b) == a)));
        for i in &c {
            assert!(i.end.is_closed(&i.members), "{}", i.name);
        }
    }
}
