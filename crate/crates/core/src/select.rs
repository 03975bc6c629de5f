//! Named algebras and textual ideal specifications, shared by the CLI and
//! the C interface.

use std::path::Path;

use crate::algebra::{
    algebra_from_json, make_cyclic_group, make_semilattice_of_groups, make_set, make_sym_group, make_vector_space,
    FiniteAlgebra, SemilatticeOfGroupsSpec, Transf,
};
use crate::config::RunConfig;
use crate::corpus::minimal_ideal;
use crate::error::{HullError, Result};
use crate::semigroup::{rank_ideal_in, semigroup_from_json, FinSemigroup, Side};

fn usage(what: &str, raw: &str, expected: &str) -> HullError {
    HullError::Parse {
        location: what.into(),
        message: format!("`{raw}`: expected {expected}"),
    }
}

fn numbers(raw: &str, what: &str) -> Result<Vec<usize>> {
    raw.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| usage(what, raw, "comma-separated integers")))
        .collect()
}

/// `set:n`, `cyclic:n`, `sym:n`, `vector:p:d` or `clifford` (two levels of
/// the cyclic group of order two).
pub fn builtin_algebra(name: &str) -> Result<FiniteAlgebra> {
    let parts: Vec<&str> = name.split(':').collect();
    let num = |s: &str| s.parse::<usize>().map_err(|_| usage("algebra", name, "a positive integer argument"));
    match parts.as_slice() {
        ["set", n] => {
            let n = num(n)?;
            if n == 0 {
                return Err(usage("algebra", name, "at least one point"));
            }
            Ok(make_set(n))
        }
        ["cyclic", n] => {
            let n = num(n)?;
            if n == 0 {
                return Err(usage("algebra", name, "a positive order"));
            }
            Ok(make_cyclic_group(n))
        }
        ["sym", n] => make_sym_group(num(n)?),
        ["vector", p, d] => make_vector_space(num(p)?, num(d)?),
        ["clifford"] => make_semilattice_of_groups(&SemilatticeOfGroupsSpec::cyclic_chain(2, 2)),
        _ => Err(usage(
            "algebra",
            name,
            "one of set:N, cyclic:N, sym:N, vector:P:D, clifford",
        )),
    }
}

/// A file path, or `builtin:` followed by a [`builtin_algebra`] name.
pub fn load_algebra(arg: &str) -> Result<FiniteAlgebra> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        return builtin_algebra(name);
    }
    let text = std::fs::read_to_string(Path::new(arg)).map_err(|e| HullError::Io(format!("{arg}: {e}")))?;
    algebra_from_json(&text)
}

/// Which subsemigroup of `End(A)` to study.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealSpec {
    All,
    /// Elements whose image needs fewer than `k` generators.
    Rank(usize),
    /// The complement of the unit group, which must be an ideal.
    NonUnits,
    Minimal,
    /// Two-sided ideal generated by elements of `End(A)` (by index).
    Gens(Vec<usize>),
    /// A semigroup file listing maps; each must be an endomorphism.
    File(String),
}

impl IdealSpec {
    pub fn parse(raw: &str) -> Result<Self> {
        let raw = raw.trim();
        Ok(match raw {
            "all" => IdealSpec::All,
            "non-units" | "non_units" => IdealSpec::NonUnits,
            "minimal" => IdealSpec::Minimal,
            _ => {
                if let Some(k) = raw.strip_prefix("rank:") {
                    IdealSpec::Rank(k.parse().map_err(|_| usage("ideal", raw, "rank:K"))?)
                } else if let Some(g) = raw.strip_prefix("gens:") {
                    IdealSpec::Gens(numbers(g, "ideal")?)
                } else if let Some(p) = raw.strip_prefix("file:") {
                    IdealSpec::File(p.to_string())
                } else if raw.ends_with(".json") {
                    IdealSpec::File(raw.to_string())
                } else {
                    return Err(usage(
                        "ideal",
                        raw,
                        "all, rank:K, non-units, minimal, gens:I,J,... or a semigroup file",
                    ));
                }
            }
        })
    }

    /// Indices in `end` of the chosen elements, ascending.
    pub fn resolve(&self, alg: &FiniteAlgebra, end: &FinSemigroup, cfg: &RunConfig) -> Result<Vec<usize>> {
        let members = match self {
            IdealSpec::All => (0..end.order()).collect(),
            IdealSpec::Rank(k) => rank_ideal_in(alg, end, *k)?,
            IdealSpec::NonUnits => {
                let m = end.non_units();
                if m.is_empty() {
                    return Err(HullError::EmptyIdeal("every endomorphism is a unit".into()));
                }
                if !end.is_ideal(&m, Side::TwoSided) {
                    return Err(HullError::Precondition("the non-units do not form an ideal".into()));
                }
                m
            }
            IdealSpec::Minimal => minimal_ideal(end)?,
            IdealSpec::Gens(g) => {
                if let Some(&bad) = g.iter().find(|&&x| x >= end.order()) {
                    return Err(HullError::Precondition(format!(
                        "generator {bad} outside End(A) of order {}",
                        end.order()
                    )));
                }
                end.ideal_generated(g, Side::TwoSided)?
            }
            IdealSpec::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| HullError::Io(format!("{path}: {e}")))?;
                let s = semigroup_from_json(&text, cfg)?;
                let maps = s
                    .maps()
                    .map_err(|_| HullError::Precondition(format!("{path}: expected a semigroup of maps")))?;
                let mut out = Vec::with_capacity(maps.len());
                for (k, f) in maps.iter().enumerate() {
                    out.push(end.index_of(f).ok_or_else(|| {
                        HullError::Precondition(format!("{path}: element {k} is not an endomorphism"))
                    })?);
                }
                out.sort_unstable();
                out
            }
        };
        if members.is_empty() {
            return Err(HullError::EmptyIdeal("the specification selects nothing".into()));
        }
        Ok(members)
    }
}

impl std::fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |g: &[usize]| g.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            IdealSpec::All => write!(f, "all"),
            IdealSpec::Rank(k) => write!(f, "rank:{k}"),
            IdealSpec::NonUnits => write!(f, "non-units"),
            IdealSpec::Minimal => write!(f, "minimal"),
            IdealSpec::Gens(g) => write!(f, "gens:{}", join(g)),
            IdealSpec::File(p) => write!(f, "file:{p}"),
        }
    }
}

/// A map given as a comma-separated value list.
pub fn parse_map(raw: &str) -> Result<Transf> {
    Ok(Transf::new(numbers(raw, "map")?))
}
