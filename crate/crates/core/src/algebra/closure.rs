use serde::Serialize;

use super::{for_each_tuple_over, FiniteAlgebra};
use crate::error::{HullError, Result};

/// How an element of a closure was first reached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// The element was one of the seeds.
    Generator,
    /// The element is `op(args)` with every argument earlier in closure order.
    Applied { op: usize, args: Vec<usize> },
}

/// Derivations of every element of a closed subset, in discovery order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessDag {
    nodes: Vec<(usize, Witness)>,
    #[serde(skip)]
    position: Vec<Option<usize>>,
}

/// Why replaying a dag under an assignment failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReplayError {
    /// A generator had no assigned value.
    MissingSeed(usize),
    /// A pre-assigned value disagreed with the value derived from the dag.
    Conflict {
        element: usize,
        assigned: usize,
        derived: usize,
    },
}

impl WitnessDag {
    pub fn nodes(&self) -> &[(usize, Witness)] {
        &self.nodes
    }

    pub fn position(&self, x: usize) -> Option<usize> {
        self.position.get(x).copied().flatten()
    }

    pub fn witness(&self, x: usize) -> Option<&Witness> {
        self.position(x).map(|p| &self.nodes[p].1)
    }

    pub fn generators(&self) -> impl Iterator<Item = usize> + '_ {
        self.nodes
            .iter()
            .filter(|(_, w)| matches!(w, Witness::Generator))
            .map(|(x, _)| *x)
    }

    /// Extends an assignment given on the generators to every node by
    /// `f(op(args)) := op(f(args))`. Values already present on derived nodes
    /// must agree with the derived value.
    pub fn extend(
        &self,
        alg: &FiniteAlgebra,
        values: &mut [Option<usize>],
    ) -> std::result::Result<(), ReplayError> {
        let mut args = Vec::new();
        for (x, w) in &self.nodes {
            match w {
                Witness::Generator => {
                    if values[*x].is_none() {
                        return Err(ReplayError::MissingSeed(*x));
                    }
                }
                Witness::Applied { op, args: a } => {
                    args.clear();
                    for &y in a {
                        args.push(values[y].ok_or(ReplayError::MissingSeed(y))?);
                    }
                    let derived = alg.eval(*op, &args);
                    match values[*x] {
                        Some(assigned) if assigned != derived => {
                            return Err(ReplayError::Conflict {
                                element: *x,
                                assigned,
                                derived,
                            })
                        }
                        _ => values[*x] = Some(derived),
                    }
                }
            }
        }
        Ok(())
    }

    /// Every node is acyclic and replaying it reproduces its element.
    pub fn is_sound(&self, alg: &FiniteAlgebra) -> bool {
        self.nodes.iter().enumerate().all(|(i, (x, w))| match w {
            Witness::Generator => true,
            Witness::Applied { op, args } => {
                args.iter()
                    .all(|&a| self.position(a).is_some_and(|p| p < i))
                    && alg.eval(*op, args) == *x
            }
        })
    }
}

/// The subalgebra generated by a seed set, with one derivation per element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Closure {
    members: Vec<usize>,
    dag: WitnessDag,
}

impl Closure {
    /// Breadth-first closure. Seeds come first (ascending), then nullary
    /// values (op order); each later round applies every operation, in
    /// op-index order, to every tuple over the members known at the start of
    /// the round that touches the previous round's additions, in
    /// lexicographic order. The first derivation found is kept.
    pub fn compute(alg: &FiniteAlgebra, seeds: &[usize]) -> Result<Self> {
        let n = alg.size();
        if let Some(&bad) = seeds.iter().find(|&&s| s >= n) {
            return Err(HullError::Precondition(format!("seed {bad} outside carrier of size {n}")));
        }
        let mut position: Vec<Option<usize>> = vec![None; n];
        let mut nodes: Vec<(usize, Witness)> = Vec::new();
        let mut sorted = seeds.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for s in sorted {
            position[s] = Some(nodes.len());
            nodes.push((s, Witness::Generator));
        }
        for (oi, op) in alg.ops().iter().enumerate() {
            if op.arity == 0 {
                let v = op.table[0];
                if position[v].is_none() {
                    position[v] = Some(nodes.len());
                    nodes.push((v, Witness::Applied { op: oi, args: vec![] }));
                }
            }
        }

        let mut fresh = vec![false; n];
        for (x, _) in &nodes {
            fresh[*x] = true;
        }
        loop {
            let mut current: Vec<usize> = nodes.iter().map(|(x, _)| *x).collect();
            current.sort_unstable();
            let mut added = Vec::new();
            for (oi, op) in alg.ops().iter().enumerate() {
                if op.arity == 0 {
                    continue;
                }
                for_each_tuple_over(&current, op.arity, &mut |t: &[usize]| {
                    if !t.iter().any(|&a| fresh[a]) {
                        return;
                    }
                    let v = alg.eval(oi, t);
                    if position[v].is_none() {
                        position[v] = Some(nodes.len());
                        nodes.push((v, Witness::Applied { op: oi, args: t.to_vec() }));
                        added.push(v);
                    }
                });
            }
            if added.is_empty() {
                break;
            }
            fresh.iter_mut().for_each(|f| *f = false);
            for v in added {
                fresh[v] = true;
            }
        }
        let mut members: Vec<usize> = nodes.iter().map(|(x, _)| *x).collect();
        members.sort_unstable();
        Ok(Closure {
            members,
            dag: WitnessDag { nodes, position },
        })
    }

    /// Members in ascending order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.dag.position(x).is_some()
    }

    pub fn dag(&self) -> &WitnessDag {
        &self.dag
    }
}

#[cfg(test)]
mod tests {
    use super::super::{make_cyclic_group, make_set, make_vector_space, NamedOp};
    use super::*;
    use proptest::prelude::*;

    /// Fixpoint iteration without witnesses.
    fn brute_closure(alg: &FiniteAlgebra, seeds: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; alg.size()];
        for &s in seeds {
            inside[s] = true;
        }
        for c in alg.constants() {
            inside[c] = true;
        }
        loop {
            let cur: Vec<usize> = (0..alg.size()).filter(|&x| inside[x]).collect();
            let mut changed = false;
            for (oi, op) in alg.ops().iter().enumerate() {
                for_each_tuple_over(&cur, op.arity, &mut |t: &[usize]| {
                    let v = alg.eval(oi, t);
                    if !inside[v] {
                        inside[v] = true;
                        changed = true;
                    }
                });
            }
            if !changed {
                return (0..alg.size()).filter(|&x| inside[x]).collect();
            }
        }
    }

    #[test]
    fn closure_examples() {
        let s3 = make_set(3);
        assert_eq!(s3.closure(&[1]).unwrap().members(), &[1]);

        let v = make_vector_space(2, 2).unwrap();
        assert_eq!(v.closure(&[1, 2]).unwrap().members(), &[0, 1, 2, 3]);

        let c4 = make_cyclic_group(4);
        assert_eq!(c4.closure(&[2]).unwrap().members(), brute_closure(&c4, &[2]).as_slice());
        assert_eq!(c4.closure(&[2]).unwrap().members(), &[0, 2]);
    }

    #[test]
    fn witnesses_replay() {
        let c4 = make_cyclic_group(4);
        let cl = c4.closure(&[1]).unwrap();
        assert!(cl.dag().is_sound(&c4));
        assert_eq!(cl.dag().nodes()[0], (1, Witness::Generator));
        // identity from the constant comes right after the seed
        assert!(matches!(cl.dag().witness(0), Some(Witness::Applied { args, .. }) if args.is_empty()));

        // replaying with the identity reproduces every element
        let mut vals = vec![None; 4];
        vals[1] = Some(1);
        cl.dag().extend(&c4, &mut vals).unwrap();
        assert_eq!(vals, vec![Some(0), Some(1), Some(2), Some(3)]);

        // negation as the seed image gives negation everywhere
        let mut vals = vec![None; 4];
        vals[1] = Some(3);
        cl.dag().extend(&c4, &mut vals).unwrap();
        assert_eq!(vals, vec![Some(0), Some(3), Some(2), Some(1)]);
    }

    fn arb_algebra() -> impl Strategy<Value = FiniteAlgebra> {
        (2usize..6).prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(0..n, n * n),
                proptest::collection::vec(0..n, n),
                proptest::option::of(0..n),
            )
                .prop_map(|(n, bin, un, c)| {
                    let mut ops = vec![NamedOp::new("b", 2, bin), NamedOp::new("u", 1, un)];
                    if let Some(c) = c {
                        ops.push(NamedOp::new("c", 0, vec![c]));
                    }
                    FiniteAlgebra::new(n, ops, None).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn closure_matches_fixpoint_and_is_idempotent(alg in arb_algebra(), seed in 0usize..6) {
            let seeds = vec![seed % alg.size()];
            let cl = alg.closure(&seeds).unwrap();
            let members = cl.members().to_vec();
            prop_assert_eq!(&members, &brute_closure(&alg, &seeds));
            prop_assert!(cl.dag().is_sound(&alg));
            let again = alg.closure(&members).unwrap();
            prop_assert_eq!(again.members(), members.as_slice());
        }
    }
}
