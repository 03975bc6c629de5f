use super::FinSemigroup;
use crate::algebra::FiniteAlgebra;
use crate::config::RunConfig;
use crate::error::{HullError, Result};

fn nonempty(m: usize, what: &str) -> Result<()> {
    if m == 0 {
        return Err(HullError::EmptyIdeal(format!("{what} of order 0")));
    }
    Ok(())
}

/// Order `m` with every product equal to the zero `0`.
pub fn null_semigroup(m: usize) -> Result<FinSemigroup> {
    nonempty(m, "null semigroup")?;
    Ok(FinSemigroup::from_trusted_table(m, vec![0; m * m]))
}

/// `ab = b`.
pub fn right_zero(m: usize) -> Result<FinSemigroup> {
    nonempty(m, "right-zero semigroup")?;
    let mul = (0..m).flat_map(|_| 0..m).collect();
    Ok(FinSemigroup::from_trusted_table(m, mul))
}

/// `ab = a`.
pub fn left_zero(m: usize) -> Result<FinSemigroup> {
    nonempty(m, "left-zero semigroup")?;
    let mul = (0..m).flat_map(|a| std::iter::repeat_n(a, m)).collect();
    Ok(FinSemigroup::from_trusted_table(m, mul))
}

/// The semigroup carried by a binary operation of an algebra.
pub fn semigroup_of_op(alg: &FiniteAlgebra, op: usize) -> Result<FinSemigroup> {
    let o = alg
        .ops()
        .get(op)
        .ok_or_else(|| HullError::Precondition(format!("algebra has no operation {op}")))?;
    if o.arity != 2 {
        return Err(HullError::Precondition(format!("operation `{}` is not binary", o.name)));
    }
    FinSemigroup::from_table(alg.size(), o.table.clone(), RunConfig::default().seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_shapes() {
        let n = null_semigroup(3).unwrap();
        assert!((0..3).all(|a| (0..3).all(|b| n.mul(a, b) == 0)));
        let r = right_zero(3).unwrap();
        assert_eq!(r.mul(0, 2), 2);
        let l = left_zero(3).unwrap();
        assert_eq!(l.mul(0, 2), 0);
        for s in [n, r, l] {
            assert!(FinSemigroup::from_table(3, s.table().to_vec(), 0).is_ok());
        }
        assert!(null_semigroup(0).is_err());
    }
}
