//! Exact scalar and symbolic arithmetic shared by every other module.

pub mod lattice;
pub mod laurent;
pub mod rational;
pub mod series;

use std::ops::{Add, Mul};

use num_traits::{One, Zero};
use thiserror::Error;

pub use laurent::{LaurentPoly, Monomial};
pub use rational::{format_rational, int, parse_rational, rat, Rational};
pub use series::{series_div_one_plus_z, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("elementary symmetric index {k} out of range for {n} values")]
pub struct SymmetricIndexError {
    pub k: usize,
    pub n: usize,
}

/// All elementary symmetric functions `e_0..=e_n` of `values`.
pub fn elementary_symmetric_all<T>(values: &[T]) -> Vec<T>
where
    T: Clone + Zero + One,
    for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    let mut e = vec![T::one()];
    for x in values {
        let mut next = e.clone();
        next.push(T::zero());
        for k in 1..next.len() {
            next[k] = &e.get(k).cloned().unwrap_or_else(T::zero) + &(&e[k - 1] * x);
        }
        e = next;
    }
    e
}

/// `e_k(values)`; `e_0 = 1`.
pub fn elementary_symmetric<T>(values: &[T], k: usize) -> Result<T, SymmetricIndexError>
where
    T: Clone + Zero + One,
    for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    if k > values.len() {
        return Err(SymmetricIndexError { k, n: values.len() });
    }
    Ok(elementary_symmetric_all(values).swap_remove(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let t = [LaurentPoly::var(0), LaurentPoly::var(1)];
        assert_eq!(elementary_symmetric(&t, 2).unwrap(), &t[0] * &t[1]);
        let ones = [int(1), int(1), int(1)];
        assert_eq!(elementary_symmetric(&ones, 2).unwrap(), int(3));
        let inv = [LaurentPoly::var(0), LaurentPoly::var(0).pow(-1).unwrap()];
        assert_eq!(elementary_symmetric(&inv, 1).unwrap(), &inv[0] + &inv[1]);
        assert_eq!(elementary_symmetric(&inv, 0).unwrap(), LaurentPoly::one());
        assert!(elementary_symmetric(&ones, 4).is_err());
    }

    #[test]
    fn roots_annihilate_their_polynomial() {
        for m in 1..=5 {
            let xs: Vec<LaurentPoly> = (0..m).map(LaurentPoly::var).collect();
            let e = elementary_symmetric_all(&xs);
            for root in &xs {
                let mut acc = LaurentPoly::zero();
                for (k, ek) in e.iter().enumerate() {
                    let sign = if k % 2 == 0 { int(1) } else { int(-1) };
                    let term = &ek.scale(&sign) * &root.pow((m - k) as i64).unwrap();
                    acc = &acc + &term;
                }
                assert!(acc.is_zero(), "m={m}");
            }
        }
    }
}
