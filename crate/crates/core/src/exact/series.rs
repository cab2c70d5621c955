//! Power series truncated at a fixed order.

use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use super::rational::{int, Rational};

/// Coefficients `c_0..=c_N`; products and sums discard everything above `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs order >= 0");
        TruncatedSeries { coeffs }
    }

    pub fn from_counts(counts: &[u64]) -> Self {
        Self::new(counts.iter().map(|&c| int(c as i64)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    /// `(1 + z) * self`, truncated at the same order.
    pub fn mul_one_plus_z(&self) -> Self {
        let coeffs = (0..self.coeffs.len())
            .map(|n| {
                let prev = if n > 0 {
                    self.coeffs[n - 1].clone()
                } else {
                    Rational::zero()
                };
                &self.coeffs[n] + prev
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Integer coefficients, or `None` if some coefficient is not an integer
    /// that fits `i64`.
    pub fn to_integers(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .map(|c| {
                if c.is_integer() {
                    c.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }
}

/// Long division by `1 + z`: `c_0 = b_0`, `c_n = b_n - c_{n-1}`.
pub fn series_div_one_plus_z(h: &TruncatedSeries) -> TruncatedSeries {
    let mut out: Vec<Rational> = Vec::with_capacity(h.coeffs.len());
    for (n, b) in h.coeffs.iter().enumerate() {
        let c = if n == 0 { b.clone() } else { b - &out[n - 1] };
        out.push(c);
    }
    TruncatedSeries { coeffs: out }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k).fold(Rational::zero(), |acc, i| {
                    acc + &self.coeffs[i] * &rhs.coeffs[k - i]
                })
            })
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl TruncatedSeries {
    pub fn one_at_order(n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[0] = Rational::one();
        TruncatedSeries { coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.to_integers().unwrap()
    }

    #[test]
    fn divide_growth_series() {
        let a2 = TruncatedSeries::from_counts(&[1, 2, 2, 1]);
        assert_eq!(ints(&series_div_one_plus_z(&a2)), vec![1, 1, 1, 0]);
        let a3 = TruncatedSeries::from_counts(&[1, 3, 5, 6, 5, 3, 1]);
        assert_eq!(ints(&series_div_one_plus_z(&a3)), vec![1, 2, 3, 3, 2, 1, 0]);
        let one = TruncatedSeries::from_counts(&[1]);
        assert_eq!(ints(&series_div_one_plus_z(&one)), vec![1]);
    }

    #[test]
    fn division_inverts_multiplication() {
        let h = TruncatedSeries::from_counts(&[1, 3, 6, 9, 12, 15]);
        let q = series_div_one_plus_z(&h);
        assert_eq!(q.mul_one_plus_z(), h);
        let onez = TruncatedSeries::from_counts(&[1, 1, 0, 0, 0, 0]);
        assert_eq!(&q * &onez, h);
    }
}
