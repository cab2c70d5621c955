use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::FlatnessError;
use crate::coxeter::TriangleType;

/// Coefficient symbol of one of the three edge polynomials of a triangle:
/// `Alpha(k)` is the `k`-th coefficient on the edge of order `p`, `Beta(k)`
/// on the edge of order `q`, `Gamma(k)` on the closing edge of order `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Symbol {
    Alpha(u32),
    Beta(u32),
    Gamma(u32),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Alpha(k) => write!(f, "alpha{k}"),
            Symbol::Beta(k) => write!(f, "beta{k}"),
            Symbol::Gamma(k) => write!(f, "gamma{k}"),
        }
    }
}

/// A monomial in the symbols with nonnegative exponents.
pub type SymbolMonomial = Vec<(Symbol, u32)>;

/// `left = right` between two monomials in the coefficient symbols.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TildeEquation {
    /// Stable identifier such as `"235.const"` or `"224.gamma1"`.
    pub id: String,
    pub left: SymbolMonomial,
    pub right: SymbolMonomial,
}

/// Coefficient values of the three edge polynomials, `alpha[k - 1]` for
/// symbol `Alpha(k)` and so on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleCoefficients<T> {
    pub alpha: Vec<T>,
    pub beta: Vec<T>,
    pub gamma: Vec<T>,
}

impl<T> TriangleCoefficients<T> {
    pub fn get(&self, s: Symbol) -> &T {
        match s {
            Symbol::Alpha(k) => &self.alpha[k as usize - 1],
            Symbol::Beta(k) => &self.beta[k as usize - 1],
            Symbol::Gamma(k) => &self.gamma[k as usize - 1],
        }
    }
}

fn eval_monomial<T>(mono: &SymbolMonomial, c: &TriangleCoefficients<T>) -> T
where
    T: Clone + One,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    let mut acc = T::one();
    for &(s, e) in mono {
        for _ in 0..e {
            acc = &acc * c.get(s);
        }
    }
    acc
}

impl TildeEquation {
    /// Whether the equation holds for the given coefficient values.
    pub fn holds<T>(&self, c: &TriangleCoefficients<T>) -> bool
    where
        T: Clone + One + PartialEq,
        for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
    {
        eval_monomial(&self.left, c) == eval_monomial(&self.right, c)
    }

    /// `left - right` evaluated at the given values.
    pub fn residual<T>(&self, c: &TriangleCoefficients<T>) -> T
    where
        T: Clone + One,
        for<'a> &'a T: std::ops::Mul<&'a T, Output = T> + std::ops::Sub<&'a T, Output = T>,
    {
        &eval_monomial(&self.left, c) - &eval_monomial(&self.right, c)
    }

    /// Degree of each side in the middle coefficients, i.e. every symbol
    /// except the three constant terms `Alpha(p)`, `Beta(q)`, `Gamma(r)`.
    pub fn middle_degrees(&self, p: u32, q: u32, r: u32) -> (u32, u32) {
        let is_const = |s: Symbol| {
            matches!(s, Symbol::Alpha(k) if k == p)
                || matches!(s, Symbol::Beta(k) if k == q)
                || matches!(s, Symbol::Gamma(k) if k == r)
        };
        let deg = |m: &SymbolMonomial| {
            m.iter()
                .filter(|(s, _)| !is_const(*s))
                .map(|(_, e)| e)
                .sum()
        };
        (deg(&self.left), deg(&self.right))
    }

    /// Exponents of the three constant terms on the left, when the right
    /// side is `1`.
    pub fn constant_exponents(&self, p: u32, q: u32, r: u32) -> Option<(u32, u32, u32)> {
        if !self.right.is_empty() {
            return None;
        }
        let exp = |target: Symbol| {
            self.left
                .iter()
                .filter(|(s, _)| *s == target)
                .map(|(_, e)| *e)
                .sum()
        };
        Some((
            exp(Symbol::Alpha(p)),
            exp(Symbol::Beta(q)),
            exp(Symbol::Gamma(r)),
        ))
    }
}

impl fmt::Display for TildeEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |m: &SymbolMonomial| {
            if m.is_empty() {
                return "1".to_string();
            }
            m.iter()
                .map(|(s, e)| {
                    if *e == 1 {
                        s.to_string()
                    } else {
                        format!("{s}^{e}")
                    }
                })
                .collect::<Vec<_>>()
                .join("*")
        };
        write!(
            f,
            "{}: {} = {}",
            self.id,
            side(&self.left),
            side(&self.right)
        )
    }
}

fn mono(parts: &[(Symbol, u32)]) -> SymbolMonomial {
    let mut v: SymbolMonomial = Vec::new();
    for &(s, e) in parts {
        if e == 0 {
            continue;
        }
        match v.iter_mut().find(|(t, _)| *t == s) {
            Some(slot) => slot.1 += e,
            None => v.push((s, e)),
        }
    }
    v
}

/// The defining equations of the flat locus for one finite triangle shape,
/// in a fixed order; identifiers are `"{p}{q}{r}.const"` for the constant
/// equation and otherwise name the middle coefficient on the left.
pub fn tilde_equations(ty: TriangleType) -> Result<Vec<TildeEquation>, FlatnessError> {
    use Symbol::{Alpha as A, Beta as B, Gamma as G};
    let (p, q, r) = ty.orders().ok_or(FlatnessError::InfiniteTriangle)?;
    let tag = format!("{p}{q}{r}");
    let eq = |name: &str, left: &[(Symbol, u32)], right: &[(Symbol, u32)]| TildeEquation {
        id: format!("{tag}.{name}"),
        left: mono(left),
        right: mono(right),
    };
    let n = r;
    let out = match (p, q) {
        (2, 2) => {
            let mut v = vec![eq("const", &[(A(2), n), (B(2), n), (G(n), 2)], &[])];
            for k in 1..n {
                v.push(eq(
                    &format!("gamma{k}"),
                    &[(A(2), k), (B(2), k), (G(n), 1), (G(k), 1)],
                    &[(G(n - k), 1)],
                ));
            }
            if n % 2 == 0 {
                let h = n / 2;
                v.push(eq(
                    "alpha1",
                    &[(A(2), h), (B(2), h), (G(n), 1), (A(1), 1)],
                    &[(A(1), 1)],
                ));
                v.push(eq(
                    "beta1",
                    &[(A(2), h), (B(2), h), (G(n), 1), (B(1), 1)],
                    &[(B(1), 1)],
                ));
            } else {
                v.push(eq(
                    "alpha1",
                    &[
                        (A(2), (n - 1) / 2),
                        (B(2), (n + 1) / 2),
                        (G(n), 1),
                        (A(1), 1),
                    ],
                    &[(B(1), 1)],
                ));
            }
            v
        }
        (2, 3) => match n {
            3 => vec![
                eq("const", &[(A(2), 6), (B(3), 4), (G(3), 4)], &[]),
                eq(
                    "alpha1",
                    &[(A(2), 3), (B(3), 2), (G(3), 2), (A(1), 1)],
                    &[(A(1), 1)],
                ),
                eq(
                    "beta1",
                    &[(A(2), 2), (B(3), 1), (G(3), 2), (B(1), 1)],
                    &[(G(2), 1)],
                ),
                eq(
                    "gamma1",
                    &[(A(2), 2), (B(3), 2), (G(3), 1), (G(1), 1)],
                    &[(B(2), 1)],
                ),
            ],
            4 => vec![
                eq("const", &[(A(2), 12), (B(3), 8), (G(4), 6)], &[]),
                eq(
                    "alpha1",
                    &[(A(2), 6), (B(3), 4), (G(4), 3), (A(1), 1)],
                    &[(A(1), 1)],
                ),
                eq(
                    "gamma2",
                    &[(A(2), 6), (B(3), 4), (G(4), 3), (G(2), 1)],
                    &[(G(2), 1)],
                ),
                eq(
                    "beta1",
                    &[(A(2), 4), (B(3), 3), (G(4), 2), (B(1), 1)],
                    &[(B(2), 1)],
                ),
                eq(
                    "gamma1",
                    &[(A(2), 3), (B(3), 2), (G(4), 2), (G(1), 1)],
                    &[(G(3), 1)],
                ),
            ],
            5 => vec![
                eq("const", &[(A(2), 30), (B(3), 20), (G(5), 12)], &[]),
                eq(
                    "alpha1",
                    &[(A(2), 15), (B(3), 10), (G(5), 6), (A(1), 1)],
                    &[(A(1), 1)],
                ),
                eq(
                    "beta1",
                    &[(A(2), 10), (B(3), 7), (G(5), 4), (B(1), 1)],
                    &[(B(2), 1)],
                ),
                eq(
                    "gamma1",
                    &[(A(2), 6), (B(3), 4), (G(5), 3), (G(1), 1)],
                    &[(G(4), 1)],
                ),
                eq(
                    "gamma2",
                    &[(A(2), 12), (B(3), 8), (G(5), 5), (G(2), 1)],
                    &[(G(3), 1)],
                ),
            ],
            _ => unreachable!("finite shapes only"),
        },
        _ => unreachable!("finite shapes only"),
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_linearity() {
        let shapes = [
            (TriangleType::Dihedral(2), 4),
            (TriangleType::Dihedral(3), 4),
            (TriangleType::Dihedral(4), 6),
            (TriangleType::E233, 4),
            (TriangleType::E234, 5),
            (TriangleType::E235, 5),
        ];
        for (ty, count) in shapes {
            let eqs = tilde_equations(ty).unwrap();
            assert_eq!(eqs.len(), count, "{ty:?}");
            let (p, q, r) = ty.orders().unwrap();
            for e in &eqs {
                let (l, rr) = e.middle_degrees(p, q, r);
                assert!(l <= 1 && rr <= 1, "{e}");
            }
        }
        let e235 = tilde_equations(TriangleType::E235).unwrap();
        assert_eq!(e235[0].constant_exponents(2, 3, 5), Some((30, 20, 12)));
        assert_eq!(e235[4].id, "235.gamma2");
        assert!(tilde_equations(TriangleType::Infinite).is_err());
    }
}
