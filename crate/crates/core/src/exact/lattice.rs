//! Rational points of subtori cut out by monomial equations.
//!
//! A system `prod_j t_j^{a_rj} = 1` over the multiplicative group of the
//! rationals is diagonalised with unimodular row and column operations
//! (`P A Q = D`). Writing `t = s^Q` turns it into `s_k^{d_k} = 1`, so each
//! `s_k` with `d_k != 0` is a sign (`±1` for even `d_k`, `1` for odd) and the
//! remaining `s_k` are free.

use num_traits::One;

use super::laurent::{LaurentPoly, Monomial};
use super::rational::{self, Rational};

/// `t_j = prod_k s_k^{columns[j][k]}` with the constraints below.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusParametrization {
    /// `exponents[j][k]`: exponent of parameter `s_k` in coordinate `t_j`.
    pub exponents: Vec<Vec<i64>>,
    /// Parameters that range over all nonzero rationals.
    pub free: Vec<usize>,
    /// Parameters restricted to `{1, -1}`.
    pub signs: Vec<usize>,
}

impl TorusParametrization {
    pub fn num_coords(&self) -> usize {
        self.exponents.len()
    }

    pub fn num_params(&self) -> usize {
        self.exponents.first().map_or(0, Vec::len)
    }

    /// Coordinates for the given free values and sign choices (`true` = -1).
    /// Parameters that are neither free nor signs are fixed to 1.
    pub fn evaluate(&self, free: &[Rational], negative: &[bool]) -> Vec<Rational> {
        let s = self.param_values(free, negative);
        self.exponents
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&s)
                    .fold(Rational::one(), |acc, (&e, v)| acc * rational::pow(v, e))
            })
            .collect()
    }

    fn param_values(&self, free: &[Rational], negative: &[bool]) -> Vec<Rational> {
        assert_eq!(free.len(), self.free.len());
        assert_eq!(negative.len(), self.signs.len());
        let mut s = vec![Rational::one(); self.num_params()];
        for (&k, v) in self.free.iter().zip(free) {
            s[k] = v.clone();
        }
        for (&k, &neg) in self.signs.iter().zip(negative) {
            if neg {
                s[k] = -Rational::one();
            }
        }
        s
    }

    /// Coordinates as Laurent monomials in the free parameters, which become
    /// variables `0..free.len()`; signs are substituted as constants.
    pub fn symbolic(&self, negative: &[bool]) -> Vec<LaurentPoly> {
        assert_eq!(negative.len(), self.signs.len());
        self.exponents
            .iter()
            .map(|row| {
                let mono = Monomial::from_exponents(
                    self.free.iter().enumerate().map(|(var, &k)| (var, row[k])),
                );
                let odd_sign = self
                    .signs
                    .iter()
                    .zip(negative)
                    .filter(|&(&k, &neg)| neg && row[k].rem_euclid(2) == 1)
                    .count();
                let c = if odd_sign % 2 == 1 {
                    -Rational::one()
                } else {
                    Rational::one()
                };
                LaurentPoly::term(mono, c)
            })
            .collect()
    }

    /// Every sign pattern, in a fixed order.
    pub fn sign_patterns(&self) -> Vec<Vec<bool>> {
        let n = self.signs.len();
        (0..1u64 << n)
            .map(|mask| (0..n).map(|b| mask >> b & 1 == 1).collect())
            .collect()
    }
}

/// Solve `prod_j t_j^{rows[r][j]} = 1` for `t` in `(Q^*)^ncoords`.
pub fn solve_monomial_system(rows: &[Vec<i64>], ncoords: usize) -> TorusParametrization {
    let m = rows.len();
    let n = ncoords;
    let mut d: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            assert_eq!(
                r.len(),
                n,
                "row length must match the number of coordinates"
            );
            r.iter().map(|&x| x as i128).collect()
        })
        .collect();
    let mut q: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();

    let mut rank = 0;
    while rank < m.min(n) {
        // smallest nonzero entry in the remaining block
        let pivot = (rank..m)
            .flat_map(|i| (rank..n).map(move |j| (i, j)))
            .filter(|&(i, j)| d[i][j] != 0)
            .min_by_key(|&(i, j)| d[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        d.swap(rank, pi);
        swap_cols(&mut d, rank, pj);
        swap_cols(&mut q, rank, pj);
        loop {
            let p = d[rank][rank];
            let mut dirty = false;
            for i in rank + 1..m {
                let f = d[i][rank].div_euclid(p);
                if f != 0 {
                    for j in rank..n {
                        d[i][j] -= f * d[rank][j];
                    }
                }
                dirty |= d[i][rank] != 0;
            }
            for j in rank + 1..n {
                let f = d[rank][j].div_euclid(p);
                if f != 0 {
                    for row in d.iter_mut() {
                        row[j] -= f * row[rank];
                    }
                    for row in q.iter_mut() {
                        row[j] -= f * row[rank];
                    }
                }
                dirty |= d[rank][j] != 0;
            }
            if !dirty {
                break;
            }
            // a remainder is smaller than the pivot: move it into place
            let (bi, bj) = (rank..m)
                .map(|i| (i, rank))
                .chain((rank..n).map(|j| (rank, j)))
                .filter(|&(i, j)| d[i][j] != 0)
                .min_by_key(|&(i, j)| d[i][j].abs())
                .expect("pivot row or column is nonzero");
            d.swap(rank, bi);
            swap_cols(&mut d, rank, bj);
            swap_cols(&mut q, rank, bj);
        }
        rank += 1;
    }

    let mut free = Vec::new();
    let mut signs = Vec::new();
    for k in 0..n {
        if k < rank {
            if d[k][k].rem_euclid(2) == 0 {
                signs.push(k);
            }
        } else {
            free.push(k);
        }
    }
    TorusParametrization {
        exponents: q
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| i64::try_from(x).expect("exponent overflow"))
                    .collect()
            })
            .collect(),
        free,
        signs,
    }
}

fn swap_cols(mat: &mut [Vec<i128>], a: usize, b: usize) {
    if a != b {
        for row in mat.iter_mut() {
            row.swap(a, b);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn holds(rows: &[Vec<i64>], t: &[Rational]) -> bool {
        rows.iter().all(|r| {
            r.iter()
                .zip(t)
                .fold(Rational::one(), |acc, (&e, v)| acc * rational::pow(v, e))
                .is_one()
        })
    }

    #[test]
    fn square_forces_sign() {
        // t0^2 = 1
        let p = solve_monomial_system(&[vec![2]], 1);
        assert!(p.free.is_empty());
        assert_eq!(p.signs.len(), 1);
        assert_eq!(p.evaluate(&[], &[true]), vec![int(-1)]);
    }

    #[test]
    fn coprime_powers_force_one() {
        let p = solve_monomial_system(&[vec![2], vec![3]], 1);
        assert!(p.free.is_empty() && p.signs.is_empty());
    }

    #[test]
    fn samples_satisfy_system() {
        let rows = vec![vec![1, 1, -1, 0], vec![0, 2, 0, -2], vec![3, 0, 1, 1]];
        let p = solve_monomial_system(&rows, 4);
        assert_eq!(p.free.len(), 1);
        for pat in p.sign_patterns() {
            let t = p.evaluate(&[rat(3, 2)], &pat);
            assert!(holds(&rows, &t), "{t:?}");
            let sym = p.symbolic(&pat);
            let back: Vec<Rational> = sym.iter().map(|s| s.evaluate(&[rat(3, 2)])).collect();
            assert_eq!(back, t);
        }
    }
}
