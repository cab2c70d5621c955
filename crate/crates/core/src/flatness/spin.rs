use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::FlatnessError;
use crate::coxeter::CoxeterMatrix;

/// Largest rank for which the `2^r`-dimensional matrices are built.
const MAX_RANK: usize = 10;

type Matrix = Vec<Vec<f64>>;

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut c = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

/// Symmetric bilinear form with `B(e_i, e_i) = 1` and
/// `B(e_i, e_j) = -cos(pi / m_ij)`, or `-1` for infinite edges.
fn gram(m: &CoxeterMatrix) -> Matrix {
    let r = m.rank();
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| match (i == j, m.m(i, j)) {
                    (true, _) => 1.0,
                    (false, Some(k)) => -(PI / k as f64).cos(),
                    (false, None) => -1.0,
                })
                .collect()
        })
        .collect()
}

/// Matrices of `e_i` acting on the exterior algebra by
/// `v -> e_i ^ v + contraction(e_i, v)`, a representation of the Clifford
/// algebra with `e_i e_j + e_j e_i = 2 B(e_i, e_j)`. Basis vectors are
/// subsets of the vertices encoded as bit masks.
pub fn clifford_generators(m: &CoxeterMatrix) -> Result<Vec<Matrix>, FlatnessError> {
    let r = m.rank();
    if r > MAX_RANK {
        return Err(FlatnessError::RankTooLarge(r));
    }
    let b = gram(m);
    let n = 1usize << r;
    let mut out = Vec::with_capacity(r);
    for i in 0..r {
        let mut mat = vec![vec![0.0; n]; n];
        for mask in 0..n {
            // wedge: e_i ^ e_S, sign from moving e_i past the smaller indices
            if mask >> i & 1 == 0 {
                let sign = if (mask & ((1 << i) - 1)).count_ones() % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                mat[mask | 1 << i][mask] += sign;
            }
            // contraction: sum over members k of (-1)^{position of k} B(e_i, e_k) e_{S - k}
            for (pos, k) in (0..r).filter(|&k| mask >> k & 1 == 1).enumerate() {
                let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
                mat[mask & !(1 << k)][mask] += sign * b[i][k];
            }
        }
        out.push(mat);
    }
    Ok(out)
}

/// Largest entrywise deviation of `(e_i e_j)^m` from `(-1)^{m+1}` per
/// finite edge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinReport {
    pub edges: Vec<(usize, usize, u32, f64)>,
    pub max_deviation: f64,
}

/// Checks `(e_i e_j)^{m_ij} = (-1)^{m_ij + 1}` in floating point for every
/// finite edge.
pub fn verify_spin_numeric(m: &CoxeterMatrix, tolerance: f64) -> Result<SpinReport, FlatnessError> {
    let e = clifford_generators(m)?;
    let n = 1usize << m.rank();
    let mut edges = Vec::new();
    let mut worst = 0.0f64;
    for (i, j, order) in m.finite_edges() {
        let prod = matmul(&e[i], &e[j]);
        let power = (0..order).fold(identity(n), |acc, _| matmul(&acc, &prod));
        let target = if order % 2 == 0 { -1.0 } else { 1.0 };
        let mut dev = 0.0f64;
        for (a, row) in power.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                let want = if a == c { target } else { 0.0 };
                dev = dev.max((v - want).abs());
            }
        }
        if dev > tolerance {
            return Err(FlatnessError::SpinTolerance {
                i,
                j,
                deviation: dev,
                tolerance,
            });
        }
        worst = worst.max(dev);
        edges.push((i, j, order, dev));
    }
    Ok(SpinReport {
        edges,
        max_deviation: worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clifford_relations_hold() {
        let m = CoxeterMatrix::type_b(3);
        let e = clifford_generators(&m).unwrap();
        let b = gram(&m);
        for i in 0..3 {
            for j in 0..3 {
                let s = matmul(&e[i], &e[j]);
                let t = matmul(&e[j], &e[i]);
                for a in 0..8 {
                    for c in 0..8 {
                        let want = if a == c { 2.0 * b[i][j] } else { 0.0 };
                        assert!((s[a][c] + t[a][c] - want).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn dihedral_powers() {
        for k in 2..=6 {
            let r = verify_spin_numeric(&CoxeterMatrix::dihedral(k), 1e-9).unwrap();
            assert!(r.max_deviation < 1e-9);
        }
    }
}
