use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::lemmas::random_small_rational;
use crate::coxeter::{parabolic_index, triangle_type, triangles, CoxeterMatrix};
use crate::deform::{DeformError, SymmetricPoint};
use crate::exact::lattice::{solve_monomial_system, TorusParametrization};
use crate::exact::rational::{self, serde_q};
use crate::exact::Rational;

/// One scalar `t_ij` per finite edge `i < j`; the edge polynomial is
/// `z^m + (-1)^m t_ij` and `t_ji = 1 / t_ij`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThetaPoint {
    entries: BTreeMap<(usize, usize), Rational>,
}

#[derive(Serialize, Deserialize)]
struct ThetaRecord {
    edge: [usize; 2],
    #[serde(with = "serde_q")]
    t: Rational,
}

impl ThetaPoint {
    pub fn new(
        m: &CoxeterMatrix,
        entries: BTreeMap<(usize, usize), Rational>,
    ) -> Result<Self, DeformError> {
        for (&(i, j), t) in &entries {
            if i >= j || j >= m.rank() || m.m(i, j).is_none() {
                return Err(DeformError::UnexpectedEdge(i, j));
            }
            if t.is_zero() {
                return Err(DeformError::ZeroParameter(i, j));
            }
        }
        if let Some((i, j, _)) = m
            .finite_edges()
            .into_iter()
            .find(|&(i, j, _)| !entries.contains_key(&(i, j)))
        {
            return Err(DeformError::MissingEdge(i, j));
        }
        Ok(ThetaPoint { entries })
    }

    pub fn ones(m: &CoxeterMatrix) -> Self {
        ThetaPoint {
            entries: m
                .finite_edges()
                .into_iter()
                .map(|(i, j, _)| ((i, j), Rational::one()))
                .collect(),
        }
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), Rational> {
        &self.entries
    }

    /// `t_ij` in either orientation.
    pub fn t(&self, i: usize, j: usize) -> Option<Rational> {
        if i < j {
            self.entries.get(&(i, j)).cloned()
        } else {
            self.entries.get(&(j, i)).map(Rational::recip)
        }
    }

    /// The symmetric chart: every middle coefficient vanishes and the
    /// constant one is `t_ij`.
    pub fn to_symmetric(&self, m: &CoxeterMatrix) -> SymmetricPoint {
        let entries = self
            .entries
            .iter()
            .map(|(&(i, j), t)| {
                let order = m.m(i, j).expect("finite edge") as usize;
                let mut e = vec![Rational::zero(); order];
                e[order - 1] = t.clone();
                ((i, j), e)
            })
            .collect();
        SymmetricPoint::new(m, entries).expect("theta points cover every finite edge")
    }

    /// JSON list of `{"edge": [i, j], "t": "p/q"}` with 1-based vertices.
    pub fn to_json(&self) -> String {
        let recs: Vec<ThetaRecord> = self
            .entries
            .iter()
            .map(|(&(i, j), t)| ThetaRecord {
                edge: [i + 1, j + 1],
                t: t.clone(),
            })
            .collect();
        serde_json::to_string_pretty(&recs).expect("serializable")
    }

    pub fn from_json(m: &CoxeterMatrix, s: &str) -> Result<Self, DeformError> {
        let recs: Vec<ThetaRecord> =
            serde_json::from_str(s).map_err(|e| DeformError::Json(e.to_string()))?;
        let mut entries = BTreeMap::new();
        for r in recs {
            let [a, b] = r.edge;
            if a == 0 || b == 0 {
                return Err(DeformError::Json("vertices are 1-based".into()));
            }
            let (i, j) = (a - 1, b - 1);
            let (key, t) = if i < j {
                ((i, j), r.t)
            } else {
                ((j, i), r.t.recip())
            };
            if entries.insert(key, t).is_some() {
                return Err(DeformError::DuplicateEdge(key.0, key.1));
            }
        }
        Self::new(m, entries)
    }
}

/// `t_ij^{[W_ijk : W_ij]} t_jk^{[W_ijk : W_jk]} t_ki^{[W_ijk : W_ki]}` for a
/// finite triangle `i < j < k`.
pub fn theta_triangle_product(
    m: &CoxeterMatrix,
    t: &ThetaPoint,
    delta: [usize; 3],
) -> Option<Rational> {
    let [i, j, k] = delta;
    let mut acc = Rational::one();
    for (a, b) in [(i, j), (j, k), (k, i)] {
        let idx = parabolic_index(m, delta, (a, b)).ok()?;
        acc *= rational::pow(&t.t(a, b)?, idx as i64);
    }
    Some(acc)
}

/// Whether every finite triangle's product equals one.
pub fn theta_membership(t: &ThetaPoint, m: &CoxeterMatrix) -> bool {
    triangles(m)
        .into_iter()
        .filter(|&d| triangle_type(m, d).is_ok_and(|ty| ty.is_finite()))
        .all(|d| theta_triangle_product(m, t, d).is_some_and(|p| p.is_one()))
}

/// Monomial description of the group-like points: one coordinate per finite
/// edge in `finite_edges` order, one row per finite triangle.
pub fn theta_torus(m: &CoxeterMatrix) -> TorusParametrization {
    let edges: Vec<(usize, usize)> = m
        .finite_edges()
        .into_iter()
        .map(|(i, j, _)| (i, j))
        .collect();
    let mut rows = Vec::new();
    for delta in triangles(m) {
        if !triangle_type(m, delta).is_ok_and(|ty| ty.is_finite()) {
            continue;
        }
        let [i, j, k] = delta;
        let mut row = vec![0i64; edges.len()];
        for (a, b) in [(i, j), (j, k), (k, i)] {
            let idx = parabolic_index(m, delta, (a, b)).expect("finite triangle") as i64;
            let (key, sign) = if a < b { ((a, b), 1) } else { ((b, a), -1) };
            let pos = edges.iter().position(|&e| e == key).expect("finite edge");
            row[pos] += sign * idx;
        }
        rows.push(row);
    }
    solve_monomial_system(&rows, edges.len())
}

/// A random rational group-like point.
pub fn sample_theta<R: Rng>(m: &CoxeterMatrix, rng: &mut R) -> ThetaPoint {
    let par = theta_torus(m);
    let free: Vec<Rational> = par
        .free
        .iter()
        .map(|_| random_small_rational(rng))
        .collect();
    let signs: Vec<bool> = par.signs.iter().map(|_| rng.gen_bool(0.5)).collect();
    let values = par.evaluate(&free, &signs);
    let entries = m
        .finite_edges()
        .into_iter()
        .zip(values)
        .map(|((i, j, _), t)| ((i, j), t))
        .collect();
    ThetaPoint { entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn h3_products() {
        let m = CoxeterMatrix::type_h3();
        assert_eq!(
            (m.m(0, 1), m.m(1, 2), m.m(0, 2)),
            (Some(2), Some(3), Some(5))
        );
        let mk = |a: Rational, b: Rational, c: Rational| {
            ThetaPoint::new(&m, BTreeMap::from([((0, 1), a), ((1, 2), b), ((0, 2), c)])).unwrap()
        };
        assert!(theta_membership(&ThetaPoint::ones(&m), &m));
        assert!(theta_membership(&mk(int(4), rat(1, 8), int(1)), &m));
        assert!(!theta_membership(&mk(int(2), int(1), int(1)), &m));
    }

    #[test]
    fn samples_are_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for m in [
            CoxeterMatrix::type_a(3),
            CoxeterMatrix::type_b(3),
            CoxeterMatrix::type_h3(),
            CoxeterMatrix::type_a(4),
        ] {
            for _ in 0..5 {
                assert!(theta_membership(&sample_theta(&m, &mut rng), &m));
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let m = CoxeterMatrix::type_a(3);
        let t = sample_theta(&m, &mut ChaCha8Rng::seed_from_u64(2));
        assert_eq!(ThetaPoint::from_json(&m, &t.to_json()).unwrap(), t);
    }
}
