use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::equations::{tilde_equations, TriangleCoefficients};
use super::lemmas::random_small_rational;
use super::FlatnessError;
use crate::coxeter::{triangle_type, triangles, CoxeterMatrix, Order, TriangleType};
use crate::deform::{ParameterPoint, SymmetricPoint};
use crate::exact::{elementary_symmetric_all, Rational};

/// Outcome for one triangle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleVerdict {
    /// 1-based vertex labels.
    pub vertices: [usize; 3],
    /// `"inf"` or the sorted orders, e.g. `"235"`.
    pub shape: String,
    /// Infinite triangles impose no condition.
    pub auto_pass: bool,
    pub member: bool,
    /// Identifiers of failing equations, in equation order.
    pub failed: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalVerdict {
    pub member: bool,
    pub triangles: Vec<TriangleVerdict>,
}

impl GlobalVerdict {
    pub fn failing(&self) -> impl Iterator<Item = &TriangleVerdict> {
        self.triangles.iter().filter(|t| !t.member)
    }
}

/// Lexicographically least ordering `(x, y, z)` of `0, 1, 2` with
/// `m_xy = p`, `m_yz = q`, `m_xz = r`, where `(p, q, r)` are the sorted
/// orders.
pub fn canonical_relabeling(orders: impl Fn(usize, usize) -> u32) -> [usize; 3] {
    let mut sorted = [orders(0, 1), orders(1, 2), orders(0, 2)];
    sorted.sort_unstable();
    let [p, q, r] = sorted;
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    *PERMS
        .iter()
        .find(|s| orders(s[0], s[1]) == p && orders(s[1], s[2]) == q && orders(s[0], s[2]) == r)
        .expect("some ordering matches the sorted orders")
}

/// `alpha`, `beta`, `gamma` of a three-vertex chart under a given vertex
/// ordering; `gamma` is read on the edge oriented from the third vertex
/// back to the first.
pub fn coefficients_under(
    e: &SymmetricPoint,
    order: [usize; 3],
) -> Result<TriangleCoefficients<Rational>, FlatnessError> {
    let [x, y, z] = order;
    let get = |a: usize, b: usize| e.oriented(a, b).ok_or(FlatnessError::InfiniteTriangle);
    let c = TriangleCoefficients {
        alpha: get(x, y)?,
        beta: get(y, z)?,
        gamma: get(z, x)?,
    };
    if [&c.alpha, &c.beta, &c.gamma]
        .iter()
        .any(|v| v.last().is_none_or(Zero::is_zero))
    {
        return Err(FlatnessError::ZeroConstant);
    }
    Ok(c)
}

/// Coefficients from eigenvalue coordinates in the lemma labelling; `gamma`
/// uses the inverted closing-edge values.
pub fn coefficients_from_eigenvalues<T>(
    t12: &[T],
    t23: &[T],
    t13_inverted: &[T],
) -> TriangleCoefficients<T>
where
    T: Clone + Zero + One,
    for<'a> &'a T: std::ops::Add<&'a T, Output = T> + std::ops::Mul<&'a T, Output = T>,
{
    let e = |v: &[T]| elementary_symmetric_all(v)[1..].to_vec();
    TriangleCoefficients {
        alpha: e(t12),
        beta: e(t23),
        gamma: e(t13_inverted),
    }
}

fn shape_of(e: &SymmetricPoint) -> Result<TriangleType, FlatnessError> {
    let order = |a: usize, b: usize| {
        e.entries()
            .get(&(a.min(b), a.max(b)))
            .map(|v| Order::Finite(v.len() as u32))
            .unwrap_or(Order::Infinite)
    };
    Ok(TriangleType::from_orders([
        order(0, 1),
        order(1, 2),
        order(0, 2),
    ]))
}

/// Membership of a three-vertex chart (vertices `0, 1, 2`) in the flat
/// locus of its triangle. Returns the failing equation identifiers.
pub fn check_tilde_membership(e: &SymmetricPoint) -> Result<Vec<String>, FlatnessError> {
    let ty = shape_of(e)?;
    let eqs = tilde_equations(ty)?;
    let len = |a: usize, b: usize| e.entries()[&(a.min(b), a.max(b))].len() as u32;
    let order = canonical_relabeling(len);
    let c = coefficients_under(e, order)?;
    Ok(eqs
        .into_iter()
        .filter(|q| !q.holds(&c))
        .map(|q| q.id)
        .collect())
}

/// Per-triangle membership over every 3-subset of the vertices.
pub fn check_global_membership(
    m: &CoxeterMatrix,
    e: &SymmetricPoint,
) -> Result<GlobalVerdict, FlatnessError> {
    let mut out = Vec::new();
    for delta in triangles(m) {
        let ty = triangle_type(m, delta).expect("triangles are valid");
        let vertices = delta.map(|v| v + 1);
        if !ty.is_finite() {
            out.push(TriangleVerdict {
                vertices,
                shape: ty.tag(),
                auto_pass: true,
                member: true,
                failed: vec![],
            });
            continue;
        }
        let failed = check_tilde_membership(&e.restrict(&delta))?;
        out.push(TriangleVerdict {
            vertices,
            shape: ty.tag(),
            auto_pass: false,
            member: failed.is_empty(),
            failed,
        });
    }
    Ok(GlobalVerdict {
        member: out.iter().all(|t| t.member),
        triangles: out,
    })
}

/// Rejection sampler for points off the flat locus: eigenvalues are small
/// random rationals, and points accepted by the global membership test are
/// redrawn.
pub fn sample_off_locus<R: Rng>(m: &CoxeterMatrix, rng: &mut R) -> ParameterPoint {
    loop {
        let entries = m
            .finite_edges()
            .into_iter()
            .map(|(i, j, k)| ((i, j), (0..k).map(|_| random_small_rational(rng)).collect()))
            .collect();
        let u = ParameterPoint::new(m, entries).expect("nonzero entries on every finite edge");
        if check_global_membership(m, &u.to_symmetric()).is_ok_and(|v| !v.member) {
            return u;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use std::collections::BTreeMap;

    fn e222(alpha: [i64; 2], beta: [i64; 2], gamma: [i64; 2]) -> SymmetricPoint {
        let m = CoxeterMatrix::triangle(2, 2, 2);
        let v = |a: [i64; 2]| a.iter().map(|&x| int(x)).collect::<Vec<_>>();
        SymmetricPoint::new(
            &m,
            BTreeMap::from([((0, 1), v(alpha)), ((1, 2), v(beta)), ((0, 2), v(gamma))]),
        )
        .unwrap()
    }

    #[test]
    fn unit_point_222() {
        assert!(check_tilde_membership(&e222([2, 1], [2, 1], [2, 1]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn failing_ids_222() {
        let failed = check_tilde_membership(&e222([3, -1], [2, 1], [0, 1])).unwrap();
        assert_eq!(
            failed,
            vec!["222.alpha1".to_string(), "222.beta1".to_string()]
        );
    }

    #[test]
    fn off_locus_samples_fail_membership() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let m = CoxeterMatrix::triangle(2, 3, 4);
        for _ in 0..5 {
            let u = sample_off_locus(&m, &mut rng);
            assert!(
                !check_global_membership(&m, &u.to_symmetric())
                    .unwrap()
                    .member
            );
        }
    }

    #[test]
    fn relabeling_prefers_identity() {
        let m = CoxeterMatrix::triangle(2, 3, 5);
        let o = |a: usize, b: usize| m.m(a, b).unwrap();
        assert_eq!(canonical_relabeling(o), [0, 1, 2]);
        let m = CoxeterMatrix::triangle(3, 2, 5);
        let o = |a: usize, b: usize| m.m(a, b).unwrap();
        assert_eq!(canonical_relabeling(o), [2, 1, 0]);
    }
}
