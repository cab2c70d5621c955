use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::FlatnessError;
use crate::coxeter::{CoxeterMatrix, TriangleType};
use crate::deform::ParameterPoint;
use crate::exact::lattice::{solve_monomial_system, TorusParametrization};
use crate::exact::{LaurentPoly, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComponentKind {
    /// Points whose even-part algebra is a group algebra up to the torus action.
    GroupLemma,
    /// Points whose even-part algebra is the spin-twisted group algebra.
    SpinLemma,
}

/// One torus component of the flat locus of a finite triangle, in the
/// eigenvalue chart of the canonical triangle `0, 1, 2` with
/// `m_01 = p`, `m_12 = q`, `m_02 = r`.
///
/// Coordinates are ordered `t_{01,1..p}`, `t_{12,1..q}`, `t_{02,1..r}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocusComponent {
    pub kind: ComponentKind,
    pub triangle: TriangleType,
    /// Each row is an exponent vector `v` with `prod t^v = 1`.
    pub equations: Vec<Vec<i64>>,
    pub parametrization: TorusParametrization,
}

/// Coordinate index of `t_{12,k}` / `t_{23,k}` / `t_{13,k}` in the lemma
/// labelling (edges 12, 23, 13 of orders p, q, r).
struct Coords {
    p: usize,
    q: usize,
    r: usize,
}

impl Coords {
    fn len(&self) -> usize {
        self.p + self.q + self.r
    }
    fn t12(&self, k: u32) -> usize {
        k as usize - 1
    }
    fn t23(&self, k: u32) -> usize {
        self.p + k as usize - 1
    }
    fn t13(&self, k: u32) -> usize {
        self.p + self.q + k as usize - 1
    }
}

enum Var {
    A(u32),
    B(u32),
    C(u32),
}

fn row(c: &Coords, left: &[(Var, i64)], right: &[(Var, i64)]) -> Vec<i64> {
    let mut v = vec![0; c.len()];
    let idx = |x: &Var| match *x {
        Var::A(k) => c.t12(k),
        Var::B(k) => c.t23(k),
        Var::C(k) => c.t13(k),
    };
    for (x, e) in left {
        v[idx(x)] += e;
    }
    for (x, e) in right {
        v[idx(x)] -= e;
    }
    v
}

fn group_rows(c: &Coords, ty: TriangleType) -> Vec<Vec<i64>> {
    use Var::{A, B, C};
    match ty {
        TriangleType::Dihedral(n) => {
            let mut rows = vec![
                row(c, &[(A(2), 1), (B(2), 1)], &[(C(n), 1)]),
                row(c, &[(A(1), 1), (B(1), 1)], &[(C(n), 1)]),
            ];
            if n % 2 == 0 {
                rows.push(row(c, &[(A(2), 1), (B(1), 1)], &[(C(n / 2), 1)]));
                rows.push(row(c, &[(A(1), 1), (B(2), 1)], &[(C(n / 2), 1)]));
            }
            for i in (1..n).filter(|&i| 2 * i < n) {
                rows.push(row(
                    c,
                    &[(A(1), 1), (A(2), 1), (B(1), 1), (B(2), 1)],
                    &[(C(i), 1), (C(n - i), 1)],
                ));
            }
            rows
        }
        TriangleType::E233 => vec![
            row(c, &[(A(2), 1), (B(3), 1)], &[(C(3), 1)]),
            row(c, &[(A(2), 1), (B(1), 1)], &[(C(1), 1)]),
            row(c, &[(A(2), 1), (B(2), 1)], &[(C(2), 1)]),
            row(
                c,
                &[(A(1), 2), (A(2), 1), (B(1), 1), (B(2), 1), (B(3), 1)],
                &[(C(1), 1), (C(2), 1), (C(3), 1)],
            ),
        ],
        TriangleType::E234 => vec![
            row(c, &[(A(2), 1), (B(3), 1)], &[(C(4), 1)]),
            row(c, &[(A(1), 1), (B(3), 1)], &[(C(2), 1)]),
            row(
                c,
                &[(A(1), 1), (A(2), 1), (B(1), 1), (B(2), 1)],
                &[(C(2), 1), (C(4), 1)],
            ),
            row(
                c,
                &[(A(1), 1), (A(2), 2), (B(1), 1), (B(2), 1), (B(3), 1)],
                &[(C(1), 1), (C(2), 1), (C(3), 1)],
            ),
            row(
                c,
                &[(A(1), 2), (A(2), 1), (B(1), 1), (B(2), 1), (B(3), 1)],
                &[(C(1), 1), (C(3), 1), (C(4), 1)],
            ),
        ],
        TriangleType::E235 => vec![
            row(c, &[(A(2), 1), (B(3), 1)], &[(C(5), 1)]),
            row(
                c,
                &[(A(1), 2), (A(2), 1), (B(1), 1), (B(2), 1), (B(3), 1)],
                &[(C(1), 1), (C(4), 1), (C(5), 1)],
            ),
            row(
                c,
                &[(A(1), 2), (A(2), 1), (B(1), 1), (B(2), 1), (B(3), 1)],
                &[(C(2), 1), (C(3), 1), (C(5), 1)],
            ),
            row(
                c,
                &[(A(1), 2), (A(2), 2), (B(1), 1), (B(2), 1), (B(3), 2)],
                &[(C(1), 1), (C(2), 1), (C(3), 1), (C(4), 1)],
            ),
            row(
                c,
                &[(A(1), 2), (A(2), 3), (B(1), 2), (B(2), 2), (B(3), 1)],
                &[(C(1), 1), (C(2), 1), (C(3), 1), (C(4), 1), (C(5), 1)],
            ),
        ],
        TriangleType::Infinite => unreachable!(),
    }
}

fn spin_rows(c: &Coords, ty: TriangleType) -> Option<Vec<Vec<i64>>> {
    use Var::{A, B, C};
    let quad = [(A(1), 1), (A(2), 1), (B(1), 1), (B(2), 1)];
    let rows = match ty {
        TriangleType::Dihedral(n) if n % 2 == 0 => (1..=n / 2)
            .map(|i| row(c, &quad, &[(C(i), 1), (C(n + 1 - i), 1)]))
            .collect(),
        TriangleType::Dihedral(_) => return None,
        TriangleType::E233 => vec![
            row(c, &quad, &[(C(1), 1), (C(2), 1)]),
            row(
                c,
                &[(A(1), 1), (A(2), 1), (B(1), 1), (B(3), 1)],
                &[(C(1), 1), (C(3), 1)],
            ),
            row(
                c,
                &[(A(1), 1), (A(2), 1), (B(2), 1), (B(3), 1)],
                &[(C(2), 1), (C(3), 1)],
            ),
        ],
        TriangleType::E234 => vec![
            row(
                c,
                &[(A(1), 1), (A(2), 1), (B(1), 1), (B(3), 1)],
                &[(C(1), 1), (C(4), 1)],
            ),
            row(
                c,
                &[(A(1), 1), (A(2), 1), (B(1), 1), (B(3), 1)],
                &[(C(2), 1), (C(3), 1)],
            ),
            row(
                c,
                &[(A(1), 2), (A(2), 2), (B(1), 1), (B(2), 2), (B(3), 1)],
                &[(C(1), 1), (C(2), 1), (C(3), 1), (C(4), 1)],
            ),
        ],
        TriangleType::E235 => vec![
            row(c, &quad, &[(C(1), 1), (C(5), 1)]),
            row(c, &quad, &[(C(2), 1), (C(4), 1)]),
            row(
                c,
                &[(A(1), 2), (A(2), 2), (B(1), 1), (B(2), 1), (B(3), 2)],
                &[(C(1), 1), (C(2), 1), (C(4), 1), (C(5), 1)],
            ),
            row(
                c,
                &[(A(1), 3), (A(2), 3), (B(1), 2), (B(2), 2), (B(3), 2)],
                &[(C(1), 1), (C(2), 1), (C(3), 2), (C(4), 1), (C(5), 1)],
            ),
        ],
        TriangleType::Infinite => unreachable!(),
    };
    Some(rows)
}

/// The torus components known to be flat for a finite triangle shape.
/// Shapes `(2, 2, n)` with `n` odd carry only the group component.
pub fn lemma_components(ty: TriangleType) -> Result<Vec<LocusComponent>, FlatnessError> {
    let (p, q, r) = ty.orders().ok_or(FlatnessError::InfiniteTriangle)?;
    let c = Coords {
        p: p as usize,
        q: q as usize,
        r: r as usize,
    };
    let mut out = Vec::new();
    let mut push = |kind, equations: Vec<Vec<i64>>| {
        let parametrization = solve_monomial_system(&equations, c.len());
        out.push(LocusComponent {
            kind,
            triangle: ty,
            equations,
            parametrization,
        });
    };
    push(ComponentKind::GroupLemma, group_rows(&c, ty));
    if let Some(rows) = spin_rows(&c, ty) {
        push(ComponentKind::SpinLemma, rows);
    }
    Ok(out)
}

/// Small nonzero rational with numerator and denominator in `1..=4`.
pub fn random_small_rational<R: Rng>(rng: &mut R) -> Rational {
    let n: i64 = rng.gen_range(1..=4);
    let d: i64 = rng.gen_range(1..=4);
    let sign = if rng.gen_bool(0.5) { -1 } else { 1 };
    Rational::new((sign * n).into(), d.into())
}

impl LocusComponent {
    /// `(p, q, r)` of the canonical triangle.
    pub fn orders(&self) -> (u32, u32, u32) {
        self.triangle
            .orders()
            .expect("components exist only for finite shapes")
    }

    /// The canonical triangle's matrix.
    pub fn matrix(&self) -> CoxeterMatrix {
        let (p, q, r) = self.orders();
        CoxeterMatrix::triangle(p, q, r)
    }

    /// Split flat coordinates back into the three edges of the canonical
    /// triangle.
    pub fn point_from_coords(&self, t: &[Rational]) -> ParameterPoint {
        let (p, q, _) = self.orders();
        let (p, q) = (p as usize, q as usize);
        let entries = BTreeMap::from([
            ((0, 1), t[..p].to_vec()),
            ((1, 2), t[p..p + q].to_vec()),
            ((0, 2), t[p + q..].to_vec()),
        ]);
        ParameterPoint::new(&self.matrix(), entries).expect("component coordinates are nonzero")
    }

    /// A random point on the component.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> ParameterPoint {
        let par = &self.parametrization;
        let free: Vec<Rational> = par
            .free
            .iter()
            .map(|_| random_small_rational(rng))
            .collect();
        let signs: Vec<bool> = par.signs.iter().map(|_| rng.gen_bool(0.5)).collect();
        self.point_from_coords(&par.evaluate(&free, &signs))
    }

    /// Whether every defining monomial equation holds at the coordinates.
    pub fn contains_coords(&self, t: &[Rational]) -> bool {
        self.equations.iter().all(|row| {
            row.iter()
                .zip(t)
                .fold(Rational::from_integer(1.into()), |acc, (&e, x)| {
                    acc * crate::exact::rational::pow(x, e)
                })
                == Rational::from_integer(1.into())
        })
    }

    /// Symbolic coordinates for each sign pattern of the parametrization.
    pub fn symbolic_points(&self) -> Vec<Vec<LaurentPoly>> {
        let par = &self.parametrization;
        par.sign_patterns()
            .iter()
            .map(|s| par.symbolic(s))
            .collect()
    }
}

/// Flat coordinates `t_{01,*}, t_{12,*}, t_{02,*}` of a point of the
/// canonical triangle.
pub fn coords_of(u: &ParameterPoint) -> Vec<Rational> {
    let mut t = Vec::new();
    for e in [(0, 1), (1, 2), (0, 2)] {
        t.extend_from_slice(u.edge(e.0, e.1).expect("canonical triangle edge"));
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flatness::{coefficients_from_eigenvalues, tilde_equations};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const SHAPES: [TriangleType; 7] = [
        TriangleType::Dihedral(2),
        TriangleType::Dihedral(3),
        TriangleType::Dihedral(4),
        TriangleType::Dihedral(5),
        TriangleType::E233,
        TriangleType::E234,
        TriangleType::E235,
    ];

    #[test]
    fn symbolic_containment() {
        for ty in SHAPES {
            let eqs = tilde_equations(ty).unwrap();
            let (p, q, _) = ty.orders().unwrap();
            let (p, q) = (p as usize, q as usize);
            for comp in lemma_components(ty).unwrap() {
                for t in comp.symbolic_points() {
                    let inv: Vec<LaurentPoly> =
                        t[p + q..].iter().map(|x| x.pow(-1).unwrap()).collect();
                    let c = coefficients_from_eigenvalues(&t[..p], &t[p..p + q], &inv);
                    for e in &eqs {
                        assert!(e.holds(&c), "{ty:?} {:?}: {e}", comp.kind);
                    }
                }
            }
        }
    }

    #[test]
    fn samples_satisfy_equations() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for ty in SHAPES {
            for comp in lemma_components(ty).unwrap() {
                for _ in 0..5 {
                    let u = comp.sample(&mut rng);
                    assert!(comp.contains_coords(&coords_of(&u)));
                }
            }
        }
    }
}
