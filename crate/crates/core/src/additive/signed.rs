use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::AdditiveError;
use crate::coxeter::{CoxeterGroup, CoxeterMatrix, LengthBound, Word, WordSolver};
use crate::exact::Rational;
use crate::flatness::{BraidRewriting, EdgeMonomial};

/// Sparse vector over the group elements of a signed word algebra.
pub type Vector = BTreeMap<usize, Rational>;

/// `T_x T_y` in the graded algebra at `t = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignedProduct {
    /// Lengths do not add.
    Zero,
    Term { sign: i8, element: usize },
    /// `l(x) + l(y)` exceeds the truncation.
    Beyond,
}

/// The algebra on `T_x` with `s_i^2 = 0` and braid moves weighted by
/// `(-1)^{m+1}`: `T_x T_y = ±T_{xy}` when lengths add, else zero.
#[derive(Debug, Clone)]
pub struct SignedWordAlgebra {
    group: CoxeterGroup,
    truncation: Option<usize>,
    table: Vec<Vec<SignedProduct>>,
}

/// `±1` of a potential at `t = 1`, with every loop of the search required
/// to have sign `+1`.
fn unit_signs(
    m: &CoxeterMatrix,
    group: &CoxeterGroup,
) -> Result<Vec<std::collections::HashMap<Vec<usize>, EdgeMonomial>>, AdditiveError> {
    let edges: Vec<(usize, usize)> = m
        .finite_edges()
        .into_iter()
        .map(|(i, j, _)| (i, j))
        .collect();
    let mut solver = WordSolver::new(m);
    let mut loops = HashSet::new();
    let mut out = Vec::with_capacity(group.len());
    for x in group.elements() {
        let count = solver
            .reduced_words(x)
            .map_err(|e| AdditiveError::Coxeter(e.to_string()))?
            .len();
        out.push(BraidRewriting::class_potential(
            m,
            &edges,
            x.word().letters(),
            count,
            &mut loops,
        ));
    }
    if loops.iter().any(|l| l.sign() < 0) {
        return Err(AdditiveError::SignConflict);
    }
    Ok(out)
}

impl SignedWordAlgebra {
    /// Whole group; requires a finite group.
    pub fn full(m: &CoxeterMatrix) -> Result<Self, AdditiveError> {
        let group =
            CoxeterGroup::enumerate(m, LengthBound::All).map_err(|_| AdditiveError::InfiniteGroup)?;
        Self::from_group(m, group, None)
    }

    /// Elements of length at most `n`; products past `n` are [`SignedProduct::Beyond`].
    pub fn truncated(m: &CoxeterMatrix, n: usize) -> Result<Self, AdditiveError> {
        let group = CoxeterGroup::enumerate(m, LengthBound::UpTo(n))
            .map_err(|e| AdditiveError::Coxeter(e.to_string()))?;
        let truncation = (!group.is_complete()).then_some(n);
        Self::from_group(m, group, truncation)
    }

    fn from_group(
        m: &CoxeterMatrix,
        group: CoxeterGroup,
        truncation: Option<usize>,
    ) -> Result<Self, AdditiveError> {
        let potentials = unit_signs(m, &group)?;
        let n = group.len();
        let table = (0..n)
            .into_par_iter()
            .map(|x| {
                let wx = group.element(x).word();
                (0..n)
                    .map(|y| {
                        let len = group.length(x) + group.length(y);
                        if truncation.is_some_and(|cap| len > cap) {
                            return SignedProduct::Beyond;
                        }
                        let concat = wx.concat(group.element(y).word());
                        let z = group.evaluate(&concat).expect("within the enumerated ball");
                        if group.length(z) < len {
                            return SignedProduct::Zero;
                        }
                        let sign = potentials[z][concat.letters()].sign() as i8;
                        SignedProduct::Term { sign, element: z }
                    })
                    .collect()
            })
            .collect();
        Ok(SignedWordAlgebra {
            group,
            truncation,
            table,
        })
    }

    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }

    /// Number of basis elements `T_x` held.
    pub fn dimension(&self) -> usize {
        self.group.len()
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub fn product(&self, x: usize, y: usize) -> SignedProduct {
        self.table[x][y]
    }

    pub fn basis_vector(&self, x: usize) -> Vector {
        BTreeMap::from([(x, Rational::one())])
    }

    /// `T_{s_i}`.
    pub fn generator(&self, i: usize) -> Vector {
        let s = self
            .group
            .evaluate(&Word::new(vec![i]))
            .expect("generators have length one");
        self.basis_vector(s)
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Result<Vector, AdditiveError> {
        let mut out = Vector::new();
        for (&x, cx) in a {
            for (&y, cy) in b {
                match self.table[x][y] {
                    SignedProduct::Zero => {}
                    SignedProduct::Beyond => {
                        return Err(AdditiveError::Truncated(self.truncation.unwrap_or(0)))
                    }
                    SignedProduct::Term { sign, element } => {
                        let c = cx * cy;
                        let entry = out.entry(element).or_insert_with(Rational::zero);
                        if sign < 0 {
                            *entry -= c;
                        } else {
                            *entry += c;
                        }
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// First triple with `(T_x T_y) T_z != T_x (T_y T_z)`, checked
    /// exhaustively where both sides are within the truncation.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dimension();
        let apply = |p: SignedProduct, z: usize, left: bool| match p {
            SignedProduct::Zero => Some(SignedProduct::Zero),
            SignedProduct::Beyond => None,
            SignedProduct::Term { sign, element } => {
                let q = if left {
                    self.table[element][z]
                } else {
                    self.table[z][element]
                };
                Some(match q {
                    SignedProduct::Term { sign: s2, element } => SignedProduct::Term {
                        sign: sign * s2,
                        element,
                    },
                    other => other,
                })
            }
        };
        (0..n).into_par_iter().find_map_first(|x| {
            for y in 0..n {
                for z in 0..n {
                    let left = apply(self.table[x][y], z, true);
                    let right = apply(self.table[y][z], x, false);
                    match (left, right) {
                        (Some(SignedProduct::Beyond), _) | (_, Some(SignedProduct::Beyond)) => {}
                        (Some(l), Some(r)) if l != r => return Some((x, y, z)),
                        _ => {}
                    }
                }
            }
            None
        })
    }

    /// Cross-check against the transition tables of the twisted-algebra
    /// rewriting at `t = 1`, which builds products letter by letter instead
    /// of from potentials of the concatenated word.
    pub fn agrees_with_rewriting(&self, rw: &BraidRewriting) -> bool {
        let n = self.dimension();
        n == rw.group().len()
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    let (mono, deletions, z) = rw.product(x, y);
                    match self.table[x][y] {
                        SignedProduct::Zero => deletions > 0,
                        SignedProduct::Term { sign, element } => {
                            deletions == 0 && element == z && mono.sign() as i8 == sign
                        }
                        SignedProduct::Beyond => false,
                    }
                })
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::Order;

    fn product_of(alg: &SignedWordAlgebra, a: &[usize], b: &[usize]) -> SignedProduct {
        let g = alg.group();
        let x = g.evaluate(&Word::new(a.to_vec())).unwrap();
        let y = g.evaluate(&Word::new(b.to_vec())).unwrap();
        alg.product(x, y)
    }

    #[test]
    fn small_tables() {
        let a1 = SignedWordAlgebra::full(&CoxeterMatrix::type_a(1)).unwrap();
        assert_eq!(product_of(&a1, &[0], &[0]), SignedProduct::Zero);

        let i22 = SignedWordAlgebra::full(&CoxeterMatrix::dihedral(2)).unwrap();
        let s01 = i22.group().evaluate(&Word::new(vec![0, 1])).unwrap();
        assert_eq!(
            product_of(&i22, &[0], &[1]),
            SignedProduct::Term {
                sign: 1,
                element: s01
            }
        );
        assert_eq!(
            product_of(&i22, &[1], &[0]),
            SignedProduct::Term {
                sign: -1,
                element: s01
            }
        );

        let a2 = SignedWordAlgebra::full(&CoxeterMatrix::type_a(2)).unwrap();
        let top = a2.group().evaluate(&Word::new(vec![0, 1, 0])).unwrap();
        assert_eq!(
            product_of(&a2, &[0, 1], &[0]),
            SignedProduct::Term {
                sign: 1,
                element: top
            }
        );
        assert_eq!(
            product_of(&a2, &[1, 0], &[1]),
            SignedProduct::Term {
                sign: 1,
                element: top
            }
        );
    }

    #[test]
    fn associative_and_matches_rewriting() {
        for m in [
            CoxeterMatrix::type_a(3),
            CoxeterMatrix::type_b(3),
            CoxeterMatrix::dihedral(6),
        ] {
            let alg = SignedWordAlgebra::full(&m).unwrap();
            assert_eq!(alg.associativity_failure(), None);
            assert!(alg.agrees_with_rewriting(&BraidRewriting::new(&m).unwrap()));
        }
    }

    #[test]
    fn truncated_affine() {
        let m = CoxeterMatrix::affine_a(2);
        let alg = SignedWordAlgebra::truncated(&m, 4).unwrap();
        assert_eq!(alg.truncation(), Some(4));
        assert_eq!(alg.associativity_failure(), None);
        let inf = CoxeterMatrix::from_edges(2, &[(1, 2, Order::Infinite)]).unwrap();
        let alg = SignedWordAlgebra::truncated(&inf, 3).unwrap();
        let s0 = alg.generator(0);
        let s1 = alg.generator(1);
        let x = alg.mul(&alg.mul(&s0, &s1).unwrap(), &s0).unwrap();
        assert!(alg.mul(&x, &s1).is_err());
    }
}
