//! Graded and additive degenerations: the signed word algebra at `t = 1`,
//! the nilpotent algebra on the differences `alpha_ij`, their Hilbert
//! functions, and the comparison maps between them.

mod signed;

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use signed::{SignedProduct, SignedWordAlgebra, Vector};

use crate::coxeter::{is_finite, CoxeterGroup, CoxeterMatrix, LengthBound, Word, WordSolver};
use crate::deform::{build_a_full, default_degree_cap, ParameterPoint};
use crate::exact::{series_div_one_plus_z, Rational, TruncatedSeries};
use crate::ncalg::linalg::RowEchelon;
use crate::ncalg::{buchberger, hilbert_function, Dimension, NcPoly, Presentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdditiveError {
    #[error("the group is infinite")]
    InfiniteGroup,
    #[error("products of length above {0} are outside the truncation")]
    Truncated(usize),
    #[error("braid signs at t = 1 are inconsistent")]
    SignConflict,
    #[error("base vertex {0} is out of range")]
    BadBase(usize),
    #[error("parameters given for edge ({0}, {1}), which is not a finite edge")]
    UnexpectedEdge(usize, usize),
    #[error("Gröbner computation truncated before completion")]
    Inconclusive,
    #[error("{0}")]
    Coxeter(String),
    #[error("{0}")]
    Algebra(String),
}

/// Generators `alpha_{b j}` for `j != b`; every other `alpha_ij` is the
/// linear form `alpha_{b j} - alpha_{b i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditivePresentation {
    pub base: usize,
    /// Second index of each generator, in generator order.
    pub targets: Vec<usize>,
    pub presentation: Presentation,
}

impl AdditivePresentation {
    /// `alpha_ij` as a linear form in the generators.
    pub fn alpha(&self, i: usize, j: usize) -> NcPoly {
        &self.base_form(j) - &self.base_form(i)
    }

    fn base_form(&self, j: usize) -> NcPoly {
        match self.targets.iter().position(|&t| t == j) {
            Some(g) => NcPoly::generator(g as u16),
            None => NcPoly::zero(),
        }
    }
}

fn check_base(m: &CoxeterMatrix, base: usize) -> Result<(), AdditiveError> {
    if base < m.rank() {
        Ok(())
    } else {
        Err(AdditiveError::BadBase(base))
    }
}

fn additive_skeleton(m: &CoxeterMatrix, base: usize) -> AdditivePresentation {
    let targets: Vec<usize> = (0..m.rank()).filter(|&j| j != base).collect();
    let names = targets
        .iter()
        .map(|&j| format!("al{}_{}", base + 1, j + 1))
        .collect();
    AdditivePresentation {
        base,
        targets,
        presentation: Presentation::new(names, vec![]),
    }
}

/// The zero fiber: `alpha_ij^{m_ij} = 0` on every finite edge, linear
/// relations eliminated by expressing everything through the base vertex.
pub fn build_a0_plus(m: &CoxeterMatrix, base: usize) -> Result<AdditivePresentation, AdditiveError> {
    check_base(m, base)?;
    let mut ap = additive_skeleton(m, base);
    let rels = m
        .finite_edges()
        .into_iter()
        .map(|(i, j, order)| ap.alpha(i, j).pow(order))
        .collect();
    ap.presentation = Presentation::new(ap.presentation.names.clone(), rels);
    Ok(ap)
}

/// The fiber at `tau`: `prod_k (alpha_ij - tau_ijk) = 0` for `i < j`, with
/// missing edges at zero. Inhomogeneous unless `tau = 0`.
pub fn build_a_tau_plus(
    m: &CoxeterMatrix,
    base: usize,
    tau: &BTreeMap<(usize, usize), Vec<Rational>>,
) -> Result<AdditivePresentation, AdditiveError> {
    check_base(m, base)?;
    let edges = m.finite_edges();
    for &(i, j) in tau.keys() {
        if !edges.iter().any(|&(a, b, _)| (a, b) == (i, j)) {
            return Err(AdditiveError::UnexpectedEdge(i, j));
        }
    }
    let mut ap = additive_skeleton(m, base);
    let rels = edges
        .into_iter()
        .map(|(i, j, order)| {
            let alpha = ap.alpha(i, j);
            let zeros = vec![Rational::zero(); order as usize];
            tau.get(&(i, j))
                .unwrap_or(&zeros)
                .iter()
                .fold(NcPoly::one(), |acc, t| {
                    &acc * &(&alpha - &NcPoly::constant(t.clone()))
                })
        })
        .collect();
    ap.presentation = Presentation::new(ap.presentation.names.clone(), rels);
    Ok(ap)
}

/// The zero fiber extended by an involution `sigma` that negates every
/// `alpha`; the last generator is `sigma`.
pub fn build_a0_semidirect(m: &CoxeterMatrix, base: usize) -> Result<Presentation, AdditiveError> {
    let ap = build_a0_plus(m, base)?;
    let mut names = ap.presentation.names.clone();
    let sigma = NcPoly::generator(names.len() as u16);
    names.push("sigma".into());
    let mut rels = ap.presentation.relations.clone();
    rels.push(&sigma.pow(2) - &NcPoly::one());
    for g in 0..ap.targets.len() {
        let a = NcPoly::generator(g as u16);
        rels.push(&(&sigma * &a) + &(&a * &sigma));
    }
    Ok(Presentation::new(names, rels))
}

/// Graded dimensions of the zero fiber in degrees `0..=n`.
pub fn hilbert_a0_plus(m: &CoxeterMatrix, base: usize, n: usize) -> Result<Vec<u64>, AdditiveError> {
    let ap = build_a0_plus(m, base)?;
    hilbert_function(&ap.presentation, n).map_err(|e| AdditiveError::Algebra(e.to_string()))
}

/// Coefficients of `h(z) / (1 + z)` in degrees `0..=n`, with `h` the growth
/// series of the group.
pub fn expected_hilbert(m: &CoxeterMatrix, n: usize) -> Result<Vec<u64>, AdditiveError> {
    let g = CoxeterGroup::enumerate(m, LengthBound::UpTo(n))
        .map_err(|e| AdditiveError::Coxeter(e.to_string()))?;
    let mut counts = g.growth().counts;
    counts.resize(n + 1, 0);
    let q = series_div_one_plus_z(&TruncatedSeries::from_counts(&counts));
    Ok(q.to_integers()
        .expect("integer series")
        .into_iter()
        .map(|c| u64::try_from(c).expect("quotient coefficients are nonnegative"))
        .collect())
}

/// Computed and expected Hilbert coefficients side by side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertComparison {
    pub computed: Vec<u64>,
    pub expected: Vec<u64>,
}

impl HilbertComparison {
    pub fn matches(&self) -> bool {
        self.computed == self.expected
    }

    /// Coefficientwise `computed <= expected`.
    pub fn dominated(&self) -> bool {
        self.computed
            .iter()
            .zip(&self.expected)
            .all(|(c, e)| c <= e)
    }
}

pub fn compare_hilbert(
    m: &CoxeterMatrix,
    base: usize,
    n: usize,
) -> Result<HilbertComparison, AdditiveError> {
    Ok(HilbertComparison {
        computed: hilbert_a0_plus(m, base, n)?,
        expected: expected_hilbert(m, n)?,
    })
}

/// `b_x = alpha_{b i1} alpha_{i1 i2} ... alpha_{i(n-1) in}` for the ShortLex
/// word `s_i1 ... s_in` of an element `x` with `l(s_b x) > l(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningWord {
    pub letters: Vec<usize>,
    pub poly: NcPoly,
}

/// All `b_x` with `l(x) <= n`, in ShortLex order of `x`.
pub fn spanning_b_words(
    m: &CoxeterMatrix,
    base: usize,
    n: usize,
) -> Result<Vec<SpanningWord>, AdditiveError> {
    let ap = build_a0_plus(m, base)?;
    let g = CoxeterGroup::enumerate(m, LengthBound::UpTo(n))
        .map_err(|e| AdditiveError::Coxeter(e.to_string()))?;
    let mut solver = WordSolver::new(m);
    let mut out = Vec::new();
    for x in g.elements() {
        let letters = x.word().letters().to_vec();
        let mut prefixed = vec![base];
        prefixed.extend(&letters);
        let ascends = solver
            .is_reduced(&Word::new(prefixed))
            .map_err(|e| AdditiveError::Coxeter(e.to_string()))?;
        if !ascends {
            continue;
        }
        let mut prev = base;
        let mut poly = NcPoly::one();
        for &s in &letters {
            poly = &poly * &ap.alpha(prev, s);
            prev = s;
        }
        out.push(SpanningWord { letters, poly });
    }
    Ok(out)
}

/// Per degree: number of spanning words, rank of their normal forms, and
/// the Hilbert coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanningReport {
    pub counts: Vec<u64>,
    pub ranks: Vec<u64>,
    pub hilbert: Vec<u64>,
}

impl SpanningReport {
    pub fn is_basis(&self) -> bool {
        self.counts == self.ranks && self.ranks == self.hilbert
    }
}

/// Reduces every `b_x` of degree at most `n` modulo a Gröbner basis of the
/// zero fiber complete through degree `n` and ranks them degree by degree.
pub fn check_spanning_words(
    m: &CoxeterMatrix,
    base: usize,
    n: usize,
) -> Result<SpanningReport, AdditiveError> {
    let ap = build_a0_plus(m, base)?;
    let gb = buchberger(&ap.presentation, n.max(ap.presentation.max_degree()));
    let hilbert = gb.counts_by_length(n);
    let mut counts = vec![0u64; n + 1];
    let mut echelons: Vec<RowEchelon<_>> = (0..=n).map(|_| RowEchelon::new()).collect();
    for b in spanning_b_words(m, base, n)? {
        let d = b.letters.len();
        counts[d] += 1;
        let nf = gb.reduce(&b.poly);
        echelons[d].insert(nf.terms().iter().cloned());
    }
    Ok(SpanningReport {
        counts,
        ranks: echelons.iter().map(|e| e.rank() as u64).collect(),
        hilbert,
    })
}

/// Evaluates a polynomial in the generators of `ap` under `alpha_{b j} ->
/// s_b - s_j`.
pub fn phi0_image(
    alg: &SignedWordAlgebra,
    ap: &AdditivePresentation,
    p: &NcPoly,
) -> Result<Vector, AdditiveError> {
    let images: Vec<Vector> = ap
        .targets
        .iter()
        .map(|&j| difference(alg, ap.base, j))
        .collect();
    let mut out = Vector::new();
    for (word, c) in p.terms() {
        let mut v = alg.basis_vector(0);
        for &x in word.letters() {
            v = alg.mul(&v, &images[x as usize])?;
        }
        for (k, x) in v {
            *out.entry(k).or_insert_with(Rational::zero) += x * c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// `s_i - s_j` in the signed word algebra.
pub fn difference(alg: &SignedWordAlgebra, i: usize, j: usize) -> Vector {
    let mut v = alg.generator(i);
    for (k, c) in alg.generator(j) {
        *v.entry(k).or_insert_with(Rational::zero) -= c;
    }
    v.retain(|_, c| !c.is_zero());
    v
}

/// Whether every defining relation of the zero fiber maps to zero under
/// `alpha_{b j} -> s_b - s_j`. Infinite groups use the ball of radius `n`,
/// which must reach the largest finite edge order.
pub fn phi0_check(m: &CoxeterMatrix, base: usize, n: usize) -> Result<bool, AdditiveError> {
    let ap = build_a0_plus(m, base)?;
    let needed = ap.presentation.max_degree();
    let alg = if is_finite(m) {
        SignedWordAlgebra::full(m)?
    } else {
        if n < needed {
            return Err(AdditiveError::Truncated(n));
        }
        SignedWordAlgebra::truncated(m, n)?
    };
    for rel in &ap.presentation.relations {
        if !phi0_image(&alg, &ap, rel)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dimensions of the subalgebra `B` generated by the differences `s_i - s_j`
/// and of `s_b B` inside the signed word algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BDecomposition {
    pub group_order: u64,
    /// Graded dimensions of `B`.
    pub b_by_degree: Vec<u64>,
    pub dim_b: u64,
    pub dim_s0_b: u64,
    /// Dimension of `B + s_b B`.
    pub dim_sum: u64,
    pub direct_sum: bool,
}

impl BDecomposition {
    /// `B + s_b B` is direct and fills the whole algebra.
    pub fn fills_algebra(&self) -> bool {
        self.direct_sum && self.dim_sum == self.group_order
    }
}

pub fn b_decomposition(m: &CoxeterMatrix, base: usize) -> Result<BDecomposition, AdditiveError> {
    check_base(m, base)?;
    let alg = SignedWordAlgebra::full(m)?;
    let gens: Vec<Vector> = (0..m.rank())
        .filter(|&j| j != base)
        .map(|j| difference(&alg, base, j))
        .collect();
    let mut layer = vec![alg.basis_vector(0)];
    let mut basis: Vec<Vector> = Vec::new();
    let mut by_degree = Vec::new();
    while !layer.is_empty() {
        by_degree.push(layer.len() as u64);
        let mut next = Vec::new();
        let mut ech = RowEchelon::new();
        for v in &layer {
            for g in &gens {
                let w = alg.mul(v, g)?;
                if ech.insert(w.iter().map(|(k, c)| (*k, c.clone()))) {
                    next.push(w);
                }
            }
        }
        basis.append(&mut layer);
        layer = next;
    }
    let s0 = alg.generator(base);
    let shifted: Vec<Vector> = basis
        .iter()
        .map(|v| alg.mul(&s0, v))
        .collect::<Result<_, _>>()?;
    let rank = |vs: &mut dyn Iterator<Item = &Vector>| {
        let mut ech = RowEchelon::new();
        for v in vs {
            ech.insert(v.iter().map(|(k, c)| (*k, c.clone())));
        }
        ech.rank() as u64
    };
    let dim_b = basis.len() as u64;
    let dim_s0_b = rank(&mut shifted.iter());
    let dim_sum = rank(&mut basis.iter().chain(shifted.iter()));
    Ok(BDecomposition {
        group_order: alg.dimension() as u64,
        b_by_degree: by_degree,
        dim_b,
        dim_s0_b,
        dim_sum,
        direct_sum: dim_sum == dim_b + dim_s0_b,
    })
}

/// `s_i^2 = 0` and `(s_i - s_j)^{m_ij} = 0`.
pub fn abar1_presentation(m: &CoxeterMatrix) -> Presentation {
    difference_presentation(m, false)
}

fn difference_presentation(m: &CoxeterMatrix, unipotent: bool) -> Presentation {
    let s = |i: usize| NcPoly::generator(i as u16);
    let square = |i: usize| {
        if unipotent {
            &s(i).pow(2) - &NcPoly::one()
        } else {
            s(i).pow(2)
        }
    };
    let mut rels: Vec<NcPoly> = (0..m.rank()).map(square).collect();
    for (i, j, order) in m.finite_edges() {
        rels.push((&s(i) - &s(j)).pow(order));
    }
    let names = (1..=m.rank()).map(|i| format!("s{i}")).collect();
    Presentation::new(names, rels)
}

/// Gröbner dimensions of the two presentations of the undeformed group
/// algebra: with `(s_i - s_j)^m` and with `(s_i s_j - 1)^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AddmultReport {
    pub group_order: u64,
    pub difference_dim: Dimension,
    pub chart_dim: Dimension,
}

impl AddmultReport {
    pub fn holds(&self) -> bool {
        let w = Dimension::Finite(self.group_order);
        self.difference_dim == w && self.chart_dim == w
    }
}

pub fn lemma_addmult_mult(m: &CoxeterMatrix) -> Result<AddmultReport, AdditiveError> {
    if !is_finite(m) {
        return Err(AdditiveError::InfiniteGroup);
    }
    let g = CoxeterGroup::enumerate(m, LengthBound::All).map_err(|_| AdditiveError::InfiniteGroup)?;
    let cap = default_degree_cap(m).map_err(|_| AdditiveError::InfiniteGroup)?;
    let chart = build_a_full(m, &ParameterPoint::ones(m).to_symmetric())
        .expect("the unit point is orientation invariant");
    let report = AddmultReport {
        group_order: g.len() as u64,
        difference_dim: buchberger(&difference_presentation(m, true), cap).dimension(),
        chart_dim: buchberger(&chart, cap).dimension(),
    };
    if matches!(report.difference_dim, Dimension::Unknown { .. })
        || matches!(report.chart_dim, Dimension::Unknown { .. })
    {
        return Err(AdditiveError::Inconclusive);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::Order;
    use crate::exact::int;

    #[test]
    fn rank_two_hilbert() {
        let m = CoxeterMatrix::type_a(2);
        let ap = build_a0_plus(&m, 0).unwrap();
        assert_eq!(ap.presentation.relations.len(), 1);
        assert_eq!(hilbert_a0_plus(&m, 0, 4).unwrap(), vec![1, 1, 1, 0, 0]);
        assert_eq!(expected_hilbert(&m, 4).unwrap(), vec![1, 1, 1, 0, 0]);
    }

    #[test]
    fn construction_shapes() {
        let m = CoxeterMatrix::triangle(2, 2, 2);
        let ap = build_a0_plus(&m, 0).unwrap();
        assert_eq!(ap.targets, vec![1, 2]);
        assert_eq!(ap.presentation.relations.len(), 3);
        assert!(ap
            .presentation
            .relations
            .iter()
            .all(|r| r.is_homogeneous() && r.degree() == Some(2)));
        let inf = CoxeterMatrix::from_edges(2, &[(1, 2, Order::Infinite)]).unwrap();
        assert!(build_a0_plus(&inf, 0).unwrap().presentation.relations.is_empty());
        assert!(build_a0_plus(&inf, 2).is_err());
    }

    #[test]
    fn a3_hilbert_and_words() {
        let m = CoxeterMatrix::type_a(3);
        let cmp = compare_hilbert(&m, 0, 7).unwrap();
        assert_eq!(cmp.expected, vec![1, 2, 3, 3, 2, 1, 0, 0]);
        assert!(cmp.matches());
        let rep = check_spanning_words(&m, 0, 7).unwrap();
        assert!(rep.is_basis(), "{rep:?}");
        assert_eq!(spanning_b_words(&m, 0, 0).unwrap()[0].poly, NcPoly::one());
    }

    #[test]
    fn phi0_relations_vanish() {
        assert!(phi0_check(&CoxeterMatrix::type_a(2), 0, 0).unwrap());
        assert!(phi0_check(&CoxeterMatrix::dihedral(2), 0, 0).unwrap());
        assert!(phi0_check(&CoxeterMatrix::type_b(3), 1, 0).unwrap());
        assert!(phi0_check(&CoxeterMatrix::type_a(1), 0, 0).unwrap());
        assert!(phi0_check(&CoxeterMatrix::affine_a(2), 0, 4).unwrap());
        assert_eq!(
            phi0_check(&CoxeterMatrix::affine_a(2), 0, 2),
            Err(AdditiveError::Truncated(2))
        );
    }

    #[test]
    fn m2_square_expands_to_anticommutator() {
        let m = CoxeterMatrix::dihedral(2);
        let alg = SignedWordAlgebra::full(&m).unwrap();
        let d = difference(&alg, 0, 1);
        assert!(alg.mul(&d, &d).unwrap().is_empty());
    }

    #[test]
    fn decompositions() {
        for (m, half) in [
            (CoxeterMatrix::type_a(3), 12),
            (CoxeterMatrix::type_b(3), 24),
            (CoxeterMatrix::dihedral(2), 2),
        ] {
            for base in 0..m.rank() {
                let d = b_decomposition(&m, base).unwrap();
                assert_eq!(d.dim_b, half);
                assert!(d.fills_algebra(), "{d:?}");
            }
        }
    }

    #[test]
    fn two_presentations_agree() {
        for (m, w) in [
            (CoxeterMatrix::type_a(1), 2),
            (CoxeterMatrix::type_a(2), 6),
            (CoxeterMatrix::dihedral(4), 8),
        ] {
            let r = lemma_addmult_mult(&m).unwrap();
            assert_eq!(r.group_order, w);
            assert!(r.holds(), "{r:?}");
        }
    }

    #[test]
    fn abar1_dimension_is_group_order() {
        let m = CoxeterMatrix::type_a(3);
        let h = hilbert_function(&abar1_presentation(&m), 7).unwrap();
        assert_eq!(h, vec![1, 3, 5, 6, 5, 3, 1, 0]);
    }

    #[test]
    fn semidirect_doubles() {
        let m = CoxeterMatrix::type_a(2);
        let p = build_a0_semidirect(&m, 0).unwrap();
        assert_eq!(buchberger(&p, 8).dimension(), Dimension::Finite(6));
    }

    #[test]
    fn tau_fiber_at_zero_is_homogeneous() {
        let m = CoxeterMatrix::type_a(2);
        let zero = build_a_tau_plus(&m, 0, &BTreeMap::new()).unwrap();
        assert_eq!(zero.presentation, build_a0_plus(&m, 0).unwrap().presentation);
        let tau = BTreeMap::from([((0, 1), vec![int(1), int(2), int(-3)])]);
        let p = build_a_tau_plus(&m, 0, &tau).unwrap();
        assert_eq!(buchberger(&p.presentation, 6).dimension(), Dimension::Finite(3));
    }
}
