use num_traits::One;

use super::point::{ParameterPoint, SymmetricPoint};
use super::DeformError;
use crate::coxeter::{is_finite, CoxeterGroup, CoxeterMatrix, LengthBound};
use crate::exact::Rational;
use crate::ncalg::linalg::RowEchelon;
use crate::ncalg::{
    buchberger, buchberger_over, Dimension, Field, Fp, FreeWord, GroebnerResult, ModMersenne,
    NcPoly, Presentation,
};

/// Generator index of `a_ij` among the ordered pairs, listed
/// lexicographically.
pub fn pair_generator(rank: usize, i: usize, j: usize) -> u16 {
    debug_assert!(i != j);
    (i * (rank - 1) + if j > i { j - 1 } else { j }) as u16
}

fn pair_names(m: &CoxeterMatrix) -> Vec<String> {
    let r = m.rank();
    let mut names = Vec::with_capacity(r * r.saturating_sub(1));
    for i in 0..r {
        for j in 0..r {
            if i != j {
                names.push(format!("a{}_{}", i + 1, j + 1));
            }
        }
    }
    names
}

/// `a_ij a_ji = 1` and `a_ij a_jp a_pi = 1` over all ordered pairs and
/// triples.
fn group_relations(r: usize) -> Vec<NcPoly> {
    let g = |i, j| NcPoly::generator(pair_generator(r, i, j));
    let one = NcPoly::one();
    let mut rels = Vec::new();
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            rels.push(&(&g(i, j) * &g(j, i)) - &one);
            for p in 0..r {
                if p != i && p != j {
                    rels.push(&(&(&g(i, j) * &g(j, p)) * &g(p, i)) - &one);
                }
            }
        }
    }
    rels
}

/// `x^m - e1 x^{m-1} + e2 x^{m-2} - ... + (-1)^m e_m`.
pub fn chart_polynomial(x: &NcPoly, e: &[Rational]) -> NcPoly {
    let m = e.len();
    let mut acc = x.pow(m as u32);
    for (k, ek) in e.iter().enumerate() {
        let k = k + 1;
        let sign = if k % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        acc = &acc + &x.pow((m - k) as u32).scale(&(sign * ek));
    }
    acc
}

/// `prod_k (x - t_k)`.
fn root_polynomial(x: &NcPoly, t: &[Rational]) -> NcPoly {
    t.iter().fold(NcPoly::one(), |acc, tk| {
        &acc * &(x - &NcPoly::constant(tk.clone()))
    })
}

/// Even-part algebra at a point of the eigenvalue chart.
pub fn build_a_plus(m: &CoxeterMatrix, u: &ParameterPoint) -> Presentation {
    let r = m.rank();
    let mut rels = group_relations(r);
    for (i, j, _) in m.finite_edges() {
        for (a, b) in [(i, j), (j, i)] {
            let t = u.oriented(a, b).expect("point covers every finite edge");
            rels.push(root_polynomial(
                &NcPoly::generator(pair_generator(r, a, b)),
                &t,
            ));
        }
    }
    Presentation::new(pair_names(m), rels)
}

/// Even-part algebra at a point of the symmetric chart.
pub fn build_a_tilde_plus(m: &CoxeterMatrix, e: &SymmetricPoint) -> Presentation {
    let r = m.rank();
    let mut rels = group_relations(r);
    for (i, j, _) in m.finite_edges() {
        for (a, b) in [(i, j), (j, i)] {
            let coeffs = e.oriented(a, b).expect("point covers every finite edge");
            rels.push(chart_polynomial(
                &NcPoly::generator(pair_generator(r, a, b)),
                &coeffs,
            ));
        }
    }
    Presentation::new(pair_names(m), rels)
}

/// The full algebra on generators `s_i`, defined when the chart is
/// orientation-invariant.
pub fn build_a_full(m: &CoxeterMatrix, e: &SymmetricPoint) -> Result<Presentation, DeformError> {
    if !e.is_orientation_invariant() {
        return Err(DeformError::NotOrientationInvariant);
    }
    let r = m.rank();
    let s = |i: usize| NcPoly::generator(i as u16);
    let mut rels: Vec<NcPoly> = (0..r).map(|i| &s(i).pow(2) - &NcPoly::one()).collect();
    for (i, j, _) in m.finite_edges() {
        let coeffs = e.oriented(i, j).expect("point covers every finite edge");
        rels.push(chart_polynomial(&(&s(i) * &s(j)), &coeffs));
    }
    let names = (1..=r).map(|i| format!("s{i}")).collect();
    Ok(Presentation::new(names, rels))
}

/// `2 L + 2` with `L` the length of the longest element.
pub fn default_degree_cap(m: &CoxeterMatrix) -> Result<usize, DeformError> {
    let g = CoxeterGroup::enumerate(m, LengthBound::All).map_err(|_| DeformError::InfiniteGroup)?;
    Ok(2 * g.length(g.len() - 1) + 2)
}

pub fn groebner_a_plus(
    m: &CoxeterMatrix,
    u: &ParameterPoint,
    cap: Option<usize>,
) -> Result<GroebnerResult, DeformError> {
    if !is_finite(m) {
        return Err(DeformError::InfiniteGroup);
    }
    let cap = match cap {
        Some(c) => c,
        None => default_degree_cap(m)?,
    };
    Ok(buchberger(&build_a_plus(m, u), cap))
}

/// Dimension of the even-part algebra at `u`; flat iff it equals `|W_+|`.
pub fn dim_a_plus(
    m: &CoxeterMatrix,
    u: &ParameterPoint,
    cap: Option<usize>,
) -> Result<Dimension, DeformError> {
    Ok(groebner_a_plus(m, u, cap)?.dimension())
}

/// `2^32 - 5`, the fallback prime for modular bounds.
const FALLBACK_PRIME: u64 = 4_294_967_291;

/// Dimension of the even-part algebra after reduction modulo `prime`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ModularBound {
    pub prime: u64,
    pub dimension: Dimension,
}

fn is_unit_mod<K: Field>(q: &Rational) -> bool {
    K::from_rational(q).is_some_and(|v| !v.is_zero())
}

fn bound_over<K: Field>(
    m: &CoxeterMatrix,
    u: &ParameterPoint,
    cap: usize,
    prime: u64,
) -> Option<ModularBound> {
    if !u.entries().values().flatten().all(is_unit_mod::<K>) {
        return None;
    }
    let gb = buchberger_over::<K>(&build_a_plus(m, u), cap)?;
    Some(ModularBound {
        prime,
        dimension: gb.dimension(),
    })
}

/// Upper bound on `dim A_{u+}` from a completion modulo a prime at which
/// every parameter is a unit.
///
/// Over the rationals with denominators prime to `p` the algebra is spanned
/// by the `|W_+|` even-element words, hence a finitely generated module over
/// a discrete valuation ring; its rank, the rational dimension, is at most
/// the dimension of its reduction. A complete result below `|W_+|` therefore
/// certifies non-flatness. `None` when both built-in primes divide some
/// parameter.
pub fn dim_a_plus_upper_bound(
    m: &CoxeterMatrix,
    u: &ParameterPoint,
    cap: Option<usize>,
) -> Result<Option<ModularBound>, DeformError> {
    if !is_finite(m) {
        return Err(DeformError::InfiniteGroup);
    }
    let cap = match cap {
        Some(c) => c,
        None => default_degree_cap(m)?,
    };
    Ok(
        bound_over::<ModMersenne>(m, u, cap, crate::ncalg::MERSENNE_31)
            .or_else(|| bound_over::<Fp<FALLBACK_PRIME>>(m, u, cap, FALLBACK_PRIME)),
    )
}

/// Outcome of the dimension test for flatness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum DimensionVerdict {
    /// Complete rational basis with `dim = |W_+|`.
    Flat {
        dimension: u64,
    },
    /// Certified `dim < |W_+|`: `dimension` is exact when `prime` is `None`,
    /// otherwise an upper bound from the modular completion.
    NotFlat {
        dimension: u64,
        prime: Option<u64>,
    },
    Inconclusive,
}

impl DimensionVerdict {
    pub fn is_flat(self) -> bool {
        matches!(self, DimensionVerdict::Flat { .. })
    }

    pub fn is_not_flat(self) -> bool {
        matches!(self, DimensionVerdict::NotFlat { .. })
    }
}

/// Decides flatness at `u`: a modular bound below `|W_+|` settles the
/// negative case cheaply, otherwise the rational completion decides.
pub fn flatness_by_dimension(
    m: &CoxeterMatrix,
    u: &ParameterPoint,
    cap: Option<usize>,
) -> Result<DimensionVerdict, DeformError> {
    let g = CoxeterGroup::enumerate(m, LengthBound::All).map_err(|_| DeformError::InfiniteGroup)?;
    let target = g.even_indices().len() as u64;
    if let Some(ModularBound {
        prime,
        dimension: Dimension::Finite(d),
    }) = dim_a_plus_upper_bound(m, u, cap)?
    {
        if d < target {
            return Ok(DimensionVerdict::NotFlat {
                dimension: d,
                prime: Some(prime),
            });
        }
    }
    Ok(match dim_a_plus(m, u, cap)? {
        Dimension::Finite(d) if d == target => DimensionVerdict::Flat { dimension: d },
        Dimension::Finite(d) => DimensionVerdict::NotFlat {
            dimension: d,
            prime: None,
        },
        _ => DimensionVerdict::Inconclusive,
    })
}

/// Words `a_{i1 i2} a_{i3 i4} ...` obtained by pairing the letters of the
/// ShortLex reduced word of each even element.
pub fn even_element_words(g: &CoxeterGroup) -> Vec<FreeWord> {
    let r = g.rank();
    g.even_indices()
        .into_iter()
        .map(|x| {
            let w = g.element(x).word().letters();
            let v: Vec<u16> = w.chunks(2).map(|p| pair_generator(r, p[0], p[1])).collect();
            FreeWord::from_slice(&v)
        })
        .collect()
}

/// Whether the spanning words of the even elements are linearly
/// independent modulo the completed basis.
pub fn reduce_basis_words(
    m: &CoxeterMatrix,
    u: &ParameterPoint,
    cap: Option<usize>,
) -> Result<bool, DeformError> {
    let gb = groebner_a_plus(m, u, cap)?;
    if !gb.is_complete() {
        return Err(DeformError::Inconclusive);
    }
    let g = CoxeterGroup::enumerate(m, LengthBound::All).map_err(|_| DeformError::InfiniteGroup)?;
    Ok(words_independent(&gb, &even_element_words(&g)))
}

pub fn words_independent(gb: &GroebnerResult, words: &[FreeWord]) -> bool {
    let mut ech = RowEchelon::new();
    words.iter().all(|w| {
        let nf = gb.reduce(&NcPoly::word(w.clone()));
        ech.insert(nf.terms().iter().cloned())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use std::collections::BTreeMap;

    #[test]
    fn generator_indexing() {
        let r = 3;
        let order: Vec<u16> = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]
            .iter()
            .map(|&(i, j)| pair_generator(r, i, j))
            .collect();
        assert_eq!(order, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn rank_two_and_one() {
        let m = CoxeterMatrix::type_a(2);
        let u = ParameterPoint::ones(&m);
        assert_eq!(dim_a_plus(&m, &u, None).unwrap(), Dimension::Finite(3));
        let a1 = CoxeterMatrix::type_a(1);
        assert_eq!(
            dim_a_plus(&a1, &ParameterPoint::ones(&a1), None).unwrap(),
            Dimension::Finite(1)
        );
    }

    #[test]
    fn off_locus_222() {
        let m = CoxeterMatrix::triangle(2, 2, 2);
        let u = ParameterPoint::new(
            &m,
            BTreeMap::from([
                ((0, 1), vec![int(1), int(2)]),
                ((1, 2), vec![int(1), int(1)]),
                ((0, 2), vec![int(1), int(1)]),
            ]),
        )
        .unwrap();
        let d = dim_a_plus(&m, &u, None).unwrap().finite().unwrap();
        assert!(d < 4, "{d}");
        assert_eq!(
            dim_a_plus(&m, &ParameterPoint::ones(&m), None).unwrap(),
            Dimension::Finite(4)
        );
    }

    #[test]
    fn modular_bound_matches_rational_dimension() {
        let m = CoxeterMatrix::triangle(2, 2, 2);
        let u = ParameterPoint::new(
            &m,
            BTreeMap::from([
                ((0, 1), vec![int(1), int(2)]),
                ((1, 2), vec![int(1), int(1)]),
                ((0, 2), vec![int(1), int(1)]),
            ]),
        )
        .unwrap();
        let exact = dim_a_plus(&m, &u, None).unwrap();
        let bound = dim_a_plus_upper_bound(&m, &u, None).unwrap().unwrap();
        assert_eq!(bound.dimension, exact);
        assert!(flatness_by_dimension(&m, &u, None).unwrap().is_not_flat());
        assert!(flatness_by_dimension(&m, &ParameterPoint::ones(&m), None)
            .unwrap()
            .is_flat());
    }

    #[test]
    fn bad_prime_falls_back() {
        let m = CoxeterMatrix::type_a(2);
        let p = crate::ncalg::MERSENNE_31 as i64;
        let u = ParameterPoint::new(&m, BTreeMap::from([((0, 1), vec![int(p), int(1), int(1)])]))
            .unwrap();
        let b = dim_a_plus_upper_bound(&m, &u, None).unwrap().unwrap();
        assert_eq!(b.prime, FALLBACK_PRIME);
        assert_eq!(b.dimension, Dimension::Finite(3));
    }

    #[test]
    fn a3_unit_point() {
        let m = CoxeterMatrix::type_a(3);
        let u = ParameterPoint::ones(&m);
        assert_eq!(dim_a_plus(&m, &u, None).unwrap(), Dimension::Finite(12));
        assert!(reduce_basis_words(&m, &u, None).unwrap());
    }
}
