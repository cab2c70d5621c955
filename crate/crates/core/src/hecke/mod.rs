//! Iwahori–Hecke algebras with deformed braid relations: the quadratic
//! relations `T_i^2 - u_i T_i + v_i` together with
//! `B_m(T_i, T_j) + f1 B_{m-2}(T_i, T_j) + f2 B_{m-4}(T_i, T_j) + ...` on
//! every finite edge.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coxeter::{is_finite, CoxeterGroup, CoxeterMatrix, LengthBound};
use crate::deform::{default_degree_cap, words_independent, SymmetricPoint};
use crate::exact::rational::serde_q;
use crate::exact::Rational;
use crate::flatness::random_small_rational;
use crate::ncalg::{buchberger, Dimension, FreeWord, NcPoly, Presentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeckeError {
    #[error("odd-edge condition: edge ({0}, {1}) has odd order but different quadratic parameters")]
    OddEdgeMismatch(usize, usize),
    #[error("chain condition: first braid parameters differ on edges ({0}, {1}) and ({1}, {2})")]
    ChainMismatch(usize, usize, usize),
    #[error("expected {expected} vertex parameters, found {found}")]
    VertexCount { expected: usize, found: usize },
    #[error("edge ({0}, {1}) is not a finite edge of the matrix")]
    UnexpectedEdge(usize, usize),
    #[error("edge {edge:?} needs {expected} braid parameters, found {found}")]
    WrongArity {
        edge: (usize, usize),
        expected: usize,
        found: usize,
    },
    #[error("the group is infinite")]
    InfiniteGroup,
    #[error("Gröbner computation truncated before completion")]
    Inconclusive,
    #[error("invalid parameter file: {0}")]
    Json(String),
}

/// Number of braid parameters on an edge of order `m`: `1 <= l < m / 2`.
pub fn braid_parameter_count(m: u32) -> usize {
    (m as usize).div_ceil(2).saturating_sub(1)
}

/// Quadratic parameters per vertex and lower braid coefficients per finite
/// edge `i < j`; `f[&(i, j)][l - 1]` multiplies `B_{m - 2l}`. Edges missing
/// from `f` carry zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeParams {
    pub u: Vec<Rational>,
    pub v: Vec<Rational>,
    pub f: BTreeMap<(usize, usize), Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
struct EdgeParams {
    edge: [usize; 2],
    #[serde(with = "serde_q::vec")]
    f: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct ParamsRecord {
    #[serde(with = "serde_q::vec")]
    u: Vec<Rational>,
    #[serde(with = "serde_q::vec")]
    v: Vec<Rational>,
    #[serde(default)]
    f: Vec<EdgeParams>,
}

impl HeckeParams {
    /// The ordinary Hecke algebra: every braid parameter is zero.
    pub fn ordinary(u: Vec<Rational>, v: Vec<Rational>) -> Self {
        HeckeParams {
            u,
            v,
            f: BTreeMap::new(),
        }
    }

    /// `f^{(l)}` on the edge `{i, j}`, zero when absent.
    pub fn braid_parameter(&self, i: usize, j: usize, l: usize) -> Rational {
        self.f
            .get(&(i.min(j), i.max(j)))
            .and_then(|v| v.get(l - 1).cloned())
            .unwrap_or_else(Rational::zero)
    }

    /// Shape checks only: counts, arities and edge keys.
    fn check_shape(&self, m: &CoxeterMatrix) -> Result<(), HeckeError> {
        for found in [self.u.len(), self.v.len()] {
            if found != m.rank() {
                return Err(HeckeError::VertexCount {
                    expected: m.rank(),
                    found,
                });
            }
        }
        for (&(i, j), vals) in &self.f {
            let order = (i < j && j < m.rank())
                .then(|| m.m(i, j))
                .flatten()
                .ok_or(HeckeError::UnexpectedEdge(i, j))?;
            let expected = braid_parameter_count(order);
            if vals.len() != expected {
                return Err(HeckeError::WrongArity {
                    edge: (i, j),
                    expected,
                    found: vals.len(),
                });
            }
        }
        Ok(())
    }

    /// Shape checks plus the two admissibility conditions.
    pub fn validate(&self, m: &CoxeterMatrix) -> Result<(), HeckeError> {
        self.check_shape(m)?;
        for (i, j, order) in m.finite_edges() {
            if order % 2 == 1 && (self.u[i] != self.u[j] || self.v[i] != self.v[j]) {
                return Err(HeckeError::OddEdgeMismatch(i, j));
            }
        }
        if let Some([i, j, k]) = chain_triples(m)
            .into_iter()
            .find(|&[i, j, k]| self.braid_parameter(i, j, 1) != self.braid_parameter(j, k, 1))
        {
            return Err(HeckeError::ChainMismatch(i, j, k));
        }
        Ok(())
    }

    /// JSON object `{"u": [...], "v": [...], "f": [{"edge": [i, j], "f":
    /// [...]}]}` with 1-based vertices and rationals as strings.
    pub fn to_json(&self) -> String {
        let rec = ParamsRecord {
            u: self.u.clone(),
            v: self.v.clone(),
            f: self
                .f
                .iter()
                .map(|(&(i, j), f)| EdgeParams {
                    edge: [i + 1, j + 1],
                    f: f.clone(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&rec).expect("serializable")
    }

    /// Parses and shape-checks; admissibility is left to [`validate`].
    ///
    /// [`validate`]: HeckeParams::validate
    pub fn from_json(m: &CoxeterMatrix, s: &str) -> Result<Self, HeckeError> {
        let rec: ParamsRecord =
            serde_json::from_str(s).map_err(|e| HeckeError::Json(e.to_string()))?;
        let mut f = BTreeMap::new();
        for e in rec.f {
            let [a, b] = e.edge;
            if a == 0 || b == 0 || a == b {
                return Err(HeckeError::Json(format!("bad edge {:?}", e.edge)));
            }
            let key = ((a - 1).min(b - 1), (a - 1).max(b - 1));
            if f.insert(key, e.f).is_some() {
                return Err(HeckeError::Json(format!("edge {:?} listed twice", e.edge)));
            }
        }
        let p = HeckeParams {
            u: rec.u,
            v: rec.v,
            f,
        };
        p.check_shape(m)?;
        Ok(p)
    }
}

/// Triples `(i, j, k)` with `m_ij = m_jk = 3` and `m_ik = 2`, each unordered
/// path listed once with `i < k`.
pub fn chain_triples(m: &CoxeterMatrix) -> Vec<[usize; 3]> {
    let r = m.rank();
    let mut out = Vec::new();
    for j in 0..r {
        for i in 0..r {
            for k in i + 1..r {
                if i != j && k != j && m.m(i, j) == Some(3) && m.m(j, k) == Some(3) && m.m(i, k) == Some(2)
                {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let root = self.find(p);
        self.0[x] = root;
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// Random admissible parameters with small rational entries: quadratic
/// parameters are shared along odd edges, and first braid parameters along
/// chains. With `ordinary` every braid parameter is zero. `v` is never zero.
pub fn random_admissible<R: Rng>(m: &CoxeterMatrix, rng: &mut R, ordinary: bool) -> HeckeParams {
    let r = m.rank();
    let mut vertices = UnionFind::new(r);
    for (i, j, order) in m.finite_edges() {
        if order % 2 == 1 {
            vertices.union(i, j);
        }
    }
    let mut per_class: HashMap<usize, (Rational, Rational)> = HashMap::new();
    let mut u = Vec::with_capacity(r);
    let mut v = Vec::with_capacity(r);
    for x in 0..r {
        let root = vertices.find(x);
        let (a, b) = per_class
            .entry(root)
            .or_insert_with(|| (random_small_rational(rng), random_small_rational(rng)))
            .clone();
        u.push(a);
        v.push(b);
    }
    let mut f = BTreeMap::new();
    if !ordinary {
        let edges = m.finite_edges();
        let idx = |a: usize, b: usize| {
            edges
                .iter()
                .position(|&(i, j, _)| (i, j) == (a.min(b), a.max(b)))
                .expect("finite edge")
        };
        let mut classes = UnionFind::new(edges.len());
        for [i, j, k] in chain_triples(m) {
            classes.union(idx(i, j), idx(j, k));
        }
        let mut first: HashMap<usize, Rational> = HashMap::new();
        for (n, &(i, j, order)) in edges.iter().enumerate() {
            let count = braid_parameter_count(order);
            if count == 0 {
                continue;
            }
            let root = classes.find(n);
            let mut vals = vec![first
                .entry(root)
                .or_insert_with(|| random_small_rational(rng))
                .clone()];
            vals.extend((1..count).map(|_| random_small_rational(rng)));
            f.insert((i, j), vals);
        }
    }
    HeckeParams { u, v, f }
}

/// `B_{2k}(x, y) = (xy)^k - (yx)^k`, `B_{2k+1}(x, y) = (xy)^k x - (yx)^k y`,
/// `B_0 = 0`.
pub fn braid_poly(k: u32, x: &NcPoly, y: &NcPoly) -> NcPoly {
    if k == 0 {
        return NcPoly::zero();
    }
    let xy = (x * y).pow(k / 2);
    let yx = (y * x).pow(k / 2);
    if k % 2 == 0 {
        &xy - &yx
    } else {
        &(&xy * x) - &(&yx * y)
    }
}

fn generator_names(m: &CoxeterMatrix) -> Vec<String> {
    (1..=m.rank()).map(|i| format!("T{i}")).collect()
}

/// The presentation without admissibility checks, for exhibiting what goes
/// wrong off the admissible set.
pub fn build_hecke_unchecked(m: &CoxeterMatrix, p: &HeckeParams) -> Presentation {
    let t = |i: usize| NcPoly::generator(i as u16);
    let mut rels = Vec::new();
    for i in 0..m.rank() {
        let q = &(&t(i).pow(2) - &t(i).scale(&p.u[i])) + &NcPoly::constant(p.v[i].clone());
        rels.push(q);
    }
    for (i, j, order) in m.finite_edges() {
        let mut rel = braid_poly(order, &t(i), &t(j));
        for l in 1..=braid_parameter_count(order) {
            let c = p.braid_parameter(i, j, l);
            if !c.is_zero() {
                rel = &rel + &braid_poly(order - 2 * l as u32, &t(i), &t(j)).scale(&c);
            }
        }
        rels.push(rel);
    }
    Presentation::new(generator_names(m), rels)
}

/// The presentation on generators `T1..Tr`; rejects inadmissible parameters.
pub fn build_hecke(m: &CoxeterMatrix, p: &HeckeParams) -> Result<Presentation, HeckeError> {
    p.validate(m)?;
    Ok(build_hecke_unchecked(m, p))
}

/// The products `T_w` along ShortLex reduced words.
pub fn reduced_word_products(g: &CoxeterGroup) -> Vec<FreeWord> {
    g.elements()
        .iter()
        .map(|e| {
            let letters: Vec<u16> = e.word().letters().iter().map(|&s| s as u16).collect();
            FreeWord::from_slice(&letters)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessReport {
    pub group_order: u64,
    pub dimension: Dimension,
    /// Whether the normal forms of the reduced-word products are linearly
    /// independent; `false` when the computation was truncated.
    pub independent: bool,
}

impl FreenessReport {
    pub fn is_free(&self) -> bool {
        self.independent && self.dimension == Dimension::Finite(self.group_order)
    }
}

/// Dimension and basis check for any presentation on `T1..Tr`.
pub fn freeness_of(m: &CoxeterMatrix, p: &Presentation) -> Result<FreenessReport, HeckeError> {
    if !is_finite(m) {
        return Err(HeckeError::InfiniteGroup);
    }
    let g = CoxeterGroup::enumerate(m, LengthBound::All).map_err(|_| HeckeError::InfiniteGroup)?;
    let cap = default_degree_cap(m).map_err(|_| HeckeError::InfiniteGroup)?;
    let gb = buchberger(p, cap);
    let dimension = gb.dimension();
    let independent = gb.is_complete() && words_independent(&gb, &reduced_word_products(&g));
    Ok(FreenessReport {
        group_order: g.len() as u64,
        dimension,
        independent,
    })
}

/// Validates, builds and checks that the algebra has dimension `|W|` with
/// the reduced-word products as a basis.
pub fn verify_freeness(m: &CoxeterMatrix, p: &HeckeParams) -> Result<FreenessReport, HeckeError> {
    let pres = build_hecke(m, p)?;
    let report = freeness_of(m, &pres)?;
    if matches!(report.dimension, Dimension::Unknown { .. }) {
        return Err(HeckeError::Inconclusive);
    }
    Ok(report)
}

/// Whether every finite edge satisfies `(e^{(m)})^2 = 1` and `e^{(k)} =
/// e^{(m)} e^{(m-k)}`.
pub fn satisfies_edge_conditions(e: &SymmetricPoint) -> bool {
    e.entries().values().all(|coeffs| {
        let m = coeffs.len();
        let top = &coeffs[m - 1];
        (top * top).is_one() && (1..m).all(|k| coeffs[k - 1] == top * &coeffs[m - k - 1])
    })
}

/// The point with `e^{(m)} = (-1)^{m-1}`, `e^{(m/2)} = 0` for even `m`, and
/// `e^{(k)}` for `k < m/2` taken from `lower` (zeros when absent); the upper
/// half follows from the edge conditions.
pub fn distinguished_point(
    m: &CoxeterMatrix,
    lower: &BTreeMap<(usize, usize), Vec<Rational>>,
) -> Result<SymmetricPoint, HeckeError> {
    let mut entries = BTreeMap::new();
    for &key in lower.keys() {
        if !m.finite_edges().iter().any(|&(i, j, _)| (i, j) == key) {
            return Err(HeckeError::UnexpectedEdge(key.0, key.1));
        }
    }
    for (i, j, order) in m.finite_edges() {
        let n = order as usize;
        let free = braid_parameter_count(order);
        let given = lower.get(&(i, j)).cloned().unwrap_or_else(|| vec![Rational::zero(); free]);
        if given.len() != free {
            return Err(HeckeError::WrongArity {
                edge: (i, j),
                expected: free,
                found: given.len(),
            });
        }
        let top = if n % 2 == 1 {
            Rational::one()
        } else {
            -Rational::one()
        };
        let mut e = vec![Rational::zero(); n];
        e[n - 1] = top.clone();
        for (k, val) in given.into_iter().enumerate() {
            e[n - k - 2] = &top * &val;
            e[k] = val;
        }
        entries.insert((i, j), e);
    }
    Ok(SymmetricPoint::new(m, entries).expect("every finite edge has full arity"))
}

/// Right-regular representation of the ordinary Hecke algebra on the basis
/// `e_w`: `e_w T_s = e_{ws}` when the length grows, else `u_s e_w - v_s
/// e_{ws}`. Row `w` of matrix `s` is the image of `e_w`.
pub fn ordinary_right_regular(
    g: &CoxeterGroup,
    u: &[Rational],
    v: &[Rational],
) -> Vec<Vec<Vec<Rational>>> {
    let n = g.len();
    (0..g.rank())
        .map(|s| {
            let mut mat = vec![vec![Rational::zero(); n]; n];
            for (w, row) in mat.iter_mut().enumerate() {
                let ws = g.mul_gen(w, s).expect("complete enumeration");
                if g.length(ws) > g.length(w) {
                    row[ws] = Rational::one();
                } else {
                    row[w] = u[s].clone();
                    row[ws] = -v[s].clone();
                }
            }
            mat
        })
        .collect()
}

/// Evaluates a noncommutative polynomial on square matrices, multiplying
/// left to right.
pub fn evaluate_on_matrices(p: &NcPoly, mats: &[Vec<Vec<Rational>>]) -> Vec<Vec<Rational>> {
    let n = mats.first().map_or(0, Vec::len);
    let mut acc = vec![vec![Rational::zero(); n]; n];
    for (word, c) in p.terms() {
        let mut prod: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { c.clone() } else { Rational::zero() }).collect())
            .collect();
        for &x in word.letters() {
            prod = mat_mul(&prod, &mats[x as usize]);
        }
        for (a, b) in acc.iter_mut().zip(prod) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
    }
    acc
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![Rational::zero(); n];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[k]) {
                    if !y.is_zero() {
                        *o += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gens() -> (NcPoly, NcPoly) {
        (NcPoly::generator(0), NcPoly::generator(1))
    }

    #[test]
    fn braid_polynomials() {
        let (x, y) = gens();
        assert!(braid_poly(0, &x, &y).is_zero());
        assert_eq!(braid_poly(1, &x, &y), &x - &y);
        assert_eq!(braid_poly(2, &x, &y), &(&x * &y) - &(&y * &x));
        assert_eq!(
            braid_poly(3, &x, &y),
            &(&(&x * &y) * &x) - &(&(&y * &x) * &y)
        );
        assert_eq!(braid_poly(5, &y, &x), -&braid_poly(5, &x, &y));
    }

    #[test]
    fn b3_relation_shape() {
        let m = CoxeterMatrix::type_b(3);
        let (i, j) = m
            .finite_edges()
            .into_iter()
            .find(|e| e.2 == 4)
            .map(|e| (e.0, e.1))
            .unwrap();
        let mut p = HeckeParams::ordinary(vec![int(1); 3], vec![int(2); 3]);
        p.f.insert((i, j), vec![rat(3, 2)]);
        let pres = build_hecke(&m, &p).unwrap();
        let (ti, tj) = (NcPoly::generator(i as u16), NcPoly::generator(j as u16));
        let expected = &braid_poly(4, &ti, &tj) + &braid_poly(2, &ti, &tj).scale(&rat(3, 2));
        assert!(pres.relations.contains(&expected));
    }

    #[test]
    fn rejects_each_condition() {
        let m = CoxeterMatrix::type_a(3);
        let mut p = HeckeParams::ordinary(vec![int(1); 3], vec![int(1); 3]);
        p.u[1] = int(2);
        assert_eq!(build_hecke(&m, &p), Err(HeckeError::OddEdgeMismatch(0, 1)));
        let mut q = HeckeParams::ordinary(vec![int(1); 3], vec![int(1); 3]);
        q.f.insert((0, 1), vec![int(1), int(2)]);
        assert!(matches!(
            build_hecke(&m, &q),
            Err(HeckeError::WrongArity { .. })
        ));
    }

    #[test]
    fn parameter_counts_and_chains() {
        let counts: Vec<usize> = (2..=6).map(braid_parameter_count).collect();
        assert_eq!(counts, vec![0, 1, 1, 2, 2]);
        assert_eq!(chain_triples(&CoxeterMatrix::type_a(4)).len(), 2);
        assert!(chain_triples(&CoxeterMatrix::type_h3()).is_empty());
    }

    #[test]
    fn a2_ordinary_dimension() {
        let m = CoxeterMatrix::type_a(2);
        let p = HeckeParams::ordinary(vec![int(1); 2], vec![int(-2); 2]);
        let r = verify_freeness(&m, &p).unwrap();
        assert!(r.is_free());
        assert_eq!(r.dimension, Dimension::Finite(6));
    }

    #[test]
    fn a3_random_admissible() {
        let m = CoxeterMatrix::type_a(3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..2 {
            let p = random_admissible(&m, &mut rng, false);
            let r = verify_freeness(&m, &p).unwrap();
            assert_eq!(r.dimension, Dimension::Finite(24));
            assert!(r.is_free());
        }
    }

    #[test]
    fn chain_violation_shrinks_a3() {
        let m = CoxeterMatrix::type_a(3);
        let mut p = HeckeParams::ordinary(vec![int(1); 3], vec![int(2); 3]);
        p.f.insert((0, 1), vec![int(1)]);
        p.f.insert((1, 2), vec![int(2)]);
        assert_eq!(build_hecke(&m, &p), Err(HeckeError::ChainMismatch(0, 1, 2)));
        let r = freeness_of(&m, &build_hecke_unchecked(&m, &p)).unwrap();
        assert!(r.dimension.finite().is_some_and(|d| d < 24), "{r:?}");
    }

    #[test]
    fn regular_representation_satisfies_relations() {
        let m = CoxeterMatrix::type_b(3);
        let g = CoxeterGroup::enumerate(&m, LengthBound::All).unwrap();
        let p = HeckeParams::ordinary(vec![int(3), rat(1, 2), rat(1, 2)], vec![int(-1), int(5), int(5)]);
        let mats = ordinary_right_regular(&g, &p.u, &p.v);
        for rel in build_hecke(&m, &p).unwrap().relations {
            let z = evaluate_on_matrices(&rel, &mats);
            assert!(z.iter().flatten().all(Zero::is_zero));
        }
    }

    #[test]
    fn edge_conditions() {
        let m = CoxeterMatrix::type_b(3);
        let e = distinguished_point(&m, &BTreeMap::new()).unwrap();
        assert!(satisfies_edge_conditions(&e));
        assert!(e.is_orientation_invariant());
        // Binomial coefficients are palindromic, so the unit point qualifies.
        let mut entries = crate::deform::ParameterPoint::ones(&m).to_symmetric().entries().clone();
        assert!(satisfies_edge_conditions(&SymmetricPoint::new(&m, entries.clone()).unwrap()));
        entries.insert((0, 1), vec![int(1), int(0), int(0), int(2)]);
        assert!(!satisfies_edge_conditions(&SymmetricPoint::new(&m, entries).unwrap()));
        let lower = BTreeMap::from([((0, 1), vec![int(7)])]);
        let e = distinguished_point(&CoxeterMatrix::type_a(3), &lower).unwrap();
        assert_eq!(e.entries()[&(0, 1)], vec![int(7), int(7), int(1)]);
    }

    #[test]
    fn json_round_trip() {
        let m = CoxeterMatrix::type_b(3);
        let p = random_admissible(&m, &mut ChaCha8Rng::seed_from_u64(8), false);
        assert_eq!(HeckeParams::from_json(&m, &p.to_json()).unwrap(), p);
    }
}
