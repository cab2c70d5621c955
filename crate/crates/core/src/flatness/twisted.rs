use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use super::theta::{theta_membership, ThetaPoint};
use super::FlatnessError;
use crate::coxeter::{CoxeterGroup, CoxeterMatrix, LengthBound, Word, WordSolver};
use crate::deform::{build_a_tilde_plus, default_degree_cap, even_element_words, ZElement};
use crate::exact::rational::{self, rational_roots};
use crate::exact::Rational;
use crate::ncalg::{buchberger, Dimension, NcPoly};

/// `±prod t_e^{k_e}` over the finite edges `i < j`, in `finite_edges` order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeMonomial {
    negative: bool,
    exponents: Vec<i32>,
}

impl EdgeMonomial {
    pub fn one(num_edges: usize) -> Self {
        EdgeMonomial {
            negative: false,
            exponents: vec![0; num_edges],
        }
    }

    pub fn is_one(&self) -> bool {
        !self.negative && self.exponents.iter().all(|&e| e == 0)
    }

    pub fn sign(&self) -> i32 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn exponents(&self) -> &[i32] {
        &self.exponents
    }

    pub fn mul(&self, other: &EdgeMonomial) -> EdgeMonomial {
        EdgeMonomial {
            negative: self.negative ^ other.negative,
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn inv(&self) -> EdgeMonomial {
        EdgeMonomial {
            negative: self.negative,
            exponents: self.exponents.iter().map(|e| -e).collect(),
        }
    }

    pub fn evaluate(&self, t: &ThetaPoint, edges: &[(usize, usize)]) -> Rational {
        let mut acc = if self.negative {
            -Rational::one()
        } else {
            Rational::one()
        };
        for (&(i, j), &e) in edges.iter().zip(&self.exponents) {
            if e != 0 {
                acc *= rational::pow(
                    &t.t(i, j).expect("theta point covers every finite edge"),
                    e as i64,
                );
            }
        }
        acc
    }
}

/// Effect of appending one letter to the reduced word of `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    /// `[w(g) s] = scalar * [w(g s)]`
    pub scalar: EdgeMonomial,
    /// Whether an `s s` pair was deleted, i.e. `l(g s) < l(g)`.
    pub cancels: bool,
}

/// A braid move replacing the alternating block starting with `(a, b)` at
/// `offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct BraidMove {
    offset: usize,
    a: usize,
    b: usize,
    order: usize,
}

fn braid_moves(m: &CoxeterMatrix, w: &[usize]) -> Vec<BraidMove> {
    let mut out = Vec::new();
    for p in 0..w.len().saturating_sub(1) {
        let (a, b) = (w[p], w[p + 1]);
        if a == b {
            continue;
        }
        let Some(order) = m.m(a, b).map(|k| k as usize) else {
            continue;
        };
        if p + order <= w.len() && (0..order).all(|k| w[p + k] == if k % 2 == 0 { a } else { b }) {
            out.push(BraidMove {
                offset: p,
                a,
                b,
                order,
            });
        }
    }
    out
}

fn apply_move(w: &[usize], mv: BraidMove) -> Vec<usize> {
    let mut v = w.to_vec();
    for k in 0..mv.order {
        v[mv.offset + k] = if k % 2 == 0 { mv.b } else { mv.a };
    }
    v
}

/// Rewriting data of a finite Coxeter group that does not depend on the
/// parameters: potentials of all reduced words, transition monomials, and
/// the loop monomials that must equal one for rewriting to be confluent.
///
/// Words in the letters `s_i` stand for products of consecutive pairs
/// `a_{w0 w1} a_{w2 w3} ...` with `a_ii = 1`. A braid move on the block
/// starting with `(a, b)` multiplies by `(-1)^{m+1} t_ab` at an even offset
/// and by `(-1)^{m+1} t_ba` at an odd one; deleting `s s` is free.
#[derive(Debug, Clone)]
pub struct BraidRewriting {
    matrix: CoxeterMatrix,
    group: CoxeterGroup,
    edges: Vec<(usize, usize)>,
    /// `potential[g][u]`: `[u] = potential * [w(g)]` for reduced words `u`
    potential: Vec<HashMap<Vec<usize>, EdgeMonomial>>,
    transition: Vec<Vec<Transition>>,
    loops: Vec<EdgeMonomial>,
}

impl BraidRewriting {
    pub fn new(m: &CoxeterMatrix) -> Result<Self, FlatnessError> {
        let group = CoxeterGroup::enumerate(m, LengthBound::All)
            .map_err(|_| FlatnessError::InfiniteGroup)?;
        let edges: Vec<(usize, usize)> = m
            .finite_edges()
            .into_iter()
            .map(|(i, j, _)| (i, j))
            .collect();
        let mut solver = WordSolver::new(m);
        let mut loops: HashSet<EdgeMonomial> = HashSet::new();
        let mut potential = Vec::with_capacity(group.len());
        for x in group.elements() {
            let words = solver
                .reduced_words(x)
                .map_err(|_| FlatnessError::InfiniteGroup)?;
            potential.push(Self::class_potential(
                m,
                &edges,
                x.word().letters(),
                words.len(),
                &mut loops,
            ));
        }
        let mut rw = BraidRewriting {
            matrix: m.clone(),
            group,
            edges,
            potential,
            transition: Vec::new(),
            loops: Vec::new(),
        };
        let transition = (0..rw.group.len())
            .map(|g| {
                (0..m.rank())
                    .map(|s| rw.compute_transition(g, s, &mut loops))
                    .collect()
            })
            .collect();
        rw.transition = transition;
        let mut loops: Vec<EdgeMonomial> = loops.into_iter().collect();
        loops.sort_by(|a, b| (a.negative, &a.exponents).cmp(&(b.negative, &b.exponents)));
        rw.loops = loops;
        Ok(rw)
    }

    /// Potential of every word in the braid class of `normal`, by breadth
    /// first search; edges outside the search tree record loop monomials.
    pub(crate) fn class_potential(
        m: &CoxeterMatrix,
        edges: &[(usize, usize)],
        normal: &[usize],
        expected: usize,
        loops: &mut HashSet<EdgeMonomial>,
    ) -> HashMap<Vec<usize>, EdgeMonomial> {
        let mut pot: HashMap<Vec<usize>, EdgeMonomial> = HashMap::with_capacity(expected);
        pot.insert(normal.to_vec(), EdgeMonomial::one(edges.len()));
        let mut queue = VecDeque::from([normal.to_vec()]);
        while let Some(v) = queue.pop_front() {
            let pv = pot[&v].clone();
            for mv in braid_moves(m, &v) {
                // [v] = c [u]
                let c = move_scalar(m, edges, mv);
                let u = apply_move(&v, mv);
                match pot.get(&u) {
                    Some(pu) => {
                        let l = pv.mul(&c.mul(pu).inv());
                        if !l.is_one() {
                            loops.insert(l);
                        }
                    }
                    None => {
                        pot.insert(u.clone(), c.inv().mul(&pv));
                        queue.push_back(u);
                    }
                }
            }
        }
        debug_assert_eq!(pot.len(), expected);
        pot
    }

    fn compute_transition(
        &self,
        g: usize,
        s: usize,
        loops: &mut HashSet<EdgeMonomial>,
    ) -> Transition {
        let h = self.group.mul_gen(g, s).expect("complete group");
        let wg = self.group.element(g).word().letters();
        if self.group.length(h) > self.group.length(g) {
            let mut u = wg.to_vec();
            u.push(s);
            return Transition {
                scalar: self.potential[h][&u].clone(),
                cancels: false,
            };
        }
        // [w(g)] = pot(v)^{-1} [v] for v ending in s, then drop the s s pair
        let mut witnesses: Vec<&Vec<usize>> = self.potential[g]
            .keys()
            .filter(|v| v.last() == Some(&s))
            .collect();
        witnesses.sort();
        let scalar_via = |v: &Vec<usize>| {
            self.potential[g][v]
                .inv()
                .mul(&self.potential[h][&v[..v.len() - 1]])
        };
        let first = scalar_via(witnesses[0]);
        for v in &witnesses[1..] {
            let l = scalar_via(v).mul(&first.inv());
            if !l.is_one() {
                loops.insert(l);
            }
        }
        Transition {
            scalar: first,
            cancels: true,
        }
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }

    /// Finite edges `i < j` indexing monomial exponents.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn transition(&self, g: usize, s: usize) -> &Transition {
        &self.transition[g][s]
    }

    /// Monomials that must evaluate to one for confluence.
    pub fn loops(&self) -> &[EdgeMonomial] {
        &self.loops
    }

    /// `[u] = potential * [w(g)]` for a reduced word `u` of `g`.
    pub fn potential(&self, g: usize, u: &[usize]) -> Option<&EdgeMonomial> {
        self.potential[g].get(u)
    }

    /// Rewrites `w(x) w(y)` to `w(x y)`: the accumulated monomial and the
    /// number of deleted pairs.
    pub fn product(&self, x: usize, y: usize) -> (EdgeMonomial, usize, usize) {
        let mut acc = EdgeMonomial::one(self.edges.len());
        let mut g = x;
        let mut deletions = 0;
        for &s in self.group.element(y).word().letters() {
            let tr = &self.transition[g][s];
            acc = acc.mul(&tr.scalar);
            deletions += tr.cancels as usize;
            g = self.group.mul_gen(g, s).expect("complete group");
        }
        (acc, deletions, g)
    }

    /// The first loop monomial that does not evaluate to one at `t`.
    pub fn confluence_failure(&self, t: &ThetaPoint) -> Option<&EdgeMonomial> {
        self.loops
            .iter()
            .find(|l| !l.evaluate(t, &self.edges).is_one())
    }

    /// Scalar of rewriting `w(x) w(y)` to `w(x y)` along a random path:
    /// random braid moves to expose each cancellation, then a random path
    /// to the normal form. Uses only the move rule, not the tables.
    pub fn random_path_product<R: Rng>(
        &self,
        x: usize,
        y: usize,
        t: &ThetaPoint,
        rng: &mut R,
    ) -> Rational {
        let m = &self.matrix;
        let mut word: Vec<usize> = self.group.element(x).word().letters().to_vec();
        let mut acc = Rational::one();
        for &s in self.group.element(y).word().letters() {
            let g = self
                .group
                .evaluate(&Word::new(word.clone()))
                .expect("complete group");
            let h = self.group.mul_gen(g, s).expect("complete group");
            if self.group.length(h) < self.group.length(g) {
                let (path, end) = random_braid_path(m, &word, |v| v.last() == Some(&s), rng);
                acc *= self.path_scalar(&word, &path, t);
                word = end;
                word.pop();
            } else {
                // wander a little inside the class before continuing
                let steps = rng.gen_range(0..4);
                for _ in 0..steps {
                    let moves = braid_moves(m, &word);
                    if let Some(&mv) = moves.choose(rng) {
                        acc *= move_scalar(m, &self.edges, mv).evaluate(t, &self.edges);
                        word = apply_move(&word, mv);
                    }
                }
                word.push(s);
            }
        }
        let target = self
            .group
            .element(self.group.multiply(x, y).expect("complete group"))
            .word()
            .letters()
            .to_vec();
        let (path, _) = random_braid_path(m, &word, |v| v == target.as_slice(), rng);
        acc * self.path_scalar(&word, &path, t)
    }

    fn path_scalar(&self, start: &[usize], path: &[BraidMove], t: &ThetaPoint) -> Rational {
        let mut acc = Rational::one();
        let mut w = start.to_vec();
        for &mv in path {
            acc *= move_scalar(&self.matrix, &self.edges, mv).evaluate(t, &self.edges);
            w = apply_move(&w, mv);
        }
        acc
    }
}

/// `[v] = c [u]` for the move `v -> u`.
fn move_scalar(m: &CoxeterMatrix, edges: &[(usize, usize)], mv: BraidMove) -> EdgeMonomial {
    let (x, y) = if mv.offset % 2 == 0 {
        (mv.a, mv.b)
    } else {
        (mv.b, mv.a)
    };
    let key = (x.min(y), x.max(y));
    let idx = edges.iter().position(|&e| e == key).expect("finite edge");
    let mut mono = EdgeMonomial::one(edges.len());
    mono.negative = m.m(x, y).expect("finite edge") % 2 == 0;
    mono.exponents[idx] = if x < y { 1 } else { -1 };
    mono
}

/// Breadth-first search with shuffled neighbour order from `start` to some
/// word satisfying `goal`.
fn random_braid_path<R: Rng>(
    m: &CoxeterMatrix,
    start: &[usize],
    goal: impl Fn(&[usize]) -> bool,
    rng: &mut R,
) -> (Vec<BraidMove>, Vec<usize>) {
    let mut parent: HashMap<Vec<usize>, Option<(Vec<usize>, BraidMove)>> = HashMap::new();
    parent.insert(start.to_vec(), None);
    let mut queue = VecDeque::from([start.to_vec()]);
    while let Some(v) = queue.pop_front() {
        if goal(&v) {
            let mut path = Vec::new();
            let mut cur = v.clone();
            while let Some(Some((prev, mv))) = parent.get(&cur) {
                path.push(*mv);
                cur = prev.clone();
            }
            path.reverse();
            return (path, v);
        }
        let mut moves = braid_moves(m, &v);
        moves.shuffle(rng);
        for mv in moves {
            let u = apply_move(&v, mv);
            if !parent.contains_key(&u) {
                parent.insert(u.clone(), Some((v.clone(), mv)));
                queue.push_back(u);
            }
        }
    }
    panic!("goal unreachable within the braid class");
}

/// A scalar multiple `coeff * [x]` of a basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedElement {
    pub coeff: Rational,
    /// Index into the basis of even elements.
    pub basis: usize,
}

/// Twisted group algebra of the even subgroup at a point of `Θ`: basis
/// `[x]`, `x` even, with `[x][y] = psi(x, y) [x y]`.
#[derive(Debug, Clone)]
pub struct TwistedAlgebra {
    rewriting: BraidRewriting,
    theta: ThetaPoint,
    /// group indices of the even elements, ShortLex order
    basis: Vec<usize>,
    position: Vec<Option<usize>>,
    /// `products[x][y] = (psi(x, y), x y)` in basis positions
    products: Vec<Vec<(Rational, usize)>>,
}

/// Builds the twisted algebra at `t`, rejecting points off `Θ` and
/// verifying confluence of the rewriting there.
pub fn build_twisted_algebra(
    m: &CoxeterMatrix,
    t: &ThetaPoint,
) -> Result<TwistedAlgebra, FlatnessError> {
    build_twisted_with(BraidRewriting::new(m)?, t)
}

/// Same as [`build_twisted_algebra`] with precomputed rewriting data.
pub fn build_twisted_with(
    rewriting: BraidRewriting,
    t: &ThetaPoint,
) -> Result<TwistedAlgebra, FlatnessError> {
    let m = rewriting.matrix().clone();
    if !theta_membership(t, &m) {
        return Err(FlatnessError::NotInTheta);
    }
    if let Some(l) = rewriting.confluence_failure(t) {
        return Err(FlatnessError::NonConfluent(format!("{l:?}")));
    }
    let g = rewriting.group();
    let basis = g.even_indices();
    let mut position = vec![None; g.len()];
    for (k, &x) in basis.iter().enumerate() {
        position[x] = Some(k);
    }
    let edges = rewriting.edges().to_vec();
    let products = basis
        .par_iter()
        .map(|&x| {
            basis
                .iter()
                .map(|&y| {
                    let (mono, _, xy) = rewriting.product(x, y);
                    (
                        mono.evaluate(t, &edges),
                        position[xy].expect("even times even is even"),
                    )
                })
                .collect()
        })
        .collect();
    Ok(TwistedAlgebra {
        rewriting,
        theta: t.clone(),
        basis,
        position,
        products,
    })
}

impl TwistedAlgebra {
    pub fn rewriting(&self) -> &BraidRewriting {
        &self.rewriting
    }

    pub fn theta(&self) -> &ThetaPoint {
        &self.theta
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Group index of the `k`-th basis element.
    pub fn basis_element(&self, k: usize) -> usize {
        self.basis[k]
    }

    pub fn position_of(&self, group_index: usize) -> Option<usize> {
        self.position[group_index]
    }

    pub fn psi(&self, x: usize, y: usize) -> &Rational {
        &self.products[x][y].0
    }

    pub fn unit(&self) -> TwistedElement {
        TwistedElement {
            coeff: Rational::one(),
            basis: 0,
        }
    }

    pub fn basis_vector(&self, k: usize) -> TwistedElement {
        TwistedElement {
            coeff: Rational::one(),
            basis: k,
        }
    }

    pub fn mul(&self, a: &TwistedElement, b: &TwistedElement) -> TwistedElement {
        let (psi, xy) = &self.products[a.basis][b.basis];
        TwistedElement {
            coeff: &a.coeff * &b.coeff * psi,
            basis: *xy,
        }
    }

    pub fn inverse(&self, a: &TwistedElement) -> TwistedElement {
        let g = self.rewriting.group();
        let xinv =
            self.position[g.inverse(self.basis[a.basis]).expect("complete group")].expect("even");
        let psi = self.psi(a.basis, xinv);
        TwistedElement {
            coeff: (&a.coeff * psi).recip(),
            basis: xinv,
        }
    }

    pub fn pow(&self, a: &TwistedElement, e: u32) -> TwistedElement {
        (0..e).fold(self.unit(), |acc, _| self.mul(&acc, a))
    }

    /// The generator `a_ij` as a multiple of the basis element `[s_i s_j]`.
    pub fn pair_generator(&self, i: usize, j: usize) -> TwistedElement {
        let g = self.rewriting.group();
        let x = g.evaluate(&Word::new(vec![i, j])).expect("complete group");
        let coeff = self
            .rewriting
            .potential(x, &[i, j])
            .expect("reduced word")
            .evaluate(&self.theta, self.rewriting.edges());
        TwistedElement {
            coeff,
            basis: self.position[x].expect("even"),
        }
    }

    /// First triple violating `psi(x,y) psi(xy,z) = psi(y,z) psi(x,yz)`.
    pub fn cocycle_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dimension();
        (0..n).into_par_iter().find_map_first(|x| {
            for y in 0..n {
                let (pxy, xy) = &self.products[x][y];
                for z in 0..n {
                    let (pyz, yz) = &self.products[y][z];
                    let (pxy_z, _) = &self.products[*xy][z];
                    let (px_yz, _) = &self.products[x][*yz];
                    if pxy * pxy_z != pyz * px_yz {
                        return Some((x, y, z));
                    }
                }
            }
            None
        })
    }

    /// First finite edge where `a_ij^m != (-1)^{m+1} t_ij`, over both
    /// orientations.
    pub fn power_failure(&self) -> Option<(usize, usize)> {
        let m = self.rewriting.matrix();
        for (i, j, order) in m.finite_edges() {
            for (a, b) in [(i, j), (j, i)] {
                let p = self.pow(&self.pair_generator(a, b), order);
                let sign = if order % 2 == 0 {
                    -Rational::one()
                } else {
                    Rational::one()
                };
                let expected = sign * self.theta.t(a, b).expect("finite edge");
                if p.basis != 0 || p.coeff != expected {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

/// Independent check of the structure constants against a Gröbner basis
/// of the presented even-part algebra at the symmetric chart of the same
/// point: `nf(w(x) w(y)) = psi(x, y) nf(w(x y))` for all basis pairs.
/// `Ok(false)` on any mismatch or when the presented algebra does not
/// have dimension `|W_+|`.
pub fn matches_presentation(
    alg: &TwistedAlgebra,
    degree_cap: Option<usize>,
) -> Result<bool, FlatnessError> {
    let m = alg.rewriting().matrix();
    let cap = match degree_cap {
        Some(c) => c,
        None => default_degree_cap(m).map_err(|_| FlatnessError::InfiniteGroup)?,
    };
    let gb = buchberger(&build_a_tilde_plus(m, &alg.theta().to_symmetric(m)), cap);
    if gb.dimension() != Dimension::Finite(alg.dimension() as u64) {
        return Ok(false);
    }
    let words = even_element_words(alg.rewriting().group());
    let normal: Vec<NcPoly> = words
        .iter()
        .map(|w| gb.reduce(&NcPoly::word(w.clone())))
        .collect();
    let n = alg.dimension();
    Ok((0..n).into_par_iter().all(|x| {
        (0..n).all(|y| {
            let lhs = gb.reduce(&NcPoly::word(words[x].concat(words[y].letters())));
            let (psi, xy) = &alg.products[x][y];
            lhs == normal[*xy].scale(psi)
        })
    }))
}

/// Recovers a point of `Θ` from the algebra alone: `a_bj := [s_b s_j]`,
/// `a_ij := a_bi^{-1} a_bj`, and `t_ij := (-1)^{m+1} a_ij^m`.
pub fn eta(alg: &TwistedAlgebra, base: usize) -> ThetaPoint {
    let m = alg.rewriting().matrix().clone();
    let g = alg.rewriting().group();
    let from_base = |j: usize| -> TwistedElement {
        if j == base {
            return alg.unit();
        }
        let x = g
            .evaluate(&Word::new(vec![base, j]))
            .expect("complete group");
        alg.basis_vector(alg.position_of(x).expect("even"))
    };
    let mut entries = BTreeMap::new();
    for (i, j, order) in m.finite_edges() {
        let a = alg.mul(&alg.inverse(&from_base(i)), &from_base(j));
        let p = alg.pow(&a, order);
        debug_assert_eq!(p.basis, 0);
        let sign = if order % 2 == 0 {
            -Rational::one()
        } else {
            Rational::one()
        };
        entries.insert((i, j), sign * p.coeff);
    }
    ThetaPoint::new(&m, entries).expect("powers of units are nonzero")
}

impl ThetaPoint {
    /// Action of `Z`: `t_ij -> (zeta_i / zeta_j)^{m_ij} t_ij`.
    pub fn rescale(&self, m: &CoxeterMatrix, z: &ZElement) -> ThetaPoint {
        let entries = self
            .entries()
            .iter()
            .map(|(&(i, j), t)| {
                let order = m.m(i, j).expect("finite edge") as i64;
                ((i, j), rational::pow(&z.z(i, j), order) * t)
            })
            .collect();
        ThetaPoint::new(m, entries).expect("rescaling keeps entries nonzero")
    }
}

/// A rational `ζ` with `target = source.rescale(ζ)`, if one exists.
pub fn z_orbit_witness(
    m: &CoxeterMatrix,
    source: &ThetaPoint,
    target: &ThetaPoint,
) -> Option<ZElement> {
    let r = m.rank();
    let ratio = |i: usize, j: usize| target.t(i, j).zip(source.t(i, j)).map(|(a, b)| a / b);
    // search order: depth first over the finite-edge graph
    let mut order = Vec::with_capacity(r);
    let mut parent = vec![None; r];
    let mut seen = vec![false; r];
    for root in 0..r {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            order.push(v);
            for w in 0..r {
                if !seen[w] && m.m(v, w).is_some() {
                    seen[w] = true;
                    parent[w] = Some(v);
                    stack.push(w);
                }
            }
        }
    }
    let mut zeta: Vec<Option<Rational>> = vec![None; r];
    fn consistent(
        m: &CoxeterMatrix,
        zeta: &[Option<Rational>],
        v: usize,
        ratio: &dyn Fn(usize, usize) -> Option<Rational>,
    ) -> bool {
        (0..zeta.len()).all(|u| match (&zeta[u], m.m(u, v)) {
            (Some(zu), Some(order)) if u != v => {
                let zv = zeta[v].as_ref().expect("assigned");
                ratio(u, v).is_some_and(|q| rational::pow(&(zu / zv), order as i64) == q)
            }
            _ => true,
        })
    }
    fn search(
        k: usize,
        order: &[usize],
        parent: &[Option<usize>],
        m: &CoxeterMatrix,
        zeta: &mut Vec<Option<Rational>>,
        ratio: &dyn Fn(usize, usize) -> Option<Rational>,
    ) -> bool {
        let Some(&v) = order.get(k) else { return true };
        let candidates = match parent[v] {
            None => vec![Rational::one()],
            Some(u) => {
                let q = match ratio(u, v) {
                    Some(q) => q,
                    None => return false,
                };
                let zu = zeta[u].clone().expect("parent assigned first");
                rational_roots(&q, m.m(u, v).expect("tree edge is finite"))
                    .into_iter()
                    .filter(|z| !z.is_zero())
                    .map(|z| &zu / z)
                    .collect()
            }
        };
        for c in candidates {
            zeta[v] = Some(c);
            if consistent(m, zeta, v, ratio) && search(k + 1, order, parent, m, zeta, ratio) {
                return true;
            }
        }
        zeta[v] = None;
        false
    }
    if !search(0, &order, &parent, m, &mut zeta, &ratio) {
        return None;
    }
    ZElement::new(zeta.into_iter().map(|z| z.expect("all assigned")).collect()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dihedral_square_signs() {
        // I2(2): s2 s1 = -t_21 ... at t = 1 one move gives -1
        let m = CoxeterMatrix::triangle(2, 3, 3).restrict(&[0, 1]);
        let rw = BraidRewriting::new(&m).unwrap();
        let g = rw.group();
        let x = g.evaluate(&Word::new(vec![1, 0])).unwrap();
        let pot = rw.potential(x, &[1, 0]).unwrap();
        assert_eq!(pot.sign(), -1);
        assert_eq!(pot.exponents(), &[-1]);
    }

    #[test]
    fn unit_point_a3() {
        let m = CoxeterMatrix::type_a(3);
        let alg = build_twisted_algebra(&m, &ThetaPoint::ones(&m)).unwrap();
        assert_eq!(alg.dimension(), 12);
        assert!(alg.cocycle_failure().is_none());
        assert!(alg.power_failure().is_none());
        assert!(matches_presentation(&alg, None).unwrap());
        for y in 0..12 {
            assert!(alg.psi(0, y).is_one() && alg.psi(y, 0).is_one());
        }
    }

    #[test]
    fn rejects_points_off_theta() {
        let m = CoxeterMatrix::type_a(3);
        let t = ThetaPoint::new(
            &m,
            BTreeMap::from([((0, 1), int(2)), ((1, 2), int(1)), ((0, 2), int(1))]),
        )
        .unwrap();
        assert_eq!(
            build_twisted_algebra(&m, &t).unwrap_err(),
            FlatnessError::NotInTheta
        );
    }

    #[test]
    fn rank_two_eta_is_exact() {
        let m = CoxeterMatrix::dihedral(5);
        let t = ThetaPoint::new(&m, BTreeMap::from([((0, 1), rat(-7, 3))])).unwrap();
        let alg = build_twisted_algebra(&m, &t).unwrap();
        assert_eq!(eta(&alg, 0), t);
    }

    #[test]
    fn random_paths_agree_with_tables() {
        let m = CoxeterMatrix::type_b(3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = super::super::theta::sample_theta(&m, &mut rng);
        let alg = build_twisted_algebra(&m, &t).unwrap();
        let n = alg.dimension();
        for _ in 0..40 {
            let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let (gx, gy) = (alg.basis_element(x), alg.basis_element(y));
            assert_eq!(
                &alg.rewriting().random_path_product(gx, gy, &t, &mut rng),
                alg.psi(x, y)
            );
        }
    }

    #[test]
    fn z_orbit_solver() {
        let m = CoxeterMatrix::type_a(3);
        let t = ThetaPoint::ones(&m);
        let z = ZElement::new(vec![int(1), int(2), rat(-1, 3)]).unwrap();
        let s = t.rescale(&m, &z);
        let w = z_orbit_witness(&m, &t, &s).unwrap();
        assert_eq!(t.rescale(&m, &w), s);
        let off = ThetaPoint::new(
            &m,
            BTreeMap::from([((0, 1), int(2)), ((1, 2), int(1)), ((0, 2), int(1))]),
        )
        .unwrap();
        assert!(z_orbit_witness(&m, &t, &off).is_none());
    }
}
