use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use serde::{Deserialize, Serialize};

use super::automaton::StandardWords;
use super::field::Field;
use super::poly::{FreeWord, NcPoly, Poly};
use super::NcError;
use crate::exact::Rational;

/// Generators with display names, and defining relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub names: Vec<String>,
    pub relations: Vec<NcPoly>,
}

impl Presentation {
    pub fn new(names: Vec<String>, relations: Vec<NcPoly>) -> Self {
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Presentation { names, relations }
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn max_degree(&self) -> usize {
        self.relations
            .iter()
            .filter_map(NcPoly::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn generator(&self, name: &str) -> Option<u16> {
        self.names.iter().position(|n| n == name).map(|i| i as u16)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroebnerStatus {
    /// Every obstruction was resolved.
    Complete,
    /// Obstructions above this degree were left unresolved.
    TruncatedAt(usize),
}

/// Dimension of a finitely presented algebra as far as it can be certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dimension {
    Finite(u64),
    Infinite,
    /// Truncated run; the number of standard words up to the cap is only a
    /// witness for the degree-bounded part.
    Unknown {
        standard_words_to_cap: u64,
    },
}

impl Dimension {
    pub fn finite(self) -> Option<u64> {
        match self {
            Dimension::Finite(n) => Some(n),
            _ => None,
        }
    }
}

/// Monic polynomials indexed by their leading words, for reduction.
#[derive(Debug, Clone)]
pub struct Reducer<K = Rational> {
    polys: Vec<Poly<K>>,
    index: HashMap<FreeWord, usize>,
    /// number of leading words of each length
    lengths: BTreeMap<usize, usize>,
}

impl<K> Default for Reducer<K> {
    fn default() -> Self {
        Reducer {
            polys: Vec::new(),
            index: HashMap::new(),
            lengths: BTreeMap::new(),
        }
    }
}

impl<K: Field> Reducer<K> {
    /// `basis` must be monic with pairwise distinct leading words.
    pub fn new(basis: &[Poly<K>]) -> Self {
        let mut r = Reducer::default();
        for p in basis {
            r.push(p.clone());
        }
        r
    }

    fn push(&mut self, p: Poly<K>) -> usize {
        let lw = p.leading_word().expect("nonzero").clone();
        let id = self.polys.len();
        *self.lengths.entry(lw.len()).or_insert(0) += 1;
        self.index.insert(lw, id);
        self.polys.push(p);
        id
    }

    fn remove(&mut self, id: usize) {
        let lw = self.polys[id].leading_word().expect("nonzero").clone();
        self.index.remove(&lw);
        let n = self.lengths.get_mut(&lw.len()).expect("length tracked");
        *n -= 1;
        if *n == 0 {
            self.lengths.remove(&lw.len());
        }
    }

    /// Some `(basis index, position)` such that the leading word of that
    /// element occurs in `w` at that position.
    pub fn find_divisor(&self, w: &[u16]) -> Option<(usize, usize)> {
        for &len in self.lengths.keys() {
            if len > w.len() {
                break;
            }
            for p in 0..=w.len() - len {
                if let Some(&id) = self.index.get(&w[p..p + len]) {
                    return Some((id, p));
                }
            }
        }
        None
    }

    /// Full reduction: no word of the result contains a leading word.
    pub fn reduce(&self, p: &Poly<K>) -> Poly<K> {
        let mut work: BTreeMap<FreeWord, K> = p
            .terms()
            .iter()
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        let mut done: Vec<(FreeWord, K)> = Vec::new();
        while let Some((w, c)) = work.pop_last() {
            match self.find_divisor(w.letters()) {
                None => done.push((w, c)),
                Some((id, pos)) => {
                    let g = &self.polys[id];
                    let len = g.leading_word().unwrap().len();
                    let (left, right) = (&w.letters()[..pos], &w.letters()[pos + len..]);
                    for (gw, gc) in &g.terms()[1..] {
                        let key = FreeWord::sandwich(left, gw.letters(), right);
                        let delta = c.mul_ref(gc);
                        match work.entry(key) {
                            std::collections::btree_map::Entry::Occupied(mut e) => {
                                let v = e.get().sub_ref(&delta);
                                if v.is_zero() {
                                    e.remove();
                                } else {
                                    *e.get_mut() = v;
                                }
                            }
                            std::collections::btree_map::Entry::Vacant(e) => {
                                e.insert(delta.neg_ref());
                            }
                        }
                    }
                }
            }
        }
        // `done` is already in decreasing order
        Poly::from_map(done.into_iter().collect())
    }

    pub fn polys(&self) -> &[Poly<K>] {
        &self.polys
    }
}

/// A completed or truncated Gröbner basis for the deglex order.
#[derive(Debug, Clone)]
pub struct GroebnerResult<K = Rational> {
    basis: Vec<Poly<K>>,
    status: GroebnerStatus,
    num_generators: usize,
    degree_cap: usize,
    reducer: Reducer<K>,
    automaton: StandardWords,
}

impl<K: Field> GroebnerResult<K> {
    fn new(
        mut basis: Vec<Poly<K>>,
        status: GroebnerStatus,
        num_generators: usize,
        degree_cap: usize,
    ) -> Self {
        basis.sort_by(|a, b| a.leading_word().cmp(&b.leading_word()));
        let reducer = Reducer::new(&basis);
        let lws: Vec<&[u16]> = basis
            .iter()
            .map(|p| p.leading_word().unwrap().letters())
            .collect();
        let automaton = StandardWords::new(num_generators, &lws);
        GroebnerResult {
            basis,
            status,
            num_generators,
            degree_cap,
            reducer,
            automaton,
        }
    }

    /// Monic, interreduced, sorted by leading word.
    pub fn basis(&self) -> &[Poly<K>] {
        &self.basis
    }

    pub fn status(&self) -> GroebnerStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == GroebnerStatus::Complete
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn reduce(&self, p: &Poly<K>) -> Poly<K> {
        self.reducer.reduce(p)
    }

    pub fn reducer(&self) -> &Reducer<K> {
        &self.reducer
    }

    pub fn automaton(&self) -> &StandardWords {
        &self.automaton
    }

    pub fn dimension(&self) -> Dimension {
        match self.status {
            GroebnerStatus::Complete => match self.automaton.total() {
                Some(n) => Dimension::Finite(n),
                None => Dimension::Infinite,
            },
            GroebnerStatus::TruncatedAt(d) => Dimension::Unknown {
                standard_words_to_cap: self.automaton.counts_by_length(d).iter().sum(),
            },
        }
    }

    /// Standard words, deglex-sorted: all of them when the quotient is
    /// finite-dimensional, otherwise those up to the degree cap.
    pub fn standard_words(&self) -> Vec<FreeWord> {
        let bound = match (self.status, self.automaton.max_length()) {
            (GroebnerStatus::Complete, Some(l)) => l,
            _ => self.degree_cap,
        };
        self.automaton.words_up_to(bound)
    }

    /// Number of standard words of each length `0..=n`.
    pub fn counts_by_length(&self, n: usize) -> Vec<u64> {
        self.automaton.counts_by_length(n)
    }
}

struct Engine<K> {
    reducer: Reducer<K>,
    live: Vec<bool>,
    queue: BinaryHeap<Reverse<(usize, u64, usize, usize, usize)>>,
    seq: u64,
}

impl<K: Field> Engine<K> {
    fn lw(&self, id: usize) -> &[u16] {
        self.reducer.polys[id].leading_word().unwrap().letters()
    }

    fn insert(&mut self, p: &Poly<K>) {
        let mut pending = vec![p.clone()];
        while let Some(p) = pending.pop() {
            let h = self.reducer.reduce(&p).monic();
            let Some(hw) = h.leading_word().cloned() else {
                continue;
            };
            // elements whose leading word is divisible by the new one
            let displaced: Vec<usize> = (0..self.live.len())
                .filter(|&id| {
                    self.live[id]
                        && FreeWord::from_slice(self.lw(id))
                            .find(hw.letters())
                            .is_some()
                })
                .collect();
            for id in displaced {
                self.live[id] = false;
                self.reducer.remove(id);
                pending.push(self.reducer.polys[id].clone());
            }
            let new = self.reducer.push(h);
            self.live.push(true);
            for id in 0..self.live.len() {
                if self.live[id] {
                    self.add_overlaps(id, new);
                    if id != new {
                        self.add_overlaps(new, id);
                    }
                }
            }
        }
    }

    /// Overlaps where a proper suffix of `lw(a)` is a proper prefix of `lw(b)`.
    fn add_overlaps(&mut self, a: usize, b: usize) {
        let (la, lb) = (self.lw(a).len(), self.lw(b).len());
        for k in 1..la.min(lb) {
            if self.lw(a)[la - k..] == self.lw(b)[..k] {
                self.seq += 1;
                self.queue.push(Reverse((la + lb - k, self.seq, a, b, k)));
            }
        }
    }

    fn s_poly(&self, a: usize, b: usize, k: usize) -> Poly<K> {
        let (wa, wb) = (self.lw(a), self.lw(b));
        let u = &wa[..wa.len() - k];
        let v = &wb[k..];
        let left = self.reducer.polys[a].sandwich(&[], v);
        let right = self.reducer.polys[b].sandwich(u, &[]);
        &left - &right
    }
}

/// Deglex Gröbner basis by overlap completion, processing obstructions in
/// order of degree and resolving only those of degree at most `degree_cap`.
pub fn buchberger(p: &Presentation, degree_cap: usize) -> GroebnerResult {
    complete(p.relations.clone(), p.num_generators(), degree_cap)
}

/// The same completion with the relations mapped into another field, e.g.
/// integers modulo a prime. `None` when some coefficient has no image there.
pub fn buchberger_over<K: Field>(p: &Presentation, degree_cap: usize) -> Option<GroebnerResult<K>> {
    let rels = p
        .relations
        .iter()
        .map(NcPoly::to_field)
        .collect::<Option<Vec<_>>>()?;
    Some(complete(rels, p.num_generators(), degree_cap))
}

fn complete<K: Field>(
    mut rels: Vec<Poly<K>>,
    num_generators: usize,
    degree_cap: usize,
) -> GroebnerResult<K> {
    rels.retain(|r| !r.is_zero());
    let mut e = Engine {
        reducer: Reducer::default(),
        live: Vec::new(),
        queue: BinaryHeap::new(),
        seq: 0,
    };
    rels.sort_by(|a, b| a.leading_word().cmp(&b.leading_word()));
    for r in &rels {
        e.insert(r);
    }
    let mut truncated = false;
    while let Some(Reverse((deg, _, a, b, k))) = e.queue.pop() {
        if !(e.live[a] && e.live[b]) {
            continue;
        }
        if deg > degree_cap {
            truncated = true;
            break;
        }
        let s = e.s_poly(a, b, k);
        e.insert(&s);
        if e.live
            .iter()
            .zip(&e.reducer.polys)
            .any(|(&l, p)| l && p.degree() == Some(0))
        {
            // the ideal contains 1
            e.queue.clear();
        }
    }
    // final tail interreduction
    let ids: Vec<usize> = (0..e.live.len()).filter(|&i| e.live[i]).collect();
    let mut basis = Vec::with_capacity(ids.len());
    for &id in &ids {
        let poly = &e.reducer.polys[id];
        let (lw, lc) = &poly.terms()[0];
        let tail = Poly::from_terms(poly.terms()[1..].iter().cloned());
        let tail = e.reducer.reduce(&tail);
        basis.push(&Poly::term(lw.clone(), lc.clone()) + &tail);
    }
    let status = if truncated {
        GroebnerStatus::TruncatedAt(degree_cap)
    } else {
        GroebnerStatus::Complete
    };
    GroebnerResult::new(basis, status, num_generators, degree_cap)
}

/// Convenience wrapper: dimension of the presented algebra.
pub fn dimension(r: &GroebnerResult) -> Dimension {
    r.dimension()
}

/// Dimensions of the graded pieces `0..=n` of an algebra with homogeneous
/// relations.
pub fn hilbert_function(p: &Presentation, n: usize) -> Result<Vec<u64>, NcError> {
    if let Some(i) = p.relations.iter().position(|r| !r.is_homogeneous()) {
        return Err(NcError::Inhomogeneous(i));
    }
    let r = buchberger(p, n.max(p.max_degree()));
    Ok(r.counts_by_length(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn gens(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn reduce_examples() {
        let x = NcPoly::generator(0);
        let y = NcPoly::generator(1);
        let red = Reducer::new(&[x.pow(2)]);
        assert!(red.reduce(&x.pow(2)).is_zero());
        assert!(red.reduce(&(&(&x * &y) * &x.pow(2))).is_zero());
        let comm = Reducer::new(&[(&(&y * &x) - &(&x * &y))]);
        assert_eq!(comm.reduce(&(&y * &x)), &x * &y);
    }

    #[test]
    fn small_presentations() {
        let x = NcPoly::generator(0);
        let r = buchberger(&Presentation::new(gens(1), vec![x.pow(2)]), 4);
        assert!(r.is_complete());
        assert_eq!(r.dimension(), Dimension::Finite(2));

        let (a, b) = (NcPoly::generator(0), NcPoly::generator(1));
        let one = NcPoly::one();
        let rels = vec![&(&a * &b) - &one, &(&b * &a) - &one, (&a - &one).pow(3)];
        let r = buchberger(&Presentation::new(gens(2), rels), 8);
        assert_eq!(r.dimension(), Dimension::Finite(3));

        let r = buchberger(&Presentation::new(gens(2), vec![a.pow(2), b.pow(2)]), 6);
        assert_eq!(r.dimension(), Dimension::Infinite);
        assert_eq!(r.counts_by_length(4), vec![1, 2, 2, 2, 2]);
    }

    #[test]
    fn truncation_is_reported() {
        // the braid relation has an infinite deglex basis
        let (x, y) = (NcPoly::generator(0), NcPoly::generator(1));
        let rel = &(&(&y * &x) * &y) - &(&(&x * &y) * &x);
        let r = buchberger(&Presentation::new(gens(2), vec![rel]), 8);
        assert_eq!(r.status(), GroebnerStatus::TruncatedAt(8));
        assert!(matches!(r.dimension(), Dimension::Unknown { .. }));
    }

    #[test]
    fn hilbert() {
        let a = NcPoly::generator(0);
        let p = Presentation::new(gens(1), vec![a.pow(3)]);
        assert_eq!(hilbert_function(&p, 5).unwrap(), vec![1, 1, 1, 0, 0, 0]);
        let free = Presentation::new(gens(2), vec![]);
        assert_eq!(hilbert_function(&free, 3).unwrap(), vec![1, 2, 4, 8]);
        let p = Presentation::new(gens(1), vec![a.pow(2)]);
        assert_eq!(hilbert_function(&p, 3).unwrap(), vec![1, 1, 0, 0]);
        let bad = Presentation::new(gens(1), vec![&a - &NcPoly::constant(int(1))]);
        assert!(hilbert_function(&bad, 2).is_err());
    }

    #[test]
    fn unit_ideal() {
        let a = NcPoly::generator(0);
        let one = NcPoly::one();
        let r = buchberger(&Presentation::new(gens(1), vec![&a - &one, a.clone()]), 4);
        assert_eq!(r.dimension(), Dimension::Finite(0));
        let r = buchberger(&Presentation::new(vec![], vec![]), 2);
        assert_eq!(r.dimension(), Dimension::Finite(1));
    }
}
