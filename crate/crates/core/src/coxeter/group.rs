use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::classify::is_finite;
use super::matrix::CoxeterMatrix;
use super::word::{Element, Word, WordSolver, DEFAULT_CLASS_CAP};
use super::CoxeterError;

/// Number of elements of each length `0..=N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthCounts {
    pub counts: Vec<u64>,
}

impl GrowthCounts {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn max_length(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }
}

/// How far to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthBound {
    All,
    UpTo(usize),
}

/// An enumerated ball (or the whole group) with right multiplication by
/// generators tabulated. Elements are sorted ShortLex, so index 0 is the
/// identity.
#[derive(Debug, Clone)]
pub struct CoxeterGroup {
    matrix: CoxeterMatrix,
    elements: Vec<Element>,
    index: HashMap<Word, usize>,
    /// `right[x][s]`: index of `x s`, `None` past the length bound
    right: Vec<Vec<Option<usize>>>,
    complete: bool,
}

impl CoxeterGroup {
    pub fn enumerate(matrix: &CoxeterMatrix, bound: LengthBound) -> Result<Self, CoxeterError> {
        Self::enumerate_with_cap(matrix, bound, DEFAULT_CLASS_CAP)
    }

    pub fn enumerate_with_cap(
        matrix: &CoxeterMatrix,
        bound: LengthBound,
        cap: usize,
    ) -> Result<Self, CoxeterError> {
        let max_len = match bound {
            LengthBound::All if !is_finite(matrix) => return Err(CoxeterError::InfiniteGroup),
            LengthBound::All => usize::MAX,
            LengthBound::UpTo(n) => n,
        };
        let rank = matrix.rank();
        let mut solver = WordSolver::with_cap(matrix, cap);
        let mut elements = vec![Element::identity()];
        let mut index: HashMap<Word, usize> = HashMap::from([(Word::empty(), 0)]);
        let mut layer_start = 0;
        let mut len = 0;
        while len < max_len && layer_start < elements.len() {
            let layer_end = elements.len();
            let mut next: Vec<Element> = Vec::new();
            for x in &elements[layer_start..layer_end] {
                for s in 0..rank {
                    if solver.is_right_descent(x, s)? {
                        continue;
                    }
                    next.push(solver.mul_generator(x, s)?);
                }
            }
            next.sort();
            next.dedup();
            for e in next {
                index.insert(e.word().clone(), elements.len());
                elements.push(e);
            }
            layer_start = layer_end;
            len += 1;
        }
        let complete = layer_start == elements.len() || bound == LengthBound::All;
        let mut right = Vec::with_capacity(elements.len());
        for x in &elements {
            let mut row = Vec::with_capacity(rank);
            for s in 0..rank {
                let y = solver.mul_generator(x, s)?;
                row.push(index.get(y.word()).copied());
            }
            right.push(row);
        }
        Ok(CoxeterGroup {
            matrix: matrix.clone(),
            elements,
            index,
            right,
            complete,
        })
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Whether every element of the group is present.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Index of the element a (not necessarily reduced) word represents, if
    /// it lies in the enumerated ball.
    pub fn evaluate(&self, w: &Word) -> Option<usize> {
        w.letters().iter().try_fold(0, |x, &s| self.mul_gen(x, s))
    }

    pub fn mul_gen(&self, x: usize, s: usize) -> Option<usize> {
        self.right[x][s]
    }

    pub fn multiply(&self, x: usize, y: usize) -> Option<usize> {
        self.elements[y]
            .word()
            .letters()
            .iter()
            .try_fold(x, |acc, &s| self.mul_gen(acc, s))
    }

    pub fn inverse(&self, x: usize) -> Option<usize> {
        self.evaluate(&self.elements[x].word().reversed())
    }

    pub fn length(&self, x: usize) -> usize {
        self.elements[x].length()
    }

    pub fn growth(&self) -> GrowthCounts {
        let max = self.elements.last().map_or(0, Element::length);
        let mut counts = vec![0u64; max + 1];
        for e in &self.elements {
            counts[e.length()] += 1;
        }
        GrowthCounts { counts }
    }

    /// Indices of even-length elements, in ShortLex order.
    pub fn even_indices(&self) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&i| self.elements[i].is_even())
            .collect()
    }

    /// Longest element of a complete finite group.
    pub fn longest(&self) -> Option<usize> {
        self.complete.then(|| self.elements.len() - 1)
    }
}

/// All elements up to the bound together with their growth counts.
pub fn enumerate(
    matrix: &CoxeterMatrix,
    bound: LengthBound,
) -> Result<(Vec<Element>, GrowthCounts), CoxeterError> {
    let g = CoxeterGroup::enumerate(matrix, bound)?;
    let counts = match bound {
        LengthBound::UpTo(n) => {
            let mut c = g.growth().counts;
            c.resize(n + 1, 0);
            GrowthCounts { counts: c }
        }
        LengthBound::All => g.growth(),
    };
    Ok((g.elements, counts))
}

/// Even-length elements up to the bound.
pub fn even_elements(
    matrix: &CoxeterMatrix,
    bound: LengthBound,
) -> Result<Vec<Element>, CoxeterError> {
    let (all, _) = enumerate(matrix, bound)?;
    Ok(all.into_iter().filter(Element::is_even).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::Order;

    #[test]
    fn a3_growth() {
        let (els, counts) = enumerate(&CoxeterMatrix::type_a(3), LengthBound::All).unwrap();
        assert_eq!(counts.counts, vec![1, 3, 5, 6, 5, 3, 1]);
        assert_eq!(els.len(), 24);
    }

    #[test]
    fn small_groups() {
        let a1a1 = CoxeterMatrix::from_edges(2, &[]).unwrap();
        assert_eq!(
            enumerate(&a1a1, LengthBound::All).unwrap().1.counts,
            vec![1, 2, 1]
        );
        assert_eq!(even_elements(&a1a1, LengthBound::All).unwrap().len(), 2);
        assert_eq!(
            even_elements(&CoxeterMatrix::dihedral(5), LengthBound::All)
                .unwrap()
                .len(),
            5
        );
        assert_eq!(
            even_elements(&CoxeterMatrix::type_a(3), LengthBound::All)
                .unwrap()
                .len(),
            12
        );
    }

    #[test]
    fn infinite_needs_bound() {
        let aff = CoxeterMatrix::affine_a(2);
        assert_eq!(
            enumerate(&aff, LengthBound::All).unwrap_err(),
            CoxeterError::InfiniteGroup
        );
        let (_, counts) = enumerate(&aff, LengthBound::UpTo(2)).unwrap();
        assert_eq!(counts.counts[..2], [1, 3]);
        let inf = CoxeterMatrix::from_edges(2, &[(1, 2, Order::Infinite)]).unwrap();
        assert_eq!(
            enumerate(&inf, LengthBound::UpTo(4)).unwrap().1.counts,
            vec![1, 2, 2, 2, 2]
        );
    }

    #[test]
    fn table_is_consistent() {
        let g = CoxeterGroup::enumerate(&CoxeterMatrix::type_b(3), LengthBound::All).unwrap();
        assert_eq!(g.len(), 48);
        for x in 0..g.len() {
            let inv = g.inverse(x).unwrap();
            assert_eq!(g.multiply(x, inv), Some(0));
        }
    }
}
