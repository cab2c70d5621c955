use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::CoxeterMatrix;
use super::CoxeterError;

/// A sequence of generator indices (0-based positions in the vertex order).
/// Ordered ShortLex: shorter first, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Letters shifted to 1-based labels, for display next to the usual
    /// `s_1, s_2, ...` naming.
    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&l| l + 1).collect()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", l + 1)?;
        }
        write!(f, "]")
    }
}

/// A group element, held as its ShortLex-least reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element {
    normal: Word,
}

impl Element {
    pub fn identity() -> Self {
        Element {
            normal: Word::empty(),
        }
    }

    /// Caller guarantees `normal` is the ShortLex-least reduced word.
    pub(crate) fn from_normal(normal: Word) -> Self {
        Element { normal }
    }

    pub fn word(&self) -> &Word {
        &self.normal
    }

    pub fn length(&self) -> usize {
        self.normal.len()
    }

    pub fn is_even(&self) -> bool {
        self.normal.len() % 2 == 0
    }

    /// Sign character: `-1` on odd elements.
    pub fn sign(&self) -> i32 {
        if self.is_even() {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.normal.fmt(f)
    }
}

/// Default limit on the number of reduced words in one braid class.
pub const DEFAULT_CLASS_CAP: usize = 1_000_000;

struct BraidClass {
    normal: Word,
    words: Vec<Word>,
    /// bit `s` set when some word in the class ends with `s`
    right_descents: u64,
    /// lazily filled right multiplication by generators
    next: Vec<Option<usize>>,
}

/// Word problem by closure under braid moves.
///
/// Every reduced word of an element is reachable from any other by braid
/// moves alone, so an element is identified with the braid class of one of
/// its reduced words. Classes are built on demand and cached.
pub struct WordSolver<'m> {
    matrix: &'m CoxeterMatrix,
    cap: usize,
    index: HashMap<Word, usize>,
    classes: Vec<BraidClass>,
}

impl<'m> WordSolver<'m> {
    pub fn new(matrix: &'m CoxeterMatrix) -> Self {
        Self::with_cap(matrix, DEFAULT_CLASS_CAP)
    }

    pub fn with_cap(matrix: &'m CoxeterMatrix, cap: usize) -> Self {
        assert!(matrix.rank() <= 64, "at most 64 generators");
        let mut solver = WordSolver {
            matrix,
            cap,
            index: HashMap::new(),
            classes: Vec::new(),
        };
        solver.index.insert(Word::empty(), 0);
        solver.classes.push(BraidClass {
            normal: Word::empty(),
            words: vec![Word::empty()],
            right_descents: 0,
            next: vec![None; matrix.rank()],
        });
        solver
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        self.matrix
    }

    /// Number of braid classes (elements) discovered so far.
    pub fn classes_seen(&self) -> usize {
        self.classes.len()
    }

    fn check_letters(&self, w: &Word) -> Result<(), CoxeterError> {
        match w.0.iter().find(|&&l| l >= self.matrix.rank()) {
            Some(&l) => Err(CoxeterError::UnknownVertex(l)),
            None => Ok(()),
        }
    }

    /// Reduced words reachable from `start` by braid moves.
    fn braid_closure(&self, start: Word) -> Result<Vec<Word>, CoxeterError> {
        let mut seen: HashSet<Word> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone());
        queue.push_back(start);
        let mut out = Vec::new();
        while let Some(w) = queue.pop_front() {
            let letters = w.letters();
            for p in 0..letters.len().saturating_sub(1) {
                let (a, b) = (letters[p], letters[p + 1]);
                if a == b {
                    continue;
                }
                let Some(m) = self.matrix.m(a, b) else {
                    continue;
                };
                let m = m as usize;
                if p + m > letters.len() {
                    continue;
                }
                let alternating = (0..m).all(|k| letters[p + k] == if k % 2 == 0 { a } else { b });
                if !alternating {
                    continue;
                }
                let mut v = letters.to_vec();
                for k in 0..m {
                    v[p + k] = if k % 2 == 0 { b } else { a };
                }
                let v = Word(v);
                if seen.insert(v.clone()) {
                    if seen.len() > self.cap {
                        return Err(CoxeterError::Inconclusive { cap: self.cap });
                    }
                    queue.push_back(v);
                }
            }
            out.push(w);
        }
        Ok(out)
    }

    /// Class of the reduced word `w`, creating it if needed.
    fn class_of_reduced(&mut self, w: Word) -> Result<usize, CoxeterError> {
        if let Some(&id) = self.index.get(&w) {
            return Ok(id);
        }
        let words = self.braid_closure(w)?;
        let id = self.classes.len();
        let mut descents = 0u64;
        for word in &words {
            if let Some(&last) = word.0.last() {
                descents |= 1 << last;
            }
            self.index.insert(word.clone(), id);
        }
        let normal = words.iter().min().cloned().expect("class is nonempty");
        self.classes.push(BraidClass {
            normal,
            words,
            right_descents: descents,
            next: vec![None; self.matrix.rank()],
        });
        Ok(id)
    }

    /// Right multiplication of a class by a generator.
    fn mul_gen(&mut self, class: usize, s: usize) -> Result<usize, CoxeterError> {
        if let Some(id) = self.classes[class].next[s] {
            return Ok(id);
        }
        let c = &self.classes[class];
        let target = if c.right_descents >> s & 1 == 1 {
            // exchange condition: drop a trailing `s`
            let w = c
                .words
                .iter()
                .find(|w| w.0.last() == Some(&s))
                .expect("descent witness");
            let shorter = Word(w.0[..w.len() - 1].to_vec());
            self.class_of_reduced(shorter)?
        } else {
            let longer = Word(c.normal.0.iter().copied().chain([s]).collect());
            self.class_of_reduced(longer)?
        };
        self.classes[class].next[s] = Some(target);
        Ok(target)
    }

    fn class_of_word(&mut self, w: &Word) -> Result<usize, CoxeterError> {
        self.check_letters(w)?;
        let mut c = 0;
        for &s in w.letters() {
            c = self.mul_gen(c, s)?;
        }
        Ok(c)
    }

    pub fn normal_form(&mut self, w: &Word) -> Result<Element, CoxeterError> {
        let c = self.class_of_word(w)?;
        Ok(Element::from_normal(self.classes[c].normal.clone()))
    }

    pub fn is_reduced(&mut self, w: &Word) -> Result<bool, CoxeterError> {
        let e = self.normal_form(w)?;
        Ok(e.length() == w.len())
    }

    pub fn multiply(&mut self, x: &Element, y: &Element) -> Result<Element, CoxeterError> {
        self.normal_form(&x.word().concat(y.word()))
    }

    pub fn inverse(&mut self, x: &Element) -> Result<Element, CoxeterError> {
        self.normal_form(&x.word().reversed())
    }

    /// `x * s_s`.
    pub fn mul_generator(&mut self, x: &Element, s: usize) -> Result<Element, CoxeterError> {
        self.normal_form(&Word(x.word().0.iter().copied().chain([s]).collect()))
    }

    /// Every reduced word of `x`, ShortLex-sorted.
    pub fn reduced_words(&mut self, x: &Element) -> Result<Vec<Word>, CoxeterError> {
        let c = self.class_of_word(x.word())?;
        let mut v = self.classes[c].words.clone();
        v.sort();
        Ok(v)
    }

    /// Whether `s` is a right descent of `x`, i.e. `l(x s) < l(x)`.
    pub fn is_right_descent(&mut self, x: &Element, s: usize) -> Result<bool, CoxeterError> {
        let c = self.class_of_word(x.word())?;
        Ok(self.classes[c].right_descents >> s & 1 == 1)
    }
}
