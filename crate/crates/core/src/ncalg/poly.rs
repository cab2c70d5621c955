use std::borrow::Borrow;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::field::Field;
use crate::exact::{format_rational, Rational};

/// A word in the free monoid on generators `0..n`, ordered deglex: by
/// length, then lexicographically in generator order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeWord(pub SmallVec<[u16; 16]>);

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord(SmallVec::new())
    }

    pub fn from_slice(s: &[u16]) -> Self {
        FreeWord(SmallVec::from_slice(s))
    }

    pub fn letter(g: u16) -> Self {
        FreeWord(SmallVec::from_slice(&[g]))
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &[u16]) -> FreeWord {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        FreeWord(v)
    }

    /// `left * self * right`.
    pub fn sandwich(left: &[u16], mid: &[u16], right: &[u16]) -> FreeWord {
        let mut v = SmallVec::with_capacity(left.len() + mid.len() + right.len());
        v.extend_from_slice(left);
        v.extend_from_slice(mid);
        v.extend_from_slice(right);
        FreeWord(v)
    }

    /// First position where `factor` occurs in `self`.
    pub fn find(&self, factor: &[u16]) -> Option<usize> {
        if factor.len() > self.len() {
            return None;
        }
        (0..=self.len() - factor.len()).find(|&p| &self.0[p..p + factor.len()] == factor)
    }
}

pub fn deglex(a: &[u16], b: &[u16]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl Ord for FreeWord {
    fn cmp(&self, other: &Self) -> Ordering {
        deglex(&self.0, &other.0)
    }
}

impl PartialOrd for FreeWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Borrow<[u16]> for FreeWord {
    fn borrow(&self) -> &[u16] {
        &self.0
    }
}

/// Noncommutative polynomial over a field. Terms are kept sorted in
/// decreasing deglex order, so the leading term comes first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly<K> {
    terms: Vec<(FreeWord, K)>,
}

/// Polynomials with rational coefficients.
pub type NcPoly = Poly<Rational>;

impl<K: Field> Poly<K> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        Self::term(FreeWord::empty(), c)
    }

    pub fn generator(g: u16) -> Self {
        Self::term(FreeWord::letter(g), K::one())
    }

    pub fn word(w: FreeWord) -> Self {
        Self::term(w, K::one())
    }

    pub fn term(w: FreeWord, c: K) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly {
                terms: vec![(w, c)],
            }
        }
    }

    /// Collects like terms and drops zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (FreeWord, K)>) -> Self {
        let mut map: BTreeMap<FreeWord, K> = BTreeMap::new();
        for (w, c) in terms {
            let slot = map.entry(w).or_insert_with(K::zero);
            *slot = slot.add_ref(&c);
        }
        Self::from_map(map)
    }

    pub(crate) fn from_map(map: BTreeMap<FreeWord, K>) -> Self {
        Poly {
            terms: map
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Terms in decreasing deglex order.
    pub fn terms(&self) -> &[(FreeWord, K)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_word(&self) -> Option<&FreeWord> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&K> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn degree(&self) -> Option<usize> {
        self.leading_word().map(FreeWord::len)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.len() == w[1].0.len())
    }

    /// Largest generator index used, plus one.
    pub fn generator_bound(&self) -> usize {
        self.terms
            .iter()
            .flat_map(|(w, _)| w.letters().iter().map(|&g| g as usize + 1))
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(w, d)| (w.clone(), d.mul_ref(c)))
                .collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv()),
            None => Self::zero(),
        }
    }

    /// `left * self * right`; a monomial order is preserved by two-sided
    /// multiplication, so no re-sorting is needed.
    pub fn sandwich(&self, left: &[u16], right: &[u16]) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (FreeWord::sandwich(left, w.letters(), right), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficient of `w`.
    pub fn coeff(&self, w: &[u16]) -> K {
        self.terms
            .iter()
            .find(|(v, _)| v.letters() == w)
            .map_or_else(K::zero, |(_, c)| c.clone())
    }

    /// Image in another field; `None` when some coefficient has no image.
    pub fn map_field<L: Field>(&self, f: impl Fn(&K) -> Option<L>) -> Option<Poly<L>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (w, c) in &self.terms {
            let d = f(c)?;
            if !d.is_zero() {
                terms.push((w.clone(), d));
            }
        }
        Some(Poly { terms })
    }
}

impl NcPoly {
    /// Reduction modulo a prime, when every denominator is invertible.
    pub fn to_field<L: Field>(&self) -> Option<Poly<L>> {
        self.map_field(L::from_rational)
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let word: Vec<&str> = w
                .letters()
                .iter()
                .map(|&g| names[g as usize].as_str())
                .collect();
            let coeff = if a.is_integer() {
                a.numer().to_string()
            } else {
                format_rational(&a)
            };
            match (a.is_one(), word.is_empty()) {
                (_, true) => s.push_str(&coeff),
                (true, false) => s.push_str(&word.join("*")),
                (false, false) => {
                    s.push_str(&coeff);
                    s.push('*');
                    s.push_str(&word.join("*"));
                }
            }
        }
        s
    }
}

fn merge<K: Field>(a: &[(FreeWord, K)], b: &[(FreeWord, K)], negate_b: bool) -> Poly<K> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let fix = |c: &K| if negate_b { c.neg_ref() } else { c.clone() };
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => y.0.cmp(&x.0),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => unreachable!(),
        };
        match ord {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((b[j].0.clone(), fix(&b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b {
                    a[i].1.sub_ref(&b[j].1)
                } else {
                    a[i].1.add_ref(&b[j].1)
                };
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    Poly { terms: out }
}

impl<K: Field> Add for &Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: &Poly<K>) -> Poly<K> {
        merge(&self.terms, &rhs.terms, false)
    }
}

impl<K: Field> Sub for &Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: &Poly<K>) -> Poly<K> {
        merge(&self.terms, &rhs.terms, true)
    }
}

impl<K: Field> Neg for &Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg_ref()))
                .collect(),
        }
    }
}

impl<K: Field> Mul for &Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: &Poly<K>) -> Poly<K> {
        Poly::from_terms(self.terms.iter().flat_map(|(u, a)| {
            rhs.terms
                .iter()
                .map(move |(v, b)| (u.concat(v.letters()), a.mul_ref(b)))
        }))
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<K: Field> $tr for Poly<K> {
            type Output = Poly<K>;
            fn $m(self, rhs: Poly<K>) -> Poly<K> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.generator_bound();
        let names: Vec<String> = (0..n).map(|g| format!("x{g}")).collect();
        f.write_str(&self.display_with(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn ordering_and_arithmetic() {
        let x = NcPoly::generator(0);
        let y = NcPoly::generator(1);
        let p = &(&x * &y) - &(&y * &x);
        assert_eq!(p.leading_word().unwrap().letters(), &[1, 0]);
        let sq = (&x - &NcPoly::one()).pow(2);
        assert_eq!(sq.terms().len(), 3);
        assert_eq!(sq.coeff(&[0]), int(-2));
        assert!((&p + &(-&p)).is_zero());
        assert_eq!(sq.monic(), sq);
        assert!(p.is_homogeneous() && !sq.is_homogeneous());
    }
}
