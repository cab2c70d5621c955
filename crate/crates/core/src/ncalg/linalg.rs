use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num_traits::Zero;

use crate::exact::Rational;

/// Incremental Gaussian elimination over sparse rational vectors.
#[derive(Debug, Clone)]
pub struct RowEchelon<K: Ord + Hash + Clone> {
    /// pivot key -> row whose largest key is the pivot, normalised to 1 there
    rows: HashMap<K, BTreeMap<K, Rational>>,
}

impl<K: Ord + Hash + Clone> Default for RowEchelon<K> {
    fn default() -> Self {
        RowEchelon {
            rows: HashMap::new(),
        }
    }
}

impl<K: Ord + Hash + Clone> RowEchelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residue of `v` modulo the current span.
    pub fn residue(&self, input: impl IntoIterator<Item = (K, Rational)>) -> BTreeMap<K, Rational> {
        let mut v: BTreeMap<K, Rational> = BTreeMap::new();
        // callers may pass repeated keys
        for (k, c) in input {
            *v.entry(k).or_insert_with(Rational::zero) += c;
        }
        v.retain(|_, c| !c.is_zero());
        let mut done: BTreeMap<K, Rational> = BTreeMap::new();
        while let Some((k, c)) = v.pop_last() {
            match self.rows.get(&k) {
                None => {
                    done.insert(k, c);
                }
                Some(row) => {
                    for (rk, rc) in row.range(..&k) {
                        let e = v.entry(rk.clone()).or_insert_with(Rational::zero);
                        *e -= &c * rc;
                        if e.is_zero() {
                            v.remove(rk);
                        }
                    }
                }
            }
        }
        done
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: impl IntoIterator<Item = (K, Rational)>) -> bool {
        let r = self.residue(v);
        let Some((pivot, c)) = r.last_key_value().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = c.recip();
        let row = r.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        self.rows.insert(pivot, row);
        true
    }
}

/// Rank of a list of sparse vectors.
pub fn rank<K: Ord + Hash + Clone>(vectors: impl IntoIterator<Item = Vec<(K, Rational)>>) -> usize {
    let mut e = RowEchelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn rank_of_dependent_set() {
        let v = |a: i64, b: i64, c: i64| vec![(0, int(a)), (1, int(b)), (2, int(c))];
        assert_eq!(rank(vec![v(1, 2, 3), v(2, 4, 6), v(0, 1, 1)]), 2);
        assert_eq!(
            rank(vec![v(1, 0, 0), v(0, 1, 0), v(0, 0, 1), v(1, 1, 1)]),
            3
        );
        assert_eq!(rank(Vec::<Vec<(u8, Rational)>>::new()), 0);
    }
}
