//! Counting words that avoid a finite set of factors.
//!
//! An Aho–Corasick automaton over the forbidden factors recognises, state
//! by state, whether the word read so far has a forbidden suffix. Standard
//! words are the paths through the remaining states.

use std::collections::VecDeque;

use super::poly::FreeWord;

#[derive(Debug, Clone)]
pub struct StandardWords {
    alphabet: usize,
    /// `delta[state][letter]`; `None` when the target state is dead
    delta: Vec<Vec<Option<usize>>>,
    root_dead: bool,
    /// longest standard word when finitely many exist
    max_length: Option<usize>,
    total: Option<u64>,
}

impl StandardWords {
    pub fn new(alphabet: usize, forbidden: &[&[u16]]) -> Self {
        // trie
        let mut children: Vec<Vec<Option<usize>>> = vec![vec![None; alphabet]];
        let mut terminal = vec![false];
        for w in forbidden {
            let mut s = 0;
            for &g in *w {
                let g = g as usize;
                s = match children[s][g] {
                    Some(t) => t,
                    None => {
                        children.push(vec![None; alphabet]);
                        terminal.push(false);
                        let t = children.len() - 1;
                        children[s][g] = Some(t);
                        t
                    }
                };
            }
            terminal[s] = true;
        }
        // failure links and the full transition function
        let n = children.len();
        let mut fail = vec![0usize; n];
        let mut goto = vec![vec![0usize; alphabet]; n];
        let mut queue = VecDeque::new();
        for g in 0..alphabet {
            match children[0][g] {
                Some(t) => {
                    goto[0][g] = t;
                    queue.push_back(t);
                }
                None => goto[0][g] = 0,
            }
        }
        while let Some(s) = queue.pop_front() {
            terminal[s] = terminal[s] || terminal[fail[s]];
            for g in 0..alphabet {
                match children[s][g] {
                    Some(t) => {
                        fail[t] = goto[fail[s]][g];
                        goto[s][g] = t;
                        queue.push_back(t);
                    }
                    None => goto[s][g] = goto[fail[s]][g],
                }
            }
        }
        let delta: Vec<Vec<Option<usize>>> = goto
            .iter()
            .map(|row| row.iter().map(|&t| (!terminal[t]).then_some(t)).collect())
            .collect();
        let mut a = StandardWords {
            alphabet,
            delta,
            root_dead: terminal[0],
            max_length: None,
            total: None,
        };
        a.analyse();
        a
    }

    /// Longest-path lengths and path counts over the live states, if the
    /// live part reachable from the root is acyclic.
    fn analyse(&mut self) {
        if self.root_dead {
            self.max_length = Some(0);
            self.total = Some(0);
            return;
        }
        let n = self.delta.len();
        // iterative DFS with colours: 0 new, 1 on stack, 2 done
        let mut colour = vec![0u8; n];
        let mut count = vec![0u64; n];
        let mut depth = vec![0usize; n];
        let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
        colour[0] = 1;
        while let Some(&mut (s, ref mut next)) = stack.last_mut() {
            if *next < self.alphabet {
                let g = *next;
                *next += 1;
                if let Some(t) = self.delta[s][g] {
                    match colour[t] {
                        0 => {
                            colour[t] = 1;
                            stack.push((t, 0));
                        }
                        1 => return, // cycle: infinitely many standard words
                        _ => {}
                    }
                }
            } else {
                let mut c = 1u64;
                let mut d = 0usize;
                for t in self.delta[s].iter().flatten() {
                    c = c
                        .checked_add(count[*t])
                        .expect("standard word count overflow");
                    d = d.max(depth[*t] + 1);
                }
                count[s] = c;
                depth[s] = d;
                colour[s] = 2;
                stack.pop();
            }
        }
        self.total = Some(count[0]);
        self.max_length = Some(depth[0]);
    }

    /// Number of standard words, if finite.
    pub fn total(&self) -> Option<u64> {
        self.total
    }

    /// Length of the longest standard word, if finitely many exist.
    pub fn max_length(&self) -> Option<usize> {
        self.max_length
    }

    pub fn counts_by_length(&self, n: usize) -> Vec<u64> {
        let mut out = vec![0u64; n + 1];
        if self.root_dead {
            return out;
        }
        let mut cur = vec![0u64; self.delta.len()];
        cur[0] = 1;
        for slot in out.iter_mut() {
            *slot = cur.iter().sum();
            let mut next = vec![0u64; self.delta.len()];
            for (s, &c) in cur.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for t in self.delta[s].iter().flatten() {
                    next[*t] += c;
                }
            }
            cur = next;
        }
        out
    }

    /// Standard words of length at most `n`, deglex-sorted.
    pub fn words_up_to(&self, n: usize) -> Vec<FreeWord> {
        if self.root_dead {
            return Vec::new();
        }
        let mut layer = vec![(FreeWord::empty(), 0usize)];
        let mut out = vec![FreeWord::empty()];
        for _ in 0..n {
            let mut next = Vec::new();
            for (w, s) in &layer {
                for g in 0..self.alphabet {
                    if let Some(t) = self.delta[*s][g] {
                        next.push((w.concat(&[g as u16]), t));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().map(|(w, _)| w.clone()));
            layer = next;
        }
        out
    }

    /// Whether `w` avoids every forbidden factor.
    pub fn is_standard(&self, w: &[u16]) -> bool {
        if self.root_dead {
            return false;
        }
        let mut s = 0;
        for &g in w {
            match self.delta[s][g as usize] {
                Some(t) => s = t,
                None => return false,
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let a = StandardWords::new(2, &[&[0, 0], &[1, 1]]);
        assert_eq!(a.total(), None);
        assert_eq!(a.counts_by_length(3), vec![1, 2, 2, 2]);
        let b = StandardWords::new(2, &[&[0, 0], &[1, 1], &[0, 1, 0]]);
        assert_eq!(b.counts_by_length(4), vec![1, 2, 2, 1, 0]);
        assert_eq!(b.total(), Some(6));
        assert_eq!(b.max_length(), Some(3));
        assert_eq!(b.words_up_to(5).len(), 6);
        assert!(b.is_standard(&[1, 0, 1]) && !b.is_standard(&[0, 1, 0]));
        assert_eq!(StandardWords::new(0, &[]).total(), Some(1));
        assert_eq!(StandardWords::new(1, &[&[]]).total(), Some(0));
    }
}
