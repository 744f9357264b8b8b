//! Canonical codes for posets up to isomorphism.
//!
//! Elements are first partitioned by an isomorphism-invariant colour (sizes of
//! down- and up-sets, refined twice by the colours of their neighbours). A
//! canonical labelling lists the colour classes in ascending order; within the
//! classes every ordering is tried and the lexicographically least code wins.
//!
//! The code for a labelling `s` is the sequence of words `w_p`, where `w_p`
//! records `s[q] <= s[p]` (low half) and `s[p] <= s[q]` (high half) for all
//! `q < p`. The prefix `w_0..w_p` depends only on the first `p + 1` positions,
//! which is what makes branch-and-bound pruning possible.

use std::cmp::Ordering;

use crate::poset::{bits, Elem, Poset};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    size: usize,
    words: Vec<u128>,
}

impl CanonicalCode {
    pub fn size(&self) -> usize {
        self.size
    }
}

pub fn canonical_code(p: &Poset) -> CanonicalCode {
    canonical_form(p).0
}

/// Canonical code together with the labelling that realises it:
/// position `i` of the canonical poset is element `perm[i]` of `p`.
pub fn canonical_form(p: &Poset) -> (CanonicalCode, Vec<Elem>) {
    let n = p.size();
    let colours = refined_colours(p);
    let mut slots: Vec<usize> = colours.clone();
    slots.sort_unstable();

    let mut search = Search {
        p,
        colours: &colours,
        slots: &slots,
        current: Vec::with_capacity(n),
        words: Vec::with_capacity(n),
        used: 0,
        best_words: Vec::new(),
        best_perm: Vec::new(),
    };
    search.descend();
    (CanonicalCode { size: n, words: search.best_words }, search.best_perm)
}

pub fn is_isomorphic(a: &Poset, b: &Poset) -> bool {
    a.size() == b.size() && canonical_code(a) == canonical_code(b)
}

struct Search<'a> {
    p: &'a Poset,
    colours: &'a [usize],
    slots: &'a [usize],
    current: Vec<Elem>,
    words: Vec<u128>,
    used: u64,
    best_words: Vec<u128>,
    best_perm: Vec<Elem>,
}

impl Search<'_> {
    fn descend(&mut self) {
        let pos = self.current.len();
        if pos == self.slots.len() {
            if self.best_perm.is_empty() || self.words < self.best_words {
                self.best_words.clone_from(&self.words);
                self.best_perm.clone_from(&self.current);
            }
            return;
        }
        let want = self.slots[pos];
        for e in 0..self.slots.len() {
            if self.used >> e & 1 == 1 || self.colours[e] != want {
                continue;
            }
            let word = self.word(e);
            if !self.best_perm.is_empty() {
                let prefix = self.words.iter().chain(std::iter::once(&word));
                if prefix.cmp(self.best_words[..=pos].iter()) == Ordering::Greater {
                    continue;
                }
            }
            self.current.push(e);
            self.words.push(word);
            self.used |= 1u64 << e;
            self.descend();
            self.used &= !(1u64 << e);
            self.words.pop();
            self.current.pop();
        }
    }

    fn word(&self, e: Elem) -> u128 {
        let mut below = 0u64;
        let mut above = 0u64;
        for (q, &other) in self.current.iter().enumerate() {
            if self.p.leq(other, e) {
                below |= 1u64 << q;
            }
            if self.p.leq(e, other) {
                above |= 1u64 << q;
            }
        }
        (above as u128) << 64 | below as u128
    }
}

fn refined_colours(p: &Poset) -> Vec<usize> {
    let n = p.size();
    let mut colours: Vec<usize> = {
        let keys: Vec<(u32, u32)> =
            (0..n).map(|x| (p.down_mask(x).count_ones(), n as u32 - p.up_mask(x).count_ones())).collect();
        rank(&keys)
    };
    for _ in 0..2 {
        let keys: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|x| {
                let mut below: Vec<usize> = bits(p.down_mask(x) & !(1u64 << x)).map(|y| colours[y]).collect();
                let mut above: Vec<usize> = bits(p.up_mask(x) & !(1u64 << x)).map(|y| colours[y]).collect();
                below.sort_unstable();
                above.sort_unstable();
                (colours[x], below, above)
            })
            .collect();
        colours = rank(&keys);
    }
    colours
}

fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn chain_invariant_under_relabelling() {
        let c3 = Poset::chain(3).unwrap();
        let code = canonical_code(&c3);
        for perm in permutations(3) {
            assert_eq!(canonical_code(&c3.relabel(&perm)), code);
        }
    }

    #[test]
    fn diamond_vs_chain() {
        assert_ne!(canonical_code(&Poset::diamond()), canonical_code(&Poset::chain(4).unwrap()));
    }

    #[test]
    fn pentagon_all_labellings() {
        let n5 = Poset::pentagon();
        let code = canonical_code(&n5);
        for perm in permutations(5) {
            assert_eq!(canonical_code(&n5.relabel(&perm)), code);
        }
    }

    #[test]
    fn canonical_perm_realises_code() {
        let n5 = Poset::pentagon();
        let (code, perm) = canonical_form(&n5);
        let canon = n5.relabel(&perm);
        let (code2, perm2) = canonical_form(&canon);
        assert_eq!(code, code2);
        assert_eq!(perm2, (0..5).collect::<Vec<_>>());
    }
}
