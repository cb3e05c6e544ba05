//! Enumeration of reduced words and of conjugacy classes.

use alloc::vec::Vec;

use crate::words::{CyclicWord, Letter, Word};

/// All freely reduced words of length exactly `k`, in lexicographic order.
pub fn reduced_words(rank: usize, k: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(k);
    fn rec(rank: usize, k: usize, buf: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if buf.len() == k {
            out.push(Word::from_letters(rank, buf.iter().copied()));
            return;
        }
        for idx in 0..2 * rank as u32 {
            let l = Letter::from_index(idx);
            if buf.last() == Some(&l.inverse()) {
                continue;
            }
            buf.push(l);
            rec(rank, k, buf, out);
            buf.pop();
        }
    }
    rec(rank, k, &mut buf, &mut out);
    out
}

/// Every non-trivial conjugacy class with cyclic length at most `max_len`
/// (proper powers included), as canonical cyclic words.
pub fn cyclic_words(rank: usize, max_len: usize) -> Vec<CyclicWord> {
    let mut out = Vec::new();
    for n in 1..=max_len {
        for w in reduced_words(rank, n) {
            let l = w.letters();
            if l[0] == l[n - 1].inverse() {
                continue;
            }
            let c = CyclicWord::of(&w);
            if c.letters() == l {
                out.push(c);
            }
        }
    }
    out
}

/// Calls `f` once per root-free conjugacy class with `1 ≤ ||w||_A ≤ max_len`,
/// passing its canonical letters (a cyclically reduced Lyndon word).
///
/// Prenecklace generation in the style of Fredricksen–Kessler–Maiorana,
/// restricted to freely reduced prefixes.
pub fn for_each_root_free_class<F: FnMut(&[Letter])>(rank: usize, max_len: usize, mut f: F) {
    let mut a: Vec<Letter> = Vec::with_capacity(max_len);
    // p[t] = length of the longest Lyndon prefix of a[..t]
    fn rec<F: FnMut(&[Letter])>(rank: usize, max_len: usize, a: &mut Vec<Letter>, p: usize, f: &mut F) {
        let t = a.len();
        if t > 0 && p == t && a[0] != a[t - 1].inverse() {
            f(a);
        }
        if t == max_len {
            return;
        }
        let lo = if t == 0 { 0 } else { a[t - p].index() };
        for idx in lo..2 * rank as u32 {
            let l = Letter::from_index(idx);
            if t > 0 && a[t - 1] == l.inverse() {
                continue;
            }
            let np = if t == 0 || idx > a[t - p].index() { t + 1 } else { p };
            a.push(l);
            rec(rank, max_len, a, np, f);
            a.pop();
        }
    }
    rec(rank, max_len, &mut a, 1, &mut f);
}

/// Number of freely reduced words of length `k` (`2N(2N-1)^{k-1}`).
pub fn reduced_word_count(rank: usize, k: usize) -> u128 {
    if k == 0 {
        return 1;
    }
    2 * rank as u128 * (2 * rank as u128 - 1).pow(k as u32 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    #[test]
    fn reduced_word_counts() {
        for rank in 2..=3 {
            for k in 1..=5 {
                assert_eq!(reduced_words(rank, k).len() as u128, reduced_word_count(rank, k));
            }
        }
    }

    #[test]
    fn root_free_classes_match_brute_force() {
        for rank in 2..=3 {
            let max = if rank == 2 { 8 } else { 5 };
            let mut fast = BTreeSet::new();
            for_each_root_free_class(rank, max, |l| {
                assert!(fast.insert(l.to_vec()), "duplicate");
            });
            let brute: BTreeSet<Vec<Letter>> = cyclic_words(rank, max)
                .into_iter()
                .filter(|c| c.is_primitive_root())
                .map(|c| c.letters().to_vec())
                .collect();
            assert_eq!(fast, brute);
        }
    }

    #[test]
    fn cyclic_word_counts_rank_two() {
        let c = cyclic_words(2, 2);
        // a, A, b, B; aa, AA, bb, BB, ab, aB, Ab, AB
        assert_eq!(c.len(), 12);
    }
}
