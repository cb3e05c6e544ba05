//! Freely and cyclically reduced words over `{a_1, .., a_N}^{±1}`.
//!
//! Letters are stored as a compact index `2(i-1) + s` where `s = 1` marks
//! an inverse. The derived order is therefore `a_1 < a_1^-1 < a_2 < ...`,
//! which is the order used for canonical rotations, and inversion is a
//! single bit flip.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::{Error, Result};

/// Anything with a formal inverse that can be freely cancelled.
pub trait Symbol: Copy + Eq {
    fn inv(self) -> Self;
}

impl Symbol for u32 {
    #[inline]
    fn inv(self) -> Self {
        self ^ 1
    }
}

/// Appends `s`, cancelling it against the last symbol if they are inverse.
/// Returns `true` when a cancellation happened.
#[inline]
pub fn push_reduced<S: Symbol>(buf: &mut Vec<S>, s: S) -> bool {
    if buf.last() == Some(&s.inv()) {
        buf.pop();
        true
    } else {
        buf.push(s);
        false
    }
}

/// Strips matching inverse pairs from the two ends of a freely reduced
/// sequence; returns how many symbols were stripped from each end.
pub fn cyclic_core_offset<S: Symbol>(s: &[S]) -> usize {
    let n = s.len();
    let mut k = 0;
    while 2 * k + 1 < n && s[k] == s[n - 1 - k].inv() {
        k += 1;
    }
    k
}

/// Index of the lexicographically least rotation.
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n < 2 {
        return 0;
    }
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        match s[(i + k) % n].cmp(&s[(j + k) % n]) {
            Ordering::Equal => k += 1,
            Ordering::Greater => {
                i += k + 1;
                if i <= j {
                    i = j + 1;
                }
                k = 0;
            }
            Ordering::Less => {
                j += k + 1;
                if j <= i {
                    j = i + 1;
                }
                k = 0;
            }
        }
    }
    i.min(j)
}

/// Smallest `p` such that the cyclic sequence is invariant under rotation by `p`.
pub fn cyclic_period<T: Eq>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    // prefix function of s
    let mut pi = alloc::vec![0usize; n];
    for i in 1..n {
        let mut k = pi[i - 1];
        while k > 0 && s[i] != s[k] {
            k = pi[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        pi[i] = k;
    }
    let p = n - pi[n - 1];
    if n.is_multiple_of(p) {
        p
    } else {
        n
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

impl Letter {
    /// Letter with signed value `±i` (`i` in `1..=rank`).
    pub fn new(value: i32, rank: usize) -> Result<Self> {
        let i = value.unsigned_abs() as usize;
        if value == 0 || i > rank {
            return Err(Error::InvalidLetter { value, rank });
        }
        Ok(Self::from_value(value))
    }

    pub(crate) fn from_value(value: i32) -> Self {
        debug_assert!(value != 0);
        let i = value.unsigned_abs() - 1;
        Letter(2 * i + u32::from(value < 0))
    }

    /// The generator `a_{i+1}` (zero based index `i`).
    pub fn generator(i: usize) -> Self {
        Letter(2 * i as u32)
    }

    pub fn from_index(index: u32) -> Self {
        Letter(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn value(self) -> i32 {
        let i = (self.0 / 2 + 1) as i32;
        if self.is_inverse() {
            -i
        } else {
            i
        }
    }

    /// Zero based generator index.
    pub fn generator_index(self) -> usize {
        (self.0 / 2) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }
}

impl Symbol for Letter {
    #[inline]
    fn inv(self) -> Self {
        self.inverse()
    }
}

impl core::fmt::Debug for Letter {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// A freely reduced word in `F_N`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty(rank: usize) -> Self {
        Word { rank, letters: Vec::new() }
    }

    pub fn generator(rank: usize, i: usize) -> Self {
        assert!(i < rank, "generator index out of range");
        Word { rank, letters: alloc::vec![Letter::generator(i)] }
    }

    /// Free reduction of a sequence of signed letter values.
    pub fn reduce(raw: &[i32], rank: usize) -> Result<Self> {
        let mut letters = Vec::with_capacity(raw.len());
        for &v in raw {
            push_reduced(&mut letters, Letter::new(v, rank)?);
        }
        Ok(Word { rank, letters })
    }

    /// Free reduction of letters assumed valid for `rank`.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(rank: usize, letters: I) -> Self {
        let mut out = Vec::new();
        for l in letters {
            debug_assert!(l.generator_index() < rank);
            push_reduced(&mut out, l);
        }
        Word { rank, letters: out }
    }

    /// Wraps letters already known to be freely reduced.
    pub(crate) fn from_reduced_unchecked(rank: usize, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|p| p[0] != p[1].inverse()));
        Word { rank, letters }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn values(&self) -> Vec<i32> {
        self.letters.iter().map(|l| l.value()).collect()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        if self.rank == rank {
            Ok(())
        } else {
            Err(Error::RankMismatch { expected: rank, found: self.rank })
        }
    }

    /// `reduce(self · other)`.
    pub fn concat_reduce(&self, other: &Word) -> Result<Word> {
        other.check_rank(self.rank)?;
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Ok(Word { rank: self.rank, letters })
    }

    pub fn pow(&self, k: usize) -> Word {
        let mut letters = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            for &l in &self.letters {
                push_reduced(&mut letters, l);
            }
        }
        Word { rank: self.rank, letters }
    }

    /// Length of the cyclic reduction (`||w||_A`).
    pub fn cyclic_len(&self) -> usize {
        self.len() - 2 * cyclic_core_offset(&self.letters)
    }

    /// Splits `self = conjugator · cyclic · conjugator⁻¹` with `cyclic`
    /// in canonical rotation.
    pub fn cyclic_reduce(&self) -> (CyclicWord, Word) {
        let k = cyclic_core_offset(&self.letters);
        let core = &self.letters[k..self.len() - k];
        let r = least_rotation(core);
        let mut conj = self.letters[..k].to_vec();
        for &l in &core[..r] {
            push_reduced(&mut conj, l);
        }
        let mut rotated = Vec::with_capacity(core.len());
        rotated.extend_from_slice(&core[r..]);
        rotated.extend_from_slice(&core[..r]);
        (
            CyclicWord { rank: self.rank, letters: rotated },
            Word { rank: self.rank, letters: conj },
        )
    }
}

/// A cyclically reduced word stored in its least rotation; one conjugacy class.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CyclicWord {
    rank: usize,
    letters: Vec<Letter>,
}

impl CyclicWord {
    pub fn empty(rank: usize) -> Self {
        CyclicWord { rank, letters: Vec::new() }
    }

    /// Conjugacy class of `w`.
    pub fn of(w: &Word) -> Self {
        w.cyclic_reduce().0
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_word(&self) -> Word {
        Word { rank: self.rank, letters: self.letters.clone() }
    }

    /// Class of the inverse element.
    pub fn inverse(&self) -> CyclicWord {
        CyclicWord::of(&self.to_word().inverse())
    }

    /// Not a proper power.
    pub fn is_primitive_root(&self) -> bool {
        !self.is_empty() && cyclic_period(&self.letters) == self.len()
    }

    pub fn pow(&self, k: usize) -> CyclicWord {
        let mut letters = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(&self.letters);
        }
        CyclicWord { rank: self.rank, letters }
    }
}

fn occurrences_of(v: &[Letter], w: &[Letter]) -> usize {
    let n = w.len();
    (0..n)
        .filter(|&i| v.iter().enumerate().all(|(j, l)| w[(i + j) % n] == *l))
        .count()
}

/// Number of cyclic positions of `w` where `v` or `v⁻¹` starts.
pub fn occurrences(v: &Word, w: &CyclicWord) -> Result<usize> {
    if v.is_empty() {
        return Err(Error::EmptyWord);
    }
    v.check_rank(w.rank)?;
    let inv = v.inverse();
    Ok(occurrences_of(&v.letters, &w.letters) + occurrences_of(&inv.letters, &w.letters))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{cw, w};
    use proptest::prelude::*;

    #[test]
    fn reduce_examples() {
        assert_eq!(Word::reduce(&[1, -1, 2], 2).unwrap().values(), [2]);
        assert!(Word::reduce(&[1, 2, -2, -1], 2).unwrap().is_empty());
        assert_eq!(Word::reduce(&[1, 2, -1], 2).unwrap().values(), [1, 2, -1]);
        assert_eq!(Word::reduce(&[3], 2), Err(Error::InvalidLetter { value: 3, rank: 2 }));
        assert!(Word::reduce(&[0], 2).is_err());
    }

    #[test]
    fn concat_examples() {
        assert!(w("ab").concat_reduce(&w("BA")).unwrap().is_empty());
        assert_eq!(w("ab").concat_reduce(&w("b")).unwrap(), w("abb"));
        assert_eq!(w("ab").concat_reduce(&w("Ba")).unwrap(), w("aa"));
        let other_rank = Word::generator(3, 0);
        assert!(w("ab").concat_reduce(&other_rank).is_err());
    }

    #[test]
    fn cyclic_reduce_examples() {
        let (c, conj) = w("Aba").cyclic_reduce();
        assert_eq!(c, cw("b"));
        assert_eq!(conj, w("A"));
        let (c, conj) = w("abab").cyclic_reduce();
        assert_eq!(c, cw("abab"));
        assert!(conj.is_empty());
        let (c, conj) = w("aBA").cyclic_reduce();
        assert_eq!(c, cw("B"));
        assert_eq!(conj, w("a"));
    }

    #[test]
    fn canonical_rotation_order() {
        // a < A < b < B
        assert_eq!(cw("ba").letters(), w("ab").letters());
        assert_eq!(cw("Ba").letters(), w("aB").letters());
        assert_eq!(cw("bA").letters(), w("Ab").letters());
        assert_eq!(cw("baBa").letters(), w("abaB").letters());
    }

    #[test]
    fn occurrences_examples() {
        assert_eq!(occurrences(&w("a"), &cw("abaB")).unwrap(), 2);
        assert_eq!(occurrences(&w("a"), &cw("bbb")).unwrap(), 0);
        // ab at position 0; BA never occurs in abaB
        assert_eq!(occurrences(&w("ab"), &cw("abaB")).unwrap(), 1);
        assert_eq!(occurrences(&w("Ba"), &cw("abaB")).unwrap(), 1);
        assert_eq!(occurrences(&Word::empty(2), &cw("ab")), Err(Error::EmptyWord));
        // wrap-around for |v| > |w|
        assert_eq!(occurrences(&w("aaa"), &cw("a")).unwrap(), 1);
        assert_eq!(occurrences(&w("a"), &CyclicWord::empty(2)).unwrap(), 0);
    }

    #[test]
    fn primitive_roots() {
        assert!(cw("ab").is_primitive_root());
        assert!(!cw("abab").is_primitive_root());
        assert!(!cw("aa").is_primitive_root());
        assert!(cw("aab").is_primitive_root());
        assert!(!CyclicWord::empty(2).is_primitive_root());
    }

    fn raw_word(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<i32>> {
        let r = rank as i32;
        prop::collection::vec((1..=r, any::<bool>()).prop_map(|(i, s)| if s { -i } else { i }), 0..=max_len)
    }

    fn reduced_word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
        raw_word(rank, max_len).prop_map(move |r| Word::reduce(&r, rank).unwrap())
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(raw in raw_word(3, 100)) {
            let once = Word::reduce(&raw, 3).unwrap();
            let twice = Word::reduce(&once.values(), 3).unwrap();
            prop_assert_eq!(&once, &twice);
            prop_assert!(once.len() <= raw.len());
            prop_assert_eq!(once.len() % 2, raw.len() % 2);
        }

        #[test]
        fn word_times_inverse_is_trivial(x in reduced_word(3, 60)) {
            prop_assert!(x.concat_reduce(&x.inverse()).unwrap().is_empty());
        }

        #[test]
        fn concat_length_bounds(u in reduced_word(2, 30), v in reduced_word(2, 30)) {
            let uv = u.concat_reduce(&v).unwrap();
            prop_assert!(uv.len() >= u.len().abs_diff(v.len()));
            prop_assert_eq!(uv.len() % 2, (u.len() + v.len()) % 2);
        }

        #[test]
        fn cyclic_reduce_recomposes(x in reduced_word(3, 40)) {
            let (c, conj) = x.cyclic_reduce();
            let back = conj.concat_reduce(&c.to_word()).unwrap().concat_reduce(&conj.inverse()).unwrap();
            prop_assert_eq!(back, x.clone());
            prop_assert_eq!(c.len(), x.cyclic_len());
        }

        #[test]
        fn occurrences_flip_symmetric(v in reduced_word(2, 4), x in reduced_word(2, 30)) {
            prop_assume!(!v.is_empty());
            let c = CyclicWord::of(&x);
            prop_assert_eq!(occurrences(&v, &c).unwrap(), occurrences(&v.inverse(), &c).unwrap());
        }

        #[test]
        fn occurrences_scale_with_powers(v in reduced_word(2, 4), x in reduced_word(2, 20), k in 1usize..=5) {
            let c = CyclicWord::of(&x);
            prop_assume!(!v.is_empty() && v.len() <= c.len());
            let ck = CyclicWord::of(&c.to_word().pow(k));
            prop_assert_eq!(occurrences(&v, &ck).unwrap(), k * occurrences(&v, &c).unwrap());
        }
    }
}
