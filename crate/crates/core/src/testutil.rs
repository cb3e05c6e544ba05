//! Letter-string helpers for unit tests (`a..z` generators, `A..Z` inverses).

use alloc::vec::Vec;

use crate::automorphisms::{Automorphism, Endomorphism};
use crate::words::{CyclicWord, Word};

fn values(s: &str) -> Vec<i32> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| {
            if c.is_ascii_lowercase() {
                (c as u8 - b'a' + 1) as i32
            } else {
                -((c as u8 - b'A' + 1) as i32)
            }
        })
        .collect()
}

pub fn wn(s: &str, rank: usize) -> Word {
    Word::reduce(&values(s), rank).unwrap()
}

pub fn w(s: &str) -> Word {
    let max = values(s).iter().map(|v| v.unsigned_abs() as usize).max().unwrap_or(0);
    wn(s, max.max(2))
}

pub fn cw(s: &str) -> CyclicWord {
    CyclicWord::of(&w(s))
}

/// `"a->ab; b->b"`; rank is the number of clauses.
pub fn endo(s: &str) -> Endomorphism {
    let clauses: Vec<&str> = s.split(';').map(str::trim).filter(|c| !c.is_empty()).collect();
    let rank = clauses.len();
    let mut images = alloc::vec![Word::empty(rank); rank];
    for c in clauses {
        let (lhs, rhs) = c.split_once("->").unwrap();
        let g = values(lhs.trim())[0] as usize - 1;
        images[g] = wn(rhs.trim(), rank);
    }
    Endomorphism::new(rank, images).unwrap()
}

pub fn aut(s: &str) -> Automorphism {
    endo(s).certify().unwrap()
}
