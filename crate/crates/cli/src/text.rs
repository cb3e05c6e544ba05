//! Letter-string forms of words and automorphisms.
//!
//! Generators are `a..z` in order, inverses are the uppercase letters, so
//! `"abAB"` is a commutator. An automorphism is written clause by clause,
//! `"a->ab; b->b"`; whitespace is ignored.

use outerspace_core::{Automorphism, Endomorphism, Letter, Word};

use crate::error::{CliError, Result};

const MAX_TEXT_RANK: usize = 26;

fn letter_value(c: char) -> Result<i32> {
    match c {
        'a'..='z' => Ok((c as u8 - b'a') as i32 + 1),
        'A'..='Z' => Ok(-((c as u8 - b'A') as i32 + 1)),
        _ => Err(CliError::input(format!("'{c}' is not a generator letter"))),
    }
}

fn values(s: &str) -> Result<Vec<i32>> {
    let s = s.trim();
    if s == "1" {
        return Ok(Vec::new());
    }
    s.chars().filter(|c| !c.is_whitespace()).map(letter_value).collect()
}

/// Parses and freely reduces a word. Without an explicit rank the rank is
/// the highest generator used, and at least two. `""` and `"1"` are the
/// empty word.
pub fn parse_word(s: &str, rank: Option<usize>) -> Result<Word> {
    let v = values(s)?;
    let used = v.iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0);
    let rank = match rank {
        Some(r) if used > r => {
            return Err(CliError::input(format!("word {s:?} uses generator {used} but the rank is {r}")));
        }
        Some(r) => r,
        None => used.max(2),
    };
    Ok(Word::reduce(&v, rank)?)
}

pub fn format_letter(l: Letter) -> String {
    let i = l.generator_index();
    if i < MAX_TEXT_RANK {
        let c = (b'a' + i as u8) as char;
        if l.is_inverse() {
            c.to_ascii_uppercase().to_string()
        } else {
            c.to_string()
        }
    } else if l.is_inverse() {
        format!("X{}", i + 1)
    } else {
        format!("x{}", i + 1)
    }
}

/// Inverse of [`parse_word`] for ranks up to 26; the empty word is `"1"`.
pub fn format_word(w: &Word) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.letters().iter().map(|&l| format_letter(l)).collect()
}

/// Parses `"a->ab; b->b"` into an endomorphism whose rank is the number of
/// clauses. Every generator of that rank must appear exactly once on the
/// left.
pub fn parse_endomorphism(s: &str) -> Result<Endomorphism> {
    let clauses: Vec<&str> = s.split(';').map(str::trim).filter(|c| !c.is_empty()).collect();
    let rank = clauses.len();
    if rank == 0 {
        return Err(CliError::input("automorphism has no clauses"));
    }
    if rank > MAX_TEXT_RANK {
        return Err(CliError::input(format!("text form supports rank at most {MAX_TEXT_RANK}")));
    }
    let mut images: Vec<Option<Word>> = vec![None; rank];
    for c in clauses {
        let (lhs, rhs) = c
            .split_once("->")
            .ok_or_else(|| CliError::input(format!("clause {c:?} has no '->'")))?;
        let lhs = values(lhs)?;
        let g = match lhs.as_slice() {
            [g] if *g > 0 && (*g as usize) <= rank => *g as usize - 1,
            _ => return Err(CliError::input(format!("left side of {c:?} must be one of the first {rank} generators"))),
        };
        if images[g].is_some() {
            return Err(CliError::input(format!("generator {} is assigned twice", format_letter(Letter::generator(g)))));
        }
        images[g] = Some(parse_word(rhs, Some(rank))?);
    }
    let images = images.into_iter().map(|w| w.expect("every slot filled")).collect();
    Ok(Endomorphism::new(rank, images)?)
}

/// Parses and certifies; a map that is not invertible is an input error.
pub fn parse_automorphism(s: &str) -> Result<Automorphism> {
    Ok(parse_endomorphism(s)?.certify()?)
}

pub fn format_endomorphism(e: &Endomorphism) -> String {
    e.images()
        .iter()
        .enumerate()
        .map(|(i, w)| format!("{}->{}", format_letter(Letter::generator(i)), format_word(w)))
        .collect::<Vec<_>>()
        .join("; ")
}

pub fn format_automorphism(phi: &Automorphism) -> String {
    format_endomorphism(phi.forward())
}
