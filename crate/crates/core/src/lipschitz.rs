//! Candidate loops, the extremal Lipschitz distortion `Λ(T, S)` and the
//! extremal stretching factor `Λ_A(φ)`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::automorphisms::Automorphism;
use crate::graph::{EdgePath, MarkedGraph};
use crate::rational::{ln_q, Q};
use crate::words::{least_rotation, CyclicWord, Letter, Word};
use crate::{Error, Result};

/// A reduced circuit and the conjugacy class it represents.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateLoop {
    pub circuit: EdgePath,
    /// Canonical representative of the class, the lesser of `w` and `w⁻¹`.
    pub word: Word,
    pub length: Q,
}

/// Reduced circuits crossing every unoriented edge at most twice, up to
/// rotation and inversion.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateSet {
    pub loops: Vec<CandidateLoop>,
}

fn canonical_circuit(c: &[u32]) -> Vec<u32> {
    let mut a = c.to_vec();
    let r = least_rotation(&a);
    a.rotate_left(r);
    let mut b: Vec<u32> = c.iter().rev().map(|s| s ^ 1).collect();
    let r = least_rotation(&b);
    b.rotate_left(r);
    a.min(b)
}

/// Lesser (in letter order) of the canonical classes of `w` and `w⁻¹`.
pub fn unoriented_class(w: &Word) -> CyclicWord {
    let c = CyclicWord::of(w);
    let d = c.inverse();
    if d.letters() < c.letters() {
        d
    } else {
        c
    }
}

struct Search<'a> {
    g: &'a MarkedGraph,
    out: Vec<Vec<u32>>,
    usage: Vec<u8>,
    path: Vec<u32>,
    found: BTreeSet<Vec<u32>>,
}

impl Search<'_> {
    fn dfs(&mut self, start: u32) {
        let last = *self.path.last().expect("nonempty");
        let here = self.g.head(last);
        if here == self.g.tail(start) && last != start ^ 1 {
            self.found.insert(canonical_circuit(&self.path));
        }
        for k in 0..self.out[here].len() {
            let f = self.out[here][k];
            // the circuit's least symbol is its first one
            if f < start || f == last ^ 1 || self.usage[(f >> 1) as usize] >= 2 {
                continue;
            }
            self.usage[(f >> 1) as usize] += 1;
            self.path.push(f);
            self.dfs(start);
            self.path.pop();
            self.usage[(f >> 1) as usize] -= 1;
        }
    }
}

/// Exhaustive enumeration of the candidate circuits of `g`.
pub fn candidates(g: &MarkedGraph) -> CandidateSet {
    let m = g.edge_count() as u32;
    let mut out = alloc::vec![Vec::new(); g.vertex_count()];
    for s in 0..2 * m {
        out[g.tail(s)].push(s);
    }
    let mut search = Search { g, out, usage: alloc::vec![0; m as usize], path: Vec::new(), found: BTreeSet::new() };
    for s in 0..2 * m {
        search.usage[(s >> 1) as usize] = 1;
        search.path.push(s);
        search.dfs(s);
        search.path.pop();
        search.usage[(s >> 1) as usize] = 0;
    }
    let loops = search
        .found
        .into_iter()
        .map(|c| {
            let word = unoriented_class(&g.circuit_word(&c)).to_word();
            let length = g.path_length(&c);
            CandidateLoop { circuit: EdgePath { edges: c }, word, length }
        })
        .collect();
    CandidateSet { loops }
}

/// `Λ(T, S)` and a witnessing class.
#[derive(Clone, Debug, PartialEq)]
pub struct Distortion {
    pub lambda: Q,
    pub witness: Word,
}

/// Maximises `||w||_S / ||w||_T` over the candidates of `T`; ties go to the
/// least witness word.
pub fn lambda_distortion(t: &MarkedGraph, s: &MarkedGraph) -> Result<Distortion> {
    lambda_over(&candidates(t), s)
}

/// Same as [`lambda_distortion`] with a precomputed candidate set of `T`.
pub fn lambda_over(cands: &CandidateSet, s: &MarkedGraph) -> Result<Distortion> {
    let mut best: Option<Distortion> = None;
    for c in &cands.loops {
        let r = s.translation_length(&c.word)? / &c.length;
        let better = match &best {
            None => true,
            Some(b) => r > b.lambda || (r == b.lambda && c.word.letters() < b.witness.letters()),
        };
        if better {
            best = Some(Distortion { lambda: r, witness: c.word.clone() });
        }
    }
    best.ok_or(Error::InvalidGraph("no candidate loops".into()))
}

/// `d_L(T, S) = log Λ(T, S)` for volume-one graphs.
pub fn lipschitz_distance(t: &MarkedGraph, s: &MarkedGraph) -> Result<(f64, Distortion)> {
    if !t.is_normalized() || !s.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let d = lambda_distortion(t, s)?;
    Ok((ln_q(&d.lambda), d))
}

/// Cyclic words of length one and two, one per unoriented class of
/// non-powers: `a_i` and `a_i a_j^{±1}` for `i < j`.
pub fn short_classes(rank: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for i in 0..rank {
        out.push(Word::generator(rank, i));
    }
    for i in 0..rank {
        for j in i + 1..rank {
            for inv in [false, true] {
                let y = if inv { Letter::generator(j).inverse() } else { Letter::generator(j) };
                out.push(Word::from_letters(rank, [Letter::generator(i), y]));
            }
        }
    }
    out
}

/// `Λ_A(φ) = max ||φ(w)||_A / ||w||_A` over `||w||_A ≤ 2`.
pub fn extremal_stretch(phi: &Automorphism) -> Result<Q> {
    Ok(extremal_stretch_witness(phi)?.lambda)
}

pub fn extremal_stretch_witness(phi: &Automorphism) -> Result<Distortion> {
    let mut best = Distortion { lambda: Q::zero(), witness: Word::empty(phi.rank()) };
    for w in short_classes(phi.rank()) {
        let r = Q::new(phi.apply(&w)?.cyclic_len().into(), w.len().into());
        if r > best.lambda {
            best = Distortion { lambda: r, witness: w };
        }
    }
    debug_assert!(best.lambda >= Q::one() / Q::from_integer(2.into()));
    Ok(best)
}
