//! Stallings folding of the wedge of petals labelled by a tuple of words.
//!
//! Independent of the Nielsen reduction in [`crate::automorphisms`]: a
//! tuple `(u_1, .., u_N)` is a basis of `F_N` exactly when the folded graph
//! is the standard rose with one loop per generator.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::words::{Letter, Word};

/// A folded (deterministic) labelled graph.
#[derive(Debug, Clone)]
pub struct FoldedGraph {
    pub base: usize,
    pub vertices: Vec<usize>,
    /// One entry per unoriented edge, stored with a positive label.
    pub edges: Vec<(usize, Letter, usize)>,
}

impl FoldedGraph {
    /// Rank of the fundamental group of the folded graph.
    pub fn rank(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }

    /// True when this is the rose `R_N`: one vertex, one loop per generator.
    pub fn is_standard_rose(&self, rank: usize) -> bool {
        if self.vertices.len() != 1 || self.edges.len() != rank {
            return false;
        }
        let mut seen = alloc::vec![false; rank];
        for &(_, l, _) in &self.edges {
            let g = l.generator_index();
            if g >= rank || seen[g] {
                return false;
            }
            seen[g] = true;
        }
        true
    }
}

struct Folder {
    parent: Vec<usize>,
    out: Vec<BTreeMap<u32, usize>>,
    pending: Vec<(usize, usize)>,
}

impl Folder {
    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn add_edge(&mut self, a: usize, x: Letter, b: usize) {
        let a = self.find(a);
        let b = self.find(b);
        let key = x.index();
        if let Some(&c) = self.out[a].get(&key) {
            self.pending.push((b, c));
        } else {
            self.out[a].insert(key, b);
            match self.out[b].get(&(key ^ 1)) {
                Some(&c) => self.pending.push((a, c)),
                None => {
                    self.out[b].insert(key ^ 1, a);
                }
            }
        }
        self.drain();
    }

    fn drain(&mut self) {
        while let Some((u, v)) = self.pending.pop() {
            let u = self.find(u);
            let v = self.find(v);
            if u == v {
                continue;
            }
            let (keep, gone) = if u < v { (u, v) } else { (v, u) };
            self.parent[gone] = keep;
            let moved = core::mem::take(&mut self.out[gone]);
            for (k, t) in moved {
                match self.out[keep].get(&k) {
                    Some(&s) => self.pending.push((s, t)),
                    None => {
                        self.out[keep].insert(k, t);
                    }
                }
            }
        }
    }
}

/// Folds the wedge of petals spelling `images` at a common base vertex.
pub fn fold_images(images: &[Word]) -> FoldedGraph {
    let mut vcount = 1usize;
    let mut raw = Vec::new();
    for u in images {
        let n = u.len();
        let mut prev = 0usize;
        for (i, &l) in u.letters().iter().enumerate() {
            let next = if i + 1 == n {
                0
            } else {
                vcount += 1;
                vcount - 1
            };
            raw.push((prev, l, next));
            prev = next;
        }
    }
    let mut f = Folder {
        parent: (0..vcount).collect(),
        out: alloc::vec![BTreeMap::new(); vcount],
        pending: Vec::new(),
    };
    for (a, x, b) in raw {
        f.add_edge(a, x, b);
    }
    let mut vertices: Vec<usize> = (0..vcount).filter(|&v| f.find(v) == v).collect();
    vertices.sort_unstable();
    let mut edges = Vec::new();
    for &v in &vertices {
        let entries: Vec<(u32, usize)> = f.out[v].iter().map(|(&k, &t)| (k, t)).collect();
        for (k, t) in entries {
            if k & 1 == 0 {
                let t = f.find(t);
                edges.push((v, Letter::from_index(k), t));
            }
        }
    }
    let base = f.find(0);
    FoldedGraph { base, vertices, edges }
}

/// Folding oracle: do `images` form a free basis of `F_rank`?
pub fn generates_as_basis(rank: usize, images: &[Word]) -> bool {
    images.len() == rank && fold_images(images).is_standard_rose(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::w;

    #[test]
    fn identity_folds_to_rose() {
        assert!(generates_as_basis(2, &[w("a"), w("b")]));
        assert!(generates_as_basis(2, &[w("ab"), w("b")]));
        assert!(!generates_as_basis(2, &[w("bab"), w("bb")]));
    }

    #[test]
    fn non_bases() {
        assert!(!generates_as_basis(2, &[w("aa"), w("b")]));
        assert!(!generates_as_basis(2, &[w("ab"), w("ba")]));
        assert!(!generates_as_basis(2, &[w("a"), w("a")]));
        let g = fold_images(&[w("ab"), w("ba")]);
        assert_eq!(g.rank(), 2);
        assert!(g.vertices.len() > 1);
    }

    #[test]
    fn rank_loss_detected() {
        // a, aba^-1... <a, b a B> has rank 2 but is proper
        let g = fold_images(&[w("a"), w("aaA")]);
        assert_eq!(g.rank(), 1);
    }

    #[test]
    fn conjugated_basis() {
        // (bab^-1, b) is a basis
        assert!(generates_as_basis(2, &[w("baB"), w("b")]));
        assert!(generates_as_basis(3, &[w("abc"), w("bc"), w("c")]));
    }
}
