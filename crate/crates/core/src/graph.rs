//! Marked metric graphs: points of Outer space.
//!
//! A marking is stored as a basis labelling of the non-tree edges. With the
//! non-tree edges `e_1 < .. < e_N` (by id) the labels define an
//! automorphism `ψ: x_j ↦ g_{e_j}`, where `x_j` is the based loop through
//! `e_j` closed up by tree geodesics. An element `w` of `F_N` is realised by
//! the loop spelling `ψ⁻¹(w)`.
//!
//! Oriented edges are `u32` symbols: `2k` traverses edge `k` from `from` to
//! `to`, `2k + 1` traverses it backwards.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::automorphisms::{Automorphism, Endomorphism};
use crate::rational::{q, Q};
use crate::words::{cyclic_core_offset, push_reduced, Letter, Word};
use crate::{Error, Result};

/// Raw description of a marked graph, before validation.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphSpec {
    pub rank: usize,
    pub vertex_count: usize,
    /// `(from, to, length)` per edge; the edge id is the position.
    pub edges: Vec<(usize, usize, Q)>,
    pub tree: Vec<usize>,
    /// Label of each non-tree edge, read in the edge's forward direction.
    pub labels: Vec<(usize, Word)>,
}

impl GraphSpec {
    fn degrees(&self) -> Vec<usize> {
        let mut deg = alloc::vec![0usize; self.vertex_count];
        for &(a, b, _) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// Removes every degree-two vertex by merging its two incident edges.
    /// Lengths add; a tree edge merged with a non-tree edge keeps the label.
    /// The result has the same length function.
    pub fn collapse_degree_two(&self) -> Result<GraphSpec> {
        let mut g = self.clone();
        check_indices(&g)?;
        loop {
            let deg = g.degrees();
            let Some(v) = (0..g.vertex_count).find(|&v| deg[v] == 2) else {
                break;
            };
            if g.vertex_count == 1 {
                return Err(Error::InvalidGraph("a single loop has rank one".into()));
            }
            let inc: Vec<usize> = (0..g.edges.len()).filter(|&k| g.edges[k].0 == v || g.edges[k].1 == v).collect();
            if inc.len() != 2 {
                return Err(Error::InvalidGraph(format!("vertex {v} carries a loop and nothing else")));
            }
            let (e1, e2) = (inc[0], inc[1]);
            let in_tree = |k: usize| g.tree.contains(&k);
            let (t1, t2) = (in_tree(e1), in_tree(e2));
            // orient the merged edge along the non-tree edge if there is one
            let (first, second) = if !t1 { (e2, e1) } else { (e1, e2) };
            let far = |k: usize| if g.edges[k].0 == v { g.edges[k].1 } else { g.edges[k].0 };
            let len = g.edges[e1].2.clone() + g.edges[e2].2.clone();
            let (from, to) = if !t1 || !t2 {
                // the non-tree edge is `second`; keep its direction
                let nt = second;
                if g.edges[nt].0 == v {
                    (far(first), g.edges[nt].1)
                } else {
                    (g.edges[nt].0, far(first))
                }
            } else {
                (far(first), far(second))
            };
            if !t1 && !t2 {
                return Err(Error::InvalidGraph("tree does not span".into()));
            }
            let (keep, drop) = (second, first);
            g.edges[keep] = (from, to, len);
            g.tree.retain(|&k| k != drop);
            // remove edge `drop` and vertex `v`, renumbering
            g.edges.remove(drop);
            let fix_e = |k: usize| if k > drop { k - 1 } else { k };
            g.tree = g.tree.iter().map(|&k| fix_e(k)).collect();
            g.labels = g.labels.iter().map(|(k, w)| (fix_e(*k), w.clone())).collect();
            let fix_v = |x: usize| if x > v { x - 1 } else { x };
            for e in &mut g.edges {
                e.0 = fix_v(e.0);
                e.1 = fix_v(e.1);
            }
            g.vertex_count -= 1;
        }
        Ok(g)
    }
}

fn check_indices(g: &GraphSpec) -> Result<()> {
    for (k, &(a, b, _)) in g.edges.iter().enumerate() {
        if a >= g.vertex_count || b >= g.vertex_count {
            return Err(Error::InvalidGraph(format!("edge {k} has an endpoint out of range")));
        }
    }
    for &k in &g.tree {
        if k >= g.edges.len() {
            return Err(Error::InvalidGraph(format!("tree edge {k} does not exist")));
        }
    }
    for (k, _) in &g.labels {
        if *k >= g.edges.len() {
            return Err(Error::InvalidGraph(format!("labelled edge {k} does not exist")));
        }
    }
    Ok(())
}

/// A path of oriented edges.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgePath {
    pub edges: Vec<u32>,
}

impl EdgePath {
    pub fn is_reduced(&self) -> bool {
        self.edges.windows(2).all(|p| p[1] != p[0] ^ 1)
    }

    pub fn inverse(&self) -> EdgePath {
        EdgePath { edges: self.edges.iter().rev().map(|e| e ^ 1).collect() }
    }
}

#[derive(Clone, Debug)]
struct Edge {
    from: usize,
    to: usize,
    length: Q,
}

/// A validated point of `cv_N`.
#[derive(Clone, Debug)]
pub struct MarkedGraph {
    rank: usize,
    vertex_count: usize,
    edges: Vec<Edge>,
    in_tree: Vec<bool>,
    /// non-tree edge ids in increasing order; position j carries `x_j`
    nontree: Vec<usize>,
    /// `ψ: x_j ↦ g_{e_j}`
    marking: Automorphism,
    /// oriented tree path from the base vertex to each vertex
    tree_paths: Vec<Vec<u32>>,
    /// reduced based loop of each letter, indexed by `Letter::index`
    letter_paths: Vec<Vec<u32>>,
}

impl PartialEq for MarkedGraph {
    /// Same graph data and labels (not merely isometric).
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.vertex_count == other.vertex_count
            && self.in_tree == other.in_tree
            && self.edges.len() == other.edges.len()
            && self
                .edges
                .iter()
                .zip(&other.edges)
                .all(|(a, b)| a.from == b.from && a.to == b.to && a.length == b.length)
            && self.marking.forward() == other.marking.forward()
    }
}

impl MarkedGraph {
    pub fn new(spec: &GraphSpec) -> Result<Self> {
        let n = spec.rank;
        if n < 2 {
            return Err(Error::RankTooSmall { rank: n, min: 2 });
        }
        if spec.vertex_count == 0 {
            return Err(Error::InvalidGraph("no vertices".into()));
        }
        check_indices(spec)?;
        if spec.edges.iter().any(|e| !e.2.is_positive()) {
            return Err(Error::NonPositiveLength);
        }
        let deg = spec.degrees();
        if spec.vertex_count > 1 {
            if let Some(v) = deg.iter().position(|&d| d < 3) {
                return Err(Error::InvalidGraph(format!("vertex {v} has degree {} < 3", deg[v])));
            }
        }
        let m = spec.edges.len();
        let mut in_tree = alloc::vec![false; m];
        for &k in &spec.tree {
            if in_tree[k] {
                return Err(Error::InvalidGraph(format!("tree edge {k} listed twice")));
            }
            in_tree[k] = true;
        }
        if spec.tree.len() + 1 != spec.vertex_count {
            return Err(Error::InvalidGraph("tree must have one edge fewer than there are vertices".into()));
        }
        // tree paths by BFS from the base vertex over tree edges
        let mut tree_paths: Vec<Option<Vec<u32>>> = alloc::vec![None; spec.vertex_count];
        tree_paths[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            let base = tree_paths[u].clone().expect("visited");
            for &k in &spec.tree {
                let (a, b, _) = &spec.edges[k];
                let (next, sym) = if *a == u {
                    (*b, 2 * k as u32)
                } else if *b == u {
                    (*a, 2 * k as u32 + 1)
                } else {
                    continue;
                };
                if tree_paths[next].is_none() {
                    let mut p = base.clone();
                    p.push(sym);
                    tree_paths[next] = Some(p);
                    queue.push_back(next);
                }
            }
        }
        let tree_paths: Vec<Vec<u32>> = tree_paths
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| Error::InvalidGraph("tree does not span (or graph disconnected)".into()))?;
        let nontree: Vec<usize> = (0..m).filter(|&k| !in_tree[k]).collect();
        if nontree.len() != n {
            return Err(Error::InvalidGraph(format!("{} non-tree edges for rank {n}", nontree.len())));
        }
        let mut images = alloc::vec![None; n];
        for (k, w) in &spec.labels {
            let Some(j) = nontree.iter().position(|e| e == k) else {
                return Err(Error::InvalidGraph(format!("edge {k} is in the tree and cannot carry a label")));
            };
            w.check_rank(n)?;
            if images[j].replace(w.clone()).is_some() {
                return Err(Error::InvalidGraph(format!("edge {k} labelled twice")));
            }
        }
        let images: Vec<Word> = images
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| Error::InvalidGraph("every non-tree edge needs a label".into()))?;
        let marking = Endomorphism::new(n, images)?.certify()?;
        let edges = spec.edges.iter().map(|(a, b, l)| Edge { from: *a, to: *b, length: l.clone() }).collect();
        let mut g = MarkedGraph {
            rank: n,
            vertex_count: spec.vertex_count,
            edges,
            in_tree,
            nontree,
            marking,
            tree_paths,
            letter_paths: Vec::new(),
        };
        g.letter_paths = g.compute_letter_paths();
        Ok(g)
    }

    /// One vertex, `N` loops, `g_{e_i} = a_i`.
    pub fn rose(rank: usize, lengths: &[Q]) -> Result<Self> {
        if lengths.len() != rank {
            return Err(Error::RankMismatch { expected: rank, found: lengths.len() });
        }
        MarkedGraph::new(&GraphSpec {
            rank,
            vertex_count: 1,
            edges: lengths.iter().map(|l| (0, 0, l.clone())).collect(),
            tree: Vec::new(),
            labels: (0..rank).map(|i| (i, Word::generator(rank, i))).collect(),
        })
    }

    /// All edges of length 1.
    pub fn unit_rose(rank: usize) -> Result<Self> {
        MarkedGraph::rose(rank, &alloc::vec![Q::one(); rank])
    }

    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            rank: self.rank,
            vertex_count: self.vertex_count,
            edges: self.edges.iter().map(|e| (e.from, e.to, e.length.clone())).collect(),
            tree: (0..self.edges.len()).filter(|&k| self.in_tree[k]).collect(),
            labels: self.nontree.iter().zip(self.marking.forward().images()).map(|(&k, w)| (k, w.clone())).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn length(&self, edge: usize) -> &Q {
        &self.edges[edge].length
    }

    /// Length of an oriented edge symbol.
    pub fn symbol_length(&self, sym: u32) -> &Q {
        &self.edges[(sym >> 1) as usize].length
    }

    pub fn tail(&self, sym: u32) -> usize {
        let e = &self.edges[(sym >> 1) as usize];
        if sym & 1 == 0 {
            e.from
        } else {
            e.to
        }
    }

    pub fn head(&self, sym: u32) -> usize {
        self.tail(sym ^ 1)
    }

    pub fn is_tree_edge(&self, edge: usize) -> bool {
        self.in_tree[edge]
    }

    pub fn marking(&self) -> &Automorphism {
        &self.marking
    }

    /// True for a one-vertex graph whose labels are single letters.
    pub fn is_standard_rose_chart(&self) -> bool {
        self.vertex_count == 1 && self.marking.forward().images().iter().all(|w| w.len() == 1)
    }

    fn loop_of(&self, j: usize) -> Vec<u32> {
        let k = self.nontree[j];
        let e = &self.edges[k];
        let mut p = self.tree_paths[e.from].clone();
        push_reduced(&mut p, 2 * k as u32);
        for &s in self.tree_paths[e.to].iter().rev() {
            push_reduced(&mut p, s ^ 1);
        }
        p
    }

    fn compute_letter_paths(&self) -> Vec<Vec<u32>> {
        let loops: Vec<Vec<u32>> = (0..self.rank).map(|j| self.loop_of(j)).collect();
        let inv = self.marking.inverse_map();
        let mut out = Vec::with_capacity(2 * self.rank);
        for i in 0..self.rank {
            let mut p = Vec::new();
            for &x in inv.images()[i].letters() {
                let l = &loops[x.generator_index()];
                if x.is_inverse() {
                    for &s in l.iter().rev() {
                        push_reduced(&mut p, s ^ 1);
                    }
                } else {
                    for &s in l {
                        push_reduced(&mut p, s);
                    }
                }
            }
            let rev: Vec<u32> = p.iter().rev().map(|s| s ^ 1).collect();
            out.push(p);
            out.push(rev);
        }
        out
    }

    /// Tree path from the base vertex to `v`.
    pub(crate) fn tree_path(&self, v: usize) -> &[u32] {
        &self.tree_paths[v]
    }

    /// Element of `F_N` crossed by an oriented edge: its label (inverted
    /// against the orientation), empty for tree edges.
    pub(crate) fn edge_element(&self, sym: u32) -> Word {
        let k = (sym >> 1) as usize;
        match self.nontree.iter().position(|&e| e == k) {
            None => Word::empty(self.rank),
            Some(j) => {
                let w = self.marking.forward().images()[j].clone();
                if sym & 1 == 1 {
                    w.inverse()
                } else {
                    w
                }
            }
        }
    }

    /// Reduced based loop realising a letter.
    pub fn letter_path(&self, l: Letter) -> &[u32] {
        &self.letter_paths[l.index() as usize]
    }

    /// Reduced based loop realising `w`.
    pub fn word_path(&self, w: &Word) -> Result<EdgePath> {
        w.check_rank(self.rank)?;
        let mut p = Vec::new();
        for &l in w.letters() {
            for &s in self.letter_path(l) {
                push_reduced(&mut p, s);
            }
        }
        Ok(EdgePath { edges: p })
    }

    pub fn path_length(&self, path: &[u32]) -> Q {
        path.iter().fold(Q::zero(), |acc, &s| acc + self.symbol_length(s))
    }

    /// `||w||_T`.
    pub fn translation_length(&self, w: &Word) -> Result<Q> {
        let p = self.word_path(w)?.edges;
        let k = cyclic_core_offset(&p);
        Ok(self.path_length(&p[k..p.len() - k]))
    }

    /// Element of `F_N` read off a closed edge path (up to conjugacy).
    pub fn circuit_word(&self, circuit: &[u32]) -> Word {
        let mut xs = Vec::new();
        for &s in circuit {
            let k = (s >> 1) as usize;
            if !self.in_tree[k] {
                let j = self.nontree.iter().position(|&e| e == k).expect("non-tree edge");
                let x = Letter::generator(j);
                push_reduced(&mut xs, if s & 1 == 1 { x.inverse() } else { x });
            }
        }
        let mut out = Vec::new();
        self.marking.forward().apply_letters(&xs, &mut out);
        Word::from_reduced_unchecked(self.rank, out)
    }

    /// Sum of (unoriented) edge lengths.
    pub fn volume(&self) -> Q {
        self.edges.iter().fold(Q::zero(), |acc, e| acc + &e.length)
    }

    pub fn is_normalized(&self) -> bool {
        self.volume().is_one()
    }

    /// Multiplies every length by `c > 0`.
    pub fn scale(&self, c: &Q) -> Result<MarkedGraph> {
        if !c.is_positive() {
            return Err(Error::NonPositiveLength);
        }
        let mut g = self.clone();
        for e in &mut g.edges {
            e.length = &e.length * c;
        }
        Ok(g)
    }

    /// Rescales to volume 1.
    pub fn normalize_volume(&self) -> MarkedGraph {
        let v = self.volume();
        self.scale(&(Q::one() / v)).expect("positive volume")
    }

    /// Shortest length of a non-trivial immersed circuit.
    pub fn systole(&self) -> Q {
        crate::lipschitz::candidates(self)
            .loops
            .iter()
            .map(|c| c.length.clone())
            .min()
            .expect("nonempty candidate set")
    }

    /// `Tφ`, with `||w||_{Tφ} = ||φ(w)||_T`.
    pub fn act(&self, phi: &Automorphism) -> Result<MarkedGraph> {
        if phi.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: phi.rank() });
        }
        let mut g = self.clone();
        g.marking = phi.inverse().compose(&self.marking)?;
        g.letter_paths = g.compute_letter_paths();
        Ok(g)
    }

    /// Equality of length functions, checked on the candidate loops of both graphs.
    pub fn same_length_function(&self, other: &MarkedGraph) -> Result<bool> {
        if other.rank != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: other.rank });
        }
        for (a, b) in [(self, other), (other, self)] {
            for c in &crate::lipschitz::candidates(a).loops {
                if b.translation_length(&c.word)? != c.length {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Random connected graph of the given rank with min degree ≥ 3 (or a rose),
/// lengths `p/q` with `p ≤ 6`, `q ≤ 4`, a random spanning tree and signed
/// single-letter labels in random order. Deterministic per seed.
pub fn random_marked_graph(rank: usize, seed: u64) -> Result<MarkedGraph> {
    use rand::{Rng, SeedableRng};

    if rank < 2 {
        return Err(Error::RankTooSmall { rank, min: 2 });
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    loop {
        let v = rng.random_range(1..=2 * rank - 2);
        let e = v + rank - 1;
        let edges: Vec<(usize, usize, Q)> = (0..e)
            .map(|_| (rng.random_range(0..v), rng.random_range(0..v), q(rng.random_range(1..=6), rng.random_range(1..=4))))
            .collect();
        let mut spec = GraphSpec { rank, vertex_count: v, edges, tree: Vec::new(), labels: Vec::new() };
        if v > 1 && spec.degrees().iter().any(|&d| d < 3) {
            continue;
        }
        // random spanning tree by randomized union-find
        let mut order: Vec<usize> = (0..e).collect();
        for i in (1..e).rev() {
            order.swap(i, rng.random_range(0..=i));
        }
        let mut comp: Vec<usize> = (0..v).collect();
        fn find(c: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while c[x] != x {
                x = c[x];
            }
            x
        }
        for k in order {
            let (a, b) = (find(&mut comp, spec.edges[k].0), find(&mut comp, spec.edges[k].1));
            if a != b {
                comp[a] = b;
                spec.tree.push(k);
            }
        }
        if spec.tree.len() + 1 != v {
            continue;
        }
        let mut perm: Vec<usize> = (0..rank).collect();
        for i in (1..rank).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        let nontree: Vec<usize> = (0..e).filter(|k| !spec.tree.contains(k)).collect();
        for (j, &k) in nontree.iter().enumerate() {
            let mut l = Word::generator(rank, perm[j]);
            if rng.random_bool(0.5) {
                l = l.inverse();
            }
            spec.labels.push((k, l));
        }
        return MarkedGraph::new(&spec);
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::automorphisms::random_automorphism;
    use crate::rational::{q, qi};
    use crate::testutil::{aut, w, wn};
    use proptest::prelude::*;

    pub(crate) fn theta() -> MarkedGraph {
        MarkedGraph::new(&GraphSpec {
            rank: 2,
            vertex_count: 2,
            edges: alloc::vec![(0, 1, q(1, 3)), (0, 1, q(1, 3)), (0, 1, q(1, 3))],
            tree: alloc::vec![0],
            labels: alloc::vec![(1, w("a")), (2, w("b"))],
        })
        .unwrap()
    }

    #[test]
    fn rose_volume_and_systole() {
        let r = MarkedGraph::rose(2, &[q(1, 2), q(1, 2)]).unwrap();
        assert_eq!(r.volume(), qi(1));
        assert_eq!(MarkedGraph::unit_rose(2).unwrap().volume(), qi(2));
        assert_eq!(MarkedGraph::rose(3, &[q(1, 3), q(1, 3), q(1, 3)]).unwrap().systole(), q(1, 3));
        assert_eq!(r.systole(), q(1, 2));
        assert_eq!(MarkedGraph::rose(2, &[q(1, 4), q(3, 4)]).unwrap().systole(), q(1, 4));
        assert_eq!(MarkedGraph::rose(2, &[qi(0), qi(1)]).unwrap_err(), Error::NonPositiveLength);
    }

    #[test]
    fn translation_examples() {
        let r = MarkedGraph::rose(2, &[q(1, 2), q(1, 2)]).unwrap();
        assert_eq!(r.translation_length(&w("abAB")).unwrap(), qi(2));
        assert_eq!(r.translation_length(&w("baB")).unwrap(), q(1, 2));
        assert_eq!(r.translation_length(&Word::empty(2)).unwrap(), qi(0));
        let t = theta();
        assert_eq!(t.translation_length(&w("a")).unwrap(), q(2, 3));
        assert_eq!(t.translation_length(&w("aB")).unwrap(), q(2, 3));
        assert_eq!(t.translation_length(&w("ab")).unwrap(), q(4, 3));
        assert_eq!(t.systole(), q(2, 3));
        assert!(t.translation_length(&Word::generator(3, 2)).is_err());
    }

    #[test]
    fn normalize_examples() {
        let r = MarkedGraph::unit_rose(2).unwrap();
        let n = r.normalize_volume();
        assert_eq!(n, MarkedGraph::rose(2, &[q(1, 2), q(1, 2)]).unwrap());
        assert_eq!(n.normalize_volume(), n);
        assert!(n.is_normalized());
    }

    #[test]
    fn act_examples() {
        let r = MarkedGraph::unit_rose(2).unwrap();
        let phi = aut("a->ab; b->b");
        let t = r.act(&phi).unwrap();
        assert_eq!(t.translation_length(&w("a")).unwrap(), qi(2));
        assert_eq!(r.act(&Automorphism::identity(2)).unwrap(), r);
    }

    #[test]
    fn rejects_bad_graphs() {
        let mut spec = theta().to_spec();
        spec.labels[1].1 = w("a");
        assert_eq!(MarkedGraph::new(&spec).unwrap_err(), Error::NotABasis);
        let mut spec = theta().to_spec();
        spec.tree.clear();
        assert!(matches!(MarkedGraph::new(&spec), Err(Error::InvalidGraph(_))));
        // degree-two vertex
        let spec = GraphSpec {
            rank: 2,
            vertex_count: 2,
            edges: alloc::vec![(0, 0, qi(1)), (0, 1, qi(1)), (1, 0, qi(1))],
            tree: alloc::vec![1],
            labels: alloc::vec![(0, w("a")), (2, w("b"))],
        };
        assert!(matches!(MarkedGraph::new(&spec), Err(Error::InvalidGraph(_))));
        let collapsed = spec.collapse_degree_two().unwrap();
        let g = MarkedGraph::new(&collapsed).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.translation_length(&w("b")).unwrap(), qi(2));
        assert_eq!(g.translation_length(&w("aB")).unwrap(), qi(3));
    }

    #[test]
    fn collapse_keeps_lengths_through_tree_chains() {
        // theta graph with its middle edge subdivided into two tree edges
        let spec = GraphSpec {
            rank: 2,
            vertex_count: 3,
            edges: alloc::vec![(0, 2, q(1, 6)), (2, 1, q(1, 6)), (0, 1, q(1, 3)), (0, 1, q(1, 3))],
            tree: alloc::vec![0, 1],
            labels: alloc::vec![(2, w("a")), (3, w("b"))],
        };
        let g = MarkedGraph::new(&spec.collapse_degree_two().unwrap()).unwrap();
        assert!(g.same_length_function(&theta()).unwrap());
    }

    #[test]
    fn letter_paths_are_closed_and_reduced() {
        let t = theta();
        for i in 0..2 {
            let p = t.letter_path(Letter::generator(i));
            assert!(EdgePath { edges: p.to_vec() }.is_reduced());
            assert_eq!(t.tail(p[0]), 0);
            assert_eq!(t.head(*p.last().unwrap()), 0);
        }
    }

    pub(crate) fn random_graph(rank: usize, seed: u64) -> MarkedGraph {
        random_marked_graph(rank, seed).unwrap()
    }

    fn word(rank: usize, max: usize) -> impl Strategy<Value = Word> {
        let r = rank as i32;
        prop::collection::vec((1..=r, any::<bool>()).prop_map(|(i, s)| if s { -i } else { i }), 0..=max)
            .prop_map(move |v| Word::reduce(&v, rank).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn homogeneity_and_conjugation(seed in any::<u64>(), x in word(3, 12), u in word(3, 6), k in 1usize..=5) {
            let t = random_graph(3, seed);
            let lx = t.translation_length(&x).unwrap();
            prop_assert_eq!(t.translation_length(&x.pow(k)).unwrap(), lx.clone() * qi(k as i64));
            let c = u.concat_reduce(&x).unwrap().concat_reduce(&u.inverse()).unwrap();
            prop_assert_eq!(t.translation_length(&c).unwrap(), lx);
        }

        #[test]
        fn rose_lengths_are_weighted_cyclic_lengths(x in word(2, 16), a in 1i64..9, b in 1i64..9) {
            let r = MarkedGraph::rose(2, &[q(a, 3), q(b, 5)]).unwrap();
            let (c, _) = x.cyclic_reduce();
            let expect = c.letters().iter().fold(Q::zero(), |acc, l| acc + if l.generator_index() == 0 { q(a, 3) } else { q(b, 5) });
            prop_assert_eq!(r.translation_length(&x).unwrap(), expect);
        }

        #[test]
        fn action_matches_definition(seed in any::<u64>(), s1 in any::<u64>(), s2 in any::<u64>(), x in word(2, 10)) {
            let t = random_graph(2, seed);
            let phi = random_automorphism(2, 6, s1).unwrap();
            let psi = random_automorphism(2, 6, s2).unwrap();
            let tp = t.act(&phi).unwrap();
            prop_assert_eq!(tp.translation_length(&x).unwrap(), t.translation_length(&phi.apply(&x).unwrap()).unwrap());
            let two = tp.act(&psi).unwrap();
            let once = t.act(&phi.compose(&psi).unwrap()).unwrap();
            prop_assert_eq!(two.translation_length(&x).unwrap(), once.translation_length(&x).unwrap());
        }

        #[test]
        fn normalization_scales_lengths(seed in any::<u64>(), x in word(3, 10)) {
            let t = random_graph(3, seed);
            let n = t.normalize_volume();
            prop_assert!(n.is_normalized());
            prop_assert_eq!(n.translation_length(&x).unwrap() * t.volume(), t.translation_length(&x).unwrap());
        }
    }

    #[test]
    fn trivial_word_has_zero_length_everywhere() {
        for seed in 0..20 {
            let t = random_graph(3, seed);
            assert!(t.translation_length(&wn("", 3)).unwrap().is_zero());
            assert!(t.translation_length(&wn("a", 3)).unwrap().is_positive());
        }
    }
}
