//! Endomorphisms of `F_N` given by generator images, certified inversion via
//! recorded Nielsen moves, and random automorphisms.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::words::{push_reduced, Letter, Word};
use crate::{Error, Result};

/// Default cap on the total number of letters in composed images.
pub const DEFAULT_LENGTH_CAP: usize = 10_000_000;

/// Images of the generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Endomorphism {
    rank: usize,
    images: Vec<Word>,
}

impl Endomorphism {
    pub fn new(rank: usize, images: Vec<Word>) -> Result<Self> {
        if images.len() != rank {
            return Err(Error::RankMismatch { expected: rank, found: images.len() });
        }
        for u in &images {
            u.check_rank(rank)?;
        }
        Ok(Endomorphism { rank, images })
    }

    pub fn identity(rank: usize) -> Self {
        Endomorphism { rank, images: (0..rank).map(|i| Word::generator(rank, i)).collect() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, l: Letter) -> Word {
        let u = &self.images[l.generator_index()];
        if l.is_inverse() {
            u.inverse()
        } else {
            u.clone()
        }
    }

    /// Sum of image lengths.
    pub fn total_length(&self) -> usize {
        self.images.iter().map(Word::len).sum()
    }

    pub(crate) fn apply_letters(&self, letters: &[Letter], out: &mut Vec<Letter>) {
        for &l in letters {
            let u = self.images[l.generator_index()].letters();
            if l.is_inverse() {
                for &x in u.iter().rev() {
                    push_reduced(out, x.inverse());
                }
            } else {
                for &x in u {
                    push_reduced(out, x);
                }
            }
        }
    }

    /// Freely reduced image of `w`.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        w.check_rank(self.rank)?;
        let mut out = Vec::with_capacity(w.len());
        self.apply_letters(w.letters(), &mut out);
        Ok(Word::from_reduced_unchecked(self.rank, out))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism> {
        self.compose_capped(other, DEFAULT_LENGTH_CAP)
    }

    pub fn compose_capped(&self, other: &Endomorphism, cap: usize) -> Result<Endomorphism> {
        if other.rank != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: other.rank });
        }
        let mut images = Vec::with_capacity(self.rank);
        let mut total = 0usize;
        for u in &other.images {
            let mut out = Vec::new();
            self.apply_letters(u.letters(), &mut out);
            total += out.len();
            if total > cap {
                return Err(Error::CapExceeded { what: "composed image length", cap });
            }
            images.push(Word::from_reduced_unchecked(self.rank, out));
        }
        Ok(Endomorphism { rank: self.rank, images })
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, u)| u.len() == 1 && u.letters()[0] == Letter::generator(i))
    }

    /// Certifies that the images form a basis. `None` means they do not.
    pub fn certify_basis(&self) -> Option<Automorphism> {
        let moves = nielsen_reduce(self.rank, self.images.clone())?;
        // tuple(self) ∘ μ_1 ∘ .. ∘ μ_k = id
        let certificate: Vec<NielsenMove> = moves.iter().rev().map(|m| m.inverse()).collect();
        let forward = self.clone();
        let inverse = replay(self.rank, &moves);
        let a = Automorphism { forward, inverse, certificate };
        debug_assert!(a.forward.compose(&a.inverse).map(|e| e.is_identity()).unwrap_or(false));
        Some(a)
    }

    pub fn certify(&self) -> Result<Automorphism> {
        self.certify_basis().ok_or(Error::NotABasis)
    }
}

/// Elementary Nielsen transformation, read as an automorphism.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum NielsenMove {
    /// `a_i -> a_i a_j^{±1}`
    Right { i: usize, j: usize, inverse: bool },
    /// `a_i -> a_j^{±1} a_i`
    Left { i: usize, j: usize, inverse: bool },
    /// `a_i -> a_i^{-1}`
    Invert { i: usize },
    /// `a_i <-> a_j`
    Swap { i: usize, j: usize },
}

impl NielsenMove {
    pub fn inverse(self) -> Self {
        match self {
            NielsenMove::Right { i, j, inverse } => NielsenMove::Right { i, j, inverse: !inverse },
            NielsenMove::Left { i, j, inverse } => NielsenMove::Left { i, j, inverse: !inverse },
            m => m,
        }
    }

    fn max_index(self) -> usize {
        match self {
            NielsenMove::Right { i, j, .. } | NielsenMove::Left { i, j, .. } | NielsenMove::Swap { i, j } => i.max(j),
            NielsenMove::Invert { i } => i,
        }
    }

    /// Replaces a tuple representing `τ` by the tuple of `τ ∘ self`.
    pub fn apply_to_tuple(self, tuple: &mut [Word]) {
        match self {
            NielsenMove::Right { i, j, inverse } => {
                let v = if inverse { tuple[j].inverse() } else { tuple[j].clone() };
                tuple[i] = tuple[i].concat_reduce(&v).expect("same rank");
            }
            NielsenMove::Left { i, j, inverse } => {
                let v = if inverse { tuple[j].inverse() } else { tuple[j].clone() };
                tuple[i] = v.concat_reduce(&tuple[i]).expect("same rank");
            }
            NielsenMove::Invert { i } => tuple[i] = tuple[i].inverse(),
            NielsenMove::Swap { i, j } => tuple.swap(i, j),
        }
    }

    pub fn to_endomorphism(self, rank: usize) -> Result<Endomorphism> {
        if self.max_index() >= rank {
            return Err(Error::RankMismatch { expected: rank, found: self.max_index() + 1 });
        }
        let mut e = Endomorphism::identity(rank);
        self.apply_to_tuple(&mut e.images);
        Ok(e)
    }
}

/// Composition `ν_1 ∘ .. ∘ ν_k` obtained by replaying the moves on the identity tuple.
pub fn replay(rank: usize, moves: &[NielsenMove]) -> Endomorphism {
    let mut e = Endomorphism::identity(rank);
    for m in moves {
        m.apply_to_tuple(&mut e.images);
    }
    e
}

fn cancel_len(u: &[Letter], v_first: impl Iterator<Item = Letter>) -> usize {
    u.iter().rev().zip(v_first).take_while(|(a, b)| **a == b.inverse()).count()
}

/// Length of `u · v^{±1}` (right) or `v^{±1} · u` (left).
fn move_len(tuple: &[Word], m: NielsenMove) -> usize {
    match m {
        NielsenMove::Right { i, j, inverse } => {
            let (u, v) = (tuple[i].letters(), tuple[j].letters());
            let c = if inverse {
                cancel_len(u, v.iter().rev().map(|l| l.inverse()))
            } else {
                cancel_len(u, v.iter().copied())
            };
            u.len() + v.len() - 2 * c
        }
        NielsenMove::Left { i, j, inverse } => {
            let (u, v) = (tuple[i].letters(), tuple[j].letters());
            // v^{±1} · u: cancellation between the end of v^{±1} and the start of u
            let c = if inverse {
                v.iter().zip(u.iter()).take_while(|(a, b)| **a == **b).count()
            } else {
                v.iter().rev().zip(u.iter()).take_while(|(a, b)| **a == b.inverse()).count()
            };
            u.len() + v.len() - 2 * c
        }
        _ => tuple.iter().map(Word::len).sum(),
    }
}

fn multiplication_moves(rank: usize) -> impl Iterator<Item = NielsenMove> {
    (0..rank).flat_map(move |i| {
        (0..rank).filter(move |&j| j != i).flat_map(move |j| {
            [false, true].into_iter().flat_map(move |inverse| {
                [NielsenMove::Right { i, j, inverse }, NielsenMove::Left { i, j, inverse }]
            })
        })
    })
}

/// Best strictly length-decreasing move, or `Some(None)`-style signal via
/// `Err(())` when some move produces the trivial word.
fn best_decreasing(rank: usize, tuple: &[Word]) -> core::result::Result<Option<NielsenMove>, ()> {
    let mut best: Option<(usize, NielsenMove)> = None;
    for m in multiplication_moves(rank) {
        let i = match m {
            NielsenMove::Right { i, .. } | NielsenMove::Left { i, .. } => i,
            _ => unreachable!(),
        };
        let new = move_len(tuple, m);
        if new == 0 {
            return Err(());
        }
        let old = tuple[i].len();
        if new < old {
            let gain = old - new;
            if best.is_none_or(|(g, _)| gain > g) {
                best = Some((gain, m));
            }
        }
    }
    Ok(best.map(|(_, m)| m))
}

const PLATEAU_LIMIT: usize = 20_000;

/// Breadth-first search over length-preserving moves for a tuple that admits
/// a decreasing move. Returns the path of moves to (and including) it.
fn escape_plateau(rank: usize, tuple: &[Word]) -> Option<Vec<NielsenMove>> {
    let mut seen: BTreeSet<Vec<Word>> = BTreeSet::new();
    let mut queue: VecDeque<(Vec<Word>, Vec<NielsenMove>)> = VecDeque::new();
    seen.insert(tuple.to_vec());
    queue.push_back((tuple.to_vec(), Vec::new()));
    while let Some((t, path)) = queue.pop_front() {
        for m in multiplication_moves(rank) {
            let i = match m {
                NielsenMove::Right { i, .. } | NielsenMove::Left { i, .. } => i,
                _ => unreachable!(),
            };
            if move_len(&t, m) != t[i].len() {
                continue;
            }
            let mut next = t.clone();
            m.apply_to_tuple(&mut next);
            if seen.contains(&next) {
                continue;
            }
            let mut p = path.clone();
            p.push(m);
            match best_decreasing(rank, &next) {
                Ok(Some(d)) => {
                    p.push(d);
                    return Some(p);
                }
                Err(()) => return None,
                Ok(None) => {}
            }
            if seen.len() >= PLATEAU_LIMIT {
                return None;
            }
            seen.insert(next.clone());
            queue.push_back((next, p));
        }
    }
    None
}

/// Nielsen reduction of a tuple to the standard basis. Returns moves
/// `μ_1..μ_k` with `tuple ∘ μ_1 ∘ .. ∘ μ_k = id`, or `None` if the tuple is
/// not a basis.
fn nielsen_reduce(rank: usize, mut tuple: Vec<Word>) -> Option<Vec<NielsenMove>> {
    let mut moves = Vec::new();
    if tuple.iter().any(Word::is_empty) {
        return None;
    }
    loop {
        if tuple.iter().all(|u| u.len() == 1) {
            break;
        }
        match best_decreasing(rank, &tuple) {
            Err(()) => return None,
            Ok(Some(m)) => {
                m.apply_to_tuple(&mut tuple);
                moves.push(m);
            }
            Ok(None) => {
                let path = escape_plateau(rank, &tuple)?;
                for m in path {
                    m.apply_to_tuple(&mut tuple);
                    moves.push(m);
                }
            }
        }
    }
    // now a tuple of single letters; it must be a signed permutation
    let mut seen = alloc::vec![false; rank];
    for u in &tuple {
        let g = u.letters()[0].generator_index();
        if seen[g] {
            return None;
        }
        seen[g] = true;
    }
    for i in 0..rank {
        if tuple[i].letters()[0].is_inverse() {
            let m = NielsenMove::Invert { i };
            m.apply_to_tuple(&mut tuple);
            moves.push(m);
        }
    }
    // selection sort by generator index, recording swaps
    for i in 0..rank {
        let j = (i..rank).find(|&j| tuple[j].letters()[0].generator_index() == i).expect("permutation");
        if j != i {
            let m = NielsenMove::Swap { i, j };
            m.apply_to_tuple(&mut tuple);
            moves.push(m);
        }
    }
    Some(moves)
}

/// An endomorphism together with a verified two-sided inverse and a
/// replayable Nielsen certificate.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Automorphism {
    forward: Endomorphism,
    inverse: Endomorphism,
    certificate: Vec<NielsenMove>,
}

impl Automorphism {
    pub fn identity(rank: usize) -> Self {
        Automorphism {
            forward: Endomorphism::identity(rank),
            inverse: Endomorphism::identity(rank),
            certificate: Vec::new(),
        }
    }

    /// Builds from a move sequence; `replay(moves)` is the forward map.
    pub fn from_moves(rank: usize, moves: Vec<NielsenMove>) -> Result<Self> {
        if let Some(m) = moves.iter().find(|m| m.max_index() >= rank) {
            return Err(Error::RankMismatch { expected: rank, found: m.max_index() + 1 });
        }
        let inv: Vec<NielsenMove> = moves.iter().rev().map(|m| m.inverse()).collect();
        Ok(Automorphism { forward: replay(rank, &moves), inverse: replay(rank, &inv), certificate: moves })
    }

    pub fn rank(&self) -> usize {
        self.forward.rank
    }

    pub fn forward(&self) -> &Endomorphism {
        &self.forward
    }

    pub fn inverse_map(&self) -> &Endomorphism {
        &self.inverse
    }

    pub fn certificate(&self) -> &[NielsenMove] {
        &self.certificate
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.forward.apply(w)
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
            certificate: self.certificate.iter().rev().map(|m| m.inverse()).collect(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        self.compose_capped(other, DEFAULT_LENGTH_CAP)
    }

    pub fn compose_capped(&self, other: &Automorphism, cap: usize) -> Result<Automorphism> {
        let forward = self.forward.compose_capped(&other.forward, cap)?;
        let inverse = other.inverse.compose_capped(&self.inverse, cap)?;
        let mut certificate = self.certificate.clone();
        certificate.extend_from_slice(&other.certificate);
        Ok(Automorphism { forward, inverse, certificate })
    }

    /// `self^n` by repeated composition.
    pub fn pow(&self, n: usize) -> Result<Automorphism> {
        let mut acc = Automorphism::identity(self.rank());
        for _ in 0..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Induced, up to an inner automorphism, by a signed permutation of the basis.
    pub fn is_permutational(&self) -> bool {
        let images = self.forward.images();
        let (c0, g0) = images[0].cyclic_reduce();
        if c0.len() != 1 {
            return false;
        }
        // g0 is only fixed up to powers of the image of a_1; the second image pins it
        let conj_by = |g: &Word, u: &Word| g.inverse().concat_reduce(u).and_then(|y| y.concat_reduce(g)).expect("same rank");
        let (_, d) = conj_by(&g0, &images[1]).cyclic_reduce();
        let conj = g0.concat_reduce(&d).expect("same rank");
        let mut seen = alloc::vec![false; self.rank()];
        for u in images {
            let x = conj_by(&conj, u);
            if x.len() != 1 {
                return false;
            }
            let g = x.letters()[0].generator_index();
            if seen[g] {
                return false;
            }
            seen[g] = true;
        }
        true
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("exists");
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

/// All generator permutations, all single inversions, and all elementary
/// Nielsen maps `a_i -> a_i a_j^{±1}`.
pub fn whitehead_and_nielsen_generators(rank: usize) -> Result<Vec<Automorphism>> {
    if rank < 2 {
        return Err(Error::RankTooSmall { rank, min: 2 });
    }
    let mut out = Vec::new();
    for p in permutations(rank) {
        let images = p.iter().map(|&k| Word::generator(rank, k)).collect();
        out.push(Endomorphism::new(rank, images)?.certify()?);
    }
    for i in 0..rank {
        out.push(Automorphism::from_moves(rank, alloc::vec![NielsenMove::Invert { i }])?);
    }
    for i in 0..rank {
        for j in 0..rank {
            if i != j {
                for inverse in [false, true] {
                    out.push(Automorphism::from_moves(rank, alloc::vec![NielsenMove::Right { i, j, inverse }])?);
                }
            }
        }
    }
    Ok(out)
}

/// Composition of `k` generators drawn uniformly from `generators`.
pub fn random_product<R: Rng + ?Sized>(generators: &[Automorphism], k: usize, rng: &mut R) -> Result<Automorphism> {
    let rank = generators.first().map_or(2, Automorphism::rank);
    let mut acc = Automorphism::identity(rank);
    for _ in 0..k {
        let g = &generators[rng.random_range(0..generators.len())];
        acc = acc.compose(g)?;
    }
    Ok(acc)
}

/// Deterministic per `(rank, k, seed)`.
pub fn random_automorphism(rank: usize, k: usize, seed: u64) -> Result<Automorphism> {
    let gens = whitehead_and_nielsen_generators(rank)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_product(&gens, k, &mut rng)
}

/// `a_1 -> a_1 a_2^m`, other generators fixed.
pub fn phi_family(rank: usize, m: usize) -> Result<Automorphism> {
    if rank < 2 {
        return Err(Error::RankTooSmall { rank, min: 2 });
    }
    let moves = alloc::vec![NielsenMove::Right { i: 0, j: 1, inverse: false }; m];
    Automorphism::from_moves(rank, moves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folding::generates_as_basis;
    use crate::testutil::{aut, endo, w};
    use proptest::prelude::*;

    #[test]
    fn apply_examples() {
        let phi = endo("a->ab; b->b");
        assert_eq!(phi.apply(&w("aB")).unwrap(), w("a"));
        assert_eq!(phi.apply(&w("ab")).unwrap(), w("abb"));
        let id = Endomorphism::identity(2);
        assert_eq!(id.apply(&w("abAAB")).unwrap(), w("abAAB"));
        assert!(phi.apply(&Word::generator(3, 2)).is_err());
    }

    #[test]
    fn compose_examples() {
        let phi = endo("a->ab; b->b");
        assert_eq!(phi.compose(&phi).unwrap(), endo("a->abb; b->b"));
        assert_eq!(phi.compose(&Endomorphism::identity(2)).unwrap(), phi);
        let swap = endo("a->b; b->a");
        assert!(swap.compose(&swap).unwrap().is_identity());
    }

    #[test]
    fn certify_examples() {
        let phi = endo("a->ab; b->b").certify_basis().unwrap();
        assert_eq!(phi.inverse_map(), &endo("a->aB; b->b"));
        assert!(phi.forward().compose(phi.inverse_map()).unwrap().is_identity());
        assert!(phi.inverse_map().compose(phi.forward()).unwrap().is_identity());
        assert!(endo("a->aa; b->b").certify_basis().is_none());
        assert!(endo("a->ab; b->ba").certify_basis().is_none());
        let id = Endomorphism::identity(3).certify_basis().unwrap();
        assert!(id.inverse_map().is_identity());
        assert!(endo("a->a; b->a").certify_basis().is_none());
    }

    #[test]
    fn certificate_replays_forward() {
        for s in ["a->ab; b->b", "a->bab; b->bAB", "a->b; b->A", "a->abc; b->bc; c->cb"] {
            let e = endo(s);
            if let Some(a) = e.certify_basis() {
                assert_eq!(&replay(e.rank(), a.certificate()), a.forward(), "{s}");
            }
        }
    }

    #[test]
    fn generator_counts() {
        let g2 = whitehead_and_nielsen_generators(2).unwrap();
        // 2 permutations, 2 inversions, 4 Nielsen maps
        assert_eq!(g2.len(), 2 + 2 + 4);
        let g3 = whitehead_and_nielsen_generators(3).unwrap();
        assert_eq!(g3.len(), 6 + 3 + 12);
        for g in g2.iter().chain(&g3) {
            assert!(g.forward().certify_basis().is_some());
        }
        assert!(whitehead_and_nielsen_generators(1).is_err());
    }

    #[test]
    fn random_automorphisms_are_deterministic() {
        assert_eq!(random_automorphism(2, 0, 9).unwrap(), Automorphism::identity(2));
        let a = random_automorphism(2, 5, 42).unwrap();
        assert_eq!(a, random_automorphism(2, 5, 42).unwrap());
        assert!(a.forward().certify_basis().is_some());
    }

    #[test]
    fn permutational_detection() {
        assert!(aut("a->b; b->A").is_permutational());
        assert!(aut("a->bAB; b->bbB").is_permutational());
        assert!(aut("a->baB; b->bBB").is_permutational());
        assert!(!aut("a->ab; b->b").is_permutational());
        assert!(aut("a->A; b->ABa").is_permutational());
        assert!(aut("a->aaA; b->acA; c->aBA").is_permutational());
        assert!(!aut("a->a; b->aba").is_permutational());
        assert!(Automorphism::identity(3).is_permutational());
    }

    #[test]
    fn phi_family_images() {
        let p = phi_family(3, 2).unwrap();
        assert_eq!(p.forward(), &endo("a->abb; b->b; c->c"));
    }

    fn random_word(rank: usize, max: usize) -> impl Strategy<Value = Word> {
        let r = rank as i32;
        prop::collection::vec((1..=r, any::<bool>()).prop_map(|(i, s)| if s { -i } else { i }), 0..=max)
            .prop_map(move |v| Word::reduce(&v, rank).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn inverse_undoes_forward(seed in any::<u64>(), k in 0usize..12, rank in 2usize..=3, x in random_word(3, 30)) {
            let x = Word::from_letters(rank, x.letters().iter().copied().filter(|l| l.generator_index() < rank));
            let phi = random_automorphism(rank, k, seed).unwrap();
            let back = phi.inverse().apply(&phi.apply(&x).unwrap()).unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn apply_is_homomorphic(seed in any::<u64>(), u in random_word(2, 20), v in random_word(2, 20)) {
            let phi = random_automorphism(2, 6, seed).unwrap();
            let lhs = phi.apply(&u.concat_reduce(&v).unwrap()).unwrap();
            let rhs = phi.apply(&u).unwrap().concat_reduce(&phi.apply(&v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn compose_matches_sequential_apply(s1 in any::<u64>(), s2 in any::<u64>(), x in random_word(2, 20)) {
            let phi = random_automorphism(2, 5, s1).unwrap();
            let psi = random_automorphism(2, 5, s2).unwrap();
            let both = phi.compose(&psi).unwrap();
            prop_assert_eq!(both.apply(&x).unwrap(), phi.apply(&psi.apply(&x).unwrap()).unwrap());
            prop_assert_eq!(&replay(2, both.certificate()), both.forward());
        }

        #[test]
        fn recertification_agrees_with_folding(seed in any::<u64>(), k in 0usize..10, rank in 2usize..=3) {
            let phi = random_automorphism(rank, k, seed).unwrap();
            prop_assert!(generates_as_basis(rank, phi.forward().images()));
            let again = phi.forward().certify_basis();
            prop_assert!(again.is_some());
            let again = again.unwrap();
            prop_assert_eq!(again.inverse_map(), phi.inverse_map());
        }

        #[test]
        fn certification_matches_folding_on_arbitrary_tuples(u in random_word(2, 5), v in random_word(2, 5)) {
            let e = Endomorphism::new(2, alloc::vec![u.clone(), v.clone()]).unwrap();
            prop_assert_eq!(e.certify_basis().is_some(), generates_as_basis(2, &[u, v]));
        }

        #[test]
        fn certification_matches_folding_rank3(u in random_word(3, 4), v in random_word(3, 4), x in random_word(3, 4)) {
            let e = Endomorphism::new(3, alloc::vec![u.clone(), v.clone(), x.clone()]).unwrap();
            prop_assert_eq!(e.certify_basis().is_some(), generates_as_basis(3, &[u, v, x]));
        }
    }
}
