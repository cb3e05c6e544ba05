//! Generic stretching factors along the simple non-backtracking random walk.
//!
//! A walk `y_1 y_2 ..` with `y_1` uniform over the `2N` letters and each
//! further letter uniform over the `2N - 1` letters other than the inverse
//! of its predecessor is pushed through a substitution `σ` (letter ↦ reduced
//! path in a target). The drift of the reduced image length is computed
//! exactly by [`exact_generic_stretch`] from a finite [`DriftMachine`] or,
//! when the machine is too large, by [`cylinder_generic_stretch`], and
//! estimated by [`mc_generic_stretch`].

mod cylinders;
mod machine;
mod mc;
mod solve;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

pub use cylinders::{cylinder_generic_stretch, DEFAULT_CYLINDER_CAP};
pub use machine::{build_drift_machine, DriftMachine, MachineOptions};
pub use mc::{mc_generic_stretch, mc_trial, random_walk, summarize, trial_rng, McEstimate};
pub use solve::{exact_generic_stretch, gaussian_drift, DriftMethod, DriftResult};

use crate::automorphisms::Automorphism;
use crate::graph::MarkedGraph;
use crate::rational::Q;
use crate::words::{push_reduced, Letter};
use crate::{Error, Result};

/// Letter images as reduced paths over a target alphabet of symbols with
/// inverse `s ^ 1`, and integer symbol weights over a common denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct Substitution {
    pub rank: usize,
    /// indexed by `Letter::index`
    pub images: Vec<Vec<u32>>,
    /// weight of each target symbol, times `denominator`
    pub weights: Vec<i64>,
    pub denominator: i64,
    /// for each target symbol, the letters of the element of `F_N` it
    /// crosses in the universal cover (an inverse of the substitution)
    pub jumps: Vec<Vec<u32>>,
    /// weight of a path from the base point to the tail of each symbol
    pub offsets: Vec<i64>,
}

impl Substitution {
    /// `σ(x) = φ(x)` with unit letter lengths.
    pub fn for_automorphism(phi: &Automorphism) -> Self {
        let rank = phi.rank();
        let word_images = |m: &crate::automorphisms::Endomorphism| -> Vec<Vec<u32>> {
            (0..2 * rank as u32).map(|i| m.image(Letter::from_index(i)).letters().iter().map(|l| l.index()).collect()).collect()
        };
        Substitution {
            rank,
            images: word_images(phi.forward()),
            weights: alloc::vec![1; 2 * rank],
            denominator: 1,
            jumps: word_images(phi.inverse_map()),
            offsets: alloc::vec![0; 2 * rank],
        }
    }

    /// `σ(x)` is the based loop of `x` in `T`, weighted by edge length.
    pub fn for_graph(t: &MarkedGraph) -> Result<Self> {
        let rank = t.rank();
        let mut d = BigInt::one();
        for e in 0..t.edge_count() {
            d = d.lcm(t.length(e).denom());
        }
        let dq = Q::from_integer(d.clone());
        let too_big = || Error::CapExceeded { what: "edge length denominator", cap: i64::MAX as usize };
        let symbols = 2 * t.edge_count() as u32;
        let mut weights = Vec::with_capacity(symbols as usize);
        for s in 0..symbols {
            let w = (t.symbol_length(s) * &dq).to_integer().to_i64().ok_or_else(too_big)?;
            weights.push(w);
        }
        let images = (0..2 * rank as u32).map(|i| t.letter_path(Letter::from_index(i)).to_vec()).collect();
        let jumps = (0..symbols).map(|s| t.edge_element(s).letters().iter().map(|l| l.index()).collect()).collect();
        let offsets = (0..symbols)
            .map(|s| t.tree_path(t.tail(s)).iter().map(|&e| weights[e as usize]).sum())
            .collect();
        Ok(Substitution { rank, images, weights, denominator: d.to_i64().ok_or_else(too_big)?, jumps, offsets })
    }

    /// Bound (times `denominator`) on the weight cancelled between `σ(u)`
    /// and `σ(v)` for any reduced product `uv`.
    ///
    /// The reduced image of `uv` is a geodesic whose vertices, read through
    /// the jumps, form a chain from `1` to `uv` passing through `u`; so `σ(u)`
    /// lies within an offset plus the image of a prefix of one jump of it.
    pub fn cancellation_bound(&self) -> i64 {
        let weight = |p: &[u32]| p.iter().map(|&t| self.weights[t as usize]).sum::<i64>();
        let image = |letters: &mut dyn Iterator<Item = u32>| {
            let mut prefixes = alloc::vec![0];
            let mut path: Vec<u32> = Vec::new();
            for l in letters {
                for &t in &self.images[l as usize] {
                    push_reduced(&mut path, t);
                }
                prefixes.push(weight(&path));
            }
            prefixes
        };
        let mut best = 0;
        for (s, jump) in self.jumps.iter().enumerate() {
            // u sits inside the jump: measure from whichever end is closer
            let from_tail = image(&mut jump.iter().copied());
            let from_head = image(&mut jump.iter().rev().map(|l| l ^ 1));
            let k = jump.len();
            for i in 0..=k {
                let d = (self.offsets[s] + from_tail[i]).min(self.offsets[s ^ 1] + from_head[k - i]);
                best = best.max(d);
            }
        }
        best
    }

    pub(crate) fn image_weight(&self, x: usize) -> i64 {
        self.images[x].iter().map(|&s| self.weights[s as usize]).sum()
    }

    /// Number of symbols of `σ(y)` that cancel against the end of `σ(x)`.
    pub fn pair_cancellation(&self, x: usize, y: usize) -> usize {
        let (u, v) = (&self.images[x], &self.images[y]);
        u.iter().rev().zip(v.iter()).take_while(|(a, b)| **a == **b ^ 1).count()
    }
}

/// State budget for the drift machine before switching to cylinders.
const MACHINE_BUDGET: usize = 250_000;

/// Exact drift of a substitution: the drift machine when it is small,
/// cylinder expectations otherwise.
pub fn substitution_stretch(s: &Substitution) -> Result<DriftResult> {
    substitution_stretch_capped(s, DEFAULT_CYLINDER_CAP)
}

/// As [`substitution_stretch`] with a cylinder node budget.
pub fn substitution_stretch_capped(s: &Substitution, max_nodes: usize) -> Result<DriftResult> {
    let opts = MachineOptions { max_states: MACHINE_BUDGET, ..MachineOptions::default() };
    match build_drift_machine(s, &opts) {
        Ok(m) => exact_generic_stretch(&m),
        Err(Error::CapExceeded { .. } | Error::WindowExceeded { .. }) => cylinder_generic_stretch(s, max_nodes),
        Err(e) => Err(e),
    }
}

/// `λ_A(φ)` (unit edge lengths).
pub fn generic_stretch(phi: &Automorphism) -> Result<DriftResult> {
    substitution_stretch(&Substitution::for_automorphism(phi))
}

/// `λ_A(T)` for a marked graph.
pub fn generic_stretch_graph(t: &MarkedGraph) -> Result<DriftResult> {
    substitution_stretch(&Substitution::for_graph(t)?)
}

/// `λ_A(φ) · λ_A(φ⁻¹)`.
pub fn symmetrized_i(phi: &Automorphism) -> Result<Q> {
    Ok(generic_stretch(phi)?.value * generic_stretch(&phi.inverse())?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphisms::{phi_family, random_automorphism, whitehead_and_nielsen_generators};
    use crate::graph::tests::random_graph;
    use crate::lipschitz::{extremal_stretch, lambda_distortion};
    use crate::rational::{denominator_divides_power_of, q, qi, to_f64};
    use crate::testutil::aut;

    #[test]
    fn nielsen_example() {
        let phi = aut("a->ab; b->b");
        let s = Substitution::for_automorphism(&phi);
        let mut pairs = Vec::new();
        for x in 0..4 {
            for y in 0..4 {
                if y != x ^ 1 && s.pair_cancellation(x, y) > 0 {
                    pairs.push((x, y, s.pair_cancellation(x, y)));
                }
            }
        }
        // (a, B) and (b, A), one pair of letters each
        assert_eq!(pairs, [(0, 3, 1), (2, 1, 1)]);
        let r = generic_stretch(&phi).unwrap();
        assert_eq!(r.value, q(7, 6));
        assert_eq!(symmetrized_i(&phi).unwrap(), q(49, 36));
        let m = build_drift_machine(&s, &MachineOptions::default()).unwrap();
        assert_eq!(gaussian_drift(&m).unwrap(), q(7, 6));
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(generic_stretch(&Automorphism::identity(3)).unwrap().value, qi(1));
        assert_eq!(generic_stretch(&aut("a->B; b->a")).unwrap().value, qi(1));
        assert_eq!(symmetrized_i(&Automorphism::identity(2)).unwrap(), qi(1));
        let r = MarkedGraph::rose(2, &[q(1, 2), q(1, 2)]).unwrap();
        assert_eq!(generic_stretch_graph(&r).unwrap().value, q(1, 2));
    }

    #[test]
    fn permutational_minimum() {
        // 1 + (2N-3)/(2N^2-N) is the least value off the permutational set
        for n in 2..=4 {
            let gens = whitehead_and_nielsen_generators(n).unwrap();
            let least = gens
                .iter()
                .filter(|g| !g.is_permutational())
                .map(|g| generic_stretch(g).unwrap().value)
                .min()
                .unwrap();
            let nn = n as i64;
            assert_eq!(least, qi(1) + q(2 * nn - 3, 2 * nn * nn - nn), "N = {n}");
        }
    }

    #[test]
    fn exact_matches_gaussian_elimination() {
        for seed in 0..30 {
            let phi = random_automorphism(2, 4, seed).unwrap();
            let m = build_drift_machine(&Substitution::for_automorphism(&phi), &MachineOptions::default()).unwrap();
            if m.state_count() > 150 {
                continue;
            }
            assert_eq!(exact_generic_stretch(&m).unwrap().value, gaussian_drift(&m).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn random_properties() {
        for seed in 0..60 {
            let n = 2 + (seed % 2) as usize;
            let phi = random_automorphism(n, 1 + (seed % 7) as usize, seed).unwrap();
            let l = generic_stretch(&phi).unwrap().value;
            assert!(denominator_divides_power_of(&(l.clone() * qi(2 * n as i64)), 2 * n as u64 - 1));
            assert!(l > qi(0) && l <= extremal_stretch(&phi).unwrap());
            let li = generic_stretch(&phi.inverse()).unwrap().value;
            assert_eq!(l == qi(1), li == qi(1));
            assert_eq!(l == qi(1), phi.is_permutational());
            assert!(l.clone() * li >= qi(1));
        }
    }

    #[test]
    fn phi_family_bounds() {
        for n in 2..=4usize {
            for m in 1..=5usize {
                let l = generic_stretch(&phi_family(n, m).unwrap()).unwrap().value;
                assert!(l <= qi(1) + q(m as i64, n as i64));
            }
        }
    }

    #[test]
    fn graphs_below_extremal_bound() {
        for seed in 0..20 {
            let n = 2 + (seed % 2) as usize;
            let s = random_graph(n, seed);
            let l = generic_stretch_graph(&s).unwrap().value;
            let ta = MarkedGraph::rose(n, &alloc::vec![q(1, n as i64); n]).unwrap();
            let big = lambda_distortion(&ta, &s).unwrap().lambda / qi(n as i64);
            assert!(l > qi(0) && l <= big);
        }
    }

    #[test]
    fn mc_agrees_with_exact() {
        for seed in 0..6 {
            let phi = random_automorphism(2, 5, seed).unwrap();
            let exact = to_f64(&generic_stretch(&phi).unwrap().value);
            let est = mc_generic_stretch(&Substitution::for_automorphism(&phi), 20_000, 8, seed).unwrap();
            assert!((est.mean - exact).abs() <= 4.0 * est.stderr + 1e-3, "{exact} vs {est:?}");
        }
    }
}
