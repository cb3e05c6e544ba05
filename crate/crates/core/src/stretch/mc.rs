//! Monte Carlo estimate of the generic stretching factor.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Substitution;
use crate::words::{cyclic_core_offset, push_reduced, Letter};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: usize,
    pub steps: usize,
}

/// `n` steps of the simple non-backtracking walk on `2N` letters.
pub fn random_walk<R: Rng + ?Sized>(rank: usize, n: usize, rng: &mut R) -> Vec<Letter> {
    let k = 2 * rank as u32;
    let mut out = Vec::with_capacity(n);
    let mut prev: Option<u32> = None;
    for _ in 0..n {
        let x = match prev {
            None => rng.random_range(0..k),
            Some(p) => {
                let r = rng.random_range(0..k - 1);
                if r >= (p ^ 1) {
                    r + 1
                } else {
                    r
                }
            }
        };
        out.push(Letter::from_index(x));
        prev = Some(x);
    }
    out
}

/// Per-trial generator: the seed picks the key, the trial number the stream.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Cyclically reduced image length of one walk, divided by `steps`.
pub fn mc_trial(s: &Substitution, steps: usize, seed: u64, trial: u64) -> f64 {
    let mut rng = trial_rng(seed, trial);
    let walk = random_walk(s.rank, steps, &mut rng);
    let mut path: Vec<u32> = Vec::with_capacity(steps);
    for l in walk {
        for &t in &s.images[l.index() as usize] {
            push_reduced(&mut path, t);
        }
    }
    let k = cyclic_core_offset(&path);
    let w: i64 = path[k..path.len() - k].iter().map(|&t| s.weights[t as usize]).sum();
    w as f64 / s.denominator as f64 / steps as f64
}

pub fn summarize(samples: &[f64], steps: usize) -> McEstimate {
    let t = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / t;
    let var = if samples.len() > 1 {
        samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (t - 1.0)
    } else {
        0.0
    };
    McEstimate { mean, stderr: libm::sqrt(var / t), trials: samples.len(), steps }
}

/// `trials` independent walks of `steps` steps; deterministic per seed.
pub fn mc_generic_stretch(s: &Substitution, steps: usize, trials: usize, seed: u64) -> Result<McEstimate> {
    if steps == 0 || trials == 0 {
        return Err(Error::InvalidInput("steps and trials must be positive".into()));
    }
    let samples: Vec<f64> = (0..trials as u64).map(|t| mc_trial(s, steps, seed, t)).collect();
    Ok(summarize(&samples, steps))
}
