//! Growth of `λ_A(φⁿ)` and `Λ_A(φⁿ)` and fits of the form `c λⁿ nᵐ`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::automorphisms::{Automorphism, DEFAULT_LENGTH_CAP};
use crate::lipschitz::extremal_stretch;
use crate::rational::{to_f64, Q};
use crate::stretch::{mc_generic_stretch, substitution_stretch_capped, McEstimate, Substitution};
use crate::words::Word;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StretchMode {
    Generic,
    Extremal,
}

/// One term of a power sequence.
#[derive(Clone, Debug, PartialEq)]
pub enum PowerValue {
    Exact(Q),
    /// exact drift out of budget: Monte Carlo estimate
    Estimate(McEstimate),
}

impl PowerValue {
    pub fn value(&self) -> f64 {
        match self {
            PowerValue::Exact(x) => to_f64(x),
            PowerValue::Estimate(e) => e.mean,
        }
    }

    pub fn exact(&self) -> Option<&Q> {
        match self {
            PowerValue::Exact(x) => Some(x),
            PowerValue::Estimate(_) => None,
        }
    }
}

/// `[s(1), .., s(k)]`, possibly cut short by the image length cap.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSequence {
    pub values: Vec<PowerValue>,
    pub truncated: bool,
}

impl PowerSequence {
    pub fn floats(&self) -> Vec<f64> {
        self.values.iter().map(PowerValue::value).collect()
    }

    pub fn all_exact(&self) -> bool {
        self.values.iter().all(|v| v.exact().is_some())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerOptions {
    /// total image length allowed for a power
    pub length_cap: usize,
    /// cylinder node budget of one exact attempt; once a power exceeds it
    /// the later (larger) powers are only estimated
    pub cylinder_cap: usize,
    pub mc_steps: usize,
    pub mc_trials: usize,
    pub seed: u64,
}

impl Default for PowerOptions {
    fn default() -> Self {
        PowerOptions { length_cap: DEFAULT_LENGTH_CAP, cylinder_cap: 5_000_000, mc_steps: 200_000, mc_trials: 20, seed: 1 }
    }
}

pub fn power_stretch_sequence(phi: &Automorphism, n_max: usize, mode: StretchMode) -> Result<PowerSequence> {
    power_stretch_sequence_with(phi, n_max, mode, &PowerOptions::default())
}

pub fn power_stretch_sequence_with(
    phi: &Automorphism,
    n_max: usize,
    mode: StretchMode,
    opts: &PowerOptions,
) -> Result<PowerSequence> {
    if n_max == 0 {
        return Err(Error::InvalidInput("n_max must be at least 1".into()));
    }
    let mut values = Vec::with_capacity(n_max);
    let mut power = phi.clone();
    let mut exact_feasible = true;
    for n in 1..=n_max {
        if n > 1 {
            match phi.compose_capped(&power, opts.length_cap) {
                Ok(p) => power = p,
                Err(Error::CapExceeded { .. }) => return Ok(PowerSequence { values, truncated: true }),
                Err(e) => return Err(e),
            }
        }
        let v = match mode {
            StretchMode::Generic => {
                let s = Substitution::for_automorphism(&power);
                let exact = if exact_feasible {
                    match substitution_stretch_capped(&s, opts.cylinder_cap) {
                        Ok(r) => Some(r.value),
                        Err(Error::CapExceeded { .. } | Error::WindowExceeded { .. }) => None,
                        Err(e) => return Err(e),
                    }
                } else {
                    None
                };
                match exact {
                    Some(v) => PowerValue::Exact(v),
                    None => {
                        exact_feasible = false;
                        let seed = opts.seed.wrapping_add(n as u64);
                        PowerValue::Estimate(mc_generic_stretch(&s, opts.mc_steps, opts.mc_trials, seed)?)
                    }
                }
            }
            StretchMode::Extremal => PowerValue::Exact(extremal_stretch(&power)?),
        };
        values.push(v);
    }
    Ok(PowerSequence { values, truncated: false })
}

/// `c₁ λⁿ nᵐ ≤ s(n) ≤ c₂ λⁿ nᵐ` on every fitted point.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthFit {
    pub lambda: f64,
    pub m: u32,
    pub c1: f64,
    pub c2: f64,
    /// input was not monotone, or the rate estimate fell below one
    pub flagged: bool,
}

impl GrowthFit {
    pub fn spread(&self) -> f64 {
        self.c2 / self.c1
    }
}

/// Relative change in the rate below which a higher order adds nothing.
const ORDER_TOLERANCE: f64 = 0.02;

/// Roots of `Σ_k C(m+1,k) (-λ)^{m+1-k} s(n₀+k)`, the order `m+1` difference
/// operator `(E - λ)^{m+1}` (which annihilates `λⁿ p(n)` for `deg p ≤ m`)
/// applied to the last `m+2` points.
fn annihilator_roots(seq: &[f64], m: usize) -> Vec<Complex64> {
    let w = &seq[seq.len() - m - 2..];
    let k = m + 1;
    // coeffs[j] multiplies λ^j
    let mut coeffs = vec![0.0; k + 1];
    let mut binom = 1.0;
    for (i, &x) in w.iter().enumerate() {
        let sign = if (k - i).is_multiple_of(2) { 1.0 } else { -1.0 };
        coeffs[k - i] += sign * binom * x;
        binom = binom * (k - i) as f64 / (i + 1) as f64;
    }
    polynomial_roots(&coeffs)
}

/// Durand–Kerner iteration on the monic normalisation.
fn polynomial_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    let lead = coeffs[deg];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
    let radius = 1.0 + monic[..deg].iter().fold(0.0f64, |a, c| a.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..deg).map(|i| seed.powu(i as u32) * radius).collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if j != i {
                    den *= z[i] - z[j];
                }
            }
            let delta = eval(z[i]) / den;
            z[i] -= delta;
            moved = moved.max(delta.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-14 {
            break;
        }
    }
    z
}

/// Fits `s(n) ≈ c λⁿ nᵐ`.
///
/// The annihilator `(E - λ)^{m+1}` on the last `m + 2` points has `λ` as a
/// root whatever the lower-order terms of the polynomial factor, while its
/// other roots move with the order. So `m` is the least order in `m_range`
/// having a root whose real part some root of order `m + 1` matches within
/// 2%, and `λ` is the real part of that root. The envelope is taken over all
/// points.
pub fn growth_fit(seq: &[f64], m_range: core::ops::RangeInclusive<u32>) -> Result<GrowthFit> {
    if seq.len() < 4 {
        return Err(Error::InvalidInput("growth fit needs at least four points".into()));
    }
    if seq.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
        return Err(Error::InvalidInput("growth fit needs positive finite values".into()));
    }
    if m_range.is_empty() {
        return Err(Error::InvalidInput("empty range of m".into()));
    }
    let (lo, hi) = (*m_range.start() as usize, *m_range.end() as usize);
    // orders that leave one spare point for the comparison
    let top = hi.min(seq.len() - 3);
    let roots: Vec<Vec<f64>> = (0..=top + 1)
        .map(|m| annihilator_roots(seq, m).into_iter().map(|z| z.re).filter(|&r| r > 0.0).collect())
        .collect();
    let mut pick = None;
    for m in lo..=top {
        let mut best: Option<(f64, f64)> = None;
        for &r in &roots[m] {
            for &q in &roots[m + 1] {
                let d = (q - r).abs() / r;
                if d <= ORDER_TOLERANCE && best.is_none_or(|(bd, _)| d < bd) {
                    best = Some((d, r));
                }
            }
        }
        if let Some((_, r)) = best {
            pick = Some((m, r));
            break;
        }
    }
    let (m, mut lambda) = pick.unwrap_or_else(|| {
        // no stable order: plain tail ratio
        (lo.min(top), seq[seq.len() - 1] / seq[seq.len() - 2])
    });
    let mut flagged = pick.is_none() || !seq.windows(2).all(|p| p[1] >= p[0]);
    if lambda < 1.0 {
        lambda = 1.0;
        flagged = true;
    }
    let (mut c1, mut c2) = (f64::INFINITY, 0.0f64);
    for (i, &s) in seq.iter().enumerate() {
        let n = (i + 1) as f64;
        let r = s / (libm::pow(lambda, n) * libm::pow(n, m as f64));
        c1 = c1.min(r);
        c2 = c2.max(r);
    }
    Ok(GrowthFit { lambda, m: m as u32, c1, c2, flagged })
}

/// `max_w ||φⁿ(w)||_A^{1/n}` at `n = n_max`.
pub fn algebraic_stretch_estimate(phi: &Automorphism, witnesses: &[Word], n_max: usize) -> Result<f64> {
    if witnesses.is_empty() || n_max == 0 {
        return Err(Error::InvalidInput("need witnesses and n_max ≥ 1".into()));
    }
    let mut best = 0.0f64;
    for w in witnesses {
        let mut x = w.clone();
        for _ in 0..n_max {
            x = phi.apply(&x)?;
            if x.len() > DEFAULT_LENGTH_CAP {
                return Err(Error::CapExceeded { what: "iterated image length", cap: DEFAULT_LENGTH_CAP });
            }
        }
        let l = x.cyclic_len() as f64;
        best = best.max(libm::pow(l, 1.0 / n_max as f64));
    }
    Ok(best)
}
