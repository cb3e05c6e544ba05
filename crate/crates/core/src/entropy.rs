//! Volume entropy of a metric graph.

use alloc::vec::Vec;

use crate::graph::MarkedGraph;
use crate::rational::to_f64;

struct Transfer {
    /// successors of each oriented edge (non-backtracking)
    succ: Vec<Vec<usize>>,
    lens: Vec<f64>,
}

impl Transfer {
    fn new(g: &MarkedGraph) -> Self {
        let m = 2 * g.edge_count();
        let lens = (0..m).map(|s| to_f64(g.symbol_length(s as u32))).collect();
        let succ = (0..m)
            .map(|e| {
                (0..m)
                    .filter(|&f| g.tail(f as u32) == g.head(e as u32) && f != (e ^ 1))
                    .collect()
            })
            .collect();
        Transfer { succ, lens }
    }

    /// Collatz–Wielandt bounds on the Perron root of `M(s)`, from power
    /// iteration on the aperiodic `M(s) + I`.
    fn perron_bounds(&self, s: f64) -> (f64, f64) {
        let m = self.succ.len();
        let w: Vec<f64> = self.lens.iter().map(|l| libm::exp(-s * l)).collect();
        let mut x = alloc::vec![1.0f64; m];
        let mut y = alloc::vec![0.0f64; m];
        let (mut lo, mut hi) = (0.0, f64::INFINITY);
        for it in 0..100_000 {
            for e in 0..m {
                y[e] = x[e] + self.succ[e].iter().map(|&f| w[f] * x[f]).sum::<f64>();
            }
            let (mut a, mut b) = (f64::INFINITY, 0.0f64);
            for e in 0..m {
                let r = y[e] / x[e];
                a = a.min(r);
                b = b.max(r);
            }
            lo = f64::max(lo, a - 1.0);
            hi = f64::min(hi, b - 1.0);
            if hi - lo <= 1e-14 * hi.abs().max(1.0) && it > 2 {
                break;
            }
            let norm = y.iter().copied().fold(0.0, f64::max);
            for e in 0..m {
                x[e] = y[e] / norm;
            }
        }
        (lo, hi)
    }
}

/// The `s` at which the non-backtracking transfer matrix
/// `M(s)[e→f] = exp(-s L(f))` has Perron root 1.
pub fn volume_entropy(g: &MarkedGraph) -> f64 {
    let t = Transfer::new(g);
    let (mut a, mut b) = (0.0f64, 1.0f64);
    // ρ(0) > 1 for rank ≥ 2; grow b until ρ(b) < 1
    while t.perron_bounds(b).1 >= 1.0 {
        a = b;
        b *= 2.0;
    }
    while b - a > 1e-13 * b.max(1.0) {
        let mid = 0.5 * (a + b);
        let (lo, hi) = t.perron_bounds(mid);
        if lo > 1.0 {
            a = mid;
        } else if hi < 1.0 {
            b = mid;
        } else {
            return mid;
        }
    }
    0.5 * (a + b)
}
