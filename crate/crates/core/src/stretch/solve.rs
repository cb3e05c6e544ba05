//! Exact stationary drift of a [`DriftMachine`].

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::DriftMachine;
use crate::rational::Q;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct DriftResult {
    pub value: Q,
    pub method: DriftMethod,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DriftMethod {
    Machine {
        states: usize,
        window: usize,
        terminal_classes: usize,
        /// walk length after which the state distribution is exactly stationary
        steps: usize,
    },
    Cylinders {
        nodes: usize,
        /// cancellation bound used to decide cylinders
        bound: Q,
    },
}

const MAX_STEPS: usize = 4096;
const GAUSS_LIMIT: usize = 400;

/// Propagates exact walk counts from the start state until the count vector
/// is an eigenvector (`c_{n+1} = (2N-1) c_n`), which makes the state
/// distribution stationary from then on; the drift is the mean increment
/// under it. Falls back to elimination on terminal classes if that does not
/// happen within a fixed number of steps.
pub fn exact_generic_stretch(m: &DriftMachine) -> Result<DriftResult> {
    let terminal_classes = terminal_classes(m).len();
    let q = BigUint::from(2 * m.rank as u64 - 1);
    let n = m.state_count();
    let mut counts = alloc::vec![BigUint::zero(); n];
    counts[m.start] = BigUint::one();
    let mut next = alloc::vec![BigUint::zero(); n];
    for step in 0..MAX_STEPS {
        for c in next.iter_mut() {
            c.set_zero();
        }
        for (i, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(t, _) in &m.transitions[i] {
                next[t as usize] += c;
            }
        }
        if step > 0 && counts.iter().zip(&next).all(|(c, d)| &(c * &q) == d) {
            let value = mean_increment(m, &counts, &q);
            let method = DriftMethod::Machine { states: n, window: m.window(), terminal_classes, steps: step };
            return Ok(DriftResult { value, method });
        }
        core::mem::swap(&mut counts, &mut next);
    }
    let value = gaussian_drift(m)?;
    let method = DriftMethod::Machine { states: n, window: m.window(), terminal_classes, steps: MAX_STEPS };
    Ok(DriftResult { value, method })
}

fn mean_increment(m: &DriftMachine, counts: &[BigUint], q: &BigUint) -> Q {
    let mut num = BigInt::zero();
    let mut total = BigUint::zero();
    for (i, c) in counts.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        total += c;
        let inc: i64 = m.transitions[i].iter().map(|&(_, d)| d).sum();
        num += BigInt::from(c.clone()) * inc;
    }
    let den = BigInt::from(total * q) * m.denominator;
    Q::new(num, den)
}

/// Terminal strongly connected classes (no transition leaves them).
pub(crate) fn terminal_classes(m: &DriftMachine) -> Vec<Vec<usize>> {
    let n = m.state_count();
    // iterative Tarjan
    let mut index = alloc::vec![usize::MAX; n];
    let mut low = alloc::vec![0usize; n];
    let mut on_stack = alloc::vec![false; n];
    let mut comp = alloc::vec![usize::MAX; n];
    let mut stack = Vec::new();
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = alloc::vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut k)) = call.last_mut() {
            if *k < m.transitions[v].len() {
                let w = m.transitions[v][*k].0 as usize;
                *k += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut c = Vec::new();
                    loop {
                        let w = stack.pop().expect("nonempty");
                        on_stack[w] = false;
                        comp[w] = comps.len();
                        c.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comps.push(c);
                }
            }
        }
    }
    comps
        .into_iter()
        .enumerate()
        .filter(|(ci, c)| c.iter().all(|&v| m.transitions[v].iter().all(|&(t, _)| comp[t as usize] == *ci)))
        .map(|(_, c)| c)
        .collect()
}

/// Drift from the stationary distribution of each terminal class, found by
/// exact Gaussian elimination. Fails if classes disagree.
pub fn gaussian_drift(m: &DriftMachine) -> Result<Q> {
    let classes = terminal_classes(m);
    let mut drift: Option<Q> = None;
    for c in &classes {
        if c.len() > GAUSS_LIMIT {
            return Err(Error::StationaryUnresolved { states: c.len() });
        }
        let d = class_drift(m, c);
        match &drift {
            None => drift = Some(d),
            Some(x) if *x != d => return Err(Error::UnequalTerminalDrifts),
            _ => {}
        }
    }
    drift.ok_or(Error::StationaryUnresolved { states: 0 })
}

fn class_drift(m: &DriftMachine, class: &[usize]) -> Q {
    let k = class.len();
    let mut pos = hashbrown::HashMap::new();
    for (i, &v) in class.iter().enumerate() {
        pos.insert(v, i);
    }
    let p = Q::new(BigInt::one(), BigInt::from(2 * m.rank as i64 - 1));
    // rows: (P^T - I) π = 0 with the last row replaced by Σ π = 1
    let mut a = alloc::vec![alloc::vec![Q::zero(); k + 1]; k];
    for (i, &v) in class.iter().enumerate() {
        a[i][i] -= Q::one();
        for &(t, _) in &m.transitions[v] {
            let j = pos[&(t as usize)];
            a[j][i] += &p;
        }
    }
    for x in &mut a[k - 1][..k] {
        *x = Q::one();
    }
    a[k - 1][k] = Q::one();
    for col in 0..k {
        let piv = (col..k).find(|&r| !a[r][col].is_zero()).expect("stationary system is nonsingular");
        a.swap(col, piv);
        let inv = Q::one() / &a[col][col];
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    let mut num = Q::zero();
    for (i, &v) in class.iter().enumerate() {
        let inc: i64 = m.transitions[v].iter().map(|&(_, d)| d).sum();
        num += &a[i][k] * Q::from_integer(inc.into());
    }
    num * &p / Q::from_integer(m.denominator.into())
}
