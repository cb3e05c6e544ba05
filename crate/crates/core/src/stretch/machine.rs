//! The finite-state drift machine.

use alloc::vec::Vec;

use hashbrown::HashMap;

use super::Substitution;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct StateKey {
    /// last input letter index, `u32::MAX` before the first step
    last: u32,
    /// `suffix` is the whole reduced image so far
    complete: bool,
    suffix: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MachineOptions {
    pub max_window: usize,
    pub max_states: usize,
}

impl Default for MachineOptions {
    fn default() -> Self {
        MachineOptions { max_window: 1 << 16, max_states: 4_000_000 }
    }
}

/// Tracks the last input letter and the last `window` symbols of the
/// reduced image. Every transition has probability `1/(2N-1)` (`1/(2N)`
/// out of the start state) and carries an exact weight increment.
#[derive(Clone, Debug)]
pub struct DriftMachine {
    pub(crate) rank: usize,
    pub(crate) denominator: i64,
    window: usize,
    pub(crate) start: usize,
    /// `(target state, increment · denominator)`
    pub(crate) transitions: Vec<Vec<(u32, i64)>>,
}

impl DriftMachine {
    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

enum Attempt {
    Done(DriftMachine),
    Invalid,
}

fn step(s: &Substitution, key: &StateKey, x: usize, window: usize) -> Option<(StateKey, i64)> {
    let img = &s.images[x];
    let suf = &key.suffix;
    let c = suf.iter().rev().zip(img.iter()).take_while(|(a, b)| **a == **b ^ 1).count();
    if !key.complete && c == suf.len() {
        return None;
    }
    let cancelled: i64 = img[..c].iter().map(|&t| s.weights[t as usize]).sum();
    let inc = s.image_weight(x) - 2 * cancelled;
    let mut suffix = Vec::with_capacity(suf.len() - c + img.len() - c);
    suffix.extend_from_slice(&suf[..suf.len() - c]);
    suffix.extend_from_slice(&img[c..]);
    let mut complete = key.complete;
    if suffix.len() > window {
        suffix.drain(..suffix.len() - window);
        complete = false;
    }
    Some((StateKey { last: x as u32, complete, suffix }, inc))
}

fn attempt(s: &Substitution, window: usize, opts: &MachineOptions) -> Result<Attempt> {
    let letters = 2 * s.rank;
    let mut index: HashMap<StateKey, u32> = HashMap::new();
    let mut keys: Vec<StateKey> = Vec::new();
    let start = StateKey { last: u32::MAX, complete: true, suffix: Vec::new() };
    index.insert(start.clone(), 0);
    keys.push(start);
    let mut transitions: Vec<Vec<(u32, i64)>> = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let key = keys[i].clone();
        let mut out = Vec::with_capacity(letters);
        for x in 0..letters {
            if key.last != u32::MAX && x == (key.last as usize ^ 1) {
                continue;
            }
            let Some((next, inc)) = step(s, &key, x, window) else {
                return Ok(Attempt::Invalid);
            };
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = keys.len() as u32;
                    if keys.len() >= opts.max_states {
                        return Err(Error::CapExceeded { what: "drift machine states", cap: opts.max_states });
                    }
                    index.insert(next.clone(), id);
                    keys.push(next);
                    id
                }
            };
            out.push((id, inc));
        }
        transitions.push(out);
        i += 1;
    }
    Ok(Attempt::Done(DriftMachine { rank: s.rank, denominator: s.denominator, window, start: 0, transitions }))
}

/// Builds the machine, starting from a window of twice the largest
/// cancellation between consecutive letter images and growing it whenever
/// a transition would cancel the whole tracked suffix. Any window larger
/// than the bounded cancellation constant of the substitution is valid, so
/// growth is gentle: state counts are exponential in the window.
pub fn build_drift_machine(s: &Substitution, opts: &MachineOptions) -> Result<DriftMachine> {
    let letters = 2 * s.rank;
    let mut cmax = 0;
    for x in 0..letters {
        for y in 0..letters {
            if y != x ^ 1 {
                cmax = cmax.max(s.pair_cancellation(x, y));
            }
        }
    }
    let mut window = (2 * cmax).max(1);
    loop {
        if window > opts.max_window {
            return Err(Error::WindowExceeded { window: opts.max_window });
        }
        match attempt(s, window, opts)? {
            Attempt::Done(m) => return Ok(m),
            Attempt::Invalid => window += 1 + window / 8,
        }
    }
}
