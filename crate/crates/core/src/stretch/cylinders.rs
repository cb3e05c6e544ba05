//! Exact drift from cancellation against the image of the remaining walk.
//!
//! Under the stationary walk, `λ = E|σ(y₁)| - 2 E c`, where `c` is the weight
//! of `σ(y₁)` cancelled by the image ray of `y₂ y₃ ..`. Conditioned on `y₁`,
//! the ray is decided on cylinders: once the part of `σ(u)` beyond the
//! cancellation bound settles its common prefix with `σ(y₁)⁻¹`, every ray
//! through `u` cancels the same amount.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{DriftMethod, DriftResult, Substitution};
use crate::rational::Q;
use crate::words::push_reduced;
use crate::{Error, Result};

pub const DEFAULT_CYLINDER_CAP: usize = 20_000_000;

struct Node {
    image: Vec<u32>,
    last: u32,
    depth: usize,
}

pub fn cylinder_generic_stretch(s: &Substitution, max_nodes: usize) -> Result<DriftResult> {
    let letters = 2 * s.rank as u32;
    let q = BigInt::from(letters - 1);
    let bound = s.cancellation_bound();
    let mut nodes = 0usize;
    let mut total = Q::zero();
    for x in 0..letters {
        let target: Vec<u32> = s.images[x as usize].iter().rev().map(|t| t ^ 1).collect();
        let mut prefix_weight = Vec::with_capacity(target.len() + 1);
        prefix_weight.push(0i64);
        for &t in &target {
            prefix_weight.push(prefix_weight.last().unwrap() + s.weights[t as usize]);
        }
        // decided cancelled weight summed per cylinder depth
        let mut sums: Vec<i128> = Vec::new();
        let mut stack: Vec<Node> = (0..letters)
            .filter(|&z| z != x ^ 1)
            .map(|z| Node { image: s.images[z as usize].clone(), last: z, depth: 1 })
            .collect();
        while let Some(node) = stack.pop() {
            nodes += 1;
            if nodes > max_nodes {
                return Err(Error::CapExceeded { what: "drift cylinders", cap: max_nodes });
            }
            let img = &node.image;
            let mut stable = img.len();
            let mut tail = 0;
            while stable > 0 && tail + s.weights[img[stable - 1] as usize] <= bound {
                tail += s.weights[img[stable - 1] as usize];
                stable -= 1;
            }
            let a = img[..stable].iter().zip(&target).take_while(|(u, v)| u == v).count();
            if a < stable || a == target.len() {
                if sums.len() <= node.depth {
                    sums.resize(node.depth + 1, 0);
                }
                sums[node.depth] += prefix_weight[a] as i128;
                continue;
            }
            for z in 0..letters {
                if z == node.last ^ 1 {
                    continue;
                }
                let mut image = node.image.clone();
                for &t in &s.images[z as usize] {
                    push_reduced(&mut image, t);
                }
                stack.push(Node { image, last: z, depth: node.depth + 1 });
            }
        }
        let mut expected = Q::zero();
        let mut scale = BigInt::one();
        for v in sums {
            expected += Q::new(BigInt::from(v), scale.clone());
            scale *= &q;
        }
        total += Q::from_integer(BigInt::from(s.image_weight(x as usize))) - expected * Q::from_integer(BigInt::from(2));
    }
    let value = total / Q::from_integer(BigInt::from(letters as i64 * s.denominator));
    let method = DriftMethod::Cylinders { nodes, bound: Q::new(BigInt::from(bound), BigInt::from(s.denominator)) };
    Ok(DriftResult { value, method })
}
