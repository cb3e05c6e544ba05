//! Exact rationals and the few conversions the rest of the crate needs.

use alloc::string::{String, ToString};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary precision rational.
pub type Q = num_rational::BigRational;

pub fn q(numer: i64, denom: i64) -> Q {
    Q::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a finite decimal like `"0.25"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::InvalidInput(alloc::format!("not a rational: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let int: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let scale = num_traits::pow(BigInt::from(10u32), frac.len());
        let f: BigInt = frac.parse().map_err(|_| bad())?;
        let mag = int.abs() * &scale + f;
        let n = if neg { -mag } else { mag };
        return Ok(Q::new(n, scale));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Q::from_integer(n))
}

/// `"p/q"` in lowest terms, or `"p"` for integers.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        alloc::format!("{}/{}", x.numer(), x.denom())
    }
}

fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return libm::log(n.to_f64().unwrap_or(f64::INFINITY));
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap_or(f64::INFINITY);
    libm::log(top) + shift as f64 * core::f64::consts::LN_2
}

/// Natural log of a positive rational, accurate even when numerator and
/// denominator overflow `f64`.
pub fn ln_q(x: &Q) -> f64 {
    debug_assert!(x.is_positive());
    let (s1, n) = x.numer().clone().into_parts();
    let (_, d) = x.denom().clone().into_parts();
    debug_assert!(s1 == Sign::Plus);
    ln_biguint(&n) - ln_biguint(&d)
}

pub fn to_f64(x: &Q) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if let Some(f) = num_traits::ToPrimitive::to_f64(x).filter(|f| f.is_finite() && *f != 0.0) {
        return f;
    }
    let sign = if x.is_negative() { -1.0 } else { 1.0 };
    sign * libm::exp(ln_q(&x.abs()))
}

/// True if every prime factor of the reduced denominator of `x` divides `base`.
pub fn denominator_divides_power_of(x: &Q, base: u64) -> bool {
    let mut d = x.denom().abs();
    let b = BigInt::from(base);
    loop {
        if d.is_one() {
            return true;
        }
        let g = d.gcd(&b);
        if g.is_one() {
            return false;
        }
        while (&d % &g).is_zero() {
            d /= &g;
        }
    }
}
