//! Exact rational helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// `n/d` as an exact rational. Panics if `d` is zero.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn recip(n: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(n))
}

/// Largest integer not above `r`, if it fits in a `u64`.
pub fn floor_u64(r: &Rational) -> Option<u64> {
    if r.is_negative() {
        return None;
    }
    r.floor().to_integer().to_u64()
}

/// Smallest integer not below `r`, if it fits in a `u64`.
pub fn ceil_u64(r: &Rational) -> Option<u64> {
    if r.is_negative() {
        return None;
    }
    r.ceil().to_integer().to_u64()
}

pub fn is_positive(r: &Rational) -> bool {
    r > &Rational::zero()
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// `r·k`.
pub fn times(r: &Rational, k: u64) -> Rational {
    r * Rational::from_integer(BigInt::from(k))
}

pub fn max_of<'a, I: IntoIterator<Item = &'a Rational>>(it: I) -> Option<Rational> {
    it.into_iter().max().cloned()
}
