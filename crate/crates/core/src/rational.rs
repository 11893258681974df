//! Exact rational scalars and small formatting/serialization helpers.
//!
//! Every coordinate, series coefficient, and Möbius-weighted sum in this crate
//! is a [`Rat`]: an arbitrary-precision rational kept in lowest terms with a
//! positive denominator (both maintained by `num-rational`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

pub type Rat = num_rational::BigRational;

/// Rational from machine integers, reduced on construction.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `num/den` with `den` omitted for integers, the one format used everywhere.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A rational as a JSON `[num, den]` pair.  Values outside the exact i64
/// range fall back to decimal strings so nothing is silently rounded.
pub fn rat_to_json(r: &Rat) -> serde_json::Value {
    serde_json::json!([int_to_json(r.numer()), int_to_json(r.denom())])
}

pub fn int_to_json(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::json!(v),
        None => serde_json::json!(n.to_string()),
    }
}

/// Least common multiple of the coordinate denominators of `point`.
pub fn point_denominator(point: &[Rat]) -> BigInt {
    point
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// Floor of a rational times t, i.e. the largest integer <= r * t.
pub fn floor_times(r: &Rat, t: i64) -> i64 {
    let v = r * rat_int(t);
    v.floor().numer().to_i64().expect("coordinate bound overflow")
}

/// Ceiling of a rational times t.
pub fn ceil_times(r: &Rat, t: i64) -> i64 {
    let v = r * rat_int(t);
    v.ceil().numer().to_i64().expect("coordinate bound overflow")
}

/// Clears denominators of `(normal, offset)`, returning integer data with the
/// same solution set and sign.
pub fn clear_denominators(normal: &[Rat], offset: &Rat) -> (Vec<i64>, i64) {
    let mut l = offset.denom().clone();
    for c in normal {
        l = l.lcm(c.denom());
    }
    let to_i64 = |r: &Rat| -> i64 {
        let v = r * Rat::from_integer(l.clone());
        debug_assert!(v.denom().is_one());
        v.numer().to_i64().expect("constraint coefficient overflow")
    };
    (normal.iter().map(to_i64).collect(), to_i64(offset))
}

/// True if the rational is a nonnegative integer multiple of 1.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn abs_int(r: &Rat) -> Option<BigInt> {
    if r.denom().is_one() {
        Some(r.numer().abs())
    } else {
        None
    }
}
