//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if is_integer(x) {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Generalized binomial coefficient `x (x-1) ... (x-j+1) / j!`.
pub fn binom(x: &Q, j: u64) -> Q {
    let mut acc = Q::one();
    for t in 0..j {
        acc *= x - qi(t as i64);
        acc /= qi(t as i64 + 1);
    }
    acc
}

pub fn binom_int(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let mut acc: i128 = 1;
    for t in 0..k {
        acc = acc * (n - t) as i128 / (t + 1) as i128;
    }
    acc as i64
}

/// Falling factorial `p (p-1) ... (p-k+1)`.
pub fn falling(p: i64, k: i64) -> i64 {
    (0..k).map(|t| p - t).product()
}

pub fn sign(j: u64) -> Q {
    if j.is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

pub fn lcm_all<I: IntoIterator<Item = i64>>(it: I) -> i64 {
    it.into_iter().fold(1i64, |a, b| a.lcm(&b.abs().max(1)))
}

/// Floor of a rational as i64.
pub fn floor_i64(x: &Q) -> i64 {
    x.floor().to_integer().to_i64().expect("floor fits in i64")
}

pub fn ceil_i64(x: &Q) -> i64 {
    x.ceil().to_integer().to_i64().expect("ceil fits in i64")
}

pub fn frac(x: &Q) -> Q {
    x - x.floor()
}

pub fn is_nonneg(x: &Q) -> bool {
    !x.is_negative()
}
