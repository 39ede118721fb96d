//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! An element is a polynomial in `zeta_n` of degree `< phi(n)`, reduced modulo
//! the `n`-th cyclotomic polynomial. Elements of different orders are combined
//! by lifting both to the lcm order. Rationals are stored with order 1.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::{fmt_q, parse_q, qi, Q};
use crate::error::{Error, Result};

fn cyclo_cache() -> &'static Mutex<HashMap<u32, Vec<BigInt>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients (low degree first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    if let Some(p) = cyclo_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic_poly(d);
            num = int_exact_div(&num, &den);
        }
    }
    cyclo_cache().lock().unwrap().insert(n, num.clone());
    num
}

fn int_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quo = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (t, dc) in den.iter().enumerate() {
            rem[k + t] -= &c * dc;
        }
        quo[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quo
}

pub fn euler_phi(n: u32) -> usize {
    cyclotomic_poly(n).len() - 1
}

fn trim(v: &mut Vec<Q>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn reduce_mod(mut v: Vec<Q>, modulus: &[BigInt]) -> Vec<Q> {
    let d = modulus.len() - 1;
    while v.len() > d {
        let top = v.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let k = v.len() - d;
        for t in 0..d {
            v[k + t] -= &top * Q::from_integer(modulus[t].clone());
        }
    }
    trim(&mut v);
    v
}

/// Element of `Q(zeta_order)`.
#[derive(Clone, Debug)]
pub struct CycScalar {
    order: u32,
    coeffs: Vec<Q>,
}

impl CycScalar {
    pub fn zero() -> Self {
        CycScalar { order: 1, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_q(Q::one())
    }

    pub fn from_q(x: Q) -> Self {
        let coeffs = if x.is_zero() { Vec::new() } else { vec![x] };
        CycScalar { order: 1, coeffs }
    }

    pub fn from_i64(x: i64) -> Self {
        Self::from_q(qi(x))
    }

    /// Builds `sum coeffs[k] zeta_order^k`, reducing as needed.
    pub fn from_coeffs(order: u32, coeffs: Vec<Q>) -> Self {
        assert!(order >= 1);
        let modulus = cyclotomic_poly(order);
        let coeffs = reduce_mod(coeffs, &modulus);
        Self::normalized(order, coeffs)
    }

    fn normalized(order: u32, coeffs: Vec<Q>) -> Self {
        if coeffs.len() <= 1 {
            CycScalar { order: 1, coeffs }
        } else {
            CycScalar { order, coeffs }
        }
    }

    /// `zeta_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let k = k.rem_euclid(n as i64) as usize;
        let mut c = vec![Q::zero(); k + 1];
        c[k] = Q::one();
        Self::from_coeffs(n, c)
    }

    /// `exp(i pi x)` for rational `x`.
    pub fn exp_i_pi(x: &Q) -> Self {
        // exp(i pi a/b) = zeta_{2b}^a
        let b = x.denom().clone();
        let a = x.numer().clone();
        let n: u32 = (b * 2u32).try_into().expect("cyclotomic order fits in u32");
        let k = a.mod_floor(&BigInt::from(n));
        let k: i64 = k.try_into().unwrap();
        Self::root_of_unity(n, k)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn as_rational(&self) -> Option<Q> {
        match self.coeffs.len() {
            0 => Some(Q::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    fn rational_ref(&self) -> Option<&Q> {
        static ZERO: OnceLock<Q> = OnceLock::new();
        match self.coeffs.as_slice() {
            [] => Some(ZERO.get_or_init(Q::zero)),
            [x] => Some(x),
            _ => None,
        }
    }

    fn lift(&self, to: u32) -> Vec<Q> {
        if self.order == to || self.coeffs.len() <= 1 {
            return self.coeffs.clone();
        }
        debug_assert_eq!(to % self.order, 0);
        let step = (to / self.order) as usize;
        let mut v = vec![Q::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[k * step] = c.clone();
        }
        reduce_mod(v, &cyclotomic_poly(to))
    }

    /// Coordinates in the power basis of `Q(zeta_order)`, padded to `phi(order)`.
    /// `None` if this scalar does not live in that field.
    pub fn coords(&self, order: u32) -> Option<Vec<Q>> {
        if self.coeffs.len() > 1 && !order.is_multiple_of(self.order) {
            return None;
        }
        let mut v = self.lift(order);
        v.resize(euler_phi(order).max(1), Q::zero());
        Some(v)
    }

    fn common_order(&self, other: &Self) -> u32 {
        let a = if self.coeffs.len() <= 1 { 1 } else { self.order };
        let b = if other.coeffs.len() <= 1 { 1 } else { other.order };
        a.lcm(&b)
    }

    pub fn scale(&self, x: &Q) -> Self {
        if x.is_zero() {
            return Self::zero();
        }
        CycScalar { order: self.order, coeffs: self.coeffs.iter().map(|c| c * x).collect() }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(x) = self.as_rational() {
            return Some(Self::from_q(x.recip()));
        }
        let modulus: Vec<Q> = cyclotomic_poly(self.order).into_iter().map(Q::from_integer).collect();
        let inv = poly_inverse_mod(&self.coeffs, &modulus)?;
        Some(Self::from_coeffs(self.order, inv))
    }

    /// Complex conjugate: `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return self.clone();
        }
        let n = self.order as usize;
        let mut v = vec![Q::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[(n - k) % n] += c;
        }
        Self::from_coeffs(self.order, v)
    }

    /// Serialized as `order` followed by coefficient strings.
    pub fn to_strings(&self) -> Vec<String> {
        if self.coeffs.is_empty() {
            return vec!["0".into()];
        }
        self.coeffs.iter().map(fmt_q).collect()
    }

    /// Parses coordinate strings relative to `zeta_order`.
    pub fn from_strings(order: u32, s: &[String]) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Parse("empty cyclotomic coordinate list".into()));
        }
        let coeffs = s.iter().map(|x| parse_q(x)).collect::<Result<Vec<_>>>()?;
        if coeffs.len() > 1 && coeffs.len() > euler_phi(order) {
            return Err(Error::Parse(format!("too many coordinates for order {order}")));
        }
        Ok(Self::from_coeffs(order, coeffs))
    }
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

fn poly_divmod(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().unwrap().clone();
    let mut quo = vec![Q::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let k = rem.len() - b.len();
        let c = rem.last().unwrap() / &lead;
        for (t, bc) in b.iter().enumerate() {
            rem[k + t] -= &c * bc;
        }
        quo[k] = c;
        rem.pop();
        trim(&mut rem);
    }
    (quo, rem)
}

fn poly_inverse_mod(a: &[Q], m: &[Q]) -> Option<Vec<Q>> {
    // Extended Euclid: track s with s*a = r (mod m).
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    let (mut s0, mut s1): (Vec<Q>, Vec<Q>) = (Vec::new(), vec![Q::one()]);
    trim(&mut r1);
    while !r1.is_empty() {
        let (quo, rem) = poly_divmod(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&quo, &s1));
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    let mut out: Vec<Q> = s0.into_iter().map(|x| x * &c).collect();
    trim(&mut out);
    let (_, rem) = poly_divmod(&out, m);
    Some(rem)
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        let n = self.common_order(other);
        self.lift(n) == other.lift(n)
    }
}
impl Eq for CycScalar {}

impl<'a> Add<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        if let (Some(a), Some(b)) = (self.rational_ref(), rhs.rational_ref()) {
            return CycScalar::from_q(a + b);
        }
        let n = self.common_order(rhs);
        let (a, b) = (self.lift(n), rhs.lift(n));
        let mut v = vec![Q::zero(); a.len().max(b.len())];
        for (i, x) in a.into_iter().enumerate() {
            v[i] += x;
        }
        for (i, x) in b.into_iter().enumerate() {
            v[i] += x;
        }
        trim(&mut v);
        CycScalar::normalized(n, v)
    }
}

impl AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, rhs: &CycScalar) {
        match (self.coeffs.as_mut_slice(), rhs.coeffs.as_slice()) {
            (_, []) => {}
            ([a], [b]) => {
                *a += b;
                if a.is_zero() {
                    self.coeffs.clear();
                }
            }
            _ => *self = &*self + rhs,
        }
    }
}

impl<'a> Sub<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        match (self.coeffs.as_slice(), rhs.coeffs.as_slice()) {
            ([], _) | (_, []) => return CycScalar::zero(),
            ([a], [b]) => return CycScalar { order: 1, coeffs: vec![a * b] },
            _ => {}
        }
        if let Some(x) = rhs.as_rational() {
            return self.scale(&x);
        }
        if let Some(x) = self.as_rational() {
            return rhs.scale(&x);
        }
        let n = self.common_order(rhs);
        let prod = poly_mul(&self.lift(n), &rhs.lift(n));
        CycScalar::from_coeffs(n, prod)
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: CycScalar) -> CycScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

impl From<Q> for CycScalar {
    fn from(x: Q) -> Self {
        CycScalar::from_q(x)
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(x) = self.as_rational() {
            return write!(f, "{}", fmt_q(&x));
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({})z{}^{}", fmt_q(c), self.order, k))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn cyclotomic_polys() {
        let p = |n| cyclotomic_poly(n).iter().map(|c| i64::try_from(c).unwrap()).collect::<Vec<_>>();
        assert_eq!(p(1), vec![-1, 1]);
        assert_eq!(p(4), vec![1, 0, 1]);
        assert_eq!(p(6), vec![1, -1, 1]);
        assert_eq!(p(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn roots_of_unity_close_up() {
        for n in [2u32, 3, 4, 6, 8, 12] {
            let z = CycScalar::root_of_unity(n, 1);
            let mut acc = CycScalar::one();
            for _ in 0..n {
                acc = &acc * &z;
            }
            assert!(acc.is_one(), "order {n}");
        }
        // i^2 = -1
        let i = CycScalar::exp_i_pi(&q(1, 2));
        assert_eq!(&i * &i, CycScalar::from_i64(-1));
        // exp(i pi) = -1 is rational
        assert_eq!(CycScalar::exp_i_pi(&q(1, 1)), CycScalar::from_i64(-1));
        assert_eq!(CycScalar::exp_i_pi(&q(2, 1)), CycScalar::one());
    }

    #[test]
    fn mixed_orders() {
        // zeta_8^2 == zeta_4
        let a = CycScalar::root_of_unity(8, 2);
        let b = CycScalar::root_of_unity(4, 1);
        assert_eq!(a, b);
        let s = &CycScalar::root_of_unity(3, 1) + &CycScalar::root_of_unity(4, 1);
        let back = &s - &CycScalar::root_of_unity(4, 1);
        assert_eq!(back, CycScalar::root_of_unity(3, 1));
        // 1 + w + w^2 = 0
        let w = CycScalar::root_of_unity(3, 1);
        let sum = &(&CycScalar::one() + &w) + &(&w * &w);
        assert!(sum.is_zero());
    }

    #[test]
    fn inverse_and_conjugate() {
        let x = &CycScalar::root_of_unity(12, 1) + &CycScalar::from_i64(2);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        let z = CycScalar::root_of_unity(6, 1);
        assert!((&z * &z.conj()).is_one());
        assert!(CycScalar::zero().inv().is_none());
    }
}
