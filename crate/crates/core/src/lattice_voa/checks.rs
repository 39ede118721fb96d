//! Exact checks of the graded vertex algebra axioms.

use num_traits::Zero;

use super::modes::LatticeVoa;
use super::state::State;
use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::root_data::Weight;
use crate::rational::{binom, floor_i64, frac, is_integer, qi, sign, Q};

/// Parity class of a homogeneous state (`None` for the zero state).
pub fn parity(voa: &LatticeVoa, s: &State) -> Result<Option<usize>> {
    if s.is_zero() {
        return Ok(None);
    }
    s.gamma_class(voa.rs())
        .map(Some)
        .ok_or_else(|| Error::Parity("state is not homogeneous".into()))
}

/// Whether `n` lies in `Delta(p(a), p(b))`, computed from actual lattice weights.
fn in_delta(voa: &LatticeVoa, a: &State, b: &State, n: &Q) -> bool {
    match (a.weights().first(), b.weights().first()) {
        (Some(x), Some(y)) => is_integer(&(n + voa.rs().inner(x, y))),
        _ => true,
    }
}

fn require_delta(voa: &LatticeVoa, a: &State, b: &State, n: &Q, what: &str) -> Result<()> {
    if in_delta(voa, a, b, n) {
        Ok(())
    } else {
        Err(Error::Parity(format!("{what} = {n} is not parity-admissible")))
    }
}

/// Largest number of extra terms `j` for which `x_(base + j) y` can be nonzero.
fn span(voa: &LatticeVoa, x: &State, y: &State, base: &Q) -> Option<u64> {
    let top = voa.max_mode(x, y)?;
    let d = top - base;
    if d < Q::zero() {
        None
    } else {
        Some(floor_i64(&d) as u64)
    }
}

/// Splits a state by lattice weight.
fn by_weight(s: &State) -> Vec<(Weight, State)> {
    let mut out: Vec<(Weight, State)> = Vec::new();
    for (m, c) in s.terms() {
        match out.last_mut() {
            Some((w, part)) if *w == m.lattice => part.add_term(m.clone(), c.clone()),
            _ => out.push((m.lattice.clone(), State::monomial(m.clone(), c.clone()))),
        }
    }
    out
}

/// `sum` over weight components of `phase(wa, wb) * f(a_part, b_part)`, where the
/// phase is `e^{n pi i}` times the braiding of the two lattice weights.
fn braided<F: Fn(&State, &State) -> State>(voa: &LatticeVoa, a: &State, b: &State, n: &Q, f: F) -> State {
    let turn = CycScalar::exp_i_pi(n);
    let mut out = State::zero();
    for (wa, pa) in by_weight(a) {
        for (wb, pb) in by_weight(b) {
            let phase = &turn * &voa.rs().braiding(&wa, &wb);
            out.add_scaled(&f(&pa, &pb), &phase);
        }
    }
    out
}

/// Both sides of the Borcherds identity
///
/// ```text
/// sum_j C(m,j) (a_(n+j) b)_(m+k-j) c
///   = sum_j (-1)^j C(n,j) [ a_(n+m-j) b_(k+j) c - e^{n pi i} nu b_(n+k-j) a_(m+j) c ]
/// ```
pub fn borcherds_sides(voa: &LatticeVoa, a: &State, b: &State, c: &State, n: &Q, m: &Q, k: &Q) -> Result<(State, State)> {
    for s in [a, b, c] {
        parity(voa, s)?;
    }
    require_delta(voa, a, b, n, "n")?;
    require_delta(voa, a, c, m, "m")?;
    require_delta(voa, b, c, k, "k")?;
    let mut lhs = State::zero();
    if let Some(top) = span(voa, a, b, n) {
        for j in 0..=top {
            let ab = voa.vertex_mode(a, &(n + qi(j as i64)), b);
            if ab.is_zero() {
                continue;
            }
            let term = voa.vertex_mode(&ab, &(m + k - qi(j as i64)), c);
            lhs.add_scaled(&term, &CycScalar::from_q(binom(m, j)));
        }
    }
    let mut rhs = State::zero();
    if let Some(top) = span(voa, b, c, k) {
        for j in 0..=top {
            let bc = voa.vertex_mode(b, &(k + qi(j as i64)), c);
            if bc.is_zero() {
                continue;
            }
            let term = voa.vertex_mode(a, &(n + m - qi(j as i64)), &bc);
            rhs.add_scaled(&term, &CycScalar::from_q(sign(j) * binom(n, j)));
        }
    }
    let swapped = braided(voa, a, b, n, |a, b| {
        let mut acc = State::zero();
        if let Some(top) = span(voa, a, c, m) {
            for j in 0..=top {
                let ac = voa.vertex_mode(a, &(m + qi(j as i64)), c);
                if ac.is_zero() {
                    continue;
                }
                let term = voa.vertex_mode(b, &(n + k - qi(j as i64)), &ac);
                acc.add_scaled(&term, &CycScalar::from_q(sign(j) * binom(n, j)));
            }
        }
        acc
    });
    rhs = rhs.minus(&swapped);
    Ok((lhs, rhs))
}

/// Exact check of the Borcherds identity at one index triple.
pub fn check_borcherds(voa: &LatticeVoa, a: &State, b: &State, c: &State, n: &Q, m: &Q, k: &Q) -> Result<bool> {
    let (l, r) = borcherds_sides(voa, a, b, c, n, m, k)?;
    Ok(l == r)
}

/// `([a_(m), b_(k)] c, sum_j C(m,j) (a_(j) b)_(m+k-j) c)` for `a` of parity 0.
pub fn commutator_formula(voa: &LatticeVoa, a: &State, m: i64, b: &State, k: &Q, c: &State) -> Result<(State, State)> {
    if let Some(g) = parity(voa, a)? {
        if g != 0 {
            return Err(Error::Parity("commutator formula needs a of parity 0".into()));
        }
    }
    let m = qi(m);
    let (lhs, rhs) = borcherds_sides(voa, a, b, c, &Q::zero(), &m, k)?;
    let ab_ba = voa
        .vertex_mode(a, &m, &voa.vertex_mode(b, k, c))
        .minus(&voa.vertex_mode(b, k, &voa.vertex_mode(a, &m, c)));
    debug_assert!(parity(voa, b).is_err() || ab_ba == rhs);
    Ok((ab_ba, lhs))
}

/// Smallest admissible `n` with `a_(n+j) b = 0` for all `j >= 0`.
pub fn locality_order(voa: &LatticeVoa, a: &State, b: &State) -> Result<Option<Q>> {
    parity(voa, a)?;
    parity(voa, b)?;
    let (Some(wa), Some(wb)) = (a.weights().first().cloned(), b.weights().first().cloned()) else {
        return Ok(None);
    };
    let Some(top) = voa.max_mode(a, b) else { return Ok(None) };
    let offset = frac(&-voa.rs().inner(&wa, &wb));
    let mut k = &offset + qi(floor_i64(&(&top - &offset)));
    while k >= -&top - qi(1) {
        if !voa.vertex_mode(a, &k, b).is_zero() {
            return Ok(Some(k + qi(1)));
        }
        k -= qi(1);
    }
    Ok(Some(k + qi(1)))
}

/// Locality of `Y(a, z)` and `Y(b, w)` at order `n`.
///
/// The hypothesis `a_(n+j) b = 0` for `j >= 0` is checked first. Then every
/// coefficient `z^{-p-1} w^{-q-1}` of
/// `i_{z,w}(z-w)^n Y(a,z)Y(b,w) c - nu e^{n pi i} i_{w,z}(z-w)^n Y(b,w)Y(a,z) c`
/// is compared for each test state `c`, over all `(p, q)` whose intermediate
/// and final conformal weights stay within `[0, cutoff]`.
pub fn check_locality(voa: &LatticeVoa, a: &State, b: &State, n: &Q, tests: &[State], cutoff: &Q) -> Result<bool> {
    parity(voa, a)?;
    parity(voa, b)?;
    require_delta(voa, a, b, n, "n")?;
    if let Some(top) = span(voa, a, b, n) {
        for j in 0..=top {
            if !voa.vertex_mode(a, &(n + qi(j as i64)), b).is_zero() {
                return Ok(false);
            }
        }
    }
    let rs = voa.rs();
    let (Some(ca), Some(cb)) = (a.max_conformal_weight(rs), b.max_conformal_weight(rs)) else {
        return Ok(true);
    };
    for c in tests {
        parity(voa, c)?;
        let Some(cc) = c.max_conformal_weight(rs) else { continue };
        let (Some(wa), Some(wb), Some(wc)) = (a.weights().first().cloned(), b.weights().first().cloned(), c.weights().first().cloned()) else {
            continue;
        };
        // mode offsets: a_(p) acts with p in -(lambda_a, .) + Z
        let pa = frac(&-rs.inner(&wa, &wc));
        let pb = frac(&-rs.inner(&wb, &wc));
        // b_(q) c has weight cb + cc - q - 1 in [0, cutoff]
        let q_hi = floor_i64(&(&cb + &cc - qi(1) - &pb));
        let q_lo = q_hi - floor_i64(cutoff) - 1;
        let p_hi = floor_i64(&(&ca + &cc - qi(1) - &pa));
        let p_lo = p_hi - floor_i64(cutoff) - 1;
        for qq in q_lo..=q_hi {
            let q = &pb + qi(qq);
            for pp in p_lo..=p_hi {
                let p = &pa + qi(pp);
                let out_cw = &ca + &cb + &cc - &p - &q - n - qi(2);
                if out_cw < Q::zero() || &out_cw > cutoff {
                    continue;
                }
                let left = locality_side(voa, a, b, c, n, &p, &q);
                let right = braided(voa, a, b, n, |a, b| locality_side(voa, b, a, c, n, &q, &p));
                if left != right {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `sum_j (-1)^j C(n,j) x_(p+n-j) y_(q+j) c`.
///
/// With `(x, y) = (a, b)` this is the `z^{-p-1} w^{-q-1}` coefficient of
/// `i_{z,w}(z-w)^n Y(a,z)Y(b,w) c`; with `(x, y, p, q) = (b, a, q, p)` it is the
/// same coefficient of `e^{-n pi i} i_{w,z}(z-w)^n Y(b,w)Y(a,z) c`.
fn locality_side(voa: &LatticeVoa, x: &State, y: &State, c: &State, n: &Q, p: &Q, q: &Q) -> State {
    let mut out = State::zero();
    let Some(top) = span(voa, y, c, q) else { return out };
    for j in 0..=top {
        let yc = voa.vertex_mode(y, &(q + qi(j as i64)), c);
        if yc.is_zero() {
            continue;
        }
        let term = voa.vertex_mode(x, &(p + n - qi(j as i64)), &yc);
        out.add_scaled(&term, &CycScalar::from_q(sign(j) * binom(n, j)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::root_data::{RootSystem, Weight};

    fn voa(name: &str) -> LatticeVoa {
        LatticeVoa::new(RootSystem::new(name).unwrap())
    }

    #[test]
    fn borcherds_examples() {
        let v = voa("A1");
        let e = v.exp(&Weight(vec![1]));
        let vac = v.vacuum();
        assert!(check_borcherds(&v, &e, &vac, &vac, &qi(0), &qi(0), &qi(0)).unwrap());
        let h = q(-1, 2);
        assert!(check_borcherds(&v, &e, &e, &vac, &h, &qi(-1), &qi(-1)).unwrap());
        assert!(check_borcherds(&v, &e, &e, &vac, &q(-3, 2), &qi(-1), &qi(-1)).unwrap());
        assert!(check_borcherds(&v, &e, &e, &vac, &h, &h, &h).is_err());
        for (n, m, k) in [(-1, -1, -1), (-2, 0, -1), (0, -2, -2)] {
            let (n, m, k) = (&h + qi(n), &h + qi(m), &h + qi(k));
            let (l, r) = borcherds_sides(&v, &e, &e, &e.plus(&e), &n, &m, &k).unwrap();
            assert_eq!(l, r, "n={n} m={m} k={k}");
        }
        let v = voa("A2");
        let (a, b) = (v.exp(&Weight(vec![1, 0])), v.exp(&Weight(vec![0, 1])));
        let nn = -v.rs().inner(&Weight(vec![1, 0]), &Weight(vec![0, 1]));
        let mm = -v.rs().inner(&Weight(vec![1, 0]), &Weight(vec![1, 0]));
        for (i, j, l) in [(-1, -1, -1), (0, -1, 0), (-2, 0, -1), (-1, -2, 0)] {
            let (n, m, k) = (&nn + qi(i), &mm + qi(j), &nn + qi(l));
            assert!(check_borcherds(&v, &a, &b, &a, &n, &m, &k).unwrap(), "{n} {m} {k}");
        }
        assert!(check_borcherds(&v, &a, &b, &a, &qi(0), &qi(0), &qi(0)).is_err());
    }

    #[test]
    fn commutator_examples() {
        let v = voa("A1");
        let alpha = v.rs().alpha(1);
        let a = v.heis_state(&alpha, 1);
        let e = v.exp(&Weight(vec![1]));
        let (l, r) = commutator_formula(&v, &a, 1, &e, &q(-3, 2), &e).unwrap();
        assert_eq!(l, r);
        let (l, r) = commutator_formula(&v, &a, 1, &a, &qi(-1), &v.vacuum()).unwrap();
        assert_eq!(l, r);
        assert!(!l.is_zero());
        let (l, r) = commutator_formula(&v, &v.vacuum(), 0, &e, &q(-1, 2), &e).unwrap();
        assert!(l.is_zero() && r.is_zero());
        assert!(commutator_formula(&v, &e, 0, &e, &q(-1, 2), &e).is_err());
    }

    #[test]
    fn locality_examples() {
        let v = voa("A1");
        let e = v.exp(&Weight(vec![1]));
        let f = v.exp(&Weight(vec![-1]));
        let tests = vec![v.vacuum(), e.clone(), f.clone(), v.heis_state(&v.rs().alpha(1), 1)];
        assert!(check_locality(&v, &v.vacuum(), &e, &qi(0), &tests, &qi(3)).unwrap());
        assert!(check_locality(&v, &e, &e, &q(1, 2), &tests, &qi(3)).unwrap());
        assert!(check_locality(&v, &e, &e, &q(-1, 2), &tests, &qi(3)).unwrap());
        assert!(check_locality(&v, &e, &f, &q(1, 2), &tests, &qi(3)).unwrap());
        // order too small for the hypothesis
        assert!(!check_locality(&v, &e, &f, &q(-1, 2), &tests, &qi(3)).unwrap());
        let v = voa("A2");
        let (a, b) = (v.exp(&Weight(vec![1, 0])), v.exp(&Weight(vec![0, 1])));
        let tests = vec![v.vacuum(), a.clone(), b.clone()];
        assert!(check_locality(&v, &a, &b, &q(-1, 3), &tests, &qi(3)).unwrap());
        assert!(check_locality(&v, &a, &b, &q(2, 3), &tests, &qi(3)).unwrap());
        assert!(check_locality(&v, &a, &b, &q(1, 3), &tests, &qi(3)).is_err());
        assert_eq!(locality_order(&v, &a, &b).unwrap(), Some(q(-1, 3)));
        let v = voa("A1");
        assert_eq!(locality_order(&v, &e, &e).unwrap(), Some(q(-1, 2)));
        assert_eq!(locality_order(&v, &e, &f).unwrap(), Some(q(1, 2)));
        assert_eq!(locality_order(&v, &e, &State::zero()).unwrap(), None);
    }
}
