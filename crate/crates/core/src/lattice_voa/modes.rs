//! Heisenberg action, translation and vertex-operator modes.
//!
//! For a Fock monomial `A = prod_k alpha_{i_k} t^{-n_k} (x) e^lambda` the field is
//! the normally ordered product
//!
//! ```text
//! Y(A, z) = [prod_k d^{(n_k-1)} alpha_{i_k}(z)]_- E^-(lambda, z) e^lambda z^lambda
//!           [prod_k d^{(n_k-1)} alpha_{i_k}(z)]_+ E^+(lambda, z)
//! ```
//!
//! where `[.]_-` collects the creation modes and `[.]_+` the modes `alpha(m)`,
//! `m >= 0`. A mode `A_(n) v` is a single coefficient of this series, so it
//! lives in one graded component and is computed by matching z-powers: the
//! annihilating half lowers the z-degree by some `d >= 0`, the creating half
//! must then supply exactly `-n - 1 - (lambda, mu) + d`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use super::state::{heis_creator, merge_creators, one_poly, poly_mul, Creators, FockMonomial, FockPoly, State};
use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::rational::{binom_int, is_integer, q, qi, to_i64, Q};
use crate::root_data::{RootSystem, Weight};

type CreationKey = (Creators, Weight, u32);

/// The `P/Q`-graded lattice vertex algebra of a simply-laced weight lattice.
#[derive(Debug)]
pub struct LatticeVoa {
    rs: RootSystem,
    schur: RwLock<HashMap<(Weight, u32), Arc<FockPoly>>>,
    creation: RwLock<HashMap<CreationKey, Arc<FockPoly>>>,
}

impl Clone for LatticeVoa {
    fn clone(&self) -> Self {
        LatticeVoa::new(self.rs.clone())
    }
}

/// Generators of the affine Lie algebra realized on the lattice vertex algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineGen {
    /// `e_alpha` for a root `alpha`.
    E(Weight),
    /// `f_alpha = e_{-alpha}` (up to the cocycle sign).
    F(Weight),
    /// `h_i = alpha_i^vee`, 1-based.
    H(usize),
}

impl LatticeVoa {
    pub fn new(rs: RootSystem) -> Self {
        LatticeVoa { rs, schur: RwLock::new(HashMap::new()), creation: RwLock::new(HashMap::new()) }
    }

    pub fn rs(&self) -> &RootSystem {
        &self.rs
    }

    pub fn vacuum(&self) -> State {
        State::vacuum(self.rs.rank())
    }

    pub fn exp(&self, w: &Weight) -> State {
        State::exp(w.clone())
    }

    /// `h t^{-n} (x) e^0`.
    pub fn heis_state(&self, h: &Weight, n: u32) -> State {
        self.vacuum().mul_creators(&heis_creator(&self.rs, h, n))
    }

    /// Action of `h t^k`.
    pub fn heis_act(&self, h: &Weight, k: i64, v: &State) -> State {
        if k < 0 {
            return v.mul_creators(&heis_creator(&self.rs, h, (-k) as u32));
        }
        let mut out = State::zero();
        for (m, c) in v.terms() {
            if k == 0 {
                out.add_term(m.clone(), c.scale(&self.rs.inner(h, &m.lattice)));
                continue;
            }
            for (idx, &(n, i)) in m.creators.iter().enumerate() {
                if n as i64 != k || h[i as usize] == 0 {
                    continue;
                }
                let mut cr = m.creators.clone();
                cr.remove(idx);
                out.add_term(FockMonomial { lattice: m.lattice.clone(), creators: cr }, c.scale(&qi(k * h[i as usize])));
            }
        }
        out
    }

    /// The derivation `T`.
    pub fn translation(&self, v: &State) -> State {
        let mut out = State::zero();
        for (m, c) in v.terms() {
            for (idx, &(n, i)) in m.creators.iter().enumerate() {
                let mut cr = m.creators.clone();
                cr[idx] = (n + 1, i);
                out.add_term(FockMonomial::new(cr, m.lattice.clone()), c.scale(&qi(n as i64)));
            }
            if !m.lattice.is_zero() {
                let single = State::monomial(m.clone(), c.clone());
                out.add_assign(&single.mul_creators(&heis_creator(&self.rs, &m.lattice, 1)));
            }
        }
        out
    }

    /// Coefficient of `z^f` in `exp(sum_{m>0} lambda t^{-m} z^m / m)`.
    fn schur_poly(&self, lambda: &Weight, f: u32) -> Arc<FockPoly> {
        if let Some(p) = self.schur.read().unwrap().get(&(lambda.clone(), f)) {
            return p.clone();
        }
        let p = if f == 0 {
            one_poly()
        } else {
            let mut acc = FockPoly::new();
            for m in 1..=f {
                let prev = self.schur_poly(lambda, f - m);
                for (k, c) in poly_mul(&heis_creator(&self.rs, lambda, m), &prev) {
                    *acc.entry(k).or_insert_with(Q::zero) += c;
                }
            }
            let inv = q(1, f as i64);
            acc.retain(|_, c| !c.is_zero());
            acc.values_mut().for_each(|c| *c *= &inv);
            acc
        };
        let p = Arc::new(p);
        self.schur.write().unwrap().insert((lambda.clone(), f), p.clone());
        p
    }

    /// Degree-`d` part of the creating half of `Y(A, z)` (a polynomial in creators).
    fn creation_poly(&self, creators: &[(u32, u16)], lattice: &Weight, d: u32) -> Arc<FockPoly> {
        let key = (creators.to_vec(), lattice.clone(), d);
        if let Some(p) = self.creation.read().unwrap().get(&key) {
            return p.clone();
        }
        let mut by_deg: Vec<FockPoly> = (0..=d).map(|f| (*self.schur_poly(lattice, f)).clone()).collect();
        for &(nk, ik) in creators {
            let mut next = vec![FockPoly::new(); d as usize + 1];
            for (deg, slot) in next.iter_mut().enumerate() {
                for e in 0..=deg {
                    let prev = &by_deg[deg - e];
                    if prev.is_empty() {
                        continue;
                    }
                    let mode = e as u32 + nk;
                    let coef = qi(binom_int(mode as i64 - 1, nk as i64 - 1));
                    for (cr, c) in prev {
                        let m = merge_creators(cr, &[(mode, ik)]);
                        *slot.entry(m).or_insert_with(Q::zero) += c * &coef;
                    }
                }
                slot.retain(|_, c| !c.is_zero());
            }
            by_deg = next;
        }
        let p = Arc::new(by_deg.pop().unwrap());
        self.creation.write().unwrap().insert(key, p.clone());
        p
    }

    /// `A_(n) v` for single monomials, rational coefficients.
    fn mono_mode(&self, a: &FockMonomial, n: &Q, v: &FockMonomial) -> Vec<(FockMonomial, Q)> {
        let lambda = &a.lattice;
        let mu = &v.lattice;
        let base = -n - qi(1) - self.rs.inner(lambda, mu);
        let Some(base) = to_i64(&base) else {
            return Vec::new();
        };
        // the annihilating half raises the degree by at most this much
        let reach = v.degree() as i64 + a.creators.iter().map(|c| c.0 as i64).sum::<i64>();
        if base + reach < 0 {
            return Vec::new();
        }
        let eps = self.rs.epsilon_sign(lambda, mu);
        let mut out: BTreeMap<Creators, Q> = BTreeMap::new();
        // each factor of the normally ordered product either creates or annihilates
        let k = a.creators.len();
        for mask in 0u64..(1u64 << k) {
            let (annih, create): (Vec<_>, Vec<_>) =
                (0..k).partition(|&b| mask >> b & 1 == 1);
            let annih: Vec<(u32, u16)> = annih.into_iter().map(|b| a.creators[b]).collect();
            let create: Vec<(u32, u16)> = create.into_iter().map(|b| a.creators[b]).collect();
            self.mono_mode_split(lambda, &annih, &create, base, v, &mut out);
        }
        let lattice = lambda + mu;
        out.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(cr, c)| (FockMonomial { lattice: lattice.clone(), creators: cr }, c * qi(eps)))
            .collect()
    }

    fn mono_mode_split(
        &self,
        lambda: &Weight,
        annih: &[(u32, u16)],
        create: &[(u32, u16)],
        base: i64,
        v: &FockMonomial,
        out: &mut BTreeMap<Creators, Q>,
    ) {
        let mu = &v.lattice;
        // annihilating half: E^+(lambda) then the nonnegative Heisenberg modes
        let mut ann: BTreeMap<(i64, Creators), Q> = BTreeMap::new();
        ann.insert((0, Vec::new()), Q::one());
        for &(m, i) in &v.creators {
            let li = lambda[i as usize];
            let mut next: BTreeMap<(i64, Creators), Q> = BTreeMap::new();
            for ((d, cr), c) in ann {
                if li != 0 {
                    *next.entry((d + m as i64, cr.clone())).or_insert_with(Q::zero) -= &c * qi(li);
                }
                let mut kept = cr;
                kept.push((m, i));
                *next.entry((d, kept)).or_insert_with(Q::zero) += c;
            }
            next.retain(|_, c| !c.is_zero());
            ann = next;
        }
        for &(nk, ik) in annih {
            let sgn = if (nk - 1) % 2 == 0 { 1 } else { -1 };
            let mut next: BTreeMap<(i64, Creators), Q> = BTreeMap::new();
            for ((d, cr), c) in &ann {
                let mui = mu[ik as usize];
                if mui != 0 {
                    *next.entry((d + nk as i64, cr.clone())).or_insert_with(Q::zero) += c * qi(sgn * mui);
                }
                let mut idx = 0;
                while idx < cr.len() {
                    let (m, j) = cr[idx];
                    let mut mult = 1;
                    while idx + mult < cr.len() && cr[idx + mult] == (m, j) {
                        mult += 1;
                    }
                    let pairing = self.rs.cartan()[ik as usize][j as usize];
                    if pairing != 0 {
                        let f = sgn * mult as i64 * m as i64 * pairing * binom_int((m + nk - 1) as i64, (nk - 1) as i64);
                        let mut rest = cr.clone();
                        rest.remove(idx);
                        *next.entry((d + (m + nk) as i64, rest)).or_insert_with(Q::zero) += c * qi(f);
                    }
                    idx += mult;
                }
            }
            next.retain(|_, c| !c.is_zero());
            ann = next;
        }
        for ((d, cr), c) in ann {
            let deg = base + d;
            if deg < 0 {
                continue;
            }
            let poly = self.creation_poly(create, lambda, deg as u32);
            for (pc, pk) in poly.iter() {
                let m = merge_creators(&cr, pc);
                *out.entry(m).or_insert_with(Q::zero) += &c * pk;
            }
        }
    }

    /// `A_(n) v` for arbitrary states.
    pub fn vertex_mode(&self, a: &State, n: &Q, v: &State) -> State {
        let mut out = State::zero();
        for (ma, ca) in a.terms() {
            for (mv, cv) in v.terms() {
                let k = ca * cv;
                for (m, c) in self.mono_mode(ma, n, mv) {
                    out.add_term(m, k.scale(&c));
                }
            }
        }
        out
    }

    /// `(1 (x) e^lambda)_(n) v`. Off-parity modes give 0.
    pub fn exp_mode(&self, lambda: &Weight, n: &Q, v: &State) -> State {
        self.vertex_mode(&self.exp(lambda), n, v)
    }

    /// Action of the affine generators `x t^m`.
    pub fn affine_act(&self, gen: &AffineGen, m: i64, v: &State) -> Result<State> {
        match gen {
            AffineGen::E(alpha) => {
                self.ensure_root(alpha)?;
                Ok(self.exp_mode(alpha, &qi(m), v))
            }
            AffineGen::F(alpha) => {
                self.ensure_root(alpha)?;
                let sign = self.rs.epsilon_sign(alpha, &-alpha);
                Ok(self.exp_mode(&-alpha, &qi(m), v).scale(&CycScalar::from_i64(sign)))
            }
            AffineGen::H(i) => {
                if *i == 0 || *i > self.rs.rank() {
                    return Err(Error::OutOfRange(format!("h_{i}")));
                }
                Ok(self.heis_act(&self.rs.alpha(*i), m, v))
            }
        }
    }

    fn ensure_root(&self, alpha: &Weight) -> Result<()> {
        self.rs.check_rank(alpha)?;
        if !self.rs.is_root(alpha) {
            return Err(Error::NotARoot(alpha.0.clone()));
        }
        Ok(())
    }

    /// The conformal vector `(1/2) sum_i alpha_i t^{-1} omega_i t^{-1}`.
    pub fn conformal_vector(&self) -> State {
        let r = self.rs.rank();
        let mut poly = FockPoly::new();
        for i in 1..=r {
            let ai = heis_creator(&self.rs, &self.rs.alpha(i), 1);
            let wi = heis_creator(&self.rs, &self.rs.omega(i), 1);
            for (k, c) in poly_mul(&ai, &wi) {
                *poly.entry(k).or_insert_with(Q::zero) += c * q(1, 2);
            }
        }
        poly.retain(|_, c| !c.is_zero());
        self.vacuum().mul_creators(&poly)
    }

    /// `omega_(1) v`.
    pub fn conformal_weight_op(&self, v: &State) -> State {
        self.vertex_mode(&self.conformal_vector(), &qi(1), v)
    }

    /// Upper bound for `n` with `a_(n) v != 0`.
    pub fn max_mode(&self, a: &State, v: &State) -> Option<Q> {
        let ca = a.max_conformal_weight(&self.rs)?;
        let cv = v.max_conformal_weight(&self.rs)?;
        Some(ca + cv - qi(1))
    }

    /// Whether `n` is parity-admissible for homogeneous `a` acting on `v`.
    pub fn admissible(&self, a: &State, n: &Q, v: &State) -> bool {
        let (Some(ma), Some(mv)) = (a.terms().next(), v.terms().next()) else {
            return true;
        };
        is_integer(&(n + self.rs.inner(&ma.0.lattice, &mv.0.lattice)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> LatticeVoa {
        LatticeVoa::new(RootSystem::new("A1").unwrap())
    }

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn heisenberg_examples() {
        let voa = a1();
        let alpha = voa.rs().alpha(1);
        let v = voa.heis_state(&alpha, 1);
        assert_eq!(voa.heis_act(&alpha, 1, &v), voa.vacuum().scale_q(&qi(2)));
        assert_eq!(voa.heis_act(&alpha, 0, &voa.exp(&w(&[1]))), voa.exp(&w(&[1])));
        assert_eq!(voa.heis_act(&w(&[1]), -1, &voa.vacuum()), voa.heis_state(&w(&[1]), 1));
    }

    #[test]
    fn translation_examples() {
        let voa = a1();
        assert!(voa.translation(&voa.vacuum()).is_zero());
        let om = w(&[1]);
        let expected = voa.exp(&om).mul_creators(&heis_creator(voa.rs(), &om, 1));
        assert_eq!(voa.translation(&voa.exp(&om)), expected);
        let h = voa.heis_state(&om, 1);
        assert_eq!(voa.translation(&h), voa.heis_state(&om, 2));
    }

    #[test]
    fn exp_mode_examples() {
        let voa = a1();
        let om = w(&[1]);
        assert_eq!(voa.exp_mode(&om, &qi(-1), &voa.vacuum()), voa.exp(&om));
        assert_eq!(voa.exp_mode(&om, &q(-3, 2), &voa.exp(&om)), voa.exp(&w(&[2])));
        assert_eq!(voa.exp_mode(&om, &q(-1, 2), &voa.exp(&w(&[-1]))), voa.vacuum());
        // off-parity
        assert!(voa.exp_mode(&om, &qi(-1), &voa.exp(&om)).is_zero());
    }

    #[test]
    fn vertex_mode_examples() {
        let voa = a1();
        let om = w(&[1]);
        let v = voa.exp(&om).plus(&voa.heis_state(&voa.rs().alpha(1), 2));
        assert_eq!(voa.vertex_mode(&voa.vacuum(), &qi(-1), &v), v);
        let a = voa.heis_state(&voa.rs().alpha(1), 1);
        assert_eq!(voa.vertex_mode(&a, &qi(1), &a), voa.vacuum().scale_q(&qi(2)));
        let expected = voa.exp(&om).mul_creators(&heis_creator(voa.rs(), &om, 1));
        assert_eq!(voa.vertex_mode(&voa.exp(&om), &qi(-2), &voa.vacuum()), expected);
    }

    #[test]
    fn conformal_weights() {
        let voa = a1();
        let om = w(&[1]);
        for s in [om.clone(), -&om] {
            assert_eq!(voa.conformal_weight_op(&voa.exp(&s)), voa.exp(&s).scale_q(&q(1, 4)));
        }
        assert!(voa.conformal_weight_op(&voa.vacuum()).is_zero());
        let v = voa.heis_state(&voa.rs().alpha(1), 2);
        assert_eq!(voa.conformal_weight_op(&v), v.scale_q(&qi(2)));
    }

    #[test]
    fn affine_examples() {
        let voa = a1();
        let alpha = voa.rs().alpha(1);
        let om = w(&[1]);
        let f0 = voa.affine_act(&AffineGen::F(alpha.clone()), 0, &voa.exp(&om)).unwrap();
        let sign = voa.rs().epsilon_sign(&-&alpha, &om);
        assert_eq!(f0, voa.exp(&-&om).scale_q(&qi(sign)));
        for m in 0..3 {
            assert!(voa.affine_act(&AffineGen::E(alpha.clone()), m, &voa.vacuum()).unwrap().is_zero());
        }
        let vac = voa.vacuum();
        let ef = voa.affine_act(&AffineGen::E(alpha.clone()), 1,
            &voa.affine_act(&AffineGen::F(alpha.clone()), -1, &vac).unwrap()).unwrap();
        let fe = voa.affine_act(&AffineGen::F(alpha.clone()), -1,
            &voa.affine_act(&AffineGen::E(alpha.clone()), 1, &vac).unwrap()).unwrap();
        assert_eq!(ef.minus(&fe), vac);
        assert!(voa.affine_act(&AffineGen::E(om), 0, &vac).is_err());
    }
}
