//! The vertex-algebraic filtration `G_lambda` of the lattice vertex algebra and
//! the induced product on the coordinate ring `W^* = sum_lambda W^*_lambda`.
//!
//! Everything is type A: the lift of the fundamental dual Weyl module attached
//! to `omega_i` is the span of `e^mu` over the Weyl orbit of `omega_i`, and the
//! quotient `F^dag_lambda / F^dag_{<lambda}` is realized as the quotient of
//! `G_lambda` by `G_{<lambda}`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::lattice_voa::{AffineGen, LatticeVoa, State};
use crate::linalg::{to_state, to_vector, Span, Vector};
use crate::rational::{binom, ceil_i64, floor_i64, fmt_q, frac, qi, sign, Q};
use crate::root_data::{Kind, RootSystem, Weight};

/// Graded pieces keyed by `(conformal weight, h-weight)`.
pub type Graded = BTreeMap<(Q, Weight), Span>;

fn require_type_a(rs: &RootSystem) -> Result<()> {
    if rs.kind() == Kind::A {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("filtration products are implemented for type A only, not {}", rs.name())))
    }
}

/// Spanning states of the lift attached to `omega_i`: `e^mu` for `mu` in the Weyl orbit.
pub fn fundamental_lift(rs: &RootSystem, i: usize) -> Result<Vec<State>> {
    require_type_a(rs)?;
    if i == 0 || i > rs.rank() {
        return Err(Error::OutOfRange(format!("fundamental index {i} for rank {}", rs.rank())));
    }
    Ok(rs.weyl_orbit(&rs.omega(i)).into_iter().map(State::exp).collect())
}

fn insert_state(g: &mut Graded, rs: &RootSystem, s: &State) -> Result<()> {
    for ((w, cw), part) in s.components(rs) {
        g.entry((cw, w)).or_default().insert(&to_vector(&part)?);
    }
    Ok(())
}

fn union_into(dst: &mut Graded, src: &Graded) {
    for (key, span) in src {
        let d = dst.entry(key.clone()).or_default();
        for (_, row) in span.rows() {
            d.insert(row);
        }
    }
}

/// `G_lambda` together with `G_{<lambda}`, truncated at a conformal weight.
#[derive(Clone, Debug)]
pub struct FiltrationSpan {
    rs: RootSystem,
    lambda: Weight,
    cutoff: Q,
    span: Arc<Graded>,
    below: Arc<Graded>,
}

impl FiltrationSpan {
    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn cutoff(&self) -> &Q {
        &self.cutoff
    }

    fn visible<'a>(&'a self, g: &'a Graded) -> impl Iterator<Item = (&'a (Q, Weight), &'a Span)> + 'a {
        g.iter().filter(move |((cw, _), s)| cw <= &self.cutoff && !s.is_empty())
    }

    /// Nonzero components of `G_lambda`.
    pub fn components(&self) -> impl Iterator<Item = (&(Q, Weight), &Span)> {
        self.visible(&self.span)
    }

    pub fn below_components(&self) -> impl Iterator<Item = (&(Q, Weight), &Span)> {
        self.visible(&self.below)
    }

    pub fn component(&self, cw: &Q, w: &Weight) -> Option<&Span> {
        self.span.get(&(cw.clone(), w.clone()))
    }

    pub fn below_component(&self, cw: &Q, w: &Weight) -> Option<&Span> {
        self.below.get(&(cw.clone(), w.clone()))
    }

    /// Basis states of `G_lambda` ordered by (conformal weight, h-weight, pivot).
    pub fn basis(&self) -> Vec<State> {
        self.components().flat_map(|(_, s)| s.rows().map(|(_, r)| to_state(r))).collect()
    }

    pub fn dim(&self) -> usize {
        self.components().map(|(_, s)| s.dim()).sum()
    }

    fn contains_in(&self, g: &Graded, v: &State) -> Result<bool> {
        let mut parts: BTreeMap<(Q, Weight), Vector> = BTreeMap::new();
        for (m, c) in v.terms() {
            let q = c.as_rational().ok_or_else(|| Error::Unsupported("irrational coefficient".into()))?;
            let cw = m.conformal_weight(&self.rs);
            parts.entry((cw, m.lattice.clone())).or_default().insert(m.clone(), q);
        }
        for (key, vec) in parts {
            if key.0 > self.cutoff {
                return Err(Error::OutOfRange(format!("conformal weight {} above cutoff {}", key.0, self.cutoff)));
            }
            match g.get(&key) {
                Some(s) if s.contains(&vec) => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    pub fn contains(&self, v: &State) -> Result<bool> {
        self.contains_in(&self.span, v)
    }

    pub fn contains_below(&self, v: &State) -> Result<bool> {
        self.contains_in(&self.below, v)
    }

    /// `dim (G_lambda / G_{<lambda})` at conformal weight `(lambda,lambda)/2 + d`, `d = 0..=max_degree`.
    pub fn quotient_dims(&self, max_degree: u32) -> Vec<usize> {
        let base = self.rs.inner(&self.lambda, &self.lambda) / qi(2);
        (0..=max_degree)
            .map(|d| {
                let cw = &base + qi(d as i64);
                let top: usize = self.span.range((cw.clone(), Weight(vec![]))..).take_while(|((c, _), _)| *c == cw).map(|(_, s)| s.dim()).sum();
                let low: usize = self.below.range((cw.clone(), Weight(vec![]))..).take_while(|((c, _), _)| *c == cw).map(|(_, s)| s.dim()).sum();
                top - low
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let rs = &self.rs;
        let comps: Vec<Value> = self
            .components()
            .map(|((cw, w), s)| {
                let low = self.below.get(&(cw.clone(), w.clone())).map_or(0, Span::dim);
                json!({
                    "conformal_weight": fmt_q(cw),
                    "weight": w.0,
                    "dim": s.dim(),
                    "dim_below": low,
                    "basis": s.rows().map(|(_, r)| to_state(r).to_json(rs)).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({"lambda": self.lambda.0, "cutoff": fmt_q(&self.cutoff), "dim": self.dim(), "components": comps})
    }
}

/// Builds and caches `G_mu` for all dominant `mu` reached by the recursion.
///
/// Every level is built up to `cutoff + slack`: a mode `B_(k)` with `k >= 0`
/// lowers the conformal weight, so pieces of `G_{lambda - omega_i}` above the
/// cutoff can in principle feed the cutoff window. With the lifts used here
/// `slack = 0` already reproduces the expected characters; the slack is kept
/// as a parameter so that this can be re-checked.
pub struct Filtration<'a> {
    voa: &'a LatticeVoa,
    cutoff: Q,
    work: Q,
    max_dim: Option<usize>,
    cache: Mutex<HashMap<Weight, Arc<Graded>>>,
    below_cache: Mutex<HashMap<Weight, Arc<Graded>>>,
}

impl<'a> Filtration<'a> {
    pub fn new(voa: &'a LatticeVoa, cutoff: Q) -> Self {
        Self::with_slack(voa, cutoff, 0)
    }

    pub fn with_slack(voa: &'a LatticeVoa, cutoff: Q, slack: u32) -> Self {
        let work = &cutoff + qi(slack as i64);
        Filtration { voa, cutoff, work, max_dim: None, cache: Mutex::new(HashMap::new()), below_cache: Mutex::new(HashMap::new()) }
    }

    /// Fails with [`Error::TooLarge`] once a graded component exceeds `cap`.
    pub fn with_max_dim(mut self, cap: usize) -> Self {
        self.max_dim = Some(cap);
        self
    }

    pub fn voa(&self) -> &'a LatticeVoa {
        self.voa
    }

    pub fn cutoff(&self) -> &Q {
        &self.cutoff
    }

    pub fn g_span(&self, lambda: &Weight) -> Result<FiltrationSpan> {
        let rs = self.voa.rs();
        rs.check_rank(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.0.clone()));
        }
        if !lambda.is_zero() {
            require_type_a(rs)?;
        }
        Ok(FiltrationSpan {
            rs: rs.clone(),
            lambda: lambda.clone(),
            cutoff: self.cutoff.clone(),
            span: self.graded(lambda)?,
            below: self.graded_below(lambda)?,
        })
    }

    /// `sum_{mu < lambda} G_mu`, restricted to the class of `lambda`.
    fn graded_below(&self, lambda: &Weight) -> Result<Arc<Graded>> {
        if let Some(g) = self.below_cache.lock().unwrap().get(lambda) {
            return Ok(g.clone());
        }
        let rs = self.voa.rs();
        let class = rs.gamma_class(lambda);
        let mut out = Graded::new();
        let lower: Vec<Weight> = rs
            .dominant_below(lambda)
            .into_iter()
            .filter(|mu| mu != lambda && rs.gamma_class(mu) == class)
            .collect();
        // maximal elements suffice, since G_mu contains G_nu for nu < mu
        let maximal: Vec<&Weight> = lower.iter().filter(|mu| !lower.iter().any(|nu| rs.lt(mu, nu))).collect();
        for mu in maximal {
            union_into(&mut out, &*self.graded(mu)?);
        }
        let out = Arc::new(out);
        self.below_cache.lock().unwrap().insert(lambda.clone(), out.clone());
        Ok(out)
    }

    fn graded(&self, lambda: &Weight) -> Result<Arc<Graded>> {
        if let Some(g) = self.cache.lock().unwrap().get(lambda) {
            return Ok(g.clone());
        }
        let rs = self.voa.rs();
        let mut out = Graded::new();
        if lambda.is_zero() {
            out.entry((Q::zero(), lambda.clone())).or_default().insert(&to_vector(&self.voa.vacuum())?);
        } else {
            union_into(&mut out, &*self.graded_below(lambda)?);
            for i in 1..=rs.rank() {
                let rest = lambda - &rs.omega(i);
                if !rest.is_dominant() {
                    continue;
                }
                let inner = self.graded(&rest)?;
                let lift = fundamental_lift(rs, i)?;
                let jobs: Vec<(&State, State)> = inner.values().flat_map(|span| span.rows().map(|(_, r)| to_state(r)))
                    .flat_map(|x| lift.iter().map(move |b| (b, x.clone())))
                    .collect();
                let products: Vec<Vec<State>> = jobs.par_iter().map(|(b, x)| self.all_modes(b, x)).collect();
                for s in products.iter().flatten() {
                    insert_state(&mut out, rs, s)?;
                }
                self.check_size(&out)?;
            }
        }
        let out = Arc::new(out);
        self.cache.lock().unwrap().insert(lambda.clone(), out.clone());
        Ok(out)
    }

    fn check_size(&self, g: &Graded) -> Result<()> {
        let Some(cap) = self.max_dim else { return Ok(()) };
        match g.values().map(Span::dim).max() {
            Some(dim) if dim > cap => Err(Error::TooLarge { dim, cap }),
            _ => Ok(()),
        }
    }

    /// `b_(k) x` for every admissible `k` with output conformal weight in the working window.
    fn all_modes(&self, b: &State, x: &State) -> Vec<State> {
        let rs = self.voa.rs();
        let (Some(mb), Some(mx)) = (b.terms().next(), x.terms().next()) else {
            return Vec::new();
        };
        let (wb, wx) = (&mb.0.lattice, &mx.0.lattice);
        let target = wb + wx;
        let floor_cw = rs.inner(&target, &target) / qi(2);
        let top = b.max_conformal_weight(rs).unwrap() + x.max_conformal_weight(rs).unwrap() - qi(1);
        let offset = frac(&-rs.inner(wb, wx));
        let k_lo = ceil_i64(&(&top - &self.work - &offset));
        let k_hi = floor_i64(&(&top - &floor_cw - &offset));
        (k_lo..=k_hi)
            .map(|k| self.voa.vertex_mode(b, &(&offset + qi(k)), x))
            .filter(|s| !s.is_zero())
            .collect()
    }
}

/// Convenience wrapper around [`Filtration::g_span`].
pub fn g_span(voa: &LatticeVoa, lambda: &Weight, cutoff: Q) -> Result<FiltrationSpan> {
    Filtration::new(voa, cutoff).g_span(lambda)
}

/// Whether the `g[t]`-closure of `v` (under `x t^m`, `m >= 0`) has all weights `<= lambda`.
pub fn in_fdag(voa: &LatticeVoa, v: &State, lambda: &Weight) -> Result<bool> {
    let rs = voa.rs();
    let mut gens: Vec<AffineGen> = Vec::new();
    for a in rs.positive_roots() {
        gens.push(AffineGen::E(a.clone()));
        gens.push(AffineGen::F(a));
    }
    let mut closure = Graded::new();
    let mut queue: Vec<State> = Vec::new();
    for ((w, cw), part) in v.components(rs) {
        if closure.entry((cw, w)).or_default().insert(&to_vector(&part)?) {
            queue.push(part);
        }
    }
    let mut weights: HashSet<Weight> = HashSet::new();
    while let Some(s) = queue.pop() {
        for w in s.weights() {
            if !rs.leq(&w, lambda) {
                return Ok(false);
            }
            weights.insert(w);
        }
        let top = floor_i64(&s.max_conformal_weight(rs).unwrap_or_else(Q::zero));
        let mut images = Vec::new();
        for g in &gens {
            for m in 0..=top.max(0) {
                images.push(voa.affine_act(g, m, &s)?);
            }
        }
        for i in 1..=rs.rank() {
            for m in 1..=top.max(0) {
                images.push(voa.affine_act(&AffineGen::H(i), m, &s)?);
            }
        }
        for img in images {
            for ((w, cw), part) in img.components(rs) {
                if closure.entry((cw, w)).or_default().insert(&to_vector(&part)?) {
                    queue.push(part);
                }
            }
        }
    }
    Ok(true)
}

/// Sign attached to an ordered pair of lattice weights in the product.
///
/// `Y(e^a, z)` and `Y(e^b, w)` braid with `eps(a,b) eps(b,a)^{-1} e^{i pi (a,b)}`,
/// which depends on the weights and not only on their classes. Multiplying the
/// coefficient of `e^{a_1} ... e^{a_s}` by `prod_{k<l} eta(a_k, a_l)` with
///
/// ```text
/// eta(a, b) = eps(chi_a, chi_b) * braiding(b - chi_b, a)
/// ```
///
/// makes the product symmetric in its factors and turns the twisted Leibniz rule
/// of the currents into the plain one. `eta` is constant on the classes in its
/// first argument and `eta(a, b) = 1` when both are representatives.
pub fn ordering_sign(rs: &RootSystem, a: &Weight, b: &Weight) -> i64 {
    let chi_a = &rs.representatives()[rs.gamma_class(a)];
    let chi_b = &rs.representatives()[rs.gamma_class(b)];
    let beta = b - chi_b;
    // braiding of a root-lattice element with anything is +-1
    let br = if (rs.inner(&beta, a).to_integer() % 2u8).is_zero() { 1 } else { -1 };
    rs.epsilon_sign(chi_a, chi_b) * rs.epsilon_sign(&beta, a) * rs.epsilon_sign(a, &beta) * br
}

/// Splits each factor by lattice weight and applies [`ordering_sign`]:
/// the lift of `A^1 (x) ... (x) A^s` as a sum of ordered tuples of states.
pub fn lift_tensor(rs: &RootSystem, factors: &[State]) -> Vec<(Q, Vec<State>)> {
    let mut out: Vec<(Q, Vec<State>)> = vec![(qi(1), Vec::new())];
    let mut weights_so_far: Vec<Vec<Weight>> = vec![Vec::new()];
    for f in factors {
        let mut next = Vec::new();
        let mut next_w = Vec::new();
        for ((c, parts), ws) in out.iter().zip(&weights_so_far) {
            for ((w, _), piece) in split_by_weight(rs, f) {
                let mut sign = 1;
                for prev in ws {
                    sign *= ordering_sign(rs, prev, &w);
                }
                let mut p = parts.clone();
                p.push(piece);
                let mut wv = ws.clone();
                wv.push(w);
                next.push((c * qi(sign), p));
                next_w.push(wv);
            }
        }
        out = next;
        weights_so_far = next_w;
    }
    out
}

fn split_by_weight(rs: &RootSystem, s: &State) -> BTreeMap<(Weight, Q), State> {
    s.components(rs)
}

/// Class representative pairing `-(chi_g, chi_h)` of two lifts.
fn lift_exponent(rs: &RootSystem, a: &State, b: &State) -> Result<Q> {
    let ga = a.gamma_class(rs).ok_or_else(|| Error::Parity("lift is not homogeneous".into()))?;
    let gb = b.gamma_class(rs).ok_or_else(|| Error::Parity("lift is not homogeneous".into()))?;
    Ok(-rs.inner(&rs.representatives()[ga], &rs.representatives()[gb]))
}

/// Coefficient of `z_1^{m_1} ... z_s^{m_s}` in
/// `prod_{k<l} i_{z_k,z_l}(z_k - z_l)^{M_kl} Y(A^1, z_1) ... Y(A^s, z_s)|0>`,
/// `M_kl = -(chi_k, chi_l)` for the classes `chi_k` of the lifts.
///
/// Expanding the prefactor as `sum_j C(M,j) (-1)^j z_k^{M-j} z_l^j`, a choice of
/// all `j_kl` pins every mode index: `n_k = e_k - m_k - 1` with
/// `e_k = sum_{l>k} (M_kl - j_kl) + sum_{l<k} j_lk`. The suffix
/// `A^t_(n_t) ... A^s_(n_s)|0>` has conformal weight
/// `sum_{l>=t} (cw_l + m_l) - sum_{t<=k<l} M_kl - sum_{k<t<=l} j_kl`, which must
/// be nonnegative; this bounds the window for each `j`.
pub fn m_coefficient(voa: &LatticeVoa, lifts: &[State], m: &[i64]) -> Result<State> {
    m_coefficient_window(voa, lifts, m, 0)
}

fn m_coefficient_window(voa: &LatticeVoa, lifts: &[State], m: &[i64], extra: i64) -> Result<State> {
    let rs = voa.rs();
    let s = lifts.len();
    if m.len() != s {
        return Err(Error::Precondition(format!("{} lifts but {} exponents", s, m.len())));
    }
    if s == 0 {
        return Ok(voa.vacuum());
    }
    if lifts.iter().any(State::is_zero) {
        return Ok(State::zero());
    }
    let mut big_m = vec![vec![Q::zero(); s]; s];
    for k in 0..s {
        for l in k + 1..s {
            big_m[k][l] = lift_exponent(rs, &lifts[k], &lifts[l])?;
        }
    }
    let cw: Vec<Q> = lifts.iter().map(|a| a.max_conformal_weight(rs).unwrap()).collect();
    // caps[t] bounds sum_{k<t<=l} j_kl
    let caps: Vec<i64> = (0..s)
        .map(|t| {
            let mut c = Q::zero();
            for l in t..s {
                c += &cw[l] + qi(m[l]);
                for k in t..l {
                    c -= &big_m[k][l];
                }
            }
            floor_i64(&c) + extra
        })
        .collect();
    if caps[0] < extra {
        return Ok(State::zero());
    }
    let pairs: Vec<(usize, usize)> = (0..s).flat_map(|k| (k + 1..s).map(move |l| (k, l))).collect();
    let mut memo: HashMap<(usize, Vec<Q>), State> = HashMap::new();
    let mut out = State::zero();
    let mut js = vec![0i64; pairs.len()];
    loop {
        // crossing sums for the current assignment
        let ok = (1..s).all(|t| {
            let cross: i64 = pairs.iter().zip(&js).filter(|((k, l), _)| *k < t && t <= *l).map(|(_, j)| *j).sum();
            cross <= caps[t]
        });
        if ok {
            let mut coef = Q::from_integer(1.into());
            let mut e = vec![Q::zero(); s];
            for (&(k, l), &j) in pairs.iter().zip(&js) {
                coef *= binom(&big_m[k][l], j as u64) * sign(j as u64);
                e[k] += &big_m[k][l] - qi(j);
                e[l] += qi(j);
            }
            let modes: Vec<Q> = (0..s).map(|k| &e[k] - qi(m[k]) - qi(1)).collect();
            let v = suffix_product(voa, lifts, &modes, 0, &mut memo);
            out.add_scaled(&v, &crate::cyclotomic::CycScalar::from_q(coef));
        }
        // odometer over js, each bounded by the loosest cap it enters
        let mut idx = 0;
        loop {
            if idx == js.len() {
                return Ok(out);
            }
            let (k, l) = pairs[idx];
            let bound = (k + 1..=l).map(|t| caps[t]).min().unwrap();
            if js[idx] < bound {
                js[idx] += 1;
                break;
            }
            js[idx] = 0;
            idx += 1;
        }
    }
}

fn suffix_product(voa: &LatticeVoa, lifts: &[State], modes: &[Q], t: usize, memo: &mut HashMap<(usize, Vec<Q>), State>) -> State {
    if t == lifts.len() {
        return voa.vacuum();
    }
    let key = (t, modes[t..].to_vec());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let inner = suffix_product(voa, lifts, modes, t + 1, memo);
    let v = if inner.is_zero() { inner } else { voa.vertex_mode(&lifts[t], &modes[t], &inner) };
    memo.insert(key, v.clone());
    v
}

/// `(-1)^j C(M - s, j) = sum_{l<=j} (-1)^l C(M, l) C(j - l + s - 1, s - 1)`.
pub fn binom_identity_holds(big_m: &Q, s: u64, j: u64) -> bool {
    let lhs = sign(j) * binom(&(big_m - qi(s as i64)), j);
    let rhs: Q = (0..=j)
        .map(|l| sign(l) * binom(big_m, l) * binom(&qi((j - l + s - 1) as i64), s - 1))
        .sum();
    lhs == rhs
}

/// Class of a state in `G_lambda / G_{<lambda}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RingElement {
    pub lambda: Weight,
    pub rep: State,
    pub conformal_weight: Q,
    /// Coordinates on the quotient basis of the conformal-weight level.
    pub reduced: Vec<Q>,
    pub fingerprint: String,
}

impl RingElement {
    pub fn is_zero(&self) -> bool {
        self.reduced.iter().all(Zero::is_zero)
    }

    pub fn to_json(&self, rs: &RootSystem) -> Value {
        json!({
            "lambda": self.lambda.0,
            "conformal_weight": fmt_q(&self.conformal_weight),
            "rep": self.rep.to_json(rs),
            "reduced": self.reduced.iter().map(fmt_q).collect::<Vec<_>>(),
            "basis_fingerprint": self.fingerprint,
        })
    }
}

/// Product, reduction and relation checks on top of a [`Filtration`].
pub struct Ring<'a> {
    filtration: Filtration<'a>,
}

impl<'a> Ring<'a> {
    pub fn new(voa: &'a LatticeVoa, cutoff: Q) -> Self {
        Ring { filtration: Filtration::new(voa, cutoff) }
    }

    pub fn from_filtration(filtration: Filtration<'a>) -> Self {
        Ring { filtration }
    }

    pub fn filtration(&self) -> &Filtration<'a> {
        &self.filtration
    }

    fn rs(&self) -> &RootSystem {
        self.filtration.voa.rs()
    }

    /// Quotient basis of `G_lambda / G_{<lambda}` at one conformal weight:
    /// per h-weight, the rows of `G_lambda` reduced modulo `G_{<lambda}`.
    fn quotient_basis(&self, g: &FiltrationSpan, cw: &Q) -> Vec<(Weight, Span, Span)> {
        let mut out = Vec::new();
        for ((c, w), span) in g.components() {
            if c != cw {
                continue;
            }
            let below = g.below_component(c, w).cloned().unwrap_or_default();
            let mut quot = Span::new();
            for (_, row) in span.rows() {
                quot.insert(&below.reduce(row));
            }
            out.push((w.clone(), below, quot));
        }
        out
    }

    /// Reduces `v` (homogeneous in conformal weight) modulo `G_{<lambda}`.
    pub fn reduce(&self, lambda: &Weight, v: &State) -> Result<RingElement> {
        let rs = self.rs();
        let g = self.filtration.g_span(lambda)?;
        let cws: HashSet<Q> = v.components(rs).keys().map(|(_, c)| c.clone()).collect();
        if cws.len() > 1 {
            return Err(Error::Precondition("state is not homogeneous in conformal weight".into()));
        }
        let cw = match cws.into_iter().next() {
            Some(c) => c,
            None => rs.inner(lambda, lambda) / qi(2),
        };
        if cw > *g.cutoff() {
            return Err(Error::OutOfRange(format!("conformal weight {cw} above cutoff {}", g.cutoff())));
        }
        let basis = self.quotient_basis(&g, &cw);
        let mut parts: BTreeMap<Weight, Vector> = BTreeMap::new();
        for ((w, _), part) in v.components(rs) {
            parts.insert(w, to_vector(&part)?);
        }
        let mut reduced = Vec::new();
        let mut h = Sha256::new();
        h.update(format!("{}|{:?}|{}\n", rs.name(), lambda.0, fmt_q(&cw)).as_bytes());
        for (w, below, quot) in &basis {
            h.update(format!("{:?}\n", w.0).as_bytes());
            quot.hash_into(&mut h);
            let vec = parts.remove(w).unwrap_or_default();
            let r = below.reduce(&vec);
            let coords = quot
                .coordinates(&r)
                .ok_or_else(|| Error::Precondition(format!("state is not in G_{:?} at weight {:?}", lambda.0, w.0)))?;
            reduced.extend(coords);
        }
        if parts.values().any(|p| !p.is_empty()) {
            return Err(Error::Precondition(format!("state is not in G_{:?}", lambda.0)));
        }
        Ok(RingElement { lambda: lambda.clone(), rep: v.clone(), conformal_weight: cw, reduced, fingerprint: hex::encode(h.finalize()) })
    }

    /// `lambda = sum_k omega_{j_k}` for lifts in the classes `j_k`.
    fn total_weight(&self, lifts: &[&State]) -> Result<Weight> {
        let rs = self.rs();
        let mut lambda = rs.zero();
        for a in lifts {
            let g = a.gamma_class(rs).ok_or_else(|| Error::Parity("lift is not homogeneous".into()))?;
            if g == 0 {
                return Err(Error::Precondition("a factor lies in the root-lattice class".into()));
            }
            lambda = &lambda + &rs.representatives()[g];
        }
        Ok(lambda)
    }

    /// `phi(A^1 t^{-m_1} ... A^s t^{-m_s})`.
    pub fn phi_product(&self, factors: &[(State, i64)]) -> Result<RingElement> {
        require_type_a(self.rs())?;
        if let Some((_, m)) = factors.iter().find(|(_, m)| *m < 0) {
            return Err(Error::Precondition(format!("negative exponent {m}")));
        }
        let lifts: Vec<State> = factors.iter().map(|(a, _)| a.clone()).collect();
        let ms: Vec<i64> = factors.iter().map(|(_, m)| *m).collect();
        let lambda = self.total_weight(&lifts.iter().collect::<Vec<_>>())?;
        let mut v = State::zero();
        for (c, parts) in lift_tensor(self.rs(), &lifts) {
            v.add_assign(&m_coefficient(self.filtration.voa, &parts, &ms)?.scale_q(&c));
        }
        self.reduce(&lambda, &v)
    }

    /// `(A_(M-s) B)_(-1-r)|0>` against the `z^r` coefficient of
    /// `d_z^{(s-1)} i_{z,w}(z-w)^M Y(A,z)Y(B,w)|0>` at `z = w`, modulo `G_{<lambda}`.
    pub fn vertex_mult_check(&self, a: &State, b: &State, s: i64, r: i64) -> Result<bool> {
        let (lhs, rhs) = self.vertex_mult_sides(a, b, s, r)?;
        let lambda = self.total_weight(&[a, b])?;
        let diff = lhs.minus(&rhs);
        Ok(self.reduce(&lambda, &diff)?.is_zero())
    }

    fn vertex_mult_sides(&self, a: &State, b: &State, s: i64, r: i64) -> Result<(State, State)> {
        if s <= 0 {
            return Err(Error::Precondition(format!("s = {s} must be positive")));
        }
        if r < 0 {
            return Err(Error::Precondition(format!("r = {r} must be nonnegative")));
        }
        let voa = self.filtration.voa;
        let big_m = lift_exponent(self.rs(), a, b)?;
        for j in 0..=(r + s) as u64 {
            if !binom_identity_holds(&big_m, s as u64, j) {
                return Err(Error::HypothesisFails(format!("binomial identity fails at j = {j}")));
            }
        }
        let ab = voa.vertex_mode(a, &(&big_m - qi(s)), b);
        let lhs = voa.vertex_mode(&ab, &qi(-1 - r), &voa.vacuum());
        let mut rhs = State::zero();
        for p in (s - 1)..=(r + s - 1) {
            let q = r + s - 1 - p;
            let weight = binom(&qi(p), (s - 1) as u64);
            for l in 0..=q {
                let bv = voa.vertex_mode(b, &qi(-1 - q + l), &voa.vacuum());
                if bv.is_zero() {
                    continue;
                }
                let term = voa.vertex_mode(a, &(&big_m - qi(1 + p + l)), &bv);
                let c = &weight * sign(l as u64) * binom(&big_m, l as u64);
                rhs.add_scaled(&term, &crate::cyclotomic::CycScalar::from_q(c));
            }
        }
        Ok((lhs, rhs))
    }

    /// `pairs` is an element `sum_l A^l (x) B^l` of `W^* (x) W^*`, lifted with
    /// [`lift_tensor`]. Checks that `sum_l A^l_(M-s) B^l` lies in `G_{<lambda}` and that then every
    /// coefficient `z^r`, `r <= max_r`, of `sum_l d^{(s-1)} A^l(z) B^l(z)|0>`
    /// vanishes in `W^*`.
    pub fn verify_relation(&self, pairs: &[(State, State)], s: i64, max_r: i64) -> Result<bool> {
        if pairs.is_empty() {
            return Ok(true);
        }
        if s <= 0 {
            return Err(Error::Precondition(format!("s = {s} must be positive")));
        }
        let voa = self.filtration.voa;
        let lambda = self.total_weight(&[&pairs[0].0, &pairs[0].1])?;
        let big_m = lift_exponent(self.rs(), &pairs[0].0, &pairs[0].1)?;
        for (a, b) in pairs {
            if self.total_weight(&[a, b])? != lambda {
                return Err(Error::Precondition("pairs lie in different classes".into()));
            }
        }
        let lifted: Vec<(State, State)> = pairs
            .iter()
            .flat_map(|(a, b)| lift_tensor(self.rs(), &[a.clone(), b.clone()]))
            .map(|(c, p)| (p[0].scale_q(&c), p[1].clone()))
            .collect();
        let pairs = &lifted;
        let mut hyp = State::zero();
        for (a, b) in pairs {
            hyp.add_assign(&voa.vertex_mode(a, &(&big_m - qi(s)), b));
        }
        let g = self.filtration.g_span(&lambda)?;
        if !g.contains_below(&hyp)? {
            return Err(Error::HypothesisFails("sum of A_(M-s) B is not in G_{<lambda}".into()));
        }
        for r in 0..=max_r {
            let mut total = State::zero();
            for (a, b) in pairs {
                total.add_assign(&self.vertex_mult_sides(a, b, s, r)?.1);
            }
            if !self.reduce(&lambda, &total)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Lifts `sum_k c_k e^{mu_k}` given as `(mu, c)` pairs.
pub fn lift_combination(terms: &[(Weight, i64)]) -> State {
    let mut s = State::zero();
    for (w, c) in terms {
        s.add_assign(&State::exp(w.clone()).scale_q(&qi(*c)));
    }
    s
}
