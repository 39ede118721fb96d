use std::collections::{BTreeMap, HashMap};

use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{qi, Q};
use crate::root_data::{Kind, RootSystem, Weight};

/// Weight multiplicities of a finite-dimensional module.
pub type WeightMap = BTreeMap<Weight, i64>;

/// Graded character `sum_k q^k ch M[k]`, optionally known only up to a
/// maximal q-degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QCharacter {
    terms: BTreeMap<i64, WeightMap>,
    truncation: Option<i64>,
}

fn add_into(dst: &mut WeightMap, w: &Weight, m: i64) {
    if m == 0 {
        return;
    }
    let e = dst.entry(w.clone()).or_insert(0);
    *e += m;
    if *e == 0 {
        dst.remove(w);
    }
}

impl QCharacter {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The character `ch` placed in q-degree 0.
    pub fn constant(ch: &WeightMap) -> Self {
        let mut out = Self::zero();
        out.add_slice(0, ch, 1);
        out
    }

    pub fn truncation(&self) -> Option<i64> {
        self.truncation
    }

    pub fn truncated(mut self, max_degree: i64) -> Self {
        self.terms.retain(|&k, _| k <= max_degree);
        self.truncation = Some(self.truncation.map_or(max_degree, |t| t.min(max_degree)));
        self
    }

    pub fn add_term(&mut self, degree: i64, w: &Weight, mult: i64) {
        if self.truncation.is_some_and(|t| degree > t) {
            return;
        }
        let slice = self.terms.entry(degree).or_default();
        add_into(slice, w, mult);
        if slice.is_empty() {
            self.terms.remove(&degree);
        }
    }

    /// Adds `factor * q^degree * ch`.
    pub fn add_slice(&mut self, degree: i64, ch: &WeightMap, factor: i64) {
        for (w, m) in ch {
            self.add_term(degree, w, m * factor);
        }
    }

    pub fn slice(&self, degree: i64) -> WeightMap {
        self.terms.get(&degree).cloned().unwrap_or_default()
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &WeightMap)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn mult(&self, degree: i64, w: &Weight) -> i64 {
        self.terms.get(&degree).and_then(|s| s.get(w)).copied().unwrap_or(0)
    }

    pub fn dim_at(&self, degree: i64) -> i64 {
        self.terms.get(&degree).map_or(0, |s| s.values().sum())
    }

    /// Dimensions of the slices of degree `0..=max_degree`.
    pub fn graded_dims(&self, max_degree: i64) -> Vec<i64> {
        (0..=max_degree).map(|k| self.dim_at(k)).collect()
    }

    /// Specialization `q -> 1` of what is stored.
    pub fn total(&self) -> WeightMap {
        let mut out = WeightMap::new();
        for slice in self.terms.values() {
            for (w, m) in slice {
                add_into(&mut out, w, *m);
            }
        }
        out
    }

    pub fn total_dim(&self) -> i64 {
        self.terms.values().flat_map(|s| s.values()).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().flat_map(|s| s.values()).all(|&m| m >= 0)
    }

    /// Multiplies by a power series in `q` with integer coefficients.
    pub fn times_series(&self, series: &[i64]) -> Self {
        let mut out = Self { terms: BTreeMap::new(), truncation: self.truncation };
        for (&k, slice) in &self.terms {
            for (j, &c) in series.iter().enumerate() {
                if c != 0 {
                    out.add_slice(k + j as i64, slice, c);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(k, slice)| {
                    json!({
                        "q_degree": k,
                        "weights": slice.iter().map(|(w, m)| json!({"coords": w.0, "mult": m})).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("q-character: {what}"));
        let mut out = Self::zero();
        for entry in v.as_array().ok_or_else(|| bad("expected a list"))? {
            let k = entry["q_degree"].as_i64().ok_or_else(|| bad("q_degree"))?;
            for w in entry["weights"].as_array().ok_or_else(|| bad("weights"))? {
                let coords: Vec<i64> = serde_json::from_value(w["coords"].clone()).map_err(|_| bad("coords"))?;
                let m = w["mult"].as_i64().ok_or_else(|| bad("mult"))?;
                out.add_term(k, &Weight(coords), m);
            }
        }
        Ok(out)
    }
}

/// Coefficients of `1/(q)_n = prod_{i=1}^n 1/(1-q^i)` up to `q^max_degree`.
pub fn inverse_pochhammer(n: i64, max_degree: i64) -> Vec<i64> {
    let len = max_degree.max(-1) + 1;
    let mut c = vec![0i64; len as usize];
    if len == 0 {
        return c;
    }
    c[0] = 1;
    for part in 1..=n as usize {
        for d in part..c.len() {
            c[d] += c[d - part];
        }
    }
    c
}

/// Gaussian binomial `[n choose k]_q` as a coefficient list.
pub fn q_binomial(n: i64, k: i64) -> Vec<i64> {
    if k < 0 || k > n {
        return vec![];
    }
    // Pascal recursion [n,k] = [n-1,k-1] + q^k [n-1,k].
    let mut rows: Vec<Vec<i64>> = vec![vec![1]];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m as usize + 1);
        for j in 0..=m {
            let mut coeffs = vec![0i64; (j * (m - j)) as usize + 1];
            if j >= 1 {
                for (d, c) in rows[(j - 1) as usize].iter().enumerate() {
                    coeffs[d] += c;
                }
            }
            if j < m {
                for (d, c) in rows[j as usize].iter().enumerate() {
                    coeffs[d + j as usize] += c;
                }
            }
            next.push(coeffs);
        }
        rows = next;
    }
    rows.swap_remove(k as usize)
}

/// Moves `w` into the dominant chamber by simple reflections.
pub fn dominant_conjugate(rs: &RootSystem, w: &Weight) -> Weight {
    let mut cur = w.clone();
    while let Some(i) = cur.0.iter().position(|&c| c < 0) {
        cur = rs.reflect(i + 1, &cur);
    }
    cur
}

/// Dominant weight multiplicities of `V_lambda` (Freudenthal's formula).
pub fn dominant_multiplicities(rs: &RootSystem, lambda: &Weight) -> Result<BTreeMap<Weight, i64>> {
    rs.check_rank(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.0.clone()));
    }
    let rho = Weight(vec![1; rs.rank()]);
    let lr = lambda + &rho;
    let top = rs.inner(&lr, &lr);
    let pos = rs.positive_roots();
    let mut below: Vec<Weight> = rs.dominant_below(lambda).into_iter().filter(|m| rs.in_root_lattice(&(lambda - m))).collect();
    // Process by increasing depth below lambda.
    below.sort_by_key(|m| {
        let h: Q = rs.root_coords(&(lambda - m)).iter().sum();
        (h.numer() / h.denom()).to_i64().unwrap_or(0)
    });
    let mut mult: HashMap<Weight, i64> = HashMap::new();
    for mu in below {
        if &mu == lambda {
            mult.insert(mu, 1);
            continue;
        }
        let mut acc = Q::zero();
        for a in &pos {
            let mut k = 1;
            loop {
                let nu = &mu + &a.scale(k);
                if !rs.leq(&nu, lambda) {
                    break;
                }
                let m = mult.get(&dominant_conjugate(rs, &nu)).copied().unwrap_or(0);
                if m != 0 {
                    acc += qi(m) * rs.inner(&nu, a);
                }
                k += 1;
            }
        }
        let mr = &mu + &rho;
        let denom = &top - rs.inner(&mr, &mr);
        let value = acc * qi(2) / denom;
        debug_assert!(value.is_integer() && !value.is_negative());
        mult.insert(mu, value.to_integer().to_i64().unwrap_or(0));
    }
    Ok(mult.into_iter().filter(|(_, m)| *m != 0).collect())
}

/// Full character of the irreducible module `V_lambda`.
pub fn irreducible_character(rs: &RootSystem, lambda: &Weight) -> Result<WeightMap> {
    let mut out = WeightMap::new();
    for (mu, m) in dominant_multiplicities(rs, lambda)? {
        for w in rs.weyl_orbit(&mu) {
            out.insert(w, m);
        }
    }
    Ok(out)
}

pub fn character_dim(ch: &WeightMap) -> i64 {
    ch.values().sum()
}

/// `dim W_lambda = prod_i (dim W_{omega_i})^{lambda_i}`.
pub fn local_weyl_dim(rs: &RootSystem, lambda: &Weight) -> Result<u64> {
    rs.check_rank(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.0.clone()));
    }
    let mut out: u64 = 1;
    for (i, &c) in lambda.0.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let d = rs.fundamental_weyl_dim(i + 1)?;
        let p = d
            .checked_pow(c as u32)
            .and_then(|p| out.checked_mul(p))
            .ok_or_else(|| Error::Unsupported("dimension overflows u64".into()))?;
        out = p;
    }
    Ok(out)
}

/// `omega_k` in type `A_r`, with `omega_0 = omega_{r+1} = 0`.
pub fn omega_or_zero(rs: &RootSystem, k: usize) -> Weight {
    if k == 0 || k > rs.rank() {
        rs.zero()
    } else {
        rs.omega(k)
    }
}

/// `V_{omega_i} (x) V_{omega_j} = sum_l V_{omega_{j-l} + omega_{i+l}}` in type A.
pub fn lr_two_fundamentals(rs: &RootSystem, i: usize, j: usize) -> Result<Vec<(Weight, u32)>> {
    if rs.kind() != Kind::A {
        return Err(Error::Unsupported(format!("two-fundamental decomposition for {}", rs.name())));
    }
    let r = rs.rank();
    if !(1 <= j && j <= i && i <= r) {
        return Err(Error::OutOfRange(format!("need 1 <= j <= i <= {r}, got i={i}, j={j}")));
    }
    Ok((0..=j.min(r + 1 - i)).map(|l| (&omega_or_zero(rs, j - l) + &omega_or_zero(rs, i + l), 1)).collect())
}

/// Positions of the nonzero coordinates, with repetition: `omega_i + omega_j`
/// gives `[i, j]`.
fn fundamental_parts(lambda: &Weight) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, &c) in lambda.0.iter().enumerate() {
        for _ in 0..c {
            out.push(i + 1);
        }
    }
    out
}

/// Graded character of the local Weyl module `W_lambda`, where known:
/// `lambda = 0`, any `lambda` in type `A_1`, and sums of at most two
/// fundamental weights in type A.
pub fn local_weyl_character(rs: &RootSystem, lambda: &Weight) -> Result<QCharacter> {
    rs.check_rank(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.0.clone()));
    }
    if lambda.is_zero() {
        return Ok(QCharacter::constant(&irreducible_character(rs, lambda)?));
    }
    if rs.kind() == Kind::A && rs.rank() == 1 {
        // ch W_{n omega} = sum_k [n choose k]_q x^{n - 2k}.
        let n = lambda[0];
        let mut out = QCharacter::zero();
        for k in 0..=n {
            for (d, c) in q_binomial(n, k).into_iter().enumerate() {
                out.add_term(d as i64, &Weight(vec![n - 2 * k]), c);
            }
        }
        return Ok(out);
    }
    let parts = fundamental_parts(lambda);
    if rs.kind() == Kind::A && parts.len() <= 2 {
        if parts.len() == 1 {
            return Ok(QCharacter::constant(&irreducible_character(rs, lambda)?));
        }
        let (i, j) = (parts[0].max(parts[1]), parts[0].min(parts[1]));
        let mut out = QCharacter::zero();
        for (l, (mu, _)) in lr_two_fundamentals(rs, i, j)?.into_iter().enumerate() {
            out.add_slice(l as i64, &irreducible_character(rs, &mu)?, 1);
        }
        return Ok(out);
    }
    Err(Error::Unsupported(format!("local Weyl character of {lambda} in {}", rs.name())))
}

/// `ch W_lambda * prod_i (q)^{-1}_{lambda_i}` up to `q^cutoff`.
pub fn ch_global(rs: &RootSystem, lambda: &Weight, cutoff: i64) -> Result<QCharacter> {
    let mut out = local_weyl_character(rs, lambda)?.truncated(cutoff);
    for &c in &lambda.0 {
        if c > 0 {
            out = out.times_series(&inverse_pochhammer(c, cutoff));
        }
    }
    Ok(out)
}
