//! States of the lattice vertex algebra: finite linear combinations of
//! Fock monomials `alpha_{i1} t^{-n1} ... alpha_{ik} t^{-nk} (x) e^mu`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use serde_json::{json, Value};

use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, qi, Q};
use crate::root_data::{RootSystem, Weight};

/// One creation operator `alpha_i t^{-n}`, stored as `(n, i)` so that the
/// derived order sorts by mode first. `i` is 0-based internally.
pub type Creator = (u32, u16);

/// Sorted multiset of creators.
pub type Creators = Vec<Creator>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockMonomial {
    pub lattice: Weight,
    pub creators: Creators,
}

impl FockMonomial {
    pub fn new(mut creators: Creators, lattice: Weight) -> Self {
        creators.sort_unstable();
        FockMonomial { lattice, creators }
    }

    pub fn exp(lattice: Weight) -> Self {
        FockMonomial { lattice, creators: Vec::new() }
    }

    pub fn degree(&self) -> u64 {
        self.creators.iter().map(|c| c.0 as u64).sum()
    }

    /// `(mu, mu)/2 + sum n`.
    pub fn conformal_weight(&self, rs: &RootSystem) -> Q {
        rs.inner(&self.lattice, &self.lattice) / qi(2) + qi(self.degree() as i64)
    }
}

pub fn merge_creators(a: &[Creator], b: &[Creator]) -> Creators {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Polynomial in the creators only (coefficients rational).
pub type FockPoly = BTreeMap<Creators, Q>;

pub fn poly_mul(a: &FockPoly, b: &FockPoly) -> FockPoly {
    let mut out = FockPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = merge_creators(ma, mb);
            let e = out.entry(m).or_insert_with(Q::zero);
            *e += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct State {
    terms: BTreeMap<FockMonomial, CycScalar>,
}

impl State {
    pub fn zero() -> Self {
        State { terms: BTreeMap::new() }
    }

    pub fn vacuum(rank: usize) -> Self {
        Self::monomial(FockMonomial::exp(Weight::zero(rank)), CycScalar::one())
    }

    pub fn exp(lattice: Weight) -> Self {
        Self::monomial(FockMonomial::exp(lattice), CycScalar::one())
    }

    pub fn monomial(m: FockMonomial, c: CycScalar) -> Self {
        let mut s = State::zero();
        s.add_term(m, c);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockMonomial, &CycScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &FockMonomial) -> CycScalar {
        self.terms.get(m).cloned().unwrap_or_else(CycScalar::zero)
    }

    pub fn add_term(&mut self, m: FockMonomial, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_q(&mut self, m: FockMonomial, c: Q) {
        self.add_term(m, CycScalar::from_q(c));
    }

    pub fn add_assign(&mut self, other: &State) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &State, k: &CycScalar) {
        if k.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            let term = c * k;
            match self.terms.get_mut(m) {
                Some(e) => {
                    *e += &term;
                    if e.is_zero() {
                        self.terms.remove(m);
                    }
                }
                None => {
                    if !term.is_zero() {
                        self.terms.insert(m.clone(), term);
                    }
                }
            }
        }
    }

    pub fn plus(&self, other: &State) -> State {
        let mut s = self.clone();
        s.add_assign(other);
        s
    }

    pub fn minus(&self, other: &State) -> State {
        let mut s = self.clone();
        s.add_scaled(other, &CycScalar::from_i64(-1));
        s
    }

    pub fn scale(&self, k: &CycScalar) -> State {
        let mut s = State::zero();
        s.add_scaled(self, k);
        s
    }

    pub fn scale_q(&self, k: &Q) -> State {
        self.scale(&CycScalar::from_q(k.clone()))
    }

    /// Lattice weights present (the `h`-weights of the terms).
    pub fn weights(&self) -> Vec<Weight> {
        let mut w: Vec<Weight> = self.terms.keys().map(|m| m.lattice.clone()).collect();
        w.dedup();
        w
    }

    pub fn max_conformal_weight(&self, rs: &RootSystem) -> Option<Q> {
        self.terms.keys().map(|m| m.conformal_weight(rs)).max()
    }

    /// Splits into components homogeneous in `(h-weight, conformal weight)`.
    pub fn components(&self, rs: &RootSystem) -> BTreeMap<(Weight, Q), State> {
        let mut out: BTreeMap<(Weight, Q), State> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry((m.lattice.clone(), m.conformal_weight(rs)))
                .or_default()
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// `P/Q` class if every term lies in the same class.
    pub fn gamma_class(&self, rs: &RootSystem) -> Option<usize> {
        let mut classes = self.terms.keys().map(|m| rs.gamma_class(&m.lattice));
        let first = classes.next()?;
        classes.all(|c| c == first).then_some(first)
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.as_rational().is_some())
    }

    pub fn from_terms<I: IntoIterator<Item = (FockMonomial, CycScalar)>>(it: I) -> State {
        let mut s = State::zero();
        for (m, c) in it {
            s.add_term(m, c);
        }
        s
    }

    /// Product in the commutative algebra `S(t^{-1} h[t^{-1}])`, acting on creators only.
    pub fn mul_creators(&self, p: &FockPoly) -> State {
        let mut s = State::zero();
        for (m, c) in &self.terms {
            for (cr, k) in p {
                let mono = FockMonomial { lattice: m.lattice.clone(), creators: merge_creators(&m.creators, cr) };
                s.add_term(mono, c.scale(k));
            }
        }
        s
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let cr: Vec<String> = m.creators.iter().map(|(n, i)| format!("a{}t^-{}", i + 1, n)).collect();
                let coeff = if c.is_one() { String::new() } else { format!("({c})") };
                format!("{}{}e^{}", coeff, cr.join(""), m.lattice)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl State {
    /// `{"terms":[{"coeff":[...],"creators":[[i,n],...],"lattice":[...]}]}` with
    /// coefficients in the power basis of `Q(zeta_{2L})` and 1-based `i`.
    pub fn to_json(&self, rs: &RootSystem) -> Value {
        let order = rs.cyclotomic_order();
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let coeff: Vec<String> = c
                    .coords(order)
                    .expect("coefficients live in Q(zeta_2L)")
                    .iter()
                    .map(fmt_q)
                    .collect();
                let creators: Vec<[u32; 2]> = m.creators.iter().map(|&(n, i)| [i as u32 + 1, n]).collect();
                json!({"coeff": coeff, "creators": creators, "lattice": m.lattice.0})
            })
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(rs: &RootSystem, v: &Value) -> Result<State> {
        let bad = |msg: &str| Error::Parse(format!("state: {msg}"));
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing \"terms\""))?;
        let order = rs.cyclotomic_order();
        let mut out = State::zero();
        for t in terms {
            let coeff: Vec<String> = match t.get("coeff") {
                Some(Value::Array(xs)) => xs
                    .iter()
                    .map(|x| match x {
                        Value::String(s) => Ok(s.clone()),
                        Value::Number(n) => Ok(n.to_string()),
                        _ => Err(bad("coefficient entries must be strings")),
                    })
                    .collect::<Result<_>>()?,
                Some(Value::String(s)) => vec![s.clone()],
                Some(Value::Number(n)) => vec![n.to_string()],
                _ => return Err(bad("missing \"coeff\"")),
            };
            let coeff = CycScalar::from_strings(order, &coeff)?;
            let lattice: Vec<i64> = serde_json::from_value(t.get("lattice").cloned().unwrap_or(Value::Null))
                .map_err(|e| bad(&e.to_string()))?;
            let lattice = Weight(lattice);
            rs.check_rank(&lattice)?;
            let pairs: Vec<(i64, i64)> = match t.get("creators") {
                None => Vec::new(),
                Some(c) => serde_json::from_value(c.clone()).map_err(|e| bad(&e.to_string()))?,
            };
            let mut creators = Vec::with_capacity(pairs.len());
            for (i, n) in pairs {
                if i < 1 || i as usize > rs.rank() || n < 1 {
                    return Err(bad(&format!("creator [{i},{n}] out of range")));
                }
                creators.push((n as u32, (i - 1) as u16));
            }
            out.add_term(FockMonomial::new(creators, lattice), coeff);
        }
        Ok(out)
    }
}

/// Creator polynomial of `h t^{-m}` expanded in the simple-root basis.
pub fn heis_creator(rs: &RootSystem, h: &Weight, m: u32) -> FockPoly {
    rs.root_coords(h)
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (vec![(m, i as u16)], c))
        .collect()
}

pub fn one_poly() -> FockPoly {
    FockPoly::from([(Vec::new(), Q::one())])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let rs = RootSystem::new("A2").unwrap();
        let mut s = State::exp(Weight(vec![1, 0]));
        s.add_term(
            FockMonomial::new(vec![(2, 1), (1, 0)], Weight(vec![0, 1])),
            CycScalar::exp_i_pi(&crate::rational::q(1, 3)).scale(&qi(-2)),
        );
        let v = s.to_json(&rs);
        assert_eq!(v["terms"][0]["coeff"].as_array().unwrap().len(), 2);
        assert_eq!(State::from_json(&rs, &v).unwrap(), s);
        let bad = serde_json::json!({"terms": [{"coeff": ["1"], "creators": [[3, 1]], "lattice": [0, 0]}]});
        assert!(State::from_json(&rs, &bad).is_err());
    }
}
