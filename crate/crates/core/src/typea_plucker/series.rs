use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::filtration_ring::Ring;
use crate::linalg::Span;
use crate::rational::{binom_int, fmt_q, qi, Q};
use crate::root_data::RootSystem;

use super::kernel::{kernel_component, max_level, plucker_lift, quadratic_kernel, tensor_pairs, Tensor};
use super::tableaux::Column;

/// `X_I t^{-k}`.
pub type Factor = (Column, u32);

/// Product of two generators of the free commutative ring. Factors of equal
/// column length are sorted; otherwise the longer column comes first.
pub type Monomial = (Factor, Factor);

pub fn monomial(a: Factor, b: Factor) -> Monomial {
    if a.0.len() == b.0.len() && b < a {
        (b, a)
    } else {
        (a, b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCoefficient {
    pub q: i64,
    pub terms: BTreeMap<Monomial, Q>,
}

/// Coefficients of `sum_m d^{(s-1)} A^m(z) B^m(z)` with
/// `X_I(z) = sum_k X_I t^{-k} z^k`, indexed by total `t`-degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSeries {
    pub i: usize,
    pub j: usize,
    pub s: usize,
    pub coefficients: Vec<SeriesCoefficient>,
}

impl RelationSeries {
    pub fn is_trivial(&self) -> bool {
        self.coefficients.iter().all(|c| c.terms.is_empty())
    }

    pub fn at_degree(&self, q: i64) -> Option<&SeriesCoefficient> {
        self.coefficients.iter().find(|c| c.q == q)
    }

    pub fn to_json(&self) -> Value {
        let coefficients: Vec<Value> = self
            .coefficients
            .iter()
            .map(|c| {
                let terms: Vec<Value> = c
                    .terms
                    .iter()
                    .map(|(((a, ka), (b, kb)), x)| {
                        json!({"monomial": [[a.label(), ka], [b.label(), kb]], "coeff": fmt_q(x)})
                    })
                    .collect();
                json!({"q": c.q, "terms": terms})
            })
            .collect();
        json!({"i": self.i, "j": self.j, "s": self.s, "trivial": self.is_trivial(), "coefficients": coefficients})
    }
}

fn shape(t: &Tensor) -> Result<(usize, usize)> {
    let mut it = t.keys().map(|(a, b)| (a.len(), b.len()));
    let first = it.next().ok_or_else(|| Error::Precondition("zero tensor".into()))?;
    if it.any(|x| x != first) {
        return Err(Error::Precondition("tensor mixes column lengths".into()));
    }
    Ok(first)
}

/// Largest `l` with `t` in `sum_{l' >= l}` components, if any.
pub fn kernel_level(rs: &RootSystem, t: &Tensor) -> Result<Option<usize>> {
    let (i, j) = shape(t)?;
    let mut level = None;
    for l in 1..=max_level(rs, i, j) {
        let mut span: Span<(Column, Column)> = Span::new();
        for row in quadratic_kernel(rs, i, j, l)? {
            span.insert(&row);
        }
        if span.contains(t) {
            level = Some(l);
        } else {
            break;
        }
    }
    Ok(level)
}

/// Series of a kernel element up to total `t`-degree `max_degree`.
pub fn relation_series(rs: &RootSystem, element: &Tensor, s: usize, max_degree: i64) -> Result<RelationSeries> {
    let (i, j) = shape(element)?;
    let level = kernel_level(rs, element)?.ok_or_else(|| Error::Precondition("tensor is not in the quadratic kernel".into()))?;
    if s == 0 || s > level {
        return Err(Error::OutOfRange(format!("s = {s} outside 1..={level}")));
    }
    Ok(series_unchecked(i, j, element, s, max_degree))
}

fn series_unchecked(i: usize, j: usize, element: &Tensor, s: usize, max_degree: i64) -> RelationSeries {
    let d = s as i64 - 1;
    let mut coefficients = Vec::new();
    for n in d..=max_degree {
        let mut terms: BTreeMap<Monomial, Q> = BTreeMap::new();
        for ((a, b), c) in element {
            for k in d..=n {
                let m = monomial((a.clone(), k as u32), (b.clone(), (n - k) as u32));
                let e = terms.entry(m.clone()).or_insert_with(Q::zero);
                *e += c * qi(binom_int(k, d));
                if e.is_zero() {
                    terms.remove(&m);
                }
            }
        }
        coefficients.push(SeriesCoefficient { q: n, terms });
    }
    RelationSeries { i, j, s, coefficients }
}

/// One series per basis element of each component `l` and each `s <= l`.
pub fn all_relation_series(rs: &RootSystem, i: usize, j: usize, max_degree: i64) -> Result<Vec<(usize, RelationSeries)>> {
    let mut out = Vec::new();
    for l in 1..=max_level(rs, i, j) {
        let basis = kernel_component(rs, i, j, l)?;
        for s in 1..=l {
            for t in &basis {
                out.push((l, series_unchecked(i, j, t, s, max_degree)));
            }
        }
    }
    Ok(out)
}

/// Monomials of total `t`-degree `n` in class `omega_i + omega_j`.
pub fn free_quadratic_basis(rs: &RootSystem, i: usize, j: usize, n: i64) -> Vec<Monomial> {
    let size = rs.rank() + 1;
    let mut out = std::collections::BTreeSet::new();
    for a in Column::all(size, i) {
        for b in Column::all(size, j) {
            for k in 0..=n {
                out.insert(monomial((a.clone(), k as u32), (b.clone(), (n - k) as u32)));
            }
        }
    }
    out.into_iter().collect()
}

/// `(dim free, dim span of relation coefficients)` in total degree `n`.
pub fn relation_span_dims(rs: &RootSystem, i: usize, j: usize, n: i64) -> Result<(usize, usize)> {
    let mut span: Span<Monomial> = Span::new();
    for (_, series) in all_relation_series(rs, i, j, n)? {
        if let Some(c) = series.at_degree(n) {
            span.insert(&c.terms);
        }
    }
    Ok((free_quadratic_basis(rs, i, j, n).len(), span.dim()))
}

/// Image of a series coefficient under `X_I t^{-k} X_J t^{-k'} -> phi(...)`;
/// true when it vanishes.
pub fn coefficient_vanishes(ring: &Ring<'_>, coeff: &SeriesCoefficient) -> Result<bool> {
    let voa = ring.filtration().voa();
    let mut lifts: BTreeMap<usize, BTreeMap<Column, crate::lattice_voa::State>> = BTreeMap::new();
    let mut total: Option<Vec<Q>> = None;
    for (((a, ka), (b, kb)), c) in &coeff.terms {
        for col in [a, b] {
            if let std::collections::btree_map::Entry::Vacant(e) = lifts.entry(col.len()) {
                e.insert(plucker_lift(voa, col.len())?);
            }
        }
        let el = ring.phi_product(&[(lifts[&a.len()][a].clone(), *ka as i64), (lifts[&b.len()][b].clone(), *kb as i64)])?;
        let acc = total.get_or_insert_with(|| vec![Q::zero(); el.reduced.len()]);
        if acc.len() != el.reduced.len() {
            return Err(Error::Precondition("monomials reduce in different components".into()));
        }
        for (x, y) in acc.iter_mut().zip(&el.reduced) {
            *x += c * y;
        }
    }
    Ok(total.is_none_or(|v| v.iter().all(Zero::is_zero)))
}

/// Runs the vertex-algebra check of a kernel element: the hypothesis on
/// `A_(M-s) B` and vanishing of the `z^r` coefficients for `r <= max_r`.
pub fn verify_series(ring: &Ring<'_>, element: &Tensor, s: usize, max_r: i64) -> Result<bool> {
    let pairs = tensor_pairs(ring.filtration().voa(), element)?;
    ring.verify_relation(&pairs, s as i64, max_r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_voa::LatticeVoa;
    use crate::typea_plucker::kernel::kernel_highest_vector;

    fn rs(name: &str) -> RootSystem {
        RootSystem::new(name).unwrap()
    }

    #[test]
    fn singlet_series() {
        let a2 = rs("A2");
        let singlet = quadratic_kernel(&a2, 2, 1, 1).unwrap().remove(0);
        let series = relation_series(&a2, &singlet, 1, 2).unwrap();
        assert!(!series.is_trivial());
        let c0 = series.at_degree(0).unwrap();
        assert_eq!(c0.terms.len(), 3);
        assert!(c0.terms.keys().all(|((_, k), (_, kk))| *k == 0 && *kk == 0));
        let c1 = series.at_degree(1).unwrap();
        assert_eq!(c1.terms.len(), 6);
        assert!(relation_series(&a2, &singlet, 2, 2).is_err());
        let json = series.to_json();
        assert_eq!(json["coefficients"][1]["q"], 1);
    }

    #[test]
    fn antisymmetric_series_is_trivial() {
        let a2 = rs("A2");
        for t in quadratic_kernel(&a2, 1, 1, 1).unwrap() {
            assert!(relation_series(&a2, &t, 1, 3).unwrap().is_trivial());
        }
        let hv = kernel_highest_vector(&a2, 1, 1, 1).unwrap();
        assert_eq!(hv.len(), 2);
    }

    #[test]
    fn span_dims_a2() {
        let a2 = rs("A2");
        for n in 0..=2 {
            let (free, rel) = relation_span_dims(&a2, 2, 1, n).unwrap();
            assert_eq!((free, rel), (9 * (n as usize + 1), 1));
            let (free, rel) = relation_span_dims(&a2, 1, 1, n).unwrap();
            assert_eq!(rel, 0, "{free}");
        }
    }

    #[test]
    fn singlet_vanishes_in_ring() {
        let v = LatticeVoa::new(rs("A2"));
        let ring = Ring::new(&v, qi(3));
        let singlet = quadratic_kernel(v.rs(), 2, 1, 1).unwrap().remove(0);
        let series = relation_series(v.rs(), &singlet, 1, 1).unwrap();
        for c in &series.coefficients {
            assert!(coefficient_vanishes(&ring, c).unwrap(), "q = {}", c.q);
        }
        assert!(verify_series(&ring, &singlet, 1, 1).unwrap());
        let mut flipped = series.at_degree(0).unwrap().clone();
        let first = flipped.terms.keys().next().unwrap().clone();
        flipped.terms.entry(first).and_modify(|c| *c = -c.clone());
        assert!(!coefficient_vanishes(&ring, &flipped).unwrap());
        let mut wrong = singlet.clone();
        let key = wrong.keys().next().unwrap().clone();
        wrong.entry(key).and_modify(|c| *c = -c.clone());
        assert!(!verify_series(&ring, &wrong, 1, 1).unwrap_or(false));
    }
}
