//! Exact row reduction of sparse rational vectors (by default indexed by Fock
//! monomials).

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{One, Zero};
use sha2::{Digest, Sha256};

use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::lattice_voa::{FockMonomial, State};
use crate::rational::{fmt_q, Q};

/// Sparse rational vector.
pub type Vector<K = FockMonomial> = BTreeMap<K, Q>;

/// Converts a state with rational coefficients.
pub fn to_vector(s: &State) -> Result<Vector> {
    s.terms()
        .map(|(m, c)| {
            c.as_rational()
                .map(|q| (m.clone(), q))
                .ok_or_else(|| Error::Unsupported("irrational coefficient in a filtration vector".into()))
        })
        .collect()
}

pub fn to_state(v: &Vector) -> State {
    State::from_terms(v.iter().map(|(m, c)| (m.clone(), CycScalar::from_q(c.clone()))))
}

fn axpy<K: Ord + Clone>(y: &mut Vector<K>, a: &Q, x: &Vector<K>) {
    for (m, c) in x {
        let e = y.entry(m.clone()).or_insert_with(Q::zero);
        *e += a * c;
        if e.is_zero() {
            y.remove(m);
        }
    }
}

/// A subspace kept in fully reduced echelon form.
///
/// Each row is keyed by its leading (largest) monomial, has coefficient 1 there
/// and no entries on any other row's pivot.
#[derive(Clone, Debug)]
pub struct Span<K = FockMonomial> {
    rows: BTreeMap<K, Vector<K>>,
}

impl<K> Default for Span<K> {
    fn default() -> Self {
        Span { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone + Debug> Span<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Normal form of `v` modulo the span.
    pub fn reduce(&self, v: &Vector<K>) -> Vector<K> {
        let mut out = v.clone();
        let hits: Vec<K> = v.keys().filter(|m| self.rows.contains_key(*m)).cloned().collect();
        for p in hits {
            if let Some(c) = out.get(&p).cloned() {
                axpy(&mut out, &-c, &self.rows[&p]);
            }
        }
        out
    }

    pub fn contains(&self, v: &Vector<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &Vector<K>) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.keys().next_back().cloned() else {
            return false;
        };
        let inv = r[&p].recip();
        if !inv.is_one() {
            r.values_mut().for_each(|c| *c *= &inv);
        }
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&p).cloned() {
                axpy(row, &-c, &r);
            }
        }
        self.rows.insert(p, r);
        true
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&K, &Vector<K>)> {
        self.rows.iter()
    }

    /// Coordinates of `v` with respect to the rows, if `v` lies in the span.
    pub fn coordinates(&self, v: &Vector<K>) -> Option<Vec<Q>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.rows.keys().map(|p| v.get(p).cloned().unwrap_or_else(Q::zero)).collect())
    }

    /// Feeds the canonical rows into a hasher.
    pub fn hash_into(&self, h: &mut Sha256) {
        for (p, row) in &self.rows {
            h.update(format!("{p:?}|").as_bytes());
            for (m, c) in row {
                h.update(format!("{m:?}:{};", fmt_q(c)).as_bytes());
            }
            h.update(b"\n");
        }
    }

    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        self.hash_into(&mut h);
        hex::encode(h.finalize())
    }
}

/// Basis of `{x : m x = 0}` for a dense `rows x ncols` matrix, one vector per
/// free column, with a 1 in that column.
pub fn nullspace(m: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = a[row][col].recip();
        a[row].iter_mut().for_each(|x| *x *= &inv);
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let c = a[r][col].clone();
                let pivot_row = a[row].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &c * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); ncols];
            v[free] = Q::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][free].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;
    use crate::root_data::Weight;

    fn mono(k: i64) -> FockMonomial {
        FockMonomial::exp(Weight(vec![k]))
    }

    fn vec_of(entries: &[(i64, i64)]) -> Vector {
        entries.iter().map(|&(k, c)| (mono(k), qi(c))).collect()
    }

    #[test]
    fn echelon_basics() {
        let mut s = Span::new();
        assert!(s.insert(&vec_of(&[(0, 1), (1, 2)])));
        assert!(s.insert(&vec_of(&[(1, 1), (2, 1)])));
        assert!(!s.insert(&vec_of(&[(0, 2), (1, 4)])));
        assert!(!s.insert(&vec_of(&[(0, 1), (1, 3), (2, 1)])));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&vec_of(&[(0, -1), (1, -1), (2, 1)])));
        assert!(!s.contains(&vec_of(&[(0, 1)])));
        let r = s.reduce(&vec_of(&[(2, 1), (0, 5)]));
        assert!(r.keys().all(|m| !s.rows.contains_key(m)));
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = vec![vec![qi(1), qi(2), qi(3)], vec![qi(2), qi(4), qi(6)]];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot: Q = m[0].iter().zip(v).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
        assert!(nullspace(&[vec![qi(1)]], 1).is_empty());
        assert_eq!(nullspace(&[], 2).len(), 2);
    }

    #[test]
    fn fingerprint_is_order_independent() {
        let a = vec_of(&[(0, 1), (1, 2)]);
        let b = vec_of(&[(1, 1), (2, 1)]);
        let mut s = Span::new();
        s.insert(&a);
        s.insert(&b);
        let mut t = Span::new();
        t.insert(&b);
        t.insert(&a.iter().map(|(m, c)| (m.clone(), c * qi(3))).collect());
        assert_eq!(s.fingerprint(), t.fingerprint());
    }
}
