//! Enumeration of Fock monomials below a conformal weight.

use std::collections::{BTreeSet, VecDeque};

use crate::rational::{floor_i64, qi, Q};
use crate::root_data::{RootSystem, Weight};

use super::state::{Creators, FockMonomial};

/// Lattice points `mu` in class `g` with `(mu, mu) <= max_norm`.
///
/// Walks from the class representative by roots: any non-minimal point has a
/// root `alpha` with `(mu, alpha) >= 2`, so `mu - alpha` is strictly shorter
/// and every point of the ball is reached without leaving it.
pub fn lattice_points(rs: &RootSystem, g: usize, max_norm: &Q) -> Vec<Weight> {
    let start = rs.representatives()[g].clone();
    let mut seen = BTreeSet::new();
    if &rs.inner(&start, &start) > max_norm {
        return vec![];
    }
    let roots = rs.roots();
    let mut queue = VecDeque::from([start.clone()]);
    seen.insert(start);
    while let Some(mu) = queue.pop_front() {
        for a in &roots {
            let nu = &mu + a;
            if !seen.contains(&nu) && &rs.inner(&nu, &nu) <= max_norm {
                seen.insert(nu.clone());
                queue.push_back(nu);
            }
        }
    }
    seen.into_iter().collect()
}

/// Sorted creator multisets `(n, i)` with `sum n <= budget`.
pub fn creator_sets(rank: usize, budget: u32) -> Vec<Creators> {
    fn go(rank: usize, budget: u32, min: (u32, u16), cur: &mut Creators, out: &mut Vec<Creators>) {
        out.push(cur.clone());
        for n in min.0.max(1)..=budget {
            let first_i = if n == min.0 { min.1 } else { 0 };
            for i in first_i..rank as u16 {
                cur.push((n, i));
                go(rank, budget - n, (n, i), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(rank, budget, (1, 0), &mut Vec::new(), &mut out);
    out
}

/// All monomials of class `g` with conformal weight `<= cutoff`.
pub fn monomials_up_to(rs: &RootSystem, g: usize, cutoff: &Q) -> Vec<FockMonomial> {
    let mut out = Vec::new();
    for mu in lattice_points(rs, g, &(cutoff * qi(2))) {
        let budget = floor_i64(&(cutoff - rs.inner(&mu, &mu) / qi(2)));
        if budget < 0 {
            continue;
        }
        for c in creator_sets(rs.rank(), budget as u32) {
            out.push(FockMonomial::new(c, mu.clone()));
        }
    }
    out.sort();
    out
}
