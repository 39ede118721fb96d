//! Simply-laced root data: Cartan matrices, the weight lattice `P`, the root
//! lattice `Q`, the group `P/Q` and its structure functions.
//!
//! Weights are stored in the fundamental-weight basis. With the normalization
//! `(alpha, alpha) = 2` the Gram matrix of the fundamental weights is the
//! inverse Cartan matrix, and `(lambda, alpha_i)` is simply `lambda[i]`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Index, Neg, Sub};
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, is_integer, lcm_all, qi, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    A,
    D,
    E,
}

/// Integral weight in the fundamental-weight basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        Weight(self.0.iter().map(|c| c * k).collect())
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl Index<usize> for Weight {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    kind: Kind,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Q>>,
    /// `inv_den * cartan_inv`, integral.
    inv_num: Vec<Vec<i64>>,
    inv_den: i64,
    representatives: Vec<Weight>,
    gamma_exponent: i64,
    /// `B(omega_i, omega_j) = (-1)^{b[i][j]}`.
    eps_table: Vec<Vec<i64>>,
    phase_den: i64,
}

fn cartan_matrix(kind: Kind, rank: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; rank]; rank];
    let mut link = |a: usize, b: usize| {
        c[a - 1][b - 1] = -1;
        c[b - 1][a - 1] = -1;
    };
    match kind {
        Kind::A => {
            for i in 1..rank {
                link(i, i + 1);
            }
        }
        Kind::D => {
            for i in 1..rank - 1 {
                link(i, i + 1);
            }
            link(rank - 2, rank);
        }
        Kind::E => {
            link(1, 3);
            link(3, 4);
            link(2, 4);
            for i in 4..rank {
                link(i, i + 1);
            }
        }
    }
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    c
}

fn invert(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Q> = row.iter().map(|&x| qi(x)).collect();
            r.extend((0..n).map(|j| if i == j { qi(1) } else { qi(0) }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("Cartan matrix is invertible");
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Solves for `S` (strictly lower triangular, over GF(2)) with
/// `(C (S + S^T) C)_{ab} = C_{ab} mod 2` for `a > b`; free variables are set to 0.
fn cocycle_table(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let vars: Vec<(usize, usize)> = (0..r).flat_map(|i| (0..i).map(move |j| (i, j))).collect();
    let mut rows: Vec<(u64, bool)> = Vec::new();
    for a in 0..r {
        for b in 0..a {
            let mut mask = 0u64;
            for (t, &(i, j)) in vars.iter().enumerate() {
                if (cartan[a][i] * cartan[j][b] + cartan[a][j] * cartan[i][b]).rem_euclid(2) == 1 {
                    mask |= 1 << t;
                }
            }
            rows.push((mask, cartan[a][b].rem_euclid(2) == 1));
        }
    }
    let mut pivots = Vec::new();
    let mut next = 0;
    for t in 0..vars.len() {
        let Some(p) = (next..rows.len()).find(|&x| rows[x].0 >> t & 1 == 1) else { continue };
        rows.swap(next, p);
        for x in 0..rows.len() {
            if x != next && rows[x].0 >> t & 1 == 1 {
                rows[x].0 ^= rows[next].0;
                rows[x].1 ^= rows[next].1;
            }
        }
        pivots.push(t);
        next += 1;
    }
    assert!(rows[next..].iter().all(|&(_, v)| !v), "no sign cocycle for this Cartan matrix");
    let mut table = vec![vec![0i64; r]; r];
    for (row, &t) in rows.iter().zip(&pivots) {
        if row.1 {
            let (i, j) = vars[t];
            table[i][j] = 1;
        }
    }
    table
}

impl FromStr for RootSystem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RootSystem::new(s)
    }
}

impl RootSystem {
    /// Parses `"A1"`, `"A2"`, `"D4"`, `"E6"`, ...
    pub fn new(name: &str) -> Result<Self> {
        let bad = || Error::UnknownRootSystem(name.to_string());
        let name = name.trim();
        let mut chars = name.chars();
        let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Kind::A,
            Some('D') => Kind::D,
            Some('E') => Kind::E,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        let ok = match kind {
            Kind::A => (1..=8).contains(&rank),
            Kind::D => (4..=8).contains(&rank),
            Kind::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(bad());
        }
        Ok(Self::build(kind, rank))
    }

    fn build(kind: Kind, rank: usize) -> Self {
        let cartan = cartan_matrix(kind, rank);
        let cartan_inv = invert(&cartan);
        let inv_den = lcm_all(cartan_inv.iter().flatten().map(|x| i64::try_from(x.denom()).unwrap()));
        let inv_num = cartan_inv
            .iter()
            .map(|r| r.iter().map(|x| i64::try_from((x * qi(inv_den)).to_integer()).unwrap()).collect())
            .collect();
        let minuscule: Vec<usize> = match kind {
            Kind::A => (1..=rank).collect(),
            Kind::D => vec![1, rank - 1, rank],
            Kind::E => match rank {
                6 => vec![1, 6],
                7 => vec![7],
                _ => vec![],
            },
        };
        let mut rs = RootSystem {
            kind,
            rank,
            cartan,
            cartan_inv,
            inv_num,
            inv_den,
            representatives: vec![],
            gamma_exponent: 1,
            eps_table: vec![],
            phase_den: 1,
        };
        let mut reps = vec![Weight::zero(rank)];
        reps.extend(minuscule.iter().map(|&i| Weight::fundamental(rank, i)));
        rs.representatives = reps;
        rs.gamma_exponent = (1..=rs.representatives.len() as i64 * 4)
            .find(|&n| rs.representatives.iter().all(|c| rs.in_root_lattice(&c.scale(n))))
            .unwrap();
        rs.phase_den = lcm_all(rs.representatives.iter().flat_map(|a| {
            rs.representatives.iter().map(|b| i64::try_from(rs.inner(a, b).denom()).unwrap()).collect::<Vec<_>>()
        }));
        rs.eps_table = cocycle_table(&rs.cartan);
        rs
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{:?}{}", self.kind, self.rank)
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_inv(&self) -> &[Vec<Q>] {
        &self.cartan_inv
    }

    pub fn representatives(&self) -> &[Weight] {
        &self.representatives
    }

    /// `|P/Q|`.
    pub fn gamma_order(&self) -> usize {
        self.representatives.len()
    }

    /// Smallest `N` with `N (P/Q) = 0`.
    pub fn gamma_exponent(&self) -> i64 {
        self.gamma_exponent
    }

    /// `L`: lcm of the denominators of `(chi_i, chi_j)`. Phases live in `Q(zeta_{2L})`.
    pub fn phase_denominator(&self) -> i64 {
        self.phase_den
    }

    pub fn cyclotomic_order(&self) -> u32 {
        (2 * self.phase_den) as u32
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: w.rank() });
        }
        Ok(())
    }

    pub fn omega(&self, i: usize) -> Weight {
        Weight::fundamental(self.rank, i)
    }

    /// Simple root `alpha_i` in fundamental coordinates (row `i` of the Cartan matrix).
    pub fn alpha(&self, i: usize) -> Weight {
        Weight(self.cartan[i - 1].clone())
    }

    pub fn zero(&self) -> Weight {
        Weight::zero(self.rank)
    }

    /// `inv_den * (lambda, mu)`, integral.
    pub fn inner_scaled(&self, a: &Weight, b: &Weight) -> i64 {
        let mut acc = 0;
        for (i, ai) in a.0.iter().enumerate() {
            if *ai == 0 {
                continue;
            }
            let row = &self.inv_num[i];
            for (j, bj) in b.0.iter().enumerate() {
                acc += ai * row[j] * bj;
            }
        }
        acc
    }

    pub fn inner_denominator(&self) -> i64 {
        self.inv_den
    }

    /// The invariant form, normalized so roots have square length 2.
    pub fn inner(&self, a: &Weight, b: &Weight) -> Q {
        Q::new(self.inner_scaled(a, b).into(), self.inv_den.into())
    }

    pub fn try_inner(&self, a: &Weight, b: &Weight) -> Result<Q> {
        self.check_rank(a)?;
        self.check_rank(b)?;
        Ok(self.inner(a, b))
    }

    /// Coordinates of `lambda` in the simple-root basis.
    pub fn root_coords(&self, w: &Weight) -> Vec<Q> {
        self.cartan_inv
            .iter()
            .map(|row| row.iter().zip(&w.0).map(|(c, x)| c * qi(*x)).sum())
            .collect()
    }

    pub fn in_root_lattice(&self, w: &Weight) -> bool {
        self.root_coords(w).iter().all(is_integer)
    }

    /// `mu <= lambda`: `lambda - mu` is a nonnegative rational combination of simple roots.
    pub fn leq(&self, mu: &Weight, lambda: &Weight) -> bool {
        self.root_coords(&(lambda - mu)).iter().all(|x| !x.is_negative())
    }

    pub fn lt(&self, mu: &Weight, lambda: &Weight) -> bool {
        mu != lambda && self.leq(mu, lambda)
    }

    fn diagram_automorphism(&self, i: usize) -> usize {
        let r = self.rank;
        match self.kind {
            Kind::A => r + 1 - i,
            Kind::D if r % 2 == 1 && i >= r - 1 => 2 * r - 1 - i,
            Kind::E if r == 6 => match i {
                1 => 6,
                6 => 1,
                3 => 5,
                5 => 3,
                x => x,
            },
            _ => i,
        }
    }

    /// `lambda* = -w0 lambda`.
    pub fn dual_weight(&self, w: &Weight) -> Weight {
        let mut out = vec![0; self.rank];
        for i in 1..=self.rank {
            out[self.diagram_automorphism(i) - 1] = w.0[i - 1];
        }
        Weight(out)
    }

    /// Index `g` of the representative with `lambda - chi_g` in `Q`.
    pub fn gamma_class(&self, w: &Weight) -> usize {
        self.representatives
            .iter()
            .position(|c| self.in_root_lattice(&(w - c)))
            .expect("representatives cover P/Q")
    }

    /// `Delta(g, h) = -(chi_g, chi_h) mod Z`, returned in `[0, 1)`.
    pub fn delta(&self, g: usize, h: usize) -> Q {
        let x = -self.inner(&self.representatives[g], &self.representatives[h]);
        &x - x.floor()
    }

    /// `nu(g, h) = exp(i pi (chi_g, chi_h))`.
    pub fn nu(&self, g: usize, h: usize) -> CycScalar {
        CycScalar::exp_i_pi(&self.inner(&self.representatives[g], &self.representatives[h]))
    }

    fn b_parity_of(&self, a: &Weight, b: &Weight) -> i64 {
        let (g, h) = (self.gamma_class(a), self.gamma_class(b));
        let k = self.inner(&self.representatives[g], &self.representatives[h]) - self.inner(a, b);
        debug_assert!(is_integer(&k));
        i64::try_from(k.to_integer()).unwrap().rem_euclid(2)
    }

    /// `B(lambda, mu) = exp(-i pi (lambda, mu)) nu(p(lambda), p(mu))`, always `+-1`.
    pub fn bform_sign(&self, a: &Weight, b: &Weight) -> i64 {
        if self.b_parity_of(a, b) == 0 {
            1
        } else {
            -1
        }
    }

    pub fn bform(&self, a: &Weight, b: &Weight) -> CycScalar {
        CycScalar::from_i64(self.bform_sign(a, b))
    }

    /// The bimultiplicative `+-1` cocycle with `eps(omega_i, omega_j) = 1` for
    /// `i <= j`. The signs below the diagonal are chosen so that
    /// `eps(a, b) eps(b, a) = (-1)^{(a, b)}` on the root lattice.
    pub fn epsilon_sign(&self, a: &Weight, b: &Weight) -> i64 {
        let mut parity = 0i64;
        for i in 0..self.rank {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..i {
                if self.eps_table[i][j] != 0 {
                    parity += a.0[i] * b.0[j];
                }
            }
        }
        if parity.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    pub fn epsilon(&self, a: &Weight, b: &Weight) -> CycScalar {
        CycScalar::from_i64(self.epsilon_sign(a, b))
    }

    /// Braiding phase `eps(a, b) eps(b, a)^{-1} exp(i pi (a, b))` of `Y(e^a, z)` and `Y(e^b, w)`.
    ///
    /// Agrees with `nu(g, g)` on each representative and with `nu(0, h) = 1`.
    /// For distinct classes it can differ from `nu` by a sign.
    pub fn braiding(&self, a: &Weight, b: &Weight) -> CycScalar {
        let c = self.epsilon_sign(a, b) * self.epsilon_sign(b, a);
        CycScalar::exp_i_pi(&self.inner(a, b)).scale(&qi(c))
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        self.in_root_lattice(w) && self.inner_scaled(w, w) == 2 * self.inv_den
    }

    /// Positive roots, in fundamental coordinates, sorted by height.
    pub fn positive_roots(&self) -> Vec<Weight> {
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..self.rank {
            let mut a = vec![0; self.rank];
            a[i] = 1;
            seen.insert(a.clone());
            queue.push_back(a);
        }
        while let Some(a) = queue.pop_front() {
            for i in 0..self.rank {
                let mut b = a.clone();
                b[i] += 1;
                if seen.contains(&b) {
                    continue;
                }
                let norm: i64 = (0..self.rank)
                    .map(|x| (0..self.rank).map(|y| b[x] * self.cartan[x][y] * b[y]).sum::<i64>())
                    .sum();
                if norm == 2 {
                    seen.insert(b.clone());
                    queue.push_back(b);
                }
            }
        }
        let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
        roots.sort_by_key(|a| (a.iter().sum::<i64>(), a.clone()));
        roots
            .into_iter()
            .map(|a| {
                Weight((0..self.rank).map(|j| (0..self.rank).map(|i| a[i] * self.cartan[i][j]).sum()).collect())
            })
            .collect()
    }

    pub fn roots(&self) -> Vec<Weight> {
        let pos = self.positive_roots();
        let mut all = pos.clone();
        all.extend(pos.iter().map(|a| -a));
        all
    }

    pub fn reflect(&self, i: usize, w: &Weight) -> Weight {
        let k = w.0[i - 1];
        &w.clone() - &self.alpha(i).scale(k)
    }

    /// Weyl orbit of `w`, sorted descending (dominant element first).
    pub fn weyl_orbit(&self, w: &Weight) -> Vec<Weight> {
        let mut seen: HashSet<Weight> = HashSet::new();
        let mut queue = VecDeque::from([w.clone()]);
        seen.insert(w.clone());
        while let Some(x) = queue.pop_front() {
            for i in 1..=self.rank {
                let y = self.reflect(i, &x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<Weight> = seen.into_iter().collect();
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    /// Dominant weights `mu` with `mu <= lambda`.
    pub fn dominant_below(&self, lambda: &Weight) -> Vec<Weight> {
        let norm = self.inner_scaled(lambda, lambda);
        let bounds: Vec<i64> = (0..self.rank)
            .map(|i| {
                let d = self.inv_num[i][i];
                let mut b = 0;
                while (b + 1) * (b + 1) * d <= norm {
                    b += 1;
                }
                b
            })
            .collect();
        let mut out = Vec::new();
        let mut cur = vec![0i64; self.rank];
        loop {
            let w = Weight(cur.clone());
            if self.leq(&w, lambda) {
                out.push(w);
            }
            let mut k = 0;
            loop {
                if k == self.rank {
                    out.sort();
                    return out;
                }
                if cur[k] < bounds[k] {
                    cur[k] += 1;
                    break;
                }
                cur[k] = 0;
                k += 1;
            }
        }
    }

    /// Dimension of the fundamental local Weyl module `W_{omega_i}`.
    pub fn fundamental_weyl_dim(&self, i: usize) -> Result<u64> {
        let r = self.rank as i64;
        let i = i as i64;
        let binom = crate::rational::binom_int;
        match self.kind {
            Kind::A => Ok(binom(r + 1, i) as u64),
            Kind::D => {
                if i >= r - 1 {
                    Ok(1u64 << (r - 1))
                } else {
                    Ok((0..=i / 2).map(|k| binom(2 * r, i - 2 * k) as u64).sum())
                }
            }
            Kind::E => Err(Error::Unsupported(format!("fundamental Weyl module dimensions for {}", self.name()))),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name(),
            "kind": format!("{:?}", self.kind),
            "rank": self.rank,
            "cartan": self.cartan,
            "cartan_inv": self.cartan_inv.iter().map(|r| r.iter().map(fmt_q).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "gamma_order": self.gamma_order(),
            "gamma_exponent": self.gamma_exponent,
            "representatives": self.representatives,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn inner_products() {
        let a1 = RootSystem::new("A1").unwrap();
        assert_eq!(a1.inner(&w(&[1]), &w(&[1])), q(1, 2));
        let a2 = RootSystem::new("A2").unwrap();
        assert_eq!(a2.inner(&w(&[1, 0]), &w(&[0, 1])), q(1, 3));
        assert_eq!(a2.inner(&a2.alpha(1), &a2.alpha(2)), q(-1, 1));
        for rs in ["A3", "D4", "D5", "E6", "E7", "E8"] {
            let rs = RootSystem::new(rs).unwrap();
            for i in 1..=rs.rank() {
                for j in 1..=rs.rank() {
                    assert_eq!(rs.inner(&rs.alpha(i), &rs.alpha(j)), qi(rs.cartan()[i - 1][j - 1]));
                }
            }
        }
        assert!(a2.try_inner(&w(&[1]), &w(&[1, 0])).is_err());
    }

    #[test]
    fn partial_order() {
        let a1 = RootSystem::new("A1").unwrap();
        assert!(a1.leq(&w(&[0]), &w(&[2])));
        assert!(a1.leq(&w(&[0]), &w(&[1])));
        let a2 = RootSystem::new("A2").unwrap();
        assert!(!a2.leq(&w(&[1, 0]), &w(&[0, 1])));
        assert_eq!(a2.root_coords(&(&w(&[0, 1]) - &w(&[1, 0])))[0], q(-1, 3));
    }

    #[test]
    fn duals_and_classes() {
        let a2 = RootSystem::new("A2").unwrap();
        assert_eq!(a2.dual_weight(&w(&[1, 0])), w(&[0, 1]));
        let a1 = RootSystem::new("A1").unwrap();
        assert_eq!(a1.dual_weight(&w(&[1])), w(&[1]));
        let d4 = RootSystem::new("D4").unwrap();
        for i in 1..=4 {
            assert_eq!(d4.dual_weight(&d4.omega(i)), d4.omega(i));
        }
        assert_eq!(a1.gamma_class(&a1.alpha(1)), 0);
        assert_eq!(a1.gamma_class(&w(&[1])), 1);
        assert_eq!(a2.gamma_class(&w(&[1, 1])), 0);
        assert_eq!(d4.gamma_order(), 4);
        assert_eq!(d4.gamma_exponent(), 2);
        assert_eq!(RootSystem::new("A3").unwrap().gamma_exponent(), 4);
        assert_eq!(RootSystem::new("E8").unwrap().gamma_order(), 1);
        assert_eq!(RootSystem::new("E6").unwrap().gamma_order(), 3);
    }

    #[test]
    fn phase_denominators() {
        let l = |s: &str| RootSystem::new(s).unwrap().phase_denominator();
        assert_eq!(l("A1"), 2);
        assert_eq!(l("A2"), 3);
        assert_eq!(l("A3"), 4);
        assert_eq!(l("D4"), 2);
    }

    #[test]
    fn sl2_gamma_data() {
        let a1 = RootSystem::new("A1").unwrap();
        assert_eq!(a1.delta(1, 1), q(1, 2)); // -1/2 + Z
        assert_eq!(a1.delta(0, 1), q(0, 1));
        assert_eq!(a1.nu(1, 1), CycScalar::exp_i_pi(&q(1, 2)));
        assert!(a1.nu(0, 1).is_one());
        assert!(a1.nu(0, 0).is_one());
    }

    #[test]
    fn epsilon_commutator_on_roots() {
        for name in ["A1", "A2", "A3", "A4", "A7", "D4", "D5", "D8", "E6", "E7", "E8"] {
            let rs = RootSystem::new(name).unwrap();
            for i in 1..=rs.rank() {
                for j in 1..=rs.rank() {
                    let (a, b) = (rs.alpha(i), rs.alpha(j));
                    let c = rs.epsilon_sign(&a, &b) * rs.epsilon_sign(&b, &a);
                    let expected = if rs.cartan()[i - 1][j - 1] % 2 == 0 { 1 } else { -1 };
                    assert_eq!(c, expected, "{name} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn braiding_on_representatives() {
        for name in ["A1", "A2", "A3", "D4"] {
            let rs = RootSystem::new(name).unwrap();
            for (g, a) in rs.representatives().iter().enumerate() {
                assert_eq!(rs.braiding(a, a), rs.nu(g, g), "{name} {g}");
                assert_eq!(rs.braiding(&rs.zero(), a), rs.nu(0, g));
            }
        }
    }

    #[test]
    fn epsilon_values() {
        let a1 = RootSystem::new("A1").unwrap();
        assert_eq!(a1.epsilon_sign(&w(&[1]), &w(&[-1])), 1);
        assert_eq!(a1.epsilon_sign(&w(&[0]), &w(&[5])), 1);
        let a3 = RootSystem::new("A3").unwrap();
        for i in 1..=3 {
            for j in i..=3 {
                assert_eq!(a3.epsilon_sign(&a3.omega(i), &a3.omega(j)), 1);
            }
        }
    }

    #[test]
    fn roots_and_orbits() {
        assert_eq!(RootSystem::new("A2").unwrap().positive_roots().len(), 3);
        assert_eq!(RootSystem::new("D4").unwrap().positive_roots().len(), 12);
        assert_eq!(RootSystem::new("E6").unwrap().positive_roots().len(), 36);
        assert_eq!(RootSystem::new("E8").unwrap().positive_roots().len(), 120);
        let a3 = RootSystem::new("A3").unwrap();
        assert_eq!(a3.weyl_orbit(&a3.omega(2)).len(), 6);
        let a2 = RootSystem::new("A2").unwrap();
        assert_eq!(a2.weyl_orbit(&a2.omega(1)), vec![w(&[1, 0]), w(&[0, -1]), w(&[-1, 1])]);
    }

    #[test]
    fn dominant_weights_below() {
        let a1 = RootSystem::new("A1").unwrap();
        assert_eq!(a1.dominant_below(&w(&[3])), vec![w(&[0]), w(&[1]), w(&[2]), w(&[3])]);
        let a2 = RootSystem::new("A2").unwrap();
        let below = a2.dominant_below(&w(&[1, 1]));
        assert!(below.contains(&w(&[0, 0])));
        assert!(below.contains(&w(&[1, 0])) && below.contains(&w(&[0, 1])));
    }

    #[test]
    fn fundamental_dims() {
        let a3 = RootSystem::new("A3").unwrap();
        assert_eq!(a3.fundamental_weyl_dim(2).unwrap(), 6);
        let d4 = RootSystem::new("D4").unwrap();
        assert_eq!(d4.fundamental_weyl_dim(1).unwrap(), 8);
        assert_eq!(d4.fundamental_weyl_dim(2).unwrap(), 29);
        assert!(RootSystem::new("E6").unwrap().fundamental_weyl_dim(1).is_err());
    }

    #[test]
    fn parse_names() {
        assert!(RootSystem::new("B2").is_err());
        assert!(RootSystem::new("A0").is_err());
        assert!(RootSystem::new("D3").is_err());
        assert_eq!("d4".parse::<RootSystem>().unwrap().name(), "D4");
    }
}
