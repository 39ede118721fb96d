use std::collections::{BTreeMap, VecDeque};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{Span, Vector};
use crate::rational::{binom_int, qi, Q};

use super::character::QCharacter;
use super::model::{mat_vec, zero_matrix, Chevalley, GModuleModel, Matrix};

/// A graded `g[t]`-module: a `g`-module with degrees on its basis and the
/// matrices of `x t^m` for `m >= 1` (absent ones act by zero).
#[derive(Clone, Debug)]
pub struct CurrentModule {
    pub model: GModuleModel,
    pub degrees: Vec<i64>,
    currents: BTreeMap<(Chevalley, u32), Matrix>,
}

impl CurrentModule {
    /// Evaluation at `t = 0`: everything in degree 0, `x t^m = 0` for `m >= 1`.
    pub fn evaluation(model: GModuleModel) -> Self {
        let degrees = vec![0; model.dim()];
        CurrentModule { model, degrees, currents: BTreeMap::new() }
    }

    pub fn with_degrees(model: GModuleModel, degrees: Vec<i64>) -> Result<Self> {
        if degrees.len() != model.dim() {
            return Err(Error::Precondition("one degree per basis vector".into()));
        }
        Ok(CurrentModule { model, degrees, currents: BTreeMap::new() })
    }

    /// Sets the matrix of `g t^m`, `m >= 1`. It must raise the degree by
    /// exactly `m`, which makes the `t`-action nilpotent.
    pub fn set_current(&mut self, g: Chevalley, m: u32, matrix: Matrix) -> Result<()> {
        if m == 0 {
            return Err(Error::Precondition("degree-0 action comes from the g-module".into()));
        }
        for (row, entries) in matrix.iter().enumerate() {
            for (col, x) in entries.iter().enumerate() {
                if !x.is_zero() && self.degrees[row] != self.degrees[col] + m as i64 {
                    return Err(Error::Precondition(format!(
                        "t-action is not nilpotent: {g:?} t^{m} maps degree {} to {}",
                        self.degrees[col], self.degrees[row]
                    )));
                }
            }
        }
        self.currents.insert((g, m), matrix);
        Ok(())
    }

    pub fn action(&self, g: Chevalley, m: u32) -> Option<Matrix> {
        if m == 0 {
            Some(self.model.matrix(g))
        } else {
            self.currents.get(&(g, m)).cloned()
        }
    }

    pub fn max_current(&self) -> u32 {
        self.currents.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Contragredient module: degrees negate, `x t^m` acts by minus the transpose.
    pub fn dual(&self, rs: &crate::root_data::RootSystem) -> CurrentModule {
        let neg_t = |a: &Matrix| -> Matrix {
            let n = a.len();
            let mut out = zero_matrix(n, n);
            for (i, row) in a.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    out[j][i] = -x.clone();
                }
            }
            out
        };
        CurrentModule {
            model: super::model::dual_model(rs, &self.model),
            degrees: self.degrees.iter().map(|d| -d).collect(),
            currents: self.currents.iter().map(|(k, m)| (*k, neg_t(m))).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `U[t] = U (x) C[t]`.
    T,
    /// `U[t^-1] = U[t, t^-1] / U (x) tC[t]`.
    TInverse,
}

/// Basis element `u_index (x) t^power`, keyed as `(power, index)`.
pub type GlobalVector = Vector<(i64, usize)>;

/// `U[t]` or `U[t^-1]` with the action
/// `x t^m . u (x) t^k = sum_j C(m, j) (x t^j u) (x) t^{m+k-j}`.
#[derive(Clone, Debug)]
pub struct GlobalModule {
    pub base: CurrentModule,
    pub direction: Direction,
}

pub fn globalize(base: CurrentModule, direction: Direction) -> GlobalModule {
    GlobalModule { base, direction }
}

impl GlobalModule {
    fn keeps(&self, power: i64) -> bool {
        match self.direction {
            Direction::T => power >= 0,
            Direction::TInverse => power <= 0,
        }
    }

    pub fn degree(&self, key: &(i64, usize)) -> i64 {
        self.base.degrees[key.1] + key.0
    }

    pub fn act(&self, g: Chevalley, m: u32, v: &GlobalVector) -> GlobalVector {
        let n = self.base.model.dim();
        let mut out = GlobalVector::new();
        for j in 0..=m {
            let Some(mat) = self.base.action(g, j) else { continue };
            let c = qi(binom_int(m as i64, j as i64));
            for (&(k, u), x) in v {
                let power = m as i64 + k - j as i64;
                if !self.keeps(power) {
                    continue;
                }
                let mut unit = vec![Q::zero(); n];
                unit[u] = x * &c;
                for (row, y) in mat_vec(&mat, &unit).into_iter().enumerate() {
                    if y.is_zero() {
                        continue;
                    }
                    let e = out.entry((power, row)).or_insert_with(Q::zero);
                    *e += y;
                    if e.is_zero() {
                        out.remove(&(power, row));
                    }
                }
            }
        }
        out
    }

    /// Basis vectors with `|degree| <= bound`.
    pub fn basis(&self, bound: i64) -> Vec<(i64, usize)> {
        let mut out = Vec::new();
        for (u, &d) in self.base.degrees.iter().enumerate() {
            for step in 0..=bound + d.abs() {
                let power = match self.direction {
                    Direction::T => step,
                    Direction::TInverse => -step,
                };
                let key = (power, u);
                if self.degree(&key).abs() <= bound {
                    out.push(key);
                }
            }
        }
        out.sort();
        out
    }

    pub fn character(&self, bound: i64) -> QCharacter {
        let mut ch = QCharacter::zero();
        for key in self.basis(bound) {
            ch.add_term(self.degree(&key), &self.base.model.weights[key.1], 1);
        }
        ch
    }

    /// Dimension of the part of degree `<= bound` generated from `seeds` by
    /// `x t^m`, together with the dimension of the whole truncation. Only
    /// meaningful for `U[t]`, where the action raises the degree.
    pub fn generated_dim(&self, seeds: &[GlobalVector], bound: i64) -> (usize, usize) {
        let rank = self.base.model.rank();
        let gens = Chevalley::all(rank);
        let mut span: Span<(i64, usize)> = Span::new();
        let mut queue: VecDeque<GlobalVector> = VecDeque::new();
        let in_range = |v: &GlobalVector| v.keys().all(|k| self.degree(k) <= bound);
        for s in seeds {
            if in_range(s) && span.insert(s) {
                queue.push_back(s.clone());
            }
        }
        while let Some(v) = queue.pop_front() {
            for &g in &gens {
                for m in 0..=bound.max(0) as u32 {
                    let w = self.act(g, m, &v);
                    if !w.is_empty() && in_range(&w) && span.insert(&w) {
                        queue.push_back(w);
                    }
                }
            }
        }
        (span.dim(), self.basis(bound).len())
    }
}

/// `(u_1 (x) t^k, u_2 (x) t^l) = delta_{k+l,0} (u_1, u_2)` between `U[t]` and
/// `(U^*)[t^-1]`, with the dual basis pairing.
pub fn pairing(a: &GlobalVector, b: &GlobalVector) -> Q {
    let mut out = Q::zero();
    for (&(k, u), x) in a {
        if let Some(y) = b.get(&(-k, u)) {
            out += x * y;
        }
    }
    out
}

/// Checks `(x.a, b) + (a, x.b) = 0` for all basis pairs up to `bound` and all
/// `x t^m` with `m <= bound`.
pub fn check_duality(up: &GlobalModule, down: &GlobalModule, bound: i64) -> bool {
    let gens = Chevalley::all(up.base.model.rank());
    let unit = |k: (i64, usize)| GlobalVector::from([(k, Q::from_integer(1.into()))]);
    let ups = up.basis(bound);
    let downs = down.basis(bound);
    for &g in &gens {
        for m in 0..=bound as u32 {
            for &a in &ups {
                let xa = up.act(g, m, &unit(a));
                for &b in &downs {
                    let xb = down.act(g, m, &unit(b));
                    if !(pairing(&xa, &unit(b)) + pairing(&unit(a), &xb)).is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::RootSystem;
    use crate::weyl_characters::character::ch_global;
    use crate::weyl_characters::model::exterior_model;

    fn one() -> Q {
        qi(1)
    }

    #[test]
    fn degree_one_action() {
        // With a nontrivial x t^1 the formula has two terms.
        let a1 = RootSystem::new("A1").unwrap();
        let model = exterior_model(&a1, 1).unwrap();
        let mut u = CurrentModule::with_degrees(model, vec![0, 1]).unwrap();
        let mut ft = zero_matrix(2, 2);
        ft[1][0] = qi(5);
        u.set_current(Chevalley::F(1), 1, ft).unwrap();
        let g = globalize(u, Direction::T);
        let v = GlobalVector::from([((0, 0), one())]);
        let out = g.act(Chevalley::F(1), 1, &v);
        // f t^0 u_0 (x) t^1 + f t^1 u_0 (x) t^0
        assert_eq!(out, GlobalVector::from([((1, 1), one()), ((0, 1), qi(5))]));
    }

    #[test]
    fn rejects_non_nilpotent() {
        let a1 = RootSystem::new("A1").unwrap();
        let mut u = CurrentModule::evaluation(exterior_model(&a1, 1).unwrap());
        let mut m = zero_matrix(2, 2);
        m[1][0] = one();
        assert!(matches!(u.set_current(Chevalley::F(1), 1, m), Err(Error::Precondition(_))));
    }

    #[test]
    fn characters_and_duality() {
        for (name, i) in [("A1", 1), ("A2", 1), ("A2", 2), ("A3", 2)] {
            let rs = RootSystem::new(name).unwrap();
            let u = CurrentModule::evaluation(exterior_model(&rs, i).unwrap());
            let up = globalize(u.clone(), Direction::T);
            let ch = up.character(3);
            let fin = QCharacter::constant(&u.model.character());
            for k in 0..=3 {
                assert_eq!(ch.slice(k), fin.slice(0));
            }
            assert_eq!(ch.truncated(3), ch_global(&rs, &rs.omega(i), 3).unwrap());
            let down = globalize(u.dual(&rs), Direction::TInverse);
            let dch = down.character(3);
            for k in 0..=3 {
                assert_eq!(dch.slice(-k), u.dual(&rs).model.character());
            }
            assert!(check_duality(&up, &down, 3));
            let hw = u.model.highest_vectors()[0];
            let (got, full) = up.generated_dim(&[GlobalVector::from([((0, hw), one())])], 3);
            assert_eq!(got, full);
        }
    }

    #[test]
    fn shifted_seed_misses_degree_zero() {
        let a2 = RootSystem::new("A2").unwrap();
        let u = CurrentModule::evaluation(exterior_model(&a2, 1).unwrap());
        let up = globalize(u, Direction::T);
        assert_eq!(up.generated_dim(&[], 2), (0, 9));
        let (got, full) = up.generated_dim(&[GlobalVector::from([((1, 0), one())])], 2);
        assert_eq!((got, full), (6, 9));
    }
}
