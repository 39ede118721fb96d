use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{qi, Q};
use crate::root_data::{Kind, RootSystem, Weight};

use super::character::WeightMap;

/// Dense matrix, `m[row][col]`.
pub type Matrix = Vec<Vec<Q>>;

/// Chevalley generator, 1-based simple root index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chevalley {
    E(usize),
    F(usize),
    H(usize),
}

impl Chevalley {
    pub fn all(rank: usize) -> Vec<Chevalley> {
        (1..=rank).flat_map(|a| [Chevalley::E(a), Chevalley::F(a), Chevalley::H(a)]).collect()
    }
}

pub fn zero_matrix(rows: usize, cols: usize) -> Matrix {
    vec![vec![Q::zero(); cols]; rows]
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = zero_matrix(n, m);
    for i in 0..n {
        for (l, bl) in b.iter().enumerate().take(k) {
            let x = &a[i][l];
            if x.is_zero() {
                continue;
            }
            for j in 0..m {
                if !bl[j].is_zero() {
                    out[i][j] += x * &bl[j];
                }
            }
        }
    }
    out
}

fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

fn mat_scale(a: &Matrix, c: &Q) -> Matrix {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    mat_sub(&mat_mul(a, b), &mat_mul(b, a))
}

fn transpose(a: &Matrix) -> Matrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_vec(a: &Matrix, v: &[Q]) -> Vec<Q> {
    a.iter().map(|r| r.iter().zip(v).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum()).collect()
}

/// A finite-dimensional `g`-module given by explicit Chevalley matrices.
#[derive(Clone, Debug)]
pub struct GModuleModel {
    /// Basis labels; for exterior powers, the index set `I`.
    pub labels: Vec<Vec<usize>>,
    pub weights: Vec<Weight>,
    pub e: Vec<Matrix>,
    pub f: Vec<Matrix>,
    pub highest_weight: Weight,
}

impl GModuleModel {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn rank(&self) -> usize {
        self.e.len()
    }

    pub fn h(&self, a: usize) -> Matrix {
        let n = self.dim();
        let mut out = zero_matrix(n, n);
        for (k, w) in self.weights.iter().enumerate() {
            out[k][k] = qi(w[a - 1]);
        }
        out
    }

    pub fn matrix(&self, g: Chevalley) -> Matrix {
        match g {
            Chevalley::E(a) => self.e[a - 1].clone(),
            Chevalley::F(a) => self.f[a - 1].clone(),
            Chevalley::H(a) => self.h(a),
        }
    }

    pub fn index_of(&self, label: &[usize]) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn character(&self) -> WeightMap {
        let mut out = WeightMap::new();
        for w in &self.weights {
            *out.entry(w.clone()).or_insert(0) += 1;
        }
        out
    }

    /// Checks `[e_a, f_b] = delta_ab h_a`, `[h_a, e_b] = C_ab e_b`,
    /// `[h_a, f_b] = -C_ab f_b` and the Serre relations.
    pub fn check_relations(&self, rs: &RootSystem) -> bool {
        let r = self.rank();
        let c = rs.cartan();
        let zero = zero_matrix(self.dim(), self.dim());
        for a in 1..=r {
            let h = self.h(a);
            for b in 1..=r {
                let (eb, fb) = (&self.e[b - 1], &self.f[b - 1]);
                let ef = commutator(&self.e[a - 1], fb);
                if ef != if a == b { h.clone() } else { zero.clone() } {
                    return false;
                }
                let cab = qi(c[a - 1][b - 1]);
                if commutator(&h, eb) != mat_scale(eb, &cab) || commutator(&h, fb) != mat_scale(fb, &-cab.clone()) {
                    return false;
                }
                if a != b {
                    let times = (1 - c[a - 1][b - 1]) as usize;
                    let (mut xe, mut xf) = (eb.clone(), fb.clone());
                    for _ in 0..times {
                        xe = commutator(&self.e[a - 1], &xe);
                        xf = commutator(&self.f[a - 1], &xf);
                    }
                    if xe != zero || xf != zero {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Basis vectors killed by every `e_a` (in a weight basis these span the
    /// highest weight vectors when the weight spaces are one-dimensional).
    pub fn highest_vectors(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.e.iter().all(|m| m.iter().all(|row| row[k].is_zero()))).collect()
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut p = k;
        while p > 0 && cur[p - 1] == n - k + p {
            p -= 1;
        }
        if p == 0 {
            return out;
        }
        cur[p - 1] += 1;
        for q in p..k {
            cur[q] = cur[q - 1] + 1;
        }
    }
}

/// Increasing `i`-subsets of `{1..n}` in lexicographic order.
pub fn columns(n: usize, i: usize) -> Vec<Vec<usize>> {
    subsets(n, i)
}

/// Weight of `e_I = e_{i_1} ^ ... ^ e_{i_k}` in the fundamental basis.
pub fn exterior_weight(rank: usize, set: &[usize]) -> Weight {
    Weight((1..=rank).map(|a| set.contains(&a) as i64 - set.contains(&(a + 1)) as i64).collect())
}

/// `V_{omega_i} = Lambda^i C^{r+1}` for `A_r`, basis `X_I` over increasing
/// `i`-subsets. `e_a` replaces `a+1` by `a`, `f_a` replaces `a` by `a+1`;
/// the substituted index keeps its position, so no sign appears.
pub fn exterior_model(rs: &RootSystem, i: usize) -> Result<GModuleModel> {
    if rs.kind() != Kind::A {
        return Err(Error::Unsupported(format!("exterior model for {}", rs.name())));
    }
    let r = rs.rank();
    if i == 0 || i > r {
        return Err(Error::OutOfRange(format!("fundamental index {i} for {}", rs.name())));
    }
    let labels = subsets(r + 1, i);
    let n = labels.len();
    let weights: Vec<Weight> = labels.iter().map(|s| exterior_weight(r, s)).collect();
    let substitute = |from: usize, to: usize| -> Matrix {
        let mut m = zero_matrix(n, n);
        for (col, s) in labels.iter().enumerate() {
            if s.contains(&from) && !s.contains(&to) {
                let mut t: Vec<usize> = s.iter().map(|&x| if x == from { to } else { x }).collect();
                t.sort_unstable();
                let row = labels.iter().position(|l| *l == t).expect("subset");
                m[row][col] = Q::one();
            }
        }
        m
    };
    let e = (1..=r).map(|a| substitute(a + 1, a)).collect();
    let f = (1..=r).map(|a| substitute(a, a + 1)).collect();
    Ok(GModuleModel { labels, weights, e, f, highest_weight: rs.omega(i) })
}

/// Dual module on the dual basis: `x` acts by `-x^T`, weights negate.
pub fn dual_model(rs: &RootSystem, m: &GModuleModel) -> GModuleModel {
    let neg_t = |a: &Matrix| mat_scale(&transpose(a), &qi(-1));
    GModuleModel {
        labels: m.labels.clone(),
        weights: m.weights.iter().map(|w| -w).collect(),
        e: m.e.iter().map(neg_t).collect(),
        f: m.f.iter().map(neg_t).collect(),
        highest_weight: rs.dual_weight(&m.highest_weight),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl_characters::character::irreducible_character;

    #[test]
    fn exterior_dims_and_relations() {
        let a2 = RootSystem::new("A2").unwrap();
        let v = exterior_model(&a2, 1).unwrap();
        assert_eq!(v.labels, vec![vec![1], vec![2], vec![3]]);
        // f_1 sends X_1 to X_2
        assert_eq!(v.f[0][1][0], Q::one());
        assert_eq!(exterior_model(&a2, 2).unwrap().dim(), 3);
        let a3 = RootSystem::new("A3").unwrap();
        assert_eq!(exterior_model(&a3, 2).unwrap().dim(), 6);
        for (rs, i) in [(&a2, 1), (&a2, 2), (&a3, 2), (&a3, 3)] {
            let m = exterior_model(rs, i).unwrap();
            assert!(m.check_relations(rs));
            assert_eq!(m.character(), irreducible_character(rs, &rs.omega(i)).unwrap());
            let d = dual_model(rs, &m);
            assert!(d.check_relations(rs));
            assert_eq!(d.character(), irreducible_character(rs, &d.highest_weight).unwrap());
            let hv = d.highest_vectors();
            assert_eq!(hv.len(), 1);
            assert_eq!(d.weights[hv[0]], d.highest_weight);
        }
        assert!(exterior_model(&a2, 3).is_err());
        assert!(exterior_model(&RootSystem::new("D4").unwrap(), 1).is_err());
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(columns(4, 2).len(), 6);
        assert_eq!(columns(3, 0), vec![Vec::<usize>::new()]);
        assert!(columns(2, 3).is_empty());
    }
}
