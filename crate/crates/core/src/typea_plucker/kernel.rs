use std::collections::{BTreeMap, HashMap, VecDeque};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice_voa::{AffineGen, LatticeVoa, State};
use crate::linalg::{nullspace, Span, Vector};
use crate::rational::Q;
use crate::root_data::{RootSystem, Weight};
use crate::weyl_characters::{exterior_model, omega_or_zero, GModuleModel};

use super::tableaux::Column;

/// Element of `V_{omega_i} (x) V_{omega_j}` in the basis `X_I (x) X_J`.
pub type Tensor = BTreeMap<(Column, Column), Q>;

type Index = Vector<(usize, usize)>;

struct TensorSquare {
    left: GModuleModel,
    right: GModuleModel,
    n: usize,
}

impl TensorSquare {
    fn new(rs: &RootSystem, i: usize, j: usize) -> Result<Self> {
        Ok(TensorSquare { left: exterior_model(rs, i)?, right: exterior_model(rs, j)?, n: rs.rank() + 1 })
    }

    /// `x (x) 1 + 1 (x) x` for `x = e_a` (`raise`) or `f_a`.
    fn act(&self, a: usize, raise: bool, v: &Index) -> Index {
        let (ml, mr) = if raise { (&self.left.e[a - 1], &self.right.e[a - 1]) } else { (&self.left.f[a - 1], &self.right.f[a - 1]) };
        let mut out = Index::new();
        let mut push = |key: (usize, usize), c: Q| {
            let e = out.entry(key).or_insert_with(Q::zero);
            *e += c;
            if e.is_zero() {
                out.remove(&key);
            }
        };
        for (&(p, q), c) in v {
            for (row, entries) in ml.iter().enumerate() {
                if !entries[p].is_zero() {
                    push((row, q), c * &entries[p]);
                }
            }
            for (row, entries) in mr.iter().enumerate() {
                if !entries[q].is_zero() {
                    push((p, row), c * &entries[q]);
                }
            }
        }
        out
    }

    fn weight(&self, key: (usize, usize)) -> Weight {
        &self.left.weights[key.0] + &self.right.weights[key.1]
    }

    fn highest_vectors(&self, mu: &Weight) -> Vec<Index> {
        let slice: Vec<(usize, usize)> = (0..self.left.dim())
            .flat_map(|p| (0..self.right.dim()).map(move |q| (p, q)))
            .filter(|&k| &self.weight(k) == mu)
            .collect();
        let rank = self.left.rank();
        // Columns: slice vectors; rows: coordinates of all raised images.
        let mut rows: BTreeMap<(usize, (usize, usize)), Vec<Q>> = BTreeMap::new();
        for (col, &k) in slice.iter().enumerate() {
            for a in 1..=rank {
                for (key, c) in self.act(a, true, &Index::from([(k, Q::from_integer(1.into()))])) {
                    rows.entry((a, key)).or_insert_with(|| vec![Q::zero(); slice.len()])[col] = c;
                }
            }
        }
        let m: Vec<Vec<Q>> = rows.into_values().collect();
        nullspace(&m, slice.len())
            .into_iter()
            .map(|v| slice.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(k, c)| (*k, c)).collect())
            .collect()
    }

    fn generate(&self, seeds: Vec<Index>, span: &mut Span<(usize, usize)>) {
        let mut queue: VecDeque<Index> = VecDeque::new();
        for s in seeds {
            if span.insert(&s) {
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for a in 1..=self.left.rank() {
                let w = self.act(a, false, &v);
                if !w.is_empty() && span.insert(&w) {
                    queue.push_back(w);
                }
            }
        }
    }

    fn to_tensor(&self, v: &Index) -> Tensor {
        v.iter()
            .map(|(&(p, q), c)| {
                let i = Column::new(self.left.labels[p].clone(), self.n).expect("model label");
                let j = Column::new(self.right.labels[q].clone(), self.n).expect("model label");
                ((i, j), c.clone())
            })
            .collect()
    }
}

/// Largest admissible `l`: `min(j, r+1-i)`.
pub fn max_level(rs: &RootSystem, i: usize, j: usize) -> usize {
    j.min(rs.rank() + 1 - i)
}

fn check_levels(rs: &RootSystem, i: usize, j: usize, l: usize) -> Result<usize> {
    let r = rs.rank();
    if !(1 <= j && j <= i && i <= r) {
        return Err(Error::OutOfRange(format!("need 1 <= j <= i <= {r}, got i={i}, j={j}")));
    }
    let top = max_level(rs, i, j);
    if l == 0 || l > top {
        return Err(Error::OutOfRange(format!("l = {l} outside 1..={top}")));
    }
    Ok(top)
}

fn components(rs: &RootSystem, i: usize, j: usize, levels: std::ops::RangeInclusive<usize>) -> Result<Vec<Tensor>> {
    let sq = TensorSquare::new(rs, i, j)?;
    let mut span: Span<(usize, usize)> = Span::new();
    for lp in levels {
        let mu = &omega_or_zero(rs, i + lp) + &omega_or_zero(rs, j - lp);
        sq.generate(sq.highest_vectors(&mu), &mut span);
    }
    Ok(span.rows().map(|(_, row)| sq.to_tensor(row)).collect())
}

/// Basis of `sum_{l' >= l} V_{omega_{i+l'} + omega_{j-l'}}` inside
/// `V_{omega_i} (x) V_{omega_j}`, from highest weight vectors and lowering.
pub fn quadratic_kernel(rs: &RootSystem, i: usize, j: usize, l: usize) -> Result<Vec<Tensor>> {
    let top = check_levels(rs, i, j, l)?;
    components(rs, i, j, l..=top)
}

/// Basis of the single component `V_{omega_{i+l} + omega_{j-l}}`.
pub fn kernel_component(rs: &RootSystem, i: usize, j: usize, l: usize) -> Result<Vec<Tensor>> {
    check_levels(rs, i, j, l)?;
    components(rs, i, j, l..=l)
}

/// Highest weight vector of the `V_{omega_{i+l} + omega_{j-l}}` component.
pub fn kernel_highest_vector(rs: &RootSystem, i: usize, j: usize, l: usize) -> Result<Tensor> {
    check_levels(rs, i, j, l)?;
    let sq = TensorSquare::new(rs, i, j)?;
    let mu = &omega_or_zero(rs, i + l) + &omega_or_zero(rs, j - l);
    let hv = sq.highest_vectors(&mu);
    match hv.as_slice() {
        [v] => Ok(sq.to_tensor(v)),
        _ => Err(Error::Precondition(format!("expected one highest weight vector of weight {mu}, found {}", hv.len()))),
    }
}

/// `X_I -> c_I e^{wt I}`, with the signs `c_I` fixed by lowering from
/// `X_{1..i} -> e^{omega_i}` with the affine generators at `t^0`, so that the
/// map intertwines the exterior model with the zero modes.
pub fn plucker_lift(voa: &LatticeVoa, i: usize) -> Result<BTreeMap<Column, State>> {
    let rs = voa.rs();
    let model = exterior_model(rs, i)?;
    let n = rs.rank() + 1;
    let mut states: HashMap<usize, State> = HashMap::new();
    let top = model.index_of(&(1..=i).collect::<Vec<_>>()).expect("top label");
    states.insert(top, voa.exp(&rs.omega(i)));
    let mut queue = VecDeque::from([top]);
    while let Some(k) = queue.pop_front() {
        for a in 1..=rs.rank() {
            let Some(target) = (0..model.dim()).find(|&row| !model.f[a - 1][row][k].is_zero()) else { continue };
            if states.contains_key(&target) {
                continue;
            }
            let s = voa.affine_act(&AffineGen::F(rs.alpha(a)), 0, &states[&k])?;
            states.insert(target, s.scale_q(&model.f[a - 1][target][k].recip()));
            queue.push_back(target);
        }
    }
    if states.len() != model.dim() {
        return Err(Error::Precondition("lowering did not reach every Pluecker coordinate".into()));
    }
    states.into_iter().map(|(k, s)| Ok((Column::new(model.labels[k].clone(), n)?, s))).collect()
}

/// `sum c (A (x) B)` as lifted pairs of states.
pub fn tensor_pairs(voa: &LatticeVoa, t: &Tensor) -> Result<Vec<(State, State)>> {
    let Some(((ci, cj), _)) = t.iter().next() else { return Ok(vec![]) };
    let left = plucker_lift(voa, ci.len())?;
    let right = plucker_lift(voa, cj.len())?;
    Ok(t.iter().map(|((a, b), c)| (left[a].scale_q(c), right[b].clone())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl_characters::{character_dim, irreducible_character};

    fn rs(name: &str) -> RootSystem {
        RootSystem::new(name).unwrap()
    }

    #[test]
    fn kernel_dimensions() {
        let a2 = rs("A2");
        let k = quadratic_kernel(&a2, 2, 1, 1).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].len(), 3);
        let k = quadratic_kernel(&a2, 1, 1, 1).unwrap();
        assert_eq!(k.len(), 3);
        for t in &k {
            for ((a, b), c) in t {
                assert_eq!(t.get(&(b.clone(), a.clone())), Some(&-c.clone()));
            }
        }
        assert!(quadratic_kernel(&a2, 2, 1, 2).is_err());
        assert!(quadratic_kernel(&a2, 2, 1, 0).is_err());
        let a3 = rs("A3");
        let expect = |mus: &[Weight]| -> usize { mus.iter().map(|m| character_dim(&irreducible_character(&a3, m).unwrap()) as usize).sum() };
        assert_eq!(quadratic_kernel(&a3, 2, 2, 1).unwrap().len(), expect(&[Weight(vec![1, 0, 1]), a3.zero()]));
        assert_eq!(quadratic_kernel(&a3, 2, 2, 2).unwrap().len(), 1);
        assert_eq!(quadratic_kernel(&a3, 3, 1, 1).unwrap().len(), 1);
    }

    #[test]
    fn lift_intertwines_zero_modes() {
        for (name, i) in [("A1", 1), ("A2", 1), ("A2", 2), ("A3", 2)] {
            let v = LatticeVoa::new(rs(name));
            let model = exterior_model(v.rs(), i).unwrap();
            let lift = plucker_lift(&v, i).unwrap();
            assert_eq!(lift.len(), model.dim());
            for (k, label) in model.labels.iter().enumerate() {
                let col = Column::new(label.clone(), v.rs().rank() + 1).unwrap();
                for a in 1..=v.rs().rank() {
                    for (gen, mat) in [(AffineGen::E(v.rs().alpha(a)), &model.e[a - 1]), (AffineGen::F(v.rs().alpha(a)), &model.f[a - 1])] {
                        let got = v.affine_act(&gen, 0, &lift[&col]).unwrap();
                        let mut want = State::zero();
                        for (row, entries) in mat.iter().enumerate() {
                            if !entries[k].is_zero() {
                                let c2 = Column::new(model.labels[row].clone(), v.rs().rank() + 1).unwrap();
                                want.add_assign(&lift[&c2].scale_q(&entries[k]));
                            }
                        }
                        assert_eq!(got, want, "{name} {label:?} {gen:?}");
                    }
                }
            }
        }
    }
}
