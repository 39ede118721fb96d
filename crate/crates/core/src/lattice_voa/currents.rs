//! The affine currents `x t^m` realized by zero-weight and root vectors, and
//! exact checks of their brackets.

use std::cell::RefCell;
use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::rc::Rc;

use num_rational::Rational64;
use num_traits::{CheckedAdd, CheckedMul, One, ToPrimitive, Zero};

use super::modes::{AffineGen, LatticeVoa};
use super::state::{Creators, FockMonomial, State};
use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::rational::{qi, Q};
use crate::root_data::Weight;

/// `AffineGen` as `c * e^alpha` or as the Cartan element `alpha_i`.
enum Current {
    Exp(i64, Weight),
    Cartan(Weight),
}

fn current(voa: &LatticeVoa, g: &AffineGen) -> Result<Current> {
    let rs = voa.rs();
    match g {
        AffineGen::E(a) | AffineGen::F(a) if !rs.is_root(a) => Err(Error::NotARoot(a.0.clone())),
        AffineGen::E(a) => Ok(Current::Exp(1, a.clone())),
        AffineGen::F(a) => Ok(Current::Exp(rs.epsilon_sign(a, &-a), -a)),
        AffineGen::H(i) if *i == 0 || *i > rs.rank() => Err(Error::OutOfRange(format!("h_{i}"))),
        AffineGen::H(i) => Ok(Current::Cartan(rs.alpha(*i))),
    }
}

/// `([x t^m, y t^n] v, [x, y] t^{m+n} v + m delta_{m+n,0} (x, y) v)`, with the
/// bracket of the realized Chevalley basis: `[h, e_a] = (h, a) e_a`,
/// `[e_a, e_b] = eps(a, b) e_{a+b}` and `[e_a, e_{-a}] = eps(a, -a) a`.
pub fn affine_bracket_sides(voa: &LatticeVoa, x: &AffineGen, m: i64, y: &AffineGen, n: i64, v: &State) -> Result<(State, State)> {
    let rs = voa.rs();
    let lhs = voa
        .affine_act(x, m, &voa.affine_act(y, n, v)?)?
        .minus(&voa.affine_act(y, n, &voa.affine_act(x, m, v)?)?);
    let central = if m + n == 0 { qi(m) } else { Q::zero() };
    let mn = qi(m + n);
    let rhs = match (current(voa, x)?, current(voa, y)?) {
        (Current::Cartan(a), Current::Cartan(b)) => v.scale_q(&(central * rs.inner(&a, &b))),
        (Current::Cartan(h), Current::Exp(c, b)) => voa.exp_mode(&b, &mn, v).scale_q(&(qi(c) * rs.inner(&h, &b))),
        (Current::Exp(c, a), Current::Cartan(h)) => voa.exp_mode(&a, &mn, v).scale_q(&(qi(-c) * rs.inner(&h, &a))),
        (Current::Exp(ca, a), Current::Exp(cb, b)) => {
            let sum = &a + &b;
            let c = qi(ca * cb);
            if sum.is_zero() {
                let e = qi(rs.epsilon_sign(&a, &b));
                voa.heis_act(&a, m + n, v).plus(&v.scale_q(&central)).scale_q(&(c * e))
            } else if rs.is_root(&sum) {
                voa.exp_mode(&sum, &mn, v).scale_q(&(c * qi(rs.epsilon_sign(&a, &b))))
            } else {
                State::zero()
            }
        }
    };
    Ok((lhs, rhs))
}

/// Sparse vector over interned monomials with 64-bit rational coefficients.
///
/// The bracket checks only meet rational coefficients of moderate size, and
/// `Rational64` avoids the allocation and gcd cost of big rationals. All
/// arithmetic is checked; overflow is reported as an error.
type Sparse = HashMap<u32, Rational64>;

type Image = Rc<Vec<(u32, Rational64)>>;

fn overflow() -> Error {
    Error::Unsupported("coefficient exceeds the 64-bit range of the bracket check".into())
}

fn small(q: &Q) -> Result<Rational64> {
    match (q.numer().to_i64(), q.denom().to_i64()) {
        (Some(n), Some(d)) => Ok(Rational64::new(n, d)),
        _ => Err(overflow()),
    }
}

fn axpy(out: &mut Sparse, m: u32, c: Rational64) -> Result<()> {
    if c.is_zero() {
        return Ok(());
    }
    match out.entry(m) {
        Entry::Occupied(mut e) => {
            let sum = e.get().checked_add(&c).ok_or_else(overflow)?;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
        Entry::Vacant(e) => {
            e.insert(c);
        }
    }
    Ok(())
}

#[derive(Default)]
struct Interner {
    ids: HashMap<FockMonomial, u32>,
    monomials: Vec<FockMonomial>,
}

impl Interner {
    fn id(&mut self, m: &FockMonomial) -> u32 {
        if let Some(&k) = self.ids.get(m) {
            return k;
        }
        let k = self.monomials.len() as u32;
        self.monomials.push(m.clone());
        self.ids.insert(m.clone(), k);
        k
    }
}

/// Memoized action of a fixed list of currents on Fock monomials.
pub struct CurrentTable<'a> {
    voa: &'a LatticeVoa,
    gens: Vec<AffineGen>,
    names: RefCell<Interner>,
    cache: RefCell<HashMap<(u32, usize, i64), Image>>,
    /// `e_alpha t^m` on `(creators, mu)` up to the sign `eps(alpha, mu)` and the
    /// lattice shift, keyed by `(g, creators, m + (alpha, mu))`.
    shapes: RefCell<HashMap<(usize, Creators, i64), Shape>>,
}

type Shape = Rc<Vec<(Creators, Rational64)>>;

impl<'a> CurrentTable<'a> {
    /// `e_alpha` for every root and every `h_i`, a basis of `g`. The `f_alpha`
    /// are `+-e_{-alpha}` and add nothing.
    pub fn chevalley(voa: &'a LatticeVoa) -> Self {
        let rs = voa.rs();
        let mut gens: Vec<AffineGen> = rs.roots().into_iter().map(AffineGen::E).collect();
        gens.extend((1..=rs.rank()).map(AffineGen::H));
        CurrentTable { voa, gens, names: RefCell::default(), cache: RefCell::default(), shapes: RefCell::default() }
    }

    pub fn gens(&self) -> &[AffineGen] {
        &self.gens
    }

    fn sparse(&self, s: &State) -> Result<Sparse> {
        let mut out = Sparse::new();
        let mut names = self.names.borrow_mut();
        for (m, c) in s.terms() {
            let q = c.as_rational().ok_or_else(|| Error::Unsupported("irrational coefficient".into()))?;
            axpy(&mut out, names.id(m), small(&q)?)?;
        }
        Ok(out)
    }

    fn state(&self, v: &Sparse) -> State {
        let names = self.names.borrow();
        let mut out = State::zero();
        for (&k, c) in v {
            let q = Q::new((*c.numer()).into(), (*c.denom()).into());
            out.add_q(names.monomials[k as usize].clone(), q);
        }
        out
    }

    fn image(&self, g: usize, m: i64, mono: u32) -> Result<Image> {
        if let Some(image) = self.cache.borrow().get(&(mono, g, m)) {
            return Ok(image.clone());
        }
        let v = self.names.borrow().monomials[mono as usize].clone();
        let image: Image = match &self.gens[g] {
            AffineGen::E(alpha) => {
                let rs = self.voa.rs();
                let eps = Rational64::from_integer(rs.epsilon_sign(alpha, &v.lattice));
                let lattice = alpha + &v.lattice;
                let shape = self.shape(g, alpha, m, &v)?;
                let mut names = self.names.borrow_mut();
                let image = shape.iter().map(|(cr, c)| (names.id(&FockMonomial::new(cr.clone(), lattice.clone())), c * eps)).collect();
                Rc::new(image)
            }
            gen => {
                let s = self.voa.affine_act(gen, m, &State::monomial(v, CycScalar::one()))?;
                Rc::new(self.sparse(&s)?.into_iter().collect())
            }
        };
        self.cache.borrow_mut().insert((mono, g, m), image.clone());
        Ok(image)
    }

    /// The image of `e_alpha t^m` depends on `mu` only through `eps(alpha, mu)`,
    /// the shift by `alpha` and the integer `(alpha, mu)`.
    fn shape(&self, g: usize, alpha: &Weight, m: i64, v: &FockMonomial) -> Result<Shape> {
        let rs = self.voa.rs();
        let pairing = rs.inner(alpha, &v.lattice).to_integer().to_i64().ok_or_else(overflow)?;
        let key = (g, v.creators.clone(), m + pairing);
        if let Some(shape) = self.shapes.borrow().get(&key) {
            return Ok(shape.clone());
        }
        let s = self.voa.exp_mode(alpha, &qi(m), &State::monomial(v.clone(), CycScalar::one()));
        let eps = Rational64::from_integer(rs.epsilon_sign(alpha, &v.lattice));
        let mut shape = Vec::new();
        for (mono, c) in s.terms() {
            let q = c.as_rational().ok_or_else(|| Error::Unsupported("irrational coefficient".into()))?;
            shape.push((mono.creators.clone(), small(&q)? * eps));
        }
        let shape = Rc::new(shape);
        self.shapes.borrow_mut().insert(key, shape.clone());
        Ok(shape)
    }

    /// `x t^m v` for the `g`-th listed current.
    pub fn act(&self, g: usize, m: i64, v: &State) -> Result<State> {
        let mut out = Sparse::new();
        self.act_into(g, m, &self.sparse(v)?, Rational64::one(), &mut out)?;
        Ok(self.state(&out))
    }

    /// `out += scale * x t^m v`.
    fn act_into(&self, g: usize, m: i64, v: &Sparse, scale: Rational64, out: &mut Sparse) -> Result<()> {
        for (&mono, c) in v {
            let k = c.checked_mul(&scale).ok_or_else(overflow)?;
            for &(w, d) in self.image(g, m, mono)?.iter() {
                axpy(out, w, d.checked_mul(&k).ok_or_else(overflow)?)?;
            }
        }
        Ok(())
    }

    /// `[x, y]` as a combination of the listed currents, and the form `(x, y)`.
    fn bracket(&self, x: usize, y: usize) -> Result<(Vec<(usize, Q)>, Q)> {
        let rs = self.voa.rs();
        let index_of_exp = |w: &Weight| -> Option<(usize, i64)> {
            self.gens.iter().enumerate().find_map(|(k, g)| match current(self.voa, g) {
                Ok(Current::Exp(c, a)) if &a == w => Some((k, c)),
                _ => None,
            })
        };
        let cartan = |a: &Weight, scale: Q| -> Vec<(usize, Q)> {
            rs.root_coords(a)
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| {
                    let k = self.gens.iter().position(|g| *g == AffineGen::H(i + 1)).expect("h_i listed");
                    (k, c * &scale)
                })
                .collect()
        };
        Ok(match (current(self.voa, &self.gens[x])?, current(self.voa, &self.gens[y])?) {
            (Current::Cartan(a), Current::Cartan(b)) => (vec![], rs.inner(&a, &b)),
            (Current::Cartan(h), Current::Exp(_, b)) => (vec![(y, rs.inner(&h, &b))], Q::zero()),
            (Current::Exp(_, a), Current::Cartan(h)) => (vec![(x, -rs.inner(&h, &a))], Q::zero()),
            (Current::Exp(ca, a), Current::Exp(cb, b)) => {
                let sum = &a + &b;
                let c = qi(ca * cb * rs.epsilon_sign(&a, &b));
                if sum.is_zero() {
                    (cartan(&a, c.clone()), c)
                } else if rs.is_root(&sum) {
                    let (k, ck) = index_of_exp(&sum).ok_or_else(|| Error::NotARoot(sum.0.clone()))?;
                    (vec![(k, c / qi(ck))], Q::zero())
                } else {
                    (vec![], Q::zero())
                }
            }
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct BracketReport {
    pub checks: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

/// Checks `[x t^m, y t^n] v = [x, y] t^{m+n} v + m delta_{m+n,0} (x, y) v` for
/// all listed currents, `|m|, |n| <= max_mode` and every test state. Both
/// sides are antisymmetric under `(x, m) <-> (y, n)`, so only `x <= y` is run,
/// and `m < n` when `x = y`.
pub fn check_affine_brackets(table: &CurrentTable<'_>, tests: &[State], max_mode: i64) -> Result<BracketReport> {
    let n_gens = table.gens().len();
    let mut brackets = HashMap::new();
    for x in 0..n_gens {
        for y in x..n_gens {
            brackets.insert((x, y), table.bracket(x, y)?);
        }
    }
    let modes: Vec<i64> = (-max_mode..=max_mode).collect();
    let mut report = BracketReport::default();
    for v in tests {
        let sv = table.sparse(v)?;
        let mut first: HashMap<(usize, i64), Sparse> = HashMap::new();
        for g in 0..n_gens {
            for &m in &modes {
                let mut out = Sparse::new();
                table.act_into(g, m, &sv, Rational64::one(), &mut out)?;
                first.insert((g, m), out);
            }
        }
        for x in 0..n_gens {
            for y in x..n_gens {
                let (terms, form) = &brackets[&(x, y)];
                let terms: Vec<(usize, Rational64)> = terms.iter().map(|(k, c)| Ok((*k, small(c)?))).collect::<Result<_>>()?;
                let form = small(form)?;
                for &m in &modes {
                    for &n in &modes {
                        // for x = y the case (n, m) is the negative of (m, n)
                        if x == y && m >= n {
                            continue;
                        }
                        let mut diff = Sparse::new();
                        table.act_into(x, m, &first[&(y, n)], Rational64::one(), &mut diff)?;
                        table.act_into(y, n, &first[&(x, m)], -Rational64::one(), &mut diff)?;
                        for (k, c) in &terms {
                            table.act_into(*k, m + n, &sv, -c, &mut diff)?;
                        }
                        if m + n == 0 && !form.is_zero() {
                            let c = Rational64::from_integer(m).checked_mul(&form).ok_or_else(overflow)?;
                            for (&w, d) in &sv {
                                axpy(&mut diff, w, -d.checked_mul(&c).ok_or_else(overflow)?)?;
                            }
                        }
                        report.checks += 1;
                        if !diff.is_empty() {
                            report.failures += 1;
                            report.first_failure.get_or_insert_with(|| {
                                format!("[{:?} t^{m}, {:?} t^{n}] on {v}", table.gens()[x], table.gens()[y])
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_voa::basis::monomials_up_to;
    use crate::root_data::RootSystem;

    #[test]
    fn a1_brackets_low_weight() {
        let voa = LatticeVoa::new(RootSystem::new("A1").unwrap());
        let table = CurrentTable::chevalley(&voa);
        let tests: Vec<State> = (0..2)
            .flat_map(|g| monomials_up_to(voa.rs(), g, &qi(2)))
            .map(|m| State::monomial(m, CycScalar::from_i64(1)))
            .collect();
        let report = check_affine_brackets(&table, &tests, 2).unwrap();
        assert_eq!(report.failures, 0, "{:?}", report.first_failure);
        assert_eq!(report.checks, tests.len() * (3 * 25 + 3 * 10));
    }

    #[test]
    fn single_bracket_sides() {
        let voa = LatticeVoa::new(RootSystem::new("A2").unwrap());
        let (a1, a2) = (voa.rs().alpha(1), voa.rs().alpha(2));
        let v = voa.exp(&Weight(vec![1, 0]));
        for (x, y) in [(AffineGen::E(a1.clone()), AffineGen::E(a2.clone())), (AffineGen::E(a1.clone()), AffineGen::F(a1)), (AffineGen::H(2), AffineGen::F(a2))] {
            let (l, r) = affine_bracket_sides(&voa, &x, 1, &y, -1, &v).unwrap();
            assert_eq!(l, r);
        }
        assert!(affine_bracket_sides(&voa, &AffineGen::E(Weight(vec![1, 0])), 0, &AffineGen::H(1), 0, &v).is_err());
    }
}
