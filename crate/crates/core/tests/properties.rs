use std::sync::OnceLock;

use proptest::prelude::*;

use latvoa::cyclotomic::CycScalar;
use latvoa::lattice_voa::{monomials_up_to, LatticeVoa, State};
use latvoa::rational::{frac, q, qi};
use latvoa::{RootSystem, Weight};

fn root_system() -> impl Strategy<Value = RootSystem> {
    prop::sample::select(vec!["A1", "A2", "A3", "A4", "D4", "D5", "E6", "E7"]).prop_map(|n| RootSystem::new(n).unwrap())
}

fn weight(rank: usize) -> impl Strategy<Value = Weight> {
    prop::collection::vec(-3i64..=3, rank).prop_map(Weight)
}

fn rs_and_weights(k: usize) -> impl Strategy<Value = (RootSystem, Vec<Weight>)> {
    root_system().prop_flat_map(move |rs| {
        let r = rs.rank();
        (Just(rs), prop::collection::vec(weight(r), k))
    })
}

/// Root-lattice element `sum_i c_i alpha_i`.
fn root_combination(rs: &RootSystem, c: &Weight) -> Weight {
    (1..=rs.rank()).fold(rs.zero(), |acc, i| &acc + &rs.alpha(i).scale(c.0[i - 1]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn delta_does_not_depend_on_representatives((rs, ws) in rs_and_weights(2), g in 0usize..8, h in 0usize..8) {
        let n = rs.representatives().len();
        let (g, h) = (g % n, h % n);
        let a = &rs.representatives()[g] + &root_combination(&rs, &ws[0]);
        let b = &rs.representatives()[h] + &root_combination(&rs, &ws[1]);
        prop_assert!((rs.delta(g, h) + rs.inner(&a, &b)).is_integer());
    }

    #[test]
    fn bform_is_a_symmetric_sign((rs, ws) in rs_and_weights(2)) {
        let (a, b) = (&ws[0], &ws[1]);
        let s = rs.bform_sign(a, b);
        prop_assert!(s == 1 || s == -1);
        prop_assert_eq!(s, rs.bform_sign(b, a));
        prop_assert_eq!(&rs.bform(a, b) * &rs.bform(a, b), CycScalar::one());
    }

    #[test]
    fn epsilon_is_a_bimultiplicative_cocycle((rs, ws) in rs_and_weights(3)) {
        let (a, b, c) = (&ws[0], &ws[1], &ws[2]);
        let e = |x: &Weight, y: &Weight| rs.epsilon_sign(x, y);
        prop_assert_eq!(e(&(a + b), c), e(a, c) * e(b, c));
        prop_assert_eq!(e(a, &(b + c)), e(a, b) * e(a, c));
        prop_assert_eq!(e(a, b) * e(&(a + b), c), e(a, &(b + c)) * e(b, c));
    }

    #[test]
    fn epsilon_commutator_on_the_root_lattice((rs, ws) in rs_and_weights(2)) {
        let (a, b) = (root_combination(&rs, &ws[0]), root_combination(&rs, &ws[1]));
        let parity = rs.inner(&a, &b).to_integer() % 2u8;
        let want = if parity == 0.into() { 1 } else { -1 };
        prop_assert_eq!(rs.epsilon_sign(&a, &b) * rs.epsilon_sign(&b, &a), want);
    }

    #[test]
    fn dominance_order_is_a_partial_order((rs, ws) in rs_and_weights(3)) {
        let (a, b, c) = (&ws[0], &ws[1], &ws[2]);
        prop_assert!(rs.leq(a, a));
        if rs.leq(a, b) && rs.leq(b, a) {
            prop_assert_eq!(a, b);
        }
        if rs.leq(a, b) && rs.leq(b, c) {
            prop_assert!(rs.leq(a, c));
        }
        // lowering by a simple root always goes down
        let lower = a - &rs.alpha(1);
        prop_assert!(rs.lt(&lower, a));
    }

    #[test]
    fn dual_weight_is_an_involution(rs in root_system()) {
        for i in 1..=rs.rank() {
            let w = rs.omega(i);
            prop_assert_eq!(rs.dual_weight(&rs.dual_weight(&w)), w);
        }
    }
}

fn voa(name: &str) -> &'static LatticeVoa {
    static A1: OnceLock<LatticeVoa> = OnceLock::new();
    static A2: OnceLock<LatticeVoa> = OnceLock::new();
    let cell = if name == "A1" { &A1 } else { &A2 };
    cell.get_or_init(|| LatticeVoa::new(RootSystem::new(name).unwrap()))
}

/// Monomials of conformal weight at most 2, all classes.
fn pool(name: &str) -> &'static [State] {
    static A1: OnceLock<Vec<State>> = OnceLock::new();
    static A2: OnceLock<Vec<State>> = OnceLock::new();
    let cell = if name == "A1" { &A1 } else { &A2 };
    cell.get_or_init(|| {
        let rs = voa(name).rs();
        (0..rs.representatives().len())
            .flat_map(|g| monomials_up_to(rs, g, &qi(2)))
            .map(|m| State::monomial(m, CycScalar::one()))
            .collect()
    })
}

fn lattice(s: &State) -> Weight {
    s.weights()[0].clone()
}

/// Two pool states and an admissible mode index `offset + k`.
fn pair_and_mode() -> impl Strategy<Value = (&'static str, usize, usize, i64)> {
    (prop::sample::select(vec!["A1", "A2"]), any::<prop::sample::Index>(), any::<prop::sample::Index>(), -3i64..=2)
        .prop_map(|(n, i, j, k)| (n, i.index(pool(n).len()), j.index(pool(n).len()), k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn translation_commutator((name, i, j, k) in pair_and_mode()) {
        let v = voa(name);
        let (a, b) = (&pool(name)[i], &pool(name)[j]);
        let n = frac(&-v.rs().inner(&lattice(a), &lattice(b))) + qi(k);
        let lhs = v.translation(&v.vertex_mode(a, &n, b)).minus(&v.vertex_mode(a, &n, &v.translation(b)));
        let rhs = v.vertex_mode(a, &(&n - qi(1)), b).scale_q(&-n.clone());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn vacuum_axioms((name, i, _j, k) in pair_and_mode()) {
        let v = voa(name);
        let a = &pool(name)[i];
        let vac = v.vacuum();
        if k >= -1 {
            let creation = v.vertex_mode(a, &qi(k), &vac);
            prop_assert_eq!(creation, if k == -1 { a.clone() } else { State::zero() });
        }
        let vacuum_mode = v.vertex_mode(&vac, &qi(k), a);
        prop_assert_eq!(vacuum_mode, if k == -1 { a.clone() } else { State::zero() });
    }

    #[test]
    fn off_parity_modes_vanish((name, i, j, k) in pair_and_mode(), shift in 1i64..3) {
        let v = voa(name);
        let (a, b) = (&pool(name)[i], &pool(name)[j]);
        let den = v.rs().gamma_exponent();
        let n = frac(&-v.rs().inner(&lattice(a), &lattice(b))) + qi(k) + q(shift, den);
        prop_assume!(!v.admissible(a, &n, b));
        prop_assert!(v.exp_mode(&lattice(a), &n, b).is_zero());
    }

    #[test]
    fn conformal_weight_eigenvalue((name, i, _j, _k) in pair_and_mode()) {
        let v = voa(name);
        let a = &pool(name)[i];
        let cw = a.max_conformal_weight(v.rs()).unwrap();
        prop_assert_eq!(v.conformal_weight_op(a), a.scale_q(&cw));
    }
}
