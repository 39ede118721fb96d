//! Invariant suites run by `latvoa verify`.

use clap::ValueEnum;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use latvoa::cyclotomic::CycScalar;
use latvoa::filtration_ring::{fundamental_lift, m_coefficient, Filtration, Ring};
use latvoa::lattice_voa::checks::{check_borcherds, check_locality, locality_order};
use latvoa::lattice_voa::currents::{check_affine_brackets, CurrentTable};
use latvoa::lattice_voa::{monomials_up_to, LatticeVoa, State};
use latvoa::rational::{fmt_q, frac, qi, Q};
use latvoa::typea_plucker::{
    all_relation_series, ch_w_two_fund, coefficient_vanishes, is_semistandard, k_statistic, kernel_highest_vector, max_level,
    quadratic_kernel, relation_span_dims, verify_series, Column, Route,
};
use latvoa::weyl_characters::{
    ch_global, character_dim, irreducible_character, local_weyl_character, local_weyl_dim, omega_or_zero,
};
use latvoa::{Kind, Result, RootSystem, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    VoaAxioms,
    Filtration,
    Relations,
    Characters,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::VoaAxioms => "voa-axioms",
            Suite::Filtration => "filtration",
            Suite::Relations => "relations",
            Suite::Characters => "characters",
        }
    }

    /// Cutoff used when `--cutoff` is not given.
    pub fn default_cutoff(self) -> u32 {
        match self {
            Suite::VoaAxioms => 3,
            Suite::Filtration => 3,
            Suite::Relations => 2,
            Suite::Characters => 3,
        }
    }
}

/// One named check: how many instances ran and the first failing one.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub count: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
    pub note: Option<String>,
}

impl Check {
    fn new(name: &str) -> Self {
        Check { name: name.to_string(), count: 0, failures: 0, first_failure: None, note: None }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "passed": self.passed(),
            "count": self.count,
            "failures": self.failures,
            "first_failure": self.first_failure,
            "note": self.note,
        })
    }
}

pub struct Report {
    pub suite: Suite,
    pub root_system: String,
    pub cutoff: u32,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.name(),
            "root_system": self.root_system,
            "cutoff": self.cutoff,
            "seed": self.seed,
            "passed": self.passed(),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {} on {} (cutoff {}, seed {})\n", self.suite.name(), self.root_system, self.cutoff, self.seed);
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {} ({} checked, {} failed)\n", c.name, c.count, c.failures));
            if let Some(f) = &c.first_failure {
                out.push_str(&format!("     first failure: {f}\n"));
            }
            if let Some(n) = &c.note {
                out.push_str(&format!("     {n}\n"));
            }
        }
        out.push_str(if self.passed() { "all checks passed\n" } else { "some checks failed\n" });
        out
    }
}

pub struct Settings {
    pub cutoff: u32,
    pub seed: u64,
    pub max_dim: usize,
}

pub fn run(suite: Suite, rs: &RootSystem, settings: &Settings) -> Result<Report> {
    let voa = LatticeVoa::new(rs.clone());
    let checks = match suite {
        Suite::VoaAxioms => voa_axioms(&voa, settings)?,
        Suite::Filtration => filtration(&voa, settings)?,
        Suite::Relations => relations(&voa, settings)?,
        Suite::Characters => characters(&voa, settings)?,
    };
    Ok(Report { suite, root_system: rs.name(), cutoff: settings.cutoff, seed: settings.seed, checks })
}

fn unit(m: latvoa::lattice_voa::FockMonomial) -> State {
    State::monomial(m, CycScalar::one())
}

/// All monomials of conformal weight `<= cutoff`, over every class.
fn monomial_pool(rs: &RootSystem, cutoff: &Q) -> Vec<State> {
    (0..rs.representatives().len()).flat_map(|g| monomials_up_to(rs, g, cutoff)).map(unit).collect()
}

fn voa_axioms(voa: &LatticeVoa, settings: &Settings) -> Result<Vec<Check>> {
    let rs = voa.rs();
    let cutoff = qi(settings.cutoff as i64);
    let small = qi((settings.cutoff as i64).min(2));
    let pool = monomial_pool(rs, &small);
    let vac = voa.vacuum();

    let mut vacuum = Check::new("vacuum axiom: |0>_(n) a = delta_{n,-1} a");
    let mut creation = Check::new("creation: a_(-1)|0> = a and a_(n)|0> = 0 for n >= 0");
    for a in &pool {
        for n in -3..=2 {
            let got = voa.vertex_mode(&vac, &qi(n), a);
            let want = if n == -1 { a.clone() } else { State::zero() };
            vacuum.record(got == want, || format!("n = {n}, a = {a}"));
            if n >= -1 {
                let got = voa.vertex_mode(a, &qi(n), &vac);
                let want = if n == -1 { a.clone() } else { State::zero() };
                creation.record(got == want, || format!("n = {n}, a = {a}"));
            }
        }
    }

    let mut translation = Check::new("translation: (Ta)_(n) b = -n a_(n-1) b");
    let tiny = monomial_pool(rs, &qi(1));
    for a in &tiny {
        let ta = voa.translation(a);
        for b in &tiny {
            let (Some(wa), Some(wb)) = (a.weights().first().cloned(), b.weights().first().cloned()) else { continue };
            let offset = frac(&-rs.inner(&wa, &wb));
            for k in -3..=1 {
                let n = &offset + qi(k);
                let lhs = voa.vertex_mode(&ta, &n, b);
                let rhs = voa.vertex_mode(a, &(&n - qi(1)), b).scale_q(&-n.clone());
                translation.record(lhs == rhs, || format!("a = {a}, b = {b}, n = {}", fmt_q(&n)));
            }
        }
    }

    let mut grading = Check::new("conformal weight: omega_(1) v = ((mu,mu)/2 + degree) v");
    for g in 0..rs.representatives().len() {
        for m in monomials_up_to(rs, g, &cutoff) {
            let cw = m.conformal_weight(rs);
            let v = unit(m);
            let ok = voa.conformal_weight_op(&v) == v.scale_q(&cw);
            grading.record(ok, || format!("v = {v}"));
        }
    }

    let mut brackets = Check::new("affine brackets of the realized currents, |m|, |n| <= 2");
    let table = CurrentTable::chevalley(voa);
    let report = check_affine_brackets(&table, &monomial_pool(rs, &small), 2)?;
    brackets.count = report.checks;
    brackets.failures = report.failures;
    brackets.first_failure = report.first_failure;

    let mut borcherds = Check::new("Borcherds identity at random admissible indices");
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let seeds = monomial_pool(rs, &qi(1));
    for _ in 0..24 {
        let (a, b, c) = (pick(&mut rng, &seeds), pick(&mut rng, &seeds), pick(&mut rng, &seeds));
        let (n, m, k) = random_indices(voa, &mut rng, &a, &b, &c, &qi(settings.cutoff as i64));
        let ok = check_borcherds(voa, &a, &b, &c, &n, &m, &k)?;
        borcherds.record(ok, || format!("a = {a}, b = {b}, c = {c}, (n, m, k) = ({}, {}, {})", fmt_q(&n), fmt_q(&m), fmt_q(&k)));
    }

    let mut locality = Check::new("locality of exponentials of minuscule weights at the minimal order");
    let gens: Vec<State> = rs.representatives().iter().skip(1).flat_map(|w| [voa.exp(w), voa.exp(&-w)]).collect();
    let tests = monomial_pool(rs, &qi(1));
    for a in &gens {
        for b in &gens {
            let Some(n) = locality_order(voa, a, b)? else { continue };
            let ok = check_locality(voa, a, b, &n, &tests, &cutoff)?;
            locality.record(ok, || format!("a = {a}, b = {b}, n = {}", fmt_q(&n)));
        }
    }

    Ok(vec![vacuum, creation, translation, grading, brackets, borcherds, locality])
}

fn pick(rng: &mut ChaCha8Rng, pool: &[State]) -> State {
    pool.choose(rng).expect("nonempty pool").clone()
}

/// Admissible `(n, m, k)` with the output weight `cw(a)+cw(b)+cw(c)-n-m-k-3` in `[0, cutoff]`.
fn random_indices(voa: &LatticeVoa, rng: &mut ChaCha8Rng, a: &State, b: &State, c: &State, cutoff: &Q) -> (Q, Q, Q) {
    let rs = voa.rs();
    let w = |s: &State| s.weights()[0].clone();
    let (wa, wb, wc) = (w(a), w(b), w(c));
    let off = |x: &Weight, y: &Weight| frac(&-rs.inner(x, y));
    let total = a.max_conformal_weight(rs).unwrap() + b.max_conformal_weight(rs).unwrap() + c.max_conformal_weight(rs).unwrap();
    loop {
        let n = off(&wa, &wb) + qi(rng.gen_range(-3..=1));
        let m = off(&wa, &wc) + qi(rng.gen_range(-3..=1));
        let k = off(&wb, &wc) + qi(rng.gen_range(-3..=1));
        let out = &total - &n - &m - &k - qi(3);
        if out >= Q::from_integer(0.into()) && &out <= cutoff {
            return (n, m, k);
        }
    }
}

fn require_type_a(rs: &RootSystem) -> Result<()> {
    if rs.kind() == Kind::A {
        Ok(())
    } else {
        Err(latvoa::Error::Unsupported(format!("suite needs a root system of type A, not {}", rs.name())))
    }
}

/// Dominant weights used by the filtration suite: fundamentals, `2 omega_1` and `omega_1 + omega_r`.
fn filtration_weights(rs: &RootSystem) -> Vec<Weight> {
    let r = rs.rank();
    let mut out: Vec<Weight> = (1..=r).map(|i| rs.omega(i)).collect();
    out.push(rs.omega(1).scale(2));
    if r > 1 {
        out.push(&rs.omega(1) + &rs.omega(r));
    }
    out
}

fn filtration(voa: &LatticeVoa, settings: &Settings) -> Result<Vec<Check>> {
    let rs = voa.rs();
    require_type_a(rs)?;
    let degrees = settings.cutoff;
    let r = rs.rank();

    let mut characters = Check::new("graded dimensions of G_lambda / G_<lambda match the dual global Weyl module");
    for lambda in filtration_weights(rs) {
        let cw = rs.inner(&lambda, &lambda) / qi(2) + qi(degrees as i64);
        let span = Filtration::new(voa, cw).with_max_dim(settings.max_dim).g_span(&lambda)?;
        let got: Vec<i64> = span.quotient_dims(degrees).into_iter().map(|d| d as i64).collect();
        let want = ch_global(rs, &rs.dual_weight(&lambda), degrees as i64)?.graded_dims(degrees as i64);
        characters.record(got == want, || format!("lambda = {lambda}: got {got:?}, expected {want:?}"));
    }

    let mut positive = Check::new("M-coefficient of extremal exponentials at m = 0 is +-e^lambda");
    let mut negative = Check::new("M-coefficients with a negative index vanish modulo G_<lambda");
    let mut symmetry = Check::new("phi is symmetric in its factors");
    let mut vertex = Check::new("vertex multiplication formula for s in {1, 2}");
    let max_r = (degrees as i64).min(2);
    for i in 1..=r {
        for j in i..=r {
            let lambda = &rs.omega(i) + &rs.omega(j);
            let (a, b) = (voa.exp(&rs.omega(i)), voa.exp(&rs.omega(j)));
            let top = m_coefficient(voa, &[a.clone(), b.clone()], &[0, 0])?;
            let e = voa.exp(&lambda);
            positive.record(top == e || top == e.scale_q(&-qi(1)), || format!("i = {i}, j = {j}: {top}"));

            let base = rs.inner(&lambda, &lambda) / qi(2);
            let filt = Filtration::new(voa, &base + qi(degrees as i64)).with_max_dim(settings.max_dim);
            let ring = Ring::from_filtration(filt);
            for (m1, m2) in [(-1, 0), (0, -1), (-1, 1), (1, -1), (-2, 2), (-1, 2)] {
                if m1 + m2 > degrees as i64 {
                    continue;
                }
                let v = m_coefficient(voa, &[a.clone(), b.clone()], &[m1, m2])?;
                let ok = ring.reduce(&lambda, &v)?.is_zero();
                negative.record(ok, || format!("i = {i}, j = {j}, m = ({m1}, {m2})"));
            }
            let (li, lj) = (fundamental_lift(rs, i)?, fundamental_lift(rs, j)?);
            for x in &li {
                for y in &lj {
                    for (m1, m2) in [(0, 0), (1, 0), (0, 1)] {
                        if m1 + m2 > degrees as i64 {
                            continue;
                        }
                        let xy = ring.phi_product(&[(x.clone(), m1), (y.clone(), m2)])?;
                        let yx = ring.phi_product(&[(y.clone(), m2), (x.clone(), m1)])?;
                        symmetry.record(xy.reduced == yx.reduced, || format!("{x} t^-{m1}, {y} t^-{m2}"));
                    }
                    for s in 1..=2 {
                        for rr in 0..=max_r {
                            if rr + s - 1 > degrees as i64 {
                                continue;
                            }
                            let ok = ring.vertex_mult_check(x, y, s, rr)?;
                            vertex.record(ok, || format!("{x}, {y}, s = {s}, r = {rr}"));
                        }
                    }
                }
            }
        }
    }
    Ok(vec![characters, positive, negative, symmetry, vertex])
}

fn relations(voa: &LatticeVoa, settings: &Settings) -> Result<Vec<Check>> {
    let rs = voa.rs();
    require_type_a(rs)?;
    let r = rs.rank();
    let degrees = settings.cutoff as i64;

    let mut kernel = Check::new("quadratic kernel has the dimension of its components");
    let mut codim = Check::new("free quadratic component minus relation span equals the dual global Weyl module");
    let mut vanish = Check::new("relation coefficients vanish in the filtration ring");
    let mut series = Check::new("relation series of highest weight vectors hold in the vertex algebra");
    for i in 1..=r {
        for j in 1..=i {
            let top = max_level(rs, i, j);
            let expect: i64 = (1..=top)
                .map(|l| {
                    let mu = &omega_or_zero(rs, i + l) + &omega_or_zero(rs, j - l);
                    irreducible_character(rs, &mu).map(|ch| character_dim(&ch))
                })
                .sum::<Result<i64>>()?;
            let got = quadratic_kernel(rs, i, j, 1)?.len() as i64;
            kernel.record(got == expect, || format!("(i, j) = ({i}, {j}): {got} vs {expect}"));

            let lambda = &rs.omega(i) + &rs.omega(j);
            let ch = ch_global(rs, &rs.dual_weight(&lambda), degrees)?;
            for n in 0..=degrees {
                let (free, span) = relation_span_dims(rs, i, j, n)?;
                let want = ch.dim_at(n);
                let got = free as i64 - span as i64;
                codim.record(got == want, || format!("(i, j) = ({i}, {j}), degree {n}: {free} - {span} vs {want}"));
            }

            let base = rs.inner(&lambda, &lambda) / qi(2);
            let filt = Filtration::new(voa, &base + qi(degrees)).with_max_dim(settings.max_dim);
            let ring = Ring::from_filtration(filt);
            for (l, s) in all_relation_series(rs, i, j, degrees)? {
                for c in &s.coefficients {
                    if c.terms.is_empty() {
                        continue;
                    }
                    let ok = coefficient_vanishes(&ring, c)?;
                    vanish.record(ok, || format!("(i, j) = ({i}, {j}), l = {l}, s = {}, degree {}", s.s, c.q));
                }
            }
            for l in 1..=top {
                let hv = kernel_highest_vector(rs, i, j, l)?;
                for s in 1..=l {
                    let max_r = degrees - s as i64 + 1;
                    if max_r < 0 {
                        continue;
                    }
                    let ok = verify_series(&ring, &hv, s, max_r)?;
                    series.record(ok, || format!("(i, j) = ({i}, {j}), l = {l}, s = {s}"));
                }
            }
        }
    }
    Ok(vec![kernel, codim, vanish, series])
}

fn characters(voa: &LatticeVoa, settings: &Settings) -> Result<Vec<Check>> {
    let rs = voa.rs();
    let r = rs.rank();
    let degrees = settings.cutoff as i64;

    let mut conformal = Check::new("conformal weight of e^{+-omega_i} is (omega_i, omega_i)/2");
    let mut values = Vec::new();
    for w in rs.representatives().iter().skip(1) {
        let want = rs.inner(w, w) / qi(2);
        for v in [voa.exp(w), voa.exp(&-w)] {
            let ok = voa.conformal_weight_op(&v) == v.scale_q(&want);
            conformal.record(ok, || format!("{v}"));
        }
        values.push(format!("{w}: {}", fmt_q(&want)));
    }
    conformal.note = Some(format!("values {}", values.join(", ")));

    let mut invariance = Check::new("irreducible characters are Weyl group invariant");
    let mut candidates: Vec<Weight> = (1..=r).map(|i| rs.omega(i)).collect();
    candidates.push(rs.omega(1).scale(2));
    if r > 1 {
        candidates.push(&rs.omega(1) + &rs.omega(r));
    }
    for lambda in &candidates {
        let ch = irreducible_character(rs, lambda)?;
        for (mu, mult) in &ch {
            for i in 1..=r {
                let ok = ch.get(&rs.reflect(i, mu)) == Some(mult);
                invariance.record(ok, || format!("lambda = {lambda}, mu = {mu}, s_{i}"));
            }
        }
    }

    let mut dims = Check::new("local Weyl module characters have the expected dimension");
    let mut global = Check::new("global Weyl characters have nonnegative coefficients");
    for lambda in &candidates {
        let ch = match local_weyl_character(rs, lambda) {
            Ok(ch) => ch,
            Err(latvoa::Error::Unsupported(_)) => continue,
            Err(e) => return Err(e),
        };
        let want = local_weyl_dim(rs, lambda)?;
        dims.record(ch.total_dim() as u64 == want, || format!("lambda = {lambda}: {} vs {want}", ch.total_dim()));
        let g = ch_global(rs, lambda, degrees)?;
        global.record(g.is_nonnegative(), || format!("lambda = {lambda}"));
    }

    let mut checks = vec![conformal, invariance, dims, global];
    if rs.kind() == Kind::A {
        let mut routes = Check::new("tableau and Littlewood-Richardson characters of W_{omega_i + omega_j} agree");
        let mut bounds = Check::new("k(I, J) lies in [0, min(j, r+1-i)] and vanishes exactly on semistandard pairs");
        for i in 1..=r {
            for j in 1..=i {
                let a = ch_w_two_fund(rs, i, j, Route::Tableaux)?;
                let b = ch_w_two_fund(rs, i, j, Route::Lr)?;
                routes.record(a == b, || format!("(i, j) = ({i}, {j})"));
                let top = j.min(r + 1 - i);
                for ci in Column::all(r + 1, i) {
                    for cj in Column::all(r + 1, j) {
                        let k = k_statistic(&ci, &cj)?;
                        let ok = k <= top && ((k == 0) == is_semistandard(&ci, &cj));
                        bounds.record(ok, || format!("I = {ci}, J = {cj}, k = {k}"));
                    }
                }
            }
        }
        checks.push(routes);
        checks.push(bounds);
    }
    Ok(checks)
}
