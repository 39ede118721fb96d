mod parse;
mod suites;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use latvoa::filtration_ring::{Filtration, Ring};
use latvoa::lattice_voa::LatticeVoa;
use latvoa::rational::{fmt_q, parse_q, qi};
use latvoa::typea_plucker::{all_relation_series, ch_w_two_fund, is_semistandard, k_statistic, Column, Route};
use latvoa::weyl_characters::{ch_global, local_weyl_character, QCharacter};
use latvoa::{Error, RootSystem};

use suites::{Settings, Suite};

#[derive(Parser)]
#[command(name = "latvoa", version, about = "Exact computations in P/Q-graded lattice vertex algebras")]
struct Cli {
    /// Root system, e.g. A1, A2, D4, E6.
    #[arg(long, global = true, default_value = "A1")]
    rs: String,
    /// Truncation: q-degrees above the lowest conformal weight (span, char, verify)
    /// or the top t-degree (relations).
    #[arg(long, global = true)]
    cutoff: Option<u32>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit a plain-text summary instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    /// Write the result to a file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The mode A_(n) v.
    Mode {
        #[arg(long = "A", allow_hyphen_values = true)]
        a: String,
        /// Mode index as a rational, e.g. -3/2.
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// The span G_lambda and the graded dimensions of G_lambda / G_<lambda.
    Span {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Reduced coordinates of phi(A^1 t^-m_1 ... A^s t^-m_s); factors are `<state>@<m>`.
    Mult {
        #[arg(long = "factor", required = true, allow_hyphen_values = true)]
        factors: Vec<String>,
    },
    /// Run an invariant suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
    /// Graded character of the global (or local) Weyl module.
    Char {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Local Weyl module instead of the global one.
        #[arg(long)]
        local: bool,
    },
    /// Relation series generated by the quadratic kernel in degree omega_i + omega_j.
    Relations {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// Column pairs of shape omega_i + omega_j with their k statistic.
    Tableaux {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
}

enum Output {
    Json(Value),
    Text(String),
}

struct Outcome {
    json: Value,
    text: String,
    success: bool,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Outcome { json, text, success: true }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::RankMismatch { .. } | Error::UnknownRootSystem(_) => 2,
        _ => 3,
    }
}

fn character_text(ch: &QCharacter) -> String {
    let mut out = String::new();
    for (d, slice) in ch.terms() {
        let weights: Vec<String> = slice.iter().map(|(w, m)| format!("{m}x{w}")).collect();
        out.push_str(&format!("q^{d}: dim {} [{}]\n", ch.dim_at(d), weights.join(" ")));
    }
    out
}

fn run(cli: &Cli) -> latvoa::Result<Outcome> {
    let rs = RootSystem::new(&cli.rs)?;
    let max_dim = parse::max_dim(std::env::var("LATTICE_VOA_MAX_DIM").ok())?;
    match &cli.command {
        Command::Mode { a, n, v } => {
            let voa = LatticeVoa::new(rs.clone());
            let (a, v, n) = (parse::state(&rs, a)?, parse::state(&rs, v)?, parse_q(n)?);
            for s in [&a, &v] {
                if !s.is_zero() && s.gamma_class(&rs).is_none() {
                    return Err(Error::Parity("state is not homogeneous".into()));
                }
            }
            if !voa.admissible(&a, &n, &v) {
                return Err(Error::Parity(format!("n = {} is not parity-admissible", fmt_q(&n))));
            }
            let out = voa.vertex_mode(&a, &n, &v);
            Ok(Outcome::ok(out.to_json(&rs), format!("{out}\n")))
        }
        Command::Span { lambda } => {
            let voa = LatticeVoa::new(rs.clone());
            let lambda = parse::weight(&rs, lambda)?;
            let degrees = cli.cutoff.unwrap_or(2);
            let cw = rs.inner(&lambda, &lambda) / qi(2) + qi(degrees as i64);
            let span = Filtration::new(&voa, cw).with_max_dim(max_dim).g_span(&lambda)?;
            let dims = span.quotient_dims(degrees);
            let mut json = span.to_json();
            json["quotient_dims"] = json!(dims);
            let mut text = format!("G_{lambda} up to conformal weight {}\n", fmt_q(span.cutoff()));
            for ((cw, w), s) in span.components() {
                let low = span.below_component(cw, w).map_or(0, |b| b.dim());
                text.push_str(&format!("cw {} weight {w}: dim {} (below {low})\n", fmt_q(cw), s.dim()));
            }
            text.push_str(&format!("quotient dims {dims:?}\n"));
            Ok(Outcome::ok(json, text))
        }
        Command::Mult { factors } => {
            let voa = LatticeVoa::new(rs.clone());
            let factors = factors.iter().map(|f| parse::factor(&rs, f)).collect::<latvoa::Result<Vec<_>>>()?;
            let mut lambda = rs.zero();
            let mut degree = 0;
            for (a, m) in &factors {
                let g = a.gamma_class(&rs).ok_or_else(|| Error::Parity("factor is not homogeneous".into()))?;
                lambda = &lambda + &rs.representatives()[g];
                degree += m.max(&0);
            }
            let cw = rs.inner(&lambda, &lambda) / qi(2) + qi(degree);
            let ring = Ring::from_filtration(Filtration::new(&voa, cw).with_max_dim(max_dim));
            let el = ring.phi_product(&factors)?;
            let coords: Vec<String> = el.reduced.iter().map(fmt_q).collect();
            let text = format!(
                "lambda {} at conformal weight {}\nreduced [{}]\nbasis {}\n",
                el.lambda,
                fmt_q(&el.conformal_weight),
                coords.join(", "),
                el.fingerprint
            );
            Ok(Outcome::ok(el.to_json(&rs), text))
        }
        Command::Verify { suite } => {
            let settings = Settings { cutoff: cli.cutoff.unwrap_or(suite.default_cutoff()), seed: cli.seed, max_dim };
            let report = suites::run(*suite, &rs, &settings)?;
            Ok(Outcome { json: report.to_json(), text: report.to_text(), success: report.passed() })
        }
        Command::Char { lambda, local } => {
            let lambda = parse::weight(&rs, lambda)?;
            let degrees = cli.cutoff.unwrap_or(2) as i64;
            let ch = if *local { local_weyl_character(&rs, &lambda)?.truncated(degrees) } else { ch_global(&rs, &lambda, degrees)? };
            if let Some(d) = ch.degrees().find(|&d| ch.dim_at(d) as usize > max_dim) {
                return Err(Error::TooLarge { dim: ch.dim_at(d) as usize, cap: max_dim });
            }
            let mut json = ch.to_json();
            let dims = ch.graded_dims(degrees);
            json = json!({"lambda": lambda.0, "local": local, "graded_dims": dims, "character": json});
            Ok(Outcome::ok(json, format!("{}graded dims {dims:?}\n", character_text(&ch))))
        }
        Command::Relations { i, j } => {
            let degrees = cli.cutoff.unwrap_or(2) as i64;
            let series = all_relation_series(&rs, *i, *j, degrees)?;
            let list: Vec<Value> = series
                .iter()
                .map(|(l, s)| {
                    let mut v = s.to_json();
                    v["l"] = json!(l);
                    v
                })
                .collect();
            let mut text = String::new();
            for (l, s) in &series {
                let sizes: Vec<String> = s.coefficients.iter().map(|c| format!("q^{}: {} terms", c.q, c.terms.len())).collect();
                let kind = if s.is_trivial() { " (trivial)" } else { "" };
                text.push_str(&format!("l = {l}, s = {}{kind}: {}\n", s.s, sizes.join(", ")));
            }
            Ok(Outcome::ok(Value::Array(list), text))
        }
        Command::Tableaux { i, j } => {
            let a = ch_w_two_fund(&rs, *i, *j, Route::Tableaux)?;
            let b = ch_w_two_fund(&rs, *i, *j, Route::Lr)?;
            let n = rs.rank() + 1;
            let mut pairs = Vec::new();
            let mut text = String::new();
            for ci in Column::all(n, *i) {
                for cj in Column::all(n, *j) {
                    let k = k_statistic(&ci, &cj)?;
                    let ss = is_semistandard(&ci, &cj);
                    text.push_str(&format!("{ci} {cj} k = {k}{}\n", if ss { " semistandard" } else { "" }));
                    pairs.push(json!({"left": ci.entries(), "right": cj.entries(), "k": k, "semistandard": ss}));
                }
            }
            let dims = a.graded_dims(a.degrees().max().unwrap_or(0));
            text.push_str(&format!("graded dims {dims:?}, routes agree: {}\n", a == b));
            Ok(Outcome::ok(json!({"i": i, "j": j, "pairs": pairs, "character": a.to_json(), "routes_agree": a == b}), text))
        }
    }
}

fn emit(cli: &Cli, out: Output) -> std::io::Result<()> {
    let body = match out {
        Output::Json(v) => serde_json::to_string_pretty(&v).expect("serializable") + "\n",
        Output::Text(t) => t,
    };
    match &cli.output {
        Some(path) => std::fs::write(path, body),
        None => std::io::stdout().lock().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let out = if cli.text && !cli.json { Output::Text(outcome.text) } else { Output::Json(outcome.json) };
            if let Err(e) = emit(&cli, out) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if outcome.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
