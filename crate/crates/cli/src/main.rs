use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use triherm::cubealg::{BaseField, CubicAlgebra, FieldConfig};
use triherm::finite::FiniteModel;
use triherm::io::{group_from_json, group_to_json, point_from_json, point_to_json, quad_form_to_json, report_to_json, scalar_to_json};
use triherm::space::{Point, Space};
use triherm::zeta::symbolic::{self, Expr, Flags, Inputs};
use triherm::zeta::{box_count, constants, dedekind_zeta, local_factors, FieldInvariants, IntegralModel};
use triherm::Error;

const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(name = "triherm", version, about = "Binary tri-Hermitian forms over a cubic extension")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Field configuration JSON; overrides --f and --q.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Coefficients "c0,c1,c2" of t³ + c2·t² + c1·t + c0.
    #[arg(long, default_value = "-1,-1,0", allow_hyphen_values = true)]
    f: String,
    /// Work over 𝔽_q instead of ℚ.
    #[arg(long)]
    q: Option<u64>,
}

#[derive(Args, Clone)]
struct Output {
    /// Write here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
struct Jobs {
    #[arg(long, env = "TRIHERM_JOBS", default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Stratum of a point, with a normalizing group element.
    Classify {
        #[command(flatten)]
        field: FieldArgs,
        /// Point JSON ("-" or absent: stdin).
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Apply a group element (from JSON, or random from --seed) to a point.
    Act {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, conflicts_with = "seed", required_unless_present = "seed")]
        group: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Coefficients of the binary quadratic form and the discriminant.
    Invariant {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Exhaustive stratification of V(𝔽_q).
    Census {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        jobs: Jobs,
        #[command(flatten)]
        out: Output,
    },
    /// Orbit size of a point over 𝔽_q by closure under generators.
    Orbit {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Histogram of the discriminant over integer points of height ≤ h.
    BoxCount {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        height: i64,
        #[command(flatten)]
        jobs: Jobs,
        #[command(flatten)]
        out: Output,
    },
    /// Dedekind zeta value by Euler product and Dirichlet sum.
    Dedekind {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 2.0)]
        s: f64,
        #[arg(long, default_value_t = 1_000_000)]
        prime_bound: u64,
        /// Field invariants JSON (r1, r2, class_number, regulator,
        /// roots_of_unity, abs_disc); adds the residue constants.
        #[arg(long)]
        invariants: Option<PathBuf>,
        /// Also list the splitting type of every prime up to this bound.
        #[arg(long)]
        list_primes: Option<u64>,
        #[command(flatten)]
        jobs: Jobs,
        #[command(flatten)]
        out: Output,
    },
    /// Poles and coefficients of the principal part.
    PrincipalPart {
        /// Subset of d#,d1,d2.
        #[arg(long, default_value = "d#,d1,d2")]
        flags: String,
        /// JSON object mapping input names to values.
        #[arg(long)]
        inputs: Option<PathBuf>,
        /// Merge the two residues at 4 using their identity.
        #[arg(long)]
        residue_identity: bool,
        /// Set both residues at 4 to zero.
        #[arg(long, conflicts_with = "residue_identity")]
        vanishing_residues: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Fast run of the invariant checks.
    Selftest,
}

/// Failure with its exit status.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::AssertionFailure(_) | Error::DescentFailure(_) | Error::IrrationalRoot => EXIT_INTERNAL,
            _ => EXIT_DATA,
        };
        Fail(code, e.to_string())
    }
}

fn data(msg: impl std::fmt::Display) -> Fail {
    Fail(EXIT_DATA, msg.to_string())
}

type Res<T> = std::result::Result<T, Fail>;

fn read_source(path: Option<&PathBuf>) -> Res<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).map_err(|e| data(format!("{}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(data)?;
            Ok(s)
        }
    }
}

fn read_json(path: Option<&PathBuf>) -> Res<Value> {
    serde_json::from_str(&read_source(path)?).map_err(|e| data(format!("invalid JSON: {e}")))
}

fn emit(out: &Output, text: &str) -> Res<()> {
    match &out.output {
        Some(p) => fs::write(p, text).map_err(|e| data(format!("{}: {e}", p.display()))),
        None => {
            let mut o = io::stdout().lock();
            o.write_all(text.as_bytes()).and_then(|_| o.flush()).map_err(data)
        }
    }
}

fn emit_json(out: &Output, v: &Value) -> Res<()> {
    emit(out, &format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")))
}

fn split_f(f: &str) -> Res<[String; 3]> {
    let parts: Vec<String> = f.split(',').map(|s| s.trim().to_string()).collect();
    parts
        .try_into()
        .map_err(|_| Fail(EXIT_USAGE, format!("--f needs three comma-separated coefficients, got {f:?}")))
}

impl FieldArgs {
    fn algebra(&self) -> Res<CubicAlgebra> {
        let config = match &self.config {
            Some(p) => serde_json::from_str::<FieldConfig>(&read_source(Some(p))?)
                .map_err(|e| data(format!("invalid field config: {e}")))?,
            None => FieldConfig {
                base: match self.q {
                    Some(q) => triherm::cubealg::BaseSpec::Prime { fp: q },
                    None => triherm::cubealg::BaseSpec::Named("Q".into()),
                },
                f: split_f(&self.f)?,
            },
        };
        Ok(config.build()?)
    }

    fn space(&self) -> Res<Space> {
        Ok(Space::new(self.algebra()?))
    }

    fn finite(&self) -> Res<FiniteModel> {
        let alg = self.algebra()?;
        if alg.field() == BaseField::Rational {
            return Err(Fail(EXIT_USAGE, "this command needs a finite field (--q)".into()));
        }
        Ok(FiniteModel::from_algebra(alg)?)
    }

    /// Integer coefficients over ℚ.
    fn integral(&self) -> Res<[i64; 3]> {
        let alg = self.algebra()?;
        if alg.field() != BaseField::Rational {
            return Err(Fail(EXIT_USAGE, "this command works over the rationals".into()));
        }
        let c: Vec<i64> = alg
            .coeffs()
            .iter()
            .map(|c| {
                let r = c.as_rational().expect("rational");
                if r.is_integer() {
                    i64::try_from(r.to_integer()).map_err(|_| data("coefficient too large"))
                } else {
                    Err(data("coefficients of f must be integers"))
                }
            })
            .collect::<Res<_>>()?;
        Ok(c.try_into().expect("three coefficients"))
    }
}

fn read_point(space: &Space, input: Option<&PathBuf>) -> Res<Point> {
    Ok(point_from_json(space, &read_json(input)?)?)
}

/// Twelve significant digits.
fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let decimals = (11 - x.abs().log10().floor() as i32).max(0) as usize;
    format!("{x:.decimals$}")
}

fn run(cli: Cli) -> Res<u8> {
    match cli.command {
        Command::Classify { field, input, out } => {
            let space = field.space()?;
            let x = read_point(&space, input.as_ref())?;
            let report = space.classify(&x)?;
            emit_json(&out, &report_to_json(&report))?;
            Ok(report.label.exit_code() as u8)
        }
        Command::Act { field, input, group, seed, out } => {
            let space = field.space()?;
            let x = read_point(&space, input.as_ref())?;
            let g = match (group, seed) {
                (Some(p), _) => group_from_json(&space, &read_json(Some(&p))?)?,
                (None, Some(seed)) => space.random_group_element(seed),
                (None, None) => unreachable!("clap requires one of --group, --seed"),
            };
            let y = space.try_act(&g, &x)?;
            emit_json(&out, &json!({"group": group_to_json(&g), "point": point_to_json(&y)}))?;
            Ok(0)
        }
        Command::Invariant { field, input, out } => {
            let space = field.space()?;
            let x = read_point(&space, input.as_ref())?;
            let mut v = quad_form_to_json(&space.quad_form(&x));
            v["delta"] = scalar_to_json(&space.checked_discriminant(&x)?);
            emit_json(&out, &v)?;
            Ok(0)
        }
        Command::Census { field, jobs, out } => {
            let model = field.finite()?;
            let (rec, _) = model.census(jobs.jobs)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            let f = rec.f.map(|c| c.to_string()).join(",");
            w.write_record(["q", "f", "n_total", "n_zero", "n_ss", "n_s1", "n_s2"]).map_err(data)?;
            w.write_record([
                rec.q.to_string(),
                f,
                rec.n_total.to_string(),
                rec.n_zero.to_string(),
                rec.n_ss.to_string(),
                rec.n_s1.to_string(),
                rec.n_s2.to_string(),
            ])
            .map_err(data)?;
            emit(&out, &String::from_utf8(w.into_inner().map_err(data)?).expect("utf-8"))?;
            Ok(0)
        }
        Command::Orbit { field, input, cap, out } => {
            let model = field.finite()?;
            let x = read_point(model.space(), input.as_ref())?;
            let size = model.orbit_bfs(&x, cap)?;
            let label = model.space().label(&x)?;
            emit_json(&out, &json!({"label": label.name(), "orbit_size": size}))?;
            Ok(0)
        }
        Command::BoxCount { field, height, jobs, out } => {
            let model = IntegralModel::new(field.integral()?)?;
            let counts = box_count(&model, height, jobs.jobs)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["delta", "count"]).map_err(data)?;
            for (d, n) in &counts.histogram {
                w.write_record([d.to_string(), n.to_string()]).map_err(data)?;
            }
            emit(&out, &String::from_utf8(w.into_inner().map_err(data)?).expect("utf-8"))?;
            Ok(0)
        }
        Command::Dedekind { field, s, prime_bound, invariants, list_primes, jobs, out } => {
            let f = field.integral()?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.jobs.max(1))
                .build()
                .map_err(|e| Fail(EXIT_INTERNAL, e.to_string()))?;
            let (z, primes) = pool.install(|| -> Res<_> {
                let z = dedekind_zeta(f, s, prime_bound)?;
                let primes = match list_primes {
                    Some(b) => Some(local_factors(f, b)?),
                    None => None,
                };
                Ok((z, primes))
            })?;
            let error = z.discrepancy().max(z.tail_bound);
            let mut v = json!({
                "f": f,
                "s": s,
                "prime_bound": prime_bound,
                "euler": sig12(z.euler),
                "dirichlet": sig12(z.dirichlet),
                "error": format!("{error:.3e}"),
            });
            if let Some(p) = invariants {
                let inv: FieldInvariants = serde_json::from_value(read_json(Some(&p))?)
                    .map_err(|e| data(format!("invalid invariants: {e}")))?;
                if s != 2.0 {
                    return Err(Fail(EXIT_USAGE, "--invariants needs --s 2".into()));
                }
                let c = constants(&inv, z.euler)?;
                v["residue"] = json!(sig12(c.residue));
                v["completed_zeta_2"] = json!(sig12(c.z2));
                v["rho"] = json!(sig12(c.rho));
                v["volume"] = json!(sig12(c.volume));
            }
            if let Some(primes) = primes {
                v["primes"] = primes.iter().map(|l| json!({"p": l.p, "type": l.to_string()})).collect();
            }
            emit_json(&out, &v)?;
            Ok(0)
        }
        Command::PrincipalPart { flags, inputs, residue_identity, vanishing_residues, out } => {
            let flags = Flags::parse(&flags).map_err(|e| Fail(EXIT_USAGE, e.to_string()))?;
            let values = match inputs {
                Some(p) => parse_inputs(&read_json(Some(&p))?)?,
                None => Inputs::default(),
            };
            let mut pp = symbolic::principal_part(flags, &values)?;
            if residue_identity {
                pp = pp.with_residue_identity();
            }
            if vanishing_residues {
                pp = pp.with_vanishing_residues();
            }
            emit_json(&out, &pp.to_json())?;
            Ok(0)
        }
        Command::Selftest => {
            let checks = triherm::selftest::run();
            let mut all = true;
            for c in &checks {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
                all &= c.passed;
            }
            Ok(if all { 0 } else { EXIT_INTERNAL })
        }
    }
}

fn parse_inputs(v: &Value) -> Res<Inputs> {
    let obj = v.as_object().ok_or_else(|| data("inputs must be a JSON object"))?;
    let mut pairs = Vec::new();
    for (k, val) in obj {
        let e = match val {
            Value::String(s) => Expr::atom(s),
            Value::Number(n) if n.is_i64() => Expr::int(n.as_i64().expect("i64")),
            _ => return Err(data(format!("input {k:?}: expected an exact number or symbol"))),
        };
        pairs.push((k.as_str(), e));
    }
    Ok(Inputs::default().with_overrides(pairs)?)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    std::panic::set_hook(Box::new(|info| eprintln!("internal error: {info}")));
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(code)) => ExitCode::from(code),
        Ok(Err(Fail(code, msg))) => {
            eprintln!("triherm: {msg}");
            ExitCode::from(code)
        }
        Err(_) => ExitCode::from(EXIT_INTERNAL),
    }
}
