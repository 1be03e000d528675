mod config;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use config::{ConfigError, Format, Overrides, RunConfig};
use qkadams::expr::{parse_kclass, parse_qrat, ExprContext};
use qkadams::io::{novseries_from_json, novseries_to_json};
use qkadams::lefschetz::{
    cotangent_bundles, i_cotangent, j_small, lefschetz_transform, LefschetzMode, NovSeries,
};
use qkadams::loopspace::omega_r;
use qkadams::twistkit::{dilaton_vector, psi_dilaton_check, LineSummand, TwistData, TwistMode};
use qkadams::verify::{run_suites, VerifyConfig, SUITES};

#[derive(Parser)]
#[command(name = "qkadams", version, about = "Exact computations in twisted quantum K-theory of projective spaces")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// TOML configuration file
    #[arg(long, global = true)]
    config: Option<String>,
    /// Target rank: the K-ring of CP^{n-1}
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Novikov truncation bound D
    #[arg(long = "deg", global = true)]
    deg: Option<i64>,
    /// Nilpotency order of eps (eps^(order+1) = 0)
    #[arg(long, global = true)]
    eps_order: Option<u32>,
    /// Extra equivariant parameter names
    #[arg(long = "param", global = true)]
    params: Vec<String>,
    /// Twisting data: inline JSON or a path to a JSON file
    #[arg(long, global = true)]
    twist: Option<String>,
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Small J-function
    J,
    /// The cotangent-bundle I-series
    ICotangent,
    /// Lefschetz transform of J (or of a series read from JSON)
    Lefschetz {
        #[arg(long, value_parser = ["pi", "dual"])]
        mode: String,
        /// Line summand "m" or "m:weight", meaning weight * P^{-m}
        #[arg(long = "line")]
        lines: Vec<String>,
        /// Use n copies of lambda*P^-1
        #[arg(long)]
        cotangent: bool,
        /// Input series in JSON
        #[arg(long)]
        input: Option<String>,
    },
    /// Split a rational function into its K_+ and K_- parts
    Project {
        #[arg(long)]
        expr: String,
    },
    /// The residue form Omega^(r)(f, g) with twist Delta
    Pair {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, default_value_t = 1)]
        r: i64,
        #[arg(long, default_value = "1")]
        delta: String,
    },
    /// Dilaton vector of the configured twisting data
    Dilaton {
        #[arg(long, default_value_t = 1)]
        r: i64,
    },
    /// Run identity suites
    Verify {
        /// Suite name or "all"; repeatable
        #[arg(long = "suite", default_value = "all")]
        suites: Vec<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

enum Failure {
    Verify(String),
    Config(String),
    Size(String),
    Math(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verify(_) => 1,
            Failure::Config(_) => 3,
            Failure::Size(_) => 4,
            Failure::Math(_) => 5,
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Malformed(s) => Failure::Config(s),
            ConfigError::TooLarge(s) => Failure::Size(s),
        }
    }
}

fn math(e: qkadams::Error) -> Failure {
    Failure::Math(e.to_string())
}

fn input(e: qkadams::Error) -> Failure {
    Failure::Config(e.to_string())
}

fn series_output(s: &NovSeries, format: Format) -> String {
    match format {
        Format::Json => pretty(&novseries_to_json(s)),
        Format::Text => {
            let mut out = String::new();
            for (d, f) in s.terms() {
                let d: Vec<String> = d.0.iter().map(|x| x.to_string()).collect();
                out.push_str(&format!("d={}: {}\n", d.join(","), f.render()));
            }
            out
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn parse_line(spec: &str, ctx: &ExprContext) -> Result<LineSummand, Failure> {
    let (m, w) = match spec.split_once(':') {
        Some((m, w)) => (m, Some(w)),
        None => (spec, None),
    };
    let m: i64 = m
        .trim()
        .parse()
        .map_err(|_| Failure::Config(format!("line \"{spec}\": expected an integer degree")))?;
    let weight = match w {
        None => qkadams::algebra_core::EqScalar::one(),
        Some(w) => {
            let k = parse_kclass(w, ctx).map_err(input)?;
            k.as_scalar()
                .cloned()
                .ok_or_else(|| Failure::Config(format!("line \"{spec}\": weight must be a scalar")))?
        }
    };
    Ok(LineSummand::weighted(vec![m], weight))
}

fn run(cli: Cli) -> Result<String, Failure> {
    let g = cli.global;
    let cfg = RunConfig::resolve(Overrides {
        config: g.config,
        n: g.n,
        truncation: g.deg,
        eps_order: g.eps_order,
        params: g.params,
        format: g.format,
        twist: g.twist,
    })?;
    let ctx = cfg.expr_context();
    match cli.command {
        Command::J => Ok(series_output(&j_small(cfg.n, cfg.truncation).map_err(math)?, cfg.format)),
        Command::ICotangent => Ok(series_output(
            &i_cotangent(cfg.n, cfg.truncation).map_err(math)?,
            cfg.format,
        )),
        Command::Lefschetz {
            mode,
            lines,
            cotangent,
            input: path,
        } => {
            let mode = LefschetzMode::from_name(&mode).expect("validated by clap");
            let f = match path {
                Some(p) => {
                    let src = std::fs::read_to_string(&p).map_err(|e| Failure::Config(format!("{p}: {e}")))?;
                    let v: Value = serde_json::from_str(&src).map_err(|e| {
                        Failure::Config(format!("{p}: line {}, column {}: {e}", e.line(), e.column()))
                    })?;
                    novseries_from_json(&v, &ctx).map_err(input)?
                }
                None => j_small(cfg.n, cfg.truncation).map_err(math)?,
            };
            let mut bundles = if cotangent { cotangent_bundles(cfg.n) } else { Vec::new() };
            for l in &lines {
                bundles.push(parse_line(l, &ctx)?);
            }
            let out = lefschetz_transform(&f, &bundles, mode).map_err(math)?;
            Ok(series_output(&out, cfg.format))
        }
        Command::Project { expr } => {
            let f = parse_qrat(&expr, &ctx).map_err(input)?;
            let plus = f.project_plus().render();
            let minus = f.project_minus().render();
            Ok(match cfg.format {
                Format::Json => pretty(&json!({ "input": f.render(), "plus": plus, "minus": minus })),
                Format::Text => format!("plus: {plus}\nminus: {minus}\n"),
            })
        }
        Command::Pair { f, g, r, delta } => {
            let f = parse_qrat(&f, &ctx).map_err(input)?;
            let g = parse_qrat(&g, &ctx).map_err(input)?;
            let delta = parse_kclass(&delta, &ctx).map_err(input)?;
            let w = omega_r(&f, &g, r, &delta).map_err(math)?.render();
            Ok(match cfg.format {
                Format::Json => pretty(&json!({ "r": r, "value": w })),
                Format::Text => format!("{w}\n"),
            })
        }
        Command::Dilaton { r } => {
            let data = cfg.twist.clone().unwrap_or_else(|| TwistData::empty(cfg.n));
            let v = dilaton_vector(r, &data).map_err(math)?.render();
            let check = if data.mode() == TwistMode::Infinitesimal {
                Some(psi_dilaton_check(r, &data).map_err(math)?)
            } else {
                None
            };
            Ok(match cfg.format {
                Format::Json => pretty(&json!({ "r": r, "value": v, "psi_check": check })),
                Format::Text => match check {
                    Some(c) => format!("{v}\npsi check: {}\n", if c { "PASS" } else { "FAIL" }),
                    None => format!("{v}\n"),
                },
            })
        }
        Command::Verify { suites, seed, samples } => {
            let names: Vec<&str> = if suites.iter().any(|s| s == "all") {
                SUITES.to_vec()
            } else {
                suites.iter().map(String::as_str).collect()
            };
            for s in &names {
                if !SUITES.contains(s) {
                    return Err(Failure::Config(format!(
                        "unknown suite \"{s}\"; expected one of {} or all",
                        SUITES.join(", ")
                    )));
                }
            }
            let reports = run_suites(&names, &VerifyConfig { seed, samples }).map_err(math)?;
            let ok = reports.iter().all(|r| r.passed());
            let out = match cfg.format {
                Format::Json => {
                    let list: Vec<Value> = reports
                        .iter()
                        .map(|r| {
                            let checks: Vec<Value> = r
                                .checks
                                .iter()
                                .map(|c| {
                                    json!({
                                        "name": c.name,
                                        "cases": c.cases,
                                        "passed": c.passed(),
                                        "failures": c.failures,
                                    })
                                })
                                .collect();
                            json!({ "suite": r.suite, "passed": r.passed(), "checks": checks })
                        })
                        .collect();
                    pretty(&json!({ "passed": ok, "suites": list }))
                }
                Format::Text => reports.iter().map(|r| r.render()).collect(),
            };
            if ok {
                Ok(out)
            } else {
                Err(Failure::Verify(out))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Verify(out) => print!("{out}"),
                Failure::Config(s) => eprintln!("error: {s}"),
                Failure::Size(s) => eprintln!("error: size limit: {s}"),
                Failure::Math(s) => eprintln!("error: {s}"),
            }
            ExitCode::from(f.code())
        }
    }
}
