use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};

use plethysm_core::ehrhart::fit;
use plethysm_core::matrix::DEFAULT_MAX_MATRICES;
use plethysm_core::orbits::{foulkes_table, m2_lambda, orbit_classes, transpose_fixed_decomposition};
use plethysm_core::serial::{natural_to_json, rational_to_json, rational_to_string};
use plethysm_core::suite::{self, Status, SuiteConfig};
use plethysm_core::{
    inner_product, irreducible_character, n_class_function, oracle_sum, partitions_of,
    plethysm_schur, plethysm_sum, EhrhartFits, Error, FitOptions, Partition,
};

/// Exit status for a guard that refused to run.
const EXIT_GUARD: u8 = 2;
/// Exit status for two routes disagreeing.
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(name = "plethysm", version, about = "Counts the irreducible constituents of s_λ[s_m]")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Cap on enumerated matrices.
    #[arg(long, env = "PLETHYSM_MAX_MATRICES", default_value_t = DEFAULT_MAX_MATRICES, global = true,
          value_parser = clap::value_parser!(u64).range(1..))]
    max_matrices: u64,
    /// Largest quasipolynomial period tried.
    #[arg(long, env = "PLETHYSM_MAX_PERIOD", default_value_t = 12, global = true,
          value_parser = clap::value_parser!(u64).range(1..))]
    max_period: u64,
    /// Extra samples per residue a fit must reproduce.
    #[arg(long, env = "PLETHYSM_VALIDATION_POINTS", default_value_t = 3, global = true,
          value_parser = clap::value_parser!(u64).range(1..))]
    validation_points: u64,
}

impl Global {
    fn fit_options(&self) -> FitOptions {
        FitOptions {
            max_period: self.max_period as usize,
            validation_points: self.validation_points as usize,
            ..FitOptions::default()
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// ⟨χ^λ, N^m⟩, the number of constituents of s_λ[s_m].
    Sum {
        /// Comma-separated parts; a single number n means the one-row partition.
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        m: u64,
        /// Also run the power-sum oracle and fail on disagreement.
        #[arg(long)]
        verify: bool,
    },
    /// The Schur expansion of s_λ[s_m] by brute force in the power-sum basis.
    Oracle {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        m: usize,
        /// Print every multiplicity (the default).
        #[arg(long, conflicts_with = "sum_only")]
        full: bool,
        /// Print only the total.
        #[arg(long)]
        sum_only: bool,
    },
    /// N^m(ρ) for every cycle type ρ of S_n.
    Nchar {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u64,
    },
    /// Fitted quasipolynomial N_ρ(m), or m ↦ ⟨χ^λ, N^m⟩.
    Quasipoly {
        #[arg(long, conflicts_with = "lambda", required_unless_present = "lambda")]
        rho: Option<Partition>,
        #[arg(long)]
        lambda: Option<Partition>,
        /// Largest n accepted for the λ sum, which fits every ρ of n.
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Row/column permutation classes of M(n, m).
    Classes {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u64,
    },
    /// The verification battery.
    PaperSuite {
        /// Comma-separated groups to run.
        #[arg(long, value_delimiter = ',', value_parser = clap::builder::PossibleValuesParser::new(suite::GROUPS))]
        only: Vec<String>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = 8)]
        nm_max: usize,
        /// Raise the square-root identity check to S_8.
        #[arg(long)]
        extended: bool,
    },
    /// #T(n,m)/∼ table with the n ≤ m inequality flagged.
    Foulkes {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[arg(long, default_value_t = 5)]
        m_max: u64,
    },
}

enum Failure {
    Core(Error),
    Mismatch(String),
    Suite,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Core(e @ Error::GuardExceeded { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_GUARD)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
        Err(Failure::Mismatch(why)) => {
            eprintln!("mismatch: {why}");
            ExitCode::from(EXIT_MISMATCH)
        }
        Err(Failure::Suite) => ExitCode::FAILURE,
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Sum { lambda, m, verify } => cmd_sum(g, lambda, *m, *verify),
        Command::Oracle {
            lambda,
            m,
            sum_only,
            ..
        } => cmd_oracle(g, lambda, *m, *sum_only),
        Command::Nchar { n, m } => cmd_nchar(g, *n, *m),
        Command::Quasipoly {
            rho,
            lambda,
            max_degree,
        } => cmd_quasipoly(g, rho.as_ref(), lambda.as_ref(), *max_degree),
        Command::Classes { n, m } => cmd_classes(g, *n, *m),
        Command::PaperSuite {
            only,
            n_max,
            nm_max,
            extended,
        } => cmd_suite(g, only, *n_max, *nm_max, *extended),
        Command::Foulkes { n_max, m_max } => cmd_foulkes(g, *n_max, *m_max),
    }
}

fn json_out(v: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("JSON values serialize"))
}

fn cmd_sum(g: &Global, lambda: &Partition, m: u64, verify: bool) -> Result<String, Failure> {
    let sum = plethysm_sum(lambda, m)?;
    let oracle = if verify {
        let o = oracle_sum(lambda, m as usize)?;
        if o != sum {
            return Err(Failure::Mismatch(format!(
                "lambda = {lambda}, m = {m}: <chi, N^m> = {sum}, oracle = {o}"
            )));
        }
        Some(o)
    } else {
        None
    };
    Ok(match g.format {
        Format::Pretty => format!("{sum}\n"),
        Format::Csv => format!("lambda,m,sum\n\"{lambda}\",{m},{sum}\n"),
        Format::Json => {
            let mut obj = Map::new();
            obj.insert("lambda".into(), json!(lambda.parts()));
            obj.insert("m".into(), json!(m));
            obj.insert("sum".into(), natural_to_json(&sum));
            if let Some(o) = oracle {
                obj.insert("oracle".into(), natural_to_json(&o));
            }
            json_out(&Value::Object(obj))
        }
    })
}

fn cmd_oracle(g: &Global, lambda: &Partition, m: usize, sum_only: bool) -> Result<String, Failure> {
    let result = plethysm_schur(lambda, m)?;
    let sum = result.sum();
    Ok(match (g.format, sum_only) {
        (Format::Pretty, true) => format!("{sum}\n"),
        (Format::Csv, true) => format!("lambda,m,sum\n\"{lambda}\",{m},{sum}\n"),
        (Format::Json, true) => json_out(&json!({
            "lambda": lambda.parts(),
            "m": m,
            "sum": natural_to_json(&sum),
        })),
        (Format::Pretty, false) => {
            let mut out = String::new();
            for (nu, a) in &result.coefficients {
                out.push_str(&format!("{a} s{nu}\n"));
            }
            out.push_str(&format!("total {sum}\n"));
            out
        }
        (Format::Csv, false) => {
            let mut out = String::from("nu,multiplicity\n");
            for (nu, a) in &result.coefficients {
                out.push_str(&format!("\"{nu}\",{a}\n"));
            }
            out
        }
        (Format::Json, false) => {
            let coefficients: Map<String, Value> = result
                .coefficients
                .iter()
                .map(|(nu, a)| (nu.to_string(), natural_to_json(a)))
                .collect();
            json_out(&json!({
                "lambda": lambda.parts(),
                "m": m,
                "sum": natural_to_json(&sum),
                "coefficients": coefficients,
            }))
        }
    })
}

fn cmd_nchar(g: &Global, n: usize, m: u64) -> Result<String, Failure> {
    let f = n_class_function(n, m);
    Ok(match g.format {
        Format::Json => {
            let obj: Map<String, Value> = f
                .iter()
                .map(|(rho, v)| (rho.to_string(), rational_to_json(v)))
                .collect();
            json_out(&Value::Object(obj))
        }
        Format::Csv => {
            let mut out = String::from("rho,count\n");
            for (rho, v) in f.iter() {
                out.push_str(&format!("\"{rho}\",{v}\n"));
            }
            out
        }
        Format::Pretty => f.iter().map(|(rho, v)| format!("{rho:<16} {v}\n")).collect(),
    })
}

/// Fit failures (no period, guard, degree disagreement) all exit with the
/// guard status.
fn fit_failure(e: Error) -> Failure {
    match e {
        Error::NoPeriod { .. } | Error::Consistency(_) => Failure::Core(Error::GuardExceeded {
            what: "quasipolynomial fit",
            requested: e.to_string(),
            limit: "current guards".into(),
        }),
        other => Failure::Core(other),
    }
}

fn cmd_quasipoly(
    g: &Global,
    rho: Option<&Partition>,
    lambda: Option<&Partition>,
    max_degree: usize,
) -> Result<String, Failure> {
    let opts = g.fit_options();
    let q = match (rho, lambda) {
        (Some(rho), _) => fit(rho, &opts).map_err(fit_failure)?,
        (None, Some(lambda)) => {
            let n = lambda.size();
            if n > max_degree {
                return Err(Error::GuardExceeded {
                    what: "quasipolynomial sum degree",
                    requested: n.to_string(),
                    limit: max_degree.to_string(),
                }
                .into());
            }
            let fits = EhrhartFits::compute(n, &opts).map_err(fit_failure)?;
            fits.sum_quasipolynomial(lambda)?.reduced()
        }
        (None, None) => unreachable!("clap requires one of --rho and --lambda"),
    };
    Ok(match g.format {
        Format::Json => json_out(&q.to_json()),
        Format::Csv => {
            let mut out = String::from("residue,power,coefficient\n");
            for (r, coeffs) in q.constituents().iter().enumerate() {
                for (d, c) in coeffs.iter().enumerate() {
                    out.push_str(&format!("{r},{d},{}\n", rational_to_string(c)));
                }
            }
            out
        }
        Format::Pretty => {
            let mut out = format!("period {} degree {}\n", q.period(), q.degree());
            for (r, coeffs) in q.constituents().iter().enumerate() {
                let mut body = String::new();
                for (d, c) in coeffs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()) {
                    let magnitude = c.abs();
                    if body.is_empty() {
                        body.push_str(if c.is_negative() { "-" } else { "" });
                    } else {
                        body.push_str(if c.is_negative() { " - " } else { " + " });
                    }
                    body.push_str(&match d {
                        0 => format!("{magnitude}"),
                        1 => format!("({magnitude})m"),
                        _ => format!("({magnitude})m^{d}"),
                    });
                }
                if body.is_empty() {
                    body.push('0');
                }
                out.push_str(&format!("m = {r} mod {}: {body}\n", q.period()));
            }
            out
        }
    })
}

fn cmd_classes(g: &Global, n: usize, m: u64) -> Result<String, Failure> {
    let classes = orbit_classes(n, m, g.max_matrices)?;
    let decomposition = transpose_fixed_decomposition(n, m, g.max_matrices)?;
    let characters = partitions_of(n)
        .into_iter()
        .map(|lambda| irreducible_character(&lambda).map(|chi| (lambda, chi)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::new();
    for class in &classes {
        let n_c = decomposition
            .iter()
            .find(|d| d.class.canonical_rep == class.canonical_rep)
            .map(|d| &d.n_c);
        let mut ips = Map::new();
        for (lambda, chi) in &characters {
            // classes with C ≠ Cᵀ contain no twisted-fixed matrix, so N^C = 0
            let v = match n_c {
                Some(f) => inner_product(chi, f)?,
                None => BigRational::zero(),
            };
            ips.insert(lambda.to_string(), rational_to_json(&v));
        }
        let lambda_c = if m == 2 { Some(m2_lambda(class)?) } else { None };
        rows.push((class, lambda_c, ips));
    }
    Ok(match g.format {
        Format::Json => {
            let list: Vec<Value> = rows
                .iter()
                .map(|(class, lambda_c, ips)| {
                    let mut obj = Map::new();
                    obj.insert("canonical_rep".into(), json!(class.canonical_rep.entries()));
                    obj.insert("orbit_size".into(), json!(class.orbit_size));
                    obj.insert("stabilizer_size".into(), json!(class.stabilizer_size));
                    obj.insert("transpose_fixed".into(), json!(class.transpose_fixed));
                    if let Some(l) = lambda_c {
                        obj.insert("lambda_C".into(), json!(l.parts()));
                    }
                    obj.insert("inner_products".into(), Value::Object(ips.clone()));
                    Value::Object(obj)
                })
                .collect();
            json_out(&Value::Array(list))
        }
        Format::Csv => {
            let mut out = String::from("canonical_rep,orbit_size,stabilizer_size,transpose_fixed,lambda_C\n");
            for (class, lambda_c, _) in &rows {
                let rep: Vec<String> = class.canonical_rep.entries().iter().map(u64::to_string).collect();
                out.push_str(&format!(
                    "\"{}\",{},{},{},{}\n",
                    rep.join(" "),
                    class.orbit_size,
                    class.stabilizer_size,
                    class.transpose_fixed,
                    lambda_c.as_ref().map(|l| format!("\"{l}\"")).unwrap_or_default()
                ));
            }
            out
        }
        Format::Pretty => {
            let mut out = String::new();
            for (class, lambda_c, _) in &rows {
                out.push_str(&format!(
                    "orbit {} stabilizer {} transpose-fixed {}{}\n{}\n\n",
                    class.orbit_size,
                    class.stabilizer_size,
                    class.transpose_fixed,
                    lambda_c.as_ref().map(|l| format!(" lambda_C {l}")).unwrap_or_default(),
                    class.canonical_rep
                ));
            }
            let fixed = classes.iter().filter(|c| c.transpose_fixed).count();
            out.push_str(&format!("{} classes, {fixed} transpose-fixed\n", classes.len()));
            out
        }
    })
}

fn cmd_suite(
    g: &Global,
    only: &[String],
    n_max: Option<usize>,
    nm_max: usize,
    extended: bool,
) -> Result<String, Failure> {
    let config = SuiteConfig {
        only: only.to_vec(),
        n_max,
        nm_max,
        extended,
        max_matrices: g.max_matrices,
        fit: g.fit_options(),
    };
    let lines = suite::run(&config);
    let failed = lines.iter().filter(|l| l.status == Status::Fail).count();
    let out = match g.format {
        Format::Json => json_out(&serde_json::to_value(&lines).expect("lines serialize")),
        Format::Csv => {
            let mut out = String::from("group,claim,status,detail\n");
            for l in &lines {
                out.push_str(&format!(
                    "{},\"{}\",{},\"{}\"\n",
                    l.group,
                    l.claim.replace('"', "\"\""),
                    l.status,
                    l.detail.replace('"', "\"\"")
                ));
            }
            out
        }
        Format::Pretty => {
            let mut out: String = lines.iter().map(|l| format!("{l}\n")).collect();
            out.push_str(&format!(
                "{} passed, {failed} failed, {} skipped\n",
                lines.iter().filter(|l| l.status == Status::Pass).count(),
                lines.iter().filter(|l| l.status == Status::Skip).count()
            ));
            out
        }
    };
    if failed > 0 {
        print!("{out}");
        return Err(Failure::Suite);
    }
    Ok(out)
}

fn cmd_foulkes(g: &Global, n_max: usize, m_max: u64) -> Result<String, Failure> {
    let table = foulkes_table(n_max, m_max, g.max_matrices);
    if !table.routes_agree() {
        let bad: Vec<String> = table
            .cells
            .iter()
            .filter(|c| !c.routes_agree())
            .map(|c| format!("({},{})", c.n, c.m))
            .collect();
        return Err(Failure::Mismatch(format!("orbit and character counts differ at {}", bad.join(" "))));
    }
    let cell = |v: Option<u64>| v.map_or(Value::Null, |x| natural_to_json(&BigUint::from(x)));
    Ok(match g.format {
        Format::Json => json_out(&json!({
            "cells": table.cells.iter().map(|c| json!({
                "n": c.n,
                "m": c.m,
                "count": cell(c.value()),
                "orbit_count": cell(c.orbit_count),
                "character_count": cell(c.character_count),
            })).collect::<Vec<_>>(),
            "violations": table.violations,
        })),
        Format::Csv => {
            let mut out = String::from("n,m,count\n");
            for c in &table.cells {
                out.push_str(&format!(
                    "{},{},{}\n",
                    c.n,
                    c.m,
                    c.value().map(|v| v.to_string()).unwrap_or_default()
                ));
            }
            out
        }
        Format::Pretty => {
            let mut out = String::from("n\\m");
            for m in 1..=m_max {
                out.push_str(&format!("{m:>8}"));
            }
            out.push('\n');
            for n in 1..=n_max {
                out.push_str(&format!("{n:<3}"));
                for m in 1..=m_max {
                    let v = table.get(n, m).and_then(|c| c.value());
                    out.push_str(&format!("{:>8}", v.map_or("-".to_string(), |x| x.to_string())));
                }
                out.push('\n');
            }
            out.push_str(&format!(
                "pairs n <= m with #T(n,m) > #T(m,n): {}\n",
                if table.violations.is_empty() {
                    "none".to_string()
                } else {
                    format!("{:?}", table.violations)
                }
            ));
            out
        }
    })
}
