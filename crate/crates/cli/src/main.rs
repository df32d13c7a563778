//! `ajf`: evaluate algebraic Jacobi functions and d-matrices, run the
//! verification suites, and transform between functions and coefficients.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use ajf_core::ladders::{apply_generator_closed, Action, Generator};
use ajf_core::scalar::parse_rational;
use ajf_core::transforms::{analyze, synthesize, CoefficientVector};
use ajf_core::verify::{run_suite, Suite};
use ajf_core::wigner::d_matrix;
use ajf_core::{ajf, HalfInt, JmqTriple, RadicalScalar, WeightedPoly};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "ajf", version, about = "Algebraic Jacobi functions and the su(2,2) ladder algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the algebraic Jacobi function with label J,M,Q at x.
    Eval {
        #[arg(long, value_name = "J,M,Q")]
        jmq: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Exact value at a rational x.
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 15)]
        digits: usize,
    },
    /// Print the Wigner d-matrix d^j(beta).
    Dmat {
        #[arg(long)]
        two_j: i64,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long, conflicts_with = "json")]
        csv: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 15)]
        digits: usize,
    },
    /// Run a verification suite over labels with 2j <= window.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        window: i64,
        #[arg(long)]
        json: bool,
    },
    /// Analysis and synthesis at fixed (m, q).
    Transform {
        #[arg(value_enum)]
        direction: Direction,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value_t = 8)]
        window: i64,
        #[arg(long)]
        input: PathBuf,
    },
    /// Print the closed-form action of a generator on every label in the window.
    Table {
        #[arg(long)]
        op: String,
        #[arg(long)]
        window: i64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Analyze,
    Synthesize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Eval {
            jmq,
            x,
            exact,
            json,
            digits,
        } => eval(&jmq, &x, exact, json, digits).map(|()| true),
        Command::Dmat {
            two_j,
            beta,
            csv,
            json,
            digits,
        } => dmat(two_j, beta, csv, json, digits).map(|()| true),
        Command::Verify { suite, window, json } => verify(&suite, window, json),
        Command::Transform {
            direction,
            m,
            q,
            window,
            input,
        } => transform(direction, &m, &q, window, &input).map(|()| true),
        Command::Table { op, window, json } => table(&op, window, json).map(|()| true),
    }
}

fn parse_label(s: &str) -> Result<JmqTriple> {
    s.parse().with_context(|| format!("invalid label {s:?}"))
}

fn eval(jmq: &str, x: &str, exact: bool, as_json: bool, digits: usize) -> Result<()> {
    let f = ajf(&parse_label(jmq)?);
    let (value, exact_value) = if exact {
        let xr = parse_rational(x)?;
        let v = f.evaluate_exact(&xr)?;
        (v.to_f64(), Some(v))
    } else {
        let xf = match x.parse::<f64>() {
            Ok(v) => v,
            Err(_) => RadicalScalar::from_rational(parse_rational(x).with_context(|| format!("invalid x {x:?}"))?).to_f64(),
        };
        (f.evaluate(xf)?, None)
    };
    if as_json {
        let mut out = serde_json::to_value(&f)?;
        out["x"] = json!(x);
        out["value"] = json!(value);
        if let Some(v) = &exact_value {
            out["exact"] = serde_json::to_value(v)?;
        }
        println!("{}", serde_json::to_string(&out)?);
    } else {
        match exact_value {
            Some(v) => println!("{v}"),
            None => println!("{}", fmt_float(value, digits)),
        }
    }
    Ok(())
}

/// At most `digits` significant digits.
fn fmt_float(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let s = format!("{:.*e}", digits.saturating_sub(1), v);
    let parsed: f64 = s.parse().unwrap_or(v);
    let plain = format!("{parsed}");
    if plain.len() <= digits + 8 {
        plain
    } else {
        s
    }
}

fn dmat(two_j: i64, beta: f64, csv: bool, as_json: bool, digits: usize) -> Result<()> {
    let d = d_matrix(two_j, beta)?;
    if as_json {
        println!("{}", serde_json::to_string(&d)?);
    } else if csv {
        print!("{}", d.to_csv());
    } else {
        let header: Vec<String> = (0..d.dim())
            .map(|c| HalfInt::from_twice(two_j - 2 * c as i64).to_string())
            .collect();
        println!("q\\m\t{}", header.join("\t"));
        for (r, row) in d.entries.iter().enumerate() {
            let vals: Vec<String> = row.iter().map(|v| fmt_float(*v, digits)).collect();
            println!("{}\t{}", HalfInt::from_twice(two_j - 2 * r as i64), vals.join("\t"));
        }
    }
    Ok(())
}

fn verify(suite: &str, window: i64, as_json: bool) -> Result<bool> {
    let suite: Suite = suite.parse()?;
    if window < 0 {
        bail!("window must be non-negative");
    }
    let report = run_suite(suite, window);
    if as_json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("{report}");
    }
    Ok(report.passed)
}

fn transform(direction: Direction, m: &str, q: &str, window: i64, input: &PathBuf) -> Result<()> {
    let two_m = m.parse::<HalfInt>()?.twice();
    let two_q = q.parse::<HalfInt>()?.twice();
    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    match direction {
        Direction::Analyze => {
            let f: WeightedPoly = serde_json::from_str(&text).context("input is not a weighted polynomial")?;
            println!("{}", serde_json::to_string(&analyze(&f, two_m, two_q, window)?)?);
        }
        Direction::Synthesize => {
            let c: CoefficientVector = serde_json::from_str(&text).context("input is not a coefficient vector")?;
            if (c.two_m, c.two_q) != (two_m, two_q) {
                return Err(anyhow!(
                    "input has (2m, 2q) = ({}, {}), flags give ({two_m}, {two_q})",
                    c.two_m,
                    c.two_q
                ));
            }
            if let Some(j) = c.entries.keys().find(|j| **j > window) {
                bail!("entry 2j = {j} exceeds the window {window}");
            }
            let f = synthesize(&c)?;
            match f.as_weighted_poly() {
                Some(w) => println!("{}", serde_json::to_string(&w)?),
                None => println!("{}", serde_json::to_string(&f)?),
            }
        }
    }
    Ok(())
}

fn table(op: &str, window: i64, as_json: bool) -> Result<()> {
    let g: Generator = op.parse()?;
    let mut rows = Vec::new();
    for t in JmqTriple::window(window) {
        let (coef, target) = match apply_generator_closed(g, &t) {
            Action::Shift { coef, target } => (Some(coef), Some(target)),
            Action::Annihilated => (None, None),
        };
        if as_json {
            rows.push(json!({"label": t, "coef": coef, "target": target}));
        } else {
            match (coef, target) {
                (Some(c), Some(t2)) => println!("{g} |{t}> = {c} |{t2}>"),
                _ => println!("{g} |{t}> = 0"),
            }
        }
    }
    if as_json {
        println!("{}", serde_json::to_string(&rows)?);
    }
    Ok(())
}
