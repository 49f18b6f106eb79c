//! Command-line surface for the exact Mahler summability toolkit.

mod parse;

use clap::{Parser, Subcommand};
use mahler_core::error::Error;
use mahler_core::mahlercoeff;
use mahler_core::ratfun::pf_decompose;
use mahler_core::residues;
use mahler_core::telescope;
use mahler_core::trees;
use serde_json::{json, Value};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "mahler",
    about = "Exact twisted Mahler summability: residues, certificates, telescoping",
    disable_help_subcommand = true
)]
struct Cli {
    /// Radix of the Mahler operator x -> x^p (required by every verb).
    #[arg(long, global = true)]
    p: Option<u32>,
    /// Twist of the difference p^lambda g(x^p) - g(x).
    #[arg(long, global = true, allow_hyphen_values = true)]
    lambda: Option<i64>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Run a fixture file (one JSON object per line: {"command": ..., "expect": ...}).
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,
    #[command(subcommand)]
    verb: Option<Verb>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Exact partial fraction decomposition of an expression.
    Decompose { expr: String },
    /// All twisted Mahler discrete residues of an expression.
    Residues { expr: String },
    /// Decide lambda-Mahler summability.
    Summable { expr: String },
    /// Mahler reduction: residual remainder and pre-image.
    Reduce { expr: String },
    /// Certificate g with f = p^lambda g(x^p) - g(x), when it exists.
    Certify { expr: String },
    /// Differential dependence of solutions of y(x^p) = a_i(x) y(x).
    Telescope { exprs: Vec<String> },
    /// Universal Mahler coefficient for indices m k n.
    Vcoeff { m: u32, k: u32, n: u32 },
    /// Mahler dispersions over the support of an expression.
    Disp { expr: String },
}

fn main() {
    let cli = Cli::parse();
    if let Some(path) = &cli.fixtures {
        std::process::exit(run_fixtures(path));
    }
    let Some(verb) = cli.verb else {
        eprintln!("error: a subcommand (or --fixtures) is required");
        std::process::exit(2);
    };
    match run(&verb, cli.p, cli.lambda, cli.json) {
        Ok(output) => {
            println!("{}", output);
        }
        Err(e) => {
            eprintln!("error: {}", e);
            std::process::exit(exit_code(&e));
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ParseError { .. } => 2,
        Error::UnsupportedDenominator(_)
        | Error::UnsupportedAlgebraicPoint(_)
        | Error::UnsupportedRadicalIndex(_) => 3,
        Error::InternalVerificationFailure(_) => 4,
        _ => 1,
    }
}

fn need_p(p: Option<u32>) -> Result<u32, Error> {
    match p {
        Some(p) if p >= 2 => Ok(p),
        Some(_) => Err(Error::ParseError { pos: 0, msg: "--p must be at least 2".into() }),
        None => Err(Error::ParseError { pos: 0, msg: "--p is required".into() }),
    }
}

fn need_lambda(lambda: Option<i64>) -> Result<i64, Error> {
    lambda.ok_or(Error::ParseError { pos: 0, msg: "--lambda is required".into() })
}

fn run(verb: &Verb, p: Option<u32>, lambda: Option<i64>, as_json: bool) -> Result<String, Error> {
    match verb {
        Verb::Vcoeff { m, k, n } => {
            let p = need_p(p)?;
            Ok(format!("{}", mahlercoeff::v_taylor(p, *m, *k, *n)))
        }
        Verb::Decompose { expr } => {
            let p = need_p(p)?;
            let f = parse::parse_expr(expr, p)?;
            let pfd = pf_decompose(&f, p)?;
            if as_json {
                let laurent: Vec<Value> = pfd
                    .laurent
                    .iter()
                    .map(|(e, c)| json!({"exp": e, "value": c.to_string()}))
                    .collect();
                let mut poles = Vec::new();
                for (pt, coeffs) in &pfd.poles {
                    for (k, c) in coeffs {
                        poles.push(json!({
                            "point": pt.to_string(),
                            "order": k,
                            "value": c.to_string()
                        }));
                    }
                }
                Ok(json!({"laurent": laurent, "poles": poles}).to_string())
            } else {
                let mut out = Vec::new();
                for (e, c) in &pfd.laurent {
                    out.push(format!("laurent {}: {}", e, c));
                }
                for (pt, coeffs) in &pfd.poles {
                    for (k, c) in coeffs {
                        out.push(format!("pole {} order {}: {}", pt, k, c));
                    }
                }
                if out.is_empty() {
                    out.push("0".to_string());
                }
                Ok(out.join("\n"))
            }
        }
        Verb::Summable { expr } => {
            let p = need_p(p)?;
            let lambda = need_lambda(lambda)?;
            let f = parse::parse_expr(expr, p)?;
            let s = residues::is_summable(&f, p, lambda)?;
            Ok(format!("{}", s))
        }
        Verb::Certify { expr } => {
            let p = need_p(p)?;
            let lambda = need_lambda(lambda)?;
            let f = parse::parse_expr(expr, p)?;
            match residues::certificate(&f, p, lambda)? {
                Some(g) => Ok(format!("{}", g)),
                None => Ok("none".to_string()),
            }
        }
        Verb::Reduce { expr } => {
            let p = need_p(p)?;
            let lambda = need_lambda(lambda)?;
            let f = parse::parse_expr(expr, p)?;
            let red = residues::reduce(&f, p, lambda)?;
            if as_json {
                Ok(json!({
                    "residual": red.residual.to_string(),
                    "certificate_part": red.certificate_part.to_string(),
                })
                .to_string())
            } else {
                Ok(format!(
                    "residual: {}\ncertificate_part: {}",
                    red.residual, red.certificate_part
                ))
            }
        }
        Verb::Residues { expr } => {
            let p = need_p(p)?;
            let lambda = need_lambda(lambda)?;
            let f = parse::parse_expr(expr, p)?;
            let red = residues::reduce(&f, p, lambda)?;
            let payload = residues_json(&red, p, lambda);
            if as_json {
                Ok(payload.to_string())
            } else {
                let mut out = Vec::new();
                out.push(format!("summable: {}", red.residual.is_zero()));
                for (i, c) in &red.residues.infinity.entries {
                    out.push(format!("infinity traj {}: {}", i, c));
                }
                for tr in &red.residues.trees {
                    for (pt, c) in &tr.entries {
                        out.push(format!(
                            "tree {} degree {} at {}: {}",
                            tr.tree.key, tr.degree, pt, c
                        ));
                    }
                }
                out.push(format!("residual: {}", red.residual));
                Ok(out.join("\n"))
            }
        }
        Verb::Telescope { exprs } => {
            let p = need_p(p)?;
            if exprs.is_empty() {
                return Err(Error::ParseError {
                    pos: 0,
                    msg: "telescope needs at least one expression".into(),
                });
            }
            let mut a = Vec::new();
            for e in exprs {
                a.push(parse::parse_expr(e, p)?);
            }
            let matrix = telescope::logderiv_residues(&a, p)?;
            let verdict = telescope::decide_dependence(&a, p)?;
            let matrix_json: Vec<Value> = matrix
                .rows
                .iter()
                .zip(&matrix.entries)
                .map(|(row, entries)| {
                    json!({
                        "tree": row.tree_key,
                        "point": row.point.to_string(),
                        "entries": entries.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let payload = json!({
                "dependent": verdict.dependent,
                "k": verdict
                    .coefficients
                    .as_ref()
                    .map(|ks| ks.iter().map(|k| k.to_string()).collect::<Vec<_>>()),
                "g": verdict.witness.as_ref().map(|g| g.to_string()),
                "matrix": matrix_json,
            });
            if as_json {
                Ok(payload.to_string())
            } else {
                let mut out = vec![format!("dependent: {}", verdict.dependent)];
                if let Some(ks) = &verdict.coefficients {
                    let ks: Vec<String> = ks.iter().map(|k| k.to_string()).collect();
                    out.push(format!("k: ({})", ks.join(", ")));
                }
                if let Some(g) = &verdict.witness {
                    out.push(format!("g: {}", g));
                }
                Ok(out.join("\n"))
            }
        }
        Verb::Disp { expr } => {
            let p = need_p(p)?;
            let f = parse::parse_expr(expr, p)?;
            let pfd = pf_decompose(&f, p)?;
            let mut out = Vec::new();
            let mut payload = Vec::new();
            for elem in trees::supp(&pfd, p) {
                match elem {
                    trees::SuppElem::Infinity => {
                        let d = trees::disp_at_infinity(&pfd, p)?;
                        out.push(format!("infinity: {}", d));
                        payload.push(json!({"locus": "infinity", "disp": d.to_string()}));
                    }
                    trees::SuppElem::Tree(tree) => {
                        let d = trees::disp_at_tree(&pfd, &tree, p)?;
                        out.push(format!("tree {}: {}", tree.key, d));
                        payload.push(json!({"locus": tree.key, "disp": d.to_string()}));
                    }
                }
            }
            if out.is_empty() {
                out.push("empty support".into());
            }
            if as_json {
                Ok(Value::Array(payload).to_string())
            } else {
                Ok(out.join("\n"))
            }
        }
    }
}

fn residues_json(red: &residues::Reduction, p: u32, lambda: i64) -> Value {
    let infinity: Vec<Value> = red
        .residues
        .infinity
        .entries
        .iter()
        .map(|(i, c)| json!({"traj": i, "value": c.to_string()}))
        .collect();
    let mut tree_entries = Vec::new();
    for tr in &red.residues.trees {
        for (pt, c) in &tr.entries {
            tree_entries.push(json!({
                "tree": tr.tree.key,
                "degree": tr.degree,
                "point": pt.to_string(),
                "value": c.to_string(),
            }));
        }
    }
    let certificate = if red.residual.is_zero() {
        Some(red.certificate_part.neg().to_string())
    } else {
        None
    };
    json!({
        "p": p,
        "lambda": lambda,
        "summable": red.residual.is_zero(),
        "residues": {"infinity": infinity, "trees": tree_entries},
        "certificate": certificate,
        "residual": red.residual.to_string(),
    })
}

/// Runs newline-delimited fixtures: {"command": "..." | [...], "expect": "..."}.
fn run_fixtures(path: &PathBuf) -> i32 {
    let body = match std::fs::read_to_string(path) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: cannot read {}: {}", path.display(), e);
            return 1;
        }
    };
    let mut failures = 0;
    let mut total = 0;
    for (lineno, line) in body.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        total += 1;
        let parsed: Value = match serde_json::from_str(line) {
            Ok(v) => v,
            Err(e) => {
                eprintln!("line {}: invalid JSON: {}", lineno + 1, e);
                failures += 1;
                continue;
            }
        };
        let args: Vec<String> = match &parsed["command"] {
            Value::String(s) => s.split_whitespace().map(|t| t.to_string()).collect(),
            Value::Array(items) => items
                .iter()
                .map(|v| v.as_str().unwrap_or_default().to_string())
                .collect(),
            _ => {
                eprintln!("line {}: missing command", lineno + 1);
                failures += 1;
                continue;
            }
        };
        let expect = parsed["expect"].as_str().unwrap_or_default();
        let mut argv = vec!["mahler".to_string()];
        argv.extend(args);
        let cli = match Cli::try_parse_from(&argv) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("line {}: bad command: {}", lineno + 1, e);
                failures += 1;
                continue;
            }
        };
        let verb = cli.verb.expect("fixture command includes a verb");
        match run(&verb, cli.p, cli.lambda, cli.json) {
            Ok(out) if out.trim() == expect.trim() => {
                println!("line {}: ok", lineno + 1);
            }
            Ok(out) => {
                println!("line {}: MISMATCH\n  expect: {}\n  got:    {}", lineno + 1, expect, out);
                failures += 1;
            }
            Err(e) => {
                println!("line {}: ERROR {}", lineno + 1, e);
                failures += 1;
            }
        }
    }
    println!("{} fixtures, {} failures", total, failures);
    if failures > 0 {
        1
    } else {
        0
    }
}
