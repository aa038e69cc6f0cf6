//! Command-line surface for the sl2ext calculator.
//!
//! Every subcommand prints a deterministic JSON envelope on stdout
//! (except `trace --format dot`, which prints raw Graphviz); `verify`
//! additionally prints one report line per check on stderr. Exit status:
//! 0 on success, 1 when a verification check fails, 2 on usage errors.

mod envelope;
mod render;

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};
use sl2ext::{
    orbit_linked, run_verification, same_block, trace, ExtEngine, ExtQuery, OrbitBound, PadicSplit,
    Prime,
};

use envelope::{envelope, exact, print_envelope};

const EXIT_CHECK_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn parse_biguint(s: &str) -> Result<BigUint, num_bigint::ParseBigIntError> {
    BigUint::from_str(s)
}

#[derive(Parser)]
#[command(
    name = "sl2ext",
    version,
    about = "Exact Ext-group dimensions for SL2 in characteristic p",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// dim Ext^q(k, nabla(2)^(r)); at the default q = 2p^(r-1) this is the
    /// one-dimensional Ext group of the universal class
    Ext {
        /// characteristic of the base field (prime)
        #[arg(long)]
        p: u64,
        /// Frobenius twist of the target, r >= 1
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        /// cohomological degree; defaults to 2p^(r-1)
        #[arg(long, value_parser = parse_biguint)]
        q: Option<BigUint>,
    },
    /// dim Ext^m(Delta(n), nabla(2)^(s))
    ExtDn {
        #[arg(long)]
        p: u64,
        /// highest weight of the Weyl-module source
        #[arg(long, value_parser = parse_biguint)]
        n: BigUint,
        /// cohomological degree
        #[arg(long, value_parser = parse_biguint)]
        m: BigUint,
        /// Frobenius twist of the target
        #[arg(long)]
        s: u32,
    },
    /// Expand a query into its recursion DAG (JSON or Graphviz dot)
    Trace {
        #[arg(long)]
        p: u64,
        #[arg(long, value_parser = parse_biguint)]
        n: BigUint,
        #[arg(long, value_parser = parse_biguint)]
        m: BigUint,
        #[arg(long)]
        s: u32,
        #[arg(long, value_enum, default_value_t = TraceFormat::Json)]
        format: TraceFormat,
        /// drop zero-dimensional children from the output
        #[arg(long)]
        prune: bool,
    },
    /// Block membership of a pair of weights
    Blocks {
        #[arg(long)]
        p: u64,
        #[arg(long, value_parser = parse_biguint)]
        lambda: BigUint,
        #[arg(long, value_parser = parse_biguint)]
        mu: BigUint,
        /// also run the dot-action orbit oracle within this cutoff
        #[arg(long, value_name = "B", value_parser = parse_biguint)]
        oracle: Option<BigUint>,
    },
    /// Run the conformance suite over a grid of primes and twists
    Verify {
        /// comma-separated list of primes
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        /// largest Frobenius twist to check, >= 1
        #[arg(long = "r-max", value_parser = clap::value_parser!(u32).range(1..))]
        r_max: u32,
    },
    /// Generator ledger and Hilbert series of the universal-class algebra
    Hilbert {
        #[arg(long)]
        p: u64,
        /// number of universal classes, r >= 1
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        /// truncation degree of the series
        #[arg(long = "max-degree")]
        max_degree: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TraceFormat {
    Json,
    Dot,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn prime(p: u64) -> Result<Prime, String> {
    Prime::new(p).map_err(|e| e.to_string())
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Ext { p, r, q } => cmd_ext(prime(p)?, r, q),
        Command::ExtDn { p, n, m, s } => cmd_ext_dn(prime(p)?, n, m, s),
        Command::Trace {
            p,
            n,
            m,
            s,
            format,
            prune,
        } => cmd_trace(prime(p)?, n, m, s, format, prune),
        Command::Blocks {
            p,
            lambda,
            mu,
            oracle,
        } => cmd_blocks(prime(p)?, lambda, mu, oracle),
        Command::Verify { primes, r_max } => {
            let primes = primes
                .into_iter()
                .map(prime)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(cmd_verify(&primes, r_max))
        }
        Command::Hilbert { p, r, max_degree } => cmd_hilbert(prime(p)?, r, max_degree),
    }
}

fn cmd_ext(p: Prime, r: u32, q: Option<BigUint>) -> Result<ExitCode, String> {
    let top = p.two_p_pow(r - 1);
    let q = q.unwrap_or_else(|| top.clone());
    let engine = ExtEngine::new();
    let dim = engine.ext_k_nabla2(&q, r, p);

    let mut notes = Vec::new();
    let decomposition = if q == top {
        notes.push(
            "q = 2p^(r-1): this is dim Ext^q(k, gl2^(r)) for SL2, and by restriction \
             the GL2 dimension as well"
                .to_string(),
        );
        let summands: Vec<Value> = engine
            .decompose_ext_k_nabla2(&q, r, p)
            .into_iter()
            .map(|(n, d)| json!({"n": exact(&n), "dim": exact(&d)}))
            .collect();
        Value::Array(summands)
    } else {
        notes.push(format!(
            "formula extrapolation: dimension guarantees are asserted only at q = 2p^(r-1) = {top}"
        ));
        Value::Null
    };

    print_envelope(&envelope(
        "ext",
        json!({"p": p.get(), "r": r, "q": exact(&q)}),
        json!({"q": exact(&q), "dim": exact(&dim), "decomposition": decomposition}),
        &notes,
    ));
    Ok(ExitCode::SUCCESS)
}

fn cmd_ext_dn(p: Prime, n: BigUint, m: BigUint, s: u32) -> Result<ExitCode, String> {
    let engine = ExtEngine::new();
    let query = ExtQuery {
        m: m.clone(),
        n: n.clone(),
        s,
        p,
    };
    let dim = engine.ext_delta_nabla2(&query);
    print_envelope(&envelope(
        "ext-dn",
        json!({"p": p.get(), "n": exact(&n), "m": exact(&m), "s": s}),
        json!({"dim": exact(&dim)}),
        &[],
    ));
    Ok(ExitCode::SUCCESS)
}

fn cmd_trace(
    p: Prime,
    n: BigUint,
    m: BigUint,
    s: u32,
    format: TraceFormat,
    prune: bool,
) -> Result<ExitCode, String> {
    let query = ExtQuery {
        m: m.clone(),
        n: n.clone(),
        s,
        p,
    };
    let dag = trace(&query);
    let dag = if prune { dag.pruned() } else { dag };
    match format {
        TraceFormat::Json => {
            print_envelope(&envelope(
                "trace",
                json!({
                    "p": p.get(),
                    "n": exact(&n),
                    "m": exact(&m),
                    "s": s,
                    "format": "json",
                    "prune": prune,
                }),
                render::dag_to_json(&dag),
                &[],
            ));
        }
        TraceFormat::Dot => print!("{}", render::dag_to_dot(&dag)),
    }
    Ok(ExitCode::SUCCESS)
}

fn split_json(split: &PadicSplit) -> Value {
    json!({"a": exact(&split.a), "i": split.i})
}

fn cmd_blocks(
    p: Prime,
    lambda: BigUint,
    mu: BigUint,
    oracle: Option<BigUint>,
) -> Result<ExitCode, String> {
    let same = same_block(&lambda, &mu, p);
    let orbit = match &oracle {
        Some(bound) => {
            let linked = orbit_linked(&lambda, &mu, p, &OrbitBound(bound.clone()))
                .map_err(|e| e.to_string())?;
            json!({"linked": linked, "bound": exact(bound)})
        }
        None => Value::Null,
    };
    print_envelope(&envelope(
        "blocks",
        json!({
            "p": p.get(),
            "lambda": exact(&lambda),
            "mu": exact(&mu),
            "oracle": oracle.as_ref().map(exact).unwrap_or(Value::Null),
        }),
        json!({
            "same_block": same,
            "lambda": split_json(&sl2ext::p_decompose(&lambda, p)),
            "mu": split_json(&sl2ext::p_decompose(&mu, p)),
            "orbit": orbit,
        }),
        &[],
    ));
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(primes: &[Prime], r_max: u32) -> ExitCode {
    let report = run_verification(primes, r_max);
    for check in &report.checks {
        let status = if check.passed { "PASS" } else { "FAIL" };
        eprintln!("[{status}] {}: {}", check.name, check.details);
    }
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "passed": c.passed, "details": c.details}))
        .collect();
    let all_passed = report.all_passed();
    print_envelope(&envelope(
        "verify",
        json!({
            "primes": primes.iter().map(|p| p.get()).collect::<Vec<_>>(),
            "r_max": r_max,
        }),
        json!({"all_passed": all_passed, "checks": checks}),
        &[],
    ));
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILURE)
    }
}

fn cmd_hilbert(p: Prime, r: u32, max_degree: usize) -> Result<ExitCode, String> {
    let generators: Vec<Value> = sl2ext::generator_ledger(r, p)
        .iter()
        .map(|e| {
            json!({
                "index": e.index,
                "degree": exact(&e.degree),
                "coeff_dim": e.coeff_dim,
                "twist": e.twist,
            })
        })
        .collect();
    let series = sl2ext::hilbert(r, p, max_degree);
    let coefficients: Vec<Value> = series.coefficients.iter().map(exact).collect();
    print_envelope(&envelope(
        "hilbert",
        json!({"p": p.get(), "r": r, "max_degree": max_degree}),
        json!({"generators": generators, "coefficients": coefficients}),
        &[],
    ));
    Ok(ExitCode::SUCCESS)
}
