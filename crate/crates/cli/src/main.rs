//! `zr`: command-line surface over the zerorate library.
//!
//! Exit codes: 0 success, 1 verdict/property failure, 2 usage or parse
//! error, 3 enumeration budget exceeded. Exact values print as fractions
//! `a/b` with a 12-digit decimal for display; the fractions are the
//! contract.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use zerorate::budget::Budget;
use zerorate::code::Codebook;
use zerorate::construction::{
    exact_expected_plurality, generate, radius_excess_coefficient, tradeoff_table,
    BalancedCodeSpec,
};
use zerorate::distributions::SimplexPoint;
use zerorate::error::Error;
use zerorate::lp;
use zerorate::radii::radius_report;
use zerorate::rational::{decimal_string, parse_rational, rat_int, Rational};
use zerorate::suite::{run_all, SuiteConfig};
use zerorate::thresholds::zero_rate_threshold;
use zerorate::verifier::{is_list_recoverable, verdict_to_json};

const DECIMAL_DIGITS: usize = 12;

#[derive(Parser)]
#[command(
    name = "zr",
    about = "Exact zero-rate thresholds, list radii, constructions and verifiers",
    version
)]
struct Cli {
    /// Cap the number of worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the zero-rate threshold p*(q, ell, L) as an exact fraction.
    Threshold(ThresholdArgs),
    /// All radius notions of a list of codewords, as JSON.
    Radius(RadiusArgs),
    /// Generate the balanced-column code for the given parameters.
    Construct(ConstructArgs),
    /// Exact size-radius trade-off table of the construction, as CSV.
    Tradeoff(TradeoffArgs),
    /// Exhaustive list-recoverability verdict with witness, as JSON.
    Verify(VerifyArgs),
    /// Run the seeded property-check suite.
    Propsuite(PropsuiteArgs),
}

#[derive(Args)]
struct ThresholdArgs {
    q: u8,
    ell: usize,
    list_len: usize,
    /// Emit JSON instead of the plain line.
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV instead of the plain line.
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct RadiusArgs {
    /// Codebook file (header `q n M`, one codeword per line).
    codefile: PathBuf,
    /// Comma-separated row indices of the list (default: all rows).
    #[arg(long, value_delimiter = ',')]
    list: Option<Vec<usize>>,
    /// Input-set size of the recovery balls.
    #[arg(long, default_value_t = 1)]
    ell: usize,
    /// Extra weighting(s) for the weighted average radius, e.g. `1/2,1/4,1/4`.
    #[arg(long)]
    omega: Vec<String>,
    /// Dump the relaxed-radius LP matrix as TSV to this file.
    #[arg(long)]
    dump_lp: Option<PathBuf>,
}

#[derive(Args)]
struct ConstructArgs {
    q: u8,
    ell: usize,
    list_len: usize,
    m: usize,
    /// Write the codebook here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TradeoffArgs {
    q: u8,
    ell: usize,
    list_len: usize,
    /// Comma-separated m values, e.g. `1,2,3`.
    #[arg(long = "m-list", value_delimiter = ',', required = true)]
    m_list: Vec<usize>,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    codefile: PathBuf,
    /// Noise level, e.g. `1/3` or `0.25`.
    p: String,
    ell: usize,
    list_len: usize,
}

#[derive(Args)]
struct PropsuiteArgs {
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    trials: usize,
}

fn rational_json(r: &Rational) -> Value {
    json!(r.to_string())
}

fn read_codebook(path: &PathBuf) -> Result<Codebook, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    Codebook::parse(&text)
}

fn parse_omega(spec: &str, expected_len: usize) -> Result<SimplexPoint, Error> {
    let entries: Vec<Rational> = spec
        .split(',')
        .map(parse_rational)
        .collect::<Result<_, _>>()?;
    if entries.len() != expected_len {
        return Err(Error::LengthMismatch(entries.len(), expected_len));
    }
    SimplexPoint::exact(entries)
}

fn cmd_threshold(args: &ThresholdArgs) -> Result<u8, Error> {
    let p = zero_rate_threshold(args.q, args.ell, args.list_len)?;
    let dec = decimal_string(&p, DECIMAL_DIGITS);
    if args.json {
        let doc = json!({
            "q": args.q,
            "ell": args.ell,
            "L": args.list_len,
            "p_star": p.to_string(),
            "decimal": dec,
        });
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else if args.csv {
        println!("q,ell,L,p_star,decimal");
        println!("{},{},{},{},{}", args.q, args.ell, args.list_len, p, dec);
    } else {
        println!("p*({},{},{}) = {} = {}", args.q, args.ell, args.list_len, p, dec);
    }
    Ok(0)
}

fn cmd_radius(args: &RadiusArgs) -> Result<u8, Error> {
    let budget = Budget::from_env();
    let code = read_codebook(&args.codefile)?;
    let indices: Vec<usize> = match &args.list {
        Some(list) => list.clone(),
        None => (0..code.len()).collect(),
    };
    if indices.is_empty() {
        return Err(Error::InvalidParameter("empty list of rows".into()));
    }
    let rows = code.list(&indices)?;
    let omegas: Vec<(String, SimplexPoint)> = args
        .omega
        .iter()
        .map(|spec| Ok((spec.clone(), parse_omega(spec, rows.len())?)))
        .collect::<Result<_, Error>>()?;
    if let Some(path) = &args.dump_lp {
        let problem = lp::relaxed_radius_lp(code.q(), &rows, args.ell)?;
        std::fs::write(path, problem.to_tsv())
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
    }
    let report = radius_report(code.q(), &rows, args.ell, &omegas, &budget)?;

    let weighted: BTreeMap<String, Value> = report
        .weighted
        .iter()
        .map(|(k, v)| (k.clone(), rational_json(v)))
        .collect();
    let mut doc = json!({
        "q": report.q,
        "n": report.n,
        "ell": report.ell,
        "list": indices,
        "average": report.average.to_string(),
        "average_decimal": decimal_string(&report.average, DECIMAL_DIGITS),
        "weighted": weighted,
        "relaxed": report.relaxed,
        "relaxed_center": report.relaxed_center.blocks,
    });
    let budget_limited = report.chebyshev.is_none();
    if let (Some(cheb), Some(center)) = (&report.chebyshev, &report.chebyshev_center) {
        doc["chebyshev"] = rational_json(cheb);
        doc["chebyshev_decimal"] = json!(decimal_string(cheb, DECIMAL_DIGITS));
        doc["chebyshev_center"] = json!(center.all_symbols());
    }
    let (rounded, rounded_radius) = lp::round_center(&report.relaxed_center, &rows)?;
    doc["rounded_center"] = json!(rounded.all_symbols());
    doc["rounded_radius"] = rational_json(&rounded_radius);
    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    Ok(if budget_limited { 3 } else { 0 })
}

fn cmd_construct(args: &ConstructArgs) -> Result<u8, Error> {
    let budget = Budget::from_env();
    let spec = BalancedCodeSpec::new(args.q, args.ell, args.list_len, args.m)?;
    if spec.is_binary() {
        eprintln!(
            "note: q = 2 sits outside the guaranteed trade-off regime; \
             generated for cross-checks only"
        );
    }
    let code = generate(&spec, &budget)?;
    let p_exact = rat_int(1) - exact_expected_plurality(&spec)?;
    let p_star = zero_rate_threshold(args.q, args.ell, args.list_len)?;
    eprintln!(
        "balanced code: M = {}, n = {}, p_exact = {} = {}, p* = {} = {}",
        spec.code_size(),
        code.n(),
        p_exact,
        decimal_string(&p_exact, DECIMAL_DIGITS),
        p_star,
        decimal_string(&p_star, DECIMAL_DIGITS),
    );
    let text = code.to_file_string();
    match &args.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn cmd_tradeoff(args: &TradeoffArgs) -> Result<u8, Error> {
    let rows = tradeoff_table(args.q, args.ell, args.list_len, &args.m_list)?;
    let coeff = radius_excess_coefficient(args.q, args.ell, args.list_len)?;
    if !coeff.positivity_guaranteed {
        eprintln!("note: positivity of the trade-off coefficient is not guaranteed for L <= ell");
    }
    let mut out = String::from("m,M,n,p_exact,p_star,c_over_m,residual\n");
    for row in &rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.m, row.code_size, row.blocklength, row.p_exact, row.p_star, row.c_over_m,
            row.residual
        ));
    }
    match &args.out {
        Some(path) => std::fs::write(path, out)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{out}"),
    }
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8, Error> {
    let budget = Budget::from_env();
    let code = read_codebook(&args.codefile)?;
    let p = parse_rational(&args.p)?;
    let verdict = is_list_recoverable(&code, &p, args.ell, args.list_len, &budget)?;
    println!("{}", verdict_to_json(&verdict, &p, args.ell, args.list_len));
    Ok(if verdict.is_pass() { 0 } else { 1 })
}

fn cmd_propsuite(args: &PropsuiteArgs) -> Result<u8, Error> {
    let cfg = SuiteConfig {
        seed: args.seed,
        trials: args.trials,
        budget: Budget::from_env(),
    };
    let outcomes = run_all(&cfg);
    let mut failures = 0;
    for o in &outcomes {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {}: {}", o.name, o.detail);
        if !o.passed {
            failures += 1;
        }
    }
    println!(
        "propsuite: {} passed, {failures} failed (seed {}, trials {})",
        outcomes.len() - failures,
        args.seed,
        args.trials
    );
    Ok(if failures == 0 { 0 } else { 1 })
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Threshold(a) => cmd_threshold(a),
        Command::Radius(a) => cmd_radius(a),
        Command::Construct(a) => cmd_construct(a),
        Command::Tradeoff(a) => cmd_tradeoff(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Propsuite(a) => cmd_propsuite(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads;
    match zerorate::par::run_with_threads(threads, move || run(&cli)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
