use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use torsion_genus::euler::{euler_crosscheck, euler_torsion};
use torsion_genus::genus::GenusTable;
use torsion_genus::report::{Report, Verdict};
use torsion_genus::series::{IntSeries, Rational, Truncation};
use torsion_genus::spin::{
    compare_generators, delta_compare, CentralizerGenerator, DeltaProvider, DEFAULT_ORACLE_BOUND,
};
use torsion_genus::sym::{four_blocks, sector_average_numeric, sector_series, verify_dmvv};
use torsion_genus::theta::check_identities;

/// Orbifold elliptic genera of symmetric products with spin discrete torsion.
#[derive(Parser, Debug)]
#[command(name = "torsion-genus", version)]
struct Cli {
    /// Emit JSON instead of TSV.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compare the partition sum with the product formula.
    Dmvv(DmvvArgs),
    /// Tabulate δ(g, h) from the Clifford oracle and from the rules.
    Delta(DeltaArgs),
    /// Orbifold Euler characteristic with discrete torsion.
    Euler(EulerArgs),
    /// Check the theta-function transformation laws at random points.
    ThetaCheck(ThetaArgs),
    /// Dump the sector series T_j and T_j^-.
    Sectors(SectorArgs),
}

#[derive(Args, Debug)]
struct Window {
    /// Largest power of p.
    #[arg(long, default_value_t = 5)]
    pmax: u32,
    /// Largest power of q (integer or a/b).
    #[arg(long, default_value = "2")]
    qmax: String,
}

#[derive(Args, Debug)]
struct DmvvArgs {
    #[arg(long)]
    table: PathBuf,
    /// Include the spin discrete torsion.
    #[arg(long)]
    twisted: bool,
    /// Read the table as the coefficients of a G-orbifold (wreath product G ≀ S_N).
    #[arg(long)]
    wreath: bool,
    #[command(flatten)]
    window: Window,
}

#[derive(Args, Debug)]
struct DeltaArgs {
    #[arg(long)]
    n: usize,
    /// Largest degree allowed for Clifford lifts.
    #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
    bound: usize,
    /// One row per centralizer generator instead of per pair.
    #[arg(long)]
    generators: bool,
    /// Only print rows where the providers disagree.
    #[arg(long)]
    disagreements: bool,
}

#[derive(Args, Debug)]
struct EulerArgs {
    /// Largest N; every N up to it is reported.
    #[arg(long)]
    n: usize,
    /// Euler number of X.
    #[arg(long, allow_hyphen_values = true)]
    euler_x: Option<i64>,
    /// oracle, rules or trivial; all three when omitted.
    #[arg(long)]
    provider: Option<DeltaProvider>,
    /// Cross-check against the twisted series of this table.
    #[arg(long, conflicts_with = "euler_x")]
    table: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ThetaArgs {
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args, Debug)]
struct SectorArgs {
    #[arg(long)]
    table: PathBuf,
    /// Largest cycle length j.
    #[arg(long, default_value_t = 4)]
    jmax: u32,
    #[arg(long, default_value = "2")]
    qmax: String,
}

fn rational(r: Rational) -> Value {
    if r.is_integer() {
        json!(r.to_integer())
    } else {
        json!(r.to_string())
    }
}

fn big(c: &BigInt) -> Value {
    match i64::try_from(c) {
        Ok(v) => json!(v),
        Err(_) => json!(c.to_string()),
    }
}

fn big_rational(r: &BigRational) -> Value {
    if r.is_integer() {
        big(&r.to_integer())
    } else {
        json!(r.to_string())
    }
}

fn parse_q(s: &str) -> Result<Rational, String> {
    let r = match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| format!("bad q bound `{s}`"))?;
            let d: i64 = d.trim().parse().map_err(|_| format!("bad q bound `{s}`"))?;
            if d <= 0 {
                return Err(format!("bad q bound `{s}`"));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(s.trim().parse().map_err(|_| format!("bad q bound `{s}`"))?),
    };
    if r < Rational::from_integer(0) {
        return Err(format!("q bound `{s}` is negative"));
    }
    Ok(r)
}

fn load(path: &Path) -> Result<GenusTable, String> {
    GenusTable::load(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn push_series(report: &mut Report, name: &str, s: &IntSeries) {
    for (e, c) in s.terms() {
        report.push(vec![
            json!(name),
            json!(e.p),
            rational(e.q),
            rational(e.y),
            big(c),
        ]);
    }
}

fn dmvv(args: &DmvvArgs) -> Result<Report, String> {
    let table = load(&args.table)?;
    let trunc = Truncation::new(args.window.pmax, parse_q(&args.window.qmax)?);
    let check = verify_dmvv(&table, args.twisted, trunc).map_err(|e| e.to_string())?;
    let mut report = Report::new("dmvv", &["series", "p", "q", "y", "coefficient"]);
    report
        .config("table", args.table.display().to_string())
        .config("coefficients", if args.wreath { "c_G" } else { "c" })
        .config("twisted", args.twisted)
        .config("pmax", args.window.pmax)
        .config("qmax", rational(trunc.q_max));
    let euler: Vec<Value> = check.euler_coefficients().iter().map(big).collect();
    report.config("euler_coefficients", euler);
    push_series(&mut report, "direct", &check.direct);
    push_series(&mut report, "product", &check.product);
    if args.twisted {
        let blocks = four_blocks(&table, trunc).map_err(|e| e.to_string())?;
        for (name, s) in [
            ("Z++", &blocks.pp),
            ("Z+-", &blocks.pm),
            ("Z-+", &blocks.mp),
            ("Z--", &blocks.mm),
        ] {
            push_series(&mut report, name, s);
        }
    }
    report.verdict = Verdict::from_bool(check.matches(), "MATCH", "MISMATCH");
    Ok(report)
}

fn generator_label(g: &CentralizerGenerator) -> String {
    match *g {
        CentralizerGenerator::CycleSwap { j, a, b } => format!("swap j={j} {a}<->{b}"),
        CentralizerGenerator::Rotation { j, cycle, power } => {
            format!("rotate j={j} cycle={cycle} by {power}")
        }
    }
}

fn flag(agree: bool) -> &'static str {
    if agree {
        "AGREE"
    } else {
        "DISAGREE"
    }
}

fn delta(args: &DeltaArgs) -> Result<Report, String> {
    let mut report;
    let disagreements;
    if args.generators {
        let rows = compare_generators(args.n, args.bound).map_err(|e| e.to_string())?;
        report = Report::new("delta", &["g", "generator", "h", "oracle", "rules", "flag"]);
        disagreements = rows.iter().filter(|r| !r.agree()).count();
        for r in rows.iter().filter(|r| !args.disagreements || !r.agree()) {
            report.push(vec![
                json!(r.g.to_string()),
                json!(generator_label(&r.generator)),
                json!(r.h.to_string()),
                json!(r.oracle),
                json!(r.rules),
                json!(flag(r.agree())),
            ]);
        }
    } else {
        let cmp = delta_compare(args.n, args.bound).map_err(|e| e.to_string())?;
        report = Report::new("delta", &["g", "h", "oracle", "rules", "flag"]);
        disagreements = cmp.disagreements().count();
        for r in cmp
            .rows
            .iter()
            .filter(|r| !args.disagreements || !r.agree())
        {
            report.push(vec![
                json!(r.g.to_string()),
                json!(r.h.to_string()),
                json!(r.oracle),
                json!(r.rules),
                json!(flag(r.agree())),
            ]);
        }
    }
    report
        .config("n", args.n)
        .config("bound", args.bound)
        .config("generators", args.generators)
        .config("disagreements", disagreements);
    // provider disagreement is a finding, not a failure
    report.verdict = Verdict::pass(if disagreements == 0 {
        "AGREE"
    } else {
        "DISAGREE"
    });
    Ok(report)
}

fn euler(args: &EulerArgs) -> Result<Report, String> {
    if let Some(path) = &args.table {
        let table = load(path)?;
        let checks = euler_crosscheck(&table, args.n).map_err(|e| e.to_string())?;
        let mut report = Report::new(
            "euler",
            &[
                "n",
                "e_x",
                "series",
                "rules",
                "oracle",
                "trivial",
                "rules_match",
                "oracle_match",
            ],
        );
        report
            .config("table", path.display().to_string())
            .config("n", args.n);
        for c in &checks {
            report.push(vec![
                json!(c.n),
                big(&c.e_x),
                big(&c.series),
                big_rational(&c.rules),
                big_rational(&c.oracle),
                big_rational(&c.trivial),
                json!(c.rules_match()),
                json!(c.oracle_match()),
            ]);
        }
        report.verdict =
            Verdict::from_bool(checks.iter().all(|c| c.rules_match()), "MATCH", "MISMATCH");
        return Ok(report);
    }
    let e_x = args
        .euler_x
        .ok_or("either --euler-x or --table is required")?;
    let providers: Vec<DeltaProvider> = match args.provider {
        Some(p) => vec![p],
        None => DeltaProvider::ALL.to_vec(),
    };
    let mut report = Report::new("euler", &["n", "e_x", "provider", "value"]);
    report.config("n", args.n).config("e_x", e_x);
    for n in 0..=args.n {
        for p in &providers {
            let v = euler_torsion(n, e_x, *p).map_err(|e| e.to_string())?;
            report.push(vec![
                json!(n),
                json!(e_x),
                json!(p.name()),
                big_rational(&v),
            ]);
        }
    }
    report.verdict = Verdict::pass("COMPUTED");
    Ok(report)
}

fn theta(args: &ThetaArgs) -> Result<Report, String> {
    if args.samples == 0 || args.tol.is_nan() || args.tol <= 0.0 {
        return Err("--samples and --tol must be positive".into());
    }
    let results = check_identities(args.samples, args.seed, args.tol);
    let mut report = Report::new(
        "theta-check",
        &[
            "identity",
            "samples",
            "rejected",
            "max_rel_error",
            "tolerance",
            "status",
        ],
    );
    report
        .config("samples", args.samples)
        .config("tol", args.tol)
        .config("seed", args.seed);
    for r in &results {
        report.push(vec![
            json!(r.name),
            json!(r.samples),
            json!(r.rejected),
            json!(format!("{:.3e}", r.max_rel_error)),
            json!(format!("{:.0e}", r.tolerance)),
            json!(if r.passes() { "PASS" } else { "FAIL" }),
        ]);
    }
    report.verdict = Verdict::from_bool(results.iter().all(|r| r.passes()), "PASS", "FAIL");
    Ok(report)
}

fn sectors(args: &SectorArgs) -> Result<Report, String> {
    if args.jmax == 0 {
        return Err("--jmax must be positive".into());
    }
    let table = load(&args.table)?;
    let trunc = Truncation::new(0, parse_q(&args.qmax)?);
    let mut report = Report::new("sectors", &["j", "part", "q", "y", "coefficient"]);
    report
        .config("table", args.table.display().to_string())
        .config("jmax", args.jmax)
        .config("qmax", rational(trunc.q_max));
    let mut ok = true;
    for j in 1..=args.jmax {
        let s = sector_series(&table, j, trunc).map_err(|e| e.to_string())?;
        for (e, c) in s.plus.terms() {
            report.push(vec![
                json!(j),
                json!("plus"),
                rational(e.q),
                rational(e.y),
                big(c),
            ]);
        }
        if let Some(minus) = &s.minus {
            for (e, c) in minus.terms() {
                report.push(vec![
                    json!(j),
                    json!("minus"),
                    rational(e.q),
                    rational(e.y),
                    big(c),
                ]);
            }
        }
        ok &= sector_average_numeric(&table, j, false, trunc)
            .map_err(|e| e.to_string())?
            .matches();
        if j % 2 == 0 {
            ok &= sector_average_numeric(&table, j, true, trunc)
                .map_err(|e| e.to_string())?
                .matches();
        }
    }
    report.verdict = Verdict::from_bool(ok, "MATCH", "MISMATCH");
    Ok(report)
}

fn configure_threads() -> Result<(), String> {
    if let Ok(v) = std::env::var("TORSION_GENUS_THREADS") {
        let n: usize = v.parse().ok().filter(|n| *n > 0).ok_or_else(|| {
            format!("TORSION_GENUS_THREADS must be a positive integer, got `{v}`")
        })?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|_| match &cli.command {
        Command::Dmvv(a) => dmvv(a),
        Command::Delta(a) => delta(a),
        Command::Euler(a) => euler(a),
        Command::ThetaCheck(a) => theta(a),
        Command::Sectors(a) => sectors(a),
    });
    match result {
        Ok(report) => {
            let text = if cli.json {
                report.to_json()
            } else {
                report.to_tsv()
            };
            print!("{text}");
            ExitCode::from(report.exit_code() as u8)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
