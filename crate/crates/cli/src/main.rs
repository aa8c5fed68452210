//! Command-line front end for the rank-metric covering bounds library.
//!
//! Data rows on stdout are byte-deterministic for fixed inputs; anything
//! timing-related or advisory is prefixed with `#`. Exit codes: 0 for
//! success, 1 for verification mismatches (a counterexample is printed),
//! 2 for invalid parameters, 3 when every requested method ran out of
//! budget ("unavailable").

mod known;

use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;

use rankcov::bounds::{
    best_bounds, construction_upper_bound, ilp_lower_bound, mrd_weight_distribution,
    refined_upper_bound, Budget, IlpConfig, Method,
};
use rankcov::exactcodes::{
    check_intersections_by_enumeration, construction_code, covering_radius, exact_min_covering,
    gabidulin_code,
};
use rankcov::geometry::{IntersectionTable, UnionBoundTable};
use rankcov::krawtchouk::krawtchouk;
use rankcov::qcombinat::SpaceParams;
use rankcov::Error;

#[derive(Parser)]
#[command(
    name = "rankcov",
    version,
    about = "Lower and upper bounds on minimum-size rank-metric covering codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Best bounds for a single (q, m, n, rho)
    Bounds(BoundsArgs),
    /// Bounds grid over ranges of m and rho (n runs over 2..=m)
    Table(TableArgs),
    /// Formula-vs-enumeration sweeps; exits nonzero on any mismatch
    Verify(VerifyArgs),
    /// Exact geometric quantities as decimal integers
    Geometry(GeometryArgs),
    /// Exhaustive oracles on small spaces
    Oracle(OracleArgs),
}

/// Inclusive range written as `a..b`, or a single value.
#[derive(Debug, Clone, Copy)]
struct RangeArg {
    lo: u32,
    hi: u32,
}

impl FromStr for RangeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.parse::<u32>()
                .map_err(|_| format!("expected an integer, got '{t}'"))
        };
        if let Some((a, b)) = s.split_once("..") {
            let (lo, hi) = (parse(a)?, parse(b)?);
            if lo > hi {
                return Err(format!("empty range '{s}'"));
            }
            Ok(RangeArg { lo, hi })
        } else {
            let v = parse(s)?;
            Ok(RangeArg { lo: v, hi: v })
        }
    }
}

fn parse_method(s: &str) -> Result<Method, String> {
    let canonical = match s {
        "refined" => "mrd-refined",
        "exact" => "oracle-exact",
        "trivial" => "singleton-trivial",
        "sphere" => "sphere-covering",
        other => other,
    };
    Method::from_str(canonical).map_err(|e| e.to_string())
}

#[derive(Args)]
struct BudgetArgs {
    /// Work budget for integer programs (simplex pivots) and the exact
    /// oracle (elementary operations)
    #[arg(long = "budget-work")]
    budget_work: Option<u64>,
    /// Step budget for the greedy and refined descents
    #[arg(long = "budget-steps")]
    budget_steps: Option<u64>,
    /// Raise the step budget enough for multi-minute cells
    #[arg(long = "allow-long")]
    allow_long: bool,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(work) = self.budget_work {
            b.ilp_pivots = work;
            b.enumeration = work;
        }
        if let Some(steps) = self.budget_steps {
            b.recursion_steps = steps;
        }
        if self.allow_long {
            b.recursion_steps = b.recursion_steps.max(1_000_000_000);
        }
        b
    }
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long, default_value_t = 2)]
    q: u64,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    rho: u32,
    /// Comma list of methods (default: all)
    #[arg(long, value_delimiter = ',', value_parser = parse_method)]
    methods: Option<Vec<Method>>,
    #[command(flatten)]
    budgets: BudgetArgs,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, default_value_t = 2)]
    q: u64,
    /// Range of m, e.g. 2..7
    #[arg(long)]
    m: RangeArg,
    /// Range of rho, e.g. 1..7 (each cell caps rho at n)
    #[arg(long)]
    rho: RangeArg,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Comma list of methods (default: all)
    #[arg(long, value_delimiter = ',', value_parser = parse_method)]
    methods: Option<Vec<Method>>,
    #[command(flatten)]
    budgets: BudgetArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Md,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = 2)]
    q: u64,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    rho: Option<u32>,
    #[command(flatten)]
    budgets: BudgetArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    /// Intersection formulas against a full-space sweep
    GeometryOracle,
    /// The explicit code: cardinality and covering radius
    Construction,
    /// Gabidulin weight spectra against the closed form
    MrdDistribution,
    /// Every published value this crate reproduces
    TableRegression,
}

#[derive(Args)]
struct GeometryArgs {
    #[arg(value_enum)]
    kind: GeometryKind,
    #[arg(long, default_value_t = 2)]
    q: u64,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    u: Option<u32>,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long)]
    w: Option<u32>,
    #[arg(long)]
    rho: Option<u32>,
    #[arg(long = "K")]
    big_k: Option<String>,
    #[arg(long)]
    j: Option<u32>,
    #[arg(long)]
    i: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GeometryKind {
    /// Sphere intersection J(u, s, w): needs --u --s --w
    #[value(name = "J")]
    J,
    /// Ball intersection I(rho, w): needs --rho --w
    #[value(name = "I")]
    I,
    /// Union volume bound B(K): needs --rho --K
    #[value(name = "B")]
    B,
    /// Ball volume v(rho): needs --rho
    Volume,
    /// q-analog Krawtchouk K_j(i): needs --j --i
    Krawtchouk,
}

#[derive(Args)]
struct OracleArgs {
    #[command(subcommand)]
    what: OracleCmd,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Exact minimum covering size by exhaustive search
    MinCover(OracleParams),
    /// Exact covering radius of the explicit construction code
    Radius(OracleParams),
}

#[derive(Args)]
struct OracleParams {
    #[arg(long, default_value_t = 2)]
    q: u64,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    rho: u32,
    #[command(flatten)]
    budgets: BudgetArgs,
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match &e {
            Error::InvalidParams(_) | Error::IndexOutOfRange(_) | Error::UnsupportedField { .. } => 2,
            Error::BudgetExceeded(_) | Error::Unavailable(_) => 3,
            Error::ArithmeticBug(_) => 1,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn mismatch(msg: String) -> Failure {
    Failure { code: 1, msg }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Bounds(args) => cmd_bounds(args),
        Command::Table(args) => cmd_table(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Geometry(args) => cmd_geometry(args),
        Command::Oracle(args) => cmd_oracle(args),
    }
}

fn cmd_bounds(args: BoundsArgs) -> Result<(), Failure> {
    let params = SpaceParams::new(args.q, args.m, args.n)?;
    let methods = args.methods.unwrap_or_else(|| Method::ALL.to_vec());
    let budget = args.budgets.budget();
    let t0 = Instant::now();
    let best = best_bounds(&params, args.rho, &methods, &budget)?;
    if params.transposed() {
        println!("# computed on the transposed space (columns and rows swap freely)");
    }
    println!("q={} m={} n={} rho={}", args.q, params.m(), params.n(), args.rho);
    println!("lower = {}  [{}]", best.lower.value, best.lower.method.tag());
    println!("upper = {}  [{}]", best.upper.value, best.upper.method.tag());
    println!("# elapsed: {:.1?}", t0.elapsed());
    Ok(())
}

struct TableRow {
    m: u32,
    n: u32,
    rho: u32,
    lower: BigInt,
    lower_tag: &'static str,
    upper: BigInt,
    upper_tag: &'static str,
}

fn cmd_table(args: TableArgs) -> Result<(), Failure> {
    rankcov::init_threads();
    let methods = args.methods.clone().unwrap_or_else(|| Method::ALL.to_vec());
    let budget = args.budgets.budget();

    let mut cells: Vec<(u32, u32, u32)> = Vec::new();
    for m in args.m.lo..=args.m.hi {
        for n in 2..=m {
            for rho in args.rho.lo..=args.rho.hi.min(n) {
                cells.push((m, n, rho));
            }
        }
    }
    if cells.is_empty() {
        return Err(Failure {
            code: 2,
            msg: "empty grid: need m >= 2 and rho <= n for some n in 2..=m".into(),
        });
    }

    let t0 = Instant::now();
    let rows: Vec<TableRow> = cells
        .par_iter()
        .map(|&(m, n, rho)| -> Result<TableRow, Error> {
            let params = SpaceParams::new(args.q, m, n)?;
            let best = best_bounds(&params, rho, &methods, &budget)
                .map_err(|e| Error::Unavailable(format!("at m={m} n={n} rho={rho}: {e}")))?;
            Ok(TableRow {
                m,
                n,
                rho,
                lower: best.lower.value,
                lower_tag: best.lower.method.tag(),
                upper: best.upper.value,
                upper_tag: best.upper.method.tag(),
            })
        })
        .collect::<Result<_, _>>()?;
    let elapsed = t0.elapsed();

    let mut notes: Vec<String> = Vec::new();
    for row in &rows {
        match known::published(args.q, row.m, row.n, row.rho) {
            None => {}
            Some(p) => {
                let cell = format!("m={} n={} rho={}", row.m, row.n, row.rho);
                match p.lower {
                    None => notes.push(format!("{cell}: published lower is n/a (prior-work bound)")),
                    Some((tag, v)) => {
                        if row.lower == BigInt::from(v) {
                            notes.push(format!("{cell}: lower matches published {v} ({tag})"));
                        } else {
                            notes.push(format!(
                                "{cell}: published lower {v} ({tag}) not reached; got {}",
                                row.lower
                            ));
                        }
                    }
                }
                match p.upper {
                    None => notes.push(format!("{cell}: published upper is n/a (prior-work bound)")),
                    Some((tag, v)) => {
                        if row.upper == BigInt::from(v) {
                            notes.push(format!("{cell}: upper matches published {v} ({tag})"));
                        } else if known::regressions()
                            .iter()
                            .any(|r| (r.m, r.n, r.rho) == (row.m, row.n, row.rho) && r.long)
                            && !args.budgets.allow_long
                        {
                            notes.push(format!(
                                "{cell}: published upper {v} ({tag}) skipped, rerun with --allow-long"
                            ));
                        } else {
                            notes.push(format!(
                                "{cell}: published upper {v} ({tag}) not reached; got {}",
                                row.upper
                            ));
                        }
                    }
                }
            }
        }
    }

    match args.format {
        Format::Csv => {
            println!("m,n,rho,lower,lower_method,upper,upper_method");
            for r in &rows {
                println!(
                    "{},{},{},{},{},{},{}",
                    r.m, r.n, r.rho, r.lower, r.lower_tag, r.upper, r.upper_tag
                );
            }
        }
        Format::Md => {
            println!("| m | n | rho | lower | lower method | upper | upper method |");
            println!("|---|---|-----|-------|--------------|-------|--------------|");
            for r in &rows {
                println!(
                    "| {} | {} | {} | {} | {} | {} | {} |",
                    r.m, r.n, r.rho, r.lower, r.lower_tag, r.upper, r.upper_tag
                );
            }
        }
    }
    for note in &notes {
        println!("# {note}");
    }
    println!("# elapsed: {elapsed:.1?}");
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let budget = args.budgets.budget();
    match args.suite {
        Suite::GeometryOracle => {
            let m = args.m.unwrap_or(3);
            let n = args.n.unwrap_or(3);
            let params = SpaceParams::new(args.q, m, n)?;
            check_intersections_by_enumeration(&params, budget.enumeration)
                .map_err(|e| mismatch(e.to_string()))?;
            println!(
                "geometry-oracle: all intersection counts match at q={} m={m} n={n}",
                args.q
            );
        }
        Suite::Construction => {
            let m = args.m.unwrap_or(4);
            let n = args.n.unwrap_or(4);
            let rho = args.rho.unwrap_or(3);
            let params = SpaceParams::new(args.q, m, n)?;
            let code = construction_code(&params, rho, budget.enumeration)?;
            let closed = construction_upper_bound(&params, rho)?;
            if BigInt::from(code.cardinality()) != closed {
                return Err(mismatch(format!(
                    "construction size {} but closed form {closed}",
                    code.cardinality()
                )));
            }
            let radius = covering_radius(&code, budget.enumeration)?;
            if radius > rho {
                return Err(mismatch(format!(
                    "covering radius {radius} exceeds rho = {rho}"
                )));
            }
            println!(
                "construction: covering radius {radius} confirmed, |C| = {} at q={} m={m} n={n} rho={rho}",
                code.cardinality(),
                args.q
            );
        }
        Suite::MrdDistribution => {
            let m = args.m.unwrap_or(3);
            let n = args.n.unwrap_or(3);
            let params = SpaceParams::new(args.q, m, n)?;
            for d in 1..=n {
                let k = n - d + 1;
                let code = gabidulin_code(&params, k, budget.enumeration)?;
                let hist = code.weight_histogram();
                for (r, count) in hist.iter().enumerate() {
                    let want = mrd_weight_distribution(&params, d, r as u32)?;
                    if BigInt::from(*count) != want {
                        return Err(mismatch(format!(
                            "weight {r} at d={d}: enumerated {count}, closed form {want}"
                        )));
                    }
                }
                if code.min_distance() != Some(d) {
                    return Err(mismatch(format!(
                        "minimum distance {:?} at d={d}",
                        code.min_distance()
                    )));
                }
            }
            println!(
                "mrd-distribution: histograms match for every d at q={} m={m} n={n}",
                args.q
            );
        }
        Suite::TableRegression => {
            let mut checked = 0u32;
            let mut skipped = 0u32;
            let mut failures: Vec<String> = Vec::new();
            for reg in known::regressions() {
                if reg.long && !args.budgets.allow_long {
                    skipped += 1;
                    continue;
                }
                let params = SpaceParams::new(2, reg.m, reg.n)?;
                let got: BigInt = match reg.method {
                    "ilp" => {
                        let config =
                            IlpConfig { pivot_limit: budget.ilp_pivots, ..IlpConfig::default() };
                        ilp_lower_bound(&params, reg.rho, &config)?
                    }
                    "mrd-refined" => {
                        refined_upper_bound(&params, reg.rho, budget.recursion_steps)?
                    }
                    "construction" => construction_upper_bound(&params, reg.rho)?,
                    "oracle-exact" => {
                        exact_min_covering(&params, reg.rho, budget.enumeration)?
                    }
                    other => {
                        return Err(Failure {
                            code: 2,
                            msg: format!("unknown regression method '{other}'"),
                        })
                    }
                };
                checked += 1;
                if got != BigInt::from(reg.value) {
                    failures.push(format!(
                        "m={} n={} rho={} {} via {}: got {got}, published {}",
                        reg.m, reg.n, reg.rho, reg.side, reg.method, reg.value
                    ));
                }
            }
            if !failures.is_empty() {
                return Err(mismatch(failures.join("; ")));
            }
            println!("table-regression: {checked} published values reproduced, {skipped} skipped as long");
        }
    }
    Ok(())
}

fn cmd_geometry(args: GeometryArgs) -> Result<(), Failure> {
    let params = SpaceParams::new(args.q, args.m, args.n)?;
    let n = params.n();
    let need = |name: &str, v: Option<u32>| -> Result<u32, Failure> {
        v.ok_or_else(|| Failure { code: 2, msg: format!("missing --{name}") })
    };
    let check_index = |name: &str, v: u32| -> Result<u32, Failure> {
        if v > n {
            Err(Failure { code: 2, msg: format!("--{name} = {v} exceeds n = {n}") })
        } else {
            Ok(v)
        }
    };
    let value: BigInt = match args.kind {
        GeometryKind::J => {
            let u = check_index("u", need("u", args.u)?)?;
            let s = check_index("s", need("s", args.s)?)?;
            let w = check_index("w", need("w", args.w)?)?;
            IntersectionTable::build(&params)?.sphere(u, s, w).clone()
        }
        GeometryKind::I => {
            let rho = need("rho", args.rho)?;
            let w = check_index("w", need("w", args.w)?)?;
            IntersectionTable::build(&params)?.ball_same_radius(rho, w).clone()
        }
        GeometryKind::B => {
            let rho = need("rho", args.rho)?;
            let raw = args.big_k.ok_or_else(|| Failure { code: 2, msg: "missing --K".into() })?;
            let k = BigInt::from_str(&raw)
                .map_err(|_| Failure { code: 2, msg: format!("--K = '{raw}' is not an integer") })?;
            UnionBoundTable::build(&params, rho.min(n))?.eval(&k)?
        }
        GeometryKind::Volume => {
            let rho = need("rho", args.rho)?;
            params.ball_volume(rho)
        }
        GeometryKind::Krawtchouk => {
            let j = check_index("j", need("j", args.j)?)?;
            let i = check_index("i", need("i", args.i)?)?;
            krawtchouk(&params, j, i)?
        }
    };
    println!("{value}");
    Ok(())
}

fn cmd_oracle(args: OracleArgs) -> Result<(), Failure> {
    match args.what {
        OracleCmd::MinCover(p) => {
            let params = SpaceParams::new(p.q, p.m, p.n)?;
            let budget = p.budgets.budget();
            let t0 = Instant::now();
            let value = exact_min_covering(&params, p.rho, budget.enumeration)?;
            println!("{value}");
            println!("# elapsed: {:.1?}", t0.elapsed());
        }
        OracleCmd::Radius(p) => {
            let params = SpaceParams::new(p.q, p.m, p.n)?;
            let budget = p.budgets.budget();
            let t0 = Instant::now();
            let code = construction_code(&params, p.rho, budget.enumeration)?;
            let radius = covering_radius(&code, budget.enumeration)?;
            println!("{radius}");
            println!("# elapsed: {:.1?}", t0.elapsed());
        }
    }
    Ok(())
}
