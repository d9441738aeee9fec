//! `apunion`: exact experiments on unions of arithmetic progressions.
//!
//! Exit status: 0 when every check in the report passes, 1 when a check
//! fails, 2 on usage errors, 3 on runtime errors (bad input, budget, I/O).

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use apunion::analytics::{gcd_sum_growth_scan, gcd_sum_report};
use apunion::audit::{run_audit, AuditConfig};
use apunion::report::{Cell, ExperimentReport, Table};
use apunion_core::arith::{rational_to_f64, PosRational, Rational};
use apunion_core::construct::{
    lowerg_sets, mult_table_card, mult_table_card_prefix, prop_three_sets, ruzsa_triple_family,
    u2_witness, ConstructionOutput,
};
use apunion_core::gcd_sum::gcd_sum_fast_range;
use apunion_core::progression::{union_census, APFamily};
use apunion_core::ratio::{
    basic_lower_check, g_easy_bounds, w_chain_check, FiniteSet, RatioBound, RatioCensus,
};
use apunion_core::search::{
    theorem_bound, u_exact_in_box, u_upper_heuristic, union_lower_bound, BoundConstants, SearchBox,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

#[derive(Parser)]
#[command(name = "apunion", version, about = "Exact experiments on unions of arithmetic progressions")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for every random choice (64-bit unsigned decimal).
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Work cap: search nodes for `search-u` and `audit`, products for
    /// `mult-table`, moves for `search-u --heuristic`.
    #[arg(long, global = true, default_value_t = 1 << 30)]
    budget: u64,
    /// Record wall-clock time in the report (then reruns differ).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run an invariant suite against brute-force references (`all` runs every suite).
    Audit {
        suite: String,
        /// Override the suite's case count or range top.
        #[arg(long)]
        cases: Option<u64>,
    },
    /// gcd-sum values, the 1..n range sum, or a growth scan.
    GcdSum {
        /// Comma-separated strictly increasing positive integers.
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["range", "scan"])]
        values: Option<Vec<u64>>,
        /// Use a = 1..n.
        #[arg(long, conflicts_with = "scan")]
        range: Option<u64>,
        /// Comma-separated increasing n values for the growth scan.
        #[arg(long, value_delimiter = ',')]
        scan: Option<Vec<u64>>,
        /// Exponent for the Graham averaging shape.
        #[arg(long, default_value_t = 0.25)]
        epsilon: f64,
        /// Constant for the Graham averaging shape.
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
    /// M(n) = |{ij : i, j <= n}|, for one n or every n up to it.
    MultTable {
        n: u64,
        /// Tabulate M(k) and M(k)/k^2 for k = 1..n.
        #[arg(long)]
        all: bool,
    },
    /// Build a construction and verify what it claims.
    Construct {
        #[arg(value_enum)]
        kind: Construction,
        #[arg(long, default_value_t = 4)]
        m: u64,
        #[arg(long, default_value_t = 4)]
        n: u64,
        #[arg(long, default_value_t = 4)]
        d: u64,
        /// Regime for `prop-three` (1: d >= mn, 2: n >= md, 3: m >= nd).
        #[arg(long, default_value_t = 1)]
        case: u8,
        /// Comma-separated integers for `ruzsa`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        set: Option<Vec<i64>>,
    },
    /// Minimum union of n length-l progressions with distinct differences.
    SearchU {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        length: u64,
        /// Largest start in the search box (default 2 n).
        #[arg(long)]
        max_start: Option<u64>,
        /// Largest difference in the search box (default 2 n).
        #[arg(long)]
        max_diff: Option<u64>,
        /// Seeded local search instead of the exhaustive box search.
        #[arg(long)]
        heuristic: bool,
        /// epsilon for the asymptotic bound, as p/q (constants default to 1).
        #[arg(long, default_value = "1/4")]
        epsilon: String,
    },
    /// Ratio censuses of a finite set of positive rationals.
    Census {
        /// Comma-separated entries such as `1,3/2,6`.
        #[arg(long, value_delimiter = ',')]
        set: Vec<String>,
        /// Second set for the f and W counts (defaults to `--set`).
        #[arg(long, value_delimiter = ',')]
        a_set: Option<Vec<String>>,
        #[arg(long, default_value_t = 2)]
        d: u32,
        /// Even cycle lengths to count.
        #[arg(long, value_delimiter = ',', default_value = "4,6")]
        cycles: Vec<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Lowerg,
    PropThree,
    U2,
    Ruzsa,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let started = Instant::now();
    let g = &cli.global;
    let mut report = match cli.command {
        Command::Audit { suite, cases } => {
            run_audit(&suite, &AuditConfig { seed: g.seed, budget: g.budget, cases })?
        }
        Command::GcdSum { values, range, scan, epsilon, c } => gcd_sum_cmd(values, range, scan, epsilon, c)?,
        Command::MultTable { n, all } => mult_table_cmd(n, all, g.budget)?,
        Command::Construct { kind, m, n, d, case, set } => construct_cmd(kind, m, n, d, case, set)?,
        Command::SearchU { n, length, max_start, max_diff, heuristic, epsilon } => {
            search_cmd(n, length, max_start, max_diff, heuristic, &epsilon, g)?
        }
        Command::Census { set, a_set, d, cycles } => census_cmd(&set, a_set.as_deref(), d, &cycles)?,
    };
    if g.timing {
        report.wall_clock_ms = Some(started.elapsed().as_millis() as u64);
    }
    let body = match g.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv()?,
    };
    match &g.out {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{body}"),
    }
    for f in report.failures() {
        eprintln!("FAIL {}: {}", f.name, f.detail);
    }
    Ok(report.passed())
}

fn gcd_sum_cmd(
    values: Option<Vec<u64>>,
    range: Option<u64>,
    scan: Option<Vec<u64>>,
    epsilon: f64,
    c: f64,
) -> anyhow::Result<ExperimentReport> {
    if let Some(a) = values {
        return Ok(gcd_sum_report(&a, epsilon, c)?);
    }
    if let Some(n) = range {
        let mut r = ExperimentReport::new("gcd-sum range");
        r.param("n", n);
        let s = gcd_sum_fast_range(n)?;
        r.approx("S(n)", rational_to_f64(&s)).exact("S(n)", s);
        return Ok(r);
    }
    let scan = scan.unwrap_or_else(|| (7..=14).map(|e| 1u64 << e).collect());
    Ok(gcd_sum_growth_scan(&scan)?)
}

fn mult_table_cmd(n: u64, all: bool, budget: u64) -> anyhow::Result<ExperimentReport> {
    let mut r = ExperimentReport::new("mult-table");
    r.param("n", n).param("budget", budget);
    if all {
        let prefix = mult_table_card_prefix(n, budget.into())?;
        let mut table = Table { columns: vec!["n".into(), "M(n)".into(), "M(n)/n^2".into()], rows: vec![] };
        for k in 1..=n {
            let ratio = Rational::new(BigInt::from(prefix[k as usize]), BigInt::from(k * k));
            let approx = rational_to_f64(&ratio);
            table.rows.push(vec![Cell::from(k), Cell::from(prefix[k as usize]), Cell::from(approx)]);
        }
        r.table = Some(table);
    } else {
        let m = mult_table_card(n, budget.into())?;
        r.int("M(n)", m).approx("M(n)/n^2", m as f64 / (n as f64 * n as f64));
    }
    Ok(r)
}

fn construction_report(out: &ConstructionOutput) -> ExperimentReport {
    let mut r = ExperimentReport::new(format!("construct {}", out.name));
    for (k, v) in &out.params {
        r.int(k, *v);
    }
    r.int("|A|", out.a.len()).int("|B|", out.b.len()).int("f", out.verified_count);
    r.exact("claimed_bound", out.claimed_bound.clone());
    r.text("A", join_rationals(out.a.elements()));
    r.text("B", join_rationals(out.b.elements()));
    if let Some(note) = out.note {
        r.text("note", note);
    }
    match out.verified {
        Some(ok) => r.check("verified", ok, "sizes, claimed count and upper bounds"),
        None => r.check("hypotheses", false, "construction hypotheses fail; nothing verified"),
    };
    r
}

fn join_rationals(v: &[PosRational]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn family_text(f: &APFamily) -> String {
    f.members()
        .iter()
        .map(|p| format!("({}, {}, {})", p.start(), p.diff(), p.length()))
        .collect::<Vec<_>>()
        .join(" ")
}

fn construct_cmd(
    kind: Construction,
    m: u64,
    n: u64,
    d: u64,
    case: u8,
    set: Option<Vec<i64>>,
) -> anyhow::Result<ExperimentReport> {
    Ok(match kind {
        Construction::Lowerg => construction_report(&lowerg_sets(m, n, d)?),
        Construction::PropThree => construction_report(&prop_three_sets(case, m, n, d)?),
        Construction::U2 => {
            let w = u2_witness(n)?;
            let mut r = ExperimentReport::new("construct u2");
            r.int("n", n).int("union", w.union_size).int("pairs_below", w.pairs_below).int("pairs_at", w.pairs_at);
            r.text("sidon", w.sidon.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
            r.text("family", family_text(&w.family));
            r.check("certificate", w.pairs_below < n && n <= w.pairs_at, "C(u-1, 2) < n <= C(u, 2)");
            r
        }
        Construction::Ruzsa => {
            let Some(mut set) = set else { bail!("ruzsa needs --set") };
            set.sort_unstable();
            set.dedup();
            let a: Vec<BigInt> = set.iter().map(|&x| BigInt::from(x)).collect();
            let f = ruzsa_triple_family(&a)?;
            let mut r = ExperimentReport::new("construct ruzsa");
            r.param("set", set.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
            let union = union_census(&f).cardinality();
            let sums = apunion_core::construct::sumset(&a);
            r.int("progressions", f.len()).int("union", union).int("|A+A|", sums.len());
            r.text("family", family_text(&f));
            r.check("union-in-sumset", union as usize <= sums.len(), "");
            r
        }
    })
}

fn search_cmd(
    n: usize,
    length: u64,
    max_start: Option<u64>,
    max_diff: Option<u64>,
    heuristic: bool,
    epsilon: &str,
    g: &Global,
) -> anyhow::Result<ExperimentReport> {
    let mut r = ExperimentReport::new("search-u");
    r.param("n", n).param("length", length).param("epsilon", epsilon);
    let floor = union_lower_bound(n as u64, length);
    r.int("lower_bound", floor);
    if heuristic {
        r.seed = Some(g.seed);
        r.param("moves", g.budget);
        let h = u_upper_heuristic(n, length, g.budget, g.seed)?;
        r.int("upper_bound", h.cardinality).text("family", family_text(&h.family));
        r.check("above-lower-bound", h.cardinality >= floor, "");
    } else {
        let span = 2 * n as u64;
        let (ms, md) = (max_start.unwrap_or(span), max_diff.unwrap_or(span));
        r.param("max_start", ms).param("max_diff", md).param("budget", g.budget);
        let opt = u_exact_in_box(&SearchBox::new(ms, md, n, length)?, g.budget)?;
        r.int("box_minimum", opt.value).int("nodes", opt.nodes);
        r.text("family", family_text(&opt.witness));
        r.text("exact_scope", if opt.met_lower_bound { "global (meets lower bound)" } else { "within box" });
        r.check("above-lower-bound", opt.value >= floor, "");
    }
    if n >= 2 && length >= 2 {
        let consts = BoundConstants::defaulted(epsilon.parse::<PosRational>()?)?;
        let b = theorem_bound(n as u64, length, &consts)?;
        r.text("asymptotic.regime", format!("{:?}", b.regime));
        r.approx("asymptotic.value", b.value);
        r.text("asymptotic.constants", if b.non_rigorous { "defaulted to 1, not rigorous" } else { "supplied" });
    }
    Ok(r)
}

fn census_cmd(set: &[String], a_set: Option<&[String]>, d: u32, cycles: &[usize]) -> anyhow::Result<ExperimentReport> {
    let parse = |v: &[String]| -> anyhow::Result<FiniteSet> {
        Ok(FiniteSet::new(v.iter().map(|s| s.parse::<PosRational>()).collect::<Result<Vec<_>, _>>()?))
    };
    let b = parse(set)?;
    let a = match a_set {
        Some(v) => parse(v)?,
        None => b.clone(),
    };
    let rb = RatioBound::new(d)?;
    let census = RatioCensus::compute(&a, &b, rb, cycles)?;
    let mut r = ExperimentReport::new("census");
    r.param("B", join_rationals(b.elements())).param("A", join_rationals(a.elements())).param("d", d);
    r.int("g", census.g_count).int("f", census.f_count).int("W", census.w_count);
    for (len, c) in &census.cycle_counts {
        r.int(&format!("cycles.{len}"), *c);
    }
    let (easy, square) = g_easy_bounds(b.len(), rb);
    r.int("g.easy_bound", easy).int("g.square_bound", square);
    r.check("g-easy-bounds", census.g_count <= easy && (b.is_empty() || census.g_count < square), "");
    r.check("consistent", census.is_consistent(b.len()), "g <= C(|B|, 2); cycle counts divisible by 2 * 2k");
    let chain = w_chain_check(&a, &b, rb);
    r.int("W.floor_sum", chain.floor_sum).exact("W.chain_bound", chain.chain_bound.clone());
    r.check("w-chain", chain.holds, "");
    for &len in cycles.iter().filter(|&&l| l >= 4) {
        let rep = basic_lower_check(&b, rb, len / 2)?;
        r.exact(&format!("basic_lower.{len}.lhs"), rep.lhs.clone());
        r.approx(&format!("basic_lower.{len}.rhs"), rep.rhs_approx);
        r.check(format!("basic-lower.{len}"), rep.holds, "");
    }
    Ok(r)
}
