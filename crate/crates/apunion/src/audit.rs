//! Audit suites: seeded invariant sweeps of the library against the
//! brute-force references in [`crate::oracle`].

use std::collections::{BTreeSet, HashSet};

use apunion_core::arith::{
    divisor_bound_constant, divisor_bound_sweep, divisor_count_table, isqrt, PosRational, Rational,
};
use apunion_core::construct::{
    lowerg_sets, mult_table_card, mult_table_card_prefix, mult_table_family, prop_three_sets,
    ruzsa_triple_family, u2_value, u2_witness, MULT_TABLE_BUDGET,
};
use apunion_core::gcd_sum::{gcd_sum_fast_prefixes, gcd_sum_fast_range, gcd_sum_prefixes};
use apunion_core::progression::{
    dawson_sankoff_bound, gcd_union_bound, intersect, lemma_intersection_check, union_census,
    APFamily, ArithmeticProgression,
};
use apunion_core::ratio::{
    cycle_census, g_census, g_easy_bounds, product_rep_audit, quotient_degree,
    subsample_expectation_check, w_chain_check, w_triple_count, FiniteSet, RatioBound,
};
use apunion_core::search::{prop43_bound_audit, u_exact_in_box, SearchBox};
use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytics::gcd_sum_growth_scan;
use crate::oracle;
use crate::report::{Cell, ExperimentReport, Table};

pub const SUITES: &[&str] = &[
    "u2",
    "prop-three",
    "lowerg",
    "lemma-intersection",
    "intersect",
    "g-easy-bound",
    "cycle-census",
    "subsample",
    "divisor-bound",
    "dawson-sankoff",
    "convexity",
    "gcd-sum",
    "mult-table",
    "ruzsa",
    "w-chain",
    "product-rep",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditConfig {
    pub seed: u64,
    /// Node budget for exhaustive searches.
    pub budget: u64,
    /// Overrides the suite's default case count (random cases, trials, or
    /// the top of a range, depending on the suite).
    pub cases: Option<u64>,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig { seed: 42, budget: 1 << 30, cases: None }
    }
}

impl AuditConfig {
    fn cases_or(&self, default: u64) -> u64 {
        self.cases.unwrap_or(default)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum AuditError {
    #[error("unknown suite `{0}`; known suites: {known}, all", known = SUITES.join(", "))]
    UnknownSuite(String),
    #[error(transparent)]
    Core(#[from] apunion_core::Error),
}

type Result<T> = std::result::Result<T, AuditError>;

pub fn run_audit(suite: &str, cfg: &AuditConfig) -> Result<ExperimentReport> {
    let mut report = match suite {
        "u2" => u2(cfg)?,
        "prop-three" => prop_three(cfg)?,
        "lowerg" => lowerg(cfg)?,
        "lemma-intersection" => lemma_intersection(cfg)?,
        "intersect" => intersect_suite(cfg)?,
        "g-easy-bound" => g_easy_bound(cfg)?,
        "cycle-census" => cycle_census_suite(cfg)?,
        "subsample" => subsample(cfg)?,
        "divisor-bound" => divisor_bound(cfg)?,
        "dawson-sankoff" => dawson_sankoff(cfg)?,
        "convexity" => convexity(cfg)?,
        "gcd-sum" => gcd_sum_suite(cfg)?,
        "mult-table" => mult_table(cfg)?,
        "ruzsa" => ruzsa(cfg)?,
        "w-chain" => w_chain(cfg)?,
        "product-rep" => product_rep(cfg)?,
        "all" => {
            let mut all = ExperimentReport::new("");
            for s in SUITES {
                all.absorb(s, run_audit(s, cfg)?);
            }
            all
        }
        other => return Err(AuditError::UnknownSuite(other.to_owned())),
    };
    report.command = format!("audit {suite}");
    report.seed = Some(cfg.seed);
    report.param("suite", suite);
    if let Some(c) = cfg.cases {
        report.param("cases", c);
    }
    Ok(report)
}

/// Counts cases and failures, keeping the first failure for the report.
struct Tally {
    name: &'static str,
    cases: u64,
    failures: u64,
    first: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, cases: 0, failures: 0, first: None }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            self.first.get_or_insert_with(detail);
        }
    }

    fn finish(self, report: &mut ExperimentReport) {
        let mut detail = format!("{} cases, {} failures", self.cases, self.failures);
        if let Some(f) = self.first {
            detail.push_str("; first: ");
            detail.push_str(&f);
        }
        report.int(&format!("{}.cases", self.name), self.cases);
        report.check(self.name, self.failures == 0 && self.cases > 0, detail);
    }
}

fn rb(d: u64) -> RatioBound {
    RatioBound::new(d as u32).expect("d >= 1")
}

fn int_family(members: &[(i64, i64, u64)]) -> Result<APFamily> {
    Ok(APFamily::new(
        members
            .iter()
            .map(|&(a, b, l)| ArithmeticProgression::integer(a, b as u64, l))
            .collect::<apunion_core::Result<Vec<_>>>()?,
    )?)
}

fn u2(cfg: &AuditConfig) -> Result<ExperimentReport> {
    let n_max = cfg.cases_or(12);
    let mut report = ExperimentReport::new("");
    report.param("n_max", n_max).param("box", "max_start = max_diff = 2 u_2(n)");
    let mut t = Tally::new("box-search");
    let mut w = Tally::new("witness");
    let mut table = Table { columns: vec!["n".into(), "u2".into(), "nodes".into()], rows: vec![] };
    for n in 1..=n_max {
        let oracle = (1..).find(|m: &u64| m * (m - 1) / 2 >= n).expect("exists");
        let m = u2_value(n);
        let sbox = SearchBox::new(2 * m, 2 * m, n as usize, 2)?;
        let opt = u_exact_in_box(&sbox, cfg.budget)?;
        let pts: Vec<_> = opt.witness.members().iter().map(oracle::ap_elements).collect();
        let union: BTreeSet<_> = pts.iter().flatten().collect();
        t.record(opt.value == oracle && m == oracle && union.len() as u64 == oracle, || {
            format!("n = {n}: search {}, formula {m}, oracle {oracle}", opt.value)
        });
        let wit = u2_witness(n)?;
        let wpts: BTreeSet<_> = wit.family.members().iter().flat_map(oracle::ap_elements).collect();
        w.record(wpts.len() as u64 == oracle && wit.family.len() as u64 == n, || {
            format!("n = {n}: witness union {}", wpts.len())
        });
        table.rows.push(vec![Cell::from(n), Cell::from(opt.value), Cell::from(opt.nodes)]);
    }
    t.finish(&mut report);
    w.finish(&mut report);
    report.table = Some(table);
    Ok(report)
}

fn prop_three(cfg: &AuditConfig) -> Result<ExperimentReport> {
    let top = cfg.cases_or(20);
    let mut report = ExperimentReport::new("");
    report.param("grid_max", top);
    let mut t = Tally::new("exact-values");
    for m in 1..=top {
        for n in 1..=top {
            for d in 1..=top {
                let cases = [(1, d >= m * n, m * n), (2, n >= m * d, m * d), (3, m >= n * d, n * d)];
                for (case, hyp, target) in cases {
                    if !hyp {
                        continue;
                    }
                    let out = prop_three_sets(case, m, n, d)?;
                    let (a, b) = (out.a.elements(), out.b.elements());
                    let f = oracle::f_count(a, b, d);
                    let (la, lb) = (a.len() as u64, b.len() as u64);
                    let ok = f == target
                        && out.verified == Some(true)
                        && la <= m
                        && lb <= n
                        && f <= la * lb
                        && f <= la * d
                        && f <= lb * d;
                    t.record(ok, || format!("case {case}, (m, n, d) = ({m}, {n}, {d}): f = {f}, want {target}"));
                }
            }
        }
    }
    t.finish(&mut report);
    Ok(report)
}

fn lowerg(cfg: &AuditConfig) -> Result<ExperimentReport> {
    let top = cfg.cases_or(16);
    let mut report = ExperimentReport::new("");
    report.param("grid_max", top);
    let mut t = Tally::new("sqrt-bound");
    for m in 1..=top {
        for n in 1..=top {
            for d in 1..=top {
                if !(m <= 4 * n * d && n <= 4 * m * d && d <= 4 * m * n) {
                    continue;
                }
                let out = lowerg_sets(m, n, d)?;
                let f = oracle::f_count(out.a.elements(), out.b.elements(), d);
                let p = &out.params;
                let tkl = p["t"] * p["k"] * p["l"];
                let mnd = (m * n * d) as u128;
                let ok = if tkl >= 1 {
                    f >= tkl && (8 * tkl as u128).pow(2) >= mnd
                } else {
                    (8 * f as u128).pow(2) >= mnd
                };
                let ok = ok
                    && 8 * f >= isqrt(m * n * d)
                    && out.a.len() as u64 <= m
                    && out.b.len() as u64 <= n
                    && out.verified == Some(true);
                t.record(ok, || format!("(m, n, d) = ({m}, {n}, {d}): f = {f}, tkl = {tkl}"));
            }
        }
    }
    t.finish(&mut report);
    Ok(report)
}

fn lemma_intersection(cfg: &AuditConfig) -> Result<ExperimentReport> {
    let want = cfg.cases_or(10_000);
    let mut rng = cfg.rng(4);
    let mut report = ExperimentReport::new("");
    report.param("pairs", want).param("length_max", 40).param("diff_max", 30);
    let mut t = Tally::new("diff-ratio");
    let mut draws = 0u64;
    while t.cases < want {
        draws += 1;
        let l = rng.random_range(2..=40u64);
        let (b1, b2) = (rng.random_range(1..=30i64), rng.random_range(1..=30i64));
        let a2 = rng.random_range(0..=b1 * (l as i64 - 1));
        let common = oracle::int_ap(0, b1, l).intersection(&oracle::int_ap(a2, b2, l)).count() as u64;
        if common < 2 {
            continue;
        }
        let p = ArithmeticProgression::integer(0, b1 as u64, l)?;
        let q = ArithmeticProgression::integer(a2, b2 as u64, l)?;
        let rep = lemma_intersection_check(&p, &q)?;
        let bound = (l - 1) / (common - 1);
        let ok = oracle::int_ratio_in_rd(b1 as u64, b2 as u64, bound) && rep.holds && rep.common == common;
        t.record(ok, || format!("({a2}, {b1}, {b2}, l = {l}): r = {common}"));
    }
    report.int("draws", draws);
    t.finish(&mut report);
    Ok(report)
}

fn random_rational_ap(rng: &mut ChaCha8Rng) -> Result<ArithmeticProgression> {
    let start = Rational::new(rng.random_range(-40..=40i64).into(), rng.random_range(1..=6i64).into());
    let diff = PosRational::from_ratio(rng.random_range(1..=12), rng.random_range(1..=6))?;
    Ok(ArithmeticProgression::new(start, diff, rng.random_range(1..=30))?)
}

fn intersect_suite(cfg: &AuditConfig) -> Result<ExperimentReport> {
    let cases = cfg.cases_or(10_000);
    let mut rng = cfg.rng(5);
    let mut report = ExperimentReport::new("");
    report.param("pairs", cases);
    let mut t = Tally::new("set-equality");
    let mut nonempty = 0u64;
    for _ in 0..cases {
        let p = random_rational_ap(&mut rng)?;
        let q = random_rational_ap(&mut rng)?;
        let want: BTreeSet<_> = oracle::ap_elements(&p).intersection(&oracle::ap_elements(&q)).cloned().collect();
        let got = intersect(&p, &q).map(|r| oracle::ap_elements(&r)).unwrap_or_default();
        nonempty += !want.is_empty() as u64;
        t.record(got == want, || format!("{p:?} and {q:?}"));
    }
    report.int("nonempty", nonempty);
    t.finish(&mut report);
    Ok(report)
}

fn random_set(rng: &mut ChaCha8Rng, max_len: usize) -> FiniteSet {
    let len = rng.random_range(1..=max_len);
    let integers = rng.random_bool(0.5);
    FiniteSet::new((0..len).map(|_| {
        let den = if integers { 1 } else { rng.random_range(1..=4) };
        PosRational::from_ratio(rng.random_range(1..=100), den).expect("positive")
    }))
}

fn g_easy_bound(cfg: &AuditConfig) -> Result<ExperimentReport> {
    let cases = cfg.cases_or(10_000);
    let mut rng = cfg.rng(6);
    let mut report = ExperimentReport::new("");
    report.param("sets", cases).param("size_max", 50).param("d_max", 10);
    let mut t = Tally::new("easy-bounds");
    let mut naive = Tally::new("naive-census");
    for i in 0..cases {
        let set = random_set(&mut rng, 50);
        let d = rng.random_range(1..=10u64);
        let g = g_census(&set, rb(d));
        let (easy, square) = g_easy_bounds(set.len(), rb(d));
        let n = set.len() as u64;
        let ok = g <= (n - 1) * oracle::rd_size(d) && easy == (n - 1) * oracle::rd_size(d) && g < square;
        t.record(ok, || format!("|B| = {n}, d = {d}: g = {g}"));
        if i % 16 == 0 {
            let e = set.elements();
            let mut c = 0;
            for x in 0..e.len() {
                for y in x + 1..e.len() {
                    let r = e[x].as_rational() / e[y].as_rational();
                    c += (*r.numer() <= d.into() && *r.denom() <= d.into()) as u64;
                }
            }
            naive.record(c == g, || format!("|B| = {n}, d = {d}: g = {g}, naive {c}"));
        }
    }
    t.finish(&mut report);
    naive.finish(&mut report);
    Ok(report)
}

fn cycle_census_suite(cfg: &AuditConfig) -> Result<ExperimentReport> {
    let universe = 12u32;
    let max_size = cfg.cases_or(8) as u32;
    let mut report = ExperimentReport::new("");
    report.param("universe", universe).param("size_max", max_size).param("d_max", 4).param("lengths", "4,6");
    let mut t = Tally::new("permutation-oracle");
    for mask in 0u32..1 << universe {
        if mask.count_ones() > max_size {
            continue;
        }
        let b: Vec<u64> = (1..=universe as u64).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let set = FiniteSet::from_integers(b.iter().copied())?;
        for d in 1..=4 {
            let adj = oracle::int_adjacency(&b, d);
            for len in [4, 6] {
                let got = cycle_census(&set, rb(d), len)?;
                let want = oracle::cycle_tuples(&adj, len);
                t.record(got == want, || format!("B = {b:?}, d = {d}, 2k = {len}: {got} vs {want}"));
            }
        }
    }
    t.finish(&mut report);
    Ok(report)
}

fn subsample(cfg: &AuditConfig) -> Result<ExperimentReport> {
    let trials = cfg.cases_or(100_000);
    let mut report = ExperimentReport::new("");
    report.param("trials", trials).param("sigmas", apunion_core::ratio::SampleMean::SIGMAS);
    let divisors_360: Vec<u64> = (1..=360).filter(|k| 360 % k == 0).collect();
    let instances: [(&str, Vec<u64>, u64, usize, f64); 3] = [
        ("range12", (1..=12).collect(), 3, 2, 0.5),
        ("divisors360", divisors_360, 4, 2, 0.3),
        ("range16", (1..=16).collect(), 3, 3, 0.6),
    ];
    for (i, (name, b, d, k, p)) in instances.into_iter().enumerate() {
        let set = FiniteSet::from_integers(b.iter().copied())?;
        let seed = cfg.seed.wrapping_add(i as u64);
        let rep = subsample_expectation_check(&set, rb(d), k, p, trials, seed)?;
        let adj = oracle::int_adjacency(&b, d);
        let g_oracle = adj.iter().flatten().filter(|&&e| e).count() as u64 / 2;
        let c_oracle = oracle::cycle_tuples(&adj, 2 * k);
        report.int(&format!("{name}.g"), rep.g_exact).int(&format!("{name}.cycles"), rep.cycle_exact);
        report.approx(&format!("{name}.g.mean"), rep.g.mean);
        report.approx(&format!("{name}.g.std_error"), rep.g.std_error);
        report.approx(&format!("{name}.cycles.mean"), rep.cycles.mean);
        report.approx(&format!("{name}.cycles.std_error"), rep.cycles.std_error);
        report.check(
            format!("{name}.exact-censuses"),
            rep.g_exact == g_oracle && rep.cycle_exact == c_oracle,
            format!("g {} / {g_oracle}, cycles {} / {c_oracle}", rep.g_exact, rep.cycle_exact),
        );
        let z = |m: &apunion_core::ratio::SampleMean| (m.mean - m.predicted) / m.std_error;
        report.check(
            format!("{name}.expectations"),
            rep.pass,
            format!("d = {d}, 2k = {}, p = {p}, seed {seed}: z(g) = {:.3}, z(C) = {:.3}", 2 * k, z(&rep.g), z(&rep.cycles)),
        );
    }
    Ok(report)
}

fn divisor_bound(cfg: &AuditConfig) -> Result<ExperimentReport> {
    let m_max = cfg.cases_or(1_000_000) as usize;
    let mut report = ExperimentReport::new("");
    report.param("m_max", m_max);
    let table = divisor_count_table(m_max);
    let spot = m_max.min(20_000);
    let mismatch = (1..=spot).find(|&m| table[m] as u64 != oracle::divisor_count(m as u64));
    report.check("divisor-table", mismatch.is_none(), format!("trial division up to {spot}; first mismatch {mismatch:?}"));
    for (label, num, den) in [("1", 1, 1), ("1/2", 1, 2), ("1/4", 1, 4)] {
        let delta = PosRational::from_ratio(num, den)?;
        let params = divisor_bound_constant(&delta)?;
        let failure = divisor_bound_sweep(&params, m_max);
        let exponent = delta.to_f64();
        let worst = (1..=m_max)
            .map(|m| table[m] as f64 / (m as f64).powf(exponent))
            .fold(0.0f64, f64::max);
        report.approx(&format!("delta={label}.c3"), params.c3);
        report.approx(&format!("delta={label}.ln_c3"), params.ln_c3);
        report.approx(&format!("delta={label}.worst_ratio"), worst);
        report.int(&format!("delta={label}.largest_prime"), params.largest_prime);
        report.check(
            format!("delta={label}"),
            failure.is_none(),
            format!("c3 = {}, max d(m)/m^delta = {worst:.6}, first failure {failure:?}", params.c3),
        );
    }
    Ok(report)
}

/// `n` progressions of a common length with distinct differences in `[1, 30]`.
fn random_family(rng: &mut ChaCha8Rng) -> Vec<(i64, i64, u64)> {
    let n = rng.random_range(1..=12);
    let l = rng.random_range(1..=20);
    sample(rng, 30, n)
        .into_iter()
        .map(|d| (rng.random_range(0..=40), d as i64 + 1, l))
        .collect()
}

fn dawson_sankoff(cfg: &AuditConfig) -> Result<ExperimentReport> {
    let cases = cfg.cases_or(1_000);
    let mut rng = cfg.rng(10);
    let mut report = ExperimentReport::new("");
    report.param("families", cases);
    let mut ds = Tally::new("dawson-sankoff");
    let mut gb = Tally::new("gcd-bound");
    for _ in 0..cases {
        let members = random_family(&mut rng);
        let family = int_family(&members)?;
        let sets: Vec<HashSet<i64>> = members.iter().map(|&(a, b, l)| oracle::int_ap(a, b, l)).collect();
        let union: HashSet<i64> = sets.iter().flatten().copied().collect();
        let u = Rational::from_integer(BigInt::from(union.len()));
        let total: u64 = sets.iter().map(|s| s.len() as u64).sum();
        let cross: u64 = sets.iter().flat_map(|x| sets.iter().map(move |y| x.intersection(y).count() as u64)).sum();
        let ds_oracle = Rational::new(BigInt::from(total * total), BigInt::from(cross));
        let ds_lib = dawson_sankoff_bound(&family)?;
        let ok = union_census(&family).cardinality() == union.len() as u64 && ds_lib == ds_oracle && u >= ds_lib;
        ds.record(ok, || format!("{members:?}: |U| = {}, bound {ds_lib}", union.len()));

        let mut diffs: Vec<u64> = members.iter().map(|m| m.1 as u64).collect();
        diffs.sort_unstable();
        let (n, l) = (members.len() as u64, members[0].2);
        let nl = Rational::from_integer(BigInt::from(n * l));
        let denom = &nl + Rational::from_integer(BigInt::from(n * n))
            + oracle::gcd_sum(&diffs) * Rational::from_integer(BigInt::from(2 * l));
        let g_oracle = &nl * &nl / denom;
        let g_lib = gcd_union_bound(&family)?;
        gb.record(g_lib == g_oracle && u >= g_lib, || format!("{members:?}: |U| = {}, bound {g_lib}", union.len()));
    }
    ds.finish(&mut report);
    gb.finish(&mut report);
    Ok(report)
}

fn convexity(cfg: &AuditConfig) -> Result<ExperimentReport> {
    let cases = cfg.cases_or(1_000);
    let mut rng = cfg.rng(11);
    let mut report = ExperimentReport::new("");
    report.param("families", cases);
    let eps = PosRational::from_ratio(1, 4)?;
    let mut t = Tally::new("convexity-bound");
    for _ in 0..cases {
        let members = random_family(&mut rng);
        let rep = prop43_bound_audit(&int_family(&members)?, &eps, 1.0)?;
        let mult = oracle::int_multiplicity(&members);
        let w: u64 = mult.values().map(|&a| a * (a - 1) / 2).sum();
        let ok = rep.holds && rep.w == w && rep.union == mult.len() as u64;
        t.record(ok, || format!("{members:?}: |U| = {}, W = {}", rep.union, rep.w));
    }
    t.finish(&mut report);
    Ok(report)
}

fn gcd_sum_suite(cfg: &AuditConfig) -> Result<ExperimentReport> {
    let n_max = cfg.cases_or(2_000);
    let mut report = ExperimentReport::new("");
    report.param("n_max", n_max);
    let range: Vec<u64> = (1..=n_max).collect();
    let brute = gcd_sum_prefixes(&range)?;
    let fast = gcd_sum_fast_prefixes(n_max)?;
    let first_gap = brute.iter().zip(&fast).position(|(a, b)| a != b);
    report.check("fast-prefixes", first_gap.is_none() && brute.len() == fast.len(), format!("first mismatch at index {first_gap:?}"));
    let mut spot = Tally::new("fast-range");
    for n in [1, 2, 3, 10, 100, n_max / 2, n_max].into_iter().filter(|&n| n >= 1 && n <= n_max) {
        let v = gcd_sum_fast_range(n)?;
        spot.record(v == brute[n as usize - 1], || format!("n = {n}"));
    }
    spot.finish(&mut report);
    let small = n_max.min(200);
    let reference = oracle::gcd_sum(&range[..small as usize]);
    report.check("pair-oracle", reference == brute[small as usize - 1], format!("n = {small}"));
    report.exact("S(n_max)", brute[n_max as usize - 1].clone());
    let scan: Vec<u64> = (7..=14).map(|e| 1u64 << e).collect();
    report.absorb("scan", gcd_sum_growth_scan(&scan)?);
    Ok(report)
}

fn mult_table(cfg: &AuditConfig) -> Result<ExperimentReport> {
    let union_max = cfg.cases_or(512);
    let ratio_max = 4096u64.max(union_max);
    let mut report = ExperimentReport::new("");
    report.param("union_max", union_max).param("ratio_max", ratio_max);
    let prefix = mult_table_card_prefix(ratio_max, MULT_TABLE_BUDGET)?;
    let mut t = Tally::new("sieve-vs-union");
    for n in 1..=union_max {
        let sieve = mult_table_card(n, MULT_TABLE_BUDGET)?;
        let union = union_census(&mult_table_family(n)?).cardinality();
        t.record(sieve == union && sieve == prefix[n as usize], || format!("n = {n}: sieve {sieve}, union {union}"));
    }
    t.finish(&mut report);
    let mut s = Tally::new("sieve-vs-prefix");
    for n in [1024, 2048, ratio_max] {
        let sieve = mult_table_card(n, MULT_TABLE_BUDGET)?;
        s.record(sieve == prefix[n as usize], || format!("n = {n}"));
    }
    s.finish(&mut report);
    // M(n)/n^2 > M(2n)/(2n)^2 along powers of two, cross-multiplied. The
    // ratio is not monotone between consecutive even n (M(16) = 97, M(18) = 123).
    let mut dec = Tally::new("ratio-decreasing");
    let mut n = 2u64;
    while 2 * n <= ratio_max {
        let (a, b) = (prefix[n as usize] as u128, prefix[2 * n as usize] as u128);
        dec.record(4 * a > b, || format!("n = {n}: M(n) = {a}, M(2n) = {b}"));
        n *= 2;
    }
    dec.finish(&mut report);
    report.int("M(ratio_max)", prefix[ratio_max as usize]);
    let r = Rational::new(BigInt::from(prefix[ratio_max as usize]), BigInt::from(ratio_max * ratio_max));
    report.approx("M(ratio_max)/ratio_max^2", apunion_core::arith::rational_to_f64(&r));
    Ok(report)
}

fn ruzsa(cfg: &AuditConfig) -> Result<ExperimentReport> {
    let cases = cfg.cases_or(1_000);
    let mut rng = cfg.rng(13);
    let mut report = ExperimentReport::new("");
    report.param("sets", cases).param("size_max", 40);
    let mut t = Tally::new("triple-family");
    for _ in 0..cases {
        let len = rng.random_range(2..=40);
        let set: BTreeSet<i64> = (0..len).map(|_| rng.random_range(-1000..=1000)).collect();
        if set.len() < 2 {
            continue;
        }
        let a: Vec<BigInt> = set.iter().map(|&x| BigInt::from(x)).collect();
        let family = ruzsa_triple_family(&a)?;
        let positive: BTreeSet<BigInt> = a.iter().enumerate().flat_map(|(i, x)| a[i + 1..].iter().map(move |y| y - x)).collect();
        let diffs: BTreeSet<_> = family.members().iter().map(|p| p.diff().clone()).collect();
        let sums = oracle::sumset(&a);
        let inside = family.members().iter().flat_map(oracle::ap_elements).all(|x| x.is_integer() && sums.contains(&x.to_integer()));
        let three = family.members().iter().all(|p| p.length() == 3);
        let ok = diffs.len() == family.len() && family.len() == positive.len() && inside && three;
        t.record(ok, || format!("A = {set:?}"));
    }
    t.finish(&mut report);
    Ok(report)
}

fn w_chain(cfg: &AuditConfig) -> Result<ExperimentReport> {
    let cases = cfg.cases_or(1_000);
    let mut rng = cfg.rng(14);
    let mut report = ExperimentReport::new("");
    report.param("cases", cases);
    let mut t = Tally::new("w-identities");
    let mut c = Tally::new("w-chain");
    for _ in 0..cases {
        let a = random_set(&mut rng, 20);
        let b = random_set(&mut rng, 20);
        let d = rng.random_range(1..=8u64);
        let w = w_triple_count(&a, &b, rb(d));
        let degrees: u64 = a.iter().map(|x| {
            let k = quotient_degree(x, &b, rb(d));
            k * k.saturating_sub(1) / 2
        }).sum();
        let mut brute = 0;
        for x in a.iter() {
            let hits = b.iter().filter(|y| oracle::f_count(std::slice::from_ref(x), std::slice::from_ref(*y), d) == 1).count() as u64;
            brute += hits * hits.saturating_sub(1) / 2;
        }
        t.record(w == degrees && w == brute, || format!("d = {d}: W = {w}, degrees {degrees}, brute {brute}"));
        let chain = w_chain_check(&a, &b, rb(d));
        c.record(chain.holds, || format!("d = {d}: W = {}, floor sum {}, chain {}", chain.w, chain.floor_sum, chain.chain_bound));
    }
    t.finish(&mut report);
    c.finish(&mut report);
    Ok(report)
}

fn product_rep(cfg: &AuditConfig) -> Result<ExperimentReport> {
    let d_max = cfg.cases_or(8);
    let mut report = ExperimentReport::new("");
    report.param("d_max", d_max).param("t_max", 4);
    let mut t = Tally::new("second-moment");
    for d in 1..=d_max {
        for tt in 1..=4u32 {
            let rep = product_rep_audit(rb(d), tt, 1 << 24)?;
            // every t-tuple of [d], multiplied out
            let mut counts = std::collections::BTreeMap::<u64, u64>::new();
            let total = d.pow(tt);
            for code in 0..total {
                let (mut c, mut prod) = (code, 1);
                for _ in 0..tt {
                    prod *= c % d + 1;
                    c /= d;
                }
                *counts.entry(prod).or_insert(0) += 1;
            }
            let squares: BigInt = counts.values().map(|&n| BigInt::from(n * n)).sum();
            let powers: BigInt = (1..=total).map(|m| BigInt::from(oracle::divisor_count(m)).pow(tt)).sum();
            let ok = rep.holds
                && BigInt::from(rep.sum_of_squares.clone()) == squares
                && BigInt::from(rep.divisor_power_sum.clone()) == powers
                && squares <= powers;
            t.record(ok, || format!("d = {d}, t = {tt}: {squares} vs {powers}"));
        }
    }
    t.finish(&mut report);
    Ok(report)
}
