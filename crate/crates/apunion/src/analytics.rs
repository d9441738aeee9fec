//! gcd-sum analytics behind the `gcd-sum` command.

use apunion_core::arith::rational_to_f64;
use apunion_core::gcd_sum::{gcd_sum, gcd_sum_fast_range, graham_average_bound, graham_quotient};

use crate::report::{Cell, ExperimentReport, Table};

/// Width of the band `S(n) / (n ln n)` must stay in across a scan.
pub const GROWTH_BAND: f64 = 3.0;

/// `S(n)` and `S(n) / (n ln n)` for each `n`; passes iff `S` is strictly
/// increasing and the normalised values (over `n >= 2`) span at most a
/// factor [`GROWTH_BAND`].
pub fn gcd_sum_growth_scan(n_list: &[u64]) -> apunion_core::Result<ExperimentReport> {
    if let Some(i) = n_list.windows(2).position(|w| w[0] >= w[1]) {
        return Err(apunion_core::Error::NotStrictlyIncreasing(i + 1));
    }
    let mut report = ExperimentReport::new("gcd-sum growth-scan");
    report.param("n_list", join(n_list));
    let mut table = Table {
        columns: vec!["n".into(), "S(n)".into(), "S(n)/(n ln n)".into()],
        rows: Vec::new(),
    };
    let mut prev = None;
    let mut increasing = true;
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for &n in n_list {
        let s = gcd_sum_fast_range(n)?;
        let normalised = if n >= 2 {
            let v = rational_to_f64(&s) / (n as f64 * (n as f64).ln());
            lo = lo.min(v);
            hi = hi.max(v);
            Cell::Approx(v)
        } else {
            Cell::Text("undefined".into())
        };
        if let Some(p) = prev.replace(s.clone()) {
            increasing &= p < s;
        }
        table.rows.push(vec![Cell::from(n), Cell::from(s), normalised]);
    }
    report.table = Some(table);
    report.check("strictly-increasing", increasing, "");
    if hi > 0.0 {
        let spread = hi / lo;
        report.approx("band.min", lo).approx("band.max", hi).approx("band.spread", spread);
        report.check(
            "growth-band",
            spread <= GROWTH_BAND,
            format!("max/min = {spread:.6} against {GROWTH_BAND}"),
        );
    }
    Ok(report)
}

/// `gcd_sum(a)` with the Graham quotient of the same sequence.
pub fn gcd_sum_report(a: &[u64], epsilon: f64, c: f64) -> apunion_core::Result<ExperimentReport> {
    let mut report = ExperimentReport::new("gcd-sum values");
    report.param("a", join(a));
    let s = gcd_sum(a)?;
    report.approx("sum", rational_to_f64(&s)).exact("sum", s);
    if a.len() >= 2 {
        let g = graham_quotient(a)?;
        let shape = graham_average_bound(a.len(), epsilon, c);
        report.int("graham.quotient", g.value);
        report.text("graham.pair", format!("({}, {})", a[g.pair.0], a[g.pair.1]));
        report.param("epsilon", epsilon).param("c", c);
        report.approx("graham.average_shape", shape);
        report.check("graham.meets-n", g.meets_n, format!("{} against n = {}", g.value, a.len()));
        report.text("graham.meets-average-shape", (g.value as f64 >= shape).to_string());
    }
    Ok(report)
}

pub(crate) fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}
