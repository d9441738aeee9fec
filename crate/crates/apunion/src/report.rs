//! The serialisable record every command produces.
//!
//! Exact values are rationals written `"num/den"` (integers as `"n/1"`);
//! `f64` only appears in the `approx` map and `Cell::Approx`, and must be
//! finite so JSON round-trips losslessly.

use std::collections::BTreeMap;
use std::fmt;

use apunion_core::arith::{parse_rational, Rational};
use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Exact(pub Rational);

impl Exact {
    pub fn int(n: impl Into<BigInt>) -> Self {
        Exact(Rational::from_integer(n.into()))
    }
}

impl From<Rational> for Exact {
    fn from(r: Rational) -> Self {
        Exact(r)
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map(Exact).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cell {
    Exact(Exact),
    Approx(f64),
    Text(String),
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        Cell::Exact(Exact::int(n))
    }
}

impl From<Rational> for Cell {
    fn from(r: Rational) -> Self {
        Cell::Exact(Exact(r))
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        if x.is_finite() {
            Cell::Approx(x)
        } else {
            Cell::Text(x.to_string())
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub exact: BTreeMap<String, Exact>,
    /// Convenience floats, never the source of a pass/fail decision.
    pub approx: BTreeMap<String, f64>,
    /// Derived values with no numeric form (witnesses, `inf`, ...).
    pub text: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    /// Only recorded on request: timings break byte-identical reruns.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_clock_ms: Option<u64>,
}

impl ExperimentReport {
    pub fn new(command: impl Into<String>) -> Self {
        ExperimentReport { command: command.into(), ..Default::default() }
    }

    pub fn param(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(name.to_owned(), value.to_string());
        self
    }

    pub fn exact(&mut self, name: &str, value: impl Into<Exact>) -> &mut Self {
        self.exact.insert(name.to_owned(), value.into());
        self
    }

    pub fn int(&mut self, name: &str, value: impl Into<BigInt>) -> &mut Self {
        self.exact(name, Exact::int(value))
    }

    /// Non-finite values go to `text`.
    pub fn approx(&mut self, name: &str, value: f64) -> &mut Self {
        if value.is_finite() {
            self.approx.insert(name.to_owned(), value);
        } else {
            self.text.insert(name.to_owned(), value.to_string());
        }
        self
    }

    pub fn text(&mut self, name: &str, value: impl Into<String>) -> &mut Self {
        self.text.insert(name.to_owned(), value.into());
        self
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) -> &mut Self {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Fold `other` in, prefixing its names with `prefix.`.
    pub fn absorb(&mut self, prefix: &str, other: ExperimentReport) {
        let key = |k: String| format!("{prefix}.{k}");
        self.parameters.extend(other.parameters.into_iter().map(|(k, v)| (key(k), v)));
        self.exact.extend(other.exact.into_iter().map(|(k, v)| (key(k), v)));
        self.approx.extend(other.approx.into_iter().map(|(k, v)| (key(k), v)));
        self.text.extend(other.text.into_iter().map(|(k, v)| (key(k), v)));
        self.checks.extend(other.checks.into_iter().map(|c| Check { name: key(c.name), ..c }));
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// Long format, one value per row:
    /// `section,index,name,num,den,approx,text`.
    pub fn to_csv(&self) -> csv::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["section", "index", "name", "num", "den", "approx", "text"])?;
        let mut row = |section: &str, index: usize, name: &str, cell: &Cell| -> csv::Result<()> {
            let (num, den, approx, text) = match cell {
                Cell::Exact(e) => (e.0.numer().to_string(), e.0.denom().to_string(), String::new(), String::new()),
                Cell::Approx(x) => (String::new(), String::new(), x.to_string(), String::new()),
                Cell::Text(t) => (String::new(), String::new(), String::new(), t.clone()),
            };
            w.write_record([section, &index.to_string(), name, &num, &den, &approx, &text])
        };
        row("meta", 0, "command", &Cell::Text(self.command.clone()))?;
        if let Some(seed) = self.seed {
            row("meta", 0, "seed", &Cell::Text(seed.to_string()))?;
        }
        if let Some(ms) = self.wall_clock_ms {
            row("meta", 0, "wall_clock_ms", &Cell::from(ms))?;
        }
        for (k, v) in &self.parameters {
            row("parameter", 0, k, &Cell::Text(v.clone()))?;
        }
        for (k, v) in &self.exact {
            row("exact", 0, k, &Cell::Exact(v.clone()))?;
        }
        for (k, &v) in &self.approx {
            row("approx", 0, k, &Cell::Approx(v))?;
        }
        for (k, v) in &self.text {
            row("text", 0, k, &Cell::Text(v.clone()))?;
        }
        for (i, c) in self.checks.iter().enumerate() {
            let verdict = if c.pass { "pass" } else { "fail" };
            row("check", i, &c.name, &Cell::Text(verdict.into()))?;
            if !c.detail.is_empty() {
                row("check_detail", i, &c.name, &Cell::Text(c.detail.clone()))?;
            }
        }
        if let Some(t) = &self.table {
            for (r, cells) in t.rows.iter().enumerate() {
                for (name, cell) in t.columns.iter().zip(cells) {
                    row("table", r, name, cell)?;
                }
            }
        }
        drop(row);
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use apunion_core::arith::parse_rational;

    fn sample() -> ExperimentReport {
        let mut r = ExperimentReport::new("demo");
        r.param("n", 3).int("count", 7u64).exact("value", parse_rational("-22/7").unwrap());
        r.approx("ratio", 0.1 + 0.2).approx("huge", f64::INFINITY).text("note", "a,b \"q\"");
        r.check("first", true, "").check("second", false, "off by one");
        r.seed = Some(u64::MAX);
        r.table = Some(Table {
            columns: vec!["n".into(), "s".into(), "x".into()],
            rows: vec![vec![Cell::from(10u64), Cell::from(parse_rational("7/6").unwrap()), Cell::from(1.5)]],
        });
        r
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let json = r.to_json();
        assert!(json.contains("\"-22/7\"") && json.contains("\"7/1\""));
        assert_eq!(ExperimentReport::from_json(&json).unwrap(), r);
        assert_eq!(r.text["huge"], "inf");
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn csv_long_format() {
        let csv = sample().to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("section,index,name,num,den,approx,text"));
        assert!(csv.contains("exact,0,value,-22,7,,"));
        assert!(csv.contains("text,0,note,,,,\"a,b \"\"q\"\"\""));
        assert!(csv.contains("table,0,s,7,6,,"));
        assert!(csv.contains("check_detail,1,second,,,,off by one"));
    }

    #[test]
    fn absorb_prefixes() {
        let mut all = ExperimentReport::new("all");
        all.absorb("demo", sample());
        assert!(all.exact.contains_key("demo.count"));
        assert_eq!(all.checks[1].name, "demo.second");
    }
}
