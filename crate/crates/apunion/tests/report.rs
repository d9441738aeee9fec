use apunion::report::{Cell, Exact, ExperimentReport, Table};
use apunion_core::arith::Rational;
use num_bigint::BigInt;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn cell() -> impl Strategy<Value = Cell> {
    prop_oneof![
        rational().prop_map(|r| Cell::Exact(Exact(r))),
        any::<f64>().prop_filter("finite", |x| x.is_finite()).prop_map(Cell::Approx),
        ".*".prop_map(Cell::Text),
    ]
}

fn report() -> impl Strategy<Value = ExperimentReport> {
    (
        prop::collection::btree_map("[a-z.]{1,8}", ".*", 0..4),
        prop::option::of(any::<u64>()),
        prop::collection::btree_map("[a-z.]{1,8}", rational(), 0..4),
        prop::collection::btree_map("[a-z.]{1,8}", any::<f64>().prop_filter("finite", |x| x.is_finite()), 0..4),
        prop::collection::vec(("[a-z-]{1,8}", any::<bool>(), ".*"), 0..4),
        prop::collection::vec(prop::collection::vec(cell(), 2), 0..3),
    )
        .prop_map(|(params, seed, exact, approx, checks, rows)| {
            let mut r = ExperimentReport::new("prop");
            r.parameters = params;
            r.seed = seed;
            for (k, v) in exact {
                r.exact(&k, v);
            }
            for (k, v) in approx {
                r.approx(&k, v);
            }
            for (n, p, d) in checks {
                r.check(n, p, d);
            }
            if !rows.is_empty() {
                r.table = Some(Table { columns: vec!["x".into(), "y".into()], rows });
            }
            r
        })
}

proptest! {
    #[test]
    fn json_round_trips(r in report()) {
        let json = r.to_json();
        let back = ExperimentReport::from_json(&json).unwrap();
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(back.to_json(), json);
    }

    #[test]
    fn csv_has_one_row_per_value(r in report()) {
        let csv = r.to_csv().unwrap();
        let mut reader = csv::Reader::from_reader(csv.as_bytes());
        let rows = reader.records().count();
        let cells = r.table.as_ref().map_or(0, |t| t.rows.len() * 2);
        let details = r.checks.iter().filter(|c| !c.detail.is_empty()).count();
        let expected = 1 + r.seed.is_some() as usize + r.parameters.len() + r.exact.len()
            + r.approx.len() + r.text.len() + r.checks.len() + details + cells;
        prop_assert_eq!(rows, expected);
    }
}
