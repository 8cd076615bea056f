mod common;

use island_core::cnf::Formula;
use island_core::harness::{
    count_solutions, island_space_size, reduction_factor, stats_report, to_csv, InstanceReport,
    StatsOptions,
};
use island_core::{island_extract, Guard, Heuristic};
use proptest::prelude::*;

fn reversed(f: &Formula) -> Formula {
    let mut clauses = f.clauses().to_vec();
    clauses.reverse();
    Formula::new(f.num_vars(), clauses).unwrap()
}

proptest! {
    #[test]
    fn model_count_ignores_clause_order(f in common::formula(12, 30, 4)) {
        let a = count_solutions(&f, Guard::default()).unwrap();
        prop_assert_eq!(a, count_solutions(&reversed(&f), Guard::default()).unwrap());
        prop_assert_eq!(a, common::oracle_solutions(&f).len() as u64);
    }

    #[test]
    fn island_space_contains_every_model(f in common::formula(12, 30, 4)) {
        let res = island_extract(&f, Heuristic::Ratio);
        let space = island_space_size(&res, Guard::default()).unwrap();
        prop_assert!(space >= 1);
        prop_assert!(space >= count_solutions(&f, Guard::default()).unwrap());
        prop_assert!(space <= 1u64 << f.num_vars());
    }

    #[test]
    fn report_fields_are_consistent(f in common::formula(12, 30, 4), h in prop::sample::select(Heuristic::ALL.to_vec())) {
        let r = stats_report(&f, h, StatsOptions { enumerate: true, guard: Guard::default() });
        let res = island_extract(&f, h);
        prop_assert_eq!(r.island_clauses, res.island.len());
        prop_assert_eq!(r.num_clauses, f.len());
        prop_assert_eq!(r.reduction, reduction_factor(f.num_vars(), r.island_space.unwrap()));
        let back: InstanceReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        prop_assert_eq!(back, r.clone());
        prop_assert_eq!(to_csv(&[r]).lines().count(), 2);
    }

    #[test]
    fn reduction_rounds_half_up(n in 0usize..40, space in 1u64..100_000) {
        let total = 2f64.powi(n as i32);
        let want = (total / space as f64 + 0.5).floor() as u64;
        prop_assert_eq!(reduction_factor(n, space), Some(want));
    }
}

#[test]
fn guard_refusal_degrades_the_report() {
    let rows: Vec<Vec<i64>> = (1..=30).map(|v| vec![v]).collect();
    let rows: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    let f = Formula::from_dimacs_rows(30, &rows);
    let opts = StatsOptions {
        enumerate: true,
        guard: Guard::states(1 << 20),
    };
    let r = stats_report(&f, Heuristic::Ratio, opts);
    assert_eq!(r.island_space, None);
    assert_eq!(r.model_count, None);
    assert!(!r.notes.is_empty());
    assert_eq!(r.island_clauses, 30);
}
