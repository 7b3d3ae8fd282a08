use oa_core::exact::int;
use oa_core::search::{
    feasible_tuples, render_csv, search_cell, FeasibleTuple, SearchRange, Section,
};

fn run(s: i64, q_max: i64, n_min: i64, n_max: i64) -> oa_core::search::SearchOutcome {
    feasible_tuples(&SearchRange {
        s,
        q_min: 2,
        q_max,
        n_min,
        n_max,
        exhaustive: false,
    })
    .unwrap()
}

#[test]
fn degree_two_table() {
    let out = run(2, 6, 3, 300);
    assert!(out.unresolved.is_empty());
    let main = out.section(Section::Main);
    assert_eq!(main.len(), 21);
    assert_eq!(render_csv(2, &main), include_str!("golden/table1.csv"));
    let hadamard = out.section(Section::Hadamard);
    assert_eq!(hadamard.len(), 75);
    assert!(hadamard
        .iter()
        .all(|r| r.q == 2 && r.n % 4 == 0 && r.size == int(2 * r.n) && r.alphas == [r.n / 2, r.n]));
}

#[test]
fn degree_three_table() {
    let out = run(3, 10, 4, 200);
    assert!(out.unresolved.is_empty());
    assert_eq!(render_csv(3, &out.section(Section::Main)), include_str!("golden/table2.csv"));
    let extra: Vec<(i64, Vec<i64>)> = out
        .section(Section::Tight2s)
        .iter()
        .map(|r| (r.n, r.alphas.clone()))
        .collect();
    assert_eq!(extra, vec![(7, vec![2, 4, 6]), (23, vec![8, 12, 16])]);
}

#[test]
fn degree_four_table() {
    let out = run(4, 10, 8, 100);
    assert!(out.unresolved.is_empty());
    assert_eq!(render_csv(4, &out.section(Section::Main)), include_str!("golden/table3.csv"));
    let extra: Vec<FeasibleTuple> = out.section(Section::Tight2s);
    assert_eq!(extra.len(), 1);
    assert_eq!(extra[0].csv_row(), "256,9,2,2,4,6,8,false");
}

#[test]
fn prefilter_loses_nothing() {
    for (s, q_max, n_max) in [(2, 4, 30), (3, 3, 16), (4, 2, 12)] {
        for q in 2..=q_max {
            for n in s + 1..=n_max {
                let fast = search_cell(s, q, n, false).unwrap();
                let full = search_cell(s, q, n, true).unwrap();
                assert_eq!(fast.rows, full.rows, "s={s} q={q} n={n}");
                assert!(full.unresolved.is_empty());
            }
        }
    }
}

#[test]
fn parallel_runs_agree() {
    let a = run(2, 3, 3, 60);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = pool.install(|| run(2, 3, 3, 60));
    assert_eq!(a.rows, b.rows);
}
