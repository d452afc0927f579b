mod common;

use proptest::prelude::*;

use bczip::oracle::{
    dp_wcspp, enumerate_parsings, full_frontier, full_graph, graph_edges, pareto_frontier, OracleError, WcsppTable,
};
use bczip::tradeoff::{gen_pathological, sweep, LevelMapping, LevelRange, PathologicalError, SWEEP_CSV_HEADER};
use bczip::ParseGraph;

fn models() -> Vec<bczip::CostModel> {
    let mut v = common::log_models().to_vec();
    v.extend(common::small_calibrated_models());
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    /// The label DP and the budget table describe the same frontier, and
    /// the pruned graph loses none of it.
    #[test]
    fn oracles_agree(text in prop::collection::vec(prop::sample::select(b"ab".to_vec()), 1..=16), which in 0usize..6) {
        let model = models()[which];
        let frontier = enumerate_parsings(&text, &model).unwrap();
        let t_hi = frontier.iter().map(|p| p.t_ticks).max().unwrap();
        let table = WcsppTable::build(&text, &model, t_hi).unwrap();
        let mut pairs: Vec<(u64, u64)> = frontier.iter().map(|p| (p.s_bits, p.t_ticks)).collect();
        pairs.sort_by_key(|&(_, t)| t);
        prop_assert_eq!(&table.frontier(), &pairs);
        for p in &frontier {
            prop_assert_eq!(common::parsing_cost(&model, &p.parsing), (p.s_bits, p.t_ticks));
            prop_assert_eq!(&common::expand(&p.parsing), &text);
        }
        for budget in 0..=t_hi {
            let want = frontier.iter().filter(|p| p.t_ticks <= budget).map(|p| p.s_bits).min();
            prop_assert_eq!(table.phi(budget), want);
            match dp_wcspp(&text, &model, budget) {
                Ok(o) => {
                    prop_assert_eq!(Some(o.s_bits), want);
                    prop_assert!(o.t_ticks <= budget);
                    prop_assert_eq!(common::parsing_cost(&model, &o.parsing), (o.s_bits, o.t_ticks));
                    prop_assert_eq!(&common::expand(&o.parsing), &text);
                }
                Err(e) => prop_assert!(e == OracleError::Infeasible && want.is_none()),
            }
        }
        let g = ParseGraph::build(&text, model).unwrap();
        let mut pruned: Vec<(u64, u64)> = pareto_frontier(&text, &graph_edges(&g)).iter().map(|p| (p.s_bits, p.t_ticks)).collect();
        pruned.sort_by_key(|&(_, t)| t);
        prop_assert_eq!(pruned, pairs);
    }
}

#[test]
fn full_graph_lists_every_phrase() {
    let text = b"abaab";
    let model = common::log_models()[0];
    let g = full_graph(text, &model);
    // At node 3 the copies are "a" at d in {1, 3} and "ab" at d = 3.
    let at3: Vec<(u32, u32)> = g[3].iter().map(|e| (e.to, e.witness)).collect();
    assert_eq!(at3, vec![(4, 0), (4, 1), (5, 3)]);
    assert!(g[0].iter().all(|e| e.witness == 0));
}

#[test]
fn guards() {
    let model = common::log_models()[0];
    assert_eq!(enumerate_parsings(&[b'a'; 25], &model).unwrap_err(), OracleError::TooLarge);
    assert_eq!(full_frontier(&[b'a'; 513], &model).unwrap_err(), OracleError::TooLarge);
    assert_eq!(dp_wcspp(b"ab", &model, 100_001).unwrap_err(), OracleError::TooLarge);
    assert_eq!(dp_wcspp(b"ab", &model, 1).unwrap_err(), OracleError::Infeasible);
}

#[test]
fn level_ranges() {
    let r: LevelRange = "0:1:0.05".parse().unwrap();
    let levels = r.levels();
    assert_eq!(levels.len(), 21);
    assert_eq!((levels[0], levels[1], levels[20]), (0.0, 0.05, 1.0));
    assert_eq!("0.5".parse::<LevelRange>().unwrap().levels(), vec![0.5]);
    assert!("1:0:0.1".parse::<LevelRange>().is_err());
    assert!("a:b".parse::<LevelRange>().is_err());
    assert!("0:1:0".parse::<LevelRange>().is_err());

    let m = LevelMapping { fastest: 100, smallest: 300 };
    assert_eq!((m.budget(0.0), m.budget(0.5), m.budget(1.0)), (100, 200, 300));
}

#[test]
fn sweep_rows_are_csv() {
    let text = gen_pathological(b"ab", 2, 5).unwrap();
    let g = ParseGraph::build(&text, models()[3]).unwrap();
    let rows = sweep(&g, &"0:1:0.25".parse::<LevelRange>().unwrap().levels()).unwrap();
    assert_eq!(rows.len(), 5);
    let cols = SWEEP_CSV_HEADER.split(',').count();
    for w in rows.windows(2) {
        assert!(w[0].budget <= w[1].budget);
    }
    for row in &rows {
        assert_eq!(row.to_string().split(',').count(), cols);
    }
    assert!(rows.last().unwrap().exact);
}

#[test]
fn pathological_layout() {
    assert_eq!(gen_pathological(b"ab", 1, 2).unwrap(), b"$ab$$ab$$$ab");
    assert_eq!(gen_pathological(b"", 1, 2), Err(PathologicalError::EmptyPattern));
    assert_eq!(gen_pathological(b"a$", 1, 2), Err(PathologicalError::DollarInPattern));
    assert_eq!(gen_pathological(b"a", 0, 2), Err(PathologicalError::ZeroPadding));
}
