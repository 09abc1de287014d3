mod common;

use cops_core::game::{
    self, extract_strategy, simulate_play, GameState, OptimalRobber, Outcome, Side, SolveLimits,
};
use cops_core::generators as gens;
use cops_core::Graph;
use proptest::prelude::*;

use common::Oracle;

fn limits() -> SolveLimits {
    SolveLimits::default()
}

fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, any::<u64>(), 0.15f64..0.9).prop_map(|(n, seed, p)| {
        // Random spanning tree plus random extra edges keeps it connected.
        let tree = gens::random_tree(n, seed).unwrap();
        let extra = gens::gnp(n, p, seed ^ 0x9e37).unwrap();
        let mut edges: Vec<(usize, usize)> = tree.edges().collect();
        edges.extend(extra.edges().filter(|&(u, v)| !tree.has_edge(u, v)));
        Graph::from_edges(n, edges).unwrap()
    })
}

#[test]
fn catalog_counts() {
    let counts: Vec<usize> = (1..=7).map(|n| common::connected_graphs(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853]);
}

#[test]
fn three_cops_match_oracle_on_five_vertices() {
    for g in common::connected_graphs(5) {
        let res = game::solve(&g, 3, &limits()).unwrap();
        assert_eq!(res.capture_time_max(), Oracle::new(&g, 3).value());
    }
}

#[test]
fn optimal_play_takes_exactly_the_capture_time() {
    for g in [
        gens::petersen(),
        gens::grid(3, 4).unwrap(),
        gens::cycle(7).unwrap(),
    ] {
        let c = game::cop_number(&g, &limits()).unwrap();
        let res = game::solve(&g, c, &limits()).unwrap();
        let mut cops = extract_strategy(&res, Side::Cops).unwrap();
        let mut robber = OptimalRobber { result: &res };
        let trace = simulate_play(&g, &mut cops, &mut robber, 1_000, 3).unwrap();
        let want = res.capture_time_max().unwrap() as usize;
        assert_eq!(trace.outcome, Outcome::Captured { round: want });
    }
}

#[test]
fn optimal_robber_survives_one_cop_short() {
    let g = gens::petersen();
    let res = game::solve(&g, 2, &limits()).unwrap();
    let mut robber = OptimalRobber { result: &res };
    for seed in 0..20 {
        let trace =
            simulate_play(&g, &mut game::GreedyCops { k: 2 }, &mut robber, 200, seed).unwrap();
        assert_eq!(trace.outcome, Outcome::Survived { rounds: 200 });
    }
}

#[test]
fn projective_plane_needs_more_than_q_cops() {
    // Girth 6 and degree q + 1, so q cops always leave an escape.
    for q in [2u64, 3] {
        let g = gens::projective_incidence(q).unwrap();
        let res = game::solve(&g, q as usize, &limits()).unwrap();
        assert!(!res.cop_win(), "q = {q}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn agrees_with_oracle(g in connected_graph(7), k in 1usize..=2) {
        let res = game::solve(&g, k, &limits()).unwrap();
        let oracle = Oracle::new(&g, k);
        prop_assert_eq!(res.capture_time_max(), oracle.value());
        for (state, t) in res.iter_states() {
            let want = match state.to_move {
                Side::Cops => oracle.cop_time(&state.cops, state.robber),
                Side::Robber => oracle.robber_time(&state.cops, state.robber),
            };
            prop_assert_eq!(t, want);
        }
    }

    #[test]
    fn more_cops_never_hurt(g in connected_graph(8)) {
        let one = game::solve(&g, 1, &limits()).unwrap();
        let two = game::solve(&g, 2, &limits()).unwrap();
        prop_assert!(!one.cop_win() || two.cop_win());
        if let (Some(a), Some(b)) = (one.capture_time_max(), two.capture_time_max()) {
            prop_assert!(b <= a);
        }
        for (state, t1) in one.iter_states() {
            // A second cop on the same vertex can shadow the first.
            let mut cops = state.cops.clone();
            cops.push(cops[0]);
            let t2 = two.capture_time(&GameState::new(cops, state.robber, state.to_move)).unwrap();
            if let Some(t1) = t1 {
                prop_assert!(t2.is_some_and(|t2| t2 <= t1));
            }
        }
    }

    #[test]
    fn cop_win_iff_dismantlable(g in connected_graph(9)) {
        let res = game::solve(&g, 1, &limits()).unwrap();
        prop_assert_eq!(res.cop_win(), game::is_copwin_dismantlable(&g).unwrap());
    }

    #[test]
    fn zero_time_exactly_at_capture(g in connected_graph(7)) {
        let res = game::solve(&g, 2, &limits()).unwrap();
        for (state, t) in res.iter_states() {
            prop_assert_eq!(t == Some(0), state.is_capture());
        }
    }

    #[test]
    fn cop_number_sums_over_components(a in connected_graph(6), b in connected_graph(6)) {
        let n = a.n() + b.n();
        let edges: Vec<(usize, usize)> = a
            .edges()
            .chain(b.edges().map(|(u, v)| (u + a.n(), v + a.n())))
            .collect();
        let union = Graph::from_edges(n, edges).unwrap();
        let want = game::cop_number(&a, &limits()).unwrap() + game::cop_number(&b, &limits()).unwrap();
        prop_assert_eq!(game::cop_number(&union, &limits()).unwrap(), want);
    }
}
