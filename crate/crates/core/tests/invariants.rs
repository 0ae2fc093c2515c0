use netrobust::graph::{parse_graph, write_graph, Graph};
use netrobust::independence::{independence_number, DEFAULT_NODE_BUDGET};
use netrobust::matching::{has_perfect_matching, maximum_matching, mp1_number, mp_number, v_e, MatchingError};
use netrobust::mincut::edge_connectivity;
use netrobust::oracle::{brute_alpha, brute_has_perfect_matching, brute_lambda_k, compare_instance};
use netrobust::restricted::{lambda_k, xi_k, LadderValue};
use netrobust::topology::{gen_dcell, size_t};
use proptest::prelude::*;

/// Connected graphs on 4..=9 vertices: a random spanning tree plus extra edges.
fn connected_graph() -> impl Strategy<Value = Graph> {
    (4usize..=9).prop_flat_map(|n| {
        let parents: Vec<BoxedStrategy<usize>> = (1..n).map(|v| (0..v).boxed()).collect();
        let extra = proptest::collection::vec(0.0f64..1.0, n * (n - 1) / 2);
        (Just(n), parents, extra, 0.0f64..0.7).prop_map(|(n, parents, extra, density)| {
            let mut edges: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
            let mut slot = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if extra[slot] < density && !edges.contains(&(u, v)) {
                        edges.push((u, v));
                    }
                    slot += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn text_format_round_trips(g in connected_graph()) {
        let back = parse_graph(&write_graph(&g)).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn components_partition_vertices(g in connected_graph(), cut in proptest::collection::vec(any::<prop::sample::Index>(), 0..4)) {
        let ids: Vec<usize> = cut.iter().map(|i| i.index(g.edge_count())).collect();
        let mut seen: Vec<usize> = g.components_without(&ids).into_iter().flatten().collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..g.vertex_count()).collect::<Vec<_>>());
    }

    #[test]
    fn edge_connectivity_is_certified(g in connected_graph()) {
        let (value, w) = edge_connectivity(&g).unwrap();
        prop_assert!(value <= g.min_degree());
        prop_assert!(w.is_consistent(&g));
        prop_assert_eq!(w.value(), value);
        prop_assert_eq!(Some(value), brute_lambda_k(&g, 1).unwrap());
    }

    #[test]
    fn restricted_ladder_is_monotone(g in connected_graph()) {
        let mut prev = Some(0);
        for k in 1..=4 {
            let r = lambda_k(&g, k).unwrap();
            prop_assert_eq!(r.value.defined(), brute_lambda_k(&g, k).unwrap());
            match (prev, r.value) {
                (None, LadderValue::Defined(_)) => prop_assert!(false, "λ_{} defined after an undefined rung", k),
                (Some(p), LadderValue::Defined(v)) => {
                    prop_assert!(p <= v);
                    let w = r.witness.as_ref().unwrap();
                    prop_assert!(w.is_consistent(&g) && w.value() == v);
                }
                _ => {}
            }
            prev = r.value.defined();
        }
    }

    #[test]
    fn xi_bounds_restricted_connectivity(g in connected_graph()) {
        let x = xi_k(&g, 2).unwrap();
        prop_assert_eq!(g.boundary_of(&x.set).len(), x.value);
        if let LadderValue::Defined(l) = lambda_k(&g, 2).unwrap().value {
            let pieces = g.components_without(&g.boundary_of(&x.set));
            if pieces.iter().all(|c| c.len() >= 2) {
                prop_assert!(l <= x.value);
            }
        }
    }

    #[test]
    fn matching_agrees_with_brute_force(g in connected_graph()) {
        let m = maximum_matching(&g);
        let mut covered = vec![false; g.vertex_count()];
        for &(u, v) in &m {
            prop_assert!(g.has_edge(u, v) && !covered[u] && !covered[v]);
            covered[u] = true;
            covered[v] = true;
        }
        prop_assert_eq!(has_perfect_matching(&g), brute_has_perfect_matching(&g).unwrap());
    }

    #[test]
    fn preclusion_numbers_respect_degree_bounds(g in connected_graph()) {
        if g.vertex_count() % 2 == 0 && has_perfect_matching(&g) {
            let mp = mp_number(&g, false).unwrap();
            prop_assert!(mp.number <= g.min_degree());
            if g.min_degree() >= 2 {
                match mp1_number(&g, false) {
                    Ok(r) => prop_assert!(r.number <= v_e(&g).unwrap()),
                    Err(e) => prop_assert_eq!(e, MatchingError::NoPreclusionSet),
                }
            }
        }
    }

    #[test]
    fn independence_is_exact_and_bounded(g in connected_graph()) {
        let a = independence_number(&g, DEFAULT_NODE_BUDGET).unwrap();
        prop_assert!(a.alpha <= a.proof_bound);
        prop_assert_eq!(a.alpha, brute_alpha(&g).unwrap());
    }

    #[test]
    fn fast_routines_match_oracles(g in connected_graph()) {
        for r in compare_instance("prop", &g) {
            prop_assert!(r.agree, "{} oracle {} fast {}", r.metric, r.oracle, r.fast);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn dcell_is_regular_of_the_right_order(k in 0usize..=2, n in 2usize..=5) {
        let g = gen_dcell(k, n).unwrap();
        prop_assert!(size_t(k, n).unwrap() == g.vertex_count().into());
        prop_assert!(g.is_connected());
        prop_assert!((0..g.vertex_count()).all(|v| g.degree(v) == n + k - 1));
    }
}
