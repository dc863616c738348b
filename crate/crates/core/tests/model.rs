mod common;

use std::collections::BTreeSet;

use common::{naive_edges, random_incidence, rng};
use proptest::prelude::*;
use rand::Rng;
use rig_core::model::io::GraphFile;
use rig_core::model::{derived_params, incidence_queries, intersection_of, sample_bipartite, sparsify, NpRegime};
use rig_core::oracle::edges_bruteforce;
use rig_core::{BipartiteIncidence, Feature, Vertex};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn transpose_consistency(n in 1usize..40, m in 1usize..40, p in 0.0f64..=1.0, seed: u64) {
        let b = sample_bipartite(n, m, p, seed).unwrap();
        prop_assert!(b.is_consistent());
        let rebuilt = BipartiteIncidence::from_feature_sets(n, m, b.feature_sets().to_vec()).unwrap();
        prop_assert_eq!(&rebuilt, &b);
        prop_assert_eq!(sample_bipartite(n, m, p, seed).unwrap(), b);
    }

    #[test]
    fn edges_match_bruteforce(n in 1usize..=20, m in 1usize..=20, p in 0.0f64..=1.0, seed: u64) {
        let b = sample_bipartite(n, m, p, seed).unwrap();
        let g = intersection_of(&b);
        let edges: Vec<_> = g.edges().collect();
        prop_assert_eq!(&edges, &edges_bruteforce(&b).unwrap());
        prop_assert_eq!(&edges, &naive_edges(&b));
        for v in 0..n as Vertex {
            prop_assert!(!g.has_edge(v, v));
            for &u in g.neighbors(v) {
                prop_assert!(g.neighbors(u).contains(&v));
            }
        }
    }

    #[test]
    fn sparsification_partitions_edges(n in 2usize..30, m in 1usize..30, p in 0.0f64..=1.0, frac in 0.0f64..=1.0, seed: u64) {
        let b = sample_bipartite(n, m, p, seed).unwrap();
        let lambda = frac * n as f64;
        let t = sparsify(&b, lambda, seed ^ 1).unwrap();
        prop_assert_eq!(t.q, lambda / n as f64);
        let orig: BTreeSet<_> = t.original.edges().collect();
        let sparse: BTreeSet<_> = t.sparse.edges().collect();
        let lost: BTreeSet<_> = t.deleted_edges.iter().copied().collect();
        prop_assert!(sparse.is_subset(&orig));
        prop_assert!(lost.is_disjoint(&sparse));
        prop_assert_eq!(lost.union(&sparse).copied().collect::<BTreeSet<_>>(), orig);
        for v in 0..n as Vertex {
            let kept = t.sparse.source().features_of(v);
            prop_assert!(kept.iter().all(|w| b.features_of(v).contains(w)));
        }
        let again = sparsify(&b, lambda, seed ^ 1).unwrap();
        prop_assert_eq!(again.deleted_edges, t.deleted_edges);
    }

    #[test]
    fn graph_file_round_trip(n in 1usize..30, m in 1usize..30, p in 0.0f64..=1.0, seed: u64) {
        let incidence = sample_bipartite(n, m, p, seed).unwrap();
        let file = GraphFile { incidence, p, seed };
        prop_assert_eq!(GraphFile::parse(&file.to_text()).unwrap(), file);
    }
}

#[test]
fn small_intersection_examples() {
    let b = BipartiteIncidence::from_feature_sets(3, 1, vec![vec![0], vec![0], vec![]]).unwrap();
    let g = intersection_of(&b);
    assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    assert_eq!(g.degree(2), 0);
    let mut r = rng(2);
    for _ in 0..200 {
        let p = r.random_range(0.0..0.6);
        let b = random_incidence(&mut r, 8, 6, p);
        assert_eq!(intersection_of(&b).edges().collect::<Vec<_>>(), naive_edges(&b));
    }
}

#[test]
fn incidence_queries_match_naive() {
    let mut r = rng(9);
    for _ in 0..500 {
        let p = r.random_range(0.05..0.5);
        let b = random_incidence(&mut r, 10, 8, p);
        let g = intersection_of(&b);
        let s: Vec<Vertex> = (0..10).filter(|_| r.random_bool(0.3)).collect();
        let rr: Vec<Feature> = (0..8).filter(|_| r.random_bool(0.3)).collect();
        let q = incidence_queries(&g, &s, &rr).unwrap();

        let chosen_by = |w: Feature| -> Vec<Vertex> { (0..10).filter(|&v| b.features_of(v).contains(&w)).collect() };
        let w_s: BTreeSet<Feature> = s.iter().flat_map(|&v| b.features_of(v).iter().copied()).collect();
        let v_r: BTreeSet<Vertex> = rr.iter().flat_map(|&w| chosen_by(w)).collect();
        let w1: BTreeSet<Feature> = w_s.iter().copied().filter(|&w| chosen_by(w).len() >= 2).collect();
        let w2: BTreeSet<Feature> =
            w_s.iter().copied().filter(|&w| chosen_by(w).iter().filter(|v| s.contains(v)).count() >= 2).collect();
        let nb: BTreeSet<Vertex> = (0..10)
            .filter(|u| !s.contains(u))
            .filter(|&u| s.iter().any(|&v| b.features_of(u).iter().any(|w| b.features_of(v).contains(w))))
            .collect();

        assert_eq!(q.features, w_s.into_iter().collect::<Vec<_>>());
        assert_eq!(q.vertices_of_r, v_r.into_iter().collect::<Vec<_>>());
        assert_eq!(q.useful_features, w1.into_iter().collect::<Vec<_>>());
        assert_eq!(q.internal_features, w2.into_iter().collect::<Vec<_>>());
        assert_eq!(q.neighbourhood_size(), nb.len());
        assert_eq!(q.neighbourhood, nb.into_iter().collect::<Vec<_>>());
    }
}

#[test]
fn params_inequalities_on_random_grid() {
    let mut r = rng(21);
    let tol = 1e-12;
    let mut above_40 = 0;
    for _ in 0..20_000 {
        let n = r.random_range(2..=2_000_000usize);
        let m = r.random_range(1..=2_000_000usize);
        let p = 10f64.powf(r.random_range(-9.0..-0.0005));
        let pr = derived_params(n, m, p).unwrap();
        let (mp, np) = (m as f64 * p, n as f64 * p);
        let up = |x: f64| x * (1.0 + tol) + 1e-300;
        assert!(pr.d0 <= up(mp), "d0 <= mp at {n} {m} {p}");
        assert!(pr.d0 <= up(pr.d1), "d0 <= d1 at {n} {m} {p}");
        assert!(pr.d0 <= up(mp * np.min(1.0)), "d0 <= mp min(np,1) at {n} {m} {p}");
        assert!(pr.d1 <= up(2.0 * pr.d0 * np.max(1.0)), "d1 <= 2 d0 max(np,1) at {n} {m} {p}");
        assert_eq!(pr.regime_np == NpRegime::Above40, np > 40.0);
        if np > 40.0 {
            above_40 += 1;
            assert!(0.9 * mp <= up(pr.d0));
        }
    }
    assert!(above_40 > 1000);
}
