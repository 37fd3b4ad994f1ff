mod common;

use commhide::generate::{erdos_renyi, random_partition};
use commhide::permanence::{affected_set, graph_permanence, vertex_permanence, PermanenceCache};
use commhide::{CommunityStructure, EdgeUpdate, Graph};
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{assignment_of, exact_permanence, Dense};

fn instance(n: usize, p: f64, k: usize, seed: u64) -> (Graph, CommunityStructure) {
    (erdos_renyi(n, p, seed), random_partition(n, k, seed.wrapping_add(1)))
}

fn toggle_of(g: &Graph, u: usize, v: usize) -> EdgeUpdate {
    if g.adjacent(u, v) {
        EdgeUpdate::delete(u, v)
    } else {
        EdgeUpdate::add(u, v)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn permanence_is_bounded_and_matches_definition(
        n in 2usize..26,
        p in 0.05f64..0.9,
        k in 1usize..6,
        seed in any::<u64>(),
    ) {
        let (g, cs) = instance(n, p, k, seed);
        let dense = Dense::from_graph(&g);
        let assignment = assignment_of(&cs);
        for v in g.nodes() {
            let got = vertex_permanence(&g, &cs, v).unwrap().permanence;
            prop_assert!((-1.0..=1.0).contains(&got), "perm({v}) = {got}");
            let exact = exact_permanence(&dense, &assignment, v).to_f64().unwrap();
            prop_assert!((got - exact).abs() <= 1e-12, "perm({v}) = {got}, exact {exact}");
        }
        let mean = graph_permanence(&g, &cs).unwrap();
        prop_assert!((-1.0..=1.0).contains(&mean));
    }

    #[test]
    fn toggles_only_move_the_affected_set(
        n in 3usize..20,
        p in 0.1f64..0.8,
        seed in any::<u64>(),
        a in any::<prop::sample::Index>(),
        b in any::<prop::sample::Index>(),
    ) {
        let (g, cs) = instance(n, p, 3, seed);
        let (u, v) = (a.index(n), b.index(n));
        prop_assume!(u != v);
        let e = toggle_of(&g, u, v);
        let after = g.with_update(&e).unwrap();
        let affected = affected_set(&g, u, v);
        for w in g.nodes() {
            let before = vertex_permanence(&g, &cs, w).unwrap().permanence;
            let now = vertex_permanence(&after, &cs, w).unwrap().permanence;
            if !affected.contains(&w) {
                prop_assert_eq!(before, now, "vertex {} moved", w);
            }
        }
    }

    #[test]
    fn intra_additions_never_lower_internal_degree(
        n in 3usize..20,
        p in 0.1f64..0.6,
        seed in any::<u64>(),
    ) {
        let (g, cs) = instance(n, p, 2, seed);
        for (a, b) in cs.communities().iter().flat_map(|m| {
            m.iter().flat_map(move |&a| m.iter().map(move |&b| (a, b)))
        }) {
            if a >= b || g.adjacent(a, b) {
                continue;
            }
            let after = g.with_update(&EdgeUpdate::add(a, b)).unwrap();
            for w in g.nodes() {
                let before = vertex_permanence(&g, &cs, w).unwrap().internal;
                let now = vertex_permanence(&after, &cs, w).unwrap().internal;
                prop_assert!(now >= before);
            }
        }
    }
}

#[test]
fn incremental_cache_tracks_full_recompute() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut toggles = 0;
    let mut round = 0u64;
    while toggles < 1000 {
        let n = rng.gen_range(4..30);
        let (mut g, cs) = instance(n, rng.gen_range(0.1..0.6), rng.gen_range(1..5), round);
        let mut cache = PermanenceCache::build(&g, &cs).unwrap();
        for _ in 0..50 {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u == v {
                continue;
            }
            let e = toggle_of(&g, u, v);
            let predicted = cache.graph_permanence_after(&g, &cs, &e).unwrap();
            cache.apply(&mut g, &cs, &e).unwrap();
            let full = PermanenceCache::build(&g, &cs).unwrap();
            assert!((predicted - full.graph_permanence()).abs() <= 1e-12);
            assert!((cache.graph_permanence() - graph_permanence(&g, &cs).unwrap()).abs() <= 1e-12);
            for (x, y) in cache.parts().iter().zip(full.parts()) {
                assert!((x.permanence - y.permanence).abs() <= 1e-12);
            }
            toggles += 1;
        }
        round += 1;
    }
}

#[test]
fn stale_cache_is_refused_after_external_edit() {
    let (mut g, cs) = instance(10, 0.4, 2, 9);
    let cache = PermanenceCache::build(&g, &cs).unwrap();
    let e = toggle_of(&g, 0, 1);
    g.apply(&e).unwrap();
    assert!(!cache.is_valid_for(&g, &cs));
    assert!(cache.graph_permanence_after(&g, &cs, &toggle_of(&g, 2, 3)).is_err());
}
