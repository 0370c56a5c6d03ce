use std::collections::BTreeSet;

use proptest::prelude::*;
use strata_core::{canonical_form, count_isomorphisms, enumerate_graphs, Graph, Mode};
use strata_oracles::graphs::{aut, enumerate, iso_count, Plain};
use strata_oracles::permutations;

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..=4)
        .prop_flat_map(|nv| {
            (
                Just(nv),
                proptest::collection::vec(0usize..nv, nv - 1),
                proptest::collection::vec((0usize..nv, 0usize..nv), 0..=2),
                proptest::collection::vec(0usize..nv, 0..=3),
                proptest::collection::vec(0u32..=2, nv),
            )
        })
        .prop_map(|(nv, parents, extra, legs, genera)| {
            let mut edges: Vec<(usize, usize)> = (1..nv).map(|v| (parents[v - 1] % v, v)).collect();
            edges.extend(extra);
            Graph::labeled(genera, edges, legs).unwrap()
        })
}

/// A random relabeling of vertices and edges, with random edge orientations.
fn arb_relabeled() -> impl Strategy<Value = (Graph, Graph)> {
    arb_graph().prop_flat_map(|g| {
        let nv = g.num_vertices();
        let d = g.d();
        (
            Just(g),
            Just((0..nv).collect::<Vec<usize>>()).prop_shuffle(),
            Just((0..d).collect::<Vec<usize>>()).prop_shuffle(),
        )
            .prop_map(|(g, vp, ep)| {
                let mut edges = vec![(0, 0); g.d()];
                for (e, &(a, b)) in g.edges().iter().enumerate() {
                    edges[ep[e]] = (vp[b], vp[a]);
                }
                let mut genera = vec![0; g.num_vertices()];
                for v in 0..g.num_vertices() {
                    genera[vp[v]] = g.genus_of(v).unwrap();
                }
                let legs = g.legs().iter().map(|&v| vp[v]).collect();
                let h = Graph::labeled(genera, edges, legs).unwrap();
                (g, h)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_form_ignores_relabeling((g, h) in arb_relabeled()) {
        let (cg, ch) = (canonical_form(&g), canonical_form(&h));
        prop_assert_eq!(cg.code(), ch.code());
        prop_assert_eq!(cg.aut_order(), ch.aut_order());
    }

    #[test]
    fn aut_and_iso_match_brute_force((g, h) in arb_relabeled()) {
        let brute = aut(&Plain::of(&g));
        prop_assert_eq!(canonical_form(&g).aut_order(), brute);
        prop_assert_eq!(count_isomorphisms(&g, &h), brute);
        prop_assert_eq!(iso_count(&Plain::of(&g), &Plain::of(&h)), brute);
    }

    #[test]
    fn canonical_codes_separate_classes(g in arb_graph(), h in arb_graph()) {
        let same = Plain::of(&g).key() == Plain::of(&h).key();
        prop_assert_eq!(canonical_form(&g).code() == canonical_form(&h).code(), same);
    }

    #[test]
    fn contraction_order_does_not_matter(g in arb_graph(), mask in 0u32..64, split in 0u32..64) {
        let d = g.d();
        let chosen: Vec<usize> = (0..d).filter(|e| mask >> e & 1 == 1).collect();
        let (first, second): (Vec<usize>, Vec<usize>) = chosen.iter().partition(|&&e| split >> e & 1 == 1);
        let all = g.contract_edges(&chosen).unwrap();
        let (mid, map) = g.contract_with_map(&first).unwrap();
        let rest: Vec<usize> = second.iter().map(|&e| map[e].unwrap()).collect();
        let staged = mid.contract_edges(&rest).unwrap();
        let (ca, cs) = (canonical_form(&all), canonical_form(&staged));
        prop_assert_eq!(ca.code(), cs.code());
        prop_assert_eq!(all.total_genus(), g.total_genus());
        prop_assert_eq!(all.n(), g.n());
    }

    #[test]
    fn contraction_keeps_stability(g in arb_graph(), mask in 0u32..64) {
        prop_assume!(g.is_stable());
        let chosen: Vec<usize> = (0..g.d()).filter(|e| mask >> e & 1 == 1).collect();
        prop_assert!(g.contract_edges(&chosen).unwrap().is_stable());
    }
}

fn key_set(n: usize, d: usize, genus: Option<u32>, mode: Mode, h1_max: Option<u32>) -> BTreeSet<(Vec<u8>, u64)> {
    enumerate_graphs(n, d, genus, mode, h1_max)
        .unwrap()
        .iter()
        .map(|cf| (format!("{:?}", Plain::of(cf.graph()).key()).into_bytes(), cf.aut_order()))
        .collect()
}

fn oracle_set(n: usize, d: usize, genus: Option<u32>, h1_max: Option<usize>) -> BTreeSet<(Vec<u8>, u64)> {
    enumerate(n, d, genus, h1_max)
        .into_iter()
        .map(|(k, p)| (format!("{k:?}").into_bytes(), aut(&p)))
        .collect()
}

#[test]
fn genus_free_enumeration_matches_oracle() {
    for n in 0..=3 {
        for d in 0..=3 {
            if n + d > 5 {
                continue;
            }
            assert_eq!(key_set(n, d, None, Mode::GenusFree, None), oracle_set(n, d, None, None), "n={n} d={d}");
            assert_eq!(key_set(n, d, None, Mode::GenusFree, Some(1)), oracle_set(n, d, None, Some(1)), "n={n} d={d}");
        }
    }
}

#[test]
fn labeled_enumeration_matches_oracle() {
    for g in 0..=2 {
        for n in 0..=3 {
            for d in 0..=3 {
                if n + d > 5 {
                    continue;
                }
                assert_eq!(key_set(n, d, Some(g), Mode::Labeled, None), oracle_set(n, d, Some(g), None), "g={g} n={n} d={d}");
            }
        }
    }
}

/// Orbit counting: summing `nv! d! 2^d / |Aut|` over classes with `nv`
/// vertices counts graphs with labeled vertices and labeled oriented edges.
#[test]
fn burnside_labeled_count() {
    for (g, n, d) in [(1u32, 1usize, 2usize), (2, 0, 2), (1, 2, 2), (2, 1, 3)] {
        let classes = enumerate_graphs(n, d, Some(g), Mode::Labeled, None).unwrap();
        for nv in 1..=d + 1 {
            let h1 = (d + 1 - nv) as u32;
            if h1 > g {
                continue;
            }
            let factor: u64 = ((1..=nv as u64).product::<u64>() * (1..=d as u64).product::<u64>()) << d;
            let from_classes: u64 = classes
                .iter()
                .filter(|cf| cf.graph().num_vertices() == nv)
                .map(|cf| {
                    assert_eq!(factor % cf.aut_order(), 0);
                    factor / cf.aut_order()
                })
                .sum();
            let ordered: Vec<(usize, usize)> = (0..nv).flat_map(|a| (0..nv).map(move |b| (a, b))).collect();
            let mut direct = 0u64;
            let genus_vectors = oracle_genus_vectors(g - h1, nv);
            for code in 0..ordered.len().pow(d as u32) {
                let edges: Vec<(usize, usize)> =
                    (0..d).map(|i| ordered[code / ordered.len().pow(i as u32) % ordered.len()]).collect();
                for legs in 0..nv.pow(n as u32) {
                    let legs: Vec<usize> = (0..n).map(|i| legs / nv.pow(i as u32) % nv).collect();
                    if Graph::genus_free(nv, edges.clone(), legs).is_ok() {
                        direct += genus_vectors;
                    }
                }
            }
            assert_eq!(from_classes, direct, "g={g} n={n} d={d} nv={nv}");
        }
    }
}

fn oracle_genus_vectors(total: u32, parts: usize) -> u64 {
    // number of weak compositions of `total` into `parts` parts
    let (t, p) = (total as u64, parts as u64);
    (1..p).fold(1u64, |acc, i| acc * (t + i) / i)
}

#[test]
fn permutations_helper_is_complete() {
    assert_eq!(permutations(4).len(), 24);
    assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
}
