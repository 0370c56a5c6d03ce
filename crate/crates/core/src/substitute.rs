//! Candidate generation for product laws.
//!
//! Every graph `G` with `G/E1 ≅ B` for some edge set `E1` arises by replacing
//! each vertex `v` of `B` with a connected local graph whose legs are the
//! half-edges at `v` and whose contraction has genus `g_v`, then gluing the
//! local graphs back together along the edges and legs of `B`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::canon::{canonical_form, count_isomorphisms};
use crate::enumerate::{enumerate_graphs, Mode};
use crate::graph::{Graph, HalfEdge};

/// Canonical representatives of every graph obtained from `base` by
/// uncontracting exactly `extra` edges.
pub(crate) fn uncontractions(base: &Graph, extra: usize) -> Vec<Graph> {
    let nv = base.num_vertices();
    let ports: Vec<Vec<HalfEdge>> = (0..nv).map(|v| base.half_edges_at(v)).collect();
    let mode = if base.is_labeled() { Mode::Labeled } else { Mode::GenusFree };
    let mut out: BTreeMap<Vec<u32>, Graph> = BTreeMap::new();
    for split in splits(extra, nv) {
        let locals: Vec<_> = (0..nv)
            .map(|v| {
                enumerate_graphs(ports[v].len(), split[v], base.genus_of(v), mode, None)
                    .expect("budget is always given in labeled mode")
            })
            .collect();
        if locals.iter().any(|l| l.is_empty()) {
            continue;
        }
        let mut choice = vec![0usize; nv];
        loop {
            let glued = glue(base, &ports, &(0..nv).map(|v| locals[v][choice[v]].graph()).collect::<Vec<_>>());
            let cf = canonical_form(&glued);
            out.entry(cf.code().to_vec()).or_insert_with(|| cf.into_graph());
            let mut i = 0;
            while i < nv {
                choice[i] += 1;
                if choice[i] < locals[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == nv {
                break;
            }
        }
    }
    out.into_values().collect()
}

fn glue(base: &Graph, ports: &[Vec<HalfEdge>], locals: &[&Graph]) -> Graph {
    let mut offset = Vec::with_capacity(locals.len());
    let mut total = 0;
    for l in locals {
        offset.push(total);
        total += l.num_vertices();
    }
    let genera = base.is_labeled().then(|| {
        locals.iter().flat_map(|l| l.genera().expect("labeled local").iter().copied()).collect()
    });
    let mut edges = Vec::new();
    for (v, l) in locals.iter().enumerate() {
        edges.extend(l.edges().iter().map(|&(a, b)| (a + offset[v], b + offset[v])));
    }
    let locate = |h: HalfEdge| {
        let v = base.vertex_of(h);
        let port = ports[v].iter().position(|&p| p == h).expect("port exists");
        offset[v] + locals[v].legs()[port]
    };
    for e in 0..base.d() {
        edges.push((
            locate(HalfEdge::Edge { edge: e, side: 0 }),
            locate(HalfEdge::Edge { edge: e, side: 1 }),
        ));
    }
    let legs = (0..base.n()).map(|i| locate(HalfEdge::Leg(i))).collect();
    Graph::from_parts_unchecked(total, genera, edges, legs)
}

/// Ordered ways to distribute `total` edges over `parts` vertices.
fn splits(total: usize, parts: usize) -> Vec<Vec<usize>> {
    crate::enumerate::compositions(total as u32, parts)
        .into_iter()
        .map(|c| c.into_iter().map(|x| x as usize).collect())
        .collect()
}

/// Subsets of `0..d` of size `k`, as sorted index lists.
pub(crate) fn subsets(d: usize, k: usize) -> Vec<Vec<usize>> {
    (0u64..1 << d)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..d).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

/// Edge partitions `E(G) = E1 ⊔ E2` weighted by the number of isomorphism
/// pairs `G/E1 ≅ first`, `G/E2 ≅ second`.
pub(crate) fn partition_count(g: &Graph, first: &Graph, second: &Graph) -> u64 {
    if g.d() != first.d() + second.d() {
        return 0;
    }
    subsets(g.d(), second.d())
        .par_iter()
        .map(|e1| {
            let e2: Vec<usize> = (0..g.d()).filter(|e| !e1.contains(e)).collect();
            let a = count_isomorphisms(&g.contract_edges(e1).expect("valid"), first);
            if a == 0 {
                return 0;
            }
            a * count_isomorphisms(&g.contract_edges(&e2).expect("valid"), second)
        })
        .sum()
}

/// Bare edge partitions with `G/E1 ≅ first` and `G/E2 ≅ second`, tested by
/// canonical-form equality and counted without isomorphism choices.
pub(crate) fn bare_partition_count(g: &Graph, first: &Graph, second: &Graph) -> u64 {
    if g.d() != first.d() + second.d() {
        return 0;
    }
    let (cf1, cf2) = (canonical_form(first), canonical_form(second));
    subsets(g.d(), second.d())
        .iter()
        .filter(|e1| {
            let e2: Vec<usize> = (0..g.d()).filter(|e| !e1.contains(e)).collect();
            canonical_form(&g.contract_edges(e1).expect("valid")) == cf1
                && canonical_form(&g.contract_edges(&e2).expect("valid")) == cf2
        })
        .count() as u64
}
