//! The edge-partition product computed over every graph of the right size.

use std::collections::BTreeMap;

use crate::graphs::{aut, enumerate, iso_count, Key, Plain};
use crate::Rational;

fn subsets(d: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << d)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..d).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

/// `Σ_{E1 ⊔ E2 = E(G), |E2| = d1} #Iso(G/E2, a) · #Iso(G/E1, b)`.
pub fn partitions_with_isos(g: &Plain, a: &Plain, b: &Plain) -> u64 {
    let d = g.edges.len();
    subsets(d, b.edges.len())
        .into_iter()
        .map(|e_b| {
            let e_a: Vec<usize> = (0..d).filter(|e| !e_b.contains(e)).collect();
            iso_count(&g.contract(&e_b), a) * iso_count(&g.contract(&e_a), b)
        })
        .sum()
}

/// Bare partitions: no isomorphism choices, only whether they exist.
pub fn bare_partitions(g: &Plain, a: &Plain, b: &Plain) -> u64 {
    let d = g.edges.len();
    subsets(d, b.edges.len())
        .into_iter()
        .filter(|e_b| {
            let e_a: Vec<usize> = (0..d).filter(|e| !e_b.contains(e)).collect();
            g.contract(e_b).key() == a.key() && g.contract(&e_a).key() == b.key()
        })
        .count() as u64
}

/// `[a]·[b] = Σ_G c/|Aut G| [G]` with `G` running over every graph with
/// `d(a) + d(b)` edges (genus-labeled when `a` is).
pub fn product(a: &Plain, b: &Plain) -> BTreeMap<Key, (Plain, Rational)> {
    let n = a.legs.len();
    let d = a.edges.len() + b.edges.len();
    let genus = a.genera.as_ref().map(|gs| gs.iter().sum::<u32>() + a.h1() as u32);
    let mut out = BTreeMap::new();
    for (key, g) in enumerate(n, d, genus, None) {
        let c = partitions_with_isos(&g, a, b);
        if c > 0 {
            let coeff = Rational::new(c.into(), aut(&g).into());
            out.insert(key, (g, coeff));
        }
    }
    out
}
