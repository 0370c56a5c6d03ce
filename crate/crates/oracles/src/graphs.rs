//! Graphs as plain incidence data, with brute-force isomorphism testing.

use std::collections::{BTreeMap, BTreeSet};

use strata_core::Graph;

use crate::permutations;

/// `(genera, sorted edges, leg vertices)` after relabeling the vertices.
pub type Key = (Option<Vec<u32>>, Vec<(usize, usize)>, Vec<usize>);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Plain {
    pub nv: usize,
    pub genera: Option<Vec<u32>>,
    pub edges: Vec<(usize, usize)>,
    pub legs: Vec<usize>,
}

impl Plain {
    pub fn of(g: &Graph) -> Plain {
        Plain {
            nv: g.num_vertices(),
            genera: g.genera().map(<[u32]>::to_vec),
            edges: g.edges().to_vec(),
            legs: g.legs().to_vec(),
        }
    }

    pub fn to_graph(&self) -> Graph {
        Graph::new(self.nv, self.genera.clone(), self.edges.clone(), self.legs.clone())
            .expect("oracle graphs are connected")
    }

    fn relabel(&self, p: &[usize]) -> Key {
        let genera = self.genera.as_ref().map(|gs| {
            let mut out = vec![0; gs.len()];
            for (v, &g) in gs.iter().enumerate() {
                out[p[v]] = g;
            }
            out
        });
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
            .collect();
        edges.sort_unstable();
        (genera, edges, self.legs.iter().map(|&v| p[v]).collect())
    }

    /// Smallest relabeling over all `nv!` vertex permutations.
    pub fn key(&self) -> Key {
        permutations(self.nv).iter().map(|p| self.relabel(p)).min().expect("nonempty")
    }

    pub fn h1(&self) -> usize {
        self.edges.len() + 1 - self.nv
    }

    pub fn is_stable(&self) -> bool {
        let Some(gs) = &self.genera else { return false };
        (0..self.nv).all(|v| {
            let n_v = self.legs.iter().filter(|&&x| x == v).count()
                + self.edges.iter().map(|&(a, b)| (a == v) as usize + (b == v) as usize).sum::<usize>();
            2 * gs[v] as i64 - 2 + n_v as i64 > 0
        })
    }
}

/// Number of isomorphisms `a → b` fixing leg labels, counted over every
/// vertex bijection, edge bijection and choice of edge orientations.
pub fn iso_count(a: &Plain, b: &Plain) -> u64 {
    if a.nv != b.nv || a.edges.len() != b.edges.len() || a.legs.len() != b.legs.len() {
        return 0;
    }
    let d = a.edges.len();
    let edge_perms = permutations(d);
    let mut count = 0;
    for s in permutations(a.nv) {
        if a.legs.iter().zip(&b.legs).any(|(&x, &y)| s[x] != y) {
            continue;
        }
        if let (Some(ga), Some(gb)) = (&a.genera, &b.genera) {
            if (0..a.nv).any(|v| ga[v] != gb[s[v]]) {
                continue;
            }
        } else if a.genera.is_some() != b.genera.is_some() {
            return 0;
        }
        for p in &edge_perms {
            for flips in 0u32..1 << d {
                let ok = (0..d).all(|e| {
                    let (x, y) = a.edges[e];
                    let (x, y) = if flips >> e & 1 == 1 { (y, x) } else { (x, y) };
                    b.edges[p[e]] == (s[x], s[y])
                });
                count += ok as u64;
            }
        }
    }
    count
}

pub fn aut(a: &Plain) -> u64 {
    iso_count(a, a)
}

fn connected(nv: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = BTreeSet::from([0]);
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
    }
    seen.len() == nv
}

fn genus_vectors(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in genus_vectors(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// One representative per isomorphism class of connected graphs with `n`
/// legs and `d` edges. With `genus = Some(g)` every vertex genus vector
/// summing to `g - h1` is used; otherwise graphs are genus-free with
/// `h1 <= h1_max`.
pub fn enumerate(n: usize, d: usize, genus: Option<u32>, h1_max: Option<usize>) -> BTreeMap<Key, Plain> {
    let mut out = BTreeMap::new();
    for nv in 1..=d + 1 {
        let h1 = d + 1 - nv;
        let cap = genus.map(|g| g as usize).or(h1_max);
        if cap.is_some_and(|c| h1 > c) {
            continue;
        }
        let pairs: Vec<(usize, usize)> = (0..nv).flat_map(|i| (i..nv).map(move |j| (i, j))).collect();
        // every d-tuple of pairs, kept when nondecreasing
        let mut idx = vec![0usize; d];
        loop {
            if idx.windows(2).all(|w| w[0] <= w[1]) {
                let edges: Vec<(usize, usize)> = idx.iter().map(|&i| pairs[i]).collect();
                if connected(nv, &edges) {
                    for code in 0..nv.pow(n as u32) {
                        let legs: Vec<usize> = (0..n).map(|i| code / nv.pow(i as u32) % nv).collect();
                        let genera_list = match genus {
                            Some(g) => genus_vectors(g - h1 as u32, nv).into_iter().map(Some).collect(),
                            None => vec![None],
                        };
                        for genera in genera_list {
                            let p = Plain { nv, genera, edges: edges.clone(), legs: legs.clone() };
                            out.entry(p.key()).or_insert(p);
                        }
                    }
                }
            }
            let mut i = 0;
            loop {
                if i == d {
                    break;
                }
                idx[i] += 1;
                if idx[i] < pairs.len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    out
}

impl Plain {
    /// Contracts the listed edges: merged genera add, and every contracted
    /// edge that closes a cycle adds one to the genus.
    pub fn contract(&self, subset: &[usize]) -> Plain {
        let mut comp: Vec<usize> = (0..self.nv).collect();
        let mut extra = vec![0u32; self.nv];
        for &e in subset {
            let (a, b) = self.edges[e];
            let (ca, cb) = (comp[a], comp[b]);
            if ca == cb {
                extra[ca] += 1;
            } else {
                let (keep, gone) = (ca.min(cb), ca.max(cb));
                for c in comp.iter_mut() {
                    if *c == gone {
                        *c = keep;
                    }
                }
                extra[keep] += extra[gone];
                extra[gone] = 0;
            }
        }
        let reps: Vec<usize> = (0..self.nv).filter(|&v| comp[v] == v).collect();
        let index = |v: usize| reps.iter().position(|&r| r == comp[v]).expect("rep");
        let genera = self.genera.as_ref().map(|gs| {
            let mut out: Vec<u32> = reps.iter().map(|&r| extra[r]).collect();
            for v in 0..self.nv {
                out[index(v)] += gs[v];
            }
            out
        });
        let edges = (0..self.edges.len())
            .filter(|e| !subset.contains(e))
            .map(|e| {
                let (a, b) = self.edges[e];
                let (x, y) = (index(a), index(b));
                (x.min(y), x.max(y))
            })
            .collect();
        Plain { nv: reps.len(), genera, edges, legs: self.legs.iter().map(|&v| index(v)).collect() }
    }
}
