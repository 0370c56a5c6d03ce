//! Exhaustive enumeration of graph isomorphism classes.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{find, union, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Labeled,
    GenusFree,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Labeled => "labeled",
            Mode::GenusFree => "genus-free",
        }
    }
}

type Key = (usize, usize, Option<u32>, Mode, Option<u32>);

fn memo() -> &'static Mutex<HashMap<Key, Arc<Vec<CanonicalForm>>>> {
    static MEMO: OnceLock<Mutex<HashMap<Key, Arc<Vec<CanonicalForm>>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// One representative per isomorphism class of connected graphs with `n`
/// labeled legs and exactly `d` edges, sorted by canonical encoding.
///
/// In labeled mode `genus` is required and every genus assignment with
/// `sum g_v = genus - h1` is produced; `h1_max` defaults to `genus`. In
/// genus-free mode `genus` is ignored and `h1_max` defaults to unbounded.
pub fn enumerate_graphs(
    n: usize,
    d: usize,
    genus: Option<u32>,
    mode: Mode,
    h1_max: Option<u32>,
) -> Result<Arc<Vec<CanonicalForm>>> {
    let (genus, h1_max) = match mode {
        Mode::Labeled => {
            let g = genus.ok_or_else(|| {
                Error::InvalidBudget("genus-labeled enumeration needs a genus".into())
            })?;
            (Some(g), Some(h1_max.map_or(g, |h| h.min(g))))
        }
        Mode::GenusFree => (None, h1_max),
    };
    let key = (n, d, genus, mode, h1_max);
    if let Some(hit) = memo().lock().expect("memo poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let result = Arc::new(enumerate_uncached(n, d, genus, h1_max));
    memo().lock().expect("memo poisoned").insert(key, result.clone());
    Ok(result)
}

fn enumerate_uncached(n: usize, d: usize, genus: Option<u32>, h1_max: Option<u32>) -> Vec<CanonicalForm> {
    let mut out: BTreeMap<Vec<u32>, CanonicalForm> = BTreeMap::new();
    for nv in 1..=d + 1 {
        let h1 = (d + 1 - nv) as u32;
        if h1_max.is_some_and(|m| h1 > m) {
            continue;
        }
        for skeleton in skeletons(nv, d) {
            for with_legs in place_legs(&skeleton, n) {
                match genus {
                    None => {
                        let cf = canonical_form(&with_legs);
                        out.entry(cf.code().to_vec()).or_insert(cf);
                    }
                    Some(g) => {
                        for genera in compositions(g - h1, nv) {
                            let labeled = Graph::from_parts_unchecked(
                                nv,
                                Some(genera),
                                with_legs.edges().to_vec(),
                                with_legs.legs().to_vec(),
                            );
                            let cf = canonical_form(&labeled);
                            out.entry(cf.code().to_vec()).or_insert(cf);
                        }
                    }
                }
            }
        }
    }
    out.into_values().collect()
}

/// Legless connected genus-free multigraphs on `nv` vertices with `d` edges,
/// one per isomorphism class.
fn skeletons(nv: usize, d: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> =
        (0..nv).flat_map(|i| (i..nv).map(move |j| (i, j))).collect();
    let mut reps: BTreeMap<Vec<u32>, Graph> = BTreeMap::new();
    let mut chosen = Vec::with_capacity(d);
    multisets(&pairs, d, 0, &mut chosen, &mut |edges| {
        if connected(nv, edges) {
            let g = Graph::from_parts_unchecked(nv, None, edges.to_vec(), Vec::new());
            let cf = canonical_form(&g);
            reps.entry(cf.code().to_vec()).or_insert_with(|| cf.into_graph());
        }
    });
    reps.into_values().collect()
}

fn multisets(
    pairs: &[(usize, usize)],
    remaining: usize,
    start: usize,
    chosen: &mut Vec<(usize, usize)>,
    visit: &mut dyn FnMut(&[(usize, usize)]),
) {
    if remaining == 0 {
        visit(chosen);
        return;
    }
    for i in start..pairs.len() {
        chosen.push(pairs[i]);
        multisets(pairs, remaining - 1, i, chosen, visit);
        chosen.pop();
    }
}

fn connected(nv: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..nv).collect();
    for &(a, b) in edges {
        union(&mut parent, a, b);
    }
    (0..nv).all(|v| find(&mut parent, v) == 0)
}

/// All leg placements on a skeleton, deduplicated up to isomorphism.
fn place_legs(skeleton: &Graph, n: usize) -> Vec<Graph> {
    let nv = skeleton.num_vertices();
    let mut reps: BTreeMap<Vec<u32>, Graph> = BTreeMap::new();
    let mut legs = vec![0usize; n];
    loop {
        let g = Graph::from_parts_unchecked(nv, None, skeleton.edges().to_vec(), legs.clone());
        let cf = canonical_form(&g);
        reps.entry(cf.code().to_vec()).or_insert_with(|| cf.into_graph());
        // odometer over nv^n placements
        let mut i = 0;
        while i < n {
            legs[i] += 1;
            if legs[i] < nv {
                break;
            }
            legs[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    reps.into_values().collect()
}

/// Ordered ways to write `total` as a sum of `parts` nonnegative integers.
pub(crate) fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}
