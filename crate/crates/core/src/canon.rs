//! Canonical labeling and automorphism counting for multigraphs with legs.
//!
//! The search is plain individualization-refinement: vertices are colored by
//! their own data, the colors are refined by neighbor multisets until stable,
//! and every remaining tie is broken in all possible ways. Every leaf of the
//! search tree is a vertex ordering; the lexicographically least encoding wins,
//! and the number of leaves reaching it is the order of the induced vertex
//! automorphism group. Nothing is pruned, which is affordable for the graph
//! sizes in this crate.
//!
//! Half-edge automorphisms are counted on top of that: parallel edges with
//! identical decorations can be permuted freely, and a loop whose two halves
//! carry the same decoration can be flipped.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::graph::Graph;

/// A multigraph with arbitrary vertex colors and per-half-edge decorations.
#[derive(Clone, Debug)]
pub(crate) struct Colored {
    pub vertex_colors: Vec<Vec<u32>>,
    /// `(u, decoration at u, v, decoration at v)`.
    pub edges: Vec<(usize, u32, usize, u32)>,
    /// `(vertex, decoration)` per leg, in leg order.
    pub legs: Vec<(usize, u32)>,
}

#[derive(Clone, Debug)]
pub(crate) struct Labeling {
    /// New position of every original vertex.
    pub position: Vec<usize>,
    pub code: Vec<u32>,
    pub aut_order: u64,
}

impl Colored {
    pub fn from_graph(g: &Graph) -> Self {
        let vertex_colors = (0..g.num_vertices())
            .map(|v| vec![g.genus_of(v).map_or(0, |x| x + 1)])
            .collect();
        Colored {
            vertex_colors,
            edges: g.edges().iter().map(|&(a, b)| (a, 0, b, 0)).collect(),
            legs: g.legs().iter().map(|&v| (v, 0)).collect(),
        }
    }

    fn num_vertices(&self) -> usize {
        self.vertex_colors.len()
    }

    /// Edge tuples after relabeling, oriented so the smaller position comes
    /// first (loops: smaller decoration first), sorted.
    pub fn relabeled_edges(&self, position: &[usize]) -> Vec<(usize, u32, usize, u32)> {
        let mut edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, du, v, dv)| {
                let (pu, pv) = (position[u], position[v]);
                if pu < pv || (pu == pv && du <= dv) {
                    (pu, du, pv, dv)
                } else {
                    (pv, dv, pu, du)
                }
            })
            .collect();
        edges.sort_unstable();
        edges
    }

    fn encode(&self, position: &[usize]) -> Vec<u32> {
        let nv = self.num_vertices();
        let mut inverse = vec![0; nv];
        for (v, &p) in position.iter().enumerate() {
            inverse[p] = v;
        }
        let mut code = vec![nv as u32];
        for &v in &inverse {
            let c = &self.vertex_colors[v];
            code.push(c.len() as u32);
            code.extend_from_slice(c);
        }
        code.push(self.legs.len() as u32);
        for &(v, dec) in &self.legs {
            code.push(position[v] as u32);
            code.push(dec);
        }
        let edges = self.relabeled_edges(position);
        code.push(edges.len() as u32);
        for (pu, du, pv, dv) in edges {
            code.extend_from_slice(&[pu as u32, du, pv as u32, dv]);
        }
        code
    }

    fn initial_colors(&self) -> Vec<u32> {
        let nv = self.num_vertices();
        let mut sigs: Vec<Vec<u32>> = self.vertex_colors.iter().map(|c| {
            let mut s = vec![c.len() as u32];
            s.extend_from_slice(c);
            s
        }).collect();
        let mut legs_at: Vec<Vec<u32>> = vec![Vec::new(); nv];
        for (i, &(v, dec)) in self.legs.iter().enumerate() {
            legs_at[v].extend_from_slice(&[i as u32, dec]);
        }
        let mut loops_at: Vec<Vec<(u32, u32)>> = vec![Vec::new(); nv];
        for &(u, du, v, dv) in &self.edges {
            if u == v {
                loops_at[u].push((du.min(dv), du.max(dv)));
            }
        }
        for v in 0..nv {
            sigs[v].push(legs_at[v].len() as u32);
            sigs[v].extend_from_slice(&legs_at[v]);
            loops_at[v].sort_unstable();
            sigs[v].push(loops_at[v].len() as u32);
            for &(a, b) in &loops_at[v] {
                sigs[v].extend_from_slice(&[a, b]);
            }
        }
        rank(&sigs)
    }

    fn adjacency(&self) -> Vec<Vec<(usize, u32, u32)>> {
        let mut adj = vec![Vec::new(); self.num_vertices()];
        for &(u, du, v, dv) in &self.edges {
            if u != v {
                adj[u].push((v, du, dv));
                adj[v].push((u, dv, du));
            }
        }
        adj
    }
}

fn rank(sigs: &[Vec<u32>]) -> Vec<u32> {
    let mut distinct: Vec<&Vec<u32>> = sigs.iter().collect();
    distinct.sort_unstable();
    distinct.dedup();
    sigs.iter().map(|s| distinct.binary_search(&s).expect("present") as u32).collect()
}

fn num_colors(colors: &[u32]) -> usize {
    colors.iter().copied().max().map_or(0, |m| m as usize + 1)
}

fn refine(colors: &mut Vec<u32>, adj: &[Vec<(usize, u32, u32)>]) {
    loop {
        let before = num_colors(colors);
        let sigs: Vec<Vec<u32>> = (0..colors.len())
            .map(|v| {
                let mut nbrs: Vec<(u32, u32, u32)> =
                    adj[v].iter().map(|&(u, dv, du)| (colors[u], dv, du)).collect();
                nbrs.sort_unstable();
                let mut s = Vec::with_capacity(1 + 3 * nbrs.len());
                s.push(colors[v]);
                for (c, a, b) in nbrs {
                    s.extend_from_slice(&[c, a, b]);
                }
                s
            })
            .collect();
        *colors = rank(&sigs);
        if num_colors(colors) == before {
            return;
        }
    }
}

struct Search<'a> {
    graph: &'a Colored,
    adj: Vec<Vec<(usize, u32, u32)>>,
    best: Option<(Vec<u32>, Vec<usize>)>,
    leaves_at_best: u64,
}

impl Search<'_> {
    fn explore(&mut self, colors: Vec<u32>) {
        let nv = colors.len();
        if num_colors(&colors) == nv {
            let position: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
            let code = self.graph.encode(&position);
            match self.best.as_ref().map(|(b, _)| code.cmp(b)) {
                None | Some(Ordering::Less) => {
                    self.best = Some((code, position));
                    self.leaves_at_best = 1;
                }
                Some(Ordering::Equal) => self.leaves_at_best += 1,
                Some(Ordering::Greater) => {}
            }
            return;
        }
        let mut sizes = vec![0usize; nv];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let target = sizes.iter().position(|&s| s > 1).expect("non-discrete") as u32;
        for v in (0..nv).filter(|&v| colors[v] == target) {
            let mut next: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(u, &c)| match c.cmp(&target) {
                    Ordering::Less => 2 * c,
                    Ordering::Equal if u == v => 2 * c,
                    _ => 2 * c + 1,
                })
                .collect();
            next = rank(&next.iter().map(|&c| vec![c]).collect::<Vec<_>>());
            refine(&mut next, &self.adj);
            self.explore(next);
        }
    }
}

pub(crate) fn label(graph: &Colored) -> Labeling {
    let mut colors = graph.initial_colors();
    let mut search = Search { graph, adj: graph.adjacency(), best: None, leaves_at_best: 0 };
    refine(&mut colors, &search.adj);
    search.explore(colors);
    let (code, position) = search.best.expect("at least one leaf");
    let aut_order = search.leaves_at_best * lift_factor(&graph.relabeled_edges(&position));
    Labeling { position, code, aut_order }
}

/// Half-edge automorphisms lying over the identity vertex map.
fn lift_factor(sorted_edges: &[(usize, u32, usize, u32)]) -> u64 {
    let mut factor = 1u64;
    let mut i = 0;
    while i < sorted_edges.len() {
        let mut j = i;
        while j < sorted_edges.len() && sorted_edges[j] == sorted_edges[i] {
            j += 1;
        }
        factor *= factorial((j - i) as u64);
        let (u, du, v, dv) = sorted_edges[i];
        if u == v && du == dv {
            factor *= 1 << (j - i);
        }
        i = j;
    }
    factor
}

fn factorial(k: u64) -> u64 {
    (1..=k).product()
}

/// The canonical representative of a graph's isomorphism class.
///
/// Isomorphisms fix leg labels and genus labels and may permute vertices,
/// edges, and the two halves of an edge. Equality and ordering look only at
/// the encoding.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    code: Vec<u32>,
    graph: Graph,
    aut_order: u64,
}

impl CanonicalForm {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    /// `|Aut|` counted on half-edges.
    pub fn aut_order(&self) -> u64 {
        self.aut_order
    }

    pub fn code(&self) -> &[u32] {
        &self.code
    }

    /// Big-endian byte encoding of [`CanonicalForm::code`].
    pub fn encoding(&self) -> Vec<u8> {
        self.code.iter().flat_map(|x| x.to_be_bytes()).collect()
    }
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code
    }
}

impl Eq for CanonicalForm {}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.code.cmp(&other.code)
    }
}

impl std::hash::Hash for CanonicalForm {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let colored = Colored::from_graph(g);
    let labeling = label(&colored);
    let nv = g.num_vertices();
    let mut inverse = vec![0; nv];
    for (v, &p) in labeling.position.iter().enumerate() {
        inverse[p] = v;
    }
    let genera = g.genera().map(|gs| inverse.iter().map(|&v| gs[v]).collect());
    let edges = colored
        .relabeled_edges(&labeling.position)
        .into_iter()
        .map(|(u, _, v, _)| (u, v))
        .collect();
    let legs = g.legs().iter().map(|&v| labeling.position[v]).collect();
    CanonicalForm {
        code: labeling.code,
        graph: Graph::from_parts_unchecked(nv, genera, edges, legs),
        aut_order: labeling.aut_order,
    }
}

/// Number of isomorphisms `a -> b`: zero, or `|Aut(a)|`.
///
/// Computed by a direct backtracking search over vertex bijections, without
/// going through [`canonical_form`].
pub fn count_isomorphisms(a: &Graph, b: &Graph) -> u64 {
    if a.num_vertices() != b.num_vertices()
        || a.d() != b.d()
        || a.n() != b.n()
        || a.is_labeled() != b.is_labeled()
    {
        return 0;
    }
    let ma = multiplicities(a);
    let mb = multiplicities(b);
    let legs_a = legs_by_vertex(a);
    let legs_b = legs_by_vertex(b);
    let nv = a.num_vertices();
    let compatible = |x: usize, y: usize| {
        a.genus_of(x) == b.genus_of(y)
            && legs_a[x] == legs_b[y]
            && ma.get(&(x, x)) == mb.get(&(y, y))
            && a.valence(x) == b.valence(y)
    };
    let mut assignment = vec![usize::MAX; nv];
    let mut used = vec![false; nv];
    let mut count = 0u64;
    fn recurse(
        x: usize,
        nv: usize,
        assignment: &mut Vec<usize>,
        used: &mut Vec<bool>,
        count: &mut u64,
        compatible: &dyn Fn(usize, usize) -> bool,
        ma: &BTreeMap<(usize, usize), usize>,
        mb: &BTreeMap<(usize, usize), usize>,
    ) {
        if x == nv {
            *count += 1;
            return;
        }
        for y in 0..nv {
            if used[y] || !compatible(x, y) {
                continue;
            }
            let consistent = (0..x).all(|p| {
                let (q, key_a) = (assignment[p], (p.min(x), p.max(x)));
                let key_b = (q.min(y), q.max(y));
                ma.get(&key_a) == mb.get(&key_b)
            });
            if !consistent {
                continue;
            }
            assignment[x] = y;
            used[y] = true;
            recurse(x + 1, nv, assignment, used, count, compatible, ma, mb);
            used[y] = false;
        }
    }
    recurse(0, nv, &mut assignment, &mut used, &mut count, &compatible, &ma, &mb);
    if count == 0 {
        return 0;
    }
    let lifts: u64 = ma
        .iter()
        .map(|(&(u, v), &m)| factorial(m as u64) * if u == v { 1 << m } else { 1 })
        .product();
    count * lifts
}

fn multiplicities(g: &Graph) -> BTreeMap<(usize, usize), usize> {
    let mut m = BTreeMap::new();
    for &(u, v) in g.edges() {
        *m.entry((u.min(v), u.max(v))).or_insert(0) += 1;
    }
    m
}

fn legs_by_vertex(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); g.num_vertices()];
    for (i, &v) in g.legs().iter().enumerate() {
        out[v].push(i);
    }
    out
}
