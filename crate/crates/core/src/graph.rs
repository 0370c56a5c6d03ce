//! Connected multigraphs with labeled legs and optional vertex genera.
//!
//! A graph stores its vertices implicitly as `0..num_vertices`, its edges as
//! unordered vertex pairs (a loop is `(v, v)`), and its legs as the vertex
//! carrying each leg, so `legs()[i]` is the location of leg `i + 1`.
//!
//! Half-edges are numbered the same way everywhere in the crate: edge `e`
//! owns half-edges `2e` (at `edges()[e].0`) and `2e + 1` (at `edges()[e].1`),
//! and leg `i + 1` is half-edge `2d + i` where `d` is the edge count.

use crate::error::{Error, Result};

/// One half-edge incident to a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HalfEdge {
    /// Side 0 or 1 of an edge.
    Edge { edge: usize, side: u8 },
    /// A leg, by 0-based index (leg label minus one).
    Leg(usize),
}

impl HalfEdge {
    /// Global half-edge id in a graph with `d` edges.
    pub fn id(self, d: usize) -> usize {
        match self {
            HalfEdge::Edge { edge, side } => 2 * edge + side as usize,
            HalfEdge::Leg(i) => 2 * d + i,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph {
    num_vertices: usize,
    genera: Option<Vec<u32>>,
    edges: Vec<(usize, usize)>,
    legs: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilityClass {
    Stable,
    Semistable,
    General,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub class: StabilityClass,
    /// Vertices with `2g_v - 2 + n_v <= 0`, paired with that value.
    pub unstable: Vec<(usize, i64)>,
}

impl Graph {
    pub fn new(
        num_vertices: usize,
        genera: Option<Vec<u32>>,
        edges: Vec<(usize, usize)>,
        legs: Vec<usize>,
    ) -> Result<Self> {
        if num_vertices == 0 {
            return Err(Error::Empty);
        }
        if let Some(g) = &genera {
            if g.len() != num_vertices {
                return Err(Error::Parse(format!(
                    "{} genus labels for {} vertices",
                    g.len(),
                    num_vertices
                )));
            }
        }
        for &v in edges.iter().flat_map(|(a, b)| [a, b]) {
            if v >= num_vertices {
                return Err(Error::VertexOutOfRange { index: v, vertices: num_vertices });
            }
        }
        for (i, &v) in legs.iter().enumerate() {
            if v >= num_vertices {
                return Err(Error::BadLegLabels(format!(
                    "leg {} sits on vertex {} but there are {} vertices",
                    i + 1,
                    v,
                    num_vertices
                )));
            }
        }
        let edges = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        let graph = Graph { num_vertices, genera, edges, legs };
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(graph)
    }

    pub fn labeled(genera: Vec<u32>, edges: Vec<(usize, usize)>, legs: Vec<usize>) -> Result<Self> {
        Graph::new(genera.len(), Some(genera), edges, legs)
    }

    pub fn genus_free(
        num_vertices: usize,
        edges: Vec<(usize, usize)>,
        legs: Vec<usize>,
    ) -> Result<Self> {
        Graph::new(num_vertices, None, edges, legs)
    }

    /// The edgeless graph: one vertex carrying all `n` legs.
    pub fn unit(genus: Option<u32>, n: usize) -> Self {
        Graph { num_vertices: 1, genera: genus.map(|g| vec![g]), edges: Vec::new(), legs: vec![0; n] }
    }

    // Constructor for callers that already guarantee connectivity.
    pub(crate) fn from_parts_unchecked(
        num_vertices: usize,
        genera: Option<Vec<u32>>,
        edges: Vec<(usize, usize)>,
        legs: Vec<usize>,
    ) -> Self {
        debug_assert!(num_vertices > 0);
        let edges = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        Graph { num_vertices, genera, edges, legs }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    pub fn genera(&self) -> Option<&[u32]> {
        self.genera.as_deref()
    }

    pub fn genus_of(&self, v: usize) -> Option<u32> {
        self.genera.as_ref().map(|g| g[v])
    }

    pub fn is_labeled(&self) -> bool {
        self.genera.is_some()
    }

    /// Number of legs.
    pub fn n(&self) -> usize {
        self.legs.len()
    }

    /// Number of edges.
    pub fn d(&self) -> usize {
        self.edges.len()
    }

    /// Cycle number `|E| - |V| + 1`.
    pub fn h1(&self) -> u32 {
        (self.edges.len() + 1 - self.num_vertices) as u32
    }

    /// `h1 + sum of vertex genera`, for genus-labeled graphs.
    pub fn total_genus(&self) -> Option<u32> {
        self.genera.as_ref().map(|g| self.h1() + g.iter().sum::<u32>())
    }

    pub fn valence(&self, v: usize) -> usize {
        let from_edges: usize =
            self.edges.iter().map(|&(a, b)| (a == v) as usize + (b == v) as usize).sum();
        from_edges + self.legs.iter().filter(|&&l| l == v).count()
    }

    /// Half-edges at `v`, edge halves first (by edge index and side), then legs.
    pub fn half_edges_at(&self, v: usize) -> Vec<HalfEdge> {
        let mut out = Vec::new();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if a == v {
                out.push(HalfEdge::Edge { edge: e, side: 0 });
            }
            if b == v {
                out.push(HalfEdge::Edge { edge: e, side: 1 });
            }
        }
        out.extend(self.legs.iter().enumerate().filter(|(_, &l)| l == v).map(|(i, _)| HalfEdge::Leg(i)));
        out
    }

    pub fn vertex_of(&self, h: HalfEdge) -> usize {
        match h {
            HalfEdge::Edge { edge, side: 0 } => self.edges[edge].0,
            HalfEdge::Edge { edge, .. } => self.edges[edge].1,
            HalfEdge::Leg(i) => self.legs[i],
        }
    }

    /// The other half of an edge; `None` for legs.
    pub fn partner(h: HalfEdge) -> Option<HalfEdge> {
        match h {
            HalfEdge::Edge { edge, side } => Some(HalfEdge::Edge { edge, side: 1 - side }),
            HalfEdge::Leg(_) => None,
        }
    }

    fn is_connected(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.num_vertices).collect();
        for &(a, b) in &self.edges {
            union(&mut parent, a, b);
        }
        let root = find(&mut parent, 0);
        (0..self.num_vertices).all(|v| find(&mut parent, v) == root)
    }

    /// Checks the graph invariants, and the genus formula when `expected_genus`
    /// is given and the graph carries genus labels.
    pub fn validate(&self, expected_genus: Option<u32>) -> Result<()> {
        if self.num_vertices == 0 {
            return Err(Error::Empty);
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        if let (Some(expected), Some(actual)) = (expected_genus, self.total_genus()) {
            if expected != actual {
                return Err(Error::GenusMismatch { expected, actual });
            }
        }
        Ok(())
    }

    /// `2g_v - 2 + n_v` at a vertex of a genus-labeled graph.
    pub fn euler_char(&self, v: usize) -> Option<i64> {
        self.genus_of(v).map(|g| 2 * g as i64 - 2 + self.valence(v) as i64)
    }

    pub fn stability(&self) -> Result<StabilityReport> {
        if !self.is_labeled() {
            return Err(Error::NotGenusLabeled);
        }
        let unstable: Vec<(usize, i64)> = (0..self.num_vertices)
            .filter_map(|v| {
                let chi = self.euler_char(v).expect("labeled");
                (chi <= 0).then_some((v, chi))
            })
            .collect();
        let class = if unstable.is_empty() {
            StabilityClass::Stable
        } else if unstable.iter().all(|&(_, chi)| chi == 0) {
            StabilityClass::Semistable
        } else {
            StabilityClass::General
        };
        Ok(StabilityReport { class, unstable })
    }

    pub fn is_stable(&self) -> bool {
        matches!(self.stability(), Ok(StabilityReport { class: StabilityClass::Stable, .. }))
    }

    /// Contracts the given edges (in any order, duplicates ignored).
    pub fn contract_edges(&self, subset: &[usize]) -> Result<Graph> {
        self.contract_with_map(subset).map(|(g, _)| g)
    }

    /// Contracts `subset` and also returns, for every original edge, its index
    /// in the contracted graph (`None` when contracted). Surviving edges keep
    /// their relative order; merged vertices are numbered by their smallest
    /// original vertex.
    pub fn contract_with_map(&self, subset: &[usize]) -> Result<(Graph, Vec<Option<usize>>)> {
        let mut contracted = vec![false; self.edges.len()];
        for &e in subset {
            if e >= self.edges.len() {
                return Err(Error::EdgeNotInGraph(e));
            }
            contracted[e] = true;
        }
        // Genus bookkeeping: each contracted edge either merges two vertices
        // (genera add) or closes a loop in the merged vertex (genus + 1).
        let mut parent: Vec<usize> = (0..self.num_vertices).collect();
        let mut extra = vec![0u32; self.num_vertices];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if !contracted[e] {
                continue;
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                extra[ra] += 1;
            } else {
                let (lo, hi) = (ra.min(rb), ra.max(rb));
                parent[hi] = lo;
                extra[lo] += extra[hi];
            }
        }
        let mut new_index = vec![usize::MAX; self.num_vertices];
        let mut count = 0;
        for v in 0..self.num_vertices {
            let r = find(&mut parent, v);
            if r == v {
                new_index[v] = count;
                count += 1;
            }
        }
        let image = |parent: &mut Vec<usize>, v: usize| new_index[find(parent, v)];
        let genera = self.genera.as_ref().map(|g| {
            let mut out = vec![0u32; count];
            for v in 0..self.num_vertices {
                let r = find(&mut parent, v);
                out[new_index[r]] += g[v];
                if r == v {
                    out[new_index[r]] += extra[v];
                }
            }
            out
        });
        let mut map = vec![None; self.edges.len()];
        let mut edges = Vec::new();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if !contracted[e] {
                map[e] = Some(edges.len());
                edges.push((image(&mut parent, a), image(&mut parent, b)));
            }
        }
        let legs = self.legs.iter().map(|&l| image(&mut parent, l)).collect();
        Ok((Graph::from_parts_unchecked(count, genera, edges, legs), map))
    }

    /// Adds a new last leg at vertex `v`.
    pub fn with_leg_at(&self, v: usize) -> Graph {
        let mut g = self.clone();
        g.legs.push(v);
        g
    }

    /// Removes leg `i` (0-based); later legs shift down by one.
    pub fn without_leg(&self, i: usize) -> Graph {
        let mut g = self.clone();
        g.legs.remove(i);
        g
    }

    pub fn with_genera(&self, genera: Vec<u32>) -> Result<Graph> {
        Graph::new(self.num_vertices, Some(genera), self.edges.clone(), self.legs.clone())
    }

    pub fn forget_genera(&self) -> Graph {
        Graph { genera: None, ..self.clone() }
    }
}

pub(crate) fn find(parent: &mut [usize], v: usize) -> usize {
    let mut r = v;
    while parent[r] != r {
        r = parent[r];
    }
    let mut x = v;
    while parent[x] != r {
        let next = parent[x];
        parent[x] = r;
        x = next;
    }
    r
}

pub(crate) fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_examples() {
        assert!(Graph::labeled(vec![2], vec![], vec![]).unwrap().validate(Some(2)).is_ok());
        let loop_graph = Graph::labeled(vec![0], vec![(0, 0)], vec![]).unwrap();
        assert!(loop_graph.validate(Some(1)).is_ok());
        assert_eq!(
            loop_graph.validate(Some(2)),
            Err(Error::GenusMismatch { expected: 2, actual: 1 })
        );
        assert_eq!(Graph::labeled(vec![0, 0], vec![], vec![0, 1]), Err(Error::Disconnected));
        assert!(matches!(Graph::labeled(vec![0], vec![], vec![3]), Err(Error::BadLegLabels(_))));
    }

    #[test]
    fn h1_examples() {
        assert_eq!(Graph::genus_free(3, vec![(0, 1), (1, 2)], vec![]).unwrap().h1(), 0);
        assert_eq!(Graph::genus_free(1, vec![(0, 0)], vec![]).unwrap().h1(), 1);
        assert_eq!(Graph::genus_free(2, vec![(0, 1), (0, 1)], vec![]).unwrap().h1(), 1);
    }

    #[test]
    fn stability_examples() {
        let tripod = Graph::labeled(vec![0], vec![], vec![0, 0, 0]).unwrap();
        assert_eq!(tripod.stability().unwrap().class, StabilityClass::Stable);
        let semi = Graph::labeled(vec![1, 0], vec![(0, 1)], vec![1]).unwrap();
        let report = semi.stability().unwrap();
        assert_eq!(report.class, StabilityClass::Semistable);
        assert_eq!(report.unstable, vec![(1, 0)]);
        let leaf = Graph::labeled(vec![1, 0], vec![(0, 1)], vec![0]).unwrap();
        assert_eq!(leaf.stability().unwrap().class, StabilityClass::General);
        let free = Graph::genus_free(1, vec![], vec![0]).unwrap();
        assert_eq!(free.stability(), Err(Error::NotGenusLabeled));
    }

    #[test]
    fn loop_counts_twice_in_valence() {
        let g = Graph::labeled(vec![0], vec![(0, 0)], vec![0]).unwrap();
        assert_eq!(g.valence(0), 3);
        assert!(g.is_stable());
    }

    #[test]
    fn contraction_examples() {
        let g = Graph::labeled(vec![1, 0], vec![(0, 1)], vec![1]).unwrap();
        assert_eq!(g.contract_edges(&[]).unwrap(), g);
        let c = g.contract_edges(&[0]).unwrap();
        assert_eq!(c, Graph::labeled(vec![1], vec![], vec![0]).unwrap());
        let l = Graph::labeled(vec![0], vec![(0, 0)], vec![]).unwrap();
        assert_eq!(l.contract_edges(&[0]).unwrap(), Graph::labeled(vec![1], vec![], vec![]).unwrap());
        assert_eq!(g.contract_edges(&[4]), Err(Error::EdgeNotInGraph(4)));
    }

    #[test]
    fn parallel_edge_becomes_loop() {
        // Contracting one of two parallel edges turns the other into a loop;
        // contracting both adds one to the genus.
        let g = Graph::labeled(vec![0, 0], vec![(0, 1), (0, 1)], vec![]).unwrap();
        let one = g.contract_edges(&[0]).unwrap();
        assert_eq!(one, Graph::labeled(vec![0], vec![(0, 0)], vec![]).unwrap());
        let both = g.contract_edges(&[0, 1]).unwrap();
        assert_eq!(both, Graph::labeled(vec![1], vec![], vec![]).unwrap());
    }
}
