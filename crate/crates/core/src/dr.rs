//! The double ramification graph sum
//!
//! ```text
//! DR_g^{d,r}(a) = Σ_G ( r^{-h1(G)} Σ_w Π_{e=(h,h')} w(h) w(h') / 2 ) [G]_g / |Aut(G)|
//! ```
//!
//! over graphs with `n` legs and exactly `d` edges, where `w` runs over the
//! weightings mod `r`: every half-edge gets a residue in `0..r` with
//!
//! * `w(leg i) ≡ a_i`,
//! * `w(h) + w(h') ≡ 0` on every edge,
//! * `Σ_{h at v} w(h) ≡ 0` at every vertex, or `≡ k(2g_v - 2 + n_v)` for the
//!   `k`-twisted sum (which then runs over genus-labeled graphs).
//!
//! Each coefficient is a polynomial in `r` for `r` large; the DR cycle is the
//! constant term at `d = g`, and for `d > g` the constant term gives the
//! relation classes.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{check_stable_pair, AlgebraElement, Context};
use crate::canon::CanonicalForm;
use crate::enumerate::{enumerate_graphs, Mode};
use crate::error::{Error, Result};
use crate::graph::{find, union, Graph};
use crate::poly::Polynomial;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrInput {
    pub g: u32,
    pub a: Vec<i64>,
    pub d: usize,
    pub k: i64,
}

impl DrInput {
    pub fn new(g: u32, a: Vec<i64>, d: usize, k: i64) -> Self {
        DrInput { g, a, d, k }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    fn check(&self) -> Result<()> {
        check_stable_pair(self.g, self.n())?;
        let sum: i64 = self.a.iter().sum();
        let expected = self.k * (2 * self.g as i64 - 2 + self.n() as i64);
        if sum != expected {
            return Err(Error::InconsistentInput(format!(
                "leg weights sum to {sum}, expected {expected}"
            )));
        }
        Ok(())
    }
}

/// One weighting mod `r`, indexed by half-edge id.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weighting {
    pub r: u64,
    pub values: Vec<u64>,
}

/// Precomputed spanning-tree data: non-tree edges carry free residues, tree
/// edges are solved leaf-to-root from the vertex congruences.
struct TreeSolver {
    r: u64,
    d: usize,
    free_edges: Vec<usize>,
    /// Non-root vertices, leaves first, with their parent half-edge id and
    /// the ids of all their other half-edges.
    order: Vec<(usize, usize, Vec<usize>)>,
    target: Vec<u64>,
}

fn residue(x: i64, r: u64) -> u64 {
    x.rem_euclid(r as i64) as u64
}

fn half_id(e: usize, side: usize) -> usize {
    2 * e + side
}

impl TreeSolver {
    fn new(graph: &Graph, a: &[i64], r: u64, vertex_target: &[i64]) -> Result<Self> {
        if a.len() != graph.n() {
            return Err(Error::InconsistentInput(format!(
                "{} leg weights for {} legs",
                a.len(),
                graph.n()
            )));
        }
        let r = r.max(1);
        let nv = graph.num_vertices();
        let d = graph.d();
        let leg_sum: i64 = a.iter().sum();
        let target_sum: i64 = vertex_target.iter().sum();
        if residue(leg_sum - target_sum, r) != 0 {
            return Err(Error::InconsistentLegSum { sum: leg_sum, expected: target_sum, modulus: r });
        }
        // spanning tree by union-find in edge order
        let mut parent_set: Vec<usize> = (0..nv).collect();
        let mut tree = vec![false; d];
        for (e, &(u, v)) in graph.edges().iter().enumerate() {
            if find(&mut parent_set, u) != find(&mut parent_set, v) {
                union(&mut parent_set, u, v);
                tree[e] = true;
            }
        }
        let free_edges: Vec<usize> = (0..d).filter(|&e| !tree[e]).collect();
        // BFS over tree edges from vertex 0
        let mut parent_half: Vec<Option<usize>> = vec![None; nv];
        let mut seen = vec![false; nv];
        let mut bfs = vec![0usize];
        seen[0] = true;
        let mut i = 0;
        while i < bfs.len() {
            let x = bfs[i];
            i += 1;
            for (e, &(u, v)) in graph.edges().iter().enumerate() {
                if !tree[e] || (u != x && v != x) {
                    continue;
                }
                let (y, side_at_y) = if u == x { (v, 1) } else { (u, 0) };
                if !seen[y] {
                    seen[y] = true;
                    parent_half[y] = Some(half_id(e, side_at_y));
                    bfs.push(y);
                }
            }
        }
        let mut halves_at: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (e, &(u, v)) in graph.edges().iter().enumerate() {
            halves_at[u].push(half_id(e, 0));
            halves_at[v].push(half_id(e, 1));
        }
        for (i, &v) in graph.legs().iter().enumerate() {
            halves_at[v].push(2 * d + i);
        }
        let order = bfs[1..]
            .iter()
            .rev()
            .map(|&v| {
                let p = parent_half[v].expect("non-root has a parent");
                let others = halves_at[v].iter().copied().filter(|&h| h != p).collect();
                (v, p, others)
            })
            .collect();
        Ok(TreeSolver {
            r,
            d,
            free_edges,
            order,
            target: vertex_target.iter().map(|&t| residue(t, r)).collect(),
        })
    }

    fn count(&self) -> BigInt {
        BigInt::from(self.r).pow(self.free_edges.len() as u32)
    }

    fn for_each(&self, a: &[i64], mut visit: impl FnMut(&[u64])) {
        let r = self.r;
        let d = self.d;
        let mut w = vec![0u64; 2 * d + a.len()];
        for (i, &x) in a.iter().enumerate() {
            w[2 * d + i] = residue(x, r);
        }
        let mut params = vec![0u64; self.free_edges.len()];
        loop {
            for (&e, &x) in self.free_edges.iter().zip(&params) {
                w[half_id(e, 0)] = x;
                w[half_id(e, 1)] = (r - x) % r;
            }
            for (v, p, others) in &self.order {
                let s: u64 = others.iter().map(|&h| w[h]).sum::<u64>() % r;
                let here = (self.target[*v] + r - s) % r;
                w[*p] = here;
                w[*p ^ 1] = (r - here) % r;
            }
            visit(&w);
            let mut j = 0;
            while j < params.len() {
                params[j] += 1;
                if params[j] < r {
                    break;
                }
                params[j] = 0;
                j += 1;
            }
            if j == params.len() {
                return;
            }
        }
    }
}

fn untwisted_targets(graph: &Graph) -> Vec<i64> {
    vec![0; graph.num_vertices()]
}

fn twisted_targets(graph: &Graph, k: i64) -> Result<Vec<i64>> {
    (0..graph.num_vertices())
        .map(|v| graph.euler_char(v).map(|chi| k * chi).ok_or(Error::NotGenusLabeled))
        .collect()
}

/// All weightings mod `r` of `graph` with leg residues `a`.
pub fn enumerate_weightings(graph: &Graph, a: &[i64], r: u64) -> Result<Vec<Weighting>> {
    let solver = TreeSolver::new(graph, a, r, &untwisted_targets(graph))?;
    let mut out = Vec::new();
    solver.for_each(a, |w| out.push(Weighting { r: solver.r, values: w.to_vec() }));
    Ok(out)
}

/// Number of weightings mod `r`, which is `r^{h1}`.
pub fn weighting_count(graph: &Graph, a: &[i64], r: u64) -> Result<BigInt> {
    Ok(TreeSolver::new(graph, a, r, &untwisted_targets(graph))?.count())
}

/// `k`-twisted weightings of a genus-labeled graph.
pub fn enumerate_twisted_weightings(graph: &Graph, a: &[i64], r: u64, k: i64) -> Result<Vec<Weighting>> {
    let solver = TreeSolver::new(graph, a, r, &twisted_targets(graph, k)?)?;
    let mut out = Vec::new();
    solver.for_each(a, |w| out.push(Weighting { r: solver.r, values: w.to_vec() }));
    Ok(out)
}

fn weighted_sum(graph: &Graph, a: &[i64], r: u64, targets: &[i64]) -> Result<Rational> {
    let solver = TreeSolver::new(graph, a, r, targets)?;
    let d = graph.d();
    let mut total = BigInt::zero();
    solver.for_each(a, |w| {
        let mut prod = BigInt::one();
        for e in 0..d {
            prod *= w[half_id(e, 0)] * w[half_id(e, 1)];
        }
        total += prod;
    });
    Ok(Rational::new(total, BigInt::from(2u8).pow(d as u32)))
}

/// `Σ_w Π_e w(h) w(h') / 2` over the weightings mod `r`.
pub fn edge_term_sum(graph: &Graph, a: &[i64], r: u64) -> Result<Rational> {
    weighted_sum(graph, a, r, &untwisted_targets(graph))
}

/// The bracketed coefficient `r^{-h1} Σ_w Π_e w(h) w(h') / 2` of a graph.
pub fn graph_coefficient(graph: &Graph, a: &[i64], r: u64) -> Result<Rational> {
    let s = edge_term_sum(graph, a, r)?;
    Ok(s / Rational::from_integer(BigInt::from(r).pow(graph.h1())))
}

fn twisted_coefficient(graph: &Graph, a: &[i64], r: u64, k: i64) -> Result<Rational> {
    let s = weighted_sum(graph, a, r, &twisted_targets(graph, k)?)?;
    Ok(s / Rational::from_integer(BigInt::from(r).pow(graph.h1())))
}

fn genus_free_basis(input: &DrInput) -> Result<std::sync::Arc<Vec<CanonicalForm>>> {
    enumerate_graphs(input.n(), input.d, None, Mode::GenusFree, Some(input.g))
}

fn collect(context: Context, terms: Vec<(Graph, Rational)>) -> Result<AlgebraElement> {
    AlgebraElement::from_terms(context, terms)
}

/// `DR_g^{d,r}(a)` as a genus-free element with genus context `g`.
pub fn dr_eval(input: &DrInput, r: u64) -> Result<AlgebraElement> {
    if input.k != 0 {
        return Err(Error::InconsistentInput("dr_eval is the untwisted sum; use twisted_dr_eval".into()));
    }
    input.check()?;
    let basis = genus_free_basis(input)?;
    let terms = basis
        .par_iter()
        .map(|cf| {
            let c = graph_coefficient(cf.graph(), &input.a, r)?;
            Ok((cf.graph().clone(), c / Rational::from_integer(cf.aut_order().into())))
        })
        .collect::<Result<Vec<_>>>()?;
    collect(Context::genus_free(input.n(), Some(input.g)), terms)
}

/// The `k`-twisted sum over genus-labeled graphs at a fixed modulus.
pub fn twisted_dr_eval(input: &DrInput, r: u64) -> Result<AlgebraElement> {
    input.check()?;
    let basis = enumerate_graphs(input.n(), input.d, Some(input.g), Mode::Labeled, None)?;
    let terms = basis
        .par_iter()
        .map(|cf| {
            let c = twisted_coefficient(cf.graph(), &input.a, r, input.k)?;
            Ok((cf.graph().clone(), c / Rational::from_integer(cf.aut_order().into())))
        })
        .collect::<Result<Vec<_>>>()?;
    collect(Context::labeled(input.g, input.n())?, terms)
}

/// A constant-term computation together with the moduli it sampled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrResult {
    pub element: AlgebraElement,
    /// Interpolation moduli followed by the two validation moduli.
    pub r_samples: Vec<u64>,
}

const ESCALATIONS: usize = 4;

/// Smallest sample modulus tried first.
pub fn initial_modulus(input: &DrInput) -> u64 {
    let spread: i64 = input.a.iter().map(|x| x.abs()).sum::<i64>()
        + input.k.abs() * (2 * input.g as i64 + 2 * input.d as i64 + 2 + input.n() as i64) * (input.k != 0) as i64;
    (spread.max(2 * input.d as i64) + 1) as u64
}

/// Sample moduli `r0 ..= r0 + 2d + 1` for fitting plus two for validation.
pub fn sample_moduli(r0: u64, d: usize) -> Vec<u64> {
    (r0..r0 + 2 * d as u64 + 4).collect()
}

/// Fits a polynomial of degree at most `2d` through the first `2d + 2`
/// samples and checks it against the last two.
pub fn constant_term_of(samples: &[(u64, Rational)], d: usize) -> Result<Rational> {
    let fit = 2 * d + 2;
    let points: Vec<(Rational, Rational)> = samples[..fit]
        .iter()
        .map(|(r, y)| (Rational::from_integer((*r).into()), y.clone()))
        .collect();
    let p = Polynomial::interpolate(&points);
    let rs: Vec<u64> = samples.iter().map(|(r, _)| *r).collect();
    if p.degree().is_some_and(|deg| deg > 2 * d) {
        return Err(Error::PolynomialityCheckFailed(rs));
    }
    for (r, y) in &samples[fit..] {
        if &p.eval(&Rational::from_integer((*r).into())) != y {
            return Err(Error::PolynomialityCheckFailed(rs));
        }
    }
    Ok(p.constant_term())
}

fn constant_term_with<F>(
    input: &DrInput,
    context: Context,
    basis: &[CanonicalForm],
    coefficient: F,
) -> Result<DrResult>
where
    F: Fn(&Graph, u64) -> Result<Rational> + Sync,
{
    let mut r0 = initial_modulus(input);
    let mut last_err = None;
    for _ in 0..ESCALATIONS {
        let moduli = sample_moduli(r0, input.d);
        let attempt: Result<Vec<(Graph, Rational)>> = basis
            .par_iter()
            .map(|cf| {
                let samples = moduli
                    .iter()
                    .map(|&r| Ok((r, coefficient(cf.graph(), r)?)))
                    .collect::<Result<Vec<_>>>()?;
                let c = constant_term_of(&samples, input.d)?;
                Ok((cf.graph().clone(), c / Rational::from_integer(cf.aut_order().into())))
            })
            .collect();
        match attempt {
            Ok(terms) => return Ok(DrResult { element: collect(context, terms)?, r_samples: moduli }),
            Err(e @ Error::PolynomialityCheckFailed(_)) => {
                last_err = Some(e);
                r0 *= 2;
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.expect("at least one attempt"))
}

/// Constant term in `r` of `DR_g^{d,r}(a)`.
pub fn dr_constant_term(input: &DrInput) -> Result<DrResult> {
    if input.k != 0 {
        return Err(Error::InconsistentInput("untwisted constant term needs k = 0".into()));
    }
    input.check()?;
    let basis = genus_free_basis(input)?;
    let context = Context::genus_free(input.n(), Some(input.g));
    constant_term_with(input, context, &basis, |g, r| graph_coefficient(g, &input.a, r))
}

/// Constant term in `r` of the `k`-twisted sum.
pub fn twisted_dr_constant_term(input: &DrInput) -> Result<DrResult> {
    input.check()?;
    let basis = enumerate_graphs(input.n(), input.d, Some(input.g), Mode::Labeled, None)?;
    let context = Context::labeled(input.g, input.n())?;
    constant_term_with(input, context, &basis, |g, r| twisted_coefficient(g, &input.a, r, input.k))
}

/// The DR cycle: the constant term at `d = g`.
pub fn dr_cycle(g: u32, a: &[i64]) -> Result<DrResult> {
    dr_constant_term(&DrInput::new(g, a.to_vec(), g as usize, 0))
}

/// The relation class in degree `d > g`.
pub fn dr_relation(g: u32, a: &[i64], d: usize) -> Result<DrResult> {
    if d <= g as usize {
        return Err(Error::InconsistentInput(format!("relation classes need d > g, got d = {d}, g = {g}")));
    }
    dr_constant_term(&DrInput::new(g, a.to_vec(), d, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    fn loop_with_leg() -> Graph {
        Graph::genus_free(1, vec![(0, 0)], vec![0]).unwrap()
    }

    #[test]
    fn loop_edge_sums() {
        let g = loop_with_leg();
        assert_eq!(edge_term_sum(&g, &[0], 3).unwrap(), q(2, 1));
        for r in [3u64, 5, 7, 11] {
            let r = r as i64;
            assert_eq!(graph_coefficient(&g, &[0], r as u64).unwrap(), q(r * r - 1, 12));
        }
    }

    #[test]
    fn separating_edge_sum() {
        let g = Graph::genus_free(2, vec![(0, 1)], vec![0, 1]).unwrap();
        assert_eq!(edge_term_sum(&g, &[1, -1], 5).unwrap(), q(2, 1));
        assert_eq!(weighting_count(&g, &[1, -1], 5).unwrap(), BigInt::one());
    }

    #[test]
    fn no_edges_gives_one() {
        let g = Graph::genus_free(1, vec![], vec![0, 0, 0]).unwrap();
        assert_eq!(edge_term_sum(&g, &[1, 2, -3], 7).unwrap(), q(1, 1));
    }

    #[test]
    fn weighting_count_is_r_to_h1() {
        let banana = Graph::genus_free(2, vec![(0, 1), (0, 1)], vec![0]).unwrap();
        for r in [3u64, 5] {
            assert_eq!(weighting_count(&banana, &[0], r).unwrap(), BigInt::from(r));
            assert_eq!(enumerate_weightings(&banana, &[0], r).unwrap().len() as u64, r);
        }
    }

    #[test]
    fn weightings_satisfy_congruences() {
        let g = Graph::genus_free(2, vec![(0, 0), (0, 1), (0, 1)], vec![0, 1]).unwrap();
        let r = 5;
        for w in enumerate_weightings(&g, &[2, -2], r).unwrap() {
            for e in 0..g.d() {
                assert_eq!((w.values[2 * e] + w.values[2 * e + 1]) % r, 0);
            }
            assert_eq!(w.values[2 * g.d()], 2);
            assert_eq!(w.values[2 * g.d() + 1], 3);
            for v in 0..2 {
                let s: u64 = g.half_edges_at(v).iter().map(|h| w.values[h.id(g.d())]).sum();
                assert_eq!(s % r, 0);
            }
        }
    }

    #[test]
    fn zero_edges_is_unit() {
        let input = DrInput::new(1, vec![3, -1, -2], 0, 0);
        let e = dr_eval(&input, 7).unwrap();
        assert_eq!(e, AlgebraElement::unit(Context::genus_free(3, Some(1))));
    }

    #[test]
    fn genus_one_cycle() {
        let res = dr_cycle(1, &[0]).unwrap();
        let expected = AlgebraElement::from_terms(
            Context::genus_free(1, Some(1)),
            vec![(loop_with_leg(), q(-1, 24))],
        )
        .unwrap();
        assert_eq!(res.element, expected);
        assert_eq!(res.r_samples, vec![3, 4, 5, 6, 7, 8]);
    }

    #[test]
    fn shifting_legs_by_r_changes_nothing() {
        let g = Graph::genus_free(2, vec![(0, 1), (0, 1)], vec![0, 1]).unwrap();
        let r = 7;
        assert_eq!(
            edge_term_sum(&g, &[1, -1], r).unwrap(),
            edge_term_sum(&g, &[1 + 7, -1 - 14], r).unwrap()
        );
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(dr_cycle(1, &[1, 1]), Err(Error::InconsistentInput(_))));
        assert!(matches!(dr_cycle(0, &[0, 0]), Err(Error::UnstablePair { .. })));
        assert!(dr_relation(1, &[0], 1).is_err());
        let bad = [(3, Rational::zero()), (4, Rational::one()), (5, q(5, 1)), (6, Rational::zero())];
        assert!(matches!(constant_term_of(&bad, 0), Err(Error::PolynomialityCheckFailed(_))));
    }

    #[test]
    fn twisted_zero_matches_untwisted_on_cycle() {
        let tw = twisted_dr_constant_term(&DrInput::new(1, vec![0], 1, 0)).unwrap().element;
        let plain = dr_cycle(1, &[0]).unwrap().element;
        assert_eq!(tw, plain.expand_genus_free(1).unwrap());
    }
}
