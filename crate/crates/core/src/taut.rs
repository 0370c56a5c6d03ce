//! Decorated stable-graph expressions `ξ_Γ*(α)` with α a monomial in κ and ψ
//! classes, and the maps that produce them from graph classes.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{check_stable_pair, AlgebraElement};
use crate::canon::{count_isomorphisms, label, Colored};
use crate::enumerate::Mode;
use crate::error::{Error, Result};
use crate::graph::{Graph, HalfEdge};
use crate::substitute::{subsets, uncontractions};
use crate::Rational;

/// A stable graph with a ψ exponent on every half-edge and a κ monomial
/// (multiset of indices `a >= 1`) on every vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecoratedStratum {
    graph: Graph,
    edge_psi: Vec<[u32; 2]>,
    leg_psi: Vec<u32>,
    kappa: Vec<Vec<u32>>,
}

impl DecoratedStratum {
    pub fn new(
        graph: Graph,
        edge_psi: Vec<[u32; 2]>,
        leg_psi: Vec<u32>,
        kappa: Vec<Vec<u32>>,
    ) -> Result<Self> {
        if !graph.is_labeled() {
            return Err(Error::NotGenusLabeled);
        }
        if !graph.is_stable() {
            return Err(Error::NotStable);
        }
        if edge_psi.len() != graph.d() || leg_psi.len() != graph.n() || kappa.len() != graph.num_vertices() {
            return Err(Error::Parse("decoration sizes do not match the graph".into()));
        }
        if kappa.iter().flatten().any(|&a| a == 0) {
            return Err(Error::Parse("kappa indices must be at least 1".into()));
        }
        let mut kappa = kappa;
        kappa.iter_mut().for_each(|k| k.sort_unstable());
        Ok(DecoratedStratum { graph, edge_psi, leg_psi, kappa })
    }

    /// The undecorated stratum `ξ_Γ*1`.
    pub fn bare(graph: Graph) -> Result<Self> {
        let (d, n, nv) = (graph.d(), graph.n(), graph.num_vertices());
        DecoratedStratum::new(graph, vec![[0, 0]; d], vec![0; n], vec![Vec::new(); nv])
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn edge_psi(&self) -> &[[u32; 2]] {
        &self.edge_psi
    }

    pub fn leg_psi(&self) -> &[u32] {
        &self.leg_psi
    }

    pub fn kappa(&self) -> &[Vec<u32>] {
        &self.kappa
    }

    pub fn psi(&self, h: HalfEdge) -> u32 {
        match h {
            HalfEdge::Edge { edge, side } => self.edge_psi[edge][side as usize],
            HalfEdge::Leg(i) => self.leg_psi[i],
        }
    }

    fn psi_mut(&mut self, h: HalfEdge) -> &mut u32 {
        match h {
            HalfEdge::Edge { edge, side } => &mut self.edge_psi[edge][side as usize],
            HalfEdge::Leg(i) => &mut self.leg_psi[i],
        }
    }

    pub fn is_undecorated(&self) -> bool {
        self.edge_psi.iter().all(|p| p == &[0, 0])
            && self.leg_psi.iter().all(|&p| p == 0)
            && self.kappa.iter().all(|k| k.is_empty())
    }

    /// Edge count plus the degree of the decoration.
    pub fn codimension(&self) -> u32 {
        self.graph.d() as u32
            + self.edge_psi.iter().flatten().sum::<u32>()
            + self.leg_psi.iter().sum::<u32>()
            + self.kappa.iter().flatten().sum::<u32>()
    }

    fn colored(&self) -> Colored {
        let g = &self.graph;
        Colored {
            vertex_colors: (0..g.num_vertices())
                .map(|v| {
                    let mut c = vec![g.genus_of(v).expect("labeled")];
                    c.extend_from_slice(&self.kappa[v]);
                    c
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .zip(&self.edge_psi)
                .map(|(&(a, b), p)| (a, p[0], b, p[1]))
                .collect(),
            legs: g.legs().iter().zip(&self.leg_psi).map(|(&v, &p)| (v, p)).collect(),
        }
    }

    /// Canonical representative of the decorated isomorphism class.
    pub fn canonical(&self) -> StratumKey {
        let colored = self.colored();
        let labeling = label(&colored);
        let nv = self.graph.num_vertices();
        let mut inverse = vec![0; nv];
        for (v, &p) in labeling.position.iter().enumerate() {
            inverse[p] = v;
        }
        let relabeled = colored.relabeled_edges(&labeling.position);
        let genera: Vec<u32> = inverse.iter().map(|&v| self.graph.genus_of(v).expect("labeled")).collect();
        let edges = relabeled.iter().map(|&(u, _, v, _)| (u, v)).collect();
        let edge_psi = relabeled.iter().map(|&(_, a, _, b)| [a, b]).collect();
        let legs = self.graph.legs().iter().map(|&v| labeling.position[v]).collect();
        let kappa = inverse.iter().map(|&v| self.kappa[v].clone()).collect();
        StratumKey {
            code: labeling.code,
            stratum: DecoratedStratum {
                graph: Graph::from_parts_unchecked(nv, Some(genera), edges, legs),
                edge_psi,
                leg_psi: self.leg_psi.clone(),
                kappa,
            },
        }
    }
}

/// A canonical decorated stratum, ordered by its encoding.
#[derive(Clone, Debug)]
pub struct StratumKey {
    code: Vec<u32>,
    stratum: DecoratedStratum,
}

impl StratumKey {
    pub fn stratum(&self) -> &DecoratedStratum {
        &self.stratum
    }
}

impl PartialEq for StratumKey {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code
    }
}

impl Eq for StratumKey {}

impl PartialOrd for StratumKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for StratumKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.code.cmp(&other.code)
    }
}

/// A rational combination of decorated strata on `M_{g,n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TautExpr {
    g: u32,
    n: usize,
    terms: BTreeMap<StratumKey, Rational>,
}

impl TautExpr {
    pub fn zero(g: u32, n: usize) -> Result<Self> {
        check_stable_pair(g, n)?;
        Ok(TautExpr { g, n, terms: BTreeMap::new() })
    }

    pub fn from_terms<I>(g: u32, n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (DecoratedStratum, Rational)>,
    {
        let mut out = TautExpr::zero(g, n)?;
        for (s, c) in terms {
            out.check(&s)?;
            out.add_term(&s, c);
        }
        Ok(out)
    }

    fn check(&self, s: &DecoratedStratum) -> Result<()> {
        if s.graph.total_genus() != Some(self.g) || s.graph.n() != self.n {
            return Err(Error::ContextMismatch(format!(
                "stratum of genus {:?} with {} legs in context ({}, {})",
                s.graph.total_genus(),
                s.graph.n(),
                self.g,
                self.n
            )));
        }
        Ok(())
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DecoratedStratum, &Rational)> {
        self.terms.iter().map(|(k, c)| (&k.stratum, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, s: &DecoratedStratum) -> Rational {
        self.terms.get(&s.canonical()).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, s: &DecoratedStratum, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = s.canonical();
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&s.canonical());
        }
    }

    fn same_context(&self, other: &TautExpr) -> Result<()> {
        if (self.g, self.n) != (other.g, other.n) {
            return Err(Error::ContextMismatch(format!(
                "({}, {}) vs ({}, {})",
                self.g, self.n, other.g, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &TautExpr) -> Result<TautExpr> {
        self.same_context(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(&k.stratum, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TautExpr) -> Result<TautExpr> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> TautExpr {
        let mut out = TautExpr { terms: BTreeMap::new(), ..*self };
        for (k, v) in &self.terms {
            out.add_term(&k.stratum, v * c);
        }
        out
    }

    /// Multiplies every term by `ψ` at leg `leg` (1-based).
    pub fn mul_psi(&self, leg: usize) -> Result<TautExpr> {
        if leg == 0 || leg > self.n {
            return Err(Error::MarkingNotPresent { marking: leg, n: self.n });
        }
        let mut out = TautExpr { terms: BTreeMap::new(), ..*self };
        for (k, c) in &self.terms {
            let mut s = k.stratum.clone();
            s.leg_psi[leg - 1] += 1;
            out.add_term(&s, c.clone());
        }
        Ok(out)
    }

    /// Pushforward along the map forgetting `marking` (1-based); higher
    /// markings shift down by one.
    pub fn forget_pushforward(&self, marking: usize) -> Result<TautExpr> {
        if marking == 0 || marking > self.n {
            return Err(Error::MarkingNotPresent { marking, n: self.n });
        }
        if 2 * self.g as i64 - 2 + self.n as i64 - 1 <= 0 {
            return Err(Error::UnstableTarget { g: self.g, n: self.n - 1 });
        }
        let mut out = TautExpr { g: self.g, n: self.n - 1, terms: BTreeMap::new() };
        for (k, c) in &self.terms {
            for (s, x) in forget_term(&k.stratum, marking - 1)? {
                out.add_term(&s, x * c);
            }
        }
        Ok(out)
    }
}

fn factorial(k: u32) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

fn binomial(n: u32, k: u32) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn sign(k: u32) -> BigInt {
    if k % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Pushforward of one decorated stratum along the map forgetting leg `leg`
/// (0-based), through the comparison rules on the vertex carrying it:
/// `κ_c = κ̄_c + ψ_m^c`, `ψ_h = ψ̄_h + D_h`, `D_h ψ_m = D_h ψ_h = D_h D_h' = 0`,
/// and `π_*(ψ_m^{b+1} X̄) = κ_b X̄`, `π_*(D_h X̄) = X̄`, `π_*(X̄) = 0`.
/// Together the ψ rules give `ψ_h^b = ψ̄_h^b + D_h ψ̄_h^{b-1}` for `b >= 1`.
fn forget_term(s: &DecoratedStratum, leg: usize) -> Result<Vec<(DecoratedStratum, Rational)>> {
    let graph = &s.graph;
    let v = graph.legs()[leg];
    let gv = graph.genus_of(v).expect("labeled");
    let target_chi = 2 * gv as i64 - 2 + graph.valence(v) as i64 - 1;
    let others: Vec<HalfEdge> =
        graph.half_edges_at(v).into_iter().filter(|&h| h != HalfEdge::Leg(leg)).collect();
    if target_chi <= 0 {
        return contract_bubble(s, leg, v, &others);
    }
    let a = s.leg_psi[leg];
    let kappa = &s.kappa[v];
    let mut out = Vec::new();
    for mask in 0u32..1 << kappa.len() {
        let mut rest = Vec::new();
        let mut exponent = a;
        for (i, &c) in kappa.iter().enumerate() {
            if mask >> i & 1 == 1 {
                exponent += c;
            } else {
                rest.push(c);
            }
        }
        let mut base = s.clone();
        if exponent >= 1 {
            let mut coeff = Rational::one();
            if exponent == 1 {
                coeff = Rational::from_integer(target_chi.into());
            } else {
                rest.push(exponent - 1);
            }
            rest.sort_unstable();
            base.kappa[v] = rest;
            out.push((drop_leg(base, leg), coeff));
        } else {
            for &h in &others {
                if s.psi(h) >= 1 {
                    let mut t = base.clone();
                    *t.psi_mut(h) -= 1;
                    out.push((drop_leg(t, leg), Rational::one()));
                }
            }
        }
    }
    Ok(out)
}

fn drop_leg(mut s: DecoratedStratum, leg: usize) -> DecoratedStratum {
    s.graph = s.graph.without_leg(leg);
    s.leg_psi.remove(leg);
    s
}

/// Forgetting a leg on a genus-0 vertex with exactly two other half-edges:
/// the vertex is a point, so only the undecorated case survives and the
/// vertex is removed, joining its two remaining half-edges.
fn contract_bubble(
    s: &DecoratedStratum,
    leg: usize,
    v: usize,
    others: &[HalfEdge],
) -> Result<Vec<(DecoratedStratum, Rational)>> {
    let graph = &s.graph;
    if s.leg_psi[leg] != 0 || !s.kappa[v].is_empty() || others.iter().any(|&h| s.psi(h) != 0) {
        return Ok(Vec::new());
    }
    let unstable = || Error::UnstableTarget { g: graph.total_genus().unwrap_or(0), n: graph.n() - 1 };
    let [h1, h2] = others else { return Err(unstable()) };
    let far = |h: HalfEdge| -> Option<(usize, HalfEdge)> {
        let p = Graph::partner(h)?;
        Some((graph.vertex_of(p), p))
    };
    let remap = |x: usize| if x > v { x - 1 } else { x };
    let nv = graph.num_vertices() - 1;
    let genera: Vec<u32> = (0..graph.num_vertices())
        .filter(|&x| x != v)
        .map(|x| graph.genus_of(x).expect("labeled"))
        .collect();
    let mut kappa = s.kappa.clone();
    kappa.remove(v);
    let mut edges = Vec::new();
    let mut edge_psi = Vec::new();
    let removed: Vec<usize> = [h1, h2]
        .iter()
        .filter_map(|h| match h {
            HalfEdge::Edge { edge, .. } => Some(*edge),
            HalfEdge::Leg(_) => None,
        })
        .collect();
    if removed.len() == 2 && removed[0] == removed[1] {
        return Err(unstable());
    }
    for (e, &(a, b)) in graph.edges().iter().enumerate() {
        if !removed.contains(&e) {
            edges.push((remap(a), remap(b)));
            edge_psi.push(s.edge_psi[e]);
        }
    }
    let mut legs: Vec<usize> = graph.legs().iter().map(|&x| if x == v { usize::MAX } else { remap(x) }).collect();
    let mut leg_psi = s.leg_psi.clone();
    match (far(*h1), far(*h2)) {
        (Some((x1, p1)), Some((x2, p2))) => {
            edges.push((remap(x1), remap(x2)));
            edge_psi.push([s.psi(p1), s.psi(p2)]);
        }
        (None, Some((x, p))) | (Some((x, p)), None) => {
            let HalfEdge::Leg(j) = (if far(*h1).is_none() { *h1 } else { *h2 }) else { unreachable!() };
            legs[j] = remap(x);
            leg_psi[j] = s.psi(p);
        }
        (None, None) => return Err(unstable()),
    }
    legs.remove(leg);
    leg_psi.remove(leg);
    // Orientation of the joined edge: Graph stores (min, max), keep psi aligned.
    let mut oriented_psi = Vec::with_capacity(edges.len());
    for (&(a, b), p) in edges.iter().zip(&edge_psi) {
        oriented_psi.push(if a <= b { *p } else { [p[1], p[0]] });
    }
    let graph = Graph::new(nv, Some(genera), edges, legs)?;
    Ok(vec![(DecoratedStratum::new(graph, oriented_psi, leg_psi, kappa)?, Rational::one())])
}

#[derive(Clone, Copy, Debug)]
enum PathEnd {
    Vertex { vertex: usize, half: HalfEdge },
    Leg(usize),
}

/// The class `[Γ]` of a genus-labeled graph as decorated strata.
///
/// Genus-0 leaves first get a new leg each (multiplied by `-ψ` there), then
/// every maximal path of genus-0 valence-2 vertices is contracted: between
/// stable vertices to one edge with `(-ψ-ψ')^k/(k+1)!`, towards a leg to the
/// leg with `(-ψ)^k/k!`. Finally the new legs are forgotten again.
pub fn convert(graph: &Graph) -> Result<TautExpr> {
    let g = graph.total_genus().ok_or(Error::NotGenusLabeled)?;
    let n = graph.n();
    check_stable_pair(g, n)?;
    graph.validate(None)?;
    let leaves: Vec<usize> = (0..graph.num_vertices())
        .filter(|&v| graph.genus_of(v) == Some(0) && graph.valence(v) == 1)
        .collect();
    let mut primed = graph.clone();
    for &v in &leaves {
        primed = primed.with_leg_at(v);
    }
    let m = leaves.len();
    let mut expr = TautExpr::zero(g, n + m)?;
    let leaf_sign = Rational::from_integer(sign(m as u32));
    for (mut s, c) in resolve_unstable_paths(&primed)? {
        for j in n..n + m {
            s.leg_psi[j] += 1;
        }
        expr.add_term(&s, c * &leaf_sign);
    }
    for marking in (n + 1..=n + m).rev() {
        expr = expr.forget_pushforward(marking)?;
    }
    Ok(expr)
}

/// Linear extension of [`convert`]; genus-free elements are expanded in
/// their genus context first.
pub fn convert_element(e: &AlgebraElement) -> Result<TautExpr> {
    let ctx = e.context();
    let labeled = match ctx.mode {
        Mode::Labeled => e.clone(),
        Mode::GenusFree => {
            let g = ctx.genus.ok_or_else(|| {
                Error::ContextMismatch("genus-free element needs a genus context to convert".into())
            })?;
            e.expand_genus_free(g)?
        }
    };
    let g = labeled.context().genus.expect("labeled");
    let mut out = TautExpr::zero(g, ctx.n)?;
    for (k, c) in labeled.terms() {
        out = out.add(&convert(k.graph())?.scale(c))?;
    }
    Ok(out)
}

/// Contracts the unstable paths of a semistable graph, returning the
/// expanded ψ-decorated stable strata.
fn resolve_unstable_paths(graph: &Graph) -> Result<Vec<(DecoratedStratum, Rational)>> {
    let nv = graph.num_vertices();
    let stable: Vec<bool> = (0..nv).map(|v| graph.euler_char(v).expect("labeled") > 0).collect();
    if (0..nv).any(|v| graph.euler_char(v).expect("labeled") < 0) {
        return Err(Error::InconsistentInput("graph is not semistable".into()));
    }
    if !stable.iter().any(|&s| s) {
        return Err(if graph.n() == 0 {
            Error::CyclicAllUnstable
        } else {
            Error::UnstablePair { g: graph.total_genus().unwrap_or(0), n: graph.n() }
        });
    }
    let mut index = vec![usize::MAX; nv];
    let mut count = 0;
    for v in 0..nv {
        if stable[v] {
            index[v] = count;
            count += 1;
        }
    }
    let d = graph.d();
    let mut edge_paths: Vec<(usize, usize, u32)> = Vec::new();
    let mut leg_paths: Vec<(usize, usize, u32)> = Vec::new();
    for s in (0..nv).filter(|&v| stable[v]) {
        for h in graph.half_edges_at(s) {
            let Some(mut cur) = Graph::partner(h) else {
                let HalfEdge::Leg(i) = h else { unreachable!() };
                leg_paths.push((i, index[s], 0));
                continue;
            };
            let mut k = 0u32;
            let end = loop {
                let u = graph.vertex_of(cur);
                if stable[u] {
                    break PathEnd::Vertex { vertex: u, half: cur };
                }
                k += 1;
                let next = graph
                    .half_edges_at(u)
                    .into_iter()
                    .find(|&x| x != cur)
                    .expect("unstable vertex has valence 2");
                match Graph::partner(next) {
                    None => {
                        let HalfEdge::Leg(i) = next else { unreachable!() };
                        break PathEnd::Leg(i);
                    }
                    Some(p) => cur = p,
                }
            };
            match end {
                PathEnd::Leg(i) => leg_paths.push((i, index[s], k)),
                PathEnd::Vertex { vertex, half } => {
                    if h.id(d) < half.id(d) {
                        edge_paths.push((index[s], index[vertex], k));
                    }
                }
            }
        }
    }
    leg_paths.sort_unstable();
    let edges: Vec<(usize, usize)> = edge_paths.iter().map(|&(a, b, _)| (a, b)).collect();
    let legs: Vec<usize> = leg_paths.iter().map(|&(_, v, _)| v).collect();
    let genera = (0..nv).filter(|&v| stable[v]).map(|v| graph.genus_of(v).expect("labeled")).collect();
    let contracted = Graph::new(count, Some(genera), edges, legs)?;

    let mut leg_psi = vec![0u32; graph.n()];
    let mut base = Rational::one();
    for &(i, _, k) in &leg_paths {
        leg_psi[i] = k;
        base *= Rational::new(sign(k), factorial(k));
    }
    let mut expansions: Vec<(Vec<[u32; 2]>, Rational)> = vec![(Vec::new(), base)];
    for &(_, _, k) in &edge_paths {
        let denom = factorial(k + 1);
        let mut next = Vec::with_capacity(expansions.len() * (k as usize + 1));
        for (psi, c) in &expansions {
            for j in 0..=k {
                let mut p = psi.clone();
                p.push([j, k - j]);
                next.push((p, c * Rational::new(sign(k) * binomial(k, j), denom.clone())));
            }
        }
        expansions = next;
    }
    expansions
        .into_iter()
        .map(|(edge_psi, c)| {
            let nv = contracted.num_vertices();
            Ok((
                DecoratedStratum::new(contracted.clone(), edge_psi, leg_psi.clone(), vec![Vec::new(); nv])?,
                c,
            ))
        })
        .collect()
}

/// Product of two undecorated strata classes `ξ_Γ1*1 · ξ_Γ2*1` by the
/// excess-intersection sum over generic structures `(Γ, E1, E2)`; edges in
/// neither `E1` nor `E2` carry `(-ψ - ψ')`.
pub fn gp_mul_strata(first: &Graph, second: &Graph) -> Result<TautExpr> {
    for g in [first, second] {
        if !g.is_labeled() {
            return Err(Error::NotGenusLabeled);
        }
        if !g.is_stable() {
            return Err(Error::NotStable);
        }
    }
    let g = first.total_genus().expect("labeled");
    if second.total_genus() != Some(g) || second.n() != first.n() {
        return Err(Error::ContextMismatch("factors live on different moduli spaces".into()));
    }
    let (d1, d2) = (first.d(), second.d());
    let mut out = TautExpr::zero(g, first.n())?;
    for extra in 0..=d2 {
        if d1 + extra < d2 {
            continue;
        }
        for gamma in uncontractions(first, extra).into_iter().filter(Graph::is_stable) {
            let total = gamma.d();
            let aut = crate::canon::canonical_form(&gamma).aut_order();
            for e1 in subsets(total, total - d1) {
                let iso1 = count_isomorphisms(&gamma.contract_edges(&e1)?, first);
                if iso1 == 0 {
                    continue;
                }
                let rest: Vec<usize> = (0..total).filter(|e| !e1.contains(e)).collect();
                for pick in subsets(rest.len(), total - d2) {
                    let e2: Vec<usize> = pick.iter().map(|&i| rest[i]).collect();
                    let iso2 = count_isomorphisms(&gamma.contract_edges(&e2)?, second);
                    if iso2 == 0 {
                        continue;
                    }
                    let common: Vec<usize> = rest.iter().copied().filter(|e| !e2.contains(e)).collect();
                    let weight = Rational::new((iso1 * iso2).into(), aut.into());
                    for (s, c) in excess_terms(&gamma, &common)? {
                        out.add_term(&s, c * &weight);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `Π_{e ∈ common} (-ψ_e - ψ'_e)` expanded into decorated strata.
fn excess_terms(gamma: &Graph, common: &[usize]) -> Result<Vec<(DecoratedStratum, Rational)>> {
    let base = DecoratedStratum::bare(gamma.clone())?;
    let mut out = Vec::with_capacity(1 << common.len());
    for mask in 0u32..1 << common.len() {
        let mut s = base.clone();
        for (i, &e) in common.iter().enumerate() {
            s.edge_psi[e][(mask >> i & 1) as usize] += 1;
        }
        out.push((s, Rational::from_integer(sign(common.len() as u32))));
    }
    Ok(out)
}
