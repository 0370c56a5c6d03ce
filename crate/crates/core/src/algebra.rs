//! Formal graph algebras: finite rational combinations of graph classes.
//!
//! Genus-labeled elements live in the algebra of genus-`g` graphs with `n`
//! legs; genus-free elements live in the algebra of graphs with `n` legs and
//! may carry a genus context used when they are expanded.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::canon::{canonical_form, CanonicalForm};
use crate::enumerate::{compositions, Mode};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::substitute::{bare_partition_count, partition_count, uncontractions};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Context {
    pub genus: Option<u32>,
    pub n: usize,
    pub mode: Mode,
}

impl Context {
    pub fn labeled(g: u32, n: usize) -> Result<Self> {
        check_stable_pair(g, n)?;
        Ok(Context { genus: Some(g), n, mode: Mode::Labeled })
    }

    pub fn genus_free(n: usize, genus: Option<u32>) -> Self {
        Context { genus, n, mode: Mode::GenusFree }
    }

    /// The context a single graph naturally lives in.
    pub fn of_graph(graph: &Graph) -> Result<Self> {
        match graph.total_genus() {
            Some(g) => Context::labeled(g, graph.n()),
            None => Ok(Context::genus_free(graph.n(), None)),
        }
    }

    fn merge(self, other: Context) -> Result<Context> {
        let mismatch = || Error::ContextMismatch(format!("{self:?} vs {other:?}"));
        if self.mode != other.mode || self.n != other.n {
            return Err(mismatch());
        }
        let genus = match (self.genus, other.genus) {
            (Some(a), Some(b)) if a != b => return Err(mismatch()),
            (a, b) => a.or(b),
        };
        if self.mode == Mode::Labeled && genus.is_none() {
            return Err(mismatch());
        }
        Ok(Context { genus, ..self })
    }

    fn admits(&self, graph: &Graph) -> Result<()> {
        if graph.n() != self.n {
            return Err(Error::ContextMismatch(format!(
                "graph has {} legs, context expects {}",
                graph.n(),
                self.n
            )));
        }
        match self.mode {
            Mode::Labeled => {
                let expected = self.genus.expect("labeled context has a genus");
                match graph.total_genus() {
                    None => Err(Error::ContextMismatch("genus-free graph in labeled context".into())),
                    Some(g) if g != expected => Err(Error::ContextMismatch(format!(
                        "graph has genus {g}, context expects {expected}"
                    ))),
                    Some(_) => Ok(()),
                }
            }
            Mode::GenusFree if graph.is_labeled() => {
                Err(Error::ContextMismatch("genus-labeled graph in genus-free context".into()))
            }
            Mode::GenusFree => Ok(()),
        }
    }
}

pub(crate) fn check_stable_pair(g: u32, n: usize) -> Result<()> {
    if 2 * g as i64 - 2 + n as i64 > 0 {
        Ok(())
    } else {
        Err(Error::UnstablePair { g, n })
    }
}

/// A finite rational linear combination of graph classes. Zero coefficients
/// are never stored, so the zero element has no terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    context: Context,
    terms: BTreeMap<CanonicalForm, Rational>,
}

impl AlgebraElement {
    pub fn zero(context: Context) -> Self {
        AlgebraElement { context, terms: BTreeMap::new() }
    }

    /// The class of the edgeless graph.
    pub fn unit(context: Context) -> Self {
        let genus = match context.mode {
            Mode::Labeled => context.genus,
            Mode::GenusFree => None,
        };
        let mut e = AlgebraElement::zero(context);
        e.add_term(canonical_form(&Graph::unit(genus, context.n)), Rational::one());
        e
    }

    /// `[graph]` in the graph's natural context.
    pub fn class(graph: &Graph) -> Result<Self> {
        AlgebraElement::class_in(Context::of_graph(graph)?, graph)
    }

    pub fn class_in(context: Context, graph: &Graph) -> Result<Self> {
        graph.validate(None)?;
        context.admits(graph)?;
        let mut e = AlgebraElement::zero(context);
        e.add_term(canonical_form(graph), Rational::one());
        Ok(e)
    }

    pub fn from_terms<I>(context: Context, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Graph, Rational)>,
    {
        let mut e = AlgebraElement::zero(context);
        for (graph, coeff) in terms {
            graph.validate(None)?;
            context.admits(&graph)?;
            e.add_term(canonical_form(&graph), coeff);
        }
        Ok(e)
    }

    pub fn context(&self) -> Context {
        self.context
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CanonicalForm, &Rational)> {
        self.terms.iter()
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

    pub fn coeff(&self, graph: &Graph) -> Rational {
        self.terms.get(&canonical_form(graph)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Edge counts present, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|k| k.graph().d()).collect();
        d.dedup();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub(crate) fn add_term(&mut self, key: CanonicalForm, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(key);
        match slot {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        let mut out = AlgebraElement { context: self.context.merge(other.context)?, ..self.clone() };
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.context);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// Product in the genus-labeled algebra.
    pub fn mul(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if self.context.mode != Mode::Labeled || other.context.mode != Mode::Labeled {
            return Err(Error::ContextMismatch("mul needs genus-labeled elements".into()));
        }
        self.product(other, ProductLaw::Automorphisms)
    }

    /// Product in the genus-free algebra.
    pub fn mul_genus_free(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if self.context.mode != Mode::GenusFree || other.context.mode != Mode::GenusFree {
            return Err(Error::ContextMismatch("mul_genus_free needs genus-free elements".into()));
        }
        self.product(other, ProductLaw::Automorphisms)
    }

    /// The same product computed through the rescaled law: the rescaled
    /// classes `[G]/|Aut(G)|` multiply with coefficients that count bare edge
    /// partitions, and the result is converted back to `[G]` coordinates.
    pub fn mul_rescaled(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.product(other, ProductLaw::BarePartitions)
    }

    fn product(&self, other: &AlgebraElement, law: ProductLaw) -> Result<AlgebraElement> {
        let context = self.context.merge(other.context)?;
        let pairs: Vec<_> = self
            .terms
            .iter()
            .flat_map(|a| other.terms.iter().map(move |b| (a, b)))
            .collect();
        let contributions: Vec<Vec<(CanonicalForm, Rational)>> = pairs
            .par_iter()
            .map(|((k1, c1), (k2, c2))| {
                let scale = *c1 * *c2;
                basis_product(k1, k2, law)
                    .into_iter()
                    .map(|(k, c)| (k, c * &scale))
                    .collect()
            })
            .collect();
        let mut out = AlgebraElement::zero(context);
        for (k, c) in contributions.into_iter().flatten() {
            out.add_term(k, c);
        }
        Ok(out)
    }

    /// `[G]_g`: the sum over all genus distributions, for a genus-free element.
    pub fn expand_genus_free(&self, g: u32) -> Result<AlgebraElement> {
        if self.context.mode != Mode::GenusFree {
            return Err(Error::NotGenusFree);
        }
        if self.context.genus.is_some_and(|h| h != g) {
            return Err(Error::ContextMismatch(format!(
                "element carries genus context {:?}, expansion asked for {g}",
                self.context.genus
            )));
        }
        let mut out = AlgebraElement::zero(Context::labeled(g, self.context.n)?);
        for (k, c) in &self.terms {
            for (key, mult) in expansion_terms(k.graph(), g) {
                out.add_term(key, c * mult);
            }
        }
        Ok(out)
    }

    /// Pullback along the map forgetting a new last marking.
    pub fn pullback_forget(&self) -> Result<AlgebraElement> {
        if self.context.mode != Mode::Labeled {
            return Err(Error::NotGenusLabeled);
        }
        let g = self.context.genus.expect("labeled");
        let mut out = AlgebraElement::zero(Context::labeled(g, self.context.n + 1)?);
        for (k, c) in &self.terms {
            let graph = k.graph();
            for v in 0..graph.num_vertices() {
                out.add_term(canonical_form(&graph.with_leg_at(v)), c.clone());
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug)]
enum ProductLaw {
    Automorphisms,
    BarePartitions,
}

fn basis_product(a: &CanonicalForm, b: &CanonicalForm, law: ProductLaw) -> Vec<(CanonicalForm, Rational)> {
    let (ga, gb) = (a.graph(), b.graph());
    uncontractions(ga, gb.d())
        .into_iter()
        .filter_map(|candidate| {
            let cf = canonical_form(&candidate);
            let coeff = match law {
                ProductLaw::Automorphisms => {
                    let c = partition_count(&candidate, ga, gb);
                    Rational::new(c.into(), cf.aut_order().into())
                }
                ProductLaw::BarePartitions => {
                    let c = bare_partition_count(&candidate, ga, gb);
                    Rational::new(
                        (c * a.aut_order() * b.aut_order()).into(),
                        cf.aut_order().into(),
                    )
                }
            };
            (!coeff.is_zero()).then_some((cf, coeff))
        })
        .collect()
}

fn expansion_terms(graph: &Graph, g: u32) -> Vec<(CanonicalForm, Rational)> {
    let h1 = graph.h1();
    if h1 > g {
        return Vec::new();
    }
    compositions(g - h1, graph.num_vertices())
        .into_iter()
        .map(|genera| {
            let labeled = graph.with_genera(genera).expect("same shape");
            (canonical_form(&labeled), Rational::one())
        })
        .collect()
}

/// `[G]_g` for a single genus-free graph.
pub fn expand_genus_free(graph: &Graph, g: u32) -> Result<AlgebraElement> {
    if graph.is_labeled() {
        return Err(Error::NotGenusFree);
    }
    check_stable_pair(g, graph.n())?;
    AlgebraElement::class(graph)?.expand_genus_free(g)
}

/// `π_*(ψ_n [Γ]) = (2g_v - 2 + n_v) [Γ']` where `Γ'` drops the last leg and
/// `g_v, n_v` are read off in `Γ'` at the vertex that carried it.
pub fn pushforward_psi_forget(graph: &Graph) -> Result<AlgebraElement> {
    let g = graph.total_genus().ok_or(Error::NotGenusLabeled)?;
    let n = graph.n();
    if n == 0 {
        return Err(Error::MarkingNotPresent { marking: 1, n: 0 });
    }
    if 2 * g as i64 - 2 + (n as i64 - 1) <= 0 {
        return Err(Error::UnstableTarget { g, n: n - 1 });
    }
    let v = graph.legs()[n - 1];
    let stripped = graph.without_leg(n - 1);
    let chi = stripped.euler_char(v).expect("labeled");
    let mut out = AlgebraElement::zero(Context::labeled(g, n - 1)?);
    out.add_term(canonical_form(&stripped), Rational::from_integer(chi.into()));
    Ok(out)
}
