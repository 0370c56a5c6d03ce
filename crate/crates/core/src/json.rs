//! JSON wire formats for graphs, algebra elements and decorated expressions.
//!
//! Graph: `{"vertices":[{"genus":0},...],"edges":[[i,j],...],"legs":[v,...]}`
//! with 0-based vertex indices, loops as `[i,i]`, and `"genus":null` for
//! genus-free vertices. Coefficients are `"p/q"` strings in lowest terms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, Context};
use crate::enumerate::Mode;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::taut::{DecoratedStratum, TautExpr};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexWire {
    #[serde(default)]
    pub genus: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphWire {
    pub vertices: Vec<VertexWire>,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub legs: Vec<usize>,
}

impl From<&Graph> for GraphWire {
    fn from(g: &Graph) -> Self {
        GraphWire {
            vertices: (0..g.num_vertices())
                .map(|v| VertexWire { genus: g.genus_of(v).map(i64::from) })
                .collect(),
            edges: g.edges().iter().map(|&(a, b)| [a, b]).collect(),
            legs: g.legs().to_vec(),
        }
    }
}

impl TryFrom<GraphWire> for Graph {
    type Error = Error;

    fn try_from(w: GraphWire) -> Result<Graph> {
        let labeled = w.vertices.iter().filter(|v| v.genus.is_some()).count();
        let genera = if labeled == 0 {
            None
        } else if labeled == w.vertices.len() {
            let mut out = Vec::with_capacity(labeled);
            for v in &w.vertices {
                let g = v.genus.expect("all labeled");
                if g < 0 {
                    return Err(Error::NegativeGenus(g));
                }
                out.push(u32::try_from(g).map_err(|_| Error::Parse(format!("genus {g} too large")))?);
            }
            Some(out)
        } else {
            return Err(Error::MixedGenusLabels);
        };
        Graph::new(w.vertices.len(), genera, w.edges.iter().map(|&[a, b]| (a, b)).collect(), w.legs)
    }
}

pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermWire {
    pub graph: GraphWire,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementWire {
    pub g: Option<u32>,
    pub n: usize,
    pub mode: String,
    pub terms: Vec<TermWire>,
}

impl From<&AlgebraElement> for ElementWire {
    fn from(e: &AlgebraElement) -> Self {
        let ctx = e.context();
        ElementWire {
            g: ctx.genus,
            n: ctx.n,
            mode: ctx.mode.as_str().to_string(),
            terms: e
                .terms()
                .map(|(k, c)| TermWire { graph: k.graph().into(), coeff: format_rational(c) })
                .collect(),
        }
    }
}

pub fn parse_mode(s: &str) -> Result<Mode> {
    match s {
        "labeled" => Ok(Mode::Labeled),
        "genus-free" => Ok(Mode::GenusFree),
        other => Err(Error::Parse(format!("unknown mode {other:?}"))),
    }
}

impl TryFrom<ElementWire> for AlgebraElement {
    type Error = Error;

    fn try_from(w: ElementWire) -> Result<AlgebraElement> {
        let context = match parse_mode(&w.mode)? {
            Mode::Labeled => {
                let g = w.g.ok_or_else(|| Error::Parse("labeled element needs \"g\"".into()))?;
                Context::labeled(g, w.n)?
            }
            Mode::GenusFree => Context::genus_free(w.n, w.g),
        };
        let terms = w
            .terms
            .into_iter()
            .map(|t| Ok((Graph::try_from(t.graph)?, parse_rational(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        AlgebraElement::from_terms(context, terms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumTermWire {
    pub graph: GraphWire,
    /// Nonzero ψ exponents keyed by half-edge id.
    #[serde(default)]
    pub psi: BTreeMap<String, u32>,
    #[serde(default)]
    pub kappa: Vec<Vec<u32>>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TautWire {
    pub g: u32,
    pub n: usize,
    pub terms: Vec<StratumTermWire>,
}

impl From<&TautExpr> for TautWire {
    fn from(e: &TautExpr) -> Self {
        TautWire {
            g: e.genus(),
            n: e.n(),
            terms: e
                .terms()
                .map(|(s, c)| {
                    let d = s.graph().d();
                    let mut psi = BTreeMap::new();
                    for (e, p) in s.edge_psi().iter().enumerate() {
                        for side in 0..2 {
                            if p[side] > 0 {
                                psi.insert((2 * e + side).to_string(), p[side]);
                            }
                        }
                    }
                    for (i, &p) in s.leg_psi().iter().enumerate() {
                        if p > 0 {
                            psi.insert((2 * d + i).to_string(), p);
                        }
                    }
                    StratumTermWire {
                        graph: s.graph().into(),
                        psi,
                        kappa: s.kappa().to_vec(),
                        coeff: format_rational(c),
                    }
                })
                .collect(),
        }
    }
}

impl TryFrom<TautWire> for TautExpr {
    type Error = Error;

    fn try_from(w: TautWire) -> Result<TautExpr> {
        let terms = w
            .terms
            .into_iter()
            .map(|t| {
                let graph = Graph::try_from(t.graph)?;
                let (d, n, nv) = (graph.d(), graph.n(), graph.num_vertices());
                let mut edge_psi = vec![[0u32; 2]; d];
                let mut leg_psi = vec![0u32; n];
                for (key, exp) in t.psi {
                    let id: usize = key.parse().map_err(|_| Error::Parse(format!("bad half-edge id {key:?}")))?;
                    if id < 2 * d {
                        edge_psi[id / 2][id % 2] = exp;
                    } else if id < 2 * d + n {
                        leg_psi[id - 2 * d] = exp;
                    } else {
                        return Err(Error::Parse(format!("half-edge id {id} out of range")));
                    }
                }
                let kappa = if t.kappa.is_empty() { vec![Vec::new(); nv] } else { t.kappa };
                Ok((DecoratedStratum::new(graph, edge_psi, leg_psi, kappa)?, parse_rational(&t.coeff)?))
            })
            .collect::<Result<Vec<_>>>()?;
        TautExpr::from_terms(w.g, w.n, terms)
    }
}

pub fn graph_from_value(v: serde_json::Value) -> Result<Graph> {
    let w: GraphWire = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
    Graph::try_from(w)
}

pub fn graph_to_value(g: &Graph) -> serde_json::Value {
    serde_json::to_value(GraphWire::from(g)).expect("serializable")
}

pub fn element_from_value(v: serde_json::Value) -> Result<AlgebraElement> {
    let w: ElementWire = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
    AlgebraElement::try_from(w)
}

pub fn element_to_value(e: &AlgebraElement) -> serde_json::Value {
    serde_json::to_value(ElementWire::from(e)).expect("serializable")
}

pub fn taut_from_value(v: serde_json::Value) -> Result<TautExpr> {
    let w: TautWire = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
    TautExpr::try_from(w)
}

pub fn taut_to_value(e: &TautExpr) -> serde_json::Value {
    serde_json::to_value(TautWire::from(e)).expect("serializable")
}

/// `1/1`, handy when building terms by hand.
pub fn one() -> Rational {
    Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn graph_json_round_trip() {
        let v = json!({"vertices":[{"genus":0},{"genus":1}],"edges":[[0,0],[0,1]],"legs":[0]});
        let g = graph_from_value(v.clone()).unwrap();
        assert_eq!(g.total_genus(), Some(2));
        assert_eq!(graph_to_value(&g), v);
    }

    #[test]
    fn graph_json_errors() {
        let mixed = json!({"vertices":[{"genus":0},{"genus":null}],"edges":[[0,1]],"legs":[]});
        assert_eq!(graph_from_value(mixed), Err(Error::MixedGenusLabels));
        let neg = json!({"vertices":[{"genus":-1}],"edges":[],"legs":[0,0,0]});
        assert_eq!(graph_from_value(neg), Err(Error::NegativeGenus(-1)));
        let split = json!({"vertices":[{"genus":null},{"genus":null}],"edges":[],"legs":[0,1]});
        assert_eq!(graph_from_value(split), Err(Error::Disconnected));
    }

    #[test]
    fn rationals() {
        assert_eq!(format_rational(&parse_rational("-2/48").unwrap()), "-1/24");
        assert_eq!(format_rational(&parse_rational("3").unwrap()), "3/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }
}
