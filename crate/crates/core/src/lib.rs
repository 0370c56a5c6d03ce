//! Generalized boundary strata classes on moduli spaces of stable curves.
//!
//! Graph classes `[Γ]` form formal algebras ([`algebra`]) whose products
//! count edge partitions; [`taut`] turns them into κ/ψ-decorated strata, and
//! [`dr`] evaluates the double ramification graph sum and extracts its
//! constant term in `r`. All coefficients are exact rationals.

pub mod algebra;
pub mod canon;
pub mod dr;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod json;
pub mod poly;
mod substitute;
pub mod taut;

pub use algebra::{expand_genus_free, pushforward_psi_forget, AlgebraElement, Context};
pub use canon::{canonical_form, count_isomorphisms, CanonicalForm};
pub use enumerate::{enumerate_graphs, Mode};
pub use error::{Error, Result};
pub use graph::{Graph, HalfEdge, StabilityClass, StabilityReport};
pub use taut::{convert, convert_element, gp_mul_strata, DecoratedStratum, TautExpr};

/// Arbitrary-precision rational scalar used for every coefficient.
pub type Rational = num_rational::BigRational;
