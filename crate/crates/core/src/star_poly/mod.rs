//! Exact arithmetic in finitely presented commutative algebras and
//! *-algebras.
//!
//! A [`Presentation`] lists generators, how the involution acts on them, and
//! a confluent set of oriented rewrite rules. A [`StarPoly`] is an element
//! stored in normal form with complex-rational coefficients. The free and
//! forgetful functors act on presentations ([`free_star`], [`underlying`]),
//! and [`Morphism`] carries homomorphisms between them.

mod functor;
mod monomial;
mod morphism;
mod poly;
mod presentation;

pub use functor::{free_star, underlying, unit_inclusion};
pub use monomial::Monomial;
pub use morphism::{extend_hom, Morphism, StarHomCheck};
pub(crate) use poly::same_presentation;
pub use poly::{normalize, StarPoly};
pub use presentation::{
    Generator, Link, Mode, Presentation, RewriteRule, Terms, DEFAULT_STEP_BUDGET,
};
