//! States on presented *-algebras and the truncated GNS construction.
//!
//! A state is a positive normalized functional, here realized as a finite
//! atomic measure on the spectrum, a quadrature discretization of a density
//! on a box, or a moment rule. States are evaluated through the Gel'fand
//! transform; for a presentation whose transform is not injective this
//! fixes one functional on the algebra among those inducing the same
//! functional on transforms.

mod gns;
mod quadrature;
mod state;

pub use gns::{
    gns_basis, gram_matrix, monomial_basis, multiplication_operator, norm_squared,
    norm_squared_f64, truncation_leakage, GnsModel, NULL_THRESHOLD, PSD_TOLERANCE,
};
pub use quadrature::{gauss_legendre, tensor_rule};
pub use state::{
    expect, gaussian_moment, make_state, Density, MomentRule, State, StateKind, StateSpec,
    QUADRATURE_WEIGHT_TOLERANCE,
};
