//! Sup-seminorms on boxes of the spectrum, Bernstein approximation of
//! continuous functions by transforms of polynomials, and the Wirtinger
//! operator on a free generator pair.

mod bernstein;
mod grid;
mod seminorm;
mod target;
mod wirtinger;

pub use bernstein::{
    bernstein_approx, density_witness, BernsteinApprox, MAX_BERNSTEIN_DIM, MAX_BERNSTEIN_NODES,
};
pub use seminorm::{seminorm_on_box, SeminormEstimate, SeminormReport, Seminormed};
pub use target::{TargetFunction, TargetKind, DEFAULT_MODULUS_SLACK};
pub use wirtinger::{is_holomorphic_image, wirtinger_dzbar};
