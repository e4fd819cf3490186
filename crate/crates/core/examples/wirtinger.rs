//! The Wirtinger operator ∂/∂z* separates holomorphic polynomials from the
//! rest of C[z, z*].

use std::sync::Arc;

use gelfand_lab::approx::{is_holomorphic_image, wirtinger_dzbar};
use gelfand_lab::parser::{parse_poly, parse_presentation};
use gelfand_lab::star_poly::Mode;

fn main() -> gelfand_lab::Result<()> {
    let plane = Arc::new(parse_presentation(
        "algebra C; generator z : free;",
        Mode::Star,
    )?);
    for text in ["z^3 + (2+1i)*z", "z*adj(z)", "adj(z)^2 + z", "7"] {
        let a = parse_poly(text, &plane)?;
        println!(
            "∂/∂z* ({a}) = {}   holomorphic: {}",
            wirtinger_dzbar(&a, 0)?,
            is_holomorphic_image(&a, 0)?
        );
    }
    Ok(())
}
