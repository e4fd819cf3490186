//! Truncated GNS construction for the standard Gaussian state on C[x]:
//! the orthogonal basis consists of Hermite polynomials and x acts by a
//! tridiagonal Jacobi matrix.

use std::sync::Arc;

use gelfand_lab::parser::{parse_presentation, parse_state};
use gelfand_lab::star_poly::Mode;
use gelfand_lab::states::{make_state, multiplication_operator, truncation_leakage, GnsModel};

fn main() -> gelfand_lab::Result<()> {
    let line = Arc::new(parse_presentation(
        "algebra A; generator x : selfadjoint;",
        Mode::Star,
    )?);
    let state = make_state(&line, parse_state("gaussian", &line)?)?;
    let model = GnsModel::build(&state, 5)?;
    println!("rank {:?}", model.rank());
    for (u, norm) in model.exact_orthogonal().unwrap_or_default() {
        println!("{:<28} norm² {norm}", model.polynomial(u)?.to_string());
    }
    let m = multiplication_operator(&model, 0)?;
    println!("multiplication by x:");
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|j| format!("{:7.4}", m[(i, j)].re))
            .collect();
        println!("  [{}]", row.join(" "));
    }
    println!(
        "leakage out of degree 5: {:?}",
        truncation_leakage(&model, 0)?
    );
    Ok(())
}
