//! Atomic, quadrature and analytic states: expectations, positivity and
//! the support box that certifies continuity.

use std::sync::Arc;

use gelfand_lab::parser::{parse_poly, parse_presentation, parse_state};
use gelfand_lab::star_poly::Mode;
use gelfand_lab::states::{make_state, norm_squared};

fn main() -> gelfand_lab::Result<()> {
    let line = Arc::new(parse_presentation(
        "algebra A; generator x : selfadjoint;",
        Mode::Star,
    )?);
    let a = parse_poly("x^2 - (0+1i)*x + 1", &line)?;
    for text in [
        "atomic normalize { (x=0): 1 ; (x=2): 3 }",
        "density \"uniform\" on [-1,1] order 12",
        "density \"semicircle\" on [-2,2] order 24",
        "gaussian",
    ] {
        let state = make_state(&line, parse_state(text, &line)?)?;
        println!(
            "{:<42} kind {:<10} E(x^2) = {:<22} E(a*a) = {}",
            text,
            state.kind().name(),
            state.expect(&parse_poly("x^2", &line)?)?.to_string(),
            norm_squared(&state, &a)?
        );
        if let Some((support, c)) = state.continuity_certificate() {
            let sides: Vec<String> = (0..support.dim())
                .map(|k| {
                    let a = &support.axes()[k];
                    format!("{} in [{}, {}]", support.axis_name(k), a.lo, a.hi)
                })
                .collect();
            println!("    |E(b)| ≤ {c}·sup|b̂| over {}", sides.join(", "));
        }
    }
    Ok(())
}
