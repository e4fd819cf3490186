//! Parse presentations and polynomials, normalize modulo relations and
//! print canonical forms.

use std::sync::Arc;

use gelfand_lab::parser::{format_poly, parse_poly, parse_presentation};
use gelfand_lab::star_poly::Mode;

fn main() -> gelfand_lab::Result<()> {
    let line = Arc::new(parse_presentation(
        "algebra A; generator x : selfadjoint;",
        Mode::Star,
    )?);
    let plane = Arc::new(parse_presentation(
        "algebra C; generator z : free;",
        Mode::Star,
    )?);
    let dual = Arc::new(parse_presentation(
        "algebra N; generator x : selfadjoint; relation x^2;",
        Mode::Star,
    )?);

    println!("{line}{plane}{dual}");

    let a = parse_poly("(x + 1)^3", &line)?;
    println!("(x + 1)^3          = {}", format_poly(&a));

    let b = parse_poly("(2+1i)*z^2*adj(z)", &plane)?;
    println!("b                  = {b}");
    println!("adj(b)             = {}", b.involute()?);
    println!("b selfadjoint?       {}", b.is_selfadjoint()?);
    let c = b.mul(&b.involute()?)?;
    println!("b adj(b) selfadj.?   {}", c.is_selfadjoint()?);

    // x² = 0, so (1 + x)^5 collapses to 1 + 5x.
    let d = parse_poly("(1 + x)^5", &dual)?;
    println!("(1 + x)^5 mod x^2  = {d}");

    // Round trip through the canonical text form.
    let back = parse_poly(&format_poly(&b), &plane)?;
    assert_eq!(back, b);
    println!("round trip ok");
    Ok(())
}
