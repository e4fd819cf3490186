//! Sup-seminorms on boxes and Bernstein approximation of continuous
//! functions by transforms of polynomials.

use std::sync::Arc;

use num_rational::BigRational;

use gelfand_lab::approx::{
    bernstein_approx, density_witness, seminorm_on_box, Seminormed, TargetFunction,
};
use gelfand_lab::parser::{parse_box, parse_poly, parse_presentation};
use gelfand_lab::star_poly::Mode;

fn main() -> gelfand_lab::Result<()> {
    let line = Arc::new(parse_presentation(
        "algebra A; generator t : selfadjoint;",
        Mode::Star,
    )?);
    let unit = parse_box("box { t in [0, 1] }", &line)?;

    let p = parse_poly("4*t^3 - 3*t", &line)?;
    let s = seminorm_on_box(Seminormed::Poly(&p), &unit, 1001)?;
    println!("|4t^3 - 3t| on [0,1]: lower {} upper {}", s.lower, s.upper);

    let sq = bernstein_approx(&TargetFunction::square(), &unit, 2, 101)?;
    println!("B_2(t^2) = {}  error {}", sq.poly, sq.error.lower);

    let kink = TargetFunction::abs_shift(BigRational::new(1.into(), 2.into()));
    for n in [4, 16, 64] {
        let b = bernstein_approx(&kink, &unit, n, 10_001)?;
        println!("B_{n}(|t - 1/2|) grid error {:.6}", b.error.lower);
    }

    for eps in [0.2, 0.1, 0.05] {
        match density_witness(&kink, &unit, eps, 256, 1001)? {
            Some(w) => println!(
                "eps {eps}: degree {} reaches {:.4}",
                w.degree, w.error.lower
            ),
            None => println!("eps {eps}: no witness up to degree 256"),
        }
    }

    // Complex coordinates: a box in the plane of C[z, z*].
    let plane = Arc::new(parse_presentation(
        "algebra C; generator z : free;",
        Mode::Star,
    )?);
    let disc_box = parse_box("box { re(z) in [-1, 1] ; im(z) in [-1, 1] }", &plane)?;
    let w = bernstein_approx(&TargetFunction::exp(), &disc_box, 6, 41)?;
    println!(
        "exp(Re z + Im z) on the square: degree 6 error {:.5}",
        w.error.lower
    );
    Ok(())
}
