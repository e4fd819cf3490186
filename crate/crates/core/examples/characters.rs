//! Characters, the Gel'fand transform, pushforward along morphisms and the
//! reality and conjugacy constraints on the spectrum of a *-algebra.

use std::sync::Arc;

use gelfand_lab::parser::{parse_character, parse_morphism, parse_poly, parse_presentation};
use gelfand_lab::scalar::CRational;
use gelfand_lab::spectrum::{gelfand_eval, pushforward, search_characters};
use gelfand_lab::star_poly::Mode;
use gelfand_lab::Error;

fn main() -> gelfand_lab::Result<()> {
    let cx = Arc::new(parse_presentation(
        "algebra A; generator x : selfadjoint;",
        Mode::Star,
    )?);
    let cz = Arc::new(parse_presentation(
        "algebra C; generator z : free;",
        Mode::Star,
    )?);

    let p = parse_character("char { x = 5/2 }", &cx)?;
    println!("{} accepted", p.describe());
    match parse_character("char { x = (0+1i) }", &cx) {
        Err(Error::CharacterRejected(v)) => println!("x = i rejected: {} ({v})", v.kind()),
        other => println!("unexpected: {other:?}"),
    }
    match parse_character("char { z = 1 ; adj(z) = 2 }", &cz) {
        Err(Error::CharacterRejected(v)) => println!("adj(z) ≠ conj(z) rejected: {}", v.kind()),
        other => println!("unexpected: {other:?}"),
    }

    // The transform is a *-homomorphism into functions on the spectrum.
    let q = parse_character("char { z = (1+2i) }", &cz)?;
    let a = parse_poly("z^2 + 3*adj(z)", &cz)?;
    println!("â(q)      = {}", gelfand_eval(&a, &q)?);
    println!("(a*)^(q)  = {}", gelfand_eval(&a.involute()?, &q)?);

    // Pushforward: a character of the target pulled back along f.
    let f = parse_morphism("morphism { x = z + adj(z) }", &cx, &cz, true)?;
    println!("f_*(q) = {}", pushforward(&f, &q)?.describe());

    // Characters with relations are found by validating candidates.
    let circle_points = Arc::new(parse_presentation(
        "algebra I; generator x : selfadjoint; relation x^2 - 1;",
        Mode::Star,
    )?);
    let candidates: Vec<CRational> = (-2..=2).map(CRational::from_int).collect();
    for c in search_characters(&circle_points, &candidates)? {
        println!("spectrum point of x^2 = 1: {}", c.describe());
    }
    Ok(())
}
