//! Nilpotent elements vanish on the whole spectrum; a non-nilpotent
//! element of a polynomial algebra has a sampled nonzero witness.

use std::sync::Arc;

use gelfand_lab::parser::{parse_poly, parse_presentation};
use gelfand_lab::spectrum::{
    is_nilpotent, radical_vanishing_check, GridSampler, RadicalVerdict, RationalSampler,
};
use gelfand_lab::star_poly::Mode;

fn main() -> gelfand_lab::Result<()> {
    let dual = Arc::new(parse_presentation(
        "algebra N; generator x : selfadjoint; relation x^2;",
        Mode::Star,
    )?);
    let x = parse_poly("x", &dual)?;
    println!("x nilpotent in C[x]/(x^2): {:?}", is_nilpotent(&x, 16)?);
    let sampler = GridSampler::new(&dual, &GridSampler::default_candidates(), 7)?;
    match radical_vanishing_check(&x, sampler, 10_000, 16)? {
        RadicalVerdict::ConsistentSampled { samples, .. } => {
            println!("x̂ = 0 on all {samples} sampled characters")
        }
        RadicalVerdict::NotInRadical { witness, .. } => {
            println!("unexpected witness {}", witness.describe())
        }
    }

    let line = Arc::new(parse_presentation(
        "algebra A; generator x : selfadjoint;",
        Mode::Star,
    )?);
    let x = parse_poly("x", &line)?;
    println!("x nilpotent in C[x]: {:?}", is_nilpotent(&x, 16)?);
    match radical_vanishing_check(&x, RationalSampler::new(&line, 7)?, 100, 16)? {
        RadicalVerdict::NotInRadical { witness, value } => {
            println!("witness {} with x̂ = {value}", witness.describe())
        }
        RadicalVerdict::ConsistentSampled { .. } => println!("no witness found"),
    }
    Ok(())
}
