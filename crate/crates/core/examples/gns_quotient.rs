//! A state supported on two points has a degenerate Gram matrix; the GNS
//! space is the quotient by its null space and is two-dimensional.

use std::sync::Arc;

use gelfand_lab::parser::{parse_presentation, parse_state};
use gelfand_lab::star_poly::Mode;
use gelfand_lab::states::{make_state, multiplication_operator, GnsModel};

fn main() -> gelfand_lab::Result<()> {
    let line = Arc::new(parse_presentation(
        "algebra A; generator x : selfadjoint;",
        Mode::Star,
    )?);
    let spec = parse_state("atomic { (x=1): 1/2 ; (x=-1): 1/2 }", &line)?;
    let model = GnsModel::build(&make_state(&line, spec)?, 4)?;
    println!("rank {:?}", model.rank());
    for v in model.exact_null_space().unwrap_or_default() {
        println!("null: {}", model.polynomial(v)?);
    }
    let m = multiplication_operator(&model, 0)?;
    println!("x acts as {m}");
    Ok(())
}
