//! The free *-algebra functor F, the forgetful functor U, the unit
//! inclusion and the extension of homomorphisms along the adjunction.

use std::sync::Arc;

use gelfand_lab::parser::{parse_morphism, parse_presentation};
use gelfand_lab::star_poly::{extend_hom, free_star, underlying, unit_inclusion, Mode};

fn main() -> gelfand_lab::Result<()> {
    let cz = Arc::new(parse_presentation(
        "algebra B; generator z : free;",
        Mode::Algebra,
    )?);
    let fcz = Arc::new(free_star(&cz)?);
    let ufcz = Arc::new(underlying(&fcz)?);
    println!("A      = {cz}F(A)   = {fcz}U(F(A)) = {ufcz}");
    println!(
        "generators: {} -> {} -> {}",
        cz.arity(),
        fcz.arity(),
        ufcz.arity()
    );

    // ι: A → U(F(A)) sends z to z.
    let iota = unit_inclusion(&cz)?;
    println!("iota(z) = {}", iota.image(0));

    // An algebra map f: C[z] → U(C[x]) with z ↦ x^2 + i extends to a
    // *-homomorphism F(C[z]) → C[x] sending adj(z) to x^2 - i.
    let cx = Arc::new(parse_presentation(
        "algebra A; generator x : selfadjoint;",
        Mode::Star,
    )?);
    let ucx = Arc::new(underlying(&cx)?);
    let f = parse_morphism("morphism { z = x^2 + (0+1i) }", &cz, &ucx, false)?;
    let ext = extend_hom(&f, &cx)?;
    for (g, img) in ext.source().generators().iter().zip(ext.images()) {
        println!("f'({}) = {img}", g.display_name());
    }
    println!("f' is a *-homomorphism: {}", ext.is_star_hom()?.holds);

    // Restricting f' along ι gives back f.
    let restricted = ext.underlying()?.compose(&iota)?;
    println!("f' ∘ ι = f: {}", restricted.same_assignment(&f));
    Ok(())
}
