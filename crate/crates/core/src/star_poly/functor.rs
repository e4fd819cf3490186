//! The free *-algebra functor F and the forgetful functor U, acting on
//! presentations.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::monomial::Monomial;
use super::morphism::Morphism;
use super::poly::StarPoly;
use super::presentation::{Generator, Link, Mode, Presentation, Terms};
use crate::scalar::CRational;

/// `F(A)`: every generator `g` of an algebra-mode presentation gains a fresh
/// adjoint partner `adj(g)`, placed right after it. Each relation is kept
/// and its formal involute added.
pub fn free_star(pres: &Presentation) -> Result<Presentation> {
    if pres.mode() != Mode::Algebra {
        return Err(Error::InvalidArgument(
            "free_star expects an algebra-mode presentation".into(),
        ));
    }
    let n = pres.arity();
    let mut generators = Vec::with_capacity(2 * n);
    for (i, g) in pres.generators().iter().enumerate() {
        generators.push(Generator {
            name: g.name.clone(),
            adjoint: false,
            link: Link::Partner(2 * i + 1),
        });
        generators.push(Generator {
            name: g.name.clone(),
            adjoint: true,
            link: Link::Partner(2 * i),
        });
    }
    let map = free_index_map(n);
    let relations: Vec<Terms> = pres
        .relations()
        .iter()
        .map(|r| reindex_terms(r, &map, 2 * n))
        .collect();
    // Presentation::new adds the involutes in star mode.
    Presentation::new(pres.name(), Mode::Star, generators, relations)
}

/// `U(A)`: adjoint links are erased; generators and relations are kept.
/// Adjoint partners become plain generators named `<g>_adj`.
pub fn underlying(pres: &Presentation) -> Result<Presentation> {
    if pres.mode() != Mode::Star {
        return Err(Error::InvalidArgument(
            "underlying expects a star-algebra presentation".into(),
        ));
    }
    let mut taken: HashSet<String> = pres
        .generators()
        .iter()
        .filter(|g| !g.adjoint)
        .map(|g| g.name.clone())
        .collect();
    let generators = pres
        .generators()
        .iter()
        .map(|g| {
            let name = if g.adjoint {
                let mut candidate = format!("{}_adj", g.name);
                let mut k = 2;
                while taken.contains(&candidate) {
                    candidate = format!("{}_adj{}", g.name, k);
                    k += 1;
                }
                taken.insert(candidate.clone());
                candidate
            } else {
                g.name.clone()
            };
            Generator::plain(name)
        })
        .collect();
    Presentation::new(pres.name(), Mode::Algebra, generators, pres.relations())
}

/// The unit of the adjunction, `ι_A: A → U(F(A))`, sending generator `i` to
/// generator `2i`.
pub fn unit_inclusion(pres: &Arc<Presentation>) -> Result<Morphism> {
    let uf = Arc::new(underlying(&free_star(pres)?)?);
    let images = (0..pres.arity())
        .map(|i| StarPoly::generator(&uf, 2 * i))
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(Arc::clone(pres), uf, images, false)
}

fn free_index_map(n: usize) -> Vec<usize> {
    (0..n).map(|i| 2 * i).collect()
}

fn reindex_terms(t: &Terms, map: &[usize], arity: usize) -> Terms {
    t.iter()
        .map(|(m, c): (&Monomial, &CRational)| (m.reindex(map, arity), c.clone()))
        .collect()
}
