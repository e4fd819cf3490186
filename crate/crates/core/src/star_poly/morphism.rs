use std::sync::Arc;

use crate::error::{Error, Result};

use super::functor::{free_star, underlying};
use super::poly::{same_presentation, StarPoly};
use super::presentation::{Mode, Presentation};

/// A unital algebra homomorphism between presentations, given by the image
/// of every source generator. The empty monomial always maps to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Morphism {
    source: Arc<Presentation>,
    target: Arc<Presentation>,
    images: Vec<StarPoly>,
    star: bool,
}

/// Outcome of [`Morphism::is_star_hom`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StarHomCheck {
    pub holds: bool,
    /// First source generator `g` with `f(g)* ≠ f(g*)`.
    pub witness: Option<usize>,
}

impl Morphism {
    /// Checks that every source relation maps to zero and, when `star` is
    /// set, that the assignment commutes with the involution.
    pub fn new(
        source: Arc<Presentation>,
        target: Arc<Presentation>,
        images: Vec<StarPoly>,
        star: bool,
    ) -> Result<Self> {
        if images.len() != source.arity() {
            return Err(Error::InvalidMorphism(format!(
                "{} images given for {} generators",
                images.len(),
                source.arity()
            )));
        }
        if images
            .iter()
            .any(|p| !same_presentation(p.presentation(), &target))
        {
            return Err(Error::InvalidMorphism(
                "image polynomial over a different presentation than the target".into(),
            ));
        }
        let f = Morphism {
            source,
            target,
            images,
            star,
        };
        for rel in f.source.relations() {
            let r = StarPoly::raw(&f.source, rel.clone());
            let img = f.apply(&r)?;
            if !img.is_zero() {
                return Err(Error::InvalidMorphism(format!(
                    "relation `{}` maps to `{}` instead of 0",
                    f.source.format_terms(&rel),
                    img
                )));
            }
        }
        if star {
            if f.source.mode() != Mode::Star || f.target.mode() != Mode::Star {
                return Err(Error::InvalidMorphism(
                    "a *-homomorphism needs star-algebra presentations on both sides".into(),
                ));
            }
            let check = f.is_star_hom()?;
            if let Some(w) = check.witness {
                return Err(Error::NotStarHom(f.source.generators()[w].display_name()));
            }
        }
        Ok(f)
    }

    pub fn identity(pres: &Arc<Presentation>) -> Result<Self> {
        let images = (0..pres.arity())
            .map(|i| StarPoly::generator(pres, i))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(
            Arc::clone(pres),
            Arc::clone(pres),
            images,
            pres.mode() == Mode::Star,
        )
    }

    pub fn source(&self) -> &Arc<Presentation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Presentation> {
        &self.target
    }

    pub fn images(&self) -> &[StarPoly] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> &StarPoly {
        &self.images[generator]
    }

    pub fn is_star(&self) -> bool {
        self.star
    }

    /// `f(a)` by substitution of the generator images.
    pub fn apply(&self, a: &StarPoly) -> Result<StarPoly> {
        if !same_presentation(a.presentation(), &self.source) {
            return Err(Error::MixedPresentations);
        }
        let maxe = a.max_exponents();
        let mut powers: Vec<Vec<StarPoly>> = Vec::with_capacity(maxe.len());
        for (img, &e) in self.images.iter().zip(&maxe) {
            let mut p = vec![StarPoly::one(&self.target)];
            for k in 0..e as usize {
                let next = p[k].mul(img)?;
                p.push(next);
            }
            powers.push(p);
        }
        let mut acc = StarPoly::zero(&self.target);
        for (m, c) in a.terms() {
            let mut t = StarPoly::constant(&self.target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[i][e as usize])?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Morphism) -> Result<Morphism> {
        if !same_presentation(&inner.target, &self.source) {
            return Err(Error::InvalidMorphism(
                "composition of non-composable morphisms".into(),
            ));
        }
        let images = inner
            .images
            .iter()
            .map(|p| self.apply(p))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(
            Arc::clone(&inner.source),
            Arc::clone(&self.target),
            images,
            self.star && inner.star,
        )
    }

    /// Checks `f(g)* = f(g*)` on every generator, which suffices because the
    /// generators generate.
    pub fn is_star_hom(&self) -> Result<StarHomCheck> {
        if self.source.mode() != Mode::Star || self.target.mode() != Mode::Star {
            return Ok(StarHomCheck {
                holds: false,
                witness: None,
            });
        }
        for g in 0..self.source.arity() {
            let partner = self.source.partner(g).expect("star mode");
            if self.images[g].involute()? != self.images[partner] {
                return Ok(StarHomCheck {
                    holds: false,
                    witness: Some(g),
                });
            }
        }
        Ok(StarHomCheck {
            holds: true,
            witness: None,
        })
    }

    /// `U(f)`: the same assignment between the underlying presentations.
    pub fn underlying(&self) -> Result<Morphism> {
        let source = Arc::new(underlying(&self.source)?);
        let target = Arc::new(underlying(&self.target)?);
        let images = self
            .images
            .iter()
            .map(|p| p.rebase(&target))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(source, target, images, false)
    }

    /// Whether both morphisms assign identical coefficient tables to every
    /// generator (presentations compared up to generator names).
    pub fn same_assignment(&self, other: &Morphism) -> bool {
        self.source.structurally_eq(&other.source)
            && self.target.structurally_eq(&other.target)
            && self
                .images
                .iter()
                .zip(&other.images)
                .all(|(a, b)| a.terms() == b.terms())
    }
}

/// The universal property of `F ⊣ U`: an algebra homomorphism
/// `f: A → U(B)` extends uniquely to a *-homomorphism `F(A) → B`, sending
/// `g ↦ f(g)` and `adj(g) ↦ f(g)*`.
pub fn extend_hom(f: &Morphism, target: &Arc<Presentation>) -> Result<Morphism> {
    if target.mode() != Mode::Star {
        return Err(Error::InvalidMorphism(
            "extension target must be a star-algebra presentation".into(),
        ));
    }
    if f.source.mode() != Mode::Algebra {
        return Err(Error::InvalidMorphism(
            "extension source must be an algebra-mode presentation".into(),
        ));
    }
    if !f.target.structurally_eq(&underlying(target)?) {
        return Err(Error::InvalidMorphism(
            "morphism target is not the underlying algebra of the extension target".into(),
        ));
    }
    let free = Arc::new(free_star(&f.source)?);
    let mut images = Vec::with_capacity(free.arity());
    for img in &f.images {
        let moved = img.rebase(target)?;
        let adj = moved.involute()?;
        images.push(moved);
        images.push(adj);
    }
    Morphism::new(free, Arc::clone(target), images, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::CRational;
    use crate::star_poly::presentation::Generator;
    use crate::star_poly::Monomial;

    fn cx() -> Arc<Presentation> {
        Arc::new(Presentation::free("A", Mode::Star, vec![Generator::selfadjoint("x")]).unwrap())
    }

    fn cz() -> Arc<Presentation> {
        Arc::new(Presentation::free("B", Mode::Algebra, vec![Generator::plain("z")]).unwrap())
    }

    #[test]
    fn extend_from_real_line() {
        let b = cx();
        let ub = Arc::new(underlying(&b).unwrap());
        let f = Morphism::new(
            cz(),
            Arc::clone(&ub),
            vec![StarPoly::generator(&ub, 0).unwrap()],
            false,
        )
        .unwrap();
        let fe = extend_hom(&f, &b).unwrap();
        let x = StarPoly::generator(&b, 0).unwrap();
        assert_eq!(fe.image(0), &x);
        assert_eq!(fe.image(1), &x);
        assert!(fe.is_star_hom().unwrap().holds);
    }

    #[test]
    fn extend_conjugates_scalar() {
        let b = cx();
        let ub = Arc::new(underlying(&b).unwrap());
        let ix =
            StarPoly::monomial(&ub, Monomial::from_exponents(vec![1]), CRational::i()).unwrap();
        let f = Morphism::new(cz(), Arc::clone(&ub), vec![ix], false).unwrap();
        let fe = extend_hom(&f, &b).unwrap();
        assert_eq!(fe.image(1).to_string(), "(0-1i)*x");
    }

    #[test]
    fn identity_is_star() {
        let id = Morphism::identity(&cx()).unwrap();
        assert!(id.is_star_hom().unwrap().holds);
    }

    #[test]
    fn rejects_relation_violation() {
        let rel = [(Monomial::from_exponents(vec![2]), CRational::one())]
            .into_iter()
            .collect();
        let nil = Arc::new(
            Presentation::new(
                "N",
                Mode::Star,
                vec![Generator::selfadjoint("x")],
                vec![rel],
            )
            .unwrap(),
        );
        let target = cx();
        let img = StarPoly::generator(&target, 0).unwrap();
        let err = Morphism::new(nil, target, vec![img], false).unwrap_err();
        assert!(matches!(err, Error::InvalidMorphism(_)));
    }

    #[test]
    fn star_flag_is_verified() {
        let b = cx();
        let i = StarPoly::constant(&b, CRational::i());
        let err = Morphism::new(Arc::clone(&b), b, vec![i], true).unwrap_err();
        assert_eq!(err, Error::NotStarHom("x".into()));
    }
}
