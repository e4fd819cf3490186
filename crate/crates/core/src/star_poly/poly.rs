use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{CRational, Scalar};

use super::monomial::Monomial;
use super::presentation::{add_term, Mode, Presentation, Terms};

/// An element of a finitely presented commutative (*-)algebra, stored as
/// its normal form under the presentation's rewrite rules.
#[derive(Clone, Debug)]
pub struct StarPoly {
    pres: Arc<Presentation>,
    terms: Terms,
}

impl PartialEq for StarPoly {
    fn eq(&self, other: &Self) -> bool {
        same_presentation(&self.pres, &other.pres) && self.terms == other.terms
    }
}

pub(crate) fn same_presentation(a: &Arc<Presentation>, b: &Arc<Presentation>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Brings a raw coefficient table into normal form.
pub fn normalize(terms: Terms, pres: &Arc<Presentation>) -> Result<StarPoly> {
    if terms.keys().any(|m| m.arity() != pres.arity()) {
        return Err(Error::InvalidArgument(
            "monomial does not range over the presentation's generators".into(),
        ));
    }
    Ok(StarPoly {
        terms: pres.reduce(terms)?,
        pres: Arc::clone(pres),
    })
}

impl StarPoly {
    pub fn zero(pres: &Arc<Presentation>) -> Self {
        StarPoly {
            pres: Arc::clone(pres),
            terms: Terms::new(),
        }
    }

    pub fn constant(pres: &Arc<Presentation>, c: CRational) -> Self {
        let mut terms = Terms::new();
        add_term(&mut terms, pres.one(), c);
        StarPoly {
            pres: Arc::clone(pres),
            terms,
        }
    }

    pub fn one(pres: &Arc<Presentation>) -> Self {
        Self::constant(pres, CRational::one())
    }

    /// The generator at `index`, normalized (it may itself be rewritten).
    pub fn generator(pres: &Arc<Presentation>, index: usize) -> Result<Self> {
        Self::monomial(
            pres,
            Monomial::generator(pres.arity(), index),
            CRational::one(),
        )
    }

    pub fn monomial(pres: &Arc<Presentation>, m: Monomial, c: CRational) -> Result<Self> {
        let mut terms = Terms::new();
        add_term(&mut terms, m, c);
        normalize(terms, pres)
    }

    pub fn from_terms<I>(pres: &Arc<Presentation>, items: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, CRational)>,
    {
        let mut terms = Terms::new();
        for (m, c) in items {
            add_term(&mut terms, m, c);
        }
        normalize(terms, pres)
    }

    /// Wraps a table without rewriting it. Used for relations themselves,
    /// which normalize to zero.
    pub(crate) fn raw(pres: &Arc<Presentation>, terms: Terms) -> Self {
        StarPoly {
            pres: Arc::clone(pres),
            terms,
        }
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn into_terms(self) -> Terms {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> CRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Largest exponent of each generator across all terms.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut out = vec![0; self.pres.arity()];
        for m in self.terms.keys() {
            for (o, &e) in out.iter_mut().zip(m.exponents()) {
                *o = (*o).max(e);
            }
        }
        out
    }

    fn check_same(&self, other: &StarPoly) -> Result<()> {
        if same_presentation(&self.pres, &other.pres) {
            Ok(())
        } else {
            Err(Error::MixedPresentations)
        }
    }

    // Sums and scalar multiples of normal forms are normal forms.

    pub fn add(&self, other: &StarPoly) -> Result<StarPoly> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c.clone());
        }
        Ok(StarPoly {
            pres: Arc::clone(&self.pres),
            terms,
        })
    }

    pub fn sub(&self, other: &StarPoly) -> Result<StarPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> StarPoly {
        self.scale(&CRational::from_int(-1))
    }

    pub fn scale(&self, k: &CRational) -> StarPoly {
        let terms = if k.is_zero() {
            Terms::new()
        } else {
            self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect()
        };
        StarPoly {
            pres: Arc::clone(&self.pres),
            terms,
        }
    }

    pub fn mul(&self, other: &StarPoly) -> Result<StarPoly> {
        self.check_same(other)?;
        let mut terms = Terms::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                add_term(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        normalize(terms, &self.pres)
    }

    pub fn pow(&self, e: u32) -> Result<StarPoly> {
        let mut acc = StarPoly::one(&self.pres);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Conjugates coefficients and replaces every generator by its adjoint
    /// partner.
    pub fn involute(&self) -> Result<StarPoly> {
        if self.pres.mode() != Mode::Star {
            return Err(Error::NoInvolution);
        }
        normalize(self.pres.involute_terms(&self.terms), &self.pres)
    }

    pub fn is_selfadjoint(&self) -> Result<bool> {
        Ok(self.involute()? == *self)
    }

    /// Same coefficient table reinterpreted over another presentation with
    /// the same number of generators, then normalized there.
    pub fn rebase(&self, target: &Arc<Presentation>) -> Result<StarPoly> {
        if target.arity() != self.pres.arity() {
            return Err(Error::InvalidArgument(format!(
                "cannot move a polynomial on {} generators to a presentation with {}",
                self.pres.arity(),
                target.arity()
            )));
        }
        normalize(self.terms.clone(), target)
    }

    /// Substitutes `values[i]` for generator `i`; exact when every value is
    /// exact.
    pub fn eval(&self, values: &[Scalar]) -> Scalar {
        debug_assert_eq!(values.len(), self.pres.arity());
        if let Some(exact) = values
            .iter()
            .map(Scalar::as_exact)
            .collect::<Option<Vec<_>>>()
        {
            let exact: Vec<CRational> = exact.into_iter().cloned().collect();
            return Scalar::Exact(self.eval_exact(&exact));
        }
        let vals: Vec<_> = values.iter().map(Scalar::to_c64).collect();
        Scalar::Float(self.eval_c64(&vals))
    }

    pub fn eval_exact(&self, values: &[CRational]) -> CRational {
        let maxe = self.max_exponents();
        let powers: Vec<Vec<CRational>> = values
            .iter()
            .zip(&maxe)
            .map(|(v, &e)| {
                let mut p = vec![CRational::one()];
                for k in 0..e as usize {
                    let next = &p[k] * v;
                    p.push(next);
                }
                p
            })
            .collect();
        let mut acc = CRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            acc += &t;
        }
        acc
    }

    pub fn eval_c64(&self, values: &[num_complex::Complex64]) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_c64();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= values[i].powu(e);
                }
            }
            acc += t;
        }
        acc
    }
}

impl fmt::Display for StarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pres.format_terms(&self.terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::star_poly::presentation::{Generator, Link};

    fn cx(relations: Vec<Terms>) -> Arc<Presentation> {
        Arc::new(
            Presentation::new(
                "A",
                Mode::Star,
                vec![Generator::selfadjoint("x")],
                relations,
            )
            .unwrap(),
        )
    }

    fn czz() -> Arc<Presentation> {
        Arc::new(
            Presentation::free(
                "C",
                Mode::Star,
                vec![
                    Generator {
                        name: "z".into(),
                        adjoint: false,
                        link: Link::Partner(1),
                    },
                    Generator {
                        name: "z".into(),
                        adjoint: true,
                        link: Link::Partner(0),
                    },
                ],
            )
            .unwrap(),
        )
    }

    fn m1(e: u32) -> Monomial {
        Monomial::from_exponents(vec![e])
    }

    #[test]
    fn difference_of_squares() {
        let p = cx(vec![]);
        let x = StarPoly::generator(&p, 0).unwrap();
        let one = StarPoly::one(&p);
        let prod = x.add(&one).unwrap().mul(&x.sub(&one).unwrap()).unwrap();
        assert_eq!(prod.to_string(), "1*x^2 - 1");
    }

    #[test]
    fn nilpotent_square_vanishes() {
        let p = cx(vec![[(m1(2), CRational::one())].into_iter().collect()]);
        let x = StarPoly::generator(&p, 0).unwrap();
        assert!(x.mul(&x).unwrap().is_zero());
        let cube = StarPoly::monomial(&p, m1(3), CRational::one()).unwrap();
        assert!(cube.is_zero());
    }

    #[test]
    fn square_to_one() {
        let rel: Terms = [(m1(2), CRational::one()), (m1(0), CRational::from_int(-1))]
            .into_iter()
            .collect();
        let p = cx(vec![rel]);
        let sq = StarPoly::monomial(&p, m1(2), CRational::one()).unwrap();
        assert_eq!(sq, StarPoly::one(&p));
    }

    #[test]
    fn z_plus_zbar_times_z_minus_zbar() {
        let p = czz();
        let z = StarPoly::generator(&p, 0).unwrap();
        let zb = StarPoly::generator(&p, 1).unwrap();
        let lhs = z.add(&zb).unwrap().mul(&z.sub(&zb).unwrap()).unwrap();
        // Term-by-term oracle: z² - z·z̄ + z̄·z - z̄² with the cross terms cancelling.
        let mut want = Terms::new();
        add_term(
            &mut want,
            Monomial::from_exponents(vec![2, 0]),
            CRational::one(),
        );
        add_term(
            &mut want,
            Monomial::from_exponents(vec![1, 1]),
            CRational::from_int(-1),
        );
        add_term(
            &mut want,
            Monomial::from_exponents(vec![1, 1]),
            CRational::one(),
        );
        add_term(
            &mut want,
            Monomial::from_exponents(vec![0, 2]),
            CRational::from_int(-1),
        );
        assert_eq!(lhs.terms(), &want);
        assert_eq!(lhs.to_string(), "1*z^2 - 1*adj(z)^2");
    }

    #[test]
    fn involution_conjugates_and_swaps() {
        let p = czz();
        let a = StarPoly::from_terms(
            &p,
            [
                (
                    Monomial::from_exponents(vec![1, 0]),
                    CRational::gaussian(2, 3),
                ),
                (
                    Monomial::from_exponents(vec![0, 1]),
                    CRational::gaussian(-1, 5),
                ),
            ],
        )
        .unwrap();
        let b = a.involute().unwrap();
        assert_eq!(
            b.coefficient(&Monomial::from_exponents(vec![0, 1])),
            CRational::gaussian(2, -3)
        );
        assert_eq!(
            b.coefficient(&Monomial::from_exponents(vec![1, 0])),
            CRational::gaussian(-1, -5)
        );
        let c = StarPoly::constant(&p, CRational::gaussian(0, 3));
        assert_eq!(
            c.involute().unwrap(),
            StarPoly::constant(&p, CRational::gaussian(0, -3))
        );
    }

    #[test]
    fn involution_requires_star_mode() {
        let p =
            Arc::new(Presentation::free("B", Mode::Algebra, vec![Generator::plain("z")]).unwrap());
        let z = StarPoly::generator(&p, 0).unwrap();
        assert_eq!(z.involute().unwrap_err(), Error::NoInvolution);
    }

    #[test]
    fn mixed_presentations_are_rejected() {
        let a = StarPoly::one(&cx(vec![]));
        let b = StarPoly::one(&czz());
        assert_eq!(a.mul(&b).unwrap_err(), Error::MixedPresentations);
        assert_eq!(a.add(&b).unwrap_err(), Error::MixedPresentations);
    }

    #[test]
    fn exact_evaluation() {
        let p = czz();
        let zzb =
            StarPoly::monomial(&p, Monomial::from_exponents(vec![1, 1]), CRational::one()).unwrap();
        let v = zzb.eval_exact(&[CRational::gaussian(1, 2), CRational::gaussian(1, -2)]);
        assert_eq!(v, CRational::from_int(5));
    }
}
