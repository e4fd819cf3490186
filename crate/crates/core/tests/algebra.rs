//! Presentations, polynomial arithmetic, the involution, the functors F and
//! U, and morphisms.

mod common;

use std::sync::Arc;

use proptest::prelude::*;

use gelfand_lab::parser::{format_poly, parse_morphism, parse_poly, parse_presentation};
use gelfand_lab::scalar::CRational;
use gelfand_lab::star_poly::{
    extend_hom, free_star, underlying, Link, Mode, Monomial, Morphism, Presentation, StarPoly,
};
use gelfand_lab::Error;

use common::*;

fn poly(text: &str, p: &Arc<Presentation>) -> StarPoly {
    parse_poly(text, p).unwrap()
}

#[test]
fn presentation_examples() {
    let cx = real_line();
    assert_eq!(cx.arity(), 1);
    assert_eq!(cx.generators()[0].link, Link::SelfAdjoint);

    let cz = pres("algebra B; generator z : free;", Mode::Algebra);
    assert_eq!(cz.mode(), Mode::Algebra);
    assert_eq!(cz.arity(), 1);

    let n = dual_numbers();
    assert!(n.has_relations());
}

#[test]
fn presentation_errors() {
    let err = |text: &str, mode| parse_presentation(text, mode).unwrap_err();
    assert!(matches!(
        err("algebra A; generator x, x : selfadjoint;", Mode::Star),
        Error::DuplicateGenerator(_)
    ));
    assert!(matches!(
        err(
            "algebra A; generator x : selfadjoint; relation y;",
            Mode::Star
        ),
        Error::UnknownGenerator(_)
    ));
    assert!(matches!(
        err("algebra A; generator x : selfadjoint;", Mode::Algebra),
        Error::SelfAdjointInAlgebraMode(_)
    ));
    match err("algebra A;\ngenerator x selfadjoint;", Mode::Star) {
        Error::Syntax { line, .. } => assert_eq!(line, 2),
        e => panic!("expected a syntax error, got {e:?}"),
    }
}

#[test]
fn polynomial_literals() {
    let cx = real_line();
    let a = poly("(1/2 + 3i)*x^2 + 1", &cx);
    assert_eq!(a.terms().len(), 2);
    assert_eq!(
        a.coefficient(&Monomial::from_exponents(vec![2])),
        CRational::new(rational(1, 2), rational(3, 1))
    );
    assert_eq!(
        a.coefficient(&Monomial::from_exponents(vec![0])),
        CRational::one()
    );

    let cz = complex_plane();
    let b = poly("adj(z)*z", &cz);
    assert_eq!(b.terms().len(), 1);
    assert_eq!(
        b.coefficient(&Monomial::from_exponents(vec![1, 1])),
        CRational::one()
    );

    assert!(poly("x^2", &dual_numbers()).is_zero());
    assert!(matches!(
        parse_poly(
            "adj(z)",
            &pres("algebra B; generator z : free;", Mode::Algebra)
        ),
        Err(Error::Syntax { .. })
    ));
    assert!(matches!(
        parse_poly("y", &cx),
        Err(Error::UnknownGenerator(_))
    ));
}

#[test]
fn canonical_spelling() {
    let cx = real_line();
    assert_eq!(format_poly(&StarPoly::zero(&cx)), "0");
    assert_eq!(format_poly(&poly("1 - x", &cx)), "-1*x + 1");
}

#[test]
fn normal_forms() {
    assert!(poly("x^3", &dual_numbers()).is_zero());
    let ones = pres(
        "algebra I; generator x : selfadjoint; relation x^2 - 1;",
        Mode::Star,
    );
    assert_eq!(poly("x^2", &ones), StarPoly::one(&ones));
    let cz = complex_plane();
    assert_eq!(poly("z*adj(z)", &cz).to_string(), "1*z*adj(z)");
}

#[test]
fn products() {
    let cx = real_line();
    assert_eq!(
        poly("x + 1", &cx).mul(&poly("x - 1", &cx)).unwrap(),
        poly("x^2 - 1", &cx)
    );
    let n = dual_numbers();
    assert!(poly("x", &n).mul(&poly("x", &n)).unwrap().is_zero());

    // (z + z*)(z − z*) expanded term by term.
    let cz = complex_plane();
    let lhs = poly("z + adj(z)", &cz)
        .mul(&poly("z - adj(z)", &cz))
        .unwrap();
    let z = [1, 0];
    let zs = [0, 1];
    let mut terms = Vec::new();
    for (a, sa) in [(z, 1), (zs, 1)] {
        for (b, sb) in [(z, 1), (zs, -1)] {
            let m = Monomial::from_exponents(vec![a[0] + b[0], a[1] + b[1]]);
            terms.push((m, CRational::from_int(sa * sb)));
        }
    }
    assert_eq!(lhs, StarPoly::from_terms(&cz, terms).unwrap());
    assert_eq!(lhs, poly("z^2 - adj(z)^2", &cz));
}

#[test]
fn involution_examples() {
    let cx = real_line();
    assert_eq!(poly("3i", &cx).involute().unwrap(), poly("-3i", &cx));
    assert_eq!(
        poly("(1+2i) + (3-1i)*x + 5i*x^3", &cx).involute().unwrap(),
        poly("(1-2i) + (3+1i)*x - 5i*x^3", &cx)
    );
    let cz = complex_plane();
    assert_eq!(
        poly("(2+1i)*z + (1/3 - 4i)*adj(z)", &cz)
            .involute()
            .unwrap(),
        poly("(2-1i)*adj(z) + (1/3 + 4i)*z", &cz)
    );
    assert!(matches!(
        poly("z", &pres("algebra B; generator z : free;", Mode::Algebra)).involute(),
        Err(Error::NoInvolution)
    ));
}

#[test]
fn functor_examples() {
    let cz = pres("algebra B; generator z : free;", Mode::Algebra);
    assert!(free_star(&cz).unwrap().structurally_eq(&complex_plane()));

    let czw = pres("algebra D; generator z, w : free;", Mode::Algebra);
    let f = free_star(&czw).unwrap();
    let names: Vec<String> = f.generators().iter().map(|g| g.display_name()).collect();
    assert_eq!(names, ["z", "adj(z)", "w", "adj(w)"]);

    let nil = pres(
        "algebra M; generator z : free; relation z^2;",
        Mode::Algebra,
    );
    let fnil = Arc::new(free_star(&nil).unwrap());
    assert!(poly("z^2", &fnil).is_zero());
    assert!(poly("adj(z)^2", &fnil).is_zero());
    assert!(!poly("z*adj(z)", &fnil).is_zero());

    let u = underlying(&real_line()).unwrap();
    assert!(u.structurally_eq(&cz));
    assert!(underlying(&complex_plane()).unwrap().structurally_eq(&czw));

    // UF is not the identity.
    assert_eq!(underlying(&free_star(&cz).unwrap()).unwrap().arity(), 2);
}

#[test]
fn extend_hom_examples() {
    let cz = pres("algebra B; generator z : free;", Mode::Algebra);
    let cx = real_line();
    let ucx = Arc::new(underlying(&cx).unwrap());

    let f = parse_morphism("z = x", &cz, &ucx, false).unwrap();
    let ext = extend_hom(&f, &cx).unwrap();
    assert_eq!(ext.image(1), &poly("x", &cx));

    let f = parse_morphism("z = (0+1i)*x", &cz, &ucx, false).unwrap();
    let ext = extend_hom(&f, &cx).unwrap();
    assert_eq!(ext.image(1), &poly("(0-1i)*x", &cx));

    let plane = complex_plane();
    let uplane = Arc::new(underlying(&plane).unwrap());
    let f = parse_morphism("z = z*z_adj", &cz, &uplane, false).unwrap();
    let ext = extend_hom(&f, &plane).unwrap();
    assert_eq!(ext.image(0), ext.image(1));
    assert!(ext.is_star_hom().unwrap().holds);
}

#[test]
fn star_hom_examples() {
    let cx = real_line();
    assert!(
        Morphism::identity(&cx)
            .unwrap()
            .is_star_hom()
            .unwrap()
            .holds
    );
    let cz = complex_plane();
    let f = parse_morphism("x = z", &cx, &cz, false).unwrap();
    let check = f.is_star_hom().unwrap();
    assert!(!check.holds);
    assert_eq!(check.witness, Some(0));
    assert!(matches!(
        parse_morphism("x = z", &cx, &cz, true),
        Err(Error::NotStarHom(_))
    ));
    assert!(
        parse_morphism("x = z + adj(z)", &cx, &cz, true)
            .unwrap()
            .is_star_hom()
            .unwrap()
            .holds
    );
}

#[test]
fn morphisms_must_respect_relations() {
    let n = dual_numbers();
    let cx = real_line();
    assert!(matches!(
        parse_morphism("x = x", &n, &cx, false),
        Err(Error::InvalidMorphism(_))
    ));
    assert!(parse_morphism("x = 0", &n, &cx, false).is_ok());
}

/// Exponents and a complex rational `a/b + (c/d)i` per term.
type RawTerms = Vec<(Vec<u32>, (i64, i64, i64, i64))>;

/// Coefficient tables of small random polynomials over one presentation.
fn terms_strategy(arity: usize) -> impl Strategy<Value = RawTerms> {
    prop::collection::vec(
        (
            prop::collection::vec(0u32..4, arity),
            (-9i64..=9, 1i64..=6, -9i64..=9, 1i64..=6),
        ),
        0..6,
    )
}

fn build(p: &Arc<Presentation>, raw: RawTerms) -> StarPoly {
    let terms: Vec<(Monomial, CRational)> = raw
        .into_iter()
        .map(|(e, (a, b, c, d))| {
            (
                Monomial::from_exponents(e),
                CRational::new(rational(a, b), rational(c, d)),
            )
        })
        .collect();
    StarPoly::from_terms(p, terms).unwrap()
}

proptest! {
    #[test]
    fn format_parse_round_trip(raw in terms_strategy(2)) {
        for p in [complex_plane(), pres("algebra D; generator z, w : free;", Mode::Algebra)] {
            let a = build(&p, raw.clone());
            let back = parse_poly(&format_poly(&a), &p).unwrap();
            prop_assert_eq!(back.terms(), a.terms());
        }
    }

    #[test]
    fn involution_is_an_antilinear_involutive_homomorphism(
        ra in terms_strategy(2),
        rb in terms_strategy(2),
        (lr, li) in (-5i64..=5, -5i64..=5),
    ) {
        let p = complex_plane();
        let a = build(&p, ra);
        let b = build(&p, rb);
        let l = CRational::gaussian(lr, li);
        prop_assert_eq!(a.involute().unwrap().involute().unwrap(), a.clone());
        prop_assert_eq!(
            a.mul(&b).unwrap().involute().unwrap(),
            a.involute().unwrap().mul(&b.involute().unwrap()).unwrap()
        );
        prop_assert_eq!(a.scale(&l).involute().unwrap(), a.involute().unwrap().scale(&l.conj()));
    }

    #[test]
    fn reduction_is_compatible_with_products(ra in terms_strategy(1), rb in terms_strategy(1)) {
        // In C[x]/(x² - 1) every element is a + b·x; products agree with
        // arithmetic in the split algebra evaluated at x = ±1.
        let p = pres("algebra I; generator x : selfadjoint; relation x^2 - 1;", Mode::Star);
        let a = build(&p, ra);
        let b = build(&p, rb);
        let ab = a.mul(&b).unwrap();
        prop_assert!(ab.degree().unwrap_or(0) <= 1);
        for v in [CRational::one(), -CRational::one()] {
            let vals = [v];
            prop_assert_eq!(
                eval_oracle(&ab, &vals),
                &eval_oracle(&a, &vals) * &eval_oracle(&b, &vals)
            );
        }
    }
}
