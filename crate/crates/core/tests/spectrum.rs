//! Characters, the transform, pushforward, the spectra of F and U, relative
//! compactness and the radical.

mod common;

use std::sync::Arc;

use proptest::prelude::*;

use gelfand_lab::parser::{parse_character, parse_morphism, parse_poly};
use gelfand_lab::scalar::{CRational, Scalar};
use gelfand_lab::spectrum::{
    extend_to_free, gelfand_eval, is_nilpotent, naturality_inclusion, pushforward,
    radical_vanishing_check, relative_compactness_check, restrict_from_free, search_characters,
    Character, CompactBox, GridSampler, RadicalVerdict, RationalSampler, Region, SampleSet,
    DEFAULT_UNBOUNDEDNESS_THRESHOLD,
};
use gelfand_lab::star_poly::{underlying, Mode, Morphism, StarPoly};
use gelfand_lab::Error;

use common::*;

fn exact(s: Scalar) -> CRational {
    match s {
        Scalar::Exact(v) => v,
        Scalar::Float(v) => panic!("expected an exact value, got {v}"),
    }
}

#[test]
fn validation_examples() {
    let cx = real_line();
    assert!(parse_character("x = 2.5", &cx).is_ok());
    match parse_character("x = (0+1i)", &cx) {
        Err(Error::CharacterRejected(v)) => assert_eq!(v.kind(), "reality"),
        other => panic!("expected a reality rejection, got {other:?}"),
    }
    let cz = complex_plane();
    assert!(parse_character("z = (1+2i) ; adj(z) = (1-2i)", &cz).is_ok());
    match parse_character("z = (1+2i) ; adj(z) = (1+2i)", &cz) {
        Err(Error::CharacterRejected(v)) => assert_eq!(v.kind(), "conjugacy"),
        other => panic!("expected a conjugacy rejection, got {other:?}"),
    }
    match parse_character("x = 1", &dual_numbers()) {
        Err(Error::CharacterRejected(v)) => assert_eq!(v.kind(), "relation"),
        other => panic!("expected a relation rejection, got {other:?}"),
    }
}

#[test]
fn transform_examples() {
    let cx = real_line();
    let p = parse_character("x = 2", &cx).unwrap();
    assert_eq!(
        exact(gelfand_eval(&parse_poly("x^2 + 1", &cx).unwrap(), &p).unwrap()),
        CRational::from_int(5)
    );
    let cz = complex_plane();
    let q = parse_character("z = (1+2i)", &cz).unwrap();
    assert_eq!(
        exact(gelfand_eval(&parse_poly("z*adj(z)", &cz).unwrap(), &q).unwrap()),
        CRational::from_int(5)
    );
    assert_eq!(
        exact(gelfand_eval(&StarPoly::one(&cz), &q).unwrap()),
        CRational::one()
    );
}

#[test]
fn pushforward_examples() {
    let cx = real_line();
    let f = parse_morphism("x = x^2 + 1", &cx, &cx, true).unwrap();
    let p = parse_character("x = 2", &cx).unwrap();
    assert_eq!(
        pushforward(&f, &p).unwrap(),
        parse_character("x = 5", &cx).unwrap()
    );
    assert_eq!(
        pushforward(&Morphism::identity(&cx).unwrap(), &p).unwrap(),
        p
    );

    // Δ_{g∘f}(p) = p∘g∘f, computed by substitution by hand: (g∘f)(z) = 2z + 2.
    let cz = pres("algebra B; generator z : free;", Mode::Algebra);
    let f = parse_morphism("z = 2*z", &cz, &cz, false).unwrap();
    let g = parse_morphism("z = z + 1", &cz, &cz, false).unwrap();
    let p = parse_character("z = 3", &cz).unwrap();
    let eight = parse_character("z = 8", &cz).unwrap();
    assert_eq!(pushforward(&g.compose(&f).unwrap(), &p).unwrap(), eight);
    assert_eq!(
        pushforward(&f, &pushforward(&g, &p).unwrap()).unwrap(),
        eight
    );
}

#[test]
fn naturality_examples() {
    let cx = real_line();
    let ucx = Arc::new(underlying(&cx).unwrap());
    let p = parse_character("x = 3", &cx).unwrap();
    let j = naturality_inclusion(&p).unwrap();
    assert_eq!(j, parse_character("x = 3", &ucx).unwrap());

    // z ↦ i is a character of U(C[x]) = C[z] with no preimage in Δ(C[x]).
    let i = parse_character("x = (0+1i)", &ucx).unwrap();
    assert!(matches!(
        parse_character("x = (0+1i)", &cx),
        Err(Error::CharacterRejected(_))
    ));
    assert_eq!(i.values().len(), 1);

    let f = parse_morphism("x = x^2", &cx, &cx, true).unwrap();
    let p = parse_character("x = 2", &cx).unwrap();
    let four = parse_character("x = 4", &ucx).unwrap();
    assert_eq!(
        naturality_inclusion(&pushforward(&f, &p).unwrap()).unwrap(),
        four
    );
    assert_eq!(
        pushforward(&f.underlying().unwrap(), &naturality_inclusion(&p).unwrap()).unwrap(),
        four
    );
}

#[test]
fn free_correspondence_example() {
    let cz = pres("algebra B; generator z : free;", Mode::Algebra);
    let p = parse_character("z = (1+2i)", &cz).unwrap();
    let q = extend_to_free(&p).unwrap();
    let expected = parse_character("z = (1+2i) ; adj(z) = (1-2i)", &complex_plane()).unwrap();
    assert!(q.presentation().structurally_eq(expected.presentation()));
    assert_eq!(q.values(), expected.values());
    assert_eq!(restrict_from_free(&q, &cz).unwrap(), p);
}

#[test]
fn compactness_examples() {
    let cz = complex_plane();
    let k = CompactBox::cube(&cz, -1.0, 1.0).unwrap();
    let z = parse_poly("z", &cz).unwrap();
    let v =
        relative_compactness_check(Region::Box(&k), &[z], DEFAULT_UNBOUNDEDNESS_THRESHOLD).unwrap();
    assert!(v.relatively_compact && !v.sampled);
    assert!(v.bounds[0].bound >= std::f64::consts::SQRT_2);
    assert!(v.bounds[0].bound <= std::f64::consts::SQRT_2 * (1.0 + 1e-9));

    let cx = real_line();
    let chars: Vec<Character> = (1..=100)
        .map(|k| Character::exact(&cx, vec![CRational::from_int(k)]).unwrap())
        .collect();
    let samples = SampleSet::new(&cx, chars).unwrap();
    let x = parse_poly("x", &cx).unwrap();
    // Values up to 100 stand in for unbounded growth below the default
    // threshold, so the threshold is set explicitly.
    let v = relative_compactness_check(Region::Samples(&samples), &[x], 50.0).unwrap();
    assert!(!v.relatively_compact && v.sampled);
    assert!(v.to_string().contains("at sampled resolution"));

    let one = StarPoly::one(&cx);
    let v = relative_compactness_check(
        Region::Samples(&samples),
        &[one],
        DEFAULT_UNBOUNDEDNESS_THRESHOLD,
    )
    .unwrap();
    assert!(v.relatively_compact);
    assert_eq!(v.bounds[0].bound, 1.0);
}

#[test]
fn nilpotency_examples() {
    let n = dual_numbers();
    assert_eq!(
        is_nilpotent(&parse_poly("x", &n).unwrap(), 4).unwrap(),
        Some(2)
    );
    let cx = real_line();
    assert_eq!(
        is_nilpotent(&parse_poly("x", &cx).unwrap(), 8).unwrap(),
        None
    );
    let ones = pres(
        "algebra I; generator x : selfadjoint; relation x^2 - 1;",
        Mode::Star,
    );
    let a = parse_poly("x - 1", &ones).unwrap();
    assert_eq!(a.pow(2).unwrap(), parse_poly("2 - 2*x", &ones).unwrap());
    assert_eq!(is_nilpotent(&a, 8).unwrap(), None);
}

#[test]
fn radical_examples() {
    let n = dual_numbers();
    let x = parse_poly("x", &n).unwrap();
    let sampler = GridSampler::new(&n, &GridSampler::default_candidates(), 1).unwrap();
    assert_eq!(sampler.valid().len(), 1);
    match radical_vanishing_check(&x, sampler, 50, 8).unwrap() {
        RadicalVerdict::ConsistentSampled {
            nilpotent_exponent, ..
        } => {
            assert_eq!(nilpotent_exponent, Some(2))
        }
        v => panic!("unexpected verdict {v:?}"),
    }

    let cx = real_line();
    let one = Character::exact(&cx, vec![CRational::one()]).unwrap();
    assert_eq!(
        exact(gelfand_eval(&parse_poly("x", &cx).unwrap(), &one).unwrap()),
        CRational::one()
    );
    let x = parse_poly("x", &cx).unwrap();
    assert!(
        !radical_vanishing_check(&x, RationalSampler::new(&cx, 3).unwrap(), 50, 8)
            .unwrap()
            .in_radical_consistent()
    );

    let zero = StarPoly::zero(&cx);
    match radical_vanishing_check(&zero, RationalSampler::new(&cx, 3).unwrap(), 10, 8).unwrap() {
        RadicalVerdict::ConsistentSampled {
            nilpotent_exponent, ..
        } => {
            assert_eq!(nilpotent_exponent, Some(1))
        }
        v => panic!("unexpected verdict {v:?}"),
    }
}

#[test]
fn candidate_search_finds_the_finite_spectrum() {
    let ones = pres(
        "algebra I; generator x : selfadjoint; relation x^2 - 1;",
        Mode::Star,
    );
    let found = search_characters(&ones, &GridSampler::default_candidates()).unwrap();
    let values: Vec<String> = found.iter().map(|c| c.describe()).collect();
    assert_eq!(values, ["char { x = -1 }", "char { x = 1 }"]);
}

#[test]
fn distinct_characters_are_separated_by_a_generator() {
    let cz = complex_plane();
    let mut rng = rng(21);
    for _ in 0..200 {
        let a = small_scalar(&mut rng);
        let b = small_scalar(&mut rng);
        if a == b {
            continue;
        }
        let p = Character::exact(&cz, vec![a.clone(), a.conj()]).unwrap();
        let q = Character::exact(&cz, vec![b.clone(), b.conj()]).unwrap();
        let separated = (0..cz.arity()).any(|g| {
            let x = StarPoly::generator(&cz, g).unwrap();
            gelfand_eval(&x, &p).unwrap() != gelfand_eval(&x, &q).unwrap()
        });
        assert!(separated);
    }
}

proptest! {
    #[test]
    fn transform_is_a_star_homomorphism(
        seed in any::<u64>(),
        (re, im) in (-20i64..=20, -20i64..=20),
        den in 1i64..=7,
    ) {
        let cz = complex_plane();
        let mut rng = rng(seed);
        let a = random_poly(&mut rng, &cz, 3, 4);
        let b = random_poly(&mut rng, &cz, 3, 4);
        let v = CRational::new(rational(re, den), rational(im, den));
        let p = Character::exact(&cz, vec![v.clone(), v.conj()]).unwrap();
        let vals = [v.clone(), v.conj()];
        let ah = exact(gelfand_eval(&a, &p).unwrap());
        prop_assert_eq!(&ah, &eval_oracle(&a, &vals));
        let bh = exact(gelfand_eval(&b, &p).unwrap());
        let abh = exact(gelfand_eval(&a.mul(&b).unwrap(), &p).unwrap());
        prop_assert_eq!(abh, &ah * &bh);
        let ash = exact(gelfand_eval(&a.involute().unwrap(), &p).unwrap());
        prop_assert_eq!(ash, ah.conj());
    }

    #[test]
    fn float_characters_agree_with_exact_ones(seed in any::<u64>(), re in -40i64..=40, im in -40i64..=40) {
        let cz = complex_plane();
        let mut rng = rng(seed);
        let a = random_poly(&mut rng, &cz, 3, 4);
        let v = CRational::new(rational(re, 8), rational(im, 8));
        let pe = Character::exact(&cz, vec![v.clone(), v.conj()]).unwrap();
        let c = v.to_c64();
        let pf = Character::float(&cz, vec![c, c.conj()]).unwrap();
        let e = gelfand_eval(&a, &pe).unwrap().to_c64();
        let f = gelfand_eval(&a, &pf).unwrap().to_c64();
        prop_assert!((e - f).norm() <= 1e-9 * (1.0 + e.norm()));
    }
}
