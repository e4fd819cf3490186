//! Test-only generators and independent oracles.

#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gelfand_lab::parser::parse_presentation;
use gelfand_lab::scalar::CRational;
use gelfand_lab::star_poly::{Mode, Monomial, Presentation, StarPoly};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn pres(text: &str, mode: Mode) -> Arc<Presentation> {
    Arc::new(parse_presentation(text, mode).expect("test presentation parses"))
}

/// `C[x]` with `x` self-adjoint.
pub fn real_line() -> Arc<Presentation> {
    pres("algebra A; generator x : selfadjoint;", Mode::Star)
}

/// `C[z, z*]`.
pub fn complex_plane() -> Arc<Presentation> {
    pres("algebra C; generator z : free;", Mode::Star)
}

/// `C[x]/(x²)` with `x` self-adjoint.
pub fn dual_numbers() -> Arc<Presentation> {
    pres(
        "algebra N; generator x : selfadjoint; relation x^2;",
        Mode::Star,
    )
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational with numerator in `[-5, 5]` and denominator in `[1, 4]`.
pub fn small_rational(rng: &mut ChaCha8Rng) -> BigRational {
    rational(rng.random_range(-5..=5), rng.random_range(1..=4))
}

pub fn small_scalar(rng: &mut ChaCha8Rng) -> CRational {
    let re = small_rational(rng);
    let im = if rng.random_bool(0.5) {
        small_rational(rng)
    } else {
        BigRational::zero()
    };
    CRational::new(re, im)
}

/// Random polynomial with up to `max_terms` monomials of total degree
/// at most `max_degree`, normalized in `pres`.
pub fn random_poly(
    rng: &mut ChaCha8Rng,
    pres: &Arc<Presentation>,
    max_degree: u32,
    max_terms: usize,
) -> StarPoly {
    let n = rng.random_range(0..=max_terms);
    let terms: Vec<(Monomial, CRational)> = (0..n)
        .map(|_| {
            let mut exps = vec![0u32; pres.arity()];
            let mut budget = rng.random_range(0..=max_degree);
            while budget > 0 {
                let g = rng.random_range(0..pres.arity());
                exps[g] += 1;
                budget -= 1;
            }
            (Monomial::from_exponents(exps), small_scalar(rng))
        })
        .collect();
    StarPoly::from_terms(pres, terms).expect("random terms normalize")
}

/// Independent evaluation `Σ c · Π v_g^e` of the coefficient table.
pub fn eval_oracle(a: &StarPoly, values: &[CRational]) -> CRational {
    let mut acc = CRational::zero();
    for (m, c) in a.terms() {
        let mut term = c.clone();
        for (g, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                term = &term * &values[g];
            }
        }
        acc = &acc + &term;
    }
    acc
}

/// Raw moments `m_k` of the standard Gaussian from `m_0 = 1`, `m_1 = 0`,
/// `m_k = (k - 1) m_{k-2}`.
pub fn gaussian_moments(n: usize) -> Vec<BigRational> {
    let mut m = vec![BigRational::one(), BigRational::zero()];
    for k in 2..n {
        let next = &m[k - 2] * BigRational::from_integer(BigInt::from(k as i64 - 1));
        m.push(next);
    }
    m.truncate(n);
    m
}

/// Monic orthogonal polynomials of degree `0..=d` for the Hankel inner
/// product `⟨x^i, x^j⟩ = m_{i+j}`, by exact Gram–Schmidt on monomials.
/// Returns coefficient vectors (ascending powers) and squared norms.
pub fn hankel_gram_schmidt(
    moments: &[BigRational],
    d: usize,
) -> Vec<(Vec<BigRational>, BigRational)> {
    let inner = |p: &[BigRational], q: &[BigRational]| -> BigRational {
        let mut s = BigRational::zero();
        for (i, a) in p.iter().enumerate() {
            for (j, b) in q.iter().enumerate() {
                s += a * b * &moments[i + j];
            }
        }
        s
    };
    let mut out: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    for n in 0..=d {
        let mut v = vec![BigRational::zero(); d + 1];
        v[n] = BigRational::one();
        let mut w = v.clone();
        for (u, norm) in &out {
            let c = inner(&v, u) / norm;
            for (wi, ui) in w.iter_mut().zip(u) {
                *wi -= &c * ui;
            }
        }
        let norm = inner(&w, &w);
        out.push((w, norm));
    }
    out
}

/// Probabilists' Hermite polynomials from `He_{n+1} = x He_n - n He_{n-1}`,
/// ascending coefficients padded to length `d + 1`.
pub fn hermite(d: usize) -> Vec<Vec<i64>> {
    let mut he: Vec<Vec<i64>> = vec![vec![0; d + 1]; d + 1];
    he[0][0] = 1;
    if d >= 1 {
        he[1][1] = 1;
    }
    for n in 1..d {
        for k in 0..=d {
            let shifted = if k > 0 { he[n][k - 1] } else { 0 };
            he[n + 1][k] = shifted - n as i64 * he[n - 1][k];
        }
    }
    he
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}
