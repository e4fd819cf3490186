use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{rat_to_f64, CRational};
use crate::spectrum::{coefficient_bound, CompactBox};
use crate::star_poly::{same_presentation, StarPoly};

use super::grid::{eval_on_grid, grid_axes};
use super::target::TargetFunction;

/// Bracket `[lower, upper]` for `sup_K |f|`: `lower` is the largest modulus
/// seen on a uniform grid, `upper` a coefficient bound for polynomials and
/// `lower·(1 + slack)` with the target's declared slack otherwise.
#[derive(Clone, Debug)]
pub struct SeminormEstimate {
    pub lower: f64,
    pub upper: f64,
    pub region: CompactBox,
    pub resolution: usize,
    /// Grid points that were evaluated (all grid points for presentations
    /// without relations, characters only otherwise).
    pub points: usize,
    /// Whether `upper` is a proven bound rather than a declared one.
    pub certified: bool,
    /// Coordinates of a grid point attaining `lower`.
    pub argmax: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeminormReport {
    pub lower: f64,
    pub upper: f64,
    pub resolution: usize,
    pub points: usize,
    pub certified: bool,
}

impl SeminormEstimate {
    pub fn report(&self) -> SeminormReport {
        SeminormReport {
            lower: self.lower,
            upper: self.upper,
            resolution: self.resolution,
            points: self.points,
            certified: self.certified,
        }
    }
}

/// What [`seminorm_on_box`] measures.
#[derive(Clone, Copy, Debug)]
pub enum Seminormed<'a> {
    Poly(&'a StarPoly),
    Target(&'a TargetFunction),
    /// `f − p`, the approximation error of `p`.
    Difference(&'a TargetFunction, &'a StarPoly),
}

fn modulus(q: &CRational) -> f64 {
    if q.im.is_zero() {
        rat_to_f64(&q.re).abs()
    } else {
        Complex64::new(rat_to_f64(&q.re), rat_to_f64(&q.im)).norm()
    }
}

/// Index tuples of the grid in [`CompactBox::grid`] order.
fn grid_indices(dim: usize, resolution: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = resolution.pow(dim as u32);
    (0..total).map(move |mut flat| {
        let mut idx = vec![0; dim];
        for slot in idx.iter_mut().rev() {
            *slot = flat % resolution;
            flat /= resolution;
        }
        idx
    })
}

/// `|f|_K` estimated on the grid with `resolution` points per axis.
/// Polynomial values are exact before rounding, so refining the grid never
/// lowers `lower`.
pub fn seminorm_on_box(
    f: Seminormed<'_>,
    k: &CompactBox,
    resolution: usize,
) -> Result<SeminormEstimate> {
    if resolution < 2 {
        return Err(Error::InvalidArgument(
            "grid resolution must be at least 2 per axis".into(),
        ));
    }
    let poly = match f {
        Seminormed::Poly(p) | Seminormed::Difference(_, p) => Some(p),
        Seminormed::Target(_) => None,
    };
    if let Some(p) = poly {
        if !same_presentation(p.presentation(), k.presentation()) {
            return Err(Error::MixedPresentations);
        }
    }
    let poly_values = poly.map(|p| eval_on_grid(p, k, resolution)).transpose()?;
    let axes = grid_axes(k, resolution);
    let axes_f64: Vec<Vec<f64>> = axes
        .iter()
        .map(|a| a.iter().map(rat_to_f64).collect())
        .collect();
    let mut lower: f64 = 0.0;
    let mut argmax = None;
    let mut points = 0;
    for (n, idx) in grid_indices(k.dim(), resolution).enumerate() {
        let exact_point = || -> Vec<_> {
            idx.iter()
                .enumerate()
                .map(|(a, &i)| axes[a][i].clone())
                .collect()
        };
        let point: Vec<f64> = idx
            .iter()
            .enumerate()
            .map(|(a, &i)| axes_f64[a][i])
            .collect();
        let pv = match &poly_values {
            Some(v) => match &v[n] {
                Some(x) => Some(x),
                None => continue,
            },
            None => None,
        };
        let value = match (f, pv) {
            (Seminormed::Poly(_), Some(v)) => modulus(v),
            (Seminormed::Target(t), _) => match t.eval_exact(&exact_point()) {
                Some(q) => modulus(&q),
                None => t.eval(&point)?.norm(),
            },
            (Seminormed::Difference(t, _), Some(v)) => match t.eval_exact(&exact_point()) {
                Some(q) => modulus(&(&q - v)),
                None => (t.eval(&point)? - v.to_c64()).norm(),
            },
            _ => unreachable!("polynomial values are present for polynomial inputs"),
        };
        points += 1;
        if value > lower || argmax.is_none() {
            lower = lower.max(value);
            argmax = Some(point);
        }
    }
    let (upper, certified) = match f {
        Seminormed::Poly(p) => (coefficient_bound(p, k)?.max(lower), true),
        Seminormed::Target(t) | Seminormed::Difference(t, _) => {
            (lower * (1.0 + t.modulus_slack()), false)
        }
    };
    Ok(SeminormEstimate {
        lower,
        upper,
        region: k.clone(),
        resolution,
        points,
        certified,
        argmax,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::parser::{parse_poly, parse_presentation};
    use crate::star_poly::{Mode, Presentation};

    fn pres(text: &str) -> Arc<Presentation> {
        Arc::new(parse_presentation(text, Mode::Star).unwrap())
    }

    #[test]
    fn linear_maximum_at_endpoint() {
        let p = pres("algebra A; generator x : selfadjoint;");
        let k = CompactBox::new(&p, vec![(-2.0, 3.0)]).unwrap();
        let x = parse_poly("x", &p).unwrap();
        for r in [2, 3, 7, 50] {
            let s = seminorm_on_box(Seminormed::Poly(&x), &k, r).unwrap();
            assert_eq!(s.lower, 3.0);
            assert!(s.upper >= 3.0 && s.upper <= 3.0 * (1.0 + 1e-11));
            assert!(s.certified);
        }
    }

    #[test]
    fn corner_of_complex_box() {
        let p = pres("algebra C; generator z : free;");
        let k = CompactBox::cube(&p, -1.0, 1.0).unwrap();
        let z = parse_poly("z", &p).unwrap();
        let s = seminorm_on_box(Seminormed::Poly(&z), &k, 3).unwrap();
        assert_eq!(s.lower, std::f64::consts::SQRT_2);
        assert!(s.upper >= std::f64::consts::SQRT_2);
    }

    #[test]
    fn zero_polynomial() {
        let p = pres("algebra A; generator x : selfadjoint;");
        let k = CompactBox::new(&p, vec![(-2.0, 3.0)]).unwrap();
        let z = parse_poly("0", &p).unwrap();
        let s = seminorm_on_box(Seminormed::Poly(&z), &k, 5).unwrap();
        assert_eq!((s.lower, s.upper), (0.0, 0.0));
    }

    #[test]
    fn relations_restrict_to_spectrum() {
        // On x² = 1 only ±1 are characters; 1 + x vanishes at -1, equals 2 at 1.
        let p = pres("algebra I; generator x : selfadjoint; relation x^2 - 1;");
        let k = CompactBox::new(&p, vec![(-1.0, 1.0)]).unwrap();
        let a = parse_poly("x + 1", &p).unwrap();
        let s = seminorm_on_box(Seminormed::Poly(&a), &k, 5).unwrap();
        assert_eq!(s.points, 2);
        assert_eq!(s.lower, 2.0);
    }

    #[test]
    fn resolution_below_two_is_rejected() {
        let p = pres("algebra A; generator x : selfadjoint;");
        let k = CompactBox::new(&p, vec![(0.0, 1.0)]).unwrap();
        let x = parse_poly("x", &p).unwrap();
        assert!(seminorm_on_box(Seminormed::Poly(&x), &k, 1).is_err());
    }

    #[test]
    fn target_bracket_uses_declared_slack() {
        let p = pres("algebra A; generator x : selfadjoint;");
        let k = CompactBox::new(&p, vec![(0.0, 1.0)]).unwrap();
        let f = TargetFunction::exp().with_slack(0.5);
        let s = seminorm_on_box(Seminormed::Target(&f), &k, 11).unwrap();
        assert_eq!(s.lower, std::f64::consts::E);
        assert_eq!(s.upper, 1.5 * std::f64::consts::E);
        assert!(!s.certified);
    }
}
