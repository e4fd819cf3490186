use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{rat_to_f64, CRational};
use crate::spectrum::CompactBox;
use crate::star_poly::{Generator, Link, Mode, Monomial, Presentation, StarPoly};

use super::grid::{affine_matrix, axis_bounds, transform_axis, Dense};
use super::seminorm::{seminorm_on_box, SeminormEstimate, Seminormed};
use super::target::TargetFunction;

/// Largest box dimension accepted by [`bernstein_approx`].
pub const MAX_BERNSTEIN_DIM: usize = 3;
/// Largest number of Bernstein nodes, `(n+1)^d`.
pub const MAX_BERNSTEIN_NODES: usize = 1 << 20;

/// A Bernstein approximant with its measured error.
#[derive(Clone, Debug)]
pub struct BernsteinApprox {
    pub poly: StarPoly,
    pub degree: u32,
    /// The box carried over to the presentation of `poly`.
    pub region: CompactBox,
    /// Grid estimate of `|f − poly|` on `region`.
    pub error: SeminormEstimate,
}

/// Presentation with one self-adjoint generator per axis of `k`: the box's
/// own presentation when it already has that shape, a fresh one named
/// after the axes otherwise.
fn approximant_presentation(k: &CompactBox) -> Result<Arc<Presentation>> {
    let pres = k.presentation();
    let shaped = !pres.has_relations()
        && pres.arity() == k.dim()
        && pres
            .generators()
            .iter()
            .all(|g| g.link == Link::SelfAdjoint);
    if shaped {
        return Ok(Arc::clone(pres));
    }
    let generators = (0..k.dim())
        .map(|a| {
            let name: String = k
                .axis_name(a)
                .chars()
                .filter_map(|c| match c {
                    '(' => Some('_'),
                    ')' => None,
                    c => Some(c),
                })
                .collect();
            Generator::selfadjoint(name)
        })
        .collect();
    Ok(Arc::new(Presentation::free(
        format!("{}_coords", pres.name()),
        Mode::Star,
        generators,
    )?))
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 1..=n {
        let next = &row[k - 1] * BigInt::from(n + 1 - k) / BigInt::from(k);
        row.push(next);
    }
    row
}

/// `M[j][k]`: coefficient of `u^j` in `C(n,k) u^k (1-u)^{n-k}`, which is
/// `C(n,j) C(j,k) (-1)^{j-k}` for `k ≤ j`.
fn bernstein_to_monomial(n: usize) -> Vec<Vec<BigRational>> {
    let cn = binomial_row(n);
    (0..=n)
        .map(|j| {
            let cj = binomial_row(j);
            (0..=n)
                .map(|k| {
                    if k > j {
                        BigRational::zero()
                    } else {
                        let v = &cn[j] * &cj[k];
                        let v = if (j - k) % 2 == 1 { -v } else { v };
                        BigRational::from_integer(v)
                    }
                })
                .collect()
        })
        .collect()
}

/// Degree-`n` tensor Bernstein polynomial of `f` on the box `k` (rescaled
/// to the unit cube), with its error measured on a grid of
/// `error_resolution` points per axis. Node values are exact when the
/// target has exact values at rational points.
pub fn bernstein_approx(
    f: &TargetFunction,
    k: &CompactBox,
    n: u32,
    error_resolution: usize,
) -> Result<BernsteinApprox> {
    let d = k.dim();
    if n == 0 {
        return Err(Error::InvalidArgument(
            "Bernstein degree must be at least 1".into(),
        ));
    }
    if d == 0 || d > MAX_BERNSTEIN_DIM {
        return Err(Error::Unsupported(format!(
            "Bernstein approximation needs a box of dimension 1 to {MAX_BERNSTEIN_DIM}, got {d}"
        )));
    }
    let per_axis = n as usize + 1;
    if per_axis
        .checked_pow(d as u32)
        .is_none_or(|m| m > MAX_BERNSTEIN_NODES)
    {
        return Err(Error::InvalidArgument(format!(
            "degree {n} in dimension {d} needs more than {MAX_BERNSTEIN_NODES} nodes"
        )));
    }
    if k.axes().iter().any(|a| a.hi <= a.lo) {
        return Err(Error::InvalidArgument(
            "Bernstein approximation needs a box with nonempty interior".into(),
        ));
    }
    let bounds = axis_bounds(k);
    let nr = BigRational::from_integer(BigInt::from(n));
    // Exact node coordinates per axis: lo + s·j/n.
    let nodes: Vec<Vec<BigRational>> = bounds
        .iter()
        .map(|(lo, s)| {
            (0..per_axis)
                .map(|j| lo + s * BigRational::from_integer(BigInt::from(j)) / &nr)
                .collect()
        })
        .collect();
    let total = per_axis.pow(d as u32);
    let mut data = Vec::with_capacity(total);
    for flat in 0..total {
        let mut rem = flat;
        let mut idx = vec![0; d];
        for slot in idx.iter_mut().rev() {
            *slot = rem % per_axis;
            rem /= per_axis;
        }
        let exact: Vec<BigRational> = idx
            .iter()
            .enumerate()
            .map(|(a, &j)| nodes[a][j].clone())
            .collect();
        let value = match f.eval_exact(&exact) {
            Some(v) => v,
            None => {
                let point: Vec<f64> = exact.iter().map(rat_to_f64).collect();
                let v = f.eval(&point)?;
                CRational::from_c64(v).ok_or_else(|| {
                    Error::InvalidArgument(format!("target is undefined at {point:?}"))
                })?
            }
        };
        data.push(value);
    }
    let mut dense = Dense {
        shape: vec![per_axis; d],
        data,
    };
    let to_monomial = bernstein_to_monomial(n as usize);
    for (ax, (lo, s)) in bounds.iter().enumerate() {
        transform_axis(&mut dense, ax, &to_monomial);
        // u = (t - lo)/s = b + a·t.
        let a = s.recip();
        let b = -(lo * &a);
        transform_axis(&mut dense, ax, &affine_matrix(per_axis, &b, &a));
    }
    let pres = approximant_presentation(k)?;
    let mut terms = Vec::new();
    for (flat, c) in dense.data.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut rem = flat;
        let mut exps = vec![0u32; d];
        for slot in exps.iter_mut().rev() {
            *slot = (rem % per_axis) as u32;
            rem /= per_axis;
        }
        terms.push((Monomial::from_exponents(exps), c));
    }
    let poly = StarPoly::from_terms(&pres, terms)?;
    let region = CompactBox::new(&pres, k.axes().iter().map(|a| (a.lo, a.hi)).collect())?;
    let error = seminorm_on_box(Seminormed::Difference(f, &poly), &region, error_resolution)?;
    Ok(BernsteinApprox {
        poly,
        degree: n,
        region,
        error,
    })
}

/// Smallest power-of-two degree `n ≤ max_degree` whose Bernstein
/// approximant has grid error below `eps`, if any.
pub fn density_witness(
    f: &TargetFunction,
    k: &CompactBox,
    eps: f64,
    max_degree: u32,
    error_resolution: usize,
) -> Result<Option<BernsteinApprox>> {
    let mut n = 1;
    while n <= max_degree {
        let approx = bernstein_approx(f, k, n, error_resolution)?;
        if approx.error.lower < eps {
            return Ok(Some(approx));
        }
        n *= 2;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_presentation;

    fn unit_interval() -> CompactBox {
        let p = Arc::new(
            parse_presentation("algebra A; generator t : selfadjoint;", Mode::Star).unwrap(),
        );
        CompactBox::new(&p, vec![(0.0, 1.0)]).unwrap()
    }

    #[test]
    fn square_degree_two() {
        let k = unit_interval();
        let b = bernstein_approx(&TargetFunction::square(), &k, 2, 101).unwrap();
        assert_eq!(b.poly.to_string(), "1/2*t^2 + 1/2*t");
        assert_eq!(b.error.lower, 0.125);
        assert_eq!(b.error.argmax, Some(vec![0.5]));
    }

    #[test]
    fn constants_are_reproduced() {
        let k = unit_interval();
        for n in [1, 3, 10] {
            let b =
                bernstein_approx(&TargetFunction::constant(CRational::one()), &k, n, 11).unwrap();
            assert_eq!(b.poly.to_string(), "1");
            assert_eq!(b.error.lower, 0.0);
        }
    }

    #[test]
    fn linear_functions_are_reproduced_on_shifted_boxes() {
        let p = Arc::new(
            parse_presentation("algebra A; generator t : selfadjoint;", Mode::Star).unwrap(),
        );
        let k = CompactBox::new(&p, vec![(-3.0, 5.0)]).unwrap();
        // |t - 10| = 10 - t on the box.
        let f = TargetFunction::abs_shift(BigRational::from_integer(10.into()));
        let b = bernstein_approx(&f, &k, 4, 9).unwrap();
        assert_eq!(b.poly.to_string(), "-1*t + 10");
        assert_eq!(b.error.lower, 0.0);
    }

    #[test]
    fn free_pair_box_gets_coordinate_generators() {
        let p = Arc::new(parse_presentation("algebra C; generator z : free;", Mode::Star).unwrap());
        let k = CompactBox::cube(&p, 0.0, 1.0).unwrap();
        let b = bernstein_approx(&TargetFunction::square(), &k, 2, 5).unwrap();
        let names: Vec<String> = b
            .poly
            .presentation()
            .generators()
            .iter()
            .map(|g| g.name.clone())
            .collect();
        assert_eq!(names, ["re_z", "im_z"]);
        assert_eq!(
            b.poly.to_string(),
            "1/2*re_z^2 + 1/2*im_z^2 + 1/2*re_z + 1/2*im_z"
        );
    }

    #[test]
    fn rejects_bad_requests() {
        let k = unit_interval();
        assert!(bernstein_approx(&TargetFunction::square(), &k, 0, 5).is_err());
        let p = Arc::new(
            parse_presentation("algebra A; generator a, b, c, d : selfadjoint;", Mode::Star)
                .unwrap(),
        );
        let k4 = CompactBox::cube(&p, 0.0, 1.0).unwrap();
        assert!(matches!(
            bernstein_approx(&TargetFunction::square(), &k4, 2, 3),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn witness_search_for_exp() {
        let k = unit_interval();
        let w = density_witness(&TargetFunction::exp(), &k, 0.1, 256, 201)
            .unwrap()
            .unwrap();
        assert!(w.error.lower < 0.1);
        assert!(w.degree <= 8);
    }
}
