//! Exact evaluation of a polynomial on a uniform box grid.
//!
//! The polynomial is rewritten in the real box coordinates, then in the
//! rescaled coordinates `u ∈ [0,1]` of the grid, and finally cleared of
//! denominators, so that every grid value is obtained by integer Horner
//! steps with small multipliers and a single final division.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::scalar::CRational;
use crate::spectrum::{Character, CompactBox, Part};
use crate::star_poly::{same_presentation, Link, StarPoly};

/// Polynomial in box coordinates: exponent per axis → coefficient.
pub(crate) type AxisPoly = BTreeMap<Vec<u32>, CRational>;

fn axis_mul(a: &AxisPoly, b: &AxisPoly) -> AxisPoly {
    let mut out = AxisPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            let c = ca * cb;
            let e = out.entry(m).or_insert_with(CRational::zero);
            *e += &c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Rewrites `a` as a polynomial in the coordinates of `k`: a self-adjoint
/// generator is its axis, a free generator is `re + i·im` and its adjoint
/// `re − i·im`.
pub(crate) fn to_axis_poly(a: &StarPoly, k: &CompactBox) -> Result<AxisPoly> {
    let pres = k.presentation();
    if !same_presentation(a.presentation(), pres) {
        return Err(crate::error::Error::MixedPresentations);
    }
    let dim = k.dim();
    let unit = |axis: usize, c: CRational| {
        let mut e = vec![0; dim];
        e[axis] = 1;
        (e, c)
    };
    let forms: Vec<AxisPoly> = (0..pres.arity())
        .map(|g| {
            let gen = &pres.generators()[g];
            let (owner, sign) = if gen.adjoint {
                (pres.partner(g).expect("adjoint has a partner"), -1)
            } else {
                (g, 1)
            };
            let mut form = AxisPoly::new();
            for (ax, axis) in k.axes().iter().enumerate() {
                if axis.generator != owner {
                    continue;
                }
                let (e, c) = match (gen.link, axis.part) {
                    (Link::SelfAdjoint, _) | (_, Part::Re) => unit(ax, CRational::one()),
                    (_, Part::Im) => unit(ax, CRational::gaussian(0, sign)),
                };
                form.insert(e, c);
            }
            form
        })
        .collect();
    let maxe = a.max_exponents();
    let powers: Vec<Vec<AxisPoly>> = forms
        .iter()
        .zip(&maxe)
        .map(|(f, &e)| {
            let mut p = vec![[(vec![0; dim], CRational::one())]
                .into_iter()
                .collect::<AxisPoly>()];
            for i in 0..e as usize {
                let next = axis_mul(&p[i], f);
                p.push(next);
            }
            p
        })
        .collect();
    let mut out = AxisPoly::new();
    for (m, c) in a.terms() {
        let mut t: AxisPoly = [(vec![0; dim], c.clone())].into_iter().collect();
        for (g, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                t = axis_mul(&t, &powers[g][e as usize]);
            }
        }
        for (e, c) in t {
            let slot = out.entry(e).or_insert_with(CRational::zero);
            *slot += &c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

fn binomials(n: usize) -> Vec<Vec<BigInt>> {
    let mut c = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for i in 0..=n {
        c[i][0] = BigInt::one();
        for j in 1..=i {
            c[i][j] = &c[i - 1][j - 1] + &c[i - 1][j];
        }
    }
    c
}

fn rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Dense coefficient tensor, row-major, first axis outermost.
#[derive(Clone, Debug)]
pub(crate) struct Dense<T> {
    pub shape: Vec<usize>,
    pub data: Vec<T>,
}

impl<T: Clone> Dense<T> {
    fn stride(&self, axis: usize) -> usize {
        self.shape[axis + 1..].iter().product()
    }
}

pub(crate) fn densify(p: &AxisPoly, dim: usize) -> Dense<CRational> {
    let mut shape = vec![1usize; dim];
    for e in p.keys() {
        for (s, &x) in shape.iter_mut().zip(e) {
            *s = (*s).max(x as usize + 1);
        }
    }
    let size = shape.iter().product();
    let mut d = Dense {
        shape,
        data: vec![CRational::zero(); size],
    };
    for (e, c) in p {
        let idx = e
            .iter()
            .enumerate()
            .map(|(ax, &x)| x as usize * d.stride(ax))
            .sum::<usize>();
        d.data[idx] = c.clone();
    }
    d
}

/// Applies `coef'ᵢ = Σⱼ m[i][j] coefⱼ` along `axis`.
pub(crate) fn transform_axis(d: &mut Dense<CRational>, axis: usize, m: &[Vec<BigRational>]) {
    let n = d.shape[axis];
    let stride = d.stride(axis);
    let outer = d.data.len() / (n * stride);
    let mut line = vec![CRational::zero(); n];
    for o in 0..outer {
        for s in 0..stride {
            let base = o * n * stride + s;
            for (i, slot) in line.iter_mut().enumerate() {
                let mut acc = CRational::zero();
                for (j, mij) in m[i].iter().enumerate() {
                    let c = &d.data[base + j * stride];
                    if !mij.is_zero() && !c.is_zero() {
                        acc += &c.scale(mij);
                    }
                }
                *slot = acc;
            }
            for (i, v) in line.iter_mut().enumerate() {
                d.data[base + i * stride] = std::mem::replace(v, CRational::zero());
            }
        }
    }
}

/// Matrix taking coefficients in `t` to coefficients in `u` for
/// `t = lo + s·u`: `c'ᵢ = Σ_{j≥i} cⱼ C(j,i) sⁱ lo^{j−i}`.
pub(crate) fn affine_matrix(n: usize, lo: &BigRational, s: &BigRational) -> Vec<Vec<BigRational>> {
    let c = binomials(n.saturating_sub(1));
    let pow = |b: &BigRational, e: usize| -> BigRational {
        let mut r = BigRational::one();
        for _ in 0..e {
            r *= b;
        }
        r
    };
    let s_pows: Vec<BigRational> = (0..n).map(|i| pow(s, i)).collect();
    let lo_pows: Vec<BigRational> = (0..n).map(|i| pow(lo, i)).collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j < i {
                        BigRational::zero()
                    } else {
                        rat(&c[j][i]) * &s_pows[i] * &lo_pows[j - i]
                    }
                })
                .collect()
        })
        .collect()
}

pub(crate) fn axis_bounds(k: &CompactBox) -> Vec<(BigRational, BigRational)> {
    k.axes()
        .iter()
        .map(|a| {
            let lo = BigRational::from_float(a.lo).expect("finite bound");
            let hi = BigRational::from_float(a.hi).expect("finite bound");
            let s = hi - &lo;
            (lo, s)
        })
        .collect()
}

/// Exact coordinates of the grid along every axis, endpoints included.
pub(crate) fn grid_axes(k: &CompactBox, resolution: usize) -> Vec<Vec<BigRational>> {
    let steps = BigRational::from_integer(BigInt::from(resolution - 1));
    axis_bounds(k)
        .into_iter()
        .map(|(lo, s)| {
            (0..resolution)
                .map(|i| &lo + &s * BigRational::from_integer(BigInt::from(i)) / &steps)
                .collect()
        })
        .collect()
}

/// Values of a polynomial already expressed in `u` coordinates at
/// `u = i / (resolution-1)` on every axis, grid order first axis outermost.
pub(crate) fn eval_unit_grid(u: &Dense<CRational>, resolution: usize) -> Vec<CRational> {
    let mut den = BigInt::one();
    for c in &u.data {
        den = den.lcm(c.re.denom()).lcm(c.im.denom());
    }
    let numer = |q: &BigRational| -> BigInt { q.numer() * (&den / q.denom()) };
    let re: Vec<BigInt> = u.data.iter().map(|c| numer(&c.re)).collect();
    let im: Vec<BigInt> = u.data.iter().map(|c| numer(&c.im)).collect();
    let n = BigInt::from(resolution - 1);
    let re = contract_all(re, u.shape.clone(), &n, resolution);
    let im = contract_all(im, u.shape.clone(), &n, resolution);
    let mut scale = den;
    for &s in &u.shape {
        scale *= n.pow((s - 1) as u32);
    }
    let scale = BigRational::from_integer(scale);
    re.into_iter()
        .zip(im)
        .map(|(r, i)| CRational::new(rat(&r) / &scale, rat(&i) / &scale))
        .collect()
}

/// Contracts every coefficient axis against the grid, last axis first,
/// moving each grid axis to the front.
fn contract_all(
    mut data: Vec<BigInt>,
    mut shape: Vec<usize>,
    n: &BigInt,
    res: usize,
) -> Vec<BigInt> {
    for _ in 0..shape.len() {
        let e = shape.pop().expect("one coefficient axis per step");
        let outer: usize = shape.iter().product();
        // b[o][k] = a[o][k] · N^{e-1-k}
        let npow: Vec<BigInt> = (0..e).map(|k| n.pow((e - 1 - k) as u32)).collect();
        let scaled: Vec<BigInt> = data
            .iter()
            .enumerate()
            .map(|(idx, a)| {
                if a.is_zero() {
                    BigInt::zero()
                } else {
                    a * &npow[idx % e]
                }
            })
            .collect();
        let mut next = Vec::with_capacity(res * outer);
        for i in 0..res {
            let iv = BigInt::from(i);
            for o in 0..outer {
                let row = &scaled[o * e..(o + 1) * e];
                let mut acc = row[e - 1].clone();
                for k in (0..e - 1).rev() {
                    acc = acc * &iv + &row[k];
                }
                next.push(acc);
            }
        }
        data = next;
        shape.insert(0, res);
    }
    data
}

/// Exact values of `a` on the grid of `k`, in [`CompactBox::grid`] order.
/// Points that are not characters (for presentations with relations) are
/// reported as `None`.
pub(crate) fn eval_on_grid(
    a: &StarPoly,
    k: &CompactBox,
    resolution: usize,
) -> Result<Vec<Option<CRational>>> {
    k.grid(resolution)?;
    let axis = to_axis_poly(a, k)?;
    let mut dense = densify(&axis, k.dim());
    for (ax, (lo, s)) in axis_bounds(k).iter().enumerate() {
        let m = affine_matrix(dense.shape[ax], lo, s);
        transform_axis(&mut dense, ax, &m);
    }
    let values = eval_unit_grid(&dense, resolution);
    let pres = k.presentation();
    if !pres.has_relations() {
        return Ok(values.into_iter().map(Some).collect());
    }
    let points = k.grid(resolution)?;
    Ok(values
        .into_iter()
        .zip(points)
        .map(|(v, p)| {
            Character::exact(pres, k.exact_values_at(&p))
                .ok()
                .map(|_| v)
        })
        .collect())
}
