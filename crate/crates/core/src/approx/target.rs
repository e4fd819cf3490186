use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::scalar::{rat_to_f64, CRational};
use crate::spectrum::CompactBox;

/// Relative slack declared for the upper end of a target's sup-norm
/// estimate when no certified bound is available.
pub const DEFAULT_MODULUS_SLACK: f64 = 0.05;

#[derive(Clone, Debug, PartialEq)]
pub enum TargetKind {
    /// `Σⱼ |tⱼ − c|`.
    AbsShift(BigRational),
    /// `exp(Σⱼ tⱼ)`.
    Exp,
    /// `Σⱼ tⱼ²`.
    Square,
    Constant(CRational),
    /// Samples on a uniform grid of a box, `resolution` per axis (first axis
    /// outermost), multilinearly interpolated.
    Tabulated {
        bounds: Vec<(f64, f64)>,
        resolution: usize,
        values: Vec<f64>,
    },
}

/// A function on a box of character coordinates, to be approximated by
/// polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct TargetFunction {
    kind: TargetKind,
    modulus_slack: f64,
}

impl TargetFunction {
    fn with_kind(kind: TargetKind) -> Self {
        TargetFunction {
            kind,
            modulus_slack: DEFAULT_MODULUS_SLACK,
        }
    }

    pub fn abs_shift(c: BigRational) -> Self {
        Self::with_kind(TargetKind::AbsShift(c))
    }

    pub fn exp() -> Self {
        Self::with_kind(TargetKind::Exp)
    }

    pub fn square() -> Self {
        Self::with_kind(TargetKind::Square)
    }

    pub fn constant(c: CRational) -> Self {
        Self::with_kind(TargetKind::Constant(c))
    }

    /// `values` holds `resolution^d` samples on the uniform grid of
    /// `region`, first axis outermost.
    pub fn tabulated(region: &CompactBox, resolution: usize, values: Vec<f64>) -> Result<Self> {
        let d = region.dim();
        if resolution < 2 {
            return Err(Error::InvalidArgument(
                "a table needs at least 2 samples per axis".into(),
            ));
        }
        let expected = resolution.checked_pow(d as u32).unwrap_or(usize::MAX);
        if values.len() != expected {
            return Err(Error::InvalidArgument(format!(
                "a {d}-dimensional table with {resolution} samples per axis needs {expected} values, got {}",
                values.len()
            )));
        }
        Ok(Self::with_kind(TargetKind::Tabulated {
            bounds: region.axes().iter().map(|a| (a.lo, a.hi)).collect(),
            resolution,
            values,
        }))
    }

    /// `abs-shift`, `abs-shift:<c>` (default `c = 1/2`), `exp`, `square`,
    /// `const:<c>`.
    pub fn from_name(spec: &str) -> Result<Self> {
        let (name, arg) = match spec.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (spec, None),
        };
        let number = |a: Option<&str>, default: Option<CRational>| -> Result<CRational> {
            match a {
                Some(text) => crate::parser::parse_scalar(text),
                None => default.ok_or_else(|| {
                    Error::InvalidArgument(format!("target `{name}` needs an argument"))
                }),
            }
        };
        match name {
            "abs-shift" => {
                let c = number(arg, Some(CRational::ratio(1, 2)))?;
                if !c.is_real() {
                    return Err(Error::InvalidArgument(
                        "abs-shift needs a real shift".into(),
                    ));
                }
                Ok(Self::abs_shift(c.re))
            }
            "exp" | "square" if arg.is_some() => Err(Error::InvalidArgument(format!(
                "target `{name}` takes no argument"
            ))),
            "exp" => Ok(Self::exp()),
            "square" => Ok(Self::square()),
            "const" => Ok(Self::constant(number(arg, None)?)),
            _ => Err(Error::InvalidArgument(format!(
                "unknown target `{name}` (expected abs-shift, exp, square, const)"
            ))),
        }
    }

    pub fn with_slack(mut self, slack: f64) -> Self {
        self.modulus_slack = slack;
        self
    }

    pub fn kind(&self) -> &TargetKind {
        &self.kind
    }

    pub fn modulus_slack(&self) -> f64 {
        self.modulus_slack
    }

    pub fn name(&self) -> String {
        match &self.kind {
            TargetKind::AbsShift(c) => format!("abs-shift:{c}"),
            TargetKind::Exp => "exp".into(),
            TargetKind::Square => "square".into(),
            TargetKind::Constant(c) => format!("const:{c}"),
            TargetKind::Tabulated { resolution, .. } => format!("tabulated:{resolution}"),
        }
    }

    /// Exact value at a rational point, for targets that have one.
    pub fn eval_exact(&self, point: &[BigRational]) -> Option<CRational> {
        match &self.kind {
            TargetKind::AbsShift(c) => {
                Some(CRational::real(point.iter().map(|t| (t - c).abs()).sum()))
            }
            TargetKind::Square => Some(CRational::real(point.iter().map(|t| t * t).sum())),
            TargetKind::Constant(c) => Some(c.clone()),
            TargetKind::Exp | TargetKind::Tabulated { .. } => None,
        }
    }

    /// Floating value; fails where the target is undefined or not finite.
    pub fn eval(&self, point: &[f64]) -> Result<Complex64> {
        let v = match &self.kind {
            TargetKind::AbsShift(c) => {
                let c = rat_to_f64(c);
                Complex64::new(point.iter().map(|t| (t - c).abs()).sum(), 0.0)
            }
            TargetKind::Exp => Complex64::new(point.iter().sum::<f64>().exp(), 0.0),
            TargetKind::Square => Complex64::new(point.iter().map(|t| t * t).sum(), 0.0),
            TargetKind::Constant(c) => c.to_c64(),
            TargetKind::Tabulated {
                bounds,
                resolution,
                values,
            } => Complex64::new(interpolate(bounds, *resolution, values, point)?, 0.0),
        };
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(undefined(point))
        }
    }
}

fn undefined(point: &[f64]) -> Error {
    Error::InvalidArgument(format!("target is undefined at {point:?}"))
}

fn interpolate(bounds: &[(f64, f64)], res: usize, values: &[f64], point: &[f64]) -> Result<f64> {
    if point.len() != bounds.len() {
        return Err(undefined(point));
    }
    // Per axis: lower sample index and fractional offset.
    let mut cells = Vec::with_capacity(point.len());
    for (&(lo, hi), &x) in bounds.iter().zip(point) {
        if !(lo <= x && x <= hi) {
            return Err(undefined(point));
        }
        let pos = if hi > lo {
            (x - lo) / (hi - lo) * (res - 1) as f64
        } else {
            0.0
        };
        let i = (pos.floor() as usize).min(res - 2);
        cells.push((i, pos - i as f64));
    }
    let d = point.len();
    let mut total = 0.0;
    for corner in 0..(1usize << d) {
        let mut weight = 1.0;
        let mut idx = 0;
        for (ax, &(i, frac)) in cells.iter().enumerate() {
            let up = (corner >> ax) & 1 == 1;
            weight *= if up { frac } else { 1.0 - frac };
            idx = idx * res + i + up as usize;
        }
        if weight != 0.0 {
            total += weight * values[idx];
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::parser::parse_presentation;
    use crate::star_poly::{Mode, Presentation};

    fn unit_square() -> CompactBox {
        let p: Arc<Presentation> = Arc::new(
            parse_presentation("algebra A; generator x, y : selfadjoint;", Mode::Star).unwrap(),
        );
        CompactBox::new(&p, vec![(0.0, 1.0), (0.0, 2.0)]).unwrap()
    }

    #[test]
    fn catalog_names() {
        assert_eq!(
            TargetFunction::from_name("abs-shift").unwrap().name(),
            "abs-shift:1/2"
        );
        assert_eq!(
            TargetFunction::from_name("abs-shift:1/3").unwrap().name(),
            "abs-shift:1/3"
        );
        assert_eq!(TargetFunction::from_name("exp").unwrap().name(), "exp");
        assert_eq!(
            TargetFunction::from_name("const:2").unwrap().name(),
            "const:2"
        );
        assert!(TargetFunction::from_name("const").is_err());
        assert!(TargetFunction::from_name("sine").is_err());
        assert!(TargetFunction::from_name("abs-shift:1i").is_err());
    }

    #[test]
    fn exact_and_float_agree() {
        let f = TargetFunction::abs_shift(BigRational::new(1.into(), 2.into()));
        let q = [BigRational::new(1.into(), 8.into())];
        assert_eq!(f.eval_exact(&q).unwrap(), CRational::ratio(3, 8));
        assert_eq!(f.eval(&[0.125]).unwrap().re, 0.375);
    }

    #[test]
    fn tabulated_reproduces_bilinear_functions() {
        let k = unit_square();
        // f(x, y) = 1 + 2x + 3y + xy sampled on a 3×3 grid.
        let f = |x: f64, y: f64| 1.0 + 2.0 * x + 3.0 * y + x * y;
        let mut vals = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                vals.push(f(i as f64 / 2.0, j as f64));
            }
        }
        let t = TargetFunction::tabulated(&k, 3, vals).unwrap();
        for &(x, y) in &[(0.3, 1.7), (1.0, 2.0), (0.0, 0.0), (0.75, 0.2)] {
            assert!((t.eval(&[x, y]).unwrap().re - f(x, y)).abs() < 1e-12);
        }
        assert!(t.eval(&[1.5, 0.0]).is_err());
        assert!(TargetFunction::tabulated(&k, 3, vec![0.0; 8]).is_err());
    }

    #[test]
    fn non_finite_values_are_undefined() {
        let k = unit_square();
        let t = TargetFunction::tabulated(&k, 2, vec![0.0, f64::NAN, 1.0, 1.0]).unwrap();
        assert!(t.eval(&[0.0, 2.0]).is_err());
    }
}
