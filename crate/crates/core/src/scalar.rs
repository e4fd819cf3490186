//! Exact complex-rational scalars and the mixed exact/floating value type
//! returned by evaluations.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A complex number `re + im·i` with arbitrary-precision rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl CRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        CRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        CRational {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den` as a real rational. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        CRational {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    pub fn i() -> Self {
        Self::gaussian(0, 1)
    }

    /// Exact conversion of a finite double. Returns `None` for NaN or infinities.
    pub fn from_f64(v: f64) -> Option<Self> {
        BigRational::from_float(v).map(Self::real)
    }

    pub fn from_c64(v: Complex64) -> Option<Self> {
        Some(CRational {
            re: BigRational::from_float(v.re)?,
            im: BigRational::from_float(v.im)?,
        })
    }

    pub fn zero() -> Self {
        CRational::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        CRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `|z|²`, exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(CRational {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        CRational {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CRational::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    /// Whether the real part is negative and the imaginary part vanishes.
    pub fn is_negative_real(&self) -> bool {
        self.im.is_zero() && self.re.is_negative()
    }
}

pub fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CRational {
    /// Canonical spelling: `3`, `-1/2`, or `(a+bi)` / `(a-bi)` when the
    /// imaginary part is nonzero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return f.write_str(&fmt_rat(&self.re));
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(
            f,
            "({}{}{}i)",
            fmt_rat(&self.re),
            sign,
            fmt_rat(&self.im.abs())
        )
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a CRational> for &'a CRational {
            type Output = CRational;
            fn $method(self, rhs: &'a CRational) -> CRational {
                let f: fn(&CRational, &CRational) -> CRational = $body;
                f(self, rhs)
            }
        }
        impl $tr<CRational> for CRational {
            type Output = CRational;
            fn $method(self, rhs: CRational) -> CRational {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| CRational {
    re: &a.re + &b.re,
    im: &a.im + &b.im,
});
forward_binop!(Sub, sub, |a, b| CRational {
    re: &a.re - &b.re,
    im: &a.im - &b.im,
});
forward_binop!(Mul, mul, |a, b| CRational {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re,
});

impl AddAssign<&CRational> for CRational {
    fn add_assign(&mut self, rhs: &CRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Neg for CRational {
    type Output = CRational;
    fn neg(self) -> CRational {
        CRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &CRational {
    type Output = CRational;
    fn neg(self) -> CRational {
        -self.clone()
    }
}

/// The value of an evaluation: exact when every input was exact.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(CRational),
    Float(Complex64),
}

impl Scalar {
    pub fn to_c64(&self) -> Complex64 {
        match self {
            Scalar::Exact(q) => q.to_c64(),
            Scalar::Float(z) => *z,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&CRational> {
        match self {
            Scalar::Exact(q) => Some(q),
            Scalar::Float(_) => None,
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(q.conj()),
            Scalar::Float(z) => Scalar::Float(z.conj()),
        }
    }

    pub fn norm(&self) -> f64 {
        self.to_c64().norm()
    }

    /// Exact zero test for exact values, `|v| <= tol` otherwise.
    pub fn is_zero_within(&self, tol: f64) -> bool {
        match self {
            Scalar::Exact(q) => q.is_zero(),
            Scalar::Float(z) => z.norm() <= tol,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => write!(f, "{q}"),
            Scalar::Float(z) => {
                if z.im == 0.0 {
                    write!(f, "{}", z.re)
                } else {
                    write!(f, "({}{:+}i)", z.re, z.im)
                }
            }
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            (a, b) => Scalar::Float(a.to_c64() + b.to_c64()),
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            (a, b) => Scalar::Float(a.to_c64() * b.to_c64()),
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a - b),
            (a, b) => Scalar::Float(a.to_c64() - b.to_c64()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_spelling() {
        assert_eq!(CRational::from_int(-1).to_string(), "-1");
        assert_eq!(CRational::ratio(1, 2).to_string(), "1/2");
        assert_eq!(CRational::i().to_string(), "(0+1i)");
        let q = CRational::new(
            BigRational::new(1.into(), 2.into()),
            BigRational::from_integer((-3).into()),
        );
        assert_eq!(q.to_string(), "(1/2-3i)");
    }

    #[test]
    fn inverse_and_pow() {
        let z = CRational::gaussian(1, 2);
        assert_eq!(&z * &z.inv().unwrap(), CRational::one());
        assert_eq!(z.pow(2), CRational::gaussian(-3, 4));
        assert_eq!(z.pow(0), CRational::one());
        assert!(CRational::zero().inv().is_none());
    }

    #[test]
    fn conj_is_involutive() {
        let z = CRational::gaussian(3, -7);
        assert_eq!(z.conj().conj(), z);
        assert_eq!((&z * &z.conj()).im, BigRational::zero());
    }
}
