use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::star_poly::StarPoly;

use super::character::Character;
use super::sampler::CharacterSampler;

/// Least `n ≤ degree_bound` with `aⁿ = 0`, if any.
pub fn is_nilpotent(a: &StarPoly, degree_bound: u32) -> Result<Option<u32>> {
    if degree_bound == 0 {
        return Err(Error::InvalidArgument(
            "degree bound must be at least 1".into(),
        ));
    }
    let mut power = a.clone();
    for n in 1..=degree_bound {
        if power.is_zero() {
            return Ok(Some(n));
        }
        if n < degree_bound {
            power = power.mul(a)?;
        }
    }
    Ok(None)
}

/// Outcome of [`radical_vanishing_check`]. Sampling can only refute
/// membership in the Gel'fand radical; nilpotency certifies it.
#[derive(Clone, Debug, PartialEq)]
pub enum RadicalVerdict {
    NotInRadical {
        witness: Character,
        value: Scalar,
    },
    ConsistentSampled {
        samples: usize,
        nilpotent_exponent: Option<u32>,
    },
}

impl RadicalVerdict {
    pub fn in_radical_consistent(&self) -> bool {
        matches!(self, RadicalVerdict::ConsistentSampled { .. })
    }
}

/// Evaluates `â` on `n` sampled characters; any nonzero value is a witness
/// that `a` is outside the radical. Otherwise reports the nilpotency
/// exponent up to `nilpotency_bound` as an exact sufficient condition.
pub fn radical_vanishing_check<S: CharacterSampler>(
    a: &StarPoly,
    mut sampler: S,
    n: usize,
    nilpotency_bound: u32,
) -> Result<RadicalVerdict> {
    for _ in 0..n {
        let p = sampler.sample()?;
        let v = p.eval(a)?;
        if !v.is_zero_within(super::character::FLOAT_TOLERANCE) {
            return Ok(RadicalVerdict::NotInRadical {
                witness: p,
                value: v,
            });
        }
    }
    Ok(RadicalVerdict::ConsistentSampled {
        samples: n,
        nilpotent_exponent: is_nilpotent(a, nilpotency_bound)?,
    })
}
