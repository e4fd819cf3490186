use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::CRational;
use crate::star_poly::{Link, Mode, Presentation};

use super::character::{Character, Values};

/// Upper limit on the number of grid points [`search_characters`] visits.
pub const MAX_SEARCH_POINTS: usize = 1_000_000;

/// A seeded source of valid characters.
pub trait CharacterSampler {
    fn presentation(&self) -> &Arc<Presentation>;
    fn sample(&mut self) -> Result<Character>;
}

/// Exact characters of a relation-free presentation with real and
/// imaginary parts drawn uniformly from `{k/denominator : |k| ≤ half_width·denominator}`.
#[derive(Clone, Debug)]
pub struct RationalSampler {
    pres: Arc<Presentation>,
    rng: ChaCha8Rng,
    half_width: i64,
    denominator: i64,
}

impl RationalSampler {
    pub fn new(pres: &Arc<Presentation>, seed: u64) -> Result<Self> {
        Self::with_range(pres, seed, 4, 8)
    }

    pub fn with_range(
        pres: &Arc<Presentation>,
        seed: u64,
        half_width: i64,
        denominator: i64,
    ) -> Result<Self> {
        if pres.has_relations() {
            return Err(Error::Unsupported(
                "free sampling needs a relation-free presentation; use search_characters".into(),
            ));
        }
        if half_width < 0 || denominator < 1 {
            return Err(Error::InvalidArgument("invalid sampling range".into()));
        }
        Ok(RationalSampler {
            pres: Arc::clone(pres),
            rng: ChaCha8Rng::seed_from_u64(seed),
            half_width,
            denominator,
        })
    }

    fn draw(&mut self) -> BigRational {
        let lim = self.half_width * self.denominator;
        let k = self.rng.random_range(-lim..=lim);
        BigRational::new(BigInt::from(k), BigInt::from(self.denominator))
    }

    /// One exact value per generator, conjugacy-consistent.
    pub fn draw_values(&mut self) -> Vec<CRational> {
        let n = self.pres.arity();
        let mut vals = vec![CRational::zero(); n];
        let pres = Arc::clone(&self.pres);
        for (g, v) in pres.generators().iter().zip(vals.iter_mut()) {
            if g.adjoint {
                continue;
            }
            *v = match g.link {
                Link::SelfAdjoint => CRational::real(self.draw()),
                _ => CRational::new(self.draw(), self.draw()),
            };
        }
        if self.pres.mode() == Mode::Star {
            for i in 0..n {
                if self.pres.generators()[i].adjoint {
                    let p = self.pres.partner(i).expect("star mode");
                    vals[i] = vals[p].conj();
                }
            }
        }
        vals
    }
}

impl CharacterSampler for RationalSampler {
    fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    fn sample(&mut self) -> Result<Character> {
        let vals = self.draw_values();
        Character::exact(&self.pres, vals)
    }
}

/// Every valid character whose free coordinates all lie in `candidates`:
/// each non-adjoint generator ranges over the candidates, adjoint partners
/// take the conjugate value, and assignments failing validation are skipped.
pub fn search_characters(
    pres: &Arc<Presentation>,
    candidates: &[CRational],
) -> Result<Vec<Character>> {
    let free: Vec<usize> = (0..pres.arity())
        .filter(|&i| !pres.generators()[i].adjoint)
        .collect();
    let total = (candidates.len() as f64).powi(free.len() as i32);
    if total > MAX_SEARCH_POINTS as f64 {
        return Err(Error::InvalidArgument(format!(
            "candidate grid has {total} points, more than {MAX_SEARCH_POINTS}"
        )));
    }
    let mut out = Vec::new();
    if candidates.is_empty() && !free.is_empty() {
        return Ok(out);
    }
    let mut idx = vec![0usize; free.len()];
    loop {
        let mut vals = vec![CRational::zero(); pres.arity()];
        for (k, &g) in free.iter().enumerate() {
            vals[g] = candidates[idx[k]].clone();
        }
        if pres.mode() == Mode::Star {
            for i in 0..pres.arity() {
                if pres.generators()[i].adjoint {
                    vals[i] = vals[pres.partner(i).expect("star mode")].conj();
                }
            }
        }
        match Character::new(pres, Values::Exact(vals)) {
            Ok(c) => out.push(c),
            Err(Error::CharacterRejected(_)) => {}
            Err(e) => return Err(e),
        }
        // Mixed-radix increment.
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < candidates.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Draws uniformly from the valid characters of a finite candidate grid.
#[derive(Clone, Debug)]
pub struct GridSampler {
    pres: Arc<Presentation>,
    valid: Vec<Character>,
    rng: ChaCha8Rng,
}

impl GridSampler {
    pub fn new(pres: &Arc<Presentation>, candidates: &[CRational], seed: u64) -> Result<Self> {
        let valid = search_characters(pres, candidates)?;
        if valid.is_empty() {
            return Err(Error::InvalidArgument(
                "no candidate assignment is a valid character".into(),
            ));
        }
        Ok(GridSampler {
            pres: Arc::clone(pres),
            valid,
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    /// Small rationals `k/2` with `|k| ≤ 4` on both axes.
    pub fn default_candidates() -> Vec<CRational> {
        let mut out = Vec::new();
        for re in -4..=4 {
            for im in -4..=4 {
                out.push(CRational::new(
                    BigRational::new(re.into(), 2.into()),
                    BigRational::new(im.into(), 2.into()),
                ));
            }
        }
        out
    }

    pub fn valid(&self) -> &[Character] {
        &self.valid
    }
}

impl CharacterSampler for GridSampler {
    fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    fn sample(&mut self) -> Result<Character> {
        let k = self.rng.random_range(0..self.valid.len());
        Ok(self.valid[k].clone())
    }
}
