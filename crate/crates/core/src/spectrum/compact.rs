use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::CRational;
use crate::star_poly::{same_presentation, Link, Mode, Presentation, StarPoly};

use super::character::Character;

pub const DEFAULT_UNBOUNDEDNESS_THRESHOLD: f64 = 1e9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Re,
    Im,
}

/// One real coordinate of the spectrum: the real or imaginary part of a
/// generator's value.
#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub generator: usize,
    pub part: Part,
    pub lo: f64,
    pub hi: f64,
}

/// Real coordinates of characters: one axis per self-adjoint generator,
/// two per free generator (its adjoint partner is determined by
/// conjugation) and two per generator of an algebra-mode presentation.
pub fn coordinate_axes(pres: &Presentation) -> Vec<(usize, Part)> {
    let mut out = Vec::new();
    for (i, g) in pres.generators().iter().enumerate() {
        match g.link {
            Link::SelfAdjoint => out.push((i, Part::Re)),
            _ if g.adjoint => {}
            _ => {
                out.push((i, Part::Re));
                out.push((i, Part::Im));
            }
        }
    }
    out
}

/// An axis-aligned box in character coordinates; a compact subset of the
/// ambient coordinate space containing part of the spectrum.
#[derive(Clone, Debug)]
pub struct CompactBox {
    pres: Arc<Presentation>,
    axes: Vec<Axis>,
}

impl CompactBox {
    /// `bounds[k]` bounds the k-th axis of [`coordinate_axes`].
    pub fn new(pres: &Arc<Presentation>, bounds: Vec<(f64, f64)>) -> Result<Self> {
        let coords = coordinate_axes(pres);
        if bounds.len() != coords.len() {
            return Err(Error::InvalidArgument(format!(
                "box needs {} axis bounds, got {}",
                coords.len(),
                bounds.len()
            )));
        }
        let mut axes = Vec::with_capacity(coords.len());
        for ((generator, part), (lo, hi)) in coords.into_iter().zip(bounds) {
            if !lo.is_finite() || !hi.is_finite() || lo > hi {
                return Err(Error::InvalidArgument(format!(
                    "invalid interval [{lo}, {hi}]"
                )));
            }
            axes.push(Axis {
                generator,
                part,
                lo,
                hi,
            });
        }
        Ok(CompactBox {
            pres: Arc::clone(pres),
            axes,
        })
    }

    /// `[lo, hi]` on every axis.
    pub fn cube(pres: &Arc<Presentation>, lo: f64, hi: f64) -> Result<Self> {
        let n = coordinate_axes(pres).len();
        Self::new(pres, vec![(lo, hi); n])
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axis_name(&self, k: usize) -> String {
        let a = &self.axes[k];
        let g = self.pres.generators()[a.generator].display_name();
        match (self.pres.generators()[a.generator].link, a.part) {
            (Link::SelfAdjoint, _) => g,
            (_, Part::Re) => format!("re({g})"),
            (_, Part::Im) => format!("im({g})"),
        }
    }

    pub fn contains(&self, point: &[f64]) -> bool {
        point.len() == self.dim()
            && self
                .axes
                .iter()
                .zip(point)
                .all(|(a, &x)| a.lo <= x && x <= a.hi)
    }

    /// Generator values at a coordinate point.
    pub fn values_at(&self, point: &[f64]) -> Vec<Complex64> {
        let mut vals = vec![Complex64::new(0.0, 0.0); self.pres.arity()];
        for (a, &x) in self.axes.iter().zip(point) {
            match a.part {
                Part::Re => vals[a.generator].re = x,
                Part::Im => vals[a.generator].im = x,
            }
        }
        self.fill_partners(&mut vals, |z| z.conj());
        vals
    }

    pub fn exact_values_at(&self, point: &[BigRational]) -> Vec<CRational> {
        let mut vals = vec![CRational::zero(); self.pres.arity()];
        for (a, x) in self.axes.iter().zip(point) {
            match a.part {
                Part::Re => vals[a.generator].re = x.clone(),
                Part::Im => vals[a.generator].im = x.clone(),
            }
        }
        self.fill_partners(&mut vals, CRational::conj);
        vals
    }

    fn fill_partners<T: Clone>(&self, vals: &mut [T], conj: impl Fn(&T) -> T) {
        if self.pres.mode() != Mode::Star {
            return;
        }
        for (i, g) in self.pres.generators().iter().enumerate() {
            if g.adjoint {
                let p = self.pres.partner(i).expect("star mode");
                vals[i] = conj(&vals[p]);
            }
        }
    }

    pub fn character_at(&self, point: &[f64]) -> Result<Character> {
        Character::float(&self.pres, self.values_at(point))
    }

    /// Largest modulus generator `g` attains on the box.
    pub fn modulus_bound(&self, g: usize) -> f64 {
        let g = if self.pres.generators()[g].adjoint {
            self.pres.partner(g).expect("adjoint has a partner")
        } else {
            g
        };
        let sq: f64 = self
            .axes
            .iter()
            .filter(|a| a.generator == g)
            .map(|a| {
                let m = a.lo.abs().max(a.hi.abs());
                m * m
            })
            .sum();
        sq.sqrt()
    }

    /// Uniform grid with `resolution` points per axis, endpoints included,
    /// as exact rational coordinates.
    pub fn grid(&self, resolution: usize) -> Result<Vec<Vec<BigRational>>> {
        if resolution < 2 {
            return Err(Error::InvalidArgument(
                "grid resolution must be at least 2 per axis".into(),
            ));
        }
        let per_axis: Vec<Vec<BigRational>> = self
            .axes
            .iter()
            .map(|a| {
                let lo = BigRational::from_float(a.lo).expect("finite");
                let hi = BigRational::from_float(a.hi).expect("finite");
                let span = &hi - &lo;
                let steps = BigRational::from_integer((resolution as i64 - 1).into());
                (0..resolution)
                    .map(|i| &lo + &span * BigRational::from_integer((i as i64).into()) / &steps)
                    .collect()
            })
            .collect();
        Ok(cartesian(&per_axis))
    }
}

pub(crate) fn cartesian<T: Clone>(axes: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for axis in axes {
        let mut next = Vec::with_capacity(out.len() * axis.len());
        for prefix in &out {
            for v in axis {
                let mut p = prefix.clone();
                p.push(v.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Certified upper bound of `|â|` on the box: `Σ |c| · Π M_g^e` with `M_g`
/// the modulus bound of each generator, inflated by a few ulps.
pub fn coefficient_bound(a: &StarPoly, k: &CompactBox) -> Result<f64> {
    if !same_presentation(a.presentation(), &k.pres) {
        return Err(Error::MixedPresentations);
    }
    let moduli: Vec<f64> = (0..k.pres.arity()).map(|g| k.modulus_bound(g)).collect();
    let mut total = 0.0;
    for (m, c) in a.terms() {
        let mut t = c.to_c64().norm();
        for (g, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                t *= moduli[g].powi(e as i32);
            }
        }
        total += t;
    }
    Ok(total * (1.0 + 1e-12))
}

/// A finite list of characters standing in for a subset of the spectrum.
#[derive(Clone, Debug)]
pub struct SampleSet {
    pres: Arc<Presentation>,
    characters: Vec<Character>,
}

impl SampleSet {
    pub fn new(pres: &Arc<Presentation>, characters: Vec<Character>) -> Result<Self> {
        if characters
            .iter()
            .any(|c| !same_presentation(c.presentation(), pres))
        {
            return Err(Error::MixedPresentations);
        }
        Ok(SampleSet {
            pres: Arc::clone(pres),
            characters,
        })
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }
}

pub enum Region<'a> {
    Box(&'a CompactBox),
    Samples(&'a SampleSet),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessBound {
    pub witness: String,
    /// Certified sup for boxes, observed max for samples.
    pub bound: f64,
    pub exceeds_threshold: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompactnessVerdict {
    pub relatively_compact: bool,
    /// Verdicts on sample sets only hold at the sampled resolution.
    pub sampled: bool,
    pub bounds: Vec<WitnessBound>,
}

impl fmt::Display for CompactnessVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = if self.relatively_compact {
            "relatively compact"
        } else {
            "not relatively compact"
        };
        if self.sampled {
            write!(f, "{base} (at sampled resolution)")
        } else {
            f.write_str(base)
        }
    }
}

/// A subset of the spectrum is relatively compact iff every transform is
/// bounded on it. Boxes always pass, with certified bounds per witness. For
/// samples, any witness whose observed modulus exceeds `threshold` flags
/// the set as unbounded.
pub fn relative_compactness_check(
    region: Region<'_>,
    witnesses: &[StarPoly],
    threshold: f64,
) -> Result<CompactnessVerdict> {
    if witnesses.is_empty() {
        return Err(Error::InvalidArgument(
            "at least one witness is required".into(),
        ));
    }
    match region {
        Region::Box(k) => {
            let bounds = witnesses
                .iter()
                .map(|w| {
                    Ok(WitnessBound {
                        witness: w.to_string(),
                        bound: coefficient_bound(w, k)?,
                        exceeds_threshold: false,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(CompactnessVerdict {
                relatively_compact: true,
                sampled: false,
                bounds,
            })
        }
        Region::Samples(s) => {
            let mut bounds = Vec::with_capacity(witnesses.len());
            for w in witnesses {
                let mut sup: f64 = 0.0;
                for p in &s.characters {
                    sup = sup.max(p.eval(w)?.norm());
                }
                bounds.push(WitnessBound {
                    witness: w.to_string(),
                    bound: sup,
                    exceeds_threshold: sup > threshold,
                });
            }
            Ok(CompactnessVerdict {
                relatively_compact: bounds.iter().all(|b| !b.exceeds_threshold),
                sampled: true,
                bounds,
            })
        }
    }
}
