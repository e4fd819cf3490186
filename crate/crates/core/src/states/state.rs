use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{rat_to_f64, CRational, Scalar};
use crate::spectrum::{coordinate_axes, Character, CompactBox, Part};
use crate::star_poly::{same_presentation, Link, Mode, Monomial, Presentation, StarPoly};

use super::quadrature::tensor_rule;

/// Tolerance on the total quadrature weight.
pub const QUADRATURE_WEIGHT_TOLERANCE: f64 = 1e-12;

/// Built-in densities for quadrature states, relative to the box they
/// live on. They need not be normalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Density {
    Uniform,
    /// Product of `sqrt(1 - u²)` over the axes, `u` the coordinate
    /// rescaled to `[-1, 1]`.
    Semicircle,
}

impl Density {
    pub fn from_name(name: &str) -> Option<Density> {
        match name {
            "uniform" => Some(Density::Uniform),
            "semicircle" => Some(Density::Semicircle),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Density::Uniform => "uniform",
            Density::Semicircle => "semicircle",
        }
    }

    pub fn value(&self, region: &CompactBox, point: &[f64]) -> f64 {
        match self {
            Density::Uniform => 1.0,
            Density::Semicircle => region
                .axes()
                .iter()
                .zip(point)
                .map(|(a, &x)| {
                    let u = (2.0 * x - a.lo - a.hi) / (a.hi - a.lo);
                    (1.0 - u * u).max(0.0).sqrt()
                })
                .product(),
        }
    }
}

/// Moments of an analytic state, keyed by exponent vectors of irreducible
/// monomials.
#[derive(Clone, Debug, PartialEq)]
pub enum MomentRule {
    /// Independent standard Gaussians: `N(0,1)` for every self-adjoint
    /// generator and a standard complex Gaussian (`E|z|² = 1`) for every
    /// free pair.
    Gaussian,
    /// An explicit finite table; any monomial not listed is an error.
    Table(BTreeMap<Vec<u32>, CRational>),
}

/// `m_k` of the standard real Gaussian: `m_0 = 1`, `m_1 = 0`,
/// `m_k = (k-1) m_{k-2}`.
pub fn gaussian_moment(k: u32) -> BigRational {
    if k % 2 == 1 {
        return BigRational::zero();
    }
    let mut m = BigRational::one();
    let mut j = 1u32;
    while j < k {
        m *= BigRational::from_integer(j.into());
        j += 2;
    }
    m
}

fn factorial(n: u32) -> BigRational {
    (1..=n).fold(BigRational::one(), |acc, k| {
        acc * BigRational::from_integer(k.into())
    })
}

impl MomentRule {
    pub fn moment(&self, pres: &Presentation, m: &Monomial) -> Option<CRational> {
        match self {
            MomentRule::Table(t) => t.get(m.exponents()).cloned(),
            MomentRule::Gaussian => {
                let e = m.exponents();
                let mut out = BigRational::one();
                for (i, g) in pres.generators().iter().enumerate() {
                    match g.link {
                        Link::SelfAdjoint => out *= gaussian_moment(e[i]),
                        Link::Partner(p) if !g.adjoint => {
                            if e[i] != e[p] {
                                return Some(CRational::zero());
                            }
                            out *= factorial(e[i]);
                        }
                        _ => {}
                    }
                }
                Some(CRational::real(out))
            }
        }
    }
}

/// A state request as written in a state file.
#[derive(Clone, Debug)]
pub enum StateSpec {
    Atomic {
        atoms: Vec<(Character, BigRational)>,
        /// Divide the weights by their sum instead of rejecting.
        rescale: bool,
    },
    Density {
        density: Density,
        region: CompactBox,
        order: usize,
    },
    Gaussian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateKind {
    Atomic,
    Quadrature,
    Analytic,
}

impl StateKind {
    pub fn name(&self) -> &'static str {
        match self {
            StateKind::Atomic => "atomic",
            StateKind::Quadrature => "quadrature",
            StateKind::Analytic => "analytic",
        }
    }
}

#[derive(Clone, Debug)]
enum Repr {
    Atomic {
        atoms: Vec<(Character, BigRational)>,
        support: CompactBox,
    },
    Quadrature {
        region: CompactBox,
        density: Option<Density>,
        nodes: Vec<Vec<Complex64>>,
        weights: Vec<f64>,
    },
    Analytic(MomentRule),
}

/// A positive normalized functional, realized as a measure (atomic or
/// quadrature) or through a moment rule. Moment-rule states are only
/// densely defined: they carry no compact support and no continuity
/// certificate.
#[derive(Clone, Debug)]
pub struct State {
    pres: Arc<Presentation>,
    repr: Repr,
}

fn require_star(pres: &Presentation) -> Result<()> {
    if pres.mode() == Mode::Star {
        Ok(())
    } else {
        Err(Error::NoInvolution)
    }
}

fn coordinates(p: &Character) -> Vec<f64> {
    coordinate_axes(p.presentation())
        .into_iter()
        .map(|(g, part)| {
            let v = p.value(g).to_c64();
            match part {
                Part::Re => v.re,
                Part::Im => v.im,
            }
        })
        .collect()
}

impl State {
    /// Atomic state. Weights must be positive; when they do not sum to 1
    /// they are rescaled if `rescale` is set and rejected otherwise.
    pub fn atomic(
        pres: &Arc<Presentation>,
        atoms: Vec<(Character, BigRational)>,
        rescale: bool,
    ) -> Result<State> {
        require_star(pres)?;
        if atoms.is_empty() {
            return Err(Error::InvalidState(
                "an atomic state needs at least one atom".into(),
            ));
        }
        if atoms
            .iter()
            .any(|(p, _)| !same_presentation(p.presentation(), pres))
        {
            return Err(Error::MixedPresentations);
        }
        if let Some((_, w)) = atoms.iter().find(|(_, w)| !w.is_positive()) {
            return Err(Error::InvalidState(format!("weight {w} is not positive")));
        }
        let total: BigRational = atoms.iter().map(|(_, w)| w.clone()).sum();
        let atoms = if total.is_one() {
            atoms
        } else if rescale {
            atoms.into_iter().map(|(p, w)| (p, w / &total)).collect()
        } else {
            return Err(Error::InvalidState(format!(
                "weights sum to {total}, not 1 (request normalization to rescale)"
            )));
        };
        let coords: Vec<Vec<f64>> = atoms.iter().map(|(p, _)| coordinates(p)).collect();
        let dim = coordinate_axes(pres).len();
        let bounds = (0..dim)
            .map(|k| {
                let it = coords.iter().map(|c| c[k]);
                (
                    it.clone().fold(f64::INFINITY, f64::min),
                    it.fold(f64::NEG_INFINITY, f64::max),
                )
            })
            .collect();
        let support = CompactBox::new(pres, bounds)?;
        Ok(State {
            pres: Arc::clone(pres),
            repr: Repr::Atomic { atoms, support },
        })
    }

    /// Tensor Gauss–Legendre discretization of `density` on `region`, with
    /// weights normalized to total mass 1.
    pub fn from_density(region: &CompactBox, density: Density, order: usize) -> Result<State> {
        if order == 0 {
            return Err(Error::InvalidState(
                "quadrature order must be positive".into(),
            ));
        }
        if region.axes().iter().any(|a| a.hi <= a.lo) {
            return Err(Error::InvalidState(
                "density states need a box with nonempty interior".into(),
            ));
        }
        let bounds: Vec<(f64, f64)> = region.axes().iter().map(|a| (a.lo, a.hi)).collect();
        let (points, raw) = tensor_rule(&bounds, order);
        let weights: Vec<f64> = points
            .iter()
            .zip(&raw)
            .map(|(p, w)| w * density.value(region, p))
            .collect();
        let mass: f64 = weights.iter().sum();
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::InvalidState(format!(
                "density has total mass {mass} on the box"
            )));
        }
        let weights = weights.into_iter().map(|w| w / mass).collect();
        Self::build_quadrature(region, Some(density), points, weights)
    }

    /// Quadrature state from explicit nodes (box coordinates) and weights.
    /// Nodes must lie in the box; weights must be positive and sum to 1.
    pub fn quadrature(
        region: &CompactBox,
        nodes: Vec<Vec<f64>>,
        weights: Vec<f64>,
    ) -> Result<State> {
        if nodes.len() != weights.len() || nodes.is_empty() {
            return Err(Error::InvalidState(
                "quadrature needs as many weights as nodes, and at least one".into(),
            ));
        }
        if let Some(p) = nodes.iter().find(|p| !region.contains(p)) {
            return Err(Error::InvalidState(format!(
                "quadrature node {p:?} lies outside the box"
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
            return Err(Error::InvalidState(format!("weight {w} is not positive")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > QUADRATURE_WEIGHT_TOLERANCE {
            return Err(Error::InvalidState(format!(
                "weights sum to {total}, not 1"
            )));
        }
        Self::build_quadrature(region, None, nodes, weights)
    }

    fn build_quadrature(
        region: &CompactBox,
        density: Option<Density>,
        points: Vec<Vec<f64>>,
        weights: Vec<f64>,
    ) -> Result<State> {
        let pres = region.presentation();
        require_star(pres)?;
        // Validating every node as a character catches boxes of a
        // presentation with relations, whose points are mostly not in the
        // spectrum.
        let nodes = points
            .iter()
            .map(|p| {
                let c = region.character_at(p)?;
                Ok(c.values().scalars().iter().map(Scalar::to_c64).collect())
            })
            .collect::<Result<Vec<Vec<Complex64>>>>()?;
        Ok(State {
            pres: Arc::clone(pres),
            repr: Repr::Quadrature {
                region: region.clone(),
                density,
                nodes,
                weights,
            },
        })
    }

    /// State given by a moment rule. `E(1) = 1` is checked; positivity is
    /// only checked later, by the GNS construction.
    pub fn analytic(pres: &Arc<Presentation>, rule: MomentRule) -> Result<State> {
        require_star(pres)?;
        if matches!(rule, MomentRule::Gaussian) && pres.has_relations() {
            return Err(Error::Unsupported(
                "the Gaussian state needs a presentation without relations".into(),
            ));
        }
        let state = State {
            pres: Arc::clone(pres),
            repr: Repr::Analytic(rule),
        };
        let e1 = state.expect(&StarPoly::one(pres))?;
        if e1 != Scalar::Exact(CRational::one()) {
            return Err(Error::InvalidState(format!("E(1) = {e1}, not 1")));
        }
        Ok(state)
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn kind(&self) -> StateKind {
        match self.repr {
            Repr::Atomic { .. } => StateKind::Atomic,
            Repr::Quadrature { .. } => StateKind::Quadrature,
            Repr::Analytic(_) => StateKind::Analytic,
        }
    }

    /// Defined on polynomials but not continuous for the compact-open
    /// topology.
    pub fn densely_defined(&self) -> bool {
        self.kind() == StateKind::Analytic
    }

    /// Whether expectations are computed in exact arithmetic.
    pub fn is_exact(&self) -> bool {
        match &self.repr {
            Repr::Atomic { atoms, .. } => atoms.iter().all(|(p, _)| p.is_exact()),
            Repr::Quadrature { .. } => false,
            Repr::Analytic(_) => true,
        }
    }

    /// `(K, C)` with `|E(a)| ≤ C |â|_K`: the supporting box and `C = 1`
    /// for measures; `None` for densely defined states.
    pub fn continuity_certificate(&self) -> Option<(&CompactBox, f64)> {
        match &self.repr {
            Repr::Atomic { support, .. } => Some((support, 1.0)),
            Repr::Quadrature { region, .. } => Some((region, 1.0)),
            Repr::Analytic(_) => None,
        }
    }

    pub fn atoms(&self) -> Option<&[(Character, BigRational)]> {
        match &self.repr {
            Repr::Atomic { atoms, .. } => Some(atoms),
            _ => None,
        }
    }

    pub fn quadrature_weights(&self) -> Option<&[f64]> {
        match &self.repr {
            Repr::Quadrature { weights, .. } => Some(weights),
            _ => None,
        }
    }

    pub fn density(&self) -> Option<Density> {
        match &self.repr {
            Repr::Quadrature { density, .. } => *density,
            _ => None,
        }
    }

    pub fn moment_rule(&self) -> Option<&MomentRule> {
        match &self.repr {
            Repr::Analytic(r) => Some(r),
            _ => None,
        }
    }

    /// `E(a)`: the weighted sum of `â` over atoms or nodes, or the linear
    /// extension of the moment rule.
    pub fn expect(&self, a: &StarPoly) -> Result<Scalar> {
        if !same_presentation(a.presentation(), &self.pres) {
            return Err(Error::MixedPresentations);
        }
        match &self.repr {
            Repr::Atomic { atoms, .. } => {
                let mut total = Scalar::Exact(CRational::zero());
                for (p, w) in atoms {
                    total = total + Scalar::Exact(CRational::real(w.clone())) * p.eval(a)?;
                }
                Ok(total)
            }
            Repr::Quadrature { nodes, weights, .. } => Ok(Scalar::Float(
                nodes
                    .iter()
                    .zip(weights)
                    .map(|(v, w)| a.eval_c64(v) * *w)
                    .sum(),
            )),
            Repr::Analytic(rule) => {
                let mut total = CRational::zero();
                for (m, c) in a.terms() {
                    let mom = rule
                        .moment(&self.pres, m)
                        .ok_or_else(|| Error::MissingMoment(m.exponents().to_vec()))?;
                    total += &(c * &mom);
                }
                Ok(Scalar::Exact(total))
            }
        }
    }
}

/// Builds the state described by a parsed state literal.
pub fn make_state(pres: &Arc<Presentation>, spec: StateSpec) -> Result<State> {
    match spec {
        StateSpec::Atomic { atoms, rescale } => State::atomic(pres, atoms, rescale),
        StateSpec::Density {
            density,
            region,
            order,
        } => {
            if !same_presentation(region.presentation(), pres) {
                return Err(Error::MixedPresentations);
            }
            State::from_density(&region, density, order)
        }
        StateSpec::Gaussian => State::analytic(pres, MomentRule::Gaussian),
    }
}

/// `E(a)`.
pub fn expect(state: &State, a: &StarPoly) -> Result<Scalar> {
    state.expect(a)
}

/// `rat_to_f64` of a real exact scalar, or the real part of a float.
pub(crate) fn real_part(s: &Scalar) -> f64 {
    match s {
        Scalar::Exact(q) => rat_to_f64(&q.re),
        Scalar::Float(z) => z.re,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_poly, parse_presentation, parse_state};

    fn cx() -> Arc<Presentation> {
        Arc::new(parse_presentation("algebra A; generator x : selfadjoint;", Mode::Star).unwrap())
    }

    fn state(pres: &Arc<Presentation>, text: &str) -> Result<State> {
        make_state(pres, parse_state(text, pres)?)
    }

    fn ex(pres: &Arc<Presentation>, s: &State, a: &str) -> Scalar {
        s.expect(&parse_poly(a, pres).unwrap()).unwrap()
    }

    #[test]
    fn two_point_state() {
        let p = cx();
        let s = state(&p, "state atomic { (x=1): 1/2 ; (x=-1): 1/2 }").unwrap();
        assert_eq!(s.kind(), StateKind::Atomic);
        assert_eq!(ex(&p, &s, "x^2"), Scalar::Exact(CRational::one()));
        assert_eq!(ex(&p, &s, "x^3"), Scalar::Exact(CRational::zero()));
        assert_eq!(ex(&p, &s, "1"), Scalar::Exact(CRational::one()));
        let (k, c) = s.continuity_certificate().unwrap();
        assert_eq!((k.axes()[0].lo, k.axes()[0].hi, c), (-1.0, 1.0, 1.0));
    }

    #[test]
    fn atomic_normalization() {
        let p = cx();
        assert!(matches!(
            state(&p, "state atomic { (x=1): 1 ; (x=-1): 1 }"),
            Err(Error::InvalidState(_))
        ));
        let s = state(&p, "state atomic normalize { (x=1): 1 ; (x=-1): 3 }").unwrap();
        assert_eq!(ex(&p, &s, "x"), Scalar::Exact(CRational::ratio(-1, 2)));
        assert!(matches!(
            state(&p, "state atomic normalize { (x=1): 2 ; (x=-1): -1 }"),
            Err(Error::InvalidState(_))
        ));
    }

    #[test]
    fn gaussian_moments() {
        let p = cx();
        let s = state(&p, "state gaussian(x)").unwrap();
        assert!(s.densely_defined());
        assert!(s.continuity_certificate().is_none());
        let m: Vec<String> = (0..=6)
            .map(|k| ex(&p, &s, &format!("x^{k}")).to_string())
            .collect();
        assert_eq!(m, ["1", "0", "1", "0", "3", "0", "15"]);
    }

    #[test]
    fn complex_gaussian() {
        let p = Arc::new(parse_presentation("algebra C; generator z : free;", Mode::Star).unwrap());
        let s = state(&p, "state gaussian").unwrap();
        assert_eq!(ex(&p, &s, "z*adj(z)").to_string(), "1");
        assert_eq!(ex(&p, &s, "z^2*adj(z)^2").to_string(), "2");
        assert_eq!(ex(&p, &s, "z^2*adj(z)").to_string(), "0");
    }

    #[test]
    fn gaussian_needs_relation_free() {
        let p = Arc::new(
            parse_presentation(
                "algebra N; generator x : selfadjoint; relation x^2;",
                Mode::Star,
            )
            .unwrap(),
        );
        assert!(matches!(
            state(&p, "state gaussian"),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn uniform_quadrature() {
        let p = cx();
        let s = state(&p, "state density \"uniform\" on [0,1] order 16").unwrap();
        let w: f64 = s.quadrature_weights().unwrap().iter().sum();
        assert!((w - 1.0).abs() < 1e-12);
        assert!((ex(&p, &s, "x").to_c64().re - 0.5).abs() < 1e-12);
        assert!((ex(&p, &s, "x^2").to_c64().re - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn semicircle_second_moment() {
        // Semicircle on [-2,2]: variance 1.
        let p = cx();
        let s = state(&p, "state density \"semicircle\" on [-2,2] order 40").unwrap();
        assert!((ex(&p, &s, "x^2").to_c64().re - 1.0).abs() < 1e-3);
    }

    #[test]
    fn explicit_quadrature_checks() {
        let p = cx();
        let k = CompactBox::new(&p, vec![(0.0, 1.0)]).unwrap();
        assert!(State::quadrature(&k, vec![vec![0.5]], vec![1.0]).is_ok());
        assert!(State::quadrature(&k, vec![vec![1.5]], vec![1.0]).is_err());
        assert!(State::quadrature(&k, vec![vec![0.5]], vec![0.9]).is_err());
    }

    #[test]
    fn moment_table() {
        let p = cx();
        let mut t = BTreeMap::new();
        t.insert(vec![0], CRational::one());
        t.insert(vec![1], CRational::zero());
        let s = State::analytic(&p, MomentRule::Table(t)).unwrap();
        let err = s.expect(&parse_poly("x^2", &p).unwrap()).unwrap_err();
        assert_eq!(err, Error::MissingMoment(vec![2]));
    }

    #[test]
    fn algebra_mode_has_no_states() {
        let p =
            Arc::new(parse_presentation("algebra A; generator x : free;", Mode::Algebra).unwrap());
        assert!(matches!(
            State::analytic(&p, MomentRule::Gaussian),
            Err(Error::NoInvolution)
        ));
    }
}
