use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{CRational, Scalar};
use crate::star_poly::{
    free_star, same_presentation, underlying, Mode, Morphism, Presentation, StarPoly,
};

/// Relation and conjugacy tolerance for floating characters.
pub const FLOAT_TOLERANCE: f64 = 1e-12;

/// Per-generator values of a character, all exact or all floating.
#[derive(Clone, Debug, PartialEq)]
pub enum Values {
    Exact(Vec<CRational>),
    Float(Vec<Complex64>),
}

impl Values {
    pub fn len(&self) -> usize {
        match self {
            Values::Exact(v) => v.len(),
            Values::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self {
            Values::Exact(v) => Scalar::Exact(v[i].clone()),
            Values::Float(v) => Scalar::Float(v[i]),
        }
    }

    pub fn scalars(&self) -> Vec<Scalar> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    fn from_scalars(vals: Vec<Scalar>) -> Values {
        match vals
            .iter()
            .map(|s| s.as_exact().cloned())
            .collect::<Option<Vec<_>>>()
        {
            Some(exact) => Values::Exact(exact),
            None => Values::Float(vals.iter().map(Scalar::to_c64).collect()),
        }
    }
}

/// The constraint a rejected assignment violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Arity {
        expected: usize,
        found: usize,
    },
    Relation {
        relation: String,
    },
    /// A self-adjoint generator received a non-real value.
    Reality {
        generator: String,
    },
    /// `p(adj(g)) ≠ conj(p(g))`.
    Conjugacy {
        generator: String,
    },
}

impl Violation {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::Arity { .. } => "arity",
            Violation::Relation { .. } => "relation",
            Violation::Reality { .. } => "reality",
            Violation::Conjugacy { .. } => "conjugacy",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Arity { expected, found } => {
                write!(f, "expected {expected} generator values, found {found}")
            }
            Violation::Relation { relation } => write!(f, "relation `{relation}` does not vanish"),
            Violation::Reality { generator } => {
                write!(
                    f,
                    "self-adjoint generator `{generator}` must take a real value"
                )
            }
            Violation::Conjugacy { generator } => write!(
                f,
                "value of `adj({generator})` is not the conjugate of the value of `{generator}`"
            ),
        }
    }
}

/// A point of the Gel'fand spectrum: a unital (*-)homomorphism into the
/// complex numbers, stored by its values on all generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    pres: Arc<Presentation>,
    values: Values,
}

/// Accepts `values` as a character of `pres` or reports the violated
/// constraint. Exact values are checked exactly; floating values within
/// [`FLOAT_TOLERANCE`].
pub fn validate_character(pres: &Arc<Presentation>, values: Values) -> Result<Character> {
    let reject = |v| Err(Error::CharacterRejected(v));
    if values.len() != pres.arity() {
        return reject(Violation::Arity {
            expected: pres.arity(),
            found: values.len(),
        });
    }
    if pres.mode() == Mode::Star {
        for (g, gen) in pres.generators().iter().enumerate() {
            let partner = pres.partner(g).expect("star mode");
            if partner < g {
                continue;
            }
            let want = values.get(g).conj();
            let have = values.get(partner);
            if !(have - want).is_zero_within(FLOAT_TOLERANCE) {
                return reject(if partner == g {
                    Violation::Reality {
                        generator: gen.display_name(),
                    }
                } else {
                    Violation::Conjugacy {
                        generator: gen.name.clone(),
                    }
                });
            }
        }
    }
    let scalars = values.scalars();
    for rel in pres.relations() {
        let r = relation_poly(pres, &rel);
        if !r.eval(&scalars).is_zero_within(FLOAT_TOLERANCE) {
            return reject(Violation::Relation {
                relation: pres.format_terms(&rel),
            });
        }
    }
    Ok(Character {
        pres: Arc::clone(pres),
        values,
    })
}

// Relations are stored reduced against the other rules, so building the
// polynomial directly (without normalizing, which would send it to zero)
// keeps the actual relation.
fn relation_poly(pres: &Arc<Presentation>, rel: &crate::star_poly::Terms) -> StarPoly {
    StarPoly::raw(pres, rel.clone())
}

impl Character {
    pub fn new(pres: &Arc<Presentation>, values: Values) -> Result<Self> {
        validate_character(pres, values)
    }

    pub fn exact(pres: &Arc<Presentation>, values: Vec<CRational>) -> Result<Self> {
        validate_character(pres, Values::Exact(values))
    }

    pub fn float(pres: &Arc<Presentation>, values: Vec<Complex64>) -> Result<Self> {
        validate_character(pres, Values::Float(values))
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn values(&self) -> &Values {
        &self.values
    }

    pub fn value(&self, generator: usize) -> Scalar {
        self.values.get(generator)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.values, Values::Exact(_))
    }

    /// `â(p)`.
    pub fn eval(&self, a: &StarPoly) -> Result<Scalar> {
        gelfand_eval(a, self)
    }

    /// `name = value` pairs in generator order.
    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .pres
            .generators()
            .iter()
            .enumerate()
            .map(|(i, g)| format!("{} = {}", g.display_name(), self.value(i)))
            .collect();
        format!("char {{ {} }}", parts.join(" ; "))
    }
}

/// The evaluation map `(p, a) ↦ p(a) = â(p)`.
pub fn gelfand_eval(a: &StarPoly, p: &Character) -> Result<Scalar> {
    if !same_presentation(a.presentation(), &p.pres) {
        return Err(Error::MixedPresentations);
    }
    Ok(a.eval(&p.values.scalars()))
}

/// `Δ_f(p) = p ∘ f`: a character of the target pulled back to the source.
pub fn pushforward(f: &Morphism, p: &Character) -> Result<Character> {
    if !same_presentation(f.target(), &p.pres) {
        return Err(Error::MixedPresentations);
    }
    if f.source().mode() == Mode::Star {
        let check = f.is_star_hom()?;
        if !check.holds {
            let name = check
                .witness
                .map(|w| f.source().generators()[w].display_name())
                .unwrap_or_else(|| "<mode mismatch>".into());
            return Err(Error::NotStarHom(name));
        }
    }
    let vals = f
        .images()
        .iter()
        .map(|img| gelfand_eval(img, p))
        .collect::<Result<Vec<_>>>()?;
    validate_character(f.source(), Values::from_scalars(vals))
}

/// `j_A`: the same assignment read as a character of `U(A)`.
pub fn naturality_inclusion(p: &Character) -> Result<Character> {
    let u = Arc::new(underlying(&p.pres)?);
    validate_character(&u, p.values.clone())
}

/// Extends a character of an algebra `A` to `F(A)` by `p(adj(g)) = conj(p(g))`.
pub fn extend_to_free(p: &Character) -> Result<Character> {
    let free = Arc::new(free_star(&p.pres)?);
    let values = match &p.values {
        Values::Exact(v) => Values::Exact(v.iter().flat_map(|x| [x.clone(), x.conj()]).collect()),
        Values::Float(v) => Values::Float(v.iter().flat_map(|x| [*x, x.conj()]).collect()),
    };
    validate_character(&free, values)
}

/// Inverse of [`extend_to_free`]: restricts a character of `F(A)` to `A`.
pub fn restrict_from_free(q: &Character, algebra: &Arc<Presentation>) -> Result<Character> {
    let free = free_star(algebra)?;
    if free != *q.pres {
        return Err(Error::MixedPresentations);
    }
    let values = match &q.values {
        Values::Exact(v) => Values::Exact(v.iter().step_by(2).cloned().collect()),
        Values::Float(v) => Values::Float(v.iter().step_by(2).copied().collect()),
    };
    validate_character(algebra, values)
}
