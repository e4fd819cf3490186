use thiserror::Error;

use crate::spectrum::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("generator `{0}` declared selfadjoint but the presentation is in algebra mode")]
    SelfAdjointInAlgebraMode(String),

    #[error("no involution on underlying algebra")]
    NoInvolution,

    #[error("polynomials belong to different presentations")]
    MixedPresentations,

    #[error("rewriting exceeded the step budget of {budget} while applying relation `{relation}`")]
    StepBudgetExceeded { relation: String, budget: u64 },

    #[error("relations are not confluent: critical pair of `{first}` and `{second}` reduces to `{residue}`")]
    NotConfluent {
        first: String,
        second: String,
        residue: String,
    },

    #[error("relation `{0}` is a nonzero constant; the presentation defines the zero algebra")]
    InconsistentRelation(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("morphism is not a *-homomorphism: involution fails on generator `{0}`")]
    NotStarHom(String),

    #[error("character rejected: {0}")]
    CharacterRejected(Violation),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("moment rule has no value for exponent {0:?}")]
    MissingMoment(Vec<u32>),

    #[error("Gram matrix is not positive semidefinite: {0}")]
    NotPositive(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable kebab-case name of the variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::DuplicateGenerator(_) => "duplicate-generator",
            Error::UnknownGenerator(_) => "unknown-generator",
            Error::SelfAdjointInAlgebraMode(_) => "selfadjoint-in-algebra-mode",
            Error::NoInvolution => "no-involution",
            Error::MixedPresentations => "mixed-presentations",
            Error::StepBudgetExceeded { .. } => "step-budget-exceeded",
            Error::NotConfluent { .. } => "not-confluent",
            Error::InconsistentRelation(_) => "inconsistent-relation",
            Error::InvalidMorphism(_) => "invalid-morphism",
            Error::NotStarHom(_) => "not-star-hom",
            Error::CharacterRejected(_) => "character-rejected",
            Error::Unsupported(_) => "unsupported",
            Error::InvalidState(_) => "invalid-state",
            Error::MissingMoment(_) => "missing-moment",
            Error::NotPositive(_) => "not-positive",
            Error::InvalidArgument(_) => "invalid-argument",
        }
    }

    /// Mathematical rejections, as opposed to malformed input.
    pub fn is_rejection(&self) -> bool {
        matches!(
            self,
            Error::CharacterRejected(_) | Error::NotPositive(_) | Error::NotStarHom(_)
        )
    }
}
