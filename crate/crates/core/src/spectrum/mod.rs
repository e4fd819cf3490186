//! Characters, the Gel'fand transform and operations on spectra.
//!
//! The spectrum of a finitely generated algebra is never enumerated. It is
//! reached through validation of user-supplied assignments, seeded samplers,
//! pushforward along morphisms and the inclusion into the spectrum of the
//! underlying algebra. Every character of a finitely generated algebra is
//! treated as continuous.

mod character;
mod compact;
mod radical;
mod sampler;

pub use character::{
    extend_to_free, gelfand_eval, naturality_inclusion, pushforward, restrict_from_free,
    validate_character, Character, Values, Violation, FLOAT_TOLERANCE,
};
pub use compact::{
    coefficient_bound, coordinate_axes, relative_compactness_check, Axis, CompactBox,
    CompactnessVerdict, Part, Region, SampleSet, WitnessBound, DEFAULT_UNBOUNDEDNESS_THRESHOLD,
};
pub use radical::{is_nilpotent, radical_vanishing_check, RadicalVerdict};
pub use sampler::{search_characters, CharacterSampler, GridSampler, RationalSampler};
