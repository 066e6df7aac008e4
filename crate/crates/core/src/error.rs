use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid alphabet: {0}")]
    Alphabet(String),

    #[error("word uses generator index {index} outside an alphabet of {size} generators")]
    AlphabetMismatch { index: usize, size: usize },

    #[error("subgroup generator `{0}` is trivial in the base group")]
    TrivialSubgroupGenerator(String),

    #[error("subgroup generator `{0}` has finite order; torsion cyclic subgroups are not supported")]
    TorsionSubgroup(String),

    #[error("abelian base groups only support cyclic associated subgroups (got {0} generators)")]
    NonCyclicSubgroup(usize),

    #[error("invalid HNN specification: {0}")]
    Spec(String),

    #[error("element cap of {cap} elements exceeded after completing radius {radius_reached}")]
    MemoryCap { cap: usize, radius_reached: u32 },

    #[error("element lies outside the ball of radius {radius}; rebuild with radius at least {required}")]
    OutOfBall { radius: u32, required: u32 },

    #[error("ball of radius {have} is too small; this operation needs radius at least {needed}")]
    RadiusTooSmall { needed: u32, have: u32 },

    #[error("unknown preset `{name}`; valid presets: {valid}")]
    UnknownPreset { name: String, valid: String },
}
