use thiserror::Error;

use crate::fragments::Fragment;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe has {0} atoms, at most {max} are supported", max = crate::logic::MAX_ATOMS)]
    UniverseTooLarge(usize),

    #[error("universe must contain at least one atom")]
    EmptyUniverse,

    #[error("invalid atom name {0:?}")]
    InvalidAtomName(String),

    #[error("atom {0:?} appears twice in the universe")]
    DuplicateAtom(String),

    #[error("atom {0:?} uses the reserved prefix `_`")]
    ReservedAtom(String),

    #[error("interpretation {bits:#b} does not fit a universe of {atoms} atoms")]
    InterpretationOutOfRange { bits: u32, atoms: usize },

    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}, column {column}: unknown atom {name:?}")]
    UnknownAtom { line: usize, column: usize, name: String },

    #[error("clause `{clause}` is not a {fragment} clause")]
    FragmentViolation { clause: String, fragment: Fragment },

    #[error("operands are defined over different atom universes")]
    UniverseMismatch,

    #[error("universe {to:?} neither extends nor prefixes {from:?}")]
    IncompatibleUniverse { from: Vec<String>, to: Vec<String> },

    #[error("knowledge base is inconsistent")]
    InconsistentKb,

    #[error("profile member {0} is inconsistent")]
    InconsistentProfileMember(usize),

    #[error("a profile needs at least one knowledge base")]
    EmptyProfile,

    #[error("distance vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("model set is not closed under the {0} closure operator")]
    NotClosed(Fragment),

    #[error("synthesized {0} formula does not reproduce the model set")]
    SynthesisFailure(Fragment),

    #[error("models {first} and {second} are at distance {found}, expected {expected}")]
    NotEquidistant {
        first: String,
        second: String,
        expected: u32,
        found: u32,
    },

    #[error("expected {expected} models, found {found}")]
    WrongModelCount { expected: usize, found: usize },

    #[error("three pairwise incomparable models are not covered by the Horn construction")]
    PairwiseIncomparableUnsupported,

    #[error("profile member {0} is not closed under the 1CNF closure operator")]
    NotOneCnfProfile(usize),

    #[error("search space of {estimated} candidate profiles exceeds the node budget of {budget}")]
    BoundsTooLarge { estimated: u128, budget: u64 },

    #[error("invalid search bounds: {0}")]
    InvalidBounds(String),
}
