use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("table dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("element index {index} out of range for ring of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("axiom `{axiom}` fails at {witness:?}")]
    AxiomViolation {
        axiom: &'static str,
        witness: Vec<usize>,
    },

    #[error("bimodule axiom `{axiom}` fails at {witness:?}")]
    BimoduleAxiomViolation {
        axiom: &'static str,
        witness: Vec<usize>,
    },

    #[error("ring of order {order} exceeds size cap {cap}")]
    SizeCap { order: u128, cap: usize },

    #[error("right-ideal lattice exceeds cap of {cap} ideals")]
    LatticeCap { cap: usize },

    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),

    #[error("element {0} is not a central unit")]
    NotCentralUnit(usize),

    #[error("element {0} is not central")]
    NotCentral(usize),

    #[error("set is not a two-sided ideal (witness {witness:?})")]
    NotTwoSidedIdeal { witness: Vec<usize> },

    #[error("construction left the ambient subring at {0:?}")]
    ClosureViolation(Vec<usize>),

    #[error("socle is not a two-sided ideal (witness {witness:?})")]
    SocleNotTwoSided { witness: Vec<usize> },

    #[error("cross-check `{what}` disagrees (witness {witness:?})")]
    CrossCheckMismatch { what: String, witness: Vec<usize> },

    #[error("characterizations of delta-reversibility disagree: {0}")]
    CharacterizationMismatch(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),

    #[error("unknown corpus preset `{0}`")]
    UnknownCorpus(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn cross_check(what: impl Into<String>, witness: Vec<usize>) -> Self {
        Error::CrossCheckMismatch {
            what: what.into(),
            witness,
        }
    }
}
