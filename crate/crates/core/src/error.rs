use thiserror::Error;

/// Every failure the library reports. The variant name doubles as the
/// machine-readable error name in CLI responses (see [`Error::name`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("genus mismatch: expected {expected}, found {found}")]
    GenusMismatch { expected: usize, found: usize },

    #[error("generator index {index} is out of range for genus {genus}")]
    GeneratorOutOfRange { index: usize, genus: usize },

    #[error("word is not in the commutator subgroup (abelianization {abelianization:?})")]
    NotInCommutatorSubgroup { abelianization: Vec<i64> },

    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("automorphism does not act trivially on first homology")]
    NotTorelli,

    #[error("automorphism only preserves the relator up to conjugacy; a relator-fixing automorphism is required")]
    RelatorNotFixed,

    #[error("tensor is not in the image of the canonical embedding{}", describe_denominators(.denominators))]
    NotInImage {
        /// `Some` when a rational preimage exists, listing the denominators it needs.
        denominators: Option<Vec<i64>>,
    },

    #[error("genus {genus} is too small (need at least {minimum})")]
    GenusTooSmall { genus: usize, minimum: usize },

    #[error("modulus {n} does not divide 2g-2 = {twice_euler}")]
    InvalidModulus { n: u64, twice_euler: u64 },

    #[error("dimension or modulus mismatch: {0}")]
    Mismatch(String),

    #[error("matrix is not symplectic")]
    NotSymplectic,

    #[error("no shipped catalogue for genus {0}")]
    UnsupportedGenus(usize),

    #[error("catalogue failed validation: {0}")]
    CorruptCatalogue(String),

    #[error("parse error: {0}")]
    Parse(String),
}

fn describe_denominators(d: &Option<Vec<i64>>) -> String {
    match d {
        Some(ds) => format!(" (a rational preimage exists with denominators {ds:?})"),
        None => " (no rational preimage)".to_string(),
    }
}

impl Error {
    /// Stable error name used in JSON error envelopes.
    pub fn name(&self) -> &'static str {
        match self {
            Error::GenusMismatch { .. } => "GenusMismatch",
            Error::GeneratorOutOfRange { .. } => "GeneratorOutOfRange",
            Error::NotInCommutatorSubgroup { .. } => "NotInCommutatorSubgroup",
            Error::InvalidAutomorphism(_) => "InvalidAutomorphism",
            Error::NotTorelli => "NotTorelli",
            Error::RelatorNotFixed => "RelatorNotFixed",
            Error::NotInImage { .. } => "NotInImage",
            Error::GenusTooSmall { .. } => "GenusTooSmall",
            Error::InvalidModulus { .. } => "InvalidModulus",
            Error::Mismatch(_) => "Mismatch",
            Error::NotSymplectic => "NotSymplectic",
            Error::UnsupportedGenus(_) => "UnsupportedGenus",
            Error::CorruptCatalogue(_) => "CorruptCatalogue",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_genus(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::GenusMismatch { expected, found })
    }
}
