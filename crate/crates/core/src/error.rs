use thiserror::Error;

use crate::algebra::Field;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different fields ({0} and {1})")]
    FieldMismatch(Field, Field),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("{what} of size {size} exceeds the enumeration bound {bound}")]
    TooLarge { what: &'static str, size: usize, bound: usize },
    #[error("representation is not in standard form (I | A)")]
    NotStandardForm,
    #[error("matroid is given by circuits, not by a matrix")]
    NotRepresented,
    #[error("contraction and deletion sets overlap")]
    OverlappingSets,
    #[error("label {0} occurs in both ground sets")]
    LabelCollision(String),
    #[error("ground sets differ")]
    GroundMismatch,
    #[error("a GF(2) representation is required")]
    NotBinary,
    #[error("set is not a subtransversal")]
    NotSubtransversal,
    #[error("set is not a transversal")]
    NotTransversal,
    #[error("operation needs every skew class to have exactly three elements")]
    NotTriple,
    #[error("carrier has the wrong class sizes: {0}")]
    CarrierMismatch(String),
    #[error("multimatroid is degenerate (some skew class has fewer than two elements)")]
    Degenerate,
    #[error("multimatroid is not tight")]
    NotTight,
    #[error("transversal is not orienting")]
    NotOrienting,
    #[error("not a binary tight 3-matroid: {0}")]
    NotBinaryTight3(String),
    #[error("no weight given for element {0}")]
    IncompleteWeights(usize),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not inv-symmetric")]
    NotInvSymmetric,
    #[error("graph has loops")]
    HasLoops,
    #[error("construction check failed: {0}")]
    ConstructionMismatch(String),
    #[error("no basis transversal exists")]
    NoBasis,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("set is not a union of skew classes")]
    NotClassUnion,
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable identifier used in machine-readable error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::FieldMismatch(..) => "FieldMismatch",
            Error::UnknownElement(_) => "UnknownElement",
            Error::TooLarge { .. } => "TooLarge",
            Error::NotStandardForm => "NotStandardForm",
            Error::NotRepresented => "NotRepresented",
            Error::OverlappingSets => "OverlappingSets",
            Error::LabelCollision(_) => "LabelCollision",
            Error::GroundMismatch => "GroundMismatch",
            Error::NotBinary => "NotBinary",
            Error::NotSubtransversal => "NotSubtransversal",
            Error::NotTransversal => "NotTransversal",
            Error::NotTriple => "NotTriple",
            Error::CarrierMismatch(_) => "CarrierMismatch",
            Error::Degenerate => "Degenerate",
            Error::NotTight => "NotTight",
            Error::NotOrienting => "NotOrienting",
            Error::NotBinaryTight3(_) => "NotBinaryTight3",
            Error::IncompleteWeights(_) => "IncompleteWeights",
            Error::NotSymmetric => "NotSymmetric",
            Error::NotInvSymmetric => "NotInvSymmetric",
            Error::HasLoops => "HasLoops",
            Error::ConstructionMismatch(_) => "ConstructionMismatch",
            Error::NoBasis => "NoBasis",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::NotClassUnion => "NotClassUnion",
            Error::Invalid(_) => "Invalid",
            Error::Parse(_) => "Parse",
        }
    }

    /// True for errors caused by syntactically malformed input, as opposed to
    /// well-formed input that fails a mathematical precondition.
    pub fn is_malformed_input(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::UnknownElement(_) | Error::Invalid(_) | Error::FieldMismatch(..))
    }
}
