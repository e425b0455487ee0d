use thiserror::Error;

use crate::field::FieldSpec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: FieldSpec, found: FieldSpec },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} outside the supported range 2 <= p < 2^61")]
    ModulusOutOfRange(u64),

    #[error("cannot parse scalar {text:?}: {reason}")]
    ParseScalar { text: String, reason: String },

    #[error("ambient dimension mismatch: expected {expected}, found {found}")]
    AmbientMismatch { expected: usize, found: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("dimension {dim} outside 1..={cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("braiding parameter q[{row}][{col}] is zero")]
    ZeroParameter { row: usize, col: usize },

    #[error("braiding matrix is not invertible")]
    NotInvertible,

    #[error("Yang-Baxter equation fails on e{}(x)e{}(x)e{}", witness.0, witness.1, witness.2)]
    YangBaxterViolation { witness: (usize, usize, usize) },

    #[error("braid generator index {index} out of range 1..{degree}")]
    IndexOutOfRange { index: usize, degree: usize },

    #[error("relations in degree {degree} are not closed under multiplication by V")]
    IdealViolation { degree: usize },

    #[error(
        "coproduct component ({left},{right}) does not map the relations of degree {degree} into the relation coideal"
    )]
    CoidealViolation { degree: usize, left: usize, right: usize },

    #[error("configuration mismatch: {0}")]
    ConfigMismatch(String),

    #[error("instance exceeds the monad check envelope: {0}")]
    EnvelopeExceeded(String),
}
