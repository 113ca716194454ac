use thiserror::Error;

use crate::lattice::{DivisorClass, Int, RegimeCondition};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in exact lattice arithmetic")]
    Overflow,

    #[error("parameters outside the regime: {}", join(.0))]
    RegimeViolation(Vec<RegimeCondition>),

    #[error("|g| and |s| must not exceed {limit}")]
    ParamsOutOfRange { limit: Int },

    #[error("discriminant d^2 - 12(g-1) = {0} is not positive")]
    DegenerateDiscriminant(Int),

    #[error("isotropic class {0} matches no known family")]
    ClassificationMismatch(DivisorClass),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("{quantity}: closed form gives {closed_form}, pairing gives {pairing}")]
    InternalInconsistency {
        quantity: String,
        closed_form: Int,
        pairing: Int,
    },

    #[error("root bound violated: {0}")]
    BoundViolation(String),

    #[error("bundle rank must be at least 1, got {0}")]
    InvalidRank(Int),

    #[error("Clifford index {0} is below 5; no witness exists")]
    GammaTooSmall(Int),
}

fn join(conds: &[RegimeCondition]) -> String {
    conds
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}
