use thiserror::Error;

use crate::axioms::Axiom;
use crate::semiring::{Kind, Scalar};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("scalar {value:?} does not belong to the {kind} semiring")]
    NotInDomain { kind: Kind, value: Scalar },

    #[error("semiring mismatch: {left} vs {right}")]
    DomainMismatch { left: Kind, right: Kind },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("axiom (U) needs a counit but the candidate has none")]
    MissingCounit,

    #[error("axiom (H) is checked against a star map, use check_h")]
    HNeedsStar,

    #[error("{relation} fails {property} at ({left}, {right})")]
    Similarity {
        relation: &'static str,
        property: &'static str,
        left: usize,
        right: usize,
    },

    #[error("class containing {element} is not a commutative group: {reason}")]
    NotAGroup { element: usize, reason: String },

    #[error("(M) violated: entry ({row}, {col}) = {value} but summand of order {order} forces {expected}")]
    WeightViolation {
        row: usize,
        col: usize,
        value: f64,
        expected: f64,
        order: usize,
    },

    #[error(
        "eigenvalue clustering stayed ambiguous after {attempts} attempts (last seed {seed:#x}); \
         re-run with a different seed"
    )]
    DegenerateSpectrum { attempts: usize, seed: u64 },

    #[error("operation requires the {expected} semiring, candidate is {found}")]
    WrongSemiring { expected: &'static str, found: Kind },

    #[error("carrier size {0} out of range 1..=4")]
    SizeOutOfRange(usize),

    #[error("candidates of mixed carrier sizes")]
    MixedSizes,

    #[error("invalid group spec {0:?}")]
    GroupSpec(String),

    #[error("nonabelian group {0} is only available over the boolean semiring")]
    Nonabelian(String),

    #[error("unknown counterexample {0:?}")]
    UnknownCounterexample(String),

    #[error("empty group list")]
    EmptySpecList,

    #[error("unknown axiom tag {0:?}")]
    UnknownAxiom(String),

    #[error("axiom {0} is not applicable here")]
    Inapplicable(Axiom),

    #[error("algebra file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
