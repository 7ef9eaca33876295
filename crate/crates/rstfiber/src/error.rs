//! One error enum for the whole pipeline, with stable process exit codes.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("presentation polynomial {poly:#b} is reducible over F_2")]
    ReduciblePresentation { poly: u32 },

    #[error("residue degree m={m} outside the supported range 1..=16")]
    UnsupportedDegree { m: u32 },

    #[error("ramification index {e} exceeds the supported bound 2^16")]
    RamificationOverflow { e: u64 },

    #[error("element indistinguishable from zero at working precision ({context})")]
    PrecisionExhausted { context: String },

    #[error("residue requested for an element of negative valuation {val}")]
    NegativeValuation { val: String },

    #[error("residue root is not simple: {context}")]
    NotSimpleRoot { context: String },

    #[error("residue field F_2^{m} too small for the requested operation")]
    ResidueFieldTooSmall { m: u32 },

    #[error("required valuation {needed} is not in the value group (1/{e})Z")]
    ValueGroupGap { needed: String, e: u32 },

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("decomposition is already good; nothing to improve")]
    NotImprovable,

    #[error("square decomposition did not settle within {cap} improvement steps ({context})")]
    IterationCapExceeded { cap: u32, context: String },

    #[error("reconstructed depth function has an inconsistent slope: {context}")]
    InconsistentSlope { context: String },

    #[error("roots {i} and {j} are indistinguishable at working precision")]
    IndistinctRoots { i: usize, j: usize },

    #[error("polynomial degree {n} is even; only odd degree is supported")]
    EvenDegreeUnsupported { n: usize },

    #[error("leading coefficient is not a declared power of 2 times a square unit ({context})")]
    UnsupportedLeadingCoefficient { context: String },

    #[error("side function never reaches the ceiling on the scanned interval ({context})")]
    NeverReachesCeiling { context: String },

    #[error("marked-point profile is indeterminate at {context}")]
    IndeterminateEll { context: String },

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("input document rejected: {0}")]
    SchemaError(String),
}

impl Error {
    /// Process exit code for the command line front end.
    ///
    /// 1: the input document itself is unusable; 3: the computation is honest
    /// but ran out of precision or improvement budget; 2: everything else,
    /// which always indicates a broken internal invariant.
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            SchemaError(_)
            | ReduciblePresentation { .. }
            | UnsupportedDegree { .. }
            | RamificationOverflow { .. }
            | IndistinctRoots { .. }
            | EvenDegreeUnsupported { .. }
            | UnsupportedLeadingCoefficient { .. }
            | NotSimpleRoot { .. } => 1,
            IterationCapExceeded { .. } | PrecisionExhausted { .. } => 3,
            _ => 2,
        }
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Error {
        Error::InternalInvariantViolation(msg.into())
    }
}
