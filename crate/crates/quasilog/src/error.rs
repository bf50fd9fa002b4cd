use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported group family or parameters: {0}")]
    UnsupportedGroup(String),

    #[error("group order cap exceeded (cap {cap}, reached {reached})")]
    OrderCapExceeded { cap: usize, reached: usize },

    #[error("basic invariants: highest degree of the group is repeated; primitive derivation is not unique")]
    RepeatedTopDegree,

    #[error("primitive derivation produced a non-polynomial result")]
    NotPolynomial,

    #[error("no quasi-invariant of the requested shape exists (index {index} inadmissible for multiplicity ({m1},{m2}))")]
    InadmissibleDihedralIndex { index: usize, m1: u32, m2: u32 },

    #[error("generator search exhausted the degree cutoff {cutoff} with {found} of {needed} generators")]
    CutoffExhausted {
        cutoff: usize,
        found: usize,
        needed: usize,
    },

    #[error("inverse connection solve failed at degree {degree}: {reason}")]
    ConnectionSolve { degree: usize, reason: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Other(String),
}
