use thiserror::Error;

use crate::grobner::GbError;
use crate::polyring::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GbError),
    #[error("matrices {h} and {h2} do not commute: entry ({row},{col}) of the commutator is {entry}")]
    CommutatorNonzero {
        h: usize,
        h2: usize,
        row: usize,
        col: usize,
        entry: String,
    },
    #[error("invalid Higgs field: {0}")]
    InvalidField(String),
    #[error("expected rank {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("expected base dimension {expected}, got {got}")]
    BaseMismatch { expected: usize, got: usize },
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("matrix index {0} out of range")]
    NoSuchMatrix(usize),
    #[error("not a single Jordan block: {0}")]
    NotJordanBlock(String),
    #[error("matrix does not commute with the Jordan block")]
    NotCommuting,
    #[error("commuting matrix is not upper-triangular Toeplitz")]
    NotToeplitz,
    #[error("characteristic polynomial has the irrational factor {factor}")]
    IrrationalEigenvalue { factor: String },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("d = {d} out of range for rank {r}")]
    DegreeOutOfRange { d: usize, r: usize },
    #[error("invalid Jordan specification: {0}")]
    InvalidSpec(String),
    #[error("mode does not fit the specification: {0}")]
    ModeMismatch(String),
    #[error("eigenvalue {0} is repeated")]
    RepeatedEigenvalue(String),
    #[error("index sets overlap at {0}")]
    Overlap(usize),
    #[error("blocks of the family have unequal sizes")]
    UnequalBlockSizes,
    #[error("classification tag is {tag}, expected irreducible")]
    WrongTag { tag: String },
    #[error("generator {0} is not of degree at most one")]
    NonLinearGenerator(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("certificate failed: {0}")]
    CertificationFailed(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Groebner(GbError::BudgetExceeded { .. }))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
