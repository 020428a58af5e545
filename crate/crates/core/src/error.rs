use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("posets must have at least one element")]
    EmptyPoset,
    #[error("poset has {0} elements, at most {max} are supported", max = crate::MAX_ELEMENTS)]
    TooLarge(usize),
    #[error("element index {index} out of range for a poset on {n} elements")]
    Index { index: usize, n: usize },
    #[error("relations contain a cycle through element {0}")]
    Cycle(usize),
    #[error("selection is empty")]
    EmptySelection,
    #[error("selection universe {got} does not match poset size {expected}")]
    UniverseMismatch { expected: usize, got: usize },
    #[error("elements {0} and {1} do not form a chain")]
    NotAChain(usize, usize),
    #[error("pins must be distinct (both are {0})")]
    SamePins(usize),
    #[error("size {got} exceeds the bound {bound}")]
    SizeBound { got: usize, bound: usize },
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("kind mismatch: {0}")]
    KindMismatch(String),
    #[error("bad length {0}")]
    BadLength(usize),
    #[error("seed does not induce an indecomposable subposet")]
    SeedNotIndecomposable,
    #[error("no indecomposable proper superset of the seed exists")]
    NoSuperset,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no indecomposable superset of size {0} found")]
    NotFound(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
