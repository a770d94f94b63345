use alloc::string::String;

/// Everything that can go wrong while building algebras, sets or pipelines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed poset: {0}")]
    MalformedPoset(String),
    #[error("element is not in the carrier: {0}")]
    ForeignElement(String),
    #[error("the carrier is infinite and cannot be enumerated")]
    NotEnumerable,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("more than two family parameters would be live at once")]
    DepthExceeded,
    #[error("template has arity {found}, expected at most {expected}")]
    Arity { found: usize, expected: usize },
    #[error("this algebra does not support family entries")]
    FamiliesUnsupported,
    #[error("unsupported addend: {0}")]
    UnsupportedAddend(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("wrong algebra: {0}")]
    WrongAlgebra(String),
    #[error("key {0} is outside the function's domain")]
    KeyOutsideDomain(String),
    #[error("duplicate key {0}")]
    DuplicateKey(String),
    #[error("injectivity premise fails for keys {0} and {1}")]
    NotInjective(String, String),
    #[error("stage {given} does not contain the base set; minimal sufficient stage is {minimal}")]
    StageIncomplete { given: u32, minimal: u32 },
}
