use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {pos}: {msg}")]
    Parse { line: usize, pos: usize, msg: String },
    #[error("duplicate connective name `{0}`")]
    DuplicateName(String),
    #[error("connective `{name}` declares arity {arity} but {found} coordinates")]
    ArityMismatch { name: String, arity: usize, found: usize },
    #[error("unknown connective `{0}`")]
    UnknownConnective(String),
    #[error("unknown signature `{0}`")]
    UnknownSignature(String),
    #[error("signature `{0}` is already classical")]
    AlreadyBae(String),
    #[error("invalid signature: {0}")]
    Signature(String),
    #[error("variable `{0}` has no order-type")]
    UncoveredVariable(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("{what} {found} exceeds the bound {bound}")]
    BoundExceeded { what: &'static str, found: usize, bound: usize },
    #[error("invalid frame: {0}")]
    Frame(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not inductive: {0}")]
    NotInductive(String),
}
