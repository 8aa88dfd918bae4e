use thiserror::Error;

/// Errors raised while building or querying finite structures.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("order relation has a cycle through `{0}` and `{1}`")]
    Cycle(String, String),
    #[error("not a lattice: `{x}` and `{y}` have no {missing}")]
    NotALattice {
        x: String,
        y: String,
        missing: &'static str,
    },
    #[error("not a frame: {0}")]
    NotAFrame(String),
    #[error("{what} has size {size}, above the limit {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("structure map is not a frame homomorphism: {op} fails at ({args})")]
    NotAHomomorphism { op: &'static str, args: String },
    #[error("the locale is not overt")]
    NotOvert,
    #[error("not a closure operator: {0}")]
    NotAClosure(String),
    #[error("not a sublocale set: {condition} fails at {witness}")]
    NotASublocaleSet {
        condition: &'static str,
        witness: String,
    },
    #[error("operands live on different frames")]
    FrameMismatch,
    #[error("overlap axioms fail: {axiom} at ({witness})")]
    AxiomsFailed {
        axiom: &'static str,
        witness: String,
    },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("not a topology: {axiom} fails at {witness}")]
    NotATopology {
        axiom: &'static str,
        witness: String,
    },
    #[error("invalid document: {0}")]
    Document(String),
    #[error("invalid expression at offset {offset}: {message}")]
    Expression { offset: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
