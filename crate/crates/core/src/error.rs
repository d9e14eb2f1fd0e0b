use thiserror::Error;

use crate::report::LawReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element index {index} out of range for a carrier of {len} elements")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("order is not antisymmetric: {a} <= {b} and {b} <= {a}")]
    NotAPartialOrder { a: String, b: String },

    #[error("no unique {op} for {x} and {y}")]
    NotALattice { op: &'static str, x: String, y: String },

    #[error("order has no global {0}")]
    NoBounds(&'static str),

    #[error("not a Heyting algebra: {{c : c & {x} <= {y}}} has no maximum")]
    NotHeyting { x: String, y: String },

    #[error("{element} has no complement ({element} | !{element} != 1)")]
    NotComplemented { element: String },

    #[error("lattice is not atomistic: {0}")]
    NotAtomistic(String),

    #[error("carrier of {size} elements exceeds the cap of {cap}")]
    TooLarge { size: u128, cap: u128 },

    #[error("no element satisfies e -> x = cl(x) for all x")]
    NotAugmented,

    #[error("several elements satisfy the augmentation identity: {0:?}")]
    MultipleClosureElements(Vec<String>),

    #[error("certification failed\n{0}")]
    NotCertified(Box<LawReport>),

    #[error("closed elements are not closed under {0}")]
    SkeletonNotSublattice(String),

    #[error("closed elements do not form a Boolean algebra: {0}")]
    SkeletonNotBoolean(String),

    #[error("image {0} is not a closed element")]
    NotClosedImage(String),

    #[error("homomorphism domain/codomain mismatch: {0}")]
    TargetMismatch(String),

    #[error("map is not a homomorphism\n{0}")]
    NotAHomomorphism(Box<LawReport>),

    #[error("contract implication formula disagrees with the residual at ({x}, {y})")]
    ImplicationMismatch { x: String, y: String },

    #[error("not a contract: a | g misses minterm(s) {}", uncovered.join(", "))]
    NotAContract { uncovered: Vec<String> },

    #[error("search space of {bound} functions exceeds the budget of {budget}")]
    SearchTooLarge { bound: u128, budget: u64 },

    #[error("syntax error at offset {pos}: expected {}, found {found}", expected.join(" or "))]
    SyntaxError {
        pos: usize,
        expected: Vec<String>,
        found: String,
    },

    #[error("unknown token {token:?} at offset {pos}")]
    UnknownToken { pos: usize, token: String },

    #[error("variable {0:?} is not in the context")]
    UnboundVariable(String),

    #[error("variable {0:?} declared twice")]
    DuplicateVariable(String),

    #[error("unknown object {0:?}")]
    UnknownName(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
