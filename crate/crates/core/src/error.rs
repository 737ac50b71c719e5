use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a poset: {0} <= {1} and {1} <= {0} for distinct elements")]
    NotAPoset(usize, usize),
    #[error("not a lattice: elements {0} and {1} have no unique {2}")]
    NotALattice(usize, usize, &'static str),
    #[error("element {0} is out of range for a lattice of size {1}")]
    OutOfRange(usize, usize),
    #[error("element {0} is not join-irreducible")]
    NotJoinIrreducible(usize),
    #[error("partition is not a congruence: {0}")]
    NotACongruence(String),
    #[error("operation undefined on the one-element lattice")]
    TrivialLattice,
    #[error("bad interval: {0} is not below {1}")]
    BadInterval(usize, usize),
    #[error("size limit exceeded for {what}: {value} > {limit}")]
    SizeLimit {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("pair set is not clopen")]
    NotClopen,
    #[error("({0}, {1}, {2:?}) is not a join-irreducible triple")]
    NotInFn(usize, usize, Vec<usize>),
    #[error("pair set is not an element of the Tamari lattice")]
    NotInTamari,
    #[error("map is not a bracket function: {0:?}")]
    NotABracketFunction(Vec<usize>),
    #[error("subset is not a (join, 0, 1)-subsemilattice")]
    NotSubsemilattice,
    #[error("identity expects {expected} variables, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("evaluation budget exceeded: {needed} node evaluations > budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("measure is not polarized: violation at {0:?}")]
    NotPolarized((i64, i64, i64)),
    #[error("map is not a (meet, 1)-homomorphism")]
    NotMeetHom,
    #[error("measure and homomorphism disagree on {0}")]
    DualityViolated(&'static str),
    #[error("generators do not generate the source lattice")]
    GeneratorsDontGenerate,
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
