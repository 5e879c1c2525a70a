use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("relations contain a cycle through `{0}` and `{1}`")]
    CycleDetected(String, String),
    #[error("operation needs a non-empty subset")]
    EmptySubset,
    #[error("element id {0} is out of range")]
    OutOfRange(usize),
    #[error("{what}: size {size} exceeds guard {limit}")]
    GuardExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("{what}: more than {limit} simplices")]
    SizeGuard { what: &'static str, limit: usize },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("not a simplex of the complex")]
    NotASimplex,
    #[error("subset is not connected")]
    NotConnected,
    #[error("no carrier of the crosscut poset contains the subset")]
    EmptyGammaB,
    #[error("carrier {carrier:?} has no maximum element")]
    NoMaximum { carrier: Vec<String> },
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("map is not order-preserving")]
    NotMonotone,
    #[error("internal invariant broken: {0}")]
    InvariantBroken(String),
}
