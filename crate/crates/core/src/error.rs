use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),
    #[error("vertex set is not a clique: {0:?}")]
    NotAClique(Vec<String>),
    #[error("vertex id `{0}` appears in both join factors")]
    IdCollision(String),
    #[error("vertex index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("subcomplex is not induced in the ambient complex: {0}")]
    NotInduced(String),

    #[error("invalid boundary count s = {0}")]
    InvalidBoundaryCount(usize),
    #[error("invalid sphere partition: {0}")]
    InvalidPartition(String),
    #[error("partitions live on different boundary counts ({0} vs {1})")]
    MismatchedBoundary(usize, usize),
    #[error("a sphere is compared with itself")]
    SameSphere,
    #[error("unknown catalog complex `{0}`")]
    UnknownCatalog(String),

    #[error("sphere system is not maximal")]
    NotMaximal,
    #[error("vertex `{0}` is not a member of the sphere system")]
    NotAMember(String),
    #[error("sphere `{0}` is self-adjacent (loop in the dual graph)")]
    SelfAdjacent(String),
    #[error("malformed dual multigraph: {0}")]
    MalformedDual(String),
    #[error("bond {0} is a loop; flip is undefined")]
    LoopBond(usize),
    #[error("bond index {0} out of range")]
    UnknownBond(usize),
    #[error("pairing choice must be 0 or 1, got {0}")]
    InvalidPairingChoice(u8),
    #[error("dual multigraph is disconnected")]
    DisconnectedDual,
    #[error("relation is not transitive on this instance: {0}")]
    NotTransitive(String),

    #[error("malformed multigraph: {0}")]
    MalformedGraph(String),
    #[error("edge map is not a bijection: {0}")]
    NotABijection(String),
    #[error("edge map is not an edge isomorphism")]
    NotEdgeIsomorphism,
    #[error("source graph is disconnected")]
    DisconnectedSource,
    #[error("edge map does not restrict to the previous lift: {0}")]
    RestrictionMismatch(String),
    #[error("previous result is not a lift")]
    PreviousNotLifted,
    #[error("vertex map cannot be determined from the edge map: {0}")]
    Underdetermined(String),

    #[error("automorphism group too large to list ({0} elements)")]
    GroupTooLarge(u128),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid cut labeling: {0}")]
    InvalidCut(String),

    #[error("malformed document: {0}")]
    Format(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
