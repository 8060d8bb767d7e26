use crate::graph::VertexId;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("duplicate vertex {0}")]
    DuplicateVertex(VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("no edge {0}-{1} in graph")]
    UnknownEdge(VertexId, VertexId),

    #[error("coloring does not match the edge set: {0}")]
    ColoringDomainMismatch(String),
    #[error("graph has {edges} edges, limit is {limit}")]
    TooManyEdges { edges: usize, limit: usize },
    #[error("coloring is not a NAC-coloring")]
    NotNac,
    #[error("coloring is not cartesian")]
    NotCartesian,
    #[error("coloring is not symmetric under the action")]
    NotSymmetric,
    #[error("malformed tower: {0}")]
    MalformedTower(String),

    #[error("permutation is not over the vertex set: {0}")]
    WrongVertexSet(String),
    #[error("invalid symmetry action: {0}")]
    InvalidAction(String),

    #[error("graph is disconnected")]
    Disconnected,
    #[error("ribbon {ribbon} is not an edge cut")]
    NotRibbonCutting { ribbon: usize },
    #[error("brace {0}-{1} is already an edge")]
    BraceIsEdge(VertexId, VertexId),
    #[error("brace {0}-{1} is not a diagonal of any 4-cycle")]
    BraceNotDiagonal(VertexId, VertexId),
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("action does not map ribbons to ribbons (ribbon {ribbon})")]
    NotRibbonCompatible { ribbon: usize },

    #[error("realization is not a parallelogram realization: {0}")]
    NotParallelogram(String),
    #[error("edges of ribbon {ribbon} are not parallel")]
    InconsistentRibbonDirection { ribbon: usize },
    #[error("component points for {color} are not pairwise distinct")]
    RepeatedComponentPoint { color: &'static str },
    #[error("the base vertex components must be placed at the origin")]
    BaseNotAtOrigin,
    #[error("walk sums are path dependent at edge {0}-{1}")]
    WalkSumInconsistent(VertexId, VertexId),

    #[error("degenerate pentagrid: {count} lines concurrent at intersection of {a:?} and {b:?}")]
    DegeneratePentagrid {
        a: (usize, i64),
        b: (usize, i64),
        count: usize,
    },
    #[error("invalid pentagrid parameters: {0}")]
    InvalidParams(String),
    #[error("face has equal direction indices ({0})")]
    EqualDirectionIndices(usize),
    #[error("unknown ribbon label ({0}, {1})")]
    UnknownRibbon(usize, i64),
    #[error("unknown orientation: {0}")]
    UnknownOrientation(String),
    #[error("unknown face index {0}")]
    UnknownFace(usize),
    #[error("probability {0} outside (0, 1]")]
    InvalidProbability(f64),
    #[error("number of trials must be at least 1")]
    NoTrials,
    #[error("symmetric patch construction failed: {0}")]
    SymmetricConstruction(String),

    #[error("invalid linkage: {0}")]
    InvalidLinkage(String),
    #[error("both effective infima are zero; no Dixon flex exists")]
    DixonDegenerate,

    #[error("format error: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
