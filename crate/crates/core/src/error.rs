use alloc::boxed::Box;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {0} is out of range")]
    UnknownVertex(u32),
    #[error("no black edge with label {0}")]
    UnknownLabel(u32),
    #[error("label {0} is used twice")]
    DuplicateLabel(u32),
    #[error("{black} black edges but {gray} gray edges")]
    EdgeCountMismatch { black: usize, gray: usize },
    #[error("vertex {vertex} has black degree {black} but gray degree {gray}")]
    NotEulerian { vertex: u32, black: usize, gray: usize },
    #[error("a k-break needs k >= 2 distinct removed edges and exactly k added edges")]
    BadArity,
    #[error("added edges do not reuse the removed endpoints")]
    EndpointMismatch,
    #[error("added labels are not a permutation of the removed labels")]
    LabelPermutation,
    #[error("move {index}: {reason}")]
    InvalidMove { index: usize, reason: Box<Error> },
    #[error("scenario does not end in a terminal graph")]
    IncompleteScenario,
    #[error("invalid cycle decomposition: {0}")]
    InvalidDecomposition(&'static str),
    #[error("color-merged graph is not terminal")]
    MergedNotTerminal,
    #[error("{what}: instance size {size} exceeds cap {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },
    #[error("graph is not a single alternating circle")]
    NotACircle,
    #[error("vertex {0} is not on the circle")]
    VertexNotOnCircle(u32),
    #[error("graph is not a simple cycle: {0}")]
    NotSimpleCycle(&'static str),
    #[error("coloring covers {got} vertices, graph has {need}")]
    ColoringSize { got: usize, need: usize },
    #[error("decomposition labels do not match the circle's edges")]
    LabelMismatch,
    #[error("genomes do not have the same gene content")]
    GeneContentMismatch,
    #[error("gene {gene}: {problem}")]
    BadExtremity { gene: u32, problem: &'static str },
    #[error("adjacency is not present in the genome")]
    MissingAdjacency,
    #[error("not one of the four DCJ forms")]
    NotADcj,
    #[error("no color for extremity of gene {0}")]
    MissingColor(u32),
    #[error("not a breakpoint graph: {0}")]
    NotBreakpointGraph(&'static str),
    #[error("matrix is not square")]
    NonSquare,
    #[error("not a simple connected Eulerian graph: {0}")]
    NotSimpleGraph(&'static str),
    #[error("unoriented genes are not supported here")]
    Unoriented,
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}

impl Error {
    pub(crate) fn at(self, index: usize) -> Error {
        Error::InvalidMove { index, reason: Box::new(self) }
    }
}
