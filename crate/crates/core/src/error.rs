use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("color {color} is outside the palette 1..={k}")]
    ColorOutOfRange { color: usize, k: usize },
    #[error("palette is empty (k = 0)")]
    EmptyPalette,
    #[error("palette size {0} exceeds the supported maximum of 64")]
    PaletteTooLarge(usize),
    #[error("coloring has {coloring} entries but the graph has {graph} vertices")]
    LengthMismatch { coloring: usize, graph: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
