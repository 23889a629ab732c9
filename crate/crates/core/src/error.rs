use crate::graph::NodeId;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("node {0} is not in the graph")]
    UnknownNode(NodeId),
    #[error("cannot merge node {0} with itself")]
    SelfMerge(NodeId),
    #[error("edge ({0}, {1}) is not in the graph")]
    MissingEdge(NodeId, NodeId),
    #[error("k must be at least 3, got {0}")]
    InvalidK(u32),
    #[error("node {0} is not an inside node")]
    NotInside(NodeId),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has {nodes} nodes, exhaustive search is limited to {limit}")]
    TooLarge { nodes: usize, limit: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
}
