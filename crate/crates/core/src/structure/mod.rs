//! 2-factors, oddness and cyclic edge-connectivity.

mod cyclic;
mod two_factor;

use thiserror::Error;

use crate::budget::BudgetExceeded;
use crate::graph::{EdgeId, GraphError, VertexId};

pub use cyclic::{
    cyclic_connectivity, induces_cycle, is_cyclically_k_connected, is_cyclically_k_connected_within,
    CyclicCheck, CyclicConnectivity, CyclicCut,
};
#[cfg(test)]
pub(crate) use cyclic::connected_sets;
pub use two_factor::{compute_oddness, enumerate_two_factors, OddnessResult, TwoFactor, TwoFactors};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("graph is not cubic: vertex {vertex} has degree {degree}")]
    NotCubic { vertex: VertexId, degree: usize },
    #[error("graph has a bridge (edge {0})")]
    Bridge(EdgeId),
    #[error("graph is not connected")]
    Disconnected,
    #[error("no perfect matching found in a bridgeless cubic graph")]
    NoPerfectMatching,
    #[error("cyclic connectivity bound must be at least 1, got {0}")]
    InvalidBound(usize),
    #[error("inconsistent 2-factor: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}
