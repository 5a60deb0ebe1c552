use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("invalid position: edge {edge}, lambda {lambda} (network has {edge_count} edges)")]
    InvalidPosition {
        edge: usize,
        lambda: f64,
        edge_count: usize,
    },

    #[error("value {value} outside [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("segment of length {chord_length} is not a shortcut (network distance {network_distance})")]
    NotAShortcut {
        chord_length: f64,
        network_distance: f64,
    },

    #[error("cycle is not convex with non-empty interior; only the characterization (useful splits end at reflex vertices) applies")]
    NotConvex,

    #[error("cycle is degenerate: no number of shortcuts can decrease its diameter")]
    Degenerate,

    #[error("wrong configuration: {0}")]
    WrongConfiguration(&'static str),

    #[error("shortcut pair is not useful")]
    NotUseful,

    #[error("balancing solver did not converge, residuals {residuals:?}")]
    SolverNonConvergence { residuals: [f64; 3] },

    #[error("grid of {requested} exceeds the budget of {limit}")]
    BudgetExceeded { requested: usize, limit: usize },
}
