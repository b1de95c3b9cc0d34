use std::path::PathBuf;

/// Crate-wide error type. Every fallible operation returns one of these
/// variants; the CLI maps them onto process exit codes via [`Error::exit_code`].
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A configured work cap was hit. `budget` is the cap that was exceeded
    /// and `needed` the (possibly estimated) amount of work requested.
    #[error("budget exceeded in {what}: needed {needed}, budget {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    /// The component admits no proper colouring with the given k.
    #[error("uncolourable component: no proper {k}-colouring exists")]
    UncolourableComponent { k: usize },

    /// Conditioning (pins) cannot be extended to any proper colouring.
    #[error("empty support: the pinned partial colouring has no proper extension")]
    EmptySupport,

    #[error("seeds span multiple components but a single component was requested")]
    SeedsDisconnected,

    /// |R| exceeded the threshold and exhaustive enumeration is out of reach.
    #[error("fallback infeasible: |R| = {r_size} > threshold {threshold:.1} and k^n exceeds the enumeration budget")]
    FallbackInfeasible { r_size: usize, threshold: f64 },

    #[error("instance too large for exact computation: {0}")]
    InfeasibleSize(String),

    /// Greedy initialisation of the Glauber chain ran out of colours.
    #[error("glauber initialisation failed: vertex {vertex} has no free colour with k = {k}")]
    InitFailed { vertex: usize, k: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// CLI exit code convention: 1 domain failure, 3 budget/infeasible, 4 I/O or parse.
    /// (Exit code 2, criterion failure, is decided by the verifier verdict, not an error.)
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter(_)
            | Error::InvalidInput(_)
            | Error::UncolourableComponent { .. }
            | Error::EmptySupport
            | Error::SeedsDisconnected
            | Error::InitFailed { .. } => 1,
            Error::BudgetExceeded { .. }
            | Error::FallbackInfeasible { .. }
            | Error::InfeasibleSize(_) => 3,
            Error::Parse { .. } | Error::Io { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
