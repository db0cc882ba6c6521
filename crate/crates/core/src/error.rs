use std::path::PathBuf;

/// Errors raised by the numerical kernels, the simulator and the sweep harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of a function (negative, NaN, ...).
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    /// A series or quadrature hit its work cap before meeting its tolerance.
    #[error("{what} did not converge (partial value {partial:e} after {work} steps)")]
    Accuracy {
        what: &'static str,
        partial: f64,
        work: usize,
    },

    /// A correlation coefficient at (or numerically at) one, where the
    /// envelope density degenerates.
    #[error("singular correlation mu = {mu} at port {port}; {hint}")]
    Singularity {
        port: usize,
        mu: f64,
        hint: &'static str,
    },

    /// Invalid configuration, sweep specification or mismatched inputs.
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("CSV error on {path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            func,
            detail: detail.into(),
        }
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// Process exit code used by the command line front end.
    ///
    /// 2 for configuration and I/O problems, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Io { .. } | Error::Csv { .. } => 2,
            Error::Domain { .. } | Error::Accuracy { .. } | Error::Singularity { .. } => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
