use std::fmt;
use std::path::PathBuf;

/// Failure of a CLI command, carrying its exit status.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    Model(magnomech::Error),
}

impl CliError {
    /// 1 usage or input, 2 physics (instability, singularity, no fixed
    /// point), 3 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Model(e) => match e {
                magnomech::Error::Domain(_) => 1,
                magnomech::Error::Singular(_)
                | magnomech::Error::Unstable { .. }
                | magnomech::Error::NonConvergence { .. } => 2,
                magnomech::Error::Numerical(_) => 3,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Model(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<magnomech::Error> for CliError {
    fn from(e: magnomech::Error) -> Self {
        CliError::Model(e)
    }
}
