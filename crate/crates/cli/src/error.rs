use std::fmt;

/// Everything that ends a run early, tagged with its exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or out-of-domain input: exit 1.
    Usage(String),
    /// A numerical method failed: exit 2.
    Numerical(String),
    /// File problems or a missing/insufficient zero catalog: exit 3.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numerical(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Numerical(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<zeta_kkr::Error> for CliError {
    fn from(e: zeta_kkr::Error) -> Self {
        use zeta_kkr::Error as E;
        let msg = e.to_string();
        if e.is_io() || matches!(e, E::OutOfRange { .. } | E::InsufficientCatalog { .. }) {
            CliError::Io(msg)
        } else if e.is_numerical() {
            CliError::Numerical(msg)
        } else {
            CliError::Usage(msg)
        }
    }
}
