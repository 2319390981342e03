//! Exit-code contract: 0 success, 2 input or validation error, 3 numerical
//! failure.

use std::fmt;

#[derive(Debug)]
pub enum Failure {
    Input(anyhow::Error),
    Numerical(anyhow::Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Numerical(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(e) => write!(f, "input error: {e}"),
            Failure::Numerical(e) => write!(f, "numerical failure: {e}"),
        }
    }
}

pub fn input(msg: impl fmt::Display) -> Failure {
    Failure::Input(anyhow::anyhow!("{msg}"))
}

pub fn numerical(msg: impl fmt::Display) -> Failure {
    Failure::Numerical(anyhow::anyhow!("{msg}"))
}

fn is_numerical(e: &sslda::Error) -> bool {
    use sslda::Error::*;
    match e {
        SingularBasis { .. } | NotPositiveDefinite | Infeasible { .. } => true,
        Fit { source, .. } => is_numerical(source),
        _ => false,
    }
}

impl From<sslda::Error> for Failure {
    fn from(e: sslda::Error) -> Self {
        if is_numerical(&e) {
            Failure::Numerical(e.into())
        } else {
            Failure::Input(e.into())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.into())
    }
}
