//! Exit statuses.

use sawcantor_core::Error;

/// A failed command and the status it exits with.
#[derive(Debug, thiserror::Error)]
pub enum Failure {
    /// An exact invariant was violated: an engine bug, not a finding.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("{0}")]
    Usage(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("{0}")]
    Domain(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("{0}")]
    Io(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Invariant(_) | Failure::Io(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
            Failure::Domain(_) => 4,
            Failure::Construction(_) => 5,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::FiniteGraph { .. } => Failure::Domain(msg),
            Error::Interrupted | Error::BallBudget { .. } | Error::OracleTooLarge { .. } => {
                Failure::Budget(msg)
            }
            Error::LevelConstructionFailure { diagnostics, .. } => {
                Failure::Construction(format!("{msg}\n  {}", diagnostics.join("\n  ")))
            }
            Error::InvariantViolation(_) => Failure::Invariant(msg),
            Error::NoStabilization { .. } => Failure::Domain(msg),
            _ => Failure::Usage(msg),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast::<Error>() {
            Ok(core) => core.into(),
            Err(e) => Failure::Usage(format!("{e:#}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes() {
        assert_eq!(Failure::from(Error::FiniteGraph { n: 3 }).code(), 4);
        assert_eq!(Failure::from(Error::Interrupted).code(), 3);
        assert_eq!(Failure::from(Error::TrivialSubgroup).code(), 2);
        assert_eq!(
            Failure::from(Error::InvariantViolation("x".into())).code(),
            1
        );
        let f = Failure::from(Error::LevelConstructionFailure {
            level: 0,
            m_limit: 2,
            diagnostics: vec!["radius-2 condition violated at m=2".into()],
        });
        assert_eq!(f.code(), 5);
        assert!(f.to_string().contains("radius-2"));
        assert_eq!(
            Failure::from(anyhow::Error::new(Error::Interrupted)).code(),
            3
        );
        assert_eq!(Failure::from(anyhow::anyhow!("bad flag")).code(), 2);
    }
}
