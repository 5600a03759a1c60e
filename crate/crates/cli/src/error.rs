//! Error-to-exit-code mapping: 2 for input problems, 3 for domain or
//! empty-result conditions, 1 for internal faults.

use port_tfidf_core::cleanse::CleanseError;
use port_tfidf_core::corpus::CorpusError;
use port_tfidf_core::forensics::ForensicsError;
use port_tfidf_core::record::ParseError;
use port_tfidf_core::scoring::ScoreError;
use port_tfidf_core::synth::SynthError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        CliError::Domain(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        CliError::Internal(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<CorpusError> for CliError {
    fn from(e: CorpusError) -> Self {
        match e {
            CorpusError::EmptyInput(_) | CorpusError::InvalidFile(_) | CorpusError::TimestampOutOfRange(_) => {
                CliError::Input(e.to_string())
            }
            CorpusError::EmptyCorpus => CliError::Domain(e.to_string()),
        }
    }
}

impl From<CleanseError> for CliError {
    fn from(e: CleanseError) -> Self {
        match e {
            CleanseError::InvalidConfig(_) => CliError::Input(e.to_string()),
            CleanseError::NoSurvivingPorts(t) => CliError::Domain(format!(
                "no ports survive threshold {t}; lower --sweep-start or --threshold for this corpus"
            )),
            CleanseError::EmptyCorpus => CliError::Domain(e.to_string()),
        }
    }
}

impl From<ScoreError> for CliError {
    fn from(e: ScoreError) -> Self {
        match e {
            ScoreError::InvalidConfig(_) => CliError::Input(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<ForensicsError> for CliError {
    fn from(e: ForensicsError) -> Self {
        match e {
            ForensicsError::InvalidParams(_) => CliError::Input(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<SynthError> for CliError {
    fn from(e: SynthError) -> Self {
        CliError::Input(e.to_string())
    }
}
