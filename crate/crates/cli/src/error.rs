use std::fmt;

/// Error with the exit status it maps to: 1 for domain errors, 2 for usage
/// and input parsing errors.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    pub fn parse(err: selfsim::Error) -> Self {
        CliError {
            code: 2,
            message: err.to_string(),
        }
    }

    pub fn context(mut self, what: impl fmt::Display) -> Self {
        self.message = format!("{what}: {}", self.message);
        self
    }
}

impl From<selfsim::Error> for CliError {
    fn from(err: selfsim::Error) -> Self {
        CliError {
            code: 1,
            message: err.to_string(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error: {}", self.message)
    }
}
