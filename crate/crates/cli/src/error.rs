use std::fmt;

use specstate::Error as CoreError;

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Core(CoreError),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Core(e) => match e {
                CoreError::Validation(_)
                | CoreError::Precondition(_)
                | CoreError::IndexOutOfRange { .. } => 2,
                CoreError::Numeric(_) | CoreError::Singularity(_) => 3,
                CoreError::BudgetExhausted { .. } => 4,
            },
            CliError::Io(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Validation(_) => "validation",
            CliError::Core(e) => match e {
                CoreError::Validation(_) => "validation",
                CoreError::Precondition(_) => "precondition",
                CoreError::IndexOutOfRange { .. } => "index_out_of_range",
                CoreError::Numeric(_) => "numeric",
                CoreError::Singularity(_) => "singularity",
                CoreError::BudgetExhausted { .. } => "budget_exhausted",
            },
            CliError::Io(_) => "io",
        }
    }

    /// One-line JSON record for stderr.
    pub fn record(&self) -> String {
        let mut rec = serde_json::json!({
            "error": self.kind(),
            "message": self.to_string(),
            "exit_code": self.exit_code(),
        });
        if let CliError::Core(CoreError::BudgetExhausted {
            budget,
            accepted,
            rate,
        }) = self
        {
            rec["budget"] = (*budget).into();
            rec["accepted"] = (*accepted).into();
            rec["acceptance_rate"] = (*rate).into();
        }
        rec.to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) | CliError::Io(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
