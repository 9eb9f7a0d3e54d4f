//! Library side of the `cbid` command-line tool: rendering, parsing, and
//! the command implementations, kept callable for integration tests.

pub mod commands;
pub mod json;
pub mod text;

/// Process exit codes: 0 all requested verifications hold, 1 some
/// verification failed, 2 usage or internal error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    AllHold,
    Failed,
    UsageError,
}

impl Outcome {
    pub fn code(&self) -> u8 {
        match self {
            Outcome::AllHold => 0,
            Outcome::Failed => 1,
            Outcome::UsageError => 2,
        }
    }
}
