//! Failures, exit codes and the run report.

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Duration;

use mucheck_core::Error;
use sha2::{Digest, Sha256};

/// Anything that stops a command.
#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
    /// The command ran but its check came out negative.
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(p, e) => write!(f, "{}: {e}", p.display()),
            Failure::Usage(m) | Failure::Failed(m) => f.write_str(m),
        }
    }
}

impl Failure {
    /// 2 parse, 3 type, 4 not a template, 5 trivial fragment, 6 guardrail,
    /// 1 anything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(e) => match e {
                Error::Syntax { .. }
                | Error::InvalidSignature(_)
                | Error::InvalidTuple { .. }
                | Error::Strict(_)
                | Error::InvalidFunction(_) => 2,
                Error::UnknownSymbol(_)
                | Error::ArityMismatch { .. }
                | Error::UnboundVariable(_)
                | Error::SignatureMismatch
                | Error::Negation
                | Error::NotASentence(_)
                | Error::OutsideFragment { .. } => 3,
                Error::NotATemplate(_) => 4,
                Error::TrivialFragment(_) => 5,
                Error::Guardrail { .. } | Error::EnumerationLimit { .. } => 6,
                _ => 1,
            },
            Failure::Usage(_) => 2,
            Failure::Io(..) | Failure::Failed(_) => 1,
        }
    }
}

pub type Outcome<T = ()> = Result<T, Failure>;

pub fn read(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

pub fn write(path: &Path, text: &str) -> Outcome {
    std::fs::write(path, text).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

/// Command echo, input digest, rules cited and wall time. Printed to
/// stderr so that stdout stays identical across runs.
#[derive(Default)]
pub struct RunReport {
    pub command: String,
    hasher: Sha256,
    pub citations: Vec<String>,
}

impl RunReport {
    pub fn new(command: String) -> Self {
        RunReport {
            command,
            ..Default::default()
        }
    }

    pub fn input(&mut self, text: &str) {
        self.hasher.update((text.len() as u64).to_le_bytes());
        self.hasher.update(text.as_bytes());
    }

    pub fn render(self, elapsed: Duration, exit: u8) -> String {
        let digest: String = self
            .hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect();
        let mut out = format!("command: {}\ninputs: sha256:{digest}\n", self.command);
        for c in &self.citations {
            out.push_str(&format!("rule: {c}\n"));
        }
        out.push_str(&format!("exit: {exit}\nwall-time: {elapsed:.3?}\n"));
        out
    }
}
