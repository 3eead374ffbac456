use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Human-readable lines.
    Plain,
    /// One JSON document.
    Machine,
}

/// What a subcommand produced. `affirmative` decides the exit status.
pub struct Outcome {
    pub affirmative: bool,
    pub plain: String,
    /// `Value::Null` means the plain text is the artifact itself (an MG1
    /// document) and is printed in both formats.
    pub machine: Value,
}

impl Outcome {
    pub fn new(affirmative: bool, plain: impl Into<String>, machine: Value) -> Self {
        Outcome {
            affirmative,
            plain: plain.into(),
            machine,
        }
    }

    pub fn document(text: String) -> Self {
        Outcome::new(true, text, Value::Null)
    }

    pub fn print(&self, format: Format) {
        match (format, &self.machine) {
            (Format::Machine, m) if !m.is_null() => println!("{m}"),
            _ => {
                let text = self.plain.trim_end_matches('\n');
                if !text.is_empty() {
                    println!("{text}");
                }
            }
        }
    }
}
