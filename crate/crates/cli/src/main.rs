//! `dimlab`: JSON report on stdout, one-line summary on stderr.
//!
//! Exit codes: 0 success, 1 negative answer to a requested check,
//! 2 input error, 3 resource bound exceeded.

mod args;
mod iv;
mod lat;
mod load;

use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use dimlab::corpus::corpus_generate_with;
use dimlab::interval::EVIDENCE_LABEL;
use dimlab::{Bounds, Exec};
use serde_json::{json, Value};

use args::{Cli, Command, CorpusArgs};
use load::Inputs;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Resource(String),
}

impl From<dimlab::Error> for CliError {
    fn from(e: dimlab::Error) -> Self {
        if e.is_resource() {
            CliError::Resource(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

pub struct Outcome {
    result: Value,
    summary: String,
    negative: bool,
    evidence_only: bool,
    raw: Option<String>,
}

impl Outcome {
    pub fn new(result: Value, summary: String) -> Self {
        Outcome {
            result,
            summary,
            negative: false,
            evidence_only: false,
            raw: None,
        }
    }

    pub fn negative_if(mut self, yes: bool) -> Self {
        self.negative = yes;
        self
    }

    pub fn evidence_only(mut self) -> Self {
        self.evidence_only = true;
        self
    }

    /// Printed on stdout in place of the JSON report.
    pub fn with_raw(mut self, text: String) -> Self {
        self.raw = Some(text);
        self
    }
}

fn corpus(a: CorpusArgs, exec: Exec) -> Result<Outcome, CliError> {
    let entries = corpus_generate_with(a.count, a.ground_max, a.seed, &Bounds::default(), exec)?;
    let flags = |e: &dimlab::corpus::CorpusEntry| json!({"name": e.name, "separative": e.separative, "normal": e.normal});
    let summary = format!(
        "{} lattices, {} separative, {} normal",
        entries.len(),
        entries.iter().filter(|e| e.separative).count(),
        entries.iter().filter(|e| e.normal).count()
    );
    let result = match &a.out {
        Some(dir) => {
            fs::create_dir_all(dir)
                .map_err(|e| CliError::Input(format!("cannot create {}: {e}", dir.display())))?;
            let mut files = Vec::new();
            for e in &entries {
                let path = dir.join(format!("{}.json", e.name));
                fs::write(&path, e.to_json() + "\n").map_err(|err| {
                    CliError::Input(format!("cannot write {}: {err}", path.display()))
                })?;
                let mut f = flags(e);
                f["file"] = json!(path.display().to_string());
                files.push(f);
            }
            json!({"files": files})
        }
        None => json!({"entries": entries}),
    };
    Ok(Outcome::new(result, summary))
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    let mut inputs = Inputs::new(&argv);
    let start = Instant::now();
    let outcome = match cli.command {
        Command::Lat(c) => lat::run(c, &mut inputs, exec),
        Command::Iv(c) => iv::run(c, &mut inputs, exec),
        Command::Corpus(a) => corpus(a, exec),
    };
    let out = match outcome {
        Ok(o) => o,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(CliError::Resource(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(3);
        }
    };
    let code = if out.negative { 1 } else { 0 };
    match &out.raw {
        Some(text) => print!("{text}"),
        None => {
            let mut report = json!({
                "command": argv,
                "inputs_digest": inputs.digest(),
                "result": out.result,
                "exit_code": code,
            });
            if out.evidence_only {
                report["evidence_only"] = json!(EVIDENCE_LABEL);
            }
            if cli.timing {
                report["timing_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
        }
    }
    eprintln!("{}", out.summary);
    ExitCode::from(code)
}
