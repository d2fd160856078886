use bsato_core::{Check, Report, Space, Status};
use serde::Serialize;
use serde_json::Value;

/// Machine-readable outcome of one invocation. Checks are sorted by name so
/// identical invocations give identical output apart from `wall_time_ms`.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub space: Option<String>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub result: Value,
    pub checks: Vec<Check>,
    pub status: Status,
    pub wall_time_ms: u64,
}

/// What a command computed before timing is attached.
pub struct Outcome {
    pub space: Option<Space>,
    /// Human-readable lines printed before the checks.
    pub lines: Vec<String>,
    pub result: Value,
    pub report: Report,
}

impl Outcome {
    pub fn new(space: Option<Space>) -> Self {
        Outcome {
            space,
            lines: Vec::new(),
            result: Value::Null,
            report: Report::new(),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn finish(mut self, command: String, wall_time_ms: u64) -> (RunReport, Vec<String>) {
        self.report.sort();
        let status = self.report.status();
        let run = RunReport {
            command,
            space: self.space.map(|s| s.to_string()),
            result: self.result,
            checks: self.report.checks,
            status,
            wall_time_ms,
        };
        (run, self.lines)
    }
}

impl RunReport {
    pub fn print_text(&self, lines: &[String]) {
        if let Some(s) = &self.space {
            println!("space: {s}");
        }
        for l in lines {
            println!("{l}");
        }
        for c in &self.checks {
            match &c.witness {
                Some(w) => println!("{} {}  [{w}]", c.status, c.name),
                None => println!("{} {}", c.status, c.name),
            }
        }
        println!(
            "status: {} ({} checks, {} ms)",
            self.status,
            self.checks.len(),
            self.wall_time_ms
        );
    }
}
