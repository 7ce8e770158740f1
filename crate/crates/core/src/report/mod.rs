//! Command-line front end and deterministic CSV/JSON reports.
//!
//! Exit codes: 0 success, 2 usage error, 3 numerical non-convergence,
//! 4 domain or invalid-argument error, 1 output I/O failure.

pub mod commands;
pub mod config;
pub mod render;

use std::io::Write;

pub use commands::{
    cmd_analyze, cmd_figure1, cmd_simulate, cmd_table1, cmd_zone, CommandError, TABLE1_ALPHAS,
};
pub use config::{Command, ConfigError, OutputFormat, RunConfig};
pub use render::{format_sig6, round_sig6, Cell, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_DOMAIN: i32 = 4;

/// Runs the command described by `config` and returns its report.
pub fn execute(config: &RunConfig) -> Result<Report, CommandError> {
    match config.command {
        Command::Table1 => {
            let alphas = config
                .alpha
                .as_ref()
                .map_or_else(|| TABLE1_ALPHAS.to_vec(), |a| a.0.clone());
            cmd_table1(
                &alphas,
                config.c.unwrap_or(0.5),
                config.tau.unwrap_or(1.0),
                config.sigma.unwrap_or(1.0),
            )
        }
        Command::Figure1 => cmd_figure1(config),
        Command::Analyze => cmd_analyze(config),
        Command::Zone => cmd_zone(config),
        Command::Simulate => cmd_simulate(config),
    }
}

fn exit_code(err: &CommandError) -> i32 {
    match err {
        CommandError::Usage(_) => EXIT_USAGE,
        CommandError::Compute(e) if e.is_numerical() => EXIT_NUMERICAL,
        CommandError::Compute(_) => EXIT_DOMAIN,
    }
}

fn error_json(command: &str, err: &CommandError, code: i32) -> String {
    let (kind, message) = match err {
        CommandError::Usage(m) => ("usage", m.clone()),
        CommandError::Compute(e) => (e.kind(), e.to_string()),
    };
    let v = serde_json::json!({
        "command": command,
        "error": { "kind": kind, "message": message, "exit_code": code },
    });
    let mut s = serde_json::to_string_pretty(&v).expect("error JSON is always serializable");
    s.push('\n');
    s
}

fn emit(config: &RunConfig, text: &str, stdout: &mut dyn Write) -> std::io::Result<()> {
    match &config.out {
        Some(path) => std::fs::write(path, text),
        None => stdout.write_all(text.as_bytes()),
    }
}

/// Entry point shared by the binary and the tests. `args` includes the
/// program name.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let config = match RunConfig::parse_args(args) {
        Ok(c) => c,
        Err(ConfigError::Display(text)) => {
            let _ = stdout.write_all(text.as_bytes());
            return EXIT_OK;
        }
        Err(ConfigError::Usage(msg)) => {
            let _ = writeln!(stderr, "{}", msg.trim_end());
            return EXIT_USAGE;
        }
    };

    match execute(&config) {
        Ok(report) => {
            let text = match config.format {
                OutputFormat::Csv => report.to_csv(),
                OutputFormat::Json => report.to_json_string(),
            };
            match emit(&config, &text, stdout) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(stderr, "error: cannot write output: {e}");
                    EXIT_IO
                }
            }
        }
        Err(err) => {
            let code = exit_code(&err);
            match &err {
                CommandError::Usage(m) => {
                    let _ = writeln!(stderr, "usage error: {m}");
                }
                CommandError::Compute(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                }
            }
            if config.format == OutputFormat::Json {
                let _ = emit(
                    &config,
                    &error_json(config.command.name(), &err, code),
                    stdout,
                );
            }
            code
        }
    }
}
