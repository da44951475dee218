//! Command-line front end: argument parsing, rendering (pretty, JSON, CSV),
//! the reference tables and a JSON-lines result cache.

pub mod cache;
pub mod commands;
pub mod config;
pub mod dto;
pub mod error;
pub mod render;
pub mod tables;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use config::{Cli, RunConfig};
pub use error::{CliError, CliResult, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK};

/// Runs the result of `config` through the cache (if any). Only exit-0
/// outputs are stored.
pub fn execute(cfg: &RunConfig) -> CliResult<commands::Output> {
    let cache = cfg.cache.as_ref().map(cache::Cache::new);
    let key = cfg.cache_key();
    if let Some(c) = &cache {
        if let Some(text) = c.get(&key)? {
            return Ok(commands::Output { text, code: EXIT_OK });
        }
    }
    let out = commands::dispatch(cfg)?;
    if let (Some(c), EXIT_OK) = (&cache, out.code) {
        c.put(&key, &out.text)?;
    }
    Ok(out)
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return e.exit_code();
        }
    };
    match execute(&RunConfig::from(&cli)) {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}
