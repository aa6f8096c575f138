//! Command-line front end.
//!
//! Configuration precedence is flags > config file > defaults. A config
//! file holds `key = value` lines (`#` starts a comment); each pair is
//! spliced in as `--key value` right after the subcommand path, where any
//! flag given on the command line overrides it.

mod args;
mod commands;

pub use args::{Cli, Command};

use crate::error::Error;
use clap::Parser;
use std::ffi::OsString;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// 2 for invalid input, 1 for numerical failures.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BranchSingularity
        | Error::SingularPoint(_)
        | Error::OutOfImage { .. }
        | Error::RegionViolation { .. }
        | Error::OrbitEscape { .. } => EXIT_CHECK_FAILED,
        _ => EXIT_INVALID,
    }
}

const NESTED: [&str; 3] = ["lorentz", "maxwell", "cayley"];

/// Parses `key = value` lines into flag tokens.
pub fn config_tokens(text: &str) -> Result<Vec<String>, Error> {
    let mut out = vec![];
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::InvalidArgument(format!("config line {}: expected key = value", n + 1)))?;
        let key = k.trim().replace('_', "-");
        let val = v.trim();
        match val {
            "true" => out.push(format!("--{key}")),
            "false" => {}
            _ => {
                out.push(format!("--{key}"));
                out.push(val.to_string());
            }
        }
    }
    Ok(out)
}

/// Removes `--config FILE` and splices the file's flags after the
/// subcommand path.
pub fn expand_config(args: Vec<String>) -> Result<Vec<String>, Error> {
    let mut rest = vec![];
    let mut config = None;
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            config = Some(it.next().ok_or_else(|| Error::InvalidArgument("--config needs a path".into()))?);
        } else if let Some(p) = a.strip_prefix("--config=") {
            config = Some(p.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = config else { return Ok(rest) };
    let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    let tokens = config_tokens(&text)?;
    let depth = match rest.get(1) {
        Some(c) if NESTED.contains(&c.as_str()) => 3,
        Some(_) => 2,
        None => 1,
    };
    let at = depth.min(rest.len());
    rest.splice(at..at, tokens);
    Ok(rest)
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let raw: Vec<String> = argv.into_iter().map(|a| a.into().to_string_lossy().into_owned()).collect();
    let args = match expand_config(raw) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INVALID;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match commands::dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_splices_after_subcommand() {
        let toks = config_tokens("# c\nsamples = 10\nk=0.3,0,0\nquiet = false\n").unwrap();
        assert_eq!(toks, vec!["--samples", "10", "--k", "0.3,0,0"]);
        let dir = std::env::temp_dir().join(format!("qwalk-cfg-{}", std::process::id()));
        std::fs::write(&dir, "samples = 10\n").unwrap();
        let args: Vec<String> =
            ["qwalk", "lorentz", "orbit", "--config", dir.to_str().unwrap(), "--samples", "5"].map(String::from).into();
        let out = expand_config(args).unwrap();
        assert_eq!(out, ["qwalk", "lorentz", "orbit", "--samples", "10", "--samples", "5"]);
        std::fs::remove_file(dir).unwrap();
    }

    #[test]
    fn bad_config_line() {
        assert!(config_tokens("nonsense").is_err());
    }
}
