//! Flat `key = value` configuration files.
//!
//! Keys are long flag names without the leading dashes. Values from the file
//! are appended after the command-line flags, and since every flag keeps its
//! last occurrence, the file wins over the command line.

use std::ffi::OsString;
use std::fs;

use ince_vortex::Error;

/// Entries in file order; blank lines and `#` comments are skipped.
pub fn parse(text: &str) -> Result<Vec<(String, String)>, Error> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Validation(format!("config line {}: expected key = value", lineno + 1)))?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() {
            return Err(Error::Validation(format!("config line {}: empty key", lineno + 1)));
        }
        out.push((key, value.trim().trim_matches('"').to_string()));
    }
    Ok(out)
}

fn flag_value(args: &[OsString], flag: &str) -> Result<Option<(usize, usize, String)>, Error> {
    for (i, arg) in args.iter().enumerate() {
        let Some(s) = arg.to_str() else { continue };
        if s == flag {
            let value = args
                .get(i + 1)
                .and_then(|v| v.to_str())
                .ok_or_else(|| Error::Validation(format!("{flag} needs a value")))?;
            return Ok(Some((i, 2, value.to_string())));
        }
        if let Some(value) = s.strip_prefix(&format!("{flag}=")) {
            return Ok(Some((i, 1, value.to_string())));
        }
    }
    Ok(None)
}

/// Removes `--config <path>` from `args` and appends the file's entries as
/// flags. A `command` entry must name the subcommand given on the command line.
pub fn expand(mut args: Vec<OsString>) -> Result<Vec<OsString>, Error> {
    let Some((index, width, path)) = flag_value(&args, "--config")? else {
        return Ok(args);
    };
    args.drain(index..index + width);
    let text = fs::read_to_string(&path).map_err(|e| Error::Validation(format!("cannot read config {path}: {e}")))?;
    for (key, value) in parse(&text)? {
        if key == "command" {
            let given = args.get(1).and_then(|a| a.to_str()).unwrap_or("");
            if given != value {
                return Err(Error::Validation(format!(
                    "config names command {value:?} but the command line runs {given:?}"
                )));
            }
            continue;
        }
        match value.to_ascii_lowercase().as_str() {
            "true" | "yes" | "on" => args.push(format!("--{key}").into()),
            "false" | "no" | "off" => {}
            _ => args.push(format!("--{key}={value}").into()),
        }
    }
    Ok(args)
}
