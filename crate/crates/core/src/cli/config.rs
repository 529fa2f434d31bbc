//! `--config FILE` support.
//!
//! The file holds `key = value` lines mirroring long flags (`q = 0.5`,
//! `model = lorentzian`). Its entries are spliced in right after the
//! subcommand name, so flags given on the command line take precedence.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use crate::error::{CasimirError, Result};

/// Parses config text into `--key value` tokens.
pub fn parse_config(text: &str) -> Result<Vec<OsString>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CasimirError::Parse { line: idx + 1, msg: "expected 'key = value'".into() });
        };
        let key = key.trim().trim_start_matches("--");
        let value = value.trim();
        if key.is_empty() || key == "config" {
            return Err(CasimirError::Parse { line: idx + 1, msg: format!("invalid key '{key}'") });
        }
        out.push(format!("--{key}").into());
        out.push(value.into());
    }
    Ok(out)
}

/// Removes `--config FILE` from `args` and returns the path, if any.
fn take_config_path(args: &mut Vec<OsString>) -> Option<PathBuf> {
    let mut path = None;
    let mut i = 1;
    while i < args.len() {
        let a = args[i].to_string_lossy().into_owned();
        if a == "--" {
            break;
        }
        if a == "--config" && i + 1 < args.len() {
            path = Some(PathBuf::from(args.remove(i + 1)));
            args.remove(i);
            continue;
        }
        if let Some(p) = a.strip_prefix("--config=") {
            path = Some(PathBuf::from(p));
            args.remove(i);
            continue;
        }
        i += 1;
    }
    path
}

/// Returns `args` with the config file's entries spliced in after the first
/// non-flag argument (the subcommand).
pub fn expand_args(mut args: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some(path) = take_config_path(&mut args) else {
        return Ok(args);
    };
    let text =
        fs::read_to_string(&path).map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    let tokens = parse_config(&text)?;
    let pos = args
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, a)| !a.to_string_lossy().starts_with('-'))
        .map(|(i, _)| i + 1)
        .unwrap_or(args.len());
    args.splice(pos..pos, tokens);
    Ok(args)
}
