//! `key = value` configuration files.
//!
//! Keys are flag names without the leading dashes; `subcommand` names the
//! command when the command line does not. Blank lines and `#` comments are
//! ignored. `key = true` adds a bare flag and `key = false` omits it.

use std::ffi::OsString;
use std::path::Path;

use crate::Failure;

const SUBCOMMANDS: [&str; 6] = ["tame", "fl", "satake", "screen", "numerology", "selftest"];

pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, Failure> {
    let mut out = vec![];
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("config line {}: expected key = value", i + 1)))?;
        let k = k.trim().trim_start_matches("--");
        if k.is_empty() {
            return Err(Failure::usage(format!("config line {}: empty key", i + 1)));
        }
        out.push((k.to_string(), v.trim().to_string()));
    }
    Ok(out)
}

fn flag_present(args: &[OsString], key: &str) -> bool {
    let long = format!("--{key}");
    let with_eq = format!("--{key}=");
    args.iter().any(|a| {
        let a = a.to_string_lossy();
        a == long || a.starts_with(&with_eq)
    })
}

/// Inserts config values for every flag the command line does not set.
pub fn merge_config(args: Vec<OsString>) -> Result<Vec<OsString>, Failure> {
    let pos = args.iter().position(|a| a == "--config");
    let path = match pos {
        Some(i) => args
            .get(i + 1)
            .cloned()
            .ok_or_else(|| Failure::usage("--config needs a path"))?,
        None => match args.iter().find_map(|a| a.to_string_lossy().strip_prefix("--config=").map(OsString::from)) {
            Some(p) => p,
            None => return Ok(args),
        },
    };
    let text = std::fs::read_to_string(Path::new(&path))
        .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.to_string_lossy())))?;
    let entries = parse_config(&text)?;
    let mut out = args.clone();
    let has_sub = args.iter().any(|a| SUBCOMMANDS.contains(&a.to_string_lossy().as_ref()));
    if !has_sub {
        let sub = entries
            .iter()
            .find(|(k, _)| k == "subcommand")
            .map(|(_, v)| v.clone())
            .ok_or_else(|| Failure::usage("no subcommand on the command line or in the config"))?;
        out.insert(1.min(out.len()), OsString::from(sub));
    }
    for (k, v) in entries {
        if k == "subcommand" || k == "config" || flag_present(&args, &k) {
            continue;
        }
        match v.as_str() {
            "true" => out.push(format!("--{k}").into()),
            "false" => {}
            _ => out.push(format!("--{k}={v}").into()),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_skips_comments() {
        let e = parse_config("# run\nsubcommand = screen\nN = 2 # rank\n\ncm-disc=-4\n").unwrap();
        assert_eq!(
            e,
            vec![
                ("subcommand".into(), "screen".into()),
                ("N".into(), "2".into()),
                ("cm-disc".into(), "-4".into())
            ]
        );
        assert!(parse_config("oops").is_err());
    }

    #[test]
    fn flags_win() {
        let dir = std::env::temp_dir().join(format!("galdef-config-{}", std::process::id()));
        std::fs::write(&dir, "subcommand = numerology\nb = 9\nN = 2\n").unwrap();
        let args: Vec<OsString> = ["galdef", "--config", dir.to_str().unwrap(), "--b", "5"]
            .iter()
            .map(OsString::from)
            .collect();
        let merged = merge_config(args).unwrap();
        let s: Vec<String> = merged.iter().map(|a| a.to_string_lossy().into_owned()).collect();
        assert_eq!(s[1], "numerology");
        assert!(s.contains(&"--N=2".to_string()));
        assert!(!s.iter().any(|a| a == "--b=9"));
        std::fs::remove_file(dir).unwrap();
    }
}
