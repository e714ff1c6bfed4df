//! Optional key=value config file for harness defaults.
//!
//! Recognized keys: `cache_dir`, `closure_cap`, `word_cap`. Lines starting
//! with `#` and blank lines are ignored; values may be quoted.

use std::path::{Path, PathBuf};

use crate::error::{BraidError, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Config {
    pub cache_dir: Option<PathBuf>,
    pub closure_cap: Option<usize>,
    pub word_cap: Option<usize>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut config = Config::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(BraidError::Unsupported(format!(
                    "config line {}: expected key=value, got {:?}",
                    lineno + 1,
                    raw
                )));
            };
            let key = key.trim();
            let value = value.trim().trim_matches('"');
            match key {
                "cache_dir" => config.cache_dir = Some(PathBuf::from(value)),
                "closure_cap" => {
                    config.closure_cap = Some(value.parse().map_err(|_| {
                        BraidError::Unsupported(format!("config: bad closure_cap {value:?}"))
                    })?)
                }
                "word_cap" => {
                    config.word_cap = Some(value.parse().map_err(|_| {
                        BraidError::Unsupported(format!("config: bad word_cap {value:?}"))
                    })?)
                }
                other => {
                    return Err(BraidError::Unsupported(format!(
                        "config: unknown key {other:?}"
                    )))
                }
            }
        }
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_and_ignores_comments() {
        let c = Config::parse("# defaults\ncache_dir = \"/tmp/x\"\nclosure_cap = 1000\n\n").unwrap();
        assert_eq!(c.cache_dir, Some(PathBuf::from("/tmp/x")));
        assert_eq!(c.closure_cap, Some(1000));
        assert_eq!(c.word_cap, None);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_lines() {
        assert!(Config::parse("nope = 1").is_err());
        assert!(Config::parse("just a line").is_err());
        assert!(Config::parse("closure_cap = many").is_err());
    }
}
