//! Optional `key = value` configuration for size caps.

use std::path::Path;

use massforge::grpcore::DEFAULT_CAP;
use massforge::weyl::GroupOptions;
use massforge::{MassError, Result};
use serde::Deserialize;

/// Default bound for permutation groups in `c123`.
pub const DEFAULT_MAX_ORDER: usize = 100_000;

#[derive(Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub cap: Option<usize>,
    pub max_order: Option<usize>,
    pub allow_e6: Option<bool>,
    pub z3_gl1: Option<bool>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let line = e
                .span()
                .map(|s| text[..s.start].matches('\n').count() + 1)
                .unwrap_or(0);
            MassError::Parse {
                line,
                msg: e.message().to_string(),
            }
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| MassError::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
        Self::parse(&text)
    }

    /// Command-line switches win over the file.
    pub fn group_options(&self, allow_e6: bool, z3_gl1: bool) -> GroupOptions {
        GroupOptions {
            cap: self.cap.unwrap_or(DEFAULT_CAP),
            allow_e6: allow_e6 || self.allow_e6.unwrap_or(false),
            z3_gl1: z3_gl1 || self.z3_gl1.unwrap_or(false),
        }
    }

    pub fn max_order(&self, flag: Option<usize>) -> usize {
        flag.or(self.max_order).unwrap_or(DEFAULT_MAX_ORDER)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_caps() {
        let c = Config::parse("cap = 5000\nallow_e6 = true\n").unwrap();
        assert_eq!(c.cap, Some(5000));
        let opts = c.group_options(false, false);
        assert!(opts.allow_e6 && !opts.z3_gl1);
        assert_eq!(opts.cap, 5000);
    }

    #[test]
    fn rejects_unknown_keys_with_line() {
        match Config::parse("cap = 1\nspeed = 3\n") {
            Err(MassError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }
}
