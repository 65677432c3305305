//! Run configuration files.
//!
//! ```text
//! # keys before any section apply to every suite
//! seed = 7
//! [restriction]
//! radii = 8, 16, 32
//! q = 2, 4
//! [kernel]
//! quadruples = 200
//! ```
//!
//! Keys are those accepted by [`SuiteConfig::set`]. Every section is checked
//! against its own suite, so a typo in an unused section is still an error.

use rlab_core::experiments::{Suite, SuiteConfig};
use rlab_core::{Error, Result};

fn at(line: usize, e: Error) -> Error {
    match e {
        Error::Config(m) => Error::Config(format!("line {line}: {m}")),
        other => Error::Config(format!("line {line}: {other}")),
    }
}

/// Applies the global keys and the section for `suite` on top of the suite defaults.
pub fn load(text: &str, suite: Suite) -> Result<SuiteConfig> {
    let mut target = SuiteConfig::defaults(suite);
    let mut section: Option<Suite> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| Error::Config(format!("line {line_no}: unterminated section header")))?;
            section = Some(name.trim().parse().map_err(|e| at(line_no, e))?);
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {line_no}: expected `key = value`")))?;
        match section {
            Some(s) if s != suite => {
                SuiteConfig::defaults(s).set(key, value).map_err(|e| at(line_no, e))?;
            }
            _ => target.set(key, value).map_err(|e| at(line_no, e))?,
        }
    }
    Ok(target)
}
