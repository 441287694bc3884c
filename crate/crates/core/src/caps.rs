//! Size limits for the dense tables and exhaustive enumerations.
//!
//! Every operation whose cost grows factorially or exponentially takes a
//! [`Caps`] and refuses to run past it. Defaults keep desk-scale runs in
//! memory; the `CAYWALK_CAPS` environment variable overrides them with a
//! comma-separated `key=value` list, e.g. `degree=9,sequences=1e8`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const CAPS_ENV: &str = "CAYWALK_CAPS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest degree n for which a Cayley graph over S_n is materialised.
    pub degree: usize,
    /// Largest degree n for a full character table.
    pub characters: usize,
    /// Largest number of generating sequences enumerated in one pass.
    pub sequences: u64,
    /// Largest Walsh level (sequence length 2^level).
    pub walsh: u32,
    /// Largest step count for the direct 2^t word summation.
    pub hadamard_steps: u32,
    /// Largest dimension d*N of an explicit walk matrix.
    pub dense: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            degree: 8,
            characters: 10,
            sequences: 10_000_000,
            walsh: 26,
            hadamard_steps: 24,
            dense: 4096,
        }
    }
}

impl Caps {
    /// Defaults overridden by `CAYWALK_CAPS`, if set.
    pub fn from_env() -> Result<Caps> {
        match std::env::var(CAPS_ENV) {
            Ok(text) if !text.trim().is_empty() => Caps::default().with_overrides(&text),
            _ => Ok(Caps::default()),
        }
    }

    pub fn with_overrides(mut self, text: &str) -> Result<Caps> {
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(|| Error::Parse {
                what: "caps",
                detail: format!("expected key=value, got `{item}`"),
            })?;
            let value = parse_count(value.trim())?;
            match key.trim() {
                "degree" => self.degree = value as usize,
                "characters" => self.characters = value as usize,
                "sequences" => self.sequences = value,
                "walsh" => self.walsh = value as u32,
                "hadamard" | "hadamard_steps" => self.hadamard_steps = value as u32,
                "dense" => self.dense = value as usize,
                other => {
                    return Err(Error::Parse {
                        what: "caps",
                        detail: format!("unknown key `{other}`"),
                    })
                }
            }
        }
        Ok(self)
    }

    pub(crate) fn check(what: &'static str, value: u64, limit: u64) -> Result<()> {
        if value > limit {
            Err(Error::CapExceeded { what, value, limit })
        } else {
            Ok(())
        }
    }
}

/// Accepts plain integers and `1e7`-style powers of ten.
fn parse_count(text: &str) -> Result<u64> {
    let bad = || Error::Parse {
        what: "caps",
        detail: format!("`{text}` is not a count"),
    };
    if let Some((mantissa, exp)) = text.split_once(['e', 'E']) {
        let mantissa: u64 = mantissa.parse().map_err(|_| bad())?;
        let exp: u32 = exp.parse().map_err(|_| bad())?;
        10u64
            .checked_pow(exp)
            .and_then(|p| p.checked_mul(mantissa))
            .ok_or_else(bad)
    } else {
        text.parse().map_err(|_| bad())
    }
}

impl fmt::Display for Caps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "degree={},characters={},sequences={},walsh={},hadamard={},dense={}",
            self.degree, self.characters, self.sequences, self.walsh, self.hadamard_steps, self.dense
        )
    }
}

impl FromStr for Caps {
    type Err = Error;

    fn from_str(s: &str) -> Result<Caps> {
        Caps::default().with_overrides(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_and_display_round_trip() {
        let caps: Caps = "degree=9, sequences=1e8".parse().unwrap();
        assert_eq!(caps.degree, 9);
        assert_eq!(caps.sequences, 100_000_000);
        assert_eq!(caps.characters, 10);
        assert_eq!(caps.to_string().parse::<Caps>().unwrap(), caps);
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!("colour=3".parse::<Caps>().is_err());
        assert!("degree".parse::<Caps>().is_err());
        assert!("degree=x".parse::<Caps>().is_err());
    }
}
