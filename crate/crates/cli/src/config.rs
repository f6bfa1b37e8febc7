//! Flat `key = value` run configuration.
//!
//! One optional file sets defaults for any tunable; command-line flags
//! always win. Unknown keys are rejected so typos fail loudly instead of
//! silently running with defaults.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::{usage, CliError};

const KNOWN_KEYS: &[&str] = &[
    "seed",
    "sample_rate",
    "jobs",
    "win_len",
    "hop",
    "n_fft",
    "n_mels",
    "fmin",
    "fmax",
    "freq_mask_width",
    "time_mask_width",
    "freq_masks",
    "time_masks",
    "time_warp",
    "folds",
    "crossfade_ms",
    "replace_all",
    "mode",
    "min_count",
    "min_count_inclusive",
    "max_n",
    "iterations",
    "ratio",
    "hop_ms",
    "corpus",
    "ctm",
    "out",
    "text",
    "lexicon",
];

#[derive(Debug, Default, Clone)]
pub struct RunConfig {
    values: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let content = fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        let mut values = BTreeMap::new();
        for (i, raw) in content.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let at = |detail: String| usage(format!("{}:{}: {detail}", path.display(), i + 1));
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| at("expected `key = value`".into()))?;
            let (key, value) = (key.trim(), value.trim());
            if !KNOWN_KEYS.contains(&key) {
                return Err(at(format!("unknown config key {key:?}")));
            }
            if value.is_empty() {
                return Err(at(format!("empty value for {key:?}")));
            }
            if values.insert(key.to_string(), value.to_string()).is_some() {
                return Err(at(format!("duplicate config key {key:?}")));
            }
        }
        Ok(Self { values })
    }

    fn parse<T>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T: FromStr,
        T::Err: Display,
    {
        debug_assert!(KNOWN_KEYS.contains(&key), "unlisted config key {key}");
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|e| usage(format!("config key {key} = {raw:?}: {e}"))),
        }
    }

    /// Flag value, else config value, else the default.
    pub fn resolve<T>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, CliError>
    where
        T: FromStr,
        T::Err: Display,
    {
        match flag {
            Some(v) => Ok(v),
            None => Ok(self.parse(key)?.unwrap_or(default)),
        }
    }

    /// Flag value, else config value, else `None`.
    pub fn optional<T>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError>
    where
        T: FromStr,
        T::Err: Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.parse(key),
        }
    }

    /// Flag value, else config value, else an error naming the flag.
    pub fn require<T>(&self, flag: Option<T>, key: &str, flag_name: &str) -> Result<T, CliError>
    where
        T: FromStr,
        T::Err: Display,
    {
        self.optional(flag, key)?
            .ok_or_else(|| usage(format!("missing {flag_name} (config key `{key}`)")))
    }

    /// A boolean switch: the flag turns it on, otherwise the config decides.
    pub fn switch(&self, flag: bool, key: &str) -> Result<bool, CliError> {
        if flag {
            return Ok(true);
        }
        Ok(self.parse(key)?.unwrap_or(false))
    }
}
