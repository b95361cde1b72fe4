//! Run configuration: flags over environment over config file over defaults.
//!
//! The config file is flat `key = value` text with keys `brute_cap`,
//! `workers`, `format` and `out`; `#` starts a comment. Environment
//! variables use the same keys uppercased with a `PENTAPERM_` prefix.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use pentanomial::oracle::DEFAULT_BRUTE_CAP;

pub const ENV_PREFIX: &str = "PENTAPERM_";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" => Ok(Format::Md),
            "text" => Ok(Format::Text),
            other => Err(format!(
                "unknown format {other:?}; expected json, csv, md or text"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    /// Largest `n = 2m` swept exhaustively.
    pub brute_cap: u32,
    /// Worker threads; 0 lets rayon choose.
    pub workers: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            brute_cap: DEFAULT_BRUTE_CAP,
            workers: 0,
            format: Format::Text,
            out: None,
        }
    }
}

/// Settings given explicitly on the command line.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub brute_cap: Option<u32>,
    pub workers: Option<usize>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn parse_value<T: FromStr>(source: &str, key: &str, raw: &str) -> Result<T, ConfigError> {
    raw.trim()
        .parse()
        .map_err(|_| ConfigError(format!("{source}: invalid value {raw:?} for {key}")))
}

impl RunConfig {
    fn apply(&mut self, source: &str, key: &str, raw: &str) -> Result<(), ConfigError> {
        match key {
            "brute_cap" => self.brute_cap = parse_value(source, key, raw)?,
            "workers" => self.workers = parse_value(source, key, raw)?,
            "format" => {
                self.format = raw
                    .trim()
                    .parse()
                    .map_err(|e| ConfigError(format!("{source}: {e}")))?
            }
            "out" => self.out = Some(PathBuf::from(raw.trim())),
            other => return Err(ConfigError(format!("{source}: unknown key {other:?}"))),
        }
        Ok(())
    }

    fn apply_file(&mut self, text: &str) -> Result<(), ConfigError> {
        for (k, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let source = format!("config line {}", k + 1);
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError(format!("{source}: expected key = value")))?;
            self.apply(&source, key.trim(), value)?;
        }
        Ok(())
    }

    /// Layer the sources; `env` looks up a full variable name.
    pub fn resolve(
        flags: &Overrides,
        env: impl Fn(&str) -> Option<String>,
        file: Option<&str>,
    ) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        if let Some(text) = file {
            cfg.apply_file(text)?;
        }
        for key in ["brute_cap", "workers", "format", "out"] {
            let var = format!("{ENV_PREFIX}{}", key.to_ascii_uppercase());
            if let Some(v) = env(&var) {
                cfg.apply(&var, key, &v)?;
            }
        }
        if let Some(v) = flags.brute_cap {
            cfg.brute_cap = v;
        }
        if let Some(v) = flags.workers {
            cfg.workers = v;
        }
        if let Some(v) = flags.format {
            cfg.format = v;
        }
        if let Some(v) = &flags.out {
            cfg.out = Some(v.clone());
        }
        if !(2..=pentanomial::field::DEFAULT_DEGREE_CAP).contains(&cfg.brute_cap) {
            return Err(ConfigError(format!(
                "brute_cap {} outside 2..={}",
                cfg.brute_cap,
                pentanomial::field::DEFAULT_DEGREE_CAP
            )));
        }
        Ok(cfg)
    }
}
