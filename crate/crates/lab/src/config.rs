//! Job settings: command-line flags over an optional config file over defaults.

use std::path::Path;

use graded_image_core::analysis::DEFAULT_TUPLE_CAP;
use graded_image_core::scalar::Domain;
use serde::Deserialize;

use crate::LabError;

pub const CONFIG_ENV: &str = "GRADED_IMAGE_LAB_CONFIG";
pub const DEFAULT_FIELD: Domain = Domain::Prime(11);
pub const DEFAULT_BUDGET: usize = 100_000;
pub const DEFAULT_SEED: u64 = 20_240_601;

/// Keys accepted in the TOML config file. All optional.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub field: Option<String>,
    pub seed: Option<u64>,
    pub budget: Option<usize>,
    pub samples: Option<usize>,
    pub tuple_cap: Option<u64>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, LabError> {
        toml::from_str(text).map_err(|e| LabError::Usage(format!("bad config file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, LabError> {
        let text = std::fs::read_to_string(path).map_err(|e| LabError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The file named by the environment variable, if set.
    pub fn from_env() -> Result<Self, LabError> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
            _ => Ok(Self::default()),
        }
    }
}

/// Values given on the command line.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub field: Option<String>,
    pub seed: Option<u64>,
    pub budget: Option<usize>,
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Settings {
    pub field: Domain,
    pub seed: u64,
    /// Attempt cap for constructive searches.
    pub budget: usize,
    /// `None` lets each command pick its own default.
    pub samples: Option<usize>,
    pub tuple_cap: u64,
}

impl Settings {
    pub fn resolve(flags: &Overrides, file: &FileConfig) -> Result<Self, LabError> {
        let field = match flags.field.as_ref().or(file.field.as_ref()) {
            Some(s) => s.parse::<Domain>().map_err(|e| LabError::Usage(format!("bad field `{s}`: {e}")))?,
            None => DEFAULT_FIELD,
        };
        Ok(Settings {
            field,
            seed: flags.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            budget: flags.budget.or(file.budget).unwrap_or(DEFAULT_BUDGET),
            samples: flags.samples.or(file.samples),
            tuple_cap: file.tuple_cap.unwrap_or(DEFAULT_TUPLE_CAP),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let s = Settings::resolve(&Overrides::default(), &FileConfig::default()).unwrap();
        assert_eq!(s.field, Domain::Prime(11));
        assert_eq!(s.budget, 100_000);
        assert_eq!(s.tuple_cap, 10_000_000);
        assert_eq!(s.samples, None);
    }

    #[test]
    fn flags_beat_file() {
        let file = FileConfig::parse("field = \"GF(7)\"\nseed = 9\nbudget = 50\ntuple_cap = 1000\n").unwrap();
        let s = Settings::resolve(&Overrides::default(), &file).unwrap();
        assert_eq!((s.field, s.seed, s.budget, s.tuple_cap), (Domain::Prime(7), 9, 50, 1000));
        let flags = Overrides { field: Some("GF(13)".into()), seed: Some(1), ..Overrides::default() };
        let s = Settings::resolve(&flags, &file).unwrap();
        assert_eq!((s.field, s.seed, s.budget), (Domain::Prime(13), 1, 50));
    }

    #[test]
    fn rejects_unknown_keys_and_bad_fields() {
        assert!(FileConfig::parse("colour = 3").is_err());
        let flags = Overrides { field: Some("GF(12)".into()), ..Overrides::default() };
        assert!(Settings::resolve(&flags, &FileConfig::default()).is_err());
    }
}
