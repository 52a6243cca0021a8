use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DedupConfig {
    /// Normalized Levenshtein similarity at or above which two subjects are
    /// duplicates.
    pub levenshtein_sim: f64,
    /// Token-set Jaccard similarity at or above which two subjects are
    /// duplicates.
    pub jaccard: f64,
    /// Treat phrases that overlap end-to-start ("king abdullah" /
    /// "abdullah ii") as duplicates.
    pub split_overlap: bool,
}

impl Default for DedupConfig {
    fn default() -> Self {
        DedupConfig {
            levenshtein_sim: 0.80,
            jaccard: 0.50,
            split_overlap: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SubjectsConfig {
    pub max: usize,
    pub page_size: usize,
}

impl Default for SubjectsConfig {
    fn default() -> Self {
        SubjectsConfig { max: 50, page_size: 10 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SummaryConfig {
    pub page_size: usize,
}

impl Default for SummaryConfig {
    fn default() -> Self {
        SummaryConfig { page_size: 10 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BaselineConfig {
    /// Characters of context on each side of a hit.
    pub surround: usize,
    /// Fragments kept per document.
    pub top: usize,
    pub page_size: usize,
}

impl Default for BaselineConfig {
    fn default() -> Self {
        BaselineConfig {
            surround: 50,
            top: 2,
            page_size: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ServerConfig {
    pub port: u16,
}

impl Default for ServerConfig {
    fn default() -> Self {
        ServerConfig { port: 8080 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub dedup: DedupConfig,
    pub subjects: SubjectsConfig,
    pub summary: SummaryConfig,
    pub baseline: BaselineConfig,
    pub server: ServerConfig,
}

impl Config {
    pub fn from_toml(s: &str) -> Result<Config> {
        let config: Config = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |name: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(Error::Config(format!("{name} must be within [0, 1], got {v}")))
            }
        };
        unit("dedup.levenshtein_sim", self.dedup.levenshtein_sim)?;
        unit("dedup.jaccard", self.dedup.jaccard)?;
        let positive = [
            ("subjects.max", self.subjects.max),
            ("subjects.page_size", self.subjects.page_size),
            ("summary.page_size", self.summary.page_size),
            ("baseline.surround", self.baseline.surround),
            ("baseline.top", self.baseline.top),
            ("baseline.page_size", self.baseline.page_size),
        ];
        match positive.iter().find(|(_, v)| *v == 0) {
            Some((name, _)) => Err(Error::Config(format!("{name} must be at least 1"))),
            None => Ok(()),
        }
    }
}
