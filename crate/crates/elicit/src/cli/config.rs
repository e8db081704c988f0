//! Flat key-value run configuration with `[section]` headers, used by the
//! properties, estimate, and simulate commands.

use std::collections::HashMap;
use std::path::Path;

use crate::error::{ElicitError, Result};

#[derive(Debug, Clone, Default)]
pub struct Config {
    sections: HashMap<String, HashMap<String, String>>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        let mut sections: HashMap<String, HashMap<String, String>> = HashMap::new();
        let mut current: Option<String> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
                let name = name.trim().to_string();
                sections.entry(name.clone()).or_default();
                current = Some(name);
                continue;
            }
            let section = current.as_ref().ok_or_else(|| {
                ElicitError::UsageError(format!(
                    "config line {} appears before any [section]: {line:?}",
                    i + 1
                ))
            })?;
            let (key, value) = line.split_once('=').ok_or_else(|| {
                ElicitError::UsageError(format!("config line {} is not key = value: {line:?}", i + 1))
            })?;
            sections
                .get_mut(section)
                .expect("section inserted above")
                .insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Config { sections })
    }

    pub fn from_path(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            ElicitError::UsageError(format!("cannot read config {}: {e}", path.display()))
        })?;
        Config::parse(&text)
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections
            .get(section)
            .and_then(|s| s.get(key))
            .map(|v| v.as_str())
    }

    pub fn require(&self, section: &str, key: &str) -> Result<&str> {
        self.get(section, key).ok_or_else(|| {
            ElicitError::UsageError(format!("config is missing [{section}] {key} ="))
        })
    }

    pub fn get_f64(&self, section: &str, key: &str) -> Result<Option<f64>> {
        self.get(section, key)
            .map(|v| {
                v.parse::<f64>().map_err(|_| {
                    ElicitError::UsageError(format!("[{section}] {key} = {v:?} is not a real"))
                })
            })
            .transpose()
    }

    pub fn get_u64(&self, section: &str, key: &str) -> Result<Option<u64>> {
        self.get(section, key)
            .map(|v| {
                v.parse::<u64>().map_err(|_| {
                    ElicitError::UsageError(format!("[{section}] {key} = {v:?} is not an integer"))
                })
            })
            .transpose()
    }

    /// Comma-separated reals.
    pub fn get_f64_list(&self, section: &str, key: &str) -> Result<Option<Vec<f64>>> {
        self.get(section, key)
            .map(|v| {
                v.split(',')
                    .map(|p| {
                        p.trim().parse::<f64>().map_err(|_| {
                            ElicitError::UsageError(format!(
                                "[{section}] {key} has a non-real entry {p:?}"
                            ))
                        })
                    })
                    .collect()
            })
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sections_and_comments() {
        let c = Config::parse(
            "# run setup\n[functional]\nliteral = quantile:alpha=0.1\n\n[check]\np = 2\n; trailing\n",
        )
        .unwrap();
        assert_eq!(c.get("functional", "literal"), Some("quantile:alpha=0.1"));
        assert_eq!(c.get_f64("check", "p").unwrap(), Some(2.0));
        assert_eq!(c.get("check", "missing"), None);
        assert!(c.require("io", "out").is_err());
    }

    #[test]
    fn rejects_keys_outside_sections() {
        assert!(Config::parse("literal = mean\n").is_err());
        assert!(Config::parse("[check]\nnot a pair\n").is_err());
    }

    #[test]
    fn parses_lists() {
        let c = Config::parse("[check]\nepsilons = 0.5, 1, 2\n").unwrap();
        assert_eq!(
            c.get_f64_list("check", "epsilons").unwrap().unwrap(),
            vec![0.5, 1.0, 2.0]
        );
    }
}
