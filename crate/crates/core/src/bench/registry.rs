use std::collections::BTreeMap;

use thiserror::Error;

use crate::corpus::Corpus;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegistryError {
    #[error("best-known value for {name} must be positive, got {value}")]
    NonPositive { name: String, value: f64 },
    #[error("registry line {line}: {message}")]
    Format { line: usize, message: String },
}

/// Reference order-1 makespans (display units) used to build repetition
/// baselines.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BestKnownRegistry {
    values: BTreeMap<String, f64>,
}

const BUILTIN: &[(&str, f64)] = &[
    ("abz6", 943.0),
    ("ft06", 55.0),
    ("ft10", 930.0),
    ("ft20", 1165.0),
    ("la01", 666.0),
    ("la02", 655.0),
    ("la03", 597.0),
    ("la04", 590.0),
    ("la05", 593.0),
    ("la06", 926.0),
    ("la07", 890.0),
    ("la08", 863.0),
    ("la09", 951.0),
    ("la10", 958.0),
    ("la11", 1222.0),
    ("la12", 1039.0),
    ("la13", 1150.0),
    ("la14", 1292.0),
    ("la15", 1207.0),
    ("la16", 945.0),
    ("la17", 784.0),
    ("la18", 848.0),
    ("la19", 842.0),
    ("la20", 902.0),
    ("la21", 1046.0),
];

impl BestKnownRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Best-known makespans of the bundled OR-Library instances.
    pub fn builtin() -> Self {
        Self {
            values: BUILTIN.iter().map(|&(n, v)| (n.to_string(), v)).collect(),
        }
    }

    pub fn insert(&mut self, name: impl Into<String>, value: f64) -> Result<(), RegistryError> {
        let name = name.into();
        if !(value > 0.0 && value.is_finite()) {
            return Err(RegistryError::NonPositive { name, value });
        }
        self.values.insert(name, value);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Adds every manifest entry that carries a best-known value.
    pub fn extend_from_corpus(&mut self, corpus: &Corpus) -> Result<(), RegistryError> {
        for e in &corpus.entries {
            if let Some(v) = e.best_known {
                self.insert(e.name.clone(), v)?;
            }
        }
        Ok(())
    }

    /// Parses `name,best1` lines. A leading `name,best1` header, blank lines
    /// and `#` comments are skipped.
    pub fn from_csv(text: &str) -> Result<Self, RegistryError> {
        let mut reg = Self::new();
        reg.extend_from_csv(text)?;
        Ok(reg)
    }

    pub fn extend_from_csv(&mut self, text: &str) -> Result<(), RegistryError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || (i == 0 && line.eq_ignore_ascii_case("name,best1")) {
                continue;
            }
            let fail = |message: String| RegistryError::Format { line: i + 1, message };
            let (name, value) = line
                .split_once(',')
                .ok_or_else(|| fail("expected `name,best1`".into()))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| fail(format!("{:?} is not a number", value.trim())))?;
            self.insert(name.trim(), value)?;
        }
        Ok(())
    }
}
