//! Instance collections described by a manifest file.
//!
//! A manifest lists one instance per line: `name path best1`, whitespace
//! separated. `path` is relative to the manifest's directory and `best1` is
//! the best-known order-1 makespan in display units, or `-` when unknown.

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::instance::{read_instance, Format, Instance, LoadError};

pub const MANIFEST_FILE: &str = "manifest.txt";

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusEntry {
    pub name: String,
    pub path: PathBuf,
    pub best_known: Option<f64>,
}

impl CorpusEntry {
    pub fn load(&self) -> Result<Instance, LoadError> {
        read_instance(&self.path, Format::Auto).map(|inst| inst.with_name(self.name.clone()))
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Manifest {
        path: String,
        line: usize,
        message: String,
    },
}

impl Corpus {
    /// Loads a corpus directory: its manifest when present, otherwise every
    /// `*.jss` file sorted by name.
    pub fn from_dir(dir: &Path) -> Result<Corpus, CorpusError> {
        let manifest = dir.join(MANIFEST_FILE);
        if manifest.is_file() {
            return Corpus::from_manifest(&manifest);
        }
        let io = |source| CorpusError::Io {
            path: dir.display().to_string(),
            source,
        };
        let mut entries = Vec::new();
        for item in std::fs::read_dir(dir).map_err(io)? {
            let path = item.map_err(io)?.path();
            if path.extension().is_some_and(|e| e == "jss") {
                let name = path.file_stem().unwrap().to_string_lossy().into_owned();
                entries.push(CorpusEntry {
                    name,
                    path,
                    best_known: None,
                });
            }
        }
        entries.sort_by(|a, b| a.name.cmp(&b.name));
        Ok(Corpus { entries })
    }

    pub fn from_manifest(path: &Path) -> Result<Corpus, CorpusError> {
        let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let base = path.parent().unwrap_or(Path::new("."));
        Corpus::parse_manifest(&text, base).map_err(|(line, message)| CorpusError::Manifest {
            path: path.display().to_string(),
            line,
            message,
        })
    }

    fn parse_manifest(text: &str, base: &Path) -> Result<Corpus, (usize, String)> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            if tokens.len() != 3 {
                return Err((line_no, format!("expected `name path best1`, got {} fields", tokens.len())));
            }
            let best_known = match tokens[2] {
                "-" => None,
                v => match v.parse::<f64>() {
                    Ok(x) if x > 0.0 && x.is_finite() => Some(x),
                    _ => return Err((line_no, format!("best-known value {v:?} is not a positive number"))),
                },
            };
            entries.push(CorpusEntry {
                name: tokens[0].to_string(),
                path: base.join(tokens[1]),
                best_known,
            });
        }
        Ok(Corpus { entries })
    }

    /// Keeps only the named instances, in the order given.
    pub fn select(&self, names: &[String]) -> Result<Corpus, String> {
        let entries = names
            .iter()
            .map(|n| {
                self.entries
                    .iter()
                    .find(|e| &e.name == n)
                    .cloned()
                    .ok_or_else(|| format!("instance {n:?} is not in the corpus"))
            })
            .collect::<Result<_, _>>()?;
        Ok(Corpus { entries })
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }
}
