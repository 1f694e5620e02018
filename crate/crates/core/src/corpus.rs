//! Corpus runner: parses every `.py` file under a directory and reports
//! which ones the frontend accepts.
//!
//! A file may carry a sidecar manifest next to it (`name.manifest` for
//! `name.py`) with `key: value` lines:
//!
//! ```text
//! expect: IndentMismatch
//! uses: PyStatements
//! ```

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::token::SourcePos;
use crate::wellformed::check_wellformed;
use crate::Frontend;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Manifest {
    /// Error code the file is expected to fail with.
    pub expect: Option<String>,
    /// Components the file needs beyond the core ones.
    pub uses: Vec<String>,
}

impl Manifest {
    pub fn parse(text: &str) -> Manifest {
        let mut m = Manifest::default();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once(':') else {
                continue;
            };
            let value = value.trim();
            match key.trim() {
                "expect" => m.expect = Some(value.to_string()),
                "uses" => m.uses.extend(
                    value
                        .split([',', ' '])
                        .filter(|s| !s.is_empty())
                        .map(str::to_string),
                ),
                _ => {}
            }
        }
        m
    }

    pub fn sidecar_path(source: &Path) -> PathBuf {
        source.with_extension("manifest")
    }

    pub fn load_for(source: &Path) -> io::Result<Manifest> {
        match fs::read_to_string(Self::sidecar_path(source)) {
            Ok(text) => Ok(Manifest::parse(&text)),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(Manifest::default()),
            Err(e) => Err(e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum Outcome {
    Pass,
    Fail {
        code: String,
        message: String,
        pos: Option<SourcePos>,
    },
}

impl Outcome {
    pub fn passed(&self) -> bool {
        matches!(self, Outcome::Pass)
    }

    pub fn code(&self) -> Option<&str> {
        match self {
            Outcome::Pass => None,
            Outcome::Fail { code, .. } => Some(code),
        }
    }
}

/// Parses `source` and runs the well-formedness checks. The first problem
/// found decides the outcome.
pub fn check_source(frontend: &Frontend, source: &str) -> Outcome {
    match frontend.parse(source) {
        Err(e) => Outcome::Fail {
            code: e.code().to_string(),
            message: e.to_string(),
            pos: e.pos(),
        },
        Ok(module) => match check_wellformed(&module).into_iter().next() {
            None => Outcome::Pass,
            Some(d) => Outcome::Fail {
                code: d.code.to_string(),
                message: d.message,
                pos: Some(d.span.start),
            },
        },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FileReport {
    pub path: PathBuf,
    pub manifest: Manifest,
    pub outcome: Outcome,
}

impl FileReport {
    /// For files with an expected code: whether the failure matched it.
    pub fn matches_expectation(&self) -> bool {
        match &self.manifest.expect {
            Some(code) => self.outcome.code() == Some(code.as_str()),
            None => self.outcome.passed(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub files: Vec<FileReport>,
}

impl CorpusReport {
    pub fn total(&self) -> usize {
        self.files.len()
    }

    pub fn passed(&self) -> usize {
        self.files.iter().filter(|f| f.outcome.passed()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.total()
    }

    pub fn percent(&self) -> f64 {
        if self.files.is_empty() {
            100.0
        } else {
            100.0 * self.passed() as f64 / self.total() as f64
        }
    }

    /// `parsed X/Y files (Z%)`.
    pub fn summary(&self) -> String {
        let pct = self.percent();
        let pct = if pct.fract() == 0.0 {
            format!("{pct:.0}")
        } else {
            format!("{pct:.1}")
        };
        format!("parsed {}/{} files ({pct}%)", self.passed(), self.total())
    }
}

/// All `.py` files under `dir`, sorted.
pub fn discover(dir: &Path) -> io::Result<Vec<PathBuf>> {
    fn walk(dir: &Path, out: &mut Vec<PathBuf>) -> io::Result<()> {
        for entry in fs::read_dir(dir)? {
            let path = entry?.path();
            if path.is_dir() {
                walk(&path, out)?;
            } else if path.extension().is_some_and(|e| e == "py") {
                out.push(path);
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    walk(dir, &mut out)?;
    out.sort();
    Ok(out)
}

/// Code reported for files that cannot be read.
pub const IO_CODE: &str = "IO";

/// Checks every file under `dir` in parallel. Results keep the sorted
/// discovery order; unreadable files are reported as failures.
pub fn run_corpus(dir: &Path, frontend: &Frontend) -> io::Result<CorpusReport> {
    let paths = discover(dir)?;
    let files = paths
        .into_par_iter()
        .map(|path| {
            let read = Manifest::load_for(&path).and_then(|m| Ok((m, fs::read(&path)?)));
            let (manifest, outcome) = match read {
                Ok((manifest, bytes)) => {
                    let outcome = match String::from_utf8(bytes) {
                        Ok(src) => check_source(frontend, &src),
                        Err(_) => Outcome::Fail {
                            code: IO_CODE.to_string(),
                            message: "file is not valid UTF-8".to_string(),
                            pos: None,
                        },
                    };
                    (manifest, outcome)
                }
                Err(e) => (
                    Manifest::default(),
                    Outcome::Fail {
                        code: IO_CODE.to_string(),
                        message: e.to_string(),
                        pos: None,
                    },
                ),
            };
            FileReport {
                path,
                manifest,
                outcome,
            }
        })
        .collect();
    Ok(CorpusReport { files })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_lines() {
        let m = Manifest::parse("# note\nexpect: IndentMismatch\nuses: PyStatements, Extra\n");
        assert_eq!(m.expect.as_deref(), Some("IndentMismatch"));
        assert_eq!(m.uses, vec!["PyStatements", "Extra"]);
        assert_eq!(Manifest::parse(""), Manifest::default());
    }

    #[test]
    fn sidecar_next_to_source() {
        assert_eq!(
            Manifest::sidecar_path(Path::new("a/b/c.py")),
            PathBuf::from("a/b/c.manifest")
        );
    }

    #[test]
    fn outcomes() {
        let fe = Frontend::minipython();
        assert!(check_source(&fe, "x = 1\n").passed());
        assert_eq!(check_source(&fe, "x = ++y\n").code(), Some("WS001"));
        assert_eq!(check_source(&fe, "  x\n").code(), Some("IndentMismatch"));
        assert_eq!(check_source(&fe, "x = 'a\n").code(), Some("UnterminatedString"));
    }

    #[test]
    fn summary_format() {
        let r = CorpusReport { files: vec![] };
        assert_eq!(r.summary(), "parsed 0/0 files (100%)");
        let pass = FileReport {
            path: "a.py".into(),
            manifest: Manifest::default(),
            outcome: Outcome::Pass,
        };
        let fail = FileReport {
            outcome: Outcome::Fail {
                code: "ParseError".into(),
                message: String::new(),
                pos: None,
            },
            ..pass.clone()
        };
        let r = CorpusReport {
            files: vec![pass.clone(), pass, fail],
        };
        assert_eq!(r.summary(), "parsed 2/3 files (66.7%)");
        assert!(!r.all_passed());
    }
}
