//! The bundled corpus of derivation scripts.
//!
//! A corpus directory holds a `MANIFEST` and the script files it lists. Each
//! manifest line is `<relative path> <label>`; blank lines and `#` comments
//! are skipped. Every `.txt` file in the directory must be listed.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;
use threepage_core::checker::{check_script, parse_scripts, Script, ScriptError, ScriptReport, StepBudget};

pub const CORPUS_ENV: &str = "THREEPAGE_CORPUS";

pub fn bundled_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus"))
}

/// `$THREEPAGE_CORPUS` if set, else the bundled directory.
pub fn corpus_dir() -> PathBuf {
    match std::env::var_os(CORPUS_ENV) {
        Some(p) if !p.is_empty() => PathBuf::from(p),
        _ => bundled_dir(),
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("MANIFEST line {line}: {message}")]
    Manifest { line: usize, message: String },
    #[error("{file}: {source}")]
    Script { file: String, source: ScriptError },
    #[error("{file} is not listed in MANIFEST")]
    Unlisted { file: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestEntry {
    pub file: String,
    pub label: String,
}

#[derive(Clone, Debug)]
pub struct CorpusFile {
    pub entry: ManifestEntry,
    pub scripts: Vec<Script>,
}

pub fn parse_manifest(text: &str) -> Result<Vec<ManifestEntry>, CorpusError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (file, label) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        if out.iter().any(|e: &ManifestEntry| e.file == file) {
            return Err(CorpusError::Manifest { line: n + 1, message: format!("{file} listed twice") });
        }
        out.push(ManifestEntry { file: file.to_string(), label: label.trim().to_string() });
    }
    Ok(out)
}

fn read(path: &Path) -> Result<String, CorpusError> {
    fs::read_to_string(path).map_err(|source| CorpusError::Io { path: path.to_path_buf(), source })
}

fn script_files(dir: &Path, base: &Path, out: &mut Vec<String>) -> Result<(), CorpusError> {
    let entries = fs::read_dir(dir).map_err(|source| CorpusError::Io { path: dir.to_path_buf(), source })?;
    for e in entries {
        let e = e.map_err(|source| CorpusError::Io { path: dir.to_path_buf(), source })?;
        let path = e.path();
        if path.is_dir() {
            script_files(&path, base, out)?;
        } else if path.extension().is_some_and(|x| x == "txt") {
            let rel = path.strip_prefix(base).unwrap_or(&path);
            out.push(rel.to_string_lossy().replace('\\', "/"));
        }
    }
    Ok(())
}

pub fn load_corpus(dir: &Path) -> Result<Vec<CorpusFile>, CorpusError> {
    let manifest = parse_manifest(&read(&dir.join("MANIFEST"))?)?;
    let mut on_disk = Vec::new();
    script_files(dir, dir, &mut on_disk)?;
    if let Some(file) = on_disk.into_iter().find(|f| !manifest.iter().any(|e| &e.file == f)) {
        return Err(CorpusError::Unlisted { file });
    }
    manifest
        .into_iter()
        .map(|entry| {
            let text = read(&dir.join(&entry.file))?;
            let scripts =
                parse_scripts(&text).map_err(|source| CorpusError::Script { file: entry.file.clone(), source })?;
            Ok(CorpusFile { entry, scripts })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct FileReport {
    pub entry: ManifestEntry,
    pub scripts: Vec<ScriptReport>,
}

impl FileReport {
    pub fn passed(&self) -> bool {
        self.scripts.iter().all(ScriptReport::passed)
    }
}

#[derive(Clone, Debug)]
pub struct CorpusReport {
    pub files: Vec<FileReport>,
}

impl CorpusReport {
    pub fn scripts(&self) -> impl Iterator<Item = &ScriptReport> {
        self.files.iter().flat_map(|f| &f.scripts)
    }

    pub fn passed(&self) -> bool {
        self.files.iter().all(FileReport::passed)
    }

    pub fn script_count(&self) -> usize {
        self.scripts().count()
    }

    pub fn failed_count(&self) -> usize {
        self.scripts().filter(|s| !s.passed()).count()
    }

    pub fn elementary_steps(&self) -> usize {
        self.scripts().map(ScriptReport::elementary_steps).sum()
    }
}

/// Checks every script, in parallel on the current rayon pool.
pub fn run_corpus(files: &[CorpusFile], budget: &StepBudget) -> CorpusReport {
    let jobs: Vec<(usize, &Script)> =
        files.iter().enumerate().flat_map(|(n, f)| f.scripts.iter().map(move |s| (n, s))).collect();
    let reports: Vec<(usize, ScriptReport)> = jobs.par_iter().map(|&(n, s)| (n, check_script(s, budget))).collect();
    let mut out: Vec<FileReport> =
        files.iter().map(|f| FileReport { entry: f.entry.clone(), scripts: Vec::new() }).collect();
    for (n, r) in reports {
        out[n].scripts.push(r);
    }
    CorpusReport { files: out }
}
