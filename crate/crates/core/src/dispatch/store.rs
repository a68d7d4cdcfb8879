use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use super::report::IncidentReport;
use super::DispatchError;

/// Append-only incident log, one JSON report per line.
#[derive(Debug, Default)]
pub struct IncidentStore {
    path: Option<PathBuf>,
    file: Option<File>,
    reports: Vec<IncidentReport>,
    index: HashMap<String, usize>,
}

fn io_err(path: &Path, e: std::io::Error) -> DispatchError {
    DispatchError::StoreIo(format!("{}: {e}", path.display()))
}

impl IncidentStore {
    /// A store that keeps reports in memory only.
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Opens or creates a log file and replays it. A corrupt final line is
    /// cut off with a warning; corruption earlier in the file is an error.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, DispatchError> {
        let path = path.as_ref().to_path_buf();
        let mut file = OpenOptions::new().read(true).append(true).create(true).open(&path).map_err(|e| io_err(&path, e))?;
        let mut text = String::new();
        file.read_to_string(&mut text).map_err(|e| io_err(&path, e))?;

        let mut store = Self { path: Some(path.clone()), file: None, reports: Vec::new(), index: HashMap::new() };
        let lines: Vec<(usize, &str)> = line_offsets(&text);
        let last_nonblank = lines.iter().rposition(|(_, l)| !l.trim().is_empty());
        let mut valid_end = 0;
        for (n, &(offset, line)) in lines.iter().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<IncidentReport>(line) {
                Ok(r) => {
                    store.insert(r)?;
                    valid_end = offset + line.len() + 1;
                }
                Err(e) if Some(n) == last_nonblank => {
                    tracing::warn!(path = %path.display(), line = n + 1, error = %e, "truncating corrupt trailing record");
                    file.set_len(offset as u64).map_err(|e| io_err(&path, e))?;
                    valid_end = offset;
                }
                Err(e) => return Err(DispatchError::CorruptRecord { line: n + 1, reason: e.to_string() }),
            }
        }
        if valid_end > text.len() {
            // Last record lacks its newline.
            file.write_all(b"\n").map_err(|e| io_err(&path, e))?;
        }
        store.file = Some(file);
        Ok(store)
    }

    /// Same as [`IncidentStore::open`].
    pub fn load(path: impl AsRef<Path>) -> Result<Self, DispatchError> {
        Self::open(path)
    }

    fn insert(&mut self, report: IncidentReport) -> Result<(), DispatchError> {
        if self.index.contains_key(&report.id) {
            return Err(DispatchError::DuplicateId(report.id));
        }
        self.index.insert(report.id.clone(), self.reports.len());
        self.reports.push(report);
        Ok(())
    }

    /// Appends a report and flushes it to the log before indexing it.
    pub fn persist(&mut self, report: IncidentReport) -> Result<(), DispatchError> {
        if self.index.contains_key(&report.id) {
            return Err(DispatchError::DuplicateId(report.id));
        }
        if let (Some(file), Some(path)) = (self.file.as_mut(), self.path.as_ref()) {
            let mut line = serde_json::to_string(&report).map_err(|e| DispatchError::StoreIo(e.to_string()))?;
            line.push('\n');
            file.write_all(line.as_bytes()).map_err(|e| io_err(path, e))?;
            file.flush().map_err(|e| io_err(path, e))?;
        }
        self.insert(report)
    }

    pub fn get(&self, id: &str) -> Option<&IncidentReport> {
        self.index.get(id).map(|&i| &self.reports[i])
    }

    /// Reports in creation order.
    pub fn reports(&self) -> &[IncidentReport] {
        &self.reports
    }

    pub fn len(&self) -> usize {
        self.reports.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reports.is_empty()
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }
}

/// Lines with their byte offsets, newline excluded.
fn line_offsets(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        out.push((offset, line.strip_suffix('\n').unwrap_or(line)));
        offset += line.len();
    }
    out
}
