use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

/// One row of a treebank manifest (`id<TAB>language_code<TAB>path`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub id: String,
    pub language_code: String,
    pub path: PathBuf,
}

/// Read a manifest file. Relative paths resolve against the manifest's
/// directory. Blank lines, `#` comments and an optional `id` header row are
/// ignored.
pub fn read_manifest(path: &Path) -> Result<Vec<ManifestEntry>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    parse_manifest(&text, base)
}

pub(crate) fn parse_manifest(text: &str, base: &Path) -> Result<Vec<ManifestEntry>> {
    let mut entries = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
        if cols.len() != 3 || cols.iter().any(|c| c.is_empty()) {
            return Err(Error::Parse {
                line: idx + 1,
                msg: "manifest rows need three columns: id, language_code, path".to_owned(),
            });
        }
        if entries.is_empty() && cols[0] == "id" {
            continue;
        }
        let p = Path::new(cols[2]);
        entries.push(ManifestEntry {
            id: cols[0].to_owned(),
            language_code: cols[1].to_owned(),
            path: if p.is_absolute() { p.to_owned() } else { base.join(p) },
        });
    }
    Ok(entries)
}
