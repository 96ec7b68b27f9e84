use std::path::{Path, PathBuf};

use super::{build, corpus_list, schema_variant, source_text, CorpusError};
use crate::thf::{emit_thf, ThfOptions};

#[derive(Debug, thiserror::Error)]
pub enum ExportError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error("cannot write {path}: {reason}")]
    Io { path: PathBuf, reason: std::io::Error },
}

fn write(path: PathBuf, text: &str) -> Result<PathBuf, ExportError> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(|reason| ExportError::Io { path: parent.into(), reason })?;
    }
    std::fs::write(&path, text).map_err(|reason| ExportError::Io { path: path.clone(), reason })?;
    Ok(path)
}

/// Writes `<id>.lgp` and `<id>.p` for every entry, and `schema/<id>.p` with
/// the axiom-schema form of each system problem. Returns the written paths.
pub fn export_corpus(dir: &Path, opts: &ThfOptions) -> Result<Vec<PathBuf>, ExportError> {
    let mut written = Vec::new();
    for e in corpus_list() {
        written.push(write(dir.join(format!("{}.lgp", e.id)), &source_text(&e.id)?)?);
        let p = build(&e.id)?;
        written.push(write(dir.join(format!("{}.p", e.id)), &emit_thf(&p, opts).to_string())?);
        if let Some(schema) = schema_variant(&e.id) {
            let mut s = schema?;
            s.expected = e.expected;
            written.push(write(dir.join("schema").join(format!("{}.p", e.id)), &emit_thf(&s, opts).to_string())?);
        }
    }
    Ok(written)
}
