use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{IndexBundle, StoredBundle};
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

const MANIFEST: &str = "manifest.json";
const SEGMENT: &str = "bundle.bin";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentInfo {
    pub file: String,
    pub bytes: u64,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub format_version: u32,
    pub n_docs: usize,
    pub n_terms: usize,
    pub n_phrases: usize,
    pub corpus_span: [NaiveDate; 2],
    #[serde(default)]
    pub segments: Vec<SegmentInfo>,
}

impl Manifest {
    pub fn read(dir: &Path) -> Result<Manifest> {
        let path = dir.join(MANIFEST);
        let raw = match fs::read(&path) {
            Ok(raw) => raw,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
                return Err(Error::MissingManifest(dir.to_path_buf()));
            }
            Err(e) => return Err(e.into()),
        };
        // Check the version before the full schema so newer manifests get a
        // version error rather than a parse error.
        let value: serde_json::Value =
            serde_json::from_slice(&raw).map_err(|e| Error::Corrupt(format!("{MANIFEST}: {e}")))?;
        let found = value
            .get("format_version")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| Error::Corrupt(format!("{MANIFEST}: missing format_version")))?;
        if found != FORMAT_VERSION as u64 {
            return Err(Error::VersionMismatch {
                found: found as u32,
                expected: FORMAT_VERSION,
            });
        }
        serde_json::from_value(value).map_err(|e| Error::Corrupt(format!("{MANIFEST}: {e}")))
    }
}

/// Persist a bundle into `dir`, creating it if needed.
pub fn save_index(bundle: &IndexBundle, dir: &Path) -> Result<Manifest> {
    fs::create_dir_all(dir)?;
    let bytes = bincode::serialize(bundle.stored()).map_err(|e| Error::Corrupt(e.to_string()))?;
    fs::write(dir.join(SEGMENT), &bytes)?;

    let span = bundle.corpus_span();
    let manifest = Manifest {
        format_version: FORMAT_VERSION,
        n_docs: bundle.n_docs(),
        n_terms: bundle.n_terms(),
        n_phrases: bundle.n_phrases(),
        corpus_span: [span.start, span.end],
        segments: vec![SegmentInfo {
            file: SEGMENT.to_string(),
            bytes: bytes.len() as u64,
            sha256: hex::encode(Sha256::digest(&bytes)),
        }],
    };
    let mut out = BufWriter::new(fs::File::create(dir.join(MANIFEST))?);
    serde_json::to_writer_pretty(&mut out, &manifest).map_err(std::io::Error::from)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(manifest)
}

/// Load a bundle written by [`save_index`].
pub fn load_index(dir: &Path) -> Result<IndexBundle> {
    let manifest = Manifest::read(dir)?;
    let segment = manifest
        .segments
        .iter()
        .find(|s| s.file == SEGMENT)
        .ok_or_else(|| Error::Corrupt(format!("manifest lists no {SEGMENT}")))?;
    let bytes = fs::read(dir.join(SEGMENT)).map_err(|e| Error::Corrupt(format!("{SEGMENT}: {e}")))?;
    if bytes.len() as u64 != segment.bytes || hex::encode(Sha256::digest(&bytes)) != segment.sha256 {
        return Err(Error::Corrupt(format!("{SEGMENT}: checksum mismatch")));
    }
    let stored: StoredBundle = bincode::deserialize(&bytes).map_err(|e| Error::Corrupt(format!("{SEGMENT}: {e}")))?;
    if stored.docs.is_empty() {
        return Err(Error::Corrupt("no documents".into()));
    }
    let bundle = IndexBundle::from_stored(stored);
    let span = bundle.corpus_span();
    if bundle.n_docs() != manifest.n_docs
        || bundle.n_terms() != manifest.n_terms
        || bundle.n_phrases() != manifest.n_phrases
        || [span.start, span.end] != manifest.corpus_span
    {
        return Err(Error::Corrupt("manifest counts disagree with segment".into()));
    }
    Ok(bundle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::{build_index, match_documents};
    use crate::ingest::Document;
    use crate::selection::SelectionState;

    fn bundle() -> IndexBundle {
        let date = |s: &str| s.parse().unwrap();
        build_index(vec![
            Document::analyze("a", date("2000-01-05"), "t", "Haiti voted. Aristide won."),
            Document::analyze("b", date("2000-02-05"), "t", "Aristide returned to Haiti."),
        ])
        .unwrap()
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let b = bundle();
        let manifest = save_index(&b, dir.path()).unwrap();
        assert_eq!(manifest.n_docs, 2);
        let loaded = load_index(dir.path()).unwrap();
        let state = SelectionState::new("aristide", None, b.corpus_span());
        assert_eq!(
            match_documents(&b, &state).unwrap(),
            match_documents(&loaded, &state).unwrap()
        );
        assert_eq!(b.stored(), loaded.stored());
    }

    #[test]
    fn manifest_layout() {
        let dir = tempfile::tempdir().unwrap();
        save_index(&bundle(), dir.path()).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&fs::read(dir.path().join("manifest.json")).unwrap()).unwrap();
        assert_eq!(v["format_version"], 1);
        assert_eq!(v["n_docs"], 2);
        assert_eq!(v["corpus_span"], serde_json::json!(["2000-01-05", "2000-02-05"]));
        assert!(v["n_terms"].as_u64().unwrap() > 0);
        assert!(v["n_phrases"].is_u64());
    }

    #[test]
    fn empty_directory() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(load_index(dir.path()), Err(Error::MissingManifest(_))));
    }

    #[test]
    fn newer_version_rejected() {
        let dir = tempfile::tempdir().unwrap();
        save_index(&bundle(), dir.path()).unwrap();
        let path = dir.path().join("manifest.json");
        let mut v: serde_json::Value = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
        v["format_version"] = 2.into();
        fs::write(&path, serde_json::to_vec(&v).unwrap()).unwrap();
        let err = load_index(dir.path()).unwrap_err();
        assert!(matches!(err, Error::VersionMismatch { found: 2, expected: 1 }));
        let msg = err.to_string();
        assert!(msg.contains('2') && msg.contains('1'));
    }

    #[test]
    fn corrupt_segment() {
        let dir = tempfile::tempdir().unwrap();
        save_index(&bundle(), dir.path()).unwrap();
        let seg = dir.path().join(SEGMENT);
        let mut bytes = fs::read(&seg).unwrap();
        let mid = bytes.len() / 2;
        bytes[mid] ^= 0xff;
        fs::write(&seg, &bytes).unwrap();
        assert!(matches!(load_index(dir.path()), Err(Error::Corrupt(_))));
        fs::remove_file(&seg).unwrap();
        assert!(matches!(load_index(dir.path()), Err(Error::Corrupt(_))));
    }
}
