//! Shared fixtures for the benchmarks.

use blocktool_core::{GroupFile, PermGroup};

/// A group from the shipped corpus.
pub fn corpus_group(name: &str) -> PermGroup {
    let path = format!("{}/../../corpus/{name}.json", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    GroupFile::parse(&text).unwrap().to_group().unwrap()
}
