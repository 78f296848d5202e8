use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use blocktool_core::context::Session;
use blocktool_core::verify::{full_group_report, Status, VerificationReport, VerifyOptions};
use blocktool_core::{Error, Result};

use crate::commands::load_group;
use crate::Output;

#[derive(Debug, Deserialize)]
pub struct Manifest {
    pub name: String,
    pub entries: Vec<CorpusEntry>,
}

/// Paths are relative to the manifest.
#[derive(Debug, Deserialize)]
pub struct CorpusEntry {
    pub group: PathBuf,
    pub primes: Vec<u64>,
    pub expected: Option<PathBuf>,
}

/// Golden data for one prime.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Expected {
    status: Option<Status>,
    block_sizes: Option<Vec<usize>>,
    defects: Option<Vec<u32>>,
}

#[derive(Serialize)]
struct BlockLine {
    index: usize,
    size: usize,
    defect: u32,
    structure: &'static str,
    status: Status,
}

#[derive(Serialize)]
struct PrimeResult {
    prime: u64,
    status: Status,
    blocks: Vec<BlockLine>,
    /// Mismatches against the golden data, if any was given.
    expected_mismatches: Option<Vec<String>>,
}

#[derive(Serialize)]
struct EntryResult {
    group: String,
    file: String,
    results: Vec<PrimeResult>,
    error: Option<String>,
    pass: bool,
}

#[derive(Serialize)]
struct Aggregate {
    schema: u32,
    manifest: String,
    entries: Vec<EntryResult>,
    failures: Vec<String>,
    status: Status,
}

fn compare(report: &VerificationReport, expected: &Expected) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(s) = expected.status {
        if s != report.status {
            out.push(format!("status {} != expected {}", report.status, s));
        }
    }
    if let Some(sizes) = &expected.block_sizes {
        let got: Vec<usize> = report.blocks.iter().map(|b| b.characters.len()).collect();
        if &got != sizes {
            out.push(format!("block sizes {got:?} != expected {sizes:?}"));
        }
    }
    if let Some(defects) = &expected.defects {
        let got: Vec<u32> = report.blocks.iter().map(|b| b.defect).collect();
        if &got != defects {
            out.push(format!("defects {got:?} != expected {defects:?}"));
        }
    }
    out
}

fn run_entry(session: &Session, base: &Path, entry: &CorpusEntry) -> EntryResult {
    let file = entry.group.display().to_string();
    let attempt = || -> Result<(String, Vec<PrimeResult>)> {
        let g = load_group(session, &base.join(&entry.group))?;
        let expected: Option<BTreeMap<String, Expected>> = match &entry.expected {
            None => None,
            Some(path) => {
                let path = base.join(path);
                let raw = std::fs::read_to_string(&path)
                    .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
                Some(serde_json::from_str(&raw)?)
            }
        };
        let mut results = Vec::new();
        for &p in &entry.primes {
            let report = full_group_report(session, &g, p, VerifyOptions::ALL);
            let expected_mismatches = expected
                .as_ref()
                .map(|e| e.get(&p.to_string()).map(|x| compare(&report, x)).unwrap_or_default());
            results.push(PrimeResult {
                prime: p,
                status: report.status,
                blocks: report
                    .blocks
                    .iter()
                    .map(|b| BlockLine {
                        index: b.index,
                        size: b.characters.len(),
                        defect: b.defect,
                        structure: b.structure,
                        status: b.status,
                    })
                    .collect(),
                expected_mismatches,
            });
        }
        Ok((g.name.clone(), results))
    };
    match attempt() {
        Ok((group, results)) => {
            let pass = results
                .iter()
                .all(|r| r.status == Status::Pass && r.expected_mismatches.as_ref().is_none_or(Vec::is_empty));
            EntryResult {
                group,
                file,
                results,
                error: None,
                pass,
            }
        }
        Err(e) => EntryResult {
            group: file.clone(),
            file,
            results: Vec::new(),
            error: Some(format!("{}: {e}", e.code())),
            pass: false,
        },
    }
}

pub fn run(session: &Session, manifest_path: &Path, jobs: usize, text: bool) -> Result<Output> {
    let raw = std::fs::read_to_string(manifest_path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", manifest_path.display())))?;
    let manifest: Manifest = serde_json::from_str(&raw)?;
    let base = manifest_path.parent().unwrap_or(Path::new("."));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    let entries: Vec<EntryResult> =
        pool.install(|| manifest.entries.par_iter().map(|e| run_entry(session, base, e)).collect());

    let mut failures = Vec::new();
    for e in &entries {
        if let Some(err) = &e.error {
            failures.push(format!("{}: {err}", e.group));
        }
        for r in &e.results {
            if r.status != Status::Pass {
                failures.push(format!("{} p={}: status {}", e.group, r.prime, r.status));
            }
            for m in r.expected_mismatches.iter().flatten() {
                failures.push(format!("{} p={}: {m}", e.group, r.prime));
            }
        }
    }
    let aggregate = Aggregate {
        schema: 1,
        manifest: manifest.name,
        status: if failures.is_empty() { Status::Pass } else { Status::Fail },
        failures,
        entries,
    };
    let pass = aggregate.status == Status::Pass;
    let body = if text {
        let mut s = format!("corpus {}\n", aggregate.manifest);
        for e in &aggregate.entries {
            let primes: Vec<String> = e.results.iter().map(|r| format!("p={} {}", r.prime, r.status)).collect();
            let _ = writeln!(
                s,
                "  {:<10} {}  {}",
                e.group,
                if e.pass { "pass" } else { "FAIL" },
                primes.join(", ")
            );
        }
        for f in &aggregate.failures {
            let _ = writeln!(s, "failure: {f}");
        }
        let _ = writeln!(s, "status: {}", aggregate.status);
        s
    } else {
        let mut s = serde_json::to_string_pretty(&aggregate).expect("aggregate serializes");
        s.push('\n');
        s
    };
    Ok(Output { body, pass })
}
