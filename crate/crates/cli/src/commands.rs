use std::fmt::Write;
use std::path::Path;

use serde::Serialize;

use blocktool_core::blocks::block_partition;
use blocktool_core::context::{Session, TabledGroup};
use blocktool_core::cyclicblocks::{cartan_determinant, decompose_block, BlockStructure, MatrixRow, TreeReport};
use blocktool_core::lietype::{cyclic_sylow_criterion, LieTypeCase};
use blocktool_core::verify::{full_group_report, render_text, Status, VerifyOptions};
use blocktool_core::{Error, GroupFile, Permutation, Result};

use crate::Output;

pub fn load_group(session: &Session, path: &Path) -> Result<TabledGroup> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let file = GroupFile::parse(&text)?;
    session.tabled(&file.name, &file.to_group()?)
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("output serializes");
    s.push('\n');
    s
}

fn check_prime(p: u64) -> Result<()> {
    if blocktool_core::arith::is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{p} is not prime")))
    }
}

pub fn parse_checks(names: &[String]) -> Result<VerifyOptions> {
    let mut opts = VerifyOptions::NONE;
    for name in names {
        match name.trim() {
            "am" => opts.am = true,
            "in" => opts.in_refinement = true,
            "baw" => opts.baw = true,
            other => return Err(Error::InvalidInput(format!("unknown check {other:?}"))),
        }
    }
    Ok(opts)
}

pub fn analyze(session: &Session, path: &Path, p: u64, text: bool) -> Result<Output> {
    check_prime(p)?;
    let g = load_group(session, path)?;
    let report = full_group_report(session, &g, p, VerifyOptions::NONE);
    let pass = report.status == Status::Pass;
    let body = if text { render_text(&report) } else { report.to_json() };
    Ok(Output { body, pass })
}

pub fn verify(
    session: &Session,
    path: &Path,
    p: u64,
    checks: &[String],
    automorphisms: Option<&Path>,
    text: bool,
) -> Result<Output> {
    check_prime(p)?;
    let opts = parse_checks(checks)?;
    let autos = match automorphisms {
        None => None,
        Some(a) => {
            let raw = std::fs::read_to_string(a).map_err(|e| Error::InvalidInput(format!("{}: {e}", a.display())))?;
            let images: Vec<Vec<u32>> = serde_json::from_str(&raw)?;
            Some(
                images
                    .iter()
                    .map(|i| Permutation::from_images_one_based(i))
                    .collect::<Result<Vec<_>>>()?,
            )
        }
    };
    let g = load_group(session, path)?;
    let mut report = full_group_report(session, &g, p, opts);
    if let Some(autos) = autos {
        report.attach_equivariance(session, &g, &autos);
    }
    let pass = report.status == Status::Pass;
    let body = if text { render_text(&report) } else { report.to_json() };
    Ok(Output { body, pass })
}

#[derive(Serialize)]
struct TreeOutput {
    schema: u32,
    group: String,
    prime: u64,
    block: usize,
    structure: &'static str,
    characters: Vec<usize>,
    degrees: Vec<u64>,
    tree: Option<TreeReport>,
    matrix: Vec<MatrixRow>,
    brauer_degrees: Vec<i64>,
    cartan_determinant: i128,
}

pub fn tree(session: &Session, path: &Path, p: u64, block: usize, text: bool) -> Result<Output> {
    check_prime(p)?;
    let g = load_group(session, path)?;
    let part = block_partition(&g, p)?;
    let b = part
        .blocks
        .get(block)
        .ok_or_else(|| Error::InvalidInput(format!("block {block} out of range (0..{})", part.blocks.len())))?;
    let dec = decompose_block(session, &g, &part, b)?;
    let (structure, tree) = match &dec.structure {
        BlockStructure::DefectZero => ("defect-zero", None),
        BlockStructure::CentralDefect => ("central-defect", None),
        BlockStructure::Cyclic { tree, labeled, .. } => (
            "cyclic",
            Some(TreeReport::new(&g.table, tree, labeled, &dec.matrix, &dec.brauer_characters)),
        ),
    };
    let out = TreeOutput {
        schema: 1,
        group: g.name.clone(),
        prime: p,
        block,
        structure,
        characters: b.characters.clone(),
        degrees: b.characters.iter().map(|&c| g.table.degree(c)).collect(),
        tree,
        matrix: TreeReport::matrix_rows(&dec.matrix),
        brauer_degrees: dec.brauer_characters.iter().map(|phi| phi[0].to_i64().unwrap_or(0)).collect(),
        cartan_determinant: cartan_determinant(&dec.matrix),
    };
    let body = if text {
        let mut s = String::new();
        let _ = writeln!(s, "{} p = {} block {} ({})", out.group, p, block, structure);
        if let Some(t) = &out.tree {
            for v in &t.vertices {
                let _ = writeln!(s, "  vertex {}: characters {:?}, degree {}", v.label, v.members, v.degree);
            }
            for e in &t.edges {
                let _ = writeln!(
                    s,
                    "  edge {}: {} - {}, Brauer degree {}",
                    e.label, e.vertices.0, e.vertices.1, e.brauer_degree
                );
            }
        }
        for row in &out.matrix {
            let entries: Vec<String> = row.entries.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "  chi_{:<3} {}", row.character, entries.join(" "));
        }
        let _ = writeln!(s, "  Cartan determinant {}", out.cartan_determinant);
        s
    } else {
        json_line(&out)
    };
    Ok(Output { body, pass: true })
}

pub fn lietype(series: &str, n: u32, q: u64, p: u64, text: bool) -> Result<Output> {
    let case = LieTypeCase {
        series: series.parse()?,
        n,
        q,
        p,
    };
    let report = cyclic_sylow_criterion(&case)?;
    let body = if text {
        let mut s = format!(
            "{}_{}({}), p = {}: criterion {}\n  d = {}{}, set {:?}, d divides {:?}\n",
            report.series,
            n,
            q,
            p,
            report.criterion,
            report.d,
            if report.d_of_minus_q { " (order of -q)" } else { "" },
            report.set,
            report.divides
        );
        for c in report.conditions.iter().chain(&report.hypotheses) {
            let _ = writeln!(s, "  [{}] {}", if c.holds { "x" } else { " " }, c.name);
        }
        s
    } else {
        json_line(&report)
    };
    Ok(Output { body, pass: true })
}

pub fn table(session: &Session, path: &Path, text: bool) -> Result<Output> {
    let g = load_group(session, path)?;
    let body = if text {
        let t = &g.table;
        let mut s = format!("{} (order {}), {} classes\n", t.name(), t.order(), t.num_classes());
        for (k, c) in t.classes().iter().enumerate() {
            let _ = writeln!(s, "  class {k}: order {}, size {}", c.order, c.size);
        }
        for (i, row) in t.characters().iter().enumerate() {
            let values: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "  chi_{i}: {}", values.join(" | "));
        }
        s
    } else {
        g.table.to_json()
    };
    Ok(Output { body, pass: true })
}
