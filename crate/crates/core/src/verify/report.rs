use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{am_check, equivariance_spot_check, EquivarianceReport, brauer_correspondent, first_main_check, in_refinement_check, AmCheck, FirstMainCheck, InCheck};
use crate::blocks::{block_partition, heights, Block, BlockPartition};
use crate::context::{Session, TabledGroup};
use crate::cyclicblocks::{decompose_block, is_central, BlockStructure, CyclicBlockData, MatrixRow, TreeReport};
use crate::error::Error;
use crate::permcore::Permutation;
use crate::weights::{baw_count_check, weight_analysis, BawCount, RadicalClass, Weight, WeightAnalysis};

pub const SCHEMA: u32 = 1;

/// Which counting checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub am: bool,
    pub in_refinement: bool,
    pub baw: bool,
}

impl VerifyOptions {
    pub const ALL: VerifyOptions = VerifyOptions {
        am: true,
        in_refinement: true,
        baw: true,
    };
    pub const NONE: VerifyOptions = VerifyOptions {
        am: false,
        in_refinement: false,
        baw: false,
    };

    pub fn names(&self) -> Vec<String> {
        [(self.am, "am"), (self.in_refinement, "in"), (self.baw, "baw")]
            .iter()
            .filter(|(on, _)| *on)
            .map(|(_, n)| n.to_string())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
    /// Positive-defect block with non-cyclic defect group.
    Skipped,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorEntry {
    pub stage: String,
    pub code: &'static str,
    pub message: String,
}

impl ErrorEntry {
    fn new(stage: &str, e: &Error) -> Self {
        ErrorEntry {
            stage: stage.to_string(),
            code: e.code(),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub brauer_characters: usize,
    pub brauer_degrees: Vec<i64>,
    pub matrix: Vec<MatrixRow>,
    pub unitriangular: bool,
    pub cartan_determinant: i128,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockResult {
    pub index: usize,
    pub characters: Vec<usize>,
    pub degrees: Vec<u64>,
    pub heights: Vec<u32>,
    pub defect: u32,
    pub defect_group_order: u128,
    pub defect_group_generators: Vec<Vec<u32>>,
    /// `defect-zero`, `central-defect`, `cyclic` or `non-cyclic`.
    pub structure: &'static str,
    pub cyclic: Option<CyclicBlockData>,
    pub tree: Option<TreeReport>,
    pub decomposition: Option<Decomposition>,
    pub am: Option<AmCheck>,
    pub in_refinement: Option<InCheck>,
    pub baw: Option<BawCount>,
    pub weights: Option<Vec<Weight>>,
    pub errors: Vec<ErrorEntry>,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub group: String,
    pub order: u128,
    pub prime: u64,
    pub checks: Vec<String>,
    pub num_characters: usize,
    pub degrees: Vec<u64>,
    pub blocks: Vec<BlockResult>,
    pub first_main: Vec<FirstMainCheck>,
    pub radicals: Option<Vec<RadicalClass>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivariance: Option<Vec<EquivarianceReport>>,
    pub warnings: Vec<String>,
    pub errors: Vec<ErrorEntry>,
    pub status: Status,
}

impl VerificationReport {
    /// Compact JSON followed by a newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_json_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn structure_of(g: &TabledGroup, block: &Block, session: &Session) -> Result<&'static str, Error> {
    if block.defect == 0 {
        return Ok("defect-zero");
    }
    if !block.defect_group.is_cyclic(&session.limits)? {
        return Ok("non-cyclic");
    }
    Ok(if is_central(&g.group, &block.defect_group) {
        "central-defect"
    } else {
        "cyclic"
    })
}

fn block_result(
    session: &Session,
    g: &TabledGroup,
    part: &BlockPartition,
    block: &Block,
    opts: VerifyOptions,
    weights: Option<&WeightAnalysis>,
) -> BlockResult {
    let mut errors = Vec::new();
    let mut result = BlockResult {
        index: block.index,
        characters: block.characters.clone(),
        degrees: block.characters.iter().map(|&c| g.table.degree(c)).collect(),
        heights: heights(&g.table, block).into_iter().map(|(_, h)| h).collect(),
        defect: block.defect,
        defect_group_order: block.defect_group_order(),
        defect_group_generators: block.defect_group.generator_images(),
        structure: "non-cyclic",
        cyclic: None,
        tree: None,
        decomposition: None,
        am: None,
        in_refinement: None,
        baw: None,
        weights: None,
        errors: Vec::new(),
        status: Status::Pass,
    };
    match structure_of(g, block, session) {
        Ok(s) => result.structure = s,
        Err(e) => {
            result.errors.push(ErrorEntry::new("structure", &e));
            result.status = Status::Error;
            return result;
        }
    }
    if result.structure == "non-cyclic" {
        result.status = Status::Skipped;
        return result;
    }

    let mut brauer_count = None;
    match decompose_block(session, g, part, block) {
        Ok(dec) => {
            brauer_count = Some(dec.num_brauer_characters());
            if let BlockStructure::Cyclic { data, tree, labeled } = &dec.structure {
                result.tree = Some(TreeReport::new(&g.table, tree, labeled, &dec.matrix, &dec.brauer_characters));
                result.cyclic = Some(data.clone());
            }
            let full = TreeReport::matrix_rows(&dec.matrix);
            result.decomposition = Some(Decomposition {
                brauer_characters: dec.num_brauer_characters(),
                brauer_degrees: dec
                    .brauer_characters
                    .iter()
                    .map(|phi| phi[0].to_i64().unwrap_or(0))
                    .collect(),
                matrix: full,
                unitriangular: dec.matrix.is_unitriangular(),
                cartan_determinant: crate::cyclicblocks::cartan_determinant(&dec.matrix),
            });
        }
        Err(e) => errors.push(ErrorEntry::new("decomposition", &e)),
    }

    if opts.am || opts.in_refinement {
        match brauer_correspondent(session, g, part, block) {
            Ok((local, corr)) => {
                if opts.am {
                    result.am = Some(am_check(g, block, &local, corr));
                }
                if opts.in_refinement {
                    result.in_refinement = Some(in_refinement_check(session, g, part, block, &local, corr));
                }
            }
            Err(e) => errors.push(ErrorEntry::new("correspondent", &e)),
        }
    }

    if opts.baw {
        match (weights, brauer_count) {
            (Some(w), Some(count)) => {
                let list = w.weights_of_block(block.index);
                result.baw = Some(baw_count_check(count, &list));
                result.weights = Some(list);
            }
            (None, _) => errors.push(ErrorEntry::new(
                "weights",
                &Error::NotSupported("weights unavailable for this group".into()),
            )),
            (_, None) => {}
        }
    }

    let failed = result.am.as_ref().is_some_and(|c| !c.pass)
        || result.in_refinement.as_ref().is_some_and(|c| !c.pass)
        || result.baw.as_ref().is_some_and(|c| !c.pass);
    result.status = if !errors.is_empty() {
        Status::Error
    } else if failed {
        Status::Fail
    } else {
        Status::Pass
    };
    result.errors = errors;
    result
}

/// Runs the block pipeline and the requested checks on `(G, p)`. Failures
/// inside one block are recorded in that block's entry.
pub fn full_group_report(session: &Session, g: &TabledGroup, p: u64, opts: VerifyOptions) -> VerificationReport {
    let mut report = VerificationReport {
        schema: SCHEMA,
        group: g.name.clone(),
        order: g.order(),
        prime: p,
        checks: opts.names(),
        num_characters: g.table.characters().len(),
        degrees: g.table.degrees(),
        blocks: Vec::new(),
        first_main: Vec::new(),
        radicals: None,
        equivariance: None,
        warnings: Vec::new(),
        errors: Vec::new(),
        status: Status::Pass,
    };
    let part = match block_partition(g, p) {
        Ok(part) => part,
        Err(e) => {
            report.errors.push(ErrorEntry::new("blocks", &e));
            report.status = Status::Error;
            return report;
        }
    };

    let weights = if opts.baw {
        match weight_analysis(session, g, &part) {
            Ok(w) => Some(w),
            Err(e) => {
                report.errors.push(ErrorEntry::new("weights", &e));
                None
            }
        }
    } else {
        None
    };
    if let Some(w) = &weights {
        report.radicals = Some(w.radicals.clone());
        report.warnings.extend(w.warnings.iter().cloned());
    }

    for block in &part.blocks {
        report
            .blocks
            .push(block_result(session, g, &part, block, opts, weights.as_ref()));
    }

    if opts.am {
        let mut seen: Vec<&Block> = Vec::new();
        for (block, result) in part.blocks.iter().zip(&report.blocks) {
            if block.defect == 0 || result.structure == "non-cyclic" {
                continue;
            }
            if seen.iter().any(|b| b.defect == block.defect && g.group.are_conjugate(&b.defect_group, &block.defect_group)) {
                continue;
            }
            seen.push(block);
            match first_main_check(session, g, &part, &block.defect_group) {
                Ok(check) => report.first_main.push(check),
                Err(e) => report.errors.push(ErrorEntry::new("first-main", &e)),
            }
        }
    }

    let bad_block = report
        .blocks
        .iter()
        .any(|b| matches!(b.status, Status::Fail | Status::Error));
    let bad_main = report.first_main.iter().any(|c| !c.pass);
    report.status = if !report.errors.is_empty() {
        Status::Error
    } else if bad_block || bad_main {
        Status::Fail
    } else {
        Status::Pass
    };
    report
}

impl VerificationReport {
    /// Runs the equivariance checks for every in-scope block of positive
    /// defect and folds the outcome into the status.
    pub fn attach_equivariance(&mut self, session: &Session, g: &TabledGroup, autos: &[Permutation]) {
        let part = match block_partition(g, self.prime) {
            Ok(part) => part,
            Err(e) => {
                self.errors.push(ErrorEntry::new("equivariance", &e));
                self.status = Status::Error;
                return;
            }
        };
        let mut out = Vec::new();
        for (block, result) in part.blocks.iter().zip(&self.blocks) {
            if block.defect == 0 || result.structure == "non-cyclic" {
                continue;
            }
            match equivariance_spot_check(session, g, &part, block, autos) {
                Ok(r) => out.push(r),
                Err(e) => self.errors.push(ErrorEntry::new("equivariance", &e)),
            }
        }
        if !self.errors.is_empty() {
            self.status = Status::Error;
        } else if out.iter().any(|r| !r.pass) && self.status == Status::Pass {
            self.status = Status::Fail;
        }
        self.equivariance = Some(out);
    }
}

fn list<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn mark(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

/// Plain-text rendering of a report.
pub fn render_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} (order {}), p = {}", r.group, r.order, r.prime);
    let _ = writeln!(out, "irreducible degrees: {}", list(&r.degrees));
    if !r.checks.is_empty() {
        let _ = writeln!(out, "checks: {}", r.checks.join(", "));
    }
    for b in &r.blocks {
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "block {}: size {}, defect {} (|D| = {}), {} [{}]",
            b.index,
            b.characters.len(),
            b.defect,
            b.defect_group_order,
            b.structure,
            b.status
        );
        let _ = writeln!(out, "  characters: {}", list(&b.characters));
        let _ = writeln!(out, "  degrees:    {}", list(&b.degrees));
        if let Some(c) = &b.cyclic {
            let _ = writeln!(
                out,
                "  e = {}, m = {}, exceptional: {}, p-rational: {}",
                c.inertial_index,
                c.multiplicity,
                list(&c.exceptional),
                list(&c.p_rational)
            );
        }
        if let Some(t) = &b.tree {
            let edges: Vec<String> = t.edges.iter().map(|e| format!("{}-{}", e.vertices.0, e.vertices.1)).collect();
            let _ = writeln!(out, "  tree edges: {}", edges.join(" "));
        }
        if let Some(d) = &b.decomposition {
            let _ = writeln!(
                out,
                "  Brauer characters: {} (degrees {}), Cartan determinant {}",
                d.brauer_characters,
                list(&d.brauer_degrees),
                d.cartan_determinant
            );
        }
        if let Some(am) = &b.am {
            let _ = writeln!(
                out,
                "  AM: |Irr_0(B)| = {}, |Irr_0(b)| = {} in N_G(D) of order {} [{}]",
                am.height_zero.len(),
                am.correspondent_height_zero.len(),
                am.normalizer_order,
                mark(am.pass)
            );
        }
        if let Some(inr) = &b.in_refinement {
            let pairs: Vec<String> = inr
                .matching
                .iter()
                .map(|m| format!("{}->{}", m.degree, m.correspondent_degree))
                .collect();
            let _ = writeln!(out, "  IN: c = {}, matching {} [{}]", inr.c, pairs.join(" "), mark(inr.pass));
        }
        if let Some(baw) = &b.baw {
            let _ = writeln!(
                out,
                "  BAW: |IBr(B)| = {}, weights = {} [{}]",
                baw.brauer_characters,
                baw.weights,
                mark(baw.pass)
            );
        }
        for e in &b.errors {
            let _ = writeln!(out, "  error ({}): {}: {}", e.stage, e.code, e.message);
        }
    }
    for c in &r.first_main {
        let _ = writeln!(
            out,
            "\nfirst main theorem, |D| = {}: local blocks {} -> global blocks {} [{}]",
            c.defect_group_order,
            list(&c.local_blocks),
            list(&c.global_blocks),
            mark(c.pass)
        );
    }
    for eq in r.equivariance.iter().flatten() {
        let checked = eq.automorphisms.iter().filter(|a| a.checked).count();
        let _ = writeln!(
            out,
            "equivariance, block {}: {} of {} automorphisms applicable [{}]",
            eq.block,
            checked,
            eq.automorphisms.len(),
            mark(eq.pass)
        );
    }
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    for e in &r.errors {
        let _ = writeln!(out, "error ({}): {}: {}", e.stage, e.code, e.message);
    }
    let _ = writeln!(out, "\nstatus: {}", r.status);
    out
}
