//! Report values produced by each subcommand and their text rendering.

use std::fmt::Write;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub quantity: String,
    pub float: usize,
    pub exact: usize,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub checks: Vec<OracleCheck>,
    /// Quantities with no exact counterpart, e.g. blocks of a group with
    /// irrational matrices.
    pub skipped: Vec<String>,
    pub all_confirmed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub dimension: usize,
    pub vertices: usize,
    pub edges: usize,
    pub rank: usize,
    pub nullity: usize,
    pub rigid_motion_dim: usize,
    pub flex_count: usize,
    pub self_stress_count: usize,
    pub affine_span: usize,
    pub infinitesimally_rigid: bool,
    pub isostatic: bool,
    pub maxwell_count: Option<i64>,
    pub oracle: Option<OracleReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementImage {
    pub element: String,
    pub images: Vec<usize>,
    pub cycles: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypeMapOut {
    pub index: usize,
    pub elements: Vec<ElementImage>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypemapsReport {
    pub group: String,
    pub elements: Vec<String>,
    pub maps: Vec<TypeMapOut>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FindingOut {
    pub irrep: String,
    pub kind: String,
    pub count: usize,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockCount {
    pub irrep: String,
    pub flex_dim: usize,
    pub stress_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaxwellEntry {
    pub type_map: TypeMapOut,
    pub x_j: Vec<f64>,
    pub x_t: Vec<f64>,
    pub x_r: Vec<f64>,
    pub x_q: Vec<f64>,
    pub x_i: Vec<f64>,
    pub irreps: Vec<String>,
    pub kappa: Vec<usize>,
    pub mu: Vec<usize>,
    pub gaps: Vec<i64>,
    pub verdict: String,
    pub findings: Vec<FindingOut>,
    /// Exact per-irreducible counts from the block ranks.
    pub blocks: Vec<BlockCount>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaxwellOutput {
    pub group: String,
    pub elements: Vec<String>,
    pub maps: Vec<MaxwellEntry>,
    pub oracle: Option<OracleReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockOut {
    pub irrep: String,
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub stress_dim: usize,
    /// Absent when the joints do not span the space.
    pub flex_dim: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixDump {
    pub r: Vec<Vec<f64>>,
    pub t_e: Vec<Vec<f64>>,
    pub t_i: Vec<Vec<f64>>,
    pub r_tilde: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockdiagEntry {
    pub type_map: TypeMapOut,
    pub blocks: Vec<BlockOut>,
    pub residual: f64,
    pub bound: f64,
    pub stiffness_blocks: Vec<usize>,
    pub flexibility_blocks: Vec<usize>,
    pub matrices: Option<MatrixDump>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockdiagOutput {
    pub group: String,
    pub elements: Vec<String>,
    pub maps: Vec<BlockdiagEntry>,
    pub oracle: Option<OracleReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Report {
    Analyze(AnalyzeReport),
    Typemaps(TypemapsReport),
    Maxwell(MaxwellOutput),
    Blockdiag(BlockdiagOutput),
    Oracle(OracleReport),
}

impl Report {
    pub fn oracle(&self) -> Option<&OracleReport> {
        match self {
            Report::Analyze(r) => r.oracle.as_ref(),
            Report::Maxwell(r) => r.oracle.as_ref(),
            Report::Blockdiag(r) => r.oracle.as_ref(),
            Report::Oracle(r) => Some(r),
            Report::Typemaps(_) => None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Analyze(r) => analyze_text(&mut out, r),
            Report::Typemaps(r) => typemaps_text(&mut out, r),
            Report::Maxwell(r) => maxwell_text(&mut out, r),
            Report::Blockdiag(r) => blockdiag_text(&mut out, r),
            Report::Oracle(r) => oracle_text(&mut out, r),
        }
        out
    }
}

pub fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn value(v: f64) -> String {
    if (v - v.round()).abs() < 1e-9 {
        format!("{}", v.round() as i64)
    } else {
        format!("{v:.4}")
    }
}

fn row<T: ToString>(out: &mut String, label: &str, cells: &[T], width: usize) {
    let _ = write!(out, "{label:<8}");
    for c in cells {
        let _ = write!(out, "{:>width$}", c.to_string());
    }
    out.push('\n');
}

fn column_width(labels: &[String]) -> usize {
    labels.iter().map(|l| l.len()).max().unwrap_or(0).max(4) + 2
}

fn analyze_text(out: &mut String, r: &AnalyzeReport) {
    let _ = writeln!(
        out,
        "vertices: {}  edges: {}  dimension: {}",
        r.vertices, r.edges, r.dimension
    );
    let _ = writeln!(out, "rank: {}  nullity: {}", r.rank, r.nullity);
    let _ = writeln!(
        out,
        "rigid motions: {}  flexes: {}",
        r.rigid_motion_dim, r.flex_count
    );
    let _ = writeln!(out, "self-stresses: {}", r.self_stress_count);
    let _ = writeln!(out, "affine span: {}", r.affine_span);
    if let Some(c) = r.maxwell_count {
        let _ = writeln!(out, "maxwell count: {c}");
    }
    let _ = writeln!(
        out,
        "infinitesimally rigid: {}",
        yes_no(r.infinitesimally_rigid)
    );
    let _ = writeln!(out, "isostatic: {}", yes_no(r.isostatic));
    if let Some(o) = &r.oracle {
        oracle_text(out, o);
    }
}

fn type_map_line(out: &mut String, t: &TypeMapOut, total: usize) {
    let parts: Vec<String> = t
        .elements
        .iter()
        .skip(1)
        .map(|e| format!("{}={}", e.element, e.cycles))
        .collect();
    let _ = writeln!(
        out,
        "type map {} of {}: {}",
        t.index,
        total,
        parts.join(" ")
    );
}

fn typemaps_text(out: &mut String, r: &TypemapsReport) {
    let _ = writeln!(
        out,
        "group: {}  elements: {}",
        r.group,
        r.elements.join(" ")
    );
    if r.maps.is_empty() {
        let _ = writeln!(out, "no compatible type map");
    }
    for t in &r.maps {
        type_map_line(out, t, r.maps.len());
    }
}

fn maxwell_text(out: &mut String, r: &MaxwellOutput) {
    let _ = writeln!(
        out,
        "group: {}  elements: {}",
        r.group,
        r.elements.join(" ")
    );
    let w = column_width(&r.elements);
    for m in &r.maps {
        out.push('\n');
        type_map_line(out, &m.type_map, r.maps.len());
        row(out, "", &r.elements, w);
        for (label, chi) in [
            ("X_J", &m.x_j),
            ("X_T", &m.x_t),
            ("X_R", &m.x_r),
            ("X_Q", &m.x_q),
            ("X_i", &m.x_i),
        ] {
            let cells: Vec<String> = chi.iter().map(|&v| value(v)).collect();
            row(out, label, &cells, w);
        }
        let wi = column_width(&m.irreps);
        row(out, "", &m.irreps, wi);
        row(out, "kappa", &m.kappa, wi);
        row(out, "mu", &m.mu, wi);
        let flex: Vec<usize> = m.blocks.iter().map(|b| b.flex_dim).collect();
        let stress: Vec<usize> = m.blocks.iter().map(|b| b.stress_dim).collect();
        row(out, "flexes", &flex, wi);
        row(out, "stresses", &stress, wi);
        let _ = writeln!(out, "verdict: {}", m.verdict);
        for f in &m.findings {
            let _ = writeln!(out, "  {}", f.text);
        }
    }
    if let Some(o) = &r.oracle {
        out.push('\n');
        oracle_text(out, o);
    }
}

fn dump(out: &mut String, name: &str, m: &[Vec<f64>]) {
    let _ = writeln!(out, "{name}:");
    for r in m {
        let cells: Vec<String> = r.iter().map(|v| format!("{v:>10.6}")).collect();
        let _ = writeln!(out, "  {}", cells.join(" "));
    }
}

fn blockdiag_text(out: &mut String, r: &BlockdiagOutput) {
    let _ = writeln!(
        out,
        "group: {}  elements: {}",
        r.group,
        r.elements.join(" ")
    );
    for m in &r.maps {
        out.push('\n');
        type_map_line(out, &m.type_map, r.maps.len());
        let _ = writeln!(
            out,
            "{:<8}{:>8}{:>8}{:>6}{:>8}{:>8}",
            "irrep", "shape", "rank", "deg", "stress", "flex"
        );
        for b in &m.blocks {
            let flex = b.flex_dim.map_or("-".to_string(), |f| f.to_string());
            let shape = format!("{}x{}", b.rows, b.cols);
            let _ = writeln!(
                out,
                "{:<8}{:>8}{:>8}{:>6}{:>8}{:>8}",
                b.irrep, shape, b.rank, b.degree, b.stress_dim, flex
            );
        }
        let _ = writeln!(
            out,
            "off-block residual: {:.3e} (bound {:.3e})",
            m.residual, m.bound
        );
        let _ = writeln!(out, "stiffness blocks: {:?}", m.stiffness_blocks);
        let _ = writeln!(out, "flexibility blocks: {:?}", m.flexibility_blocks);
        if let Some(d) = &m.matrices {
            dump(out, "R", &d.r);
            dump(out, "T_e", &d.t_e);
            dump(out, "T_i", &d.t_i);
            dump(out, "R~", &d.r_tilde);
        }
    }
    if let Some(o) = &r.oracle {
        out.push('\n');
        oracle_text(out, o);
    }
}

fn oracle_text(out: &mut String, r: &OracleReport) {
    for c in &r.checks {
        let mark = if c.agrees { "ok" } else { "MISMATCH" };
        let _ = writeln!(
            out,
            "{:<40} float {:>4}  exact {:>4}  {mark}",
            c.quantity, c.float, c.exact
        );
    }
    for s in &r.skipped {
        let _ = writeln!(out, "skipped: {s}");
    }
    if r.all_confirmed {
        let _ = writeln!(out, "all ranks confirmed");
    } else {
        let _ = writeln!(out, "rank disagreement found");
    }
}
