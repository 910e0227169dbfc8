//! Command-line front end: reads a framework document, runs one analysis
//! and renders the report as text or JSON.

pub mod input;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use symrig_core::blockdiag::{adapted_bases, exact_block_ranks};
use symrig_core::framework::{affine_span_dim, affine_span_dim_exact};
use symrig_core::rigidity::exact_rigidity_rank;
use symrig_core::symmetry::GroupOrigin;
use symrig_core::{
    block_rank_analysis, find_type_maps, infinitesimal_analysis, interpret_gaps, is_compatible,
    is_isostatic, maxwell_count, motion_space_decomposition, stiffness_blockdiag, symmetry_maxwell,
    validate_type_map, BlockDiagonalForm, CharacterTable, Error, FindingKind, Framework, GroupKind,
    SymmetryGroup, Tolerance, TypeMap,
};
use thiserror::Error as ThisError;

use input::FrameworkFile;
use report::*;

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    TypeMap(String),
    #[error("coordinates must be integers or rational strings for exact checks")]
    NotRational,
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    /// Stable identifier printed with every error.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Io(_) => "E_IO",
            CliError::Parse(_) => "E_PARSE",
            CliError::Validation(_) => "E_INPUT",
            CliError::TypeMap(_) => "E_TYPEMAP",
            CliError::NotRational => "E_NOT_RATIONAL",
            CliError::Core(e) => match e {
                Error::InvalidTolerance(_) => "E_ARGS",
                Error::NonOrthogonal(_) | Error::ClosureCapExceeded(_) | Error::InvalidGroup(_) => {
                    "E_GROUP"
                }
                Error::InvalidTypeMap(_) => "E_TYPEMAP",
                Error::Incompatible => "E_INCOMPATIBLE",
                Error::UnknownCharacterTable
                | Error::InvalidCharacterTable(_)
                | Error::NonIntegralMultiplicity { .. }
                | Error::ProjectorNotIdempotent(_)
                | Error::IncompleteDecomposition { .. } => "E_TABLE",
                Error::SpanDeficient { .. } => "E_SPAN",
                Error::ResidualTooLarge { .. } | Error::NegativeDimension(_) => "E_NUMERIC",
                Error::SearchCapExceeded(_) => "E_SEARCH",
                Error::ParseRational(_) => "E_PARSE",
                _ => "E_INPUT",
            },
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_DISAGREEMENT: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Ranks, flexes, self-stresses and the isostatic verdict.
    Analyze,
    /// Symmetry-extended Maxwell rule for every type map.
    Maxwell,
    /// Block shapes, block ranks and residuals.
    Blockdiag,
    /// Compatible type maps.
    Typemaps,
    /// Exact cross-check of every floating-point rank.
    Oracle,
}

#[derive(Debug, Parser)]
#[command(
    name = "symrig",
    version,
    about = "Rigidity analysis of symmetric bar-and-joint frameworks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Framework document (JSON).
    #[arg(global = true)]
    pub file: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Require rational coordinates and run the exact oracle alongside.
    #[arg(long, global = true)]
    pub exact: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Include R, T_e, T_i and the transformed matrix.
    #[arg(long, global = true)]
    pub dump_matrices: bool,
}

/// One validated invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisRequest {
    pub file: PathBuf,
    pub command: Command,
    pub tolerance: Tolerance,
    pub exact: bool,
    pub format: Format,
    pub dump_matrices: bool,
}

impl AnalysisRequest {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let file = cli
            .file
            .ok_or_else(|| CliError::Validation("missing framework file".into()))?;
        let tolerance = Tolerance::new(cli.tolerance);
        tolerance.validate()?;
        Ok(AnalysisRequest {
            file,
            command: cli.command,
            tolerance,
            exact: cli.exact,
            format: cli.format,
            dump_matrices: cli.dump_matrices,
        })
    }
}

/// What the process prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn failure(e: &CliError) -> Outcome {
    Outcome {
        code: EXIT_INVALID,
        stdout: String::new(),
        stderr: format!(
            "error[{}]: {}\n",
            e.code(),
            e.to_string().replace('\n', " ")
        ),
    }
}

/// Parses arguments and runs the request.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: format!("error[E_ARGS]: {}\n", text.lines().next().unwrap_or("")),
                }
            };
        }
    };
    match AnalysisRequest::from_cli(cli) {
        Ok(req) => execute(&req),
        Err(e) => failure(&e),
    }
}

pub fn execute(req: &AnalysisRequest) -> Outcome {
    let text = match std::fs::read_to_string(&req.file) {
        Ok(t) => t,
        Err(e) => return failure(&CliError::Io(format!("{}: {e}", req.file.display()))),
    };
    match build_report(req, &text) {
        Ok(report) => {
            let stdout = match req.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            };
            match report.oracle() {
                Some(o) if !o.all_confirmed => Outcome {
                    code: EXIT_DISAGREEMENT,
                    stdout,
                    stderr: "error[E_ORACLE]: floating-point and exact ranks disagree\n".into(),
                },
                _ => Outcome {
                    code: EXIT_OK,
                    stdout,
                    stderr: String::new(),
                },
            }
        }
        Err(e) => failure(&e),
    }
}

/// Everything derived from the document.
struct Loaded {
    doc: FrameworkFile,
    fw: Framework,
    group: SymmetryGroup,
}

fn group_name(g: &SymmetryGroup) -> String {
    match g.origin() {
        GroupOrigin::Builtin { kind, m, .. } => match kind {
            GroupKind::C1 => "C1".into(),
            GroupKind::Cs => "Cs".into(),
            GroupKind::Cm => format!("C{m}"),
            GroupKind::Cmv => format!("C{m}v"),
        },
        GroupOrigin::Generated => format!("generated, order {}", g.order()),
    }
}

pub fn build_report(req: &AnalysisRequest, text: &str) -> Result<Report, CliError> {
    let doc = FrameworkFile::parse(text)?;
    if (req.exact || req.command == Command::Oracle) && !doc.is_rational() {
        return Err(CliError::NotRational);
    }
    let fw = doc.framework()?;
    let group = doc.group()?;
    if group.dim() != fw.dim() {
        return Err(CliError::Validation(format!(
            "group acts on dimension {}, framework lives in {}",
            group.dim(),
            fw.dim()
        )));
    }
    let loaded = Loaded { doc, fw, group };
    let tol = &req.tolerance;
    let oracle = |maps: &[TypeMap]| -> Result<Option<OracleReport>, CliError> {
        if req.exact {
            Ok(Some(oracle_report(&loaded, maps, tol)?))
        } else {
            Ok(None)
        }
    };
    Ok(match req.command {
        Command::Analyze => {
            let mut r = analyze(&loaded.fw, tol)?;
            r.oracle = oracle(&[])?;
            Report::Analyze(r)
        }
        Command::Typemaps => {
            let maps = find_type_maps(&loaded.fw, &loaded.group, tol)?;
            Report::Typemaps(TypemapsReport {
                group: group_name(&loaded.group),
                elements: loaded.group.labels(),
                maps: maps
                    .iter()
                    .enumerate()
                    .map(|(k, m)| type_map_out(&loaded.group, m, k))
                    .collect(),
            })
        }
        Command::Maxwell => {
            let maps = type_maps(&loaded, tol)?;
            let table = loaded.doc.table(&loaded.group)?;
            let entries = maps
                .iter()
                .enumerate()
                .map(|(k, phi)| maxwell_entry(&loaded, &table, phi, k, tol))
                .collect::<Result<Vec<_>, _>>()?;
            Report::Maxwell(MaxwellOutput {
                group: group_name(&loaded.group),
                elements: loaded.group.labels(),
                maps: entries,
                oracle: oracle(&maps)?,
            })
        }
        Command::Blockdiag => {
            let maps = type_maps(&loaded, tol)?;
            let table = loaded.doc.table(&loaded.group)?;
            let entries = maps
                .iter()
                .enumerate()
                .map(|(k, phi)| blockdiag_entry(&loaded, &table, phi, k, req.dump_matrices, tol))
                .collect::<Result<Vec<_>, _>>()?;
            Report::Blockdiag(BlockdiagOutput {
                group: group_name(&loaded.group),
                elements: loaded.group.labels(),
                maps: entries,
                oracle: oracle(&maps)?,
            })
        }
        Command::Oracle => {
            let maps = type_maps(&loaded, tol).unwrap_or_default();
            Report::Oracle(oracle_report(&loaded, &maps, tol)?)
        }
    })
}

fn analyze(fw: &Framework, tol: &Tolerance) -> Result<AnalyzeReport, CliError> {
    let a = infinitesimal_analysis(fw, tol)?;
    let v = is_isostatic(fw, tol)?;
    Ok(AnalyzeReport {
        dimension: fw.dim(),
        vertices: fw.vertex_count(),
        edges: fw.edge_count(),
        rank: a.rank,
        nullity: a.nullity,
        rigid_motion_dim: a.rigid_motion_dim,
        flex_count: a.flex_count,
        self_stress_count: v.self_stress_count,
        affine_span: affine_span_dim(fw.config()),
        infinitesimally_rigid: a.infinitesimally_rigid,
        isostatic: v.isostatic,
        maxwell_count: maxwell_count(fw).ok(),
        oracle: None,
    })
}

/// The document's type map after validation, or every compatible one.
fn type_maps(l: &Loaded, tol: &Tolerance) -> Result<Vec<TypeMap>, CliError> {
    match l.doc.type_map(&l.group)? {
        Some(phi) => {
            let diag = validate_type_map(l.fw.graph(), &l.group, &phi);
            if !diag.is_valid() {
                return Err(diag.into_result().unwrap_err().into());
            }
            if !is_compatible(&l.fw, &l.group, &phi, tol) {
                return Err(Error::Incompatible.into());
            }
            Ok(vec![phi])
        }
        None => {
            let maps = find_type_maps(&l.fw, &l.group, tol)?;
            if maps.is_empty() {
                return Err(Error::Incompatible.into());
            }
            Ok(maps)
        }
    }
}

fn type_map_out(g: &SymmetryGroup, phi: &TypeMap, k: usize) -> TypeMapOut {
    TypeMapOut {
        index: k + 1,
        elements: g
            .labels()
            .into_iter()
            .zip(phi.perms())
            .map(|(element, p)| ElementImage {
                element,
                images: p.0.iter().map(|v| v + 1).collect(),
                cycles: p.cycle_notation(),
            })
            .collect(),
    }
}

fn block_counts(
    l: &Loaded,
    table: &CharacterTable,
    phi: &TypeMap,
    bdf: &BlockDiagonalForm,
    tol: &Tolerance,
) -> Result<Option<Vec<symrig_core::BlockRank>>, CliError> {
    match motion_space_decomposition(&l.fw, &l.group, phi, table, tol) {
        Ok(md) => Ok(Some(block_rank_analysis(bdf, &md, tol)?)),
        Err(Error::SpanDeficient { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn maxwell_entry(
    l: &Loaded,
    table: &CharacterTable,
    phi: &TypeMap,
    k: usize,
    tol: &Tolerance,
) -> Result<MaxwellEntry, CliError> {
    let report = symmetry_maxwell(&l.fw, &l.group, phi, table, tol)?;
    let bdf = symrig_core::block_diagonalize(&l.fw, &l.group, phi, table, tol)?;
    let blocks = block_counts(l, table, phi, &bdf, tol)?
        .unwrap_or_default()
        .into_iter()
        .map(|b| BlockCount {
            irrep: b.name,
            flex_dim: b.flex_dim,
            stress_dim: b.stress_dim,
        })
        .collect();
    let findings = interpret_gaps(&report, table)
        .into_iter()
        .map(|f| FindingOut {
            text: f.describe(),
            irrep: f.irrep,
            kind: match f.kind {
                FindingKind::Flex => "flex".into(),
                FindingKind::SelfStress => "self-stress".into(),
            },
            count: f.count,
        })
        .collect();
    Ok(MaxwellEntry {
        type_map: type_map_out(&l.group, phi, k),
        x_j: report.x_j.0.clone(),
        x_t: report.x_t.0.clone(),
        x_r: report.x_r.0.clone(),
        x_q: report.x_q.0.clone(),
        x_i: report.x_i.0.clone(),
        irreps: report.kappa.names.clone(),
        gaps: report.gaps(),
        kappa: report.kappa.values,
        mu: report.mu.values,
        verdict: if report.passes { "PASS" } else { "FAIL" }.into(),
        findings,
        blocks,
    })
}

fn blockdiag_entry(
    l: &Loaded,
    table: &CharacterTable,
    phi: &TypeMap,
    k: usize,
    dump: bool,
    tol: &Tolerance,
) -> Result<BlockdiagEntry, CliError> {
    let bdf = symrig_core::block_diagonalize(&l.fw, &l.group, phi, table, tol)?;
    let ranks = bdf.block_ranks(tol);
    let counts = block_counts(l, table, phi, &bdf, tol)?;
    let (stiff, flexi) = stiffness_blockdiag(&l.fw, &l.group, phi, table, tol)?;
    let blocks = bdf
        .blocks
        .iter()
        .enumerate()
        .map(|(t, b)| BlockOut {
            irrep: bdf.names()[t].clone(),
            degree: table.irreps()[t].degree,
            rows: b.nrows(),
            cols: b.ncols(),
            rank: ranks[t],
            stress_dim: b.nrows() - ranks[t],
            flex_dim: counts.as_ref().map(|c| c[t].flex_dim),
        })
        .collect();
    let matrices = dump.then(|| MatrixDump {
        r: matrix_rows(&bdf.original),
        t_e: matrix_rows(&bdf.col_basis.matrix),
        t_i: matrix_rows(&bdf.row_basis.matrix),
        r_tilde: matrix_rows(&bdf.transformed),
    });
    Ok(BlockdiagEntry {
        type_map: type_map_out(&l.group, phi, k),
        residual: bdf.residual,
        bound: bdf.bound(tol),
        stiffness_blocks: stiff.blocks.iter().map(|b| b.nrows()).collect(),
        flexibility_blocks: flexi.blocks.iter().map(|b| b.nrows()).collect(),
        blocks,
        matrices,
    })
}

fn oracle_report(l: &Loaded, maps: &[TypeMap], tol: &Tolerance) -> Result<OracleReport, CliError> {
    let mut checks = Vec::new();
    let mut skipped = Vec::new();
    let mut check = |quantity: String, float: usize, exact: usize| {
        checks.push(OracleCheck {
            quantity,
            float,
            exact,
            agrees: float == exact,
        });
    };
    let fw = &l.fw;
    let exact_rank = exact_rigidity_rank(fw).ok_or(CliError::NotRational)?;
    let a = infinitesimal_analysis(fw, tol)?;
    check("rank R".into(), a.rank, exact_rank);
    check(
        "rank R^T".into(),
        symrig_core::linalg::rank(&fw.rigidity_matrix().transpose(), tol),
        exact_rank,
    );
    check(
        "affine span".into(),
        affine_span_dim(fw.config()),
        affine_span_dim_exact(fw.config()).ok_or(CliError::NotRational)?,
    );
    let table = l.doc.table(&l.group);
    for (k, phi) in maps.iter().enumerate() {
        let Ok(table) = &table else {
            skipped.push(format!("type map {}: no character table", k + 1));
            continue;
        };
        let (te, ti) = adapted_bases(fw, &l.group, phi, table, tol)?;
        let bdf = BlockDiagonalForm::new(&fw.rigidity_matrix(), ti, te)?.check(tol)?;
        let float = bdf.block_ranks(tol);
        check(
            format!("type map {}: sum of block ranks", k + 1),
            float.iter().sum(),
            exact_rank,
        );
        match exact_block_ranks(fw, &l.group, phi, table) {
            Some(exact) => {
                for (t, (f, e)) in float.iter().zip(exact).enumerate() {
                    check(
                        format!("type map {}: rank of block {}", k + 1, bdf.names()[t]),
                        *f,
                        e,
                    );
                }
            }
            None => skipped.push(format!(
                "type map {}: blocks need irrational arithmetic",
                k + 1
            )),
        }
    }
    let all_confirmed = checks.iter().all(|c| c.agrees);
    Ok(OracleReport {
        checks,
        skipped,
        all_confirmed,
    })
}
