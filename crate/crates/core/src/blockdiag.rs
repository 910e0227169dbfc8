//! Symmetry-adapted bases, isotypic block-diagonalization of the rigidity,
//! stiffness and flexibility matrices, and per-block rank analysis.

use std::ops::Range;

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact;
use crate::framework::{affine_span_dim, Framework};
use crate::linalg::{self, FullSvd, Tolerance};
use crate::representations::{
    character, decompose, external_rep, internal_rep, rotation_char, translation_char,
    CharacterTable, Irrep, MatrixRep, Multiplicities,
};
use crate::symmetry::{is_compatible, SymmetryGroup, TypeMap};

/// `P_t = (deg / ‖χ_t‖²) Σ_x χ_t(x) H(x)`.
pub fn projector(rep: &MatrixRep, irrep: &Irrep) -> DMatrix<f64> {
    let scale = irrep.degree as f64 / irrep.character.norm_squared();
    let n = rep.degree();
    let mut p = DMatrix::zeros(n, n);
    for (h, &c) in rep.matrices().iter().zip(irrep.character.values()) {
        if c != 0.0 {
            p += h * (scale * c);
        }
    }
    p
}

pub fn isotypic_projectors(rep: &MatrixRep, table: &CharacterTable) -> Vec<DMatrix<f64>> {
    table.irreps().iter().map(|i| projector(rep, i)).collect()
}

/// Orthogonal change of basis whose columns are grouped by irreducible.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryAdaptedBasis {
    pub matrix: DMatrix<f64>,
    pub names: Vec<String>,
    pub ranges: Vec<Range<usize>>,
}

impl SymmetryAdaptedBasis {
    /// Wraps a given orthogonal matrix whose first `dims[0]` columns belong
    /// to `names[0]`, and so on.
    pub fn from_parts(
        matrix: DMatrix<f64>,
        names: Vec<String>,
        dims: &[usize],
        tol: &Tolerance,
    ) -> Result<Self> {
        if names.len() != dims.len() {
            return Err(Error::DimensionMismatch(
                "one dimension per name required".into(),
            ));
        }
        let total: usize = dims.iter().sum();
        if !matrix.is_square() || matrix.ncols() != total {
            return Err(Error::IncompleteDecomposition {
                got: total,
                expected: matrix.nrows(),
            });
        }
        let mut ranges = Vec::with_capacity(dims.len());
        let mut start = 0;
        for &d in dims {
            ranges.push(start..start + d);
            start += d;
        }
        let basis = SymmetryAdaptedBasis {
            matrix,
            names,
            ranges,
        };
        let defect = basis.orthogonality_defect();
        if defect > tol.abs {
            return Err(Error::ResidualTooLarge {
                residual: defect,
                bound: tol.abs,
            });
        }
        Ok(basis)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.ranges.iter().map(|r| r.len()).collect()
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Columns belonging to irreducible `t`.
    pub fn columns(&self, t: usize) -> DMatrix<f64> {
        let r = &self.ranges[t];
        self.matrix.columns(r.start, r.len()).into_owned()
    }

    /// `max |TᵀT - I|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.matrix.ncols();
        linalg::max_abs(&(self.matrix.transpose() * &self.matrix - DMatrix::identity(n, n)))
    }
}

/// Builds an orthonormal basis of each isotypic component from the
/// projector column space. Ranges follow table order.
pub fn isotypic_basis(
    rep: &MatrixRep,
    table: &CharacterTable,
    tol: &Tolerance,
) -> Result<SymmetryAdaptedBasis> {
    tol.validate()?;
    let n = rep.degree();
    let mut parts = Vec::with_capacity(table.len());
    let mut dims = Vec::with_capacity(table.len());
    for irrep in table.irreps() {
        let p = projector(rep, irrep);
        let scale = 1.0 + linalg::max_abs(&p);
        if linalg::max_abs(&(&p * &p - &p)) > tol.abs * scale {
            return Err(Error::ProjectorNotIdempotent(irrep.name.clone()));
        }
        let trace = p.trace();
        let rank = trace.round();
        if (trace - rank).abs() > 1e-6 || rank < 0.0 {
            return Err(Error::ProjectorNotIdempotent(irrep.name.clone()));
        }
        let rank = rank as usize;
        let cutoff = tol.abs.sqrt() * scale;
        let pb = linalg::pivoted_orthonormal_basis(&p, cutoff, rank);
        let leftover = pb.norms.get(rank).copied().unwrap_or(0.0);
        if pb.basis.ncols() != rank || leftover > cutoff {
            return Err(Error::ProjectorNotIdempotent(irrep.name.clone()));
        }
        parts.push(pb.basis);
        dims.push(rank);
    }
    let total: usize = dims.iter().sum();
    if total != n {
        return Err(Error::IncompleteDecomposition {
            got: total,
            expected: n,
        });
    }
    SymmetryAdaptedBasis::from_parts(linalg::hstack(&parts, n), table.names(), &dims, tol)
}

/// `T_rowsᵀ A T_cols` cut into one block per irreducible.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockDiagonalForm {
    pub original: DMatrix<f64>,
    pub transformed: DMatrix<f64>,
    pub row_basis: SymmetryAdaptedBasis,
    pub col_basis: SymmetryAdaptedBasis,
    pub blocks: Vec<DMatrix<f64>>,
    /// Frobenius norm of every entry outside the diagonal blocks.
    pub residual: f64,
    /// Spectral norm of the original matrix.
    pub norm: f64,
}

impl BlockDiagonalForm {
    /// Transforms without judging the residual; see [`Self::check`].
    pub fn new(
        a: &DMatrix<f64>,
        row_basis: SymmetryAdaptedBasis,
        col_basis: SymmetryAdaptedBasis,
    ) -> Result<Self> {
        if a.nrows() != row_basis.dim() || a.ncols() != col_basis.dim() {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, bases have {} and {} rows",
                a.nrows(),
                a.ncols(),
                row_basis.dim(),
                col_basis.dim()
            )));
        }
        if row_basis.names != col_basis.names {
            return Err(Error::DimensionMismatch(
                "row and column bases use different irreducibles".into(),
            ));
        }
        let transformed = row_basis.matrix.transpose() * a * &col_basis.matrix;
        let mut off = transformed.clone();
        let mut blocks = Vec::with_capacity(row_basis.ranges.len());
        for (rr, cr) in row_basis.ranges.iter().zip(&col_basis.ranges) {
            let shape = (rr.len(), cr.len());
            blocks.push(transformed.view((rr.start, cr.start), shape).into_owned());
            off.view_mut((rr.start, cr.start), shape).fill(0.0);
        }
        let residual = off.norm();
        Ok(BlockDiagonalForm {
            original: a.clone(),
            norm: linalg::spectral_norm(a),
            transformed,
            row_basis,
            col_basis,
            blocks,
            residual,
        })
    }

    pub fn bound(&self, tol: &Tolerance) -> f64 {
        tol.abs * self.norm
    }

    pub fn check(self, tol: &Tolerance) -> Result<Self> {
        let bound = self.bound(tol);
        if self.residual > bound {
            return Err(Error::ResidualTooLarge {
                residual: self.residual,
                bound,
            });
        }
        Ok(self)
    }

    pub fn names(&self) -> &[String] {
        &self.row_basis.names
    }

    pub fn block_shapes(&self) -> Vec<(usize, usize)> {
        self.blocks.iter().map(|b| b.shape()).collect()
    }

    /// Rank of each block, using one absolute cutoff derived from the full
    /// matrix so that small blocks are not judged on their own scale.
    pub fn block_ranks(&self, tol: &Tolerance) -> Vec<usize> {
        let full = FullSvd::new(&self.original);
        let cutoff = tol.rank_threshold(
            self.original.nrows(),
            self.original.ncols(),
            full.sigma_max(),
        );
        self.blocks
            .iter()
            .map(|b| FullSvd::new(b).rank_at(cutoff))
            .collect()
    }
}

fn checked_reps(
    fw: &Framework,
    group: &SymmetryGroup,
    phi: &TypeMap,
    tol: &Tolerance,
) -> Result<(MatrixRep, MatrixRep)> {
    tol.validate()?;
    if group.dim() != fw.dim() {
        return Err(Error::DimensionMismatch(format!(
            "group acts on dimension {}, framework lives in {}",
            group.dim(),
            fw.dim()
        )));
    }
    let he = external_rep(fw.graph(), group, phi)?;
    let hi = internal_rep(fw.graph(), group, phi)?;
    if !is_compatible(fw, group, phi, tol) {
        return Err(Error::Incompatible);
    }
    Ok((he, hi))
}

/// Both symmetry-adapted bases, external first.
pub fn adapted_bases(
    fw: &Framework,
    group: &SymmetryGroup,
    phi: &TypeMap,
    table: &CharacterTable,
    tol: &Tolerance,
) -> Result<(SymmetryAdaptedBasis, SymmetryAdaptedBasis)> {
    let (he, hi) = checked_reps(fw, group, phi, tol)?;
    Ok((
        isotypic_basis(&he, table, tol)?,
        isotypic_basis(&hi, table, tol)?,
    ))
}

/// `T_iᵀ R T_e` with verified off-block residual.
pub fn block_diagonalize(
    fw: &Framework,
    group: &SymmetryGroup,
    phi: &TypeMap,
    table: &CharacterTable,
    tol: &Tolerance,
) -> Result<BlockDiagonalForm> {
    let (te, ti) = adapted_bases(fw, group, phi, table, tol)?;
    BlockDiagonalForm::new(&fw.rigidity_matrix(), ti, te)?.check(tol)
}

/// Same as [`block_diagonalize`] with caller-supplied bases.
pub fn block_diagonalize_with_bases(
    fw: &Framework,
    t_i: SymmetryAdaptedBasis,
    t_e: SymmetryAdaptedBasis,
    tol: &Tolerance,
) -> Result<BlockDiagonalForm> {
    BlockDiagonalForm::new(&fw.rigidity_matrix(), t_i, t_e)?.check(tol)
}

/// Stiffness `T_eᵀ RᵀR T_e` and flexibility `T_iᵀ RRᵀ T_i` forms.
pub fn stiffness_blockdiag(
    fw: &Framework,
    group: &SymmetryGroup,
    phi: &TypeMap,
    table: &CharacterTable,
    tol: &Tolerance,
) -> Result<(BlockDiagonalForm, BlockDiagonalForm)> {
    let (te, ti) = adapted_bases(fw, group, phi, table, tol)?;
    let r = fw.rigidity_matrix();
    let stiffness = BlockDiagonalForm::new(&(r.transpose() * &r), te.clone(), te)?.check(tol)?;
    let flexibility = BlockDiagonalForm::new(&(&r * r.transpose()), ti.clone(), ti)?.check(tol)?;
    Ok((stiffness, flexibility))
}

/// Per-irreducible split of the external space into translations,
/// rotations and the quotient `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotionDecomposition {
    pub names: Vec<String>,
    pub degrees: Vec<usize>,
    /// Multiplicities of the external representation.
    pub lambda: Multiplicities,
    pub theta: Multiplicities,
    pub rho: Multiplicities,
    pub dim_e: Vec<usize>,
    pub dim_t: Vec<usize>,
    pub dim_r: Vec<usize>,
    pub dim_q: Vec<usize>,
}

pub fn motion_space_decomposition(
    fw: &Framework,
    group: &SymmetryGroup,
    phi: &TypeMap,
    table: &CharacterTable,
    tol: &Tolerance,
) -> Result<MotionDecomposition> {
    let (he, _) = checked_reps(fw, group, phi, tol)?;
    let span = affine_span_dim(fw.config());
    if span < fw.dim() {
        return Err(Error::SpanDeficient {
            span,
            dim: fw.dim(),
        });
    }
    let lambda = decompose(&character(&he), table)?;
    let theta = decompose(&translation_char(group), table)?;
    let rho = decompose(&rotation_char(group), table)?;
    let dim_e = lambda.dimensions();
    let dim_t = theta.dimensions();
    let dim_r = rho.dimensions();
    let mut dim_q = Vec::with_capacity(dim_e.len());
    for t in 0..dim_e.len() {
        let q = dim_e[t] as i64 - dim_t[t] as i64 - dim_r[t] as i64;
        if q < 0 {
            return Err(Error::NegativeDimension(format!(
                "V_Q of {}",
                lambda.names[t]
            )));
        }
        dim_q.push(q as usize);
    }
    Ok(MotionDecomposition {
        names: table.names(),
        degrees: lambda.degrees.clone(),
        lambda,
        theta,
        rho,
        dim_e,
        dim_t,
        dim_r,
        dim_q,
    })
}

/// Rank data of one block of the rigidity matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockRank {
    pub name: String,
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    /// Dimension of the symmetric self-stress space.
    pub stress_dim: usize,
    /// Dimension of the symmetric flex space.
    pub flex_dim: usize,
}

impl BlockRank {
    /// Flex dimension counted in copies of the irreducible.
    pub fn flex_multiplicity(&self) -> usize {
        self.flex_dim / self.degree
    }

    pub fn stress_multiplicity(&self) -> usize {
        self.stress_dim / self.degree
    }
}

pub fn block_rank_analysis(
    bdf: &BlockDiagonalForm,
    md: &MotionDecomposition,
    tol: &Tolerance,
) -> Result<Vec<BlockRank>> {
    if bdf.names() != md.names.as_slice() {
        return Err(Error::DimensionMismatch(
            "block form and motion decomposition use different tables".into(),
        ));
    }
    let ranks = bdf.block_ranks(tol);
    let mut out = Vec::with_capacity(ranks.len());
    for (t, &rank) in ranks.iter().enumerate() {
        let (rows, cols) = bdf.blocks[t].shape();
        if cols != md.dim_e[t] {
            return Err(Error::DimensionMismatch(format!(
                "block {} has {cols} columns, isotypic dimension is {}",
                md.names[t], md.dim_e[t]
            )));
        }
        let name = md.names[t].clone();
        let flex = cols as i64 - rank as i64 - (md.dim_t[t] + md.dim_r[t]) as i64;
        if flex < 0 {
            return Err(Error::NegativeDimension(format!("flex space of {name}")));
        }
        out.push(BlockRank {
            name,
            degree: md.degrees[t],
            rows,
            cols,
            rank,
            stress_dim: rows - rank,
            flex_dim: flex as usize,
        });
    }
    Ok(out)
}

/// Largest `‖R H_e(x) - H_i(x) R‖` over the group, spectral norm.
pub fn intertwining_defect(r: &DMatrix<f64>, he: &MatrixRep, hi: &MatrixRep) -> f64 {
    he.matrices()
        .iter()
        .zip(hi.matrices())
        .map(|(e, i)| linalg::spectral_norm(&(r * e - i * r)))
        .fold(0.0, f64::max)
}

/// Exact rank of each block, computed as `rank(R P_t)` over the rationals.
///
/// Available when coordinates, group matrices and character values are all
/// rational; returns `None` otherwise.
pub fn exact_block_ranks(
    fw: &Framework,
    group: &SymmetryGroup,
    phi: &TypeMap,
    table: &CharacterTable,
) -> Option<Vec<usize>> {
    let r = fw.rigidity_matrix_exact()?;
    let d = fw.dim();
    let n = fw.vertex_count();
    let to_q = exact::small_rational_from_f64;
    let mats: Vec<Vec<Vec<BigRational>>> = group
        .ops()
        .iter()
        .map(|o| {
            (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| to_q(o.matrix[(i, j)]))
                        .collect::<Option<Vec<_>>>()
                })
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<_>>()?;
    let mut ranks = Vec::with_capacity(table.len());
    for irrep in table.irreps() {
        let chi: Vec<BigRational> = irrep
            .character
            .values()
            .iter()
            .map(|&v| to_q(v))
            .collect::<Option<_>>()?;
        let scale = to_q(irrep.degree as f64 / irrep.character.norm_squared())?;
        let mut rp = vec![vec![BigRational::zero(); d * n]; r.len()];
        for (x, m) in mats.iter().enumerate() {
            if chi[x].is_zero() {
                continue;
            }
            let c = &scale * &chi[x];
            let perm = phi.perm(x);
            // Column block v of R H(x) is block Φ(x)(v) of R times M_x.
            for (row, out) in r.iter().zip(rp.iter_mut()) {
                for v in 0..n {
                    let w = perm.apply(v);
                    for j in 0..d {
                        let mut acc = BigRational::zero();
                        for (k, mk) in m.iter().enumerate() {
                            acc += &row[d * w + k] * &mk[j];
                        }
                        out[d * v + j] += &c * acc;
                    }
                }
            }
        }
        ranks.push(exact::exact_rank(&rp).ok()?);
    }
    Some(ranks)
}
