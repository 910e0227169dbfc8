//! Infinitesimal rigidity, self-stresses and Maxwell's count.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::exact;
use crate::framework::{affine_span_dim, binomial, rigid_motion_matrix, Framework};
use crate::linalg::{self, FullSvd, Tolerance};

/// Kernel data of the rigidity matrix.
#[derive(Clone, Debug)]
pub struct InfinitesimalAnalysis {
    pub rank: usize,
    pub nullity: usize,
    /// Dimension of the span of the trivial motions at this configuration.
    pub rigid_motion_dim: usize,
    /// Infinitesimal motions that are not rigid motions.
    pub flex_count: usize,
    pub infinitesimally_rigid: bool,
    /// Orthonormal basis of `ker R` as columns.
    pub motion_basis: DMatrix<f64>,
    /// Orthonormal basis of the part of `ker R` orthogonal to the rigid motions.
    pub flex_basis: DMatrix<f64>,
}

pub fn infinitesimal_analysis(fw: &Framework, tol: &Tolerance) -> Result<InfinitesimalAnalysis> {
    tol.validate()?;
    let d = fw.dim();
    let n = fw.vertex_count();
    let r = fw.rigidity_matrix();
    let svd = FullSvd::new(&r);
    let rank = svd.rank(tol);
    let motion_basis = svd.kernel(rank);
    let nullity = d * n - rank;

    let rigid = rigid_motion_matrix(fw.config());
    let rigid_q = orthonormal_span(&rigid, tol);
    let rigid_motion_dim = rigid_q.ncols();
    let flex_count = nullity.saturating_sub(rigid_motion_dim);

    // Remove the rigid-motion component from the kernel.
    let projected = &motion_basis - &rigid_q * (rigid_q.transpose() * &motion_basis);
    let flex_basis = linalg::pivoted_orthonormal_basis(&projected, 0.0, flex_count).basis;

    let full_rank = (d * n).saturating_sub(binomial(d + 1, 2));
    let simplex = fw.graph().is_complete() && n >= 1 && affine_span_dim(fw.config()) == n - 1;
    let infinitesimally_rigid = (d * n >= binomial(d + 1, 2) && rank == full_rank) || simplex;

    Ok(InfinitesimalAnalysis {
        rank,
        nullity,
        rigid_motion_dim,
        flex_count,
        infinitesimally_rigid,
        motion_basis,
        flex_basis,
    })
}

/// Orthonormal basis for the column space of `a` at the usual rank tolerance.
pub(crate) fn orthonormal_span(a: &DMatrix<f64>, tol: &Tolerance) -> DMatrix<f64> {
    let svd = FullSvd::new(&a.transpose());
    let r = svd.rank(tol);
    // Right singular vectors of a^T are left singular vectors of a.
    svd.v.columns(0, r).into_owned()
}

/// Orthonormal basis of `ker R^T` as columns; no columns means independent.
pub fn self_stresses(fw: &Framework, tol: &Tolerance) -> Result<DMatrix<f64>> {
    tol.validate()?;
    Ok(linalg::kernel(&fw.rigidity_matrix().transpose(), tol))
}

/// Verdict of [`is_isostatic`] together with the numbers it rests on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsostaticVerdict {
    pub isostatic: bool,
    pub infinitesimally_rigid: bool,
    pub rank: usize,
    pub nullity: usize,
    pub flex_count: usize,
    pub self_stress_count: usize,
}

pub fn is_isostatic(fw: &Framework, tol: &Tolerance) -> Result<IsostaticVerdict> {
    let a = infinitesimal_analysis(fw, tol)?;
    let self_stress_count = fw.edge_count() - a.rank;
    Ok(IsostaticVerdict {
        isostatic: a.infinitesimally_rigid && self_stress_count == 0,
        infinitesimally_rigid: a.infinitesimally_rigid,
        rank: a.rank,
        nullity: a.nullity,
        flex_count: a.flex_count,
        self_stress_count,
    })
}

/// Signed Maxwell count `m - (d n - C(d+1, 2))`.
pub fn maxwell_count(fw: &Framework) -> Result<i64> {
    let d = fw.dim();
    let n = fw.vertex_count();
    if n < d {
        return Err(Error::TooFewVertices {
            needed: d,
            dim: d,
            got: n,
        });
    }
    Ok(fw.edge_count() as i64 - (d * n) as i64 + binomial(d + 1, 2) as i64)
}

/// Exact rank of the rigidity matrix, when coordinates are rational.
pub fn exact_rigidity_rank(fw: &Framework) -> Option<usize> {
    let m = fw.rigidity_matrix_exact()?;
    exact::exact_rank(&m).ok()
}
