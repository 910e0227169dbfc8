//! Dense floating-point helpers: tolerance policy, SVD-based rank and
//! kernels, pivoted orthonormalization.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Tolerance settings shared by every floating-point decision.
///
/// `abs` bounds residuals and geometric comparisons. Singular values are
/// treated as zero when they do not exceed `max(rows, cols) * eps * sigma_max`
/// unless `rank` overrides the threshold with an absolute value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rank: Option<f64>,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: 1e-9,
            rank: None,
        }
    }
}

impl Tolerance {
    pub fn new(abs: f64) -> Self {
        Tolerance { abs, rank: None }
    }

    pub fn with_rank_threshold(mut self, threshold: f64) -> Self {
        self.rank = Some(threshold);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.abs.is_finite() || self.abs <= 0.0 {
            return Err(Error::InvalidTolerance(self.abs));
        }
        if let Some(r) = self.rank {
            if !r.is_finite() || r < 0.0 {
                return Err(Error::InvalidTolerance(r));
            }
        }
        Ok(())
    }

    /// Singular-value cutoff for a `rows x cols` matrix with largest
    /// singular value `sigma_max`.
    pub fn rank_threshold(&self, rows: usize, cols: usize, sigma_max: f64) -> f64 {
        self.rank
            .unwrap_or_else(|| rows.max(cols) as f64 * f64::EPSILON * sigma_max)
    }
}

/// Full singular value decomposition with singular values sorted in
/// decreasing order. `v` is always the complete `cols x cols` orthogonal
/// factor, so trailing columns span the kernel.
#[derive(Clone, Debug)]
pub struct FullSvd {
    pub rows: usize,
    pub cols: usize,
    pub u: DMatrix<f64>,
    pub singular: Vec<f64>,
    pub v: DMatrix<f64>,
}

impl FullSvd {
    pub fn new(a: &DMatrix<f64>) -> Self {
        let (rows, cols) = a.shape();
        if rows == 0 || cols == 0 {
            return FullSvd {
                rows,
                cols,
                u: DMatrix::zeros(rows, 0),
                singular: Vec::new(),
                v: DMatrix::identity(cols, cols),
            };
        }
        // Pad with zero rows so that the thin factorization already yields
        // a complete right factor.
        let padded_rows = rows.max(cols);
        let mut padded = DMatrix::zeros(padded_rows, cols);
        padded.view_mut((0, 0), (rows, cols)).copy_from(a);
        let svd = padded.svd(true, true);
        let u = svd.u.expect("u requested");
        let v_t = svd.v_t.expect("v_t requested");
        let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
        order.sort_by(|&i, &j| {
            svd.singular_values[j]
                .partial_cmp(&svd.singular_values[i])
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(i.cmp(&j))
        });
        let singular: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
        let mut v = DMatrix::zeros(cols, cols);
        let mut u_sorted = DMatrix::zeros(rows, order.len());
        for (k, &i) in order.iter().enumerate() {
            v.set_column(k, &v_t.row(i).transpose());
            u_sorted.set_column(k, &u.column(i).rows(0, rows));
        }
        FullSvd {
            rows,
            cols,
            u: u_sorted,
            singular,
            v,
        }
    }

    pub fn sigma_max(&self) -> f64 {
        self.singular.first().copied().unwrap_or(0.0)
    }

    pub fn rank(&self, tol: &Tolerance) -> usize {
        let cut = tol.rank_threshold(self.rows, self.cols, self.sigma_max());
        self.rank_at(cut)
    }

    pub fn rank_at(&self, cutoff: f64) -> usize {
        self.singular.iter().filter(|&&s| s > cutoff).count()
    }

    /// Orthonormal basis of the kernel as columns.
    pub fn kernel(&self, rank: usize) -> DMatrix<f64> {
        self.v.columns(rank, self.cols - rank).into_owned()
    }

    /// Minimum-norm least-squares solution of `A x = b`.
    pub fn solve_least_norm(&self, b: &DVector<f64>, rank: usize) -> DVector<f64> {
        let mut x = DVector::zeros(self.cols);
        for k in 0..rank {
            let coeff = self.u.column(k).dot(b) / self.singular[k];
            x.axpy(coeff, &self.v.column(k), 1.0);
        }
        x
    }
}

pub fn rank(a: &DMatrix<f64>, tol: &Tolerance) -> usize {
    FullSvd::new(a).rank(tol)
}

pub fn kernel(a: &DMatrix<f64>, tol: &Tolerance) -> DMatrix<f64> {
    let svd = FullSvd::new(a);
    let r = svd.rank(tol);
    svd.kernel(r)
}

/// Largest singular value, i.e. the spectral norm.
pub fn spectral_norm(a: &DMatrix<f64>) -> f64 {
    FullSvd::new(a).sigma_max()
}

/// Result of column-pivoted Gram-Schmidt.
#[derive(Clone, Debug)]
pub struct PivotedBasis {
    pub basis: DMatrix<f64>,
    pub pivots: Vec<usize>,
    /// Residual norm of each accepted pivot, followed by the residual of the
    /// first rejected candidate (if any column was left over).
    pub norms: Vec<f64>,
}

/// Column-pivoted modified Gram-Schmidt with one reorthogonalization pass.
///
/// Picks the column with the largest remaining norm (lowest index on ties)
/// until `max_rank` columns are taken or the best remaining norm is at most
/// `threshold`.
pub fn pivoted_orthonormal_basis(
    a: &DMatrix<f64>,
    threshold: f64,
    max_rank: usize,
) -> PivotedBasis {
    let (rows, cols) = a.shape();
    let mut work = a.clone();
    let mut taken = vec![false; cols];
    let mut basis: Vec<DVector<f64>> = Vec::new();
    let mut pivots = Vec::new();
    let mut norms = Vec::new();
    let limit = max_rank.min(rows).min(cols);
    loop {
        let mut best: Option<(usize, f64)> = None;
        for (j, &t) in taken.iter().enumerate() {
            if t {
                continue;
            }
            let n = work.column(j).norm();
            match best {
                Some((_, bn)) if n <= bn => {}
                _ => best = Some((j, n)),
            }
        }
        let Some((j, n)) = best else { break };
        if basis.len() == limit || n <= threshold {
            norms.push(n);
            break;
        }
        let mut q = work.column(j).into_owned();
        for b in &basis {
            let c = b.dot(&q);
            q.axpy(-c, b, 1.0);
        }
        let qn = q.norm();
        q /= qn;
        taken[j] = true;
        pivots.push(j);
        norms.push(n);
        for (k, &t) in taken.iter().enumerate() {
            if !t {
                let c = q.dot(&work.column(k));
                let mut col = work.column_mut(k);
                col.axpy(-c, &q, 1.0);
            }
        }
        basis.push(q);
    }
    let mut out = DMatrix::zeros(rows, basis.len());
    for (k, b) in basis.iter().enumerate() {
        out.set_column(k, b);
    }
    PivotedBasis {
        basis: out,
        pivots,
        norms,
    }
}

/// Largest absolute entry.
pub fn max_abs(a: &DMatrix<f64>) -> f64 {
    a.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

/// Concatenates matrices with `rows` rows side by side.
pub fn hstack(parts: &[DMatrix<f64>], rows: usize) -> DMatrix<f64> {
    let cols: usize = parts.iter().map(|p| p.ncols()).sum();
    let mut out = DMatrix::zeros(rows, cols);
    let mut c = 0;
    for p in parts {
        out.view_mut((0, c), (rows, p.ncols())).copy_from(p);
        c += p.ncols();
    }
    out
}
