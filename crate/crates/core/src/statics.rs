//! Loads, resolutions and the flex/load duality.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::framework::Framework;
use crate::linalg::{FullSvd, Tolerance};

fn check_load(fw: &Framework, load: &DVector<f64>) -> Result<()> {
    let len = fw.dim() * fw.vertex_count();
    if load.len() != len {
        return Err(Error::DimensionMismatch(format!(
            "load has length {}, expected {len}",
            load.len()
        )));
    }
    Ok(())
}

/// Net force and net moments (`j < k`) of a load.
pub fn load_resultants(fw: &Framework, load: &DVector<f64>) -> (Vec<f64>, Vec<f64>) {
    let d = fw.dim();
    let n = fw.vertex_count();
    let mut force = vec![0.0; d];
    let mut moments = Vec::new();
    for v in 0..n {
        for k in 0..d {
            force[k] += load[d * v + k];
        }
    }
    for j in 0..d {
        for k in j + 1..d {
            let mut m = 0.0;
            for v in 0..n {
                let p = fw.config().point(v);
                m += load[d * v + j] * p[k] - load[d * v + k] * p[j];
            }
            moments.push(m);
        }
    }
    (force, moments)
}

/// Zero net force and zero net moment, within `tol.abs` scaled by the load
/// and configuration size.
pub fn is_equilibrium_load(fw: &Framework, load: &DVector<f64>, tol: &Tolerance) -> Result<bool> {
    check_load(fw, load)?;
    let (force, moments) = load_resultants(fw, load);
    let bound = tol.abs * (1.0 + load.norm() * (1.0 + fw.config().scale()));
    Ok(force.iter().chain(&moments).all(|v| v.abs() <= bound))
}

/// Load `F_hk`: `p_h - p_k` at `h`, `p_k - p_h` at `k`, zero elsewhere.
pub fn pair_load(fw: &Framework, h: usize, k: usize) -> Result<DVector<f64>> {
    let n = fw.vertex_count();
    if h >= n || k >= n {
        return Err(Error::DimensionMismatch(format!(
            "vertex index out of range for {n} vertices"
        )));
    }
    if h == k {
        return Err(Error::SameVertex(h + 1));
    }
    let d = fw.dim();
    let (ph, pk) = (fw.config().point(h), fw.config().point(k));
    let mut f = DVector::zeros(d * n);
    for c in 0..d {
        f[d * h + c] = ph[c] - pk[c];
        f[d * k + c] = pk[c] - ph[c];
    }
    Ok(f)
}

/// Outcome of [`resolve_load`].
#[derive(Clone, Debug, PartialEq)]
pub enum Resolution {
    /// Minimum-norm stress `w` with `R^T w = l`.
    Resolved(DVector<f64>),
    Unresolvable {
        residual: f64,
    },
}

impl Resolution {
    pub fn is_resolved(&self) -> bool {
        matches!(self, Resolution::Resolved(_))
    }
}

/// Solves `R^T w = l` in the least-norm sense and accepts the solution when
/// `|R^T w - l| <= tol.abs * |l|`.
pub fn resolve_load(fw: &Framework, load: &DVector<f64>, tol: &Tolerance) -> Result<Resolution> {
    tol.validate()?;
    if !is_equilibrium_load(fw, load, tol)? {
        return Err(Error::NotEquilibrium);
    }
    let rt = fw.rigidity_matrix().transpose();
    let svd = FullSvd::new(&rt);
    let rank = svd.rank(tol);
    let w = svd.solve_least_norm(load, rank);
    let residual = (&rt * &w - load).norm();
    if residual <= tol.abs * load.norm() || load.norm() == 0.0 {
        Ok(Resolution::Resolved(w))
    } else {
        Ok(Resolution::Unresolvable { residual })
    }
}

/// Checks that `F_hk` is unresolvable exactly when some infinitesimal motion
/// `u` has `(p_h - p_k) . (u_h - u_k) != 0`.
pub fn flex_load_duality_check(
    fw: &Framework,
    h: usize,
    k: usize,
    tol: &Tolerance,
) -> Result<bool> {
    let load = pair_load(fw, h, k)?;
    let unresolvable = !resolve_load(fw, &load, tol)?.is_resolved();
    let motions = crate::linalg::kernel(&fw.rigidity_matrix(), tol);
    let d = fw.dim();
    let (ph, pk) = (fw.config().point(h), fw.config().point(k));
    let scale = 1.0 + load.norm();
    let stretches = motions.column_iter().any(|u| {
        let s: f64 = (0..d)
            .map(|c| (ph[c] - pk[c]) * (u[d * h + c] - u[d * k + c]))
            .sum();
        s.abs() > tol.abs.sqrt() * scale
    });
    Ok(unresolvable == stretches)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::{rigid_motion_basis, Configuration, Graph};

    fn triangle(pts: &[&[i64]]) -> Framework {
        Framework::new(
            Graph::from_one_based(3, &[(1, 2), (1, 3), (2, 3)]).unwrap(),
            Configuration::from_integers(2, pts).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn pair_load_blocks() {
        let fw = triangle(&[&[-1, 0], &[1, 0], &[0, 2]]);
        let f = pair_load(&fw, 0, 1).unwrap();
        assert_eq!(f.as_slice(), &[-2.0, 0.0, 2.0, 0.0, 0.0, 0.0]);
        assert!(matches!(pair_load(&fw, 1, 1), Err(Error::SameVertex(2))));
    }

    #[test]
    fn equilibrium_checks() {
        let t = Tolerance::default();
        let fw = triangle(&[&[-1, 0], &[1, 0], &[0, 2]]);
        assert!(is_equilibrium_load(&fw, &DVector::zeros(6), &t).unwrap());
        let trans = rigid_motion_basis(fw.config())[0].clone();
        assert!(!is_equilibrium_load(&fw, &trans, &t).unwrap());
        let rot = rigid_motion_basis(fw.config())[2].clone();
        assert!(!is_equilibrium_load(&fw, &rot, &t).unwrap());
        assert!(is_equilibrium_load(&fw, &DVector::zeros(4), &t).is_err());
    }

    #[test]
    fn bar_load_resolved_by_its_bar() {
        let t = Tolerance::default();
        let fw = triangle(&[&[-1, 0], &[1, 0], &[0, 2]]);
        let f = pair_load(&fw, 0, 1).unwrap();
        match resolve_load(&fw, &f, &t).unwrap() {
            Resolution::Resolved(w) => {
                assert!((w[0] - 1.0).abs() < 1e-12);
                assert!(w[1].abs() < 1e-12 && w[2].abs() < 1e-12);
            }
            other => panic!("expected resolution, got {other:?}"),
        }
    }

    #[test]
    fn transverse_load_on_collinear_triangle() {
        let t = Tolerance::default();
        let fw = triangle(&[&[0, 0], &[2, 0], &[1, 0]]);
        let l = DVector::from_vec(vec![0.0, 1.0, 0.0, 1.0, 0.0, -2.0]);
        assert!(is_equilibrium_load(&fw, &l, &t).unwrap());
        assert!(matches!(
            resolve_load(&fw, &l, &t).unwrap(),
            Resolution::Unresolvable { .. }
        ));
    }

    #[test]
    fn non_equilibrium_rejected() {
        let fw = triangle(&[&[-1, 0], &[1, 0], &[0, 2]]);
        let l = DVector::from_vec(vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(
            resolve_load(&fw, &l, &Tolerance::default()),
            Err(Error::NotEquilibrium)
        );
    }

    #[test]
    fn duality_on_triangles() {
        let t = Tolerance::default();
        for pts in [
            [&[-1i64, 0][..], &[1, 0], &[0, 2]],
            [&[0, 0][..], &[2, 0], &[1, 0]],
        ] {
            let fw = triangle(&pts);
            for h in 0..3 {
                for k in 0..3 {
                    if h != k {
                        assert!(flex_load_duality_check(&fw, h, k, &t).unwrap());
                    }
                }
            }
        }
    }
}
