//! Graphs, configurations, frameworks and the rigidity matrix.
//!
//! Vertices are 0-based internally. Edge order is the input order and fixes
//! the row order of every matrix built from a graph; vertex order fixes the
//! column blocks.

use std::collections::HashSet;

use nalgebra::{DMatrix, DVector};
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{self, RationalMatrix};
use crate::linalg::{self, Tolerance};

/// Simple graph: no loops, no parallel edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for &(i, j) in &edges {
            if i >= n || j >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{}, {}}} out of range for {n} vertices",
                    i + 1,
                    j + 1
                )));
            }
            if i == j {
                return Err(Error::InvalidGraph(format!("loop at vertex {}", i + 1)));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge {{{}, {}}}",
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(Graph { n, edges })
    }

    /// Builds a graph from 1-based index pairs.
    pub fn from_one_based(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut zero_based = Vec::with_capacity(edges.len());
        for &(i, j) in edges {
            if i == 0 || j == 0 {
                return Err(Error::InvalidGraph("vertex indices start at 1".into()));
            }
            zero_based.push((i - 1, j - 1));
        }
        Graph::new(n, zero_based)
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Graph { n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Index of the edge `{i, j}` in edge order.
    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|&(a, b)| (a == i && b == j) || (a == j && b == i))
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edge_index(i, j).is_some()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }
}

/// Placement of `n` points in `R^dim`, optionally carrying exact rational
/// coordinates for the oracle path.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration {
    dim: usize,
    coords: Vec<Vec<f64>>,
    exact: Option<Vec<Vec<BigRational>>>,
}

impl Configuration {
    pub fn new(dim: usize, coords: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch(
                "dimension must be positive".into(),
            ));
        }
        if let Some((i, p)) = coords.iter().enumerate().find(|(_, p)| p.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "point {} has {} coordinates, expected {dim}",
                i + 1,
                p.len()
            )));
        }
        Ok(Configuration {
            dim,
            coords,
            exact: None,
        })
    }

    pub fn from_rational(dim: usize, coords: Vec<Vec<BigRational>>) -> Result<Self> {
        let floats = coords
            .iter()
            .map(|p| p.iter().map(exact::to_f64).collect())
            .collect();
        let mut c = Configuration::new(dim, floats)?;
        c.exact = Some(coords);
        Ok(c)
    }

    pub fn from_integers(dim: usize, coords: &[&[i64]]) -> Result<Self> {
        Configuration::from_rational(
            dim,
            coords
                .iter()
                .map(|p| {
                    p.iter()
                        .map(|&v| BigRational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i]
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.coords
    }

    pub fn exact(&self) -> Option<&[Vec<BigRational>]> {
        self.exact.as_deref()
    }

    pub fn centroid(&self) -> Vec<f64> {
        let mut c = vec![0.0; self.dim];
        for p in &self.coords {
            for (ck, pk) in c.iter_mut().zip(p) {
                *ck += pk;
            }
        }
        let n = self.coords.len().max(1) as f64;
        c.iter_mut().for_each(|v| *v /= n);
        c
    }

    /// Copy translated so that the centroid is the origin.
    pub fn recentered(&self) -> Configuration {
        let n = self.coords.len();
        let exact = self.exact.as_ref().map(|pts| {
            let mut c = vec![BigRational::zero(); self.dim];
            for p in pts {
                for (ck, pk) in c.iter_mut().zip(p) {
                    *ck += pk;
                }
            }
            let denom = BigRational::from_integer((n.max(1) as i64).into());
            let c: Vec<_> = c.into_iter().map(|v| v / &denom).collect();
            pts.iter()
                .map(|p| p.iter().zip(&c).map(|(a, b)| a - b).collect())
                .collect::<Vec<Vec<BigRational>>>()
        });
        let c = self.centroid();
        let coords = self
            .coords
            .iter()
            .map(|p| p.iter().zip(&c).map(|(a, b)| a - b).collect())
            .collect();
        Configuration {
            dim: self.dim,
            coords,
            exact,
        }
    }

    /// Largest absolute coordinate, used to scale geometric tolerances.
    pub fn scale(&self) -> f64 {
        self.coords
            .iter()
            .flatten()
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

/// A graph together with a configuration placing adjacent vertices at
/// distinct points.
#[derive(Clone, Debug, PartialEq)]
pub struct Framework {
    graph: Graph,
    config: Configuration,
}

impl Framework {
    pub fn new(graph: Graph, config: Configuration) -> Result<Self> {
        check_sizes(&graph, &config)?;
        for &(i, j) in graph.edges() {
            if config.point(i) == config.point(j) {
                return Err(Error::CoincidentEndpoints(i + 1, j + 1));
            }
        }
        Ok(Framework { graph, config })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn dim(&self) -> usize {
        self.config.dim()
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn rigidity_matrix(&self) -> DMatrix<f64> {
        build_rigidity_matrix(&self.graph, &self.config)
    }

    /// Exact rigidity matrix when the configuration carries rationals.
    pub fn rigidity_matrix_exact(&self) -> Option<RationalMatrix> {
        build_rigidity_matrix_exact(&self.graph, &self.config)
    }

    /// Same framework with the configuration translated to its centroid.
    pub fn recentered(&self) -> Framework {
        Framework {
            graph: self.graph.clone(),
            config: self.config.recentered(),
        }
    }
}

fn check_sizes(graph: &Graph, config: &Configuration) -> Result<()> {
    if graph.vertex_count() != config.len() {
        return Err(Error::DimensionMismatch(format!(
            "graph has {} vertices but configuration has {} points",
            graph.vertex_count(),
            config.len()
        )));
    }
    Ok(())
}

/// Rigidity matrix of an arbitrary pair `(G, p)`. Edges joining coincident
/// points produce zero rows.
pub fn rigidity_matrix_raw(graph: &Graph, config: &Configuration) -> Result<DMatrix<f64>> {
    check_sizes(graph, config)?;
    Ok(build_rigidity_matrix(graph, config))
}

fn build_rigidity_matrix(graph: &Graph, config: &Configuration) -> DMatrix<f64> {
    let d = config.dim();
    let mut r = DMatrix::zeros(graph.edge_count(), d * graph.vertex_count());
    for (row, &(i, j)) in graph.edges().iter().enumerate() {
        let (pi, pj) = (config.point(i), config.point(j));
        for k in 0..d {
            let diff = pi[k] - pj[k];
            r[(row, d * i + k)] = diff;
            r[(row, d * j + k)] = -diff;
        }
    }
    r
}

fn build_rigidity_matrix_exact(graph: &Graph, config: &Configuration) -> Option<RationalMatrix> {
    let pts = config.exact()?;
    let d = config.dim();
    let cols = d * graph.vertex_count();
    Some(
        graph
            .edges()
            .iter()
            .map(|&(i, j)| {
                let mut row = vec![BigRational::zero(); cols];
                for k in 0..d {
                    let diff = &pts[i][k] - &pts[j][k];
                    row[d * j + k] = -diff.clone();
                    row[d * i + k] = diff;
                }
                row
            })
            .collect(),
    )
}

/// Translations `T_1..T_d` followed by rotations `R_ij` (`i < j`), each a
/// `d*n` vector.
pub fn rigid_motion_basis(config: &Configuration) -> Vec<DVector<f64>> {
    let d = config.dim();
    let n = config.len();
    let mut out = Vec::with_capacity(d + d * (d - 1) / 2);
    for j in 0..d {
        let mut t = DVector::zeros(d * n);
        for v in 0..n {
            t[d * v + j] = 1.0;
        }
        out.push(t);
    }
    for i in 0..d {
        for j in i + 1..d {
            let mut r = DVector::zeros(d * n);
            for v in 0..n {
                let p = config.point(v);
                r[d * v + j] = p[i];
                r[d * v + i] = -p[j];
            }
            out.push(r);
        }
    }
    out
}

/// Rigid motions as the columns of one matrix.
pub fn rigid_motion_matrix(config: &Configuration) -> DMatrix<f64> {
    let basis = rigid_motion_basis(config);
    DMatrix::from_columns(&basis)
}

/// Dimension of the affine hull of the points.
pub fn affine_span_dim(config: &Configuration) -> usize {
    if config.is_empty() {
        return 0;
    }
    let c = config.centroid();
    let centered = DMatrix::from_fn(config.len(), config.dim(), |i, k| config.point(i)[k] - c[k]);
    linalg::rank(&centered, &Tolerance::default())
}

/// Exact affine span dimension for rational configurations.
pub fn affine_span_dim_exact(config: &Configuration) -> Option<usize> {
    let pts = config.exact()?;
    let first = pts.first()?;
    let diffs: RationalMatrix = pts
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    exact::exact_rank(&diffs).ok()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mirror_triangle() -> Framework {
        Framework::new(
            Graph::from_one_based(3, &[(1, 2), (1, 3), (2, 3)]).unwrap(),
            Configuration::from_integers(2, &[&[-1, 0], &[1, 0], &[0, 2]]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn triangle_rigidity_matrix() {
        let r = mirror_triangle().rigidity_matrix();
        let expected = DMatrix::from_row_slice(
            3,
            6,
            &[
                -2.0, 0.0, 2.0, 0.0, 0.0, 0.0, //
                -1.0, -2.0, 0.0, 0.0, 1.0, 2.0, //
                0.0, 0.0, 1.0, -2.0, -1.0, 2.0,
            ],
        );
        assert_eq!(r, expected);
    }

    #[test]
    fn single_edge_row() {
        let fw = Framework::new(
            Graph::from_one_based(2, &[(1, 2)]).unwrap(),
            Configuration::new(2, vec![vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap(),
        )
        .unwrap();
        assert_eq!(fw.rigidity_matrix().as_slice(), &[-1.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn coincident_raw_pair_gives_zero_row() {
        let g = Graph::from_one_based(2, &[(1, 2)]).unwrap();
        let c = Configuration::new(2, vec![vec![0.0, 0.0], vec![0.0, 0.0]]).unwrap();
        let r = rigidity_matrix_raw(&g, &c).unwrap();
        assert!(r.iter().all(|&v| v == 0.0));
        assert!(matches!(
            Framework::new(g, c),
            Err(Error::CoincidentEndpoints(1, 2))
        ));
    }

    #[test]
    fn size_mismatch_rejected() {
        let g = Graph::complete(3);
        let c = Configuration::new(2, vec![vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        assert!(matches!(
            rigidity_matrix_raw(&g, &c),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(Configuration::new(2, vec![vec![0.0]]).is_err());
    }

    #[test]
    fn graph_validation() {
        assert!(Graph::new(2, vec![(0, 0)]).is_err());
        assert!(Graph::new(2, vec![(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(2, vec![(0, 2)]).is_err());
        assert!(Graph::from_one_based(2, &[(0, 1)]).is_err());
        assert!(Graph::complete(4).is_complete());
    }

    #[test]
    fn rotation_blocks_for_triangle() {
        let fw = mirror_triangle();
        let basis = rigid_motion_basis(fw.config());
        assert_eq!(basis.len(), 3);
        assert_eq!(basis[0].as_slice(), &[1.0, 0.0, 1.0, 0.0, 1.0, 0.0]);
        assert_eq!(basis[2].as_slice(), &[0.0, -1.0, 0.0, 1.0, -2.0, 0.0]);
        let rk = build_rigidity_matrix(&Graph::complete(3), fw.config());
        for v in &basis {
            assert!((&rk * v).norm() < 1e-14);
        }
    }

    #[test]
    fn affine_spans() {
        assert_eq!(affine_span_dim(mirror_triangle().config()), 2);
        let same = Configuration::new(2, vec![vec![1.0, 1.0]; 3]).unwrap();
        assert_eq!(affine_span_dim(&same), 0);
        let coplanar = Configuration::new(
            3,
            vec![
                vec![0.0, 0.0, 1.0],
                vec![1.0, 0.0, 1.0],
                vec![0.0, 1.0, 1.0],
                vec![1.0, 1.0, 1.0],
            ],
        )
        .unwrap();
        assert_eq!(affine_span_dim(&coplanar), 2);
        assert_eq!(affine_span_dim_exact(mirror_triangle().config()), Some(2));
    }

    #[test]
    fn recentering_moves_centroid_to_origin() {
        let c = mirror_triangle().config().recentered();
        assert!(c.centroid().iter().all(|v| v.abs() < 1e-15));
        let exact = c.exact().unwrap();
        assert_eq!(exact[2][1], BigRational::new(4.into(), 3.into()));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(3, 2), 3);
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(2, 3), 0);
    }
}
