//! Finite orthogonal symmetry groups, type maps and their fixed-element
//! counts.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::framework::{Configuration, Framework, Graph};
use crate::linalg::{self, Tolerance};

/// Default cap on the size of a generated group.
pub const DEFAULT_CLOSURE_CAP: usize = 1000;
/// Cap on partial states explored by [`find_type_maps`].
pub const TYPE_MAP_SEARCH_CAP: usize = 1_000_000;

/// Label plus orthogonal matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryOperation {
    pub label: String,
    pub matrix: DMatrix<f64>,
}

/// Built-in two-dimensional point-group families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    C1,
    Cs,
    /// Cyclic group of `m` rotations.
    Cm,
    /// Dihedral group of `m` rotations and `m` reflections.
    Cmv,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GroupOrigin {
    Builtin {
        kind: GroupKind,
        m: usize,
        mirror_angle: f64,
    },
    Generated,
}

/// A finite subgroup of `O(d)` with its multiplication table.
///
/// The identity is element 0. `cayley[a][b]` is the index of `M_a M_b`.
#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    dim: usize,
    ops: Vec<SymmetryOperation>,
    cayley: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    origin: GroupOrigin,
}

fn is_orthogonal(m: &DMatrix<f64>, tol: f64) -> bool {
    let d = m.nrows();
    m.ncols() == d && linalg::max_abs(&(m.transpose() * m - DMatrix::identity(d, d))) <= tol
}

fn same_matrix(a: &DMatrix<f64>, b: &DMatrix<f64>, tol: f64) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| (x - y).abs() < tol)
}

impl SymmetryGroup {
    /// Builds the group from an explicit element list. The first operation
    /// must be the identity and the list must be closed under products.
    pub fn from_operations(
        dim: usize,
        ops: Vec<SymmetryOperation>,
        origin: GroupOrigin,
        tol: f64,
    ) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::InvalidGroup("no operations".into()));
        }
        for (i, op) in ops.iter().enumerate() {
            if op.matrix.shape() != (dim, dim) {
                return Err(Error::DimensionMismatch(format!(
                    "operation {} is not {dim}x{dim}",
                    op.label
                )));
            }
            if !is_orthogonal(&op.matrix, 1e-12_f64.max(tol)) {
                return Err(Error::NonOrthogonal(i));
            }
        }
        if !same_matrix(&ops[0].matrix, &DMatrix::identity(dim, dim), tol) {
            return Err(Error::InvalidGroup(
                "first operation must be the identity".into(),
            ));
        }
        let find = |m: &DMatrix<f64>| ops.iter().position(|o| same_matrix(&o.matrix, m, tol));
        let k = ops.len();
        let mut cayley = vec![vec![0; k]; k];
        for a in 0..k {
            for b in 0..k {
                let prod = &ops[a].matrix * &ops[b].matrix;
                cayley[a][b] = find(&prod).ok_or_else(|| {
                    Error::InvalidGroup(format!(
                        "product {}*{} is not in the group",
                        ops[a].label, ops[b].label
                    ))
                })?;
            }
        }
        let inverse = (0..k)
            .map(|a| {
                (0..k)
                    .find(|&b| cayley[a][b] == 0)
                    .ok_or_else(|| Error::InvalidGroup(format!("{} has no inverse", ops[a].label)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SymmetryGroup {
            dim,
            ops,
            cayley,
            inverse,
            origin,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.ops.len()
    }

    pub fn ops(&self) -> &[SymmetryOperation] {
        &self.ops
    }

    pub fn matrix(&self, x: usize) -> &DMatrix<f64> {
        &self.ops[x].matrix
    }

    pub fn label(&self, x: usize) -> &str {
        &self.ops[x].label
    }

    pub fn labels(&self) -> Vec<String> {
        self.ops.iter().map(|o| o.label.clone()).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.ops.iter().position(|o| o.label == label)
    }

    /// Index of the product `x y`.
    pub fn product(&self, x: usize, y: usize) -> usize {
        self.cayley[x][y]
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn origin(&self) -> &GroupOrigin {
        &self.origin
    }

    /// Conjugacy classes as sorted element lists, ordered by first element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let k = self.order();
        let mut seen = vec![false; k];
        let mut classes = Vec::new();
        for x in 0..k {
            if seen[x] {
                continue;
            }
            let class: BTreeSet<usize> = (0..k)
                .map(|g| self.product(self.product(g, x), self.inverse(g)))
                .collect();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    /// Largest deviation between `M_a M_b` and the tabulated product.
    pub fn cayley_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for a in 0..self.order() {
            for b in 0..self.order() {
                let prod = self.matrix(a) * self.matrix(b);
                worst = worst.max(linalg::max_abs(&(prod - self.matrix(self.product(a, b)))));
            }
        }
        worst
    }
}

/// Closure of the generators under multiplication, capped at
/// [`DEFAULT_CLOSURE_CAP`] elements.
pub fn group_from_generators(
    dim: usize,
    generators: &[DMatrix<f64>],
    tol: f64,
) -> Result<SymmetryGroup> {
    group_from_generators_capped(dim, generators, tol, DEFAULT_CLOSURE_CAP)
}

pub fn group_from_generators_capped(
    dim: usize,
    generators: &[DMatrix<f64>],
    tol: f64,
    cap: usize,
) -> Result<SymmetryGroup> {
    for (i, g) in generators.iter().enumerate() {
        if g.shape() != (dim, dim) {
            return Err(Error::DimensionMismatch(format!(
                "generator {i} is not {dim}x{dim}"
            )));
        }
        if !is_orthogonal(g, tol) {
            return Err(Error::NonOrthogonal(i));
        }
    }
    let mut ops = vec![SymmetryOperation {
        label: "Id".into(),
        matrix: DMatrix::identity(dim, dim),
    }];
    let gen_labels: Vec<String> = (1..=generators.len()).map(|i| format!("g{i}")).collect();
    let mut next = 0;
    while next < ops.len() {
        for (g, glabel) in generators.iter().zip(&gen_labels) {
            let prod = &ops[next].matrix * g;
            if ops.iter().any(|o| same_matrix(&o.matrix, &prod, tol)) {
                continue;
            }
            if ops.len() == cap {
                return Err(Error::ClosureCapExceeded(cap));
            }
            let label = if next == 0 {
                glabel.clone()
            } else {
                format!("{}*{}", ops[next].label, glabel)
            };
            ops.push(SymmetryOperation {
                label,
                matrix: prod,
            });
        }
        next += 1;
    }
    SymmetryGroup::from_operations(dim, ops, GroupOrigin::Generated, tol)
}

/// Rounds values within 1e-14 of a multiple of 1/2 onto it, so that e.g.
/// `cos(pi)` becomes exactly -1.
fn snap(v: f64) -> f64 {
    let h = (v * 2.0).round() / 2.0;
    if (v - h).abs() < 1e-14 {
        h
    } else {
        v
    }
}

fn rotation(angle: f64) -> DMatrix<f64> {
    let (s, c) = angle.sin_cos();
    DMatrix::from_row_slice(2, 2, &[snap(c), snap(-s), snap(s), snap(c)])
}

/// Reflection in the line through the origin at `angle` to the x-axis.
fn reflection(angle: f64) -> DMatrix<f64> {
    let (s, c) = (2.0 * angle).sin_cos();
    DMatrix::from_row_slice(2, 2, &[snap(c), snap(s), snap(s), snap(-c)])
}

fn rotation_label(m: usize, j: usize) -> String {
    if j == 1 {
        format!("C{m}")
    } else {
        format!("C{m}^{j}")
    }
}

/// Built-in planar groups.
///
/// Element order and labels:
/// * `C1`: `Id`
/// * `Cs`: `Id`, `s` (mirror line at `mirror_angle`)
/// * `Cm`: `Id`, `Cm`, `Cm^2`, ..., rotations by `2 pi j / m`
/// * `Cmv`: the rotations of `Cm`, then the mirrors at
///   `mirror_angle + pi k / m`; labelled `s_h`, `s_v` when `m = 2`, otherwise
///   `s_1`, ..., `s_m`.
pub fn builtin_group_2d(kind: GroupKind, m: usize, mirror_angle: f64) -> Result<SymmetryGroup> {
    let mut ops = vec![SymmetryOperation {
        label: "Id".into(),
        matrix: DMatrix::identity(2, 2),
    }];
    let m = match kind {
        GroupKind::C1 => 1,
        GroupKind::Cs => {
            ops.push(SymmetryOperation {
                label: "s".into(),
                matrix: reflection(mirror_angle),
            });
            1
        }
        GroupKind::Cm | GroupKind::Cmv => {
            if m < 2 {
                return Err(Error::InvalidGroup(format!(
                    "m must be at least 2, got {m}"
                )));
            }
            for j in 1..m {
                ops.push(SymmetryOperation {
                    label: rotation_label(m, j),
                    matrix: rotation(2.0 * PI * j as f64 / m as f64),
                });
            }
            if kind == GroupKind::Cmv {
                for k in 0..m {
                    let label = match (m, k) {
                        (2, 0) => "s_h".to_string(),
                        (2, _) => "s_v".to_string(),
                        _ => format!("s_{}", k + 1),
                    };
                    ops.push(SymmetryOperation {
                        label,
                        matrix: reflection(mirror_angle + PI * k as f64 / m as f64),
                    });
                }
            }
            m
        }
    };
    SymmetryGroup::from_operations(
        2,
        ops,
        GroupOrigin::Builtin {
            kind,
            m,
            mirror_angle,
        },
        1e-9,
    )
}

/// Permutation of `0..n` stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        for &v in &self.0 {
            if v >= seen.len() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&v| self.0[v]).collect())
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|&(i, &v)| i == v).count()
    }

    pub fn is_automorphism(&self, graph: &Graph) -> bool {
        self.len() == graph.vertex_count()
            && self.is_bijection()
            && graph
                .edges()
                .iter()
                .all(|&(i, j)| graph.has_edge(self.apply(i), self.apply(j)))
    }

    /// Induced permutation of the edge list; `None` if some edge image is
    /// not an edge.
    pub fn on_edges(&self, graph: &Graph) -> Option<Permutation> {
        graph
            .edges()
            .iter()
            .map(|&(i, j)| graph.edge_index(self.apply(i), self.apply(j)))
            .collect::<Option<Vec<_>>>()
            .map(Permutation)
    }

    /// Disjoint cycle notation with 1-based vertices, e.g. `(1 2)(3)`.
    pub fn cycle_notation(&self) -> String {
        let mut seen = vec![false; self.len()];
        let mut out = String::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut v = self.apply(start);
            while v != start {
                seen[v] = true;
                cycle.push(v + 1);
                v = self.apply(v);
            }
            let parts: Vec<String> = cycle.iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("({})", parts.join(" ")));
        }
        out
    }
}

/// Assignment of a vertex permutation to each group element, indexed in
/// group order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TypeMap {
    perms: Vec<Permutation>,
}

impl TypeMap {
    pub fn new(perms: Vec<Permutation>) -> Self {
        TypeMap { perms }
    }

    /// From 1-based image lists.
    pub fn from_one_based(images: &[Vec<usize>]) -> Result<Self> {
        let perms = images
            .iter()
            .map(|img| {
                img.iter()
                    .map(|&v| {
                        v.checked_sub(1).ok_or_else(|| {
                            Error::InvalidTypeMap("vertex indices start at 1".into())
                        })
                    })
                    .collect::<Result<Vec<_>>>()
                    .map(Permutation)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TypeMap { perms })
    }

    pub fn trivial(group_order: usize, n: usize) -> Self {
        TypeMap {
            perms: vec![Permutation::identity(n); group_order],
        }
    }

    pub fn perm(&self, x: usize) -> &Permutation {
        &self.perms[x]
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    /// 1-based image lists, one per group element.
    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.perms
            .iter()
            .map(|p| p.0.iter().map(|v| v + 1).collect())
            .collect()
    }
}

/// Result of [`validate_type_map`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeMapDiagnostics {
    /// Shape problems: wrong number of permutations, non-bijections.
    pub structural: Vec<String>,
    /// Elements whose permutation is not a graph automorphism.
    pub non_automorphisms: Vec<usize>,
    /// Pairs `(x, y)` with `Φ(xy) != Φ(x) ∘ Φ(y)`.
    pub homomorphism_failures: Vec<(usize, usize)>,
}

impl TypeMapDiagnostics {
    pub fn is_valid(&self) -> bool {
        self.structural.is_empty()
            && self.non_automorphisms.is_empty()
            && self.homomorphism_failures.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            return Ok(());
        }
        let mut parts = self.structural.clone();
        if !self.non_automorphisms.is_empty() {
            parts.push(format!(
                "not automorphisms at elements {:?}",
                self.non_automorphisms
            ));
        }
        if !self.homomorphism_failures.is_empty() {
            parts.push(format!(
                "not a homomorphism at {} product(s), first {:?}",
                self.homomorphism_failures.len(),
                self.homomorphism_failures[0]
            ));
        }
        Err(Error::InvalidTypeMap(parts.join("; ")))
    }
}

pub fn validate_type_map(
    graph: &Graph,
    group: &SymmetryGroup,
    phi: &TypeMap,
) -> TypeMapDiagnostics {
    let mut diag = TypeMapDiagnostics::default();
    if phi.len() != group.order() {
        diag.structural.push(format!(
            "{} permutations for a group of order {}",
            phi.len(),
            group.order()
        ));
        return diag;
    }
    for (x, p) in phi.perms().iter().enumerate() {
        if p.len() != graph.vertex_count() || !p.is_bijection() {
            diag.structural.push(format!(
                "image list for {} is not a permutation of 1..{}",
                group.label(x),
                graph.vertex_count()
            ));
        }
    }
    if !diag.structural.is_empty() {
        return diag;
    }
    for (x, p) in phi.perms().iter().enumerate() {
        if !p.is_automorphism(graph) {
            diag.non_automorphisms.push(x);
        }
    }
    for x in 0..group.order() {
        for y in 0..group.order() {
            if phi.perm(group.product(x, y)) != &phi.perm(x).compose(phi.perm(y)) {
                diag.homomorphism_failures.push((x, y));
            }
        }
    }
    diag
}

fn point_bound(config: &Configuration, tol: &Tolerance) -> f64 {
    tol.abs * (1.0 + config.scale())
}

fn image_point(m: &DMatrix<f64>, p: &[f64]) -> Vec<f64> {
    (0..p.len())
        .map(|i| (0..p.len()).map(|k| m[(i, k)] * p[k]).sum())
        .collect()
}

fn close(a: &[f64], b: &[f64], bound: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= bound)
}

/// `M_x p_v = p_{Φ(x)(v)}` for every element and vertex.
pub fn is_compatible(
    fw: &Framework,
    group: &SymmetryGroup,
    phi: &TypeMap,
    tol: &Tolerance,
) -> bool {
    if group.dim() != fw.dim() || phi.len() != group.order() {
        return false;
    }
    let config = fw.config();
    let bound = point_bound(config, tol);
    (0..group.order()).all(|x| {
        let p = phi.perm(x);
        p.len() == config.len()
            && (0..config.len()).all(|v| {
                close(
                    &image_point(group.matrix(x), config.point(v)),
                    config.point(p.apply(v)),
                    bound,
                )
            })
    })
}

/// All homomorphic type maps under which the configuration is symmetric.
pub fn find_type_maps(
    fw: &Framework,
    group: &SymmetryGroup,
    tol: &Tolerance,
) -> Result<Vec<TypeMap>> {
    if group.dim() != fw.dim() {
        return Err(Error::DimensionMismatch(format!(
            "group acts on R^{} but framework lives in R^{}",
            group.dim(),
            fw.dim()
        )));
    }
    let config = fw.config();
    let graph = fw.graph();
    let n = config.len();
    let bound = point_bound(config, tol);
    let mut budget = TYPE_MAP_SEARCH_CAP;

    let mut per_element: Vec<Vec<Permutation>> = Vec::with_capacity(group.order());
    for x in 0..group.order() {
        let candidates: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let img = image_point(group.matrix(x), config.point(v));
                (0..n)
                    .filter(|&w| close(&img, config.point(w), bound))
                    .collect()
            })
            .collect();
        if candidates.iter().any(|c| c.is_empty()) {
            return Ok(Vec::new());
        }
        let mut found = Vec::new();
        let mut partial = Vec::with_capacity(n);
        let mut used = vec![false; n];
        automorphisms_within(
            graph,
            &candidates,
            &mut partial,
            &mut used,
            &mut found,
            &mut budget,
        )?;
        if found.is_empty() {
            return Ok(Vec::new());
        }
        per_element.push(found);
    }

    let mut results = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(group.order());
    assign_elements(group, &per_element, &mut chosen, &mut results, &mut budget)?;
    Ok(results)
}

fn automorphisms_within(
    graph: &Graph,
    candidates: &[Vec<usize>],
    partial: &mut Vec<usize>,
    used: &mut [bool],
    found: &mut Vec<Permutation>,
    budget: &mut usize,
) -> Result<()> {
    let v = partial.len();
    if v == candidates.len() {
        found.push(Permutation(partial.clone()));
        return Ok(());
    }
    for &w in &candidates[v] {
        if used[w] {
            continue;
        }
        if *budget == 0 {
            return Err(Error::SearchCapExceeded(TYPE_MAP_SEARCH_CAP));
        }
        *budget -= 1;
        let edges_ok = (0..v).all(|u| !graph.has_edge(u, v) || graph.has_edge(partial[u], w));
        if !edges_ok {
            continue;
        }
        used[w] = true;
        partial.push(w);
        automorphisms_within(graph, candidates, partial, used, found, budget)?;
        partial.pop();
        used[w] = false;
    }
    Ok(())
}

fn assign_elements(
    group: &SymmetryGroup,
    per_element: &[Vec<Permutation>],
    chosen: &mut Vec<usize>,
    results: &mut Vec<TypeMap>,
    budget: &mut usize,
) -> Result<()> {
    let x = chosen.len();
    if x == per_element.len() {
        results.push(TypeMap::new(
            chosen
                .iter()
                .enumerate()
                .map(|(e, &c)| per_element[e][c].clone())
                .collect(),
        ));
        return Ok(());
    }
    for c in 0..per_element[x].len() {
        if *budget == 0 {
            return Err(Error::SearchCapExceeded(TYPE_MAP_SEARCH_CAP));
        }
        *budget -= 1;
        chosen.push(c);
        let perm_of = |e: usize| &per_element[e][chosen[e]];
        let consistent = (0..=x).all(|a| {
            (0..=x).all(|b| {
                let ab = group.product(a, b);
                ab > x || perm_of(ab) == &perm_of(a).compose(perm_of(b))
            })
        });
        if consistent {
            assign_elements(group, per_element, chosen, results, budget)?;
        }
        chosen.pop();
    }
    Ok(())
}

/// Fixed joints and fixed bars per group element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FixedCounts {
    pub joints: usize,
    pub bars: usize,
}

pub fn fixed_counts(graph: &Graph, phi: &TypeMap) -> Vec<FixedCounts> {
    phi.perms()
        .iter()
        .map(|p| FixedCounts {
            joints: p.fixed_points(),
            bars: graph
                .edges()
                .iter()
                .filter(|&&(i, j)| {
                    let (a, b) = (p.apply(i), p.apply(j));
                    (a == i && b == j) || (a == j && b == i)
                })
                .count(),
        })
        .collect()
}

/// Builds a symmetric framework from orbit seeds.
///
/// Each seed point contributes its orbit (duplicate images dropped) as a
/// block of vertices. Each edge seed `(u, v)` indexes the resulting vertex
/// list and contributes its whole orbit of edges. Returns the framework and
/// the type map induced by the orbit structure.
pub fn orbit_framework(
    group: &SymmetryGroup,
    seeds: &[Vec<f64>],
    edge_seeds: &[(usize, usize)],
    tol: &Tolerance,
) -> Result<(Framework, TypeMap)> {
    let d = group.dim();
    let k = group.order();
    let bound = tol.abs * (1.0 + seeds.iter().flatten().fold(0.0_f64, |m, v| m.max(v.abs())));
    let mut points: Vec<Vec<f64>> = Vec::new();
    let mut seed_of = Vec::new();
    let mut orbit_start = Vec::new();
    for (s, q) in seeds.iter().enumerate() {
        if q.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "seed {s} has wrong length"
            )));
        }
        orbit_start.push(points.len());
        for y in 0..k {
            let img = image_point(group.matrix(y), q);
            let start = orbit_start[s];
            if points[start..].iter().any(|p| close(p, &img, bound)) {
                continue;
            }
            points.push(img);
            seed_of.push(s);
        }
    }
    let n = points.len();
    let mut perms = Vec::with_capacity(k);
    for x in 0..k {
        let mut img = vec![0; n];
        for v in 0..n {
            let target = image_point(group.matrix(x), &points[v]);
            let s = seed_of[v];
            let end = orbit_start.get(s + 1).copied().unwrap_or(n);
            img[v] = (orbit_start[s]..end)
                .find(|&w| close(&points[w], &target, bound))
                .ok_or(Error::Incompatible)?;
        }
        perms.push(Permutation(img));
    }
    let mut edge_set = BTreeSet::new();
    let mut edges = Vec::new();
    for &(u, v) in edge_seeds {
        if u >= n || v >= n || u == v {
            return Err(Error::InvalidGraph(format!("bad edge seed ({u}, {v})")));
        }
        for p in &perms {
            let (a, b) = (p.apply(u), p.apply(v));
            if edge_set.insert((a.min(b), a.max(b))) {
                edges.push((a, b));
            }
        }
    }
    let graph = Graph::new(n, edges)?;
    let config = Configuration::new(d, points)?;
    Ok((Framework::new(graph, config)?, TypeMap::new(perms)))
}
