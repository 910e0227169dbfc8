//! External and internal representations, characters, real character
//! tables and multiplicity decomposition.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::framework::{binomial, Graph};
use crate::linalg;
use crate::symmetry::{
    fixed_counts, validate_type_map, GroupKind, GroupOrigin, SymmetryGroup, TypeMap,
};

/// One square matrix per group element, in group order.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRep {
    matrices: Vec<DMatrix<f64>>,
}

impl MatrixRep {
    pub fn new(matrices: Vec<DMatrix<f64>>) -> Result<Self> {
        let deg = matrices.first().map_or(0, |m| m.nrows());
        if matrices.iter().any(|m| m.shape() != (deg, deg)) {
            return Err(Error::DimensionMismatch(
                "representation matrices differ in shape".into(),
            ));
        }
        Ok(MatrixRep { matrices })
    }

    pub fn degree(&self) -> usize {
        self.matrices.first().map_or(0, |m| m.nrows())
    }

    pub fn matrix(&self, x: usize) -> &DMatrix<f64> {
        &self.matrices[x]
    }

    pub fn matrices(&self) -> &[DMatrix<f64>] {
        &self.matrices
    }

    /// Largest entrywise deviation of `H(xy)` from `H(x) H(y)`.
    pub fn homomorphism_defect(&self, group: &SymmetryGroup) -> f64 {
        let mut worst = 0.0_f64;
        for x in 0..group.order() {
            for y in 0..group.order() {
                let prod = &self.matrices[x] * &self.matrices[y];
                worst = worst.max(linalg::max_abs(
                    &(prod - &self.matrices[group.product(x, y)]),
                ));
            }
        }
        worst
    }

    /// Block-diagonal direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &MatrixRep) -> MatrixRep {
        let (a, b) = (self.degree(), other.degree());
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(p, q)| {
                let mut m = DMatrix::zeros(a + b, a + b);
                m.view_mut((0, 0), (a, a)).copy_from(p);
                m.view_mut((a, a), (b, b)).copy_from(q);
                m
            })
            .collect();
        MatrixRep { matrices }
    }
}

/// `H_e(x)`: the block at (Φ(x)(v), v) is `M_x`.
pub fn external_rep(graph: &Graph, group: &SymmetryGroup, phi: &TypeMap) -> Result<MatrixRep> {
    validate_type_map(graph, group, phi).into_result()?;
    let d = group.dim();
    let n = graph.vertex_count();
    let matrices = (0..group.order())
        .map(|x| {
            let mut h = DMatrix::zeros(d * n, d * n);
            let p = phi.perm(x);
            for v in 0..n {
                h.view_mut((d * p.apply(v), d * v), (d, d))
                    .copy_from(group.matrix(x));
            }
            h
        })
        .collect();
    Ok(MatrixRep { matrices })
}

/// `H_i(x)`: the permutation matrix of the induced edge permutation, with a
/// 1 at (image of e, e).
pub fn internal_rep(graph: &Graph, group: &SymmetryGroup, phi: &TypeMap) -> Result<MatrixRep> {
    validate_type_map(graph, group, phi).into_result()?;
    let m = graph.edge_count();
    let matrices = (0..group.order())
        .map(|x| {
            let edge_perm = phi.perm(x).on_edges(graph).expect("validated automorphism");
            let mut h = DMatrix::zeros(m, m);
            for e in 0..m {
                h[(edge_perm.apply(e), e)] = 1.0;
            }
            h
        })
        .collect();
    Ok(MatrixRep { matrices })
}

/// Trace vector indexed by group element.
#[derive(Clone, Debug, PartialEq)]
pub struct Character(pub Vec<f64>);

impl Character {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dot(&self, other: &Character) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    /// Values rounded to integers when within `1e-9`.
    pub fn rounded(&self) -> Vec<i64> {
        self.0.iter().map(|v| v.round() as i64).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|v| (v - v.round()).abs() < 1e-9)
    }

    pub fn approx_eq(&self, other: &Character, tol: f64) -> bool {
        self.0.len() == other.0.len()
            && self
                .0
                .iter()
                .zip(&other.0)
                .all(|(a, b)| (a - b).abs() <= tol)
    }

    /// Largest spread of values within one conjugacy class.
    pub fn class_function_defect(&self, group: &SymmetryGroup) -> f64 {
        group
            .conjugacy_classes()
            .iter()
            .map(|class| {
                let first = self.0[class[0]];
                class
                    .iter()
                    .fold(0.0_f64, |m, &c| m.max((self.0[c] - first).abs()))
            })
            .fold(0.0, f64::max)
    }
}

impl Add for &Character {
    type Output = Character;
    fn add(self, rhs: &Character) -> Character {
        Character(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Character {
    type Output = Character;
    fn sub(self, rhs: &Character) -> Character {
        Character(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

/// Componentwise product.
impl Mul for &Character {
    type Output = Character;
    fn mul(self, rhs: &Character) -> Character {
        Character(self.0.iter().zip(&rhs.0).map(|(a, b)| a * b).collect())
    }
}

pub fn character(rep: &MatrixRep) -> Character {
    Character(rep.matrices().iter().map(|m| m.trace()).collect())
}

/// `Tr(M_x)` per element.
pub fn translation_char(group: &SymmetryGroup) -> Character {
    Character(group.ops().iter().map(|o| o.matrix.trace()).collect())
}

/// Character of the rotation space, `(Tr(M)^2 - Tr(M^2)) / 2`.
pub fn rotation_char(group: &SymmetryGroup) -> Character {
    Character(
        group
            .ops()
            .iter()
            .map(|o| {
                let t = o.matrix.trace();
                (t * t - (&o.matrix * &o.matrix).trace()) / 2.0
            })
            .collect(),
    )
}

/// Fixed joints per element.
pub fn joint_char(graph: &Graph, phi: &TypeMap) -> Character {
    Character(
        fixed_counts(graph, phi)
            .iter()
            .map(|c| c.joints as f64)
            .collect(),
    )
}

/// Fixed bars per element.
pub fn bar_char(graph: &Graph, phi: &TypeMap) -> Character {
    Character(
        fixed_counts(graph, phi)
            .iter()
            .map(|c| c.bars as f64)
            .collect(),
    )
}

/// `X_J × X_T`, the character of the external representation.
pub fn external_char(graph: &Graph, group: &SymmetryGroup, phi: &TypeMap) -> Character {
    &joint_char(graph, phi) * &translation_char(group)
}

/// Real irreducible representation: name, real degree, character.
#[derive(Clone, Debug, PartialEq)]
pub struct Irrep {
    pub name: String,
    pub degree: usize,
    pub character: Character,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTable {
    irreps: Vec<Irrep>,
}

impl CharacterTable {
    /// Checks a table against the group: row length, degree equals the
    /// identity value, `‖χ‖² ∈ {|S|, 2|S|}`, class functions, pairwise
    /// orthogonal (hence non-proportional) rows.
    pub fn new(group: &SymmetryGroup, irreps: Vec<Irrep>) -> Result<Self> {
        let k = group.order() as f64;
        let bad = |msg: String| Err(Error::InvalidCharacterTable(msg));
        if irreps.is_empty() {
            return bad("no rows".into());
        }
        for irr in &irreps {
            if irr.character.len() != group.order() {
                return bad(format!(
                    "{} has {} values for a group of order {}",
                    irr.name,
                    irr.character.len(),
                    group.order()
                ));
            }
            if irr.degree == 0 || (irr.character.0[0] - irr.degree as f64).abs() > 1e-9 {
                return bad(format!("{}: value at Id must equal the degree", irr.name));
            }
            let norm = irr.character.norm_squared();
            if (norm - k).abs() > 1e-6 && (norm - 2.0 * k).abs() > 1e-6 {
                return bad(format!(
                    "{}: squared norm {norm} is neither |S| nor 2|S|",
                    irr.name
                ));
            }
            if irr.character.class_function_defect(group) > 1e-9 {
                return bad(format!("{} is not constant on conjugacy classes", irr.name));
            }
        }
        for (a, ia) in irreps.iter().enumerate() {
            for ib in &irreps[a + 1..] {
                if ia.character.dot(&ib.character).abs() > 1e-6 {
                    return bad(format!("{} and {} are not orthogonal", ia.name, ib.name));
                }
            }
        }
        Ok(CharacterTable { irreps })
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.irreps.iter().map(|i| i.name.clone()).collect()
    }
}

fn snap(v: f64) -> f64 {
    if (v - v.round()).abs() < 1e-12 {
        v.round()
    } else {
        v
    }
}

fn pair_names(count: usize) -> Vec<String> {
    if count == 1 {
        vec!["E".into()]
    } else {
        (1..=count).map(|k| format!("E{k}")).collect()
    }
}

/// Built-in real character table for the planar families.
pub fn character_table(group: &SymmetryGroup) -> Result<CharacterTable> {
    let GroupOrigin::Builtin { kind, m, .. } = *group.origin() else {
        if group.order() == 1 {
            return CharacterTable::new(group, vec![irrep("A", 1, vec![1.0])]);
        }
        return Err(Error::UnknownCharacterTable);
    };
    let irreps = match kind {
        GroupKind::C1 => vec![irrep("A", 1, vec![1.0])],
        GroupKind::Cs => vec![
            irrep("A'", 1, vec![1.0, 1.0]),
            irrep("A''", 1, vec![1.0, -1.0]),
        ],
        GroupKind::Cm => {
            let rot = |f: &dyn Fn(usize) -> f64| (0..m).map(f).collect::<Vec<_>>();
            let mut rows = vec![irrep("A", 1, rot(&|_| 1.0))];
            if m % 2 == 0 {
                rows.push(irrep(
                    "B",
                    1,
                    rot(&|j| if j.is_multiple_of(2) { 1.0 } else { -1.0 }),
                ));
            }
            let pairs = (m - 1) / 2;
            for (k, name) in (1..=pairs).zip(pair_names(pairs)) {
                rows.push(irrep(
                    &name,
                    2,
                    rot(&|j| snap(2.0 * (2.0 * PI * (k * j) as f64 / m as f64).cos())),
                ));
            }
            rows
        }
        GroupKind::Cmv => {
            let sign = |j: usize| if j.is_multiple_of(2) { 1.0 } else { -1.0 };
            let row = |r: &dyn Fn(usize) -> f64, s: &dyn Fn(usize) -> f64| {
                (0..m).map(r).chain((0..m).map(s)).collect::<Vec<_>>()
            };
            let mut rows = vec![
                irrep("A1", 1, row(&|_| 1.0, &|_| 1.0)),
                irrep("A2", 1, row(&|_| 1.0, &|_| -1.0)),
            ];
            if m % 2 == 0 {
                rows.push(irrep("B1", 1, row(&sign, &sign)));
                rows.push(irrep("B2", 1, row(&sign, &|k| -sign(k))));
            }
            let pairs = (m - 1) / 2;
            for (k, name) in (1..=pairs).zip(pair_names(pairs)) {
                rows.push(irrep(
                    &name,
                    2,
                    row(
                        &|j| snap(2.0 * (2.0 * PI * (k * j) as f64 / m as f64).cos()),
                        &|_| 0.0,
                    ),
                ));
            }
            rows
        }
    };
    CharacterTable::new(group, irreps)
}

fn irrep(name: &str, degree: usize, values: Vec<f64>) -> Irrep {
    Irrep {
        name: name.to_string(),
        degree,
        character: Character(values),
    }
}

/// Multiplicity of each irreducible in a decomposed character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplicities {
    pub names: Vec<String>,
    pub degrees: Vec<usize>,
    pub values: Vec<usize>,
}

impl Multiplicities {
    /// `Σ mult_t · deg(I_t)`.
    pub fn total_degree(&self) -> usize {
        self.values
            .iter()
            .zip(&self.degrees)
            .map(|(m, d)| m * d)
            .sum()
    }

    /// Isotypic dimensions `mult_t · deg(I_t)`.
    pub fn dimensions(&self) -> Vec<usize> {
        self.values
            .iter()
            .zip(&self.degrees)
            .map(|(m, d)| m * d)
            .collect()
    }

    pub fn get(&self, name: &str) -> Option<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.values[i])
    }
}

/// `α_t = (χ · χ_t) / ‖χ_t‖²`, required to be a non-negative integer
/// within `1e-6`.
pub fn decompose(chr: &Character, table: &CharacterTable) -> Result<Multiplicities> {
    let mut values = Vec::with_capacity(table.len());
    for irr in table.irreps() {
        if irr.character.len() != chr.len() {
            return Err(Error::DimensionMismatch(format!(
                "character has {} entries, table rows have {}",
                chr.len(),
                irr.character.len()
            )));
        }
        let alpha = chr.dot(&irr.character) / irr.character.norm_squared();
        let rounded = alpha.round();
        if (alpha - rounded).abs() > 1e-6 || rounded < 0.0 {
            return Err(Error::NonIntegralMultiplicity {
                irrep: irr.name.clone(),
                value: alpha,
            });
        }
        values.push(rounded as usize);
    }
    Ok(Multiplicities {
        names: table.names(),
        degrees: table.irreps().iter().map(|i| i.degree).collect(),
        values,
    })
}

/// Dimension of the rotation space, `C(d, 2)`.
pub fn rotation_space_dim(d: usize) -> usize {
    binomial(d, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::Graph;
    use crate::symmetry::{builtin_group_2d, group_from_generators};

    fn cs() -> SymmetryGroup {
        builtin_group_2d(GroupKind::Cs, 0, PI / 2.0).unwrap()
    }

    fn triangle_phi() -> TypeMap {
        TypeMap::from_one_based(&[vec![1, 2, 3], vec![2, 1, 3]]).unwrap()
    }

    #[test]
    fn triangle_external_rep_matches_hand_computed_matrix() {
        let h = external_rep(&Graph::complete(3), &cs(), &triangle_phi()).unwrap();
        let expected = DMatrix::from_row_slice(
            6,
            6,
            &[
                0., 0., -1., 0., 0., 0., //
                0., 0., 0., 1., 0., 0., //
                -1., 0., 0., 0., 0., 0., //
                0., 1., 0., 0., 0., 0., //
                0., 0., 0., 0., -1., 0., //
                0., 0., 0., 0., 0., 1.,
            ],
        );
        assert_eq!(h.matrix(1), &expected);
        assert_eq!(h.matrix(0), &DMatrix::identity(6, 6));
        assert_eq!(character(&h).0, vec![6.0, 0.0]);
    }

    #[test]
    fn triangle_internal_rep_matches_hand_computed_matrix() {
        let g = Graph::from_one_based(3, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        let h = internal_rep(&g, &cs(), &triangle_phi()).unwrap();
        let expected = DMatrix::from_row_slice(3, 3, &[1., 0., 0., 0., 0., 1., 0., 1., 0.]);
        assert_eq!(h.matrix(1), &expected);
        assert_eq!(character(&h).0, vec![3.0, 1.0]);
    }

    #[test]
    fn identity_rep_character() {
        let g = builtin_group_2d(GroupKind::Cm, 3, 0.0).unwrap();
        let rep = MatrixRep::new(vec![DMatrix::identity(4, 4); 3]).unwrap();
        assert_eq!(character(&rep).0, vec![4.0; 3]);
        assert_eq!(rep.homomorphism_defect(&g), 0.0);
    }

    #[test]
    fn bad_type_map_rejected_by_reps() {
        let phi = TypeMap::from_one_based(&[vec![1, 2, 3], vec![2, 3, 1]]).unwrap();
        assert!(matches!(
            external_rep(&Graph::complete(3), &cs(), &phi),
            Err(Error::InvalidTypeMap(_))
        ));
    }

    #[test]
    fn cs_and_c2v_tables() {
        let t = character_table(&cs()).unwrap();
        assert_eq!(t.names(), vec!["A'", "A''"]);
        assert_eq!(t.irreps()[1].character.0, vec![1.0, -1.0]);
        let g = builtin_group_2d(GroupKind::Cmv, 2, 0.0).unwrap();
        let t = character_table(&g).unwrap();
        let rows: Vec<Vec<f64>> = t.irreps().iter().map(|i| i.character.0.clone()).collect();
        assert_eq!(
            rows,
            vec![
                vec![1., 1., 1., 1.],
                vec![1., 1., -1., -1.],
                vec![1., -1., 1., -1.],
                vec![1., -1., -1., 1.]
            ]
        );
        let c1 = builtin_group_2d(GroupKind::C1, 0, 0.0).unwrap();
        assert_eq!(
            character_table(&c1).unwrap().irreps()[0].character.0,
            vec![1.0]
        );
    }

    #[test]
    fn cyclic_tables_have_real_pairs() {
        for m in 2..10 {
            let g = builtin_group_2d(GroupKind::Cm, m, 0.0).unwrap();
            let t = character_table(&g).unwrap();
            let total: usize = t.irreps().iter().map(|i| i.degree).sum();
            assert_eq!(total, m, "C{m}");
            let gv = builtin_group_2d(GroupKind::Cmv, m, 0.1).unwrap();
            let tv = character_table(&gv).unwrap();
            let sq: usize = tv.irreps().iter().map(|i| i.degree * i.degree).sum();
            assert_eq!(sq, 2 * m, "C{m}v");
        }
    }

    #[test]
    fn user_table_validation() {
        let g = cs();
        let ok = CharacterTable::new(
            &g,
            vec![irrep("P", 1, vec![1., 1.]), irrep("Q", 1, vec![1., -1.])],
        );
        assert!(ok.is_ok());
        let prop = CharacterTable::new(
            &g,
            vec![irrep("P", 1, vec![1., 1.]), irrep("P2", 1, vec![1., 1.])],
        );
        assert!(prop.is_err());
        let short = CharacterTable::new(&g, vec![irrep("P", 1, vec![1.])]);
        assert!(short.is_err());
        let bad_norm = CharacterTable::new(&g, vec![irrep("P", 2, vec![2., 0.5])]);
        assert!(bad_norm.is_err());
        let gen = group_from_generators(
            2,
            &[DMatrix::from_row_slice(2, 2, &[-1., 0., 0., 1.])],
            1e-9,
        )
        .unwrap();
        assert_eq!(character_table(&gen), Err(Error::UnknownCharacterTable));
    }

    #[test]
    fn decompositions() {
        let t = character_table(&cs()).unwrap();
        assert_eq!(
            decompose(&Character(vec![6., 0.]), &t).unwrap().values,
            vec![3, 3]
        );
        assert_eq!(
            decompose(&Character(vec![3., 1.]), &t).unwrap().values,
            vec![2, 1]
        );
        let g = builtin_group_2d(GroupKind::Cmv, 2, 0.0).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(
            decompose(&Character(vec![9., 1., 1., 1.]), &t)
                .unwrap()
                .values,
            vec![3, 2, 2, 2]
        );
        assert!(matches!(
            decompose(&Character(vec![1., 0., 0., 0.]), &t),
            Err(Error::NonIntegralMultiplicity { .. })
        ));
    }

    #[test]
    fn translation_and_rotation_characters() {
        assert_eq!(translation_char(&cs()).0, vec![2.0, 0.0]);
        assert_eq!(rotation_char(&cs()).0, vec![1.0, -1.0]);
        let g = builtin_group_2d(GroupKind::Cmv, 2, 0.0).unwrap();
        assert_eq!(translation_char(&g).0, vec![2.0, -2.0, 0.0, 0.0]);
        assert_eq!(rotation_char(&g).0, vec![1.0, 1.0, -1.0, -1.0]);
        let id3 = group_from_generators(3, &[], 1e-9).unwrap();
        assert_eq!(translation_char(&id3).0, vec![3.0]);
        assert_eq!(rotation_char(&id3).0, vec![3.0]);
    }

    #[test]
    fn planar_rotation_character_is_plus_minus_one() {
        for m in 2..9 {
            let g = builtin_group_2d(GroupKind::Cmv, m, 0.7).unwrap();
            let r = rotation_char(&g);
            for x in 0..g.order() {
                let expected = if x < m { 1.0 } else { -1.0 };
                assert!((r.0[x] - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn direct_sum_character_adds() {
        let g = builtin_group_2d(GroupKind::Cmv, 3, 0.0).unwrap();
        let t = translation_char(&g);
        let rep_t = MatrixRep::new(g.ops().iter().map(|o| o.matrix.clone()).collect()).unwrap();
        let sum = rep_t.direct_sum(&rep_t);
        assert!(character(&sum).approx_eq(&(&t + &t), 1e-12));
        assert!(sum.homomorphism_defect(&g) < 1e-12);
    }
}
