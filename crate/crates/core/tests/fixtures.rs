mod common;

use std::f64::consts::SQRT_2;

use nalgebra::{DMatrix, DVector};
use num_rational::BigRational;
use symrig_core::blockdiag::intertwining_defect;
use symrig_core::exact::exact_rank;
use symrig_core::framework::{affine_span_dim, rigid_motion_basis};
use symrig_core::representations::{
    bar_char, external_char, joint_char, rotation_char, translation_char,
};
use symrig_core::rigidity::exact_rigidity_rank;
use symrig_core::*;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

#[test]
fn k3_rigidity_matrix_is_exact() {
    let (fw, _, _) = common::k3();
    let expected = [
        [-2, 0, 2, 0, 0, 0],
        [-1, -2, 0, 0, 1, 2],
        [0, 0, 1, -2, -1, 2],
    ];
    let exact = fw.rigidity_matrix_exact().unwrap();
    for (row, want) in exact.iter().zip(expected) {
        assert_eq!(row, &want.iter().map(|&v| q(v)).collect::<Vec<_>>());
    }
    assert_eq!(exact_rank(&exact).unwrap(), 3);
}

#[test]
fn k3_rotation_basis_blocks() {
    let (fw, _, _) = common::k3();
    let basis = rigid_motion_basis(fw.config());
    assert_eq!(basis.len(), 3);
    assert_eq!(basis[0].as_slice(), &[1.0, 0.0, 1.0, 0.0, 1.0, 0.0]);
    assert_eq!(basis[2].as_slice(), &[0.0, -1.0, 0.0, 1.0, -2.0, 0.0]);
}

#[test]
fn k3_characters_and_decomposition() {
    let (fw, g, phi) = common::k3();
    let table = character_table(&g).unwrap();
    let he = external_rep(fw.graph(), &g, &phi).unwrap();
    let hi = internal_rep(fw.graph(), &g, &phi).unwrap();
    assert_eq!(character(&he).rounded(), vec![6, 0]);
    assert_eq!(character(&hi).rounded(), vec![3, 1]);
    assert_eq!(
        decompose(&character(&he), &table).unwrap().values,
        vec![3, 3]
    );
    assert_eq!(
        decompose(&character(&hi), &table).unwrap().values,
        vec![2, 1]
    );
    assert_eq!(joint_char(fw.graph(), &phi).rounded(), vec![3, 1]);
    let md = motion_space_decomposition(&fw, &g, &phi, &table, &Tolerance::default()).unwrap();
    assert_eq!(md.dim_q, vec![2, 1]);
    assert!(
        symmetry_maxwell(&fw, &g, &phi, &table, &Tolerance::default())
            .unwrap()
            .passes
    );
}

/// The symmetry-adapted bases written out by hand for the triangle.
pub fn hand_bases() -> (DMatrix<f64>, DMatrix<f64>) {
    let h = 1.0 / SQRT_2;
    #[rustfmt::skip]
    let te = DMatrix::from_row_slice(6, 6, &[
        h,   0.0, 0.0, h,   0.0, 0.0,
        0.0, h,   0.0, 0.0, h,   0.0,
        -h,  0.0, 0.0, h,   0.0, 0.0,
        0.0, h,   0.0, 0.0, -h,  0.0,
        0.0, 0.0, 0.0, 0.0, 0.0, 1.0,
        0.0, 0.0, 1.0, 0.0, 0.0, 0.0,
    ]);
    #[rustfmt::skip]
    let ti = DMatrix::from_row_slice(3, 3, &[
        1.0, 0.0, 0.0,
        0.0, h,   h,
        0.0, h,   -h,
    ]);
    (te, ti)
}

#[test]
fn k3_injected_bases_reproduce_hand_block_form() {
    let (fw, _, _) = common::k3();
    let t = Tolerance::default();
    let (te, ti) = hand_bases();
    let names = vec!["A'".to_string(), "A''".to_string()];
    let te = SymmetryAdaptedBasis::from_parts(te, names.clone(), &[3, 3], &t).unwrap();
    let ti = SymmetryAdaptedBasis::from_parts(ti, names, &[2, 1], &t).unwrap();
    let bdf = block_diagonalize_with_bases(&fw, ti, te, &t).unwrap();
    let r2 = 2.0 * SQRT_2;
    #[rustfmt::skip]
    let expected = DMatrix::from_row_slice(3, 6, &[
        -r2,  0.0, 0.0, 0.0,  0.0,  0.0,
        -1.0, -2.0, r2, 0.0,  0.0,  0.0,
        0.0,  0.0, 0.0, -1.0, -2.0, SQRT_2,
    ]);
    assert!((&bdf.transformed - expected).amax() < 1e-12);
}

#[test]
fn k33_characters() {
    let (fw, g, phi) = common::k33();
    let table = character_table(&g).unwrap();
    assert_eq!(g.labels(), vec!["Id", "C2", "s_h", "s_v"]);
    assert_eq!(joint_char(fw.graph(), &phi).rounded(), vec![6, 0, 0, 2]);
    assert_eq!(translation_char(&g).rounded(), vec![2, -2, 0, 0]);
    assert_eq!(rotation_char(&g).rounded(), vec![1, 1, -1, -1]);
    assert_eq!(bar_char(fw.graph(), &phi).rounded(), vec![9, 3, 3, 1]);
    let xe = external_char(fw.graph(), &g, &phi);
    assert_eq!(xe.rounded(), vec![12, 0, 0, 0]);
    let he = external_rep(fw.graph(), &g, &phi).unwrap();
    assert!(character(&he).approx_eq(&xe, 1e-12));

    let report = symmetry_maxwell(&fw, &g, &phi, &table, &Tolerance::default()).unwrap();
    assert_eq!(report.x_q.rounded(), vec![9, 1, 1, 1]);
    assert_eq!(report.kappa.values, vec![3, 2, 2, 2]);
    assert_eq!(report.mu.values, vec![4, 2, 2, 1]);
    assert!(!report.passes);
    let findings = interpret_gaps(&report, &table);
    assert_eq!(
        findings,
        vec![
            Finding {
                irrep: "A1".into(),
                kind: FindingKind::SelfStress,
                count: 1
            },
            Finding {
                irrep: "B2".into(),
                kind: FindingKind::Flex,
                count: 1
            },
        ]
    );
}

#[test]
fn k33_ranks_and_block_counts() {
    let (fw, g, phi) = common::k33();
    let t = Tolerance::default();
    assert_eq!(exact_rigidity_rank(&fw), Some(8));
    let a = infinitesimal_analysis(&fw, &t).unwrap();
    assert_eq!((a.rank, a.nullity, a.flex_count), (8, 4, 1));
    assert!(!a.infinitesimally_rigid);
    assert_eq!(self_stresses(&fw, &t).unwrap().ncols(), 1);
    assert!(!is_isostatic(&fw, &t).unwrap().isostatic);
    assert_eq!(maxwell_count(&fw).unwrap(), 0);

    let table = character_table(&g).unwrap();
    let bdf = block_diagonalize(&fw, &g, &phi, &table, &t).unwrap();
    assert_eq!(bdf.block_shapes(), vec![(4, 3), (2, 3), (2, 3), (1, 3)]);
    let md = motion_space_decomposition(&fw, &g, &phi, &table, &t).unwrap();
    assert_eq!(md.dim_q, vec![3, 2, 2, 2]);
    let br = block_rank_analysis(&bdf, &md, &t).unwrap();
    let stress: Vec<usize> = br.iter().map(|b| b.stress_dim).collect();
    let flex: Vec<usize> = br.iter().map(|b| b.flex_dim).collect();
    assert_eq!(stress, vec![1, 0, 0, 0]);
    assert_eq!(flex, vec![0, 0, 0, 1]);
    assert_eq!(bdf.block_ranks(&t).iter().sum::<usize>(), 8);
}

#[test]
fn k33_flex_is_b2_symmetric() {
    let (fw, g, phi) = common::k33();
    let a = infinitesimal_analysis(&fw, &Tolerance::default()).unwrap();
    let u = a.flex_basis.column(0).into_owned();
    let he = external_rep(fw.graph(), &g, &phi).unwrap();
    let b2 = [1.0, -1.0, -1.0, 1.0];
    for (x, sign) in b2.iter().enumerate() {
        assert!((he.matrix(x) * &u - &u * *sign).amax() < 1e-9);
    }
}

#[test]
fn k33_b2_load_is_unresolvable() {
    let (fw, _, _) = common::k33();
    let t = Tolerance::default();
    let l = DVector::from_vec(vec![3., -1., -3., -1., 0., 2., 0., 2., -3., -1., 3., -1.]);
    assert!(is_equilibrium_load(&fw, &l, &t).unwrap());
    assert!(!resolve_load(&fw, &l, &t).unwrap().is_resolved());
    assert!(flex_load_duality_check(&fw, 2, 3, &t).unwrap());
}

#[test]
fn k33_intertwining() {
    let (fw, g, phi) = common::k33();
    let r = fw.rigidity_matrix();
    let he = external_rep(fw.graph(), &g, &phi).unwrap();
    let hi = internal_rep(fw.graph(), &g, &phi).unwrap();
    assert!(intertwining_defect(&r, &he, &hi) < 1e-12);
}

#[test]
fn moved_joint_breaks_compatibility() {
    let (fw, g, phi) = common::k3();
    let moved = Framework::new(
        fw.graph().clone(),
        Configuration::new(2, vec![vec![-1.0, 0.0], vec![1.0, 0.0], vec![0.1, 2.0]]).unwrap(),
    )
    .unwrap();
    assert!(is_compatible(&fw, &g, &phi, &Tolerance::default()));
    assert!(!is_compatible(&moved, &g, &phi, &Tolerance::default()));
    let table = character_table(&g).unwrap();
    assert_eq!(
        block_diagonalize(&moved, &g, &phi, &table, &Tolerance::default()),
        Err(Error::Incompatible)
    );
}

#[test]
fn generic_k4_and_k4_minus_edge() {
    let t = Tolerance::default();
    let k4 = common::k4();
    assert_eq!(exact_rigidity_rank(&k4), Some(5));
    assert!(!is_isostatic(&k4, &t).unwrap().isostatic);
    let k4m = common::k4_minus_edge();
    assert_eq!(maxwell_count(&k4m).unwrap(), 0);
    assert!(is_isostatic(&k4m, &t).unwrap().isostatic);
}

#[test]
fn affine_spans() {
    let (fw, _, _) = common::k3();
    assert_eq!(affine_span_dim(fw.config()), 2);
    let same = Configuration::new(2, vec![vec![1.0, 1.0]; 3]).unwrap();
    assert_eq!(affine_span_dim(&same), 0);
    let coplanar =
        Configuration::from_integers(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[3, 5, 0]]).unwrap();
    assert_eq!(affine_span_dim(&coplanar), 2);
}

#[test]
fn raw_rigidity_matrix_has_zero_row_for_coincident_pair() {
    let g = Graph::from_one_based(2, &[(1, 2)]).unwrap();
    let c = Configuration::from_integers(2, &[&[0, 0], &[0, 0]]).unwrap();
    let r = symrig_core::framework::rigidity_matrix_raw(&g, &c).unwrap();
    assert_eq!(r, DMatrix::zeros(1, 4));
    assert!(Framework::new(g, c).is_err());
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn coincident_joints_admit_two_type_maps() {
    // 4-cycle 3-1-4-2-3 with joints 1 and 2 placed at the same point on the
    // mirror.
    let fw = Framework::new(
        Graph::from_one_based(4, &[(3, 1), (1, 4), (4, 2), (2, 3)]).unwrap(),
        Configuration::from_integers(2, &[&[0, 1], &[0, 1], &[-1, 0], &[1, 0]]).unwrap(),
    )
    .unwrap();
    let g = builtin_group_2d(GroupKind::Cs, 0, std::f64::consts::PI / 2.0).unwrap();
    let t = Tolerance::default();
    let found = find_type_maps(&fw, &g, &t).unwrap();
    let images: Vec<String> = found.iter().map(|m| m.perm(1).cycle_notation()).collect();
    assert_eq!(found.len(), 2, "{images:?}");

    let brute: Vec<TypeMap> = all_permutations(4)
        .into_iter()
        .map(|p| TypeMap::new(vec![Permutation::identity(4), Permutation(p)]))
        .filter(|phi| {
            validate_type_map(fw.graph(), &g, phi).is_valid() && is_compatible(&fw, &g, phi, &t)
        })
        .collect();
    assert_eq!(brute.len(), found.len());
    for phi in &brute {
        assert!(found.contains(phi));
    }
    for phi in &found {
        let report = symmetry_maxwell(&fw, &g, phi, &character_table(&g).unwrap(), &t).unwrap();
        assert_eq!(report.x_i.values()[0], 4.0);
    }
}
