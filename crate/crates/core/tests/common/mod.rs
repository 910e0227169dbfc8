#![allow(dead_code)]

use std::f64::consts::PI;

use symrig_core::{
    builtin_group_2d, Configuration, Framework, Graph, GroupKind, SymmetryGroup, TypeMap,
};

pub fn k3() -> (Framework, SymmetryGroup, TypeMap) {
    let fw = Framework::new(
        Graph::from_one_based(3, &[(1, 2), (1, 3), (2, 3)]).unwrap(),
        Configuration::from_integers(2, &[&[-1, 0], &[1, 0], &[0, 2]]).unwrap(),
    )
    .unwrap();
    let g = builtin_group_2d(GroupKind::Cs, 0, PI / 2.0).unwrap();
    let phi = TypeMap::from_one_based(&[vec![1, 2, 3], vec![2, 1, 3]]).unwrap();
    (fw, g, phi)
}

pub fn k33() -> (Framework, SymmetryGroup, TypeMap) {
    let graph = Graph::from_one_based(
        6,
        &[
            (1, 4),
            (1, 5),
            (1, 6),
            (2, 4),
            (2, 5),
            (2, 6),
            (3, 4),
            (3, 5),
            (3, 6),
        ],
    )
    .unwrap();
    let config = Configuration::from_integers(
        2,
        &[&[-3, 1], &[3, 1], &[0, -2], &[0, 2], &[-3, -1], &[3, -1]],
    )
    .unwrap();
    let g = builtin_group_2d(GroupKind::Cmv, 2, 0.0).unwrap();
    let phi = TypeMap::from_one_based(&[
        vec![1, 2, 3, 4, 5, 6],
        vec![6, 5, 4, 3, 2, 1],
        vec![5, 6, 4, 3, 1, 2],
        vec![2, 1, 3, 4, 6, 5],
    ])
    .unwrap();
    (Framework::new(graph, config).unwrap(), g, phi)
}

pub fn collinear_triangle() -> Framework {
    Framework::new(
        Graph::from_one_based(3, &[(1, 2), (1, 3), (2, 3)]).unwrap(),
        Configuration::from_integers(2, &[&[0, 0], &[2, 0], &[1, 0]]).unwrap(),
    )
    .unwrap()
}

pub fn k4() -> Framework {
    Framework::new(
        Graph::complete(4),
        Configuration::from_integers(2, &[&[0, 0], &[5, 1], &[2, 7], &[-3, 4]]).unwrap(),
    )
    .unwrap()
}

pub fn k4_minus_edge() -> Framework {
    Framework::new(
        Graph::from_one_based(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]).unwrap(),
        Configuration::from_integers(2, &[&[0, 0], &[5, 1], &[2, 7], &[-3, 4]]).unwrap(),
    )
    .unwrap()
}
