//! The symmetry-extended Maxwell rule `X_J × X_T - X_T - X_R = X_i`.

use crate::error::{Error, Result};
use crate::framework::{affine_span_dim, Framework};
use crate::linalg::Tolerance;
use crate::representations::{
    bar_char, decompose, joint_char, rotation_char, translation_char, Character, CharacterTable,
    Multiplicities,
};
use crate::symmetry::{is_compatible, validate_type_map, SymmetryGroup, TypeMap};

#[derive(Clone, Debug, PartialEq)]
pub struct MaxwellReport {
    pub labels: Vec<String>,
    pub x_j: Character,
    pub x_t: Character,
    pub x_r: Character,
    pub x_q: Character,
    pub x_i: Character,
    /// Multiplicities of `X_Q`.
    pub kappa: Multiplicities,
    /// Multiplicities of `X_i`.
    pub mu: Multiplicities,
    pub passes: bool,
}

impl MaxwellReport {
    /// `κ_t - μ_t` per irreducible.
    pub fn gaps(&self) -> Vec<i64> {
        self.kappa
            .values
            .iter()
            .zip(&self.mu.values)
            .map(|(&k, &m)| k as i64 - m as i64)
            .collect()
    }
}

pub fn symmetry_maxwell(
    fw: &Framework,
    group: &SymmetryGroup,
    phi: &TypeMap,
    table: &CharacterTable,
    tol: &Tolerance,
) -> Result<MaxwellReport> {
    tol.validate()?;
    if group.dim() != fw.dim() {
        return Err(Error::DimensionMismatch(format!(
            "group acts on dimension {}, framework lives in {}",
            group.dim(),
            fw.dim()
        )));
    }
    validate_type_map(fw.graph(), group, phi).into_result()?;
    if !is_compatible(fw, group, phi, tol) {
        return Err(Error::Incompatible);
    }
    let span = affine_span_dim(fw.config());
    if span < fw.dim() {
        return Err(Error::SpanDeficient {
            span,
            dim: fw.dim(),
        });
    }
    let x_j = joint_char(fw.graph(), phi);
    let x_t = translation_char(group);
    let x_r = rotation_char(group);
    let x_q = &(&(&x_j * &x_t) - &x_t) - &x_r;
    let x_i = bar_char(fw.graph(), phi);
    let kappa = decompose(&x_q, table)?;
    let mu = decompose(&x_i, table)?;
    let passes = x_q.approx_eq(&x_i, 1e-9);
    debug_assert_eq!(passes, kappa == mu);
    Ok(MaxwellReport {
        labels: group.labels(),
        x_j,
        x_t,
        x_r,
        x_q,
        x_i,
        kappa,
        mu,
        passes,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FindingKind {
    /// `κ_t > μ_t`: symmetric flexes and as many unresolvable loads.
    Flex,
    /// `μ_t > κ_t`: symmetric self-stresses.
    SelfStress,
}

/// Lower bound on symmetric flexes or self-stresses in one irreducible,
/// counted in copies of that irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub irrep: String,
    pub kind: FindingKind,
    pub count: usize,
}

impl Finding {
    pub fn describe(&self) -> String {
        let k = self.count;
        match self.kind {
            FindingKind::Flex => format!(
                "{}: at least {k} symmetric flex(es) and {k} symmetric unresolvable load(s)",
                self.irrep
            ),
            FindingKind::SelfStress => {
                format!("{}: at least {k} symmetric self-stress(es)", self.irrep)
            }
        }
    }
}

pub fn interpret_gaps(report: &MaxwellReport, table: &CharacterTable) -> Vec<Finding> {
    report
        .gaps()
        .into_iter()
        .zip(table.irreps())
        .filter(|(g, _)| *g != 0)
        .map(|(g, irr)| Finding {
            irrep: irr.name.clone(),
            kind: if g > 0 {
                FindingKind::Flex
            } else {
                FindingKind::SelfStress
            },
            count: g.unsigned_abs() as usize,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::{Configuration, Graph};
    use crate::representations::character_table;
    use crate::rigidity::maxwell_count;
    use crate::symmetry::{builtin_group_2d, GroupKind};
    use std::f64::consts::PI;

    #[test]
    fn triangle_passes() {
        let fw = Framework::new(
            Graph::from_one_based(3, &[(1, 2), (1, 3), (2, 3)]).unwrap(),
            Configuration::from_integers(2, &[&[-1, 0], &[1, 0], &[0, 2]]).unwrap(),
        )
        .unwrap();
        let g = builtin_group_2d(GroupKind::Cs, 0, PI / 2.0).unwrap();
        let phi = TypeMap::from_one_based(&[vec![1, 2, 3], vec![2, 1, 3]]).unwrap();
        let table = character_table(&g).unwrap();
        let r = symmetry_maxwell(&fw, &g, &phi, &table, &Tolerance::default()).unwrap();
        assert_eq!(r.x_q.rounded(), vec![3, 1]);
        assert_eq!(r.x_i.rounded(), vec![3, 1]);
        assert!(r.passes);
        assert!(interpret_gaps(&r, &table).is_empty());
    }

    #[test]
    fn trivial_group_reduces_to_plain_count() {
        let fw = Framework::new(
            Graph::from_one_based(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap(),
            Configuration::from_integers(2, &[&[0, 0], &[5, 1], &[2, 7], &[-3, 4]]).unwrap(),
        )
        .unwrap();
        let g = builtin_group_2d(GroupKind::C1, 0, 0.0).unwrap();
        let table = character_table(&g).unwrap();
        let r = symmetry_maxwell(
            &fw,
            &g,
            &TypeMap::trivial(1, 4),
            &table,
            &Tolerance::default(),
        )
        .unwrap();
        assert!(!r.passes);
        assert_eq!(maxwell_count(&fw).unwrap(), -1);
        let f = interpret_gaps(&r, &table);
        assert_eq!(f.len(), 1);
        assert_eq!((f[0].kind, f[0].count), (FindingKind::Flex, 1));
    }
}
