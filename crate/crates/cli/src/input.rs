//! The JSON framework document and its conversion into library values.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use serde_json::Number;
use symrig_core::exact::{parse_rational, rational_from_integral_f64};
use symrig_core::representations::Irrep;
use symrig_core::{
    builtin_group_2d, character_table, group_from_generators, Character, CharacterTable,
    Configuration, Framework, Graph, GroupKind, SymmetryGroup, TypeMap,
};

use crate::CliError;

/// A coordinate is a JSON number or a rational string such as `"-3/2"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coordinate {
    Number(Number),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Builtin {
        builtin: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        mirror_angle: Option<f64>,
    },
    Generators {
        generators: Vec<Vec<Vec<f64>>>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub name: String,
    pub degree: usize,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameworkFile {
    pub dimension: usize,
    pub coordinates: Vec<Vec<Coordinate>>,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<BTreeMap<String, Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character_table: Option<Vec<TableRow>>,
}

impl FrameworkFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    /// True when every coordinate is an integer JSON number or a string.
    pub fn is_rational(&self) -> bool {
        self.coordinates.iter().flatten().all(|c| match c {
            Coordinate::Number(n) => n.is_i64() || n.is_u64(),
            Coordinate::Text(_) => true,
        })
    }

    pub fn framework(&self) -> Result<Framework, CliError> {
        let d = self.dimension;
        let n = self.coordinates.len();
        if self.coordinates.iter().any(|p| p.len() != d) {
            return Err(CliError::Validation(format!(
                "every point needs {d} coordinates"
            )));
        }
        let config = if self.is_rational() {
            let coords = self
                .coordinates
                .iter()
                .map(|p| {
                    p.iter()
                        .map(exact_coordinate)
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Configuration::from_rational(d, coords)?
        } else {
            let coords = self
                .coordinates
                .iter()
                .map(|p| {
                    p.iter()
                        .map(float_coordinate)
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Configuration::new(d, coords)?
        };
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        let graph = Graph::from_one_based(n, &edges)?;
        Ok(Framework::new(graph, config)?)
    }

    pub fn group(&self) -> Result<SymmetryGroup, CliError> {
        match &self.group {
            None => Ok(group_from_generators(self.dimension, &[], 1e-9)?),
            Some(GroupSpec::Builtin {
                builtin,
                m,
                mirror_angle,
            }) => {
                if self.dimension != 2 {
                    return Err(CliError::Validation(
                        "built-in groups act on the plane".into(),
                    ));
                }
                let kind = match builtin.as_str() {
                    "C1" => GroupKind::C1,
                    "Cs" => GroupKind::Cs,
                    "Cm" => GroupKind::Cm,
                    "Cmv" => GroupKind::Cmv,
                    other => {
                        return Err(CliError::Validation(format!(
                            "unknown built-in group {other:?}"
                        )))
                    }
                };
                Ok(builtin_group_2d(
                    kind,
                    m.unwrap_or(0),
                    mirror_angle.unwrap_or(0.0),
                )?)
            }
            Some(GroupSpec::Generators { generators }) => {
                let d = self.dimension;
                let mats = generators
                    .iter()
                    .map(|g| {
                        if g.len() != d || g.iter().any(|r| r.len() != d) {
                            return Err(CliError::Validation(format!(
                                "generators must be {d}x{d}"
                            )));
                        }
                        Ok(DMatrix::from_fn(d, d, |i, j| g[i][j]))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(group_from_generators(d, &mats, 1e-9)?)
            }
        }
    }

    /// The supplied table, or the built-in one for the group.
    pub fn table(&self, group: &SymmetryGroup) -> Result<CharacterTable, CliError> {
        match &self.character_table {
            Some(rows) => {
                let irreps = rows
                    .iter()
                    .map(|r| Irrep {
                        name: r.name.clone(),
                        degree: r.degree,
                        character: Character(r.values.clone()),
                    })
                    .collect();
                Ok(CharacterTable::new(group, irreps)?)
            }
            None => Ok(character_table(group)?),
        }
    }

    /// The type map named in the file, ordered like the group elements.
    /// The identity may be omitted.
    pub fn type_map(&self, group: &SymmetryGroup) -> Result<Option<TypeMap>, CliError> {
        let Some(phi) = &self.phi else {
            return Ok(None);
        };
        let n = self.coordinates.len();
        for label in phi.keys() {
            if group.index_of(label).is_none() {
                return Err(CliError::TypeMap(format!(
                    "phi names unknown operation {label:?}"
                )));
            }
        }
        let images = group
            .labels()
            .iter()
            .enumerate()
            .map(|(x, label)| match phi.get(label) {
                Some(img) => Ok(img.clone()),
                None if x == 0 => Ok((1..=n).collect()),
                None => Err(CliError::TypeMap(format!("phi has no entry for {label:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if images.iter().any(|img| img.len() != n) {
            return Err(CliError::TypeMap(format!(
                "every image list needs {n} entries"
            )));
        }
        TypeMap::from_one_based(&images)
            .map(Some)
            .map_err(|e| CliError::TypeMap(e.to_string()))
    }

    /// Writes a framework back as a document, keeping exact coordinates
    /// exact.
    pub fn from_framework(fw: &Framework) -> Self {
        let coordinates = match fw.config().exact() {
            Some(exact) => exact
                .iter()
                .map(|p| {
                    p.iter()
                        .map(|q| {
                            if q.is_integer() {
                                match q.to_integer().to_string().parse::<i64>() {
                                    Ok(i) => Coordinate::Number(i.into()),
                                    Err(_) => Coordinate::Text(q.to_string()),
                                }
                            } else {
                                Coordinate::Text(q.to_string())
                            }
                        })
                        .collect()
                })
                .collect(),
            None => fw
                .config()
                .points()
                .iter()
                .map(|p| {
                    p.iter()
                        .map(|&v| {
                            Coordinate::Number(Number::from_f64(v).expect("finite coordinate"))
                        })
                        .collect()
                })
                .collect(),
        };
        FrameworkFile {
            dimension: fw.dim(),
            coordinates,
            edges: fw
                .graph()
                .edges()
                .iter()
                .map(|&(a, b)| [a + 1, b + 1])
                .collect(),
            group: None,
            phi: None,
            character_table: None,
        }
    }
}

fn exact_coordinate(c: &Coordinate) -> Result<num_rational::BigRational, CliError> {
    match c {
        Coordinate::Number(n) => n
            .as_f64()
            .and_then(rational_from_integral_f64)
            .ok_or_else(|| CliError::Parse(format!("coordinate {n} is not an integer"))),
        Coordinate::Text(t) => parse_rational(t).map_err(CliError::from),
    }
}

fn float_coordinate(c: &Coordinate) -> Result<f64, CliError> {
    match c {
        Coordinate::Number(n) => n
            .as_f64()
            .ok_or_else(|| CliError::Parse(format!("coordinate {n} is not finite"))),
        Coordinate::Text(t) => Ok(symrig_core::exact::to_f64(&parse_rational(t)?)),
    }
}
