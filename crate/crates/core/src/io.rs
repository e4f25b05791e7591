//! JSON wire types for bodies, maps, surjections and split requests.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::geometry::{LinearSurjection, Matrix, Vector};
use crate::set_valued::{families, Domain, SetValuedMap};

/// Version of every report and request schema emitted by the toolkit.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum BodyJson {
    Vpolytope {
        vertices: Vec<Vec<f64>>,
    },
    Ball {
        center: Vec<f64>,
        radius: f64,
    },
    Sum {
        terms: Vec<BodyJson>,
    },
    AffineImage {
        matrix: Vec<Vec<f64>>,
        offset: Vec<f64>,
        body: Box<BodyJson>,
    },
    Product {
        factors: Vec<BodyJson>,
    },
    /// A named example body; read only, never written.
    Zoo {
        name: String,
        #[serde(default = "default_arc_points")]
        arc_points: usize,
    },
}

fn default_arc_points() -> usize {
    720
}

fn vector(v: &[f64]) -> Vector {
    Vector::from_column_slice(v)
}

fn rows(m: &Matrix) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| m.row(i).iter().copied().collect())
        .collect()
}

pub fn matrix_from_rows(rows: &[Vec<f64>]) -> Result<Matrix> {
    let k = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != m) {
        return Err(Error::Config("matrix rows differ in length".into()));
    }
    Ok(Matrix::from_fn(k, m, |i, j| rows[i][j]))
}

impl BodyJson {
    pub fn to_body(&self) -> Result<ConvexBody> {
        match self {
            Self::Vpolytope { vertices } => {
                ConvexBody::polytope(vertices.iter().map(|v| vector(v)).collect())
            }
            Self::Ball { center, radius } => ConvexBody::ball(vector(center), *radius),
            Self::Sum { terms } => {
                ConvexBody::sum(terms.iter().map(Self::to_body).collect::<Result<_>>()?)
            }
            Self::AffineImage {
                matrix,
                offset,
                body,
            } => {
                ConvexBody::affine_image(matrix_from_rows(matrix)?, vector(offset), body.to_body()?)
            }
            Self::Product { factors } => {
                ConvexBody::product(factors.iter().map(Self::to_body).collect::<Result<_>>()?)
            }
            Self::Zoo { name, arc_points } => crate::pset::body_zoo(name, *arc_points),
        }
    }

    pub fn from_body(body: &ConvexBody) -> Self {
        let list = |v: &Vector| v.iter().copied().collect::<Vec<f64>>();
        match body {
            ConvexBody::VPolytope { vertices } => Self::Vpolytope {
                vertices: vertices.iter().map(list).collect(),
            },
            ConvexBody::Ball { center, radius } => Self::Ball {
                center: list(center),
                radius: *radius,
            },
            ConvexBody::Sum { terms } => Self::Sum {
                terms: terms.iter().map(Self::from_body).collect(),
            },
            ConvexBody::AffineImage {
                matrix,
                offset,
                body,
            } => Self::AffineImage {
                matrix: rows(matrix),
                offset: list(offset),
                body: Box::new(Self::from_body(body)),
            },
            ConvexBody::Product { factors } => Self::Product {
                factors: factors.iter().map(Self::from_body).collect(),
            },
        }
    }
}

pub fn body_from_json(text: &str) -> Result<ConvexBody> {
    let j: BodyJson =
        serde_json::from_str(text).map_err(|e| Error::Config(format!("body JSON: {e}")))?;
    j.to_body()
}

pub fn body_to_json(body: &ConvexBody) -> String {
    serde_json::to_string(&BodyJson::from_body(body)).expect("bodies serialize")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DomainJson {
    Interval { a: f64, b: f64, n: usize },
    Points { points: Vec<Vec<f64>> },
}

impl DomainJson {
    pub fn to_domain(&self) -> Result<Domain> {
        match self {
            Self::Interval { a, b, n } => Domain::interval(*a, *b, *n),
            Self::Points { points } => {
                Domain::from_points(points.iter().map(|p| vector(p)).collect())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum MapJson {
    GridMap {
        domain: DomainJson,
        bodies: Vec<BodyJson>,
    },
    Family {
        name: String,
        #[serde(default)]
        params: Value,
    },
}

impl MapJson {
    pub fn to_map(&self) -> Result<SetValuedMap> {
        match self {
            Self::GridMap { domain, bodies } => SetValuedMap::from_bodies(
                "grid_map",
                domain.to_domain()?,
                bodies
                    .iter()
                    .map(BodyJson::to_body)
                    .collect::<Result<_>>()?,
            ),
            Self::Family { name, params } => {
                let params = if params.is_null() {
                    Value::Object(Default::default())
                } else {
                    params.clone()
                };
                families::by_name(name, &params)
            }
        }
    }
}

pub fn map_from_json(text: &str) -> Result<SetValuedMap> {
    let j: MapJson =
        serde_json::from_str(text).map_err(|e| Error::Config(format!("map JSON: {e}")))?;
    j.to_map()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurjectionJson {
    pub matrix: Vec<Vec<f64>>,
}

impl SurjectionJson {
    pub fn to_surjection(&self) -> Result<LinearSurjection> {
        LinearSurjection::new(matrix_from_rows(&self.matrix)?)
    }
}

/// Input of `split`. Sum mode reads `a`, `b` and the points `c` to split
/// (`selection`); the other modes read `f1`, `f2` and the selection samples,
/// plus `surjection` and `epsilon` where needed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitRequest {
    pub mode: String,
    #[serde(default)]
    pub a: Option<BodyJson>,
    #[serde(default)]
    pub b: Option<BodyJson>,
    #[serde(default)]
    pub domain: Option<DomainJson>,
    #[serde(default)]
    pub f1: Option<MapJson>,
    #[serde(default)]
    pub f2: Option<MapJson>,
    #[serde(default)]
    pub surjection: Option<SurjectionJson>,
    pub selection: Vec<Vec<f64>>,
    #[serde(default)]
    pub epsilon: Option<f64>,
}

impl SplitRequest {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("split request JSON: {e}")))
    }

    pub fn selection_vectors(&self) -> Vec<Vector> {
        self.selection.iter().map(|v| vector(v)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn body_round_trip_is_exact() {
        let body = ConvexBody::sum(vec![
            ConvexBody::polytope(vec![
                vector(&[0.1, 0.7]),
                vector(&[1.0 / 3.0, -2.5]),
                vector(&[-1e-7, 4.0]),
            ])
            .unwrap(),
            ConvexBody::ball(vector(&[std::f64::consts::PI, 0.2]), 0.3).unwrap(),
        ])
        .unwrap();
        let text = body_to_json(&body);
        assert_eq!(body_from_json(&text).unwrap(), body);
        assert_eq!(body_to_json(&body_from_json(&text).unwrap()), text);
    }

    #[test]
    fn schema_tags() {
        let b = body_from_json(r#"{"type":"ball","center":[0,0],"radius":1}"#).unwrap();
        assert_eq!(b.dim(), 2);
        assert!(body_from_json(r#"{"type":"torus"}"#).is_err());
        let m = map_from_json(r#"{"type":"grid_map","domain":{"kind":"interval","a":0.0,"b":1.0,"n":2},"bodies":[{"type":"ball","center":[0],"radius":1},{"type":"ball","center":[1],"radius":1}]}"#).unwrap();
        assert_eq!(m.len(), 2);
        let f = map_from_json(r#"{"type":"family","name":"translating_ball","params":{"n":4}}"#)
            .unwrap();
        assert_eq!(f.len(), 4);
    }
}
