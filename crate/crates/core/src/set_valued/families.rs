//! Closed-form families of convex bodies indexed by a scalar parameter.

use serde_json::Value;

use super::{Domain, SetValuedMap};
use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::geometry::{Matrix, Vector};

/// `x ↦ B_r(center + x·direction)`.
pub fn translating_ball(
    radius: f64,
    center: Vector,
    direction: Vector,
    domain: Domain,
) -> Result<SetValuedMap> {
    if center.len() != direction.len() {
        return Err(Error::Dim {
            expected: direction.len(),
            got: center.len(),
        });
    }
    SetValuedMap::from_fn("translating_ball", domain, move |x| {
        ConvexBody::ball(&center + &direction * x[0], radius)
    })
}

/// `x ↦ B_x(center)`.
pub fn scaling_ball(center: Vector, domain: Domain) -> Result<SetValuedMap> {
    SetValuedMap::from_fn("scaling_ball", domain, move |x| {
        if x[0] < 0.0 {
            return Err(Error::Config(
                "scaling ball needs a nonnegative parameter".into(),
            ));
        }
        ConvexBody::ball(center.clone(), x[0])
    })
}

pub fn rotation(angle: f64) -> Matrix {
    let (s, c) = angle.sin_cos();
    Matrix::from_row_slice(2, 2, &[c, -s, s, c])
}

/// `x ↦ R(x)·conv(vertices)` for planar vertices.
pub fn rotating_polytope(vertices: Vec<Vector>, domain: Domain) -> Result<SetValuedMap> {
    ConvexBody::polytope(vertices.clone())?;
    if vertices[0].len() != 2 {
        return Err(Error::UnsupportedDim(vertices[0].len()));
    }
    SetValuedMap::from_fn("rotating_polytope", domain, move |x| {
        let r = rotation(x[0]);
        ConvexBody::polytope(vertices.iter().map(|v| &r * v).collect())
    })
}

/// `x ↦ R(x)·[−1,1]×{0}`, a segment through the origin turning with `x`.
pub fn tilting_segment(domain: Domain) -> Result<SetValuedMap> {
    SetValuedMap::from_fn("tilting_segment", domain, |x| {
        let (s, c) = x[0].sin_cos();
        ConvexBody::segment(
            Vector::from_column_slice(&[-c, -s]),
            Vector::from_column_slice(&[c, s]),
        )
    })
}

fn num(params: &Value, key: &str, default: f64) -> Result<f64> {
    match params.get(key) {
        None => Ok(default),
        Some(v) => v
            .as_f64()
            .ok_or_else(|| Error::Config(format!("parameter `{key}` must be a number"))),
    }
}

fn vec_param(params: &Value, key: &str, default: &[f64]) -> Result<Vector> {
    match params.get(key) {
        None => Ok(Vector::from_column_slice(default)),
        Some(Value::Array(items)) => items
            .iter()
            .map(|v| v.as_f64())
            .collect::<Option<Vec<f64>>>()
            .map(Vector::from_vec)
            .ok_or_else(|| Error::Config(format!("parameter `{key}` must be a list of numbers"))),
        Some(_) => Err(Error::Config(format!(
            "parameter `{key}` must be a list of numbers"
        ))),
    }
}

/// Build a named family. Every family reads its interval from `a`, `b`, `n`.
///
/// | name | parameters |
/// |------|------------|
/// | `translating_ball` | `radius`, `center`, `direction` |
/// | `scaling_ball` | `center` |
/// | `rotating_polytope` | `vertices` (list of pairs; default the square) |
/// | `tilting_segment` | none |
/// | `example11` | `arc_points`; parameter is the angle along the boundary curve |
pub fn by_name(name: &str, params: &Value) -> Result<SetValuedMap> {
    let domain = Domain::interval(
        num(params, "a", 0.0)?,
        num(params, "b", 1.0)?,
        num(params, "n", 11.0)? as usize,
    )?;
    match name {
        "translating_ball" => {
            let direction = vec_param(params, "direction", &[1.0, 0.0])?;
            let zero = vec![0.0; direction.len()];
            translating_ball(
                num(params, "radius", 1.0)?,
                vec_param(params, "center", &zero)?,
                direction,
                domain,
            )
        }
        "scaling_ball" => scaling_ball(vec_param(params, "center", &[0.0, 0.0])?, domain),
        "rotating_polytope" => {
            let vertices = match params.get("vertices") {
                None => [[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]
                    .iter()
                    .map(|p| Vector::from_column_slice(p))
                    .collect(),
                Some(Value::Array(rows)) => rows
                    .iter()
                    .map(|r| {
                        r.as_array()
                            .and_then(|c| {
                                c.iter().map(|v| v.as_f64()).collect::<Option<Vec<f64>>>()
                            })
                            .map(Vector::from_vec)
                            .ok_or_else(|| {
                                Error::Config("vertices must be lists of numbers".into())
                            })
                    })
                    .collect::<Result<_>>()?,
                Some(_) => return Err(Error::Config("vertices must be a list".into())),
            };
            rotating_polytope(vertices, domain)
        }
        "tilting_segment" => tilting_segment(domain),
        "example11" => {
            crate::pset::example11_family(num(params, "arc_points", 720.0)? as usize, domain)
        }
        other => Err(Error::UnknownBody(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn named_families_build() {
        let m = by_name("translating_ball", &json!({"radius": 2.0, "n": 5})).unwrap();
        assert_eq!(m.len(), 5);
        assert_eq!(
            m.at(4),
            &ConvexBody::Ball {
                center: Vector::from_column_slice(&[1.0, 0.0]),
                radius: 2.0
            }
        );
        let r = by_name(
            "rotating_polytope",
            &json!({"b": std::f64::consts::FRAC_PI_2, "n": 3}),
        )
        .unwrap();
        assert_eq!(r.at(2).vertices().unwrap().unwrap().len(), 4);
        assert!(matches!(
            by_name("nope", &json!({})),
            Err(Error::UnknownBody(_))
        ));
    }
}
