//! Single-point selections of convex bodies: Steiner point, Chebyshev center
//! and nearest point.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use statrs::function::gamma::ln_gamma;

use crate::body::hull::{affine_hull, convex_polygon};
use crate::body::ConvexBody;
use crate::error::{check_dim, Error, Result};
use crate::geometry::Vector;
use crate::optimizer::{min_enclosing_ball, nearest_in_hull, Ball};

/// Default Monte Carlo sample count.
pub const DEFAULT_SAMPLES: usize = 20_000;
const CHUNK: usize = 1024;
const MAX_DIM: usize = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct SteinerEstimate {
    pub point: Vector,
    /// Random directions drawn; zero for the exact modes.
    pub samples_used: usize,
    /// Per-coordinate standard error (zero for the exact modes).
    pub stderr: Vector,
}

impl SteinerEstimate {
    fn exact(point: Vector) -> Self {
        let d = point.len();
        Self {
            point,
            samples_used: 0,
            stderr: Vector::zeros(d),
        }
    }

    pub fn max_stderr(&self) -> f64 {
        self.stderr.iter().fold(0.0, |m, s| m.max(*s))
    }

    pub fn is_exact(&self) -> bool {
        self.samples_used == 0
    }
}

/// Steiner point. Exact when the body reduces to a polytope of intrinsic
/// dimension ≤ 2, to a ball, or to a sum of such bodies; Monte Carlo with
/// `samples` seeded directions otherwise.
pub fn steiner_point(a: &ConvexBody, samples: usize, seed: u64) -> Result<SteinerEstimate> {
    if a.dim() > MAX_DIM {
        return Err(Error::UnsupportedDim(a.dim()));
    }
    if let Some(p) = steiner_exact(a)? {
        return Ok(SteinerEstimate::exact(p));
    }
    steiner_monte_carlo(a, samples, seed)
}

/// Steiner point in closed form, if one is available for this body.
pub fn steiner_exact(a: &ConvexBody) -> Result<Option<Vector>> {
    match a {
        ConvexBody::Ball { center, .. } => return Ok(Some(center.clone())),
        ConvexBody::Sum { terms } => {
            let mut acc = Vector::zeros(a.dim());
            let mut all = true;
            for t in terms {
                match steiner_exact(t)? {
                    Some(p) => acc += p,
                    None => {
                        all = false;
                        break;
                    }
                }
            }
            if all {
                return Ok(Some(acc));
            }
        }
        _ => {}
    }
    if !a.is_polytope() {
        return Ok(None);
    }
    let Some(vertices) = a.vertices()? else {
        return Ok(None);
    };
    Ok(intrinsic_steiner(&vertices))
}

/// Steiner point of `conv(vertices)` when its affine hull has dimension ≤ 2.
/// The Steiner point does not depend on the ambient space, so the
/// computation runs in hull coordinates.
fn intrinsic_steiner(vertices: &[Vector]) -> Option<Vector> {
    let hull = affine_hull(vertices, 1e-9);
    match hull.dim() {
        0 => Some(hull.center.clone()),
        1 => {
            let t: Vec<f64> = vertices.iter().map(|v| hull.coords(v)[0]).collect();
            let lo = t.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = t.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            Some(hull.lift(&Vector::from_element(1, 0.5 * (lo + hi))))
        }
        2 => {
            let local: Vec<Vector> = vertices.iter().map(|v| hull.coords(v)).collect();
            Some(hull.lift(&polygon_steiner(&local)))
        }
        _ => None,
    }
}

/// Exterior-angle weighted vertex average of a planar convex polygon.
pub fn polygon_steiner(points: &[Vector]) -> Vector {
    let poly = convex_polygon(points);
    let m = poly.len();
    match m {
        0 => Vector::zeros(2),
        1 => poly[0].clone(),
        2 => (&poly[0] + &poly[1]) * 0.5,
        _ => {
            let mut acc = Vector::zeros(2);
            for i in 0..m {
                let prev = &poly[(i + m - 1) % m];
                let cur = &poly[i];
                let next = &poly[(i + 1) % m];
                let e1 = cur - prev;
                let e2 = next - cur;
                let turn = (e1[0] * e2[1] - e1[1] * e2[0]).atan2(e1.dot(&e2));
                acc += cur * (turn / (2.0 * std::f64::consts::PI));
            }
            acc
        }
    }
}

/// Mean support point over `samples` uniform random directions. Directions
/// are drawn in chunks with one random stream per chunk, and chunk sums are
/// combined in order, so the result does not depend on thread scheduling.
pub fn steiner_monte_carlo(a: &ConvexBody, samples: usize, seed: u64) -> Result<SteinerEstimate> {
    let d = a.dim();
    if samples == 0 {
        return Err(Error::Config("need at least one sample".into()));
    }
    let chunks = samples.div_ceil(CHUNK);
    let partial: Vec<(Vector, Vector)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let n = CHUNK.min(samples - c * CHUNK);
            let mut sum = Vector::zeros(d);
            let mut sq = Vector::zeros(d);
            for _ in 0..n {
                let u = loop {
                    let v =
                        Vector::from_iterator(d, (0..d).map(|_| StandardNormal.sample(&mut rng)));
                    if v.norm() > 1e-12 {
                        break v;
                    }
                };
                let s = a.sp(&u);
                sq += s.component_mul(&s);
                sum += s;
            }
            (sum, sq)
        })
        .collect();
    let mut sum = Vector::zeros(d);
    let mut sq = Vector::zeros(d);
    for (s, q) in partial {
        sum += s;
        sq += q;
    }
    let n = samples as f64;
    let mean = sum / n;
    let stderr = if samples > 1 {
        Vector::from_iterator(
            d,
            (0..d).map(|i| {
                let var = ((sq[i] - n * mean[i] * mean[i]) / (n - 1.0)).max(0.0);
                (var / n).sqrt()
            }),
        )
    } else {
        Vector::from_element(d, f64::INFINITY)
    };
    Ok(SteinerEstimate {
        point: mean,
        samples_used: samples,
        stderr,
    })
}

/// `L_n = (2/√π) Γ(n/2 + 1) / Γ((n + 1)/2)`, the Lipschitz constant of the
/// Steiner selection in ℝⁿ with respect to the Hausdorff metric.
pub fn steiner_lipschitz_bound(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::UnsupportedDim(0));
    }
    let n = n as f64;
    Ok(2.0 / std::f64::consts::PI.sqrt()
        * (ln_gamma(n / 2.0 + 1.0) - ln_gamma((n + 1.0) / 2.0)).exp())
}

/// Chebyshev center and radius. The farthest point of a polytope from any
/// point is a vertex, so this is the minimum enclosing ball of the vertices;
/// ball summands only add their radius.
pub fn chebyshev_center(a: &ConvexBody) -> Result<Ball> {
    let ball = match a {
        ConvexBody::Ball { center, radius } => Ball {
            center: center.clone(),
            radius: *radius,
        },
        ConvexBody::Sum { terms } if terms.iter().any(|t| matches!(t, ConvexBody::Ball { .. })) => {
            let mut r = 0.0;
            let mut c = Vector::zeros(a.dim());
            let mut rest = Vec::new();
            for t in terms {
                match t {
                    ConvexBody::Ball { center, radius } => {
                        r += radius;
                        c += center;
                    }
                    other => rest.push(other.clone()),
                }
            }
            let inner = match rest.len() {
                0 => Ball {
                    center: Vector::zeros(a.dim()),
                    radius: 0.0,
                },
                1 => chebyshev_center(&rest[0])?,
                _ => chebyshev_center(&ConvexBody::Sum { terms: rest })?,
            };
            Ball {
                center: inner.center + c,
                radius: inner.radius + r,
            }
        }
        _ => {
            let vertices = a.vertices()?.ok_or_else(|| {
                Error::UnsupportedRep("Chebyshev center needs a vertex form".into())
            })?;
            min_enclosing_ball(&vertices)?
        }
    };
    Ok(ball)
}

/// Euclidean projection of `x0` onto `A`.
pub fn nearest_point(a: &ConvexBody, x0: &Vector) -> Result<Vector> {
    check_dim(a.dim(), x0.len())?;
    if let ConvexBody::Ball { .. } = a {
        return Ok(a.distance(x0)?.nearest);
    }
    if a.is_polytope() {
        if let Some(v) = a.vertices()? {
            return Ok(nearest_in_hull(&v, x0)?.0);
        }
    }
    let d = a.distance(x0)?;
    if d.upper - d.lower > 1e-6 * (1.0 + d.upper) {
        return Err(Error::UnsupportedRep(
            "projection did not converge for this body".into(),
        ));
    }
    Ok(d.nearest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vector;

    #[test]
    fn steiner_examples() {
        let seg = ConvexBody::segment(vector(&[0.0, 1.0]), vector(&[2.0, 3.0])).unwrap();
        assert_eq!(
            steiner_point(&seg, 100, 0).unwrap().point,
            vector(&[1.0, 2.0])
        );
        let ball = ConvexBody::ball(vector(&[1.0, -1.0, 2.0]), 3.0).unwrap();
        assert_eq!(
            steiner_point(&ball, 100, 0).unwrap().point,
            vector(&[1.0, -1.0, 2.0])
        );
        let tri = ConvexBody::polytope(vec![
            vector(&[0.0, 0.0]),
            vector(&[1.0, 0.0]),
            vector(&[0.0, 1.0]),
        ])
        .unwrap();
        let s = steiner_point(&tri, 100, 0).unwrap();
        assert!((s.point - vector(&[0.375, 0.375])).norm() < 1e-15);
    }

    #[test]
    fn lipschitz_constants() {
        assert!((steiner_lipschitz_bound(1).unwrap() - 1.0).abs() < 1e-14);
        assert!((steiner_lipschitz_bound(2).unwrap() - 4.0 / std::f64::consts::PI).abs() < 1e-14);
        assert!((steiner_lipschitz_bound(3).unwrap() - 1.5).abs() < 1e-14);
    }

    #[test]
    fn monte_carlo_is_reproducible() {
        let cube = ConvexBody::cube(3, 1.0)
            .translate(&vector(&[0.5, 0.0, 0.0]))
            .unwrap();
        let a = steiner_monte_carlo(&cube, 5000, 3).unwrap();
        let b = steiner_monte_carlo(&cube, 5000, 3).unwrap();
        assert_eq!(a, b);
        assert!((&a.point - vector(&[0.5, 0.0, 0.0])).norm() < 5.0 * a.max_stderr());
    }

    #[test]
    fn chebyshev_examples() {
        let sq = chebyshev_center(&ConvexBody::cube(2, 1.0)).unwrap();
        assert!(sq.center.norm() < 1e-12 && (sq.radius - 2f64.sqrt()).abs() < 1e-12);
        let tri = ConvexBody::polytope(vec![
            vector(&[0.0, 0.0]),
            vector(&[4.0, 0.0]),
            vector(&[0.0, 3.0]),
        ])
        .unwrap();
        let c = chebyshev_center(&tri).unwrap();
        assert!((c.center - vector(&[2.0, 1.5])).norm() < 1e-12 && (c.radius - 2.5).abs() < 1e-12);
        let ball = ConvexBody::ball(vector(&[1.0, 1.0]), 0.5).unwrap();
        assert_eq!(chebyshev_center(&ball).unwrap().radius, 0.5);
        let ellipse = ConvexBody::affine_image(
            crate::geometry::Matrix::identity(2, 2) * 2.0,
            vector(&[0.0, 0.0]),
            ConvexBody::ball(vector(&[0.0, 0.0]), 1.0).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            chebyshev_center(&ellipse),
            Err(Error::UnsupportedRep(_))
        ));
    }

    #[test]
    fn nearest_point_examples() {
        let ball = ConvexBody::ball(vector(&[0.0, 0.0]), 1.0).unwrap();
        assert_eq!(
            nearest_point(&ball, &vector(&[2.0, 0.0])).unwrap(),
            vector(&[1.0, 0.0])
        );
        let unit = ConvexBody::cuboid(&vector(&[0.0, 0.0]), &vector(&[1.0, 1.0])).unwrap();
        assert!(
            (nearest_point(&unit, &vector(&[2.0, 2.0])).unwrap() - vector(&[1.0, 1.0])).norm()
                < 1e-12
        );
        let inside = vector(&[0.25, 0.5]);
        assert!((nearest_point(&unit, &inside).unwrap() - &inside).norm() < 1e-12);
    }
}
