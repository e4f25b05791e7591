//! Smallest enclosing ball by Welzl's move-to-front recursion.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{check_dim, Error, Result};
use crate::geometry::{Matrix, Vector};

#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    pub center: Vector,
    pub radius: f64,
}

impl Ball {
    fn contains(&self, p: &Vector) -> bool {
        (p - &self.center).norm() <= self.radius * (1.0 + 1e-12) + 1e-12
    }
}

/// Smallest ball whose boundary passes through every point of `support`,
/// computed in their affine span.
fn circumball(support: &[Vector]) -> Option<Ball> {
    let p0 = support.first()?;
    let k = support.len() - 1;
    if k == 0 {
        return Some(Ball {
            center: p0.clone(),
            radius: 0.0,
        });
    }
    let diffs: Vec<Vector> = support[1..].iter().map(|p| p - p0).collect();
    let m = Matrix::from_fn(k, k, |i, j| 2.0 * diffs[i].dot(&diffs[j]));
    let rhs = Vector::from_iterator(k, diffs.iter().map(|d| d.norm_squared()));
    let smax = m.iter().fold(0.0f64, |s, v| s.max(v.abs()));
    let alpha = m.svd(true, true).solve(&rhs, 1e-14 * smax).ok()?;
    let mut center = p0.clone();
    for (a, d) in alpha.iter().zip(&diffs) {
        center.axpy(*a, d, 1.0);
    }
    let radius = support
        .iter()
        .map(|p| (p - &center).norm())
        .fold(0.0, f64::max);
    Some(Ball { center, radius })
}

fn mtf(points: &mut [Vector], n: usize, support: &mut Vec<Vector>, dim: usize) -> Option<Ball> {
    let mut ball = circumball(support);
    if support.len() == dim + 1 {
        return ball;
    }
    for i in 0..n {
        let inside = ball.as_ref().is_some_and(|b| b.contains(&points[i]));
        if !inside {
            support.push(points[i].clone());
            ball = mtf(points, i, support, dim);
            support.pop();
            points[..=i].rotate_right(1);
        }
    }
    ball
}

/// Smallest Euclidean ball containing all points.
pub fn min_enclosing_ball(points: &[Vector]) -> Result<Ball> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let d = first.len();
    for p in points {
        check_dim(d, p.len())?;
    }
    let mut pts = points.to_vec();
    // expected linear time needs a random order; a fixed seed keeps the
    // result reproducible
    pts.shuffle(&mut ChaCha8Rng::seed_from_u64(0x5eed));
    let n = pts.len();
    let mut support = Vec::with_capacity(d + 1);
    let mut ball = mtf(&mut pts, n, &mut support, d).ok_or(Error::EmptyInput)?;
    ball.radius = points
        .iter()
        .map(|p| (p - &ball.center).norm())
        .fold(0.0, f64::max);
    Ok(ball)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vector;

    #[test]
    fn small_cases() {
        let b = min_enclosing_ball(&[vector(&[1.0, 2.0])]).unwrap();
        assert_eq!(b.radius, 0.0);
        let b = min_enclosing_ball(&[vector(&[0.0, 0.0]), vector(&[2.0, 2.0])]).unwrap();
        assert!((b.center - vector(&[1.0, 1.0])).norm() < 1e-14);
        assert!((b.radius - 2f64.sqrt()).abs() < 1e-14);
        assert!(matches!(min_enclosing_ball(&[]), Err(Error::EmptyInput)));
    }

    #[test]
    fn right_triangle() {
        let pts = [
            vector(&[0.0, 0.0]),
            vector(&[4.0, 0.0]),
            vector(&[0.0, 3.0]),
        ];
        let b = min_enclosing_ball(&pts).unwrap();
        assert!((b.center - vector(&[2.0, 1.5])).norm() < 1e-12);
        assert!((b.radius - 2.5).abs() < 1e-12);
    }

    #[test]
    fn obtuse_triangle_uses_longest_edge() {
        let pts = [
            vector(&[0.0, 0.0]),
            vector(&[4.0, 0.0]),
            vector(&[2.0, 0.5]),
        ];
        let b = min_enclosing_ball(&pts).unwrap();
        assert!((b.center - vector(&[2.0, 0.0])).norm() < 1e-12);
        assert!((b.radius - 2.0).abs() < 1e-12);
    }

    #[test]
    fn collinear_in_3d() {
        let pts: Vec<Vector> = (0..7)
            .map(|i| vector(&[i as f64, 2.0 * i as f64, 0.0]))
            .collect();
        let b = min_enclosing_ball(&pts).unwrap();
        assert!((b.center - vector(&[3.0, 6.0, 0.0])).norm() < 1e-10);
        assert!((b.radius - 45f64.sqrt()).abs() < 1e-10);
    }
}
