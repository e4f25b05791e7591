//! Convex hulls and vertex enumeration in intrinsic dimension ≤ 4.
//!
//! Points are first reduced to their affine hull. Inside it, 2-D hulls use a
//! monotone chain and 3-/4-D hulls an incremental beneath-beyond
//! triangulation whose coplanar simplices are merged afterwards.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{columns, orthonormal_complement, Matrix, Vector};
use crate::optimizer::{maximize_over_halfspaces, LpStatus};
use crate::tol::Tolerances;

/// Half-space `normal·x ≤ offset` with a unit normal.
#[derive(Clone, Debug, PartialEq)]
pub struct Facet {
    pub normal: Vector,
    pub offset: f64,
}

/// Affine hull of a point set: `center + span(basis)`.
#[derive(Clone, Debug)]
pub struct AffineHull {
    pub center: Vector,
    pub basis: Vec<Vector>,
}

impl AffineHull {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coords(&self, p: &Vector) -> Vector {
        let r = p - &self.center;
        Vector::from_iterator(self.basis.len(), self.basis.iter().map(|b| b.dot(&r)))
    }

    pub fn lift(&self, y: &Vector) -> Vector {
        let mut x = self.center.clone();
        for (b, t) in self.basis.iter().zip(y.iter()) {
            x.axpy(*t, b, 1.0);
        }
        x
    }
}

#[derive(Clone, Debug)]
pub struct Hull {
    pub affine: AffineHull,
    /// Indices of the extreme points of the input.
    pub vertices: Vec<usize>,
    /// Facets in ambient coordinates; a lower-dimensional hull also carries
    /// pairs of opposite half-spaces encoding its affine hull.
    pub facets: Vec<Facet>,
}

/// Affine hull by SVD of the centered points; directions whose singular value
/// is below `rel_tol` times the largest are dropped.
pub fn affine_hull(points: &[Vector], rel_tol: f64) -> AffineHull {
    let d = points[0].len();
    let n = points.len() as f64;
    let mut center = Vector::zeros(d);
    for p in points {
        center += p;
    }
    center /= n;
    let centered: Vec<Vector> = points.iter().map(|p| p - &center).collect();
    let scale = centered.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if scale == 0.0 || points.len() == 1 {
        return AffineHull {
            center,
            basis: Vec::new(),
        };
    }
    // Gram matrix route keeps the SVD at d × d regardless of the point count
    let x = columns(&centered, d);
    let cov = &x * x.transpose();
    let eig = cov.symmetric_eigen();
    let lmax = eig.eigenvalues.iter().cloned().fold(0.0, f64::max);
    let mut idx: Vec<usize> = (0..d).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let mut basis = Vec::new();
    for i in idx {
        let l = eig.eigenvalues[i].max(0.0);
        // singular value ratio sqrt(l / lmax)
        if lmax > 0.0 && (l / lmax).sqrt() > rel_tol {
            let v = eig.eigenvectors.column(i).into_owned();
            // check the actual extent along v, which is what matters
            let extent = centered.iter().map(|c| c.dot(&v).abs()).fold(0.0, f64::max);
            if extent > rel_tol * scale {
                basis.push(v.normalize());
            }
        }
    }
    AffineHull { center, basis }
}

type P4 = [f64; 4];

#[inline]
fn dot4(a: &P4, b: &P4) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

#[inline]
fn sub4(a: &P4, b: &P4) -> P4 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Unit normal of the hyperplane through `k` points in ℝᵏ (k = 3, 4).
fn simplex_normal(pts: &[P4], k: usize) -> Option<P4> {
    let v: Vec<P4> = pts[1..].iter().map(|p| sub4(p, &pts[0])).collect();
    let mut n = [0.0; 4];
    if k == 3 {
        n[0] = v[0][1] * v[1][2] - v[0][2] * v[1][1];
        n[1] = v[0][2] * v[1][0] - v[0][0] * v[1][2];
        n[2] = v[0][0] * v[1][1] - v[0][1] * v[1][0];
    } else {
        for (j, nj) in n.iter_mut().enumerate() {
            let cols: Vec<usize> = (0..4).filter(|&c| c != j).collect();
            let mut m = [[0.0; 3]; 3];
            for r in 0..3 {
                for c in 0..3 {
                    m[r][c] = v[r][cols[c]];
                }
            }
            let s = if j % 2 == 0 { 1.0 } else { -1.0 };
            *nj = s * det3(m);
        }
    }
    let norm = dot4(&n, &n).sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return None;
    }
    Some([n[0] / norm, n[1] / norm, n[2] / norm, n[3] / norm])
}

struct SimplexFacet {
    verts: Vec<usize>,
    n: P4,
    b: f64,
    alive: bool,
}

/// Beneath-beyond triangulated hull of full-dimensional points in ℝᵏ,
/// k ∈ {3, 4}. Returns simplicial facets as (vertex indices, normal, offset).
fn simplicial_hull(y: &[P4], k: usize, eps: f64) -> Result<Vec<SimplexFacet>> {
    let n = y.len();
    // initial simplex from successive farthest points
    let mut simplex = vec![0usize];
    for i in 1..n {
        if y[i] < y[simplex[0]] {
            simplex[0] = i;
        }
    }
    let mut frame: Vec<P4> = Vec::new();
    while simplex.len() < k + 1 {
        let o = y[simplex[0]];
        let mut best = (0usize, -1.0f64);
        for (i, p) in y.iter().enumerate() {
            let mut r = sub4(p, &o);
            for q in &frame {
                let c = dot4(q, &r);
                for t in 0..4 {
                    r[t] -= c * q[t];
                }
            }
            let d = dot4(&r, &r);
            if d > best.1 {
                best = (i, d);
            }
        }
        let mut r = sub4(&y[best.0], &o);
        for q in &frame {
            let c = dot4(q, &r);
            for t in 0..4 {
                r[t] -= c * q[t];
            }
        }
        let nr = dot4(&r, &r).sqrt();
        if nr <= eps {
            return Err(Error::Inconsistent(
                "hull input is not full-dimensional".into(),
            ));
        }
        frame.push([r[0] / nr, r[1] / nr, r[2] / nr, r[3] / nr]);
        simplex.push(best.0);
    }
    let mut interior = [0.0; 4];
    for &i in &simplex {
        for t in 0..4 {
            interior[t] += y[i][t] / (k + 1) as f64;
        }
    }
    let make = |verts: Vec<usize>| -> Option<SimplexFacet> {
        let pts: Vec<P4> = verts.iter().map(|&i| y[i]).collect();
        let mut nrm = simplex_normal(&pts, k)?;
        let mut b = dot4(&nrm, &pts[0]);
        if dot4(&nrm, &interior) > b {
            nrm = [-nrm[0], -nrm[1], -nrm[2], -nrm[3]];
            b = -b;
        }
        Some(SimplexFacet {
            verts,
            n: nrm,
            b,
            alive: true,
        })
    };
    let mut facets: Vec<SimplexFacet> = Vec::new();
    for skip in 0..=k {
        let verts: Vec<usize> = simplex
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != skip)
            .map(|(_, &i)| i)
            .collect();
        facets.push(
            make(verts).ok_or_else(|| Error::Inconsistent("degenerate initial simplex".into()))?,
        );
    }
    let mut order: Vec<usize> = (0..n).filter(|i| !simplex.contains(i)).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(7));
    let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
    for &p in &order {
        let visible: Vec<usize> = facets
            .iter()
            .enumerate()
            .filter(|(_, f)| f.alive && dot4(&f.n, &y[p]) - f.b > eps)
            .map(|(i, _)| i)
            .collect();
        if visible.is_empty() {
            continue;
        }
        ridges.clear();
        for &fi in &visible {
            let f = &facets[fi];
            for skip in 0..k {
                let mut r: Vec<usize> = f
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != skip)
                    .map(|(_, &v)| v)
                    .collect();
                r.sort_unstable();
                *ridges.entry(r).or_insert(0) += 1;
            }
        }
        for &fi in &visible {
            facets[fi].alive = false;
        }
        let mut horizon: Vec<Vec<usize>> = ridges
            .iter()
            .filter(|(_, c)| **c == 1)
            .map(|(r, _)| r.clone())
            .collect();
        horizon.sort_unstable();
        for r in horizon {
            let mut verts = r;
            verts.push(p);
            if let Some(f) = make(verts) {
                facets.push(f);
            }
        }
        if facets.len() > 64 * (n + 16) {
            facets.retain(|f| f.alive);
        }
    }
    facets.retain(|f| f.alive);
    Ok(facets)
}

/// Andrew's monotone chain; returns counter-clockwise hull indices with
/// collinear points removed.
fn monotone_chain(y: &[P4], eps: f64) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..y.len()).collect();
    idx.sort_by(|&a, &b| {
        y[a][0]
            .total_cmp(&y[b][0])
            .then(y[a][1].total_cmp(&y[b][1]))
    });
    idx.dedup_by(|a, b| (y[*a][0] - y[*b][0]).abs() <= eps && (y[*a][1] - y[*b][1]).abs() <= eps);
    if idx.len() < 3 {
        return idx;
    }
    let cross = |o: usize, a: usize, b: usize| {
        (y[a][0] - y[o][0]) * (y[b][1] - y[o][1]) - (y[a][1] - y[o][1]) * (y[b][0] - y[o][0])
    };
    let mut hull: Vec<usize> = Vec::with_capacity(2 * idx.len());
    for pass in 0..2 {
        let start = hull.len();
        let seq: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(idx.iter())
        } else {
            Box::new(idx.iter().rev())
        };
        for &i in seq {
            while hull.len() >= start + 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                let len = ((y[b][0] - y[a][0]).powi(2) + (y[b][1] - y[a][1]).powi(2)).sqrt();
                // keep b only if it is strictly left of a → i
                if cross(a, b, i) <= eps * len.max(eps) {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(i);
        }
        hull.pop();
    }
    hull
}

/// Counter-clockwise extreme points of a planar point set.
pub fn convex_polygon(points: &[Vector]) -> Vec<Vector> {
    let y: Vec<P4> = points.iter().map(|p| [p[0], p[1], 0.0, 0.0]).collect();
    let scale = y.iter().map(|p| dot4(p, p).sqrt()).fold(0.0, f64::max);
    monotone_chain(&y, 1e-13 * scale.max(1e-300))
        .into_iter()
        .map(|i| points[i].clone())
        .collect()
}

/// Distance from `x` to a convex polygon given by counter-clockwise
/// vertices (a point or a segment when fewer than three).
pub fn polygon_distance(poly: &[Vector], x: &Vector) -> f64 {
    let seg = |a: &Vector, b: &Vector| {
        let ab = b - a;
        let l2 = ab.norm_squared();
        let t = if l2 > 0.0 {
            ((x - a).dot(&ab) / l2).clamp(0.0, 1.0)
        } else {
            0.0
        };
        (a + ab * t - x).norm()
    };
    match poly.len() {
        0 => f64::INFINITY,
        1 => (&poly[0] - x).norm(),
        2 => seg(&poly[0], &poly[1]),
        m => {
            let mut inside = true;
            let mut best = f64::INFINITY;
            for i in 0..m {
                let a = &poly[i];
                let b = &poly[(i + 1) % m];
                let cross = (b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0]);
                if cross < 0.0 {
                    inside = false;
                    best = best.min(seg(a, b));
                }
            }
            if inside {
                0.0
            } else {
                best
            }
        }
    }
}

/// Convex hull of `points` (intrinsic dimension ≤ 4).
pub fn convex_hull(points: &[Vector], tol: &Tolerances) -> Result<Hull> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let d = points[0].len();
    let affine = affine_hull(points, tol.hull);
    let k = affine.dim();
    if k > 4 {
        return Err(Error::UnsupportedDim(k));
    }
    let y: Vec<P4> = points
        .iter()
        .map(|p| {
            let c = affine.coords(p);
            let mut a = [0.0; 4];
            for (t, v) in c.iter().enumerate() {
                a[t] = *v;
            }
            a
        })
        .collect();
    let scale = y
        .iter()
        .map(|p| dot4(p, p).sqrt())
        .fold(0.0, f64::max)
        .max(1e-300);
    let eps = 1e-11 * scale.max(1.0).min(scale * 1e3);
    let eps = eps.max(1e-13 * scale);

    let mut intrinsic: Vec<(P4, f64)> = Vec::new();
    let mut vertices: Vec<usize>;
    match k {
        0 => {
            vertices = vec![0];
        }
        1 => {
            let (mut lo, mut hi) = (0, 0);
            for i in 0..y.len() {
                if y[i][0] < y[lo][0] {
                    lo = i;
                }
                if y[i][0] > y[hi][0] {
                    hi = i;
                }
            }
            vertices = vec![lo, hi];
            intrinsic.push(([1.0, 0.0, 0.0, 0.0], y[hi][0]));
            intrinsic.push(([-1.0, 0.0, 0.0, 0.0], -y[lo][0]));
        }
        2 => {
            vertices = monotone_chain(&y, eps);
            let m = vertices.len();
            for i in 0..m {
                let a = y[vertices[i]];
                let b = y[vertices[(i + 1) % m]];
                let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
                let len = (dx * dx + dy * dy).sqrt();
                let nrm = [dy / len, -dx / len, 0.0, 0.0];
                intrinsic.push((nrm, dot4(&nrm, &a)));
            }
        }
        _ => {
            let simp = simplicial_hull(&y, k, eps)?;
            // merge coplanar simplices
            let mut merged: Vec<(P4, f64)> = Vec::new();
            for f in &simp {
                let dup = merged
                    .iter()
                    .any(|(n, b)| 1.0 - dot4(n, &f.n) < 1e-10 && (b - f.b).abs() <= 10.0 * eps);
                if !dup {
                    merged.push((f.n, f.b));
                }
            }
            // a vertex of the triangulation is extreme iff its incident
            // merged facets have normals of full rank
            let mut cand: Vec<usize> = simp.iter().flat_map(|f| f.verts.iter().copied()).collect();
            cand.sort_unstable();
            cand.dedup();
            vertices = Vec::new();
            for i in cand {
                let normals: Vec<Vector> = merged
                    .iter()
                    .filter(|(n, b)| (dot4(n, &y[i]) - b).abs() <= 10.0 * eps)
                    .map(|(n, _)| Vector::from_column_slice(&n[..k]))
                    .collect();
                if crate::geometry::orthonormalize(&normals, 1e-7).len() == k {
                    vertices.push(i);
                }
            }
            intrinsic = merged;
        }
    }
    vertices.sort_unstable();
    if k == 2 {
        // keep counter-clockwise order for 2-D consumers
        vertices = monotone_chain(&y, eps);
    }
    let mut facets = Vec::with_capacity(intrinsic.len() + 2 * (d - k));
    for (n, b) in intrinsic {
        let mut normal = Vector::zeros(d);
        for (t, basis) in affine.basis.iter().enumerate() {
            normal.axpy(n[t], basis, 1.0);
        }
        let offset = b + normal.dot(&affine.center);
        facets.push(Facet { normal, offset });
    }
    for w in orthonormal_complement(&affine.basis, d) {
        let c = w.dot(&affine.center);
        facets.push(Facet {
            normal: w.clone(),
            offset: c,
        });
        facets.push(Facet {
            normal: -w,
            offset: -c,
        });
    }
    Ok(Hull {
        affine,
        vertices,
        facets,
    })
}

/// Vertices of `{x : nᵢ·x ≤ bᵢ}`. Returns `None` for an empty region and
/// `Unbounded` for an unbounded one.
pub fn vertices_of_hrep(
    normals: &[Vector],
    offsets: &[f64],
    dim: usize,
    tol: &Tolerances,
) -> Result<Option<Vec<Vector>>> {
    vertices_rec(normals, offsets, dim, tol, 0)
}

fn vertices_rec(
    normals: &[Vector],
    offsets: &[f64],
    d: usize,
    tol: &Tolerances,
    depth: usize,
) -> Result<Option<Vec<Vector>>> {
    if depth > d + 1 {
        return Err(Error::Inconsistent(
            "vertex enumeration did not reduce dimension".into(),
        ));
    }
    let m = normals.len();
    let scale = 1.0 + offsets.iter().fold(0.0f64, |s, b| s.max(b.abs()));
    let ftol = tol.feas * scale;
    if d == 0 {
        return Ok(if offsets.iter().all(|b| *b >= -ftol) {
            Some(vec![Vector::zeros(0)])
        } else {
            None
        });
    }
    if d == 1 {
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for (n, b) in normals.iter().zip(offsets) {
            let a = n[0];
            if a > 1e-14 {
                hi = hi.min(b / a);
            } else if a < -1e-14 {
                lo = lo.max(b / a);
            } else if *b < -ftol {
                return Ok(None);
            }
        }
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Unbounded);
        }
        if lo > hi + ftol {
            return Ok(None);
        }
        if hi - lo <= ftol {
            let mid = 0.5 * (lo + hi);
            return Ok(Some(vec![Vector::from_element(1, mid)]));
        }
        return Ok(Some(vec![
            Vector::from_element(1, lo),
            Vector::from_element(1, hi),
        ]));
    }
    if d > 4 {
        return Err(Error::UnsupportedDim(d));
    }
    // deepest point: max s with nᵢ·x + s‖nᵢ‖ ≤ bᵢ, s ≤ 1
    let g = Matrix::from_fn(m + 1, d + 1, |i, j| {
        if i == m {
            if j == d {
                1.0
            } else {
                0.0
            }
        } else if j == d {
            normals[i].norm()
        } else {
            normals[i][j]
        }
    });
    let mut h = Vector::from_iterator(m + 1, offsets.iter().copied().chain(std::iter::once(scale)));
    h[m] = scale;
    let mut c = Vector::zeros(d + 1);
    c[d] = 1.0;
    let lp = maximize_over_halfspaces(&g, &h, &c, tol)?;
    match lp.status {
        LpStatus::Infeasible => return Ok(None),
        LpStatus::Unbounded => return Err(Error::Unbounded),
        LpStatus::Optimal => {}
    }
    let s = lp.x[d];
    let x0 = lp.x.rows(0, d).into_owned();
    if s < -ftol {
        return Ok(None);
    }
    if s > 1e3 * ftol {
        // polar dual: facets of conv{nᵢ / (bᵢ − nᵢ·x0)} are vertices
        let polar: Vec<Vector> = normals
            .iter()
            .zip(offsets)
            .map(|(n, b)| n / (b - n.dot(&x0)))
            .collect();
        let hull = convex_hull(&polar, tol)?;
        if hull.affine.dim() < d {
            return Err(Error::Unbounded);
        }
        let mut out: Vec<Vector> = Vec::new();
        for f in hull.facets {
            if f.offset <= 0.0 {
                return Err(Error::Unbounded);
            }
            let v = &x0 + &f.normal / f.offset;
            let vscale = 1.0 + v.norm();
            if !out.iter().any(|w| (w - &v).norm() <= 1e-9 * vscale) {
                out.push(v);
            }
        }
        return Ok(Some(out));
    }
    // thin region: find the implicit equalities and recurse inside them
    let mut eq_rows: Vec<Vector> = Vec::new();
    for i in 0..m {
        let sol = maximize_over_halfspaces(
            &Matrix::from_fn(m, d, |r, j| normals[r][j]),
            &Vector::from_column_slice(offsets),
            &(-&normals[i]),
            tol,
        )?;
        if sol.status == LpStatus::Unbounded {
            return Err(Error::Unbounded);
        }
        if sol.status == LpStatus::Optimal {
            let min = -sol.value;
            if min >= offsets[i] - 1e3 * ftol * normals[i].norm().max(1.0) {
                eq_rows.push(normals[i].clone());
            }
        }
    }
    let eq_basis = crate::geometry::orthonormalize(&eq_rows, 1e-9);
    if eq_basis.is_empty() {
        return Err(Error::Inconsistent(
            "thin region without implicit equalities".into(),
        ));
    }
    let free = orthonormal_complement(&eq_basis, d);
    let k = free.len();
    let mut sub_n = Vec::with_capacity(m);
    let mut sub_b = Vec::with_capacity(m);
    for (n, b) in normals.iter().zip(offsets) {
        let a = Vector::from_iterator(k, free.iter().map(|f| f.dot(n)));
        let r = b - n.dot(&x0);
        if a.norm() > 1e-12 * n.norm().max(1e-300) {
            sub_n.push(a);
            sub_b.push(r);
        }
    }
    let sub = vertices_rec(&sub_n, &sub_b, k, tol, depth + 1)?;
    Ok(sub.map(|vs| {
        vs.into_iter()
            .map(|y| {
                let mut x = x0.clone();
                for (f, t) in free.iter().zip(y.iter()) {
                    x.axpy(*t, f, 1.0);
                }
                x
            })
            .collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vector;

    fn cube_vertices() -> Vec<Vector> {
        let mut v = Vec::new();
        for i in 0..8 {
            v.push(vector(&[
                (i & 1) as f64,
                ((i >> 1) & 1) as f64,
                ((i >> 2) & 1) as f64,
            ]));
        }
        v
    }

    #[test]
    fn square_hull() {
        let pts = vec![
            vector(&[-1.0, -1.0]),
            vector(&[1.0, -1.0]),
            vector(&[0.0, 0.0]),
            vector(&[1.0, 1.0]),
            vector(&[-1.0, 1.0]),
            vector(&[0.0, 1.0]),
        ];
        let h = convex_hull(&pts, &Tolerances::default()).unwrap();
        assert_eq!(h.vertices.len(), 4);
        assert_eq!(h.facets.len(), 4);
        for f in &h.facets {
            assert!((f.offset - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn cube_and_grid() {
        let h = convex_hull(&cube_vertices(), &Tolerances::default()).unwrap();
        assert_eq!(h.facets.len(), 6);
        assert_eq!(h.vertices.len(), 8);
        // 4×4×4 grid: many coplanar and collinear points
        let mut grid = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    grid.push(vector(&[i as f64, j as f64, k as f64]));
                }
            }
        }
        let h = convex_hull(&grid, &Tolerances::default()).unwrap();
        assert_eq!(h.facets.len(), 6);
        assert_eq!(h.vertices.len(), 8);
    }

    #[test]
    fn flat_hull_in_space() {
        let pts = vec![
            vector(&[0.0, 0.0, 1.0]),
            vector(&[1.0, 0.0, 1.0]),
            vector(&[0.0, 1.0, 1.0]),
        ];
        let h = convex_hull(&pts, &Tolerances::default()).unwrap();
        assert_eq!(h.affine.dim(), 2);
        assert_eq!(h.vertices.len(), 3);
        // 3 edges plus the plane z = 1 as two half-spaces
        assert_eq!(h.facets.len(), 5);
        for p in &pts {
            for f in &h.facets {
                assert!(f.normal.dot(p) <= f.offset + 1e-12);
            }
        }
    }

    #[test]
    fn tesseract() {
        let mut pts = Vec::new();
        for i in 0..16 {
            pts.push(Vector::from_iterator(
                4,
                (0..4).map(|b| ((i >> b) & 1) as f64),
            ));
        }
        pts.push(Vector::from_element(4, 0.5));
        let h = convex_hull(&pts, &Tolerances::default()).unwrap();
        assert_eq!(h.facets.len(), 8);
        assert_eq!(h.vertices.len(), 16);
    }

    #[test]
    fn cube_round_trip() {
        let t = Tolerances::default();
        let h = convex_hull(&cube_vertices(), &t).unwrap();
        let n: Vec<Vector> = h.facets.iter().map(|f| f.normal.clone()).collect();
        let b: Vec<f64> = h.facets.iter().map(|f| f.offset).collect();
        let v = vertices_of_hrep(&n, &b, 3, &t).unwrap().unwrap();
        assert_eq!(v.len(), 8);
        for c in cube_vertices() {
            assert!(v.iter().any(|w| (w - &c).norm() < 1e-9));
        }
    }

    #[test]
    fn thin_and_empty_regions() {
        let t = Tolerances::default();
        // unit square with x2 = 0.5 pinned: a segment
        let n = vec![
            vector(&[1.0, 0.0]),
            vector(&[-1.0, 0.0]),
            vector(&[0.0, 1.0]),
            vector(&[0.0, -1.0]),
        ];
        let v = vertices_of_hrep(&n, &[1.0, 0.0, 0.5, -0.5], 2, &t)
            .unwrap()
            .unwrap();
        assert_eq!(v.len(), 2);
        assert!(v.iter().any(|w| (w - vector(&[0.0, 0.5])).norm() < 1e-9));
        assert!(v.iter().any(|w| (w - vector(&[1.0, 0.5])).norm() < 1e-9));
        assert!(vertices_of_hrep(&n, &[1.0, 0.0, 0.5, -0.6], 2, &t)
            .unwrap()
            .is_none());
        let v = vertices_of_hrep(&n, &[0.0, 0.0, 0.0, 0.0], 2, &t)
            .unwrap()
            .unwrap();
        assert_eq!(v.len(), 1);
        assert!(matches!(
            vertices_of_hrep(&n[..3], &[1.0, 0.0, 1.0], 2, &t),
            Err(Error::Unbounded)
        ));
    }
}
