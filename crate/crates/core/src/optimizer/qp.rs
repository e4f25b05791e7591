//! Euclidean projections: an active-set method for polyhedra given by
//! constraints and Wolfe's minimum-norm-point algorithm for convex hulls.

use crate::error::{check_dim, Error, Result};
use crate::geometry::{Matrix, Vector};
use crate::tol::Tolerances;

use super::lp::{lp_solve_with, LinearProgram, LpStatus, Sense};

/// Projection of a target onto a feasible region.
#[derive(Clone, Debug)]
pub struct QpSolution {
    pub point: Vector,
    /// `max_{y ∈ region} ⟨target − point, y − point⟩`; nonpositive up to
    /// rounding exactly when `point` is the projection.
    pub vi_residual: f64,
}

/// Inequality and equality rows extracted from a linear program, bounds
/// included.
fn region_rows(p: &LinearProgram) -> (Vec<Vector>, Vec<f64>, Vec<Vector>) {
    let n = p.num_vars();
    let (mut gi, mut hi, mut ge) = (Vec::new(), Vec::new(), Vec::new());
    for i in 0..p.constraint_matrix.nrows() {
        let row = p.constraint_matrix.row(i).transpose();
        let rhs = p.constraint_rhs[i];
        match p.senses[i] {
            Sense::Le => {
                gi.push(row);
                hi.push(rhs);
            }
            Sense::Ge => {
                gi.push(-row);
                hi.push(-rhs);
            }
            Sense::Eq => {
                // the start point already satisfies equalities, and the
                // iteration only moves inside their null space
                ge.push(row);
            }
        }
    }
    for j in 0..n {
        let mut e = Vector::zeros(n);
        e[j] = 1.0;
        if let Some(u) = p.upper[j] {
            gi.push(e.clone());
            hi.push(u);
        }
        if let Some(l) = p.lower[j] {
            gi.push(-e);
            hi.push(-l);
        }
    }
    (gi, hi, ge)
}

/// Least-squares solve of `(A Aᵀ) λ = A r`, i.e. the multipliers of the
/// projection of `r` onto `null(A)`.
fn project_null(rows: &[&Vector], r: &Vector) -> (Vector, Vector) {
    if rows.is_empty() {
        return (r.clone(), Vector::zeros(0));
    }
    let d = r.len();
    let a = Matrix::from_fn(rows.len(), d, |i, j| rows[i][j]);
    let gram = &a * a.transpose();
    let rhs = &a * r;
    let svd = gram.svd(true, true);
    let smax = svd.singular_values.max();
    let lambda = svd
        .solve(&rhs, 1e-13 * smax.max(1e-300))
        .unwrap_or_else(|_| Vector::zeros(rows.len()));
    let p = r - a.transpose() * &lambda;
    (p, lambda)
}

/// Euclidean projection of `target` onto the feasible region of `region`
/// (its objective is ignored).
pub fn nearest_point_qp(target: &Vector, region: &LinearProgram) -> Result<QpSolution> {
    nearest_point_qp_with(target, region, &Tolerances::default())
}

pub fn nearest_point_qp_with(
    target: &Vector,
    region: &LinearProgram,
    tol: &Tolerances,
) -> Result<QpSolution> {
    let d = region.num_vars();
    check_dim(d, target.len())?;
    let mut feas = region.clone();
    feas.objective = Vector::zeros(d);
    feas.lexicographic = false;
    let start = lp_solve_with(&feas, tol)?;
    if start.status == LpStatus::Infeasible {
        return Err(Error::Infeasible);
    }
    let (gi, hi, ge) = region_rows(region);
    let point = active_set(target, start.x, &gi, &hi, &ge, tol)?;

    // variational-inequality certificate: max ⟨t − x, y⟩ over the region
    let dir = target - &point;
    let mut cert = region.clone();
    cert.objective = dir.clone();
    cert.lexicographic = false;
    let s = lp_solve_with(&cert, tol)?;
    let vi_residual = match s.status {
        LpStatus::Optimal => s.value - dir.dot(&point),
        _ => f64::INFINITY,
    };
    Ok(QpSolution { point, vi_residual })
}

/// Primal active-set iteration for `min ½‖x − t‖²` subject to
/// `gᵢ·x ≤ hᵢ` and `eⱼ·x = fⱼ`, started from a feasible `x`.
fn active_set(
    target: &Vector,
    mut x: Vector,
    gi: &[Vector],
    hi: &[f64],
    ge: &[Vector],
    tol: &Tolerances,
) -> Result<Vector> {
    let d = target.len();
    let scale = 1.0 + target.norm() + x.norm();
    let act_tol = 1e-9 * scale;
    // equalities first, then a linearly independent set of active rows
    let mut work: Vec<usize> = Vec::new();
    let mut basis: Vec<Vector> = Vec::new();
    let add_indep = |row: &Vector, basis: &mut Vec<Vector>| -> bool {
        let mut r = row.clone();
        for _ in 0..2 {
            for q in basis.iter() {
                let c = q.dot(&r);
                r.axpy(-c, q, 1.0);
            }
        }
        let n = r.norm();
        if n > 1e-9 * row.norm() && basis.len() < d {
            basis.push(r / n);
            true
        } else {
            false
        }
    };
    let mut eq_used = Vec::new();
    for (j, e) in ge.iter().enumerate() {
        if add_indep(e, &mut basis) {
            eq_used.push(j);
        }
    }
    for (i, g) in gi.iter().enumerate() {
        if (g.dot(&x) - hi[i]).abs() <= act_tol && add_indep(g, &mut basis) {
            work.push(i);
        }
    }
    let mut trace = Vec::new();
    for _ in 0..tol.max_iter {
        let rows: Vec<&Vector> = eq_used
            .iter()
            .map(|&j| &ge[j])
            .chain(work.iter().map(|&i| &gi[i]))
            .collect();
        let r = target - &x;
        let (p, lambda) = project_null(&rows, &r);
        if trace.len() < 64 {
            trace.push(r.norm());
        }
        if p.norm() <= 1e-13 * scale {
            // multipliers of inequality rows must be nonnegative
            let ne = eq_used.len();
            let mut worst: Option<(usize, f64)> = None;
            for (k, _) in work.iter().enumerate() {
                let l = lambda[ne + k];
                if l < -tol.opt * scale && worst.is_none_or(|(_, w)| l < w) {
                    worst = Some((k, l));
                }
            }
            match worst {
                None => return Ok(x),
                Some((k, _)) => {
                    work.remove(k);
                    continue;
                }
            }
        }
        let mut alpha = 1.0;
        let mut block = None;
        for (i, g) in gi.iter().enumerate() {
            if work.contains(&i) {
                continue;
            }
            let gp = g.dot(&p);
            if gp > 1e-14 * g.norm() * p.norm() {
                let step = ((hi[i] - g.dot(&x)) / gp).max(0.0);
                if step < alpha {
                    alpha = step;
                    block = Some(i);
                }
            }
        }
        x.axpy(alpha, &p, 1.0);
        if let Some(i) = block {
            work.push(i);
        }
    }
    Err(Error::SolverStall {
        iterations: tol.max_iter,
        trace,
    })
}

/// Result of Wolfe's algorithm on a convex set `K`.
#[derive(Clone, Debug)]
pub struct MinNorm {
    /// Approximate minimum-norm point of `K`.
    pub point: Vector,
    /// Certified lower bound on `min_{k ∈ K} ‖k‖`.
    pub lower: f64,
    /// Points of `K` whose convex combination is `point`.
    pub corral: Vec<(Vector, f64)>,
}

/// Wolfe's minimum-norm-point algorithm driven by a linear minimization
/// oracle: `oracle(x)` must return a point of `K` minimizing `⟨x, ·⟩`.
///
/// Stops when the Frank–Wolfe gap `‖x‖² − ⟨x, p⟩` falls below
/// `rel_gap · scale²` or when the oracle repeats a corral point.
pub fn wolfe<F: FnMut(&Vector) -> Vector>(
    start: Vector,
    mut oracle: F,
    rel_gap: f64,
    max_major: usize,
) -> MinNorm {
    let d = start.len();
    let mut scale = start.norm();
    let mut pts: Vec<Vector> = vec![start.clone()];
    let mut w = vec![1.0];
    let mut x = start;
    let eps_w = 1e-12;
    let mut lower = 0.0f64;
    for _ in 0..max_major {
        let xx = x.norm_squared();
        if xx == 0.0 {
            lower = 0.0;
            break;
        }
        let p = oracle(&x);
        scale = scale.max(p.norm());
        let xp = x.dot(&p);
        lower = lower.max(xp / xx.sqrt());
        if xx - xp <= rel_gap * scale * scale || pts.contains(&p) {
            break;
        }
        pts.push(p);
        w.push(0.0);
        for _ in 0..=(d + 2) {
            let alpha = affine_minimizer(&pts);
            if alpha.iter().all(|a| *a > eps_w) {
                w = alpha;
                break;
            }
            let mut theta = 1.0f64;
            for (k, a) in alpha.iter().enumerate() {
                if *a <= eps_w && w[k] - a > 0.0 {
                    theta = theta.min(w[k] / (w[k] - a));
                }
            }
            for k in 0..w.len() {
                w[k] = theta * alpha[k] + (1.0 - theta) * w[k];
            }
            let mut k = 0;
            while k < pts.len() {
                if w[k] <= eps_w {
                    pts.remove(k);
                    w.remove(k);
                } else {
                    k += 1;
                }
            }
            let total: f64 = w.iter().sum();
            for wk in &mut w {
                *wk /= total;
            }
        }
        let mut nx = Vector::zeros(d);
        for (p, wi) in pts.iter().zip(&w) {
            nx.axpy(*wi, p, 1.0);
        }
        x = nx;
    }
    let lower = lower.max(0.0).min(x.norm());
    MinNorm {
        point: x,
        lower,
        corral: pts.into_iter().zip(w).collect(),
    }
}

/// Minimum-norm point of `conv(points)` by Wolfe's algorithm, with its
/// convex weights.
pub fn min_norm_point(points: &[Vector]) -> Result<(Vector, Vec<(Vector, f64)>)> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let d = first.len();
    for p in points {
        check_dim(d, p.len())?;
    }
    let start = points
        .iter()
        .min_by(|a, b| a.norm_squared().total_cmp(&b.norm_squared()))
        .unwrap()
        .clone();
    let oracle = |x: &Vector| {
        let mut best = 0;
        let mut bv = f64::INFINITY;
        for (i, p) in points.iter().enumerate() {
            let v = p.dot(x);
            if v < bv {
                bv = v;
                best = i;
            }
        }
        points[best].clone()
    };
    let r = wolfe(start, oracle, 1e-15, 50 * (points.len() + d + 10));
    Ok((r.point, r.corral))
}

/// Weights of the minimum-norm point of the affine hull of `pts`.
fn affine_minimizer(pts: &[Vector]) -> Vec<f64> {
    let k = pts.len();
    let mut m = Matrix::zeros(k + 1, k + 1);
    for a in 0..k {
        for b in 0..k {
            m[(a, b)] = pts[a].dot(&pts[b]);
        }
        m[(a, k)] = 1.0;
        m[(k, a)] = 1.0;
    }
    let mut rhs = Vector::zeros(k + 1);
    rhs[k] = 1.0;
    let smax = m.iter().fold(0.0f64, |s, v| s.max(v.abs()));
    let svd = m.svd(true, true);
    let sol = svd
        .solve(&rhs, 1e-14 * smax)
        .unwrap_or_else(|_| Vector::from_element(k + 1, 1.0 / k as f64));
    let mut alpha: Vec<f64> = sol.iter().take(k).copied().collect();
    let total: f64 = alpha.iter().sum();
    if total.abs() > 1e-300 {
        for a in &mut alpha {
            *a /= total;
        }
    }
    alpha
}

/// Nearest point of `conv(points)` to `target`, with its distance.
pub fn nearest_in_hull(points: &[Vector], target: &Vector) -> Result<(Vector, f64)> {
    let shifted: Vec<Vector> = points.iter().map(|p| p - target).collect();
    let (x, _) = min_norm_point(&shifted)?;
    let dist = x.norm();
    Ok((x + target, dist))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vector;

    fn unit_box() -> LinearProgram {
        LinearProgram::maximize(Vector::zeros(2))
            .bounds(0, Some(-1.0), Some(1.0))
            .bounds(1, Some(-1.0), Some(1.0))
    }

    #[test]
    fn box_projection_examples() {
        let b = unit_box();
        let s = nearest_point_qp(&vector(&[2.0, 0.0]), &b).unwrap();
        assert!((s.point - vector(&[1.0, 0.0])).norm() < 1e-12);
        assert!(s.vi_residual <= 1e-8);
        let s = nearest_point_qp(&vector(&[0.3, -0.2]), &b).unwrap();
        assert!((s.point - vector(&[0.3, -0.2])).norm() < 1e-12);
        let s = nearest_point_qp(&vector(&[2.0, 2.0]), &b).unwrap();
        assert!((s.point - vector(&[1.0, 1.0])).norm() < 1e-12);
    }

    #[test]
    fn infeasible_region() {
        let r = LinearProgram::maximize(Vector::zeros(1))
            .le(&[1.0], 0.0)
            .ge(&[1.0], 1.0);
        assert!(matches!(
            nearest_point_qp(&vector(&[0.0]), &r),
            Err(Error::Infeasible)
        ));
    }

    #[test]
    fn projection_onto_line_with_halfspace() {
        // {x + y = 2, x ≤ 0.5}: projection of the origin is (0.5, 1.5)
        let r = LinearProgram::maximize(Vector::zeros(2))
            .eq(&[1.0, 1.0], 2.0)
            .le(&[1.0, 0.0], 0.5);
        let s = nearest_point_qp(&vector(&[0.0, 0.0]), &r).unwrap();
        assert!((s.point - vector(&[0.5, 1.5])).norm() < 1e-10);
        assert!(s.vi_residual <= 1e-8);
    }

    #[test]
    fn wolfe_on_triangle() {
        let pts = [
            vector(&[1.0, -1.0]),
            vector(&[1.0, 1.0]),
            vector(&[3.0, 0.0]),
        ];
        let (x, w) = min_norm_point(&pts).unwrap();
        assert!((x - vector(&[1.0, 0.0])).norm() < 1e-12);
        assert_eq!(w.len(), 2);
        let (p, dist) = nearest_in_hull(&pts, &vector(&[2.0, 0.0])).unwrap();
        assert!(dist < 1e-12);
        assert!((p - vector(&[2.0, 0.0])).norm() < 1e-12);
    }
}
