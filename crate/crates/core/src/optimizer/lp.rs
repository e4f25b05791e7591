use crate::error::{check_dim, Error, Result};
use crate::geometry::{Matrix, Vector};
use crate::tol::Tolerances;

use super::simplex::{solve_standard, StdStatus};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// `maximize objective·x` subject to row constraints and optional bounds.
/// Variables without bounds are free.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub objective: Vector,
    pub constraint_matrix: Matrix,
    pub constraint_rhs: Vector,
    pub senses: Vec<Sense>,
    pub lower: Vec<Option<f64>>,
    pub upper: Vec<Option<f64>>,
    /// Break ties between optimal vertices by the lexicographically smallest
    /// optimizer.
    pub lexicographic: bool,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: f64,
    pub x: Vector,
}

impl LinearProgram {
    pub fn maximize(objective: Vector) -> Self {
        let n = objective.len();
        Self {
            objective,
            constraint_matrix: Matrix::zeros(0, n),
            constraint_rhs: Vector::zeros(0),
            senses: Vec::new(),
            lower: vec![None; n],
            upper: vec![None; n],
            lexicographic: true,
        }
    }

    pub fn minimize(objective: Vector) -> Self {
        Self::maximize(-objective)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn constraint(mut self, row: &[f64], sense: Sense, rhs: f64) -> Self {
        assert_eq!(row.len(), self.num_vars(), "constraint row length");
        let m = self.constraint_matrix.nrows();
        self.constraint_matrix = self.constraint_matrix.insert_row(m, 0.0);
        for (j, v) in row.iter().enumerate() {
            self.constraint_matrix[(m, j)] = *v;
        }
        self.constraint_rhs = self.constraint_rhs.push(rhs);
        self.senses.push(sense);
        self
    }

    pub fn le(self, row: &[f64], rhs: f64) -> Self {
        self.constraint(row, Sense::Le, rhs)
    }

    pub fn eq(self, row: &[f64], rhs: f64) -> Self {
        self.constraint(row, Sense::Eq, rhs)
    }

    pub fn ge(self, row: &[f64], rhs: f64) -> Self {
        self.constraint(row, Sense::Ge, rhs)
    }

    pub fn bounds(mut self, j: usize, lower: Option<f64>, upper: Option<f64>) -> Self {
        self.lower[j] = lower;
        self.upper[j] = upper;
        self
    }

    pub fn nonnegative(mut self) -> Self {
        for l in &mut self.lower {
            *l = Some(0.0);
        }
        self
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        check_dim(n, self.constraint_matrix.ncols())?;
        check_dim(self.constraint_matrix.nrows(), self.constraint_rhs.len())?;
        check_dim(self.constraint_matrix.nrows(), self.senses.len())?;
        check_dim(n, self.lower.len())?;
        check_dim(n, self.upper.len())?;
        let finite = self.objective.iter().all(|v| v.is_finite())
            && self.constraint_matrix.iter().all(|v| v.is_finite())
            && self.constraint_rhs.iter().all(|v| v.is_finite());
        if !finite {
            return Err(Error::Config("non-finite entry in linear program".into()));
        }
        Ok(())
    }
}

/// Maps original variables to standard-form columns.
enum VarMap {
    /// x = shift + x'
    Shift(usize, f64),
    /// x = shift − x'
    Flip(usize, f64),
    /// x = x⁺ − x⁻
    Split(usize, usize),
}

fn solve_once(p: &LinearProgram, tol: &Tolerances) -> Result<LpSolution> {
    let n = p.num_vars();
    let mut maps = Vec::with_capacity(n);
    let mut cols = 0usize;
    let mut extra_rows: Vec<(usize, f64)> = Vec::new();
    for j in 0..n {
        match (p.lower[j], p.upper[j]) {
            (Some(l), u) => {
                maps.push(VarMap::Shift(cols, l));
                if let Some(u) = u {
                    extra_rows.push((cols, u - l));
                }
                cols += 1;
            }
            (None, Some(u)) => {
                maps.push(VarMap::Flip(cols, u));
                cols += 1;
            }
            (None, None) => {
                maps.push(VarMap::Split(cols, cols + 1));
                cols += 2;
            }
        }
    }
    let m0 = p.constraint_matrix.nrows();
    let n_slack = p.senses.iter().filter(|s| **s != Sense::Eq).count() + extra_rows.len();
    let m = m0 + extra_rows.len();
    let total = cols + n_slack;
    let mut a = Matrix::zeros(m, total);
    let mut b = Vector::zeros(m);
    let mut c = Vector::zeros(total);
    for (j, map) in maps.iter().enumerate() {
        let cj = -p.objective[j];
        match *map {
            VarMap::Shift(k, _) => {
                c[k] += cj;
            }
            VarMap::Flip(k, _) => {
                c[k] -= cj;
            }
            VarMap::Split(k1, k2) => {
                c[k1] += cj;
                c[k2] -= cj;
            }
        }
    }
    let mut slack = cols;
    for i in 0..m0 {
        let mut rhs = p.constraint_rhs[i];
        for (j, map) in maps.iter().enumerate() {
            let aij = p.constraint_matrix[(i, j)];
            if aij == 0.0 {
                continue;
            }
            match *map {
                VarMap::Shift(k, s) => {
                    a[(i, k)] += aij;
                    rhs -= aij * s;
                }
                VarMap::Flip(k, s) => {
                    a[(i, k)] -= aij;
                    rhs -= aij * s;
                }
                VarMap::Split(k1, k2) => {
                    a[(i, k1)] += aij;
                    a[(i, k2)] -= aij;
                }
            }
        }
        match p.senses[i] {
            Sense::Le => {
                a[(i, slack)] = 1.0;
                slack += 1;
            }
            Sense::Ge => {
                a[(i, slack)] = -1.0;
                slack += 1;
            }
            Sense::Eq => {}
        }
        b[i] = rhs;
    }
    for (r, (k, ub)) in extra_rows.iter().enumerate() {
        let i = m0 + r;
        a[(i, *k)] = 1.0;
        a[(i, slack)] = 1.0;
        slack += 1;
        b[i] = *ub;
    }
    let sol = solve_standard(&a, &b, &c, tol.feas, tol.max_iter)?;
    let status = match sol.status {
        StdStatus::Optimal => LpStatus::Optimal,
        StdStatus::Infeasible => LpStatus::Infeasible,
        StdStatus::Unbounded => LpStatus::Unbounded,
    };
    if status != LpStatus::Optimal {
        let value = if status == LpStatus::Unbounded {
            f64::INFINITY
        } else {
            f64::NAN
        };
        return Ok(LpSolution {
            status,
            value,
            x: Vector::zeros(n),
        });
    }
    let x = Vector::from_iterator(
        n,
        maps.iter().map(|map| match *map {
            VarMap::Shift(k, s) => s + sol.x[k],
            VarMap::Flip(k, s) => s - sol.x[k],
            VarMap::Split(k1, k2) => sol.x[k1] - sol.x[k2],
        }),
    );
    let value = p.objective.dot(&x);
    Ok(LpSolution { status, value, x })
}

/// Solve a linear program with the default tolerances.
pub fn lp_solve(p: &LinearProgram) -> Result<LpSolution> {
    lp_solve_with(p, &Tolerances::default())
}

pub fn lp_solve_with(p: &LinearProgram, tol: &Tolerances) -> Result<LpSolution> {
    p.validate()?;
    let first = solve_once(p, tol)?;
    if first.status != LpStatus::Optimal || !p.lexicographic {
        return Ok(first);
    }
    // Lexicographic refinement: minimize x_0, x_1, ... in turn over the
    // optimal face, pinning earlier coordinates.
    let n = p.num_vars();
    // pins must be far tighter than the optimality tolerance, or the
    // refinement trades objective value for lexicographic order
    let slack = 1e-11 * (1.0 + first.value.abs());
    let mut face = p.clone();
    face.lexicographic = false;
    let obj_row: Vec<f64> = p.objective.iter().copied().collect();
    face = face.ge(&obj_row, first.value - slack);
    let mut best = first.x.clone();
    for j in 0..n {
        let mut e = Vector::zeros(n);
        e[j] = -1.0;
        let mut q = face.clone();
        q.objective = e;
        let sol = solve_once(&q, tol)?;
        if sol.status != LpStatus::Optimal {
            break;
        }
        best = sol.x.clone();
        let mut row = vec![0.0; n];
        row[j] = 1.0;
        let pin = sol.x[j] + 1e-11 * (1.0 + sol.x[j].abs());
        face = face.le(&row, pin);
    }
    Ok(LpSolution {
        status: LpStatus::Optimal,
        value: p.objective.dot(&best),
        x: best,
    })
}

/// `max c·x  s.t.  G x ≤ h` over free `x`, solved through the dual
/// `min h·y  s.t.  Gᵀy = c, y ≥ 0`, which has only `dim x` rows.
pub fn maximize_over_halfspaces(
    g: &Matrix,
    h: &Vector,
    c: &Vector,
    tol: &Tolerances,
) -> Result<LpSolution> {
    let (m, d) = g.shape();
    check_dim(d, c.len())?;
    check_dim(m, h.len())?;
    let gt = g.transpose();
    let sol = solve_standard(&gt, c, h, tol.feas, tol.max_iter)?;
    match sol.status {
        StdStatus::Optimal => {
            let mut x = sol.y.clone();
            polish_vertex(g, h, &sol.basis, &mut x);
            Ok(LpSolution {
                status: LpStatus::Optimal,
                value: c.dot(&x),
                x,
            })
        }
        StdStatus::Unbounded => Ok(LpSolution {
            status: LpStatus::Infeasible,
            value: f64::NAN,
            x: Vector::zeros(d),
        }),
        StdStatus::Infeasible => {
            // the primal is unbounded if it is feasible at all
            let zero = solve_standard(&gt, &Vector::zeros(d), h, tol.feas, tol.max_iter)?;
            let status = if zero.status == StdStatus::Unbounded {
                LpStatus::Infeasible
            } else {
                LpStatus::Unbounded
            };
            Ok(LpSolution {
                status,
                value: if status == LpStatus::Unbounded {
                    f64::INFINITY
                } else {
                    f64::NAN
                },
                x: Vector::zeros(d),
            })
        }
    }
}

/// Re-solve the active constraints of a basic solution directly, which is
/// more accurate than the multipliers read off a long pivot sequence.
fn polish_vertex(g: &Matrix, h: &Vector, basis: &[usize], x: &mut Vector) {
    let (m, d) = g.shape();
    let active: Vec<usize> = basis.iter().copied().filter(|&j| j < m).collect();
    if active.len() != d {
        return;
    }
    let a = Matrix::from_fn(d, d, |i, j| g[(active[i], j)]);
    let b = Vector::from_iterator(d, active.iter().map(|&i| h[i]));
    if let Some(sol) = a.lu().solve(&b) {
        if sol.iter().all(|v| v.is_finite()) && (&sol - &*x).norm() < 1e-6 * (1.0 + x.norm()) {
            *x = sol;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vector;

    #[test]
    fn spec_examples() {
        let p = LinearProgram::maximize(vector(&[1.0, 0.0]))
            .le(&[1.0, 1.0], 1.0)
            .nonnegative();
        let s = lp_solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.value - 1.0).abs() < 1e-12);
        assert!((s.x - vector(&[1.0, 0.0])).norm() < 1e-12);

        let p = LinearProgram::maximize(vector(&[1.0]))
            .le(&[1.0], 0.0)
            .ge(&[1.0], 1.0);
        assert_eq!(lp_solve(&p).unwrap().status, LpStatus::Infeasible);

        let p = LinearProgram::maximize(vector(&[1.0]));
        assert_eq!(lp_solve(&p).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn lexicographic_tie_break() {
        // every point of the top edge of the square is optimal for max x2
        let p = LinearProgram::maximize(vector(&[0.0, 1.0]))
            .bounds(0, Some(-1.0), Some(1.0))
            .bounds(1, Some(-1.0), Some(1.0));
        let s = lp_solve(&p).unwrap();
        assert!((s.x - vector(&[-1.0, 1.0])).norm() < 1e-8);
    }

    #[test]
    fn bounds_and_equalities() {
        // max x + y, x + y = 3, x ≤ 1 (upper only), y ∈ [0, 5]
        let p = LinearProgram::maximize(vector(&[1.0, 1.0]))
            .eq(&[1.0, 1.0], 3.0)
            .bounds(0, None, Some(1.0))
            .bounds(1, Some(0.0), Some(5.0));
        let s = lp_solve(&p).unwrap();
        assert!((s.value - 3.0).abs() < 1e-12);
        assert!((s.x - vector(&[-2.0, 5.0])).norm() < 1e-8);
    }

    #[test]
    fn halfspace_form() {
        let g = Matrix::from_row_slice(4, 2, &[1.0, 0.0, -1.0, 0.0, 0.0, 1.0, 0.0, -1.0]);
        let h = vector(&[1.0, 1.0, 2.0, 2.0]);
        let t = Tolerances::default();
        let s = maximize_over_halfspaces(&g, &h, &vector(&[1.0, 1.0]), &t).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.x - vector(&[1.0, 2.0])).norm() < 1e-12);
        let s = maximize_over_halfspaces(
            &g.rows(0, 3).into_owned(),
            &h.rows(0, 3).into_owned(),
            &vector(&[0.0, -1.0]),
            &t,
        )
        .unwrap();
        assert_eq!(s.status, LpStatus::Unbounded);
        let g2 = Matrix::from_row_slice(2, 1, &[1.0, -1.0]);
        let s = maximize_over_halfspaces(&g2, &vector(&[0.0, -1.0]), &vector(&[1.0]), &t).unwrap();
        assert_eq!(s.status, LpStatus::Infeasible);
    }
}
