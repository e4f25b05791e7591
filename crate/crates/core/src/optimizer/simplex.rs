//! Dense two-phase tableau simplex with Bland's rule.
//!
//! Works on the standard form `min cᵀx  s.t.  Ax = b, x ≥ 0` and returns the
//! row multipliers alongside the primal solution.

use crate::error::{Error, Result};
use crate::geometry::{Matrix, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StdStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct StdSolution {
    pub status: StdStatus,
    pub x: Vector,
    /// Multipliers `y` with `Aᵀy ≤ c` at optimality.
    pub y: Vector,
    pub value: f64,
    /// Basic column per row (indices ≥ n are artificials).
    pub basis: Vec<usize>,
}

struct Tableau {
    // (m + 1) rows × (ncols + 1) columns, row-major; the last row holds
    // reduced costs and the last column the right-hand side.
    t: Vec<f64>,
    m: usize,
    ncols: usize,
    basis: Vec<usize>,
}

impl Tableau {
    #[inline]
    fn w(&self) -> usize {
        self.ncols + 1
    }
    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.t[i * self.w() + j]
    }
    #[inline]
    fn rhs(&self, i: usize) -> f64 {
        self.t[i * self.w() + self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.w();
        let p = self.t[r * w + c];
        for j in 0..w {
            self.t[r * w + j] /= p;
        }
        self.t[r * w + c] = 1.0;
        let (before, rest) = self.t.split_at_mut(r * w);
        let (prow, after) = rest.split_at_mut(w);
        let eliminate = |row: &mut [f64]| {
            let f = row[c];
            if f != 0.0 {
                for j in 0..w {
                    row[j] -= f * prow[j];
                }
                row[c] = 0.0;
            }
        };
        for row in before.chunks_mut(w) {
            eliminate(row);
        }
        for row in after.chunks_mut(w) {
            eliminate(row);
        }
        self.basis[r] = c;
    }

    /// Run simplex iterations on the current objective row. `allowed(j)`
    /// filters entering columns.
    fn iterate(
        &mut self,
        allowed: &dyn Fn(usize) -> bool,
        eps_rc: f64,
        eps_piv: f64,
        max_iter: usize,
        trace: &mut Vec<f64>,
    ) -> Result<bool> {
        let m = self.m;
        for _ in 0..max_iter {
            // Bland: lowest-index improving column
            let mut enter = None;
            for j in 0..self.ncols {
                if allowed(j) && self.at(m, j) < -eps_rc {
                    enter = Some(j);
                    break;
                }
            }
            let Some(c) = enter else {
                return Ok(true);
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..m {
                let a = self.at(i, c);
                if a > eps_piv {
                    let ratio = self.rhs(i) / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            if ratio < br - 1e-14 * (1.0 + br.abs())
                                || (ratio <= br + 1e-14 * (1.0 + br.abs())
                                    && self.basis[i] < self.basis[bi])
                            {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = leave else {
                return Ok(false);
            };
            self.pivot(r, c);
            if trace.len() < 64 {
                trace.push(-self.rhs(m));
            }
        }
        Err(Error::SolverStall {
            iterations: max_iter,
            trace: trace.clone(),
        })
    }
}

/// Solve `min cᵀx s.t. Ax = b, x ≥ 0`. Rows with negative `b` are flipped
/// internally.
pub fn solve_standard(
    a: &Matrix,
    b: &Vector,
    c: &Vector,
    feas_tol: f64,
    max_iter: usize,
) -> Result<StdSolution> {
    let (m, n) = a.shape();
    assert_eq!(b.len(), m);
    assert_eq!(c.len(), n);
    let scale = a.iter().fold(0.0f64, |s, v| s.max(v.abs())).max(1.0);
    let bscale = b.iter().fold(0.0f64, |s, v| s.max(v.abs())).max(1.0);
    let cscale = c.iter().fold(0.0f64, |s, v| s.max(v.abs())).max(1.0);
    let eps_piv = 1e-11 * scale;
    let eps_rc1 = 1e-11 * scale;
    let eps_rc2 = 1e-11 * cscale * scale;

    let ncols = n + m;
    let w = ncols + 1;
    let mut sign = vec![1.0; m];
    let mut t = vec![0.0; (m + 1) * w];
    for i in 0..m {
        let s = if b[i] < 0.0 { -1.0 } else { 1.0 };
        sign[i] = s;
        for j in 0..n {
            t[i * w + j] = s * a[(i, j)];
        }
        t[i * w + n + i] = 1.0;
        t[i * w + ncols] = s * b[i];
    }
    // phase 1 objective: minimize the sum of artificials
    for j in 0..n {
        let mut s = 0.0;
        for i in 0..m {
            s += t[i * w + j];
        }
        t[m * w + j] = -s;
    }
    let mut total = 0.0;
    for i in 0..m {
        total += t[i * w + ncols];
    }
    t[m * w + ncols] = -total;

    let mut tab = Tableau {
        t,
        m,
        ncols,
        basis: (n..n + m).collect(),
    };
    let mut trace = Vec::new();
    tab.iterate(&|_| true, eps_rc1, eps_piv, max_iter, &mut trace)?;
    let infeas = -tab.rhs(m);
    if infeas > feas_tol * bscale.max(1.0) * (m as f64).sqrt().max(1.0) {
        return Ok(StdSolution {
            status: StdStatus::Infeasible,
            x: Vector::zeros(n),
            y: Vector::zeros(m),
            value: f64::NAN,
            basis: Vec::new(),
        });
    }
    // drive artificials out of the basis where possible
    for i in 0..m {
        if tab.basis[i] >= n {
            let mut best: Option<(usize, f64)> = None;
            for j in 0..n {
                let v = tab.at(i, j).abs();
                if v > eps_piv * 10.0 && best.is_none_or(|(_, bv)| v > bv) {
                    best = Some((j, v));
                }
            }
            if let Some((j, _)) = best {
                tab.pivot(i, j);
            }
        }
    }
    // phase 2 objective row
    let cost = |j: usize| if j < n { c[j] } else { 0.0 };
    for j in 0..=ncols {
        let mut v = if j < ncols { cost(j) } else { 0.0 };
        for i in 0..m {
            let cb = cost(tab.basis[i]);
            if cb != 0.0 {
                v -= cb * tab.at(i, j);
            }
        }
        tab.t[m * w + j] = v;
    }
    let bounded = tab.iterate(&|j| j < n, eps_rc2, eps_piv, max_iter, &mut trace)?;
    if !bounded {
        return Ok(StdSolution {
            status: StdStatus::Unbounded,
            x: Vector::zeros(n),
            y: Vector::zeros(m),
            value: f64::NEG_INFINITY,
            basis: Vec::new(),
        });
    }
    let mut x = Vector::zeros(n);
    for i in 0..m {
        let bj = tab.basis[i];
        if bj < n {
            x[bj] = tab.rhs(i).max(0.0);
        }
    }
    let mut y = Vector::zeros(m);
    for i in 0..m {
        let mut v = 0.0;
        for k in 0..m {
            let cb = cost(tab.basis[k]);
            if cb != 0.0 {
                v += cb * tab.at(k, n + i);
            }
        }
        y[i] = v * sign[i];
    }
    let value = c.dot(&x);
    Ok(StdSolution {
        status: StdStatus::Optimal,
        x,
        y,
        value,
        basis: tab.basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vector;

    #[test]
    fn small_standard_form() {
        // min -x1 - x2 s.t. x1 + 2x2 + s1 = 4, 3x1 + x2 + s2 = 6
        let a = Matrix::from_row_slice(2, 4, &[1.0, 2.0, 1.0, 0.0, 3.0, 1.0, 0.0, 1.0]);
        let sol = solve_standard(
            &a,
            &vector(&[4.0, 6.0]),
            &vector(&[-1.0, -1.0, 0.0, 0.0]),
            1e-9,
            1000,
        )
        .unwrap();
        assert_eq!(sol.status, StdStatus::Optimal);
        assert!((sol.value + 2.8).abs() < 1e-12);
        assert!((sol.x[0] - 1.6).abs() < 1e-12 && (sol.x[1] - 1.2).abs() < 1e-12);
        // dual value equals primal value
        assert!((sol.y.dot(&vector(&[4.0, 6.0])) - sol.value).abs() < 1e-12);
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let a = Matrix::from_row_slice(2, 2, &[1.0, 1.0, 2.0, 2.0]);
        let sol =
            solve_standard(&a, &vector(&[1.0, 2.0]), &vector(&[1.0, 0.0]), 1e-9, 1000).unwrap();
        assert_eq!(sol.status, StdStatus::Optimal);
        assert!(sol.value.abs() < 1e-12);
        assert!((sol.x[1] - 1.0).abs() < 1e-12);
    }
}
