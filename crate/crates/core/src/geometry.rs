//! Linear algebra substrate: orthonormal bases, affine subspaces and linear
//! surjections with their kernels and least-norm right inverses.

use nalgebra::{DMatrix, DVector};

use crate::error::{check_dim, Error, Result};
use crate::tol::Tolerances;

pub type Vector = DVector<f64>;
pub type Matrix = DMatrix<f64>;

/// Build a vector from a slice.
pub fn vector(coords: &[f64]) -> Vector {
    DVector::from_column_slice(coords)
}

/// Modified Gram–Schmidt with one re-orthogonalization pass.
///
/// Vectors whose residual norm falls below `rel_tol` times the largest input
/// norm are dropped, so the output spans the same space with no dependent
/// members.
pub fn orthonormalize(vectors: &[Vector], rel_tol: f64) -> Vec<Vector> {
    let scale = vectors.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Vec::new();
    }
    let mut basis: Vec<Vector> = Vec::new();
    for v in vectors {
        let mut r = v.clone();
        for _ in 0..2 {
            for q in &basis {
                let c = q.dot(&r);
                r.axpy(-c, q, 1.0);
            }
        }
        let n = r.norm();
        if n > rel_tol * scale {
            basis.push(r / n);
        }
    }
    basis
}

/// Orthonormal basis of the orthogonal complement of `span(basis)` in ℝ^dim.
/// `basis` must already be orthonormal.
pub fn orthonormal_complement(basis: &[Vector], dim: usize) -> Vec<Vector> {
    let mut all: Vec<Vector> = basis.to_vec();
    let start = all.len();
    for i in 0..dim {
        let mut e = Vector::zeros(dim);
        e[i] = 1.0;
        for _ in 0..2 {
            for q in &all {
                let c = q.dot(&e);
                e.axpy(-c, q, 1.0);
            }
        }
        let n = e.norm();
        if n > 1e-8 {
            all.push(e / n);
        }
        if all.len() == dim {
            break;
        }
    }
    all.split_off(start)
}

/// Matrix whose columns are the given vectors.
pub fn columns(vectors: &[Vector], rows: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        m.set_column(j, v);
    }
    m
}

/// An affine subspace `base_point + span(directions)` with orthonormal
/// directions.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSubspace {
    base_point: Vector,
    directions: Vec<Vector>,
}

impl AffineSubspace {
    /// Directions are orthonormalized; dependent ones are dropped.
    pub fn new(base_point: Vector, directions: &[Vector]) -> Result<Self> {
        let n = base_point.len();
        for d in directions {
            check_dim(n, d.len())?;
        }
        if base_point.iter().any(|x| !x.is_finite()) {
            return Err(Error::Config("non-finite base point".into()));
        }
        Ok(Self {
            directions: orthonormalize(directions, 1e-12),
            base_point,
        })
    }

    /// The hyperplane `{x : <normal, x> = offset}`.
    pub fn hyperplane(normal: &Vector, offset: f64) -> Result<Self> {
        let nn = normal.norm_squared();
        if nn == 0.0 {
            return Err(Error::DegenerateDirection);
        }
        let base = normal * (offset / nn);
        let unit = normal / nn.sqrt();
        let dirs = orthonormal_complement(&[unit], normal.len());
        Ok(Self {
            base_point: base,
            directions: dirs,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.base_point.len()
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn base_point(&self) -> &Vector {
        &self.base_point
    }

    pub fn directions(&self) -> &[Vector] {
        &self.directions
    }

    /// Coordinates of `x` (assumed in the subspace) in the orthonormal frame.
    pub fn to_coords(&self, x: &Vector) -> Vector {
        let r = x - &self.base_point;
        Vector::from_iterator(self.dim(), self.directions.iter().map(|d| d.dot(&r)))
    }

    pub fn from_coords(&self, t: &Vector) -> Vector {
        let mut x = self.base_point.clone();
        for (d, ti) in self.directions.iter().zip(t.iter()) {
            x.axpy(*ti, d, 1.0);
        }
        x
    }

    /// Orthogonal projection onto the subspace.
    pub fn project(&self, x: &Vector) -> Result<Vector> {
        check_dim(self.ambient_dim(), x.len())?;
        Ok(self.from_coords(&self.to_coords(x)))
    }
}

/// Orthogonal projection of `x` onto `s`.
pub fn project_affine(x: &Vector, s: &AffineSubspace) -> Result<Vector> {
    s.project(x)
}

/// A full-row-rank linear map `ℝ^m → ℝ^k` with cached kernel basis and
/// pseudo-inverse.
#[derive(Clone, Debug)]
pub struct LinearSurjection {
    matrix: Matrix,
    kernel: Vec<Vector>,
    pinv: Matrix,
    sigma_min: f64,
}

impl LinearSurjection {
    pub fn new(matrix: Matrix) -> Result<Self> {
        Self::with_tolerances(matrix, &Tolerances::default())
    }

    pub fn with_tolerances(matrix: Matrix, tol: &Tolerances) -> Result<Self> {
        let (k, m) = matrix.shape();
        if k == 0 || m == 0 || k > m {
            return Err(Error::Rank {
                rank: k.min(m),
                expected: k,
            });
        }
        if matrix.iter().any(|x| !x.is_finite()) {
            return Err(Error::Config("non-finite matrix entry".into()));
        }
        let sv = matrix.clone().svd(false, false).singular_values;
        let smax = sv.max();
        let smin = sv.min();
        let rank = sv.iter().filter(|s| **s > tol.rank * smax).count();
        if smax == 0.0 || rank < k {
            return Err(Error::Rank { rank, expected: k });
        }
        let rows: Vec<Vector> = (0..k).map(|i| matrix.row(i).transpose()).collect();
        let row_basis = orthonormalize(&rows, tol.rank);
        if row_basis.len() < k {
            return Err(Error::Rank {
                rank: row_basis.len(),
                expected: k,
            });
        }
        let kernel = orthonormal_complement(&row_basis, m);
        let gram = &matrix * matrix.transpose();
        let gram_inv = gram
            .try_inverse()
            .ok_or(Error::Rank { rank, expected: k })?;
        let pinv = matrix.transpose() * gram_inv;
        Ok(Self {
            matrix,
            kernel,
            pinv,
            sigma_min: smin,
        })
    }

    /// Build from JSON-style nested rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let k = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        for r in rows {
            check_dim(m, r.len())?;
        }
        Self::new(Matrix::from_fn(k, m, |i, j| rows[i][j]))
    }

    /// The sum map `(y1, y2) ↦ y1 + y2` on `ℝ^n ⊕ ℝ^n`.
    pub fn sum(n: usize) -> Self {
        Self::new(Matrix::from_fn(n, 2 * n, |i, j| {
            if j % n == i {
                1.0
            } else {
                0.0
            }
        }))
        .expect("sum map has full rank")
    }

    /// The difference map `(y1, y2) ↦ y1 − y2` on `ℝ^n ⊕ ℝ^n`.
    pub fn difference(n: usize) -> Self {
        Self::new(Matrix::from_fn(n, 2 * n, |i, j| {
            if j == i {
                1.0
            } else if j == n + i {
                -1.0
            } else {
                0.0
            }
        }))
        .expect("difference map has full rank")
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn kernel_basis(&self) -> &[Vector] {
        &self.kernel
    }

    pub fn pseudo_inverse(&self) -> &Matrix {
        &self.pinv
    }

    /// Smallest singular value; `1/sigma_min` is the Lipschitz constant of
    /// the least-norm preimage map.
    pub fn sigma_min(&self) -> f64 {
        self.sigma_min
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        check_dim(self.source_dim(), x.len())?;
        Ok(&self.matrix * x)
    }

    /// Minimum-norm `x` with `Lx = y`.
    pub fn least_norm_preimage(&self, y: &Vector) -> Result<Vector> {
        check_dim(self.target_dim(), y.len())?;
        Ok(&self.pinv * y)
    }

    /// `ker L` is not parallel to either factor of `ℝ^{m1} ⊕ ℝ^{m2}`: no
    /// nonzero kernel vector vanishes on a whole block. Returns the offending
    /// kernel vector otherwise.
    pub fn check_not_parallel(&self, m1: usize) -> Result<()> {
        let m = self.source_dim();
        if m1 > m {
            return Err(Error::Dim {
                expected: m,
                got: m1,
            });
        }
        if self.kernel.is_empty() {
            return Ok(());
        }
        let kmat = columns(&self.kernel, m);
        let nk = kmat.ncols();
        for (start, len) in [(0, m1), (m1, m - m1)] {
            // coefficient vectors c with block·c = 0 give kernel vectors
            // vanishing on this block
            let block = kmat.rows(start, len);
            let rows: Vec<Vector> = (0..len).map(|i| block.row(i).transpose()).collect();
            let row_space = orthonormalize(&rows, 1e-10);
            if let Some(c) = orthonormal_complement(&row_space, nk).into_iter().next() {
                return Err(Error::NotParallelViolation {
                    kernel_vector: &kmat * c,
                });
            }
        }
        Ok(())
    }
}
