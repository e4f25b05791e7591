use crate::error::{check_dim, Error, Result};
use crate::geometry::{AffineSubspace, Matrix, Vector};
use crate::optimizer::{maximize_over_halfspaces, LpStatus};
use crate::tol::Tolerances;

use super::hull::{vertices_of_hrep, Facet};
use super::ConvexBody;

/// `{x : nᵢ·x ≤ bᵢ}` with unit normals. Lower-dimensional sets carry their
/// affine hull as pairs of opposite half-spaces.
#[derive(Clone, Debug, PartialEq)]
pub struct HPolytope {
    dim: usize,
    normals: Vec<Vector>,
    offsets: Vec<f64>,
}

impl HPolytope {
    /// Rows are rescaled to unit normals. A zero row is kept only when it is
    /// violated (`0 ≤ b` with `b < 0`), which makes the set empty.
    pub fn new(dim: usize, normals: Vec<Vector>, offsets: Vec<f64>) -> Result<Self> {
        check_dim(normals.len(), offsets.len())?;
        let mut n_out = Vec::with_capacity(normals.len());
        let mut b_out = Vec::with_capacity(offsets.len());
        for (n, b) in normals.into_iter().zip(offsets) {
            check_dim(dim, n.len())?;
            if !b.is_finite() || n.iter().any(|v| !v.is_finite()) {
                return Err(Error::Config("non-finite half-space".into()));
            }
            let norm = n.norm();
            if norm > 0.0 {
                n_out.push(n / norm);
                b_out.push(b / norm);
            } else if b < 0.0 {
                n_out.push(Vector::zeros(dim));
                b_out.push(b);
            }
        }
        Ok(Self {
            dim,
            normals: n_out,
            offsets: b_out,
        })
    }

    pub(crate) fn from_facets(dim: usize, facets: Vec<Facet>) -> Self {
        let (normals, offsets) = facets.into_iter().map(|f| (f.normal, f.offset)).unzip();
        Self {
            dim,
            normals,
            offsets,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn normals(&self) -> &[Vector] {
        &self.normals
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    /// `max_i (nᵢ·x − bᵢ)`: nonpositive inside.
    pub fn slack(&self, x: &Vector) -> f64 {
        self.normals
            .iter()
            .zip(&self.offsets)
            .map(|(n, b)| n.dot(x) - b)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Every constraint holds within `tol`.
    pub fn satisfies(&self, x: &Vector, tol: f64) -> bool {
        x.len() == self.dim && self.slack(x) <= tol
    }

    pub fn intersect(&self, other: &HPolytope) -> Result<HPolytope> {
        check_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        out.normals.extend(other.normals.iter().cloned());
        out.offsets.extend(other.offsets.iter().copied());
        Ok(out)
    }

    pub fn translate(&self, v: &Vector) -> HPolytope {
        let offsets = self
            .normals
            .iter()
            .zip(&self.offsets)
            .map(|(n, b)| b + n.dot(v))
            .collect();
        HPolytope {
            dim: self.dim,
            normals: self.normals.clone(),
            offsets,
        }
    }

    /// The reflection `−P`.
    pub fn negate(&self) -> HPolytope {
        HPolytope {
            dim: self.dim,
            normals: self.normals.iter().map(|n| -n).collect(),
            offsets: self.offsets.clone(),
        }
    }

    /// Shift every offset by `−h(nᵢ)`.
    pub fn shrink_by<F: Fn(&Vector) -> f64>(&self, h: F) -> HPolytope {
        let offsets = self
            .normals
            .iter()
            .zip(&self.offsets)
            .map(|(n, b)| b - h(n))
            .collect();
        HPolytope {
            dim: self.dim,
            normals: self.normals.clone(),
            offsets,
        }
    }

    /// Restriction to an affine subspace, in its orthonormal coordinates.
    pub fn slice(&self, s: &AffineSubspace) -> Result<HPolytope> {
        check_dim(self.dim, s.ambient_dim())?;
        let k = s.dim();
        let mut normals = Vec::with_capacity(self.len());
        let mut offsets = Vec::with_capacity(self.len());
        for (n, b) in self.normals.iter().zip(&self.offsets) {
            normals.push(Vector::from_iterator(
                k,
                s.directions().iter().map(|d| d.dot(n)),
            ));
            offsets.push(b - n.dot(s.base_point()));
        }
        // rows orthogonal to the slice become 0 ≤ r; `new` keeps the
        // violated ones
        HPolytope::new(k, normals, offsets)
    }

    /// Lift an H-polytope on the coordinates `offset..offset+dim` into
    /// ℝ^total.
    pub fn embed(&self, total: usize, offset: usize) -> HPolytope {
        let normals = self
            .normals
            .iter()
            .map(|n| {
                let mut full = Vector::zeros(total);
                full.rows_mut(offset, self.dim).copy_from(n);
                full
            })
            .collect();
        HPolytope {
            dim: total,
            normals,
            offsets: self.offsets.clone(),
        }
    }

    /// Vertices, or `None` when the set is empty.
    pub fn vertices(&self, tol: &Tolerances) -> Result<Option<Vec<Vector>>> {
        if self.normals.iter().any(|n| n.norm() == 0.0) {
            return Ok(None);
        }
        vertices_of_hrep(&self.normals, &self.offsets, self.dim, tol)
    }

    /// Vertex body, or `None` when the set is empty.
    pub fn to_body(&self, tol: &Tolerances) -> Result<Option<ConvexBody>> {
        Ok(self
            .vertices(tol)?
            .map(|v| ConvexBody::VPolytope { vertices: v }))
    }

    /// Bounded and nonempty, checked by LP in every coordinate direction.
    pub fn check(&self, tol: &Tolerances) -> Result<()> {
        let g = Matrix::from_fn(self.len(), self.dim, |i, j| self.normals[i][j]);
        let h = Vector::from_column_slice(&self.offsets);
        for j in 0..self.dim {
            for s in [1.0, -1.0] {
                let mut c = Vector::zeros(self.dim);
                c[j] = s;
                match maximize_over_halfspaces(&g, &h, &c, tol)?.status {
                    LpStatus::Optimal => {}
                    LpStatus::Infeasible => return Err(Error::Infeasible),
                    LpStatus::Unbounded => return Err(Error::Unbounded),
                }
            }
        }
        Ok(())
    }
}
