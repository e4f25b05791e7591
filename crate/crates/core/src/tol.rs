//! Numerical tolerance record shared by every kernel.

/// Tolerances used by the solvers and certificates.
///
/// `default()` is the working profile; `strict()` tightens every threshold by
/// two orders of magnitude and is selected with `SVSPLIT_TOL_PROFILE=strict`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerances {
    /// Constraint satisfaction.
    pub feas: f64,
    /// Optimality (reduced costs, KKT residuals).
    pub opt: f64,
    /// Relative singular value cut for rank decisions.
    pub rank: f64,
    /// Rank of centered vertex sets when detecting affine hulls.
    pub hull: f64,
    /// Simplex iteration cap.
    pub max_iter: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            feas: 1e-9,
            opt: 1e-8,
            rank: 1e-10,
            hull: 1e-9,
            max_iter: 50_000,
        }
    }
}

impl Tolerances {
    pub fn strict() -> Self {
        Self {
            feas: 1e-11,
            opt: 1e-10,
            rank: 1e-12,
            hull: 1e-11,
            max_iter: 200_000,
        }
    }

    /// Resolve a profile name (`default` or `strict`).
    pub fn from_profile(name: &str) -> Option<Self> {
        match name {
            "default" | "" => Some(Self::default()),
            "strict" => Some(Self::strict()),
            _ => None,
        }
    }
}
