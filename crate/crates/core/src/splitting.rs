//! Splitting a selection of `L(F₁, F₂)` into selections of `F₁` and `F₂`.
//!
//! Every exact solver computes a body of admissible pairs and takes its
//! Steiner point; the approximate solver inflates that body by ε, erodes it
//! by ε/2, takes Chebyshev centers and interpolates linearly between grid
//! points.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::body::{
    geometric_difference, minkowski_sum, to_hrep, ConvexBody, Discretization, HPolytope,
};
use crate::error::{check_dim, Error, Result};
use crate::geometry::{AffineSubspace, LinearSurjection, Vector};
use crate::pset::{pset_check, PsetOptions, Verdict};
use crate::selection::{chebyshev_center, steiner_point, DEFAULT_SAMPLES};
use crate::set_valued::{intersection, point_modulus, Domain, ModulusEstimate, SetValuedMap};
use crate::tol::Tolerances;

#[derive(Clone, Debug, PartialEq)]
pub struct SplitOptions {
    /// Monte Carlo directions for Steiner points without a closed form.
    pub samples: usize,
    pub seed: u64,
    pub tol: Tolerances,
    /// Run the (slow) P-set check on `A + B` for sum traces.
    pub check_pset: bool,
}

impl Default for SplitOptions {
    fn default() -> Self {
        Self {
            samples: DEFAULT_SAMPLES,
            seed: 0,
            tol: Tolerances::default(),
            check_pset: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitResult {
    pub parameter: Vec<f64>,
    pub f1: Vec<f64>,
    pub f2: Vec<f64>,
    /// `‖L(f1, f2) − f‖`.
    pub exactness_residual: f64,
    /// Upper bound on the distance of `f1` to `F1(x)` (0 inside).
    pub membership_slack1: f64,
    pub membership_slack2: f64,
    /// Largest Monte Carlo standard error of the selection (0 when exact).
    pub selection_stderr: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitMode {
    Sum,
    StrictSum,
    Surjection,
    Approximate,
}

impl SplitMode {
    pub fn name(self) -> &'static str {
        match self {
            Self::Sum => "sum",
            Self::StrictSum => "strict",
            Self::Surjection => "surjection",
            Self::Approximate => "approx",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub name: String,
    /// `None` when the check was not run or cannot be decided.
    pub passed: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub checks: Vec<HypothesisCheck>,
}

impl HypothesisReport {
    fn push(&mut self, name: &str, passed: Option<bool>, detail: impl Into<String>) {
        self.checks.push(HypothesisCheck {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// True unless some check failed.
    pub fn satisfied(&self) -> bool {
        self.checks.iter().all(|c| c.passed != Some(false))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MidpointCertificate {
    pub parameter: Vec<f64>,
    pub slack1: f64,
    pub slack2: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitTrace {
    pub mode: SplitMode,
    pub results: Vec<SplitResult>,
    /// Empirical modulus of `x ↦ (f1(x), f2(x))`.
    pub modulus: ModulusEstimate,
    pub hypotheses: HypothesisReport,
    /// Approximate mode only: ε and the midpoint certificates.
    pub epsilon: Option<f64>,
    pub midpoints: Vec<MidpointCertificate>,
}

impl SplitTrace {
    pub fn max_residual(&self) -> f64 {
        self.results
            .iter()
            .map(|r| r.exactness_residual)
            .fold(0.0, f64::max)
    }

    pub fn max_slack(&self) -> f64 {
        self.results
            .iter()
            .map(|r| r.membership_slack1.max(r.membership_slack2))
            .fold(0.0, f64::max)
    }

    pub fn lipschitz(&self) -> f64 {
        self.modulus.lipschitz()
    }

    pub fn midpoints_pass(&self) -> bool {
        self.midpoints.iter().all(|m| m.passed)
    }

    /// Column names of [`SplitTrace::rows`].
    pub fn header(&self) -> Vec<String> {
        let Some(r) = self.results.first() else {
            return Vec::new();
        };
        let mut h: Vec<String> = (0..r.parameter.len())
            .map(|i| {
                if r.parameter.len() == 1 {
                    "x".to_string()
                } else {
                    format!("x{i}")
                }
            })
            .collect();
        h.extend((0..r.f1.len()).map(|i| format!("f1_{i}")));
        h.extend((0..r.f2.len()).map(|i| format!("f2_{i}")));
        h.extend(["residual", "slack1", "slack2"].map(String::from));
        h
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.results
            .iter()
            .map(|r| {
                let mut row = r.parameter.clone();
                row.extend(&r.f1);
                row.extend(&r.f2);
                row.extend([
                    r.exactness_residual,
                    r.membership_slack1,
                    r.membership_slack2,
                ]);
                row
            })
            .collect()
    }

    /// Output values `(f1, f2)` per parameter.
    pub fn outputs(&self) -> Vec<Vector> {
        self.results
            .iter()
            .map(|r| {
                Vector::from_iterator(r.f1.len() + r.f2.len(), r.f1.iter().chain(&r.f2).copied())
            })
            .collect()
    }
}

fn slack(body: &ConvexBody, x: &Vector) -> Result<f64> {
    if body.contains(x, 0.0) {
        return Ok(0.0);
    }
    Ok(body.distance(x)?.upper)
}

fn to_vec(v: &Vector) -> Vec<f64> {
    v.iter().copied().collect()
}

/// Selection of a body: its Steiner point, or the body itself when it is a
/// single point.
fn select(body: &ConvexBody, opts: &SplitOptions) -> Result<(Vector, f64)> {
    if let ConvexBody::VPolytope { vertices } = body {
        if vertices.len() == 1 {
            return Ok((vertices[0].clone(), 0.0));
        }
    }
    let s = steiner_point(body, opts.samples, opts.seed)?;
    Ok((s.point.clone(), s.max_stderr()))
}

fn poly_hrep(body: &ConvexBody) -> Result<HPolytope> {
    if let ConvexBody::Ball { .. } = body {
        return to_hrep(&body.discretize(&Discretization::default())?);
    }
    to_hrep(body)
}

/// Splits points of `A + B` as `a + b` with `a ∈ A`, `b ∈ B`, caching the
/// facet systems of both bodies.
pub struct SumSplitter {
    a: ConvexBody,
    b: ConvexBody,
    ha: Option<HPolytope>,
    hb_neg: Option<HPolytope>,
}

impl SumSplitter {
    pub fn new(a: &ConvexBody, b: &ConvexBody) -> Result<Self> {
        check_dim(a.dim(), b.dim())?;
        let both_balls = matches!((a, b), (ConvexBody::Ball { .. }, ConvexBody::Ball { .. }));
        let (ha, hb_neg) = if both_balls {
            (None, None)
        } else {
            (Some(poly_hrep(a)?), Some(poly_hrep(b)?.negate()))
        };
        Ok(Self {
            a: a.clone(),
            b: b.clone(),
            ha,
            hb_neg,
        })
    }

    /// `D(c) = A ∩ (c − B)`; `None` when empty.
    pub fn fiber(&self, c: &Vector) -> Result<Option<ConvexBody>> {
        check_dim(self.a.dim(), c.len())?;
        match (&self.ha, &self.hb_neg) {
            (Some(ha), Some(hb)) => ha
                .intersect(&hb.translate(c))?
                .to_body(&Tolerances::default()),
            _ => intersection(&self.a, &self.b.scale(-1.0).translate(c)?),
        }
    }

    pub fn split(&self, c: &Vector, opts: &SplitOptions) -> Result<SplitResult> {
        let d = match self.fiber(c)? {
            Some(d) => d,
            None => {
                let sum = minkowski_sum(&self.a, &self.b)?;
                return Err(if slack(&sum, c)? > 1e-8 {
                    Error::OutsideSum
                } else {
                    Error::Inconsistent("empty decomposition set for a point of the sum".into())
                });
            }
        };
        let (a, stderr) = select(&d, opts)?;
        let b = c - &a;
        Ok(SplitResult {
            parameter: to_vec(c),
            f1: to_vec(&a),
            f2: to_vec(&b),
            exactness_residual: (&a + &b - c).norm(),
            membership_slack1: slack(&self.a, &a)?,
            membership_slack2: slack(&self.b, &b)?,
            selection_stderr: stderr,
        })
    }
}

/// `c = a + b` with `a = s(A ∩ (c − B))`.
pub fn split_sum(a: &ConvexBody, b: &ConvexBody, c: &Vector) -> Result<SplitResult> {
    SumSplitter::new(a, b)?.split(c, &SplitOptions::default())
}

/// [`split_sum`] along a sampled path `x ↦ c(x)` of points of `A + B`.
pub fn split_sum_trace(
    a: &ConvexBody,
    b: &ConvexBody,
    domain: &Domain,
    path: &[Vector],
    opts: &SplitOptions,
) -> Result<SplitTrace> {
    check_dim(domain.len(), path.len())?;
    let splitter = SumSplitter::new(a, b)?;
    let mut results = path
        .par_iter()
        .map(|c| splitter.split(c, opts))
        .collect::<Result<Vec<_>>>()?;
    for (r, x) in results.iter_mut().zip(&domain.points) {
        r.parameter = to_vec(x);
    }
    let mut hypotheses = HypothesisReport::default();
    if opts.check_pset && (2..=4).contains(&a.dim()) {
        let c = minkowski_sum(a, b)?;
        let v = pset_check(&c, &PsetOptions::default())?;
        let passed = match v.verdict {
            Verdict::PSet => Some(true),
            Verdict::NotPSet => Some(false),
            Verdict::Inconclusive => None,
        };
        hypotheses.push("sum is a P-set", passed, format!("{:?}", v.verdict));
    } else {
        hypotheses.push("sum is a P-set", None, "not checked");
    }
    finish(SplitMode::Sum, domain, results, hypotheses)
}

fn finish(
    mode: SplitMode,
    domain: &Domain,
    results: Vec<SplitResult>,
    hypotheses: HypothesisReport,
) -> Result<SplitTrace> {
    let values: Vec<Vector> = results
        .iter()
        .map(|r| Vector::from_iterator(r.f1.len() + r.f2.len(), r.f1.iter().chain(&r.f2).copied()))
        .collect();
    let modulus = point_modulus(domain, &values)?;
    Ok(SplitTrace {
        mode,
        results,
        modulus,
        hypotheses,
        epsilon: None,
        midpoints: Vec::new(),
    })
}

fn same_grid(f1: &SetValuedMap, f2: &SetValuedMap, f: &[Vector]) -> Result<()> {
    if f1.domain() != f2.domain() {
        return Err(Error::Config(
            "maps are sampled on different domains".into(),
        ));
    }
    check_dim(f1.len(), f.len())
}

fn body_class(f: &SetValuedMap) -> (Option<bool>, String) {
    let balls = f
        .bodies()
        .iter()
        .all(|b| matches!(b, ConvexBody::Ball { .. }));
    if balls {
        (Some(true), "balls (strictly convex)".into())
    } else if f.bodies().iter().all(ConvexBody::is_polytope) {
        (Some(false), "polytopes (not strictly convex)".into())
    } else {
        (None, "mixed representation".into())
    }
}

/// `f₂ = s((f − F₁) ∩ F₂)`, `f₁ = f − f₂`, for `F₁` intended strictly
/// convex.
pub fn split_strict_sum(
    f1: &SetValuedMap,
    f2: &SetValuedMap,
    f: &[Vector],
    opts: &SplitOptions,
) -> Result<SplitTrace> {
    same_grid(f1, f2, f)?;
    check_dim(f1.dim(), f2.dim())?;
    let results = (0..f.len())
        .into_par_iter()
        .map(|i| {
            let x = &f1.domain().points[i];
            let splitter = SumSplitter::new(f2.at(i), f1.at(i))?;
            let r = splitter.split(&f[i], opts).map_err(|e| match e {
                Error::OutsideSum => Error::InfeasibleSelection {
                    index: i,
                    parameter: x.clone(),
                },
                other => other,
            })?;
            Ok(SplitResult {
                parameter: to_vec(x),
                f1: r.f2,
                f2: r.f1,
                exactness_residual: r.exactness_residual,
                membership_slack1: r.membership_slack2,
                membership_slack2: r.membership_slack1,
                selection_stderr: r.selection_stderr,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut hypotheses = HypothesisReport::default();
    let (passed, detail) = body_class(f1);
    hypotheses.push("first map strictly convex", passed, detail);
    finish(SplitMode::StrictSum, f1.domain(), results, hypotheses)
}

/// Facet system of `F₁(x) × F₂(x)` (balls discretized).
fn product_hrep(a: &ConvexBody, b: &ConvexBody) -> Result<HPolytope> {
    let m = a.dim() + b.dim();
    poly_hrep(a)?
        .embed(m, 0)
        .intersect(&poly_hrep(b)?.embed(m, a.dim()))
}

fn kernel_space(l: &LinearSurjection) -> Result<AffineSubspace> {
    AffineSubspace::new(Vector::zeros(l.source_dim()), l.kernel_basis())
}

fn blocks(y: &Vector, m1: usize) -> (Vector, Vector) {
    (
        y.rows(0, m1).into_owned(),
        y.rows(m1, y.len() - m1).into_owned(),
    )
}

fn lift_kernel(l: &LinearSurjection, w: &Vector, t: &Vector) -> Vector {
    let mut y = w.clone();
    for (k, ti) in l.kernel_basis().iter().zip(t.iter()) {
        y.axpy(*ti, k, 1.0);
    }
    y
}

fn check_surjection(
    f1: &SetValuedMap,
    f2: &SetValuedMap,
    l: &LinearSurjection,
    f: &[Vector],
) -> Result<()> {
    same_grid(f1, f2, f)?;
    check_dim(l.source_dim(), f1.dim() + f2.dim())?;
    for v in f {
        check_dim(l.target_dim(), v.len())?;
    }
    Ok(())
}

/// `(f₁, f₂) = s((F₁, F₂) ∩ L⁻¹(f))`, computed in coordinates of `ker L`
/// around the least-norm preimage of `f`.
pub fn split_surjection(
    f1: &SetValuedMap,
    f2: &SetValuedMap,
    l: &LinearSurjection,
    f: &[Vector],
    opts: &SplitOptions,
) -> Result<SplitTrace> {
    check_surjection(f1, f2, l, f)?;
    let m1 = f1.dim();
    l.check_not_parallel(m1)?;
    let space = if l.kernel_basis().is_empty() {
        None
    } else {
        Some(kernel_space(l)?)
    };
    let results = (0..f.len())
        .into_par_iter()
        .map(|i| {
            let x = &f1.domain().points[i];
            let infeasible = || Error::InfeasibleSelection {
                index: i,
                parameter: x.clone(),
            };
            let w = l.least_norm_preimage(&f[i])?;
            let y = if let Some(space) = &space {
                let h = product_hrep(f1.at(i), f2.at(i))?.translate(&(-&w));
                let slice = h.slice(space)?;
                let body = slice.to_body(&opts.tol)?.ok_or_else(infeasible)?;
                let (t, _) = select(&body, opts)?;
                lift_kernel(l, &w, &t)
            } else {
                w.clone()
            };
            let (y1, y2) = blocks(&y, m1);
            let s1 = slack(f1.at(i), &y1)?;
            let s2 = slack(f2.at(i), &y2)?;
            if l.kernel_basis().is_empty() && s1.max(s2) > 1e-8 {
                return Err(infeasible());
            }
            Ok(SplitResult {
                parameter: to_vec(x),
                f1: to_vec(&y1),
                f2: to_vec(&y2),
                exactness_residual: (l.apply(&y)? - &f[i]).norm(),
                membership_slack1: s1,
                membership_slack2: s2,
                selection_stderr: 0.0,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut hypotheses = HypothesisReport::default();
    hypotheses.push(
        "kernel not parallel to the factors",
        Some(true),
        format!("kernel dimension {}", l.kernel_basis().len()),
    );
    finish(SplitMode::Surjection, f1.domain(), results, hypotheses)
}

/// Regular polytope inscribed in the `r`-ball of `ℝ^k` (segment, 64-gon or
/// level-2 icosphere).
pub fn kernel_ball(k: usize, r: f64) -> Result<ConvexBody> {
    match k {
        1 => ConvexBody::segment(Vector::from_element(1, -r), Vector::from_element(1, r)),
        2 | 3 => crate::body::ball_polytope(
            &Vector::zeros(k),
            r,
            &Discretization {
                polygon_sides: 64,
                icosphere_level: 2,
            },
        ),
        _ => Err(Error::UnsupportedDim(k)),
    }
}

/// ε-approximate splitting with Lipschitz-interpolated outputs.
///
/// Per sample, `H = (slice of F₁ × F₂ through the preimage of f) + B_ε` in
/// kernel coordinates, `H₁ = H ∸ B_{ε/2}` and `c = ` Chebyshev center of
/// `H₁`. Outputs at grid points are `w + c`; between grid points they are
/// linear, and every midpoint is certified against `F_i + B_ε` when the maps
/// can be evaluated there.
pub fn approx_split(
    f1: &SetValuedMap,
    f2: &SetValuedMap,
    l: &LinearSurjection,
    f: &[Vector],
    epsilon: f64,
    opts: &SplitOptions,
) -> Result<SplitTrace> {
    check_surjection(f1, f2, l, f)?;
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::Config("epsilon must be positive".into()));
    }
    if !f1.domain().is_scalar() {
        return Err(Error::Config(
            "approximate splitting needs an interval domain".into(),
        ));
    }
    let m1 = f1.dim();
    let k = l.kernel_basis().len();
    if k == 0 {
        return Err(Error::UnsupportedDim(0));
    }
    let space = kernel_space(l)?;
    let inflate = kernel_ball(k, epsilon)?;
    let erode = ConvexBody::ball(Vector::zeros(k), epsilon / 2.0)?;
    let points = &f1.domain().points;
    let centers = (0..f.len())
        .into_par_iter()
        .map(|i| {
            let x = &points[i];
            let w = l.least_norm_preimage(&f[i])?;
            let h = product_hrep(f1.at(i), f2.at(i))?.translate(&(-&w));
            let slice =
                h.slice(&space)?
                    .to_body(&opts.tol)?
                    .ok_or_else(|| Error::InfeasibleSelection {
                        index: i,
                        parameter: x.clone(),
                    })?;
            // erosion below the facet tolerance cannot be resolved
            let scale = 1.0 + slice.radius_bound();
            let too_small = || Error::EpsilonTooSmall {
                index: i,
                parameter: x.clone(),
            };
            if epsilon / 2.0 <= 1e3 * opts.tol.feas * scale {
                return Err(too_small());
            }
            let inflated = minkowski_sum(&slice, &inflate)?;
            let h1 = geometric_difference(&inflated, &erode)?.ok_or_else(too_small)?;
            Ok(chebyshev_center(&h1)?.center)
        })
        .collect::<Result<Vec<_>>>()?;

    let output = |fx: &Vector, c: &Vector| -> Result<Vector> {
        Ok(lift_kernel(l, &l.least_norm_preimage(fx)?, c))
    };
    let results = (0..f.len())
        .map(|i| {
            let y = output(&f[i], &centers[i])?;
            let (y1, y2) = blocks(&y, m1);
            Ok(SplitResult {
                parameter: to_vec(&points[i]),
                exactness_residual: (l.apply(&y)? - &f[i]).norm(),
                membership_slack1: slack(f1.at(i), &y1)?,
                membership_slack2: slack(f2.at(i), &y2)?,
                f1: to_vec(&y1),
                f2: to_vec(&y2),
                selection_stderr: 0.0,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut midpoints = Vec::new();
    if f1.is_closed_form() && f2.is_closed_form() {
        let mut order: Vec<usize> = (0..f.len()).collect();
        order.sort_by(|&a, &b| points[a][0].total_cmp(&points[b][0]));
        for pair in order.windows(2) {
            let (i, j) = (pair[0], pair[1]);
            let x = (&points[i] + &points[j]) / 2.0;
            let fx = (&f[i] + &f[j]) / 2.0;
            let c = (&centers[i] + &centers[j]) / 2.0;
            let y = output(&fx, &c)?;
            let (y1, y2) = blocks(&y, m1);
            let s1 = slack(&f1.evaluate(&x)?, &y1)?;
            let s2 = slack(&f2.evaluate(&x)?, &y2)?;
            midpoints.push(MidpointCertificate {
                parameter: to_vec(&x),
                slack1: s1,
                slack2: s2,
                passed: s1.max(s2) <= epsilon + 1e-6,
            });
        }
    }
    let mut hypotheses = HypothesisReport::default();
    hypotheses.push(
        "selection samples feasible",
        Some(true),
        format!("{} samples", f.len()),
    );
    hypotheses.push(
        "midpoints certifiable",
        Some(!midpoints.is_empty()),
        if midpoints.is_empty() {
            "maps have no closed form between samples"
        } else {
            "maps evaluated at grid midpoints"
        },
    );
    let mut trace = finish(SplitMode::Approximate, f1.domain(), results, hypotheses)?;
    trace.epsilon = Some(epsilon);
    trace.midpoints = midpoints;
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vector;
    use crate::pset::{body_zoo, gamma_point};

    fn disk() -> ConvexBody {
        ConvexBody::ball(vector(&[0.0, 0.0]), 1.0).unwrap()
    }

    fn constant(body: ConvexBody, n: usize) -> SetValuedMap {
        let domain = Domain::interval(0.0, 1.0, n).unwrap();
        SetValuedMap::from_bodies("const", domain, vec![body; n]).unwrap()
    }

    #[test]
    fn sum_of_balls() {
        let r = split_sum(&disk(), &disk(), &vector(&[0.0, 0.0])).unwrap();
        assert!(vector(&r.f1).norm() < 1e-12 && vector(&r.f2).norm() < 1e-12);
        let r = split_sum(&disk(), &disk(), &vector(&[2.0, 0.0])).unwrap();
        assert!((vector(&r.f1) - vector(&[1.0, 0.0])).norm() < 1e-12);
        assert!((vector(&r.f2) - vector(&[1.0, 0.0])).norm() < 1e-12);
        assert!(matches!(
            split_sum(&disk(), &disk(), &vector(&[2.5, 0.0])),
            Err(Error::OutsideSum)
        ));
    }

    #[test]
    fn first_branch_of_the_example() {
        let m = 720;
        let a = body_zoo("example11_A", m).unwrap();
        let b = body_zoo("example11_B", m).unwrap();
        let t = std::f64::consts::FRAC_PI_4;
        let r = split_sum(&a, &b, &gamma_point(t, m)).unwrap();
        let expect = vector(&[t.cos(), t.sin(), 0.0]);
        assert!((vector(&r.f1) - expect).norm() <= 2.0 * std::f64::consts::PI / m as f64);
        assert!(r.membership_slack1 <= 1e-8 && r.membership_slack2 <= 1e-8);
    }

    #[test]
    fn strict_sum_examples() {
        let n = 5;
        let domain = Domain::interval(0.0, 1.0, n).unwrap();
        let f2 = SetValuedMap::from_fn("points", domain, |x| {
            Ok(ConvexBody::point(vector(&[x[0], 0.0])))
        })
        .unwrap();
        let f: Vec<Vector> = f2
            .domain()
            .points
            .iter()
            .map(|x| vector(&[x[0], 0.0]))
            .collect();
        let t = split_strict_sum(&constant(disk(), n), &f2, &f, &SplitOptions::default()).unwrap();
        for (r, v) in t.results.iter().zip(&f) {
            assert!(vector(&r.f1).norm() < 1e-12);
            assert!((vector(&r.f2) - v).norm() < 1e-12);
        }
        let f = vec![vector(&[2.0, 0.0]); n];
        let t = split_strict_sum(
            &constant(disk(), n),
            &constant(disk(), n),
            &f,
            &SplitOptions::default(),
        )
        .unwrap();
        assert!((vector(&t.results[0].f1) - vector(&[1.0, 0.0])).norm() < 1e-12);
        assert!(t.max_residual() < 1e-12);
    }

    #[test]
    fn surjection_examples() {
        let n = 3;
        let l = LinearSurjection::difference(2);
        let opts = SplitOptions::default();
        let t = split_surjection(
            &constant(disk(), n),
            &constant(disk(), n),
            &l,
            &vec![vector(&[0.0, 0.0]); n],
            &opts,
        )
        .unwrap();
        assert!(vector(&t.results[0].f1).norm() < 1e-12);
        let t = split_surjection(
            &constant(disk(), n),
            &constant(disk(), n),
            &l,
            &vec![vector(&[2.0, 0.0]); n],
            &opts,
        )
        .unwrap();
        assert!((vector(&t.results[1].f1) - vector(&[1.0, 0.0])).norm() < 1e-9);
        assert!((vector(&t.results[1].f2) - vector(&[-1.0, 0.0])).norm() < 1e-9);

        let unit = ConvexBody::segment(vector(&[0.0]), vector(&[1.0])).unwrap();
        let sum = LinearSurjection::sum(1);
        let t = split_surjection(
            &constant(unit.clone(), n),
            &constant(unit, n),
            &sum,
            &vec![vector(&[1.0]); n],
            &opts,
        )
        .unwrap();
        // the slice is {(t, 1 − t)}; by symmetry its Steiner point is the midpoint
        assert!(
            (t.results[0].f1[0] - 0.5).abs() < 1e-12 && (t.results[0].f2[0] - 0.5).abs() < 1e-12
        );
    }

    #[test]
    fn parallel_kernel_is_rejected() {
        let l = LinearSurjection::from_rows(&[vec![1.0, 0.0, 0.0]]).unwrap();
        let n = 2;
        let f1 = constant(
            ConvexBody::segment(vector(&[0.0]), vector(&[1.0])).unwrap(),
            n,
        );
        let f2 = constant(disk(), n);
        let r = split_surjection(
            &f1,
            &f2,
            &l,
            &vec![vector(&[0.5]); n],
            &SplitOptions::default(),
        );
        assert!(matches!(r, Err(Error::NotParallelViolation { .. })));
    }

    #[test]
    fn approximate_examples() {
        let n = 5;
        let unit = ConvexBody::segment(vector(&[0.0]), vector(&[1.0])).unwrap();
        let sum = LinearSurjection::sum(1);
        let opts = SplitOptions::default();
        let t = approx_split(
            &constant(unit.clone(), n),
            &constant(unit.clone(), n),
            &sum,
            &vec![vector(&[1.0]); n],
            0.2,
            &opts,
        )
        .unwrap();
        for r in &t.results {
            assert!((r.f1[0] - 0.5).abs() < 1e-12 && (r.f2[0] - 0.5).abs() < 1e-12);
        }
        assert!(t.lipschitz() < 1e-12);

        let domain = Domain::interval(0.0, 1.0, n).unwrap();
        let moving = SetValuedMap::from_fn("moving", domain.clone(), |x| {
            ConvexBody::segment(vector(&[x[0]]), vector(&[x[0] + 1.0]))
        })
        .unwrap();
        let fixed = SetValuedMap::from_fn("fixed", domain, {
            let unit = unit.clone();
            move |_| Ok(unit.clone())
        })
        .unwrap();
        let f: Vec<Vector> = moving
            .domain()
            .points
            .iter()
            .map(|x| vector(&[x[0] + 1.0]))
            .collect();
        let t = approx_split(&moving, &fixed, &sum, &f, 0.2, &opts).unwrap();
        assert!(t.max_residual() < 1e-12);
        assert!(t.max_slack() <= 0.2 + 1e-9);
        assert!(t.midpoints_pass() && t.midpoints.len() == n - 1);
        assert!(t.lipschitz().is_finite());

        let r = approx_split(
            &constant(unit.clone(), n),
            &constant(unit, n),
            &sum,
            &vec![vector(&[2.0]); n],
            1e-9,
            &opts,
        );
        assert!(matches!(r, Err(Error::EpsilonTooSmall { .. })));
    }
}
