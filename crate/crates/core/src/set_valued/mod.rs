//! Set-valued maps sampled on a finite parameter domain, their empirical
//! moduli of continuity, and intersection maps.

pub mod families;

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::body::{
    hausdorff_distance, inclusion_radius, minkowski_sum, to_hrep, ConvexBody, Discretization,
};
use crate::error::{check_dim, Error, Result};
use crate::geometry::Vector;
use crate::tol::Tolerances;

/// Distance on the parameter samples.
#[derive(Clone, Debug, PartialEq)]
pub enum Metric {
    Euclidean,
    /// Explicit symmetric table indexed by sample.
    Table(Vec<Vec<f64>>),
}

/// Finite sample of a parameter space.
#[derive(Clone, Debug, PartialEq)]
pub struct Domain {
    pub points: Vec<Vector>,
    pub metric: Metric,
}

impl Domain {
    /// `n` equally spaced points of `[a, b]`.
    pub fn interval(a: f64, b: f64, n: usize) -> Result<Self> {
        if n == 0 || !a.is_finite() || !b.is_finite() {
            return Err(Error::Config("interval needs n ≥ 1 and finite ends".into()));
        }
        let points = (0..n)
            .map(|i| {
                let t = if n == 1 {
                    a
                } else {
                    a + (b - a) * i as f64 / (n - 1) as f64
                };
                Vector::from_element(1, t)
            })
            .collect();
        Ok(Self {
            points,
            metric: Metric::Euclidean,
        })
    }

    pub fn from_points(points: Vec<Vector>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyInput)?;
        for p in &points {
            check_dim(first.len(), p.len())?;
        }
        Ok(Self {
            points,
            metric: Metric::Euclidean,
        })
    }

    pub fn with_table(points: Vec<Vector>, table: Vec<Vec<f64>>) -> Result<Self> {
        let n = points.len();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::Config("metric table must be n × n".into()));
        }
        Ok(Self {
            points,
            metric: Metric::Table(table),
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        match &self.metric {
            Metric::Euclidean => (&self.points[i] - &self.points[j]).norm(),
            Metric::Table(t) => t[i][j],
        }
    }

    /// Whether the domain is a one-dimensional grid (scalar parameters).
    pub fn is_scalar(&self) -> bool {
        self.points.first().is_some_and(|p| p.len() == 1)
    }
}

type Evaluator = Arc<dyn Fn(&Vector) -> Result<ConvexBody> + Send + Sync>;

/// A convex-body-valued map stored on its domain samples. Closed-form maps
/// also keep their evaluator so they can be resampled.
#[derive(Clone)]
pub struct SetValuedMap {
    name: String,
    domain: Domain,
    bodies: Vec<ConvexBody>,
    eval: Option<Evaluator>,
}

impl fmt::Debug for SetValuedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SetValuedMap")
            .field("name", &self.name)
            .field("samples", &self.bodies.len())
            .field("dim", &self.dim())
            .field("closed_form", &self.eval.is_some())
            .finish()
    }
}

impl SetValuedMap {
    pub fn from_bodies(
        name: impl Into<String>,
        domain: Domain,
        bodies: Vec<ConvexBody>,
    ) -> Result<Self> {
        if bodies.len() != domain.len() {
            return Err(Error::Config(format!(
                "{} bodies for {} domain samples",
                bodies.len(),
                domain.len()
            )));
        }
        let first = bodies.first().ok_or(Error::EmptyInput)?;
        for b in &bodies {
            b.validate()?;
            check_dim(first.dim(), b.dim())?;
        }
        Ok(Self {
            name: name.into(),
            domain,
            bodies,
            eval: None,
        })
    }

    pub fn from_fn<F>(name: impl Into<String>, domain: Domain, f: F) -> Result<Self>
    where
        F: Fn(&Vector) -> Result<ConvexBody> + Send + Sync + 'static,
    {
        let bodies: Vec<ConvexBody> = domain.points.par_iter().map(&f).collect::<Result<_>>()?;
        let mut map = Self::from_bodies(name, domain, bodies)?;
        map.eval = Some(Arc::new(f));
        Ok(map)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn bodies(&self) -> &[ConvexBody] {
        &self.bodies
    }

    pub fn at(&self, i: usize) -> &ConvexBody {
        &self.bodies[i]
    }

    pub fn len(&self) -> usize {
        self.bodies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bodies.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.bodies[0].dim()
    }

    pub fn is_closed_form(&self) -> bool {
        self.eval.is_some()
    }

    /// Value at an arbitrary parameter (closed form) or at a matching sample.
    pub fn evaluate(&self, x: &Vector) -> Result<ConvexBody> {
        if let Some(f) = &self.eval {
            return f(x);
        }
        self.domain
            .points
            .iter()
            .position(|p| p.len() == x.len() && (p - x).norm() <= 1e-12 * (1.0 + x.norm()))
            .map(|i| self.bodies[i].clone())
            .ok_or_else(|| Error::Config("parameter is not a domain sample of a stored map".into()))
    }

    /// The same closed-form map on another domain.
    pub fn resample(&self, domain: Domain) -> Result<Self> {
        let f = self
            .eval
            .clone()
            .ok_or_else(|| Error::Config("only closed-form maps can be resampled".into()))?;
        let bodies: Vec<ConvexBody> = domain
            .points
            .par_iter()
            .map(|x| f(x))
            .collect::<Result<_>>()?;
        let mut map = Self::from_bodies(self.name.clone(), domain, bodies)?;
        map.eval = Some(f);
        Ok(map)
    }

    /// Balls replaced by inscribed polytopes.
    pub fn discretized(&self, disc: &Discretization) -> Result<Self> {
        let bodies = self
            .bodies
            .iter()
            .map(|b| b.discretize(disc))
            .collect::<Result<_>>()?;
        let eval = self.eval.clone().map(|f| {
            let disc = *disc;
            Arc::new(move |x: &Vector| f(x)?.discretize(&disc)) as Evaluator
        });
        Ok(Self {
            name: self.name.clone(),
            domain: self.domain.clone(),
            bodies,
            eval,
        })
    }

    /// Pointwise map `x ↦ g(x, F(x))` on the same domain.
    pub fn map_bodies<G>(&self, name: impl Into<String>, g: G) -> Result<Self>
    where
        G: Fn(usize, &ConvexBody) -> Result<ConvexBody> + Send + Sync,
    {
        let bodies = self
            .bodies
            .par_iter()
            .enumerate()
            .map(|(i, b)| g(i, b))
            .collect::<Result<_>>()?;
        Self::from_bodies(name, self.domain.clone(), bodies)
    }
}

/// Step-function upper bound `ω(t)` of the observed Hausdorff distances.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModulusEstimate {
    /// `(t, ω)` with `t` increasing and `ω` nondecreasing.
    pub breakpoints: Vec<(f64, f64)>,
    pub pair_count: usize,
}

impl ModulusEstimate {
    /// `ω(t)`: the largest distance observed between samples at parameter
    /// distance ≤ `t`.
    pub fn omega(&self, t: f64) -> f64 {
        let limit = t * (1.0 + 1e-12) + 1e-300;
        let k = self.breakpoints.partition_point(|(s, _)| *s <= limit);
        if k == 0 {
            0.0
        } else {
            self.breakpoints[k - 1].1
        }
    }

    /// Value at the smallest sampled distance.
    pub fn at_zero(&self) -> f64 {
        self.breakpoints.first().map_or(0.0, |b| b.1)
    }

    /// Largest ratio `ω(t)/t` over the breakpoints (an empirical Lipschitz
    /// constant).
    pub fn lipschitz(&self) -> f64 {
        self.breakpoints
            .iter()
            .filter(|(t, _)| *t > 0.0)
            .map(|(t, w)| w / t)
            .fold(0.0, f64::max)
    }

    /// `ω` at the smallest positive parameter distance.
    pub fn finest(&self) -> f64 {
        self.breakpoints
            .iter()
            .find(|(t, _)| *t > 0.0)
            .map_or(0.0, |b| b.1)
    }
}

/// Build a modulus from `(t, h)` pairs.
pub fn modulus_from_pairs(mut pairs: Vec<(f64, f64)>) -> ModulusEstimate {
    let pair_count = pairs.len();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut breakpoints: Vec<(f64, f64)> = Vec::new();
    let mut running = 0.0f64;
    for (t, h) in pairs {
        running = running.max(h);
        match breakpoints.last_mut() {
            Some(last) if last.0 == t => last.1 = running,
            _ => breakpoints.push((t, running)),
        }
    }
    ModulusEstimate {
        breakpoints,
        pair_count,
    }
}

fn pair_indices(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect()
}

/// Empirical modulus of continuity from all sample pairs. Each Hausdorff
/// distance enters with its error bound added, so `ω` bounds the exact
/// distances.
pub fn empirical_modulus(f: &SetValuedMap) -> Result<ModulusEstimate> {
    if f.len() < 2 {
        return Err(Error::InsufficientDomain);
    }
    let pairs = pair_indices(f.len())
        .into_par_iter()
        .map(|(i, j)| {
            let h = hausdorff_distance(f.at(i), f.at(j))?;
            Ok((f.domain.distance(i, j), h.value + h.gap))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(modulus_from_pairs(pairs))
}

/// Empirical modulus of a vector-valued function sampled on a domain.
pub fn point_modulus(domain: &Domain, values: &[Vector]) -> Result<ModulusEstimate> {
    if values.len() < 2 {
        return Err(Error::InsufficientDomain);
    }
    check_dim(domain.len(), values.len())?;
    let pairs = pair_indices(values.len())
        .into_iter()
        .map(|(i, j)| (domain.distance(i, j), (&values[i] - &values[j]).norm()))
        .collect();
    Ok(modulus_from_pairs(pairs))
}

/// `A ∩ B`, or `None` when empty. Ball pairs in containment or disjoint
/// position are exact; otherwise balls are replaced by their default
/// inscribed polytopes and the facet systems are merged.
pub fn intersection(a: &ConvexBody, b: &ConvexBody) -> Result<Option<ConvexBody>> {
    check_dim(a.dim(), b.dim())?;
    if a == b {
        return Ok(Some(a.clone()));
    }
    if let (
        ConvexBody::Ball {
            center: c1,
            radius: r1,
        },
        ConvexBody::Ball {
            center: c2,
            radius: r2,
        },
    ) = (a, b)
    {
        let d = (c1 - c2).norm();
        let touch = 1e-12 * (1.0 + r1 + r2);
        if d > r1 + r2 + touch {
            return Ok(None);
        }
        if d >= r1 + r2 - touch {
            // externally tangent: a single point
            let t = if d > 0.0 { r1 / (r1 + r2) } else { 0.0 };
            return Ok(Some(ConvexBody::point(c1 + (c2 - c1) * t)));
        }
        if d + r2 <= *r1 {
            return Ok(Some(b.clone()));
        }
        if d + r1 <= *r2 {
            return Ok(Some(a.clone()));
        }
    }
    let tol = Tolerances::default();
    let disc = Discretization::default();
    let ha = to_hrep(&a.discretize(&disc)?)?;
    let hb = to_hrep(&b.discretize(&disc)?)?;
    ha.intersect(&hb)?.to_body(&tol)
}

/// `x ↦ F₁(x) ∩ F₂(x)` on the common domain.
pub fn intersection_map(f1: &SetValuedMap, f2: &SetValuedMap) -> Result<SetValuedMap> {
    same_domain(f1, f2)?;
    let bodies = (0..f1.len())
        .into_par_iter()
        .map(|i| {
            intersection(f1.at(i), f2.at(i))?.ok_or_else(|| Error::EmptyIntersection {
                index: i,
                parameter: f1.domain.points[i].clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    SetValuedMap::from_bodies(
        format!("{}∩{}", f1.name, f2.name),
        f1.domain.clone(),
        bodies,
    )
}

fn same_domain(f1: &SetValuedMap, f2: &SetValuedMap) -> Result<()> {
    check_dim(f1.dim(), f2.dim())?;
    if f1.domain != f2.domain {
        return Err(Error::Config(
            "maps are sampled on different domains".into(),
        ));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaEstimate {
    /// `max d(x)/γ(x)`; infinite when some `γ(x) = 0 < d(x)`.
    pub alpha: f64,
    pub gamma_min: f64,
    /// Per-sample `γ(x)` (lower bounds).
    pub gammas: Vec<f64>,
    /// Per-sample `d(x)` (upper bounds).
    pub diameters: Vec<f64>,
}

/// Constants of the intersection theorem: `γ(x)` is the inclusion radius of
/// `F₁(x) − F₂(x)` and `d(x)` the smaller diameter. Error bounds are applied
/// in the conservative direction.
pub fn estimate_alpha(f1: &SetValuedMap, f2: &SetValuedMap) -> Result<AlphaEstimate> {
    same_domain(f1, f2)?;
    let per: Vec<(f64, f64)> = (0..f1.len())
        .into_par_iter()
        .map(|i| {
            let diff = minkowski_sum(f1.at(i), &f2.at(i).scale(-1.0))?;
            let g = inclusion_radius(&diff)?;
            let d1 = f1.at(i).diameter()?;
            let d2 = f2.at(i).diameter()?;
            let d = (d1.value + d1.gap).min(d2.value + d2.gap);
            Ok(((g.value - g.gap).max(0.0), d))
        })
        .collect::<Result<_>>()?;
    let mut alpha = 0.0f64;
    for (g, d) in &per {
        if *d <= 1e-12 {
            continue;
        }
        alpha = if *g <= 1e-12 {
            f64::INFINITY
        } else {
            alpha.max(d / g)
        };
        if alpha.is_infinite() {
            break;
        }
    }
    let gamma_min = per.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    Ok(AlphaEstimate {
        alpha,
        gamma_min,
        gammas: per.iter().map(|p| p.0).collect(),
        diameters: per.iter().map(|p| p.1).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModulusViolation {
    pub i: usize,
    pub j: usize,
    pub t: f64,
    pub distance: f64,
    pub bound: f64,
}

/// Outcome of comparing the intersection map's observed distances with the
/// bound `max(ω₁,ω₂) + α(ω₁+ω₂)` built from empirical moduli. Finite samples
/// can refute the bound but never prove it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModulusReport {
    pub label: String,
    pub alpha: f64,
    pub gamma_min: f64,
    /// False when `α = ∞`: the hypothesis fails and no bound is asserted.
    pub applicable: bool,
    pub pairs_checked: usize,
    /// Smallest `bound − distance` over the checked pairs.
    pub worst_slack: f64,
    pub violations: Vec<ModulusViolation>,
    /// Chord deficit of the ball discretization used for the check.
    pub discretization_deficit: f64,
    pub omega_f1: ModulusEstimate,
    pub omega_f2: ModulusEstimate,
    /// Modulus of the intersection map; absent when some intersection is empty.
    pub omega_g: Option<ModulusEstimate>,
}

impl ModulusReport {
    /// `max(ω₁,ω₂) + α(ω₁+ω₂)` at `t`; infinite when the hypothesis fails.
    pub fn bound(&self, t: f64) -> f64 {
        let (a, b) = (self.omega_f1.omega(t), self.omega_f2.omega(t));
        if !self.applicable {
            return f64::INFINITY;
        }
        a.max(b) + self.alpha * (a + b)
    }
}

/// Check the intersection-continuity bound on every sample pair. Balls are
/// replaced by inscribed polytopes first, and the moduli, `α` and the
/// intersections are all computed for those polytope maps.
pub fn verify_intersection_modulus(f1: &SetValuedMap, f2: &SetValuedMap) -> Result<ModulusReport> {
    same_domain(f1, f2)?;
    if f1.len() < 2 {
        return Err(Error::InsufficientDomain);
    }
    let disc = Discretization::default();
    let deficit = disc.deficit(f1.dim());
    let p1 = f1.discretized(&disc)?;
    let p2 = f2.discretized(&disc)?;
    let alpha = estimate_alpha(&p1, &p2)?;
    let label = "consistency check".to_string();
    let w1 = empirical_modulus(&p1)?;
    let w2 = empirical_modulus(&p2)?;
    if !alpha.alpha.is_finite() {
        let omega_g = match intersection_map(&p1, &p2) {
            Ok(g) => Some(empirical_modulus(&g)?),
            Err(Error::EmptyIntersection { .. }) => None,
            Err(e) => return Err(e),
        };
        return Ok(ModulusReport {
            label,
            alpha: alpha.alpha,
            gamma_min: alpha.gamma_min,
            applicable: false,
            pairs_checked: 0,
            worst_slack: f64::NAN,
            violations: Vec::new(),
            discretization_deficit: deficit,
            omega_f1: w1,
            omega_f2: w2,
            omega_g,
        });
    }
    let g = intersection_map(&p1, &p2)?;
    let checks = pair_indices(g.len())
        .into_par_iter()
        .map(|(i, j)| {
            let t = g.domain.distance(i, j);
            let h = hausdorff_distance(g.at(i), g.at(j))?;
            let (a, b) = (w1.omega(t), w2.omega(t));
            let bound = a.max(b) + alpha.alpha * (a + b);
            Ok((i, j, t, h, bound))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut worst = f64::INFINITY;
    let mut violations = Vec::new();
    for (i, j, t, h, bound) in &checks {
        worst = worst.min(bound - h.value);
        if h.value > bound + h.gap + 1e-6 {
            violations.push(ModulusViolation {
                i: *i,
                j: *j,
                t: *t,
                distance: h.value,
                bound: *bound,
            });
        }
    }
    Ok(ModulusReport {
        label,
        alpha: alpha.alpha,
        gamma_min: alpha.gamma_min,
        applicable: true,
        pairs_checked: checks.len(),
        worst_slack: worst,
        violations,
        discretization_deficit: deficit,
        omega_f1: w1,
        omega_f2: w2,
        omega_g: Some(modulus_from_pairs(
            checks.iter().map(|c| (c.2, c.3.value + c.3.gap)).collect(),
        )),
    })
}

/// Convex hull of `{x} × F(x)` over the listed parameters.
pub fn graph_body(f: &SetValuedMap, at: &[Vector]) -> Result<ConvexBody> {
    let first = at.first().ok_or(Error::EmptyInput)?;
    let total = first.len() + f.dim();
    if total > 6 {
        return Err(Error::UnsupportedDim(total));
    }
    let disc = Discretization::default();
    let mut points = Vec::new();
    for x in at {
        check_dim(first.len(), x.len())?;
        let body = f.evaluate(x)?.discretize(&disc)?;
        let vs = body
            .vertices()?
            .ok_or_else(|| Error::UnsupportedRep("graph needs polytope values".into()))?;
        for v in vs {
            points.push(Vector::from_iterator(
                total,
                x.iter().chain(v.iter()).copied(),
            ));
        }
    }
    ConvexBody::polytope(crate::body::prune_points(points)?)
}
