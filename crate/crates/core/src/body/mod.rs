//! Compact convex bodies and their Minkowski calculus.
//!
//! Every variant answers support queries exactly. Operations that need
//! vertices or facets work on the polytope variants (and on sums, images and
//! products built from them); balls enter those operations through closed
//! forms or through explicit inscribed discretizations.

pub mod directions;
mod hrep;
pub mod hull;
mod ops;

use crate::error::{check_dim, Error, Result};
use crate::geometry::{Matrix, Vector};
use crate::optimizer::{lp_solve, wolfe, LinearProgram, LpStatus};
use crate::tol::Tolerances;

pub use directions::Directions;
pub use hrep::HPolytope;
pub use ops::{
    affine_slice, geometric_difference, hausdorff_distance, hausdorff_sampled, inclusion_radius,
    minkowski_sum, product_body, to_hrep, to_hrep_with,
};

/// A value with an absolute error bound: the exact quantity lies in
/// `[value − gap, value + gap]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub gap: f64,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Self { value, gap: 0.0 }
    }
}

/// Certified bounds on the distance from a point to a body.
#[derive(Clone, Debug)]
pub struct Distance {
    pub lower: f64,
    pub upper: f64,
    /// A point of the body at distance `upper`.
    pub nearest: Vector,
}

/// Inscribed polytope resolution used when a ball must be replaced by
/// vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Discretization {
    pub polygon_sides: usize,
    pub icosphere_level: usize,
}

impl Default for Discretization {
    fn default() -> Self {
        Self {
            polygon_sides: 128,
            icosphere_level: 3,
        }
    }
}

impl Discretization {
    /// Largest gap between a unit ball and its inscribed polytope.
    pub fn deficit(&self, dim: usize) -> f64 {
        match dim {
            0 | 1 => 0.0,
            2 => 1.0 - (std::f64::consts::PI / self.polygon_sides as f64).cos(),
            _ => 1.0 - directions::icosphere(self.icosphere_level).covering.cos(),
        }
    }
}

/// A compact convex set.
#[derive(Clone, Debug, PartialEq)]
pub enum ConvexBody {
    /// Convex hull of finitely many points.
    VPolytope {
        vertices: Vec<Vector>,
    },
    Ball {
        center: Vector,
        radius: f64,
    },
    /// Minkowski sum of the terms.
    Sum {
        terms: Vec<ConvexBody>,
    },
    /// `{matrix·x + offset : x ∈ body}`.
    AffineImage {
        matrix: Matrix,
        offset: Vector,
        body: Box<ConvexBody>,
    },
    /// Cartesian product in the direct sum of the factor spaces.
    Product {
        factors: Vec<ConvexBody>,
    },
}

fn lex_less(a: &Vector, b: &Vector) -> bool {
    for (x, y) in a.iter().zip(b.iter()) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

impl ConvexBody {
    pub fn polytope(vertices: Vec<Vector>) -> Result<Self> {
        let b = ConvexBody::VPolytope { vertices };
        b.validate()?;
        Ok(b)
    }

    pub fn point(p: Vector) -> Self {
        ConvexBody::VPolytope { vertices: vec![p] }
    }

    pub fn segment(a: Vector, b: Vector) -> Result<Self> {
        Self::polytope(vec![a, b])
    }

    pub fn ball(center: Vector, radius: f64) -> Result<Self> {
        let b = ConvexBody::Ball { center, radius };
        b.validate()?;
        Ok(b)
    }

    /// Axis-aligned box `[lo, hi]`.
    pub fn cuboid(lo: &Vector, hi: &Vector) -> Result<Self> {
        check_dim(lo.len(), hi.len())?;
        let d = lo.len();
        if d > 16 {
            return Err(Error::UnsupportedDim(d));
        }
        let vertices = (0..(1usize << d))
            .map(|mask| {
                Vector::from_iterator(
                    d,
                    (0..d).map(|j| if mask >> j & 1 == 1 { hi[j] } else { lo[j] }),
                )
            })
            .collect();
        Self::polytope(vertices)
    }

    /// The cube `[-h, h]^d`.
    pub fn cube(d: usize, h: f64) -> Self {
        Self::cuboid(&Vector::from_element(d, -h), &Vector::from_element(d, h)).expect("valid cube")
    }

    pub fn sum(terms: Vec<ConvexBody>) -> Result<Self> {
        let b = ConvexBody::Sum { terms };
        b.validate()?;
        Ok(b)
    }

    pub fn affine_image(matrix: Matrix, offset: Vector, body: ConvexBody) -> Result<Self> {
        let b = ConvexBody::AffineImage {
            matrix,
            offset,
            body: Box::new(body),
        };
        b.validate()?;
        Ok(b)
    }

    pub fn product(factors: Vec<ConvexBody>) -> Result<Self> {
        let b = ConvexBody::Product { factors };
        b.validate()?;
        Ok(b)
    }

    /// `self + v`.
    pub fn translate(&self, v: &Vector) -> Result<Self> {
        check_dim(self.dim(), v.len())?;
        Ok(match self {
            ConvexBody::VPolytope { vertices } => ConvexBody::VPolytope {
                vertices: vertices.iter().map(|x| x + v).collect(),
            },
            ConvexBody::Ball { center, radius } => ConvexBody::Ball {
                center: center + v,
                radius: *radius,
            },
            ConvexBody::AffineImage {
                matrix,
                offset,
                body,
            } => ConvexBody::AffineImage {
                matrix: matrix.clone(),
                offset: offset + v,
                body: body.clone(),
            },
            other => ConvexBody::AffineImage {
                matrix: Matrix::identity(v.len(), v.len()),
                offset: v.clone(),
                body: Box::new(other.clone()),
            },
        })
    }

    /// `λ·self` for a scalar `λ`.
    pub fn scale(&self, lambda: f64) -> Self {
        match self {
            ConvexBody::VPolytope { vertices } => ConvexBody::VPolytope {
                vertices: vertices.iter().map(|x| x * lambda).collect(),
            },
            ConvexBody::Ball { center, radius } => ConvexBody::Ball {
                center: center * lambda,
                radius: radius * lambda.abs(),
            },
            other => {
                let d = other.dim();
                ConvexBody::AffineImage {
                    matrix: Matrix::identity(d, d) * lambda,
                    offset: Vector::zeros(d),
                    body: Box::new(other.clone()),
                }
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |v: &Vector| v.iter().all(|x| x.is_finite());
        match self {
            ConvexBody::VPolytope { vertices } => {
                let first = vertices.first().ok_or(Error::EmptyInput)?;
                if first.is_empty() {
                    return Err(Error::UnsupportedDim(0));
                }
                for v in vertices {
                    check_dim(first.len(), v.len())?;
                    if !finite(v) {
                        return Err(Error::Config("non-finite vertex".into()));
                    }
                }
            }
            ConvexBody::Ball { center, radius } => {
                if center.is_empty() {
                    return Err(Error::UnsupportedDim(0));
                }
                if !finite(center) || !radius.is_finite() || *radius < 0.0 {
                    return Err(Error::Config(
                        "ball needs a finite center and radius ≥ 0".into(),
                    ));
                }
            }
            ConvexBody::Sum { terms } => {
                let first = terms.first().ok_or(Error::EmptyInput)?;
                for t in terms {
                    t.validate()?;
                    check_dim(first.dim(), t.dim())?;
                }
            }
            ConvexBody::AffineImage {
                matrix,
                offset,
                body,
            } => {
                body.validate()?;
                check_dim(body.dim(), matrix.ncols())?;
                check_dim(matrix.nrows(), offset.len())?;
                if matrix.nrows() == 0 {
                    return Err(Error::UnsupportedDim(0));
                }
                if matrix.iter().any(|x| !x.is_finite()) || !finite(offset) {
                    return Err(Error::Config("non-finite affine map".into()));
                }
            }
            ConvexBody::Product { factors } => {
                if factors.is_empty() {
                    return Err(Error::EmptyInput);
                }
                for f in factors {
                    f.validate()?;
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::VPolytope { vertices } => vertices[0].len(),
            ConvexBody::Ball { center, .. } => center.len(),
            ConvexBody::Sum { terms } => terms[0].dim(),
            ConvexBody::AffineImage { matrix, .. } => matrix.nrows(),
            ConvexBody::Product { factors } => factors.iter().map(|f| f.dim()).sum(),
        }
    }

    /// `sup_{x ∈ A} ⟨p, x⟩`.
    pub fn support_value(&self, p: &Vector) -> Result<f64> {
        check_dim(self.dim(), p.len())?;
        if p.iter().all(|x| *x == 0.0) {
            return Err(Error::DegenerateDirection);
        }
        Ok(self.h(p))
    }

    /// A maximizer of `⟨p, ·⟩`; ties between vertices go to the
    /// lexicographically smallest.
    pub fn support_point(&self, p: &Vector) -> Result<Vector> {
        check_dim(self.dim(), p.len())?;
        if p.iter().all(|x| *x == 0.0) {
            return Err(Error::DegenerateDirection);
        }
        Ok(self.sp(p))
    }

    /// Support function without argument checks; `h(0) = 0`.
    pub(crate) fn h(&self, p: &Vector) -> f64 {
        match self {
            ConvexBody::VPolytope { vertices } => vertices
                .iter()
                .map(|v| v.dot(p))
                .fold(f64::NEG_INFINITY, f64::max),
            ConvexBody::Ball { center, radius } => center.dot(p) + radius * p.norm(),
            ConvexBody::Sum { terms } => terms.iter().map(|t| t.h(p)).sum(),
            ConvexBody::AffineImage {
                matrix,
                offset,
                body,
            } => body.h(&(matrix.transpose() * p)) + offset.dot(p),
            ConvexBody::Product { factors } => {
                let mut start = 0;
                let mut total = 0.0;
                for f in factors {
                    let k = f.dim();
                    total += f.h(&p.rows(start, k).into_owned());
                    start += k;
                }
                total
            }
        }
    }

    /// Support point without argument checks. The zero direction returns a
    /// representative point (the lexicographic minimum for polytopes and
    /// balls).
    pub(crate) fn sp(&self, p: &Vector) -> Vector {
        match self {
            ConvexBody::VPolytope { vertices } => {
                if p.iter().all(|x| *x == 0.0) {
                    let mut best = &vertices[0];
                    for v in vertices {
                        if lex_less(v, best) {
                            best = v;
                        }
                    }
                    return best.clone();
                }
                let vals: Vec<f64> = vertices.iter().map(|v| v.dot(p)).collect();
                let max = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let scale = vertices.iter().map(|v| v.norm()).fold(0.0, f64::max);
                let tie = 1e-12 * p.norm() * (1.0 + scale);
                let mut best: Option<&Vector> = None;
                for (v, val) in vertices.iter().zip(&vals) {
                    if *val >= max - tie && best.is_none_or(|b| lex_less(v, b)) {
                        best = Some(v);
                    }
                }
                best.expect("nonempty vertex list").clone()
            }
            ConvexBody::Ball { center, radius } => {
                let n = p.norm();
                if n == 0.0 {
                    let mut x = center.clone();
                    x[0] -= radius;
                    x
                } else {
                    center + p * (radius / n)
                }
            }
            ConvexBody::Sum { terms } => {
                let mut x = terms[0].sp(p);
                for t in &terms[1..] {
                    x += t.sp(p);
                }
                x
            }
            ConvexBody::AffineImage {
                matrix,
                offset,
                body,
            } => matrix * body.sp(&(matrix.transpose() * p)) + offset,
            ConvexBody::Product { factors } => {
                let mut out = Vector::zeros(self.dim());
                let mut start = 0;
                for f in factors {
                    let k = f.dim();
                    let s = f.sp(&p.rows(start, k).into_owned());
                    out.rows_mut(start, k).copy_from(&s);
                    start += k;
                }
                out
            }
        }
    }

    /// A point of the body used as a reference for radius bounds.
    pub fn reference_point(&self) -> Vector {
        match self {
            ConvexBody::VPolytope { vertices } => {
                let mut c = Vector::zeros(vertices[0].len());
                for v in vertices {
                    c += v;
                }
                c / vertices.len() as f64
            }
            ConvexBody::Ball { center, .. } => center.clone(),
            ConvexBody::Sum { terms } => {
                let mut c = terms[0].reference_point();
                for t in &terms[1..] {
                    c += t.reference_point();
                }
                c
            }
            ConvexBody::AffineImage {
                matrix,
                offset,
                body,
            } => matrix * body.reference_point() + offset,
            ConvexBody::Product { factors } => {
                let parts: Vec<f64> = factors
                    .iter()
                    .flat_map(|f| f.reference_point().iter().copied().collect::<Vec<_>>())
                    .collect();
                Vector::from_vec(parts)
            }
        }
    }

    /// Upper bound on `max_{x ∈ A} ‖x − reference_point()‖`.
    pub fn radius_bound(&self) -> f64 {
        match self {
            ConvexBody::VPolytope { vertices } => {
                let c = self.reference_point();
                vertices.iter().map(|v| (v - &c).norm()).fold(0.0, f64::max)
            }
            ConvexBody::Ball { radius, .. } => *radius,
            ConvexBody::Sum { terms } => terms.iter().map(|t| t.radius_bound()).sum(),
            ConvexBody::AffineImage { matrix, body, .. } => {
                let sv = matrix.clone().svd(false, false).singular_values;
                sv.max() * body.radius_bound()
            }
            ConvexBody::Product { factors } => factors
                .iter()
                .map(|f| f.radius_bound().powi(2))
                .sum::<f64>()
                .sqrt(),
        }
    }

    /// Whether every constituent is a polytope, so exact vertices exist.
    pub fn is_polytope(&self) -> bool {
        match self {
            ConvexBody::VPolytope { .. } => true,
            ConvexBody::Ball { radius, center } => *radius == 0.0 || center.len() == 1,
            ConvexBody::Sum { terms } => terms.iter().all(|t| t.is_polytope()),
            ConvexBody::AffineImage { body, .. } => body.is_polytope(),
            ConvexBody::Product { factors } => factors.iter().all(|f| f.is_polytope()),
        }
    }

    /// Extreme points of a polytope-valued body (`None` when a genuine ball
    /// is involved). Intermediate results are pruned to their hull vertices
    /// in intrinsic dimension ≤ 4.
    pub fn vertices(&self) -> Result<Option<Vec<Vector>>> {
        self.vertices_with(&Tolerances::default())
    }

    pub fn vertices_with(&self, tol: &Tolerances) -> Result<Option<Vec<Vector>>> {
        let raw = match self {
            ConvexBody::VPolytope { vertices } => vertices.clone(),
            ConvexBody::Ball { center, radius } => {
                if *radius == 0.0 {
                    vec![center.clone()]
                } else if center.len() == 1 {
                    vec![center.add_scalar(-radius), center.add_scalar(*radius)]
                } else {
                    return Ok(None);
                }
            }
            ConvexBody::Sum { terms } => {
                let mut acc: Option<Vec<Vector>> = None;
                for t in terms {
                    let Some(vs) = t.vertices_with(tol)? else {
                        return Ok(None);
                    };
                    acc = Some(match acc {
                        None => vs,
                        Some(a) => {
                            let mut out = Vec::with_capacity(a.len() * vs.len());
                            for x in &a {
                                for y in &vs {
                                    out.push(x + y);
                                }
                            }
                            prune(out, tol)?
                        }
                    });
                }
                acc.expect("sum has terms")
            }
            ConvexBody::AffineImage {
                matrix,
                offset,
                body,
            } => {
                let Some(vs) = body.vertices_with(tol)? else {
                    return Ok(None);
                };
                vs.iter().map(|v| matrix * v + offset).collect()
            }
            ConvexBody::Product { factors } => {
                let mut acc: Vec<Vec<f64>> = vec![Vec::new()];
                for f in factors {
                    let Some(vs) = f.vertices_with(tol)? else {
                        return Ok(None);
                    };
                    let mut next = Vec::with_capacity(acc.len() * vs.len());
                    for a in &acc {
                        for v in &vs {
                            let mut row = a.clone();
                            row.extend(v.iter().copied());
                            next.push(row);
                        }
                    }
                    acc = next;
                }
                acc.into_iter().map(Vector::from_vec).collect()
            }
        };
        Ok(Some(prune(raw, tol)?))
    }

    /// Inscribed polytope: balls are replaced by regular polygons (2-D) or
    /// icospheres (3-D); polytope parts are kept exactly.
    pub fn discretize(&self, disc: &Discretization) -> Result<ConvexBody> {
        Ok(match self {
            ConvexBody::VPolytope { .. } => self.clone(),
            ConvexBody::Ball { center, radius } => {
                if *radius == 0.0 || center.len() == 1 {
                    ConvexBody::VPolytope {
                        vertices: self.vertices()?.expect("degenerate ball has vertices"),
                    }
                } else {
                    ball_polytope(center, *radius, disc)?
                }
            }
            ConvexBody::Sum { terms } => ConvexBody::Sum {
                terms: terms
                    .iter()
                    .map(|t| t.discretize(disc))
                    .collect::<Result<_>>()?,
            },
            ConvexBody::AffineImage {
                matrix,
                offset,
                body,
            } => ConvexBody::AffineImage {
                matrix: matrix.clone(),
                offset: offset.clone(),
                body: Box::new(body.discretize(disc)?),
            },
            ConvexBody::Product { factors } => ConvexBody::Product {
                factors: factors
                    .iter()
                    .map(|f| f.discretize(disc))
                    .collect::<Result<_>>()?,
            },
        })
    }

    /// Bounds on the Euclidean distance from `x` to the body.
    pub fn distance(&self, x: &Vector) -> Result<Distance> {
        check_dim(self.dim(), x.len())?;
        Ok(match self {
            ConvexBody::Ball { center, radius } => {
                let r = x - center;
                let n = r.norm();
                if n <= *radius {
                    Distance {
                        lower: 0.0,
                        upper: 0.0,
                        nearest: x.clone(),
                    }
                } else {
                    let d = n - radius;
                    Distance {
                        lower: d,
                        upper: d,
                        nearest: center + r * (radius / n),
                    }
                }
            }
            ConvexBody::VPolytope { vertices } if vertices[0].len() == 2 && vertices.len() > 2 => {
                let poly = hull::convex_polygon(vertices);
                let d = hull::polygon_distance(&poly, x);
                let nearest = if d == 0.0 {
                    x.clone()
                } else {
                    self.wolfe_distance(x).nearest
                };
                Distance {
                    lower: d,
                    upper: d,
                    nearest,
                }
            }
            ConvexBody::Sum { terms }
                if terms.iter().any(|t| matches!(t, ConvexBody::Ball { .. })) =>
            {
                // peel the ball terms: dist(x, P + B_R(C)) = (dist(x − C, P) − R)⁺
                let mut big_r = 0.0;
                let mut c = Vector::zeros(x.len());
                let mut rest = Vec::new();
                for t in terms {
                    match t {
                        ConvexBody::Ball { center, radius } => {
                            big_r += radius;
                            c += center;
                        }
                        other => rest.push(other.clone()),
                    }
                }
                let shifted = x - &c;
                let (inner, base) = if rest.is_empty() {
                    let z = Vector::zeros(x.len());
                    (
                        Distance {
                            lower: shifted.norm(),
                            upper: shifted.norm(),
                            nearest: z.clone(),
                        },
                        z,
                    )
                } else {
                    let body = if rest.len() == 1 {
                        rest.pop().unwrap()
                    } else {
                        ConvexBody::Sum { terms: rest }
                    };
                    let d = body.distance(&shifted)?;
                    let n = d.nearest.clone();
                    (d, n)
                };
                let gap_vec = &shifted - &base;
                let g = gap_vec.norm();
                let nearest = if g <= big_r {
                    x.clone()
                } else {
                    &base + &c + gap_vec * (big_r / g)
                };
                Distance {
                    lower: (inner.lower - big_r).max(0.0),
                    upper: (inner.upper - big_r).max(0.0),
                    nearest,
                }
            }
            ConvexBody::VPolytope { vertices } => {
                let d = self.wolfe_distance(x);
                if d.lower == 0.0 && d.upper > 0.0 {
                    // Wolfe can stall on degenerate faces; settle membership exactly.
                    if let Some(inside) = hull_combination(vertices, x) {
                        let upper = (&inside - x).norm();
                        if upper < d.upper {
                            return Ok(Distance {
                                lower: 0.0,
                                upper,
                                nearest: inside,
                            });
                        }
                    }
                }
                d
            }
            _ => self.wolfe_distance(x),
        })
    }

    fn wolfe_distance(&self, x: &Vector) -> Distance {
        let start = self.sp(&(self.reference_point() - x)) - x;
        let r = wolfe(start, |y| self.sp(&(-y)) - x, 1e-15, 20_000);
        Distance {
            lower: r.lower,
            upper: r.point.norm(),
            nearest: r.point + x,
        }
    }

    /// `x ∈ A + tol·B₁(0)`.
    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        if x.len() != self.dim() {
            return false;
        }
        match self.distance(x) {
            Ok(d) => {
                if d.upper <= tol {
                    true
                } else if d.lower > tol {
                    false
                } else {
                    0.5 * (d.lower + d.upper) <= tol
                }
            }
            Err(_) => false,
        }
    }

    /// Diameter; exact for polytopes and balls (and their sums), otherwise
    /// the largest sampled width with its sampling gap.
    pub fn diameter(&self) -> Result<Estimate> {
        if let ConvexBody::Ball { radius, .. } = self {
            return Ok(Estimate::exact(2.0 * radius));
        }
        if let ConvexBody::Sum { terms } = self {
            if terms.iter().any(|t| matches!(t, ConvexBody::Ball { .. })) {
                let mut r = 0.0;
                let mut rest = Vec::new();
                for t in terms {
                    match t {
                        ConvexBody::Ball { radius, .. } => r += radius,
                        other => rest.push(other.clone()),
                    }
                }
                let base = match rest.len() {
                    0 => Estimate::exact(0.0),
                    1 => rest[0].diameter()?,
                    _ => ConvexBody::Sum { terms: rest }.diameter()?,
                };
                return Ok(Estimate {
                    value: base.value + 2.0 * r,
                    gap: base.gap,
                });
            }
        }
        if let Some(vs) = self.vertices()? {
            let mut best = 0.0f64;
            for i in 0..vs.len() {
                for j in (i + 1)..vs.len() {
                    best = best.max((&vs[i] - &vs[j]).norm());
                }
            }
            return Ok(Estimate::exact(best));
        }
        let plan = directions::default_plan(self.dim());
        let width = plan
            .dirs
            .iter()
            .map(|u| self.h(u) + self.h(&(-u)))
            .fold(0.0, f64::max);
        let chord = 2.0 * (plan.covering / 2.0).sin();
        Ok(Estimate {
            value: width,
            gap: 2.0 * self.radius_bound() * chord,
        })
    }
}

/// Extreme points of a finite set (duplicates removed above dimension 4).
pub fn prune_points(points: Vec<Vector>) -> Result<Vec<Vector>> {
    prune(points, &Tolerances::default())
}

/// Drop points that are not extreme (intrinsic dimension ≤ 4) or exact
/// duplicates (higher dimensions).
pub(crate) fn prune(points: Vec<Vector>, tol: &Tolerances) -> Result<Vec<Vector>> {
    if points.len() <= 1 {
        return Ok(points);
    }
    match hull::convex_hull(&points, tol) {
        Ok(h) => Ok(h.vertices.iter().map(|&i| points[i].clone()).collect()),
        Err(Error::UnsupportedDim(_)) => {
            let mut out: Vec<Vector> = Vec::with_capacity(points.len());
            for p in points {
                if !out.contains(&p) {
                    out.push(p);
                }
            }
            Ok(out)
        }
        Err(e) => Err(e),
    }
}

/// Inscribed regular polytope of a ball in dimension 2 or 3.
pub fn ball_polytope(center: &Vector, radius: f64, disc: &Discretization) -> Result<ConvexBody> {
    let dirs = match center.len() {
        2 => directions::circle(disc.polygon_sides).dirs,
        3 => directions::icosphere(disc.icosphere_level).dirs,
        d => return Err(Error::UnsupportedDim(d)),
    };
    Ok(ConvexBody::VPolytope {
        vertices: dirs.iter().map(|u| center + u * radius).collect(),
    })
}

/// A point `Σ λᵢ vᵢ` equal to `x` when `x ∈ conv(vertices)`, by phase-one LP.
fn hull_combination(vertices: &[Vector], x: &Vector) -> Option<Vector> {
    let n = vertices.len();
    let mut lp = LinearProgram::maximize(Vector::zeros(n)).nonnegative();
    for i in 0..x.len() {
        let row: Vec<f64> = vertices.iter().map(|v| v[i]).collect();
        lp = lp.eq(&row, x[i]);
    }
    lp = lp.eq(&vec![1.0; n], 1.0);
    lp.lexicographic = false;
    let sol = lp_solve(&lp).ok()?;
    if sol.status != LpStatus::Optimal {
        return None;
    }
    let mut p = Vector::zeros(x.len());
    for (v, l) in vertices.iter().zip(sol.x.iter()) {
        p.axpy(l.max(0.0), v, 1.0);
    }
    Some(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vector;

    fn square() -> ConvexBody {
        ConvexBody::cube(2, 1.0)
    }

    #[test]
    fn support_examples() {
        let ball = ConvexBody::ball(vector(&[0.0, 0.0]), 1.0).unwrap();
        assert_eq!(ball.support_value(&vector(&[1.0, 0.0])).unwrap(), 1.0);
        assert_eq!(square().support_value(&vector(&[1.0, 1.0])).unwrap(), 2.0);
        let sum = ConvexBody::sum(vec![square(), ball.clone()]).unwrap();
        assert_eq!(sum.support_value(&vector(&[1.0, 0.0])).unwrap(), 2.0);
        assert!(matches!(
            ball.support_value(&vector(&[0.0, 0.0])),
            Err(Error::DegenerateDirection)
        ));
    }

    #[test]
    fn support_point_examples() {
        let ball = ConvexBody::ball(vector(&[0.0, 0.0]), 1.0).unwrap();
        assert_eq!(
            ball.support_point(&vector(&[0.0, 1.0])).unwrap(),
            vector(&[0.0, 1.0])
        );
        // both (1, −1) and (1, 1) are optimal; the lexicographic minimum wins
        assert_eq!(
            square().support_point(&vector(&[1.0, 0.0])).unwrap(),
            vector(&[1.0, -1.0])
        );
    }

    #[test]
    fn contains_examples() {
        let ball = ConvexBody::ball(vector(&[0.0, 0.0]), 1.0).unwrap();
        assert!(ball.contains(&vector(&[0.0, 0.0]), 0.0));
        assert!(ball.contains(&vector(&[1.05, 0.0]), 0.1));
        let unit = ConvexBody::cuboid(&vector(&[0.0, 0.0]), &vector(&[1.0, 1.0])).unwrap();
        assert!(!unit.contains(&vector(&[2.0, 0.0]), 0.0));
        assert!(unit.contains(&vector(&[1.0, 0.5]), 0.0));
        // composite: square + ball reaches (2, 0) but not (2, 1.5)
        let s = ConvexBody::sum(vec![square(), ball]).unwrap();
        assert!(s.contains(&vector(&[2.0, 0.0]), 1e-12));
        assert!(!s.contains(&vector(&[2.0, 1.5]), 1e-3));
    }

    #[test]
    fn diameter_examples() {
        assert!((square().diameter().unwrap().value - 8f64.sqrt()).abs() < 1e-14);
        let ball = ConvexBody::ball(vector(&[3.0, 1.0]), 0.7).unwrap();
        assert_eq!(ball.diameter().unwrap().value, 1.4);
        assert_eq!(
            ConvexBody::point(vector(&[1.0, 2.0]))
                .diameter()
                .unwrap()
                .value,
            0.0
        );
    }

    #[test]
    fn vertices_of_composites() {
        let s = ConvexBody::sum(vec![square(), square()]).unwrap();
        let v = s.vertices().unwrap().unwrap();
        assert_eq!(v.len(), 4);
        for p in v {
            assert!((p[0].abs() - 2.0).abs() < 1e-12 && (p[1].abs() - 2.0).abs() < 1e-12);
        }
        let seg = ConvexBody::segment(vector(&[0.0]), vector(&[1.0])).unwrap();
        let prism = ConvexBody::product(vec![square(), seg]).unwrap();
        assert_eq!(prism.vertices().unwrap().unwrap().len(), 8);
    }

    #[test]
    fn distance_to_ellipse_is_bracketed() {
        let disk = ConvexBody::ball(vector(&[0.0, 0.0]), 1.0).unwrap();
        let m = Matrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 1.0]);
        let e = ConvexBody::affine_image(m, vector(&[0.0, 0.0]), disk).unwrap();
        let d = e.distance(&vector(&[3.0, 0.0])).unwrap();
        assert!(d.lower <= 1.0 + 1e-9 && d.upper >= 1.0 - 1e-9);
        assert!(d.upper - d.lower < 1e-6);
    }
}
