use crate::error::{check_dim, Error, Result};
use crate::geometry::{AffineSubspace, Matrix, Vector};
use crate::tol::Tolerances;

use super::directions::{self, Directions};
use super::hrep::HPolytope;
use super::hull::{convex_hull, convex_polygon, polygon_distance};
use super::{ConvexBody, Estimate};

/// `A + B`. Polytope pairs are flattened to their vertex form and ball pairs
/// merged; anything else becomes a sum body.
pub fn minkowski_sum(a: &ConvexBody, b: &ConvexBody) -> Result<ConvexBody> {
    check_dim(a.dim(), b.dim())?;
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
        return ConvexBody::ball(c1 + c2, r1 + r2);
    }
    if a.is_polytope() && b.is_polytope() {
        let s = ConvexBody::Sum {
            terms: vec![a.clone(), b.clone()],
        };
        if let Some(vertices) = s.vertices()? {
            return Ok(ConvexBody::VPolytope { vertices });
        }
    }
    let mut terms = Vec::new();
    for x in [a, b] {
        match x {
            ConvexBody::Sum { terms: t } => terms.extend(t.iter().cloned()),
            other => terms.push(other.clone()),
        }
    }
    ConvexBody::sum(terms)
}

/// `A × B` in the direct sum of the two spaces.
pub fn product_body(a: &ConvexBody, b: &ConvexBody) -> ConvexBody {
    let mut factors = Vec::new();
    for x in [a, b] {
        match x {
            ConvexBody::Product { factors: f } => factors.extend(f.iter().cloned()),
            other => factors.push(other.clone()),
        }
    }
    ConvexBody::Product { factors }
}

/// Facet representation of a polytope-valued body. Lower-dimensional bodies
/// carry their affine hull as pairs of opposite half-spaces.
pub fn to_hrep(a: &ConvexBody) -> Result<HPolytope> {
    to_hrep_with(a, &Tolerances::default())
}

pub fn to_hrep_with(a: &ConvexBody, tol: &Tolerances) -> Result<HPolytope> {
    if let ConvexBody::Product { factors } = a {
        let total = a.dim();
        let mut out: Option<HPolytope> = None;
        let mut start = 0;
        for f in factors {
            let lifted = to_hrep_with(f, tol)?.embed(total, start);
            start += f.dim();
            out = Some(match out {
                None => lifted,
                Some(h) => h.intersect(&lifted)?,
            });
        }
        return Ok(out.expect("product has factors"));
    }
    let vertices = a
        .vertices_with(tol)?
        .ok_or_else(|| Error::UnsupportedRep("body has no vertex form (contains a ball)".into()))?;
    let hull = convex_hull(&vertices, tol)?;
    Ok(HPolytope::from_facets(a.dim(), hull.facets))
}

/// `A ∸ B = {x : x + B ⊆ A}`; `None` when empty.
pub fn geometric_difference(a: &ConvexBody, b: &ConvexBody) -> Result<Option<ConvexBody>> {
    check_dim(a.dim(), b.dim())?;
    let tol = Tolerances::default();
    if let ConvexBody::VPolytope { vertices } = b {
        if vertices.iter().all(|v| *v == vertices[0]) {
            return Ok(Some(a.translate(&(-&vertices[0]))?));
        }
    }
    if let ConvexBody::Ball {
        center: ca,
        radius: ra,
    } = a
    {
        return match b {
            ConvexBody::Ball {
                center: cb,
                radius: rb,
            } => Ok(if rb <= ra {
                Some(ConvexBody::Ball {
                    center: ca - cb,
                    radius: ra - rb,
                })
            } else {
                None
            }),
            _ => Err(Error::UnsupportedRep(
                "ball minuend needs a ball or point subtrahend".into(),
            )),
        };
    }
    if !a.is_polytope() {
        return Err(Error::UnsupportedRep(
            "minuend must be a polytope or a ball".into(),
        ));
    }
    let h = to_hrep_with(a, &tol)?.shrink_by(|n| b.h(n));
    h.to_body(&tol)
}

/// Largest `γ ≥ 0` with `γ·B₁(0) ⊆ A`, i.e. `max(0, min_{|u|=1} h_A(u))`.
pub fn inclusion_radius(a: &ConvexBody) -> Result<Estimate> {
    let tol = Tolerances::default();
    match a {
        ConvexBody::Ball { center, radius } => {
            return Ok(Estimate::exact((radius - center.norm()).max(0.0)))
        }
        ConvexBody::Sum { terms } if terms.iter().any(|t| matches!(t, ConvexBody::Ball { .. })) => {
            let mut r = 0.0;
            let mut c = Vector::zeros(a.dim());
            let mut rest = Vec::new();
            for t in terms {
                match t {
                    ConvexBody::Ball { center, radius } => {
                        r += radius;
                        c += center;
                    }
                    other => rest.push(other.clone()),
                }
            }
            if rest.is_empty() {
                return Ok(Estimate::exact((r - c.norm()).max(0.0)));
            }
            let base = if rest.len() == 1 {
                rest.pop().unwrap()
            } else {
                ConvexBody::Sum { terms: rest }
            };
            let q = base.translate(&c)?;
            if q.is_polytope() {
                if let Ok(h) = to_hrep_with(&q, &tol) {
                    let inner = h.offsets().iter().cloned().fold(f64::INFINITY, f64::min);
                    let m = if inner >= 0.0 {
                        inner
                    } else {
                        let d = q.distance(&Vector::zeros(a.dim()))?;
                        return Ok(Estimate {
                            value: (r - 0.5 * (d.lower + d.upper)).max(0.0),
                            gap: 0.5 * (d.upper - d.lower),
                        });
                    };
                    return Ok(Estimate::exact((r + m).max(0.0)));
                }
            }
        }
        _ => {
            if a.is_polytope() {
                if let Ok(h) = to_hrep_with(a, &tol) {
                    let m = h.offsets().iter().cloned().fold(f64::INFINITY, f64::min);
                    return Ok(Estimate::exact(m.max(0.0)));
                }
            }
        }
    }
    let plan = directions::default_plan(a.dim());
    let m = plan
        .dirs
        .iter()
        .map(|u| a.h(u))
        .fold(f64::INFINITY, f64::min);
    let lip = a.reference_point().norm() + a.radius_bound();
    let gap = lip * 2.0 * (plan.covering / 2.0).sin();
    if m <= 0.0 && m + gap <= 0.0 {
        return Ok(Estimate::exact(0.0));
    }
    Ok(Estimate {
        value: m.max(0.0),
        gap,
    })
}

/// `A ∩ S` in the orthonormal coordinates of `S`; `None` when empty.
pub fn affine_slice(a: &ConvexBody, s: &AffineSubspace) -> Result<Option<ConvexBody>> {
    check_dim(a.dim(), s.ambient_dim())?;
    if s.dim() == 0 {
        return Err(Error::UnsupportedDim(0));
    }
    let tol = Tolerances::default();
    if let ConvexBody::Ball { center, radius } = a {
        let t = s.to_coords(center);
        let foot = s.from_coords(&t);
        let d2 = (center - foot).norm_squared();
        let r2 = radius * radius;
        if d2 > r2 * (1.0 + 1e-12) + 1e-300 {
            return Ok(None);
        }
        return Ok(Some(ConvexBody::Ball {
            center: t,
            radius: (r2 - d2).max(0.0).sqrt(),
        }));
    }
    if !a.is_polytope() {
        return Err(Error::UnsupportedRep(
            "slicing needs a polytope or a ball".into(),
        ));
    }
    to_hrep_with(a, &tol)?.slice(s)?.to_body(&tol)
}

/// Hausdorff distance. Ball pairs use the closed form and polytope pairs the
/// maximum vertex-to-set distance; other pairs are sampled on the default
/// plan, refined until the estimate moves by less than 1e-6.
pub fn hausdorff_distance(a: &ConvexBody, b: &ConvexBody) -> Result<Estimate> {
    check_dim(a.dim(), b.dim())?;
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
        return Ok(Estimate::exact((c1 - c2).norm() + (r1 - r2).abs()));
    }
    if let (Some(va), Some(vb)) = (exact_vertices(a)?, exact_vertices(b)?) {
        return Ok(polytope_hausdorff(&va, &vb, a, b));
    }
    // equal ball parts cancel
    if let (Some((pa, ra)), Some((pb, rb))) = (split_ball(a), split_ball(b)) {
        if (ra - rb).abs() <= 1e-15 * (1.0 + ra) {
            if let (Some(va), Some(vb)) = (exact_vertices(&pa)?, exact_vertices(&pb)?) {
                return Ok(polytope_hausdorff(&va, &vb, &pa, &pb));
            }
        }
    }
    let d = a.dim();
    let mut est = hausdorff_sampled(a, b, &directions::plan_at(d, 0))?;
    if d == 2 || d == 3 {
        let max_level = if d == 2 { 6 } else { 1 };
        for level in 1..=max_level {
            let next = hausdorff_sampled(a, b, &directions::plan_at(d, level))?;
            let moved = (next.value - est.value).abs();
            est = next;
            if moved < 1e-6 {
                break;
            }
        }
    }
    Ok(est)
}

/// `max_u |h_A(u) − h_B(u)|` over a direction set. With a tessellated plan
/// the bound between samples comes from the support half-spaces at the cell
/// corners (outer bound) and the support points (inner bound); otherwise from
/// the Lipschitz constants of the support functions.
pub fn hausdorff_sampled(a: &ConvexBody, b: &ConvexBody, plan: &Directions) -> Result<Estimate> {
    check_dim(a.dim(), b.dim())?;
    let d = a.dim();
    let sa: Vec<Vector> = plan.dirs.iter().map(|u| a.sp(u)).collect();
    let sb: Vec<Vector> = plan.dirs.iter().map(|u| b.sp(u)).collect();
    let ha: Vec<f64> = plan.dirs.iter().map(|u| a.h(u)).collect();
    let hb: Vec<f64> = plan.dirs.iter().map(|u| b.h(u)).collect();
    let lo = ha
        .iter()
        .zip(&hb)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let scale = a.reference_point().norm()
        + a.radius_bound()
        + b.reference_point().norm()
        + b.radius_bound();
    let usable = !plan.cells.is_empty() && plan.cells.iter().all(|c| c.len() == d);
    let hi = if usable {
        let mut hi = lo;
        for cell in &plan.cells {
            let us: Vec<&Vector> = cell.iter().map(|&i| &plan.dirs[i]).collect();
            let ua = Matrix::from_fn(d, d, |r, c| us[r][c]);
            let Some(inv) = ua.clone().try_inverse() else {
                hi = f64::INFINITY;
                break;
            };
            let qa = &inv * Vector::from_iterator(d, cell.iter().map(|&i| ha[i]));
            let qb = &inv * Vector::from_iterator(d, cell.iter().map(|&i| hb[i]));
            let ab = cell
                .iter()
                .map(|&i| cone_sup(&us, &inv, &(&qa - &sb[i])))
                .fold(f64::INFINITY, f64::min);
            let ba = cell
                .iter()
                .map(|&i| cone_sup(&us, &inv, &(&qb - &sa[i])))
                .fold(f64::INFINITY, f64::min);
            hi = hi.max(ab).max(ba);
        }
        hi + 1e-12 * scale.max(1.0)
    } else if plan.covering == 0.0 {
        lo
    } else {
        let c = a.reference_point();
        let lip = a.radius_bound() + (b.reference_point() - &c).norm() + b.radius_bound();
        lo + lip * 2.0 * (plan.covering / 2.0).sin()
    };
    Ok(Estimate {
        value: 0.5 * (lo + hi),
        gap: 0.5 * (hi - lo),
    })
}

/// `sup ⟨v, w⟩` over unit `v` in the cone spanned by `us` (2 or 3 vectors
/// in ℝ² or ℝ³); `inv` is the inverse of the matrix with rows `us`.
fn cone_sup(us: &[&Vector], inv: &Matrix, w: &Vector) -> f64 {
    let n = w.norm();
    if n == 0.0 {
        return 0.0;
    }
    // w = Σ λᵢ uᵢ with λ = U⁻ᵀ w
    let lambda = inv.transpose() * w;
    if lambda.iter().all(|l| *l >= 0.0) {
        return n;
    }
    let mut best = f64::NEG_INFINITY;
    for i in 0..us.len() {
        let j = (i + 1) % us.len();
        if us.len() == 2 && i == 1 {
            break;
        }
        best = best.max(arc_sup(us[i], us[j], w));
    }
    best
}

fn arc_sup(u1: &Vector, u2: &Vector, w: &Vector) -> f64 {
    let ends = u1.dot(w).max(u2.dot(w));
    // orthonormal frame of the arc's plane
    let e1 = u1.clone();
    let t = u2 - &e1 * e1.dot(u2);
    let tn = t.norm();
    if tn == 0.0 {
        return ends;
    }
    let e2 = t / tn;
    let (x, y) = (e1.dot(w), e2.dot(w));
    // the arc runs from angle 0 to atan2(e2·u2, e1·u2)
    let end = (e2.dot(u2)).atan2(e1.dot(u2));
    let ang = y.atan2(x);
    if ang >= 0.0 && ang <= end {
        (x * x + y * y).sqrt()
    } else {
        ends
    }
}

fn exact_vertices(a: &ConvexBody) -> Result<Option<Vec<Vector>>> {
    if !a.is_polytope() {
        return Ok(None);
    }
    a.vertices()
}

/// `(P, R)` with `A = P + B_R(0)` when `A` is a sum containing balls.
fn split_ball(a: &ConvexBody) -> Option<(ConvexBody, f64)> {
    let ConvexBody::Sum { terms } = a else {
        return None;
    };
    let mut r = 0.0;
    let mut c = Vector::zeros(a.dim());
    let mut rest = Vec::new();
    for t in terms {
        match t {
            ConvexBody::Ball { center, radius } => {
                r += radius;
                c += center;
            }
            other => rest.push(other.clone()),
        }
    }
    let base = match rest.len() {
        0 => ConvexBody::point(Vector::zeros(a.dim())),
        1 => rest.pop().unwrap(),
        _ => ConvexBody::Sum { terms: rest },
    };
    Some((base.translate(&c).ok()?, r))
}

fn polytope_hausdorff(va: &[Vector], vb: &[Vector], a: &ConvexBody, b: &ConvexBody) -> Estimate {
    // distance to a convex set is convex, so its maximum over a polytope is
    // attained at a vertex
    if va[0].len() == 2 {
        let pa = convex_polygon(va);
        let pb = convex_polygon(vb);
        let d1 = va
            .iter()
            .map(|x| polygon_distance(&pb, x))
            .fold(0.0, f64::max);
        let d2 = vb
            .iter()
            .map(|x| polygon_distance(&pa, x))
            .fold(0.0, f64::max);
        return Estimate::exact(d1.max(d2));
    }
    if va[0].len() == 1 {
        let (lo_a, hi_a) = interval(va);
        let (lo_b, hi_b) = interval(vb);
        return Estimate::exact((lo_a - lo_b).abs().max((hi_a - hi_b).abs()));
    }
    let mut lo = 0.0f64;
    let mut hi = 0.0f64;
    for (xs, body) in [(va, b), (vb, a)] {
        for x in xs {
            if let Ok(d) = body.distance(x) {
                lo = lo.max(d.lower);
                hi = hi.max(d.upper);
            }
        }
    }
    Estimate {
        value: 0.5 * (lo + hi),
        gap: 0.5 * (hi - lo),
    }
}

fn interval(v: &[Vector]) -> (f64, f64) {
    v.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
            (lo.min(x[0]), hi.max(x[0]))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vector;

    fn square() -> ConvexBody {
        ConvexBody::cube(2, 1.0)
    }

    fn disk(r: f64) -> ConvexBody {
        ConvexBody::ball(vector(&[0.0, 0.0]), r).unwrap()
    }

    #[test]
    fn hausdorff_examples() {
        assert_eq!(
            hausdorff_distance(&disk(1.0), &disk(2.0)).unwrap().value,
            1.0
        );
        let moved = square().translate(&vector(&[1.0, 0.0])).unwrap();
        assert!((hausdorff_distance(&square(), &moved).unwrap().value - 1.0).abs() < 1e-12);
        let seg = ConvexBody::segment(vector(&[0.0, 0.0]), vector(&[1.0, 0.0])).unwrap();
        let pt = ConvexBody::point(vector(&[0.0, 0.0]));
        assert!((hausdorff_distance(&seg, &pt).unwrap().value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hausdorff_sampled_square_vs_disk() {
        // h([−1,1]², B₁) = √2 − 1, attained at the diagonals
        let e = hausdorff_distance(&square(), &disk(1.0)).unwrap();
        assert!((e.value - (2f64.sqrt() - 1.0)).abs() <= e.gap + 1e-12);
        assert!(e.gap < 1e-5);
    }

    #[test]
    fn minkowski_examples() {
        let s = minkowski_sum(&square(), &square()).unwrap();
        assert_eq!(s.support_value(&vector(&[1.0, 1.0])).unwrap(), 4.0);
        assert!(matches!(s, ConvexBody::VPolytope { ref vertices } if vertices.len() == 4));
        let b = minkowski_sum(
            &ConvexBody::ball(vector(&[1.0, 0.0]), 1.0).unwrap(),
            &ConvexBody::ball(vector(&[0.0, 2.0]), 0.5).unwrap(),
        )
        .unwrap();
        assert_eq!(
            b,
            ConvexBody::Ball {
                center: vector(&[1.0, 2.0]),
                radius: 1.5
            }
        );
    }

    #[test]
    fn hrep_examples() {
        let tri = ConvexBody::polytope(vec![
            vector(&[0.0, 0.0]),
            vector(&[1.0, 0.0]),
            vector(&[0.0, 1.0]),
        ])
        .unwrap();
        assert_eq!(to_hrep(&tri).unwrap().len(), 3);
        let sq = to_hrep(&square()).unwrap();
        assert_eq!(sq.len(), 4);
        for (n, b) in sq.normals().iter().zip(sq.offsets()) {
            assert!((b - 1.0).abs() < 1e-12);
            assert!((n.iter().map(|x| x.abs()).sum::<f64>() - 1.0).abs() < 1e-12);
        }
        assert_eq!(to_hrep(&ConvexBody::cube(3, 0.5)).unwrap().len(), 6);
        assert!(matches!(to_hrep(&disk(1.0)), Err(Error::UnsupportedRep(_))));
    }

    #[test]
    fn difference_examples() {
        let e = geometric_difference(&square(), &disk(0.5))
            .unwrap()
            .unwrap();
        let v = e.vertices().unwrap().unwrap();
        assert_eq!(v.len(), 4);
        for p in &v {
            assert!((p[0].abs() - 0.5).abs() < 1e-12 && (p[1].abs() - 0.5).abs() < 1e-12);
        }
        let t = geometric_difference(&square(), &ConvexBody::point(vector(&[0.25, 0.5])))
            .unwrap()
            .unwrap();
        assert!((t.support_value(&vector(&[1.0, 0.0])).unwrap() - 0.75).abs() < 1e-15);
        let z = geometric_difference(&disk(1.0), &disk(1.0))
            .unwrap()
            .unwrap();
        assert_eq!(z.diameter().unwrap().value, 0.0);
        assert!(geometric_difference(&square(), &disk(1.5))
            .unwrap()
            .is_none());
    }

    #[test]
    fn inclusion_radius_examples() {
        assert_eq!(inclusion_radius(&disk(1.0)).unwrap().value, 1.0);
        assert!((inclusion_radius(&square()).unwrap().value - 1.0).abs() < 1e-12);
        let seg = ConvexBody::segment(vector(&[-1.0, 0.0]), vector(&[1.0, 0.0])).unwrap();
        assert_eq!(inclusion_radius(&seg).unwrap().value, 0.0);
        let off = ConvexBody::ball(vector(&[3.0, 0.0]), 1.0).unwrap();
        assert_eq!(inclusion_radius(&off).unwrap().value, 0.0);
        let rounded = ConvexBody::sum(vec![square(), disk(0.5)]).unwrap();
        assert!((inclusion_radius(&rounded).unwrap().value - 1.5).abs() < 1e-12);
    }

    #[test]
    fn slice_examples() {
        let s = AffineSubspace::hyperplane(&vector(&[1.0, 0.0]), 0.5).unwrap();
        let seg = affine_slice(&square(), &s).unwrap().unwrap();
        let mut v: Vec<f64> = seg
            .vertices()
            .unwrap()
            .unwrap()
            .iter()
            .map(|p| p[0])
            .collect();
        v.sort_by(f64::total_cmp);
        assert!((v[0] + 1.0).abs() < 1e-12 && (v[1] - 1.0).abs() < 1e-12);

        let line = AffineSubspace::new(vector(&[0.0, 0.0]), &[vector(&[1.0, 1.0])]).unwrap();
        let d = affine_slice(&disk(1.0), &line).unwrap().unwrap();
        assert_eq!(d.diameter().unwrap().value, 2.0);

        let cube =
            ConvexBody::cuboid(&vector(&[0.0, 0.0, 0.0]), &vector(&[1.0, 1.0, 1.0])).unwrap();
        let plane = AffineSubspace::hyperplane(&vector(&[1.0, 1.0, 1.0]), 1.5).unwrap();
        let hex = affine_slice(&cube, &plane).unwrap().unwrap();
        assert_eq!(hex.vertices().unwrap().unwrap().len(), 6);

        let far = AffineSubspace::hyperplane(&vector(&[1.0, 0.0]), 3.0).unwrap();
        assert!(affine_slice(&square(), &far).unwrap().is_none());
    }

    #[test]
    fn product_examples() {
        let unit = ConvexBody::segment(vector(&[0.0]), vector(&[1.0])).unwrap();
        let sq = product_body(&unit, &unit);
        assert_eq!(sq.vertices().unwrap().unwrap().len(), 4);
        let p = vector(&[0.3, -2.0]);
        assert_eq!(
            sq.support_value(&p).unwrap(),
            unit.h(&vector(&[0.3])) + unit.h(&vector(&[-2.0]))
        );
        let prism = product_body(&square(), &unit);
        assert_eq!(prism.vertices().unwrap().unwrap().len(), 8);
    }
}
