//! Independent planar oracles and random generators shared by the
//! integration tests. Nothing here calls into the library.

#![allow(dead_code)]

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type P2 = [f64; 2];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sub(a: P2, b: P2) -> P2 {
    [a[0] - b[0], a[1] - b[1]]
}

fn dot(a: P2, b: P2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn cross(a: P2, b: P2) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

pub fn norm(a: P2) -> f64 {
    a[0].hypot(a[1])
}

pub fn dist(a: P2, b: P2) -> f64 {
    norm(sub(a, b))
}

/// Counter-clockwise hull without collinear points (monotone chain).
pub fn hull(points: &[P2]) -> Vec<P2> {
    let mut p = points.to_vec();
    p.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let mut h: Vec<P2> = Vec::with_capacity(2 * p.len());
    for pass in 0..2 {
        let start = h.len();
        let iter: Box<dyn Iterator<Item = &P2>> = if pass == 0 {
            Box::new(p.iter())
        } else {
            Box::new(p.iter().rev())
        };
        for &q in iter {
            while h.len() >= start + 2
                && cross(sub(h[h.len() - 1], h[h.len() - 2]), sub(q, h[h.len() - 2])) <= 0.0
            {
                h.pop();
            }
            h.push(q);
        }
        h.pop();
    }
    h
}

/// Outward unit normals and offsets of a counter-clockwise polygon.
pub fn halfplanes(poly: &[P2]) -> Vec<(P2, f64)> {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let e = sub(poly[(i + 1) % n], poly[i]);
            let l = norm(e);
            let nrm = [e[1] / l, -e[0] / l];
            (nrm, dot(nrm, poly[i]))
        })
        .collect()
}

fn segment_distance(p: P2, a: P2, b: P2) -> f64 {
    let ab = sub(b, a);
    let len2 = dot(ab, ab);
    let t = if len2 == 0.0 {
        0.0
    } else {
        (dot(sub(p, a), ab) / len2).clamp(0.0, 1.0)
    };
    dist(p, [a[0] + t * ab[0], a[1] + t * ab[1]])
}

/// Euclidean distance from `p` to a convex polygon (counter-clockwise), a
/// segment or a point.
pub fn distance_to(poly: &[P2], p: P2) -> f64 {
    match poly.len() {
        1 => dist(p, poly[0]),
        2 => segment_distance(p, poly[0], poly[1]),
        n => {
            if halfplanes(poly).iter().all(|(nrm, b)| dot(*nrm, p) <= *b) {
                return 0.0;
            }
            (0..n)
                .map(|i| segment_distance(p, poly[i], poly[(i + 1) % n]))
                .fold(f64::INFINITY, f64::min)
        }
    }
}

/// Largest violated constraint of a counter-clockwise polygon (≤ 0 inside).
pub fn slack(poly: &[P2], p: P2) -> f64 {
    halfplanes(poly)
        .iter()
        .map(|(nrm, b)| dot(*nrm, p) - b)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Hausdorff distance of two polygons; the distance to a convex set is
/// convex, so its maximum over the other polygon sits at a vertex.
pub fn hausdorff(a: &[P2], b: &[P2]) -> f64 {
    let one = |x: &[P2], y: &[P2]| x.iter().map(|p| distance_to(y, *p)).fold(0.0, f64::max);
    one(a, b).max(one(b, a))
}

/// Steiner point of a polygon: vertices weighted by their exterior angles.
pub fn steiner(poly: &[P2]) -> P2 {
    let n = poly.len();
    if n == 1 {
        return poly[0];
    }
    if n == 2 {
        return [
            (poly[0][0] + poly[1][0]) / 2.0,
            (poly[0][1] + poly[1][1]) / 2.0,
        ];
    }
    let mut s = [0.0, 0.0];
    for i in 0..n {
        let e0 = sub(poly[i], poly[(i + n - 1) % n]);
        let e1 = sub(poly[(i + 1) % n], poly[i]);
        let turn = cross(e0, e1).atan2(dot(e0, e1));
        s[0] += poly[i][0] * turn / (2.0 * PI);
        s[1] += poly[i][1] * turn / (2.0 * PI);
    }
    s
}

pub fn support(poly: &[P2], u: P2) -> f64 {
    poly.iter()
        .map(|p| dot(*p, u))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Clip a convex polygon by `n·x ≤ b`.
fn clip(poly: &[P2], nrm: P2, b: f64) -> Vec<P2> {
    let mut out = Vec::new();
    let n = poly.len();
    for i in 0..n {
        let (p, q) = (poly[i], poly[(i + 1) % n]);
        let (fp, fq) = (dot(nrm, p) - b, dot(nrm, q) - b);
        if fp <= 0.0 {
            out.push(p);
        }
        if (fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0) {
            let t = fp / (fp - fq);
            out.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
        }
    }
    out
}

/// `{x : nᵢ·x ≤ bᵢ}` as a polygon, or `None` when (nearly) empty.
pub fn intersect_halfplanes(planes: &[(P2, f64)]) -> Option<Vec<P2>> {
    let big = 1e3;
    let mut poly = vec![[-big, -big], [big, -big], [big, big], [-big, big]];
    for (nrm, b) in planes {
        poly = clip(&poly, *nrm, *b);
        if poly.is_empty() {
            return None;
        }
    }
    let h = hull(&poly);
    (h.len() >= 3).then_some(h)
}

/// `A ∸ B` for polygons: every facet of `A` moves in by `h_B(n)`.
pub fn erode(a: &[P2], b: &[P2]) -> Option<Vec<P2>> {
    let planes: Vec<(P2, f64)> = halfplanes(a)
        .into_iter()
        .map(|(n, c)| (n, c - support(b, n)))
        .collect();
    intersect_halfplanes(&planes)
}

/// `A ∸ B_β(0)`.
pub fn erode_disk(a: &[P2], beta: f64) -> Option<Vec<P2>> {
    let planes: Vec<(P2, f64)> = halfplanes(a)
        .into_iter()
        .map(|(n, c)| (n, c - beta))
        .collect();
    intersect_halfplanes(&planes)
}

/// Minimizer of a convex function of one variable on `[lo, hi]` by grid
/// refinement: the minimizer is within one step of the best grid point.
fn grid_min_1d<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    const K: usize = 20;
    loop {
        let step = (hi - lo) / K as f64;
        let (mut best, mut fbest) = (lo, f64::INFINITY);
        for i in 0..=K {
            let x = lo + step * i as f64;
            let v = f(x);
            if v < fbest {
                best = x;
                fbest = v;
            }
        }
        if step < tol {
            return (best, fbest);
        }
        lo = best - step;
        hi = best + step;
    }
}

/// Center and radius of the smallest disk containing `points`, minimizing
/// `max_i ‖x − pᵢ‖` by nested one-dimensional grid refinement.
pub fn minimax_center(points: &[P2]) -> (P2, f64) {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in points {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let f = |x: P2| points.iter().map(|p| dist(x, *p)).fold(0.0, f64::max);
    let inner = |x0: f64| grid_min_1d(|y| f([x0, y]), lo[1], hi[1], 1e-11).1;
    let (x0, _) = grid_min_1d(inner, lo[0], hi[0], 1e-11);
    let (y0, r) = grid_min_1d(|y| f([x0, y]), lo[1], hi[1], 1e-11);
    ([x0, y0], r)
}

pub fn uniform_in_disk<R: Rng>(rng: &mut R, center: P2, radius: f64) -> P2 {
    let r = radius * rng.random::<f64>().sqrt();
    let t = rng.random_range(0.0..2.0 * PI);
    [center[0] + r * t.cos(), center[1] + r * t.sin()]
}

/// Hull of `k` uniform points in a disk.
pub fn random_polygon<R: Rng>(rng: &mut R, center: P2, radius: f64, k: usize) -> Vec<P2> {
    loop {
        let pts: Vec<P2> = (0..k)
            .map(|_| uniform_in_disk(rng, center, radius))
            .collect();
        let h = hull(&pts);
        if h.len() >= 3 {
            return h;
        }
    }
}
