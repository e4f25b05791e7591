//! Unit direction sets with known covering radius.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::geometry::Vector;

/// A finite set of unit directions. `covering` bounds the angle from any unit
/// vector to its nearest member (infinite when no bound is known).
#[derive(Clone, Debug)]
pub struct Directions {
    pub dirs: Vec<Vector>,
    pub covering: f64,
    /// Cells of a spherical tessellation by member indices (arcs in 2-D,
    /// triangles in 3-D); every unit vector lies in the cone of some cell.
    /// Empty when the plan carries no tessellation.
    pub cells: Vec<Vec<usize>>,
}

/// `n` equally spaced angles on the unit circle, starting at angle 0.
pub fn circle(n: usize) -> Directions {
    let dirs = (0..n)
        .map(|i| {
            let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
            Vector::from_column_slice(&[t.cos(), t.sin()])
        })
        .collect();
    Directions {
        dirs,
        covering: std::f64::consts::PI / n as f64,
        cells: (0..n).map(|i| vec![i, (i + 1) % n]).collect(),
    }
}

/// Vertices of the icosahedron subdivided `level` times (12, 42, 162, 642,
/// 2562, ... points). The six coordinate axes are always included.
pub fn icosphere(level: usize) -> Directions {
    let (verts, faces) = icosphere_mesh(level);
    // every point of a face is within its spherical circumradius of some
    // corner
    let mut covering = 0.0f64;
    for f in &faces {
        let (a, b, c) = (&verts[f[0]], &verts[f[1]], &verts[f[2]]);
        let n = (b - a).cross(&(c - a)).normalize();
        covering = covering.max(n.dot(a).abs().clamp(-1.0, 1.0).acos());
    }
    Directions {
        dirs: verts,
        covering,
        cells: faces.iter().map(|f| f.to_vec()).collect(),
    }
}

/// Vertex list and triangles of the subdivided icosahedron. Extra axis points
/// appended after the mesh vertices belong to no triangle.
pub fn icosphere_mesh(level: usize) -> (Vec<Vector>, Vec<[usize; 3]>) {
    // the axis-aligned golden-rectangle icosahedron has no vertex on the
    // axes; rotate so that one vertex sits on +z and its antipode on −z
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let raw = [
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ];
    let mut verts: Vec<Vector> = raw
        .iter()
        .map(|p| Vector::from_column_slice(p).normalize())
        .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..level {
        let mut cache: HashMap<(usize, usize), usize> = HashMap::new();
        let mut next = Vec::with_capacity(faces.len() * 4);
        let mut mid = |a: usize, b: usize, verts: &mut Vec<Vector>| -> usize {
            let key = (a.min(b), a.max(b));
            *cache.entry(key).or_insert_with(|| {
                verts.push((&verts[a] + &verts[b]).normalize());
                verts.len() - 1
            })
        };
        for f in &faces {
            let ab = mid(f[0], f[1], &mut verts);
            let bc = mid(f[1], f[2], &mut verts);
            let ca = mid(f[2], f[0], &mut verts);
            next.push([f[0], ab, ca]);
            next.push([f[1], bc, ab]);
            next.push([f[2], ca, bc]);
            next.push([ab, bc, ca]);
        }
        faces = next;
    }
    // rotation taking vertex 0 to +z (vertex 2 = −vertex 0 goes to −z)
    let a = verts[0].clone();
    let z = Vector::from_column_slice(&[0.0, 0.0, 1.0]);
    let rot = rotation_between(&a, &z);
    for v in &mut verts {
        *v = (&rot * &*v).normalize();
    }
    // the poles are now ±z; the remaining axes are appended when absent
    let mut out = verts;
    for axis in 0..3 {
        for s in [1.0, -1.0] {
            let mut e = Vector::zeros(3);
            e[axis] = s;
            if !out.iter().any(|v| (v - &e).norm() < 1e-12) {
                out.push(e);
            }
        }
    }
    (out, faces)
}

fn rotation_between(a: &Vector, b: &Vector) -> nalgebra::DMatrix<f64> {
    let a3 = nalgebra::Vector3::new(a[0], a[1], a[2]);
    let b3 = nalgebra::Vector3::new(b[0], b[1], b[2]);
    let r = nalgebra::Rotation3::rotation_between(&a3, &b3)
        .unwrap_or_else(nalgebra::Rotation3::identity);
    nalgebra::DMatrix::from_iterator(3, 3, r.matrix().iter().copied())
}

/// `n` seeded Gaussian-normalized directions in ℝᵈ.
pub fn random_sphere(d: usize, n: usize, seed: u64) -> Vec<Vector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| loop {
            let v = Vector::from_iterator(d, (0..d).map(|_| StandardNormal.sample(&mut rng)));
            let norm = v.norm();
            if norm > 1e-12 {
                break v / norm;
            }
        })
        .collect()
}

/// Default sampling plan: ±1 in 1-D, 720 angles in 2-D, the 2562-point
/// icosphere in 3-D and seeded random directions (no covering bound) above.
pub fn default_plan(d: usize) -> Directions {
    match d {
        1 => Directions {
            dirs: vec![Vector::from_element(1, 1.0), Vector::from_element(1, -1.0)],
            covering: 0.0,
            cells: Vec::new(),
        },
        2 => circle(720),
        3 => icosphere(4),
        _ => Directions {
            dirs: random_sphere(d, 4000 * d, 0),
            covering: f64::INFINITY,
            cells: Vec::new(),
        },
    }
}

/// Plan at refinement `level` (0 = default); each level roughly quadruples
/// the density in 3-D and doubles it in 2-D.
pub fn plan_at(d: usize, level: usize) -> Directions {
    match d {
        2 => circle(720 << level),
        3 => icosphere(4 + level),
        _ => default_plan(d),
    }
}
