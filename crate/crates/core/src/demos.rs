//! Reproduction drivers: the decomposition gap of the arc example, the P-set
//! table, the intersection-modulus families and the bundled split requests.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::geometry::{LinearSurjection, Vector};
use crate::io::{BodyJson, DomainJson, MapJson, SplitRequest, SurjectionJson};
use crate::pset::{body_zoo, gamma_point, pset_check, PsetOptions, PsetVerdict};
use crate::set_valued::{
    families, verify_intersection_modulus, Domain, ModulusReport, SetValuedMap,
};
use crate::splitting::{
    approx_split, split_strict_sum, split_sum_trace, split_surjection, SplitOptions, SplitTrace,
    SumSplitter,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapRow {
    pub arc_points: usize,
    pub delta: f64,
    /// `a(c(δ))` on the first branch.
    pub a_plus: Vec<f64>,
    /// `a(c(−δ))` on the second branch.
    pub a_minus: Vec<f64>,
    /// `‖a(c(δ)) − a(c(−δ))‖`.
    pub gap: f64,
}

fn check_example_config(m: usize, deltas: &[f64]) -> Result<()> {
    if m < 36 || m % 2 == 1 {
        return Err(Error::Config(
            "arc points must be even and at least 36".into(),
        ));
    }
    if deltas.iter().any(|d| !(*d > 0.0 && *d < PI / 2.0)) {
        return Err(Error::Config("deltas must lie in (0, π/2)".into()));
    }
    Ok(())
}

/// Gap of the sum-splitting selection across the corner point `(1, 0, 1)`
/// of the arc example, one row per `δ`.
pub fn example11_gaps(m: usize, deltas: &[f64]) -> Result<Vec<GapRow>> {
    check_example_config(m, deltas)?;
    let splitter = SumSplitter::new(&body_zoo("example11_A", m)?, &body_zoo("example11_B", m)?)?;
    let opts = SplitOptions::default();
    deltas
        .iter()
        .map(|&d| {
            let plus = splitter.split(&gamma_point(d, m), &opts)?;
            let minus = splitter.split(&gamma_point(-d, m), &opts)?;
            let gap =
                (Vector::from_column_slice(&plus.f1) - Vector::from_column_slice(&minus.f1)).norm();
            Ok(GapRow {
                arc_points: m,
                delta: d,
                a_plus: plus.f1,
                a_minus: minus.f1,
                gap,
            })
        })
        .collect()
}

/// Gap rows for every `(arc_points, δ)` pair, arc counts outermost.
pub fn example11_table(arcs: &[usize], deltas: &[f64]) -> Result<Vec<GapRow>> {
    let mut rows = Vec::new();
    for &m in arcs {
        rows.extend(example11_gaps(m, deltas)?);
    }
    Ok(rows)
}

/// Limit of the gap as `δ → 0`, from the two smallest `δ` under the model
/// `gap² = J² + Kδ²`.
pub fn extrapolated_jump(rows: &[GapRow]) -> Option<f64> {
    let mut r: Vec<&GapRow> = rows.iter().collect();
    r.sort_by(|a, b| a.delta.total_cmp(&b.delta));
    let (a, b) = (r.first()?, r.get(1)?);
    let (x1, y1, x2, y2) = (
        a.delta * a.delta,
        a.gap * a.gap,
        b.delta * b.delta,
        b.gap * b.gap,
    );
    let k = (y2 - y1) / (x2 - x1);
    Some((y1 - k * x1).max(0.0).sqrt())
}

/// Points `(t, a(c(t)))` along the boundary curve for plotting.
pub fn example11_curve(m: usize, ts: &[f64]) -> Result<Vec<(f64, Vec<f64>)>> {
    check_example_config(m, &[])?;
    let splitter = SumSplitter::new(&body_zoo("example11_A", m)?, &body_zoo("example11_B", m)?)?;
    let opts = SplitOptions::default();
    ts.iter()
        .map(|&t| Ok((t, splitter.split(&gamma_point(t, m), &opts)?.f1)))
        .collect()
}

/// The arc example as a sum-splitting trace over `t ∈ [−w, w]` with `n`
/// samples (the negative control: its hypothesis fails).
pub fn example11_trace(
    m: usize,
    n: usize,
    half_width: f64,
    opts: &SplitOptions,
) -> Result<SplitTrace> {
    check_example_config(m, &[half_width])?;
    let domain = Domain::interval(-half_width, half_width, n)?;
    let path: Vec<Vector> = domain.points.iter().map(|t| gamma_point(t[0], m)).collect();
    split_sum_trace(
        &body_zoo("example11_A", m)?,
        &body_zoo("example11_B", m)?,
        &domain,
        &path,
        opts,
    )
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsetRow {
    pub name: String,
    pub verdict: Option<PsetVerdict>,
    pub error: Option<String>,
}

/// P-set verdicts for named (zoo) bodies; a failing row records its error
/// and the table continues.
pub fn pset_table(names: &[String], m: usize, opts: &PsetOptions) -> Vec<PsetRow> {
    names
        .iter()
        .map(
            |name| match body_zoo(name, m).and_then(|b| pset_check(&b, opts)) {
                Ok(v) => PsetRow {
                    name: name.clone(),
                    verdict: Some(v),
                    error: None,
                },
                Err(e) => PsetRow {
                    name: name.clone(),
                    verdict: None,
                    error: Some(e.to_string()),
                },
            },
        )
        .collect()
}

fn v(x: &[f64]) -> Vector {
    Vector::from_column_slice(x)
}

fn square(lo: [f64; 2], hi: [f64; 2]) -> ConvexBody {
    ConvexBody::cuboid(&v(&lo), &v(&hi)).expect("valid box")
}

/// Map pairs for the intersection-modulus check: two satisfying the
/// hypothesis and one where the difference sets lose interior.
pub fn modulus_families(n: usize) -> Result<Vec<(String, SetValuedMap, SetValuedMap)>> {
    let unit = Domain::interval(0.0, 1.0, n)?;
    let translating =
        families::translating_ball(1.0, v(&[0.0, 0.0]), v(&[1.0, 0.0]), unit.clone())?;
    let fixed_ball = families::translating_ball(1.0, v(&[0.3, 0.2]), v(&[0.0, 0.0]), unit)?;
    let turning = families::rotating_polytope(
        vec![
            v(&[1.0, 1.0]),
            v(&[-1.0, 1.0]),
            v(&[-1.0, -1.0]),
            v(&[1.0, -1.0]),
        ],
        Domain::interval(0.0, PI / 2.0, n)?,
    )?;
    let box_domain = turning.domain().clone();
    let fixed_box =
        SetValuedMap::from_fn("box", box_domain, |_| Ok(square([-0.3, -0.8], [1.3, 0.8])))?;
    let tilt_domain = Domain::interval(-0.5, 0.5, n)?;
    let tilting = families::tilting_segment(tilt_domain.clone())?;
    let flat = SetValuedMap::from_fn("segment", tilt_domain, |_| {
        ConvexBody::segment(v(&[-1.0, 0.0]), v(&[1.0, 0.0]))
    })?;
    Ok(vec![
        ("translating_ball".into(), translating, fixed_ball),
        ("rotating_polytope".into(), turning, fixed_box),
        ("tilting_segment".into(), tilting, flat),
    ])
}

pub fn modulus_reports(n: usize) -> Result<Vec<(String, ModulusReport)>> {
    modulus_families(n)?
        .into_iter()
        .map(|(name, f1, f2)| Ok((name, verify_intersection_modulus(&f1, &f2)?)))
        .collect()
}

/// Exact-mode demos whose hypotheses hold.
pub const EXACT_DEMOS: [&str; 3] = ["sum", "strict", "surjection"];
/// Approximate-mode demos on interval domains.
pub const APPROX_DEMOS: [&str; 3] = ["approx-constant", "approx-moving", "approx-disks"];

fn family(name: &str, params: serde_json::Value) -> MapJson {
    MapJson::Family {
        name: name.into(),
        params,
    }
}

fn interval(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1).max(1) as f64)
        .collect()
}

/// A bundled split request sampled at `n` parameters.
pub fn demo_request(name: &str, n: usize, epsilon: f64) -> Result<SplitRequest> {
    if n < 2 {
        return Err(Error::InsufficientDomain);
    }
    let base = SplitRequest {
        mode: String::new(),
        a: None,
        b: None,
        domain: None,
        f1: None,
        f2: None,
        surjection: None,
        selection: Vec::new(),
        epsilon: None,
    };
    let xs = interval(0.0, 1.0, n);
    let segment = |c: f64, r: f64, d: f64| {
        family(
            "translating_ball",
            json!({"radius": r, "center": [c], "direction": [d], "a": 0.0, "b": 1.0, "n": n}),
        )
    };
    Ok(match name {
        // A = unit disk, B = square of side 1, c(x) on the circle of radius 1.2
        "sum" => SplitRequest {
            mode: "sum".into(),
            a: Some(BodyJson::Ball {
                center: vec![0.0, 0.0],
                radius: 1.0,
            }),
            b: Some(BodyJson::from_body(&square([-0.5, -0.5], [0.5, 0.5]))),
            domain: Some(DomainJson::Interval { a: 0.0, b: PI, n }),
            selection: interval(0.0, PI, n)
                .iter()
                .map(|t| vec![1.2 * t.cos(), 1.2 * t.sin()])
                .collect(),
            ..base
        },
        // F1(x) = B_1((x, 0)), F2(x) = R(x)[−1,1]², f(x) = (x, 0) + R(x)(0.5, 0.2)
        "strict" => SplitRequest {
            mode: "strict".into(),
            f1: Some(family(
                "translating_ball",
                json!({"radius": 1.0, "direction": [1.0, 0.0], "n": n}),
            )),
            f2: Some(family("rotating_polytope", json!({"n": n}))),
            selection: xs
                .iter()
                .map(|x| {
                    let (s, c) = x.sin_cos();
                    vec![x + 0.5 * c - 0.2 * s, 0.5 * s + 0.2 * c]
                })
                .collect(),
            ..base
        },
        // L(y1, y2) = y1 − y2, F1(x) = B_1((x, 0)), F2 = B_1(0), f(x) = (x/2, 0.3)
        "surjection" => SplitRequest {
            mode: "surjection".into(),
            f1: Some(family(
                "translating_ball",
                json!({"radius": 1.0, "direction": [1.0, 0.0], "n": n}),
            )),
            f2: Some(family(
                "translating_ball",
                json!({"radius": 1.0, "direction": [0.0, 0.0], "n": n}),
            )),
            surjection: Some(difference_json(2)),
            selection: xs.iter().map(|x| vec![x / 2.0, 0.3]).collect(),
            ..base
        },
        // F1 = F2 = [0, 1], L = sum, f ≡ 1
        "approx-constant" => SplitRequest {
            mode: "approx".into(),
            f1: Some(segment(0.5, 0.5, 0.0)),
            f2: Some(segment(0.5, 0.5, 0.0)),
            surjection: Some(sum_json(1)),
            selection: vec![vec![1.0]; n],
            epsilon: Some(epsilon),
            ..base
        },
        // F1(x) = [x, x + 1], F2 = [0, 1], L = sum, f(x) = x + 1
        "approx-moving" => SplitRequest {
            mode: "approx".into(),
            f1: Some(segment(0.5, 0.5, 1.0)),
            f2: Some(segment(0.5, 0.5, 0.0)),
            surjection: Some(sum_json(1)),
            selection: xs.iter().map(|x| vec![x + 1.0]).collect(),
            epsilon: Some(epsilon),
            ..base
        },
        // L(y1, y2) = y1 − y2 on discs, f(x) = (x/2, 0.3)
        "approx-disks" => SplitRequest {
            mode: "approx".into(),
            f1: Some(family(
                "translating_ball",
                json!({"radius": 1.0, "direction": [1.0, 0.0], "n": n}),
            )),
            f2: Some(family(
                "translating_ball",
                json!({"radius": 1.0, "direction": [0.0, 0.0], "n": n}),
            )),
            surjection: Some(difference_json(2)),
            selection: xs.iter().map(|x| vec![x / 2.0, 0.3]).collect(),
            epsilon: Some(epsilon),
            ..base
        },
        other => return Err(Error::Config(format!("unknown demo `{other}`"))),
    })
}

fn matrix_json(l: &LinearSurjection) -> SurjectionJson {
    let m = l.matrix();
    SurjectionJson {
        matrix: (0..m.nrows())
            .map(|i| m.row(i).iter().copied().collect())
            .collect(),
    }
}

fn sum_json(n: usize) -> SurjectionJson {
    matrix_json(&LinearSurjection::sum(n))
}

fn difference_json(n: usize) -> SurjectionJson {
    matrix_json(&LinearSurjection::difference(n))
}

fn required<T: Clone>(x: &Option<T>, what: &str) -> Result<T> {
    x.clone()
        .ok_or_else(|| Error::Config(format!("request needs `{what}`")))
}

/// Dispatch a split request to its solver.
pub fn run_request(req: &SplitRequest, opts: &SplitOptions) -> Result<SplitTrace> {
    let f = req.selection_vectors();
    if f.is_empty() {
        return Err(Error::Config("request has no selection samples".into()));
    }
    match req.mode.as_str() {
        "sum" => {
            let a = required(&req.a, "a")?.to_body()?;
            let b = required(&req.b, "b")?.to_body()?;
            let domain = match &req.domain {
                Some(d) => d.to_domain()?,
                None => Domain::interval(0.0, (f.len() - 1) as f64, f.len())?,
            };
            split_sum_trace(&a, &b, &domain, &f, opts)
        }
        "strict" => {
            let f1 = required(&req.f1, "f1")?.to_map()?;
            let f2 = required(&req.f2, "f2")?.to_map()?;
            split_strict_sum(&f1, &f2, &f, opts)
        }
        "surjection" | "approx" => {
            let f1 = required(&req.f1, "f1")?.to_map()?;
            let f2 = required(&req.f2, "f2")?.to_map()?;
            let l = required(&req.surjection, "surjection")?.to_surjection()?;
            if req.mode == "surjection" {
                split_surjection(&f1, &f2, &l, &f, opts)
            } else {
                let eps = required(&req.epsilon, "epsilon")?;
                approx_split(&f1, &f2, &l, &f, eps, opts)
            }
        }
        other => Err(Error::Config(format!("unknown split mode `{other}`"))),
    }
}

/// Run a bundled demo.
pub fn run_demo(name: &str, n: usize, epsilon: f64, opts: &SplitOptions) -> Result<SplitTrace> {
    run_request(&demo_request(name, n, epsilon)?, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gap_rows_approach_one() {
        let rows = example11_gaps(720, &[0.05, 0.01]).unwrap();
        assert!(rows[1].gap < rows[0].gap && rows[1].gap >= 1.0);
        assert!((extrapolated_jump(&rows).unwrap() - 1.0).abs() < 1e-3);
        // below the first chord the corner facet is steep, not vertical
        let coarse = example11_gaps(180, &[0.01]).unwrap();
        assert!(coarse[0].gap < 0.5);
        assert!(example11_gaps(20, &[0.1]).is_err());
        assert!(example11_gaps(360, &[2.0]).is_err());
    }

    #[test]
    fn table_rows_keep_errors() {
        let rows = pset_table(
            &["cube".into(), "torus".into()],
            90,
            &PsetOptions::default(),
        );
        assert!(rows[0].verdict.is_some());
        assert!(rows[1].error.is_some());
        assert!(pset_table(&[], 90, &PsetOptions::default()).is_empty());
    }

    #[test]
    fn demos_certify() {
        let opts = SplitOptions::default();
        for name in EXACT_DEMOS {
            let t = run_demo(name, 5, 0.0, &opts).unwrap();
            assert!(t.max_residual() <= 1e-8, "{name}");
            assert!(t.max_slack() <= 1e-8, "{name}");
        }
        for name in APPROX_DEMOS {
            let t = run_demo(name, 5, 0.2, &opts).unwrap();
            assert!(t.max_residual() <= 1e-8, "{name}");
            assert!(t.max_slack() <= 0.2 + 1e-6, "{name}");
            assert!(t.midpoints_pass(), "{name}");
        }
        assert!(matches!(
            run_demo("nope", 5, 0.2, &opts),
            Err(Error::Config(_))
        ));
    }
}
