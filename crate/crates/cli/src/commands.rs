use std::f64::consts::PI;
use std::path::Path;

use serde_json::{json, Value};
use svsplit::body::{affine_slice, geometric_difference, hausdorff_distance, minkowski_sum};
use svsplit::demos::{self, GapRow};
use svsplit::io::{body_from_json, map_from_json, BodyJson, SplitRequest};
use svsplit::pset::{body_zoo, pset_check, PsetOptions, ZOO};
use svsplit::selection::{chebyshev_center, steiner_point};
use svsplit::set_valued::{verify_intersection_modulus, ModulusReport};
use svsplit::splitting::{SplitMode, SplitOptions, SplitTrace};
use svsplit::{vector, AffineSubspace, ConvexBody, Error, Result, Vector};

use crate::report::{Check, ErrorInfo, RunConfig};
use crate::{Command, MinkowskiOp, Outcome, SplitModeArg, Table};

pub(crate) fn dispatch(cmd: &Command, cfg: &RunConfig, out: &mut Outcome) -> Result<()> {
    match cmd {
        Command::Support { body, direction } => {
            let a = load_body(body, cfg)?;
            let p = vector(direction);
            out.report.results = json!({
                "value": a.support_value(&p)?,
                "point": list(&a.support_point(&p)?),
            });
        }
        Command::Hausdorff { a, b } => {
            let h = hausdorff_distance(&load_body(a, cfg)?, &load_body(b, cfg)?)?;
            out.report.results = json!({ "value": h.value, "gap": h.gap });
        }
        Command::Steiner { body, samples } => {
            let s = steiner_point(&load_body(body, cfg)?, *samples, cfg.seed)?;
            out.report.results = json!({
                "point": list(&s.point),
                "stderr": list(&s.stderr),
                "samples_used": s.samples_used,
                "exact": s.is_exact(),
            });
        }
        Command::Chebyshev { body } => {
            let c = chebyshev_center(&load_body(body, cfg)?)?;
            out.report.results = json!({ "center": list(&c.center), "radius": c.radius });
        }
        Command::Minkowski { op, a, b } => {
            let (a, b) = (load_body(a, cfg)?, load_body(b, cfg)?);
            let result = match op {
                MinkowskiOp::Sum => Some(minkowski_sum(&a, &b)?),
                MinkowskiOp::Diff => geometric_difference(&a, &b)?,
            };
            out.report.results = body_result(result.as_ref())?;
        }
        Command::Slice {
            body,
            normal,
            offset,
        } => {
            let s = AffineSubspace::hyperplane(&vector(normal), *offset)?;
            let result = affine_slice(&load_body(body, cfg)?, &s)?;
            out.report.results = body_result(result.as_ref())?;
        }
        Command::PsetCheck { body, delta } => {
            let v = pset_check(&load_body(body, cfg)?, &pset_options(*delta))?;
            out.report.results = serde_json::to_value(v).expect("verdicts serialize");
        }
        Command::PsetTable { bodies, delta } => pset_table(bodies, *delta, cfg, out),
        Command::Split {
            mode,
            request,
            demo,
            grid,
        } => split(*mode, request.as_deref(), demo.as_deref(), *grid, cfg, out)?,
        Command::Modulus {
            f1,
            f2,
            family,
            grid,
        } => modulus(f1.as_deref(), f2.as_deref(), family.as_deref(), *grid, out)?,
        Command::Example11 {
            deltas,
            curve_points,
        } => example11(deltas, *curve_points, cfg, out)?,
    }
    Ok(())
}

fn list(v: &Vector) -> Vec<f64> {
    v.iter().copied().collect()
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("reading {}: {e}", path.display())))
}

/// A body from inline JSON, a JSON file or a zoo name.
fn load_body(spec: &str, cfg: &RunConfig) -> Result<ConvexBody> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        return body_from_json(spec);
    }
    let path = Path::new(spec);
    if path.is_file() {
        return body_from_json(&read_text(path)?);
    }
    if ZOO.contains(&spec) {
        return body_zoo(spec, cfg.arc_points);
    }
    Err(Error::UnknownBody(spec.to_string()))
}

fn body_result(body: Option<&ConvexBody>) -> Result<Value> {
    Ok(match body {
        None => json!({ "empty": true, "body": null, "vertices": null }),
        Some(b) => {
            let vertices = b
                .vertices()?
                .map(|vs| vs.iter().map(list).collect::<Vec<_>>());
            json!({
                "empty": false,
                "body": BodyJson::from_body(b),
                "vertex_count": vertices.as_ref().map(Vec::len),
                "vertices": vertices,
            })
        }
    })
}

fn pset_options(delta: f64) -> PsetOptions {
    PsetOptions {
        delta,
        mesh: delta / 4.0,
        ..PsetOptions::default()
    }
}

fn pset_table(bodies: &[String], delta: f64, cfg: &RunConfig, out: &mut Outcome) {
    let opts = pset_options(delta);
    let mut failed = 0;
    let rows: Vec<Value> = bodies
        .iter()
        .map(|name| match load_body(name, cfg).and_then(|b| pset_check(&b, &opts)) {
            Ok(v) => json!({ "name": name, "verdict": v.verdict, "details": v, "error": null }),
            Err(e) => {
                failed += 1;
                json!({ "name": name, "verdict": null, "details": null, "error": ErrorInfo::from_error(&e) })
            }
        })
        .collect();
    out.report.results = json!({ "rows": rows });
    if failed > 0 {
        out.report.error = Some(ErrorInfo::from_error(&Error::Config(format!(
            "{failed} of {} rows failed",
            bodies.len()
        ))));
    }
}

fn split(
    mode: SplitModeArg,
    request: Option<&Path>,
    demo: Option<&str>,
    grid: usize,
    cfg: &RunConfig,
    out: &mut Outcome,
) -> Result<()> {
    let mut req = match (request, demo) {
        (Some(path), None) => SplitRequest::parse(&read_text(path)?)?,
        (None, Some(name)) => demos::demo_request(name, grid, cfg.epsilon.unwrap_or(0.05))?,
        _ => {
            return Err(Error::Config(
                "split needs exactly one of --request and --demo".into(),
            ))
        }
    };
    if req.mode != mode.as_str() {
        return Err(Error::Config(format!(
            "request mode `{}` does not match `{}`",
            req.mode,
            mode.as_str()
        )));
    }
    if mode == SplitModeArg::Approx {
        if let Some(eps) = cfg.epsilon {
            req.epsilon = Some(eps);
        }
    }
    let opts = SplitOptions {
        seed: cfg.seed,
        tol: cfg.tolerances,
        ..SplitOptions::default()
    };
    let trace = demos::run_request(&req, &opts)?;
    out.report.checks = split_checks(&trace, cfg.certificate_tol);
    out.report.results = json!({
        "mode": trace.mode,
        "samples": trace.results.len(),
        "max_residual": trace.max_residual(),
        "max_slack": trace.max_slack(),
        "lipschitz": trace.lipschitz(),
        "modulus_finest": trace.modulus.finest(),
        "trace": trace,
    });
    let mut table = Table::new(trace.header());
    for row in trace.rows() {
        table.push(row);
    }
    out.tables.push(("trace".into(), table));
    out.json.push((
        "hypotheses".into(),
        serde_json::to_value(&trace.hypotheses).expect("reports serialize"),
    ));
    Ok(())
}

fn split_checks(trace: &SplitTrace, tol: f64) -> Vec<Check> {
    let mut checks = vec![Check::at_most(
        "exactness_residual",
        trace.max_residual(),
        tol,
    )];
    match (trace.mode, trace.epsilon) {
        (SplitMode::Approximate, Some(eps)) => {
            checks.push(Check::at_most(
                "membership_slack",
                trace.max_slack(),
                eps + 1e-6,
            ));
            let failed = trace.midpoints.iter().filter(|m| !m.passed).count();
            checks.push(Check::new(
                "midpoint_certificates",
                trace.midpoints_pass(),
                format!("{failed} of {} failed", trace.midpoints.len()),
            ));
            let l = trace.lipschitz();
            checks.push(Check::new(
                "lipschitz_finite",
                l.is_finite(),
                format!("{l:e}"),
            ));
        }
        _ => checks.push(Check::at_most("membership_slack", trace.max_slack(), tol)),
    }
    let failed: Vec<&str> = trace
        .hypotheses
        .checks
        .iter()
        .filter(|c| c.passed == Some(false))
        .map(|c| c.name.as_str())
        .collect();
    checks.push(Check::new(
        "hypotheses",
        failed.is_empty(),
        failed.join(", "),
    ));
    checks
}

fn modulus(
    f1: Option<&Path>,
    f2: Option<&Path>,
    family: Option<&str>,
    grid: usize,
    out: &mut Outcome,
) -> Result<()> {
    let (label, m1, m2) = match (f1, f2, family) {
        (Some(a), Some(b), None) => (
            "files".to_string(),
            map_from_json(&read_text(a)?)?,
            map_from_json(&read_text(b)?)?,
        ),
        (None, None, Some(name)) => demos::modulus_families(grid)?
            .into_iter()
            .find(|(n, _, _)| n == name)
            .ok_or_else(|| Error::Config(format!("unknown map family `{name}`")))?,
        _ => {
            return Err(Error::Config(
                "modulus needs --f1 and --f2, or --family".into(),
            ))
        }
    };
    let r = verify_intersection_modulus(&m1, &m2)?;
    out.report.checks.push(Check::new(
        "modulus_bound",
        r.violations.is_empty(),
        if r.applicable {
            format!(
                "{} violations over {} pairs",
                r.violations.len(),
                r.pairs_checked
            )
        } else {
            "alpha is infinite: hypothesis fails, bound not asserted".to_string()
        },
    ));
    out.tables.push(("modulus".into(), modulus_table(&r)));
    out.report.results = json!({
        "maps": label,
        "alpha": if r.alpha.is_finite() { json!(r.alpha) } else { json!("inf") },
        "applicable": r.applicable,
        "violation_count": r.violations.len(),
        "report": r,
    });
    Ok(())
}

/// One row per parameter distance where some modulus changes.
pub(crate) fn modulus_table(r: &ModulusReport) -> Table {
    let mut ts: Vec<f64> = r
        .omega_f1
        .breakpoints
        .iter()
        .chain(&r.omega_f2.breakpoints)
        .chain(r.omega_g.iter().flat_map(|g| &g.breakpoints))
        .map(|p| p.0)
        .collect();
    ts.sort_by(f64::total_cmp);
    ts.dedup_by(|b, a| *b - *a <= 1e-12 * (1.0 + a.abs()));
    let mut table = Table::new(
        ["t", "omega_f1", "omega_f2", "omega_g", "bound"]
            .map(String::from)
            .to_vec(),
    );
    for t in ts {
        let g = r.omega_g.as_ref().map_or(f64::NAN, |g| g.omega(t));
        table.push(vec![
            t,
            r.omega_f1.omega(t),
            r.omega_f2.omega(t),
            g,
            r.bound(t),
        ]);
    }
    table
}

fn example11(
    deltas: &[f64],
    curve_points: usize,
    cfg: &RunConfig,
    out: &mut Outcome,
) -> Result<()> {
    let m = cfg.arc_points;
    if curve_points < 2 {
        return Err(Error::Config("--curve-points must be at least 2".into()));
    }
    let rows = demos::example11_gaps(m, deltas)?;
    let mut arcs: Vec<usize> = [m / 4, m / 2, m]
        .into_iter()
        .filter(|k| *k >= 36 && k % 2 == 0)
        .collect();
    arcs.dedup();
    let table = demos::example11_table(&arcs, deltas)?;
    let jump = demos::extrapolated_jump(&rows);

    let finest = rows
        .iter()
        .min_by(|a, b| a.delta.total_cmp(&b.delta))
        .expect("deltas are nonempty");
    let checks = &mut out.report.checks;
    checks.push(Check::new(
        "gap_at_smallest_delta",
        finest.gap >= 0.9,
        format!("gap {} at delta {}", finest.gap, finest.delta),
    ));
    let monotone = deltas.iter().all(|d| {
        let gaps: Vec<f64> = table
            .iter()
            .filter(|r| r.delta == *d)
            .map(|r| r.gap)
            .collect();
        gaps.windows(2).all(|w| w[1] >= w[0] - 1e-9)
    });
    checks.push(Check::new(
        "gap_nondecreasing_under_refinement",
        monotone,
        format!("arc points {arcs:?}"),
    ));
    let worst = rows.iter().map(|r| (r.gap - 1.0).abs()).fold(0.0, f64::max);
    checks.push(Check::at_most("gap_near_one", worst, 0.05));
    let branch = rows
        .iter()
        .map(|r| (vector(&r.a_plus) - vector(&[r.delta.cos(), r.delta.sin(), 0.0])).norm())
        .fold(0.0, f64::max);
    checks.push(Check::at_most(
        "first_branch",
        branch,
        2.0 * PI / m as f64 + 1e-6,
    ));

    let ts: Vec<f64> = (0..curve_points)
        .map(|i| -PI / 4.0 + PI / 2.0 * i as f64 / (curve_points - 1) as f64)
        .collect();
    let mut curve = Table::new(["t", "a1", "a2", "a3"].map(String::from).to_vec());
    for (t, a) in demos::example11_curve(m, &ts)? {
        curve.push(vec![t, a[0], a[1], a[2]]);
    }
    out.tables.push(("curve".into(), curve));
    out.tables.push(("gaps".into(), gap_table(&table)));
    out.report.results = json!({
        "gaps": rows,
        "extrapolated_jump": jump,
        "refinement": table,
    });
    Ok(())
}

fn gap_table(rows: &[GapRow]) -> Table {
    let mut t = Table::new(["arc_points", "delta", "gap"].map(String::from).to_vec());
    for r in rows {
        t.push(vec![r.arc_points as f64, r.delta, r.gap]);
    }
    t
}
