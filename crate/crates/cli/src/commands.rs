use bethe_core::boundary::{random_fundamental_points, BOUNDARY_TOLERANCE};
use bethe_core::representations::{
    dimension_sum_check, orbit_representatives, stabilizer_order, MAX_SUM_RULE_RANK,
};
use bethe_core::scattering::{convergence_sweep, log_grid};
use bethe_core::*;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::CommonArgs;
use crate::config::{parse_grid, parse_parity, Failure, RunConfig};
use crate::report::{Report, Table};

/// Relative tolerance on the finite-difference energy.
pub const EIGEN_TOLERANCE: f64 = 1e-6;
pub const DUALITY_TOLERANCE: f64 = 1e-12;

/// Random-stream identifiers, so that adding a draw in one place does not
/// shift another.
const STREAM_INITIAL: u64 = 1;
const STREAM_PROBES: u64 = 2;
const STREAM_POINTS: u64 = 3;

fn num(x: f64) -> String {
    format!("{x}")
}

fn joined(xs: &[f64]) -> String {
    xs.iter().map(|x| num(*x)).collect::<Vec<_>>().join(";")
}

/// The serde name of a unit variant.
fn label<T: Serialize>(x: &T) -> String {
    match serde_json::to_value(x) {
        Ok(Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => String::new(),
    }
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Scalar sectors start from `A_I = 1`; the regular representation from a
/// seeded generic vector, so that no relation holds by accident.
fn coefficient_mode(cfg: &RunConfig) -> CoefficientMode {
    match cfg.sector {
        Some(sector) => CoefficientMode::scalar_default(sector),
        None => {
            let mut rng = cfg.rng(STREAM_INITIAL);
            let dim = bethe_core::weyl_group::group_order(cfg.n);
            let initial = (0..dim)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            CoefficientMode::Regular { initial }
        }
    }
}

pub fn consistency(cfg: &mut RunConfig) -> Result<Report, Failure> {
    let rep = cfg.representation()?;
    let report = consistency_report(&cfg.spec, &rep, cfg.samples, cfg.seed)?;
    let mut table = Table::new(&[
        "relation",
        "expectation",
        "outcome",
        "max_residual",
        "worst_u",
        "worst_v",
        "tolerance",
    ]);
    let mut summary = Vec::new();
    for s in &report.relations {
        table.push(vec![
            s.relation.name().to_string(),
            label(&s.expectation),
            label(&s.outcome),
            num(s.max_residual),
            num(s.worst_u),
            num(s.worst_v),
            num(s.tolerance),
        ]);
        summary.push(format!(
            "{:<28} {:<16} max residual {:.3e}",
            s.relation.name(),
            label(&s.outcome),
            s.max_residual
        ));
    }
    summary.push(format!(
        "{}: {} {} N={}, {} samples",
        verdict(report.passed),
        cfg.model,
        report.representation,
        cfg.n,
        cfg.samples
    ));
    Ok(Report {
        ok: report.passed,
        summary,
        result: to_json(&report),
        table,
    })
}

#[derive(Serialize)]
struct Entry {
    p: usize,
    word: String,
    k_p: Vec<f64>,
    a: Vec<Complex64>,
}

pub fn build(cfg: &mut RunConfig, args: &CommonArgs) -> Result<Report, Failure> {
    let k = cfg.resolve_momenta(args.k.as_deref())?;
    let mode = coefficient_mode(cfg);
    let co = match compute_coefficients(&k, &cfg.spec, &mode) {
        Ok(co) => co,
        Err(Error::Inconsistent {
            element,
            assigned,
            revisit,
            residual,
        }) => return Ok(inconsistent_build(element, assigned, revisit, residual)),
        Err(e) => return Err(e.into()),
    };
    let mut table = Table::new(&["p", "word", "k_p", "q", "re", "im"]);
    let mut entries = Vec::with_capacity(co.len());
    for (p, g) in co.group().elements().iter().enumerate() {
        let word = word_for(g).to_string();
        let k_p = g.apply_to_point(k.values())?;
        let a = co.coefficient(p).to_vec();
        for (q, z) in a.iter().enumerate() {
            let q = if co.sector().is_some() {
                String::new()
            } else {
                q.to_string()
            };
            table.push(vec![
                p.to_string(),
                word.clone(),
                joined(&k_p),
                q,
                num(z.re),
                num(z.im),
            ]);
        }
        entries.push(Entry { p, word, k_p, a });
    }
    let summary = vec![format!(
        "PASS: {} coefficients A_P ({} {}, dimension {}), E = {}",
        co.len(),
        cfg.model,
        cfg.representation,
        co.dim(),
        co.energy()
    )];
    Ok(Report {
        ok: true,
        summary,
        result: json!({
            "order": co.len(),
            "dimension": co.dim(),
            "energy": co.energy(),
            "entries": entries,
        }),
        table,
    })
}

fn inconsistent_build(element: usize, assigned: String, revisit: String, residual: f64) -> Report {
    let mut table = Table::new(&["element", "assigned_word", "revisit_word", "residual"]);
    table.push(vec![
        element.to_string(),
        assigned.clone(),
        revisit.clone(),
        num(residual),
    ]);
    let summary = vec![
        format!("FAIL: coefficients depend on the path to element #{element}"),
        format!("  word [{assigned}] and word [{revisit}] differ by {residual:.6e}"),
    ];
    Report {
        ok: false,
        summary,
        result: json!({
            "witness": {
                "element": element,
                "assigned_word": assigned,
                "revisit_word": revisit,
                "residual": residual,
            }
        }),
        table,
    }
}

pub fn verify_boundary(cfg: &mut RunConfig, args: &CommonArgs) -> Result<Report, Failure> {
    let k = cfg.resolve_momenta(args.k.as_deref())?;
    let co = compute_coefficients(&k, &cfg.spec, &coefficient_mode(cfg))?;
    let tol = cfg.tolerance_or(BOUNDARY_TOLERANCE);
    let n = cfg.n;
    let facets: Vec<Facet> = (1..n)
        .map(|i| Facet::Pair { i })
        .chain([Facet::Wall])
        .collect();
    let mut rng = cfg.rng(STREAM_PROBES);
    let mut table = Table::new(&["facet", "wedge", "point", "matching", "jump", "ok", "error"]);
    let mut rows = Vec::new();
    let (mut worst, mut failures) = (0.0f64, 0usize);
    for &facet in &facets {
        for _ in 0..cfg.probes {
            let facet_name = match facet {
                Facet::Pair { i } => format!("pair {i}"),
                Facet::Wall => "wall".to_string(),
            };
            let evaluated = BoundaryProbe::random(n, facet, &mut rng).and_then(|probe| {
                let r = match facet {
                    Facet::Pair { .. } => check_pair_boundary(&co, &probe),
                    Facet::Wall => check_wall_boundary(&co, &probe),
                }?;
                Ok((probe, r))
            });
            match evaluated {
                Ok((probe, r)) => {
                    let ok = r.max() <= tol;
                    worst = worst.max(r.max());
                    failures += usize::from(!ok);
                    table.push(vec![
                        facet_name,
                        probe.wedge.index().to_string(),
                        joined(&probe.point),
                        num(r.matching),
                        num(r.jump),
                        ok.to_string(),
                        String::new(),
                    ]);
                    rows.push(json!({ "probe": probe, "residuals": r, "ok": ok }));
                }
                Err(e) => {
                    failures += 1;
                    let msg = e.to_string();
                    table.push(vec![
                        facet_name,
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        "false".into(),
                        msg.clone(),
                    ]);
                    rows.push(json!({ "facet": facet, "error": msg, "ok": false }));
                }
            }
        }
    }
    let ok = failures == 0;
    let summary = vec![format!(
        "{}: {} probes on {} facet types, max residual {worst:.3e} (tolerance {tol:e}), {failures} failed",
        verdict(ok),
        rows.len(),
        facets.len()
    )];
    Ok(Report {
        ok,
        summary,
        result: json!({
            "tolerance": tol,
            "max_residual": worst,
            "failures": failures,
            "probes": rows,
        }),
        table,
    })
}

pub fn verify_eigen(cfg: &mut RunConfig, args: &CommonArgs) -> Result<Report, Failure> {
    let k = cfg.resolve_momenta(args.k.as_deref())?;
    let co = compute_coefficients(&k, &cfg.spec, &coefficient_mode(cfg))?;
    let tol = cfg.tolerance_or(EIGEN_TOLERANCE);
    let h = cfg.h;
    let points = random_fundamental_points(cfg.n, cfg.points, &mut cfg.rng(STREAM_POINTS));
    let mut table = Table::new(&[
        "point",
        "residual_h",
        "residual_half_h",
        "ratio",
        "energy_relative_error",
        "ok",
        "error",
    ]);
    let mut rows = Vec::new();
    let (mut worst, mut failures) = (0.0f64, 0usize);
    for x in &points {
        let pair = check_eigen(&co, x, h).and_then(|a| Ok((a, check_eigen(&co, x, h / 2.0)?)));
        match pair {
            Ok((full, half)) => {
                let ratio = full.residual / half.residual;
                let ok = full.energy_relative_error <= tol;
                worst = worst.max(full.energy_relative_error);
                failures += usize::from(!ok);
                table.push(vec![
                    joined(x),
                    num(full.residual),
                    num(half.residual),
                    num(ratio),
                    num(full.energy_relative_error),
                    ok.to_string(),
                    String::new(),
                ]);
                rows.push(json!({
                    "point": x,
                    "h": full,
                    "half_h": half,
                    "ratio": ratio,
                    "ok": ok,
                }));
            }
            Err(e) => {
                failures += 1;
                let msg = e.to_string();
                table.push(vec![
                    joined(x),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    "false".into(),
                    msg.clone(),
                ]);
                rows.push(json!({ "point": x, "error": msg, "ok": false }));
            }
        }
    }
    let ok = failures == 0;
    let summary = vec![format!(
        "{}: {} points, h = {h:e}, E = {}, max relative energy error {worst:.3e} (tolerance {tol:e})",
        verdict(ok),
        points.len(),
        co.energy()
    )];
    Ok(Report {
        ok,
        summary,
        result: json!({
            "energy": co.energy(),
            "tolerance": tol,
            "max_energy_relative_error": worst,
            "failures": failures,
            "points": rows,
        }),
        table,
    })
}

pub fn verify_duality(cfg: &mut RunConfig, args: &CommonArgs) -> Result<Report, Failure> {
    let k = cfg.resolve_momenta(args.k.as_deref())?;
    cfg.record("c1", args.c1);
    cfg.record("c2", args.c2);
    let tol = cfg.tolerance_or(DUALITY_TOLERANCE);
    let points = random_fundamental_points(cfg.n, cfg.points, &mut cfg.rng(STREAM_POINTS));
    let report = duality_compare(&k, args.c1, args.c2, &points)?;
    let ok = report.table_difference <= tol && report.max_psi_difference <= tol;
    let mut table = Table::new(&["quantity", "value", "tolerance"]);
    table.push(vec![
        "table_difference".into(),
        num(report.table_difference),
        num(tol),
    ]);
    table.push(vec![
        "max_psi_difference".into(),
        num(report.max_psi_difference),
        num(tol),
    ]);
    let summary = vec![format!(
        "{}: boson delta (c1={}, c2={}) vs fermion pdp (λ1={}, λ2={}): table {:.3e}, ψ {:.3e} over {} points",
        verdict(ok),
        args.c1,
        args.c2,
        1.0 / args.c1,
        1.0 / args.c2,
        report.table_difference,
        report.max_psi_difference,
        report.points
    )];
    Ok(Report {
        ok,
        summary,
        result: json!({ "tolerance": tol, "duality": report }),
        table,
    })
}

pub fn verify_halfline(cfg: &mut RunConfig, args: &CommonArgs) -> Result<Report, Failure> {
    if cfg.sector.is_none() {
        return Err(Failure::usage("verify halfline needs a scalar sector"));
    }
    let k = cfg.resolve_momenta(args.k.as_deref())?;
    let co = compute_coefficients(&k, &cfg.spec, &coefficient_mode(cfg))?;
    let tol = cfg.tolerance_or(BOUNDARY_TOLERANCE);
    let points = random_fundamental_points(cfg.n, cfg.points, &mut cfg.rng(STREAM_POINTS));
    let mut table = Table::new(&["point", "particle", "residual", "ok"]);
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    for x in &points {
        let residuals = check_halfline_reduction(&co, x)?;
        for (j, r) in residuals.iter().enumerate() {
            worst = worst.max(*r);
            table.push(vec![
                joined(x),
                (j + 1).to_string(),
                num(*r),
                (*r <= tol).to_string(),
            ]);
        }
        rows.push(json!({ "point": x, "residuals": residuals }));
    }
    let ok = worst <= tol;
    let summary = vec![format!(
        "{}: {} {} wall conditions at {} points, max residual {worst:.3e} (tolerance {tol:e})",
        verdict(ok),
        cfg.model,
        cfg.representation,
        points.len()
    )];
    Ok(Report {
        ok,
        summary,
        result: json!({ "tolerance": tol, "max_residual": worst, "points": rows }),
        table,
    })
}

pub fn scatter(cfg: &mut RunConfig, args: &CommonArgs) -> Result<Report, Failure> {
    let parity = parse_parity(&args.parity)?;
    let k: f64 = match &args.k {
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("--k expects one number, got {s:?}")))?,
        None => 1.0,
    };
    let coupling = match cfg.model {
        Model::Delta => args.c,
        Model::Pdp => args.lambda,
    };
    let (lo, hi, count) = parse_grid(&args.v0)?;
    cfg.record("parity", parity);
    cfg.record("k", k);
    cfg.record("coupling", coupling);
    cfg.record("v0", json!({ "lo": lo, "hi": hi, "count": count }));
    if let Some(g) = args.g_tilde_plus {
        cfg.record("g_tilde_plus", g);
    }
    if lo.is_nan() || lo <= k * k {
        return Err(Failure::usage(format!(
            "--v0 must start above k² = {}",
            k * k
        )));
    }
    let grid = log_grid(lo, hi, count)?;
    let sweep = convergence_sweep(cfg.model, parity, k, coupling, &grid, args.g_tilde_plus)?;
    let ok = sweep.is_monotone();
    let mut table = Table::new(&["v0", "b_re", "b_im", "deviation"]);
    for r in &sweep.rows {
        table.push(vec![num(r.v0), num(r.b.re), num(r.b.im), num(r.deviation)]);
    }
    let summary = vec![
        format!(
            "limit A = {:.15}{:+.15}i, last B = {:.15}{:+.15}i",
            sweep.limit.re,
            sweep.limit.im,
            sweep.rows.last().map_or(0.0, |r| r.b.re),
            sweep.rows.last().map_or(0.0, |r| r.b.im)
        ),
        format!(
            "{}: |B − A| decreasing = {}, fitted slope {:.4}",
            verdict(ok),
            ok,
            sweep.slope
        ),
    ];
    Ok(Report {
        ok,
        summary,
        result: to_json(&sweep),
        table,
    })
}

pub fn reps(cfg: &mut RunConfig) -> Result<Report, Failure> {
    let n = cfg.n;
    let check = dimension_sum_check(n)?;
    let orbits = orbit_representatives(n)
        .into_iter()
        .enumerate()
        .map(|(i, chi)| {
            Ok(json!({
                "orbit": i,
                "representative": chi.to_string(),
                "stabilizer_order": stabilizer_order(n, i)?,
            }))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut table = Table::new(&["orbit", "lambda", "mu", "dimension", "dimension_squared"]);
    for d in &check.irreps {
        table.push(vec![
            d.orbit.to_string(),
            d.lambda.to_string(),
            d.mu.to_string(),
            d.dimension.to_string(),
            (d.dimension * d.dimension).to_string(),
        ]);
    }
    let breakdown: Vec<String> = check.per_orbit.iter().map(u64::to_string).collect();
    let summary = vec![
        format!(
            "{} irreducible representations over {} orbits",
            check.irreps.len(),
            n + 1
        ),
        format!(
            "{}: Σ dim² = {} = {} = 2^{n}·{n}! = {}",
            verdict(check.passed),
            breakdown.join(" + "),
            check.sum_of_squares,
            check.group_order
        ),
    ];
    Ok(Report {
        ok: check.passed,
        summary,
        result: json!({ "orbits": orbits, "sum_rule": check }),
        table,
    })
}

pub const REPS_MAX_RANK: usize = MAX_SUM_RULE_RANK;
