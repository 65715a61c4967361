use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use octaboson::hallittlewood::{pieri_residual, with_neighbors, HlFamily, Route};
use octaboson::qboson::{
    eigen_residual, scattering_factors, scattering_matrix, ultralocality_report,
    verify_degeneration, Fock, Relation,
};
use octaboson::qkernels::{ParamSet, Profile};
use octaboson::report::OrthogonalityReport;
use octaboson::torus::{QuadratureSpec, TorusGrid};
use octaboson::{enumerate, Budget, Error, Result, VerificationReport};

use crate::args::{Suite, VerifyArgs};

/// Result of one suite: JSON body, flat CSV rows, and the verdict.
pub struct SuiteRun {
    pub pass: bool,
    pub body: Value,
    pub csv_header: &'static str,
    pub csv_rows: Vec<String>,
}

const REPORT_HEADER: &str = "relation,n,maxPart,mode,maxResidual,pass,cases";

fn report_row(r: &VerificationReport) -> String {
    let mode = match r.mode {
        octaboson::report::Mode::Exact => "exact",
        octaboson::report::Mode::Float => "float",
    };
    format!(
        "{},{},{},{mode},{},{},{}",
        r.relation, r.n, r.max_part, r.max_residual, r.pass, r.cases
    )
}

fn from_reports(suite: Suite, params: &ParamSet, seed: Option<u64>, reports: Vec<VerificationReport>) -> SuiteRun {
    let pass = reports.iter().all(|r| r.pass);
    let mut body = json!({
        "suite": suite_name(suite),
        "pass": pass,
        "params": params,
        "reports": reports,
    });
    if let Some(seed) = seed {
        body["seed"] = json!(seed);
    }
    SuiteRun {
        pass,
        csv_header: REPORT_HEADER,
        csv_rows: reports.iter().map(report_row).collect(),
        body,
    }
}

pub fn suite_name(suite: Suite) -> &'static str {
    match suite {
        Suite::Orthogonality => "orthogonality",
        Suite::Norms => "norms",
        Suite::Pieri => "pieri",
        Suite::Algebra => "algebra",
        Suite::Adjoint => "adjoint",
        Suite::Eigen => "eigen",
        Suite::Degeneration => "degeneration",
        Suite::Scattering => "scattering",
    }
}

/// Quadrature tolerance for a sector size.
fn quadrature_tolerance(n: usize) -> f64 {
    if n <= 2 {
        1e-8
    } else {
        1e-6
    }
}

fn spectral_points(rng: &mut ChaCha8Rng, count: usize, n: usize) -> Vec<Vec<f64>> {
    use std::f64::consts::PI;
    (0..count)
        .map(|_| (0..n).map(|_| rng.gen_range(-PI..PI)).collect())
        .collect()
}

pub fn run(args: &VerifyArgs, budget: &Budget) -> Result<SuiteRun> {
    let suite = args.suite;
    let (default_n, default_part) = match suite {
        Suite::Adjoint | Suite::Eigen => (2, 4),
        Suite::Scattering => (3, 0),
        _ => (2, 3),
    };
    let n = args.n.unwrap_or(default_n);
    let max_part = args.max_part.unwrap_or(default_part);
    let params = args.params.resolve(n + 1, max_part + 1)?;
    let max_index = args.max_index.unwrap_or(max_part + 1);
    let family = || HlFamily::with_route(params.clone(), Route::Explicit, *budget);

    match suite {
        Suite::Orthogonality | Suite::Norms => {
            budget.check_n(n)?;
            let m = args.m.unwrap_or_else(|| QuadratureSpec::default_for(n).points());
            let grid = TorusGrid::new(&params, &QuadratureSpec::new(n, m)?, budget)?;
            let tol = quadrature_tolerance(n);
            let report = OrthogonalityReport::build(&enumerate(n, max_part), &family(), &grid, tol)?;
            let keep = |lambda: &octaboson::Partition, mu: &octaboson::Partition| {
                suite == Suite::Orthogonality || lambda == mu
            };
            let pass = if suite == Suite::Orthogonality {
                report.pass
            } else {
                report.max_diagonal_error < tol
            };
            let rows = report
                .pairs
                .iter()
                .filter(|p| keep(&p.lambda, &p.mu))
                .map(|p| {
                    format!(
                        "{},{},{:e},{:e},{},{:e}",
                        join(p.lambda.parts()),
                        join(p.mu.parts()),
                        p.value.re,
                        p.value.im,
                        p.expected,
                        p.abs_err
                    )
                })
                .collect();
            let mut body = serde_json::to_value(&report).expect("report serializes");
            if suite == Suite::Norms {
                let diag: Vec<Value> = body["pairs"]
                    .as_array()
                    .into_iter()
                    .flatten()
                    .filter(|p| p["lambda"] == p["mu"])
                    .cloned()
                    .collect();
                body["pairs"] = Value::Array(diag);
            }
            body["suite"] = json!(suite_name(suite));
            body["pass"] = json!(pass);
            body["params"] = json!(params);
            Ok(SuiteRun {
                pass,
                body,
                csv_header: "lambda,mu,re,im,expected,absErr",
                csv_rows: rows,
            })
        }
        Suite::Pieri => {
            let lambdas = enumerate(n, max_part);
            let family = family();
            family.prefetch(&with_neighbors(&lambdas))?;
            let mut report = VerificationReport::exact("pieri", n, max_part);
            for l in &lambdas {
                let residual = pieri_residual(l, &family)?;
                let r = residual
                    .terms()
                    .map(|(_, c)| octaboson::rational::abs(c))
                    .max()
                    .unwrap_or_else(|| octaboson::rational::int(0));
                report.record_exact(&r, || format!("residual for {l} has {} terms", residual.len()));
            }
            Ok(from_reports(suite, &params, None, vec![report]))
        }
        Suite::Algebra => {
            let relations = Relation::parse_set(&args.relation)?;
            let fock = Fock::new(params.clone());
            let mut reports = relations
                .iter()
                .map(|&rel| fock.verify_relation_sweep(rel, n, max_part, max_index))
                .collect::<Result<Vec<_>>>()?;
            if relations.contains(&Relation::D1) {
                reports.push(if params.profile() == Profile::Four {
                    ultralocality_report(&params, n, max_part, max_index)?
                } else {
                    fock.verify_untwisted(n, max_part, max_index)?
                });
            }
            Ok(from_reports(suite, &params, None, reports))
        }
        Suite::Adjoint => {
            let fock = Fock::new(params.clone());
            let mut reports = Vec::new();
            for k in 0..=n {
                reports.push(fock.verify_adjoint(k, max_part, max_index.min(max_part))?);
                reports.push(fock.verify_symmetry(k, max_part)?);
            }
            Ok(from_reports(suite, &params, None, reports))
        }
        Suite::Eigen => {
            budget.check_n(n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let xis = spectral_points(&mut rng, 20, n);
            let report = eigen_residual(&xis, &enumerate(n, max_part), &Fock::new(params.clone()), &family())?;
            Ok(from_reports(suite, &params, Some(args.seed), vec![report]))
        }
        Suite::Degeneration => {
            let reduced = match params.profile() {
                Profile::Four => vec![params.reduce_to_three()?, params.reduce_to_two()?],
                Profile::Three => vec![params.reduce_to_two()?],
                Profile::Two => {
                    return Err(Error::Domain(
                        "degeneration starts from the four- or three-parameter profile".into(),
                    ))
                }
            };
            let reports = reduced
                .iter()
                .map(|p| verify_degeneration(p, n, max_part))
                .collect::<Result<Vec<_>>>()?;
            Ok(from_reports(suite, &params, None, reports))
        }
        Suite::Scattering => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let mut report = VerificationReport::float("scattering", n, 0, 1e-12);
            for _ in 0..100 {
                let x = rng.gen_range(-10.0..10.0);
                let (s, s0) = scattering_factors(x, &params);
                for (name, z) in [("s", s), ("s0", s0)] {
                    let r = (z.norm() - 1.0).abs();
                    report.record_float(r, || format!("|{name}({x})| - 1 = {r:e}"));
                }
                for k in 1..=n {
                    let xi: Vec<f64> = (0..k).map(|_| rng.gen_range(-10.0..10.0)).collect();
                    let r = (scattering_matrix(&xi, &params).norm() - 1.0).abs();
                    report.record_float(r, || format!("|S({xi:?})| - 1 = {r:e}"));
                }
            }
            Ok(from_reports(suite, &params, Some(args.seed), vec![report]))
        }
    }
}

pub fn join(parts: &[u32]) -> String {
    parts.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}
