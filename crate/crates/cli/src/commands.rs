use serde_json::{json, Map, Value};

use dirac_core::dirac::{
    complete_spinor, reduce, vector_to_scalar_map, Coupling, DiracError, DiracProblem,
    SpinorComponent,
};
use dirac_core::kovacic::{self, classify_by_theorem, SolutionForm, Verdict};
use dirac_core::parser::parse_solution;
use dirac_core::sweep::{run_sweep, SweepConfig, SweepError};
use dirac_core::verify::{eval_poly_exp, residual_poly_exp, verify_spinor, DEFAULT_DIGIT_CAP};
use dirac_core::{GaussianRational, Polynomial, Surd};

use crate::input::{self, CliError};
use crate::record::{self, Outcome, Status};
use crate::{HermiteArgs, ProblemArgs, SweepArgs};

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

fn reduce_input(problem: &DiracProblem) -> Result<dirac_core::ReducedOde, CliError> {
    reduce(problem).map_err(|e| CliError::Input(e.to_string()))
}

fn obj(pairs: Vec<(&str, Value)>) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

pub fn solve(args: &ProblemArgs) -> Result<Outcome, CliError> {
    let problem = input::problem(args)?;
    let red = reduce_input(&problem)?;
    let prediction = classify_by_theorem(&problem);
    let verdict = kovacic::solve(&red.r).map_err(internal)?;

    let mut text = vec![
        format!("problem: {}", problem),
        format!("reduced: f'' = ({}) f", red.r),
    ];
    let mut certs = obj(vec![
        ("reduction", record::reduction(&red)),
        ("kovacic", record::certificate(verdict.certificate())),
        ("theorem", record::theorem(&prediction)),
    ]);
    let mut solutions = Vec::new();
    let mut payload = Map::new();

    if let Verdict::Solvable {
        solutions: forms,
        residuals,
        ..
    } = &verdict
    {
        text.push("verdict: solvable".into());
        let known = match &forms[0] {
            SolutionForm::AffineBasis => SolutionForm::PolyExp {
                p: Polynomial::one(),
                omega: Polynomial::zero(),
            },
            other => other.clone(),
        };
        match complete_spinor(&problem, &known) {
            Ok(spinor) => {
                let check =
                    verify_spinor(&problem, &spinor.psi1, &spinor.psi2).map_err(internal)?;
                if !check.pass() {
                    return Err(internal(format!(
                        "completed spinor fails the first-order system: {:?}",
                        check
                    )));
                }
                text.push(format!("psi1 = {}", spinor.psi1));
                text.push(format!("psi2 = {}", spinor.psi2));
                text.push("first-order residuals: 0, 0".into());
                solutions = record::spinor_entries(&spinor);
                certs.insert("spinor_check".into(), record::spinor_check(&check));
                payload.insert("decoupled".into(), json!(spinor.decoupled));
            }
            Err(DiracError::UnsupportedForm(reason)) => {
                let k = problem.component.index();
                let own: Vec<&SolutionForm> = forms
                    .iter()
                    .filter(|f| !matches!(f, SolutionForm::SecondByQuadrature { .. }))
                    .collect();
                let listed: Vec<String> = own.iter().map(|f| f.to_string()).collect();
                text.push(format!("psi{} = {}", k, listed.join(" or ")));
                for form in own {
                    solutions.push(record::solution_entry(
                        k,
                        &SpinorComponent::unit(form.clone()),
                    ));
                }
                let note = format!(
                    "partner component not completed: {} needs a root outside Q(i)",
                    reason
                );
                text.push(note.clone());
                payload.insert("note".into(), json!(note));
            }
            Err(e) => return Err(internal(e)),
        }
        if let Some(q) = forms
            .iter()
            .find(|f| matches!(f, SolutionForm::SecondByQuadrature { .. }))
        {
            text.push(format!("second solution: {}", q));
            payload.insert("second_solution".into(), json!(q.to_string()));
        }
        let res: Vec<String> = residuals.iter().map(|r| r.to_string()).collect();
        text.push(format!("residuals: {}", res.join(", ")));
        payload.insert("residuals".into(), json!(res));
    } else {
        text.push("verdict: not solvable".into());
    }
    text.push(format!("theorem: {}", prediction));
    text.push("certificate:".into());
    text.extend(record::certificate_text(verdict.certificate()));

    let agrees = prediction.solvable.map(|p| p == verdict.is_solvable());
    payload.insert("verdict".into(), json!(verdict_name(verdict.is_solvable())));
    payload.insert("solutions".into(), Value::Array(solutions));
    payload.insert("certificates".into(), Value::Object(certs));
    payload.insert("theorem_agrees".into(), json!(agrees));
    Ok(Outcome {
        command: record::problem_echo("solve", &problem),
        payload,
        text,
        status: Status::from_bool(verdict.is_solvable()),
    })
}

fn verdict_name(solvable: bool) -> &'static str {
    if solvable {
        "solvable"
    } else {
        "not_solvable"
    }
}

pub fn classify(args: &ProblemArgs) -> Result<Outcome, CliError> {
    let problem = input::problem(args)?;
    let t = classify_by_theorem(&problem);
    let verdict = match t.solvable {
        Some(s) => verdict_name(s),
        None => "unclassified",
    };
    let mut text = vec![
        format!("problem: {}", problem),
        format!("verdict: {}", verdict.replace('_', " ")),
        format!("reason: {}", t),
    ];
    let mut payload = obj(vec![
        ("verdict", json!(verdict)),
        ("reason", json!(t.to_string())),
        ("degree", json!(t.degree)),
    ]);
    if problem.coupling == Coupling::Vector {
        let s = vector_to_scalar_map(&problem).map_err(internal)?;
        text.push(format!("scalar equivalent: {}", s));
        payload.insert(
            "scalar_equivalent".into(),
            record::problem_echo("solve", &s),
        );
    }
    Ok(Outcome {
        command: record::problem_echo("classify", &problem),
        payload,
        text,
        status: Status::from_bool(t.solvable == Some(true)),
    })
}

pub fn sweep(args: &SweepArgs) -> Result<Outcome, CliError> {
    let config = SweepConfig {
        degrees: input::degrees(&args.degrees)?,
        leading: input::scalars("coeff-set", &args.coeff_set)?,
        masses: input::scalars("masses", &args.masses)?,
        energies: input::scalars("energies", &args.energies)?,
        couplings: input::couplings(&args.couplings)?,
        components: input::components(&args.components)?,
        lower_term_seed: (!args.no_lower_term).then_some(args.seed),
    };
    if config.leading.iter().any(GaussianRational::is_zero) {
        return Err(CliError::Input(
            "--coeff-set: leading coefficients must be nonzero".into(),
        ));
    }
    let jobs = args
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let report = run_sweep(&config, jobs).map_err(|e| match e {
        SweepError::EmptyGrid => CliError::Input(e.to_string()),
        other => internal(other),
    })?;

    let cells: Vec<Value> = report
        .cells
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let solver = match &c.solvable {
                Ok(s) => json!(verdict_name(*s)),
                Err(e) => json!(format!("error: {}", e)),
            };
            json!({
                "index": k,
                "coupling": c.problem.coupling.to_string(),
                "component": c.problem.component.index(),
                "V": c.problem.potential.to_string(),
                "m": c.problem.mass.to_string(),
                "E": c.problem.energy.to_string(),
                "solver": solver,
                "theorem": c.prediction.solvable,
                "reason": c.prediction.to_string(),
                "agrees": c.agrees(),
            })
        })
        .collect();
    let total = report.cells.len();
    let solvable = report.solvable_count();
    let summary = json!({
        "cells": total,
        "solvable": solvable,
        "not_solvable": total - solvable,
        "unclassified": report.unclassified_count(),
        "disagreements": report.disagreements.len(),
        "component_mismatches": report.component_mismatches.len(),
    });

    let mut text = vec![
        format!("cells: {}", total),
        format!("solvable: {}", solvable),
        format!("not solvable: {}", total - solvable),
        format!(
            "outside the classification: {}",
            report.unclassified_count()
        ),
        format!(
            "disagreements with the classification: {}",
            report.disagreements.len()
        ),
        format!(
            "component mismatches: {}",
            report.component_mismatches.len()
        ),
    ];
    for &k in &report.disagreements {
        let c = &report.cells[k];
        text.push(format!(
            "  disagreement #{}: {} ({}), solver {:?}",
            k, c.problem, c.prediction, c.solvable
        ));
    }
    for &(a, b) in &report.component_mismatches {
        text.push(format!("  component mismatch: #{} vs #{}", a, b));
    }

    let ok = report.disagreements.is_empty() && report.component_mismatches.is_empty();
    let command = json!({
        "name": "sweep",
        "degrees": format!("{}..{}", config.degrees.start(), config.degrees.end()),
        "coeff_set": config.leading.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "masses": config.masses.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "energies": config.energies.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "couplings": config.couplings.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "components": config.components.iter().map(|c| c.index()).collect::<Vec<_>>(),
        "lower_term_seed": config.lower_term_seed,
    });
    Ok(Outcome {
        command,
        payload: obj(vec![
            ("verdict", json!(if ok { "agree" } else { "disagree" })),
            ("summary", summary),
            ("cells", Value::Array(cells)),
        ]),
        text,
        status: Status::from_bool(ok),
    })
}

pub fn hermite(args: &HermiteArgs) -> Result<Outcome, CliError> {
    let lambda = input::scalar("lambda", &args.lambda)?;
    if lambda.is_zero() {
        return Err(CliError::Input("--lambda must be nonzero".into()));
    }
    let mass = input::scalar("mass", &args.mass)?;
    let potential = Polynomial::monomial(lambda.clone(), 1);
    let mut rows = Vec::new();
    let mut text = vec![format!("{:>3}  {:>8}  {:>5}  P", "k", "E^2", "deg P")];
    let mut all_ok = true;
    for k in 1..=args.kmax {
        let e2 = lambda.scale(&dirac_core::Rational::from_integer(2 * k));
        let problem =
            DiracProblem::scalar(potential.clone(), mass.clone(), Surd::sqrt_of(e2.clone()));
        let red = reduce_input(&problem)?;
        let verdict = kovacic::solve(&red.r).map_err(internal)?;
        let found = verdict.solutions().iter().find_map(|s| match s {
            SolutionForm::PolyExp { p, omega } => Some((p.clone(), omega.clone())),
            _ => None,
        });
        let (row, line) = match found {
            Some((p, omega)) => {
                let form = SolutionForm::PolyExp {
                    p: p.clone(),
                    omega,
                };
                let spinor = complete_spinor(&problem, &form).map_err(internal)?;
                let verified = verify_spinor(&problem, &spinor.psi1, &spinor.psi2)
                    .map_err(internal)?
                    .pass();
                all_ok &= verified;
                let deg = p.degree().unwrap_or(0);
                (
                    json!({"k": k, "E2": e2.to_string(), "degree": deg, "P": p.to_string(), "verified": verified}),
                    format!("{:>3}  {:>8}  {:>5}  {}", k, e2.to_string(), deg, p),
                )
            }
            None => {
                all_ok = false;
                (
                    json!({"k": k, "E2": e2.to_string(), "degree": null, "P": null, "verified": false}),
                    format!("{:>3}  {:>8}  {:>5}  not solvable", k, e2.to_string(), "-"),
                )
            }
        };
        rows.push(row);
        text.push(line);
    }
    Ok(Outcome {
        command: json!({
            "name": "hermite",
            "lambda": lambda.to_string(),
            "mass": mass.to_string(),
            "kmax": args.kmax,
        }),
        payload: obj(vec![
            (
                "verdict",
                json!(if all_ok { "solvable" } else { "not_solvable" }),
            ),
            ("rows", Value::Array(rows)),
        ]),
        text,
        status: Status::from_bool(all_ok),
    })
}

fn solution_input(text: &str) -> Result<(Polynomial, Polynomial), CliError> {
    parse_solution(text).map_err(|e| {
        CliError::Input(format!(
            "--solution: {}\n  {}\n  {}^",
            e,
            text,
            " ".repeat(e.position().column - 1)
        ))
    })
}

pub fn verify(solution: &str, args: &ProblemArgs) -> Result<Outcome, CliError> {
    let (p, w) = solution_input(solution)?;
    if p.is_zero() {
        return Err(CliError::Input(
            "--solution: the zero function is not a solution".into(),
        ));
    }
    let problem = input::problem(args)?;
    let red = reduce_input(&problem)?;
    let omega = w.derivative();
    let residual = residual_poly_exp(&red.r, &p, &omega);
    let pass = residual.is_zero();
    let mut text = vec![
        format!("problem: {}", problem),
        format!("reduced: f'' = ({}) f", red.r),
        format!("candidate: psi{} = {}", problem.component.index(), solution),
        format!("residual: {}", residual),
        format!("verdict: {}", if pass { "pass" } else { "fail" }),
    ];
    let mut payload = obj(vec![
        ("verdict", json!(if pass { "pass" } else { "fail" })),
        ("residual", json!(residual.to_string())),
        ("P", json!(p.to_string())),
        ("W", json!(w.to_string())),
    ]);
    if pass {
        let form = SolutionForm::PolyExp { p, omega };
        match complete_spinor(&problem, &form) {
            Ok(spinor) => {
                let check =
                    verify_spinor(&problem, &spinor.psi1, &spinor.psi2).map_err(internal)?;
                text.push(format!("psi1 = {}", spinor.psi1));
                text.push(format!("psi2 = {}", spinor.psi2));
                text.push(format!(
                    "first-order system: {}",
                    if check.pass() { "pass" } else { "fail" }
                ));
                payload.insert(
                    "solutions".into(),
                    Value::Array(record::spinor_entries(&spinor)),
                );
                payload.insert("spinor_check".into(), record::spinor_check(&check));
            }
            Err(e) => {
                text.push(format!("spinor not completed: {}", e));
                payload.insert("note".into(), json!(e.to_string()));
            }
        }
    }
    let mut command = record::problem_echo("verify", &problem);
    command["solution"] = json!(solution);
    Ok(Outcome {
        command,
        payload,
        text,
        status: Status::from_bool(pass),
    })
}

pub fn eval(solution: &str, at: &str, digits: usize) -> Result<Outcome, CliError> {
    let (p, w) = solution_input(solution)?;
    let x0 = input::rational("at", at)?;
    if digits == 0 || digits > DEFAULT_DIGIT_CAP {
        return Err(CliError::Input(format!(
            "--digits must be between 1 and {}",
            DEFAULT_DIGIT_CAP
        )));
    }
    let v = eval_poly_exp(&p, &w, &x0, digits).map_err(internal)?;
    let value = json!({
        "re": v.re,
        "im": v.im.clone().unwrap_or_else(|| "0".into()),
        "im_exactly_zero": v.im.is_none(),
    });
    Ok(Outcome {
        command: json!({
            "name": "eval",
            "solution": solution,
            "at": x0.to_string(),
            "digits": digits,
        }),
        payload: obj(vec![("value", value), ("text", json!(v.to_string()))]),
        text: vec![v.to_string()],
        status: Status::Positive,
    })
}
