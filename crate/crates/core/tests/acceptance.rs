//! Acceptance criteria, one PASS/FAIL line each. Every check is exact.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dirac_core::dirac::{
    complete_spinor, reduce, scalar_to_vector_map, vector_to_scalar_map, Component, Coupling,
    DiracProblem,
};
use dirac_core::kovacic::{solve, CandidateResult, Route, SolutionForm, Verdict};
use dirac_core::parser::{format, parse_polynomial};
use dirac_core::sweep::{run_sweep, SweepConfig, SweepReport};
use dirac_core::verify::{residual, verify_spinor};
use dirac_core::{GaussianRational, Polynomial, Rational, Surd};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    check(t < limit, || format!("took {:?}, limit {:?}", t, limit))?;
    Ok(t)
}

fn rat(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=6)).unwrap()
}

fn gauss(rng: &mut ChaCha8Rng) -> GaussianRational {
    GaussianRational::new(rat(rng), rat(rng))
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Polynomial {
    let deg = rng.gen_range(0..=max_deg);
    let mut c: Vec<GaussianRational> = (0..deg).map(|_| gauss(rng)).collect();
    let mut lead = gauss(rng);
    while lead.is_zero() {
        lead = gauss(rng);
    }
    c.push(lead);
    Polynomial::new(c)
}

fn q(s: &str) -> GaussianRational {
    GaussianRational::real(s.parse().unwrap())
}

// Criteria 1 and 6 share one sweep.
fn theorem_sweep() -> (SweepReport, Duration) {
    let start = Instant::now();
    let report = run_sweep(&SweepConfig::default(), 4).expect("nonempty grid");
    (report, start.elapsed())
}

fn criterion_1(report: &SweepReport, elapsed: Duration) -> Outcome {
    check(report.cells.len() == 4 * 4 * 3 * 3 * 2 * 2, || {
        format!("grid has {} cells", report.cells.len())
    })?;
    for (k, cell) in report.cells.iter().enumerate() {
        let p = &cell.problem;
        check(
            p.potential.degree().unwrap() >= 2
                && p.potential.coeffs().iter().filter(|c| !c.is_zero()).count() == 2,
            || format!("cell {} lacks a lower-order term: {}", k, p.potential),
        )?;
        // solvable iff E = 0 (scalar) or m = 0 (vector)
        let expected = match p.coupling {
            Coupling::Scalar => p.energy.is_zero(),
            Coupling::Vector => p.mass.is_zero(),
        };
        check(cell.prediction.solvable == Some(expected), || {
            format!(
                "cell {}: classification says {:?} for {}",
                k, cell.prediction.solvable, p
            )
        })?;
        check(cell.solvable == Ok(expected), || {
            format!("cell {}: solver says {:?} for {}", k, cell.solvable, p)
        })?;
    }
    check(report.disagreements.is_empty(), || {
        format!("{} disagreements", report.disagreements.len())
    })?;
    check(elapsed < Duration::from_secs(60), || {
        format!("took {:?}", elapsed)
    })?;
    Ok(format!(
        "{} cells, 0 disagreements, {:?}",
        report.cells.len(),
        elapsed
    ))
}

/// Monic H_n from H_{n+1} = 2x H_n − 2n H_{n−1}, as plain coefficient
/// vectors.
fn monic_hermite(n: usize) -> Vec<Rational> {
    let mut prev: Vec<Rational> = vec![Rational::one()];
    if n == 0 {
        return prev;
    }
    let mut cur: Vec<Rational> = vec![Rational::zero(), Rational::from(2)];
    for j in 1..n {
        let mut next = vec![Rational::zero(); j + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] = &next[i + 1] + &(c * &Rational::from(2));
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] = &next[i] - &(c * &Rational::from(2 * j as i64));
        }
        prev = std::mem::replace(&mut cur, next);
    }
    let lead = cur[n].clone();
    cur.iter().map(|c| c.checked_div(&lead).unwrap()).collect()
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    for k in 1..=20i64 {
        let p = DiracProblem::scalar(
            Polynomial::x(),
            GaussianRational::zero(),
            Surd::sqrt_of(GaussianRational::from_int(2 * k)),
        );
        let r = reduce(&p).map_err(|e| e.to_string())?.r;
        let v = solve(&r).map_err(|e| e.to_string())?;
        let (poly, omega) = v
            .solutions()
            .iter()
            .find_map(|s| match s {
                SolutionForm::PolyExp { p, omega } => Some((p.clone(), omega.clone())),
                _ => None,
            })
            .ok_or_else(|| format!("k = {}: no polynomial solution", k))?;
        check(
            poly.degree() == Some(k as usize - 1) && poly.is_monic(),
            || format!("k = {}: P = {}", k, poly),
        )?;
        let sol = SolutionForm::PolyExp {
            p: poly.clone(),
            omega,
        };
        check(
            residual(&r, &sol).map_err(|e| e.to_string())?.is_zero(),
            || format!("k = {}: nonzero residual", k),
        )?;
        let oracle = monic_hermite(k as usize - 1);
        let got: Vec<GaussianRational> = poly.coeffs().to_vec();
        check(
            got.len() == oracle.len()
                && got.iter().zip(&oracle).all(|(a, b)| a.as_real() == Some(b)),
            || format!("k = {}: P = {} differs from the Hermite oracle", k, poly),
        )?;
    }
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!("k = 1..20 match monic H_(k-1), {:?}", t))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    for qs in ["1/2", "3/2", "7/3"] {
        let e2 = &q(qs) + &q(qs);
        let p = DiracProblem::scalar(Polynomial::x(), GaussianRational::zero(), Surd::sqrt_of(e2));
        let v = solve(&reduce(&p).map_err(|e| e.to_string())?.r).map_err(|e| e.to_string())?;
        let Verdict::NotSolvable { certificate } = v else {
            return Err(format!("q = {}: solvable", qs));
        };
        check(certificate.candidates.len() == 2, || {
            format!("q = {}: {} candidates", qs, certificate.candidates.len())
        })?;
        for c in &certificate.candidates {
            let integral = c.degree.as_real().is_some_and(|d| d.is_integer());
            check(
                !integral && c.result == CandidateResult::DegreeNotNonnegativeInteger,
                || format!("q = {}: candidate {}", qs, c),
            )?;
        }
    }
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!(
        "q in {{1/2, 3/2, 7/3}} not solvable, candidate degrees non-integer, {:?}",
        t
    ))
}

fn poly_exp_of(sol: &SolutionForm) -> Option<(Polynomial, Polynomial)> {
    match sol {
        SolutionForm::AffineBasis => Some((Polynomial::one(), Polynomial::zero())),
        other => other.as_poly_exp(),
    }
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let i = GaussianRational::i();
    for n in 0..200 {
        let v = random_poly(&mut rng, 8);
        let (problem, expected) = if n % 2 == 0 {
            let m = gauss(&mut rng);
            let u = &v + &Polynomial::constant(m.clone());
            (DiracProblem::scalar(v.clone(), m, Surd::zero()), u)
        } else {
            let e = gauss(&mut rng);
            let u = (&v + &Polynomial::constant(e.clone())).scale(&i);
            (DiracProblem::vector(v.clone(), Surd::zero(), e), u)
        };
        let verdict =
            solve(&reduce(&problem).map_err(|e| e.to_string())?.r).map_err(|e| e.to_string())?;
        let sol = verdict
            .solutions()
            .iter()
            .find(|s| poly_exp_of(s) == Some((Polynomial::one(), expected.clone())))
            .ok_or_else(|| {
                format!(
                    "instance {}: exp(int {}) not emitted for {}",
                    n, expected, problem
                )
            })?;
        let known = SolutionForm::PolyExp {
            p: Polynomial::one(),
            omega: expected.clone(),
        };
        check(poly_exp_of(sol) == known.as_poly_exp(), || {
            "form mismatch".into()
        })?;
        let spinor =
            complete_spinor(&problem, &known).map_err(|e| format!("instance {}: {}", n, e))?;
        check(
            spinor.psi2.form.as_poly_exp() == Some((Polynomial::one(), -&expected)),
            || {
                format!(
                    "instance {}: psi2 = {} is not the reciprocal",
                    n, spinor.psi2
                )
            },
        )?;
        let ok = verify_spinor(&problem, &spinor.psi1, &spinor.psi2)
            .map_err(|e| e.to_string())?
            .pass();
        check(ok, || {
            format!(
                "instance {}: first-order residual nonzero for {}",
                n, problem
            )
        })?;
    }
    let t = within(start, Duration::from_secs(30))?;
    Ok(format!(
        "200 random potentials, psi1 exact and spinor verified, {:?}",
        t
    ))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let i = GaussianRational::i();
    for n in 0..200 {
        let v = random_poly(&mut rng, 8);
        let (m, e) = (gauss(&mut rng), gauss(&mut rng));
        for component in [Component::First, Component::Second] {
            let scalar = DiracProblem::scalar(v.clone(), m.clone(), Surd::from(e.clone()))
                .with_component(component);
            // V → −iV, E slot ← −im, m slot ← iE
            let vector = DiracProblem::vector(v.scale(&-&i), Surd::from(&e * &i), &m * &-&i)
                .with_component(component);
            check(
                scalar_to_vector_map(&scalar).as_ref() == Ok(&vector),
                || format!("instance {}: map differs", n),
            )?;
            check(
                vector_to_scalar_map(&vector).as_ref() == Ok(&scalar),
                || format!("instance {}: inverse differs", n),
            )?;
            let rs = reduce(&scalar).map_err(|e| e.to_string())?.r;
            let rv = reduce(&vector).map_err(|e| e.to_string())?.r;
            // independent expansion of ±U' + U² − E²
            let u = &v + &Polynomial::constant(m.clone());
            let sign =
                GaussianRational::from_int(if component == Component::First { 1 } else { -1 });
            let by_hand =
                &(&u.derivative().scale(&sign) + &(&u * &u)) - &Polynomial::constant(&e * &e);
            check(rs == by_hand && rv == rs, || {
                format!("instance {}: reductions differ", n)
            })?;
        }
    }
    Ok("200 instances x 2 components, vector reduction equals scalar reduction".into())
}

fn criterion_6(report: &SweepReport) -> Outcome {
    check(report.component_mismatches.is_empty(), || {
        format!("{} mismatches", report.component_mismatches.len())
    })?;
    let mut pairs = 0;
    for pair in report.cells.chunks(2) {
        let [a, b] = pair else {
            return Err("odd cell count".into());
        };
        check(
            a.problem.clone().with_component(Component::Second) == b.problem,
            || "grid order".into(),
        )?;
        check(a.solvable.is_ok() && a.solvable == b.solvable, || {
            format!("components disagree for {}", a.problem)
        })?;
        pairs += 1;
    }
    Ok(format!("{} cell pairs, component verdicts agree", pairs))
}

fn criterion_7() -> Outcome {
    for (text, order) in [("x", -1), ("x^3 + 1", -3)] {
        let r = parse_polynomial(text).unwrap();
        let v = solve(&r).map_err(|e| e.to_string())?;
        let cert = v.certificate();
        let ex = cert.exclusion.as_ref().ok_or("missing exclusion")?;
        check(!v.is_solvable() && cert.route == Route::OddDegree, || {
            format!("r = {}: {:?}", text, cert.route)
        })?;
        check(
            ex.order_at_infinity == order
                && !ex.case1_possible
                && ex.case2_excluded()
                && ex.case3_excluded(),
            || format!("r = {}: exclusion {}", text, ex),
        )?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut samples: Vec<GaussianRational> = (0..50).map(|_| gauss(&mut rng)).collect();
    samples.extend([2, 3, -5, 4, -9, 0].map(GaussianRational::from_int));
    let mut non_square = 0;
    for c in &samples {
        let r = Polynomial::constant(c.clone());
        let v = solve(&r).map_err(|e| e.to_string())?;
        check(v.is_solvable(), || format!("r = {} not solvable", c))?;
        for sol in v.solutions() {
            check(
                residual(&r, sol).map_err(|e| e.to_string())?.is_zero(),
                || format!("r = {}: residual", c),
            )?;
        }
        if c.try_sqrt().is_none() {
            non_square += 1;
            check(
                matches!(v.solutions()[0], SolutionForm::ExpSqrtConst { .. }),
                || "form".into(),
            )?;
        }
    }
    check(non_square > 0, || "sample has no non-squares".into())?;
    Ok(format!(
        "Airy and x^3 + 1 excluded at odd order; {} constants solvable ({} non-squares)",
        samples.len(),
        non_square
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 0..1000 {
        let p = random_poly(&mut rng, 10);
        let text = format(&p);
        let back =
            parse_polynomial(&text).map_err(|e| format!("round trip {}: `{}`: {}", n, text, e))?;
        check(back == p, || {
            format!("round trip {}: `{}` reparsed as `{}`", n, text, back)
        })?;
    }
    let alphabet = b"x i 0123456789+-*/^()., \t\nexpabc$";
    let mut parsed = 0;
    for n in 0..10_000 {
        let len = rng.gen_range(0..24);
        let bytes: Vec<u8> = (0..len)
            .map(|_| {
                if rng.gen_bool(0.8) {
                    alphabet[rng.gen_range(0..alphabet.len())]
                } else {
                    rng.gen()
                }
            })
            .collect();
        let text = String::from_utf8_lossy(&bytes).into_owned();
        let result = panic::catch_unwind(|| parse_polynomial(&text))
            .map_err(|_| format!("fuzz {}: panic on {:?}", n, text))?;
        match result {
            Ok(p) => {
                parsed += 1;
                let again = parse_polynomial(&format(&p))
                    .map_err(|e| format!("fuzz {}: {:?} reformat fails: {}", n, text, e))?;
                check(again == p, || {
                    format!("fuzz {}: {:?} changes on reformat", n, text)
                })?;
            }
            Err(e) => {
                let pos = e.position();
                check(
                    pos.offset <= text.len() && pos.line >= 1 && pos.column >= 1,
                    || format!("fuzz {}: bad position {:?} for {:?}", n, pos, text),
                )?;
            }
        }
    }
    Ok(format!(
        "1000 round trips; 10000 fuzz inputs, {} parsed, rest positioned errors",
        parsed
    ))
}

fn run(name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {}", msg))
    });
    match &result {
        Ok(detail) => println!("PASS  {}: {}", name, detail),
        Err(why) => println!("FAIL  {}: {}", name, why),
    }
    result.is_ok()
}

fn main() -> ExitCode {
    panic::set_hook(Box::new(|_| {}));
    let (report, elapsed) = theorem_sweep();
    let results = [
        run("1 theorem sweep", || criterion_1(&report, elapsed)),
        run("2 oscillator family", criterion_2),
        run("3 quantization sharpness", criterion_3),
        run("4 closed-form special solutions", criterion_4),
        run("5 correspondence identity", criterion_5),
        run("6 component equivalence", || criterion_6(&report)),
        run("7 case exclusion", criterion_7),
        run("8 parser robustness", criterion_8),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{}/{} criteria passed", passed, results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
