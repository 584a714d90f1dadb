use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use dirac_core::dirac::{reduce, DiracProblem};
use dirac_core::kovacic::{solve, SolutionForm};
use dirac_core::parser::parse_polynomial;
use dirac_core::sweep::{run_sweep, SweepConfig};
use dirac_core::verify::eval_solution;
use dirac_core::{GaussianRational, Polynomial, Rational, Surd};

fn oscillator_r(k: i64) -> Polynomial {
    let p = DiracProblem::scalar(
        Polynomial::x(),
        GaussianRational::zero(),
        Surd::sqrt_of(GaussianRational::from_int(2 * k)),
    );
    reduce(&p).unwrap().r
}

fn bench_oscillator(c: &mut Criterion) {
    let mut group = c.benchmark_group("oscillator");
    for k in [2, 10, 30] {
        let r = oscillator_r(k);
        group.bench_with_input(BenchmarkId::from_parameter(k), &r, |b, r| {
            b.iter(|| solve(black_box(r)).unwrap())
        });
    }
    group.finish();
}

fn bench_high_degree(c: &mut Criterion) {
    let v = parse_polynomial("3*x^8 - x^5 + 1/2*x^2 - 7").unwrap();
    let zero = DiracProblem::scalar(v.clone(), GaussianRational::one(), Surd::zero());
    let one = DiracProblem::scalar(
        v,
        GaussianRational::one(),
        Surd::from(GaussianRational::one()),
    );
    let r0 = reduce(&zero).unwrap().r;
    let r1 = reduce(&one).unwrap().r;
    c.bench_function("degree 8, E = 0", |b| {
        b.iter(|| solve(black_box(&r0)).unwrap())
    });
    c.bench_function("degree 8, E = 1", |b| {
        b.iter(|| solve(black_box(&r1)).unwrap())
    });
}

fn bench_sweep(c: &mut Criterion) {
    let config = SweepConfig::default();
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for jobs in [1, 4] {
        group.bench_with_input(BenchmarkId::from_parameter(jobs), &jobs, |b, &jobs| {
            b.iter(|| run_sweep(black_box(&config), jobs).unwrap())
        });
    }
    group.finish();
}

fn bench_eval(c: &mut Criterion) {
    let sol = SolutionForm::PolyExp {
        p: parse_polynomial("x^2 - 1/2").unwrap(),
        omega: parse_polynomial("1 + x^2").unwrap(),
    };
    let x0: Rational = "3/2".parse().unwrap();
    let mut group = c.benchmark_group("eval");
    for digits in [10, 100, 1000] {
        group.bench_with_input(BenchmarkId::from_parameter(digits), &digits, |b, &d| {
            b.iter(|| eval_solution(black_box(&sol), &x0, d).unwrap())
        });
    }
    group.finish();
}

fn bench_parse(c: &mut Criterion) {
    let text = "x^12 - 3/7*x^9 + (2-i)*x^5 - i*x^3 + 11/13*x - 5";
    c.bench_function("parse", |b| {
        b.iter(|| parse_polynomial(black_box(text)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_oscillator,
    bench_high_degree,
    bench_sweep,
    bench_eval,
    bench_parse
);
criterion_main!(benches);
