//! Grid sweeps comparing solver verdicts with the classification.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::dirac::{reduce, Component, Coupling, DiracProblem};
use crate::exactnum::{GaussianRational, Rational, Surd};
use crate::kovacic::{classify_by_theorem, solve, TheoremPrediction};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error("the grid is empty")]
    EmptyGrid,
    #[error("could not start {0} worker threads")]
    ThreadPool(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub degrees: RangeInclusive<usize>,
    /// Leading coefficients of the potential.
    pub leading: Vec<GaussianRational>,
    pub masses: Vec<GaussianRational>,
    pub energies: Vec<GaussianRational>,
    pub couplings: Vec<Coupling>,
    pub components: Vec<Component>,
    /// Seed for one random lower-order term per (degree, leading) pair;
    /// `None` sweeps pure monomials.
    pub lower_term_seed: Option<u64>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        let q = |s: &str| GaussianRational::real(s.parse::<Rational>().expect("literal"));
        SweepConfig {
            degrees: 2..=5,
            leading: [-2, -1, 1, 2]
                .iter()
                .map(|&c| GaussianRational::from_int(c))
                .collect(),
            masses: vec![q("0"), q("1"), q("3/2")],
            energies: vec![q("0"), q("1"), q("5/2")],
            couplings: vec![Coupling::Scalar, Coupling::Vector],
            components: vec![Component::First, Component::Second],
            lower_term_seed: Some(0),
        }
    }
}

/// Random `c·x^j` with `j < n` and `c` a small nonzero rational.
fn lower_term(rng: &mut ChaCha8Rng, n: usize) -> Polynomial {
    if n == 0 {
        return Polynomial::zero();
    }
    let j = rng.gen_range(0..n);
    let mut num = rng.gen_range(-5i64..=4);
    if num >= 0 {
        num += 1;
    }
    let den = rng.gen_range(1i64..=4);
    let c = Rational::new(num, den).expect("nonzero denominator");
    Polynomial::monomial(GaussianRational::real(c), j)
}

/// All problems of the grid, in order: degree, leading coefficient,
/// coupling, mass, energy, component (innermost).
pub fn build_grid(config: &SweepConfig) -> Vec<DiracProblem> {
    let mut rng = config.lower_term_seed.map(ChaCha8Rng::seed_from_u64);
    let mut grid = Vec::new();
    for n in config.degrees.clone() {
        for lead in &config.leading {
            let mut v = Polynomial::monomial(lead.clone(), n);
            if let Some(rng) = rng.as_mut() {
                v = &v + &lower_term(rng, n);
            }
            for &coupling in &config.couplings {
                for m in &config.masses {
                    for e in &config.energies {
                        let base = match coupling {
                            Coupling::Scalar => {
                                DiracProblem::scalar(v.clone(), m.clone(), Surd::from(e.clone()))
                            }
                            Coupling::Vector => {
                                DiracProblem::vector(v.clone(), Surd::from(m.clone()), e.clone())
                            }
                        };
                        for &component in &config.components {
                            grid.push(base.clone().with_component(component));
                        }
                    }
                }
            }
        }
    }
    grid
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepCell {
    pub problem: DiracProblem,
    pub prediction: TheoremPrediction,
    /// Solver verdict, or the error it raised.
    pub solvable: Result<bool, String>,
}

impl SweepCell {
    /// False only when the classification makes a statement and the
    /// solver contradicts it (or failed).
    pub fn agrees(&self) -> bool {
        match (self.prediction.solvable, &self.solvable) {
            (None, Ok(_)) => true,
            (Some(p), Ok(s)) => p == *s,
            (_, Err(_)) => false,
        }
    }
}

pub fn run_cell(problem: &DiracProblem) -> SweepCell {
    let prediction = classify_by_theorem(problem);
    let solvable = reduce(problem)
        .map_err(|e| e.to_string())
        .and_then(|red| solve(&red.r).map_err(|e| e.to_string()))
        .map(|v| v.is_solvable());
    SweepCell {
        problem: problem.clone(),
        prediction,
        solvable,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub cells: Vec<SweepCell>,
    /// Indices of cells whose verdict contradicts the classification.
    pub disagreements: Vec<usize>,
    /// Index pairs of cells that differ only in the component and get
    /// different verdicts.
    pub component_mismatches: Vec<(usize, usize)>,
}

impl SweepReport {
    pub fn solvable_count(&self) -> usize {
        self.cells.iter().filter(|c| c.solvable == Ok(true)).count()
    }

    pub fn unclassified_count(&self) -> usize {
        self.cells
            .iter()
            .filter(|c| c.prediction.solvable.is_none())
            .count()
    }
}

/// Run every cell of the grid, on `jobs` threads. Results keep grid order.
pub fn run_sweep(config: &SweepConfig, jobs: usize) -> Result<SweepReport, SweepError> {
    let grid = build_grid(config);
    if grid.is_empty() {
        return Err(SweepError::EmptyGrid);
    }
    let jobs = jobs.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|_| SweepError::ThreadPool(jobs))?;
    let cells: Vec<SweepCell> = pool.install(|| grid.par_iter().map(run_cell).collect());

    let disagreements = (0..cells.len()).filter(|&k| !cells[k].agrees()).collect();

    let mut component_mismatches = Vec::new();
    let mut start = 0;
    while start < cells.len() {
        let key = cells[start]
            .problem
            .clone()
            .with_component(Component::First);
        let mut end = start + 1;
        while end < cells.len()
            && cells[end].problem.clone().with_component(Component::First) == key
        {
            end += 1;
        }
        for k in start + 1..end {
            if cells[k].solvable != cells[start].solvable {
                component_mismatches.push((start, k));
            }
        }
        start = end;
    }

    Ok(SweepReport {
        cells,
        disagreements,
        component_mismatches,
    })
}
