use std::fmt;

use crate::dirac::{vector_to_scalar_map, Coupling, DiracProblem};
use crate::exactnum::as_nonneg_int;

/// Which clause of the classification decided the prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremRule {
    /// n = 0: constant coefficients.
    ConstantPotential,
    /// n = 1 and the quantization ratio is in ℕ.
    OscillatorQuantized,
    /// n = 1 and the quantization ratio is not an integer.
    OscillatorNotQuantized,
    /// n = 1 and the quantization ratio is a negative integer; the
    /// classification does not address this case.
    OscillatorNegativeRatio,
    /// n > 1 with vanishing energy (scalar) or mass (vector).
    DegenerateParameterZero,
    /// n > 1 with nonzero energy (scalar) or mass (vector).
    DegenerateParameterNonzero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremPrediction {
    /// `None` when the classification makes no statement.
    pub solvable: Option<bool>,
    pub rule: TheoremRule,
    pub coupling: Coupling,
    pub degree: usize,
}

impl fmt::Display for TheoremPrediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let param = match self.coupling {
            Coupling::Scalar => "E",
            Coupling::Vector => "m",
        };
        match self.rule {
            TheoremRule::ConstantPotential => write!(f, "Theorem: n=0, constant coefficients"),
            TheoremRule::OscillatorQuantized => write!(
                f,
                "Theorem: n=1, quantization ratio is a nonnegative integer (either sign candidate)"
            ),
            TheoremRule::OscillatorNotQuantized => {
                write!(f, "Theorem: n=1, quantization ratio is not an integer")
            }
            TheoremRule::OscillatorNegativeRatio => write!(
                f,
                "Theorem silent: n=1 with negative integer quantization ratio"
            ),
            TheoremRule::DegenerateParameterZero => write!(f, "Theorem: n>1, {}=0", param),
            TheoremRule::DegenerateParameterNonzero => write!(f, "Theorem: n>1, {}≠0", param),
        }
    }
}

/// Predict solvability from the classification alone, without running the
/// solver.
///
/// Vector problems are first mapped to their scalar equivalents. For n = 1
/// the quantization ratio is `E²/(2λ)` of the scalar problem; a
/// nonnegative integer (zero included) predicts solvable.
pub fn classify_by_theorem(problem: &DiracProblem) -> TheoremPrediction {
    let scalar = match problem.coupling {
        Coupling::Scalar => problem.clone(),
        Coupling::Vector => vector_to_scalar_map(problem).expect("vector coupling"),
    };
    let degree = scalar.potential_degree();
    let e2 = scalar.energy.square();
    let (solvable, rule) = match degree {
        0 => (Some(true), TheoremRule::ConstantPotential),
        1 => {
            let lambda = scalar.potential.coeff(1);
            let two_lambda = &lambda + &lambda;
            let ratio = e2.checked_div(&two_lambda).expect("λ ≠ 0");
            match ratio.as_real() {
                Some(q) if as_nonneg_int(q).is_some() => {
                    (Some(true), TheoremRule::OscillatorQuantized)
                }
                Some(q) if q.is_integer() => (None, TheoremRule::OscillatorNegativeRatio),
                _ => (Some(false), TheoremRule::OscillatorNotQuantized),
            }
        }
        _ if e2.is_zero() => (Some(true), TheoremRule::DegenerateParameterZero),
        _ => (Some(false), TheoremRule::DegenerateParameterNonzero),
    };
    TheoremPrediction {
        solvable,
        rule,
        coupling: problem.coupling,
        degree,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{GaussianRational, Surd};
    use crate::parser::parse_polynomial;
    use crate::poly::Polynomial;

    fn poly(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    fn gi(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    #[test]
    fn cubic_with_energy_is_not_solvable() {
        let e = GaussianRational::real("1/2".parse().unwrap());
        let p = DiracProblem::scalar(poly("x^3"), gi(0, 0), Surd::from(e));
        let t = classify_by_theorem(&p);
        assert_eq!(t.solvable, Some(false));
        assert_eq!(t.to_string(), "Theorem: n>1, E≠0");
    }

    #[test]
    fn oscillator_level_three() {
        let p = DiracProblem::scalar(poly("x"), gi(0, 0), Surd::sqrt_of(gi(6, 0)));
        assert_eq!(classify_by_theorem(&p).solvable, Some(true));
        let p = DiracProblem::scalar(poly("x"), gi(0, 0), Surd::sqrt_of(gi(5, 0)));
        assert_eq!(classify_by_theorem(&p).solvable, Some(false));
        let p = DiracProblem::scalar(poly("x"), gi(0, 0), Surd::zero());
        assert_eq!(classify_by_theorem(&p).solvable, Some(true));
        let p = DiracProblem::scalar(poly("-x"), gi(0, 0), Surd::sqrt_of(gi(2, 0)));
        assert_eq!(classify_by_theorem(&p).solvable, None);
    }

    #[test]
    fn vector_massless_is_solvable() {
        let p = DiracProblem::vector(poly("x^4"), Surd::zero(), gi(3, 0));
        let t = classify_by_theorem(&p);
        assert_eq!(t.solvable, Some(true));
        assert_eq!(t.to_string(), "Theorem: n>1, m=0");
        let p = DiracProblem::vector(poly("x^4"), Surd::from(gi(1, 0)), gi(3, 0));
        assert_eq!(classify_by_theorem(&p).to_string(), "Theorem: n>1, m≠0");
    }

    #[test]
    fn constant_potentials() {
        let p = DiracProblem::scalar(poly("7"), gi(1, 0), Surd::from(gi(3, 0)));
        assert_eq!(classify_by_theorem(&p).solvable, Some(true));
        let p = DiracProblem::vector(Polynomial::zero(), Surd::from(gi(1, 0)), gi(3, 0));
        assert_eq!(classify_by_theorem(&p).solvable, Some(true));
    }
}
