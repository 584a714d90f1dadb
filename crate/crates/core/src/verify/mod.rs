//! Exact residual checks for emitted solutions, plus numerical evaluation
//! for inspection. Pass/fail decisions only ever use the exact checks.

mod numeric;

pub use numeric::{eval_poly_exp, eval_solution, ApproxComplex, EvalError, DEFAULT_DIGIT_CAP};

use thiserror::Error;

use crate::dirac::{first_order_system, DiracError, DiracProblem, SpinorComponent};
use crate::exactnum::{GaussianRational, Surd};
use crate::kovacic::{CaseExclusion, SolutionForm};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("{0} is an unevaluated quadrature and cannot be checked exactly")]
    UnverifiableForm(String),
    #[error("components carry different exponentials and the system does not decouple")]
    MixedExponentials,
    #[error("component scales {0} and {1} cannot be combined exactly")]
    IncommensurableScales(String, String),
    #[error("{0} is not a polynomial-times-exponential form")]
    UnsupportedForm(String),
    #[error(transparent)]
    Dirac(#[from] DiracError),
}

/// The factor of `f'' − r f` left after dividing out the exponential.
///
/// For `P·exp(∫ω)` this is `P'' + 2ωP' + (ω' + ω² − r)P`; for
/// `exp(±√c·x)` it is `c − r`; for the basis `{1, x}` it is `r`.
pub fn residual(r: &Polynomial, sol: &SolutionForm) -> Result<Polynomial, VerifyError> {
    match sol {
        SolutionForm::PolyExp { p, omega } => Ok(residual_poly_exp(r, p, omega)),
        SolutionForm::ExpSqrtConst { c, .. } => Ok(&Polynomial::constant(c.clone()) - r),
        SolutionForm::AffineBasis => Ok(r.clone()),
        SolutionForm::SecondByQuadrature { .. } => {
            Err(VerifyError::UnverifiableForm(sol.to_string()))
        }
    }
}

/// Residual of `P·exp(∫ω)` for any (not necessarily monic) `P`.
pub fn residual_poly_exp(r: &Polynomial, p: &Polynomial, omega: &Polynomial) -> Polynomial {
    let g = &(&omega.derivative() + &(omega * omega)) - r;
    crate::kovacic::riccati_operator(p, omega, &g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualCertificate {
    pub residual: Polynomial,
    pub equation: Polynomial,
    pub solution: SolutionForm,
}

impl ResidualCertificate {
    pub fn new(r: &Polynomial, solution: &SolutionForm) -> Result<Self, VerifyError> {
        Ok(ResidualCertificate {
            residual: residual(r, solution)?,
            equation: r.clone(),
            solution: solution.clone(),
        })
    }

    pub fn pass(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Exact check that the case analysis holds for `r`: recomputes the
/// exclusion record independently of the solver.
pub fn exclusion_holds(r: &Polynomial, ex: &CaseExclusion) -> bool {
    r.degree() == Some(ex.degree)
        && ex.order_at_infinity == -(ex.degree as i64)
        && ex.case1_possible == ex.degree.is_multiple_of(2)
}

/// Residual of one first-order equation, split by radicand: each part is
/// the polynomial multiplying `√radicand` times the common exponential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstOrderResidual {
    pub parts: Vec<(GaussianRational, Polynomial)>,
}

impl FirstOrderResidual {
    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|(_, p)| p.is_zero())
    }

    fn collect(terms: Vec<(Surd, Polynomial)>) -> Result<Self, VerifyError> {
        let mut parts: Vec<(GaussianRational, Polynomial)> = Vec::new();
        for (k, p) in terms {
            if k.is_zero() || p.is_zero() {
                continue;
            }
            let scaled = p.scale(k.coeff());
            match parts.iter_mut().find(|(rad, _)| rad == k.radicand()) {
                Some((_, acc)) => *acc = &*acc + &scaled,
                None => {
                    // Distinct radicands whose ratio is a square would need a
                    // branch comparison to combine.
                    if let Some((rad, _)) = parts.iter().find(|(rad, _)| {
                        k.radicand()
                            .checked_div(rad)
                            .ok()
                            .and_then(|q| q.try_sqrt())
                            .is_some()
                    }) {
                        return Err(VerifyError::IncommensurableScales(
                            rad.to_string(),
                            k.radicand().to_string(),
                        ));
                    }
                    parts.push((k.radicand().clone(), scaled));
                }
            }
        }
        parts.retain(|(_, p)| !p.is_zero());
        Ok(FirstOrderResidual { parts })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinorCheck {
    pub first: FirstOrderResidual,
    pub second: FirstOrderResidual,
}

impl SpinorCheck {
    pub fn pass(&self) -> bool {
        self.first.is_zero() && self.second.is_zero()
    }
}

fn poly_exp_parts(c: &SpinorComponent) -> Result<(Polynomial, Polynomial), VerifyError> {
    c.form
        .as_poly_exp()
        .ok_or_else(|| VerifyError::UnsupportedForm(c.form.to_string()))
}

fn mul_scales(a: &Surd, b: &Surd) -> Result<Surd, VerifyError> {
    a.checked_mul(b)
        .ok_or_else(|| VerifyError::IncommensurableScales(a.to_string(), b.to_string()))
}

/// Check both first-order equations `ψ1' = aψ1 + bψ2` and
/// `ψ2' = cψ2 + dψ1` for the given pair.
pub fn verify_spinor(
    problem: &DiracProblem,
    psi1: &SpinorComponent,
    psi2: &SpinorComponent,
) -> Result<SpinorCheck, VerifyError> {
    let sys = first_order_system(problem)?;
    let (p1, w1) = poly_exp_parts(psi1)?;
    let (p2, w2) = poly_exp_parts(psi2)?;
    let same_exp = w1 == w2;

    // ψ' − rate·ψ for ψ = σ·P·exp(∫ω), without the exponential
    let own = |p: &Polynomial, w: &Polynomial, rate: &Polynomial| {
        &(&p.derivative() + &(w * p)) - &(rate * p)
    };

    let equation = |own_c: &SpinorComponent,
                    own_p: &Polynomial,
                    own_w: &Polynomial,
                    rate: &Polynomial,
                    coupling: &Surd,
                    other_c: &SpinorComponent,
                    other_p: &Polynomial|
     -> Result<FirstOrderResidual, VerifyError> {
        let mut terms = vec![(own_c.scale.clone(), own(own_p, own_w, rate))];
        if !coupling.is_zero() && !other_c.scale.is_zero() {
            if !same_exp {
                return Err(VerifyError::MixedExponentials);
            }
            let k = mul_scales(coupling, &other_c.scale)?.neg();
            terms.push((k, other_p.clone()));
        }
        FirstOrderResidual::collect(terms)
    };

    let first = equation(psi1, &p1, &w1, &sys.a, &sys.b, psi2, &p2)?;
    let second = equation(psi2, &p2, &w2, &sys.c, &sys.d, psi1, &p1)?;
    Ok(SpinorCheck { first, second })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac::{complete_spinor, DiracProblem};
    use crate::parser::parse_polynomial;

    fn poly(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    fn gi(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    fn pe(p: &str, omega: &str) -> SolutionForm {
        SolutionForm::PolyExp {
            p: poly(p),
            omega: poly(omega),
        }
    }

    #[test]
    fn residual_examples() {
        // ω = m + V, P = 1, r = U' + U²
        let u = poly("x^3 - 2*x + 1");
        let r = &u.derivative() + &(&u * &u);
        let sol = SolutionForm::PolyExp {
            p: Polynomial::one(),
            omega: u.clone(),
        };
        assert!(residual(&r, &sol).unwrap().is_zero());

        // ω = −x, P = x, r = x² − 3
        assert!(residual(&poly("x^2 - 3"), &pe("x", "-x"))
            .unwrap()
            .is_zero());

        // E ≠ 0 leaves E²
        let e2 = gi(9, 0);
        let r = &r - &Polynomial::constant(e2.clone());
        assert_eq!(residual(&r, &sol).unwrap(), Polynomial::constant(e2));

        let quad = SolutionForm::SecondByQuadrature {
            base: Box::new(sol.clone()),
        };
        assert!(matches!(
            residual(&r, &quad),
            Err(VerifyError::UnverifiableForm(_))
        ));
        assert!(residual(&Polynomial::zero(), &SolutionForm::AffineBasis)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn certificate_pass_flag() {
        let cert = ResidualCertificate::new(&poly("x^2 - 3"), &pe("x", "-x")).unwrap();
        assert!(cert.pass());
        let cert = ResidualCertificate::new(&poly("x^2 - 4"), &pe("x", "-x")).unwrap();
        assert!(!cert.pass());
    }

    #[test]
    fn reciprocal_pair_passes_at_zero_energy() {
        let p = DiracProblem::scalar(poly("x^2"), gi(1, 0), Surd::zero());
        let u = poly("x^2 + 1");
        let psi1 = SpinorComponent::unit(SolutionForm::PolyExp {
            p: Polynomial::one(),
            omega: u.clone(),
        });
        let psi2 = SpinorComponent::unit(SolutionForm::PolyExp {
            p: Polynomial::one(),
            omega: -&u,
        });
        assert!(verify_spinor(&p, &psi1, &psi2).unwrap().pass());

        // wrong sign in ψ2: second equation leaves 2U
        let bad = verify_spinor(&p, &psi1, &psi1).unwrap();
        assert!(bad.first.is_zero());
        assert!(!bad.second.is_zero());
        assert_eq!(bad.second.parts, vec![(gi(1, 0), u.scale(&gi(2, 0)))]);
    }

    #[test]
    fn oscillator_pair_passes() {
        for k in 1..6 {
            let e = Surd::sqrt_of(gi(2 * k, 0));
            let p = DiracProblem::scalar(poly("x"), gi(0, 0), e);
            let r = crate::dirac::reduce(&p).unwrap().r;
            let v = crate::kovacic::solve(&r).unwrap();
            let sp = complete_spinor(&p, &v.solutions()[0]).unwrap();
            assert!(
                verify_spinor(&p, &sp.psi1, &sp.psi2).unwrap().pass(),
                "k = {k}"
            );
        }
    }

    #[test]
    fn mixed_exponentials_rejected() {
        let p = DiracProblem::scalar(poly("x^2"), gi(0, 0), Surd::from(gi(1, 0)));
        let a = SpinorComponent::unit(pe("1", "x^2"));
        let b = SpinorComponent::unit(pe("1", "-x^2"));
        assert_eq!(
            verify_spinor(&p, &a, &b),
            Err(VerifyError::MixedExponentials)
        );
    }

    #[test]
    fn surd_parts_are_kept_apart() {
        // E = √2 with ψ2 scaled by 1 instead of 2/E: the √2 part survives.
        let e = Surd::sqrt_of(gi(2, 0));
        let p = DiracProblem::scalar(poly("x"), gi(0, 0), e);
        let psi1 = SpinorComponent::unit(pe("1", "-x"));
        let psi2 = SpinorComponent::unit(pe("x", "-x"));
        let check = verify_spinor(&p, &psi1, &psi2).unwrap();
        assert!(!check.pass());
        assert_eq!(check.first.parts.len(), 2);
    }
}
