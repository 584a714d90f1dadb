//! Liouvillian solvability of `f'' = r f` for polynomial `r`.
//!
//! With no finite poles, only the first of Kovacic's three cases can apply,
//! and only when `deg r` is even. That case looks for solutions
//! `P·exp(∫ω)` with `ω = ±[√r]_∞` and `P` monic of a degree fixed by the
//! coefficients of `r` at infinity.

mod case1;
mod solution;
mod theorem;

pub(crate) use case1::riccati_operator;
pub use case1::{
    candidate_degree, compute_case1_data, degree_candidates, find_p, find_p_or_obstruction,
    Case1Data, OmegaCandidate,
};
pub use solution::{Sign, SolutionForm};
pub use theorem::{classify_by_theorem, TheoremPrediction, TheoremRule};

use std::fmt;

use thiserror::Error;

use crate::exactnum::{as_nonneg_int, GaussianRational};
use crate::poly::{PolyError, Polynomial};
use crate::verify;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KovacicError {
    #[error("case analysis does not apply to a constant coefficient")]
    NotApplicable,
    #[error(
        "leading coefficient {0} of r is not a square in Q(i); the verdict is undecided over Q(i)"
    )]
    FieldExtensionNeeded(Box<GaussianRational>),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl From<PolyError> for KovacicError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::FieldExtensionNeeded(c) => KovacicError::FieldExtensionNeeded(c),
            other => KovacicError::InvariantViolation(other.to_string()),
        }
    }
}

/// Why Cases 2 and 3 (and possibly Case 1) cannot apply to a polynomial `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseExclusion {
    pub degree: usize,
    /// `−deg r`.
    pub order_at_infinity: i64,
    pub case1_possible: bool,
}

impl CaseExclusion {
    pub fn case2_excluded(&self) -> bool {
        true
    }

    pub fn case3_excluded(&self) -> bool {
        self.order_at_infinity < 2
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![
            format!(
                "r is a polynomial of degree {}: no finite poles, order at infinity {}",
                self.degree, self.order_at_infinity
            ),
            "case 2 excluded: it needs a pole of order 2 or of odd order > 2".to_string(),
            format!(
                "case 3 excluded: it needs order at infinity >= 2, found {}",
                self.order_at_infinity
            ),
        ];
        if self.case1_possible {
            out.push("case 1 applies: order at infinity is even".to_string());
        } else {
            out.push(format!(
                "case 1 excluded: order at infinity {} is odd and negative",
                self.order_at_infinity
            ));
        }
        out
    }
}

impl fmt::Display for CaseExclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.lines().join("; "))
    }
}

pub fn case_exclusion(r: &Polynomial) -> Result<CaseExclusion, KovacicError> {
    match r.degree() {
        Some(d) if d >= 1 => Ok(CaseExclusion {
            degree: d,
            order_at_infinity: -(d as i64),
            case1_possible: d % 2 == 0,
        }),
        _ => Err(KovacicError::NotApplicable),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CandidateResult {
    /// `d` is not one of 0, 1, 2, ...
    DegreeNotNonnegativeInteger,
    /// The linear system for `P` has no solution; `obstruction` is the
    /// nonzero residual left by the best partial solution.
    Inconsistent {
        degree: usize,
        obstruction: Polynomial,
    },
    Found {
        p: Polynomial,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateOutcome {
    pub sign: Sign,
    pub omega: Polynomial,
    pub degree: GaussianRational,
    pub result: CandidateResult,
}

impl fmt::Display for CandidateOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sign {}, omega = {}, d = {}: ",
            self.sign, self.omega, self.degree
        )?;
        match &self.result {
            CandidateResult::DegreeNotNonnegativeInteger => {
                write!(f, "rejected, d is not a nonnegative integer")
            }
            CandidateResult::Inconsistent {
                degree,
                obstruction,
            } => write!(
                f,
                "no monic P of degree {} exists, residual {}",
                degree, obstruction
            ),
            CandidateResult::Found { p } => write!(f, "P = {}", p),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// `r ≡ 0`: solutions 1 and x.
    ZeroCoefficient,
    /// `r = c ≠ 0`: solutions exp(±√c·x).
    ConstantCoefficient,
    /// `deg r` odd: every case excluded.
    OddDegree,
    Case1,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub route: Route,
    pub exclusion: Option<CaseExclusion>,
    pub case1: Option<Case1Data>,
    pub candidates: Vec<CandidateOutcome>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Solvable {
        solutions: Vec<SolutionForm>,
        /// One exact residual per verifiable solution, all zero.
        residuals: Vec<Polynomial>,
        certificate: Certificate,
    },
    NotSolvable {
        certificate: Certificate,
    },
}

impl Verdict {
    pub fn is_solvable(&self) -> bool {
        matches!(self, Verdict::Solvable { .. })
    }

    pub fn certificate(&self) -> &Certificate {
        match self {
            Verdict::Solvable { certificate, .. } | Verdict::NotSolvable { certificate } => {
                certificate
            }
        }
    }

    pub fn solutions(&self) -> &[SolutionForm] {
        match self {
            Verdict::Solvable { solutions, .. } => solutions,
            Verdict::NotSolvable { .. } => &[],
        }
    }
}

fn solvable(
    r: &Polynomial,
    solutions: Vec<SolutionForm>,
    certificate: Certificate,
) -> Result<Verdict, KovacicError> {
    let mut residuals = Vec::new();
    for sol in &solutions {
        if matches!(sol, SolutionForm::SecondByQuadrature { .. }) {
            continue;
        }
        let res = verify::residual(r, sol)
            .map_err(|e| KovacicError::InvariantViolation(e.to_string()))?;
        if !res.is_zero() {
            return Err(KovacicError::InvariantViolation(format!(
                "emitted solution {} leaves residual {}",
                sol, res
            )));
        }
        residuals.push(res);
    }
    Ok(Verdict::Solvable {
        solutions,
        residuals,
        certificate,
    })
}

/// Decide whether `f'' = r f` has Liouvillian solutions and produce them.
///
/// Every solution in a `Solvable` verdict has been checked to leave an
/// exactly zero residual.
pub fn solve(r: &Polynomial) -> Result<Verdict, KovacicError> {
    let Some(deg) = r.degree() else {
        let cert = Certificate {
            route: Route::ZeroCoefficient,
            exclusion: None,
            case1: None,
            candidates: Vec::new(),
        };
        return solvable(r, vec![SolutionForm::AffineBasis], cert);
    };
    if deg == 0 {
        let c = r.coeff(0);
        let cert = Certificate {
            route: Route::ConstantCoefficient,
            exclusion: None,
            case1: None,
            candidates: Vec::new(),
        };
        let sols = [Sign::Plus, Sign::Minus]
            .into_iter()
            .map(|sign| SolutionForm::ExpSqrtConst { c: c.clone(), sign })
            .collect();
        return solvable(r, sols, cert);
    }
    let exclusion = case_exclusion(r)?;
    if !exclusion.case1_possible {
        return Ok(Verdict::NotSolvable {
            certificate: Certificate {
                route: Route::OddDegree,
                exclusion: Some(exclusion),
                case1: None,
                candidates: Vec::new(),
            },
        });
    }
    let data = compute_case1_data(r)?;
    let mut outcomes = Vec::with_capacity(2);
    let mut found = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        let degree = candidate_degree(&data, sign);
        let omega = data.s.scale(&sign.as_scalar());
        let result = match degree.as_real().and_then(as_nonneg_int) {
            None => CandidateResult::DegreeNotNonnegativeInteger,
            Some(d) => {
                let d = usize::try_from(d).map_err(|_| {
                    KovacicError::InvariantViolation("candidate degree overflows usize".into())
                })?;
                match find_p_or_obstruction(&omega, d, r) {
                    Ok(p) => {
                        found.push(SolutionForm::PolyExp {
                            p: p.clone(),
                            omega: omega.clone(),
                        });
                        CandidateResult::Found { p }
                    }
                    Err(obstruction) => CandidateResult::Inconsistent {
                        degree: d,
                        obstruction,
                    },
                }
            }
        };
        outcomes.push(CandidateOutcome {
            sign,
            omega,
            degree,
            result,
        });
    }
    let certificate = Certificate {
        route: Route::Case1,
        exclusion: Some(exclusion),
        case1: Some(data),
        candidates: outcomes,
    };
    if found.is_empty() {
        return Ok(Verdict::NotSolvable { certificate });
    }
    let second = SolutionForm::SecondByQuadrature {
        base: Box::new(found[0].clone()),
    };
    found.push(second);
    solvable(r, found, certificate)
}
