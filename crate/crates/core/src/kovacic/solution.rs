use std::fmt;

use crate::exactnum::GaussianRational;
use crate::poly::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_scalar(self) -> GaussianRational {
        GaussianRational::from_int(self.value())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Closed-form solution of `f'' = r f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionForm {
    /// `P·exp(∫ω dx)` with `P` monic.
    PolyExp { p: Polynomial, omega: Polynomial },
    /// `exp(±√c·x)`, where `√c` may lie outside ℚ(i).
    ExpSqrtConst { c: GaussianRational, sign: Sign },
    /// The pair `{1, x}`, for `r = 0`.
    AffineBasis,
    /// `f·∫f⁻² dx`, left unevaluated.
    SecondByQuadrature { base: Box<SolutionForm> },
}

impl SolutionForm {
    /// `(P, ω)` when the solution is a polynomial times the exponential of
    /// a polynomial integral with coefficients in ℚ(i).
    pub fn as_poly_exp(&self) -> Option<(Polynomial, Polynomial)> {
        match self {
            SolutionForm::PolyExp { p, omega } => Some((p.clone(), omega.clone())),
            SolutionForm::ExpSqrtConst { c, sign } => {
                let root = c.try_sqrt()?;
                Some((
                    Polynomial::one(),
                    Polynomial::constant(&root * &sign.as_scalar()),
                ))
            }
            _ => None,
        }
    }

    /// Exact antiderivative `W` of `ω`, with zero constant of integration.
    pub fn exponent(&self) -> Option<Polynomial> {
        match self {
            SolutionForm::PolyExp { omega, .. } => Some(omega.antiderivative()),
            _ => None,
        }
    }
}

/// `P` when it needs no parentheses as a factor: a single term without a
/// mixed complex coefficient.
fn factor_text(p: &Polynomial) -> String {
    let terms: Vec<&GaussianRational> = p.coeffs().iter().filter(|c| !c.is_zero()).collect();
    let text = p.to_string();
    if terms.len() == 1 && !text.starts_with('(') && !text.starts_with('-') {
        text
    } else {
        format!("({})", text)
    }
}

pub(crate) fn format_poly_exp(p: &Polynomial, w: &Polynomial) -> String {
    match (p.is_one(), w.is_zero()) {
        (_, true) => p.to_string(),
        (true, false) => format!("exp({})", w),
        (false, false) => format!("{} * exp({})", factor_text(p), w),
    }
}

impl fmt::Display for SolutionForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolutionForm::PolyExp { p, omega } => {
                f.write_str(&format_poly_exp(p, &omega.antiderivative()))
            }
            SolutionForm::ExpSqrtConst { c, sign } => {
                let s = if *sign == Sign::Minus { "-" } else { "" };
                write!(f, "exp({}sqrt({})*x)", s, c)
            }
            SolutionForm::AffineBasis => f.write_str("{1, x}"),
            SolutionForm::SecondByQuadrature { base } => {
                write!(f, "{0} * integral(({0})^-2)", base)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_polynomial, parse_solution};

    fn poly(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn display_reparses() {
        let cases = [
            (Polynomial::one(), poly("x^2 + 1")),
            (poly("x"), poly("-x")),
            (poly("x^2 - 1/2"), poly("-x")),
            (poly("x + i"), poly("i*x^3")),
        ];
        for (p, omega) in cases {
            let sol = SolutionForm::PolyExp {
                p: p.clone(),
                omega: omega.clone(),
            };
            let (p2, w2) = parse_solution(&sol.to_string()).unwrap();
            assert_eq!(p2, p);
            assert_eq!(w2, omega.antiderivative());
        }
        let sol = SolutionForm::PolyExp {
            p: poly("x"),
            omega: poly("-x"),
        };
        assert_eq!(sol.to_string(), "x * exp(-1/2*x^2)");
    }

    #[test]
    fn square_constant_becomes_poly_exp() {
        let sol = SolutionForm::ExpSqrtConst {
            c: GaussianRational::from_int(-4),
            sign: Sign::Minus,
        };
        assert_eq!(
            sol.as_poly_exp(),
            Some((
                Polynomial::one(),
                Polynomial::constant(GaussianRational::from_ints(0, -2))
            ))
        );
        let sol = SolutionForm::ExpSqrtConst {
            c: GaussianRational::from_int(3),
            sign: Sign::Plus,
        };
        assert_eq!(sol.as_poly_exp(), None);
        assert_eq!(sol.to_string(), "exp(sqrt(3)*x)");
    }
}
