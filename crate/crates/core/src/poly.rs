//! Dense univariate polynomials in `x` over ℚ(i).

use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::exactnum::{GaussianRational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("degree {0} is odd; the square root at infinity needs an even degree")]
    OddDegree(usize),
    #[error("degree must be at least 2 for a square root at infinity")]
    DegreeTooSmall,
    #[error("leading coefficient {0} is not a square in Q(i)")]
    FieldExtensionNeeded(Box<GaussianRational>),
}

/// Coefficients are stored by ascending power with no zero at the top, so
/// the zero polynomial is the empty vector and has no degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<GaussianRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(GaussianRational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(GaussianRational::one())
    }

    pub fn x() -> Self {
        Polynomial::monomial(GaussianRational::one(), 1)
    }

    pub fn constant(c: GaussianRational) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn monomial(c: GaussianRational, power: usize) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![GaussianRational::zero(); power + 1];
        coeffs[power] = c;
        Polynomial { coeffs }
    }

    /// Build from integer coefficients in ascending order.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(
            coeffs
                .iter()
                .map(|&c| GaussianRational::from_int(c))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, power: usize) -> GaussianRational {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(GaussianRational::is_one)
    }

    pub fn scale(&self, k: &GaussianRational) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero();
        }
        Polynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Divide through by the leading coefficient. The zero polynomial is
    /// returned unchanged.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some(lc) => self.scale(&lc.inv().expect("leading coefficient is nonzero")),
            None => Polynomial::zero(),
        }
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&Rational::from(k as i64)))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Polynomial {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(GaussianRational::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            let div = Rational::new(1, k as i64 + 1).expect("nonzero");
            out.push(c.scale(&div));
        }
        Polynomial::new(out)
    }

    pub fn eval(&self, x0: &GaussianRational) -> GaussianRational {
        self.coeffs
            .iter()
            .rev()
            .fold(GaussianRational::zero(), |acc, c| &(&acc * x0) + c)
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Polynomial long division: `self = q·divisor + rem` with
    /// `deg rem < deg divisor`.
    pub fn divmod(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lc_inv = divisor.coeffs[dd]
            .inv()
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return Ok((Polynomial::zero(), self.clone()));
        };
        let mut quot = vec![GaussianRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &(&c * dc);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// The polynomial part `s` of √r at infinity.
    ///
    /// For `deg r = 2ν` the result has degree ν, canonical leading
    /// coefficient, and satisfies `deg(r − s²) ≤ ν − 1`. The coefficients are
    /// fixed top-down: the leading one from the square root of `lc(r)`, then
    /// each lower one from the single linear equation that the coefficient of
    /// `x^{2ν−k}` in `s²` imposes.
    pub fn asymptotic_sqrt(&self) -> Result<Polynomial, PolyError> {
        let deg = self
            .degree()
            .filter(|&d| d >= 2)
            .ok_or(PolyError::DegreeTooSmall)?;
        if deg % 2 == 1 {
            return Err(PolyError::OddDegree(deg));
        }
        let nu = deg / 2;
        let lead = &self.coeffs[deg];
        let top = lead
            .try_sqrt()
            .ok_or_else(|| PolyError::FieldExtensionNeeded(Box::new(lead.clone())))?;
        let two_top_inv = (&top + &top).inv().expect("nonzero");
        let mut s = vec![GaussianRational::zero(); nu + 1];
        s[nu] = top;
        for k in 1..=nu {
            let target = deg - k;
            let mut known = GaussianRational::zero();
            for i in (nu - k + 1)..=nu {
                let j = target - i;
                if j > nu - k && j <= nu {
                    known += &(&s[i] * &s[j]);
                }
            }
            s[nu - k] = &(&self.coeffs[target] - &known) * &two_top_inv;
        }
        Ok(Polynomial::new(s))
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Polynomial::new(out)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}
