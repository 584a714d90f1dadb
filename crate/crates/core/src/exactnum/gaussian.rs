use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::{ExactError, Rational};

/// Exact element of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(Rational::from(n))
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational::new(Rational::from(re), Rational::from(im))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The real part, when the imaginary part vanishes.
    pub fn as_real(&self) -> Option<&Rational> {
        self.is_real().then_some(&self.re)
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -&self.im)
    }

    /// |c|² = re² + im².
    pub fn norm(&self) -> Rational {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        GaussianRational::new(&self.re * k, &self.im * k)
    }

    pub fn mul_i(&self) -> Self {
        GaussianRational::new(-&self.im, self.re.clone())
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let n = self.norm();
        Ok(GaussianRational::new(&self.re / &n, &(-&self.im) / &n))
    }

    pub fn checked_div(&self, rhs: &GaussianRational) -> Result<Self, ExactError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = GaussianRational::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Canonical square root in ℚ(i): `re > 0`, or `re = 0` and `im ≥ 0`.
    ///
    /// Writing the root as a + bi gives a² − b² = re(c) and 2ab = im(c), so
    /// a² = (|c| + re(c))/2. A root exists exactly when |c| is rational and
    /// that quotient is a rational square.
    pub fn try_sqrt(&self) -> Option<GaussianRational> {
        if self.im.is_zero() {
            return if self.re.is_negative() {
                Some(GaussianRational::new(
                    Rational::zero(),
                    (-&self.re).try_sqrt()?,
                ))
            } else {
                Some(GaussianRational::real(self.re.try_sqrt()?))
            };
        }
        let modulus = self.norm().try_sqrt()?;
        let half = Rational::new(1, 2).expect("nonzero");
        let a_sq = &(&modulus + &self.re) * &half;
        let a = a_sq.try_sqrt()?;
        // im ≠ 0 forces a ≠ 0
        let b = &self.im / &(&a + &a);
        Some(GaussianRational::new(a, b))
    }

    pub fn is_canonical_root(&self) -> bool {
        self.re.is_positive() || (self.re.is_zero() && !self.im.is_negative())
    }

    /// Sign used when printing the value as a signed term: real and pure
    /// imaginary values carry their own sign, mixed values are printed in
    /// parentheses with a plus sign.
    pub(crate) fn leading_sign_negative(&self) -> bool {
        if self.im.is_zero() {
            self.re.is_negative()
        } else if self.re.is_zero() {
            self.im.is_negative()
        } else {
            false
        }
    }
}

impl From<Rational> for GaussianRational {
    fn from(q: Rational) -> Self {
        GaussianRational::real(q)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_int(n)
    }
}

fn write_imag(f: &mut fmt::Formatter<'_>, im: &Rational) -> fmt::Result {
    if im.is_one() {
        write!(f, "i")
    } else {
        write!(f, "{}*i", im)
    }
}

/// `3/2`, `-2+i`, `2*i`, `1/2-3/4*i`: every form re-parses as a scalar
/// expression.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im.is_negative() {
                    write!(f, "-")?;
                }
                write_imag(f, &self.im.abs())
            }
            (false, false) => {
                write!(f, "{}", self.re)?;
                write!(f, "{}", if self.im.is_negative() { "-" } else { "+" })?;
                write_imag(f, &self.im.abs())
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &'a GaussianRational) -> GaussianRational {
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        GaussianRational::new(re, im)
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: GaussianRational) -> GaussianRational {
        &self + &rhs
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: GaussianRational) -> GaussianRational {
        &self - &rhs
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: GaussianRational) -> GaussianRational {
        &self * &rhs
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self - rhs;
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}
