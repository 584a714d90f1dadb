use std::fmt;

use super::{ExactError, GaussianRational};

/// `coeff · √radicand` with `√` the canonical branch (`re > 0`, or `re = 0`
/// and `im ≥ 0`).
///
/// Parameters such as the energy of a Dirac oscillator level enter the
/// second-order equation only through their square, so they are allowed to
/// sit in a quadratic extension of ℚ(i). A value whose radicand is a square
/// in ℚ(i) is folded into `coeff` with radicand 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    coeff: GaussianRational,
    radicand: GaussianRational,
}

impl Surd {
    pub fn new(coeff: GaussianRational, radicand: GaussianRational) -> Self {
        if coeff.is_zero() || radicand.is_zero() {
            return Surd::from(GaussianRational::zero());
        }
        match radicand.try_sqrt() {
            Some(root) => Surd::from(&coeff * &root),
            None => Surd { coeff, radicand },
        }
    }

    /// The canonical square root of `c`.
    pub fn sqrt_of(c: GaussianRational) -> Self {
        Surd::new(GaussianRational::one(), c)
    }

    pub fn zero() -> Self {
        Surd::from(GaussianRational::zero())
    }

    pub fn coeff(&self) -> &GaussianRational {
        &self.coeff
    }

    pub fn radicand(&self) -> &GaussianRational {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// The value, when it lies in ℚ(i).
    pub fn value(&self) -> Option<&GaussianRational> {
        self.radicand.is_one().then_some(&self.coeff)
    }

    pub fn square(&self) -> GaussianRational {
        &(&self.coeff * &self.coeff) * &self.radicand
    }

    pub fn scale(&self, k: &GaussianRational) -> Surd {
        Surd::new(k * &self.coeff, self.radicand.clone())
    }

    pub fn neg(&self) -> Surd {
        self.scale(&GaussianRational::from_int(-1))
    }

    /// 1/(c·√d) = √d / (c·d).
    pub fn inv(&self) -> Result<Surd, ExactError> {
        let denom = &self.coeff * &self.radicand;
        Ok(Surd::new(denom.inv()?, self.radicand.clone()))
    }

    /// Product, defined when the radicands agree or one factor lies in ℚ(i).
    /// For distinct radicands the branch of the product root is not
    /// determined symbolically.
    pub fn checked_mul(&self, rhs: &Surd) -> Option<Surd> {
        if let Some(v) = rhs.value() {
            return Some(self.scale(v));
        }
        if let Some(v) = self.value() {
            return Some(rhs.scale(v));
        }
        if self.radicand == rhs.radicand {
            let c = &(&self.coeff * &rhs.coeff) * &self.radicand;
            return Some(Surd::from(c));
        }
        None
    }
}

impl From<GaussianRational> for Surd {
    fn from(v: GaussianRational) -> Self {
        Surd {
            coeff: v,
            radicand: GaussianRational::one(),
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.value() {
            return write!(f, "{}", v);
        }
        let c = &self.coeff;
        if c.is_one() {
        } else if (-c).is_one() {
            write!(f, "-")?;
        } else if c.is_real() || c.re.is_zero() {
            write!(f, "{}*", c)?;
        } else {
            write!(f, "({})*", c)?;
        }
        write!(f, "sqrt({})", self.radicand)
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
