//! Guaranteed-error evaluation of `P(x0)·exp(W(x0))`.
//!
//! Values are enclosed in fixed-point intervals `[lo, hi]·2^-p` with
//! outward rounding; the working precision doubles until truncation to the
//! requested number of decimals is the same at both ends of the enclosure.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactnum::{GaussianRational, Rational};
use crate::kovacic::{Sign, SolutionForm};
use crate::poly::Polynomial;

pub const DEFAULT_DIGIT_CAP: usize = 1000;

const MAX_PRECISION_BITS: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("digits must be between 1 and {cap}, got {got}")]
    DigitsOutOfRange { got: usize, cap: usize },
    #[error("{0} is a basis of two functions, evaluate one of them")]
    NotSingleFunction(String),
    #[error("{0} is an unevaluated quadrature")]
    Unevaluated(String),
    #[error("precision limit reached before the digits were determined")]
    PrecisionExhausted,
}

/// Decimal enclosure of a complex value, truncated toward zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxComplex {
    pub re: String,
    /// `None` when the imaginary part is exactly zero.
    pub im: Option<String>,
    pub digits: usize,
}

impl fmt::Display for ApproxComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.im {
            None => f.write_str(&self.re),
            Some(im) => match im.strip_prefix('-') {
                Some(abs) => write!(f, "{} - {}*i", self.re, abs),
                None => write!(f, "{} + {}*i", self.re, im),
            },
        }
    }
}

pub fn eval_solution(
    sol: &SolutionForm,
    x0: &Rational,
    digits: usize,
) -> Result<ApproxComplex, EvalError> {
    eval_solution_with_cap(sol, x0, digits, DEFAULT_DIGIT_CAP)
}

pub fn eval_solution_with_cap(
    sol: &SolutionForm,
    x0: &Rational,
    digits: usize,
    cap: usize,
) -> Result<ApproxComplex, EvalError> {
    check_digits(digits, cap)?;
    match sol {
        SolutionForm::PolyExp { p, omega } => eval_poly_exp(p, &omega.antiderivative(), x0, digits),
        SolutionForm::ExpSqrtConst { c, sign } => {
            let x = GaussianRational::real(x0.clone());
            if c.is_zero() || x.is_zero() {
                return Ok(exact(&GaussianRational::one(), digits));
            }
            let arg = Argument::SqrtTimes {
                c: c.clone(),
                sign: *sign,
                x0: x0.clone(),
            };
            let im_zero = c.is_real() && !c.re.is_negative();
            evaluate(&GaussianRational::one(), &arg, false, im_zero, digits)
        }
        SolutionForm::AffineBasis => Err(EvalError::NotSingleFunction(sol.to_string())),
        SolutionForm::SecondByQuadrature { .. } => Err(EvalError::Unevaluated(sol.to_string())),
    }
}

/// `P(x0)·exp(W(x0))` to `digits` decimals.
pub fn eval_poly_exp(
    p: &Polynomial,
    w: &Polynomial,
    x0: &Rational,
    digits: usize,
) -> Result<ApproxComplex, EvalError> {
    check_digits(digits, usize::MAX)?;
    let x = GaussianRational::real(x0.clone());
    let scale = p.eval(&x);
    let arg = w.eval(&x);
    if scale.is_zero() || arg.is_zero() {
        return Ok(exact(&scale, digits));
    }
    // With a real exponent, a zero part of P(x0) stays exactly zero;
    // otherwise both parts are transcendental.
    let real_arg = arg.is_real();
    let re_zero = real_arg && scale.re.is_zero();
    let im_zero = real_arg && scale.im.is_zero();
    evaluate(&scale, &Argument::Exact(arg), re_zero, im_zero, digits)
}

fn check_digits(digits: usize, cap: usize) -> Result<(), EvalError> {
    if digits == 0 || digits > cap {
        return Err(EvalError::DigitsOutOfRange { got: digits, cap });
    }
    Ok(())
}

enum Argument {
    Exact(GaussianRational),
    SqrtTimes {
        c: GaussianRational,
        sign: Sign,
        x0: Rational,
    },
}

fn exact(v: &GaussianRational, digits: usize) -> ApproxComplex {
    let part = |q: &Rational| {
        let scaled = q * &Rational::from_integer(BigInt::from(10u32).pow(digits as u32));
        format_decimal(q.is_negative(), &scaled.trunc(), digits)
    };
    ApproxComplex {
        re: part(&v.re),
        im: (!v.im.is_zero()).then(|| part(&v.im)),
        digits,
    }
}

fn evaluate(
    scale: &GaussianRational,
    arg: &Argument,
    re_zero: bool,
    im_zero: bool,
    digits: usize,
) -> Result<ApproxComplex, EvalError> {
    let zero = format_decimal(false, &BigInt::zero(), digits);
    let mut bits = digits * 10 / 3 + 64;
    while bits <= MAX_PRECISION_BITS {
        let ctx = Ctx::new(bits);
        let w = match arg {
            Argument::Exact(g) => ctx.gaussian(g),
            Argument::SqrtTimes { c, sign, x0 } => {
                let root = ctx.csqrt(c);
                let k = ctx.rational(&(x0 * &Rational::from_integer(sign.value())));
                ctx.cmul(
                    &root,
                    &Complex {
                        re: k,
                        im: ctx.exact_zero(),
                    },
                )
            }
        };
        let v = ctx.cmul(&ctx.gaussian(scale), &ctx.cexp(&w));
        let re = if re_zero {
            Some(zero.clone())
        } else {
            ctx.truncate(&v.re, digits)
        };
        let im = if im_zero {
            Some(None)
        } else {
            ctx.truncate(&v.im, digits).map(Some)
        };
        if let (Some(re), Some(im)) = (re, im) {
            return Ok(ApproxComplex { re, im, digits });
        }
        bits *= 2;
    }
    Err(EvalError::PrecisionExhausted)
}

fn format_decimal(negative: bool, t: &BigInt, digits: usize) -> String {
    let text = t.abs().to_string();
    let text = format!("{:0>width$}", text, width = digits + 1);
    let (int, frac) = text.split_at(text.len() - digits);
    format!("{}{}.{}", if negative { "-" } else { "" }, int, frac)
}

#[derive(Debug, Clone)]
struct Ival {
    lo: BigInt,
    hi: BigInt,
}

#[derive(Debug, Clone)]
struct Complex {
    re: Ival,
    im: Ival,
}

struct Ctx {
    bits: usize,
    unit: BigInt,
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -(-a).div_floor(b)
}

impl Ctx {
    fn new(bits: usize) -> Self {
        Ctx {
            bits,
            unit: BigInt::one() << bits,
        }
    }

    fn exact_zero(&self) -> Ival {
        Ival {
            lo: BigInt::zero(),
            hi: BigInt::zero(),
        }
    }

    fn rational(&self, q: &Rational) -> Ival {
        let n = q.numer() << self.bits;
        Ival {
            lo: n.div_floor(q.denom()),
            hi: ceil_div(&n, q.denom()),
        }
    }

    fn gaussian(&self, g: &GaussianRational) -> Complex {
        Complex {
            re: self.rational(&g.re),
            im: self.rational(&g.im),
        }
    }

    fn add(&self, a: &Ival, b: &Ival) -> Ival {
        Ival {
            lo: &a.lo + &b.lo,
            hi: &a.hi + &b.hi,
        }
    }

    fn sub(&self, a: &Ival, b: &Ival) -> Ival {
        Ival {
            lo: &a.lo - &b.hi,
            hi: &a.hi - &b.lo,
        }
    }

    fn mul(&self, a: &Ival, b: &Ival) -> Ival {
        let products = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
        let min = products.iter().min().expect("four products");
        let max = products.iter().max().expect("four products");
        Ival {
            lo: min.div_floor(&self.unit),
            hi: ceil_div(max, &self.unit),
        }
    }

    fn div_int(&self, a: &Ival, n: &BigInt) -> Ival {
        Ival {
            lo: a.lo.div_floor(n),
            hi: ceil_div(&a.hi, n),
        }
    }

    fn widen(&self, a: &Ival, m: &BigInt) -> Ival {
        Ival {
            lo: &a.lo - m,
            hi: &a.hi + m,
        }
    }

    fn mag(&self, a: &Ival) -> BigInt {
        a.lo.abs().max(a.hi.abs())
    }

    fn sqrt(&self, a: &Ival) -> Ival {
        let clamp = |v: &BigInt| {
            if v.is_negative() {
                BigInt::zero()
            } else {
                v.clone()
            }
        };
        Ival {
            lo: (clamp(&a.lo) << self.bits).sqrt(),
            hi: (clamp(&a.hi) << self.bits).sqrt() + 1,
        }
    }

    fn cmul(&self, a: &Complex, b: &Complex) -> Complex {
        Complex {
            re: self.sub(&self.mul(&a.re, &b.re), &self.mul(&a.im, &b.im)),
            im: self.add(&self.mul(&a.re, &b.im), &self.mul(&a.im, &b.re)),
        }
    }

    /// Principal square root of an exact value: real part ≥ 0, and the
    /// imaginary part carries the sign of `Im c`.
    fn csqrt(&self, c: &GaussianRational) -> Complex {
        let re = self.rational(&c.re);
        let modulus = self.sqrt(&self.rational(&c.norm()));
        let half = BigInt::from(2);
        let a = self.sqrt(&self.div_int(&self.add(&modulus, &re), &half));
        let b = self.sqrt(&self.div_int(&self.sub(&modulus, &re), &half));
        let b = if c.im.is_negative() {
            Ival {
                lo: -b.hi,
                hi: -b.lo,
            }
        } else if c.im.is_zero() && !c.re.is_negative() {
            self.exact_zero()
        } else {
            b
        };
        let a = if c.im.is_zero() && c.re.is_negative() {
            self.exact_zero()
        } else {
            a
        };
        Complex { re: a, im: b }
    }

    fn cexp(&self, z: &Complex) -> Complex {
        // halve until |z| ≤ 1/2, where the Taylor tail is below the last term
        let m = self.mag(&z.re) + self.mag(&z.im);
        let k = (m.bits() as usize + 1).saturating_sub(self.bits);
        let pow = BigInt::one() << k;
        let w = Complex {
            re: self.div_int(&z.re, &pow),
            im: self.div_int(&z.im, &pow),
        };

        let one = Ival {
            lo: self.unit.clone(),
            hi: self.unit.clone(),
        };
        let mut sum = Complex {
            re: one.clone(),
            im: self.exact_zero(),
        };
        let mut term = sum.clone();
        let mut n = 1u64;
        let tail = loop {
            term = self.cmul(&term, &w);
            let nn = BigInt::from(n);
            term = Complex {
                re: self.div_int(&term.re, &nn),
                im: self.div_int(&term.im, &nn),
            };
            sum = Complex {
                re: self.add(&sum.re, &term.re),
                im: self.add(&sum.im, &term.im),
            };
            let bound = self.mag(&term.re) + self.mag(&term.im);
            if bound <= BigInt::from(4) || n as usize > self.bits + 8 {
                break bound;
            }
            n += 1;
        };
        let mut acc = Complex {
            re: self.widen(&sum.re, &tail),
            im: self.widen(&sum.im, &tail),
        };
        for _ in 0..k {
            acc = self.cmul(&acc, &acc);
        }
        acc
    }

    /// Decimal truncation when both ends agree and the sign is known.
    fn truncate(&self, a: &Ival, digits: usize) -> Option<String> {
        if !(a.lo.is_positive() || a.hi.is_negative()) {
            return None;
        }
        let ten = BigInt::from(10u32).pow(digits as u32);
        let lo = (&a.lo * &ten) / &self.unit;
        let hi = (&a.hi * &ten) / &self.unit;
        (lo == hi).then(|| format_decimal(a.hi.is_negative(), &lo, digits))
    }
}
