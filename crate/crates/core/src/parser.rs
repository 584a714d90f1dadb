//! Reading and printing exact polynomials over ℚ(i).
//!
//! Grammar (whitespace is insignificant between tokens):
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-' factor | atom ('^' uint)?
//! atom   := uint | 'i' | 'x' | '(' expr ')'
//! ```
//!
//! A rational literal `a/b` is read as the division `a / b`, so `3/2^2` is
//! `3/4`. Unary minus binds looser than `^`: `-x^2` is `-(x^2)`. Division is
//! only allowed by nonzero constants, and there is no implicit
//! multiplication. Expressions are expanded while parsing, so callers only
//! ever see a [`Polynomial`].
//!
//! Solution expressions additionally accept `exp(expr)` as an atom, e.g.
//! `(x^2 - 1/2) * exp(-1/2*x^2)`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::exactnum::{GaussianRational, Rational};
use crate::poly::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourcePosition {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
}

impl SourcePosition {
    fn locate(input: &str, offset: usize) -> Self {
        let offset = offset.min(input.len());
        let before = &input[..offset];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |p| p + 1);
        let column = before[line_start..].chars().count() + 1;
        SourcePosition {
            offset,
            line,
            column,
        }
    }
}

impl fmt::Display for SourcePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {message}")]
    Syntax {
        pos: SourcePosition,
        message: String,
    },
    #[error("not a polynomial at {pos}: {message}")]
    NonPolynomial {
        pos: SourcePosition,
        message: String,
    },
    #[error("exponent or degree at {pos} exceeds the cap of {cap}")]
    ExponentCap { pos: SourcePosition, cap: u32 },
    #[error("division by zero at {pos}")]
    DivisionByZero { pos: SourcePosition },
    #[error("expected a constant but found `x` at {pos}")]
    NonConstant { pos: SourcePosition },
}

impl ParseError {
    pub fn position(&self) -> SourcePosition {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::NonPolynomial { pos, .. }
            | ParseError::ExponentCap { pos, .. }
            | ParseError::DivisionByZero { pos }
            | ParseError::NonConstant { pos } => *pos,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParserConfig {
    /// Largest literal exponent accepted after `^`.
    pub exponent_cap: u32,
    /// Largest degree any intermediate polynomial may reach.
    pub degree_cap: usize,
}

impl Default for ParserConfig {
    fn default() -> Self {
        ParserConfig {
            exponent_cap: 64,
            degree_cap: 256,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Uint(BigUint),
    X,
    I,
    Exp,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Uint(n) => write!(f, "`{}`", n),
            Tok::X => write!(f, "`x`"),
            Tok::I => write!(f, "`i`"),
            Tok::Exp => write!(f, "`exp`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn tokenize(input: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let syntax = |offset: usize, message: String| ParseError::Syntax {
        pos: SourcePosition::locate(input, offset),
        message,
    };
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(start, ch)) = chars.peek() {
        if ch.is_whitespace() {
            chars.next();
            continue;
        }
        if ch.is_ascii_digit() {
            let mut end = start;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
                chars.next();
            }
            let n: BigUint = input[start..end].parse().expect("ascii digits");
            toks.push((Tok::Uint(n), start));
            continue;
        }
        if ch.is_alphabetic() {
            let mut end = start;
            while let Some(&(p, c)) = chars.peek() {
                if !c.is_alphanumeric() {
                    break;
                }
                end = p + c.len_utf8();
                chars.next();
            }
            let tok = match &input[start..end] {
                "x" => Tok::X,
                "i" => Tok::I,
                "exp" => Tok::Exp,
                word => {
                    return Err(syntax(
                        start,
                        format!(
                            "unknown identifier `{}` (only `x` and `i` are allowed; write products with `*`)",
                            word
                        ),
                    ))
                }
            };
            toks.push((tok, start));
            continue;
        }
        let tok = match ch {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(syntax(start, format!("unexpected character {:?}", other))),
        };
        toks.push((tok, start));
        chars.next();
    }
    toks.push((Tok::End, input.len()));
    Ok(toks)
}

/// Intermediate value: a polynomial, or a polynomial times `exp` of one.
#[derive(Clone)]
enum Value {
    Poly(Polynomial),
    PolyExp(Polynomial, Polynomial),
}

struct Parser<'a> {
    input: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    config: ParserConfig,
    allow_exp: bool,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str, config: ParserConfig, allow_exp: bool) -> Result<Self, ParseError> {
        Ok(Parser {
            input,
            toks: tokenize(input)?,
            pos: 0,
            config,
            allow_exp,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn here(&self) -> SourcePosition {
        SourcePosition::locate(self.input, self.offset())
    }

    fn at(&self, offset: usize) -> SourcePosition {
        SourcePosition::locate(self.input, offset)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.here(),
            message: message.into(),
        })
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.syntax(format!("expected {} but found {}", want, self.peek()))
        }
    }

    fn check_degree(&self, v: &Value, offset: usize) -> Result<(), ParseError> {
        let over = |p: &Polynomial| p.degree().is_some_and(|d| d > self.config.degree_cap);
        let bad = match v {
            Value::Poly(p) => over(p),
            Value::PolyExp(p, w) => over(p) || over(w),
        };
        if bad {
            return Err(ParseError::ExponentCap {
                pos: self.at(offset),
                cap: self.config.degree_cap as u32,
            });
        }
        Ok(())
    }

    fn parse_all(&mut self) -> Result<Value, ParseError> {
        let v = self.expr()?;
        if *self.peek() != Tok::End {
            let msg = match self.peek() {
                Tok::X | Tok::I | Tok::Uint(_) | Tok::LParen | Tok::Exp => {
                    format!(
                        "unexpected {} (implicit multiplication is not allowed)",
                        self.peek()
                    )
                }
                other => format!("unexpected {}", other),
            };
            return self.syntax(msg);
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.term()?;
        loop {
            let negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(acc),
            };
            let op_offset = self.offset();
            self.bump();
            let rhs = self.term()?;
            acc = match (acc, rhs) {
                (Value::Poly(a), Value::Poly(b)) => {
                    Value::Poly(if negate { &a - &b } else { &a + &b })
                }
                _ => {
                    return Err(ParseError::NonPolynomial {
                        pos: self.at(op_offset),
                        message: "sums involving exp(...) are not supported".into(),
                    })
                }
            };
        }
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    let op_offset = self.offset();
                    self.bump();
                    let rhs = self.factor()?;
                    acc = match (acc, rhs) {
                        (Value::Poly(a), Value::Poly(b)) => Value::Poly(&a * &b),
                        (Value::Poly(a), Value::PolyExp(p, w))
                        | (Value::PolyExp(p, w), Value::Poly(a)) => Value::PolyExp(&a * &p, w),
                        (Value::PolyExp(p1, w1), Value::PolyExp(p2, w2)) => {
                            Value::PolyExp(&p1 * &p2, &w1 + &w2)
                        }
                    };
                    self.check_degree(&acc, op_offset)?;
                }
                Tok::Slash => {
                    self.bump();
                    let div_offset = self.offset();
                    let rhs = self.factor()?;
                    let c = match rhs {
                        Value::Poly(p) if p.is_constant() => p.coeff(0),
                        _ => {
                            return Err(ParseError::NonPolynomial {
                                pos: self.at(div_offset),
                                message: "divisor must be a constant".into(),
                            })
                        }
                    };
                    let inv = c.inv().map_err(|_| ParseError::DivisionByZero {
                        pos: self.at(div_offset),
                    })?;
                    acc = match acc {
                        Value::Poly(p) => Value::Poly(p.scale(&inv)),
                        Value::PolyExp(p, w) => Value::PolyExp(p.scale(&inv), w),
                    };
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Value, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(match self.factor()? {
                Value::Poly(p) => Value::Poly(-p),
                Value::PolyExp(p, w) => Value::PolyExp(-p, w),
            });
        }
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let caret_offset = self.offset();
        self.bump();
        let exp_offset = self.offset();
        let k = match self.peek().clone() {
            Tok::Uint(n) => {
                self.bump();
                n
            }
            Tok::Minus | Tok::LParen | Tok::X | Tok::I | Tok::Exp => {
                return Err(ParseError::NonPolynomial {
                    pos: self.at(exp_offset),
                    message: "exponent must be a nonnegative integer literal".into(),
                })
            }
            other => return self.syntax(format!("expected an exponent but found {}", other)),
        };
        let k = match k.to_u32().filter(|&k| k <= self.config.exponent_cap) {
            Some(k) => k,
            None => {
                return Err(ParseError::ExponentCap {
                    pos: self.at(exp_offset),
                    cap: self.config.exponent_cap,
                })
            }
        };
        let projected = |p: &Polynomial| p.degree().unwrap_or(0).saturating_mul(k as usize);
        let too_big = match &base {
            Value::Poly(p) => projected(p) > self.config.degree_cap,
            Value::PolyExp(p, w) => {
                projected(p) > self.config.degree_cap
                    || w.degree().unwrap_or(0) > self.config.degree_cap
            }
        };
        if too_big {
            return Err(ParseError::ExponentCap {
                pos: self.at(caret_offset),
                cap: self.config.degree_cap as u32,
            });
        }
        Ok(match base {
            Value::Poly(p) => Value::Poly(p.pow(k)),
            Value::PolyExp(p, w) => {
                Value::PolyExp(p.pow(k), w.scale(&GaussianRational::from_int(k as i64)))
            }
        })
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        match self.bump() {
            Tok::Uint(n) => Ok(Value::Poly(Polynomial::constant(GaussianRational::real(
                Rational::from_integer(n),
            )))),
            Tok::X => Ok(Value::Poly(Polynomial::x())),
            Tok::I => Ok(Value::Poly(Polynomial::constant(GaussianRational::i()))),
            Tok::LParen => {
                let v = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            Tok::Exp if self.allow_exp => {
                let open = self.offset();
                self.expect(Tok::LParen)?;
                let arg = self.expr()?;
                self.expect(Tok::RParen)?;
                match arg {
                    Value::Poly(w) => Ok(Value::PolyExp(Polynomial::one(), w)),
                    Value::PolyExp(..) => Err(ParseError::NonPolynomial {
                        pos: self.at(open),
                        message: "nested exp(...) is not supported".into(),
                    }),
                }
            }
            other => {
                // step back so the error points at the offending token
                self.pos = self.pos.saturating_sub(usize::from(other != Tok::End));
                self.syntax(format!(
                    "expected a number, `x`, `i` or `(` but found {}",
                    other
                ))
            }
        }
    }
}

pub fn parse_polynomial(text: &str) -> Result<Polynomial, ParseError> {
    parse_polynomial_with(text, ParserConfig::default())
}

pub fn parse_polynomial_with(text: &str, config: ParserConfig) -> Result<Polynomial, ParseError> {
    match Parser::new(text, config, false)?.parse_all()? {
        Value::Poly(p) => Ok(p),
        Value::PolyExp(..) => unreachable!("exp is rejected by the tokenizer in polynomial mode"),
    }
}

/// Parse a constant expression such as `3/2`, `-2+i` or `2*i`.
pub fn parse_scalar(text: &str) -> Result<GaussianRational, ParseError> {
    let parser = Parser::new(text, ParserConfig::default(), false)?;
    if let Some(&(_, offset)) = parser.toks.iter().find(|(t, _)| *t == Tok::X) {
        return Err(ParseError::NonConstant {
            pos: SourcePosition::locate(text, offset),
        });
    }
    let p = parse_polynomial(text)?;
    Ok(p.coeff(0))
}

/// Parse `P * exp(W)` (either factor may be omitted, and several `exp`
/// factors multiply out) into the pair `(P, W)`.
pub fn parse_solution(text: &str) -> Result<(Polynomial, Polynomial), ParseError> {
    match Parser::new(text, ParserConfig::default(), true)?.parse_all()? {
        Value::Poly(p) => Ok((p, Polynomial::zero())),
        Value::PolyExp(p, w) => Ok((p, w)),
    }
}

fn format_term(c: &GaussianRational, power: usize) -> (bool, String) {
    let negative = c.leading_sign_negative();
    let mag = if negative { -c } else { c.clone() };
    let coeff = if mag.is_one() && power > 0 {
        String::new()
    } else if mag.is_real() || mag.re.is_zero() {
        mag.to_string()
    } else {
        format!("({})", mag)
    };
    let mono = match power {
        0 => String::new(),
        1 => "x".to_string(),
        k => format!("x^{}", k),
    };
    let body = match (coeff.is_empty(), mono.is_empty()) {
        (true, _) => mono,
        (false, true) => coeff,
        (false, false) => format!("{}*{}", coeff, mono),
    };
    (negative, body)
}

/// Canonical descending-power form, e.g. `x^3 - 1/2*x + 2`.
pub fn format(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (power, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let (negative, body) = format_term(c, power);
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::strategies::polynomial;
    use proptest::prelude::*;

    fn q(s: &str) -> GaussianRational {
        GaussianRational::real(s.parse().unwrap())
    }

    #[test]
    fn reads_coefficients() {
        let p = parse_polynomial("x^3 - (1/2)*x + 2").unwrap();
        assert_eq!(p.coeffs(), &[q("2"), q("-1/2"), q("0"), q("1")]);
        assert!(parse_polynomial("0").unwrap().is_zero());
        assert_eq!(format(&p), "x^3 - 1/2*x + 2");
    }

    #[test]
    fn rejects_division_by_x() {
        let err = parse_polynomial("1/x").unwrap_err();
        assert!(matches!(err, ParseError::NonPolynomial { pos, .. } if pos.offset == 2));
    }

    #[test]
    fn rejects_bad_exponents() {
        assert!(matches!(
            parse_polynomial("x^-1"),
            Err(ParseError::NonPolynomial { .. })
        ));
        assert!(matches!(
            parse_polynomial("x^(1/2)"),
            Err(ParseError::NonPolynomial { .. })
        ));
        assert!(matches!(
            parse_polynomial("x^65"),
            Err(ParseError::ExponentCap { cap: 64, .. })
        ));
        assert!(matches!(
            parse_polynomial("x^99999999999999999999"),
            Err(ParseError::ExponentCap { .. })
        ));
        assert!(matches!(
            parse_polynomial("((x^64)^64)^64"),
            Err(ParseError::ExponentCap { .. })
        ));
        let cfg = ParserConfig {
            exponent_cap: 3,
            degree_cap: 256,
        };
        assert!(parse_polynomial_with("x^4", cfg).is_err());
        assert!(parse_polynomial_with("x^3", cfg).is_ok());
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        assert_eq!(
            parse_polynomial("-x^2").unwrap(),
            Polynomial::from_ints(&[0, 0, -1])
        );
        assert_eq!(
            parse_polynomial("(-x)^2").unwrap(),
            Polynomial::from_ints(&[0, 0, 1])
        );
        assert_eq!(parse_polynomial("3/2^2").unwrap().coeff(0), q("3/4"));
        assert_eq!(
            parse_polynomial("1 - 2*x + 3").unwrap(),
            Polynomial::from_ints(&[4, -2])
        );
    }

    #[test]
    fn implicit_multiplication_is_an_error() {
        for text in ["2x", "ix", "x x", "2(x+1)", "x(1)"] {
            assert!(
                matches!(parse_polynomial(text), Err(ParseError::Syntax { .. })),
                "{text}"
            );
        }
        let err = parse_polynomial("2x").unwrap_err();
        assert_eq!(err.position().column, 2);
    }

    #[test]
    fn positions_track_lines() {
        let err = parse_polynomial("x +\n  $").unwrap_err();
        let pos = err.position();
        assert_eq!((pos.line, pos.column, pos.offset), (2, 3, 6));
        let err = parse_polynomial("(x + 1").unwrap_err();
        assert_eq!(err.position().offset, 6);
        let err = parse_polynomial("").unwrap_err();
        assert_eq!(err.position().offset, 0);
    }

    #[test]
    fn scalars() {
        assert_eq!(
            parse_scalar("-2+i").unwrap(),
            GaussianRational::from_ints(-2, 1)
        );
        assert_eq!(parse_scalar("3/2").unwrap(), q("3/2"));
        assert_eq!(
            parse_scalar("2*i").unwrap(),
            GaussianRational::from_ints(0, 2)
        );
        assert!(matches!(
            parse_scalar("x"),
            Err(ParseError::NonConstant { .. })
        ));
        assert!(matches!(
            parse_scalar("1/0"),
            Err(ParseError::DivisionByZero { .. })
        ));
    }

    #[test]
    fn format_examples() {
        assert_eq!(format(&Polynomial::zero()), "0");
        let p = Polynomial::new(vec![GaussianRational::zero(), GaussianRational::i()]);
        assert_eq!(format(&p), "i*x");
        let p = Polynomial::new(vec![
            GaussianRational::from_ints(1, -1),
            GaussianRational::from_ints(0, -3),
            GaussianRational::from_ints(-1, 0),
        ]);
        assert_eq!(format(&p), "-x^2 - 3*i*x + (1-i)");
    }

    #[test]
    fn solutions() {
        let (p, w) = parse_solution("exp(x + x^3/3)").unwrap();
        assert_eq!(p, Polynomial::one());
        assert_eq!(w.coeff(3), q("1/3"));
        let (p, w) = parse_solution("(x^2 - 1/2) * exp(-1/2*x^2)").unwrap();
        assert_eq!(p, parse_polynomial("x^2 - 1/2").unwrap());
        assert_eq!(w, parse_polynomial("-x^2/2").unwrap());
        let (p, w) = parse_solution("2*exp(x)*exp(x)/4").unwrap();
        assert_eq!(p.coeff(0), q("1/2"));
        assert_eq!(w, parse_polynomial("2*x").unwrap());
        assert!(parse_solution("exp(x) + 1").is_err());
        assert!(parse_solution("exp(exp(x))").is_err());
        assert!(parse_polynomial("exp(x)").is_err());
    }

    proptest! {
        #[test]
        fn format_round_trips(p in polynomial(13)) {
            let text = format(&p);
            prop_assert_eq!(parse_polynomial(&text).unwrap(), p);
        }

        #[test]
        fn parsing_is_total(bytes in proptest::collection::vec(any::<u8>(), 0..40)) {
            let text = String::from_utf8_lossy(&bytes);
            match parse_polynomial(&text) {
                Ok(p) => prop_assert_eq!(parse_polynomial(&format(&p)).unwrap(), p),
                Err(e) => prop_assert!(e.position().offset <= text.len()),
            }
        }
    }
}
