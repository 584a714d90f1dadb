use std::fmt;
use std::ops::RangeInclusive;

use dirac_core::dirac::{Component, Coupling, DiracProblem};
use dirac_core::parser::{parse_polynomial, parse_scalar, ParseError};
use dirac_core::{GaussianRational, Rational, Surd};

use crate::record::Status;
use crate::ProblemArgs;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or unparseable input.
    Input(String),
    /// An exact check that must hold failed.
    Internal(String),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Input(_) => Status::Usage,
            CliError::Internal(_) => Status::Internal,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "error: {}", msg),
            CliError::Internal(msg) => write!(f, "internal error: {}", msg),
        }
    }
}

/// Parse error with the offending input and a caret under the position.
fn positioned(flag: &str, text: &str, err: &ParseError) -> CliError {
    let pos = err.position();
    let line = text.lines().nth(pos.line - 1).unwrap_or("");
    let caret = format!("{}^", " ".repeat(pos.column - 1));
    CliError::Input(format!("--{}: {}\n  {}\n  {}", flag, err, line, caret))
}

pub fn polynomial(flag: &str, text: &str) -> Result<dirac_core::Polynomial, CliError> {
    parse_polynomial(text).map_err(|e| positioned(flag, text, &e))
}

pub fn scalar(flag: &str, text: &str) -> Result<GaussianRational, CliError> {
    parse_scalar(text).map_err(|e| positioned(flag, text, &e))
}

pub fn rational(flag: &str, text: &str) -> Result<Rational, CliError> {
    let v = scalar(flag, text)?;
    v.as_real()
        .cloned()
        .ok_or_else(|| CliError::Input(format!("--{}: {} is not real", flag, v)))
}

fn surd(flag: &str, plain: &str, squared: &Option<String>) -> Result<Surd, CliError> {
    match squared {
        Some(text) => Ok(Surd::sqrt_of(scalar(&format!("{}-squared", flag), text)?)),
        None => Ok(Surd::from(scalar(flag, plain)?)),
    }
}

pub fn problem(args: &ProblemArgs) -> Result<DiracProblem, CliError> {
    let potential = polynomial("potential", &args.potential)?;
    let component = Component::from_index(args.component).expect("clap restricts the range");
    Ok(DiracProblem {
        potential,
        mass: surd("mass", &args.mass, &args.mass_squared)?,
        energy: surd("energy", &args.energy, &args.energy_squared)?,
        coupling: args.coupling,
        component,
    })
}

pub fn list<T>(
    flag: &str,
    text: &str,
    item: impl Fn(&str) -> Result<T, CliError>,
) -> Result<Vec<T>, CliError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| item(s.trim()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| match e {
            CliError::Input(msg) if !msg.starts_with("--") => {
                CliError::Input(format!("--{}: {}", flag, msg))
            }
            other => other,
        })
}

pub fn scalars(flag: &str, text: &str) -> Result<Vec<GaussianRational>, CliError> {
    list(flag, text, |s| scalar(flag, s))
}

pub fn couplings(text: &str) -> Result<Vec<Coupling>, CliError> {
    list("couplings", text, |s| {
        s.parse::<Coupling>().map_err(CliError::Input)
    })
}

pub fn components(text: &str) -> Result<Vec<Component>, CliError> {
    list("components", text, |s| {
        s.parse::<u8>()
            .ok()
            .and_then(Component::from_index)
            .ok_or_else(|| CliError::Input(format!("component `{}` must be 1 or 2", s)))
    })
}

/// `a..b` (inclusive) or `a`.
pub fn degrees(text: &str) -> Result<RangeInclusive<usize>, CliError> {
    let bad = || CliError::Input(format!("--degrees: expected `a..b` or `a`, got `{}`", text));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    match text.split_once("..") {
        Some((a, b)) => Ok(num(a)?..=num(b.trim_start_matches('='))?),
        None => {
            let a = num(text)?;
            Ok(a..=a)
        }
    }
}
