//! Exact Liouvillian solvability analysis for the one-dimensional Dirac
//! equation with polynomial potentials.

pub mod dirac;
pub mod exactnum;
pub mod kovacic;
pub mod parser;
pub mod poly;
pub mod sweep;
pub mod verify;

pub use dirac::{Component, Coupling, DiracProblem, ReducedOde};
pub use exactnum::{GaussianRational, Rational, Surd};
pub use kovacic::{classify_by_theorem, solve, SolutionForm, TheoremPrediction, Verdict};
pub use poly::Polynomial;
