//! Dirac problems, their second-order reductions, and spinor completion.
//!
//! Scalar coupling uses α = [[0, i], [−i, 0]], β = [[0, 1], [1, 0]] and
//! `U = m + V`, giving
//!
//! ```text
//! ψ1' =  U ψ1 − E ψ2        ψ1'' = ( U' + U² − E²) ψ1
//! ψ2' = −U ψ2 + E ψ1        ψ2'' = (−U' + U² − E²) ψ2
//! ```
//!
//! Vector coupling uses α = diag(1, −1), β = [[0, 1], [1, 0]] and
//! `U = V + E`, giving
//!
//! ```text
//! ψ1' =  iU ψ1 − im ψ2      ψ1'' = ( iU' − U² + m²) ψ1
//! ψ2' = −iU ψ2 + im ψ1      ψ2'' = (−iU' − U² + m²) ψ2
//! ```

use std::fmt;

use thiserror::Error;

use crate::exactnum::{GaussianRational, Surd};
use crate::kovacic::SolutionForm;
use crate::poly::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coupling {
    Scalar,
    Vector,
}

impl fmt::Display for Coupling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coupling::Scalar => "scalar",
            Coupling::Vector => "vector",
        })
    }
}

impl std::str::FromStr for Coupling {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "scalar" => Ok(Coupling::Scalar),
            "vector" => Ok(Coupling::Vector),
            other => Err(format!(
                "unknown coupling `{}` (expected scalar|vector)",
                other
            )),
        }
    }
}

/// Which spinor component the second-order equation governs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    First,
    Second,
}

impl Component {
    pub fn index(self) -> u8 {
        match self {
            Component::First => 1,
            Component::Second => 2,
        }
    }

    pub fn from_index(k: u8) -> Option<Self> {
        match k {
            1 => Some(Component::First),
            2 => Some(Component::Second),
            _ => None,
        }
    }

    fn sign(self) -> i64 {
        match self {
            Component::First => 1,
            Component::Second => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiracError {
    #[error("the correspondence map applies to vector coupling only")]
    WrongCoupling,
    #[error("{name} = {value} must lie in Q(i): it shifts the potential")]
    ShiftNotInField { name: &'static str, value: String },
    #[error("spinor completion needs a polynomial-times-exponential solution, got {0}")]
    UnsupportedForm(String),
    #[error("with the coupling constant zero the components decouple, and {0} does not solve the first-order equation")]
    NotASpinorComponent(String),
    #[error("{0} solves the second-order equation but yields a vanishing partner component")]
    VanishingPartner(String),
}

/// Potential, mass, energy, coupling and component.
///
/// Mass and energy are [`Surd`]s: the parameter that enters the reduction
/// only through its square (E for scalar coupling, m for vector coupling)
/// may lie outside ℚ(i), as it does for most Dirac-oscillator levels. The
/// other parameter shifts the potential and must lie in ℚ(i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiracProblem {
    pub potential: Polynomial,
    pub mass: Surd,
    pub energy: Surd,
    pub coupling: Coupling,
    pub component: Component,
}

impl DiracProblem {
    pub fn scalar(potential: Polynomial, mass: GaussianRational, energy: Surd) -> Self {
        DiracProblem {
            potential,
            mass: Surd::from(mass),
            energy,
            coupling: Coupling::Scalar,
            component: Component::First,
        }
    }

    pub fn vector(potential: Polynomial, mass: Surd, energy: GaussianRational) -> Self {
        DiracProblem {
            potential,
            mass,
            energy: Surd::from(energy),
            coupling: Coupling::Vector,
            component: Component::First,
        }
    }

    pub fn with_component(mut self, component: Component) -> Self {
        self.component = component;
        self
    }

    /// `U = m + V` (scalar) or `U = V + E` (vector).
    pub fn shifted_potential(&self) -> Result<Polynomial, DiracError> {
        let (name, shift) = match self.coupling {
            Coupling::Scalar => ("m", &self.mass),
            Coupling::Vector => ("E", &self.energy),
        };
        let shift = shift.value().ok_or_else(|| DiracError::ShiftNotInField {
            name,
            value: shift.to_string(),
        })?;
        Ok(&self.potential + &Polynomial::constant(shift.clone()))
    }

    /// Degree of the potential; a zero potential counts as degree 0.
    pub fn potential_degree(&self) -> usize {
        self.potential.degree().unwrap_or(0)
    }
}

impl fmt::Display for DiracProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} coupling, V = {}, m = {}, E = {}, component {}",
            self.coupling,
            self.potential,
            self.mass,
            self.energy,
            self.component.index()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub coupling: Coupling,
    pub component: Component,
    /// Sign in front of the `U'` term.
    pub derivative_sign: i8,
    pub alpha: &'static str,
    pub beta: &'static str,
}

/// `f'' = r f` together with the shifted potential it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedOde {
    pub r: Polynomial,
    pub shift: Polynomial,
    pub provenance: Provenance,
}

pub fn reduce(problem: &DiracProblem) -> Result<ReducedOde, DiracError> {
    let u = problem.shifted_potential()?;
    let sign = GaussianRational::from_int(problem.component.sign());
    let u2 = &u * &u;
    let (r, alpha) = match problem.coupling {
        Coupling::Scalar => {
            let du = u.derivative().scale(&sign);
            let e2 = Polynomial::constant(problem.energy.square());
            (&(&du + &u2) - &e2, "[[0, i], [-i, 0]]")
        }
        Coupling::Vector => {
            let du = u.derivative().scale(&sign.mul_i());
            let m2 = Polynomial::constant(problem.mass.square());
            (&(&du - &u2) + &m2, "diag(1, -1)")
        }
    };
    Ok(ReducedOde {
        r,
        shift: u,
        provenance: Provenance {
            coupling: problem.coupling,
            component: problem.component,
            derivative_sign: problem.component.sign() as i8,
            alpha,
            beta: "[[0, 1], [1, 0]]",
        },
    })
}

/// Scalar problem equivalent to a vector one.
///
/// Substituting `V → −iV, E → −im, m → iE` into the vector equations yields
/// the scalar equations, so the scalar parameters are recovered from the
/// vector ones as `V = i·V_vec`, `m = i·E_vec`, `E = −i·m_vec`.
pub fn vector_to_scalar_map(problem: &DiracProblem) -> Result<DiracProblem, DiracError> {
    if problem.coupling != Coupling::Vector {
        return Err(DiracError::WrongCoupling);
    }
    let i = GaussianRational::i();
    Ok(DiracProblem {
        potential: problem.potential.scale(&i),
        mass: problem.energy.scale(&i),
        energy: problem.mass.scale(&-&i),
        coupling: Coupling::Scalar,
        component: problem.component,
    })
}

/// The substitution `V → −iV, E → −im, m → iE` applied to a scalar
/// problem's parameters, read as a vector problem.
pub fn scalar_to_vector_map(problem: &DiracProblem) -> Result<DiracProblem, DiracError> {
    if problem.coupling != Coupling::Scalar {
        return Err(DiracError::WrongCoupling);
    }
    let i = GaussianRational::i();
    Ok(DiracProblem {
        potential: problem.potential.scale(&-&i),
        mass: problem.energy.scale(&i),
        energy: problem.mass.scale(&-&i),
        coupling: Coupling::Vector,
        component: problem.component,
    })
}

/// `ψ1' = a ψ1 + b ψ2`, `ψ2' = c ψ2 + d ψ1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstOrderSystem {
    pub a: Polynomial,
    pub b: Surd,
    pub c: Polynomial,
    pub d: Surd,
}

impl FirstOrderSystem {
    pub fn is_decoupled(&self) -> bool {
        self.b.is_zero() && self.d.is_zero()
    }
}

pub fn first_order_system(problem: &DiracProblem) -> Result<FirstOrderSystem, DiracError> {
    let u = problem.shifted_potential()?;
    Ok(match problem.coupling {
        Coupling::Scalar => FirstOrderSystem {
            a: u.clone(),
            b: problem.energy.neg(),
            c: -&u,
            d: problem.energy.clone(),
        },
        Coupling::Vector => {
            let i = GaussianRational::i();
            let iu = u.scale(&i);
            FirstOrderSystem {
                a: iu.clone(),
                b: problem.mass.scale(&-&i),
                c: -&iu,
                d: problem.mass.scale(&i),
            }
        }
    })
}

/// `scale · form`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinorComponent {
    pub scale: Surd,
    pub form: SolutionForm,
}

impl SpinorComponent {
    pub fn unit(form: SolutionForm) -> Self {
        SpinorComponent {
            scale: Surd::from(GaussianRational::one()),
            form,
        }
    }
}

impl fmt::Display for SpinorComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.scale.value() {
            Some(v) if v.is_one() => write!(f, "{}", self.form),
            Some(v) if v.is_real() || v.re.is_zero() => write!(f, "{} * {}", v, self.form),
            Some(v) => write!(f, "({}) * {}", v, self.form),
            None => write!(f, "{} * {}", self.scale, self.form),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spinor {
    pub psi1: SpinorComponent,
    pub psi2: SpinorComponent,
    /// True when the coupling constant vanishes and each component solves
    /// its own first-order equation.
    pub decoupled: bool,
}

/// Recover the other spinor component from a solution of the reduced
/// equation for `problem.component`.
///
/// Solving `ψ1' = a ψ1 + b ψ2` for ψ2 gives `ψ2 = (P' + (ω − a) P)/b · e^{∫ω}`
/// (and symmetrically for a known ψ2). When `b = d = 0` the system
/// decouples and the partner is `exp(∫c)` (respectively `exp(∫a)`).
pub fn complete_spinor(problem: &DiracProblem, known: &SolutionForm) -> Result<Spinor, DiracError> {
    let (p, omega) = known
        .as_poly_exp()
        .ok_or_else(|| DiracError::UnsupportedForm(known.to_string()))?;
    let sys = first_order_system(problem)?;
    let (own, own_coupling, partner_rate, partner_coupling) = match problem.component {
        Component::First => (&sys.a, &sys.b, &sys.c, &sys.d),
        Component::Second => (&sys.c, &sys.d, &sys.a, &sys.b),
    };
    // known' − own·known, divided by the exponential factor
    let q = &(&p.derivative() + &(&omega * &p)) - &(own * &p);
    let known_component = SpinorComponent::unit(SolutionForm::PolyExp {
        p: p.clone(),
        omega: omega.clone(),
    });
    let (partner, decoupled) = if own_coupling.is_zero() && partner_coupling.is_zero() {
        if !q.is_zero() {
            return Err(DiracError::NotASpinorComponent(known.to_string()));
        }
        let form = SolutionForm::PolyExp {
            p: Polynomial::one(),
            omega: partner_rate.clone(),
        };
        (SpinorComponent::unit(form), true)
    } else {
        let lead = q
            .leading()
            .cloned()
            .ok_or_else(|| DiracError::VanishingPartner(known.to_string()))?;
        let scale = own_coupling
            .inv()
            .expect("coupling constant is nonzero here")
            .scale(&lead);
        let form = SolutionForm::PolyExp {
            p: q.monic(),
            omega,
        };
        (SpinorComponent { scale, form }, false)
    };
    let (psi1, psi2) = match problem.component {
        Component::First => (known_component, partner),
        Component::Second => (partner, known_component),
    };
    Ok(Spinor {
        psi1,
        psi2,
        decoupled,
    })
}
