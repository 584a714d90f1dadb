//! Output records: JSON with sorted keys and exact values as strings, or
//! plain text.

use serde_json::{json, Map, Value};

use dirac_core::dirac::{DiracProblem, ReducedOde, Spinor, SpinorComponent};
use dirac_core::kovacic::{CandidateResult, Certificate, Route, SolutionForm, TheoremPrediction};
use dirac_core::verify::SpinorCheck;

use crate::Format;

pub const SCHEMA: &str = "dirac-liouville/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// Solvable, or the check passed.
    Positive,
    /// Not solvable, or the check failed.
    Negative,
    Usage,
    Internal,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Positive => 0,
            Status::Negative => 10,
            Status::Usage => 2,
            Status::Internal => 3,
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Positive
        } else {
            Status::Negative
        }
    }
}

pub struct Outcome {
    pub command: Value,
    /// Fields merged into the top-level record.
    pub payload: Map<String, Value>,
    pub text: Vec<String>,
    pub status: Status,
}

pub fn render(outcome: &Outcome, format: Format, ms: u64) -> String {
    match format {
        Format::Json => {
            let mut map = outcome.payload.clone();
            map.insert("schema".into(), json!(SCHEMA));
            map.insert("command".into(), outcome.command.clone());
            map.insert("ms".into(), json!(ms));
            let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = outcome.text.join("\n");
            s.push('\n');
            s
        }
    }
}

pub fn problem_echo(name: &str, p: &DiracProblem) -> Value {
    json!({
        "name": name,
        "coupling": p.coupling.to_string(),
        "potential": p.potential.to_string(),
        "mass": p.mass.to_string(),
        "energy": p.energy.to_string(),
        "component": p.component.index(),
    })
}

pub fn reduction(red: &ReducedOde) -> Value {
    json!({
        "r": red.r.to_string(),
        "U": red.shift.to_string(),
        "alpha": red.provenance.alpha,
        "beta": red.provenance.beta,
        "derivative_sign": red.provenance.derivative_sign,
    })
}

pub fn route_name(route: Route) -> &'static str {
    match route {
        Route::ZeroCoefficient => "zero_coefficient",
        Route::ConstantCoefficient => "constant_coefficient",
        Route::OddDegree => "odd_degree",
        Route::Case1 => "case1",
    }
}

pub fn certificate(cert: &Certificate) -> Value {
    let mut map = Map::new();
    map.insert("route".into(), json!(route_name(cert.route)));
    if let Some(ex) = &cert.exclusion {
        map.insert("case_exclusion".into(), json!(ex.lines()));
    }
    if let Some(d) = &cert.case1 {
        map.insert(
            "case1".into(),
            json!({
                "s": d.s.to_string(),
                "nu": d.nu,
                "a": d.a.to_string(),
                "b": d.b.to_string(),
            }),
        );
    }
    let candidates: Vec<Value> = cert
        .candidates
        .iter()
        .map(|c| {
            let mut m = Map::new();
            m.insert("sign".into(), json!(c.sign.to_string()));
            m.insert("omega".into(), json!(c.omega.to_string()));
            m.insert("d".into(), json!(c.degree.to_string()));
            match &c.result {
                CandidateResult::DegreeNotNonnegativeInteger => {
                    m.insert("result".into(), json!("degree_not_nonnegative_integer"));
                }
                CandidateResult::Inconsistent { obstruction, .. } => {
                    m.insert("result".into(), json!("inconsistent"));
                    m.insert("obstruction".into(), json!(obstruction.to_string()));
                }
                CandidateResult::Found { p } => {
                    m.insert("result".into(), json!("found"));
                    m.insert("P".into(), json!(p.to_string()));
                }
            }
            Value::Object(m)
        })
        .collect();
    map.insert("candidates".into(), Value::Array(candidates));
    Value::Object(map)
}

pub fn certificate_text(cert: &Certificate) -> Vec<String> {
    let mut out = vec![format!("  route: {}", route_name(cert.route))];
    if let Some(ex) = &cert.exclusion {
        out.extend(ex.lines().into_iter().map(|l| format!("  {}", l)));
    }
    if let Some(d) = &cert.case1 {
        out.push(format!(
            "  sqrt(r) at infinity: s = {}, nu = {}, a = {}, b = {}",
            d.s, d.nu, d.a, d.b
        ));
    }
    out.extend(cert.candidates.iter().map(|c| format!("  candidate {}", c)));
    out
}

pub fn theorem(t: &TheoremPrediction) -> Value {
    json!({
        "solvable": t.solvable,
        "reason": t.to_string(),
    })
}

/// `(P, W)` strings for a component, when it has that shape.
fn p_and_w(form: &SolutionForm) -> (String, String) {
    match form {
        SolutionForm::PolyExp { p, omega } => (p.to_string(), omega.antiderivative().to_string()),
        SolutionForm::ExpSqrtConst { c, sign } => match form.as_poly_exp() {
            Some((p, w)) => (p.to_string(), w.antiderivative().to_string()),
            None => {
                let s = if sign.value() < 0 { "-" } else { "" };
                ("1".into(), format!("{}sqrt({})*x", s, c))
            }
        },
        SolutionForm::AffineBasis => ("1, x".into(), "0".into()),
        SolutionForm::SecondByQuadrature { .. } => (String::new(), String::new()),
    }
}

pub fn solution_entry(component: u8, sc: &SpinorComponent) -> Value {
    let (p, w) = p_and_w(&sc.form);
    json!({
        "component": component,
        "P": p,
        "W": w,
        "scale": sc.scale.to_string(),
        "expression": sc.to_string(),
    })
}

pub fn spinor_entries(sp: &Spinor) -> Vec<Value> {
    vec![solution_entry(1, &sp.psi1), solution_entry(2, &sp.psi2)]
}

pub fn spinor_check(check: &SpinorCheck) -> Value {
    let parts = |r: &dirac_core::verify::FirstOrderResidual| -> Vec<Value> {
        r.parts
            .iter()
            .map(|(rad, p)| json!({"radicand": rad.to_string(), "residual": p.to_string()}))
            .collect()
    };
    json!({
        "pass": check.pass(),
        "first_equation": parts(&check.first),
        "second_equation": parts(&check.second),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trips_byte_identically() {
        let mut payload = Map::new();
        payload.insert("verdict".into(), json!("solvable"));
        payload.insert("zeta".into(), json!(["3/2", "-1+2*i"]));
        payload.insert("alpha".into(), json!({"b": 1, "a": null}));
        let outcome = Outcome {
            command: json!({"name": "solve"}),
            payload,
            text: vec![],
            status: Status::Positive,
        };
        let s = render(&outcome, Format::Json, 12);
        let v: Value = serde_json::from_str(&s).unwrap();
        let again = format!("{}\n", serde_json::to_string_pretty(&v).unwrap());
        assert_eq!(s, again);
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(
            keys,
            ["alpha", "command", "ms", "schema", "verdict", "zeta"]
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Status::Positive.code(), 0);
        assert_eq!(Status::Negative.code(), 10);
        assert_eq!(Status::Usage.code(), 2);
        assert_eq!(Status::Internal.code(), 3);
    }
}
