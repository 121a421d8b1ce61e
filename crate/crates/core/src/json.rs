//! JSON input formats for curves.
//!
//! ```text
//! {"kind": "semigroup", "gaps": [1, 3]}
//! {"kind": "conditions", "points": [{"lambda": "1/2", "conductor": 2, "functionals": [[0, 1]]}]}
//! {"kind": "span", "conductor": "(z^2 + 1)^2", "basis": ["1", "z^3 + 3*z"]}
//! ```
//!
//! A functional `[w0, w1, ...]` at `lambda` is `f -> sum_j w_j f^(j)(lambda)`.
//! The `span` form describes `span(basis) + conductor Q[z]` and allows
//! support at irrational points.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::arith::{Poly, Scalar};
use crate::error::{Error, Result};
use crate::subspace::{Functional, LocalSubspace, PDSubspace};
use crate::weyl::DiffOp;

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawCurve {
    Semigroup { gaps: Vec<usize> },
    Conditions { points: Vec<RawPoint> },
    Span { conductor: String, basis: Vec<String> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoint {
    lambda: Scalar,
    conductor: usize,
    functionals: Vec<Vec<Scalar>>,
}

/// Parses a polynomial in `z` written in operator syntax.
pub fn parse_poly(s: &str) -> Result<Poly> {
    let op: DiffOp = s.parse()?;
    if op.order().unwrap_or(0) > 0 {
        return Err(Error::Input(format!("'{s}' is not a polynomial in z")));
    }
    let c = op.coeff(0);
    c.as_poly().cloned().ok_or_else(|| Error::Input(format!("'{s}' is not a polynomial in z")))
}

pub fn curve_from_json(v: &Value) -> Result<PDSubspace> {
    let raw: RawCurve = serde_json::from_value(v.clone()).map_err(|e| Error::Input(format!("curve: {e}")))?;
    match raw {
        RawCurve::Semigroup { gaps } => PDSubspace::from_gaps(&gaps),
        RawCurve::Conditions { points } => {
            let locals = points
                .into_iter()
                .map(|p| {
                    let fs = p
                        .functionals
                        .into_iter()
                        .map(|w| Functional::new(p.lambda.clone(), w))
                        .collect::<Result<Vec<_>>>()?;
                    LocalSubspace::new(p.lambda, p.conductor, fs)
                })
                .collect::<Result<Vec<_>>>()?;
            PDSubspace::from_locals(&locals)
        }
        RawCurve::Span { conductor, basis } => {
            let p = parse_poly(&conductor)?;
            let gens = basis.iter().map(|b| parse_poly(b)).collect::<Result<Vec<_>>>()?;
            PDSubspace::from_basis(&p, &gens)
        }
    }
}

/// Canonical `span` form of a subspace.
pub fn curve_to_json(v: &PDSubspace) -> Value {
    json!({
        "kind": "span",
        "conductor": v.conductor().to_string(),
        "basis": v.basis().iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}
