use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::DiffOp;

/// Generators of the right ideal `sum_i g_i A`.
///
/// Unless `fractional` is set every generator has polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealGens {
    gens: Vec<DiffOp>,
    fractional: bool,
}

impl IdealGens {
    pub fn new(gens: Vec<DiffOp>, fractional: bool) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::Input("an ideal needs at least one generator".into()));
        }
        if gens.iter().any(DiffOp::is_zero) {
            return Err(Error::Input("generators must be nonzero".into()));
        }
        if !fractional {
            if let Some(g) = gens.iter().find(|g| !g.is_weyl()) {
                return Err(Error::Input(format!("generator {g} has rational coefficients in a non-fractional ideal")));
            }
        }
        Ok(IdealGens { gens, fractional })
    }

    /// Fractional exactly when some generator needs it.
    pub fn auto(gens: Vec<DiffOp>) -> Result<Self> {
        let fractional = gens.iter().any(|g| !g.is_weyl());
        Self::new(gens, fractional)
    }

    /// The unit ideal `A`.
    pub fn unit() -> Self {
        IdealGens { gens: vec![DiffOp::one()], fractional: false }
    }

    pub fn gens(&self) -> &[DiffOp] {
        &self.gens
    }

    pub fn is_fractional(&self) -> bool {
        self.fractional
    }

    /// Applies an algebra map to every generator.
    pub fn map(&self, f: impl Fn(&DiffOp) -> Result<DiffOp>) -> Result<Self> {
        let gens = self.gens.iter().map(f).collect::<Result<Vec<_>>>()?;
        Self::auto(gens)
    }

    pub fn max_order(&self) -> usize {
        self.gens.iter().filter_map(DiffOp::order).max().unwrap_or(0)
    }
}

#[derive(Serialize, Deserialize)]
struct Raw {
    gens: Vec<String>,
    #[serde(default)]
    fractional: Option<bool>,
}

impl IdealGens {
    /// Parses `{"gens": ["<operator>", ...], "fractional": bool}`.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let raw: Raw = serde_json::from_value(v.clone()).map_err(|e| Error::Input(format!("ideal: {e}")))?;
        let gens = raw.gens.iter().map(|s| s.parse()).collect::<Result<Vec<DiffOp>>>()?;
        match raw.fractional {
            Some(f) => Self::new(gens, f),
            None => Self::auto(gens),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(Raw { gens: self.gens.iter().map(|g| g.to_string()).collect(), fractional: Some(self.fractional) })
            .expect("plain data")
    }
}

impl fmt::Display for IdealGens {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| format!("[{g}] A")).collect();
        f.write_str(&parts.join(" + "))
    }
}
