//! Derivative-evaluation functionals and the local subspaces they cut out.

use serde::{Deserialize, Serialize};

use crate::arith::linalg::{sparse, Echelon};
use crate::arith::{Poly, RatFun, Scalar};
use crate::error::{Error, Result};

/// The functional `f -> sum_s weights[s] * f^(s)(point)`.
///
/// Weights multiply plain derivatives, not Taylor coefficients: the
/// condition `f'(1) = 2 f(1)` is `point = 1, weights = [-2, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Functional {
    pub point: Scalar,
    pub weights: Vec<Scalar>,
}

impl Functional {
    /// Fails unless `weights` is nonempty with a nonzero last entry.
    pub fn new(point: Scalar, weights: Vec<Scalar>) -> Result<Self> {
        if weights.last().is_none_or(Scalar::is_zero) {
            return Err(Error::Input("functional weights must be nonempty with a nonzero last entry".into()));
        }
        Ok(Functional { point, weights })
    }

    /// `f -> f^(s)(point)`.
    pub fn derivative_at(point: Scalar, s: usize) -> Self {
        let mut weights = vec![Scalar::zero(); s + 1];
        weights[s] = Scalar::one();
        Functional { point, weights }
    }

    /// Highest derivative order involved.
    pub fn order(&self) -> usize {
        self.weights.len() - 1
    }

    /// Weights against Taylor coefficients `f^(s)(point)/s!`.
    pub fn taylor_weights(&self) -> Vec<Scalar> {
        self.weights.iter().enumerate().map(|(s, w)| w * &Scalar::factorial(s)).collect()
    }

    pub fn eval_poly(&self, f: &Poly) -> Scalar {
        let t = f.taylor_at(&self.point);
        self.taylor_weights().iter().zip(&t).map(|(w, c)| w * c).sum()
    }

    /// Errors if `f` has a pole at the point.
    pub fn eval(&self, f: &RatFun) -> Result<Scalar> {
        let t = f.taylor_coeffs(&self.point, self.weights.len())?;
        Ok(self.taylor_weights().iter().zip(&t).map(|(w, c)| w * c).sum())
    }

    /// Values on `1, z, ..., z^(n-1)`.
    pub fn on_monomials(&self, n: usize) -> Vec<Scalar> {
        // (z^j)^(s)(a) = j!/(j-s)! a^(j-s)
        let mut out = vec![Scalar::zero(); n];
        for (s, w) in self.weights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let mut apow = Scalar::one();
            for (j, slot) in out.iter_mut().enumerate().skip(s) {
                if j > s {
                    apow = &apow * &self.point;
                }
                *slot += &(w * &(&Scalar::falling(j as i64, s) * &apow));
            }
        }
        out
    }
}

/// A subspace `V_a = {f : phi(f) = 0 for all conditions phi}` with every
/// condition supported at the single point `a`, and `(z-a)^conductor C[z]`
/// contained in `V_a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalSubspace {
    pub point: Scalar,
    pub conductor: usize,
    pub conditions: Vec<Functional>,
}

impl LocalSubspace {
    /// Validates support, derivative orders and linear independence.
    pub fn new(point: Scalar, conductor: usize, conditions: Vec<Functional>) -> Result<Self> {
        let mut e = Echelon::new();
        for c in &conditions {
            if c.point != point {
                return Err(Error::Input(format!("condition at {} in a subspace local at {point}", c.point)));
            }
            if c.order() >= conductor {
                return Err(Error::Input(format!(
                    "derivative order {} is not below the conductor {conductor}",
                    c.order()
                )));
            }
            if e.insert(&sparse(&c.weights)).is_none() {
                return Err(Error::Input(format!("conditions at {point} are linearly dependent")));
            }
        }
        Ok(LocalSubspace { point, conductor, conditions })
    }

    /// Number of conditions, the local codimension.
    pub fn codim(&self) -> usize {
        self.conditions.len()
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.conditions.iter().all(|c| c.eval_poly(f).is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn unscaled_derivative_convention() {
        // f'(1) - f(1) on z^2: 2 - 1.
        let phi = Functional::new(s(1), vec![s(-1), s(1)]).unwrap();
        assert_eq!(phi.eval_poly(&Poly::from_ints(&[0, 0, 1])), s(1));
        let second = Functional::derivative_at(s(0), 2);
        assert_eq!(second.eval_poly(&Poly::from_ints(&[0, 0, 1])), s(2));
    }

    #[test]
    fn monomial_values_match_direct_evaluation() {
        let phi = Functional::new(Scalar::new(1, 2), vec![s(3), s(-1), s(2)]).unwrap();
        let vals = phi.on_monomials(6);
        for (j, v) in vals.iter().enumerate() {
            assert_eq!(*v, phi.eval_poly(&Poly::monomial(Scalar::one(), j)));
        }
    }

    #[test]
    fn local_validation() {
        let a = Functional::derivative_at(s(0), 1);
        let b = Functional::derivative_at(s(0), 3);
        assert!(LocalSubspace::new(s(0), 4, vec![a.clone()]).is_ok());
        assert!(LocalSubspace::new(s(0), 3, vec![b]).is_err());
        assert!(LocalSubspace::new(s(0), 4, vec![a.clone(), a.clone()]).is_err());
        assert!(LocalSubspace::new(s(1), 4, vec![a]).is_err());
        assert!(Functional::new(s(0), vec![s(1), s(0)]).is_err());
    }
}
