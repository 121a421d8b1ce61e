//! Homogeneous operators `z^s Q(theta)` with `theta = z d`.
//!
//! An operator whose coefficient denominators are powers of `z` splits into
//! pieces of pure weight `s` under `z -> t z`; each piece is `z^s Q(theta)`
//! and sends `z^i` to `Q(i) z^(i+s)`. The translation uses
//! `z^i d^i = theta (theta - 1) ... (theta - i + 1)`.

use std::collections::BTreeMap;

use super::DiffOp;
use crate::arith::{Poly, RatFun, Scalar};
use crate::error::{Error, Result};

/// The operator `z^shift * q(theta)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaOp {
    pub shift: i64,
    pub q: Poly,
}

/// Falling factorial `theta (theta - 1) ... (theta - i + 1)` as a polynomial.
pub fn falling_poly(i: usize) -> Poly {
    let mut acc = Poly::one();
    for t in 0..i {
        acc = &acc * &Poly::linear_root(&Scalar::from(t));
    }
    acc
}

impl ThetaOp {
    pub fn new(shift: i64, q: Poly) -> Self {
        ThetaOp { shift, q }
    }

    /// Image of `z^i`: the pair `(Q(i), i + shift)`.
    pub fn on_monomial(&self, i: i64) -> (Scalar, i64) {
        (self.q.eval(&Scalar::from_int(i)), i + self.shift)
    }

    /// Expands back to left normal form.
    pub fn to_diffop(&self) -> DiffOp {
        // Newton forward differences give Q = sum_i b_i (theta)_i.
        let Some(deg) = self.q.degree() else {
            return DiffOp::zero();
        };
        let mut vals: Vec<Scalar> = (0..=deg as i64).map(|k| self.q.eval(&Scalar::from_int(k))).collect();
        let mut out = Vec::with_capacity(deg + 1);
        for i in 0..=deg {
            let b = &vals[0] / &Scalar::factorial(i);
            out.push(RatFun::z_pow(self.shift + i as i64).scale(&b));
            for k in 0..vals.len() - 1 {
                vals[k] = &vals[k + 1] - &vals[k];
            }
            vals.pop();
        }
        DiffOp::new(out)
    }
}

/// Splits `d` into weight-homogeneous pieces, sorted by shift.
///
/// Fails with `Unsupported` if some coefficient has a pole away from `0`.
pub fn theta_form(d: &DiffOp) -> Result<Vec<ThetaOp>> {
    let mut pieces: BTreeMap<i64, Poly> = BTreeMap::new();
    for (i, f) in d.coeffs().iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let den = f.den();
        let k = den.degree().unwrap_or(0);
        if *den != Poly::monomial(Scalar::one(), k) {
            return Err(Error::Unsupported(format!("coefficient {f} has a pole away from 0")));
        }
        let ff = falling_poly(i);
        for (m, a) in f.num().coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let shift = m as i64 - k as i64 - i as i64;
            let e = pieces.entry(shift).or_default();
            *e = &*e + &ff.scale(a);
        }
    }
    Ok(pieces
        .into_iter()
        .filter(|(_, q)| !q.is_zero())
        .map(|(shift, q)| ThetaOp { shift, q })
        .collect())
}

/// Sums the pieces back into one operator.
pub fn from_theta(pieces: &[ThetaOp]) -> DiffOp {
    pieces.iter().fold(DiffOp::zero(), |acc, t| &acc + &t.to_diffop())
}
