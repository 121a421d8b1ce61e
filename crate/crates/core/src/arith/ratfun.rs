//! Rational functions in one variable.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{Poly, Scalar};
use crate::error::{Error, Result};

/// A reduced fraction `num / den` with `den` monic and `gcd(num, den) = 1`.
/// Zero is stored as `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Reduces `num / den`; errors on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::NotDivisible("zero denominator".into()));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFun::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (mut n, mut d) = if g.is_one() { (num, den) } else { (num.div_rem(&g).0, den.div_rem(&g).0) };
        if !d.is_monic() {
            let l = d.lead().inv();
            n = n.scale(&l);
            d = d.scale(&l);
        }
        RatFun { num: n, den: d }
    }

    pub fn zero() -> Self {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFun::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn constant(s: Scalar) -> Self {
        RatFun::from_poly(Poly::constant(s))
    }

    /// `z^k` for any integer `k`.
    pub fn z_pow(k: i64) -> Self {
        if k >= 0 {
            RatFun::from_poly(Poly::monomial(Scalar::one(), k as usize))
        } else {
            RatFun { num: Poly::one(), den: Poly::monomial(Scalar::one(), (-k) as usize) }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// The polynomial value, if the denominator is trivial.
    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_poly().then_some(&self.num)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return RatFun::zero();
        }
        RatFun { num: self.num.scale(s), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        Self::reduce(&self.num * p, self.den.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: usize) -> Self {
        RatFun { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn derivative(&self) -> Self {
        if self.is_poly() {
            return RatFun::from_poly(self.num.derivative());
        }
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduce(n, &self.den * &self.den)
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        if self.is_poly() {
            return RatFun::from_poly(self.num.nth_derivative(k));
        }
        let mut f = self.clone();
        for _ in 0..k {
            f = f.derivative();
        }
        f
    }

    /// Value at `x`; errors at a pole.
    pub fn eval(&self, x: &Scalar) -> Result<Scalar> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole { point: x.to_string() });
        }
        Ok(self.num.eval(x) / d)
    }

    /// First `count` Taylor coefficients `f^(j)(a) / j!` at `a`.
    ///
    /// Note these are scaled coefficients; the unscaled derivative is
    /// `j!` times the returned entry.
    pub fn taylor_coeffs(&self, a: &Scalar, count: usize) -> Result<Vec<Scalar>> {
        let n = self.num.taylor_at(a);
        let d = self.den.taylor_at(a);
        if d[0].is_zero() {
            return Err(Error::Pole { point: a.to_string() });
        }
        Ok(series_div(&n, &d, count))
    }

    /// The polynomial part `f_+`: the unique polynomial with `f - f_+ -> 0`
    /// at infinity.
    pub fn poly_part(&self) -> Poly {
        self.num.div_rem(&self.den).0
    }

    /// Writes `self = poly_part + rest` with `deg num(rest) < deg den(rest)`.
    pub fn split_poly_part(&self) -> (Poly, RatFun) {
        let (q, r) = self.num.div_rem(&self.den);
        (q, Self::reduce(r, self.den.clone()))
    }

    /// Composition with `z -> a z + b`.
    pub fn compose_affine(&self, a: &Scalar, b: &Scalar) -> Self {
        Self::reduce(self.num.compose_affine(a, b), self.den.compose_affine(a, b))
    }
}

/// Truncated power series quotient `n / d`, with `d[0] != 0`.
pub(crate) fn series_div(n: &[Scalar], d: &[Scalar], count: usize) -> Vec<Scalar> {
    let inv0 = d[0].inv();
    let mut out: Vec<Scalar> = Vec::with_capacity(count);
    for k in 0..count {
        let mut acc = n.get(k).cloned().unwrap_or_default();
        for j in 1..=k.min(d.len().saturating_sub(1)) {
            if !d[j].is_zero() {
                acc -= &(&d[j] * &out[k - j]);
            }
        }
        out.push(acc * &inv0);
    }
    out
}

impl Default for RatFun {
    fn default() -> Self {
        RatFun::zero()
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> Self {
        RatFun::from_poly(p)
    }
}

impl From<Scalar> for RatFun {
    fn from(s: Scalar) -> Self {
        RatFun::constant(s)
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        if self.den == o.den {
            return RatFun::reduce(&self.num + &o.num, self.den.clone());
        }
        let g = Poly::gcd(&self.den, &o.den);
        let a = self.den.div_rem(&g).0;
        let b = o.den.div_rem(&g).0;
        let n = &(&self.num * &b) + &(&o.num * &a);
        RatFun::reduce(n, &a * &o.den)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self + &(-o)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        if self.is_poly() && o.is_poly() {
            return RatFun::from_poly(&self.num * &o.num);
        }
        RatFun::reduce(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for &RatFun {
    type Output = RatFun;
    /// Panics on division by zero.
    fn div(self, o: &RatFun) -> RatFun {
        assert!(!o.is_zero(), "division by zero rational function");
        RatFun::reduce(&self.num * &o.den, &self.den * &o.num)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

macro_rules! owned_ops {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait for RatFun {
            type Output = RatFun;
            fn $method(self, o: RatFun) -> RatFun {
                (&self).$method(&o)
            }
        }
        impl $trait<&RatFun> for RatFun {
            type Output = RatFun;
            fn $method(self, o: &RatFun) -> RatFun {
                (&self).$method(o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            write!(f, "{}", self.num)
        } else {
            let terms = |p: &Poly| p.coeffs().iter().filter(|c| !c.is_zero()).count();
            let wrap = |p: &Poly, force: bool| if force { format!("({p})") } else { p.to_string() };
            let num = wrap(&self.num, terms(&self.num) > 1);
            let den = wrap(&self.den, terms(&self.den) > 1);
            write!(f, "{num}/{den}")
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}
