//! Differential operators with rational-function coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::{Poly, RatFun, Scalar};
use crate::error::{Error, Result};

/// An operator `sum_i f_i(z) d^i` in left normal form (coefficients to the
/// left of powers of `d = d/dz`).
///
/// The highest stored coefficient is nonzero, so the zero operator stores
/// nothing and has order `None`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DiffOp {
    c: Vec<RatFun>,
}

impl DiffOp {
    pub fn new(mut c: Vec<RatFun>) -> Self {
        while c.last().is_some_and(RatFun::is_zero) {
            c.pop();
        }
        DiffOp { c }
    }

    pub fn zero() -> Self {
        DiffOp { c: Vec::new() }
    }

    pub fn one() -> Self {
        DiffOp::from_ratfun(RatFun::one())
    }

    /// Multiplication by `f`.
    pub fn from_ratfun(f: RatFun) -> Self {
        DiffOp::new(vec![f])
    }

    pub fn from_poly(p: Poly) -> Self {
        DiffOp::from_ratfun(RatFun::from_poly(p))
    }

    pub fn constant(s: Scalar) -> Self {
        DiffOp::from_ratfun(RatFun::constant(s))
    }

    /// Multiplication by `z`.
    pub fn z() -> Self {
        DiffOp::from_poly(Poly::z())
    }

    /// `d/dz`.
    pub fn d() -> Self {
        DiffOp::d_pow(1)
    }

    /// `d^i`.
    pub fn d_pow(i: usize) -> Self {
        DiffOp::term(RatFun::one(), i)
    }

    /// `f d^i`.
    pub fn term(f: RatFun, i: usize) -> Self {
        let mut c = vec![RatFun::zero(); i + 1];
        c[i] = f;
        DiffOp::new(c)
    }

    /// The Euler operator `theta = z d`.
    pub fn theta() -> Self {
        DiffOp::term(RatFun::from_poly(Poly::z()), 1)
    }

    pub fn coeffs(&self) -> &[RatFun] {
        &self.c
    }

    /// Coefficient of `d^i`.
    pub fn coeff(&self, i: usize) -> RatFun {
        self.c.get(i).cloned().unwrap_or_default()
    }

    /// Order, or `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Leading coefficient (zero for the zero operator).
    pub fn lead(&self) -> RatFun {
        self.c.last().cloned().unwrap_or_default()
    }

    /// True when every coefficient is a polynomial, i.e. the operator lies
    /// in the Weyl algebra `Q[z, d]`.
    pub fn is_weyl(&self) -> bool {
        self.c.iter().all(RatFun::is_poly)
    }

    /// Largest numerator degree among polynomial coefficients (`None` for zero).
    pub fn degree(&self) -> Option<usize> {
        self.c.iter().filter_map(|f| f.num().degree()).max()
    }

    /// Polynomial coefficients, if [`DiffOp::is_weyl`].
    pub fn weyl_coeffs(&self) -> Option<Vec<Poly>> {
        self.c.iter().map(|f| f.as_poly().cloned()).collect()
    }

    /// Monic lcm of the coefficient denominators.
    pub fn common_denominator(&self) -> Poly {
        self.c.iter().fold(Poly::one(), |acc, f| Poly::lcm(&acc, f.den()))
    }

    /// Coefficient-wise polynomial part.
    pub fn poly_part(&self) -> DiffOp {
        DiffOp::new(self.c.iter().map(|f| RatFun::from_poly(f.poly_part())).collect())
    }

    pub fn scale(&self, s: &Scalar) -> DiffOp {
        DiffOp::new(self.c.iter().map(|f| f.scale(s)).collect())
    }

    /// `f * self`, multiplying on the left by a function.
    pub fn left_mul(&self, f: &RatFun) -> DiffOp {
        DiffOp::new(self.c.iter().map(|g| f * g).collect())
    }

    /// `self(f) = sum_i c_i f^(i)`.
    pub fn apply(&self, f: &RatFun) -> RatFun {
        let mut acc = RatFun::zero();
        let mut der = f.clone();
        for (i, c) in self.c.iter().enumerate() {
            if i > 0 {
                der = der.derivative();
            }
            if !c.is_zero() && !der.is_zero() {
                acc = &acc + &(c * &der);
            }
        }
        acc
    }

    /// `self(f)` for a polynomial argument.
    pub fn apply_poly(&self, f: &Poly) -> RatFun {
        if let Some(cs) = self.weyl_coeffs() {
            let mut acc = Poly::zero();
            let mut der = f.clone();
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    der = der.derivative();
                }
                if der.is_zero() {
                    break;
                }
                acc = &acc + &(c * &der);
            }
            return RatFun::from_poly(acc);
        }
        self.apply(&RatFun::from_poly(f.clone()))
    }

    /// `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &DiffOp) -> DiffOp {
        &(self * other) - &(other * self)
    }

    /// Order of the commutator (`None` when the operators commute).
    pub fn commutator_order(&self, other: &DiffOp) -> Option<usize> {
        self.commutator(other).order()
    }

    pub fn pow(&self, e: usize) -> DiffOp {
        let mut acc = DiffOp::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `z -> z`, `d -> d - p'(z)`: conjugation by `e^{p(z)}`.
    pub fn kp_automorphism(&self, p: &Poly) -> DiffOp {
        let shifted = &DiffOp::d() - &DiffOp::from_poly(p.derivative());
        let mut acc = DiffOp::zero();
        let mut power = DiffOp::one();
        for (i, c) in self.c.iter().enumerate() {
            if i > 0 {
                power = &power * &shifted;
            }
            acc = &acc + &power.left_mul(c);
        }
        acc
    }

    /// The Fourier automorphism `z -> d`, `d -> -z` of the Weyl algebra.
    ///
    /// Each monomial `z^j d^i` maps to `d^j (-z)^i`, renormalized.
    pub fn fourier_automorphism(&self) -> Result<DiffOp> {
        let cs = self
            .weyl_coeffs()
            .ok_or_else(|| Error::Unsupported(format!("Fourier transform needs polynomial coefficients: {self}")))?;
        let maxdeg = cs.iter().filter_map(Poly::degree).max().unwrap_or(0);
        let mut d_pows = vec![DiffOp::one()];
        for _ in 0..maxdeg {
            let next = d_pows.last().unwrap() * &DiffOp::d();
            d_pows.push(next);
        }
        let mut acc = DiffOp::zero();
        for (i, c) in cs.iter().enumerate() {
            let mz = Poly::monomial(if i % 2 == 0 { Scalar::one() } else { -Scalar::one() }, i);
            let right = DiffOp::from_poly(mz);
            for (j, a) in c.coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                acc = &acc + &(&d_pows[j] * &right).scale(a);
            }
        }
        Ok(acc)
    }

    /// `z -> a z + b` (with `d -> d / a`).
    pub fn reparametrize(&self, a: &Scalar, b: &Scalar) -> DiffOp {
        let ainv = a.inv();
        DiffOp::new(
            self.c
                .iter()
                .enumerate()
                .map(|(i, f)| f.compose_affine(a, b).scale(&ainv.pow(i as u32)))
                .collect(),
        )
    }
}

fn mul_ops(a: &DiffOp, b: &DiffOp) -> DiffOp {
    if a.is_zero() || b.is_zero() {
        return DiffOp::zero();
    }
    let oa = a.c.len() - 1;
    let ob = b.c.len() - 1;
    let mut out = vec![RatFun::zero(); oa + ob + 1];
    // d^i * g = sum_k C(i,k) g^(k) d^(i-k)
    for (j, bj) in b.c.iter().enumerate() {
        if bj.is_zero() {
            continue;
        }
        let mut ders = Vec::with_capacity(oa + 1);
        ders.push(bj.clone());
        for k in 1..=oa {
            let next = ders[k - 1].derivative();
            if next.is_zero() {
                break;
            }
            ders.push(next);
        }
        for (i, ai) in a.c.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (k, g) in ders.iter().enumerate().take(i + 1) {
                let coef = ai * &g.scale(&Scalar::binomial(i, k));
                let slot = &mut out[i - k + j];
                *slot = &*slot + &coef;
            }
        }
    }
    DiffOp::new(out)
}

impl Mul for &DiffOp {
    type Output = DiffOp;
    fn mul(self, o: &DiffOp) -> DiffOp {
        mul_ops(self, o)
    }
}

impl Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, o: &DiffOp) -> DiffOp {
        let n = self.c.len().max(o.c.len());
        DiffOp::new((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, o: &DiffOp) -> DiffOp {
        let n = self.c.len().max(o.c.len());
        DiffOp::new((0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        DiffOp { c: self.c.iter().map(|f| -f).collect() }
    }
}

impl Neg for DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        -&self
    }
}

macro_rules! owned_ops {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait for DiffOp {
            type Output = DiffOp;
            fn $method(self, o: DiffOp) -> DiffOp {
                (&self).$method(&o)
            }
        }
        impl $trait<&DiffOp> for DiffOp {
            type Output = DiffOp;
            fn $method(self, o: &DiffOp) -> DiffOp {
                (&self).$method(o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl From<RatFun> for DiffOp {
    fn from(f: RatFun) -> Self {
        DiffOp::from_ratfun(f)
    }
}

impl From<Poly> for DiffOp {
    fn from(p: Poly) -> Self {
        DiffOp::from_poly(p)
    }
}

/// Prints the text form `(f0) + (f1)*d + (f2)*d^2`, skipping zero terms.
/// [`DiffOp::from_str`](std::str::FromStr) reads it back.
impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            match i {
                0 => {}
                1 => f.write_str("*d")?,
                _ => write!(f, "*d^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOp[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(k: i64) -> DiffOp {
        DiffOp::from_ratfun(RatFun::z_pow(k))
    }

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn canonical_commutation() {
        let d = DiffOp::d();
        let z = DiffOp::z();
        assert_eq!(&d * &z, &(&z * &d) + &DiffOp::one());
        assert_eq!(&z * &d, DiffOp::theta());
        assert_eq!(d.commutator(&z), DiffOp::one());
    }

    #[test]
    fn second_order_product() {
        // d^2 z^2 = z^2 d^2 + 4 z d + 2
        let lhs = &DiffOp::d_pow(2) * &zp(2);
        let rhs = &(&(&zp(2) * &DiffOp::d_pow(2)) + &(&zp(1) * &DiffOp::d()).scale(&s(4))) + &DiffOp::constant(s(2));
        assert_eq!(lhs, rhs);
        for k in 0..=4 {
            let m = RatFun::z_pow(k);
            assert_eq!(lhs.apply(&m), DiffOp::d_pow(2).apply(&zp(2).apply(&m)));
        }
        assert_eq!(DiffOp::d_pow(2).commutator_order(&zp(2)), Some(1));
        assert_eq!(zp(1).commutator_order(&zp(2)), None);
    }

    #[test]
    fn apply_examples() {
        let cusp = &DiffOp::d_pow(2) - &DiffOp::term(RatFun::z_pow(-1).scale(&s(2)), 1);
        assert_eq!(cusp.apply(&RatFun::z_pow(2)), RatFun::constant(s(-2)));
        assert!(!cusp.is_weyl());
        let e = &DiffOp::theta() - &DiffOp::constant(s(1));
        let e2 = &DiffOp::theta() - &DiffOp::constant(s(2));
        assert!((&e * &e2).apply(&RatFun::z_pow(1)).is_zero());
        assert_eq!(DiffOp::theta().apply(&RatFun::z_pow(5)), RatFun::z_pow(5).scale(&s(5)));
    }

    #[test]
    fn polynomial_part_drops_poles() {
        let op = &DiffOp::from_ratfun(&RatFun::z_pow(2) + &RatFun::z_pow(-1))
            + &DiffOp::term(&RatFun::z_pow(1) + &RatFun::z_pow(-1), 1);
        let want = &zp(2) + &DiffOp::theta();
        assert_eq!(op.poly_part(), want);
        assert!(op.poly_part().is_weyl());
    }

    #[test]
    fn kp_examples() {
        let p = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(DiffOp::d().kp_automorphism(&p), &DiffOp::d() - &zp(1).scale(&s(2)));
        assert_eq!(zp(1).kp_automorphism(&p), zp(1));
        assert_eq!(DiffOp::theta().kp_automorphism(&p), &DiffOp::theta() - &zp(2).scale(&s(2)));
        let lhs = (&DiffOp::d() * &zp(1)).kp_automorphism(&p);
        let rhs = &DiffOp::d().kp_automorphism(&p) * &zp(1).kp_automorphism(&p);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn fourier_examples() {
        assert_eq!(DiffOp::d().fourier_automorphism().unwrap(), -zp(1));
        assert_eq!(zp(2).fourier_automorphism().unwrap(), DiffOp::d_pow(2));
        let want = &(-DiffOp::theta()) - &DiffOp::one();
        assert_eq!(DiffOp::theta().fourier_automorphism().unwrap(), want);
        assert!(matches!(zp(-1).fourier_automorphism(), Err(Error::Unsupported(_))));
    }
}
