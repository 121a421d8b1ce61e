//! Dense univariate polynomials over [`Scalar`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Scalar;
use crate::error::{Error, Result};

/// A polynomial `c[0] + c[1] z + ... + c[d] z^d`.
///
/// The last stored coefficient is nonzero; the zero polynomial stores no
/// coefficients and has degree `None`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Scalar>", into = "Vec<Scalar>")]
pub struct Poly {
    c: Vec<Scalar>,
}

impl From<Vec<Scalar>> for Poly {
    fn from(c: Vec<Scalar>) -> Self {
        Poly::new(c)
    }
}

impl From<Poly> for Vec<Scalar> {
    fn from(p: Poly) -> Self {
        p.c
    }
}

impl From<Scalar> for Poly {
    fn from(s: Scalar) -> Self {
        Poly::constant(s)
    }
}

impl Poly {
    /// Builds from low-to-high coefficients, trimming trailing zeros.
    pub fn new(mut c: Vec<Scalar>) -> Self {
        while c.last().is_some_and(Scalar::is_zero) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(s: Scalar) -> Self {
        Poly::new(vec![s])
    }

    /// The variable `z`.
    pub fn z() -> Self {
        Poly::monomial(Scalar::one(), 1)
    }

    /// `c z^k`.
    pub fn monomial(c: Scalar, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Scalar::zero(); k + 1];
        v[k] = c;
        Poly { c: v }
    }

    /// `z - a`.
    pub fn linear_root(a: &Scalar) -> Self {
        Poly { c: vec![-a, Scalar::one()] }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.c
    }

    /// Coefficient of `z^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Scalar {
        self.c.get(k).cloned().unwrap_or_default()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0; for sizing loops.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lead(&self) -> Scalar {
        self.c.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(Scalar::is_one)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for a in self.c.iter().rev() {
            acc = &acc * x + a;
        }
        acc
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly { c: self.c.iter().map(|a| a * s).collect() }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(&self.lead().inv())
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Scalar::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * &Scalar::from(i))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Poly {
        if n >= self.c.len() {
            return Poly::zero();
        }
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(n)
                .map(|(i, a)| a * &Scalar::falling(i as i64, n))
                .collect(),
        )
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let Some(nd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if nd < dd {
            return (Poly::zero(), self.clone());
        }
        let inv = d.lead().inv();
        let mut r = self.c.clone();
        let mut q = vec![Scalar::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let t = &r[k + dd] * &inv;
            if t.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                if !b.is_zero() {
                    let prod = &t * b;
                    r[k + j] -= &prod;
                }
            }
            q[k] = t;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly> {
        if d.is_zero() {
            return Err(Error::NotDivisible("division by the zero polynomial".into()));
        }
        let (q, r) = self.div_rem(d);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible(format!("{d} does not divide {self}")))
        }
    }

    pub fn divides(&self, f: &Poly) -> bool {
        !self.is_zero() && f.rem(self).is_zero()
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn xgcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lead().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = Poly::xgcd(&self.rem(m), m);
        if g.is_one() {
            Some(s.rem(m))
        } else {
            None
        }
    }

    /// Monic least common multiple.
    pub fn lcm(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let g = Poly::gcd(a, b);
        (a * &b.div_rem(&g).0).monic()
    }

    /// Monic squarefree part (product of the distinct irreducible factors).
    pub fn squarefree_part(&self) -> Poly {
        if self.is_constant() {
            return if self.is_zero() { Poly::zero() } else { Poly::one() };
        }
        let g = Poly::gcd(self, &self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// `self(a z + b)`.
    pub fn compose_affine(&self, a: &Scalar, b: &Scalar) -> Poly {
        let lin = Poly::new(vec![b.clone(), a.clone()]);
        let mut acc = Poly::zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `self(g(z))`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Coefficients of `self` expanded around `a`: `self = sum c_j (z-a)^j`.
    pub fn taylor_at(&self, a: &Scalar) -> Vec<Scalar> {
        let mut c = self.c.clone();
        let n = c.len();
        // Repeated synthetic division by (z - a).
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &c[j + 1] * a;
                c[j] += &t;
            }
        }
        c
    }

    /// Multiplicity of `a` as a root (0 if not a root; panics on zero).
    pub fn root_multiplicity(&self, a: &Scalar) -> usize {
        assert!(!self.is_zero());
        self.taylor_at(a).iter().take_while(|c| c.is_zero()).count()
    }

    /// Primitive integer polynomial proportional to `self`, as big integers.
    fn integer_primitive(&self) -> Vec<BigInt> {
        let l = Scalar::denominator_lcm(&self.c);
        let ints: Vec<BigInt> = self.c.iter().map(|a| (a * &l).numer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        ints.into_iter().map(|x| x / &g).collect()
    }

    /// Distinct rational roots, sorted ascending.
    pub fn rational_roots(&self) -> Vec<Scalar> {
        let mut p = self.squarefree_part();
        let mut roots = Vec::new();
        if p.is_zero() {
            return roots;
        }
        if p.coeff(0).is_zero() {
            roots.push(Scalar::zero());
            p = p.div_rem(&Poly::z()).0;
        }
        if p.is_constant() {
            return roots;
        }
        let ints = p.integer_primitive();
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        let small = |x: &BigInt| -> Option<u64> { num_traits::ToPrimitive::to_u64(x).filter(|&v| v <= 1 << 24) };
        match (small(&a0), small(&an)) {
            (Some(a0), Some(an)) => {
                let da = divisors(a0);
                let dn = divisors(an);
                for &num in &da {
                    for &den in &dn {
                        for sign in [1i64, -1] {
                            let r = Scalar::new(sign * num as i64, den as i64);
                            if !roots.contains(&r) && p.eval(&r).is_zero() {
                                roots.push(r);
                            }
                        }
                    }
                }
            }
            _ => {
                // Coefficients too large to enumerate divisors; only small
                // candidates are tried, so `splits` may under-report.
                for num in -64i64..=64 {
                    for den in 1..=64i64 {
                        let r = Scalar::new(num, den);
                        if !roots.contains(&r) && p.eval(&r).is_zero() {
                            roots.push(r);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// True when `self` is a product of linear factors over the rationals.
    pub fn splits(&self) -> bool {
        let sf = self.squarefree_part();
        sf.degree().unwrap_or(0) == self.rational_roots().len()
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coef = mag.to_string();
            match k {
                0 => out.push_str(&coef),
                _ => {
                    if !mag.is_one() {
                        if coef.contains('/') {
                            out.push_str(&format!("({coef})"));
                        } else {
                            out.push_str(&coef);
                        }
                        out.push('*');
                    }
                    out.push_str(var);
                    if k > 1 {
                        out.push_str(&format!("^{k}"));
                    }
                }
            }
        }
        out
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut v = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            v.push(d);
            if d * d != n {
                v.push(n / d);
            }
        }
        d += 1;
    }
    v
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("z"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let (long, short) = if self.c.len() >= o.c.len() { (self, o) } else { (o, self) };
        let mut c = long.c.clone();
        for (a, b) in c.iter_mut().zip(&short.c) {
            *a += b;
        }
        Poly::new(c)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut c = self.c.clone();
        c.resize(n, Scalar::zero());
        for (a, b) in c.iter_mut().zip(&o.c) {
            *a -= b;
        }
        Poly::new(c)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Scalar::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += &(a * b);
                }
            }
        }
        Poly::new(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { c: self.c.iter().map(|a| -a).collect() }
    }
}

macro_rules! owned_ops {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, o: Poly) -> Poly {
                (&self).$method(&o)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, o: &Poly) -> Poly {
                (&self).$method(o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::one()
    }
}
