//! Computation over `Q[x]/(s)` for a squarefree `s`, with dynamic splitting.
//!
//! `Q[x]/(s)` is a product of number fields, one per irreducible factor of
//! `s`. A computation that needs to test an element for zero asks
//! [`classify`]; when the element is a zero divisor the modulus is split
//! and the computation is rerun on each factor. The factorization of `s` is
//! never computed up front.

use super::Poly;

/// Outcome of testing an element of `Q[x]/(s)`.
pub enum Class {
    Zero,
    /// A unit, together with its inverse.
    Unit(Poly),
    /// A zero divisor; carries a proper monic factor of `s`.
    Split(Poly),
}

pub fn classify(a: &Poly, s: &Poly) -> Class {
    let a = a.rem(s);
    if a.is_zero() {
        return Class::Zero;
    }
    let (g, u, _) = Poly::xgcd(&a, s);
    if g.is_one() {
        Class::Unit(u.rem(s))
    } else {
        Class::Split(g)
    }
}

pub fn mul_mod(a: &Poly, b: &Poly, s: &Poly) -> Poly {
    (a * b).rem(s)
}

/// Runs `f` on every branch of `s`, splitting whenever `f` reports a zero
/// divisor. Returns `(modulus, result)` pairs whose moduli multiply to `s`.
pub fn split_run<T, E>(s: &Poly, mut f: impl FnMut(&Poly) -> Result<Step<T>, E>) -> Result<Vec<(Poly, T)>, E> {
    let mut work = vec![s.monic()];
    let mut out = Vec::new();
    while let Some(m) = work.pop() {
        if m.is_constant() {
            continue;
        }
        match f(&m)? {
            Step::Done(t) => out.push((m, t)),
            Step::Split(g) => {
                let g = g.monic();
                let h = m.div_rem(&g).0.monic();
                work.push(h);
                work.push(g);
            }
        }
    }
    out.sort_by(|a, b| a.0.coeffs().len().cmp(&b.0.coeffs().len()).then_with(|| format!("{}", a.0).cmp(&format!("{}", b.0))));
    Ok(out)
}

/// Result of one attempt at a branch computation.
pub enum Step<T> {
    Done(T),
    Split(Poly),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_on_zero_divisor() {
        // s = z (z - 1): the element z is zero on one branch, a unit on the other.
        let s = Poly::from_ints(&[0, -1, 1]);
        let branches = split_run::<bool, ()>(&s, |m| {
            Ok(match classify(&Poly::z(), m) {
                Class::Zero => Step::Done(true),
                Class::Unit(_) => Step::Done(false),
                Class::Split(g) => Step::Split(g),
            })
        })
        .unwrap();
        assert_eq!(branches.len(), 2);
        assert_eq!(branches[0], (Poly::z(), true));
        assert_eq!(branches[1], (Poly::from_ints(&[-1, 1]), false));
    }

    #[test]
    fn irreducible_modulus_stays_whole() {
        let s = Poly::from_ints(&[1, 0, 1]);
        match classify(&Poly::z(), &s) {
            Class::Unit(inv) => assert_eq!(mul_mod(&inv, &Poly::z(), &s), Poly::one()),
            _ => panic!("z is a unit mod z^2+1"),
        }
    }
}
