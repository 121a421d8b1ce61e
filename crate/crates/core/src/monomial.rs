//! Rings of differential operators on monomial curves.
//!
//! For `O(X)` spanned by `z^i`, `i in Λ`, the algebra `D(X)` is graded by
//! the eigenvalues of `ad(theta)`: it is the sum over `s in Z` of the
//! pieces `z^s Q(theta)` with `Q(i) = 0` for every `i in Λ` such that
//! `i + s` is not in `Λ` (including `i + s < 0`). Each piece is therefore
//! `Π (theta - i) Q[theta]` over that finite set `R_s` of roots.

use std::collections::BTreeSet;
use std::fmt;

use crate::arith::{Poly, Scalar};
use crate::error::{Error, Result};
use crate::subspace::PDSubspace;
use crate::weyl::{DiffOp, ThetaOp};

/// A cofinite additive submonoid `Λ` of `N`, stored by its gaps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Semigroup {
    gaps: BTreeSet<usize>,
}

impl Semigroup {
    pub fn new(gaps: impl IntoIterator<Item = usize>) -> Result<Self> {
        let gaps: BTreeSet<usize> = gaps.into_iter().collect();
        if gaps.contains(&0) {
            return Err(Error::Input("0 cannot be a gap".into()));
        }
        let sg = Semigroup { gaps };
        let max = sg.max_gap();
        for a in 1..=max {
            for b in a..=max - a {
                if sg.contains(a as i64) && sg.contains(b as i64) && !sg.contains((a + b) as i64) {
                    return Err(Error::Input(format!("{a} and {b} are not gaps but {} is", a + b)));
                }
            }
        }
        Ok(sg)
    }

    /// `Λ = N`.
    pub fn full() -> Self {
        Semigroup { gaps: BTreeSet::new() }
    }

    /// Gaps `1, ..., n`: the ring `Q + z^(n+1) Q[z]`.
    pub fn x_n(n: usize) -> Self {
        Semigroup { gaps: (1..=n).collect() }
    }

    /// The semigroup generated by `gens`, which must have gcd 1.
    pub fn generated_by(gens: &[usize]) -> Result<Self> {
        let g = gens.iter().fold(0, |a, &b| num_integer::gcd(a, b));
        if g != 1 {
            return Err(Error::Input(format!("generators {gens:?} have gcd {g}, so the gap set is infinite")));
        }
        let min = *gens.iter().filter(|&&x| x > 0).min().expect("gcd 1 needs a positive generator");
        // past the Frobenius number every residue mod `min` has been reached
        let mut reach = vec![true];
        let mut run = 0;
        let mut i = 1;
        while run < min {
            let r = gens.iter().any(|&g| g > 0 && g <= i && reach[i - g]);
            reach.push(r);
            run = if r { run + 1 } else { 0 };
            i += 1;
        }
        Ok(Semigroup { gaps: (0..reach.len()).filter(|&i| !reach[i]).collect() })
    }

    pub fn gaps(&self) -> &BTreeSet<usize> {
        &self.gaps
    }

    pub fn max_gap(&self) -> usize {
        self.gaps.iter().next_back().copied().unwrap_or(0)
    }

    pub fn contains(&self, i: i64) -> bool {
        i >= 0 && !self.gaps.contains(&(i as usize))
    }

    /// The span of `z^i`, `i in Λ`.
    pub fn subspace(&self) -> PDSubspace {
        PDSubspace::from_gaps(&self.gaps.iter().copied().collect::<Vec<_>>()).expect("valid gaps")
    }

    /// Every semigroup whose gaps are all at most `k`.
    pub fn all_with_max_gap(k: usize) -> Vec<Semigroup> {
        (0u32..1 << k)
            .filter_map(|mask| Semigroup::new((1..=k).filter(|i| mask & (1 << (i - 1)) != 0)).ok())
            .collect()
    }

    /// `R_s = {i in Λ : i + s not in Λ}`.
    pub fn root_set(&self, s: i64) -> Vec<i64> {
        let top = self.max_gap() as i64 + 1 + (-s).max(0);
        (0..top).filter(|&i| self.contains(i) && !self.contains(i + s)).collect()
    }
}

impl fmt::Display for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gaps.iter().map(ToString::to_string).collect();
        write!(f, "gaps {{{}}}", g.join(", "))
    }
}

/// Basis of the admissible `Q` of degree at most `degree_bound` for shift
/// `s`: `Π_{i in R_s} (theta - i) theta^j`.
pub fn graded_piece(s: i64, sg: &Semigroup, degree_bound: usize) -> Vec<Poly> {
    let roots = sg.root_set(s);
    if roots.len() > degree_bound {
        return Vec::new();
    }
    let base = roots.iter().fold(Poly::one(), |acc, &r| &acc * &Poly::linear_root(&Scalar::from_int(r)));
    (0..=degree_bound - roots.len()).map(|j| base.shift(j)).collect()
}

/// The operators `z^s Q(theta)` for the basis of [`graded_piece`].
pub fn graded_operators(s: i64, sg: &Semigroup, degree_bound: usize) -> Vec<DiffOp> {
    graded_piece(s, sg, degree_bound).into_iter().map(|q| ThetaOp::new(s, q).to_diffop()).collect()
}

/// Leading symbols `z^a zeta^b` that no operator in `D(X)` has.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolLattice {
    pub missing: BTreeSet<(usize, usize)>,
}

impl SymbolLattice {
    pub fn codim(&self) -> usize {
        self.missing.len()
    }
}

fn missing_in(sg: &Semigroup, window: usize) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for a in 0..window {
        for b in 0..window {
            // z^s theta^b has leading symbol z^(s+b) zeta^b
            if sg.root_set(a as i64 - b as i64).len() > b {
                out.insert((a, b));
            }
        }
    }
    out
}

/// The missing symbols within `[0, window)^2`, which must agree with the
/// doubled window.
pub fn symbol_lattice(sg: &Semigroup, window: usize) -> Result<SymbolLattice> {
    let need = 2 * sg.max_gap() + 2;
    if window < need {
        return Err(Error::Input(format!("window {window} is below {need}")));
    }
    let missing = missing_in(sg, window);
    if missing != missing_in(sg, 2 * window) {
        return Err(Error::BoundTooSmall(format!("missing symbols for {sg} change beyond window {window}")));
    }
    Ok(SymbolLattice { missing })
}

/// [`symbol_lattice`] at the smallest admissible window, doubling it until
/// the missing set is stable.
pub fn stable_symbol_lattice(sg: &Semigroup) -> Result<SymbolLattice> {
    let mut window = 2 * sg.max_gap() + 2;
    loop {
        match symbol_lattice(sg, window) {
            Err(Error::BoundTooSmall(_)) if window < 1 << 12 => window *= 2,
            other => return other,
        }
    }
}

/// Codimension of `gr D(X)` in `Q[z, zeta]`.
pub fn lm_invariant(sg: &Semigroup) -> Result<usize> {
    stable_symbol_lattice(sg).map(|l| l.codim())
}

/// `LM(X) = 2 d(X)`, with `d` computed from the order sequence at 0.
pub fn check_lm_equals_twice_genus(sg: &Semigroup) -> Result<bool> {
    let g = sg.subspace().order_sequence(&Scalar::zero()).local_genus();
    Ok(lm_invariant(sg)? == 2 * g)
}

/// Operators of `D(X)` with non-polynomial coefficients.
///
/// Only negative shifts can produce them. Below `s = -(max gap +
/// degree_bound)` nothing survives: `R_s` then contains every `i in Λ`
/// with `i < -s`, more than `degree_bound` roots.
pub fn delta_vs_d_witness(sg: &Semigroup, degree_bound: usize) -> Vec<DiffOp> {
    let lowest = -((sg.max_gap() + degree_bound) as i64);
    (lowest..0)
        .flat_map(|s| graded_operators(s, sg, degree_bound))
        .filter(|op| !op.is_weyl())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::maps_into;

    fn theta_poly(cs: &[i64]) -> Poly {
        Poly::from_ints(cs)
    }

    #[test]
    fn semigroup_validation() {
        assert!(Semigroup::new([1, 2, 4]).is_ok());
        assert!(Semigroup::new([2]).is_err());
        assert!(Semigroup::new([0]).is_err());
        assert_eq!(Semigroup::generated_by(&[2, 5]).unwrap(), Semigroup::new([1, 3]).unwrap());
        assert_eq!(Semigroup::generated_by(&[3, 4]).unwrap(), Semigroup::new([1, 2, 5]).unwrap());
        assert_eq!(Semigroup::generated_by(&[1]).unwrap(), Semigroup::full());
        assert!(Semigroup::generated_by(&[2, 4]).is_err());
        // counts of numerical semigroups by Frobenius number 1..=6: 1, 1, 2, 2, 5, 4
        assert_eq!(Semigroup::all_with_max_gap(6).len(), 1 + 1 + 1 + 2 + 2 + 5 + 4);
    }

    #[test]
    fn cusp_pieces() {
        let cusp = Semigroup::x_n(1);
        assert_eq!(graded_piece(-2, &cusp, 2), vec![theta_poly(&[0, -3, 1])]);
        assert_eq!(graded_piece(-1, &cusp, 2), vec![theta_poly(&[0, -2, 1])]);
        assert_eq!(graded_operators(-2, &cusp, 2), vec!["d^2 - 2/z*d".parse().unwrap()]);
        assert_eq!(graded_operators(-1, &cusp, 2), vec!["z*d^2 - d".parse().unwrap()]);
        assert_eq!(graded_piece(2, &cusp, 3).len(), 4);
    }

    #[test]
    fn pieces_preserve_the_ring() {
        for sg in [Semigroup::x_n(2), Semigroup::new([1, 3]).unwrap(), Semigroup::new([1, 2, 5]).unwrap()] {
            let v = sg.subspace();
            for s in -6..4 {
                for op in graded_operators(s, &sg, 4) {
                    assert!(maps_into(&op, &v, &v), "{sg}: {op}");
                }
            }
        }
    }

    #[test]
    fn lattices() {
        let l1 = symbol_lattice(&Semigroup::x_n(1), 4).unwrap();
        assert_eq!(l1.missing, BTreeSet::from([(1, 0), (0, 1)]));
        assert_eq!(lm_invariant(&Semigroup::full()).unwrap(), 0);
        for n in 1..=6 {
            assert_eq!(lm_invariant(&Semigroup::x_n(n)).unwrap(), 2 * n);
        }
        for r in 1..=4 {
            let y = Semigroup::generated_by(&[2, 2 * r + 1]).unwrap();
            assert_eq!(lm_invariant(&y).unwrap(), r * (r + 1));
        }
        assert!(symbol_lattice(&Semigroup::x_n(3), 5).is_err());
    }

    #[test]
    fn present_symbols_are_closed_under_addition() {
        let sg = Semigroup::new([1, 2, 5]).unwrap();
        let w = 12;
        let missing = symbol_lattice(&sg, w).unwrap().missing;
        let present: Vec<(usize, usize)> =
            (0..w).flat_map(|a| (0..w).map(move |b| (a, b))).filter(|p| !missing.contains(p)).collect();
        for p in &present {
            for q in &present {
                let sum = (p.0 + q.0, p.1 + q.1);
                assert!(!missing.contains(&sum));
            }
        }
    }

    #[test]
    fn lm_is_twice_genus() {
        for sg in Semigroup::all_with_max_gap(6) {
            assert!(check_lm_equals_twice_genus(&sg).unwrap(), "{sg}");
        }
    }

    #[test]
    fn witnesses() {
        let cusp = delta_vs_d_witness(&Semigroup::x_n(1), 2);
        assert!(cusp.contains(&"d^2 - 2/z*d".parse().unwrap()));
        assert!(delta_vs_d_witness(&Semigroup::full(), 4).is_empty());
        assert!(!delta_vs_d_witness(&Semigroup::x_n(2), 3).is_empty());
    }
}
