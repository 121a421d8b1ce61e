//! Self-checks run by `diffgenus check`: a fixed table of known values and
//! a seeded randomized property suite.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{Poly, RatFun, Scalar};
use crate::cm::{self, CMPair};
use crate::correspondence::{
    alpha_slice, canonical_form, check_p1, codim_invariant, dvw_slice, gamma, maps_into, round_trip_alpha_gamma,
    IdealGens, SliceBounds,
};
use crate::error::Result;
use crate::monomial::{self, Semigroup};
use crate::subspace::{GrPoint, PDSubspace};
use crate::weyl::DiffOp;

/// One line of a check report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckItem {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

impl CheckItem {
    fn new(name: impl Into<String>, expected: impl ToString, got: Result<impl ToString>) -> Self {
        let expected = expected.to_string();
        let got = match got {
            Ok(g) => g.to_string(),
            Err(e) => format!("error ({}): {e}", e.name()),
        };
        let pass = expected == got;
        CheckItem { name: name.into(), expected, got, pass }
    }
}

impl fmt::Display for CheckItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: expected {}, got {}", self.name, self.expected, self.got)
    }
}

fn x_n(n: usize) -> PDSubspace {
    Semigroup::x_n(n).subspace()
}

fn y_r(r: usize) -> PDSubspace {
    Semigroup::generated_by(&[2, 2 * r + 1]).expect("coprime").subspace()
}

/// `z^(n+1) A + Π_{r=1}^{n} (theta - r) A`.
pub fn i_n(n: usize) -> IdealGens {
    let mut second = DiffOp::one();
    for r in 1..=n as i64 {
        second = &second * &(&DiffOp::theta() - &DiffOp::constant(Scalar::from_int(r)));
    }
    IdealGens::new(vec![DiffOp::from_poly(Poly::monomial(Scalar::one(), n + 1)), second], false).expect("nonzero")
}

/// The span of `z^i` for `i` not 2 or 3: genus 4 over the ring of `X_3`.
pub fn two_three_gap_subspace() -> PDSubspace {
    PDSubspace::from_gaps(&[2, 3]).expect("valid gaps")
}

/// Subspaces used for round trips and the codimension route.
pub fn golden_subspaces() -> Vec<(String, PDSubspace)> {
    let mut out: Vec<(String, PDSubspace)> = vec![("Q[z]".into(), PDSubspace::whole())];
    for n in 1..=4 {
        out.push((format!("O(X_{n})"), x_n(n)));
    }
    out.push(("O(Y_2)".into(), y_r(2)));
    out.push(("span{z^i : i != 2, 3}".into(), two_three_gap_subspace()));
    out.push(("two simple cusps at 0 and 1".into(), two_cusps()));
    out
}

fn two_cusps() -> PDSubspace {
    use crate::subspace::{Functional, LocalSubspace};
    let locals: Vec<LocalSubspace> = [0, 1]
        .iter()
        .map(|&p| {
            let pt = Scalar::from_int(p);
            LocalSubspace::new(pt.clone(), 2, vec![Functional::derivative_at(pt, 1)]).expect("valid")
        })
        .collect();
    PDSubspace::from_locals(&locals).expect("valid")
}

fn op(s: &str) -> DiffOp {
    s.parse().expect("valid operator text")
}

fn all<I: IntoIterator<Item = Result<bool>>>(it: I) -> Result<bool> {
    for r in it {
        if !r? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The table of known values.
pub fn golden_suite() -> Vec<CheckItem> {
    let mut out = Vec::new();
    let whole = PDSubspace::whole();

    for n in 0..=10 {
        out.push(CheckItem::new(format!("genus of Q + z^{} Q[z]", n + 1), n, x_n(n).genus()));
    }
    for r in 1..=6 {
        out.push(CheckItem::new(format!("genus of Q[z^2, z^{}]", 2 * r + 1), r * (r + 1) / 2, y_r(r).genus()));
    }
    let zero = Scalar::zero();
    out.push(CheckItem::new("order sequence of Q + z^4 Q[z] at 0", "0 < 4 < 5 < ... (g = 3)", Ok(x_n(3).order_sequence(&zero))));
    out.push(CheckItem::new(
        "order sequence of Q[z^2, z^5] at 0",
        "0 < 2 < 4 < 5 < ... (g = 2)",
        Ok(y_r(2).order_sequence(&zero)),
    ));
    let v = two_three_gap_subspace();
    out.push(CheckItem::new("order sequence of span{z^i : i != 2, 3} at 0", "0 < 1 < 4 < 5 < ... (g = 2)", Ok(v.order_sequence(&zero))));
    out.push(CheckItem::new("genus of span{z^i : i != 2, 3}", 4, v.genus()));
    out.push(CheckItem::new(
        "coordinate ring of span{z^i : i != 2, 3} is Q + z^4 Q[z]",
        true,
        GrPoint::new(v.clone()).and_then(|w| w.coordinate_ring(16)).map(|r| r == x_n(3)),
    ));
    out.push(CheckItem::new(
        "Q + z^4 Q[z] and Q[z^2, z^5] have the same genus",
        true,
        x_n(3).genus().and_then(|a| Ok(a == y_r(2).genus()?)),
    ));
    out.push(CheckItem::new("genus with two simple cusps f'(0) = f'(1) = 0", 2, two_cusps().genus()));
    out.push(CheckItem::new("z^4 in Q + z^4 Q[z]", true, Ok(x_n(3).contains(&Poly::monomial(Scalar::one(), 4)))));
    out.push(CheckItem::new("z^2 in Q + z^4 Q[z]", false, Ok(x_n(3).contains(&Poly::monomial(Scalar::one(), 2)))));

    // operators on the cuspidal cubic
    let cusp = x_n(1);
    let (w1, w2) = (op("d^2 - 2/z*d"), op("z*d^2 - d"));
    for w in [&w1, &w2] {
        out.push(CheckItem::new(format!("{w} preserves Q + z^2 Q[z]"), true, Ok(maps_into(w, &cusp, &cusp))));
    }
    let sg1 = Semigroup::x_n(1);
    out.push(CheckItem::new(
        "weight -2 piece of D(X_1) is z^-2 (theta^2 - 3 theta)",
        w1.to_string(),
        Ok(monomial::graded_operators(-2, &sg1, 2).iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")),
    ));
    out.push(CheckItem::new(
        "weight -1 piece of D(X_1) is z^-1 (theta^2 - 2 theta)",
        w2.to_string(),
        Ok(monomial::graded_operators(-1, &sg1, 2).iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")),
    ));
    let sl = dvw_slice(&cusp, &cusp, SliceBounds { order: 2, degree: 1, poles: 1 });
    out.push(CheckItem::new("D(X_1, X_1) slice contains both cusp operators", true, Ok(sl.contains(&w1) && sl.contains(&w2))));
    out.push(CheckItem::new("d maps Q[z] into Q + z^2 Q[z]", false, Ok(maps_into(&DiffOp::d(), &whole, &cusp))));
    out.push(CheckItem::new("(d^2 - 2/z d) z^2", "-2", Ok(w1.apply_poly(&Poly::monomial(Scalar::one(), 2)))));
    out.push(CheckItem::new("d^2 z^2 in normal form", "(2) + (4*z)*d + (z^2)*d^2", Ok(&DiffOp::d_pow(2) * &op("z^2"))));

    // the correspondence
    for n in 1..=5 {
        let gens = i_n(n);
        out.push(CheckItem::new(
            format!("generators of I_{n} map Q[z] into O(X_{n})"),
            true,
            Ok(gens.gens().iter().all(|g| maps_into(g, &whole, &x_n(n)))),
        ));
    }
    for n in 0..=5 {
        out.push(CheckItem::new(
            format!("gamma(I_{n}) = O(X_{n})"),
            true,
            gamma(&i_n(n), None).and_then(|w| Ok(w == GrPoint::with_multiplier(x_n(n), Poly::one())?)),
        ));
    }
    for (name, v) in golden_subspaces() {
        out.push(CheckItem::new(format!("gamma(alpha(V)) = V for V = {name}"), true, round_trip_alpha_gamma(&v, None)));
        let genus = v.genus();
        let codim = alpha_slice(&v, v.conductor().deg0().max(1), 2 * v.conductor().deg0().max(1))
            .to_ideal()
            .and_then(|m| codim_invariant(&m, None));
        out.push(CheckItem::new(
            format!("codimension of (p^-1 alpha(V))_+ equals the genus for V = {name}"),
            genus.map_or_else(|e| e.to_string(), |g| g.to_string()),
            codim,
        ));
    }
    for n in [0, 1, 3] {
        out.push(CheckItem::new(format!("D(Q[z], O(X_{n})).Q[z] = O(X_{n})"), true, check_p1(&x_n(n), None)));
    }
    let m1 = IdealGens::auto(vec![op("z"), op("d - 1/z")]).expect("nonzero");
    out.push(CheckItem::new(
        "gamma(zA + (d - 1/z)A) = z^-1 (Q + z^2 Q[z])",
        true,
        gamma(&m1, None).and_then(|w| Ok(w == GrPoint::new(cusp.clone())?)),
    ));
    let scaled = i_n(3).map(|g| Ok(&DiffOp::z() * g)).expect("nonzero");
    out.push(CheckItem::new(
        "canonical form of z I_3 has gamma-image O(X_3)",
        true,
        canonical_form(&scaled, None)
            .and_then(|c| gamma(&c, None))
            .and_then(|w| Ok(w == GrPoint::with_multiplier(x_n(3), Poly::one())?)),
    ));
    out.push(CheckItem::new("canonical form of A", IdealGens::unit(), canonical_form(&IdealGens::unit(), Some((0, 0)))));

    // adelic Grassmannian
    let w1pt = GrPoint::new(cusp.clone()).expect("pd");
    out.push(CheckItem::new("z^-1 (Q + z^2 Q[z]) is self-adjoint", true, w1pt.adjoint().map(|a| a == w1pt)));
    out.push(CheckItem::new("O(X_2) is a maximal module", true, GrPoint::new(x_n(2)).and_then(|w| w.is_maximal(3))));
    out.push(CheckItem::new(
        "Q + z^2 Q[z] is not maximal over Q + z^3 Q[z]",
        false,
        GrPoint::new(cusp.clone()).and_then(|w| w.is_maximal_over(&x_n(2), 3)),
    ));

    // Calogero–Moser
    let p1 = cm::standard_pair(&[Scalar::zero()], &[Scalar::zero()]).expect("n = 1");
    out.push(CheckItem::new(
        "ideal of the pair ([0], [0]) is (-z)A + (-d + 1/z)A",
        true,
        cm::ideal_representative(&p1).map(|i| i.gens() == [op("-z"), op("-d + 1/z")]),
    ));
    out.push(CheckItem::new("genus of the empty pair", 0, cm::genus_of_pair(&CMPair::empty())));
    for n in 1..=3usize {
        let pos: Vec<Scalar> = (0..n as i64).map(Scalar::from_int).collect();
        let p = cm::standard_pair(&pos, &vec![Scalar::zero(); n]).expect("distinct");
        out.push(CheckItem::new(format!("genus of the standard pair of size {n}"), n, cm::genus_of_pair(&p)));
        out.push(CheckItem::new(
            format!("Fourier flow keeps genus {n}"),
            n,
            cm::genus_of_pair(&cm::fourier_flow(&p)),
        ));
        if n <= 2 {
            for e in [2, 3] {
                out.push(CheckItem::new(
                    format!("KP flow by z^{e} matches d -> d - {e}z^{} for size {n}", e - 1),
                    true,
                    cm::kp_equivariance_check(&p, &Poly::monomial(Scalar::one(), e), None),
                ));
            }
        }
    }

    // LM invariant
    for n in 1..=6 {
        out.push(CheckItem::new(format!("LM of Q + z^{} Q[z]", n + 1), 2 * n, monomial::lm_invariant(&Semigroup::x_n(n))));
    }
    out.push(CheckItem::new(
        "LM of Q[z^2, z^5]",
        6,
        monomial::lm_invariant(&Semigroup::generated_by(&[2, 5]).expect("coprime")),
    ));
    out.push(CheckItem::new(
        "LM = 2 genus for every semigroup with gaps at most 6",
        true,
        all(Semigroup::all_with_max_gap(6).iter().map(monomial::check_lm_equals_twice_genus)),
    ));
    out
}

/// A random operator of order at most `order` whose coefficients have
/// small integer numerators and denominators among `1, z, z - 1`.
pub fn random_op<R: Rng>(rng: &mut R, order: usize, degree: usize, poles: bool) -> DiffOp {
    let dens = [Poly::one(), Poly::z(), Poly::linear_root(&Scalar::one())];
    let coeffs = (0..=rng.gen_range(0..=order))
        .map(|_| {
            let num = Poly::new((0..=rng.gen_range(0..=degree)).map(|_| Scalar::from_int(rng.gen_range(-3..=3))).collect());
            let den = if poles { dens[rng.gen_range(0..dens.len())].clone() } else { Poly::one() };
            RatFun::new(num, den).expect("nonzero denominator")
        })
        .collect();
    DiffOp::new(coeffs)
}

/// A random semigroup with at most `max_gaps` gaps, all below 9.
pub fn random_semigroup<R: Rng>(rng: &mut R, max_gaps: usize) -> Semigroup {
    loop {
        let mut gaps: Vec<usize> = (1..9).filter(|_| rng.gen_bool(0.35)).collect();
        gaps.truncate(max_gaps);
        if let Ok(sg) = Semigroup::new(gaps) {
            return sg;
        }
    }
}

fn count<F: FnMut(&mut ChaCha8Rng) -> Result<bool>>(name: &str, cases: usize, rng: &mut ChaCha8Rng, mut f: F) -> CheckItem {
    let mut ok = 0;
    let mut first_err = None;
    for _ in 0..cases {
        match f(rng) {
            Ok(true) => ok += 1,
            Ok(false) => {}
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    match first_err {
        Some(e) => CheckItem::new(name, format!("{cases}/{cases}"), Err::<String, _>(e)),
        None => CheckItem::new(name, format!("{cases}/{cases}"), Ok(format!("{ok}/{cases}"))),
    }
}

/// Randomized identities, reproducible from `seed`.
pub fn property_suite(seed: u64, cases: usize) -> Vec<CheckItem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let few = cases.div_ceil(5).max(1);
    let mut out = Vec::new();
    out.push(count("associativity and distributivity in Q(z)[d]", cases, &mut rng, |r| {
        let (a, b, c) = (random_op(r, 2, 2, true), random_op(r, 2, 2, true), random_op(r, 2, 2, true));
        Ok(&(&a * &b) * &c == &a * &(&b * &c) && &a * &(&b + &c) == &(&a * &b) + &(&a * &c))
    }));
    out.push(count("commutator order at most r + s - 1", cases, &mut rng, |r| {
        let (a, b) = (random_op(r, 3, 2, true), random_op(r, 3, 2, true));
        let c = a.commutator(&b);
        Ok(match (a.order(), b.order(), c.order()) {
            (Some(x), Some(y), Some(o)) => o < x + y,
            _ => true,
        })
    }));
    out.push(count("automorphisms are multiplicative", cases, &mut rng, |r| {
        let (a, b) = (random_op(r, 2, 2, false), random_op(r, 2, 2, false));
        let p = Poly::new((0..4).map(|_| Scalar::from_int(r.gen_range(-2..=2))).collect());
        let kp = (&a * &b).kp_automorphism(&p) == &a.kp_automorphism(&p) * &b.kp_automorphism(&p);
        let ft = (&a * &b).fourier_automorphism()? == &a.fourier_automorphism()? * &b.fourier_automorphism()?;
        Ok(kp && ft)
    }));
    out.push(count("(a b).f = a.(b.f)", cases, &mut rng, |r| {
        let (a, b) = (random_op(r, 2, 2, true), random_op(r, 2, 2, true));
        let f = RatFun::new(
            Poly::new((0..3).map(|_| Scalar::from_int(r.gen_range(-3..=3))).collect()),
            Poly::linear_root(&Scalar::from_int(2)),
        )?;
        Ok((&a * &b).apply(&f) == a.apply(&b.apply(&f)))
    }));
    out.push(count("maps_into agrees with applying the operator to monomials", cases, &mut rng, |r| {
        let v = random_semigroup(r, 3).subspace();
        let w = random_semigroup(r, 3).subspace();
        let poles = r.gen_bool(0.5);
        let d = random_op(r, 2, 2, poles);
        let bound = 2 * (v.conductor().deg0() + w.conductor().deg0() + 2) + 4;
        let brute = (0..bound).filter(|&k| v.contains(&Poly::monomial(Scalar::one(), k))).all(|k| {
            d.apply_poly(&Poly::monomial(Scalar::one(), k)).as_poly().is_some_and(|p| w.contains(p))
        });
        Ok(maps_into(&d, &v, &w) == brute)
    }));
    out.push(count("codimension route equals genus for semigroups", few, &mut rng, |r| {
        let v = random_semigroup(r, 4).subspace();
        let n = v.conductor().deg0().max(1);
        let m = alpha_slice(&v, n, 2 * n).to_ideal()?;
        Ok(codim_invariant(&m, None)? == v.genus()?)
    }));
    out.push(count("genus is invariant under z -> a z + b", cases, &mut rng, |r| {
        let v = random_semigroup(r, 4).subspace();
        let a = Scalar::new(r.gen_range(1..=3) * if r.gen_bool(0.5) { 1 } else { -1 }, r.gen_range(1..=2));
        let b = Scalar::from_int(r.gen_range(-3..=3));
        Ok(v.reparametrize(&a, &b)?.genus()? == v.genus()?)
    }));
    out.push(count("adjoint is an involution preserving genus", few, &mut rng, |r| {
        let v = random_semigroup(r, 3).subspace().reparametrize(&Scalar::one(), &Scalar::from_int(r.gen_range(-2..=2)))?;
        let w = GrPoint::new(v)?;
        let c = w.adjoint()?;
        Ok(c.adjoint()? == w && c.genus()? == w.genus()?)
    }));
    out.push(count("gamma ignores redundant generators", few, &mut rng, |r| {
        let n = r.gen_range(1..=3);
        let i = i_n(n);
        let h = &random_op(r, 1, 2, false) + &DiffOp::d_pow(3);
        let mut gens = i.gens().to_vec();
        gens.push(&gens[1] * &h);
        Ok(gamma(&IdealGens::auto(gens)?, None)? == gamma(&i, None)?)
    }));
    out.push(count("Calogero–Moser pairs of size n have genus n", few, &mut rng, |r| {
        let n = r.gen_range(0..=3);
        let p = cm::random_pair(n, r);
        Ok(cm::genus_of_pair(&p)? == n)
    }));
    out
}
