//! Acceptance criteria 1 to 10, one line each. Runs without the libtest
//! harness so the lines appear in `cargo test` output.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use diffgenus::arith::{Poly, RatFun, Scalar};
use diffgenus::cm::{fourier_flow, genus_of_pair, kp_equivariance_check, random_pair, standard_pair, CMPair};
use diffgenus::correspondence::{alpha_slice, codim_invariant, gamma, maps_into, round_trip_alpha_gamma};
use diffgenus::monomial::{check_lm_equals_twice_genus, graded_operators, lm_invariant, Semigroup};
use diffgenus::subspace::{GrPoint, PDSubspace};
use diffgenus::suite::{golden_subspaces, i_n, random_op, random_semigroup, two_three_gap_subspace};
use diffgenus::weyl::DiffOp;
use diffgenus::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(r: Result<(bool, String)>) -> Outcome {
    match r {
        Ok((pass, detail)) => Outcome { pass, detail },
        Err(e) => Outcome { pass: false, detail: format!("error ({}): {e}", e.name()) },
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Result<(bool, String)>) -> Outcome {
    let start = Instant::now();
    let mut o = outcome(f());
    let took = start.elapsed();
    if let Some(limit) = limit {
        if took > limit {
            o.pass = false;
            o.detail = format!("{}; took {took:.2?}, limit {limit:?}", o.detail);
            return o;
        }
    }
    o.detail = format!("{} [{took:.2?}]", o.detail);
    o
}

fn x_n(n: usize) -> PDSubspace {
    Semigroup::x_n(n).subspace()
}

fn genus_table() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for n in 0..=10 {
        let g = x_n(n).genus()?;
        if g != n {
            bad.push(format!("X_{n}: {g}"));
        }
    }
    for r in 1..=6 {
        let g = Semigroup::generated_by(&[2, 2 * r + 1])?.subspace().genus()?;
        if g != r * (r + 1) / 2 {
            bad.push(format!("Y_{r}: {g}"));
        }
    }
    let v = two_three_gap_subspace();
    let g = v.genus()?;
    let ring = GrPoint::new(v)?.coordinate_ring(16)?;
    if g != 4 || ring != x_n(3) {
        bad.push(format!("gaps {{2, 3}}: genus {g}, ring {ring}"));
    }
    Ok((bad.is_empty(), format!("X_0..X_10, Y_1..Y_6, gaps {{2, 3}} (genus 4, ring Q + z^4 Q[z]); mismatches {bad:?}")))
}

fn x3_y2() -> Result<(bool, String)> {
    let a = x_n(3).genus()?;
    let b = Semigroup::generated_by(&[2, 5])?.subspace().genus()?;
    Ok((a == 3 && b == 3, format!("d(X_3) = {a}, d(Y_2) = {b}")))
}

fn round_trips() -> Result<(bool, String)> {
    let mut ok = true;
    for n in 0..=5 {
        ok &= gamma(&i_n(n), None)? == GrPoint::with_multiplier(x_n(n), Poly::one())?;
    }
    let list = golden_subspaces();
    for (_, v) in &list {
        ok &= round_trip_alpha_gamma(v, None)?;
    }
    Ok((ok, format!("gamma(I_n) = O(X_n) for n <= 5; gamma(alpha(V)) = V for {} subspaces", list.len())))
}

fn codim_route() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut cases: Vec<PDSubspace> = golden_subspaces().into_iter().map(|(_, v)| v).collect();
    cases.extend((0..10).map(|_| random_semigroup(&mut rng, 4).subspace()));
    let mut bad = Vec::new();
    for v in &cases {
        let n = v.conductor().deg0().max(1);
        let m = alpha_slice(v, n, 2 * n).to_ideal()?;
        let (c, g) = (codim_invariant(&m, None)?, v.genus()?);
        if c != g {
            bad.push(format!("{v}: codim {c}, genus {g}"));
        }
    }
    Ok((bad.is_empty(), format!("{} subspaces (golden + 10 random semigroups); mismatches {bad:?}", cases.len())))
}

fn cm_strata() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut bad = Vec::new();
    for n in 0..=4 {
        for _ in 0..25 {
            let p = random_pair(n, &mut rng);
            let g = genus_of_pair(&p)?;
            if g != n {
                bad.push(format!("n = {n}: genus {g} for {p}"));
            }
        }
    }
    Ok((bad.is_empty(), format!("125 pairs, n = 0..4; mismatches {bad:?}")))
}

fn equivariance() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut pairs: Vec<CMPair> = vec![CMPair::empty()];
    for n in 1..=2usize {
        let pos: Vec<Scalar> = (0..n as i64).map(Scalar::from_int).collect();
        pairs.push(standard_pair(&pos, &vec![Scalar::zero(); n])?);
        pairs.push(random_pair(n, &mut rng));
    }
    let mut kp = 0;
    let mut ok = true;
    for p in &pairs {
        for e in [2, 3] {
            ok &= kp_equivariance_check(p, &Poly::monomial(Scalar::one(), e), None)?;
            kp += 1;
        }
    }
    let mut ft = 0;
    for n in 0..=3 {
        for _ in 0..3 {
            let p = random_pair(n, &mut rng);
            ok &= genus_of_pair(&fourier_flow(&p))? == n && genus_of_pair(&p)? == n;
            ft += 1;
        }
    }
    Ok((ok, format!("{kp} KP checks (p = z^2, z^3, n <= 2), {ft} Fourier genus checks (n <= 3)")))
}

fn lm() -> Result<(bool, String)> {
    let mut ok = true;
    for n in 1..=6 {
        ok &= lm_invariant(&Semigroup::x_n(n))? == 2 * n;
    }
    let all = Semigroup::all_with_max_gap(6);
    for sg in &all {
        ok &= check_lm_equals_twice_genus(sg)?;
    }
    Ok((ok, format!("LM(X_n) = 2n for n <= 6; LM = 2d on all {} semigroups with gaps <= 6", all.len())))
}

fn cusp_witnesses() -> Result<(bool, String)> {
    let cusp = x_n(1);
    let sg = Semigroup::x_n(1);
    let a: DiffOp = "d^2 - 2/z*d".parse()?;
    let b: DiffOp = "z*d^2 - d".parse()?;
    let exact = maps_into(&a, &cusp, &cusp) && maps_into(&b, &cusp, &cusp);
    let graded = graded_operators(-2, &sg, 2) == vec![a] && graded_operators(-1, &sg, 2) == vec![b];
    Ok((exact && graded, format!("exact membership {exact}, graded pieces {graded}")))
}

fn algebra() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    let mut failures = 0;
    for _ in 0..500 {
        let a = random_op(&mut rng, 3, 2, true);
        let b = random_op(&mut rng, 3, 2, true);
        let c = random_op(&mut rng, 2, 2, true);
        let (wa, wb) = (random_op(&mut rng, 2, 2, false), random_op(&mut rng, 2, 2, false));
        let p = Poly::new((0..4).map(|_| Scalar::from_int(rng.gen_range(-2..=2))).collect());
        let f = RatFun::new(
            Poly::new((0..3).map(|_| Scalar::from_int(rng.gen_range(-3..=3))).collect()),
            Poly::from_ints(&[-3, 0, 1]),
        )?;
        let mut ok = &(&a * &b) * &c == &a * &(&b * &c);
        ok &= &a * &(&b + &c) == &(&a * &b) + &(&a * &c);
        ok &= DiffOp::d().commutator(&DiffOp::z()) == DiffOp::one();
        if let (Some(r), Some(s), Some(o)) = (a.order(), b.order(), a.commutator(&b).order()) {
            ok &= o < r + s;
        }
        let wab = &wa * &wb;
        ok &= wab.kp_automorphism(&p) == &wa.kp_automorphism(&p) * &wb.kp_automorphism(&p);
        ok &= wab.fourier_automorphism()? == &wa.fourier_automorphism()? * &wb.fourier_automorphism()?;
        ok &= (&a * &b).apply(&f) == a.apply(&b.apply(&f));
        failures += usize::from(!ok);
    }
    Ok((failures == 0, format!("500 cases, {failures} failures")))
}

fn exclusions() -> Result<(bool, String)> {
    // Non-isomorphism of the D(X_n), transitivity on C_n and the Chern-class
    // description are not computations. Their computable shadows: the
    // genus separates the X_n, and flows never leave a stratum.
    let genera: Vec<usize> = (0..=10).map(|n| x_n(n).genus()).collect::<Result<_>>()?;
    let distinct = genera.windows(2).all(|w| w[0] < w[1]);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut stable = true;
    for n in 1..=3 {
        let p = random_pair(n, &mut rng);
        stable &= genus_of_pair(&fourier_flow(&fourier_flow(&p)))? == n;
    }
    Ok((distinct && stable, "excluded theorems replaced by invariant-level checks: genus separates X_0..X_10, flows preserve strata".into()))
}

fn main() -> ExitCode {
    let criteria: Vec<(usize, &str, Outcome)> = vec![
        (1, "genus golden table", timed(Some(Duration::from_secs(1)), genus_table)),
        (2, "X_3 and Y_2 share the genus", timed(None, x3_y2)),
        (3, "alpha/gamma round trips", timed(Some(Duration::from_secs(10)), round_trips)),
        (4, "codimension route", timed(None, codim_route)),
        (5, "Calogero–Moser strata", timed(Some(Duration::from_secs(60)), cm_strata)),
        (6, "KP and Fourier equivariance", timed(None, equivariance)),
        (7, "LM invariant", timed(Some(Duration::from_secs(30)), lm)),
        (8, "cusp operators", timed(None, cusp_witnesses)),
        (9, "operator algebra properties", timed(None, algebra)),
        (10, "excluded theorems", timed(None, exclusions)),
    ];
    let mut all = true;
    for (n, name, o) in &criteria {
        println!("criterion {n:>2} {}: {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        all &= o.pass;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
