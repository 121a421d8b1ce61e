use diffgenus::arith::linalg::rank;
use diffgenus::arith::{Poly, RatFun, Scalar};
use diffgenus::cm::{conjugate, fourier_flow, kp_flow, standard_pair, verify_rank_one, Matrix};
use diffgenus::correspondence::maps_into;
use diffgenus::monomial::Semigroup;
use diffgenus::subspace::PDSubspace;
use diffgenus::weyl::DiffOp;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Scalar::new(n, d)),
        (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| Scalar::new(n, d)),
    ]
}

fn small_scalar() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Scalar::new(n, d))
}

fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_scalar(), 0..=max_len).prop_map(Poly::new)
}

fn denominator() -> impl Strategy<Value = Poly> {
    prop_oneof![
        Just(Poly::one()),
        Just(Poly::z()),
        Just(Poly::from_ints(&[-1, 1])),
        Just(Poly::from_ints(&[1, 0, 1])),
        Just(Poly::from_ints(&[0, 0, 1])),
    ]
}

fn ratfun() -> impl Strategy<Value = RatFun> {
    (poly(3), denominator()).prop_map(|(n, d)| RatFun::new(n, d).unwrap())
}

fn op() -> impl Strategy<Value = DiffOp> {
    prop::collection::vec(ratfun(), 0..=3).prop_map(DiffOp::new)
}

fn weyl_op() -> impl Strategy<Value = DiffOp> {
    prop::collection::vec(poly(3), 0..=3).prop_map(|cs| DiffOp::new(cs.into_iter().map(RatFun::from_poly).collect()))
}

/// Rank as the size of the largest nonvanishing minor.
fn minor_rank(m: &[Vec<Scalar>]) -> usize {
    fn det(m: &[Vec<Scalar>], rows: &[usize], cols: &[usize]) -> Scalar {
        if rows.is_empty() {
            return Scalar::one();
        }
        let mut acc = Scalar::zero();
        for (k, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = &m[rows[0]][c] * &det(m, &rows[1..], &rest);
            if k % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        acc
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect()).collect()
    }
    let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
    (1..=r.min(c))
        .rev()
        .find(|&k| subsets(r, k).iter().any(|rs| subsets(c, k).iter().any(|cs| !det(m, rs, cs).is_zero())))
        .unwrap_or(0)
}

proptest! {
    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
        }
        prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn poly_ring_and_division(a in poly(5), b in poly(4), c in poly(3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(&(&q * &b) + &r, a.clone());
            prop_assert!(r.is_zero() || r.deg0() < b.deg0());
            let g = Poly::gcd(&a, &b);
            prop_assert!(g.divides(&a) && g.divides(&b));
            prop_assert!(g.is_monic());
        }
        prop_assert_eq!((&a * &b).derivative(), &(&a.derivative() * &b) + &(&a * &b.derivative()));
    }

    #[test]
    fn poly_part_splits_off_a_proper_fraction(f in ratfun(), g in poly(4)) {
        let h = &f + &RatFun::from_poly(g);
        let (p, rest) = h.split_poly_part();
        prop_assert_eq!(&RatFun::from_poly(p.clone()) + &rest, h.clone());
        prop_assert!(rest.is_zero() || rest.num().deg0() < rest.den().deg0());
        prop_assert_eq!(h.poly_part(), p);
    }

    #[test]
    fn rank_matches_minor_oracle(m in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 1..=4)) {
        let m: Vec<Vec<Scalar>> = m.into_iter().map(|r| r.into_iter().map(Scalar::from_int).collect()).collect();
        prop_assert_eq!(rank(&m), minor_rank(&m));
    }

    #[test]
    fn operator_text_round_trips(a in op()) {
        prop_assert_eq!(a.to_string().parse::<DiffOp>().unwrap(), a);
    }

    #[test]
    fn dz_minus_zd_is_one(a in op()) {
        let comm = DiffOp::d().commutator(&DiffOp::z());
        prop_assert_eq!(comm, DiffOp::one());
        // [d, f] = f' for any function f
        let f = a.coeff(0);
        prop_assert_eq!(DiffOp::d().commutator(&DiffOp::from_ratfun(f.clone())), DiffOp::from_ratfun(f.derivative()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn operator_algebra(a in op(), b in op(), c in op()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if let (Some(r), Some(s)) = (a.order(), b.order()) {
            prop_assert_eq!((&a * &b).order(), Some(r + s));
            if let Some(o) = a.commutator(&b).order() {
                prop_assert!(o < r + s);
            }
        }
    }

    #[test]
    fn apply_composes(a in op(), b in op(), f in ratfun()) {
        let f = f.compose_affine(&Scalar::one(), &Scalar::from_int(5));
        prop_assert_eq!((&a * &b).apply(&f), a.apply(&b.apply(&f)));
    }

    #[test]
    fn automorphisms_are_multiplicative(a in weyl_op(), b in weyl_op(), p in poly(4)) {
        let ab = &a * &b;
        prop_assert_eq!(ab.kp_automorphism(&p), &a.kp_automorphism(&p) * &b.kp_automorphism(&p));
        prop_assert_eq!(
            ab.fourier_automorphism().unwrap(),
            &a.fourier_automorphism().unwrap() * &b.fourier_automorphism().unwrap()
        );
        // the Fourier map has order four: d -> -z -> -d -> z
        let f4 = (0..4).try_fold(a.clone(), |x, _| x.fourier_automorphism()).unwrap();
        prop_assert_eq!(f4, a);
    }
}

fn semigroup() -> impl Strategy<Value = Semigroup> {
    prop::collection::btree_set(1usize..9, 0..=4).prop_filter_map("not a semigroup", |g| Semigroup::new(g).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn local_genus_matches_vanishing_orders(sg in semigroup()) {
        // orders are the elements of the semigroup; the local genus is sum (g + i - r_i)
        let v = sg.subspace();
        let g = sg.gaps().len();
        let orders: Vec<usize> = (0..).filter(|&i| sg.contains(i as i64)).take(sg.max_gap() + 2).collect();
        let brute: usize = orders.iter().enumerate().map(|(i, &r)| g + i - r).sum();
        prop_assert_eq!(v.genus().unwrap(), brute);
        prop_assert_eq!(v.codim(), g);
    }

    #[test]
    fn genus_is_invariant_under_reparametrization(sg in semigroup(), a in 1i64..=4, b in -3i64..=3) {
        let v = sg.subspace();
        let moved = v.reparametrize(&Scalar::new(a, 2), &Scalar::from_int(b)).unwrap();
        prop_assert_eq!(moved.genus().unwrap(), v.genus().unwrap());
    }

    #[test]
    fn padding_the_conductor_changes_nothing(sg in semigroup(), pad in 1usize..4) {
        let v = sg.subspace();
        let n = v.conductor().deg0() + pad;
        let p = Poly::monomial(Scalar::one(), n);
        let rows: Vec<Vec<Scalar>> = sg
            .gaps()
            .iter()
            .map(|&g| (0..n).map(|i| if i == g { Scalar::one() } else { Scalar::zero() }).collect())
            .collect();
        let padded = PDSubspace::from_conditions(&p, &rows).unwrap();
        prop_assert_eq!(&padded, &v);
        prop_assert_eq!(padded.genus().unwrap(), v.genus().unwrap());
    }

    #[test]
    fn maps_into_agrees_with_brute_force(v in semigroup(), w in semigroup(), d in op()) {
        let (v, w) = (v.subspace(), w.subspace());
        let bound = 2 * (w.conductor().deg0() + d.order().unwrap_or(0) + 4) + 4;
        let brute = (0..bound).filter(|&k| v.contains(&Poly::monomial(Scalar::one(), k))).all(|k| {
            d.apply_poly(&Poly::monomial(Scalar::one(), k)).as_poly().is_some_and(|p| w.contains(p))
        });
        prop_assert_eq!(maps_into(&d, &v, &w), brute);
    }

    #[test]
    fn flows_preserve_rank_one(
        n in 1usize..=4,
        momenta in prop::collection::vec(small_scalar(), 4),
        p in poly(4),
        g in prop::collection::vec(-2i64..=2, 16),
    ) {
        let pos: Vec<Scalar> = (0..n as i64).map(|i| Scalar::from_int(2 * i - 3)).collect();
        let pair = standard_pair(&pos, &momenta[..n]).unwrap();
        for q in [kp_flow(&pair, &p), fourier_flow(&pair)] {
            prop_assert!(verify_rank_one(q.x(), q.y()).unwrap());
        }
        let g = Matrix::new((0..n).map(|i| (0..n).map(|j| Scalar::from_int(g[i * 4 + j])).collect()).collect()).unwrap();
        if let Ok(q) = conjugate(&pair, &g) {
            prop_assert!(verify_rank_one(q.x(), q.y()).unwrap());
            for k in 1..4 {
                prop_assert_eq!(q.x().pow(k).trace(), pair.x().pow(k).trace());
                prop_assert_eq!(q.y().pow(k).trace(), pair.y().pow(k).trace());
            }
        }
    }
}
