use std::fmt;

use serde::{Deserialize, Serialize};

use super::Matrix;
use crate::arith::{Poly, RatFun, Scalar};
use crate::correspondence::{gamma, IdealGens};
use crate::error::{Error, Result};
use crate::weyl::DiffOp;

/// A pair of `n x n` matrices with `[X, Y] + I` of rank one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CMPair {
    x: Matrix,
    y: Matrix,
}

/// `v w = [X, Y] + I` with the first nonzero entry of `w` equal to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOneFactor {
    pub v: Vec<Scalar>,
    pub w: Vec<Scalar>,
}

fn defect(x: &Matrix, y: &Matrix) -> Matrix {
    &x.commutator(y) + &Matrix::identity(x.size())
}

/// Whether `[X, Y] + I` has rank exactly one.
pub fn verify_rank_one(x: &Matrix, y: &Matrix) -> Result<bool> {
    if x.size() != y.size() {
        return Err(Error::Input(format!("matrix sizes differ: {} and {}", x.size(), y.size())));
    }
    Ok(x.size() == 0 || defect(x, y).rank() == 1)
}

impl CMPair {
    pub fn new(x: Matrix, y: Matrix) -> Result<Self> {
        if !verify_rank_one(&x, &y)? {
            return Err(Error::Input("[X, Y] + I does not have rank one".into()));
        }
        Ok(CMPair { x, y })
    }

    /// The pair of size zero.
    pub fn empty() -> Self {
        CMPair { x: Matrix::zero(0), y: Matrix::zero(0) }
    }

    pub fn size(&self) -> usize {
        self.x.size()
    }

    pub fn x(&self) -> &Matrix {
        &self.x
    }

    pub fn y(&self) -> &Matrix {
        &self.y
    }

    /// Parses `{"n": k, "x": [[...]], "y": [[...]]}`.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let raw: RawPair = serde_json::from_value(v.clone()).map_err(|e| Error::Input(format!("pair: {e}")))?;
        if raw.x.size() != raw.n || raw.y.size() != raw.n {
            return Err(Error::Input(format!("pair: declared n = {} does not match the matrices", raw.n)));
        }
        Self::new(raw.x, raw.y)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(RawPair { n: self.size(), x: self.x.clone(), y: self.y.clone() }).expect("plain data")
    }
}

#[derive(Serialize, Deserialize)]
struct RawPair {
    n: usize,
    x: Matrix,
    y: Matrix,
}

impl fmt::Display for CMPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X = {}, Y = {}", self.x, self.y)
    }
}

/// `X = diag(positions)`, `Y_ij = 1 / (x_i - x_j)` off the diagonal and
/// `Y_ii = momenta[i]`.
pub fn standard_pair(positions: &[Scalar], momenta: &[Scalar]) -> Result<CMPair> {
    let n = positions.len();
    if momenta.len() != n {
        return Err(Error::Input(format!("{n} positions but {} momenta", momenta.len())));
    }
    let mut y = Matrix::diag(momenta).rows().to_vec();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let diff = &positions[i] - &positions[j];
                if diff.is_zero() {
                    return Err(Error::Input(format!("repeated position {}", positions[i])));
                }
                y[i][j] = diff.inv();
            }
        }
    }
    CMPair::new(Matrix::diag(positions), Matrix::new(y)?)
}

/// Factors `[X, Y] + I = v w`.
pub fn factor_rank_one(p: &CMPair) -> Result<RankOneFactor> {
    let m = defect(&p.x, &p.y);
    let n = m.size();
    if n == 0 {
        return Ok(RankOneFactor { v: Vec::new(), w: Vec::new() });
    }
    if m.rank() != 1 {
        return Err(Error::InvariantViolation("[X, Y] + I does not have rank one".into()));
    }
    let (i0, j0) = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| !m.get(i, j).is_zero())
        .expect("rank one");
    let pivot = m.get(i0, j0).inv();
    let w = m.rows()[i0].iter().map(|a| a * &pivot).collect();
    let v = (0..n).map(|i| m.get(i, j0).clone()).collect();
    Ok(RankOneFactor { v, w })
}

/// Generators `G1 = det(Y - zI)` and
/// `G2 = det(X - dI) - G1^(-1) (w adj(Y - zI)) (adj(X - dI) v)`
/// of the fractional ideal attached to the pair.
///
/// Both matrix inverses live in commutative subrings (`Q[z]` and `Q[d]`),
/// so they are evaluated as adjugates over determinants and the factors
/// are multiplied out with functions to the left of powers of `d`.
pub fn ideal_representative(p: &CMPair) -> Result<IdealGens> {
    let n = p.size();
    if n == 0 {
        return Ok(IdealGens::unit());
    }
    let f = factor_rank_one(p)?;
    let sign = if n.is_multiple_of(2) { Scalar::one() } else { -Scalar::one() };
    // det(M - tI) = (-1)^n det(tI - M), adj(M - tI) = (-1)^(n-1) adj(tI - M);
    // the two adjugate signs cancel in the product.
    let (py, ny) = p.y.char_poly_adjugate();
    let (px, nx) = p.x.char_poly_adjugate();
    let g1 = py.scale(&sign);
    // a_j(z) = sum_l z^l (w N_l)_j
    let wn: Vec<Vec<Scalar>> = ny.iter().map(|m| m.vec_mul(&f.w)).collect();
    let a: Vec<Poly> = (0..n).map(|j| Poly::new(wn.iter().map(|row| row[j].clone()).collect())).collect();
    let g1inv = RatFun::from_poly(g1.clone()).inv()?;
    let mut coeffs = Vec::with_capacity(n + 1);
    #[allow(clippy::needless_range_loop)]
    for k in 0..=n {
        let mut c = RatFun::constant(&sign * &px.coeff(k));
        if k < n {
            let nv = nx[k].mul_vec(&f.v);
            let s: Poly = a.iter().zip(&nv).fold(Poly::zero(), |acc, (aj, b)| &acc + &aj.scale(b));
            c = &c - &(&g1inv * &RatFun::from_poly(s));
        }
        coeffs.push(c);
    }
    IdealGens::auto(vec![DiffOp::from_poly(g1), DiffOp::new(coeffs)])
}

/// Genus of the point `gamma(ideal_representative(p))`; equals the size of
/// the pair.
pub fn genus_of_pair(p: &CMPair) -> Result<usize> {
    gamma(&ideal_representative(p)?, None)?.genus()
}

/// `(X, Y) -> (X + p'(Y), Y)`.
pub fn kp_flow(p: &CMPair, poly: &Poly) -> CMPair {
    CMPair { x: &p.x + &p.y.eval_poly(&poly.derivative()), y: p.y.clone() }
}

/// `(X, Y) -> (-Y, X)`.
pub fn fourier_flow(p: &CMPair) -> CMPair {
    CMPair { x: -&p.y, y: p.x.clone() }
}

/// `(X, Y) -> (g X g^(-1), g Y g^(-1))`.
pub fn conjugate(p: &CMPair, g: &Matrix) -> Result<CMPair> {
    if g.size() != p.size() {
        return Err(Error::Input(format!("conjugating matrix has size {}, pair has size {}", g.size(), p.size())));
    }
    let gi = g.inverse().ok_or_else(|| Error::Input(format!("conjugating matrix {g} is singular")))?;
    Ok(CMPair { x: &(g * &p.x) * &gi, y: &(g * &p.y) * &gi })
}

/// Compares the KP flow on the pair with the automorphism
/// `d -> d - p'(z)` on its ideal, through `gamma`.
pub fn kp_equivariance_check(p: &CMPair, poly: &Poly, k_bound: Option<usize>) -> Result<bool> {
    let moved = ideal_representative(p)?.map(|g| Ok(g.kp_automorphism(poly)))?;
    let lhs = gamma(&moved, k_bound)?;
    let rhs = gamma(&ideal_representative(&kp_flow(p, poly))?, k_bound)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn ints(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&a| s(a)).collect()
    }

    #[test]
    fn rank_one_examples() {
        let z1 = Matrix::zero(1);
        assert!(verify_rank_one(&z1, &z1).unwrap());
        let std2 = standard_pair(&ints(&[0, 1]), &ints(&[0, 0])).unwrap();
        assert!(verify_rank_one(std2.x(), std2.y()).unwrap());
        let id = Matrix::identity(2);
        assert!(!verify_rank_one(&id, &id).unwrap());
        assert!(verify_rank_one(&id, &z1).is_err());
        assert!(standard_pair(&ints(&[1, 1]), &ints(&[0, 0])).is_err());
    }

    #[test]
    fn factors() {
        let p1 = standard_pair(&ints(&[0]), &ints(&[0])).unwrap();
        assert_eq!(factor_rank_one(&p1).unwrap(), RankOneFactor { v: ints(&[1]), w: ints(&[1]) });
        let p2 = standard_pair(&ints(&[0, 1]), &ints(&[0, 0])).unwrap();
        assert_eq!(factor_rank_one(&p2).unwrap(), RankOneFactor { v: ints(&[1, 1]), w: ints(&[1, 1]) });
        let g = Matrix::from_ints(&[&[2, 1], &[1, 1]]).unwrap();
        let c = conjugate(&p2, &g).unwrap();
        let f = factor_rank_one(&c).unwrap();
        // (g v, w g^-1) up to a scalar
        let gv = g.mul_vec(&ints(&[1, 1]));
        let ratio = &f.v[0] / &gv[0];
        assert_eq!(f.v, gv.iter().map(|a| a * &ratio).collect::<Vec<_>>());
    }

    #[test]
    fn one_point_ideal() {
        let p = standard_pair(&ints(&[0]), &ints(&[0])).unwrap();
        let i = ideal_representative(&p).unwrap();
        assert_eq!(i.gens()[0], "-z".parse().unwrap());
        assert_eq!(i.gens()[1], "-d + 1/z".parse().unwrap());
        assert_eq!(genus_of_pair(&p).unwrap(), 1);
        assert_eq!(ideal_representative(&CMPair::empty()).unwrap(), IdealGens::unit());
        assert_eq!(genus_of_pair(&CMPair::empty()).unwrap(), 0);
    }

    #[test]
    fn cleared_generators_are_weyl() {
        let p = standard_pair(&ints(&[0, 1, 3]), &[s(1), Scalar::new(1, 2), s(-2)]).unwrap();
        let i = ideal_representative(&p).unwrap();
        let g1 = i.gens()[0].coeff(0);
        assert!(i.gens()[0].is_weyl());
        assert!(i.gens()[1].left_mul(&g1).is_weyl());
    }

    #[test]
    fn genus_of_standard_pairs() {
        for n in 0..4 {
            let p = standard_pair(&ints(&(0..n).collect::<Vec<_>>()), &vec![s(0); n as usize]).unwrap();
            assert_eq!(genus_of_pair(&p).unwrap(), n as usize);
        }
    }

    #[test]
    fn flows() {
        let p = standard_pair(&ints(&[0, 2]), &ints(&[1, -1])).unwrap();
        assert_eq!(kp_flow(&p, &Poly::constant(s(5))), p);
        let sq = Poly::monomial(s(1), 2);
        assert_eq!(kp_flow(&p, &sq).x(), &(p.x() + &p.y().scale(&s(2))));
        let f2 = fourier_flow(&fourier_flow(&p));
        assert_eq!((f2.x(), f2.y()), (&-p.x(), &-p.y()));
        for q in [kp_flow(&p, &sq), fourier_flow(&p), conjugate(&p, &Matrix::from_ints(&[&[0, 1], &[1, 0]]).unwrap()).unwrap()] {
            assert!(verify_rank_one(q.x(), q.y()).unwrap());
            assert_eq!(genus_of_pair(&q).unwrap(), 2);
        }
        assert_eq!(conjugate(&p, &Matrix::identity(2)).unwrap(), p);
        assert!(conjugate(&p, &Matrix::zero(2)).is_err());
    }

    #[test]
    fn conjugation_fixes_gamma() {
        let p = standard_pair(&ints(&[0, 1]), &ints(&[2, 0])).unwrap();
        let g = Matrix::from_ints(&[&[1, 3], &[-1, 2]]).unwrap();
        let a = gamma(&ideal_representative(&p).unwrap(), None).unwrap();
        let b = gamma(&ideal_representative(&conjugate(&p, &g).unwrap()).unwrap(), None).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn kp_equivariance() {
        let cube = Poly::monomial(s(1), 3);
        let sq = Poly::monomial(s(1), 2);
        let p1 = standard_pair(&ints(&[0]), &ints(&[0])).unwrap();
        let p2 = standard_pair(&ints(&[0, 1]), &ints(&[0, 0])).unwrap();
        for p in [&p1, &p2] {
            assert!(kp_equivariance_check(p, &Poly::constant(s(3)), None).unwrap());
            assert!(kp_equivariance_check(p, &sq, None).unwrap());
            assert!(kp_equivariance_check(p, &cube, None).unwrap());
        }
    }

    #[test]
    fn json_round_trip() {
        let p = standard_pair(&ints(&[0, 1]), &[Scalar::new(1, 2), s(0)]).unwrap();
        let j = p.to_json();
        assert_eq!(CMPair::from_json(&j).unwrap(), p);
        let bad = serde_json::json!({"n": 2, "x": [[1, 0], [0, 1]], "y": [[1, 0], [0, 1]]});
        assert!(CMPair::from_json(&bad).is_err());
        let v: serde_json::Value = serde_json::from_str(r#"{"n":1,"x":[["1/2"]],"y":[[3]]}"#).unwrap();
        assert_eq!(CMPair::from_json(&v).unwrap().size(), 1);
    }
}
