//! Points `W = q^(-1) V` of the adelic Grassmannian.

use std::collections::BTreeMap;
use std::fmt;

use super::PDSubspace;
use crate::arith::linalg::{dense, sparse, Echelon};
use crate::arith::{Poly, RatFun, Scalar};
use crate::error::{Error, Result};

/// The subspace `W = q^(-1) V` of `Q(z)`.
///
/// Kept in the unique form where no nonconstant common factor of `q` and
/// of all of `V` can be cancelled; then `q` generates the ideal of
/// polynomials `h` with `h W ⊆ Q[z]`, and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrPoint {
    v: PDSubspace,
    q: Poly,
}

impl GrPoint {
    /// `q^(-1) V` with the default multiplier: `k_a` equal to the local
    /// codimension at every support point `a`.
    pub fn new(v: PDSubspace) -> Result<Self> {
        v.check_primary_decomposable()?;
        let q = v.default_multiplier();
        Self::with_multiplier(v, q)
    }

    /// `q^(-1) V`, canonicalized.
    pub fn with_multiplier(v: PDSubspace, q: Poly) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::Input("multiplier must be nonzero".into()));
        }
        let q = q.monic();
        let g = Poly::gcd(&v.content(), &q);
        if g.is_one() {
            return Ok(GrPoint { v, q });
        }
        Ok(GrPoint { v: v.div_poly(&g)?, q: q.exact_div(&g)? })
    }

    /// `Q[z]` itself.
    pub fn whole() -> Self {
        GrPoint { v: PDSubspace::whole(), q: Poly::one() }
    }

    /// The polynomial subspace `V = q W`.
    pub fn v(&self) -> &PDSubspace {
        &self.v
    }

    pub fn multiplier(&self) -> &Poly {
        &self.q
    }

    /// Exponents `k_a` of `q = prod (z - a)^k_a`, when `q` splits over Q.
    pub fn multipliers(&self) -> Option<BTreeMap<Scalar, usize>> {
        if !self.q.splits() {
            return None;
        }
        Some(self.q.rational_roots().into_iter().map(|a| {
            let k = self.q.root_multiplicity(&a);
            (a, k)
        }).collect())
    }

    /// `deg q - codim V`; zero for the points reached by the correspondences.
    pub fn index(&self) -> i64 {
        self.q.deg0() as i64 - self.v.codim() as i64
    }

    /// The differential genus.
    pub fn genus(&self) -> Result<usize> {
        self.v.genus()
    }

    pub fn contains(&self, f: &RatFun) -> bool {
        match f.mul_poly(&self.q).as_poly() {
            Some(p) => self.v.contains(p),
            None => false,
        }
    }

    /// Elements `q^(-1) b` spanning `W` modulo `q^(-1) P Q[z]`.
    pub fn basis(&self) -> Vec<RatFun> {
        let qi = RatFun::from_poly(self.q.clone()).inv().expect("nonzero multiplier");
        self.v.basis().iter().map(|b| qi.mul_poly(b)).collect()
    }

    /// `{f(a z + b) : f in W}`.
    pub fn reparametrize(&self, a: &Scalar, b: &Scalar) -> Result<Self> {
        Self::with_multiplier(self.v.reparametrize(a, b)?, self.q.compose_affine(a, b))
    }

    /// The ring `{f in Q[z] : f W ⊆ W}`, computed exactly modulo the
    /// conductor (which it always contains).
    ///
    /// `degree_bound` must be at least the conductor degree.
    pub fn coordinate_ring(&self, degree_bound: usize) -> Result<PDSubspace> {
        let p = self.v.conductor();
        let n = p.deg0();
        if degree_bound < n {
            return Err(Error::BoundTooSmall(format!(
                "degree bound {degree_bound} is below the conductor degree {n}"
            )));
        }
        let ring = stabilizer_mod_conductor(&self.v)?;
        // Closure under products, checked on the basis.
        let gens = ring.spanning_set(1);
        for (i, f) in gens.iter().enumerate() {
            for g in &gens[i..] {
                if !ring.contains(&(f * g)) {
                    return Err(Error::InvariantViolation(format!("stabilizer not closed under {f} * {g}")));
                }
            }
        }
        Ok(ring)
    }

    /// Rational functions with poles of order at most `pole_bound` on the
    /// support that stabilize `W`, modulo the conductor ideal.
    pub fn stabilizer_search(&self, pole_bound: usize) -> Result<Vec<RatFun>> {
        let p = self.v.conductor();
        let d = Poly::lcm(p, &self.q).squarefree_part().pow(pole_bound);
        let pd = p * &d;
        let n = pd.deg0();
        // Unknown u with deg u < deg(P d); f = u/d.
        // Constraints: d | u, and (u/d) b in V for every basis element b.
        let mut rows = Echelon::new();
        for k in 0..d.deg0() {
            // k-th coefficient of u mod d
            let row: Vec<Scalar> = (0..n).map(|j| Poly::monomial(Scalar::one(), j).rem(&d).coeff(k)).collect();
            rows.insert(&sparse(&row));
        }
        let sols = rows.kernel(n);
        // Restrict to u divisible by d, then impose membership.
        let cands: Vec<Poly> = sols.iter().map(|v| Poly::new(dense(v, n)).exact_div(&d)).collect::<Result<_>>()?;
        let mut cons = Echelon::new();
        for b in self.v.basis() {
            for cond in self.v.conditions() {
                let row: Vec<Scalar> = cands
                    .iter()
                    .map(|f| {
                        let prod = (f * b).rem(p);
                        cond.iter().map(|(c, a)| a * &prod.coeff(*c)).sum()
                    })
                    .collect();
                cons.insert(&sparse(&row));
            }
        }
        let mut out = Vec::new();
        for k in cons.kernel(cands.len()) {
            let f = k.iter().fold(Poly::zero(), |acc, (i, c)| &acc + &cands[*i].scale(c));
            out.push(RatFun::from_poly(f.rem(p)));
        }
        Ok(out)
    }

    /// Whether `W` is a maximal module over `ring`: no function found by
    /// [`GrPoint::stabilizer_search`] lies outside `ring`. Returns a
    /// stabilizing function outside `ring` when there is one.
    pub fn non_maximal_witness(&self, ring: &PDSubspace, pole_bound: usize) -> Result<Option<RatFun>> {
        if !ring.contains(&Poly::one()) {
            return Err(Error::Input(format!("{ring} is not a ring with unit")));
        }
        for f in self.stabilizer_search(pole_bound)? {
            match f.as_poly() {
                Some(p) if ring.contains(p) => {}
                _ => return Ok(Some(f)),
            }
        }
        // Stabilizer contains the conductor ideal P Q[z].
        for k in 0..ring.conductor().deg0().max(1) {
            let f = self.v.conductor().shift(k);
            if !ring.contains(&f) {
                return Ok(Some(RatFun::from_poly(f)));
            }
        }
        Ok(None)
    }

    pub fn is_maximal_over(&self, ring: &PDSubspace, pole_bound: usize) -> Result<bool> {
        Ok(self.non_maximal_witness(ring, pole_bound)?.is_none())
    }

    /// Maximality over the coordinate ring of `W`.
    pub fn is_maximal(&self, pole_bound: usize) -> Result<bool> {
        let ring = self.coordinate_ring(self.v.conductor().deg0())?;
        self.is_maximal_over(&ring, pole_bound)
    }

    /// The annihilator of `W` under `(f, g) -> res_oo f g dz`.
    ///
    /// Take `L = lcm(P, q)`, so `V ⊇ L Q[z]`, and `R = L / q`. The
    /// annihilator is `R^(-1) U` where `U ⊇ L Q[z]` and `u` pairs with `v`
    /// through the coefficient of `z^(deg L - 1)` in `u v mod L`.
    pub fn adjoint(&self) -> Result<Self> {
        let l = Poly::lcm(self.v.conductor(), &self.q);
        let n = l.deg0();
        let r = l.exact_div(&self.q)?;
        let extra = n - self.v.conductor().deg0();
        let rows: Vec<Vec<Scalar>> = self
            .v
            .spanning_set(extra)
            .iter()
            .map(|b| (0..n).map(|i| b.shift(i).rem(&l).coeff(n - 1)).collect())
            .collect();
        let u = PDSubspace::from_conditions(&l, &rows)?;
        Self::with_multiplier(u, r)
    }
}

/// `{f mod P : f V ⊆ V}` as a subspace containing `P Q[z]`.
fn stabilizer_mod_conductor(v: &PDSubspace) -> Result<PDSubspace> {
    let p = v.conductor();
    let n = p.deg0();
    if n == 0 {
        return Ok(PDSubspace::whole());
    }
    let mut cons = Echelon::new();
    for b in v.basis() {
        let prods: Vec<Poly> = (0..n).map(|j| b.shift(j).rem(p)).collect();
        for cond in v.conditions() {
            let row: Vec<Scalar> = prods.iter().map(|f| cond.iter().map(|(c, a)| a * &f.coeff(*c)).sum()).collect();
            cons.insert(&sparse(&row));
        }
    }
    let gens: Vec<Poly> = cons.kernel(n).iter().map(|k| Poly::new(dense(k, n))).collect();
    PDSubspace::from_basis(p, &gens)
}

impl fmt::Display for GrPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_one() {
            write!(f, "{}", self.v)
        } else {
            write!(f, "({})^-1 [{}]", self.q, self.v)
        }
    }
}

impl fmt::Debug for GrPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GrPoint({self})")
    }
}
