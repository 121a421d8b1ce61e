//! Subspaces of `Q[z]` of finite codimension containing a nonzero ideal.

use std::fmt;
use std::sync::OnceLock;

use super::{Functional, LocalSubspace, OrderSequence};
use crate::arith::linalg::{dense, sparse, Echelon, SparseRow};
use crate::arith::residue::{classify, split_run, Class, Step};
use crate::arith::{Poly, Scalar};
use crate::error::{Error, Result};

/// A subspace `V` of `Q[z]` with `P Q[z] ⊆ V` for a monic polynomial `P`.
///
/// `V` is stored as the conductor `P` together with the linear conditions
/// cutting `V / P Q[z]` out of `Q[z] / (P)`, written against the monomial
/// coordinates `1, z, ..., z^(deg P - 1)`. The conductor is always the
/// minimal one and the conditions are in reduced echelon form, so equal
/// subspaces have equal representations.
///
/// The support (roots of `P`) need not be rational: local questions are
/// answered over the residue rings of the squarefree part of `P`, which
/// are split only as far as the computation requires.
#[derive(Clone)]
pub struct PDSubspace {
    conductor: Poly,
    conditions: Vec<SparseRow>,
    basis: Vec<Poly>,
    branches: OnceLock<Vec<LocalBranch>>,
}

/// Local data over one factor of the support: every root of `modulus`
/// has the vanishing-order sequence `orders`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalBranch {
    pub modulus: Poly,
    pub orders: OrderSequence,
}

impl PartialEq for PDSubspace {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor && self.conditions == other.conditions
    }
}

impl Eq for PDSubspace {}

impl std::hash::Hash for PDSubspace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.conductor.hash(state);
        self.conditions.hash(state);
    }
}

/// Coefficient vector of `f mod p` of length `deg p`.
fn residue_vector(f: &Poly, p: &Poly) -> Vec<Scalar> {
    let n = p.deg0();
    let r = if f.degree().is_some_and(|d| d >= n) { f.rem(p) } else { f.clone() };
    let mut v = r.coeffs().to_vec();
    v.resize(n, Scalar::zero());
    v
}

fn dot(row: &SparseRow, v: &[Scalar]) -> Scalar {
    row.iter().map(|(c, a)| a * &v[*c]).sum()
}

/// The functional `f -> row . (z f mod p)` given `f -> row . (f mod p)`.
fn shift_functional(row: &[Scalar], p: &Poly) -> Vec<Scalar> {
    let n = row.len();
    let mut out = vec![Scalar::zero(); n];
    out[..n - 1].clone_from_slice(&row[1..]);
    let top: Scalar = row.iter().zip(p.coeffs()).map(|(r, c)| r * c).sum();
    out[n - 1] = -top;
    out
}

impl PDSubspace {
    /// All of `Q[z]`.
    pub fn whole() -> Self {
        PDSubspace { conductor: Poly::one(), conditions: Vec::new(), basis: Vec::new(), branches: OnceLock::new() }
    }

    /// `{f : row . (f mod p) = 0 for every row}`, rows indexed by the
    /// monomials `z^j`, `j < deg p`.
    pub fn from_conditions(p: &Poly, rows: &[Vec<Scalar>]) -> Result<Self> {
        let p = Self::check_conductor(p)?;
        let n = p.deg0();
        let mut e = Echelon::new();
        for r in rows {
            if r.len() > n {
                return Err(Error::Input(format!("condition has {} entries, conductor degree is {n}", r.len())));
            }
            e.insert(&sparse(r));
        }
        Ok(Self::build(p, e))
    }

    /// `span(gens) + p Q[z]`.
    pub fn from_basis(p: &Poly, gens: &[Poly]) -> Result<Self> {
        let p = Self::check_conductor(p)?;
        let n = p.deg0();
        let mut span = Echelon::new();
        for g in gens {
            span.insert(&sparse(&residue_vector(g, &p)));
        }
        let mut e = Echelon::new();
        for k in span.kernel(n) {
            e.insert(&k);
        }
        Ok(Self::build(p, e))
    }

    /// The ideal `g Q[z]`.
    pub fn ideal(g: &Poly) -> Result<Self> {
        Self::from_basis(g, &[])
    }

    /// Intersection of local subspaces at distinct rational points.
    pub fn from_locals(locals: &[LocalSubspace]) -> Result<Self> {
        let mut p = Poly::one();
        for (i, l) in locals.iter().enumerate() {
            if locals[..i].iter().any(|m| m.point == l.point) {
                return Err(Error::Input(format!("point {} listed twice", l.point)));
            }
            let l = LocalSubspace::new(l.point.clone(), l.conductor, l.conditions.clone())?;
            p = &p * &Poly::linear_root(&l.point).pow(l.conductor);
        }
        let n = p.deg0();
        let rows: Vec<Vec<Scalar>> =
            locals.iter().flat_map(|l| l.conditions.iter().map(|c| c.on_monomials(n))).collect();
        Self::from_conditions(&p, &rows)
    }

    /// The span of `z^i` over all `i` not in `gaps`.
    pub fn from_gaps(gaps: &[usize]) -> Result<Self> {
        if gaps.contains(&0) {
            return Err(Error::Input("0 cannot be a gap".into()));
        }
        let Some(&max) = gaps.iter().max() else {
            return Ok(Self::whole());
        };
        let p = Poly::monomial(Scalar::one(), max + 1);
        let rows: Vec<Vec<Scalar>> = gaps
            .iter()
            .map(|&g| {
                let mut r = vec![Scalar::zero(); max + 1];
                r[g] = Scalar::one();
                r
            })
            .collect();
        Self::from_conditions(&p, &rows)
    }

    fn check_conductor(p: &Poly) -> Result<Poly> {
        if p.is_zero() {
            return Err(Error::Input("conductor must be a nonzero polynomial".into()));
        }
        Ok(p.monic())
    }

    /// Normalizes to the minimal conductor and caches a basis.
    fn build(p: Poly, conds: Echelon) -> Self {
        let n = p.deg0();
        if conds.rank() == 0 {
            return Self::whole();
        }
        // Largest ideal inside V, modulo p: all f with z^k f in V for k < n.
        let mut ideal_rows = Echelon::new();
        for r in conds.rows() {
            let mut cur = dense(r, n);
            for _ in 0..n {
                ideal_rows.insert(&sparse(&cur));
                cur = shift_functional(&cur, &p);
            }
        }
        let mut minimal = p.clone();
        for k in ideal_rows.kernel(n) {
            minimal = Poly::gcd(&minimal, &Poly::new(dense(&k, n)));
            if minimal.is_one() {
                break;
            }
        }
        if minimal != p {
            let basis = kernel_polys(&conds, n);
            return Self::from_basis(&minimal, &basis).expect("nonzero conductor");
        }
        let basis = kernel_polys(&conds, n);
        PDSubspace { conductor: p, conditions: conds.canonical_rows(), basis, branches: OnceLock::new() }
    }

    /// The minimal monic `P` with `P Q[z] ⊆ V`.
    pub fn conductor(&self) -> &Poly {
        &self.conductor
    }

    /// Defining conditions against the coordinates of `f mod P`.
    pub fn conditions(&self) -> &[SparseRow] {
        &self.conditions
    }

    /// Polynomials of degree below `deg P` spanning `V` modulo `P Q[z]`.
    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    /// Codimension of `V` in `Q[z]`.
    pub fn codim(&self) -> usize {
        self.conditions.len()
    }

    pub fn is_whole(&self) -> bool {
        self.conditions.is_empty()
    }

    /// Values of the defining conditions on `f`.
    pub fn condition_values(&self, f: &Poly) -> Vec<Scalar> {
        if self.is_whole() {
            return Vec::new();
        }
        let v = residue_vector(f, &self.conductor);
        self.conditions.iter().map(|r| dot(r, &v)).collect()
    }

    pub fn contains(&self, f: &Poly) -> bool {
        if self.is_whole() {
            return true;
        }
        let v = residue_vector(f, &self.conductor);
        self.conditions.iter().all(|r| dot(r, &v).is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains_subspace(&self, other: &PDSubspace) -> bool {
        self.conductor.divides(&other.conductor) && other.basis.iter().all(|b| self.contains(b))
    }

    /// Elements of `V` spanning everything of degree `< deg P + extra`.
    pub fn spanning_set(&self, extra: usize) -> Vec<Poly> {
        let mut out = self.basis.clone();
        out.extend((0..extra).map(|k| self.conductor.shift(k)));
        out
    }

    /// `gcd` of all elements of `V`.
    pub fn content(&self) -> Poly {
        self.basis.iter().fold(self.conductor.clone(), |g, b| Poly::gcd(&g, b))
    }

    /// `g V`.
    pub fn mul_poly(&self, g: &Poly) -> Result<Self> {
        let gens: Vec<Poly> = self.basis.iter().map(|b| b * g).collect();
        Self::from_basis(&(&self.conductor * g), &gens)
    }

    /// `V / g`, when `g` divides every element of `V`.
    pub fn div_poly(&self, g: &Poly) -> Result<Self> {
        let p = self.conductor.exact_div(g)?;
        let gens = self.basis.iter().map(|b| b.exact_div(g)).collect::<Result<Vec<_>>>()?;
        Self::from_basis(&p, &gens)
    }

    /// `{f(a z + b) : f in V}`.
    pub fn reparametrize(&self, a: &Scalar, b: &Scalar) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::Input("reparametrization needs a nonzero scale".into()));
        }
        let gens: Vec<Poly> = self.basis.iter().map(|f| f.compose_affine(a, b)).collect();
        Self::from_basis(&self.conductor.compose_affine(a, b), &gens)
    }

    /// Local order data over the support, one entry per branch.
    pub fn branches(&self) -> &[LocalBranch] {
        self.branches.get_or_init(|| self.compute_branches())
    }

    fn compute_branches(&self) -> Vec<LocalBranch> {
        let p = &self.conductor;
        if p.is_constant() {
            return Vec::new();
        }
        let s = p.squarefree_part();
        let mut e = 1;
        let mut se = s.clone();
        while !p.divides(&se) {
            se = &se * &s;
            e += 1;
        }
        let mut gens = self.basis.clone();
        gens.extend((0..e).map(|j| p.shift(j)));
        let inv_fact: Vec<Scalar> = (0..e).map(|j| Scalar::factorial(j).inv()).collect();
        let taylor: Vec<Vec<Poly>> = gens
            .iter()
            .map(|f| (0..e).map(|j| f.nth_derivative(j).scale(&inv_fact[j])).collect())
            .collect();
        let out = split_run::<_, ()>(&s, |m| {
            Ok(match echelon_orders(&taylor, m, e) {
                Ok(pivots) => Step::Done(OrderSequence::from_achieved(pivots, e)),
                Err(g) => Step::Split(g),
            })
        })
        .expect("infallible");
        out.into_iter().map(|(modulus, orders)| LocalBranch { modulus, orders }).collect()
    }

    /// The order sequence at a rational point (`0 < 1 < 2 < ...` off the support).
    pub fn order_sequence(&self, point: &Scalar) -> OrderSequence {
        self.branches()
            .iter()
            .find(|b| b.modulus.eval(point).is_zero())
            .map(|b| b.orders.clone())
            .unwrap_or_else(OrderSequence::full)
    }

    /// `sum over all (complex) support points of sum_i (g + i - r_i)`.
    pub fn genus(&self) -> Result<usize> {
        self.check_primary_decomposable()?;
        Ok(self.branches().iter().map(|b| b.modulus.deg0() * b.orders.local_genus()).sum())
    }

    /// True when `V` is the intersection of its localizations, i.e. the
    /// codimension equals the total number of missing orders.
    pub fn is_primary_decomposable(&self) -> bool {
        let missing: usize = self.branches().iter().map(|b| b.modulus.deg0() * b.orders.gaps()).sum();
        missing == self.codim()
    }

    pub(crate) fn check_primary_decomposable(&self) -> Result<()> {
        if self.is_primary_decomposable() {
            Ok(())
        } else {
            Err(Error::HypothesisViolation(format!("subspace {self} is not primary decomposable")))
        }
    }

    /// `prod modulus^g` over the branches: the multiplier making
    /// `W = q^(-1) V` a point of index zero.
    pub fn default_multiplier(&self) -> Poly {
        self.branches().iter().fold(Poly::one(), |acc, b| &acc * &b.modulus.pow(b.orders.gaps()))
    }

    /// Decomposition into local subspaces at rational points.
    ///
    /// Fails with `Unsupported` when the support is not rational.
    pub fn locals(&self) -> Result<Vec<LocalSubspace>> {
        self.check_primary_decomposable()?;
        let p = &self.conductor;
        if !p.splits() {
            return Err(Error::Unsupported(format!("support of {self} is not rational (conductor {p})")));
        }
        let mut out = Vec::new();
        for lambda in p.rational_roots() {
            let n = p.root_multiplicity(&lambda);
            let mut span = Echelon::new();
            for b in &self.basis {
                let mut t = b.taylor_at(&lambda);
                t.resize(n.max(t.len()), Scalar::zero());
                t.truncate(n);
                span.insert(&sparse(&t));
            }
            let mut ann = Echelon::new();
            for k in span.kernel(n) {
                ann.insert(&k);
            }
            let conditions = ann
                .canonical_rows()
                .iter()
                .map(|r| {
                    let w: Vec<Scalar> =
                        dense(r, n).iter().enumerate().map(|(s, c)| c / &Scalar::factorial(s)).collect();
                    let last = w.iter().rposition(|c| !c.is_zero()).expect("nonzero row");
                    Functional::new(lambda.clone(), w[..=last].to_vec())
                })
                .collect::<Result<Vec<_>>>()?;
            if !conditions.is_empty() {
                out.push(LocalSubspace { point: lambda, conductor: n, conditions });
            }
        }
        Ok(out)
    }
}

/// Echelon pivots of Taylor rows over `Q[x]/(m)`, or a splitting factor.
fn echelon_orders(taylor: &[Vec<Poly>], m: &Poly, e: usize) -> std::result::Result<Vec<usize>, Poly> {
    let mut rows: Vec<Vec<Poly>> = taylor.iter().map(|r| r.iter().map(|a| a.rem(m)).collect()).collect();
    let mut used = vec![false; rows.len()];
    let mut pivots = Vec::new();
    for col in 0..e {
        let mut choice = None;
        let mut split = None;
        for (r, row) in rows.iter().enumerate() {
            if used[r] {
                continue;
            }
            match classify(&row[col], m) {
                Class::Zero => {}
                Class::Unit(inv) => {
                    choice = Some((r, inv));
                    break;
                }
                Class::Split(g) => {
                    if split.is_none() {
                        split = Some(g);
                    }
                }
            }
        }
        let Some((r, inv)) = choice else {
            if let Some(g) = split {
                return Err(g);
            }
            continue;
        };
        used[r] = true;
        pivots.push(col);
        let prow: Vec<Poly> = rows[r].iter().map(|a| (a * &inv).rem(m)).collect();
        for (k, row) in rows.iter_mut().enumerate() {
            if used[k] || row[col].is_zero() {
                continue;
            }
            let a = row[col].clone();
            for c in col..e {
                if !prow[c].is_zero() {
                    row[c] = (&row[c] - &(&a * &prow[c])).rem(m);
                }
            }
        }
        rows[r] = prow;
    }
    Ok(pivots)
}

fn kernel_polys(conds: &Echelon, n: usize) -> Vec<Poly> {
    let mut k: Vec<Poly> = conds.kernel(n).iter().map(|v| Poly::new(dense(v, n))).collect();
    k.sort_by_key(|p| p.degree());
    k
}

impl fmt::Display for PDSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_whole() {
            return f.write_str("Q[z]");
        }
        let gens: Vec<String> = self.basis.iter().map(|b| b.to_string()).collect();
        write!(f, "span{{{}}} + ({}) Q[z]", gens.join(", "), self.conductor)
    }
}

impl fmt::Debug for PDSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PDSubspace({self})")
    }
}
