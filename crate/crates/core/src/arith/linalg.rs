//! Exact linear algebra over the rationals.
//!
//! [`Echelon`] is an incrementally maintained reduced row-echelon basis of
//! sparse rows. Everything else (rank, kernels, membership in a span) goes
//! through it.

use std::collections::HashMap;

use super::Scalar;

/// A sparse vector: `(column, value)` pairs, sorted by column, no zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

/// Converts a dense slice to a sparse row.
pub fn sparse(dense: &[Scalar]) -> SparseRow {
    dense
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

/// Expands a sparse row to length `n`.
pub fn dense(row: &SparseRow, n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (c, v) in row {
        out[*c] = v.clone();
    }
    out
}

/// `a + c * b`.
pub fn axpy(a: &SparseRow, c: &Scalar, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale_row(a: &SparseRow, c: &Scalar) -> SparseRow {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, v)| (*i, v * c)).collect()
}

fn entry(row: &SparseRow, col: usize) -> Option<&Scalar> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|k| &row[k].1)
}

/// Reduced row-echelon basis of a subspace of `Q^n`, built incrementally.
///
/// Each stored row has a leading 1 in its pivot column and zeros in every
/// other pivot column, so the stored form of a given subspace is unique
/// once rows are sorted by pivot ([`Echelon::canonical_rows`]).
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseRow>,
    pivot_of_row: Vec<usize>,
    row_of_pivot: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivot_of_row
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.row_of_pivot.contains_key(&col)
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    /// Rows sorted by pivot column.
    pub fn canonical_rows(&self) -> Vec<SparseRow> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivot_of_row[i]);
        idx.into_iter().map(|i| self.rows[i].clone()).collect()
    }

    /// Residue of `row` modulo the span: zero iff `row` lies in the span.
    pub fn reduce(&self, row: &SparseRow) -> SparseRow {
        let mut out = row.clone();
        for (col, v) in row {
            if let Some(&r) = self.row_of_pivot.get(col) {
                out = axpy(&out, &-v, &self.rows[r]);
            }
        }
        out
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Adds `row` to the span. Returns the new pivot column, or `None` if
    /// the row was already dependent.
    pub fn insert(&mut self, row: &SparseRow) -> Option<usize> {
        let red = self.reduce(row);
        let (p, lead) = red.first()?.clone();
        let red = scale_row(&red, &lead.inv());
        for r in self.rows.iter_mut() {
            if let Some(c) = entry(r, p) {
                let c = -c;
                *r = axpy(r, &c, &red);
            }
        }
        self.row_of_pivot.insert(p, self.rows.len());
        self.pivot_of_row.push(p);
        self.rows.push(red);
        Some(p)
    }

    /// Basis of `{x in Q^n : row . x = 0 for every stored row}`.
    pub fn kernel(&self, n: usize) -> Vec<SparseRow> {
        let mut by_free: HashMap<usize, SparseRow> = HashMap::new();
        for (r, row) in self.rows.iter().enumerate() {
            let p = self.pivot_of_row[r];
            for (c, v) in row {
                if *c != p {
                    by_free.entry(*c).or_default().push((p, -v));
                }
            }
        }
        (0..n)
            .filter(|c| !self.is_pivot(*c))
            .map(|c| {
                let mut v = by_free.remove(&c).unwrap_or_default();
                v.push((c, Scalar::one()));
                v.sort_by_key(|e| e.0);
                v
            })
            .collect()
    }
}

/// Result of [`rational_row_reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReduced {
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row-echelon form of a dense matrix; zero rows are dropped.
pub fn rational_row_reduce(rows: &[Vec<Scalar>]) -> RowReduced {
    let n = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut e = Echelon::new();
    for r in rows {
        e.insert(&sparse(r));
    }
    let canon = e.canonical_rows();
    let mut pivots: Vec<usize> = e.pivots().to_vec();
    pivots.sort_unstable();
    RowReduced { rank: canon.len(), rows: canon.iter().map(|r| dense(r, n)).collect(), pivots }
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(&sparse(r));
    }
    e.rank()
}

/// Solves `A x = b` for dense square or rectangular `A`; returns one
/// solution if any exists.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = a.first().map_or(0, Vec::len);
    let mut e = Echelon::new();
    for (row, rhs) in a.iter().zip(b) {
        let mut r = sparse(row);
        if !rhs.is_zero() {
            r.push((n, rhs.clone()));
        }
        e.insert(&r);
    }
    if e.is_pivot(n) {
        return None;
    }
    let mut x = vec![Scalar::zero(); n];
    for (r, row) in e.rows().iter().enumerate() {
        let p = e.pivots()[r];
        if let Some(v) = entry(row, n) {
            x[p] = v.clone();
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect()
    }

    #[test]
    fn identity_is_fixed() {
        let id = m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let r = rational_row_reduce(&id);
        assert_eq!(r.rows, id);
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn rank_one() {
        let r = rational_row_reduce(&m(&[&[1, 2], &[2, 4]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 9], &[0, 0, 1, 1]]);
        let mut e = Echelon::new();
        for r in &a {
            e.insert(&sparse(r));
        }
        let k = e.kernel(4);
        assert_eq!(k.len(), 4 - e.rank());
        for v in &k {
            let v = dense(v, 4);
            for r in &a {
                let dot: Scalar = r.iter().zip(&v).map(|(x, y)| x * y).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let x = solve(&a, &[Scalar::from_int(3), Scalar::from_int(1)]).unwrap();
        assert_eq!(x, vec![Scalar::from_int(2), Scalar::from_int(1)]);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(solve(&b, &[Scalar::one(), Scalar::one()]).is_none());
    }
}
