//! Vanishing-order sequences of local subspaces.

use std::fmt;

use serde::{Deserialize, Serialize};

/// The strictly increasing orders `r_0 < r_1 < ...` achieved by a local
/// subspace, eventually `r_i = g + i` where `g` counts the missing orders.
///
/// Stored as the entries before the tail starts plus `g`; the head never
/// ends in an entry already equal to `g + i`, so the form is unique.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrderSequence {
    head: Vec<usize>,
    gaps: usize,
}

impl OrderSequence {
    /// The sequence `0 < 1 < 2 < ...`.
    pub fn full() -> Self {
        OrderSequence { head: Vec::new(), gaps: 0 }
    }

    /// From the achieved orders below `bound`, every order `>= bound`
    /// being achieved.
    pub fn from_achieved(mut achieved: Vec<usize>, bound: usize) -> Self {
        achieved.sort_unstable();
        achieved.dedup();
        assert!(achieved.iter().all(|&r| r < bound), "achieved order at or above the bound");
        let gaps = bound - achieved.len();
        let tail_start = achieved.iter().enumerate().position(|(i, &r)| r == gaps + i).unwrap_or(achieved.len());
        achieved.truncate(tail_start);
        OrderSequence { head: achieved, gaps }
    }

    /// The number `g` of non-achieved orders.
    pub fn gaps(&self) -> usize {
        self.gaps
    }

    /// Entries before the tail `r_i = g + i`.
    pub fn head(&self) -> &[usize] {
        &self.head
    }

    /// `r_i`.
    pub fn get(&self, i: usize) -> usize {
        self.head.get(i).copied().unwrap_or(self.gaps + i)
    }

    /// The non-achieved orders.
    pub fn missing(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.gaps);
        let mut next = 0;
        for i in 0..=self.head.len() {
            let r = self.get(i);
            out.extend(next..r);
            next = r + 1;
        }
        out
    }

    /// `sum_i (g + i - r_i)`.
    pub fn local_genus(&self) -> usize {
        self.head.iter().enumerate().map(|(i, &r)| self.gaps + i - r).sum()
    }
}

impl fmt::Display for OrderSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown = self.head.len() + 2;
        let parts: Vec<String> = (0..shown).map(|i| self.get(i).to_string()).collect();
        write!(f, "{} < ... (g = {})", parts.join(" < "), self.gaps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_trims_tail() {
        let s = OrderSequence::from_achieved(vec![0, 4, 5], 6);
        assert_eq!(s.gaps(), 3);
        assert_eq!(s.head(), &[0]);
        assert_eq!(s.get(1), 4);
        assert_eq!(s.missing(), vec![1, 2, 3]);
        assert_eq!(s.local_genus(), 3);
    }

    #[test]
    fn gap_free_is_genus_zero() {
        let s = OrderSequence::from_achieved(vec![2, 3], 4);
        assert_eq!(s.gaps(), 2);
        assert!(s.head().is_empty());
        assert_eq!(s.local_genus(), 0);
        assert_eq!(OrderSequence::full().local_genus(), 0);
    }

    #[test]
    fn display() {
        let s = OrderSequence::from_achieved(vec![0, 1, 4], 5);
        assert_eq!(s.to_string(), "0 < 1 < 4 < 5 < ... (g = 2)");
    }
}
