//! Sparse exact Gaussian elimination over ℚ.
//!
//! Rows are kept in semi-echelon form with the pivot at each row's smallest
//! index. With coordinates ordered by ascending degree this is a local order:
//! low-degree coordinates are eliminated first, and the remainder of a vector
//! is supported on non-pivot coordinates only, which makes it canonical.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::qpoly::Q;

pub type SparseVec = BTreeMap<usize, Q>;

/// `v += c·w`, dropping zeros.
pub fn axpy(v: &mut SparseVec, c: &Q, w: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (k, x) in w {
        let e = v.entry(*k).or_insert_with(Q::zero);
        *e += c * x;
        if e.is_zero() {
            v.remove(k);
        }
    }
}

#[derive(Clone, Debug)]
struct Row {
    vec: SparseVec,
    combo: SparseVec,
}

/// Incrementally built row space with optional tracking of how each basis row
/// combines the inserted inputs.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<Row>,
    pivot_of: BTreeMap<usize, usize>,
    inputs: usize,
    track: bool,
    kernel: Vec<SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    /// Record combinations, so that `solve` and `kernel` become available.
    pub fn tracking() -> Self {
        Echelon {
            track: true,
            ..Echelon::default()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn num_inputs(&self) -> usize {
        self.inputs
    }

    pub fn is_pivot(&self, idx: usize) -> bool {
        self.pivot_of.contains_key(&idx)
    }

    /// Reduce `v` against the rows: `v = remainder + Σ combo[l]·input[l]`.
    /// The remainder has no entry at any pivot index.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut rem = v.clone();
        let mut combo = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let next = rem
                .range(cursor..)
                .find(|(k, _)| self.pivot_of.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            let row = &self.rows[self.pivot_of[&k]];
            let neg = -c.clone();
            axpy(&mut rem, &neg, &row.vec);
            if self.track {
                axpy(&mut combo, &c, &row.combo);
            }
            cursor = k + 1;
        }
        (rem, combo)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Canonical representative of `v` modulo the span.
    pub fn normal_form(&self, v: &SparseVec) -> SparseVec {
        self.reduce(v).0
    }

    /// Insert a vector; returns whether it enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let label = self.inputs;
        self.inputs += 1;
        let (rem, used) = self.reduce(&v);
        let mut combo = SparseVec::new();
        if self.track {
            combo.insert(label, Q::one());
            axpy(&mut combo, &-Q::one(), &used);
        }
        let Some((&pivot, lead)) = rem.iter().next() else {
            if self.track {
                self.kernel.push(combo);
            }
            return false;
        };
        let inv = lead.recip();
        let vec: SparseVec = rem.iter().map(|(k, x)| (*k, x * &inv)).collect();
        let combo = combo.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        self.pivot_of.insert(pivot, self.rows.len());
        self.rows.push(Row { vec, combo });
        true
    }

    /// Coefficients `c` with `v = Σ c[l]·input[l]`, if `v` is in the span.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        assert!(self.track, "solve requires a tracking echelon");
        let (rem, combo) = self.reduce(v);
        rem.is_empty().then_some(combo)
    }

    /// A basis of the linear relations among the inserted inputs.
    pub fn kernel(&self) -> &[SparseVec] {
        assert!(self.track, "kernel requires a tracking echelon");
        &self.kernel
    }
}

/// Basis of `{c : Σ c[j]·vectors[j] = 0}`.
pub fn kernel(vectors: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::tracking();
    for v in vectors {
        e.insert(v.clone());
    }
    e.kernel().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::q;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(k, v)| (k, q(v))).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::tracking();
        assert!(e.insert(sv(&[(0, 1), (1, 2)])));
        assert!(e.insert(sv(&[(1, 1), (2, 1)])));
        assert!(!e.insert(sv(&[(0, 1), (1, 3), (2, 1)])));
        assert_eq!(e.rank(), 2);
        let target = sv(&[(0, 2), (1, 5), (2, 1)]);
        let combo = e.solve(&target).unwrap();
        // re-substitute
        let inputs = [sv(&[(0, 1), (1, 2)]), sv(&[(1, 1), (2, 1)]), sv(&[(0, 1), (1, 3), (2, 1)])];
        let mut acc = SparseVec::new();
        for (l, c) in &combo {
            axpy(&mut acc, c, &inputs[*l]);
        }
        assert_eq!(acc, target);
        assert_eq!(e.kernel().len(), 1);
    }

    #[test]
    fn normal_form_avoids_pivots() {
        let mut e = Echelon::new();
        e.insert(sv(&[(0, 1), (3, 1)]));
        let nf = e.normal_form(&sv(&[(0, 5), (1, 1)]));
        assert_eq!(nf, sv(&[(1, 1), (3, -5)]));
    }
}
