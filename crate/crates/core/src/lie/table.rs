//! Structure constants of a graded Lie algebra on a fixed basis.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::linalg::{rref, sparse_axpy, to_dense, SparseVec, Q};

/// `[e_i, e_j]` for `i < j`, with per-basis-vector degrees.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BracketTable {
    degrees: Vec<usize>,
    entries: BTreeMap<(usize, usize), SparseVec>,
}

impl BracketTable {
    pub fn new(degrees: Vec<usize>) -> Self {
        Self { degrees, entries: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Sets `[e_i, e_j] = v` (and so `[e_j, e_i] = -v`).
    pub fn set(&mut self, i: usize, j: usize, v: SparseVec) {
        assert!(i != j, "diagonal brackets vanish");
        let (key, v) = if i < j { ((i, j), v) } else { ((j, i), v.into_iter().map(|(k, x)| (k, -x)).collect()) };
        if v.is_empty() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, v);
        }
    }

    /// Nonzero entries `(i, j) -> [e_i, e_j]` with `i < j`.
    pub fn entries(&self) -> &BTreeMap<(usize, usize), SparseVec> {
        &self.entries
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> SparseVec {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => SparseVec::new(),
            Less => self.entries.get(&(i, j)).cloned().unwrap_or_default(),
            Greater => self
                .entries
                .get(&(j, i))
                .map(|v| v.iter().map(|(k, x)| (*k, -x.clone())).collect())
                .unwrap_or_default(),
        }
    }

    pub fn bracket(&self, v: &SparseVec, w: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in v {
            for (j, b) in w {
                if i == j {
                    continue;
                }
                let e = self.basis_bracket(*i, *j);
                if !e.is_empty() {
                    sparse_axpy(&mut out, &(a * b), &e);
                }
            }
        }
        out
    }

    /// First basis triple violating the Jacobi identity, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let unit = |i: usize| SparseVec::from([(i, Q::one())]);
        for i in 0..n {
            for j in i + 1..n {
                let ij = self.basis_bracket(i, j);
                for k in j + 1..n {
                    let jk = self.basis_bracket(j, k);
                    let ki = self.basis_bracket(k, i);
                    if ij.is_empty() && jk.is_empty() && ki.is_empty() {
                        continue;
                    }
                    let mut s = self.bracket(&unit(i), &jk);
                    sparse_axpy(&mut s, &Q::one(), &self.bracket(&unit(j), &ki));
                    sparse_axpy(&mut s, &Q::one(), &self.bracket(&unit(k), &ij));
                    if !s.is_empty() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// First pair whose bracket leaves degree `deg i + deg j`.
    pub fn grading_violation(&self) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .find(|((i, j), v)| {
                let d = self.degrees[*i] + self.degrees[*j];
                v.keys().any(|k| self.degrees[*k] != d)
            })
            .map(|(k, _)| *k)
    }

    /// Dimensions of `γ_1 ⊇ γ_2 ⊇ ...` until the series reaches zero, computed
    /// from the table alone. The trailing zero is included.
    pub fn lower_central_series(&self) -> Vec<usize> {
        let n = self.dim();
        let mut current: Vec<SparseVec> = (0..n).map(|i| SparseVec::from([(i, Q::one())])).collect();
        let mut dims = vec![n];
        while !current.is_empty() {
            let mut rows: Vec<Vec<Q>> = Vec::new();
            for x in 0..n {
                let ex = SparseVec::from([(x, Q::one())]);
                for w in &current {
                    let b = self.bracket(&ex, w);
                    if !b.is_empty() {
                        rows.push(to_dense(&b, n));
                    }
                }
            }
            if rows.is_empty() {
                current.clear();
            } else {
                rref(&mut rows);
                current = rows
                    .into_iter()
                    .map(|r| r.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
                    .collect();
            }
            dims.push(current.len());
            if dims.len() > n + 2 {
                break;
            }
        }
        dims
    }
}
