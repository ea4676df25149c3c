use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{guard, Error, Result};
use crate::permutation::Permutation;

/// Default cap on the number of matrices an enumeration may produce.
pub const DEFAULT_MAX_MATRICES: u64 = 10_000_000;

/// A square matrix of non-negative integers, stored row-major.
///
/// Entries of a member of `M(n, m)` are bounded by `m`, so `u64` entries are
/// exact whenever `m` itself is representable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<u64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix(format!("rows of {rows:?} are not all of length {n}")));
        }
        Ok(Self {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_row_major(n: usize, entries: Vec<u64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidMatrix(format!(
                "{} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        Ok(Self { n, entries })
    }

    pub fn diagonal(values: &[u64]) -> Self {
        let n = values.len();
        let mut a = Self::zeros(n);
        for (i, &v) in values.iter().enumerate() {
            a.set(i, i, v);
        }
        a
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn row_sums(&self) -> Vec<u64> {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<u64> {
        (0..self.n).map(|j| (0..self.n).map(|i| self.get(i, j)).sum()).collect()
    }

    /// Membership in `M(n, m)`: every row and column sums to `m`.
    pub fn is_in_m(&self, m: u64) -> bool {
        self.row_sums().iter().all(|&s| s == m) && self.col_sums().iter().all(|&s| s == m)
    }

    /// `g A h⁻¹` with permutation matrices `P_g e_b = e_{g(b)}`:
    /// `(g A h⁻¹)_{ij} = A_{g⁻¹(i), h⁻¹(j)}`.
    pub fn permuted(&self, g: &Permutation, h: &Permutation) -> Self {
        let (gi, hi) = (g.inverse(), h.inverse());
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, self.get(gi.apply(i), hi.apply(j)));
            }
        }
        out
    }

    /// `σ Aᵀ = A` in the entrywise form `A_{ij} = A_{σ(j) i}`.
    pub fn is_twisted_fixed(&self, sigma: &Permutation) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == self.get(sigma.apply(j), i)))
    }

    /// Block diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n + other.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                out.set(self.n + i, self.n + j, other.get(i, j));
            }
        }
        out
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.n {
            self.entries.swap(a * self.n + j, b * self.n + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.n {
            self.entries.swap(i * self.n + a, i * self.n + b);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                writeln!(f)?;
            }
            let row: Vec<String> = self.row(i).iter().map(u64::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// `#M(n, m)` by a row-by-row count over sorted column residuals.
pub fn count_m(n: usize, m: u64) -> BigUint {
    fn rows_left(
        rows: usize,
        m: u64,
        residual: Vec<u64>,
        memo: &mut HashMap<(usize, Vec<u64>), BigUint>,
    ) -> BigUint {
        if rows == 0 {
            return if residual.iter().all(|&r| r == 0) {
                BigUint::one()
            } else {
                BigUint::zero()
            };
        }
        if rows == 1 {
            // the last row is forced to equal the residual
            return if residual.iter().sum::<u64>() == m {
                BigUint::one()
            } else {
                BigUint::zero()
            };
        }
        let key = (rows, residual.clone());
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        let mut row = vec![0u64; residual.len()];
        compositions(&residual, m, 0, &mut row, &mut |r| {
            let mut next: Vec<u64> = residual.iter().zip(r).map(|(a, b)| a - b).collect();
            next.sort_unstable();
            total += rows_left(rows - 1, m, next, memo);
        });
        memo.insert(key, total.clone());
        total
    }
    if n == 0 {
        return BigUint::one();
    }
    rows_left(n, m, vec![m; n], &mut HashMap::new())
}

/// Visits every vector `r ≤ bound` (entrywise) with `Σ r = total`, in
/// lexicographic order.
pub(crate) fn compositions(
    bound: &[u64],
    total: u64,
    pos: usize,
    row: &mut Vec<u64>,
    visit: &mut impl FnMut(&[u64]),
) {
    if pos + 1 == bound.len() {
        if total <= bound[pos] {
            row[pos] = total;
            visit(row);
        }
        return;
    }
    let rest: u64 = bound[pos + 1..].iter().sum();
    let lo = total.saturating_sub(rest);
    for v in lo..=total.min(bound[pos]) {
        row[pos] = v;
        compositions(bound, total - v, pos + 1, row, visit);
    }
    row[pos] = 0;
}

/// Every member of `M(n, m)` exactly once, in row-major lexicographic order.
pub struct MatrixStream {
    n: usize,
    cells: Vec<u64>,
    row_res: Vec<u64>,
    col_res: Vec<u64>,
    // assigned cells form a prefix of length `depth`
    depth: usize,
    started: bool,
    done: bool,
}

/// Guarded stream over `M(n, m)`.
pub fn enumerate_m(n: usize, m: u64, max_matrices: u64) -> Result<MatrixStream> {
    let total = count_m(n, m);
    if total > BigUint::from(max_matrices) {
        return Err(guard("enumeration of M(n,m)", total, max_matrices));
    }
    Ok(MatrixStream::new(n, m))
}

impl MatrixStream {
    fn new(n: usize, m: u64) -> Self {
        Self {
            n,
            cells: vec![0; n * n],
            row_res: vec![m; n],
            col_res: vec![m; n],
            depth: 0,
            started: false,
            done: false,
        }
    }

    /// Feasible value range for the next cell given the current residuals.
    fn range(&self, cell: usize) -> Option<(u64, u64)> {
        let (i, j) = (cell / self.n, cell % self.n);
        let (r, c) = (self.row_res[i], self.col_res[j]);
        let hi = r.min(c);
        let row_rest: u64 = self.col_res[j + 1..].iter().sum();
        let col_rest = self.row_res[i + 1..].iter().sum::<u64>();
        let lo = r.saturating_sub(row_rest).max(c.saturating_sub(col_rest));
        (lo <= hi).then_some((lo, hi))
    }

    fn assign(&mut self, cell: usize, v: u64) {
        let (i, j) = (cell / self.n, cell % self.n);
        self.cells[cell] = v;
        self.row_res[i] -= v;
        self.col_res[j] -= v;
    }

    fn unassign(&mut self, cell: usize) -> u64 {
        let (i, j) = (cell / self.n, cell % self.n);
        let v = self.cells[cell];
        self.row_res[i] += v;
        self.col_res[j] += v;
        self.cells[cell] = 0;
        v
    }

    /// Fills cells from `depth` onward with their smallest feasible values.
    /// Returns false when some cell has no feasible value.
    fn descend(&mut self) -> bool {
        while self.depth < self.cells.len() {
            match self.range(self.depth) {
                Some((lo, _)) => {
                    self.assign(self.depth, lo);
                    self.depth += 1;
                }
                None => return false,
            }
        }
        true
    }

    /// Bumps the deepest cell that can still grow. Returns false when exhausted.
    fn backtrack(&mut self) -> bool {
        while self.depth > 0 {
            self.depth -= 1;
            let cell = self.depth;
            let v = self.unassign(cell);
            if let Some((_, hi)) = self.range(cell) {
                if v < hi {
                    self.assign(cell, v + 1);
                    self.depth += 1;
                    return true;
                }
            }
        }
        false
    }
}

impl Iterator for MatrixStream {
    type Item = IntMatrix;

    fn next(&mut self) -> Option<IntMatrix> {
        if self.done {
            return None;
        }
        if self.n == 0 {
            self.done = true;
            return Some(IntMatrix::zeros(0));
        }
        if self.started && !self.backtrack() {
            self.done = true;
            return None;
        }
        self.started = true;
        loop {
            if self.descend() {
                return Some(IntMatrix {
                    n: self.n,
                    entries: self.cells.clone(),
                });
            }
            if !self.backtrack() {
                self.done = true;
                return None;
            }
        }
    }
}

pub(crate) fn biguint_to_u64(x: &BigUint) -> Option<u64> {
    x.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every n×n matrix with entries 0..=m, filtered by line sums.
    fn brute_force(n: usize, m: u64) -> Vec<IntMatrix> {
        let cells = n * n;
        let base = m + 1;
        let total = base.pow(cells as u32);
        (0..total)
            .map(|mut code| {
                let mut entries = vec![0; cells];
                for e in entries.iter_mut().rev() {
                    *e = code % base;
                    code /= base;
                }
                IntMatrix { n, entries }
            })
            .filter(|a| a.is_in_m(m))
            .collect()
    }

    #[test]
    fn stream_examples() {
        let two: Vec<_> = enumerate_m(2, 2, 100).unwrap().collect();
        assert_eq!(two.len(), 3);
        let one: Vec<_> = enumerate_m(1, 5, 100).unwrap().collect();
        assert_eq!(one, vec![IntMatrix::from_rows(vec![vec![5]]).unwrap()]);
        assert_eq!(enumerate_m(3, 2, 100).unwrap().count(), 21);
    }

    #[test]
    fn stream_matches_brute_force_in_order() {
        for (n, m) in [(2, 3), (3, 1), (3, 2), (3, 3), (4, 1)] {
            let streamed: Vec<_> = enumerate_m(n, m, 1_000_000).unwrap().collect();
            let brute = brute_force(n, m);
            assert_eq!(streamed, brute, "n = {n}, m = {m}");
            assert_eq!(count_m(n, m), BigUint::from(brute.len()));
        }
    }

    #[test]
    fn known_counts() {
        // 4x4 semi-magic squares with line sums 0..=4
        let h4: Vec<u64> = (0..=4).map(|m| biguint_to_u64(&count_m(4, m)).unwrap()).collect();
        assert_eq!(h4, vec![1, 24, 282, 2008, 10147]);
        assert_eq!(count_m(5, 2), BigUint::from(6210u32));
        assert_eq!(enumerate_m(4, 3, 10_000).unwrap().count(), 2008);
    }

    #[test]
    fn guard_refuses_large_enumerations() {
        assert!(matches!(enumerate_m(5, 5, 1000), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn m_zero_is_the_zero_matrix() {
        let all: Vec<_> = enumerate_m(3, 0, 10).unwrap().collect();
        assert_eq!(all, vec![IntMatrix::zeros(3)]);
    }

    #[test]
    fn permutation_matrix_convention() {
        // σ Aᵀ computed as an honest matrix product agrees with the entrywise rule.
        let mut agreements = 0;
        for a in enumerate_m(3, 2, 100).unwrap() {
            for sigma in Permutation::all(3) {
                let mut p = IntMatrix::zeros(3);
                for b in 0..3 {
                    p.set(sigma.apply(b), b, 1);
                }
                let at = a.transpose();
                let mut prod = IntMatrix::zeros(3);
                for i in 0..3 {
                    for j in 0..3 {
                        prod.set(i, j, (0..3).map(|k| p.get(i, k) * at.get(k, j)).sum());
                    }
                }
                assert_eq!(prod, at.permuted(&sigma, &Permutation::identity(3)));
                assert_eq!(prod == a, a.is_twisted_fixed(&sigma));
                agreements += usize::from(prod == a);
            }
        }
        assert!(agreements > 0);
    }
}
