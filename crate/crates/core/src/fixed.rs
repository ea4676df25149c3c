//! Counting matrices `A ∈ M(n, m)` with `σ Aᵀ = A`.
//!
//! The constraint reads `A_{ij} = A_{σ(j) i}` entrywise, so cells fall into
//! orbits under `(i, j) ↦ (σ(j), i)` and every orbit carries one free value.
//! Counting is a backtracking search over orbit values with row/column
//! residual pruning, memoized on `(orbit index, residuals)`.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::characters::{inner_product, irreducible_character, to_natural, ClassFunction};
use crate::error::{guard, Error, Result};
use crate::matrix::IntMatrix;
use crate::partition::{partitions_of, Partition};
use crate::permutation::{factorial, Permutation};

#[derive(Clone, Debug)]
struct CellOrbit {
    cells: Vec<(usize, usize)>,
    // (line, number of orbit cells on that line)
    rows: Vec<(usize, u64)>,
    cols: Vec<(usize, u64)>,
    // lines whose last contributing orbit is this one
    closes_rows: Vec<usize>,
    closes_cols: Vec<usize>,
}

/// The cell orbits of `(i, j) ↦ (σ(j), i)`, ordered by their smallest cell.
#[derive(Clone, Debug)]
pub struct CellOrbits {
    n: usize,
    orbits: Vec<CellOrbit>,
}

impl CellOrbits {
    pub fn new(sigma: &Permutation) -> Self {
        let n = sigma.degree();
        let mut seen = vec![false; n * n];
        let mut orbits = Vec::new();
        for start in 0..n * n {
            if seen[start] {
                continue;
            }
            let mut cells = Vec::new();
            let (mut i, mut j) = (start / n, start % n);
            while !seen[i * n + j] {
                seen[i * n + j] = true;
                cells.push((i, j));
                (i, j) = (sigma.apply(j), i);
            }
            cells.sort_unstable();
            let tally = |key: fn(&(usize, usize)) -> usize| {
                let mut t: Vec<(usize, u64)> = Vec::new();
                let mut lines: Vec<usize> = cells.iter().map(key).collect();
                lines.sort_unstable();
                for l in lines {
                    match t.last_mut() {
                        Some((x, c)) if *x == l => *c += 1,
                        _ => t.push((l, 1)),
                    }
                }
                t
            };
            let rows = tally(|c| c.0);
            let cols = tally(|c| c.1);
            orbits.push(CellOrbit {
                cells,
                rows,
                cols,
                closes_rows: Vec::new(),
                closes_cols: Vec::new(),
            });
        }
        // start scanning in row-major order, so sorting by smallest cell is stable
        orbits.sort_by_key(|o| o.cells[0]);
        let mut last_row = vec![None; n];
        let mut last_col = vec![None; n];
        for (k, o) in orbits.iter().enumerate() {
            for &(r, _) in &o.rows {
                last_row[r] = Some(k);
            }
            for &(c, _) in &o.cols {
                last_col[c] = Some(k);
            }
        }
        for (r, k) in last_row.into_iter().enumerate() {
            if let Some(k) = k {
                orbits[k].closes_rows.push(r);
            }
        }
        for (c, k) in last_col.into_iter().enumerate() {
            if let Some(k) = k {
                orbits[k].closes_cols.push(c);
            }
        }
        Self { n, orbits }
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn cells(&self) -> impl Iterator<Item = &[(usize, usize)]> {
        self.orbits.iter().map(|o| o.cells.as_slice())
    }

    /// Candidate values for orbit `k` given residuals `[rows.., cols..]`.
    fn candidates(&self, k: usize, res: &[u64]) -> std::ops::RangeInclusive<u64> {
        let n = self.n;
        let o = &self.orbits[k];
        let mut hi = u64::MAX;
        for &(r, c) in &o.rows {
            hi = hi.min(res[r] / c);
        }
        for &(col, c) in &o.cols {
            hi = hi.min(res[n + col] / c);
        }
        let mut forced: Option<u64> = None;
        let closing = o
            .closes_rows
            .iter()
            .map(|&r| (res[r], o.rows.iter().find(|x| x.0 == r).unwrap().1))
            .chain(
                o.closes_cols
                    .iter()
                    .map(|&c| (res[n + c], o.cols.iter().find(|x| x.0 == c).unwrap().1)),
            );
        for (residual, mult) in closing {
            if residual % mult != 0 {
                return empty_range();
            }
            let v = residual / mult;
            match forced {
                Some(f) if f != v => return empty_range(),
                _ => forced = Some(v),
            }
        }
        match forced {
            Some(v) if v <= hi => v..=v,
            Some(_) => empty_range(),
            None => 0..=hi,
        }
    }

    fn apply(&self, k: usize, v: u64, res: &mut [u64], sign_add: bool) {
        let n = self.n;
        let o = &self.orbits[k];
        for &(r, c) in &o.rows {
            if sign_add {
                res[r] += v * c;
            } else {
                res[r] -= v * c;
            }
        }
        for &(col, c) in &o.cols {
            if sign_add {
                res[n + col] += v * c;
            } else {
                res[n + col] -= v * c;
            }
        }
    }
}

#[allow(clippy::reversed_empty_ranges)]
fn empty_range() -> std::ops::RangeInclusive<u64> {
    1..=0
}

/// `N^m(σ) = #{A ∈ M(n, m) : σ Aᵀ = A}`.
pub fn count_fixed(sigma: &Permutation, m: u64) -> BigUint {
    let orbits = CellOrbits::new(sigma);
    count_with_orbits(&orbits, m)
}

pub fn count_with_orbits(orbits: &CellOrbits, m: u64) -> BigUint {
    fn go(
        orbits: &CellOrbits,
        k: usize,
        res: &mut Vec<u64>,
        memo: &mut [HashMap<Vec<u64>, BigUint>],
    ) -> BigUint {
        if k == orbits.len() {
            return if res.iter().all(|&r| r == 0) {
                BigUint::one()
            } else {
                BigUint::zero()
            };
        }
        if let Some(v) = memo[k].get(res.as_slice()) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        for v in orbits.candidates(k, res) {
            orbits.apply(k, v, res, false);
            total += go(orbits, k + 1, res, memo);
            orbits.apply(k, v, res, true);
        }
        memo[k].insert(res.clone(), total.clone());
        total
    }
    let n = orbits.n;
    if n == 0 {
        return BigUint::one();
    }
    let mut res = vec![m; 2 * n];
    let mut memo = vec![HashMap::new(); orbits.len()];
    go(orbits, 0, &mut res, &mut memo)
}

/// Visits every `A ∈ M(n, m)` with `σ Aᵀ = A`.
pub fn for_each_fixed(sigma: &Permutation, m: u64, mut visit: impl FnMut(&IntMatrix)) {
    fn go(
        orbits: &CellOrbits,
        k: usize,
        res: &mut Vec<u64>,
        a: &mut IntMatrix,
        visit: &mut dyn FnMut(&IntMatrix),
    ) {
        if k == orbits.len() {
            if res.iter().all(|&r| r == 0) {
                visit(a);
            }
            return;
        }
        for v in orbits.candidates(k, res) {
            for &(i, j) in &orbits.orbits[k].cells {
                a.set(i, j, v);
            }
            orbits.apply(k, v, res, false);
            go(orbits, k + 1, res, a, visit);
            orbits.apply(k, v, res, true);
        }
    }
    let orbits = CellOrbits::new(sigma);
    let n = sigma.degree();
    let mut a = IntMatrix::zeros(n);
    let mut res = vec![m; 2 * n];
    go(&orbits, 0, &mut res, &mut a, &mut visit);
}

/// The class function `ρ ↦ N^m(ρ)` of `S_n`.
pub fn n_class_function(n: usize, m: u64) -> ClassFunction {
    let values: Vec<BigRational> = partitions_of(n)
        .par_iter()
        .map(|rho| {
            let count = count_fixed(&Permutation::representative(rho), m);
            BigRational::from_integer(BigInt::from(count))
        })
        .collect();
    ClassFunction::from_values(n, values).expect("one value per class")
}

/// `⟨χ^λ, N^m⟩`: the number of irreducible constituents of `s_λ[s_m]`.
pub fn plethysm_sum(lambda: &Partition, m: u64) -> Result<BigUint> {
    let chi = irreducible_character(lambda)?;
    let n_m = n_class_function(lambda.size(), m);
    let ip = inner_product(&chi, &n_m)?;
    to_natural(&ip).ok_or_else(|| {
        Error::Consistency(format!(
            "<chi^{lambda}, N^{m}> = {ip} is not a non-negative integer"
        ))
    })
}

/// Largest `nm` for which the square-root fiber check enumerates `S_{nm}`.
pub const MAX_FIBER_DEGREE: usize = 8;

#[derive(Clone, Debug)]
pub struct FiberReport {
    pub n: usize,
    pub m: u64,
    pub sigma: Permutation,
    /// `#{τ : τ²σ⁻¹ ∈ S_m^n}`
    pub preimages: u64,
    pub image_size: usize,
    pub expected_fiber: u64,
    pub min_fiber: u64,
    pub max_fiber: u64,
    pub fixed_count: BigUint,
    pub failure: Option<String>,
}

impl FiberReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Enumerates `τ ∈ S_{nm}` with `τ² P_j = P_{σ(j)}` for the blocks
/// `P_j = {jm, …, jm + m − 1}` and checks that `F(τ)_{ij} = #(P_i ∩ τ P_j)`
/// is `m!^n`-to-one onto the matrices counted by `N^m(σ)`.
pub fn fiber_check(n: usize, m: u64, sigma: &Permutation) -> Result<FiberReport> {
    if sigma.degree() != n {
        return Err(Error::InvalidPermutation(format!("{sigma} is not in S_{n}")));
    }
    let mu = m as usize;
    let k = n * mu;
    if k > MAX_FIBER_DEGREE {
        return Err(guard("fiber check degree nm", k, MAX_FIBER_DEGREE));
    }
    let block = |x: usize| x / mu;
    let mut fibers: HashMap<IntMatrix, u64> = HashMap::new();
    let mut preimages = 0u64;
    let mut failure = None;
    for tau in Permutation::all(k) {
        let t = tau.images();
        if !(0..k).all(|x| block(t[t[x]]) == sigma.apply(block(x))) {
            continue;
        }
        preimages += 1;
        let mut a = IntMatrix::zeros(n);
        for y in 0..k {
            let (i, j) = (block(t[y]), block(y));
            a.set(i, j, a.get(i, j) + 1);
        }
        if failure.is_none() && !(a.is_in_m(m) && a.is_twisted_fixed(sigma)) {
            failure = Some(format!("tau = {tau} maps to {a:?}, outside the fixed set"));
        }
        *fibers.entry(a).or_insert(0) += 1;
    }
    let expected_fiber = factorial(mu).pow(n as u32);
    let fixed_count = count_fixed(sigma, m);
    let min_fiber = fibers.values().copied().min().unwrap_or(0);
    let max_fiber = fibers.values().copied().max().unwrap_or(0);
    // an empty image is consistent exactly when N^m(σ) = 0, checked below
    if failure.is_none()
        && !fibers.is_empty()
        && (min_fiber != expected_fiber || max_fiber != expected_fiber)
    {
        failure = Some(format!(
            "fiber sizes range over {min_fiber}..={max_fiber}, expected {expected_fiber}"
        ));
    }
    if failure.is_none() && BigUint::from(fibers.len()) != fixed_count {
        failure = Some(format!(
            "image has {} matrices but N^m(sigma) = {fixed_count}",
            fibers.len()
        ));
    }
    if failure.is_none() && BigUint::from(preimages) != &fixed_count * expected_fiber {
        failure = Some(format!("{preimages} preimages != m!^n * N^m(sigma)"));
    }
    Ok(FiberReport {
        n,
        m,
        sigma: sigma.clone(),
        preimages,
        image_size: fibers.len(),
        expected_fiber,
        min_fiber,
        max_fiber,
        fixed_count,
        failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::enumerate_m;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_one_line(v.to_vec()).unwrap()
    }

    fn brute_fixed(sigma: &Permutation, m: u64) -> usize {
        enumerate_m(sigma.degree(), m, 10_000_000)
            .unwrap()
            .filter(|a| a.is_twisted_fixed(sigma))
            .count()
    }

    #[test]
    fn count_fixed_examples() {
        assert_eq!(count_fixed(&Permutation::identity(2), 2), BigUint::from(3u32));
        assert_eq!(count_fixed(&perm(&[2, 1]), 2), BigUint::from(1u32));
        assert_eq!(count_fixed(&Permutation::identity(3), 1), BigUint::from(4u32));
        assert_eq!(count_fixed(&Permutation::identity(4), 0), BigUint::one());
    }

    #[test]
    fn count_fixed_matches_filtered_enumeration() {
        for (n, m) in [(2, 5), (3, 3), (4, 2), (4, 3)] {
            for sigma in Permutation::all(n) {
                assert_eq!(
                    count_fixed(&sigma, m),
                    BigUint::from(brute_fixed(&sigma, m)),
                    "sigma = {sigma}, m = {m}"
                );
            }
        }
    }

    #[test]
    fn enumeration_agrees_with_count() {
        for sigma in Permutation::all(4) {
            let mut seen = 0u64;
            for_each_fixed(&sigma, 3, |a| {
                assert!(a.is_in_m(3) && a.is_twisted_fixed(&sigma));
                seen += 1;
            });
            assert_eq!(BigUint::from(seen), count_fixed(&sigma, 3));
        }
    }

    #[test]
    fn identity_counts_symmetric_matrices() {
        for n in 1..=5 {
            for m in 0..=6 {
                let direct = symmetric_count(n, m);
                assert_eq!(count_fixed(&Permutation::identity(n), m), direct, "n={n} m={m}");
            }
        }
    }

    /// Fills the upper triangle row by row; the diagonal is forced.
    fn symmetric_count(n: usize, m: u64) -> BigUint {
        fn go(i: usize, j: usize, n: usize, row: &mut Vec<u64>, m: u64) -> BigUint {
            if i == n {
                return BigUint::one();
            }
            if j >= n {
                // diagonal entry takes whatever is left in row i
                return go(i + 1, i + 2, n, row, m);
            }
            let mut total = BigUint::zero();
            let cap = row[i].min(row[j]);
            for v in 0..=cap {
                row[i] -= v;
                row[j] -= v;
                total += go(i, j + 1, n, row, m);
                row[i] += v;
                row[j] += v;
            }
            total
        }
        go(0, 1, n, &mut vec![m; n], m)
    }

    #[test]
    fn n_class_function_examples() {
        let f = n_class_function(2, 2);
        assert_eq!(f.get(&"1,1".parse().unwrap()), Some(&BigRational::from_integer(3.into())));
        assert_eq!(f.get(&"2".parse().unwrap()), Some(&BigRational::from_integer(1.into())));
        for m in 0..6 {
            assert_eq!(
                n_class_function(1, m).values(),
                &[BigRational::from_integer(1.into())]
            );
        }
        assert!(n_class_function(3, 0).values().iter().all(|v| v.is_one()));
    }

    #[test]
    fn plethysm_sum_examples() {
        let p = |s: &str| s.parse::<Partition>().unwrap();
        assert_eq!(plethysm_sum(&p("3"), 3).unwrap(), BigUint::from(5u32));
        assert_eq!(plethysm_sum(&p("2"), 2).unwrap(), BigUint::from(2u32));
        for m in 1..8 {
            assert_eq!(plethysm_sum(&p("1"), m).unwrap(), BigUint::one());
        }
    }

    #[test]
    fn character_values_are_natural() {
        for n in 1..=5 {
            for m in 1..=6 {
                let nm = n_class_function(n, m);
                for lambda in partitions_of(n) {
                    let ip = inner_product(&irreducible_character(&lambda).unwrap(), &nm).unwrap();
                    assert!(to_natural(&ip).is_some(), "lambda={lambda} m={m}: {ip}");
                }
            }
        }
    }

    #[test]
    fn fiber_examples() {
        let r = fiber_check(2, 2, &Permutation::identity(2)).unwrap();
        assert!(r.passed(), "{:?}", r.failure);
        assert_eq!((r.expected_fiber, r.image_size), (4, 3));
        let r = fiber_check(2, 2, &perm(&[2, 1])).unwrap();
        assert!(r.passed(), "{:?}", r.failure);
        assert_eq!((r.min_fiber, r.image_size), (4, 1));
        let r = fiber_check(1, 3, &Permutation::identity(1)).unwrap();
        assert!(r.passed());
        assert_eq!((r.expected_fiber, r.image_size, r.preimages), (6, 1, 6));
        assert!(fiber_check(3, 3, &Permutation::identity(3)).is_err());
        // no 2x2 permutation matrix satisfies A_ij = A_{σ(j)i} for σ = (12)
        let r = fiber_check(2, 1, &perm(&[2, 1])).unwrap();
        assert!(r.passed(), "{:?}", r.failure);
        assert_eq!((r.preimages, r.image_size), (0, 0));
    }

    #[test]
    fn orbits_partition_cells() {
        for sigma in Permutation::all(4) {
            let orbits = CellOrbits::new(&sigma);
            let mut cells: Vec<_> = orbits.cells().flatten().copied().collect();
            cells.sort_unstable();
            assert_eq!(cells.len(), 16);
            cells.dedup();
            assert_eq!(cells.len(), 16);
        }
    }
}
