//! Irreducible characters of symmetric groups and rational class functions.
//!
//! Character values come from the Murnaghan–Nakayama rule, evaluated on beta
//! sets: removing a border strip of length `k` moves one bead from position
//! `b` to an empty position `b − k`, with sign `(−1)^{beads jumped}`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{guard, Error, Result};
use crate::partition::{partitions_of, Partition};
use crate::permutation::Permutation;

/// Largest degree for which character tables are built.
pub const MAX_TABLE_DEGREE: usize = 16;

/// Largest `k` for which square roots in `S_k` are enumerated.
pub const MAX_SQRT_DEGREE: usize = 8;

/// A rational-valued class function on `S_n`, stored densely over cycle types
/// in descending lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    n: usize,
    classes: Vec<Partition>,
    values: Vec<BigRational>,
}

impl ClassFunction {
    pub fn from_fn(n: usize, mut f: impl FnMut(&Partition) -> BigRational) -> Self {
        let classes = partitions_of(n);
        let values = classes.iter().map(&mut f).collect();
        Self { n, classes, values }
    }

    /// Values given in the order of `partitions_of(n)`.
    pub fn from_values(n: usize, values: Vec<BigRational>) -> Result<Self> {
        let classes = partitions_of(n);
        if classes.len() != values.len() {
            return Err(Error::Consistency(format!(
                "{} values for {} classes of S_{n}",
                values.len(),
                classes.len()
            )));
        }
        Ok(Self { n, classes, values })
    }

    pub fn constant(n: usize, c: i64) -> Self {
        Self::from_fn(n, |_| BigRational::from_integer(c.into()))
    }

    pub fn trivial(n: usize) -> Self {
        Self::constant(n, 1)
    }

    pub fn sign(n: usize) -> Self {
        Self::from_fn(n, |rho| BigRational::from_integer(rho.eps().into()))
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[Partition] {
        &self.classes
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn get(&self, rho: &Partition) -> Option<&BigRational> {
        self.classes
            .iter()
            .position(|c| c == rho)
            .map(|i| &self.values[i])
    }

    /// Value at the identity, `f(1^n)`.
    pub fn at_identity(&self) -> &BigRational {
        self.values.last().expect("class functions have at least one class")
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.classes.iter().zip(self.values.iter())
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.is_integer())
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_degree(other)?;
        Ok(ClassFunction {
            n: self.n,
            classes: self.classes.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &BigRational) -> ClassFunction {
        ClassFunction {
            n: self.n,
            classes: self.classes.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// Pointwise product.
    pub fn mul(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_degree(other)?;
        Ok(ClassFunction {
            n: self.n,
            classes: self.classes.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        })
    }

    fn check_degree(&self, other: &ClassFunction) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }
}

/// `⟨f, g⟩ = Σ_ρ z_ρ⁻¹ f(ρ) g(ρ)`.
///
/// Every class function here is rational-valued, so the complex conjugate in
/// the usual definition is the identity.
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<BigRational> {
    f.check_degree(g)?;
    let mut acc = BigRational::zero();
    for ((rho, a), b) in f.classes.iter().zip(&f.values).zip(&g.values) {
        let z = BigRational::from_integer(BigInt::from(rho.z()));
        acc += a * b / z;
    }
    Ok(acc)
}

/// Memoized Murnaghan–Nakayama evaluator.
///
/// The memo is keyed on `(shape, remaining cycle parts)`; it lives in this
/// value rather than in global state so evaluation order never matters.
#[derive(Default)]
pub struct MnEvaluator {
    memo: HashMap<(Vec<usize>, Vec<usize>), i64>,
}

impl MnEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cache_len(&self) -> usize {
        self.memo.len()
    }

    /// `χ^λ(ρ)`; zero when the sizes differ.
    pub fn character(&mut self, lambda: &Partition, rho: &Partition) -> i64 {
        if lambda.size() != rho.size() {
            return 0;
        }
        self.eval(lambda.parts(), rho.parts())
    }

    fn eval(&mut self, shape: &[usize], cycles: &[usize]) -> i64 {
        if cycles.is_empty() {
            return if shape.is_empty() { 1 } else { 0 };
        }
        let key = (shape.to_vec(), cycles.to_vec());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let k = cycles[0];
        let rest = &cycles[1..];
        let len = shape.len();
        // beta set, strictly decreasing
        let beta: Vec<usize> = shape.iter().enumerate().map(|(i, &p)| p + (len - 1 - i)).collect();
        let mut total = 0i64;
        for (idx, &b) in beta.iter().enumerate() {
            if b < k {
                continue;
            }
            let target = b - k;
            if beta.contains(&target) {
                continue;
            }
            let jumped = beta.iter().filter(|&&x| x > target && x < b).count();
            let sign = if jumped % 2 == 0 { 1 } else { -1 };
            let mut next = beta.clone();
            next[idx] = target;
            next.sort_unstable_by(|a, b| b.cmp(a));
            let new_shape: Vec<usize> = next
                .iter()
                .enumerate()
                .map(|(i, &x)| x - (len - 1 - i))
                .filter(|&p| p > 0)
                .collect();
            total += sign * self.eval(&new_shape, rest);
        }
        self.memo.insert(key, total);
        total
    }
}

/// The full character table of `S_n`: rows are irreducibles `λ`, columns cycle
/// types `ρ`, both in descending lexicographic order.
#[derive(Debug)]
pub struct CharacterTable {
    n: usize,
    partitions: Vec<Partition>,
    values: Vec<Vec<i64>>,
    index: HashMap<Partition, usize>,
}

impl CharacterTable {
    pub fn build(n: usize) -> Result<Self> {
        if n > MAX_TABLE_DEGREE {
            return Err(guard("character table degree", n, MAX_TABLE_DEGREE));
        }
        let partitions = partitions_of(n);
        let mut mn = MnEvaluator::new();
        let values = partitions
            .iter()
            .map(|lambda| partitions.iter().map(|rho| mn.character(lambda, rho)).collect())
            .collect();
        let index = partitions.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(Self {
            n,
            partitions,
            values,
            index,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn value(&self, lambda: &Partition, rho: &Partition) -> Option<i64> {
        Some(self.values[self.index_of(lambda)?][self.index_of(rho)?])
    }

    pub fn row(&self, lambda: &Partition) -> Option<&[i64]> {
        self.index_of(lambda).map(|i| self.values[i].as_slice())
    }

    pub fn character(&self, lambda: &Partition) -> Option<ClassFunction> {
        let row = self.row(lambda)?;
        Some(ClassFunction {
            n: self.n,
            classes: self.partitions.clone(),
            values: row.iter().map(|&v| BigRational::from_integer(v.into())).collect(),
        })
    }

    /// CSV with a header row of cycle types; one row per irreducible.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda");
        for rho in &self.partitions {
            let _ = write!(out, ",\"{rho}\"");
        }
        out.push('\n');
        for (lambda, row) in self.partitions.iter().zip(&self.values) {
            let _ = write!(out, "\"{lambda}\"");
            for v in row {
                let _ = write!(out, ",{v}");
            }
            out.push('\n');
        }
        out
    }
}

fn table_cache() -> &'static Mutex<HashMap<usize, Arc<CharacterTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CharacterTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Shared, lazily built character table of `S_n`.
pub fn character_table(n: usize) -> Result<Arc<CharacterTable>> {
    let mut cache = table_cache().lock().unwrap_or_else(|e| e.into_inner());
    if let Some(t) = cache.get(&n) {
        return Ok(Arc::clone(t));
    }
    let table = Arc::new(CharacterTable::build(n)?);
    cache.insert(n, Arc::clone(&table));
    Ok(table)
}

/// `χ^λ` as a class function of `S_n`, `n = |λ|`.
pub fn irreducible_character(lambda: &Partition) -> Result<ClassFunction> {
    let table = character_table(lambda.size())?;
    table
        .character(lambda)
        .ok_or_else(|| Error::InvalidPartition(lambda.to_string()))
}

/// `#{τ ∈ S_k : τ² = σ}` by exhaustive enumeration.
pub fn sqrt_count(sigma: &Permutation) -> Result<u64> {
    let k = sigma.degree();
    if k > MAX_SQRT_DEGREE {
        return Err(guard("square-root enumeration degree", k, MAX_SQRT_DEGREE));
    }
    let target = sigma.images();
    let mut count = 0;
    for tau in Permutation::all(k) {
        let t = tau.images();
        if (0..k).all(|i| t[t[i]] == target[i]) {
            count += 1;
        }
    }
    Ok(count)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaRow {
    pub cycle_type: Partition,
    pub square_roots: u64,
    pub character_sum: i64,
}

#[derive(Clone, Debug)]
pub struct ThetaReport {
    pub k: usize,
    pub rows: Vec<ThetaRow>,
    pub first_failure: Option<Partition>,
}

impl ThetaReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Compares the square-root count with the sum of all irreducible characters
/// at a representative of every cycle type of `S_k`.
pub fn theta_identity_check(k: usize) -> Result<ThetaReport> {
    let table = character_table(k)?;
    let mut rows = Vec::new();
    let mut first_failure = None;
    for (j, rho) in table.partitions().iter().enumerate() {
        let square_roots = sqrt_count(&Permutation::representative(rho))?;
        let character_sum: i64 = table.values.iter().map(|row| row[j]).sum();
        if first_failure.is_none() && character_sum != square_roots as i64 {
            first_failure = Some(rho.clone());
        }
        rows.push(ThetaRow {
            cycle_type: rho.clone(),
            square_roots,
            character_sum,
        });
    }
    Ok(ThetaReport {
        k,
        rows,
        first_failure,
    })
}

/// Converts an exact rational known to be a non-negative integer.
pub fn to_natural(q: &BigRational) -> Option<BigUint> {
    if q.is_integer() && !q.is_negative() {
        q.to_integer().to_biguint()
    } else {
        None
    }
}
