//! Quasipolynomial structure of `m ↦ N^m(ρ)`.
//!
//! `N^m(σ)` counts lattice points in the `m`-th dilate of the polytope of
//! non-negative matrices with unit row sums and `σ Aᵀ = A`, so it is a
//! quasipolynomial in `m`. Fits are discovered from exact samples: for each
//! candidate period, one polynomial per residue class is interpolated and must
//! reproduce further samples exactly.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::characters::character_table;
use crate::error::{guard, Error, Result};
use crate::fixed::{count_with_orbits, CellOrbits};
use crate::partition::{partitions_of, Partition};
use crate::permutation::Permutation;
use crate::serial::{rational_from_str, rational_to_string};

/// A function `Z → Q` that agrees with a fixed polynomial on each residue class
/// modulo `period`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quasipolynomial {
    period: usize,
    degree: usize,
    constituents: Vec<Vec<BigRational>>,
}

impl Quasipolynomial {
    /// Builds from per-residue coefficient lists (constant term first). Lists
    /// are padded to a common length and trailing zero columns trimmed.
    pub fn new(constituents: Vec<Vec<BigRational>>) -> Result<Self> {
        if constituents.is_empty() {
            return Err(Error::Consistency("a quasipolynomial needs period >= 1".into()));
        }
        let width = constituents.iter().map(Vec::len).max().unwrap_or(0).max(1);
        let mut constituents: Vec<Vec<BigRational>> = constituents
            .into_iter()
            .map(|mut c| {
                c.resize(width, BigRational::zero());
                c
            })
            .collect();
        let degree = (0..width)
            .rev()
            .find(|&d| constituents.iter().any(|c| !c[d].is_zero()))
            .unwrap_or(0);
        for c in &mut constituents {
            c.truncate(degree + 1);
        }
        Ok(Self {
            period: constituents.len(),
            degree,
            constituents,
        })
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![vec![c]]).expect("one constituent")
    }

    pub fn polynomial(coeffs: Vec<BigRational>) -> Self {
        Self::new(vec![coeffs]).expect("one constituent")
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn constituents(&self) -> &[Vec<BigRational>] {
        &self.constituents
    }

    pub fn is_zero(&self) -> bool {
        self.constituents.iter().flatten().all(Zero::is_zero)
    }

    /// Coefficient of `m^degree` in every constituent.
    pub fn leading_coefficients(&self) -> Vec<BigRational> {
        self.constituents.iter().map(|c| c[self.degree].clone()).collect()
    }

    /// Coefficient of `m^d` for residue `r` (zero past the degree).
    pub fn coefficient(&self, r: usize, d: usize) -> BigRational {
        self.constituents[r % self.period]
            .get(d)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Value at any integer `m`, negative included.
    pub fn evaluate(&self, m: i64) -> BigRational {
        let r = m.rem_euclid(self.period as i64) as usize;
        let x = BigRational::from_integer(BigInt::from(m));
        let mut acc = BigRational::zero();
        for c in self.constituents[r].iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }

    /// The same function written with period `period`, a multiple of the
    /// current one.
    pub fn with_period(&self, period: usize) -> Result<Self> {
        if period == 0 || period % self.period != 0 {
            return Err(Error::Consistency(format!(
                "period {period} is not a multiple of {}",
                self.period
            )));
        }
        Ok(Self {
            period,
            degree: self.degree,
            constituents: (0..period).map(|r| self.constituents[r % self.period].clone()).collect(),
        })
    }

    /// Collapses repeated constituents down to the least period.
    pub fn reduced(&self) -> Self {
        let p = self.period;
        let least = (1..=p)
            .filter(|d| p % d == 0)
            .find(|&d| (0..p).all(|r| self.constituents[r] == self.constituents[r % d]))
            .unwrap_or(p);
        Self {
            period: least,
            degree: self.degree,
            constituents: self.constituents[..least].to_vec(),
        }
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Self {
        let period = self.period.lcm(&other.period);
        let width = self.degree.max(other.degree) + 1;
        let constituents = (0..period)
            .map(|r| {
                (0..width)
                    .map(|d| f(&self.coefficient(r, d), &other.coefficient(r, d)))
                    .collect()
            })
            .collect();
        Self::new(constituents).expect("nonempty").reduced()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let constituents = self
            .constituents
            .iter()
            .map(|v| v.iter().map(|x| x * c).collect())
            .collect();
        Self::new(constituents).expect("nonempty")
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(QuasiJson::from(self)).expect("plain data")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let raw: QuasiJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Self::try_from(raw)
    }
}

/// Wire form: `{"period": p, "degree": d, "constituents": [["num/den", …], …]}`.
#[derive(Serialize, Deserialize)]
struct QuasiJson {
    period: usize,
    degree: usize,
    constituents: Vec<Vec<String>>,
}

impl From<&Quasipolynomial> for QuasiJson {
    fn from(q: &Quasipolynomial) -> Self {
        QuasiJson {
            period: q.period,
            degree: q.degree,
            constituents: q
                .constituents
                .iter()
                .map(|c| c.iter().map(rational_to_string).collect())
                .collect(),
        }
    }
}

impl TryFrom<QuasiJson> for Quasipolynomial {
    type Error = Error;

    fn try_from(raw: QuasiJson) -> Result<Self> {
        if raw.constituents.len() != raw.period {
            return Err(Error::Parse(format!(
                "period {} but {} constituents",
                raw.period,
                raw.constituents.len()
            )));
        }
        let constituents = raw
            .constituents
            .iter()
            .map(|c| c.iter().map(|s| rational_from_str(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let q = Quasipolynomial::new(constituents)?;
        if q.degree != raw.degree {
            return Err(Error::Parse(format!(
                "declared degree {} but coefficients give {}",
                raw.degree, q.degree
            )));
        }
        Ok(q)
    }
}

impl Serialize for Quasipolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuasiJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quasipolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = QuasiJson::deserialize(d)?;
        Quasipolynomial::try_from(raw).map_err(serde::de::Error::custom)
    }
}

/// Newton divided differences through `(x_k, y_k)`, returned in the monomial
/// basis (constant term first).
pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    assert_eq!(xs.len(), ys.len());
    let k = xs.len();
    if k == 0 {
        return vec![BigRational::zero()];
    }
    let mut diff = ys.to_vec();
    for level in 1..k {
        for i in (level..k).rev() {
            diff[i] = (&diff[i] - &diff[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Horner on the Newton form: p = d0 + (x - x0)(d1 + (x - x1)(d2 + …))
    let mut coeffs = vec![diff[k - 1].clone()];
    for i in (0..k - 1).rev() {
        // coeffs ← coeffs·(x − x_i) + diff[i]
        let mut next = vec![BigRational::zero(); coeffs.len() + 1];
        for (d, c) in coeffs.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= c * &xs[i];
        }
        next[0] += &diff[i];
        coeffs = next;
    }
    coeffs
}

/// `Σ_{i<j} gcd(ρ_i, ρ_j) + Σ_i ⌊(ρ_i − 1)/2⌋`.
pub fn degree_formula(rho: &Partition) -> usize {
    let parts = rho.parts();
    let mut d = 0;
    for (i, &a) in parts.iter().enumerate() {
        d += (a - 1) / 2;
        for &b in &parts[i + 1..] {
            d += a.gcd(&b);
        }
    }
    d
}

/// `(−1)^{n(n−1)/2} ε_ρ^{n−1}`.
pub fn reciprocity_sign(rho: &Partition) -> i32 {
    let n = rho.size();
    let base = if (n * n.saturating_sub(1) / 2) % 2 == 0 { 1 } else { -1 };
    let eps = if n >= 1 && (n - 1) % 2 == 1 { rho.eps() } else { 1 };
    base * eps
}

/// `(−1)^{deg N_ρ} = (−1)^{n(n−1)/2} ε_ρ^{n−1}`, evaluated symbolically.
pub fn parity_check(rho: &Partition) -> bool {
    let parity = if degree_formula(rho) % 2 == 0 { 1 } else { -1 };
    parity == reciprocity_sign(rho)
}

#[derive(Clone, Debug)]
pub struct FitOptions {
    pub max_period: usize,
    /// Extra samples per residue that every constituent must reproduce.
    pub validation_points: usize,
    /// Interpolation degree; `None` uses `(n − 1)²`, the dimension of the
    /// Birkhoff polytope containing every `P(σ)`.
    pub degree_bound: Option<usize>,
    /// Cap on the number of distinct `m` sampled.
    pub sample_budget: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            max_period: 12,
            validation_points: 3,
            degree_bound: None,
            sample_budget: 4096,
        }
    }
}

/// Fits a quasipolynomial of degree at most `degree_bound` to `sample(m)`,
/// `m = 0, 1, 2, …`, choosing the least period that validates.
pub fn fit_with(
    degree_bound: usize,
    opts: &FitOptions,
    mut sample: impl FnMut(u64) -> BigUint,
) -> Result<Quasipolynomial> {
    let per_residue = degree_bound + 1 + opts.validation_points;
    let predicted = opts.max_period * per_residue;
    if predicted > opts.sample_budget {
        return Err(guard("quasipolynomial sample count", predicted, opts.sample_budget));
    }
    let mut cache: HashMap<u64, BigRational> = HashMap::new();
    let mut value = |m: u64| -> BigRational {
        cache
            .entry(m)
            .or_insert_with(|| BigRational::from_integer(BigInt::from(sample(m))))
            .clone()
    };
    'period: for p in 1..=opts.max_period {
        let mut constituents = Vec::with_capacity(p);
        for r in 0..p {
            let point = |k: usize| (r + p * k) as u64;
            let xs: Vec<BigRational> = (0..=degree_bound)
                .map(|k| BigRational::from_integer(BigInt::from(point(k))))
                .collect();
            let ys: Vec<BigRational> = (0..=degree_bound).map(|k| value(point(k))).collect();
            let coeffs = interpolate(&xs, &ys);
            let candidate = Quasipolynomial::polynomial(coeffs.clone());
            for k in degree_bound + 1..per_residue {
                let m = point(k);
                if candidate.evaluate(m as i64) != value(m) {
                    continue 'period;
                }
            }
            constituents.push(coeffs);
        }
        return Quasipolynomial::new(constituents);
    }
    Err(Error::NoPeriod {
        max_period: opts.max_period,
    })
}

/// Fits `N_ρ(m)` from exact counts and checks the degree against
/// [`degree_formula`].
pub fn fit(rho: &Partition, opts: &FitOptions) -> Result<Quasipolynomial> {
    let q = fit_unchecked(rho, opts)?;
    let expect = degree_formula(rho);
    if q.degree() != expect {
        return Err(Error::Consistency(format!(
            "fitted N_{rho} has degree {}, formula gives {expect}",
            q.degree()
        )));
    }
    Ok(q)
}

/// Fits `N_ρ(m)` without comparing the degree to the formula.
pub fn fit_unchecked(rho: &Partition, opts: &FitOptions) -> Result<Quasipolynomial> {
    let n = rho.size();
    let bound = opts
        .degree_bound
        .unwrap_or_else(|| n.saturating_sub(1).pow(2));
    let orbits = CellOrbits::new(&Permutation::representative(rho));
    fit_with(bound, opts, |m| count_with_orbits(&orbits, m))
}

/// Fitted `N_ρ` for every `ρ ⊢ n`, in descending lexicographic order.
#[derive(Clone, Debug)]
pub struct EhrhartFits {
    n: usize,
    fits: Vec<(Partition, Quasipolynomial)>,
}

impl EhrhartFits {
    pub fn compute(n: usize, opts: &FitOptions) -> Result<Self> {
        let fits = partitions_of(n)
            .into_par_iter()
            .map(|rho| fit(&rho, opts).map(|q| (rho, q)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n, fits })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &Quasipolynomial)> {
        self.fits.iter().map(|(p, q)| (p, q))
    }

    pub fn get(&self, rho: &Partition) -> Option<&Quasipolynomial> {
        self.fits.iter().find(|(p, _)| p == rho).map(|(_, q)| q)
    }

    /// `Σ_ρ z_ρ⁻¹ χ^λ(ρ) N_ρ`, the quasipolynomial `m ↦ ⟨χ^λ, N^m⟩`.
    pub fn sum_quasipolynomial(&self, lambda: &Partition) -> Result<Quasipolynomial> {
        if lambda.size() != self.n {
            return Err(Error::InvalidPartition(format!("{lambda} is not a partition of {}", self.n)));
        }
        let table = character_table(self.n)?;
        let mut acc = Quasipolynomial::constant(BigRational::zero());
        for (rho, q) in &self.fits {
            let chi = table
                .value(lambda, rho)
                .ok_or_else(|| Error::InvalidPartition(lambda.to_string()))?;
            let c = BigRational::new(BigInt::from(chi), BigInt::from(rho.z()));
            acc = acc.add(&q.scale(&c));
        }
        Ok(acc)
    }

    /// `N^m(ρ) = sign · N^{−m−n}(ρ)` for `m ∈ ms` and vanishing on
    /// `−n+1 ≤ m ≤ −1`.
    pub fn reciprocity_check(&self, ms: impl IntoIterator<Item = i64> + Clone) -> CheckReport {
        let n = self.n as i64;
        let mut checked = 0;
        for (rho, q) in &self.fits {
            let sign = BigRational::from_integer(reciprocity_sign(rho).into());
            for m in ms.clone() {
                checked += 1;
                let lhs = q.evaluate(m);
                let rhs = &sign * q.evaluate(-m - n);
                if lhs != rhs {
                    return CheckReport::fail(
                        checked,
                        format!("rho = {rho}, m = {m}: {lhs} != {rhs}"),
                    );
                }
            }
            for m in -n + 1..=-1 {
                checked += 1;
                let v = q.evaluate(m);
                if !v.is_zero() {
                    return CheckReport::fail(checked, format!("rho = {rho}: N^{m} = {v} != 0"));
                }
            }
        }
        CheckReport::pass(checked)
    }

    /// Leading-term consistency of `m ↦ ⟨χ^λ, N^m⟩` for every `λ ⊢ n`:
    /// the `m^{n(n−1)/2}` coefficient is `χ^λ(1)/n!` times that of `N_{1^n}`,
    /// and `⟨χ^λ, N^m⟩ − χ^λ(1)⟨1, N^m⟩` has degree at most `(n−1)(n−2)/2`.
    pub fn asymptotics_check(&self) -> Result<AsymptoticsReport> {
        let n = self.n;
        let top = n * n.saturating_sub(1) / 2;
        let low = n.saturating_sub(1) * n.saturating_sub(2) / 2;
        let identity = self
            .get(&Partition::column(n))
            .ok_or_else(|| Error::Consistency("missing fit for the identity class".into()))?;
        let table = character_table(n)?;
        let fact: BigInt = (1..=n).map(BigInt::from).product();
        let trivial = self.sum_quasipolynomial(&Partition::row(n))?;
        let mut rows = Vec::new();
        let mut failure = None;
        for lambda in partitions_of(n) {
            let dim = table.value(&lambda, &Partition::column(n)).unwrap_or(0);
            let sum = self.sum_quasipolynomial(&lambda)?;
            let ratio = BigRational::new(BigInt::from(dim), fact.clone());
            let period = sum.period().lcm(&identity.period());
            let mut leading_ok = sum.degree() == top;
            for r in 0..period {
                let expect = &ratio * identity.coefficient(r, top);
                if sum.coefficient(r, top) != expect || expect.is_zero() {
                    leading_ok = false;
                }
            }
            let residual = sum.sub(&trivial.scale(&BigRational::from_integer(dim.into())));
            let residual_degree = if residual.is_zero() { None } else { Some(residual.degree()) };
            let residual_ok = residual_degree.map_or(true, |d| d <= low);
            if failure.is_none() && !(leading_ok && residual_ok) {
                failure = Some(format!(
                    "lambda = {lambda}: leading ok = {leading_ok}, residual degree = {residual_degree:?} (bound {low})"
                ));
            }
            rows.push(AsymptoticsRow {
                lambda,
                leading: sum.leading_coefficients(),
                residual_degree,
            });
        }
        Ok(AsymptoticsReport {
            n,
            volume: identity.leading_coefficients(),
            rows,
            failure,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub checked: usize,
    pub failure: Option<String>,
}

impl CheckReport {
    fn pass(checked: usize) -> Self {
        Self {
            checked,
            failure: None,
        }
    }

    fn fail(checked: usize, why: String) -> Self {
        Self {
            checked,
            failure: Some(why),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct AsymptoticsRow {
    pub lambda: Partition,
    pub leading: Vec<BigRational>,
    pub residual_degree: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct AsymptoticsReport {
    pub n: usize,
    /// Leading coefficients of `N_{1^n}` per residue: the relative volume of
    /// the symmetric-matrix polytope.
    pub volume: Vec<BigRational>,
    pub rows: Vec<AsymptoticsRow>,
    pub failure: Option<String>,
}

impl AsymptoticsReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Compares a fitted `N_ρ` with fresh exact counts at `2(d+1)p` values of
/// `m` lying past every sample the fit used.
pub fn fresh_sample_check(rho: &Partition, q: &Quasipolynomial, opts: &FitOptions) -> CheckReport {
    let n = rho.size();
    let bound = opts
        .degree_bound
        .unwrap_or_else(|| n.saturating_sub(1).pow(2));
    // the period search stops at the first period that validates, so no
    // sample lies at or beyond `period · (bound + 1 + validation_points)`
    let start = (q.period() * (bound + 1 + opts.validation_points)) as u64;
    let extra = 2 * (q.degree() + 1) * q.period();
    let orbits = CellOrbits::new(&Permutation::representative(rho));
    for (k, m) in (start..start + extra as u64).enumerate() {
        let exact = BigRational::from_integer(BigInt::from(count_with_orbits(&orbits, m)));
        let fitted = q.evaluate(m as i64);
        if exact != fitted {
            return CheckReport::fail(k + 1, format!("rho = {rho}, m = {m}: fit {fitted}, count {exact}"));
        }
    }
    CheckReport::pass(extra)
}

/// Checks that `max_ρ deg N_ρ = n(n−1)/2`, attained only at `ρ = 1^n`.
pub fn degree_bound_check(n: usize) -> bool {
    let top = n * n.saturating_sub(1) / 2;
    partitions_of(n).iter().all(|rho| {
        let d = degree_formula(rho);
        if rho.parts().iter().all(|&p| p == 1) {
            d == top
        } else {
            d < top
        }
    })
}
