//! Brute-force plethysm in the power-sum basis.
//!
//! `s_λ[s_m]` is expanded as `Σ_ρ z_ρ⁻¹ χ^λ(ρ) ∏_i p_{ρ_i}[s_m]`, where
//! `p_k[g]` rescales every power-sum index of `g` by `k`. Schur coefficients
//! are then read off with the Hall pairing `⟨p_τ, s_ν⟩ = χ^ν(τ)`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::characters::{character_table, to_natural};
use crate::error::{guard, Error, Result};
use crate::partition::{partitions_of, Partition};

/// Largest `nm` accepted by the oracle.
pub const MAX_ORACLE_DEGREE: usize = 12;

/// A homogeneous symmetric function written in the power-sum basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PSymFunc {
    degree: usize,
    terms: BTreeMap<Partition, BigRational>,
}

impl PSymFunc {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The power sum `p_ρ`.
    pub fn power_sum(rho: &Partition) -> Self {
        let mut f = Self::zero(rho.size());
        f.terms.insert(rho.clone(), BigRational::one());
        f
    }

    pub fn from_terms(
        degree: usize,
        terms: impl IntoIterator<Item = (Partition, BigRational)>,
    ) -> Result<Self> {
        let mut f = Self::zero(degree);
        for (rho, c) in terms {
            f.add_term(rho, c)?;
        }
        Ok(f)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, rho: &Partition) -> BigRational {
        self.terms.get(rho).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, rho: Partition, c: BigRational) -> Result<()> {
        if rho.size() != self.degree {
            return Err(Error::Consistency(format!(
                "p_{rho} does not have degree {}",
                self.degree
            )));
        }
        let slot = self.terms.entry(rho).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn add(&self, other: &PSymFunc) -> Result<PSymFunc> {
        let mut out = self.clone();
        for (rho, c) in &other.terms {
            out.add_term(rho.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> PSymFunc {
        if c.is_zero() {
            return PSymFunc::zero(self.degree);
        }
        PSymFunc {
            degree: self.degree,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Product, via `p_ρ · p_σ = p_{ρ ∪ σ}`.
    pub fn multiply(&self, other: &PSymFunc) -> PSymFunc {
        let mut terms: BTreeMap<Partition, BigRational> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                *terms.entry(a.union(b)).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        PSymFunc {
            degree: self.degree + other.degree,
            terms,
        }
    }

    /// `p_k[g]`: every index part `j` of `g` becomes `jk`.
    pub fn p_plethysm(k: usize, g: &PSymFunc) -> PSymFunc {
        assert!(k > 0, "p_0 is not a power sum");
        PSymFunc {
            degree: g.degree * k,
            terms: g.terms.iter().map(|(rho, c)| (rho.scaled(k), c.clone())).collect(),
        }
    }

    /// `⟨f, s_ν⟩ = Σ_τ f_τ χ^ν(τ)`, the coefficient of `s_ν` in `f`.
    pub fn schur_coefficient(&self, nu: &Partition) -> Result<BigRational> {
        let table = character_table(self.degree)?;
        let mut acc = BigRational::zero();
        for (tau, c) in &self.terms {
            let chi = table
                .value(nu, tau)
                .ok_or_else(|| Error::InvalidPartition(nu.to_string()))?;
            acc += c * BigRational::from_integer(chi.into());
        }
        Ok(acc)
    }

    /// Schur expansion over all `ν ⊢ degree`, in descending lexicographic order.
    pub fn schur_expansion(&self) -> Result<Vec<(Partition, BigRational)>> {
        partitions_of(self.degree)
            .into_iter()
            .map(|nu| {
                let c = self.schur_coefficient(&nu)?;
                Ok((nu, c))
            })
            .collect()
    }
}

/// `s_λ = Σ_ρ z_ρ⁻¹ χ^λ(ρ) p_ρ`.
pub fn schur_in_p(lambda: &Partition) -> Result<PSymFunc> {
    let n = lambda.size();
    let table = character_table(n)?;
    let row = table
        .row(lambda)
        .ok_or_else(|| Error::InvalidPartition(lambda.to_string()))?;
    let mut f = PSymFunc::zero(n);
    for (rho, &chi) in table.partitions().iter().zip(row) {
        if chi != 0 {
            let c = BigRational::new(BigInt::from(chi), BigInt::from(rho.z()));
            f.add_term(rho.clone(), c)?;
        }
    }
    Ok(f)
}

/// The multiplicities `a^ν` of `s_ν` in `s_λ[s_m]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlethysmResult {
    pub lambda: Partition,
    pub m: usize,
    /// Nonzero multiplicities, descending lexicographic in `ν`.
    pub coefficients: Vec<(Partition, BigUint)>,
    /// `s_λ[s_m]` in the power-sum basis.
    pub expansion: PSymFunc,
}

impl PlethysmResult {
    pub fn sum(&self) -> BigUint {
        self.coefficients.iter().map(|(_, a)| a).sum()
    }

    pub fn get(&self, nu: &Partition) -> BigUint {
        self.coefficients
            .iter()
            .find(|(p, _)| p == nu)
            .map(|(_, a)| a.clone())
            .unwrap_or_else(BigUint::zero)
    }
}

fn check_degree(total: usize) -> Result<()> {
    if total > MAX_ORACLE_DEGREE {
        return Err(guard("oracle degree nm", total, MAX_ORACLE_DEGREE));
    }
    Ok(())
}

/// The power-sum expansion of `s_λ[s_m]`.
pub fn plethysm_expansion(lambda: &Partition, m: usize) -> Result<PSymFunc> {
    let n = lambda.size();
    check_degree(n * m)?;
    let g = schur_in_p(&Partition::row(m))?;
    let table = character_table(n)?;
    let row = table
        .row(lambda)
        .ok_or_else(|| Error::InvalidPartition(lambda.to_string()))?;
    let mut memo: HashMap<usize, PSymFunc> = HashMap::new();
    let mut total = PSymFunc::zero(n * m);
    for (rho, &chi) in table.partitions().iter().zip(row) {
        if chi == 0 {
            continue;
        }
        let mut term = PSymFunc::power_sum(&Partition::empty());
        for &k in rho.parts() {
            let factor = memo.entry(k).or_insert_with(|| PSymFunc::p_plethysm(k, &g));
            term = term.multiply(factor);
        }
        let c = BigRational::new(BigInt::from(chi), BigInt::from(rho.z()));
        total = total.add(&term.scale(&c))?;
    }
    Ok(total)
}

/// Decomposes `s_λ[s_m]` into Schur functions; every multiplicity must be a
/// non-negative integer.
pub fn plethysm_schur(lambda: &Partition, m: usize) -> Result<PlethysmResult> {
    let expansion = plethysm_expansion(lambda, m)?;
    let mut coefficients = Vec::new();
    for (nu, a) in expansion.schur_expansion()? {
        let a_nat = to_natural(&a).ok_or_else(|| {
            Error::Consistency(format!(
                "coefficient of s_{nu} in s_{lambda}[s_{m}] is {a}, not a non-negative integer"
            ))
        })?;
        if !a_nat.is_zero() {
            coefficients.push((nu, a_nat));
        }
    }
    Ok(PlethysmResult {
        lambda: lambda.clone(),
        m,
        coefficients,
        expansion,
    })
}

/// `Σ_ν a_{λ,m}^ν`.
pub fn oracle_sum(lambda: &Partition, m: usize) -> Result<BigUint> {
    Ok(plethysm_schur(lambda, m)?.sum())
}

/// Number of Schur constituents of `(s_m)^n`, counted with multiplicity.
pub fn power_product_constituents(n: usize, m: usize) -> Result<BigUint> {
    check_degree(n * m)?;
    let g = schur_in_p(&Partition::row(m))?;
    let mut prod = PSymFunc::power_sum(&Partition::empty());
    for _ in 0..n {
        prod = prod.multiply(&g);
    }
    let mut total = BigUint::zero();
    for (nu, c) in prod.schur_expansion()? {
        let c = to_natural(&c).ok_or_else(|| {
            Error::Consistency(format!("<(s_{m})^{n}, s_{nu}> = {c} is not natural"))
        })?;
        total += c;
    }
    Ok(total)
}
