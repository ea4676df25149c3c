//! Integer partitions and the arithmetic attached to cycle types.
//!
//! Partitions are listed in descending lexicographic order everywhere in the
//! crate: `[4], [3,1], [2,2], [2,1,1], [1,1,1,1]`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Self { parts })
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The one-row partition `[n]` (empty for n = 0).
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Self { parts: vec![n] }
        }
    }

    /// The one-column partition `1^n`.
    pub fn column(n: usize) -> Self {
        Self { parts: vec![1; n] }
    }

    /// `m^n`: n parts equal to m.
    pub fn rectangle(n: usize, m: usize) -> Self {
        if m == 0 {
            Self::empty()
        } else {
            Self { parts: vec![m; n] }
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.parts
    }

    /// The integer being partitioned.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `(i, m_i)` for every part size `i` that occurs, ascending in `i`.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in self.parts.iter().rev() {
            match out.last_mut() {
                Some((q, c)) if *q == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn all_parts_odd(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 1)
    }

    /// Multiset union of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        let (mut a, mut b) = (self.parts.iter().peekable(), other.parts.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) => {
                    if x >= y {
                        parts.push(x);
                        a.next();
                    } else {
                        parts.push(y);
                        b.next();
                    }
                }
                (Some(&&x), None) => {
                    parts.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    parts.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Partition { parts }
    }

    /// Every part multiplied by `k`.
    pub fn scaled(&self, k: usize) -> Partition {
        assert!(k > 0, "scale factor must be positive");
        Partition {
            parts: self.parts.iter().map(|p| p * k).collect(),
        }
    }

    /// `z_ρ = ∏ i^{m_i} m_i!`, the order of the centralizer of a permutation of this cycle type.
    pub fn z(&self) -> BigUint {
        let mut acc = BigUint::one();
        for (i, mi) in self.multiplicities() {
            for k in 1..=mi {
                acc *= BigUint::from(i) * BigUint::from(k);
            }
        }
        acc
    }

    /// `(−1)^{n − ℓ}`: the sign of any permutation with this cycle type.
    pub fn eps(&self) -> i32 {
        if (self.size() - self.len()) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Accepts `3,1,1`, `[3,1,1]`, `3 1 1` and the empty forms `""` / `[]`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad part {t:?} in {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n`, in descending lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// `p(n)` by Euler's pentagonal-number recurrence.
pub fn partition_count(n: usize) -> BigUint {
    let mut p: Vec<BigUint> = vec![BigUint::one()];
    for k in 1..=n {
        // signed accumulation: add for j ≡ 1,2 mod 4 pairs, subtract otherwise
        let mut plus = BigUint::zero();
        let mut minus = BigUint::zero();
        let mut j: usize = 1;
        loop {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > k {
                break;
            }
            let g2 = j * (3 * j + 1) / 2;
            let target = if j % 2 == 1 { &mut plus } else { &mut minus };
            *target += &p[k - g1];
            if g2 <= k {
                *target += &p[k - g2];
            }
            j += 1;
        }
        p.push(plus - minus);
    }
    p.swap_remove(n)
}

/// Number of partitions of `n` whose parts are all odd.
pub fn count_odd_part_partitions(n: usize) -> BigUint {
    let mut ways = vec![BigUint::zero(); n + 1];
    ways[0] = BigUint::one();
    for part in (1..=n).step_by(2) {
        for total in part..=n {
            let (lo, hi) = ways.split_at_mut(total);
            hi[0] += &lo[total - part];
        }
    }
    ways.swap_remove(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partitions_of_small() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(
            partitions_of(4),
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
        assert_eq!(partitions_of(6).len(), 11);
    }

    #[test]
    fn partitions_are_descending_and_distinct() {
        for n in 0..=12 {
            let ps = partitions_of(n);
            assert!(ps.windows(2).all(|w| w[0] > w[1]), "n = {n}");
            assert!(ps.iter().all(|q| q.size() == n));
        }
    }

    #[test]
    fn generator_matches_pentagonal_recurrence() {
        for n in 0..=20 {
            assert_eq!(BigUint::from(partitions_of(n).len()), partition_count(n), "n = {n}");
        }
        assert_eq!(partition_count(100), "190569292".parse::<BigUint>().unwrap());
    }

    #[test]
    fn z_values() {
        assert_eq!(p(&[1, 1, 1]).z(), BigUint::from(6u32));
        assert_eq!(p(&[2, 1]).z(), BigUint::from(2u32));
        // 3^2 * 2! * 2^1 * 1!
        assert_eq!(p(&[3, 3, 2]).z(), BigUint::from(9u32 * 2 * 2));
        assert_eq!(Partition::empty().z(), BigUint::one());
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 1..=10usize {
            let fact: BigUint = (1..=n).map(BigUint::from).product();
            let mut total = BigUint::zero();
            for rho in partitions_of(n) {
                let z = rho.z();
                assert!((&fact % &z).is_zero());
                total += &fact / &z;
            }
            assert_eq!(total, fact);
        }
    }

    #[test]
    fn eps_values() {
        assert_eq!(p(&[1, 1, 1]).eps(), 1);
        assert_eq!(p(&[2, 1]).eps(), -1);
        assert_eq!(p(&[4, 2]).eps(), 1);
    }

    #[test]
    fn odd_part_counts() {
        assert_eq!(count_odd_part_partitions(2), BigUint::from(1u32));
        for n in 0..=12 {
            let filtered = partitions_of(n).iter().filter(|q| q.all_parts_odd()).count();
            assert_eq!(count_odd_part_partitions(n), BigUint::from(filtered), "n = {n}");
        }
        assert_eq!(count_odd_part_partitions(5), BigUint::from(3u32));
        assert_eq!(count_odd_part_partitions(10), BigUint::from(10u32));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("3,1,1".parse::<Partition>().unwrap(), p(&[3, 1, 1]));
        assert_eq!("[2, 2]".parse::<Partition>().unwrap(), p(&[2, 2]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
        assert!("1,0".parse::<Partition>().is_err());
        assert_eq!(p(&[3, 1, 1]).to_string(), "[3,1,1]");
        let json = serde_json::to_string(&p(&[3, 1, 1])).unwrap();
        assert_eq!(json, "[3,1,1]");
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }

    #[test]
    fn union_and_scale() {
        assert_eq!(p(&[3, 1]).union(&p(&[2, 1])), p(&[3, 2, 1, 1]));
        assert_eq!(p(&[2, 1]).scaled(2), p(&[4, 2]));
        assert_eq!(p(&[2, 2, 1]).multiplicities(), vec![(1, 1), (2, 2)]);
    }
}
