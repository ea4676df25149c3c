use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// A permutation of `{1, …, n}`.
///
/// I/O uses 1-indexed one-line notation; internally points are `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from 1-indexed one-line notation.
    pub fn from_one_line(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n];
        let mut images = Vec::with_capacity(n);
        for &x in &one_line {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{one_line:?} is not a bijection on 1..={n}"
                )));
            }
            seen[x - 1] = true;
            images.push(x - 1);
        }
        Ok(Self { images })
    }

    /// Builds a permutation from 0-indexed images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        Self::from_one_line(images.into_iter().map(|x| x + 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-indexed point `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_unsorted(self.cycles().iter().map(Vec::len).collect())
    }

    /// Parity from the number of transpositions needed: `(−1)^{Σ (len − 1)}`.
    pub fn sign(&self) -> i32 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Canonical permutation of cycle type `rho`: consecutive cycles
    /// `(1 2 … ρ₁)(ρ₁+1 …)…`, smallest points first.
    pub fn representative(rho: &Partition) -> Permutation {
        let mut images = Vec::with_capacity(rho.size());
        let mut start = 0;
        for &len in rho.parts() {
            for k in 0..len {
                images.push(start + (k + 1) % len);
            }
            start += len;
        }
        Permutation { images }
    }

    /// All permutations of `n` points in lexicographic order of one-line notation.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations {
            current: Some((0..n).collect()),
        }
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(one_line: Vec<usize>) -> Result<Self> {
        Permutation::from_one_line(one_line)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.one_line()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.one_line())
    }
}

pub struct AllPermutations {
    current: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.current.take()?;
        let out = Permutation { images: cur.clone() };
        let mut next = cur;
        // next permutation in lexicographic order
        let n = next.len();
        if n >= 2 {
            if let Some(i) = (0..n - 1).rev().find(|&i| next[i] < next[i + 1]) {
                let j = (i + 1..n).rev().find(|&j| next[j] > next[i]).unwrap();
                next.swap(i, j);
                next[i + 1..].reverse();
                self.current = Some(next);
            }
        }
        Some(out)
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_one_line(v.to_vec()).unwrap()
    }

    #[test]
    fn cycle_types() {
        assert_eq!(Permutation::identity(3).cycle_type(), "1,1,1".parse().unwrap());
        assert_eq!(perm(&[2, 1, 3]).cycle_type(), "2,1".parse().unwrap());
        assert_eq!(perm(&[2, 3, 4, 1]).cycle_type(), "4".parse().unwrap());
    }

    #[test]
    fn representatives() {
        assert_eq!(Permutation::representative(&"2,1".parse().unwrap()), perm(&[2, 1, 3]));
        assert_eq!(Permutation::representative(&"3".parse().unwrap()), perm(&[2, 3, 1]));
        assert_eq!(
            Permutation::representative(&"5".parse().unwrap()),
            perm(&[2, 3, 4, 5, 1])
        );
        for n in 1..=10 {
            for rho in partitions_of(n) {
                assert_eq!(Permutation::representative(&rho).cycle_type(), rho);
            }
        }
    }

    #[test]
    fn sign_matches_eps() {
        for n in 1..=6 {
            for p in Permutation::all(n) {
                assert_eq!(p.sign(), p.cycle_type().eps());
            }
        }
    }

    #[test]
    fn enumeration_is_complete() {
        assert_eq!(Permutation::all(0).count(), 1);
        assert_eq!(Permutation::all(1).count(), 1);
        let all: Vec<_> = Permutation::all(5).collect();
        assert_eq!(all.len(), 120);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_one_line(vec![1, 1]).is_err());
        assert!(Permutation::from_one_line(vec![0, 1]).is_err());
        assert!(Permutation::from_one_line(vec![3, 1]).is_err());
        assert!(serde_json::from_str::<Permutation>("[2,2,1]").is_err());
    }

    #[test]
    fn compose_and_inverse() {
        let a = perm(&[2, 3, 1]);
        let b = perm(&[2, 1, 3]);
        // (a∘b)(1) = a(b(1)) = a(2) = 3
        assert_eq!(a.compose(&b).one_line(), vec![3, 2, 1]);
        assert!(a.compose(&a.inverse()).is_identity());
    }
}
