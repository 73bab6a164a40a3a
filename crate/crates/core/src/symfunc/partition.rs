//! Partitions as finite multiplicity sequences.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition stored as a multiplicity sequence: `mult[i]` is the number
/// of parts equal to `i + 1`. Trailing zeros are stripped so equality is
/// structural.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Partition {
    mult: Vec<u64>,
}

impl Partition {
    pub fn new(mut mult: Vec<u64>) -> Self {
        while mult.last() == Some(&0) {
            mult.pop();
        }
        Partition { mult }
    }

    pub fn empty() -> Self {
        Partition { mult: Vec::new() }
    }

    /// Partition with a single run of parts: `count` parts equal to `part`.
    pub fn uniform(part: usize, count: u64) -> Self {
        if part == 0 || count == 0 {
            return Self::empty();
        }
        let mut mult = vec![0; part];
        mult[part - 1] = count;
        Partition { mult }
    }

    /// Build from a list of parts (any order).
    pub fn from_parts(parts: &[usize]) -> Self {
        let mut mult = Vec::new();
        for &p in parts {
            if p == 0 {
                continue;
            }
            if mult.len() < p {
                mult.resize(p, 0);
            }
            mult[p - 1] += 1;
        }
        Partition::new(mult)
    }

    /// Multiplicity of the part `i` (1-based).
    pub fn multiplicity(&self, i: usize) -> u64 {
        if i == 0 || i > self.mult.len() {
            0
        } else {
            self.mult[i - 1]
        }
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.mult
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// The degree ‖r‖ = Σ i·r_i.
    pub fn degree(&self) -> u64 {
        self.mult
            .iter()
            .enumerate()
            .map(|(i, &r)| (i as u64 + 1) * r)
            .sum()
    }

    /// The inner degree |r| = Σ r_i.
    pub fn inner_degree(&self) -> u64 {
        self.mult.iter().sum()
    }

    /// Parts listed in descending order, one entry per copy.
    pub fn parts(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &r) in self.mult.iter().enumerate().rev() {
            for _ in 0..r {
                out.push(i + 1);
            }
        }
        out
    }

    /// Number of permutations of the parts fixing the multiset: ∏ r_i!.
    pub fn aut_order(&self) -> BigInt {
        let mut acc = BigInt::one();
        for &r in &self.mult {
            for j in 2..=r {
                acc *= j;
            }
        }
        acc
    }

    /// Parse the "i:r_i" comma-joined syntax, e.g. "1:4,3:1" for (1^4,3^1).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let mut mult: Vec<u64> = Vec::new();
        for item in s.split(',') {
            let (i, r) = item
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected i:r_i, got {item:?}")))?;
            let i: usize = i
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad part {i:?}")))?;
            let r: u64 = r
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad multiplicity {r:?}")))?;
            if i == 0 {
                return Err(Error::Parse("part index must be >= 1".into()));
            }
            if mult.len() < i {
                mult.resize(i, 0);
            }
            mult[i - 1] += r;
        }
        Ok(Partition::new(mult))
    }

    /// All partitions of degree exactly `n`.
    pub fn all_of_degree(n: u64) -> Vec<Partition> {
        fn rec(remaining: u64, max_part: u64, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition::from_parts(current));
                return;
            }
            let top = remaining.min(max_part);
            for part in (1..=top).rev() {
                current.push(part as usize);
                rec(remaining - part, part, current, out);
                current.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return write!(f, "()");
        }
        let items: Vec<String> = self
            .mult
            .iter()
            .enumerate()
            .filter(|(_, &r)| r > 0)
            .map(|(i, &r)| format!("{}:{}", i + 1, r))
            .collect();
        write!(f, "{}", items.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_and_canonical_form() {
        let p = Partition::new(vec![4, 0, 1, 0, 0]);
        assert_eq!(p.multiplicities(), &[4, 0, 1]);
        assert_eq!(p.degree(), 7);
        assert_eq!(p.inner_degree(), 5);
        assert_eq!(p.parts(), vec![3, 1, 1, 1, 1]);
        assert_eq!(p, Partition::from_parts(&[1, 3, 1, 1, 1]));
    }

    #[test]
    fn empty_partition() {
        let p = Partition::empty();
        assert_eq!(p.degree(), 0);
        assert_eq!(p.inner_degree(), 0);
        assert_eq!(Partition::new(vec![0, 0]), p);
    }

    #[test]
    fn parse_round_trip() {
        let p = Partition::parse("1:4,3:1").unwrap();
        assert_eq!(p, Partition::new(vec![4, 0, 1]));
        assert_eq!(Partition::parse(&p.to_string()).unwrap(), p);
        assert!(Partition::parse("0:1").is_err());
        assert!(Partition::parse("x").is_err());
    }

    #[test]
    fn enumeration_counts() {
        // partition numbers p(1)..p(8) = 1,2,3,5,7,11,15,22
        let counts: Vec<usize> = (1..=8).map(|n| Partition::all_of_degree(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
        // 66 non-empty partitions with degree <= 8
        let total: usize = counts.iter().sum();
        assert_eq!(total, 66);
    }

    #[test]
    fn aut_order() {
        assert_eq!(
            Partition::from_parts(&[1, 1, 1, 2]).aut_order(),
            BigInt::from(6)
        );
    }
}
