//! Integer partitions and the statistics attached to their Young diagrams.
//!
//! A [`Partition`] is a weakly decreasing sequence of positive integers. The
//! empty sequence is the empty partition, a partition of zero. Partitions
//! index conjugacy classes and irreducible characters of the symmetric
//! groups, power-sum and Schur monomials, and correlators.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinat::factorial;
use crate::error::{Error, Result};

/// A partition stored as its parts in weakly decreasing order.
///
/// Trailing zeros are rejected rather than stripped, so equality is plain
/// sequence equality. The derived ordering is lexicographic on the parts;
/// reverse-lexicographic order (the canonical listing order) is its reverse.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if !ok {
            return Err(Error::InvalidPartition(
                parts
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            ));
        }
        Ok(Partition { parts })
    }

    pub fn from_slice(parts: &[usize]) -> Result<Self> {
        Self::new(parts.to_vec())
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    /// `(2^n)`, the cycle type of a fixed-point-free involution.
    pub fn pairs(n: usize) -> Self {
        Partition { parts: vec![2; n] }
    }

    /// The hook `(arm + 1, 1^leg)`, `(arm | leg)` in Frobenius notation.
    pub fn hook(arm: usize, leg: usize) -> Self {
        let mut parts = vec![arm + 1];
        parts.extend(std::iter::repeat_n(1, leg));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|λ|`.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `l(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-indexed), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// `(part, multiplicity)` pairs, largest part first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        let parts = (0..first)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// Builds a partition from parts in any order.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    /// Multiset union of the parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses the comma-separated form `"4,2,1"`; the empty string is `∅`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidPartition(s.to_string()))?;
        Self::new(parts).map_err(|_| Error::InvalidPartition(s.to_string()))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// `z_λ = Π_i i^{m_i} m_i!`, the order of the centraliser of a permutation of
/// cycle type `λ`.
pub fn z_of(lambda: &Partition) -> BigInt {
    lambda
        .multiplicities()
        .into_iter()
        .fold(BigInt::one(), |acc, (i, m)| {
            acc * BigInt::from(i).pow(m as u32) * factorial(m as u64)
        })
}

/// `|C_λ| = |λ|! / z_λ`.
pub fn class_size(lambda: &Partition) -> BigInt {
    factorial(lambda.weight() as u64) / z_of(lambda)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    /// 0-indexed row.
    pub row: usize,
    /// 0-indexed column.
    pub col: usize,
    pub content: i64,
    pub hook: u64,
}

/// Content and hook length of every cell, in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellStats {
    pub cells: Vec<Cell>,
}

impl CellStats {
    pub fn hook_product(&self) -> BigInt {
        self.cells.iter().fold(BigInt::one(), |acc, c| acc * c.hook)
    }

    pub fn contents(&self) -> impl Iterator<Item = i64> + '_ {
        self.cells.iter().map(|c| c.content)
    }

    /// `(content, hook)` pairs sorted, for multiset comparison.
    pub fn multiset(&self) -> Vec<(i64, u64)> {
        let mut v: Vec<_> = self.cells.iter().map(|c| (c.content, c.hook)).collect();
        v.sort_unstable();
        v
    }
}

pub fn cell_stats(lambda: &Partition) -> CellStats {
    let conj = lambda.conjugate();
    let mut cells = Vec::with_capacity(lambda.weight());
    for (row, &len) in lambda.parts().iter().enumerate() {
        for col in 0..len {
            let arm = len - col - 1;
            let leg = conj.part(col) - row - 1;
            cells.push(Cell {
                row,
                col,
                content: col as i64 - row as i64,
                hook: (arm + leg + 1) as u64,
            });
        }
    }
    CellStats { cells }
}

/// `d_λ = |λ|! / Π h(v)`, the dimension of the irreducible `S_{|λ|}` module.
pub fn dimension(lambda: &Partition) -> BigInt {
    factorial(lambda.weight() as u64) / cell_stats(lambda).hook_product()
}
