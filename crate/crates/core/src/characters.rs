//! Irreducible characters of the symmetric groups and the Frobenius change of
//! basis between power sums and Schur functions.
//!
//! Values are computed by the Murnaghan–Nakayama rule on beta-sets (bead
//! positions `λ_i + l - 1 - i`): removing a rim hook of length `r` moves one
//! bead down by `r` onto an empty position, with sign `(-1)^{height}` where
//! the height is the number of beads jumped over.

use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, z_of, Partition};

/// Largest weight the character engine accepts.
pub const MAX_WEIGHT: usize = 24;

/// Memoised character values keyed on `(irrep, class)`.
///
/// Entries are only ever inserted, and every insert for a key carries the same
/// value, so concurrent fills converge regardless of interleaving.
#[derive(Default)]
pub struct CharTable {
    entries: RwLock<HashMap<(Partition, Partition), i64>>,
}

impl CharTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// The process-wide table used by the free functions of this module.
    pub fn global() -> &'static CharTable {
        static TABLE: OnceLock<CharTable> = OnceLock::new();
        TABLE.get_or_init(CharTable::new)
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `χ^λ_μ`.
    pub fn character(&self, lambda: &Partition, mu: &Partition) -> Result<i64> {
        if lambda.weight() != mu.weight() {
            return Err(Error::WeightMismatch {
                irrep: lambda.clone(),
                class: mu.clone(),
            });
        }
        if lambda.weight() > MAX_WEIGHT {
            return Err(Error::CapacityExceeded {
                what: "character weight",
                requested: lambda.weight(),
                limit: MAX_WEIGHT,
            });
        }
        Ok(self.lookup(lambda, mu))
    }

    fn lookup(&self, lambda: &Partition, mu: &Partition) -> i64 {
        if mu.is_empty() {
            return 1;
        }
        let key = (lambda.clone(), mu.clone());
        if let Some(&v) = self.entries.read().unwrap().get(&key) {
            return v;
        }
        let rest = Partition::from_slice(&mu.parts()[1..]).expect("suffix of a partition");
        let r = mu.parts()[0];
        let value = strip_rim_hooks(lambda, r)
            .into_iter()
            .map(|(sign, smaller)| sign * self.lookup(&smaller, &rest))
            .sum();
        self.entries.write().unwrap().insert(key, value);
        value
    }
}

/// Every way of removing a rim hook of length `r` from `lambda`, as
/// `(sign, remaining shape)`.
fn strip_rim_hooks(lambda: &Partition, r: usize) -> Vec<(i64, Partition)> {
    let l = lambda.len();
    let beads: Vec<usize> = (0..l).map(|i| lambda.part(i) + l - 1 - i).collect();
    let mut out = Vec::new();
    for (idx, &b) in beads.iter().enumerate() {
        if b < r {
            continue;
        }
        let target = b - r;
        if beads.contains(&target) {
            continue;
        }
        let jumped = beads.iter().filter(|&&c| c > target && c < b).count();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        let mut moved = beads.clone();
        moved[idx] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<usize> = moved
            .iter()
            .enumerate()
            .map(|(i, &c)| c - (l - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        out.push((
            sign,
            Partition::new(parts).expect("bead moves preserve shape"),
        ));
    }
    out
}

/// `χ^λ_μ` from the global table.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    CharTable::global().character(lambda, mu)
}

/// Schur expansion of `p_μ`: `p_μ = Σ_λ χ^λ_μ s_λ`. Zero coefficients are
/// omitted.
pub fn power_to_schur(mu: &Partition) -> Result<BTreeMap<Partition, i64>> {
    let mut out = BTreeMap::new();
    for lambda in enumerate_partitions(mu.weight()) {
        let c = character(&lambda, mu)?;
        if c != 0 {
            out.insert(lambda, c);
        }
    }
    Ok(out)
}

/// Power-sum expansion of `s_λ`: `s_λ = Σ_μ χ^λ_μ / z_μ p_μ`. Zero
/// coefficients are omitted.
pub fn schur_to_power(lambda: &Partition) -> Result<BTreeMap<Partition, BigRational>> {
    let mut out = BTreeMap::new();
    for mu in enumerate_partitions(lambda.weight()) {
        let c = character(lambda, &mu)?;
        if c != 0 {
            out.insert(mu.clone(), BigRational::new(BigInt::from(c), z_of(&mu)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn p(parts: &[usize]) -> Partition {
        Partition::from_slice(parts).unwrap()
    }

    #[test]
    fn trivial_and_sign_characters() {
        for mu in enumerate_partitions(6) {
            assert_eq!(character(&Partition::row(6), &mu).unwrap(), 1);
            let sign = if (6 - mu.len()) % 2 == 0 { 1 } else { -1 };
            assert_eq!(character(&Partition::column(6), &mu).unwrap(), sign);
        }
    }

    #[test]
    fn hook_on_fixed_point_free_involution() {
        assert_eq!(character(&p(&[3, 1]), &p(&[2, 2])).unwrap(), -1);
    }

    #[test]
    fn s3_table() {
        // rows (3), (2,1), (1,1,1); columns (3), (2,1), (1,1,1)
        let classes = [p(&[3]), p(&[2, 1]), p(&[1, 1, 1])];
        let want = [[1, 1, 1], [-1, 0, 2], [1, -1, 1]];
        for (lambda, row) in [p(&[3]), p(&[2, 1]), p(&[1, 1, 1])].iter().zip(want) {
            for (mu, w) in classes.iter().zip(row) {
                assert_eq!(character(lambda, mu).unwrap(), w, "{lambda:?} {mu:?}");
            }
        }
    }

    #[test]
    fn weight_mismatch_is_an_error() {
        assert!(matches!(
            character(&p(&[2]), &p(&[1])),
            Err(Error::WeightMismatch { .. })
        ));
    }

    #[test]
    fn capacity_is_enforced() {
        assert!(matches!(
            character(&Partition::row(25), &Partition::row(25)),
            Err(Error::CapacityExceeded { .. })
        ));
    }

    #[test]
    fn frobenius_small_cases() {
        let one = |v: i64| BigRational::from_integer(BigInt::from(v));
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        assert_eq!(
            power_to_schur(&p(&[1])).unwrap(),
            BTreeMap::from([(p(&[1]), 1)])
        );
        assert_eq!(
            power_to_schur(&p(&[2])).unwrap(),
            BTreeMap::from([(p(&[2]), 1), (p(&[1, 1]), -1)])
        );
        assert_eq!(
            power_to_schur(&p(&[1, 1])).unwrap(),
            BTreeMap::from([(p(&[2]), 1), (p(&[1, 1]), 1)])
        );
        assert_eq!(
            schur_to_power(&p(&[1])).unwrap(),
            BTreeMap::from([(p(&[1]), one(1))])
        );
        assert_eq!(
            schur_to_power(&p(&[2])).unwrap(),
            BTreeMap::from([(p(&[2]), half.clone()), (p(&[1, 1]), half.clone())])
        );
        assert_eq!(
            schur_to_power(&p(&[1, 1])).unwrap(),
            BTreeMap::from([(p(&[2]), -half.clone()), (p(&[1, 1]), half)])
        );
    }

    #[test]
    fn private_table_agrees_with_global() {
        let table = CharTable::new();
        for lambda in enumerate_partitions(7) {
            for mu in enumerate_partitions(7) {
                assert_eq!(
                    table.character(&lambda, &mu).unwrap(),
                    character(&lambda, &mu).unwrap()
                );
            }
        }
        assert!(!table.is_empty());
    }
}
