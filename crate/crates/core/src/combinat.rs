//! Small exact integer helpers shared by every engine.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `n!!` with the conventions `0!! = (-1)!! = 1`.
pub fn double_factorial(n: i64) -> BigInt {
    assert!(n >= -1, "double factorial of {n} is undefined");
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

/// Generalised binomial coefficient `n (n-1) ... (n-k+1) / k!`, valid for
/// negative `n`; zero for negative `k`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 && k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    for i in 0..k {
        num *= n - i;
    }
    num / factorial(k as u64)
}

/// `[x/2]` for possibly negative `x`.
pub fn floor_half(x: i64) -> i64 {
    x.div_euclid(2)
}

/// `(-1)^e`.
pub fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(-1), BigInt::from(1));
        assert_eq!(double_factorial(0), BigInt::from(1));
        assert_eq!(double_factorial(7), BigInt::from(105));
        assert_eq!(double_factorial(8), BigInt::from(384));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(-1, 3), BigInt::from(-1));
        assert_eq!(binomial(-2, 3), BigInt::from(-4));
        assert_eq!(binomial(4, -1), BigInt::from(0));
    }

    #[test]
    fn halves_and_signs() {
        assert_eq!(floor_half(5), 2);
        assert_eq!(floor_half(-1), -1);
        assert_eq!(sign(3), -1);
        assert_eq!(sign(-2), 1);
    }
}
