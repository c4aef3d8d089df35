#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use onematrix::{NPoly, Partition};

/// Parses sums such as `44100N^9+1323000N^7-N+5` or `1/2N^2`.
pub fn poly(s: &str) -> NPoly {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = NPoly::zero();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let neg = rest.starts_with('-');
        if rest.starts_with('+') || neg {
            rest = &rest[1..];
        }
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = &rest[..end];
        rest = &rest[end..];
        let (coef, deg) = match term.find('N') {
            None => (term, 0),
            Some(i) => {
                let deg = match &term[i + 1..] {
                    "" => 1,
                    e => e.trim_start_matches('^').parse().unwrap(),
                };
                (&term[..i], deg)
            }
        };
        let mut c = match coef {
            "" => BigRational::from_integer(BigInt::from(1)),
            c => match c.split_once('/') {
                Some((a, b)) => BigRational::new(a.parse().unwrap(), b.parse().unwrap()),
                None => BigRational::from_integer(c.parse().unwrap()),
            },
        };
        if neg {
            c = -c;
        }
        out += &NPoly::monomial(c, deg);
    }
    out
}

pub fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `Π_{j=k}^{l} (N + j)`.
pub fn rising(k: i64, l: i64) -> NPoly {
    (k..=l).fold(NPoly::one(), |acc, j| &acc * &NPoly::linear(j))
}

/// Every permutation of `v`.
pub fn permutations(v: &[i32]) -> Vec<Vec<i32>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

pub mod printed;
