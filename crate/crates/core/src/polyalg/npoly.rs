use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{is_one, rat_int};
use crate::error::{Error, Result};

/// A polynomial in `N` with exact rational coefficients.
///
/// Stored sparsely as degree → coefficient with no zero entries, so the zero
/// polynomial is the empty map and structural equality is polynomial
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NPoly {
    coeffs: BTreeMap<u32, BigRational>,
}

impl NPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The indeterminate `N`.
    pub fn n() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn integer(c: i64) -> Self {
        Self::constant(rat_int(c))
    }

    pub fn monomial(c: BigRational, degree: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(degree, c);
        }
        NPoly { coeffs }
    }

    /// `N + a`.
    pub fn linear(a: i64) -> Self {
        Self::n() + Self::integer(a)
    }

    /// Builds from `(degree, coefficient)` pairs, summing repeats.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, BigRational)>) -> Self {
        let mut p = NPoly::zero();
        for (d, c) in terms {
            p += &NPoly::monomial(c, d);
        }
        p
    }

    /// Integer coefficients listed from degree 0 upward.
    pub fn from_ascending(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(d, &c)| (d as u32, rat_int(c))),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, degree: u32) -> BigRational {
        self.coeffs
            .get(&degree)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &BigRational)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    pub fn scale(&self, c: &BigRational) -> NPoly {
        if c.is_zero() {
            return NPoly::zero();
        }
        NPoly {
            coeffs: self.coeffs.iter().map(|(&d, v)| (d, v * c)).collect(),
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        let mut next = self.degree().unwrap_or(0) as i64;
        for (d, c) in self.coeffs.iter().rev() {
            while next > *d as i64 {
                acc *= x;
                next -= 1;
            }
            acc += c;
        }
        while next > 0 {
            acc *= x;
            next -= 1;
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&rat_int(x))
    }

    /// The value at an integer point, which must be an integer.
    pub fn eval_integral(&self, x: i64) -> Result<BigInt> {
        let v = self.eval_int(x);
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::Internal(format!(
                "{self} is not integral at N = {x}"
            )))
        }
    }

    /// `P(N + a)`.
    pub fn shift(&self, a: i64) -> NPoly {
        let lin = NPoly::linear(a);
        let mut out = NPoly::zero();
        let mut power = NPoly::one();
        let top = self.degree().unwrap_or(0);
        for d in 0..=top {
            let c = self.coeff(d);
            if !c.is_zero() {
                out += &power.scale(&c);
            }
            power = &power * &lin;
        }
        out
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// True when every coefficient is a non-negative integer.
    pub fn is_nonneg_integral(&self) -> bool {
        self.coeffs
            .values()
            .all(|c| c.is_integer() && !c.is_negative())
    }
}

/// `[N]_k^l = Π_{j=k}^{l} (N + j)`; the empty product when `k = l + 1`.
pub fn rising_product(k: i64, l: i64) -> Result<NPoly> {
    if k > l + 1 {
        return Err(Error::UndefinedRange { k, l });
    }
    Ok((k..=l).fold(NPoly::one(), |acc, j| &acc * &NPoly::linear(j)))
}

/// The unique polynomial of degree `< points.len()` through the given integer
/// abscissae, by Newton divided differences.
pub fn interpolate(points: &[(i64, BigRational)]) -> NPoly {
    let xs: Vec<BigRational> = points.iter().map(|(x, _)| rat_int(*x)).collect();
    let mut table: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
    let n = table.len();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &table[i] - &table[i - 1];
            let den = &xs[i] - &xs[i - level];
            table[i] = num / den;
        }
    }
    let mut out = NPoly::zero();
    let mut basis = NPoly::one();
    for (i, c) in table.iter().enumerate() {
        out += &basis.scale(c);
        basis = &basis * &(NPoly::n() - NPoly::constant(xs[i].clone()));
    }
    out
}

impl AddAssign<&NPoly> for NPoly {
    fn add_assign(&mut self, rhs: &NPoly) {
        for (d, c) in &rhs.coeffs {
            let entry = self.coeffs.entry(*d).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                self.coeffs.remove(d);
            }
        }
    }
}

impl SubAssign<&NPoly> for NPoly {
    fn sub_assign(&mut self, rhs: &NPoly) {
        for (d, c) in &rhs.coeffs {
            let entry = self.coeffs.entry(*d).or_insert_with(BigRational::zero);
            *entry -= c;
            if entry.is_zero() {
                self.coeffs.remove(d);
            }
        }
    }
}

impl Add<&NPoly> for &NPoly {
    type Output = NPoly;
    fn add(self, rhs: &NPoly) -> NPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&NPoly> for &NPoly {
    type Output = NPoly;
    fn sub(self, rhs: &NPoly) -> NPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&NPoly> for &NPoly {
    type Output = NPoly;
    fn mul(self, rhs: &NPoly) -> NPoly {
        let mut acc: BTreeMap<u32, BigRational> = BTreeMap::new();
        for (da, ca) in &self.coeffs {
            for (db, cb) in &rhs.coeffs {
                *acc.entry(da + db).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        NPoly { coeffs: acc }
    }
}

impl Neg for &NPoly {
    type Output = NPoly;
    fn neg(self) -> NPoly {
        NPoly {
            coeffs: self.coeffs.iter().map(|(&d, c)| (d, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<NPoly> for NPoly {
            type Output = NPoly;
            fn $m(self, rhs: NPoly) -> NPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&NPoly> for NPoly {
            type Output = NPoly;
            fn $m(self, rhs: &NPoly) -> NPoly {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for NPoly {
    type Output = NPoly;
    fn neg(self) -> NPoly {
        -&self
    }
}

impl AddAssign<NPoly> for NPoly {
    fn add_assign(&mut self, rhs: NPoly) {
        *self += &rhs;
    }
}

impl std::iter::Sum for NPoly {
    fn sum<I: Iterator<Item = NPoly>>(iter: I) -> Self {
        iter.fold(NPoly::zero(), |acc, p| acc + p)
    }
}

/// Descending powers of `N`: `5N^4 + 10N^2`, `1/2N^2 - 1/2N`.
impl fmt::Display for NPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.coeffs.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let show_coeff = *d == 0 || !is_one(&mag);
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match d {
                0 => {}
                1 => f.write_str("N")?,
                _ => write!(f, "N^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NPoly({self})")
    }
}

impl Serialize for NPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (d, c) in &self.coeffs {
            map.serialize_entry(&d.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for NPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (d, c) in raw {
            let d: u32 = d.parse().map_err(serde::de::Error::custom)?;
            let c: BigRational = c.parse().map_err(serde::de::Error::custom)?;
            terms.push((d, c));
        }
        Ok(NPoly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat;

    #[test]
    fn rising_products() {
        assert_eq!(rising_product(0, 0).unwrap(), NPoly::n());
        assert_eq!(
            rising_product(0, 1).unwrap(),
            NPoly::from_ascending(&[0, 1, 1])
        );
        assert_eq!(
            rising_product(-1, 0).unwrap(),
            NPoly::from_ascending(&[0, -1, 1])
        );
        assert_eq!(rising_product(3, 2).unwrap(), NPoly::one());
        assert!(matches!(
            rising_product(3, 1),
            Err(Error::UndefinedRange { .. })
        ));
    }

    #[test]
    fn display_is_descending() {
        let p = NPoly::from_ascending(&[0, 0, 10, 0, 5]);
        assert_eq!(p.to_string(), "5N^4 + 10N^2");
        let q = NPoly::from_terms([(2, rat(1, 2)), (1, rat(-1, 2))]);
        assert_eq!(q.to_string(), "1/2N^2 - 1/2N");
        assert_eq!(NPoly::integer(-3).to_string(), "-3");
        assert_eq!(NPoly::zero().to_string(), "0");
    }

    #[test]
    fn shift_and_eval() {
        let p = NPoly::from_ascending(&[1, 2, 3]);
        let shifted = p.shift(-1);
        for x in -3..4 {
            assert_eq!(shifted.eval_int(x), p.eval_int(x - 1));
        }
    }

    #[test]
    fn interpolation_recovers_polynomials() {
        let p = NPoly::from_terms([(3, rat(1, 6)), (1, rat(-5, 2)), (0, rat(7, 1))]);
        let pts: Vec<_> = (0..4).map(|x| (x, p.eval_int(x))).collect();
        assert_eq!(interpolate(&pts), p);
    }

    #[test]
    fn json_form() {
        let p = NPoly::from_terms([(2, rat(1, 2)), (0, rat(3, 1))]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"0":"3","2":"1/2"}"#);
        let back: NPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
