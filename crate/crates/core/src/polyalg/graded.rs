use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::NPoly;
use crate::error::{Error, Result};

/// A polynomial in `N` times a single power of the string coupling, `P(N) g_s^e`.
///
/// Correlators of a fixed monomial are homogeneous in `g_s`, so one exponent
/// suffices. Adding two values with different exponents is an error rather
/// than a silent promotion. The zero value carries whatever exponent it was
/// built with but compares equal to any other zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Graded {
    pub poly: NPoly,
    pub gs: i64,
}

impl Graded {
    pub fn new(poly: NPoly, gs: i64) -> Self {
        Graded { poly, gs }
    }

    pub fn zero(gs: i64) -> Self {
        Graded {
            poly: NPoly::zero(),
            gs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn try_add(&self, other: &Graded) -> Result<Graded> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.gs != other.gs {
            return Err(Error::GradingMismatch {
                left: self.gs,
                right: other.gs,
            });
        }
        Ok(Graded::new(&self.poly + &other.poly, self.gs))
    }

    pub fn mul(&self, other: &Graded) -> Graded {
        Graded::new(&self.poly * &other.poly, self.gs + other.gs)
    }

    pub fn scale(&self, c: &BigRational) -> Graded {
        Graded::new(self.poly.scale(c), self.gs)
    }
}

impl PartialEq for Graded {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly && (self.poly.is_zero() || self.gs == other.gs)
    }
}

impl Eq for Graded {}

impl fmt::Display for Graded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        match self.gs {
            0 => write!(f, "{}", self.poly),
            1 => write!(f, "({})·g_s", self.poly),
            e => write!(f, "({})·g_s^{e}", self.poly),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mismatched_grades_do_not_add() {
        let a = Graded::new(NPoly::n(), 1);
        let b = Graded::new(NPoly::one(), 2);
        assert!(matches!(a.try_add(&b), Err(Error::GradingMismatch { .. })));
        assert_eq!(a.try_add(&Graded::zero(7)).unwrap(), a);
    }

    #[test]
    fn display() {
        let a = Graded::new(NPoly::from_ascending(&[0, 1, 0, 2]), 1);
        assert_eq!(a.to_string(), "(2N^3 + N)·g_s");
        assert_eq!(Graded::new(NPoly::n(), -2).to_string(), "(N)·g_s^-2");
    }
}
