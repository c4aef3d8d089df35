use num_bigint::BigInt;
use num_traits::Zero;

use super::{interpolate, rat_int, Coeff, NPoly};
use crate::error::{Error, Result};

/// A polynomial in `N` held by its integer values at a fixed list of sample
/// points, with constants kept unexpanded.
///
/// Every `Values` in one computation must refer to the same points.
#[derive(Clone, Debug)]
pub enum EvalVec {
    Const(BigInt),
    Values(Vec<BigInt>),
}

impl EvalVec {
    /// Samples `p` at `points`; every value must be an integer.
    pub fn sample(p: &NPoly, points: &[i64]) -> Result<EvalVec> {
        if p.degree().unwrap_or(0) == 0 {
            let c = p.coeff(0);
            if !c.is_integer() {
                return Err(Error::Internal(format!("non-integral constant {c}")));
            }
            return Ok(EvalVec::Const(c.to_integer()));
        }
        points
            .iter()
            .map(|&x| p.eval_integral(x))
            .collect::<Result<Vec<_>>>()
            .map(EvalVec::Values)
    }

    pub fn value(&self, idx: usize) -> &BigInt {
        match self {
            EvalVec::Const(c) => c,
            EvalVec::Values(v) => &v[idx],
        }
    }

    /// The interpolating polynomial through `points`, checked against the
    /// final point so that a degree overflow cannot pass silently.
    pub fn interpolate(&self, points: &[i64]) -> Result<NPoly> {
        match self {
            EvalVec::Const(c) => Ok(NPoly::constant(rat_int(c.clone()))),
            EvalVec::Values(v) => {
                let (last, fit) = points.split_last().expect("at least one point");
                let pts: Vec<_> = fit
                    .iter()
                    .zip(v)
                    .map(|(&x, y)| (x, rat_int(y.clone())))
                    .collect();
                let p = interpolate(&pts);
                if p.eval_int(*last) != rat_int(v[points.len() - 1].clone()) {
                    return Err(Error::Internal(format!(
                        "sampled coefficient exceeds degree {}",
                        fit.len().saturating_sub(1)
                    )));
                }
                Ok(p)
            }
        }
    }

    fn zip_with(&self, other: &EvalVec, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> EvalVec {
        match (self, other) {
            (EvalVec::Const(a), EvalVec::Const(b)) => EvalVec::Const(f(a, b)),
            (EvalVec::Const(a), EvalVec::Values(v)) => {
                EvalVec::Values(v.iter().map(|b| f(a, b)).collect())
            }
            (EvalVec::Values(v), EvalVec::Const(b)) => {
                EvalVec::Values(v.iter().map(|a| f(a, b)).collect())
            }
            (EvalVec::Values(u), EvalVec::Values(v)) => {
                debug_assert_eq!(u.len(), v.len());
                EvalVec::Values(u.iter().zip(v).map(|(a, b)| f(a, b)).collect())
            }
        }
    }
}

impl PartialEq for EvalVec {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (EvalVec::Const(a), EvalVec::Const(b)) => a == b,
            (EvalVec::Const(a), EvalVec::Values(v)) | (EvalVec::Values(v), EvalVec::Const(a)) => {
                v.iter().all(|x| x == a)
            }
            (EvalVec::Values(u), EvalVec::Values(v)) => u == v,
        }
    }
}

impl Coeff for EvalVec {
    fn zero() -> Self {
        EvalVec::Const(<BigInt as Zero>::zero())
    }
    fn from_i64(v: i64) -> Self {
        EvalVec::Const(BigInt::from(v))
    }
    fn from_bigint(v: &BigInt) -> Self {
        EvalVec::Const(v.clone())
    }
    fn is_zero(&self) -> bool {
        match self {
            EvalVec::Const(c) => Zero::is_zero(c),
            EvalVec::Values(v) => v.iter().all(Zero::is_zero),
        }
    }
    fn add_to(&mut self, other: &Self) {
        match (&mut *self, other) {
            (EvalVec::Values(u), EvalVec::Values(v)) => {
                for (a, b) in u.iter_mut().zip(v) {
                    *a += b;
                }
            }
            (EvalVec::Values(u), EvalVec::Const(c)) => {
                for a in u.iter_mut() {
                    *a += c;
                }
            }
            (EvalVec::Const(a), EvalVec::Const(b)) => *a += b,
            _ => *self = self.zip_with(other, |a, b| a + b),
        }
    }
    fn times(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a * b)
    }
    fn negated(&self) -> Self {
        match self {
            EvalVec::Const(c) => EvalVec::Const(-c),
            EvalVec::Values(v) => EvalVec::Values(v.iter().map(|x| -x).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_matches_polynomials() {
        let points: Vec<i64> = (0..6).collect();
        let p = NPoly::from_ascending(&[1, -2, 0, 1]);
        let q = NPoly::from_ascending(&[0, 3, 1]);
        let (ep, eq) = (
            EvalVec::sample(&p, &points).unwrap(),
            EvalVec::sample(&q, &points).unwrap(),
        );
        let mut sum = ep.clone();
        sum.add_to(&eq);
        assert_eq!(sum.interpolate(&points).unwrap(), &p + &q);
        // degree 5 needs six points to fit and one to check
        let prod = ep.times(&eq);
        let pts7: Vec<i64> = (0..7).collect();
        let prod7 = EvalVec::sample(&p, &pts7)
            .unwrap()
            .times(&EvalVec::sample(&q, &pts7).unwrap());
        assert_eq!(prod7.interpolate(&pts7).unwrap(), &p * &q);
        assert!(prod.interpolate(&points).is_err());
        let c = EvalVec::from_i64(4);
        assert_eq!(
            c.times(&ep).interpolate(&points).unwrap(),
            p.scale(&rat_int(4))
        );
    }
}
