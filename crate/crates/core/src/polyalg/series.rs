use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Coeff, NPoly};
use crate::combinat::binomial;
use crate::error::{Error, Result};

/// Variables, their grading weights, and the truncation cap shared by a family
/// of series.
///
/// Exponent vectors count powers of `ξ_i^{-1}`; a negative entry is a
/// non-negative power of `ξ_i`, allowed only while a directional expansion is
/// being contracted. A term's degree is `Σ w_i e_i` and terms of degree above
/// `cap` are discarded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Space {
    pub vars: Vec<String>,
    pub weights: Vec<i64>,
    pub cap: i64,
}

impl Space {
    pub fn new(vars: Vec<String>, weights: Vec<i64>, cap: i64) -> Result<Space> {
        if vars.len() != weights.len() {
            return Err(Error::InvalidArgument(format!(
                "{} variables but {} weights",
                vars.len(),
                weights.len()
            )));
        }
        Ok(Space { vars, weights, cap })
    }

    /// `ξ_1, …, ξ_n` graded by total degree.
    pub fn total_degree(n: usize, cap: i64) -> Space {
        Space::weighted(vec![1; n], cap)
    }

    /// `ξ_1, …, ξ_n` with the given weights.
    pub fn weighted(weights: Vec<i64>, cap: i64) -> Space {
        let vars = (1..=weights.len()).map(|i| format!("ξ{i}")).collect();
        Space { vars, weights, cap }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn degree(&self, exps: &[i32]) -> i64 {
        exps.iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as i64 * w)
            .sum()
    }

    fn compatible(&self, other: &Space) -> Result<()> {
        if self.vars != other.vars || self.weights != other.weights {
            return Err(Error::VariableMismatch {
                left: format!("{:?}/{:?}", self.vars, self.weights),
                right: format!("{:?}/{:?}", other.vars, other.weights),
            });
        }
        Ok(())
    }
}

/// A truncated Laurent series in `ξ_1^{-1}, …, ξ_n^{-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<C> {
    space: Space,
    terms: BTreeMap<Vec<i32>, C>,
}

/// One term in the JSON form of a series.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesTermJson {
    pub exps: Vec<i32>,
    pub poly: NPoly,
    pub gs: i64,
}

/// Below this many term pairs a product runs on the calling thread.
const PARALLEL_THRESHOLD: usize = 1 << 14;

impl<C: Coeff> Series<C> {
    pub fn zero(space: Space) -> Self {
        Series {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(space: Space) -> Self {
        let n = space.nvars();
        Self::monomial(space, vec![0; n], C::from_i64(1))
    }

    pub fn monomial(space: Space, exps: Vec<i32>, c: C) -> Self {
        let mut s = Self::zero(space);
        s.add_term(exps, c);
        s
    }

    /// `ξ_i^{-1}`.
    pub fn inverse_var(space: Space, i: usize) -> Self {
        let mut exps = vec![0; space.nvars()];
        exps[i] = 1;
        Self::monomial(space, exps, C::from_i64(1))
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn cap(&self) -> i64 {
        self.space.cap
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i32]) -> Option<&C> {
        self.terms.get(exps)
    }

    /// Adds `c · ξ^{-exps}`, discarding it if it lies beyond the cap.
    pub fn add_term(&mut self, exps: Vec<i32>, c: C) {
        assert_eq!(exps.len(), self.space.nvars(), "exponent vector length");
        if self.space.degree(&exps) > self.space.cap || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                v.add_to(&c);
                if v.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.space.compatible(&other.space)?;
        let mut out = self.clone();
        out.space.cap = self.space.cap.min(other.space.cap);
        out.truncate();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Series {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.negated()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Self::zero(self.space.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.times(k));
        }
        out
    }

    /// The product, exact on every term of degree up to the smaller cap.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.space.compatible(&other.space)?;
        let space = Space {
            cap: self.space.cap.min(other.space.cap),
            ..self.space.clone()
        };
        let cap = space.cap;
        let mut right: Vec<(i64, &Vec<i32>, &C)> = other
            .terms
            .iter()
            .map(|(e, c)| (space.degree(e), e, c))
            .collect();
        right.sort_by_key(|t| t.0);
        let left: Vec<(i64, &Vec<i32>, &C)> = self
            .terms
            .iter()
            .map(|(e, c)| (space.degree(e), e, c))
            .collect();

        let partial = |chunk: &[(i64, &Vec<i32>, &C)]| {
            let mut acc: HashMap<Vec<i32>, C> = HashMap::new();
            for &(da, ea, ca) in chunk {
                for &(db, eb, cb) in &right {
                    if da + db > cap {
                        break;
                    }
                    let e: Vec<i32> = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                    let v = ca.times(cb);
                    match acc.get_mut(&e) {
                        Some(slot) => slot.add_to(&v),
                        None => {
                            acc.insert(e, v);
                        }
                    }
                }
            }
            acc
        };

        let maps: Vec<HashMap<Vec<i32>, C>> = if left.len() * right.len() < PARALLEL_THRESHOLD {
            vec![partial(&left)]
        } else {
            let chunk = (left.len() / (4 * rayon::current_num_threads())).max(1);
            left.par_chunks(chunk).map(partial).collect()
        };
        let mut out = Self::zero(space);
        for m in maps {
            for (e, c) in m {
                out.add_term(e, c);
            }
        }
        Ok(out)
    }

    /// Lowers the cap, dropping terms that no longer fit.
    pub fn with_cap(&self, cap: i64) -> Self {
        let mut out = self.clone();
        out.space.cap = cap.min(self.space.cap);
        out.truncate();
        out
    }

    /// Moves the series into another grading. Only sound when every term that
    /// matters under the new grading was retained under the old one.
    pub fn regrade(&self, space: Space) -> Result<Self> {
        if space.nvars() != self.space.nvars() {
            return Err(Error::VariableMismatch {
                left: format!("{:?}", self.space.vars),
                right: format!("{:?}", space.vars),
            });
        }
        let mut out = Self::zero(space);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    fn truncate(&mut self) {
        let space = &self.space;
        self.terms.retain(|e, _| space.degree(e) <= space.cap);
    }

    /// True when every exponent is a non-negative power of `ξ_i^{-1}`.
    pub fn is_pure(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// Checks that the signed lane has cancelled.
    pub fn finalize(self) -> Result<Self> {
        if let Some((e, _)) = self.terms.iter().find(|(e, _)| e.iter().any(|&x| x < 0)) {
            return Err(Error::Internal(format!(
                "positive power of a variable survived expansion: exponents {e:?}"
            )));
        }
        Ok(self)
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        let mut out = Series::zero(self.space.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Renames variable `perm[i]` to position `i`. Weights stay attached to
    /// positions, so this is only meaningful under a symmetric grading.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut out = Self::zero(self.space.clone());
        for (e, c) in &self.terms {
            out.add_term(perm.iter().map(|&p| e[p]).collect(), c.clone());
        }
        out
    }
}

impl Series<NPoly> {
    /// JSON terms, every one tagged with the same `g_s` exponent.
    pub fn to_json_terms(&self, gs: i64) -> Vec<SeriesTermJson> {
        self.terms
            .iter()
            .map(|(e, p)| SeriesTermJson {
                exps: e.clone(),
                poly: p.clone(),
                gs,
            })
            .collect()
    }

    pub fn from_json_terms(space: Space, terms: &[SeriesTermJson]) -> Result<Self> {
        let mut out = Self::zero(space);
        for t in terms {
            if t.exps.len() != out.space.nvars() {
                return Err(Error::InvalidArgument(format!(
                    "exponent vector {:?}",
                    t.exps
                )));
            }
            out.add_term(t.exps.clone(), t.poly.clone());
        }
        Ok(out)
    }
}

/// `i_{x,y} (x - y)^{-n} = Σ_{k≥0} binom(n+k-1, k) x^{-n-k} y^k` for variables
/// `x = ξ_i`, `y = ξ_j`, truncated at the space's cap.
///
/// The `y^k` factors sit in the signed lane and must be contracted away by
/// the caller. Termination needs `w_i > w_j`.
pub fn geometric_expand<C: Coeff>(space: &Space, i: usize, j: usize, n: u32) -> Result<Series<C>> {
    if i == j {
        return Err(Error::SameVariable(i));
    }
    let (wi, wj) = (space.weights[i], space.weights[j]);
    if wi <= wj {
        return Err(Error::InvalidArgument(format!(
            "expansion in {} over {} does not terminate when its weight is not larger",
            space.vars[i], space.vars[j]
        )));
    }
    let mut out = Series::zero(space.clone());
    let n = n as i64;
    let mut k = 0i64;
    while wi * (n + k) - wj * k <= space.cap {
        let mut exps = vec![0; space.nvars()];
        exps[i] = (n + k) as i32;
        exps[j] = -(k as i32);
        out.add_term(exps, C::from_bigint(&binomial(n + k - 1, k)));
        k += 1;
    }
    Ok(out)
}
