//! Correlators from the representation theory of the symmetric group, and
//! the generating functions assembled from them.
//!
//! For a fixed `σ` of cycle type `λ ⊢ 2n`, the number of fixed-point-free
//! involutions `τ` with `στ` of type `μ` is the class-multiplication
//! coefficient `(2n-1)!!/z_μ · Σ_ν χ^ν_{(2^n)} χ^ν_μ χ^ν_λ / d_ν`, so
//! `⟨p_λ⟩ = g_s^{n-l(λ)} Σ_μ N^{l(μ)}` times that count.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::{self, character};
use crate::combinat::{binomial, double_factorial, factorial, floor_half, sign};
use crate::error::{Error, Result};
use crate::partitions::{cell_stats, dimension, enumerate_partitions, z_of, Partition};
use crate::polyalg::{rising_product, Graded, NPoly};
use crate::wick;

/// Which engine evaluates `⟨p_λ⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Wick,
    Char,
}

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

/// `⟨p_λ⟩` by the class-multiplication formula.
pub fn char_correlator(lambda: &Partition) -> Result<Graded> {
    static CACHE: OnceLock<RwLock<HashMap<Partition, Graded>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(g) = cache.read().expect("cache lock").get(lambda) {
        return Ok(g.clone());
    }
    let g = class_multiplication(lambda)?;
    cache
        .write()
        .expect("cache lock")
        .insert(lambda.clone(), g.clone());
    Ok(g)
}

fn class_multiplication(lambda: &Partition) -> Result<Graded> {
    let m = lambda.weight();
    if m % 2 == 1 {
        return Ok(Graded::zero(0));
    }
    let n = m / 2;
    let pairs = Partition::pairs(n);
    let parts = enumerate_partitions(m);
    // Σ_ν χ^ν_{2^n} χ^ν_λ / d_ν is shared by every μ
    let mut weights = Vec::new();
    for nu in &parts {
        let a = character(nu, &pairs)?;
        if a == 0 {
            continue;
        }
        let b = character(nu, lambda)?;
        if b == 0 {
            continue;
        }
        weights.push((nu, BigRational::new(BigInt::from(a * b), dimension(nu))));
    }
    let df = double_factorial(2 * n as i64 - 1);
    let mut poly = NPoly::zero();
    for mu in &parts {
        let mut s = BigRational::zero();
        for (nu, w) in &weights {
            let c = character(nu, mu)?;
            if c != 0 {
                s += w * int(c);
            }
        }
        if s.is_zero() {
            continue;
        }
        let count = s * BigRational::new(df.clone(), z_of(mu));
        poly += &NPoly::monomial(count, mu.len() as u32);
    }
    Ok(Graded::new(poly, wick::gs_exponent(lambda)))
}

/// `⟨p_λ⟩` from the requested engine.
pub fn correlator(lambda: &Partition, engine: Engine) -> Result<Graded> {
    match engine {
        Engine::Wick => wick::wick_correlator(lambda),
        Engine::Char => char_correlator(lambda),
    }
}

/// `dim R_λ^{U(N)} = Π_{x∈λ} (N + c(x)) / h(x)`.
pub fn un_dimension(lambda: &Partition) -> NPoly {
    let stats = cell_stats(lambda);
    let mut p = NPoly::one();
    for c in stats.contents() {
        p = &p * &NPoly::linear(c);
    }
    p.scale(&BigRational::new(BigInt::one(), stats.hook_product()))
}

/// `⟨s_λ⟩ = (2n-1)!! χ^λ_{(2^n)} / d_λ · dim R_λ^{U(N)}` at `g_s = 1`.
pub fn schur_correlator(lambda: &Partition) -> Result<NPoly> {
    let m = lambda.weight();
    if m % 2 == 1 {
        return Ok(NPoly::zero());
    }
    let n = m / 2;
    let chi = character(lambda, &Partition::pairs(n))?;
    if chi == 0 {
        return Ok(NPoly::zero());
    }
    let c = BigRational::new(double_factorial(2 * n as i64 - 1) * chi, dimension(lambda));
    Ok(un_dimension(lambda).scale(&c))
}

/// `⟨s_λ⟩ = Σ_η χ^λ_η / z_η ⟨p_η⟩` at `g_s = 1`, with the given engine.
pub fn schur_correlator_frobenius(lambda: &Partition, engine: Engine) -> Result<NPoly> {
    let mut out = NPoly::zero();
    for (eta, c) in characters::schur_to_power(lambda)? {
        out += &correlator(&eta, engine)?.poly.scale(&c);
    }
    Ok(out)
}

/// The `f_i = λ_i + 2n - i` of `λ ⊢ 2n` padded to `2n` parts.
fn shifted_parts(lambda: &Partition) -> Vec<i64> {
    let m = lambda.weight();
    (1..=m)
        .map(|i| (lambda.part(i - 1) + m - i) as i64)
        .collect()
}

/// True when the shifted parts of `λ` split evenly between odd and even.
/// Odd-weight partitions are never even.
pub fn is_even_partition(lambda: &Partition) -> bool {
    if lambda.weight() % 2 == 1 {
        return false;
    }
    let f = shifted_parts(lambda);
    let odd = f.iter().filter(|&&x| x % 2 != 0).count();
    2 * odd == f.len()
}

/// The Di Francesco–Itzykson constant with `⟨s_λ⟩ = c(λ) dim R_λ^{U(N)}`.
pub fn dif_itz_c(lambda: &Partition) -> BigRational {
    if !is_even_partition(lambda) {
        return BigRational::zero();
    }
    let n = (lambda.weight() / 2) as i64;
    let f = shifted_parts(lambda);
    let odd: Vec<i64> = f.iter().copied().filter(|x| x % 2 != 0).collect();
    let even: Vec<i64> = f.iter().copied().filter(|x| x % 2 == 0).collect();
    let mut num = BigInt::from(sign(n * (n - 1) / 2));
    for &x in &odd {
        num *= double_factorial(x);
    }
    for &x in &even {
        num *= double_factorial(x - 1);
    }
    let mut den = BigInt::one();
    for &x in &odd {
        for &y in &even {
            den *= x - y;
        }
    }
    BigRational::new(num, den)
}

/// The coefficients `A_{q,p}` of the Bogoliubov transform, `p + q` odd.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BogoliubovMatrix {
    pub n_max: u32,
    pub entries: BTreeMap<(u32, u32), NPoly>,
}

impl BogoliubovMatrix {
    /// `A_{q,p}`; zero when `p + q` is even or beyond the stored range.
    pub fn get(&self, q: u32, p: u32) -> NPoly {
        self.entries.get(&(q, p)).cloned().unwrap_or_default()
    }

    /// Largest `p + q + 1` stored.
    pub fn max_weight(&self) -> u32 {
        2 * self.n_max
    }
}

/// `A_{q,p} = (-1)^{p+[(p+1)/2]} (2n-1)!!/(2n)! binom(n-1, [p/2]) [N]_{-p}^{q}`
/// with `p + q = 2n - 1`.
pub fn bogoliubov_entry(q: u32, p: u32) -> NPoly {
    let (q, p) = (q as i64, p as i64);
    if (p + q) % 2 == 0 {
        return NPoly::zero();
    }
    let n = (p + q + 1) / 2;
    let c = BigRational::new(
        double_factorial(2 * n - 1) * binomial(n - 1, floor_half(p)) * sign(p + floor_half(p + 1)),
        factorial(2 * n as u64),
    );
    rising_product(-p, q).expect("q ≥ -1").scale(&c)
}

pub fn bogoliubov_matrix(n_max: u32) -> BogoliubovMatrix {
    let mut entries = BTreeMap::new();
    for n in 1..=n_max {
        for p in 0..2 * n {
            let q = 2 * n - 1 - p;
            entries.insert((q, p), bogoliubov_entry(q, p));
        }
    }
    BogoliubovMatrix { n_max, entries }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Power,
    Schur,
}

/// A generating function truncated at `max_degree`, as coefficients of
/// `g_λ` (power basis) or `s_λ` (Schur basis).
///
/// Schur-basis coefficients are specialised to `g_s = 1` and carry grade 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisExpansion {
    pub basis: Basis,
    pub max_degree: usize,
    pub coeffs: BTreeMap<Partition, Graded>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionTermJson {
    pub lambda: Partition,
    pub gs: i64,
    pub poly: NPoly,
}

impl BasisExpansion {
    pub fn coeff(&self, lambda: &Partition) -> Graded {
        self.coeffs.get(lambda).cloned().unwrap_or(Graded::zero(0))
    }

    /// Terms by weight, then reverse-lexicographically.
    pub fn ordered(&self) -> Vec<(&Partition, &Graded)> {
        let mut v: Vec<_> = self.coeffs.iter().collect();
        v.sort_by(|a, b| a.0.weight().cmp(&b.0.weight()).then(b.0.cmp(a.0)));
        v
    }

    pub fn to_json_terms(&self) -> Vec<ExpansionTermJson> {
        self.ordered()
            .into_iter()
            .map(|(l, g)| ExpansionTermJson {
                lambda: l.clone(),
                gs: g.gs,
                poly: g.poly.clone(),
            })
            .collect()
    }

    /// Rewrites a power-basis expansion in the Schur basis at `g_s = 1`, using
    /// `p_μ = Σ_λ χ^λ_μ s_λ`.
    pub fn to_schur(&self) -> Result<BasisExpansion> {
        if self.basis == Basis::Schur {
            return Ok(self.clone());
        }
        let mut acc: BTreeMap<Partition, NPoly> = BTreeMap::new();
        for (mu, g) in &self.coeffs {
            for (lambda, chi) in characters::power_to_schur(mu)? {
                *acc.entry(lambda).or_default() += &g.poly.scale(&int(chi));
            }
        }
        Ok(BasisExpansion {
            basis: Basis::Schur,
            max_degree: self.max_degree,
            coeffs: collect_nonzero(acc),
        })
    }

    /// Rewrites a Schur-basis expansion in the power basis at `g_s = 1`, using
    /// `s_λ = Σ_μ χ^λ_μ / z_μ p_μ`.
    pub fn to_power(&self) -> Result<BasisExpansion> {
        if self.basis == Basis::Power {
            return Ok(self.clone());
        }
        let mut acc: BTreeMap<Partition, NPoly> = BTreeMap::new();
        for (lambda, g) in &self.coeffs {
            for (mu, c) in characters::schur_to_power(lambda)? {
                *acc.entry(mu).or_default() += &g.poly.scale(&c);
            }
        }
        Ok(BasisExpansion {
            basis: Basis::Power,
            max_degree: self.max_degree,
            coeffs: collect_nonzero(acc),
        })
    }

    /// The same expansion with every grade set to zero.
    pub fn at_unit_coupling(&self) -> BasisExpansion {
        BasisExpansion {
            basis: self.basis,
            max_degree: self.max_degree,
            coeffs: self
                .coeffs
                .iter()
                .map(|(l, g)| (l.clone(), Graded::new(g.poly.clone(), 0)))
                .collect(),
        }
    }
}

fn collect_nonzero(acc: BTreeMap<Partition, NPoly>) -> BTreeMap<Partition, Graded> {
    acc.into_iter()
        .filter(|(_, p)| !p.is_zero())
        .map(|(l, p)| (l, Graded::new(p, 0)))
        .collect()
}

fn check_degree(max_degree: usize) -> Result<()> {
    if max_degree > characters::MAX_WEIGHT {
        return Err(Error::CapacityExceeded {
            what: "generating-function degree",
            requested: max_degree,
            limit: characters::MAX_WEIGHT,
        });
    }
    Ok(())
}

/// `Z_N` through total `g`-weight `max_degree`, zero coefficients omitted.
pub fn partition_function(max_degree: usize, basis: Basis) -> Result<BasisExpansion> {
    partition_function_with(max_degree, basis, Engine::Char)
}

/// [`partition_function`] with power-basis moments from the given engine.
pub fn partition_function_with(
    max_degree: usize,
    basis: Basis,
    engine: Engine,
) -> Result<BasisExpansion> {
    check_degree(max_degree)?;
    if engine == Engine::Wick && max_degree > wick::MAX_WEIGHT {
        return Err(Error::CapacityExceeded {
            what: "Wick enumeration weight",
            requested: max_degree,
            limit: wick::MAX_WEIGHT,
        });
    }
    let mut coeffs = BTreeMap::new();
    for m in (0..=max_degree).step_by(2) {
        for lambda in enumerate_partitions(m) {
            let value = match basis {
                Basis::Power => {
                    let g = correlator(&lambda, engine)?;
                    g.scale(&BigRational::new(BigInt::one(), z_of(&lambda)))
                }
                Basis::Schur => Graded::new(schur_correlator(&lambda)?, 0),
            };
            if !value.is_zero() {
                coeffs.insert(lambda, value);
            }
        }
    }
    Ok(BasisExpansion {
        basis,
        max_degree,
        coeffs,
    })
}

/// `F = log Z_N` in the power basis, by the formal series `log(1 + u)`
/// truncated at total `g`-weight `max_degree`.
///
/// The coefficient of `g_λ` is `⟨p_λ⟩_c / z_λ`.
pub fn free_energy(max_degree: usize) -> Result<BasisExpansion> {
    free_energy_with(max_degree, Engine::Char)
}

/// [`free_energy`] with moments from the given engine.
pub fn free_energy_with(max_degree: usize, engine: Engine) -> Result<BasisExpansion> {
    let z = partition_function_with(max_degree, Basis::Power, engine)?;
    let mut u = z.coeffs.clone();
    u.remove(&Partition::empty());
    let mut out: BTreeMap<Partition, Graded> = BTreeMap::new();
    let mut power = u.clone();
    let mut k = 1i64;
    while !power.is_empty() {
        let c = BigRational::new(BigInt::from(sign(k + 1)), BigInt::from(k));
        for (l, g) in &power {
            let slot = out.entry(l.clone()).or_insert_with(|| Graded::zero(g.gs));
            *slot = slot.try_add(&g.scale(&c))?;
        }
        power = multiply_g_series(&power, &u, max_degree)?;
        k += 1;
    }
    out.retain(|_, g| !g.is_zero());
    Ok(BasisExpansion {
        basis: Basis::Power,
        max_degree,
        coeffs: out,
    })
}

fn multiply_g_series(
    a: &BTreeMap<Partition, Graded>,
    b: &BTreeMap<Partition, Graded>,
    max_degree: usize,
) -> Result<BTreeMap<Partition, Graded>> {
    let mut out: BTreeMap<Partition, Graded> = BTreeMap::new();
    for (la, ga) in a {
        for (lb, gb) in b {
            if la.weight() + lb.weight() > max_degree {
                continue;
            }
            let term = ga.mul(gb);
            let slot = out
                .entry(la.union(lb))
                .or_insert_with(|| Graded::zero(term.gs));
            *slot = slot.try_add(&term)?;
        }
    }
    out.retain(|_, g| !g.is_zero());
    Ok(out)
}

/// A polynomial in the 't Hooft coupling `t` and `g_s`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ThooftPoly {
    /// `(power of t, power of g_s)` → coefficient.
    pub terms: BTreeMap<(u32, i64), BigRational>,
}

/// Substitutes `N = t g_s^{-1}`: `Σ a_k N^k g_s^e ↦ Σ a_k t^k g_s^{e-k}`.
pub fn thooft_substitute(x: &Graded) -> ThooftPoly {
    let terms = x
        .poly
        .terms()
        .map(|(k, a)| ((k, x.gs - k as i64), a.clone()))
        .collect();
    ThooftPoly { terms }
}

impl fmt::Display for ThooftPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((t, g), c)) in self.terms.iter().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let mag = c.abs();
            let show_coeff = (*t == 0 && *g == 0) || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match t {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{t}")?,
            }
            if *g != 0 {
                if show_coeff || *t != 0 {
                    f.write_str("·")?;
                }
                write!(f, "g_s^{g}")?;
            }
        }
        Ok(())
    }
}

/// Outcome of testing whether every partition of an even number has as many
/// odd as even shifted parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvennessScan {
    pub max_weight: usize,
    pub checked: usize,
    /// Partitions of even weight whose shifted parts are unbalanced.
    pub counterexamples: Vec<Partition>,
    /// Whether, for every partition checked, being even coincides with
    /// `χ^λ_{(2^n)} ≠ 0`.
    pub even_iff_nonvanishing: bool,
}

pub fn evenness_scan(max_weight: usize) -> Result<EvennessScan> {
    let mut checked = 0;
    let mut counterexamples = Vec::new();
    let mut agree = true;
    for m in (0..=max_weight).step_by(2) {
        for lambda in enumerate_partitions(m) {
            checked += 1;
            let even = is_even_partition(&lambda);
            if !even {
                counterexamples.push(lambda.clone());
            }
            let chi = character(&lambda, &Partition::pairs(m / 2))?;
            agree &= even == (chi != 0);
        }
    }
    Ok(EvennessScan {
        max_weight,
        checked,
        counterexamples,
        even_iff_nonvanishing: agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat;

    fn p(parts: &[usize]) -> Partition {
        Partition::from_slice(parts).unwrap()
    }

    fn np(c: &[i64]) -> NPoly {
        NPoly::from_ascending(c)
    }

    #[test]
    fn character_correlators() {
        assert_eq!(
            char_correlator(&p(&[6])).unwrap(),
            Graded::new(np(&[0, 0, 10, 0, 5]), 2)
        );
        assert_eq!(
            char_correlator(&p(&[3, 2, 1])).unwrap(),
            Graded::new(np(&[0, 0, 12, 0, 3]), 0)
        );
        assert!(char_correlator(&p(&[5])).unwrap().is_zero());
    }

    #[test]
    fn schur_values() {
        assert_eq!(
            schur_correlator(&p(&[2])).unwrap(),
            np(&[0, 1, 1]).scale(&rat(1, 2))
        );
        assert!(schur_correlator(&p(&[3, 2, 1])).unwrap().is_zero());
        let want = rising_product(-3, 0).unwrap().scale(&rat(1, 8));
        assert_eq!(schur_correlator(&p(&[1, 1, 1, 1])).unwrap(), want);
    }

    #[test]
    fn dimensions() {
        assert_eq!(un_dimension(&p(&[1])), NPoly::n());
        assert_eq!(un_dimension(&p(&[2])), np(&[0, 1, 1]).scale(&rat(1, 2)));
        assert_eq!(un_dimension(&p(&[1, 1])), np(&[0, -1, 1]).scale(&rat(1, 2)));
    }

    #[test]
    fn dif_itz_small() {
        assert_eq!(dif_itz_c(&p(&[2])), rat(1, 1));
        assert_eq!(dif_itz_c(&p(&[1, 1])), rat(-1, 1));
        assert_eq!(dif_itz_c(&p(&[3, 2, 1])), rat(0, 1));
        assert!(!is_even_partition(&p(&[3, 2, 1])));
    }

    #[test]
    fn bogoliubov_entries() {
        let a = bogoliubov_matrix(3);
        assert_eq!(a.get(1, 0), np(&[0, 1, 1]).scale(&rat(1, 2)));
        assert_eq!(a.get(0, 1), np(&[0, -1, 1]).scale(&rat(1, 2)));
        assert_eq!(
            a.get(0, 3),
            rising_product(-3, 0).unwrap().scale(&rat(-1, 8))
        );
        assert!(a.get(1, 1).is_zero());
        for (&(q, p), v) in &a.entries {
            let hook = Partition::hook(q as usize, p as usize);
            let s = schur_correlator(&hook).unwrap();
            assert_eq!(v.scale(&int(sign(p as i64))), s, "A_{{{q},{p}}}");
        }
    }

    #[test]
    fn generating_function_coefficients() {
        let z = partition_function(4, Basis::Power).unwrap();
        assert_eq!(
            z.coeff(&p(&[2])),
            Graded::new(np(&[0, 0, 1]).scale(&rat(1, 2)), 0)
        );
        assert_eq!(
            z.coeff(&p(&[2, 1, 1])),
            Graded::new(np(&[0, 2, 0, 1]).scale(&rat(1, 4)), -1)
        );
        let s = partition_function(4, Basis::Schur).unwrap();
        assert_eq!(
            s.coeff(&p(&[2, 2])).poly,
            np(&[0, 0, -1, 0, 1]).scale(&rat(1, 4))
        );
    }

    #[test]
    fn free_energy_coefficients() {
        let f = free_energy(6).unwrap();
        assert_eq!(
            f.coeff(&p(&[2])),
            Graded::new(np(&[0, 0, 1]).scale(&rat(1, 2)), 0)
        );
        assert_eq!(
            f.coeff(&p(&[4])),
            Graded::new(NPoly::from_terms([(3, rat(1, 2)), (1, rat(1, 4))]), 1)
        );
        assert_eq!(
            f.coeff(&p(&[6])),
            Graded::new(NPoly::from_terms([(4, rat(5, 6)), (2, rat(5, 3))]), 2)
        );
    }

    #[test]
    fn thooft() {
        let p4 = Graded::new(np(&[0, 1, 0, 2]), 1);
        assert_eq!(thooft_substitute(&p4).to_string(), "t + 2t^3·g_s^-2");
        assert_eq!(
            thooft_substitute(&Graded::new(np(&[0, 0, 1]), 0)).to_string(),
            "t^2·g_s^-2"
        );
        assert_eq!(
            thooft_substitute(&Graded::new(NPoly::one(), 0)).to_string(),
            "1"
        );
        assert_eq!(
            thooft_substitute(&Graded::new(NPoly::one(), -1)).to_string(),
            "g_s^-1"
        );
    }

    #[test]
    fn evenness_counterexample() {
        let scan = evenness_scan(6).unwrap();
        assert!(scan.counterexamples.contains(&p(&[3, 2, 1])));
        assert!(scan.even_iff_nonvanishing);
    }
}
