//! `n`-point functions of the partition function viewed as a KP tau-function.
//!
//! `G^(n) = (-1)^{n-1} Σ_{n-cycles} Π_i Â(ξ_{σ(i)}, ξ_{σ(i+1)}) - δ_{n,2} i(ξ_1-ξ_2)^{-2}`
//! with propagators `Â(ξ_i, ξ_j) = i(ξ_i - ξ_j)^{-1} + A(ξ_i, ξ_j)` for `i ≠ j`
//! and `Â(ξ_i, ξ_i) = A(ξ_i, ξ_i)`. Every rational factor is expanded in the
//! region `|ξ_1| > |ξ_2| > … > |ξ_n|`.
//!
//! # Truncation
//!
//! The products are graded with weight `n - m + 1` on `ξ_m^{-1}`. Under that
//! grading every term of every propagator has weight at least 1, and the
//! geometric tails `ξ_i^{-1-k} ξ_j^k` (`i < j`) grow in weight with `k`, so a
//! product truncated at weight `W` is exact on all its terms of weight `≤ W`.
//! `W` is chosen so that every term of total inverse degree `≤ cap + n` with
//! all exponents positive fits.
//!
//! # Evaluation
//!
//! The coefficient of a monomial of total inverse degree `d` in a product of
//! `n` propagators has `N`-degree at most `d - n`. The engine therefore works
//! with integer values at `N = 0, …, cap + 1` and interpolates each final
//! coefficient, using the last point as a check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinat::{binomial, double_factorial, floor_half, sign};
use crate::correlators::{bogoliubov_entry, free_energy_with, Engine};
use crate::error::{Error, Result};
use crate::hz::hz_big_c_poly;
use crate::partitions::{z_of, Partition};
use crate::polyalg::{geometric_expand, Coeff, EvalVec, NPoly, Series, Space};

/// `A(ξ, η) = Σ A_{q,p} ξ^{-p-1} η^{-q-1}` through total inverse degree `cap`.
pub fn a_series(cap: i64) -> Series<NPoly> {
    let space = Space::new(vec!["ξ".into(), "η".into()], vec![1, 1], cap).expect("two weights");
    let mut s = Series::zero(space);
    for total in 2..=cap {
        for p in 0..total - 1 {
            let q = total - 2 - p;
            s.add_term(
                vec![(p + 1) as i32, (q + 1) as i32],
                bogoliubov_entry(q as u32, p as u32),
            );
        }
    }
    s
}

/// `A_{q,p}` at the integer `N`: `sign · (2n-1)!! binom(n-1, [p/2]) binom(N+q, 2n)`.
fn bogoliubov_at(q: i64, p: i64, n_value: i64) -> BigInt {
    let n = (p + q + 1) / 2;
    double_factorial(2 * n - 1)
        * binomial(n - 1, floor_half(p))
        * binomial(n_value + q, 2 * n)
        * sign(p + floor_half(p + 1))
}

/// One factor `Â(ξ_i, ξ_j)` of a cyclic product.
#[derive(Clone, Debug, PartialEq)]
pub struct Propagator<C> {
    pub i: usize,
    pub j: usize,
    pub series: Series<C>,
    pub includes_rational_part: bool,
}

/// The coefficients `A_{q,p}` in whichever ring the engine runs over.
trait Entries: Sync {
    type C: Coeff;
    fn entry(&self, q: i64, p: i64) -> Self::C;
}

struct Symbolic;

impl Entries for Symbolic {
    type C = NPoly;
    fn entry(&self, q: i64, p: i64) -> NPoly {
        bogoliubov_entry(q as u32, p as u32)
    }
}

struct Sampled {
    points: Vec<i64>,
}

impl Entries for Sampled {
    type C = EvalVec;
    fn entry(&self, q: i64, p: i64) -> EvalVec {
        EvalVec::Values(
            self.points
                .iter()
                .map(|&x| bogoliubov_at(q, p, x))
                .collect(),
        )
    }
}

fn propagator<E: Entries>(
    space: &Space,
    i: usize,
    j: usize,
    entries: &E,
) -> Result<Propagator<E::C>> {
    let mut series = Series::zero(space.clone());
    let (wi, wj) = (space.weights[i], space.weights[j]);
    let cap = space.cap;
    if i == j {
        for total in 2..=cap / wi {
            for p in 0..total - 1 {
                let q = total - 2 - p;
                if (p + q) % 2 == 1 {
                    let mut e = vec![0; space.nvars()];
                    e[i] = total as i32;
                    series.add_term(e, entries.entry(q, p));
                }
            }
        }
        return Ok(Propagator {
            i,
            j,
            series,
            includes_rational_part: false,
        });
    }
    // ξ_i^{-p-1} ξ_j^{-q-1}
    let mut p = 0;
    while wi * (p + 1) + wj <= cap {
        let mut q = if p % 2 == 0 { 1 } else { 0 };
        while wi * (p + 1) + wj * (q + 1) <= cap {
            let mut e = vec![0; space.nvars()];
            e[i] = (p + 1) as i32;
            e[j] = (q + 1) as i32;
            series.add_term(e, entries.entry(q, p));
            q += 2;
        }
        p += 1;
    }
    let rational = if i < j {
        geometric_expand::<E::C>(space, i, j, 1)?
    } else {
        geometric_expand::<E::C>(space, j, i, 1)?.neg()
    };
    Ok(Propagator {
        i,
        j,
        series: series.add(&rational)?,
        includes_rational_part: true,
    })
}

/// The cycles `(0, π_1, …, π_{n-1})` for every permutation `π` of `1..n`, in
/// lexicographic order.
fn cycles(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for k in 0..rest.len() {
            let x = rest.remove(k);
            cur.push(x);
            go(rest, cur, out);
            cur.pop();
            rest.insert(k, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (1..n).collect(), &mut vec![0], &mut out);
    out
}

/// Smallest `cap` accepted for `n` variables.
pub fn min_cap(n: usize) -> i64 {
    n as i64 + 1
}

/// Default caps for interactive use.
pub fn default_cap(n: usize) -> i64 {
    match n {
        0..=2 => 14,
        3 => 10,
        _ => 8,
    }
}

fn validate(n: usize, cap: i64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "n-point functions need n ≥ 1".into(),
        ));
    }
    if n > 6 {
        return Err(Error::CapacityExceeded {
            what: "n-point arity",
            requested: n,
            limit: 6,
        });
    }
    if cap < min_cap(n) {
        return Err(Error::InvalidArgument(format!(
            "cap {cap} is below the minimum {} for n = {n}",
            min_cap(n)
        )));
    }
    if cap > 40 {
        return Err(Error::CapacityExceeded {
            what: "n-point cap",
            requested: cap as usize,
            limit: 40,
        });
    }
    Ok(())
}

/// The raw cyclic sum in the weighted grading, before regularity checks.
fn cyclic_sum<E: Entries>(n: usize, cap: i64, entries: &E) -> Result<Series<E::C>> {
    let d = cap + n as i64;
    let weights: Vec<i64> = (0..n).map(|m| (n - m) as i64).collect();
    let nn = n as i64;
    let w = nn * (d - nn + 1) + nn * (nn - 1) / 2;
    let space = Space::new((1..=n).map(|i| format!("ξ{i}")).collect(), weights, w)?;

    if n == 1 {
        return Ok(propagator(&space, 0, 0, entries)?.series);
    }
    let mut props: BTreeMap<(usize, usize), Series<E::C>> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                props.insert((i, j), propagator(&space, i, j, entries)?.series);
            }
        }
    }
    let products: Vec<Series<E::C>> = cycles(n)
        .par_iter()
        .map(|cyc| {
            let mut acc = props[&(cyc[0], cyc[1])].clone();
            for k in 1..n {
                let remaining = (n - 1 - k) as i64;
                acc = acc.mul(&props[&(cyc[k], cyc[(k + 1) % n])])?;
                if remaining > 0 {
                    acc = acc.with_cap(w - remaining);
                }
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let mut total = Series::zero(space.clone());
    for s in products {
        total = total.add(&s)?;
    }
    if n.is_multiple_of(2) {
        total = total.neg();
    }
    if n == 2 {
        total = total.sub(&geometric_expand(&space, 0, 1, 2)?)?;
    }
    Ok(total)
}

/// Checks regularity and moves the result into total-degree grading.
fn finish<C: Coeff>(n: usize, cap: i64, raw: Series<C>) -> Result<Series<C>> {
    if let Some((e, _)) = raw.terms().find(|(e, _)| e.iter().any(|&x| x <= 1)) {
        return Err(Error::Internal(format!(
            "term with exponents {e:?} survived in the {n}-point function"
        )));
    }
    let target = Space::new(
        (1..=n).map(|i| format!("ξ{i}")).collect(),
        vec![1; n],
        cap + n as i64,
    )?;
    raw.regrade(target)?.finalize()
}

/// `G^(n)` through `Σ j_i ≤ cap`, where the monomials are `Π ξ_i^{-j_i-1}`.
///
/// The returned series is graded by total inverse degree with cap `cap + n`.
pub fn npoint(n: usize, cap: i64) -> Result<Series<NPoly>> {
    validate(n, cap)?;
    let points: Vec<i64> = (0..=cap + 1).collect();
    let raw = cyclic_sum(
        n,
        cap,
        &Sampled {
            points: points.clone(),
        },
    )?;
    let raw = finish(n, cap, raw)?;
    let terms: Vec<(Vec<i32>, EvalVec)> =
        raw.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
    let polys: Vec<(Vec<i32>, NPoly)> = terms
        .into_par_iter()
        .map(|(e, c)| Ok((e, c.interpolate(&points)?)))
        .collect::<Result<_>>()?;
    let mut out = Series::zero(raw.space().clone());
    for (e, p) in polys {
        out.add_term(e, p);
    }
    Ok(out)
}

/// `G^(n)` computed with polynomial coefficients throughout. Slower than
/// [`npoint`]; kept as an independent route.
pub fn npoint_symbolic(n: usize, cap: i64) -> Result<Series<NPoly>> {
    validate(n, cap)?;
    finish(n, cap, cyclic_sum(n, cap, &Symbolic)?)
}

/// `G^(2) = (A(ξ_1,ξ_2) - A(ξ_2,ξ_1)) / (ξ_1 - ξ_2) - A(ξ_1,ξ_2) A(ξ_2,ξ_1)`,
/// with the division carried out term by term.
pub fn two_point_closed_form(cap: i64) -> Result<Series<NPoly>> {
    validate(2, cap)?;
    let d = cap + 2;
    let space = Space::total_degree(2, d);
    let a = a_series(d);
    let mut a12 = Series::zero(space.clone());
    let mut a21 = Series::zero(space.clone());
    for (e, c) in a.terms() {
        a12.add_term(vec![e[0], e[1]], c.clone());
        a21.add_term(vec![e[1], e[0]], c.clone());
    }
    // (u^a v^b - u^b v^a) / (ξ_1 - ξ_2) with u = ξ_1^{-1}, v = ξ_2^{-1}:
    // ξ_1 - ξ_2 = (v - u) / (uv), and for a < b
    // (u^a v^b - u^b v^a) uv / (v - u) = u^{a+1} v^{a+1} Σ_{i<b-a} v^i u^{b-a-1-i}
    let mut quotient = Series::zero(space.clone());
    for (e, c) in a.terms() {
        let (p1, q1) = (e[0], e[1]);
        // A(ξ_1,ξ_2) - A(ξ_2,ξ_1) contributes c (u^{p1} v^{q1} - u^{q1} v^{p1})
        let (lo, hi, s) = if p1 < q1 { (p1, q1, 1) } else { (q1, p1, -1) };
        if lo == hi {
            continue;
        }
        for i in 0..hi - lo {
            let exps = vec![lo + 1 + (hi - lo - 1 - i), lo + 1 + i];
            quotient.add_term(exps, if s == 1 { c.clone() } else { -c });
        }
    }
    let out = quotient.sub(&a12.mul(&a21)?)?;
    Ok(out.with_cap(d))
}

/// Exponent vectors grouped by their multiset, largest first, with the shared
/// coefficient; `None` when the permutations of a class disagree.
pub fn symmetrized_blocks(series: &Series<NPoly>) -> Option<Vec<(Vec<i32>, NPoly)>> {
    let mut blocks: BTreeMap<Vec<i32>, NPoly> = BTreeMap::new();
    for (e, c) in series.terms() {
        let mut key = e.clone();
        key.sort_unstable_by(|a, b| b.cmp(a));
        match blocks.get(&key) {
            Some(prev) if prev != c => return None,
            Some(_) => {}
            None => {
                blocks.insert(key, c.clone());
            }
        }
    }
    // every permutation of each class must be present
    for key in blocks.keys() {
        let mut perm = key.clone();
        perm.sort_unstable();
        loop {
            series.coeff(&perm)?;
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    let mut out: Vec<_> = blocks.into_iter().collect();
    out.sort_by(|a, b| {
        let (sa, sb): (i32, i32) = (a.0.iter().sum(), b.0.iter().sum());
        sa.cmp(&sb).then(b.0.cmp(&a.0))
    });
    Some(out)
}

fn next_permutation(v: &mut [i32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Result of comparing `G^(n)` with derivatives of the free energy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeReport {
    pub n: usize,
    pub cap: i64,
    pub forward_checked: usize,
    pub inverse_checked: usize,
    pub first_mismatch: Option<String>,
}

impl BridgeReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Largest `cap` for which the free energy is taken from Wick enumeration.
pub const BRIDGE_MAX_CAP: i64 = 16;

/// Compares `G^(n)` coefficient by coefficient with
/// `∂^n F / ∂T_{j_1} … ∂T_{j_n}` at `g_s = 1` (`T_j = g_j / j`), and checks
/// `F^(n) = (1/n!) G^(n)|_{ξ^{-j-1} ↦ g_j/j}`, with `F` from Wick moments.
pub fn npoint_vs_free_energy(n: usize, cap: i64) -> Result<BridgeReport> {
    if cap > BRIDGE_MAX_CAP {
        return Err(Error::CapacityExceeded {
            what: "free-energy bridge cap",
            requested: cap as usize,
            limit: BRIDGE_MAX_CAP as usize,
        });
    }
    let g = npoint(n, cap)?;
    let f = free_energy_with(cap as usize, Engine::Wick)?;
    let mut report = BridgeReport {
        n,
        cap,
        forward_checked: 0,
        inverse_checked: 0,
        first_mismatch: None,
    };

    // forward: every j with j_i ≥ 1 and Σ j ≤ cap
    let mut js = vec![1i64; n];
    loop {
        if js.iter().sum::<i64>() <= cap {
            let lambda = Partition::from_unsorted(js.iter().map(|&j| j as usize).collect())?;
            // ∂^n/∂T_{j_1}…∂T_{j_n} of (κ_λ/z_λ) g_λ is κ_λ
            let want = f
                .coeff(&lambda)
                .poly
                .scale(&BigRational::from_integer(z_of(&lambda)));
            let exps: Vec<i32> = js.iter().map(|&j| (j + 1) as i32).collect();
            let got = g.coeff(&exps).cloned().unwrap_or_default();
            report.forward_checked += 1;
            if got != want && report.first_mismatch.is_none() {
                report.first_mismatch = Some(format!(
                    "coefficient of ξ^-{exps:?}: n-point gives {got}, free energy gives {want}"
                ));
            }
        }
        if !advance(&mut js, cap) {
            break;
        }
    }

    // inverse: F^(n) from G^(n)
    let n_fact: BigInt = (1..=n as u64).map(BigInt::from).product();
    let mut by_lambda: BTreeMap<Partition, NPoly> = BTreeMap::new();
    for (e, c) in g.terms() {
        let parts: Vec<usize> = e.iter().map(|&x| (x - 1) as usize).collect();
        if parts.iter().sum::<usize>() as i64 > cap {
            continue;
        }
        let denom: BigInt = parts.iter().map(|&j| BigInt::from(j)).product();
        let lambda = Partition::from_unsorted(parts)?;
        let scale = BigRational::new(BigInt::from(1), denom * &n_fact);
        *by_lambda.entry(lambda).or_default() += &c.scale(&scale);
    }
    for (lambda, g_value) in &f.coeffs {
        if lambda.len() != n || lambda.weight() as i64 > cap {
            continue;
        }
        let got = by_lambda.remove(lambda).unwrap_or_default();
        report.inverse_checked += 1;
        if got != g_value.poly && report.first_mismatch.is_none() {
            report.first_mismatch = Some(format!(
                "F^({n}) coefficient of g_({lambda}): recovered {got}, free energy gives {}",
                g_value.poly
            ));
        }
    }
    if let Some((lambda, p)) = by_lambda.into_iter().find(|(_, p)| !p.is_zero()) {
        if report.first_mismatch.is_none() {
            report.first_mismatch = Some(format!(
                "F^({n}) coefficient of g_({lambda}) recovered as {p} but absent from the free energy"
            ));
        }
    }
    Ok(report)
}

/// Odometer over `j_i ≥ 1` with `Σ j ≤ cap`.
fn advance(js: &mut [i64], cap: i64) -> bool {
    for k in (0..js.len()).rev() {
        js[k] += 1;
        if js.iter().sum::<i64>() <= cap {
            return true;
        }
        js[k] = 1;
    }
    false
}

/// Result of the one- and two-point relations with Harer–Zagier numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarginalReport {
    pub cap: i64,
    pub one_point: bool,
    pub xi1_minus_two: bool,
    pub xi1_minus_three: bool,
}

impl MarginalReport {
    pub fn passed(&self) -> bool {
        self.one_point && self.xi1_minus_two && self.xi1_minus_three
    }
}

/// Checks, through `Σ j ≤ cap`:
/// `[ξ^{-2n-1}] G^(1) = C(n, N)`,
/// `[ξ_1^{-2}] G^(2) = Σ_{n≥1} (2n-1) C(n-1, N) ξ_2^{-2n}` and
/// `[ξ_1^{-3}] G^(2) = Σ_{n≥2} (2n-2) C(n-1, N) ξ_2^{-(2n-1)}`.
pub fn marginal_relations(cap: i64) -> Result<MarginalReport> {
    let g1 = npoint(1, cap)?;
    let one_point = (1u32..)
        .take_while(|&n| 2 * n as i64 <= cap)
        .all(|n| g1.coeff(&[2 * n as i32 + 1]).cloned().unwrap_or_default() == hz_big_c_poly(n));

    let g2 = npoint(2, cap)?;
    let column = |first: i32| -> BTreeMap<i32, NPoly> {
        g2.terms()
            .filter(|(e, _)| e[0] == first)
            .map(|(e, c)| (e[1], c.clone()))
            .collect()
    };
    let mut want2 = BTreeMap::new();
    let mut want3 = BTreeMap::new();
    for n in 1u32.. {
        let e2 = 2 * n as i32;
        let e3 = 2 * n as i32 - 1;
        if (e2 - 1) as i64 + 1 > cap && (e3 - 1) as i64 + 2 > cap {
            break;
        }
        // ξ_1^{-2} ξ_2^{-2n}: Σ j = 1 + (2n - 1)
        if (1 + e2 - 1) as i64 <= cap {
            want2.insert(e2, hz_big_c_poly(n - 1).scale(&int(2 * n as i64 - 1)));
        }
        // ξ_1^{-3} ξ_2^{-(2n-1)}: Σ j = 2 + (2n - 2)
        if n >= 2 && (2 + e3 - 1) as i64 <= cap {
            want3.insert(e3, hz_big_c_poly(n - 1).scale(&int(2 * n as i64 - 2)));
        }
    }
    Ok(MarginalReport {
        cap,
        one_point,
        xi1_minus_two: column(2) == want2,
        xi1_minus_three: column(3) == want3,
    })
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}
