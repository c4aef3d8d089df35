//! Cross-checks grouped into suites, reported as deterministic JSON.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinat::double_factorial;
use crate::correlators::{
    bogoliubov_entry, char_correlator, dif_itz_c, evenness_scan, free_energy_with,
    schur_correlator, schur_correlator_frobenius, un_dimension, Engine,
};
use crate::error::{Error, Result};
use crate::hz::{epsilon_g, hz_big_c_poly, hz_c, hz_c_poly, verify_identities};
use crate::kp::{
    marginal_relations, npoint, npoint_symbolic, npoint_vs_free_energy, two_point_closed_form,
    BRIDGE_MAX_CAP,
};
use crate::partitions::{enumerate_partitions, z_of, Partition};
use crate::polyalg::{NPoly, Series};
use crate::wick::{self, connected_correlator, connected_correlator_direct, genus_census};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Hz,
    Wick,
    Correlators,
    Kp,
    Evenness,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["all", "hz", "wick", "correlators", "kp", "evenness"];

    /// Largest `n_max` the suite accepts.
    pub fn max_n(self) -> u32 {
        match self {
            Suite::Hz | Suite::Evenness => 10,
            _ => (wick::MAX_WEIGHT / 2) as u32,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = match self {
            Suite::All => 0,
            Suite::Hz => 1,
            Suite::Wick => 2,
            Suite::Correlators => 3,
            Suite::Kp => 4,
            Suite::Evenness => 5,
        };
        f.write_str(Suite::NAMES[i])
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "all" => Suite::All,
            "hz" => Suite::Hz,
            "wick" => Suite::Wick,
            "correlators" => Suite::Correlators,
            "kp" => Suite::Kp,
            "evenness" => Suite::Evenness,
            _ => return Err(Error::InvalidArgument(format!("unknown suite {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    /// Informational checks do not affect [`VerifyReport::passed`].
    pub required: bool,
    pub detail: Option<String>,
}

impl Check {
    fn new(suite: Suite, name: &str, failure: Option<String>) -> Check {
        Check {
            suite,
            name: name.into(),
            passed: failure.is_none(),
            required: true,
            detail: failure,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub n_max: u32,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || !c.required)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.required && !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs `suite` with every size parameter derived from `n_max`.
pub fn verify(suite: Suite, n_max: u32) -> Result<VerifyReport> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be positive".into()));
    }
    let limit = match suite {
        Suite::All => Suite::Wick.max_n(),
        s => s.max_n(),
    };
    if n_max > limit {
        return Err(Error::CapacityExceeded {
            what: "verification n_max",
            requested: n_max as usize,
            limit: limit as usize,
        });
    }
    let checks = match suite {
        Suite::All => {
            let mut v = Vec::new();
            for s in [
                Suite::Hz,
                Suite::Wick,
                Suite::Correlators,
                Suite::Kp,
                Suite::Evenness,
            ] {
                v.extend(run(s, n_max)?);
            }
            v
        }
        s => run(s, n_max)?,
    };
    Ok(VerifyReport {
        suite,
        n_max,
        checks,
    })
}

fn run(suite: Suite, n_max: u32) -> Result<Vec<Check>> {
    match suite {
        Suite::Hz => hz_suite(n_max),
        Suite::Wick => wick_suite(n_max),
        Suite::Correlators => correlator_suite(n_max),
        Suite::Kp => kp_suite(n_max),
        Suite::Evenness => evenness_suite(n_max),
        Suite::All => unreachable!(),
    }
}

/// First item of `items` (in order) for which `f` reports a failure.
fn first_failure<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> Result<Option<String>> + Sync,
) -> Result<Option<String>> {
    let results: Vec<Option<String>> = items.par_iter().map(&f).collect::<Result<_>>()?;
    Ok(results.into_iter().flatten().next())
}

fn partitions_up_to(max_weight: usize, even_only: bool) -> Vec<Partition> {
    (0..=max_weight)
        .filter(|m| !even_only || m % 2 == 0)
        .flat_map(enumerate_partitions)
        .collect()
}

fn int(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

fn hz_suite(n_max: u32) -> Result<Vec<Check>> {
    let s = Suite::Hz;
    let mut out: Vec<Check> = verify_identities(n_max)?
        .checks
        .into_iter()
        .map(|c| Check {
            suite: s,
            detail: c
                .first_failure
                .map(|n| format!("first failure at n = {n}; claimed for {}", c.domain)),
            name: c.identity,
            passed: c.passed,
            required: c.required,
        })
        .collect();

    let mut table = None;
    'outer: for n in 0..=n_max {
        let p = hz_c_poly(n);
        for k in 0..=10u32 {
            if p.eval_int(k as i64) != int(hz_c(n, k)) {
                table = Some(format!("c({n}, {k})"));
                break 'outer;
            }
        }
    }
    out.push(Check::new(s, "polynomial_matches_table", table));

    let mut genus = None;
    for n in 0..=n_max {
        let mut sum = NPoly::zero();
        for g in 0..=n.div_ceil(2) {
            let e = epsilon_g(n, g)?;
            if e < BigInt::from(0) {
                genus = Some(format!("ε_{g}({n}) = {e} is negative"));
            }
            sum += &NPoly::monomial(int(e), n + 1 - 2 * g);
        }
        if genus.is_none() && sum != hz_big_c_poly(n) {
            genus = Some(format!("Σ_g ε_g({n}) N^(n+1-2g) = {sum} ≠ C({n}, N)"));
        }
        if genus.is_some() {
            break;
        }
    }
    out.push(Check::new(s, "genus_expansion_sums_to_c", genus));
    Ok(out)
}

fn wick_suite(n_max: u32) -> Result<Vec<Check>> {
    let s = Suite::Wick;
    let lambdas = partitions_up_to(2 * n_max as usize, true);

    let census = first_failure(&lambdas, |l| {
        let c = genus_census(l)?;
        let pairs = l.weight() as i64 / 2;
        let want = double_factorial(2 * pairs - 1);
        if BigInt::from(c.total()) != want {
            return Ok(Some(format!("{l}: {} gluings, expected {want}", c.total())));
        }
        if let Some(f) = c.connected_by_faces.keys().find(|&&f| c.genus(f).is_none()) {
            return Ok(Some(format!(
                "{l}: connected gluing with {f} faces has no genus"
            )));
        }
        Ok(None)
    })?;

    let connected = first_failure(&lambdas[1..], |l| {
        let a = connected_correlator(l)?;
        let b = connected_correlator_direct(l)?;
        Ok((a != b).then(|| format!("{l}: cumulants give {a}, connected gluings give {b}")))
    })?;

    Ok(vec![
        Check::new(s, "census_total_and_genus", census),
        Check::new(s, "cumulants_match_connected_gluings", connected),
    ])
}

fn correlator_suite(n_max: u32) -> Result<Vec<Check>> {
    let s = Suite::Correlators;
    let max_weight = 2 * n_max as usize;
    let lambdas = partitions_up_to(max_weight, false);

    let engines = first_failure(&lambdas, |l| {
        let a = char_correlator(l)?;
        let b = wick::wick_correlator(l)?;
        Ok((a != b).then(|| format!("⟨p_({l})⟩: characters give {a}, Wick gives {b}")))
    })?;

    let factorization = first_failure(&lambdas, |l| {
        let direct = schur_correlator(l)?;
        let factored = un_dimension(l).scale(&dif_itz_c(l));
        Ok((direct != factored).then(|| format!("⟨s_({l})⟩ = {direct} but c·dim = {factored}")))
    })?;

    let frobenius = first_failure(&lambdas, |l| {
        let direct = schur_correlator(l)?;
        let expanded = schur_correlator_frobenius(l, Engine::Char)?;
        Ok((direct != expanded).then(|| format!("⟨s_({l})⟩: {direct} vs {expanded}")))
    })?;

    let hooks: Vec<(u32, u32)> = (0..=2 * n_max + 3)
        .flat_map(|t| (0..=t).map(move |p| (t - p, p)))
        .collect();
    let hook = first_failure(&hooks, |&(q, p)| {
        let a = bogoliubov_entry(q, p);
        let a = if p % 2 == 1 { -a } else { a };
        let s = schur_correlator(&Partition::hook(q as usize, p as usize))?;
        Ok((a != s).then(|| format!("(q, p) = ({q}, {p}): {a} vs {s}")))
    })?;

    let f = free_energy_with(max_weight, Engine::Char)?;
    let even = partitions_up_to(max_weight, true);
    let free = first_failure(&even, |l| {
        if l.is_empty() {
            return Ok(None);
        }
        let from_log = f.coeff(l).scale(&int(z_of(l)));
        let cumulant = connected_correlator(l)?;
        Ok((from_log != cumulant)
            .then(|| format!("{l}: log Z gives {from_log}, cumulants {cumulant}")))
    })?;

    Ok(vec![
        Check::new(s, "char_matches_wick", engines),
        Check::new(s, "schur_factorization", factorization),
        Check::new(s, "schur_matches_power_expansion", frobenius),
        Check::new(s, "hook_matches_bogoliubov", hook),
        Check::new(s, "log_z_matches_cumulants", free),
    ])
}

fn kp_suite(n_max: u32) -> Result<Vec<Check>> {
    let s = Suite::Kp;
    let n = n_max as i64;
    let mut out = Vec::new();

    let mut routes = None;
    for (k, cap) in [(1usize, 2 * n + 1), (2, n + 2), (3, n)] {
        let cap = cap.max(k as i64 + 1);
        let (a, b) = (npoint(k, cap)?, npoint_symbolic(k, cap)?);
        if a != b {
            routes = Some(first_series_difference(
                &a,
                &b,
                &format!("n = {k}, cap = {cap}"),
            ));
            break;
        }
    }
    out.push(Check::new(s, "sampled_matches_symbolic", routes));

    let cap2 = 2 * n + 2;
    let (a, b) = (npoint(2, cap2)?, two_point_closed_form(cap2)?);
    let closed = (a != b).then(|| first_series_difference(&a, &b, &format!("cap = {cap2}")));
    out.push(Check::new(s, "two_point_closed_form", closed));

    let cap3 = n + 3;
    let g3 = npoint(3, cap3)?;
    let mut symmetry = None;
    for perm in [[1usize, 0, 2], [0, 2, 1], [2, 0, 1]] {
        let p = g3.permute(&perm);
        if p != g3 {
            symmetry = Some(first_series_difference(
                &g3,
                &p,
                &format!("permutation {perm:?}"),
            ));
            break;
        }
    }
    out.push(Check::new(s, "three_point_symmetry", symmetry));

    let parity = [&a, &g3]
        .iter()
        .flat_map(|g| g.terms())
        .find(|(e, _)| e.iter().map(|x| x - 1).sum::<i32>() % 2 != 0)
        .map(|(e, c)| format!("odd weight {e:?} with coefficient {c}"));
    out.push(Check::new(s, "even_weight", parity));

    let m = marginal_relations(2 * n + 4)?;
    let detail =
        |ok: bool, what: &str| (!ok).then(|| format!("{what} fails through cap {}", m.cap));
    out.push(Check::new(
        s,
        "one_point_is_harer_zagier",
        detail(m.one_point, "[ξ^(-2n-1)] G1"),
    ));
    out.push(Check::new(
        s,
        "two_point_marginal_minus_two",
        detail(m.xi1_minus_two, "[ξ1^-2] G2"),
    ));
    out.push(Check::new(
        s,
        "two_point_marginal_minus_three",
        detail(m.xi1_minus_three, "[ξ1^-3] G2"),
    ));

    for k in 1..=3usize {
        let cap = (n + k as i64).min(BRIDGE_MAX_CAP).max(k as i64 + 1);
        let r = npoint_vs_free_energy(k, cap)?;
        let name = format!("free_energy_bridge_n{k}");
        out.push(Check::new(
            s,
            &name,
            r.first_mismatch.map(|m| format!("cap {cap}: {m}")),
        ));
    }

    let mut leading = None;
    let g1 = npoint(1, 2 * n)?;
    for k in 0..=n_max {
        let want = hz_c_poly(k).scale(&int(double_factorial(2 * k as i64 - 1)));
        let got = g1.coeff(&[2 * k as i32 + 1]).cloned().unwrap_or_default();
        if k > 0 && got != want {
            leading = Some(format!("ξ^-{}: {got} vs {want}", 2 * k + 1));
            break;
        }
    }
    out.push(Check::new(s, "one_point_double_factorial_form", leading));
    Ok(out)
}

fn first_series_difference(a: &Series<NPoly>, b: &Series<NPoly>, ctx: &str) -> String {
    let keys: std::collections::BTreeSet<&Vec<i32>> = a
        .terms()
        .map(|(e, _)| e)
        .chain(b.terms().map(|(e, _)| e))
        .collect();
    for e in keys {
        let (x, y) = (a.coeff(e), b.coeff(e));
        if x != y {
            let show = |c: Option<&NPoly>| c.map_or("0".to_string(), |p| p.to_string());
            return format!("{ctx}: exponents {e:?}: {} vs {}", show(x), show(y));
        }
    }
    format!("{ctx}: series differ in their spaces")
}

fn evenness_suite(n_max: u32) -> Result<Vec<Check>> {
    let s = Suite::Evenness;
    let scan = evenness_scan((2 * n_max as usize).min(crate::characters::MAX_WEIGHT))?;
    let shown: Vec<String> = scan
        .counterexamples
        .iter()
        .take(5)
        .map(|l| format!("({l})"))
        .collect();
    let conjecture = Check {
        suite: s,
        name: "every_even_weight_partition_is_even".into(),
        passed: scan.counterexamples.is_empty(),
        required: false,
        detail: (!scan.counterexamples.is_empty()).then(|| {
            format!(
                "{} of {} partitions of weight ≤ {} are odd, first {}",
                scan.counterexamples.len(),
                scan.checked,
                scan.max_weight,
                shown.join(", ")
            )
        }),
    };
    let criterion = Check::new(
        s,
        "even_iff_pair_character_nonzero",
        (!scan.even_iff_nonvanishing).then(|| format!("fails below weight {}", scan.max_weight)),
    );
    Ok(vec![conjecture, criterion])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let r = verify(Suite::All, 3).unwrap();
        if let Some(c) = r.failures().next() {
            panic!("{} failed: {:?}", c.name, c.detail);
        }
        assert!(r.passed());
    }

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn limits() {
        assert!(verify(Suite::Hz, 0).is_err());
        assert!(matches!(
            verify(Suite::Kp, 9),
            Err(Error::CapacityExceeded { .. })
        ));
    }
}
