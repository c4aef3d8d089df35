//! Gaussian correlators by brute-force Wick contraction.
//!
//! A monomial `p_λ` is a set of `l(λ)` vertices with `λ_i` half-edges each,
//! encoded as a permutation `σ` of `{0, …, |λ|-1}` whose cycles are the
//! vertices. A gluing is a fixed-point-free involution `τ` pairing the
//! half-edges, and the faces of the resulting fat graph are the cycles of
//! `σ∘τ`. Summing `N^{faces}` over all `(2n-1)!!` gluings gives `⟨p_λ⟩`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::polyalg::{Graded, NPoly};

/// Largest weight the enumeration accepts: `15!! = 2 027 025` gluings.
pub const MAX_WEIGHT: usize = 16;

/// Face-count histogram of every gluing of `λ`, and of the connected ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingCensus {
    pub lambda: Partition,
    pub by_faces: BTreeMap<usize, u64>,
    pub connected_by_faces: BTreeMap<usize, u64>,
    pub gs_exp: i64,
}

impl GluingCensus {
    pub fn total(&self) -> u64 {
        self.by_faces.values().sum()
    }

    /// `Σ_f by_faces[f] N^f`.
    pub fn polynomial(&self) -> NPoly {
        histogram_poly(&self.by_faces)
    }

    pub fn connected_polynomial(&self) -> NPoly {
        histogram_poly(&self.connected_by_faces)
    }

    /// Genus of a connected gluing with `faces` faces.
    pub fn genus(&self, faces: usize) -> Option<u64> {
        // V - E + F = 2 - 2g with V = l(λ), E = |λ|/2
        let chi = self.lambda.len() as i64 - (self.lambda.weight() / 2) as i64 + faces as i64;
        if chi > 2 || (2 - chi) % 2 != 0 {
            None
        } else {
            Some(((2 - chi) / 2) as u64)
        }
    }
}

fn histogram_poly(h: &BTreeMap<usize, u64>) -> NPoly {
    NPoly::from_terms(
        h.iter()
            .map(|(&f, &c)| (f as u32, BigRational::from_integer(BigInt::from(c)))),
    )
}

/// `|λ|/2 - l(λ)`, the `g_s` exponent of `⟨p_λ⟩` for even `|λ|`.
pub fn gs_exponent(lambda: &Partition) -> i64 {
    (lambda.weight() / 2) as i64 - lambda.len() as i64
}

/// The canonical `σ`: cycles laid out consecutively, largest part first.
fn canonical_sigma(lambda: &Partition) -> Vec<u8> {
    let mut sigma = Vec::with_capacity(lambda.weight());
    let mut offset = 0;
    for &p in lambda.parts() {
        for i in 0..p {
            sigma.push((offset + (i + 1) % p) as u8);
        }
        offset += p;
    }
    sigma
}

struct Tally {
    all: Vec<u64>,
    connected: Vec<u64>,
}

impl Tally {
    fn new(size: usize) -> Self {
        Tally {
            all: vec![0; size + 1],
            connected: vec![0; size + 1],
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.all.iter_mut().zip(other.all) {
            *a += b;
        }
        for (a, b) in self.connected.iter_mut().zip(other.connected) {
            *a += b;
        }
        self
    }
}

fn record(sigma: &[u8], tau: &[u8], tally: &mut Tally) {
    let m = sigma.len();
    let mut seen = [false; MAX_WEIGHT];
    let mut faces = 0;
    for start in 0..m {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = sigma[tau[x] as usize] as usize;
        }
    }
    tally.all[faces] += 1;
    if m == 0 {
        return;
    }

    // transitivity of <σ, τ>
    let mut reached = [false; MAX_WEIGHT];
    let mut stack = [0u8; MAX_WEIGHT];
    let mut top = 1;
    reached[0] = true;
    let mut count = 1;
    while top > 0 {
        top -= 1;
        let x = stack[top] as usize;
        for y in [sigma[x] as usize, tau[x] as usize] {
            if !reached[y] {
                reached[y] = true;
                count += 1;
                stack[top] = y as u8;
                top += 1;
            }
        }
    }
    if count == m {
        tally.connected[faces] += 1;
    }
}

fn complete(sigma: &[u8], tau: &mut [u8], used: u32, tally: &mut Tally) {
    let m = sigma.len();
    let full = if m == 32 { u32::MAX } else { (1u32 << m) - 1 };
    if used == full {
        record(sigma, tau, tally);
        return;
    }
    let i = (!used).trailing_zeros() as usize;
    for j in i + 1..m {
        if used & (1 << j) == 0 {
            tau[i] = j as u8;
            tau[j] = i as u8;
            complete(sigma, tau, used | (1 << i) | (1 << j), tally);
        }
    }
}

/// Partial matchings of the first `depth` smallest points, in enumeration
/// order.
fn prefixes(m: usize, depth: usize) -> Vec<(Vec<u8>, u32)> {
    let mut out = vec![(vec![0u8; m], 0u32)];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (tau, used) in out {
            let i = (!used).trailing_zeros() as usize;
            if i >= m {
                next.push((tau, used));
                continue;
            }
            for j in i + 1..m {
                if used & (1 << j) == 0 {
                    let mut t = tau.clone();
                    t[i] = j as u8;
                    t[j] = i as u8;
                    next.push((t, used | (1 << i) | (1 << j)));
                }
            }
        }
        out = next;
    }
    out
}

fn census_cache() -> &'static RwLock<HashMap<Partition, GluingCensus>> {
    static CACHE: OnceLock<RwLock<HashMap<Partition, GluingCensus>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The face histogram of all `(|λ|-1)!!` gluings of `λ`.
pub fn genus_census(lambda: &Partition) -> Result<GluingCensus> {
    let m = lambda.weight();
    if m % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "no gluings of ({lambda}): odd weight {m}"
        )));
    }
    if m > MAX_WEIGHT {
        return Err(Error::CapacityExceeded {
            what: "Wick weight",
            requested: m,
            limit: MAX_WEIGHT,
        });
    }
    if let Some(c) = census_cache().read().unwrap().get(lambda) {
        return Ok(c.clone());
    }
    let sigma = canonical_sigma(lambda);
    let tally = prefixes(m, 2.min(m / 2))
        .into_par_iter()
        .map(|(mut tau, used)| {
            let mut t = Tally::new(m);
            complete(&sigma, &mut tau, used, &mut t);
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::new(m), Tally::merge);
    let collect = |v: &[u64]| {
        v.iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(f, &c)| (f, c))
            .collect::<BTreeMap<_, _>>()
    };
    let census = GluingCensus {
        lambda: lambda.clone(),
        by_faces: collect(&tally.all),
        connected_by_faces: collect(&tally.connected),
        gs_exp: gs_exponent(lambda),
    };
    census_cache()
        .write()
        .unwrap()
        .insert(lambda.clone(), census.clone());
    Ok(census)
}

/// `⟨p_λ⟩` by Wick's theorem; zero for odd `|λ|`.
pub fn wick_correlator(lambda: &Partition) -> Result<Graded> {
    if lambda.weight() % 2 == 1 {
        return Ok(Graded::zero(0));
    }
    let c = genus_census(lambda)?;
    Ok(Graded::new(c.polynomial(), c.gs_exp))
}

/// The connected correlator `⟨p_λ⟩_c` by recursive moment–cumulant inversion
/// over the parts of `λ`, with Wick moments.
pub fn connected_correlator(lambda: &Partition) -> Result<Graded> {
    connected_from_moments(lambda, &mut wick_correlator)
}

/// `⟨p_λ⟩_c` counted directly over the gluings that connect every vertex.
pub fn connected_correlator_direct(lambda: &Partition) -> Result<Graded> {
    if lambda.weight() % 2 == 1 {
        return Ok(Graded::zero(0));
    }
    let c = genus_census(lambda)?;
    Ok(Graded::new(c.connected_polynomial(), c.gs_exp))
}

/// Cumulants from any moment oracle.
///
/// The parts of `λ` are treated as labelled positions and
/// `κ(S) = m(S) - Σ_{first ∈ B ⊊ S} κ(B) m(S∖B)`; cumulants depend only on
/// the multiset of parts, so they are memoised by partition.
pub fn connected_from_moments(
    lambda: &Partition,
    moment: &mut dyn FnMut(&Partition) -> Result<Graded>,
) -> Result<Graded> {
    let mut moments: HashMap<Partition, Graded> = HashMap::new();
    let mut cumulants: HashMap<Partition, Graded> = HashMap::new();
    cumulant(lambda, moment, &mut moments, &mut cumulants)
}

fn cached_moment(
    p: &Partition,
    moment: &mut dyn FnMut(&Partition) -> Result<Graded>,
    moments: &mut HashMap<Partition, Graded>,
) -> Result<Graded> {
    if let Some(m) = moments.get(p) {
        return Ok(m.clone());
    }
    let m = moment(p)?;
    moments.insert(p.clone(), m.clone());
    Ok(m)
}

fn cumulant(
    lambda: &Partition,
    moment: &mut dyn FnMut(&Partition) -> Result<Graded>,
    moments: &mut HashMap<Partition, Graded>,
    cumulants: &mut HashMap<Partition, Graded>,
) -> Result<Graded> {
    if let Some(k) = cumulants.get(lambda) {
        return Ok(k.clone());
    }
    let parts = lambda.parts();
    let l = parts.len();
    let mut acc = cached_moment(lambda, moment, moments)?;
    if l > 1 {
        let rest_count = l - 1;
        // B = {0} ∪ subset of 1..l, excluding the full set
        for mask in 0..(1u32 << rest_count) - 1 {
            let mut inside = vec![parts[0]];
            let mut outside = Vec::new();
            for (k, &p) in parts[1..].iter().enumerate() {
                if mask & (1 << k) != 0 {
                    inside.push(p);
                } else {
                    outside.push(p);
                }
            }
            let b = Partition::from_unsorted(inside)?;
            let rest = Partition::from_unsorted(outside)?;
            let m_rest = cached_moment(&rest, moment, moments)?;
            if m_rest.is_zero() {
                continue;
            }
            let k_b = cumulant(&b, moment, moments, cumulants)?;
            if k_b.is_zero() {
                continue;
            }
            let term = k_b.mul(&m_rest);
            acc = acc.try_add(&Graded::new(-&term.poly, term.gs))?;
        }
    }
    cumulants.insert(lambda.clone(), acc.clone());
    Ok(acc)
}
