//! Invariants of a double structure: genus, the Rao function (closed form
//! and through sections), the degree/genus/ambient triple and the dimension
//! of the family of doublings.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cohomology::GammaSections;
use crate::doubling::{DoubleCurve, MuMap};
use crate::resolution::acm_report;
use crate::rnc::binomial;
use crate::{Error, Result};

/// `dim_K (K[t,u]/I_μ)_{rj-r-2+a}`, plus `C(r-1, 2)` at `j = 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RaoValue {
    pub value: i64,
    /// True at `j = 2`, where the value is only an upper bound.
    pub is_bound: bool,
}

/// Length of `(K[t,u]/I_μ)_e` (0 for `e < 0`).
pub fn quotient_dim(mu: &MuMap, e: i64) -> Result<i64> {
    if e < 0 {
        return Ok(0);
    }
    Ok(mu.i_mu().hilbert_function(e)? as i64)
}

/// Largest `e` with `(K[t,u]/I_μ)_e ≠ 0`.
pub fn socle_degree(mu: &MuMap) -> Result<i64> {
    let i = mu.i_mu();
    let h = i.hilbert()?;
    let top = h.regularity_index.max(i.max_degree() as i64) + 1;
    Ok((0..=top).rev().find(|&e| h.value(e) != 0).unwrap_or(-1))
}

pub fn rao_formula(mu: &MuMap, j: i64) -> Result<RaoValue> {
    let r = mu.r as i64;
    let v = quotient_dim(mu, r * j - r - 2 + mu.a as i64)?;
    if j == 2 {
        return Ok(RaoValue { value: v + binomial(r - 1, 2), is_bound: true });
    }
    Ok(RaoValue { value: v, is_bound: false })
}

/// `h^1 I_X(j) = h^0(O_X(j)) - dim (R/I_X)_j`.
pub fn rao_direct(x: &DoubleCurve, j: i64) -> Result<i64> {
    GammaSections::new(&x.ideal, j, j)?.rao(j)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RaoSource {
    Formula,
    Direct,
    BothAgree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RaoEntry {
    pub value: i64,
    pub formula: i64,
    pub is_bound: bool,
    pub source: RaoSource,
}

/// `h^1 I_X(j)` on a window whose two ends are zero.
#[derive(Clone, Debug, Serialize)]
pub struct RaoProfile {
    pub lo: i64,
    pub hi: i64,
    pub values: BTreeMap<i64, RaoEntry>,
}

impl RaoProfile {
    pub fn value(&self, j: i64) -> i64 {
        self.values.get(&j).map_or(0, |e| e.value)
    }

    pub fn total(&self) -> i64 {
        self.values.values().map(|e| e.value).sum()
    }

    /// `(exact, bound)` at `j = 2`.
    pub fn j2(&self) -> Option<(i64, i64)> {
        self.values.get(&2).map(|e| (e.value, e.formula))
    }
}

/// Initial window: from `floor((r+2-a)/r) - 1` to the last `j` whose
/// formula degree `rj - r - 2 + a` can reach the socle of `K[t,u]/I_μ`.
pub fn rao_window(mu: &MuMap) -> Result<(i64, i64)> {
    let (r, a) = (mu.r as i64, mu.a as i64);
    let s = socle_degree(mu)?;
    let lo = (r + 2 - a).div_euclid(r) - 1;
    let hi1 = (s + r + 2 - a + r - 1).div_euclid(r) + 1;
    Ok((lo.min(1), hi1.max(3)))
}

/// The Rao function computed through sections and compared with the
/// closed form in every degree: equality off `j = 2`, the bound at `j = 2`.
pub fn rao_profile(x: &DoubleCurve) -> Result<RaoProfile> {
    let (mut lo, mut hi) = rao_window(&x.mu)?;
    for _ in 0..32 {
        let gamma = GammaSections::new(&x.ideal, lo, hi)?;
        if gamma.rao(lo)? != 0 {
            lo -= 1;
            continue;
        }
        while gamma.rao(hi)? != 0 {
            hi += 1;
        }
        let mut values = BTreeMap::new();
        for j in lo..=hi {
            let direct = gamma.rao(j)?;
            let f = rao_formula(&x.mu, j)?;
            if direct < 0 {
                return Err(Error::Invariant(format!("negative h^1 I_X({j})")));
            }
            let source = if f.is_bound {
                if direct > f.value {
                    return Err(Error::Invariant(format!("h^1 I_X(2) = {direct} exceeds the bound {}", f.value)));
                }
                RaoSource::Direct
            } else {
                if direct != f.value {
                    return Err(Error::Invariant(format!(
                        "h^1 I_X({j}): sections give {direct}, closed form gives {}",
                        f.value
                    )));
                }
                RaoSource::BothAgree
            };
            values.insert(j, RaoEntry { value: direct, formula: f.value, is_bound: f.is_bound, source });
        }
        return Ok(RaoProfile { lo, hi, values });
    }
    Err(Error::Cap("Rao window did not close".into()))
}

/// The closed form alone on a window.
pub fn rao_formula_profile(mu: &MuMap, lo: i64, hi: i64) -> Result<BTreeMap<i64, RaoValue>> {
    (lo..=hi).map(|j| Ok((j, rao_formula(mu, j)?))).collect()
}

/// Genus from the Hilbert polynomial, checked against `r + 1 - a`.
pub fn genus(x: &DoubleCurve) -> Result<i64> {
    let g = x.genus()?;
    if g != x.mu.genus() {
        return Err(Error::Invariant(format!("Hilbert polynomial gives genus {g}, expected {}", x.mu.genus())));
    }
    Ok(g)
}

/// `(2r, g, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TripleClass {
    pub degree: i64,
    pub genus: i64,
    pub n: usize,
    pub ag_admissible: bool,
}

pub fn triple_class(r: usize, g: i64, n: usize) -> TripleClass {
    let ri = r as i64;
    let ag = (g == ri + 1 && n == r) || (g == 1 && n == 2 * r - 1);
    TripleClass { degree: 2 * ri, genus: g, n, ag_admissible: ag }
}

pub fn triple(x: &DoubleCurve) -> Result<TripleClass> {
    Ok(triple_class(x.mu.r, genus(x)?, x.mu.n))
}

/// `(n+1)(2r+1-g) - 7 + 2g`.
pub fn family_dimension(r: usize, g: i64, n: usize) -> i64 {
    (n as i64 + 1) * (2 * r as i64 + 1 - g) - 7 + 2 * g
}

/// `dim H(r, n) = (n+1)(r+1) - 4`, the rational normal curves of degree `r`
/// in `P^n`.
pub fn rnc_family_dimension(r: usize, n: usize) -> i64 {
    (n as i64 + 1) * (r as i64 + 1) - 4
}

/// `Σ Δ²h_X = 2r` and `Δ²h_X(1) = n - 1` (for non-degenerate `X`).
#[derive(Clone, Debug, Serialize)]
pub struct DeltaReport {
    pub delta2: Vec<i64>,
    pub sum: i64,
    pub at_one: i64,
    pub degenerate: bool,
    pub ok: bool,
}

pub fn delta2_report(x: &DoubleCurve) -> Result<DeltaReport> {
    let delta2 = x.ideal.second_difference()?;
    let sum = delta2.iter().sum();
    let at_one = delta2.get(1).copied().unwrap_or(0);
    let degenerate = x.ideal.gens().iter().any(|g| g.homogeneous_degree() == Some(1));
    let n = x.mu.n as i64;
    let ok = sum == 2 * x.mu.r as i64 && (degenerate || at_one == n - 1);
    Ok(DeltaReport { delta2, sum, at_one, degenerate, ok })
}

/// The `analyze` report.
#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeReport {
    pub triple: TripleClass,
    pub genus: i64,
    pub hilbert_polynomial: String,
    pub h_vector: Vec<i64>,
    pub rao: BTreeMap<i64, i64>,
    pub acm: bool,
    pub ag: bool,
    pub family_dimension: i64,
}

pub fn analyze(x: &DoubleCurve, seed: u64) -> Result<AnalyzeReport> {
    let g = genus(x)?;
    let acm = acm_report(&x.ideal, seed)?;
    let profile = rao_profile(x)?;
    Ok(AnalyzeReport {
        triple: triple_class(x.mu.r, g, x.mu.n),
        genus: g,
        hilbert_polynomial: x.ideal.hilbert()?.polynomial_string(),
        h_vector: acm.h_vector,
        rao: profile.values.iter().filter(|(_, e)| e.value != 0).map(|(j, e)| (*j, e.value)).collect(),
        acm: acm.acm,
        ag: acm.ag,
        family_dimension: family_dimension(x.mu.r, g, x.mu.n),
    })
}

#[cfg(test)]
mod tests;
