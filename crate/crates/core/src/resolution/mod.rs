//! Graded free modules and maps, syzygies, minimal free resolutions, Betti
//! tables and the ACM / AG predicates.

mod modgb;
pub mod modvec;
mod schreyer;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::idealops::Ideal;
use crate::polyring::{Ctx, Poly, Ring};
use crate::{Error, Result};

pub use modgb::{minimal_subset, syzygies, ModBuchberger};

/// `⊕ R(-d_i)`, stored as the list of twists `d_i`.
pub type GradedFreeModule = Vec<i64>;

/// A homogeneous map of graded free modules, stored by columns: column `j`
/// is the image of the `j`-th basis element of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub ctx: Ctx,
    pub target: GradedFreeModule,
    pub source: GradedFreeModule,
    cols: Vec<Vec<Poly>>,
}

impl ModuleMap {
    pub fn from_columns(ctx: Ctx, target: GradedFreeModule, source: GradedFreeModule, cols: Vec<Vec<Poly>>) -> ModuleMap {
        assert_eq!(cols.len(), source.len());
        assert!(cols.iter().all(|c| c.len() == target.len()));
        ModuleMap { ctx, target, source, cols }
    }

    /// Builds a map from rows of polynomials; the source twists are inferred
    /// from the entries (each column needs a non-zero entry).
    pub fn from_rows(ctx: Ctx, target: GradedFreeModule, rows: Vec<Vec<Poly>>) -> Result<ModuleMap> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut source = Vec::with_capacity(ncols);
        let mut cols = vec![Vec::with_capacity(rows.len()); ncols];
        for j in 0..ncols {
            let mut deg = None;
            for (i, row) in rows.iter().enumerate() {
                let e = &row[j];
                cols[j].push(e.clone());
                if e.is_zero() {
                    continue;
                }
                let d = e.homogeneous_degree().ok_or_else(|| Error::Input("inhomogeneous matrix entry".into()))? as i64 + target[i];
                if deg.is_some_and(|x| x != d) {
                    return Err(Error::Input("matrix column is not homogeneous".into()));
                }
                deg = Some(d);
            }
            source.push(deg.ok_or_else(|| Error::Input("zero column in matrix".into()))?);
        }
        Ok(ModuleMap { ctx, target, source, cols })
    }

    /// A one-row map `⊕ R(-deg g_i) -> R`.
    pub fn row(ctx: Ctx, gens: &[Poly]) -> ModuleMap {
        let source = gens.iter().map(|g| g.total_degree().unwrap_or(0) as i64).collect();
        ModuleMap { ctx, target: vec![0], source, cols: gens.iter().map(|g| vec![g.clone()]).collect() }
    }

    pub fn nrows(&self) -> usize {
        self.target.len()
    }

    pub fn ncols(&self) -> usize {
        self.source.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.cols[j][i]
    }

    pub fn column(&self, j: usize) -> &[Poly] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vec<Poly>] {
        &self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.iter().all(|p| p.is_zero()))
    }

    /// Every non-zero entry `(i, j)` has degree `source[j] - target[i]`.
    pub fn is_homogeneous(&self) -> bool {
        self.cols.iter().enumerate().all(|(j, c)| {
            c.iter().enumerate().all(|(i, p)| {
                p.is_zero() || p.homogeneous_degree().map(|d| d as i64) == Some(self.source[j] - self.target[i])
            })
        })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if self.source != other.target {
            return Err(Error::Input("maps are not composable".into()));
        }
        let mut cols = Vec::with_capacity(other.ncols());
        for oc in &other.cols {
            let mut col = vec![Poly::zero(self.ctx); self.nrows()];
            for (k, b) in oc.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                for (i, slot) in col.iter_mut().enumerate() {
                    let a = &self.cols[k][i];
                    if !a.is_zero() {
                        *slot = &*slot + &(a * b);
                    }
                }
            }
            cols.push(col);
        }
        Ok(ModuleMap { ctx: self.ctx, target: self.target.clone(), source: other.source.clone(), cols })
    }

    /// Text form, one row per line.
    pub fn to_strings(&self, ring: &Ring) -> Vec<Vec<String>> {
        (0..self.nrows())
            .map(|i| (0..self.ncols()).map(|j| ring.fmt_poly(self.entry(i, j))).collect())
            .collect()
    }
}

/// A graded free resolution `0 <- F_0 <- F_1 <- ... <- F_s <- 0` of `R/I`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub ring: Ring,
    /// Twists of `F_0, ..., F_s`.
    pub modules: Vec<GradedFreeModule>,
    /// `maps[i] : F_{i+1} -> F_i`.
    pub maps: Vec<ModuleMap>,
    pub minimal: bool,
}

/// One Betti number `β_{i,j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: i64,
    pub beta: usize,
}

impl FreeResolution {
    /// Projective dimension of `R/I`.
    pub fn length(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn betti(&self) -> Vec<BettiEntry> {
        let mut out = Vec::new();
        for (i, m) in self.modules.iter().enumerate() {
            let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
            for d in m {
                *counts.entry(*d).or_default() += 1;
            }
            out.extend(counts.into_iter().map(|(j, beta)| BettiEntry { i, j, beta }));
        }
        out
    }

    /// `β_{i,j}`.
    pub fn beta(&self, i: usize, j: i64) -> usize {
        self.modules.get(i).map_or(0, |m| m.iter().filter(|&&d| d == j).count())
    }

    /// Ranks of the free modules.
    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.len()).collect()
    }

    /// Macaulay-style table: columns are `i`, rows are `j - i`.
    pub fn betti_text(&self) -> String {
        let b = self.betti();
        let lo = b.iter().map(|e| e.j - e.i as i64).min().unwrap_or(0);
        let hi = b.iter().map(|e| e.j - e.i as i64).max().unwrap_or(0);
        let ncols = self.modules.len();
        let cell = |i: usize, r: i64| -> String {
            let v = self.beta(i, r + i as i64);
            if v == 0 { ".".into() } else { v.to_string() }
        };
        let width = b.iter().map(|e| e.beta.to_string().len()).max().unwrap_or(1).max(self.ranks().iter().map(|r| r.to_string().len()).max().unwrap_or(1));
        let mut s = String::new();
        let _ = write!(s, "{:>7}", "");
        for i in 0..ncols {
            let _ = write!(s, " {:>width$}", i);
        }
        s.push('\n');
        let _ = write!(s, "{:>7}", "total:");
        for r in self.ranks() {
            let _ = write!(s, " {:>width$}", r);
        }
        s.push('\n');
        for r in lo..=hi {
            let _ = write!(s, "{:>7}", format!("{r}:"));
            for i in 0..ncols {
                let _ = write!(s, " {:>width$}", cell(i, r));
            }
            s.push('\n');
        }
        s
    }

    /// Adjacent compositions vanish.
    pub fn compositions_vanish(&self) -> Result<bool> {
        for w in self.maps.windows(2) {
            if !w[0].compose(&w[1])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `Σ_i (-1)^i Σ_j β_{i,j} t^j`, the numerator of the Hilbert series.
    pub fn euler_numerator(&self) -> Vec<i128> {
        let mut out: Vec<i128> = Vec::new();
        for (i, m) in self.modules.iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for &d in m {
                let d = d as usize;
                if out.len() <= d {
                    out.resize(d + 1, 0);
                }
                out[d] += sign;
            }
        }
        while out.len() > 1 && *out.last().unwrap() == 0 {
            out.pop();
        }
        out
    }

    /// Alternating sum of the free modules reproduces the Hilbert series of
    /// `R/I`.
    pub fn hilbert_identity(&self, ideal: &Ideal) -> Result<bool> {
        let h = ideal.hilbert()?;
        let mut num = h.series.numerator.clone();
        while num.len() > 1 && *num.last().unwrap() == 0 {
            num.pop();
        }
        Ok(num == self.euler_numerator())
    }

    /// Minimality: no non-zero constant entries.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|m| m.cols.iter().all(|c| c.iter().all(|p| p.is_zero() || !p.is_constant())))
    }

    /// Betti table as JSON-ready triples.
    pub fn betti_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.betti().into_iter().map(|e| serde_json::json!([e.i, e.j, e.beta])).collect())
    }
}

/// Removes unit entries: pivot at the lowest row, then lowest column, of
/// the first map containing one; column operations clear the pivot row,
/// then the pivot row and column are dropped together with the matching
/// row of the next map and column of the previous map.
fn prune(modules: &mut Vec<GradedFreeModule>, cols: &mut Vec<Vec<Vec<Poly>>>, ctx: Ctx) {
    let fld = ctx.field;
    loop {
        let mut pivot = None;
        'search: for (l, m) in cols.iter().enumerate() {
            let nrows = modules[l].len();
            for a in 0..nrows {
                for (b, col) in m.iter().enumerate() {
                    if modules[l + 1][b] != modules[l][a] {
                        continue;
                    }
                    let e = &col[a];
                    if !e.is_zero() && e.is_constant() {
                        pivot = Some((l, a, b));
                        break 'search;
                    }
                }
            }
        }
        let Some((l, a, b)) = pivot else { break };
        let c = cols[l][b][a].lc().clone();
        let pc = cols[l][b].clone();
        for (bb, col) in cols[l].iter_mut().enumerate() {
            if bb == b || col[a].is_zero() {
                continue;
            }
            // the entry may be a form of positive degree, so the multiplier is a polynomial
            let lam = col[a].scale(&fld.neg(&fld.inv(&c)));
            for (x, y) in col.iter_mut().zip(&pc) {
                if !y.is_zero() {
                    *x = &*x + &lam.mul(y);
                }
            }
        }
        cols[l].remove(b);
        for col in cols[l].iter_mut() {
            col.remove(a);
        }
        modules[l].remove(a);
        modules[l + 1].remove(b);
        if l + 1 < cols.len() {
            for col in cols[l + 1].iter_mut() {
                col.remove(b);
            }
        }
        if l > 0 {
            cols[l - 1].remove(a);
        }
    }
    while modules.len() > 1 && modules.last().unwrap().is_empty() {
        modules.pop();
        cols.pop();
    }
}

/// Minimal graded free resolution of `R/I`.
pub fn free_resolution(ideal: &Ideal) -> Result<FreeResolution> {
    let ring = ideal.ring().clone();
    if ring.order().zero_mask != 0 {
        return Err(Error::Input("resolutions need a standard grading".into()));
    }
    let gb = ideal.gb();
    if gb.is_unit() {
        return Ok(FreeResolution { ring, modules: vec![vec![]], maps: vec![], minimal: true });
    }
    let fr = schreyer::frame(gb)?;
    let mut modules = fr.twists;
    let mut cols = fr.cols;
    prune(&mut modules, &mut cols, ring.ctx);
    let maps = cols
        .into_iter()
        .enumerate()
        .map(|(l, c)| ModuleMap::from_columns(ring.ctx, modules[l].clone(), modules[l + 1].clone(), c))
        .collect();
    let res = FreeResolution { ring, modules, maps, minimal: true };
    if !res.is_minimal() {
        return Err(Error::Internal("pruned resolution still has unit entries".into()));
    }
    Ok(res)
}

/// Codimension of `R/I` (number of variables minus Krull dimension).
pub fn codim(ideal: &Ideal) -> Result<usize> {
    Ok(ideal.ring().nvars() - ideal.krull_dim()?)
}

/// Arithmetically Cohen–Macaulay: projective dimension equals codimension.
pub fn is_acm(ideal: &Ideal) -> Result<bool> {
    let res = free_resolution(ideal)?;
    Ok(res.length() == codim(ideal)?)
}

/// Arithmetically Gorenstein: ACM and the last free module has rank one.
pub fn is_ag(ideal: &Ideal) -> Result<bool> {
    let res = free_resolution(ideal)?;
    Ok(res.length() == codim(ideal)? && res.modules.last().is_some_and(|m| m.len() == 1))
}

/// Classification of a curve ideal from one resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcmReport {
    pub acm: bool,
    pub ag: bool,
    pub pd: usize,
    pub codim: usize,
    pub h_vector: Vec<i64>,
}

pub fn acm_report(ideal: &Ideal, seed: u64) -> Result<AcmReport> {
    if ideal.krull_dim()? != 2 {
        return Err(Error::Input("ACM/AG classification expects a curve".into()));
    }
    let res = free_resolution(ideal)?;
    let c = codim(ideal)?;
    let acm = res.length() == c;
    let ag = acm && res.modules.last().is_some_and(|m| m.len() == 1);
    Ok(AcmReport { acm, ag, pd: res.length(), codim: c, h_vector: ideal.h_vector(seed)? })
}

#[cfg(test)]
mod tests;
