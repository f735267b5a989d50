//! Double structures `X` on a rational normal curve `C`, built from a
//! surjection `μ: O(-r-2)^{r-1} ⊕ O(-r)^{n-r} → O(-r-2+a)` on `P^1`.
//!
//! `(I_X)_d` is the kernel of `eval_μ: (I_C)_d → K[t,u]_{rd-r-2+a}`, which
//! sends `Σ g_{pq} f_{pq} + Σ h_i x_i` to
//! `Σ j^*(g_{pq}) (μψ)_{pq} + Σ j^*(h_i) μ_i`. The primary construction
//! computes this kernel degree by degree; [`double_ideal_lift`] rebuilds the
//! ideal as `I_C^2 + [I_C] M` from the syzygies of the row `μ ∘ (ψ ⊕ id)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exec::{degree_cap, try_par_map};
use crate::groebner::{divide, standard_monomials, Buchberger};
use crate::idealops::{saturate, Ideal, IdealDoc, QPoly};
use crate::linalg::{column_relations, Echelon, SparseVec};
use crate::polyring::binary::binary_basis;
use crate::polyring::{gcd_binary, BinaryForm, Field, Mono, Poly, Ring, Scalar};
use crate::rnc::RncContext;
use crate::{Error, Result};

/// `ψ_r` over `K[t, u]` (rationals).
pub fn psi_matrix(r: usize) -> Result<Vec<Vec<BinaryForm>>> {
    psi_matrix_in(&Ring::binary(Field::Rational), r)
}

/// `ψ_r` as an `(r-1) × C(r,2)` matrix: column `(p, q)` carries
/// `t^{r-h-1} u^{h-1}` in row `p + q - 1 - h` for `h = p..q-1`.
pub fn psi_matrix_in(binary: &Ring, r: usize) -> Result<Vec<Vec<BinaryForm>>> {
    if r < 2 {
        return Err(Error::Input(format!("ψ_r needs r >= 2, got {r}")));
    }
    let mut pairs = Vec::new();
    for p in 1..=r {
        for q in p + 1..=r {
            pairs.push((p, q));
        }
    }
    let mut m = vec![vec![binary.zero(); pairs.len()]; r - 1];
    for (c, &(p, q)) in pairs.iter().enumerate() {
        for h in p..q {
            let row = p + q - 1 - h;
            let e = Poly::monomial(binary.ctx, Mono::from_exps(&[(r - h - 1) as u32, (h - 1) as u32]), Scalar::ONE);
            m[row - 1][c] = &m[row - 1][c] + &e;
        }
    }
    Ok(m)
}

/// JSON form of a [`MuMap`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuDoc {
    pub r: usize,
    pub n: usize,
    pub a: u32,
    pub block1: Vec<String>,
    pub block2: Vec<String>,
}

/// The surjection `μ`, stored as binary forms: `block1` has `r - 1` forms of
/// degree `a`, `block2` has `n - r` forms of degree `a - 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuMap {
    pub r: usize,
    pub n: usize,
    pub a: u32,
    pub block1: Vec<BinaryForm>,
    pub block2: Vec<BinaryForm>,
    binary: Ring,
}

impl MuMap {
    /// Validates degrees and surjectivity.
    pub fn new(r: usize, n: usize, a: u32, block1: Vec<BinaryForm>, block2: Vec<BinaryForm>) -> Result<MuMap> {
        if r < 2 || n < r {
            return Err(Error::Input(format!("need 2 <= r <= n, got r = {r}, n = {n}")));
        }
        if block1.len() != r - 1 || block2.len() != n - r {
            return Err(Error::Input(format!(
                "μ needs {} + {} entries, got {} + {}",
                r - 1,
                n - r,
                block1.len(),
                block2.len()
            )));
        }
        let binary = block1
            .iter()
            .chain(block2.iter())
            .map(|p| p.ctx())
            .next()
            .map(|ctx| Ring::binary(ctx.field))
            .unwrap_or_else(|| Ring::binary(Field::Rational));
        for (k, f) in block1.iter().enumerate() {
            if f.ctx().n() != 2 {
                return Err(Error::Input("μ entries must be binary forms".into()));
            }
            if !f.is_zero() && f.homogeneous_degree() != Some(a) {
                return Err(Error::Input(format!("block1 entry {k} is not a form of degree a = {a}")));
            }
        }
        for (k, f) in block2.iter().enumerate() {
            if f.ctx().n() != 2 {
                return Err(Error::Input("μ entries must be binary forms".into()));
            }
            if f.is_zero() {
                continue;
            }
            if a < 2 {
                return Err(Error::Input(format!("block2 must vanish when a = {a} < 2")));
            }
            if f.homogeneous_degree() != Some(a - 2) {
                return Err(Error::Input(format!("block2 entry {k} is not a form of degree a - 2 = {}", a - 2)));
            }
        }
        let nonzero: Vec<Poly> = block1.iter().chain(block2.iter()).filter(|p| !p.is_zero()).cloned().collect();
        if nonzero.is_empty() {
            return Err(Error::Input("μ is zero, hence not surjective".into()));
        }
        if !gcd_binary(&nonzero)?.is_constant() {
            if r == 2 && n == 2 {
                return Err(Error::Input(format!("for a plane conic μ is surjective only when a = 0, got a = {a}")));
            }
            return Err(Error::Input("μ is not surjective: its entries have a common zero".into()));
        }
        Ok(MuMap { r, n, a, block1, block2, binary })
    }

    /// Parses the entries (block1 then block2) in the text grammar.
    pub fn parse(r: usize, n: usize, a: u32, entries: &[&str], field: Field) -> Result<MuMap> {
        let ring = Ring::binary(field);
        if entries.len() != n.saturating_sub(1) {
            return Err(Error::Input(format!("μ needs {} entries, got {}", n.saturating_sub(1), entries.len())));
        }
        let forms = entries.iter().map(|s| ring.parse(s.trim())).collect::<Result<Vec<_>>>()?;
        let split = r.saturating_sub(1).min(forms.len());
        let (b1, b2) = forms.split_at(split);
        MuMap::new(r, n, a, b1.to_vec(), b2.to_vec())
    }

    pub fn from_doc(doc: &MuDoc) -> Result<MuMap> {
        let ring = Ring::binary(Field::Rational);
        let p = |v: &[String]| v.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>();
        MuMap::new(doc.r, doc.n, doc.a, p(&doc.block1)?, p(&doc.block2)?)
    }

    pub fn to_doc(&self) -> MuDoc {
        let f = |v: &[Poly]| v.iter().map(|p| self.binary.fmt_poly(p)).collect();
        MuDoc { r: self.r, n: self.n, a: self.a, block1: f(&self.block1), block2: f(&self.block2) }
    }

    /// True when some surjective `μ` with these parameters exists: either an
    /// entry of degree 0 is available, or at least two entries can be
    /// non-zero.
    pub fn exists(r: usize, n: usize, a: u32) -> bool {
        if r < 2 || n < r {
            return false;
        }
        let free = (r - 1) + if a >= 2 { n - r } else { 0 };
        a == 0 || (a == 2 && n > r) || free >= 2
    }

    /// A seeded random surjective `μ` with coefficients in `-3..=3`.
    pub fn random(r: usize, n: usize, a: u32, seed: u64) -> Result<MuMap> {
        if !MuMap::exists(r, n, a) {
            return Err(Error::Input(format!("no surjective μ exists for r = {r}, n = {n}, a = {a}")));
        }
        let ring = Ring::binary(Field::Rational);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let form = |deg: u32, rng: &mut ChaCha8Rng| -> Poly {
            let terms = binary_basis(deg).into_iter().map(|m| (m, Scalar::from_int(rng.gen_range(-3i64..=3)))).collect();
            Poly::from_terms(ring.ctx, terms)
        };
        for _ in 0..64 {
            let b1: Vec<Poly> = (0..r - 1).map(|_| form(a, &mut rng)).collect();
            let b2: Vec<Poly> = (0..n - r).map(|_| if a >= 2 { form(a - 2, &mut rng) } else { ring.zero() }).collect();
            if let Ok(mu) = MuMap::new(r, n, a, b1, b2) {
                return Ok(mu);
            }
        }
        Err(Error::Internal("no surjective random μ found in 64 draws".into()))
    }

    pub fn binary(&self) -> &Ring {
        &self.binary
    }

    /// All entries, block1 first.
    pub fn entries(&self) -> Vec<Poly> {
        self.block1.iter().chain(self.block2.iter()).cloned().collect()
    }

    /// `g = r + 1 - a`.
    pub fn genus(&self) -> i64 {
        self.r as i64 + 1 - self.a as i64
    }

    /// `I_μ ⊂ K[t, u]`, generated by the entries.
    pub fn i_mu(&self) -> Ideal {
        Ideal::new(&self.binary, self.entries()).expect("binary forms are homogeneous")
    }

    /// `c · μ`.
    pub fn scaled(&self, c: &Scalar) -> MuMap {
        let s = |v: &[Poly]| v.iter().map(|p| p.scale(c)).collect();
        MuMap { block1: s(&self.block1), block2: s(&self.block2), ..self.clone() }
    }
}

/// The row `μ ∘ (ψ ⊕ id)`: `C(r,2)` forms of degree `a + r - 2`, then the
/// block2 forms.
pub fn compose_mu_psi(mu: &MuMap) -> Result<Vec<BinaryForm>> {
    let psi = psi_matrix_in(&mu.binary, mu.r)?;
    let ncols = psi[0].len();
    let mut out = Vec::with_capacity(ncols + mu.block2.len());
    for c in 0..ncols {
        let mut acc = mu.binary.zero();
        for (row, m) in psi.iter().zip(&mu.block1) {
            if !row[c].is_zero() && !m.is_zero() {
                acc = &acc + &m.mul(&row[c]);
            }
        }
        out.push(acc);
    }
    out.extend(mu.block2.iter().cloned());
    if out.iter().all(|p| p.is_zero()) {
        return Err(Error::Invariant("μ ∘ (ψ ⊕ id) vanishes".into()));
    }
    Ok(out)
}

/// `eval_μ` on `(I_C)_d`, with the divisor order fixed at construction.
pub struct MuEvaluator {
    pub ctx: RncContext,
    pub row: Vec<BinaryForm>,
    divisors: Vec<Poly>,
    shuffled: Vec<Poly>,
    perm: Vec<usize>,
    a: u32,
}

impl MuEvaluator {
    pub fn new(mu: &MuMap) -> Result<MuEvaluator> {
        let ctx = RncContext::new(mu.r, mu.n, mu.binary.field())?;
        let row = compose_mu_psi(mu)?;
        let divisors = ctx.generators();
        let perm: Vec<usize> = (0..divisors.len()).rev().collect();
        let shuffled = perm.iter().map(|&k| divisors[k].clone()).collect();
        Ok(MuEvaluator { ctx, row, divisors, shuffled, perm, a: mu.a })
    }

    /// Degree of `eval_μ` on `(I_C)_d`: `rd - r - 2 + a`.
    pub fn target_degree(&self, d: u32) -> i64 {
        let r = self.ctx.r as i64;
        r * d as i64 - r - 2 + self.a as i64
    }

    fn apply(&self, quots: &[Poly], order: Option<&[usize]>) -> Poly {
        let mut acc = self.ctx.binary.zero();
        for (k, q) in quots.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let slot = order.map_or(k, |o| o[k]);
            let e = &self.row[slot];
            if e.is_zero() {
                continue;
            }
            acc = &acc + &self.ctx.pullback(q).mul(e);
        }
        acc
    }

    /// `eval_μ(f)` for `f ∈ I_C` homogeneous.
    pub fn eval(&self, f: &Poly) -> Result<BinaryForm> {
        let (rem, quots) = divide(f, &self.divisors);
        if !rem.is_zero() {
            return Err(Error::Input("polynomial is not in I_C".into()));
        }
        Ok(self.apply(&quots, None))
    }

    /// `eval_μ(f)` through a second division order; must agree with
    /// [`MuEvaluator::eval`].
    pub fn eval_shuffled(&self, f: &Poly) -> Result<BinaryForm> {
        let (rem, quots) = divide(f, &self.shuffled);
        if !rem.is_zero() {
            return Err(Error::Input("polynomial is not in I_C".into()));
        }
        Ok(self.apply(&quots, Some(&self.perm)))
    }

    /// Evaluates by both orders and fails on disagreement.
    pub fn eval_checked(&self, f: &Poly) -> Result<BinaryForm> {
        let a = self.eval(f)?;
        let b = self.eval_shuffled(f)?;
        if a != b {
            return Err(Error::Invariant("eval_μ depends on the expression in the generators of I_C".into()));
        }
        Ok(a)
    }
}

/// `eval_μ(f)` for a single polynomial.
pub fn eval_mu(mu: &MuMap, f: &Poly) -> Result<BinaryForm> {
    MuEvaluator::new(mu)?.eval_checked(f)
}

/// A double structure together with its support and construction data.
#[derive(Clone, Debug)]
pub struct DoubleCurve {
    pub ctx: RncContext,
    pub mu: MuMap,
    /// The saturated ideal `I_X`, minimal generators.
    pub ideal: Ideal,
    /// Degree at which the Hilbert polynomial and saturation certified the
    /// result.
    pub certified_degree: u32,
    /// Last degree examined.
    pub last_degree: u32,
}

/// Checked invariants of a constructed curve.
#[derive(Clone, Debug, Serialize)]
pub struct DoubleInvariants {
    pub square_in_ix: bool,
    pub ix_in_ic: bool,
    pub saturated: bool,
    pub hilbert_polynomial: String,
    pub expected_polynomial: String,
    pub polynomial_ok: bool,
    pub square_saturation_in_ix: bool,
}

impl DoubleInvariants {
    pub fn ok(&self) -> bool {
        self.square_in_ix && self.ix_in_ic && self.saturated && self.polynomial_ok && self.square_saturation_in_ix
    }
}

/// JSON form of a constructed curve.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DoubleCurveDoc {
    pub mu: MuDoc,
    pub genus: i64,
    pub hilbert_polynomial: String,
    pub ideal: IdealDoc,
}

/// `[2r, a - r]`, the Hilbert polynomial `2r t + a - r` (ascending).
pub fn expected_polynomial(mu: &MuMap) -> QPoly {
    vec![Scalar::from_int(mu.a as i64 - mu.r as i64), Scalar::from_int(2 * mu.r as i64)]
}

fn trimmed(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

impl DoubleCurve {
    pub fn genus(&self) -> Result<i64> {
        let (_, g) = self
            .ideal
            .hilbert()?
            .curve_data()
            .ok_or_else(|| Error::Invariant("Hilbert polynomial of X is not linear".into()))?;
        Ok(g)
    }

    /// Verifies `I_C^2 ⊆ I_X ⊆ I_C`, saturation, the Hilbert polynomial and
    /// `(I_C^2)^sat ⊆ I_X`.
    pub fn invariants(&self) -> Result<DoubleInvariants> {
        let ic = self.ctx.ideal();
        let sq = ic.power(2);
        let h = self.ideal.hilbert()?;
        let expected = trimmed(expected_polynomial(&self.mu));
        let sq_sat = saturate(&sq)?;
        Ok(DoubleInvariants {
            square_in_ix: sq.is_subset(&self.ideal),
            ix_in_ic: self.ideal.is_subset(&ic),
            saturated: self.ideal.is_saturated()?,
            hilbert_polynomial: h.polynomial_string(),
            expected_polynomial: crate::idealops::format_qpoly(&expected),
            polynomial_ok: h.polynomial == expected,
            square_saturation_in_ix: sq_sat.is_subset(&self.ideal),
        })
    }

    pub fn to_doc(&self) -> Result<DoubleCurveDoc> {
        Ok(DoubleCurveDoc {
            mu: self.mu.to_doc(),
            genus: self.genus()?,
            hilbert_polynomial: self.ideal.hilbert()?.polynomial_string(),
            ideal: self.ideal.to_doc(),
        })
    }
}

/// State shared by both constructions: the growing ideal and the stopping
/// rule (Hilbert polynomial, saturation, two quiet degrees).
struct Sweep {
    ring: Ring,
    expected: QPoly,
    bb: Buchberger,
    gens: Vec<Poly>,
    certified: Option<u32>,
    quiet: u32,
}

impl Sweep {
    fn new(ring: &Ring, mu: &MuMap) -> Sweep {
        Sweep {
            ring: ring.clone(),
            expected: trimmed(expected_polynomial(mu)),
            bb: Buchberger::new(ring.ctx),
            gens: Vec::new(),
            certified: None,
            quiet: 0,
        }
    }

    /// Records the candidates of degree `d` not already in the ideal; returns
    /// true when the sweep may stop.
    fn step(&mut self, d: u32, cands: Vec<Poly>) -> Result<bool> {
        let mut new = Vec::new();
        for f in cands {
            self.bb.compute_to(Some(d));
            if !self.bb.reduce(&f).is_zero() {
                self.bb.add_generators(std::slice::from_ref(&f))?;
                new.push(f);
            }
        }
        if new.is_empty() {
            self.quiet += 1;
        } else {
            if self.certified.is_some() {
                return Err(Error::Invariant(format!("new generator in degree {d} after certification")));
            }
            self.quiet = 0;
            self.gens.extend(new);
        }
        if self.certified.is_none() && !self.gens.is_empty() {
            let j = self.ideal()?;
            if j.hilbert()?.polynomial == self.expected && j.is_saturated()? {
                self.certified = Some(d);
            }
        }
        Ok(self.certified.is_some() && self.quiet >= 2)
    }

    fn ideal(&self) -> Result<Ideal> {
        let gb = self.bb.clone().finish();
        Ok(Ideal::new(&self.ring, self.gens.clone())?.with_gb(gb))
    }
}

fn cap_for(mu: &MuMap) -> u32 {
    degree_cap(2 * mu.a + 2 * mu.r as u32 + 4)
}

/// Coordinates of a binary form of degree `deg` (index = power of `u`).
fn binary_coords(f: &Poly) -> SparseVec {
    let mut v: SparseVec = f.terms().iter().map(|(m, c)| (m.exp(1) as usize, c.clone())).collect();
    v.sort_by_key(|e| e.0);
    v
}

/// Builds `I_X` by the degree-wise kernel of `eval_μ`.
///
/// In degree `d` the candidates are `m - NF_{I_C}(m)` for monomials `m` in
/// `in(I_C)` but outside the initial ideal of the part of `I_X` already
/// found; they span a complement of `(J)_d` in `(I_C)_d`, so the kernel of
/// `eval_μ` on them gives exactly the new generators.
pub fn double_ideal(mu: &MuMap) -> Result<DoubleCurve> {
    double_ideal_capped(mu, cap_for(mu))
}

/// [`double_ideal`] with an explicit degree cap.
pub fn double_ideal_capped(mu: &MuMap, cap: u32) -> Result<DoubleCurve> {
    let ev = MuEvaluator::new(mu)?;
    let ctx = ev.ctx.clone();
    let nv = ctx.n + 1;
    let fld = ctx.ring.field();
    let ic_lms: Vec<Mono> = ctx.generators().iter().map(|g| g.lm()).collect();
    let mut sweep = Sweep::new(&ctx.ring, mu);
    for d in 1..=cap {
        sweep.bb.compute_to(Some(d));
        let j_lms: Vec<Mono> = sweep.bb.current().iter().map(|p| p.lm()).collect();
        let cands: Vec<Mono> = standard_monomials(&j_lms, nv, d)
            .into_iter()
            .filter(|m| ic_lms.iter().any(|l| l.divides(m)))
            .collect();
        let polys: Vec<Poly> = cands
            .iter()
            .map(|m| {
                let p = Poly::monomial(ctx.ring.ctx, *m, Scalar::ONE);
                let (rem, _) = divide(&p, &ctx.generators());
                &p - &rem
            })
            .collect();
        let new = if ev.target_degree(d) < 0 {
            polys
        } else {
            let evals = try_par_map(&polys, |p| ev.eval_checked(p))?;
            let cols: Vec<SparseVec> = evals.iter().map(binary_coords).collect();
            column_relations(fld, &cols)
                .into_iter()
                .map(|v| {
                    let mut acc = ctx.ring.zero();
                    for (k, c) in v {
                        acc = acc.add_mul_term(&c, &Mono::ONE, &polys[k]);
                    }
                    acc.primitive()
                })
                .collect()
        };
        if sweep.step(d, new)? {
            let ideal = sweep.ideal()?.minimalize();
            return Ok(DoubleCurve {
                ctx,
                mu: mu.clone(),
                ideal,
                certified_degree: sweep.certified.unwrap(),
                last_degree: d,
            });
        }
    }
    Err(Error::Cap(format!("doubling not certified by degree {cap}")))
}

/// Builds `I_X = I_C^2 + [I_C] M` where the columns of `M` lift generators
/// of the syzygies of `μ ∘ (ψ ⊕ id)` over `R/I_C`. The syzygies are found
/// degree by degree with `(R/I_C)_e ≅ K[t,u]_{re}`.
pub fn double_ideal_lift(mu: &MuMap) -> Result<DoubleCurve> {
    let row = compose_mu_psi(mu)?;
    let ctx = RncContext::new(mu.r, mu.n, mu.binary.field())?;
    let fld = ctx.ring.field();
    let r = ctx.r as u32;
    let np = ctx.pairs().len();
    let gens = ctx.generators();
    let cap = cap_for(mu);
    let mut sweep = Sweep::new(&ctx.ring, mu);
    sweep.step(0, ctx.ideal().power(2).gens().to_vec())?;
    sweep.quiet = 0;
    let bctx = ctx.binary.ctx;
    // slot degrees in module degree d
    let slot_deg = |s: usize, d: u32| -> Option<u32> {
        let shift = if s < np { 2 } else { 1 };
        (d >= shift).then(|| r * (d - shift))
    };
    let mut prev: Vec<Vec<Poly>> = Vec::new();
    let target_deg = |d: u32| r as i64 * d as i64 - r as i64 - 2 + mu.a as i64;
    for d in 1..=cap {
        // layout of the unknowns
        let mut offsets = Vec::with_capacity(row.len());
        let mut total = 0usize;
        for s in 0..row.len() {
            offsets.push(total);
            if let Some(e) = slot_deg(s, d) {
                total += e as usize + 1;
            }
        }
        let flatten = |v: &[Poly]| -> SparseVec {
            let mut out = Vec::new();
            for (s, p) in v.iter().enumerate() {
                for (m, c) in p.terms() {
                    out.push((offsets[s] + m.exp(1) as usize, c.clone()));
                }
            }
            out.sort_by_key(|e| e.0);
            out
        };
        let mut unknowns: Vec<Vec<Poly>> = Vec::with_capacity(total);
        for s in 0..row.len() {
            if let Some(e) = slot_deg(s, d) {
                for m in binary_basis(e) {
                    let mut v = vec![Poly::zero(bctx); row.len()];
                    v[s] = Poly::monomial(bctx, m, Scalar::ONE);
                    unknowns.push(v);
                }
            }
        }
        let kernel: Vec<Vec<Poly>> = if target_deg(d) < 0 {
            unknowns
        } else {
            let images: Vec<SparseVec> = unknowns
                .iter()
                .map(|v| {
                    let mut acc = Poly::zero(bctx);
                    for (s, p) in v.iter().enumerate() {
                        if !p.is_zero() && !row[s].is_zero() {
                            acc = &acc + &p.mul(&row[s]);
                        }
                    }
                    binary_coords(&acc)
                })
                .collect();
            column_relations(fld, &images)
                .into_iter()
                .map(|rel| {
                    let mut v = vec![Poly::zero(bctx); row.len()];
                    for (k, c) in rel {
                        for (s, p) in unknowns[k].iter().enumerate() {
                            if !p.is_zero() {
                                v[s] = v[s].add_mul_term(&c, &Mono::ONE, p);
                            }
                        }
                    }
                    v
                })
                .collect()
        };
        // the part generated in lower degrees
        let mut lower = Echelon::new(fld);
        for v in &prev {
            for i in 0..=ctx.r {
                let x = ctx.pullback_var(i);
                let w: Vec<Poly> = v.iter().map(|p| p.mul(x)).collect();
                lower.insert(&flatten(&w));
            }
        }
        let mut new = Vec::new();
        for v in &kernel {
            if lower.insert(&flatten(v)).is_none() {
                continue;
            }
            let mut f = ctx.ring.zero();
            for (s, p) in v.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let e = slot_deg(s, d).unwrap() / r;
                f = &f + &ctx.lift(p, e)?.mul(&gens[s]);
            }
            if !f.is_zero() {
                new.push(f.primitive());
            }
        }
        prev = kernel;
        if sweep.step(d, new)? {
            let ideal = sweep.ideal()?.minimalize();
            return Ok(DoubleCurve { ctx, mu: mu.clone(), ideal, certified_degree: sweep.certified.unwrap(), last_degree: d });
        }
    }
    Err(Error::Cap(format!("syzygy lift not certified by degree {cap}")))
}

/// Runs both constructions and requires equal ideals.
pub fn double_ideal_checked(mu: &MuMap) -> Result<DoubleCurve> {
    let x = double_ideal(mu)?;
    let y = double_ideal_lift(mu)?;
    if !x.ideal.equals(&y.ideal) {
        return Err(Error::Invariant("degree-wise kernel and syzygy lift disagree".into()));
    }
    Ok(x)
}

/// True iff `mu2 = c · mu1` for a non-zero scalar `c`.
pub fn mu_equivalence_check(mu1: &MuMap, mu2: &MuMap) -> Result<bool> {
    if (mu1.r, mu1.n, mu1.a) != (mu2.r, mu2.n, mu2.a) {
        return Err(Error::Input("μ maps with different (r, n, a)".into()));
    }
    let (e1, e2) = (mu1.entries(), mu2.entries());
    let Some(k) = e1.iter().position(|p| !p.is_zero()) else {
        return Ok(false);
    };
    if e2[k].is_zero() {
        return Ok(false);
    }
    let fld = mu1.binary.field();
    let c = fld.div(e2[k].lc(), e1[k].lc());
    Ok(e1.iter().zip(&e2).all(|(p, q)| p.scale(&c) == *q))
}

/// The two arithmetically Gorenstein families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AgKind {
    /// `a = 0`, `n = r`, constant `μ`: genus `r + 1`.
    Canonical,
    /// `a = r`, `n = 2r - 1`, `μ = (0, …, 0 | t^{r-2}, …, u^{r-2})`: genus 1.
    Elliptic,
}

/// `μ` of the canonical-type doubling with the given constants.
pub fn canonical_mu(r: usize, consts: &[i64]) -> Result<MuMap> {
    let b = Ring::binary(Field::Rational);
    if consts.len() != r - 1 {
        return Err(Error::Input(format!("canonical μ needs {} constants", r - 1)));
    }
    MuMap::new(r, r, 0, consts.iter().map(|&c| b.constant(Scalar::from_int(c))).collect(), vec![])
}

/// Seeded random constants in `-3..=3`, not all zero.
pub fn canonical_mu_random(r: usize, seed: u64) -> Result<MuMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let c: Vec<i64> = (0..r - 1).map(|_| rng.gen_range(-3i64..=3)).collect();
        if c.iter().any(|&x| x != 0) {
            return canonical_mu(r, &c);
        }
    }
}

/// `μ` of the elliptic-type doubling.
pub fn elliptic_mu(r: usize) -> Result<MuMap> {
    let b = Ring::binary(Field::Rational);
    let block2 = binary_basis(r as u32 - 2).into_iter().map(|m| Poly::monomial(b.ctx, m, Scalar::ONE)).collect();
    MuMap::new(r, 2 * r - 1, r as u32, vec![b.zero(); r - 1], block2)
}

/// Builds the AG fixture (`canonical` uses `μ = (1, …, 1)`). The elliptic
/// one is checked to lie on the scroll [`scroll_ideal`] for `r ≥ 3`.
pub fn ag_fixtures(kind: AgKind, r: usize) -> Result<DoubleCurve> {
    if r < 2 {
        return Err(Error::Input(format!("AG fixtures need r >= 2, got {r}")));
    }
    let mu = match kind {
        AgKind::Canonical => canonical_mu(r, &vec![1; r - 1])?,
        AgKind::Elliptic => elliptic_mu(r)?,
    };
    let x = double_ideal(&mu)?;
    if kind == AgKind::Elliptic && r >= 3 && !scroll_ideal(r)?.is_subset(&x.ideal) {
        return Err(Error::Invariant("the elliptic doubling is not on the scroll".into()));
    }
    Ok(x)
}

/// The scroll `S ⊂ P^{2r-1}`: 2×2 minors of
/// `(x_0 … x_{r-1} x_{r+1} … x_{2r-2}; x_1 … x_r x_{r+2} … x_{2r-1})`.
pub fn scroll_ideal(r: usize) -> Result<Ideal> {
    let ring = Ring::projective(2 * r - 1, Field::Rational);
    let mut top: Vec<usize> = (0..r).collect();
    top.extend(r + 1..=2 * r - 2);
    let cols = top.len();
    let mut gens = Vec::new();
    for i in 0..cols {
        for j in i + 1..cols {
            let (a, b) = (top[i], top[j]);
            let p = &ring.var(a).mul(&ring.var(b + 1)) - &ring.var(a + 1).mul(&ring.var(b));
            gens.push(p);
        }
    }
    Ideal::new(&ring, gens)
}

/// `I_{C,L} + I_L^2 + J` with `J = ⟨x_i x_{r+k} - x_{i-1} x_{r+k+1}⟩`,
/// `i = 1..r`, `k = 1..r-2`: the elliptic-type doubling.
pub fn elliptic_ideal(r: usize) -> Result<Ideal> {
    let ctx = RncContext::new(r, 2 * r - 1, Field::Rational)?;
    let mut gens: Vec<Poly> = ctx.quadrics().to_vec();
    gens.extend(ctx.linear_ideal().power(2).gens().iter().cloned());
    for i in 1..=r {
        for k in 1..=r.saturating_sub(2) {
            gens.push(&ctx.x(i).mul(&ctx.x(r + k)) - &ctx.x(i - 1).mul(&ctx.x(r + k + 1)));
        }
    }
    Ideal::new(&ctx.ring, gens)
}

/// Double conic of odd genus `g = 3 - 2b`: `μ = (u^{2b}, t^{2b-2})`
/// (`μ = (1, 0)` for `b = 0`).
pub fn conic_odd_mu(b: u32) -> Result<MuMap> {
    let ring = Ring::binary(Field::Rational);
    let second = if b == 0 { ring.zero() } else { crate::polyring::binary::tu(&ring, 2 * b - 2, 0) };
    MuMap::new(2, 3, 2 * b, vec![crate::polyring::binary::tu(&ring, 0, 2 * b)], vec![second])
}

/// Double conic of even genus `g = 2 - 2b`: `μ = (u^{2b+1}, t^{2b-1})`.
pub fn conic_even_mu(b: u32) -> Result<MuMap> {
    if b == 0 {
        return Err(Error::Input("even-genus double conics need b >= 1".into()));
    }
    let ring = Ring::binary(Field::Rational);
    MuMap::new(
        2,
        3,
        2 * b + 1,
        vec![crate::polyring::binary::tu(&ring, 0, 2 * b + 1)],
        vec![crate::polyring::binary::tu(&ring, 2 * b - 1, 0)],
    )
}

/// The displayed ideal of the odd-genus double conic:
/// `⟨w², w(xz-y²), (xz-y²)², x^{b-1}(xz-y²) - z^b w⟩`, and `⟨w, (xz-y²)²⟩`
/// for `b = 0`.
pub fn conic_odd_ideal(b: u32) -> Result<Ideal> {
    let ring = Ring::projective(3, Field::Rational);
    if b == 0 {
        return Ideal::new(&ring, vec![ring.var(3), ring.parse("x*z - y^2")?.pow(2)]);
    }
    let q = ring.parse("x*z - y^2")?;
    let w = ring.var(3);
    let x = ring.var(0);
    let z = ring.var(2);
    let g4 = &x.pow(b - 1).mul(&q) - &z.pow(b).mul(&w);
    Ideal::new(&ring, vec![w.pow(2), w.mul(&q), q.pow(2), g4])
}

/// The displayed ideal of the even-genus double conic:
/// `⟨w², w(xz-y²), (xz-y²)², x^b(xz-y²) - y z^b w, x^{b-1} y (xz-y²) - z^{b+1} w⟩`.
pub fn conic_even_ideal(b: u32) -> Result<Ideal> {
    let ring = Ring::projective(3, Field::Rational);
    let q = ring.parse("x*z - y^2")?;
    let (x, y, z, w) = (ring.var(0), ring.var(1), ring.var(2), ring.var(3));
    let g4 = &x.pow(b).mul(&q) - &y.mul(&z.pow(b)).mul(&w);
    let g5 = &x.pow(b - 1).mul(&y).mul(&q) - &z.pow(b + 1).mul(&w);
    Ideal::new(&ring, vec![w.pow(2), w.mul(&q), q.pow(2), g4, g5])
}

#[cfg(test)]
mod tests;
