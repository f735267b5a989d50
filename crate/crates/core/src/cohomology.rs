//! Twisted global sections `Γ_*(O_X) = ⊕ H^0(O_X(d))` and the tangent space
//! `H^0(N_X)` to the Hilbert scheme.
//!
//! For a saturated curve ideal `I`, a linear non-zerodivisor `ℓ` and
//! `K_t = (I + ℓ^t)^sat`, multiplication by `ℓ^t` identifies `H^0(O_X(d))`
//! with `(K_t / I)_{d+t}` as soon as `h^1 I_X(j) = 0` for `j ≥ d + t`. The
//! exponent `t` is certified from the socle of `R/(I + ℓ)`: if that module
//! vanishes above degree `e`, then `h^1 I_X(j) = 0` for `j ≥ e`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::doubling::DoubleCurve;
use crate::exec::{par_map, t_cap};
use crate::groebner::standard_monomials;
use crate::idealops::{quotient_by, random_linear_form, saturate, Ideal};
use crate::linalg::{column_relations, rank, SparseVec};
use crate::polyring::{Mono, Poly, Ring, Scalar};
use crate::resolution::{free_resolution, syzygies, ModuleMap};
use crate::{Error, Result};

/// Sections in one degree: `basis[j]` is the `I`-normal form of the
/// section times `ℓ^t`, with leading monomial `lead[j]` (coefficient 1).
#[derive(Clone, Debug)]
pub struct GammaDegree {
    pub d: i64,
    pub basis: Vec<Poly>,
    lead: HashMap<Mono, usize>,
}

/// `Γ_d` for `d ≥ lo`, computed on demand.
#[derive(Debug)]
pub struct GammaSections {
    ideal: Ideal,
    ell: Poly,
    t: u32,
    k: Ideal,
    lo: i64,
    hi: i64,
    socle_top: Option<i64>,
    cache: Mutex<BTreeMap<i64, Arc<GammaDegree>>>,
}

/// The last variable if it is a non-zero-divisor (powers of it keep degrevlex
/// bases small), then the others from `x_0`, then seeded random forms.
fn choose_ell(ideal: &Ideal) -> Result<Poly> {
    let ring = ideal.ring();
    let n = ring.nvars();
    for i in std::iter::once(n - 1).chain(0..n - 1) {
        let x = ring.var(i);
        if quotient_by(ideal, &x)?.equals(ideal) {
            return Ok(x);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a6d);
    for _ in 0..16 {
        let l = random_linear_form(ring, &mut rng);
        if quotient_by(ideal, &l)?.equals(ideal) {
            return Ok(l);
        }
    }
    Err(Error::Invariant("no linear non-zerodivisor found; is the ideal saturated?".into()))
}

/// Top degree in which `I + ℓ` and its saturation differ.
fn socle_top(ideal: &Ideal, ell: &Poly) -> Result<Option<i64>> {
    let j = Ideal::new(ideal.ring(), ideal.gens().iter().cloned().chain([ell.clone()]).collect())?;
    let s = saturate(&j)?;
    let (hj, hs) = (j.hilbert()?, s.hilbert()?);
    let top = hj.regularity_index.max(hs.regularity_index).max(j.max_degree() as i64);
    Ok((0..=top).rev().find(|&d| hj.value(d) != hs.value(d)))
}

impl GammaSections {
    /// Sections for degrees `d ≥ lo`; `hi` bounds the stability check.
    pub fn new(ideal: &Ideal, lo: i64, hi: i64) -> Result<GammaSections> {
        if ideal.ring().order().zero_mask != 0 {
            return Err(Error::Input("section modules need a standard grading".into()));
        }
        if ideal.is_unit() {
            return Err(Error::Input("the unit ideal has no sections to compute".into()));
        }
        if !ideal.is_saturated()? {
            return Err(Error::Input("section modules need a saturated ideal".into()));
        }
        let ell = choose_ell(ideal)?;
        let top = socle_top(ideal, &ell)?;
        let t = top.map_or(1, |e| (e - lo).max(1)) as u32;
        let t0 = (ideal.max_degree() as i64 - lo).max(2) as u32;
        let cap = t_cap(t0 + 6);
        if t > cap {
            return Err(Error::Cap(format!("section module needs t = {t} above the cap {cap}")));
        }
        let k = Self::k_ideal(ideal, &ell, t)?;
        let g = GammaSections {
            ideal: ideal.clone(),
            ell,
            t,
            k,
            lo,
            hi: hi.max(lo),
            socle_top: top,
            cache: Mutex::new(BTreeMap::new()),
        };
        g.check_stable()?;
        Ok(g)
    }

    fn k_ideal(ideal: &Ideal, ell: &Poly, t: u32) -> Result<Ideal> {
        let gens = ideal.gens().iter().cloned().chain([ell.pow(t)]).collect();
        saturate(&Ideal::new(ideal.ring(), gens)?)
    }

    /// The dimensions at `t` and `t + 1` must agree on `lo..=hi`.
    fn check_stable(&self) -> Result<()> {
        let k1 = Self::k_ideal(&self.ideal, &self.ell, self.t + 1)?;
        for d in self.lo..=self.hi {
            let a = self.dim(d)?;
            let b = dim_from(&self.ideal, &k1, d + self.t as i64 + 1)?;
            if a != b {
                return Err(Error::Invariant(format!(
                    "dim Γ_{d} changes from {a} to {b} between t = {} and t = {}",
                    self.t,
                    self.t + 1
                )));
            }
        }
        Ok(())
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn ring(&self) -> &Ring {
        self.ideal.ring()
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn ell(&self) -> &Poly {
        &self.ell
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    /// Top degree of `H^0_m(R/(I + ℓ))`, if non-zero.
    pub fn socle_top(&self) -> Option<i64> {
        self.socle_top
    }

    fn check_degree(&self, d: i64) -> Result<()> {
        if d < self.lo {
            return Err(Error::Input(format!("degree {d} is below the certified window start {}", self.lo)));
        }
        Ok(())
    }

    /// `h^0(O_X(d))`.
    pub fn dim(&self, d: i64) -> Result<usize> {
        self.check_degree(d)?;
        dim_from(&self.ideal, &self.k, d + self.t as i64)
    }

    /// `h^1(I_X(d)) = h^0(O_X(d)) - dim (R/I)_d`.
    pub fn rao(&self, d: i64) -> Result<i64> {
        let hf = if d < 0 { 0 } else { self.ideal.hilbert_function(d)? as i64 };
        Ok(self.dim(d)? as i64 - hf)
    }

    /// The basis of `Γ_d`.
    pub fn degree(&self, d: i64) -> Result<Arc<GammaDegree>> {
        self.check_degree(d)?;
        if let Some(g) = self.cache.lock().unwrap().get(&d) {
            return Ok(g.clone());
        }
        let g = Arc::new(self.build(d)?);
        self.cache.lock().unwrap().insert(d, g.clone());
        Ok(g)
    }

    fn build(&self, d: i64) -> Result<GammaDegree> {
        let top = d + self.t as i64;
        if top < 0 {
            return Ok(GammaDegree { d, basis: vec![], lead: HashMap::new() });
        }
        let gi = self.ideal.gb();
        let gk = self.k.gb();
        let nv = self.ring().nvars();
        let ctx = self.ring().ctx;
        let lk = gk.leading_monomials();
        let monos: Vec<Mono> = standard_monomials(gi.leading_monomials(), nv, top as u32)
            .into_iter()
            .filter(|m| lk.iter().any(|l| l.divides(m)))
            .collect();
        let basis = par_map(&monos, |m| {
            let p = Poly::monomial(ctx, *m, Scalar::ONE);
            gi.normal_form(&(&p - &gk.normal_form(&p)))
        });
        let expected = self.dim(d)?;
        if basis.len() != expected {
            return Err(Error::Internal(format!("Γ_{d}: {} basis elements, expected {expected}", basis.len())));
        }
        let lead = monos.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        Ok(GammaDegree { d, basis, lead })
    }

    /// Coordinates of an element of degree `d + t` (taken modulo `I`) in
    /// the basis of `Γ_d`.
    pub fn coords(&self, d: i64, f: &Poly) -> Result<Vec<Scalar>> {
        let g = self.degree(d)?;
        let fld = self.ring().field();
        let mut rem = self.ideal.gb().normal_form(f);
        let mut out = vec![Scalar::ZERO; g.basis.len()];
        while !rem.is_zero() {
            let m = rem.lm();
            let Some(&k) = g.lead.get(&m) else {
                return Err(Error::Input(format!("element is not a section in degree {d}")));
            };
            let c = rem.lc().clone();
            out[k] = fld.add(&out[k], &c);
            rem = rem.add_mul_term(&fld.neg(&c), &Mono::ONE, &g.basis[k]);
        }
        Ok(out)
    }

    /// The representative `Σ c_j b_j` of degree `d + t`.
    pub fn element(&self, d: i64, coords: &[Scalar]) -> Result<Poly> {
        let g = self.degree(d)?;
        let mut acc = Poly::zero(self.ring().ctx);
        for (c, b) in coords.iter().zip(&g.basis) {
            if !c.is_zero() {
                acc = acc.add_mul_term(c, &Mono::ONE, b);
            }
        }
        Ok(acc)
    }

    /// `f · s` for `f` homogeneous of degree `e` and `s ∈ Γ_d`, in `Γ_{d+e}`.
    pub fn mul_poly(&self, d: i64, f: &Poly, coords: &[Scalar]) -> Result<Vec<Scalar>> {
        let e = f.homogeneous_degree().ok_or_else(|| Error::Input("multiplier is not homogeneous".into()))?;
        let s = self.element(d, coords)?;
        self.coords(d + e as i64, &f.mul(&s))
    }

    /// `x_i · s` in `Γ_{d+1}`.
    pub fn mul_var(&self, d: i64, i: usize, coords: &[Scalar]) -> Result<Vec<Scalar>> {
        self.mul_poly(d, &self.ring().var(i), coords)
    }

    /// The matrix of `x_i: Γ_d → Γ_{d+1}`, one column per basis element.
    pub fn mul_matrix(&self, d: i64, i: usize) -> Result<Vec<Vec<Scalar>>> {
        let n = self.degree(d)?.basis.len();
        (0..n)
            .map(|k| {
                let mut e = vec![Scalar::ZERO; n];
                e[k] = Scalar::ONE;
                self.mul_var(d, i, &e)
            })
            .collect()
    }

    /// The image of `f ∈ (R/I)_d` in `Γ_d`.
    pub fn embed(&self, f: &Poly) -> Result<(i64, Vec<Scalar>)> {
        let d = f.homogeneous_degree().ok_or_else(|| Error::Input("element is not homogeneous".into()))? as i64;
        Ok((d, self.coords(d, &self.ell.pow(self.t).mul(f))?))
    }
}

fn dim_from(ideal: &Ideal, k: &Ideal, top: i64) -> Result<usize> {
    if top < 0 {
        return Ok(0);
    }
    let a = ideal.hilbert_function(top)?;
    let b = k.hilbert_function(top)?;
    usize::try_from(a - b).map_err(|_| Error::Internal("K_t does not contain I".into()))
}

/// Basis of `H^0(O_X(d))` together with the exponent `t` used.
pub fn gamma(ideal: &Ideal, d: i64) -> Result<(Vec<Poly>, u32)> {
    let g = GammaSections::new(ideal, d, d)?;
    let basis = g.degree(d)?.basis.clone();
    Ok((basis, g.t()))
}

/// `h^0(N_X)` and the data used to compute it.
#[derive(Clone, Debug, Serialize)]
pub struct NormalSheaf {
    pub h0_normal: usize,
    pub t_used: u32,
    pub unknowns: usize,
    pub rank: usize,
}

/// `h^0(N_X) = dim Hom(I_X, Γ_*(O_X))_0`, using the minimal presentation.
pub fn h0_normal_sheaf(ideal: &Ideal) -> Result<NormalSheaf> {
    let res = free_resolution(ideal)?;
    let gens: Vec<Poly> = res.maps[0].columns().iter().map(|c| c[0].clone()).collect();
    let syz: Vec<Vec<Poly>> = res.maps.get(1).map(|m| m.columns().to_vec()).unwrap_or_default();
    h0_normal_presented(ideal, &gens, &syz)
}

/// Same, with the presentation `gens` and syzygy columns `syz` computed from
/// the given generators (which need not be minimal).
pub fn h0_normal_sheaf_with_generators(ideal: &Ideal, gens: &[Poly]) -> Result<NormalSheaf> {
    let row = ModuleMap::row(ideal.ring().ctx, gens);
    let syz = syzygies(&row)?;
    h0_normal_presented(ideal, gens, syz.columns())
}

/// `h^0(N_X)` from an explicit presentation: unknowns `φ(e_i) ∈ Γ_{d_i}`,
/// one linear condition `Σ_i δ_{ik} φ(e_i) = 0` per syzygy column `k`.
pub fn h0_normal_presented(ideal: &Ideal, gens: &[Poly], syz: &[Vec<Poly>]) -> Result<NormalSheaf> {
    let check = Ideal::new(ideal.ring(), gens.to_vec())?;
    if !check.equals(ideal) {
        return Err(Error::Input("generators do not generate the ideal".into()));
    }
    let ring = ideal.ring();
    let degs: Vec<i64> = gens
        .iter()
        .map(|g| g.homogeneous_degree().map(|d| d as i64).ok_or_else(|| Error::Input("zero or inhomogeneous generator".into())))
        .collect::<Result<_>>()?;
    for (k, col) in syz.iter().enumerate() {
        if col.len() != gens.len() {
            return Err(Error::Input(format!("syzygy {k} has the wrong length")));
        }
        let mut acc = ring.zero();
        for (c, g) in col.iter().zip(gens) {
            acc = &acc + &c.mul(g);
        }
        if !acc.is_zero() {
            return Err(Error::Input(format!("column {k} is not a syzygy")));
        }
    }
    let lo = *degs.iter().min().ok_or_else(|| Error::Input("empty presentation".into()))?;
    let syz_deg: Vec<i64> = syz
        .iter()
        .map(|col| {
            col.iter()
                .zip(&degs)
                .find(|(c, _)| !c.is_zero())
                .map(|(c, d)| c.homogeneous_degree().unwrap_or(0) as i64 + d)
                .unwrap_or(lo)
        })
        .collect();
    let hi = syz_deg.iter().copied().chain(degs.iter().copied()).max().unwrap_or(lo);
    let gamma = GammaSections::new(ideal, lo, hi)?;
    let gb = ideal.gb();
    let mut jobs = Vec::new();
    for (i, &d) in degs.iter().enumerate() {
        let g = gamma.degree(d)?;
        for b in &g.basis {
            jobs.push((i, b.clone()));
        }
    }
    let images: Vec<Vec<(usize, Poly)>> = par_map(&jobs, |(i, b)| {
        syz.iter()
            .enumerate()
            .filter(|(_, col)| !col[*i].is_zero())
            .map(|(k, col)| (k, gb.normal_form(&col[*i].mul(b))))
            .filter(|(_, p)| !p.is_zero())
            .collect()
    });
    let mut index: HashMap<(usize, Mono), usize> = HashMap::new();
    let cols: Vec<SparseVec> = images
        .iter()
        .map(|parts| {
            let mut v: SparseVec = Vec::new();
            for (k, p) in parts {
                for (m, c) in p.terms() {
                    let next = index.len();
                    let row = *index.entry((*k, *m)).or_insert(next);
                    v.push((row, c.clone()));
                }
            }
            v.sort_by_key(|e| e.0);
            v
        })
        .collect();
    let rk = rank(ring.field(), &cols);
    Ok(NormalSheaf { h0_normal: jobs.len() - rk, t_used: gamma.t(), unknowns: jobs.len(), rank: rk })
}

/// `h^0(N_X)` against the dimension of the family of doublings.
#[derive(Clone, Debug, Serialize)]
pub struct TangentReport {
    pub r: usize,
    pub n: usize,
    pub genus: i64,
    pub h0_normal: usize,
    pub family_dimension: i64,
    pub smooth_point_evidence: bool,
    pub t_used: u32,
}

pub fn tangent_vs_family(x: &DoubleCurve) -> Result<TangentReport> {
    let ns = h0_normal_sheaf(&x.ideal)?;
    let genus = x.genus()?;
    let fam = crate::invariants::family_dimension(x.mu.r, genus, x.mu.n);
    Ok(TangentReport {
        r: x.mu.r,
        n: x.mu.n,
        genus,
        h0_normal: ns.h0_normal,
        family_dimension: fam,
        smooth_point_evidence: ns.h0_normal as i64 == fam,
        t_used: ns.t_used,
    })
}

/// The section `ξ ∈ H^0(O_X(2-b))` of the odd-genus double conic with
/// `x^{b-1} ξ = w` and `z^b ξ = xz - y²`.
#[derive(Clone, Debug, Serialize)]
pub struct XiReport {
    pub b: u32,
    pub degree: i64,
    pub dim: usize,
    pub exists: bool,
    pub unique: bool,
}

pub fn xi_check(b: u32) -> Result<XiReport> {
    if b < 2 {
        return Err(Error::Input("ξ is a non-polynomial section only for b >= 2".into()));
    }
    let ideal = crate::doubling::conic_odd_ideal(b)?;
    let ring = ideal.ring().clone();
    let d = 2 - b as i64;
    let gamma = GammaSections::new(&ideal, d, 2)?;
    let basis = gamma.degree(d)?.basis.clone();
    let (x, z, w) = (ring.var(0), ring.var(2), ring.var(3));
    let q = ring.parse("x*z - y^2")?;
    let lt = gamma.ell().pow(gamma.t());
    let gb = ideal.gb();
    let mut index: HashMap<(usize, Mono), usize> = HashMap::new();
    let mut vec_of = |parts: [Poly; 2]| -> SparseVec {
        let mut v = Vec::new();
        for (k, p) in parts.iter().enumerate() {
            for (m, c) in gb.normal_form(p).terms() {
                let next = index.len();
                v.push((*index.entry((k, *m)).or_insert(next), c.clone()));
            }
        }
        v.sort_by_key(|e| e.0);
        v
    };
    let mut cols: Vec<SparseVec> =
        basis.iter().map(|s| vec_of([x.pow(b - 1).mul(s), z.pow(b).mul(s)])).collect();
    let rhs = vec_of([lt.mul(&w), lt.mul(&q)]);
    let homog = column_relations(ring.field(), &cols);
    cols.push(rhs);
    let rel = column_relations(ring.field(), &cols);
    let last = basis.len();
    let exists = rel.iter().any(|v| v.iter().any(|(k, c)| *k == last && !c.is_zero()));
    Ok(XiReport { b, degree: d, dim: basis.len(), exists, unique: exists && homog.is_empty() })
}
