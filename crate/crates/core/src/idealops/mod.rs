//! Homogeneous ideals: construction, Gröbner-basis backed membership and
//! equality, sums, products, elimination, intersection, quotients,
//! saturation and Hilbert data.

mod elim;
pub mod hilbert;

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::groebner::{buchberger, divide, GroebnerBasis};
use crate::polyring::{Field, MonoOrder, Poly, Ring, Scalar};
use crate::{Error, Result};

pub use elim::{eliminate, intersect, quotient, quotient_by, saturate, saturate_by};
pub use hilbert::{format_qpoly, monomial_numerator, qpoly_eval, HilbertData, HilbertSeries, QPoly};

/// A homogeneous ideal with a lazily computed reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Poly>,
    gb: OnceLock<GroebnerBasis>,
    hilbert: OnceLock<HilbertData>,
}

impl Ideal {
    /// Builds an ideal; zero generators are dropped, scalar duplicates
    /// removed and the list sorted by (degree, leading monomial descending).
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Result<Ideal> {
        for g in &gens {
            if g.ctx() != ring.ctx {
                return Err(Error::Input("generator does not belong to the ring".into()));
            }
            if !g.is_homogeneous() {
                return Err(Error::Input(format!("generator `{}` is not homogeneous", ring.fmt_poly(g))));
            }
        }
        let ord = ring.order();
        let mut gens: Vec<Poly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        gens.sort_by(|a, b| {
            a.wdeg().cmp(&b.wdeg()).then_with(|| {
                for (x, y) in a.terms().iter().zip(b.terms()) {
                    let c = ord.cmp(&y.0, &x.0);
                    if c != std::cmp::Ordering::Equal {
                        return c;
                    }
                }
                a.len().cmp(&b.len())
            })
        });
        let mut out: Vec<Poly> = Vec::with_capacity(gens.len());
        for g in gens {
            let m = g.monic();
            if !out.iter().any(|h| h.monic() == m) {
                out.push(g);
            }
        }
        Ok(Ideal { ring: ring.clone(), gens: out, gb: OnceLock::new(), hilbert: OnceLock::new() })
    }

    /// Parses generators written in the text grammar.
    pub fn parse(ring: &Ring, gens: &[&str]) -> Result<Ideal> {
        let g = gens.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, g)
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![]).unwrap()
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![ring.one()]).unwrap()
    }

    /// The irrelevant ideal `⟨x_0, ..., x_n⟩` (variables of weight 1 only).
    pub fn maximal(ring: &Ring) -> Ideal {
        let mask = ring.order().zero_mask;
        let vars = (0..ring.nvars()).filter(|i| mask & (1 << i) == 0).map(|i| ring.var(i)).collect();
        Ideal::new(ring, vars).unwrap()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    /// The reduced Gröbner basis (computed once).
    pub fn gb(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| buchberger(self.ring.ctx, &self.gens).expect("generators are homogeneous"))
    }

    /// Installs a basis known to be correct (for example from a previous
    /// computation in the same ring).
    pub fn with_gb(self, gb: GroebnerBasis) -> Ideal {
        let cell = OnceLock::new();
        let _ = cell.set(gb);
        Ideal { gb: cell, ..self }
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gb().is_unit()
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.gb().contains(f)
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// Equality of ideals via canonical bases.
    pub fn equals(&self, other: &Ideal) -> bool {
        self.ring == other.ring && self.gb() == other.gb()
    }

    fn same_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::Input("ideals live in different rings".into()));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a * b);
            }
        }
        Ideal::new(&self.ring, g)
    }

    /// `I^k`, generated by the `k`-fold products of generators.
    pub fn power(&self, k: u32) -> Ideal {
        if k == 0 {
            return Ideal::unit(&self.ring);
        }
        // multisets of generator indices, so every product appears once
        let n = self.gens.len();
        let mut out = Vec::new();
        let mut idx = vec![0usize; k as usize];
        if n == 0 {
            return Ideal::zero(&self.ring);
        }
        loop {
            let mut p = self.ring.one();
            for &i in &idx {
                p = &p * &self.gens[i];
            }
            out.push(p);
            // next non-decreasing index tuple
            let mut pos = idx.len();
            loop {
                if pos == 0 {
                    return Ideal::new(&self.ring, out).unwrap();
                }
                pos -= 1;
                if idx[pos] + 1 < n {
                    let v = idx[pos] + 1;
                    for slot in &mut idx[pos..] {
                        *slot = v;
                    }
                    break;
                }
            }
        }
    }

    /// Ideal generated by `f * gens`.
    pub fn mul_poly(&self, f: &Poly) -> Ideal {
        Ideal::new(&self.ring, self.gens.iter().map(|g| g * f).collect()).unwrap()
    }

    /// Minimal homogeneous generators, chosen greedily from the current ones
    /// in their listed order.
    pub fn minimalize(&self) -> Ideal {
        let mut bb = crate::groebner::Buchberger::new(self.ring.ctx);
        let mut kept = Vec::new();
        for g in &self.gens {
            bb.compute_to(Some(g.wdeg()));
            if bb.reduce(g).is_zero() {
                continue;
            }
            bb.add_generators(std::slice::from_ref(g)).unwrap();
            kept.push(g.clone());
        }
        let mut out = Ideal::new(&self.ring, kept).unwrap();
        if let Some(gb) = self.gb.get() {
            out = out.with_gb(gb.clone());
        }
        out
    }

    /// Applies a ring map `x_i ↦ images[i]` (images homogeneous linear
    /// forms in `target`).
    pub fn map(&self, target: &Ring, images: &[Poly]) -> Result<Ideal> {
        Ideal::new(target, self.gens.iter().map(|g| g.substitute(images)).collect())
    }

    /// The same ideal in another order (and possibly field) of the same
    /// variables.
    pub fn recast(&self, ring: &Ring) -> Result<Ideal> {
        if ring.nvars() != self.ring.nvars() {
            return Err(Error::Input("variable count mismatch".into()));
        }
        Ideal::new(ring, self.gens.iter().map(|g| g.recast(ring.ctx)).collect())
    }

    /// Hilbert series, function and polynomial of `R/I`.
    pub fn hilbert(&self) -> Result<&HilbertData> {
        if self.ring.order().zero_mask != 0 {
            return Err(Error::Input("Hilbert data needs a standard grading".into()));
        }
        Ok(self.hilbert.get_or_init(|| {
            let lms = self.gb().initial_monomials();
            let n = self.ring.nvars();
            HilbertData::from_series(HilbertSeries { nvars: n, numerator: monomial_numerator(&lms, n) })
        }))
    }

    /// `dim_K (R/I)_d`.
    pub fn hilbert_function(&self, d: i64) -> Result<i128> {
        Ok(self.hilbert()?.value(d))
    }

    pub fn krull_dim(&self) -> Result<usize> {
        Ok(self.hilbert()?.series.krull_dim())
    }

    /// Largest generator degree.
    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(|g| g.wdeg()).max().unwrap_or(0)
    }

    /// Hilbert polynomial with the window consistency check (start at the
    /// largest generator degree plus two).
    pub fn hilbert_checked(&self, cap: i64) -> Result<&HilbertData> {
        let h = self.hilbert()?;
        let d0 = self.gb().max_degree() as i64 + 2;
        h.window_check(d0, cap.max(d0 + 12))?;
        Ok(h)
    }

    /// `Δ²` of the Hilbert function for a curve (its `h`-polynomial).
    pub fn second_difference(&self) -> Result<Vec<i64>> {
        let h = self.hilbert()?;
        if h.series.krull_dim() != 2 {
            return Err(Error::Input("second difference is only defined here for curves".into()));
        }
        Ok(h.series.h_polynomial().into_iter().map(|x| x as i64).collect())
    }

    /// Hilbert function of the Artinian reduction `R/(I + ⟨ℓ1, ℓ2⟩)` for two
    /// random linear forms with coefficients in `-3..=3`, reseeding up to
    /// five times until the reduction is Artinian.
    pub fn h_vector(&self, seed: u64) -> Result<Vec<i64>> {
        if self.krull_dim()? != 2 {
            return Err(Error::Input("h-vector requested for a non-curve".into()));
        }
        for attempt in 0..5u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
            let forms: Vec<Poly> = (0..2).map(|_| random_linear_form(&self.ring, &mut rng)).collect();
            if forms.iter().any(|f| f.is_zero()) {
                continue;
            }
            let mut g = self.gens.clone();
            g.extend(forms);
            let j = Ideal::new(&self.ring, g)?;
            let h = j.hilbert()?;
            if h.series.krull_dim() != 0 {
                continue;
            }
            let mut out: Vec<i64> = (0..).map(|d| h.value(d) as i64).take_while(|&v| v != 0).collect();
            if out.is_empty() {
                out.push(0);
            }
            return Ok(out);
        }
        Err(Error::Invariant("no Artinian reduction found after 5 seeds".into()))
    }

    /// True when `I : m = I`.
    pub fn is_saturated(&self) -> Result<bool> {
        let s = saturate(self)?;
        Ok(s.equals(self))
    }

    /// Generators printed in the text grammar.
    pub fn gen_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| self.ring.fmt_poly(g)).collect()
    }

    pub fn to_doc(&self) -> IdealDoc {
        IdealDoc {
            vars: self.ring.names().to_vec(),
            field: self.ring.field().tag(),
            order: self.ring.order().name(),
            generators: self.gen_strings(),
        }
    }

    pub fn from_doc(doc: &IdealDoc) -> Result<Ideal> {
        let field = Field::parse_tag(&doc.field).ok_or_else(|| Error::Input(format!("unknown field `{}`", doc.field)))?;
        let order = MonoOrder::parse_name(&doc.order).ok_or_else(|| Error::Input(format!("unknown order `{}`", doc.order)))?;
        if doc.vars.is_empty() || doc.vars.len() > crate::polyring::MAX_VARS {
            return Err(Error::Input("bad variable list".into()));
        }
        let ring = Ring::new(doc.vars.clone(), field, order);
        let gens = doc.generators.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&ring, gens)
    }
}

/// Ideal JSON document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealDoc {
    pub vars: Vec<String>,
    pub field: String,
    pub order: String,
    pub generators: Vec<String>,
}

/// A linear form with seeded coefficients in `-3..=3` over the weight-1
/// variables.
pub fn random_linear_form(ring: &Ring, rng: &mut impl Rng) -> Poly {
    let mask = ring.order().zero_mask;
    let mut f = ring.zero();
    for i in 0..ring.nvars() {
        if mask & (1 << i) != 0 {
            continue;
        }
        let c = rng.gen_range(-3i64..=3);
        if c != 0 {
            f = &f + &ring.var(i).scale(&ring.field().from_int(c));
        }
    }
    f
}

/// Exact division `f / g`, `None` if `g` does not divide `f`.
pub fn exact_div(f: &Poly, g: &Poly) -> Option<Poly> {
    let (r, q) = divide(f, std::slice::from_ref(g));
    r.is_zero().then(|| q.into_iter().next().unwrap())
}

/// `dim_K (R/I)_d` by dense linear algebra on the degree-`d` multiples of the
/// generators (independent of Gröbner bases).
pub fn hilbert_function_by_rank(ideal: &Ideal, d: u32) -> usize {
    use crate::linalg::Echelon;
    use crate::polyring::monomials_of_degree;
    let ring = ideal.ring();
    let n = ring.nvars();
    let basis = monomials_of_degree(n, d);
    let index: std::collections::HashMap<_, _> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut ech = Echelon::new(ring.field());
    for g in ideal.gens() {
        let gd = g.total_degree().unwrap_or(0);
        if gd > d {
            continue;
        }
        for m in monomials_of_degree(n, d - gd) {
            let p = g.mul_term(&m, &Scalar::ONE);
            let mut row: Vec<(usize, Scalar)> = p.terms().iter().map(|(m, c)| (index[m], c.clone())).collect();
            row.sort_by_key(|e| e.0);
            ech.insert(&row);
        }
    }
    basis.len() - ech.rank()
}

#[cfg(test)]
mod tests;
