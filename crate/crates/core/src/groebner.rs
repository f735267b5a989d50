//! Division, Buchberger's algorithm and reduced Gröbner bases for
//! (weighted-)homogeneous ideals.
//!
//! Pairs are processed degree by degree, so a partially completed run is a
//! Gröbner basis up to the degree reached. Redundant pairs are discarded with
//! the Gebauer–Möller installation of the product and chain criteria.
//! Over the rationals reductions are fraction-free and intermediate
//! polynomials are kept primitive.

use std::collections::BTreeMap;

use crate::polyring::{Ctx, Field, Mono, Poly, Scalar};
use crate::{Error, Result};

/// A reduced Gröbner basis: monic, inter-reduced, sorted by ascending
/// leading monomial. It is the canonical representative of its ideal.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ctx: Ctx,
    polys: Vec<Poly>,
    lms: Vec<Mono>,
    transform: Option<Vec<Vec<Poly>>>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, o: &Self) -> bool {
        self.ctx == o.ctx && self.polys == o.polys
    }
}

impl Eq for GroebnerBasis {}

impl GroebnerBasis {
    pub fn ctx(&self) -> Ctx {
        self.ctx
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn leading_monomials(&self) -> &[Mono] {
        &self.lms
    }

    /// True for the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant()
    }

    /// Row `k` expresses basis element `k` as `Σ_i transform[k][i] · gens[i]`
    /// (present only when tracking was requested).
    pub fn transform(&self) -> Option<&[Vec<Poly>]> {
        self.transform.as_deref()
    }

    /// Remainder of `f` modulo the basis.
    pub fn normal_form(&self, f: &Poly) -> Poly {
        reduce_field(f, &self.polys, &self.lms)
    }

    /// Division with quotients: `f = Σ q_k g_k + r`.
    pub fn divide(&self, f: &Poly) -> (Poly, Vec<Poly>) {
        divide(f, &self.polys)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Generators of the initial ideal (the leading monomials).
    pub fn initial_monomials(&self) -> Vec<Mono> {
        self.lms.clone()
    }

    /// Largest degree of a basis element.
    pub fn max_degree(&self) -> u32 {
        self.polys.iter().map(|p| p.wdeg()).max().unwrap_or(0)
    }

    /// True when `m` lies in the initial ideal.
    pub fn is_leading(&self, m: &Mono) -> bool {
        self.lms.iter().any(|l| l.divides(m))
    }
}

/// Index of the first monomial in `lms` dividing `m`.
#[inline]
fn find_divisor(lms: &[Mono], m: &Mono) -> Option<usize> {
    lms.iter().position(|l| l.divides(m))
}

/// Full reduction with field division (reducers need not be monic).
fn reduce_field(f: &Poly, reducers: &[Poly], lms: &[Mono]) -> Poly {
    let fld = f.field();
    let mut p = f.clone();
    let mut pos = 0;
    while pos < p.len() {
        let (m, c) = p.terms()[pos].clone();
        match find_divisor(lms, &m) {
            Some(k) => {
                let g = &reducers[k];
                let q = m.div(&g.lm());
                let coef = fld.neg(&fld.div(&c, g.lc()));
                p = p.add_mul_term(&coef, &q, g);
            }
            None => pos += 1,
        }
    }
    p
}

/// Multivariate division by an ordered list of divisors. Always reduces the
/// leading reducible term with the first divisor whose leading monomial
/// divides it.
pub fn divide(f: &Poly, divisors: &[Poly]) -> (Poly, Vec<Poly>) {
    let ctx = f.ctx();
    let fld = ctx.field;
    let lms: Vec<Mono> = divisors.iter().map(|g| g.lm()).collect();
    let mut quots: Vec<Vec<(Mono, Scalar)>> = vec![Vec::new(); divisors.len()];
    let mut p = f.clone();
    let mut pos = 0;
    while pos < p.len() {
        let (m, c) = p.terms()[pos].clone();
        match find_divisor(&lms, &m) {
            Some(k) => {
                let g = &divisors[k];
                let q = m.div(&g.lm());
                let coef = fld.div(&c, g.lc());
                quots[k].push((q, coef.clone()));
                p = p.add_mul_term(&fld.neg(&coef), &q, g);
            }
            None => pos += 1,
        }
    }
    let quots = quots.into_iter().map(|t| Poly::from_terms(ctx, t)).collect();
    (p, quots)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
}

/// State of a degree-by-degree Buchberger run. Elements can be added at any
/// time; [`Buchberger::compute_to`] completes the basis up to a degree.
#[derive(Clone, Debug)]
pub struct Buchberger {
    ctx: Ctx,
    basis: Vec<Poly>,
    lms: Vec<Mono>,
    active: Vec<bool>,
    /// key: (weighted degree of lcm, j, i)
    pairs: BTreeMap<(u32, usize, usize), Pair>,
    pending: BTreeMap<(u32, usize), Poly>,
    pending_reps: BTreeMap<(u32, usize), Vec<Poly>>,
    reps: Option<Vec<Vec<Poly>>>,
    ngens: usize,
    counter: usize,
}

impl Buchberger {
    pub fn new(ctx: Ctx) -> Buchberger {
        Buchberger {
            ctx,
            basis: Vec::new(),
            lms: Vec::new(),
            active: Vec::new(),
            pairs: BTreeMap::new(),
            pending: BTreeMap::new(),
            pending_reps: BTreeMap::new(),
            reps: None,
            ngens: 0,
            counter: 0,
        }
    }

    /// Starts a run that records how every basis element is built from the
    /// `ngens` generators passed to [`Buchberger::add_generators`].
    pub fn with_tracking(ctx: Ctx, ngens: usize) -> Buchberger {
        let mut b = Buchberger::new(ctx);
        b.reps = Some(Vec::new());
        b.ngens = ngens;
        b
    }

    pub fn ctx(&self) -> Ctx {
        self.ctx
    }

    /// Queues homogeneous generators.
    pub fn add_generators(&mut self, gens: &[Poly]) -> Result<()> {
        for g in gens {
            if g.ctx() != self.ctx {
                return Err(Error::Input("generator from a different ring".into()));
            }
            if !g.is_homogeneous() {
                return Err(Error::Input("Buchberger needs homogeneous generators".into()));
            }
            let idx = self.counter;
            self.counter += 1;
            if g.is_zero() {
                continue;
            }
            let d = g.wdeg();
            if self.reps.is_some() {
                let mut e = vec![Poly::zero(self.ctx); self.ngens];
                assert!(idx < self.ngens, "more generators than announced");
                e[idx] = Poly::constant(self.ctx, Scalar::ONE);
                self.pending_reps.insert((d, idx), e);
            }
            self.pending.insert((d, idx), g.clone());
        }
        Ok(())
    }

    /// Active basis elements (a Gröbner basis through the completed degree).
    pub fn current(&self) -> Vec<&Poly> {
        self.basis.iter().zip(&self.active).filter(|(_, a)| **a).map(|(p, _)| p).collect()
    }

    fn active_reducers(&self) -> (Vec<usize>, Vec<Mono>) {
        let idx: Vec<usize> = (0..self.basis.len()).filter(|&k| self.active[k]).collect();
        let lms = idx.iter().map(|&k| self.lms[k]).collect();
        (idx, lms)
    }

    /// Normal form modulo the current basis (field arithmetic).
    pub fn reduce(&self, f: &Poly) -> Poly {
        let (idx, lms) = self.active_reducers();
        let reducers: Vec<Poly> = idx.iter().map(|&k| self.basis[k].clone()).collect();
        reduce_field(f, &reducers, &lms)
    }

    /// Fraction-free full reduction of `f` (with its representation).
    fn reduce_internal(&self, f: Poly, mut rep: Option<Vec<Poly>>) -> (Poly, Option<Vec<Poly>>) {
        let fld = self.ctx.field;
        let (idx, lms) = self.active_reducers();
        let mut p = f;
        let mut pos = 0;
        while pos < p.len() {
            let (m, c) = p.terms()[pos].clone();
            let Some(k) = find_divisor(&lms, &m) else {
                pos += 1;
                continue;
            };
            let g = &self.basis[idx[k]];
            let q = m.div(&g.lm());
            let lg = g.lc();
            let (sf, coef) = match fld {
                Field::Prime(_) => (Scalar::ONE, fld.neg(&fld.div(&c, lg))),
                Field::Rational => {
                    if lg.is_one() {
                        (Scalar::ONE, c.neg())
                    } else if *lg == Scalar::from_int(-1) {
                        (Scalar::ONE, c.clone())
                    } else {
                        // x * lg == y * c: scale p by y, subtract x * q * g
                        let (x, y) = coprime_multipliers(lg, &c);
                        (y, x.neg())
                    }
                }
            };
            if !sf.is_one() {
                p = p.scale(&sf);
                if let Some(r) = rep.as_mut() {
                    for x in r.iter_mut() {
                        *x = x.scale(&sf);
                    }
                }
            }
            p = p.add_mul_term(&coef, &q, g);
            if let (Some(r), Some(reps)) = (rep.as_mut(), self.reps.as_ref()) {
                let gr = &reps[idx[k]];
                for (x, y) in r.iter_mut().zip(gr) {
                    *x = x.add_mul_term(&coef, &q, y);
                }
            }
            if matches!(fld, Field::Rational) && p.terms().iter().any(|t| matches!(t.1, Scalar::Big(_))) {
                let (pp, factor) = primitive_with_factor(&p);
                p = pp;
                if let Some(r) = rep.as_mut() {
                    for x in r.iter_mut() {
                        *x = x.scale(&factor);
                    }
                }
            }
        }
        let (pp, factor) = primitive_with_factor(&p);
        if let Some(r) = rep.as_mut() {
            for x in r.iter_mut() {
                *x = x.scale(&factor);
            }
        }
        (pp, rep)
    }

    fn spoly(&self, pr: &Pair) -> (Poly, Option<Vec<Poly>>) {
        let f = &self.basis[pr.i];
        let g = &self.basis[pr.j];
        let a = pr.lcm.div(&f.lm());
        let b = pr.lcm.div(&g.lm());
        let fld = self.ctx.field;
        let (cf, cg) = match fld {
            Field::Prime(_) => (fld.inv(f.lc()), fld.neg(&fld.inv(g.lc()))),
            Field::Rational => {
                let (x, y) = coprime_multipliers(f.lc(), g.lc());
                // x * lc(f) == y * lc(g)
                (x, y.neg())
            }
        };
        let s = f.mul_term(&a, &cf).add_mul_term(&cg, &b, g);
        let rep = self.reps.as_ref().map(|reps| {
            reps[pr.i]
                .iter()
                .zip(&reps[pr.j])
                .map(|(x, y)| x.mul_term(&a, &cf).add_mul_term(&cg, &b, y))
                .collect()
        });
        (s, rep)
    }

    /// Gebauer–Möller update after appending `h`.
    fn install(&mut self, h: Poly, rep: Option<Vec<Poly>>) {
        let k = self.basis.len();
        let lh = h.lm();
        let mask = self.ctx.order.zero_mask;
        // candidate pairs (i, k)
        let cands: Vec<(usize, Mono, bool)> = (0..k)
            .filter(|&i| self.active[i])
            .map(|i| (i, self.lms[i].lcm(&lh), self.lms[i].coprime(&lh)))
            .collect();
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            if cands[a].2 {
                continue;
            }
            let la = cands[a].1;
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                let lb = cands[b].1;
                if lb.divides(&la) && (lb != la || b > a || cands[b].2) {
                    // a strictly smaller lcm, or an equal lcm that survives
                    keep[a] = false;
                    break;
                }
            }
        }
        // old pairs hit by the chain criterion
        let lms = &self.lms;
        self.pairs.retain(|_, p| {
            if !lh.divides(&p.lcm) {
                return true;
            }
            let li = lms[p.i].lcm(&lh);
            let lj = lms[p.j].lcm(&lh);
            li == p.lcm || lj == p.lcm
        });
        for (a, (i, l, coprime)) in cands.into_iter().enumerate() {
            if keep[a] && !coprime {
                self.pairs.insert((l.wdeg(mask), k, i), Pair { i, j: k, lcm: l });
            }
        }
        for i in 0..k {
            if self.active[i] && lh.divides(&self.lms[i]) {
                self.active[i] = false;
            }
        }
        self.basis.push(h);
        self.lms.push(lh);
        self.active.push(true);
        if let (Some(reps), Some(r)) = (self.reps.as_mut(), rep) {
            reps.push(r);
        }
    }

    fn next_degree(&self) -> Option<u32> {
        let a = self.pending.keys().next().map(|k| k.0);
        let b = self.pairs.keys().next().map(|k| k.0);
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    /// Processes every generator and pair of degree `<= limit` (all of them
    /// when `limit` is `None`).
    pub fn compute_to(&mut self, limit: Option<u32>) {
        while let Some(d) = self.next_degree() {
            if limit.is_some_and(|l| d > l) {
                break;
            }
            let gens: Vec<(u32, usize)> = self.pending.range((d, 0)..(d + 1, 0)).map(|(k, _)| *k).collect();
            for key in gens {
                let g = self.pending.remove(&key).unwrap();
                let rep = self.pending_reps.remove(&key);
                let (r, rep) = self.reduce_internal(g, rep);
                if !r.is_zero() {
                    self.install(r, rep);
                }
            }
            while let Some((&key, _)) = self.pairs.iter().next() {
                if key.0 != d {
                    break;
                }
                let pr = self.pairs.remove(&key).unwrap();
                let (s, rep) = self.spoly(&pr);
                let (r, rep) = self.reduce_internal(s, rep);
                if !r.is_zero() {
                    self.install(r, rep);
                }
            }
        }
    }

    pub fn is_complete(&self) -> bool {
        self.pairs.is_empty() && self.pending.is_empty()
    }

    /// Completes the run and returns the reduced basis.
    pub fn finish(mut self) -> GroebnerBasis {
        self.compute_to(None);
        self.reduced_basis()
    }

    /// Reduced basis of the current state (complete only after
    /// [`Buchberger::compute_to`] with `None`).
    pub fn reduced_basis(&self) -> GroebnerBasis {
        let ctx = self.ctx;
        let fld = ctx.field;
        let ord = ctx.order;
        let mut idx: Vec<usize> = (0..self.basis.len()).filter(|&k| self.active[k]).collect();
        // minimal basis: drop elements whose lm is divisible by another's
        idx.sort_by(|&a, &b| ord.cmp(&self.lms[a], &self.lms[b]).then(a.cmp(&b)));
        let mut minimal: Vec<usize> = Vec::new();
        for &k in &idx {
            if !minimal.iter().any(|&j| self.lms[j].divides(&self.lms[k])) {
                minimal.push(k);
            }
        }
        let mut polys: Vec<Poly> = minimal.iter().map(|&k| self.basis[k].monic()).collect();
        let mut reps: Option<Vec<Vec<Poly>>> = self.reps.as_ref().map(|reps| {
            minimal
                .iter()
                .map(|&k| {
                    let inv = fld.inv(self.basis[k].lc());
                    reps[k].iter().map(|x| x.scale(&inv)).collect()
                })
                .collect()
        });
        let lms: Vec<Mono> = polys.iter().map(|p| p.lm()).collect();
        // tail reduction, smallest first so later elements see reduced ones
        for a in 0..polys.len() {
            let mut p = polys[a].clone();
            let mut pos = 1;
            while pos < p.len() {
                let (m, c) = p.terms()[pos].clone();
                let hit = lms.iter().enumerate().position(|(b, l)| b != a && l.divides(&m));
                match hit {
                    Some(b) => {
                        let q = m.div(&lms[b]);
                        let coef = fld.neg(&c);
                        p = p.add_mul_term(&coef, &q, &polys[b]);
                        if let Some(r) = reps.as_mut() {
                            let rb = r[b].clone();
                            for (x, y) in r[a].iter_mut().zip(&rb) {
                                *x = x.add_mul_term(&coef, &q, y);
                            }
                        }
                    }
                    None => pos += 1,
                }
            }
            polys[a] = p;
        }
        GroebnerBasis { ctx, polys, lms, transform: reps }
    }
}

/// `(x, y)` with `x * a == y * b`, both as small as possible (rationals with
/// integer values expected; falls back to field division otherwise).
fn coprime_multipliers(a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
    if a.is_integer() && b.is_integer() {
        use num_integer::Integer;
        let (na, nb) = (a.numer(), b.numer());
        let g = na.gcd(&nb);
        let x = Scalar::from_big(num_rational::BigRational::from_integer(&nb / &g));
        let y = Scalar::from_big(num_rational::BigRational::from_integer(&na / &g));
        (x, y)
    } else {
        (Scalar::ONE, a.div(b))
    }
}

fn primitive_with_factor(p: &Poly) -> (Poly, Scalar) {
    if p.is_zero() {
        return (p.clone(), Scalar::ONE);
    }
    let q = p.primitive();
    let f = q.lc().clone();
    let factor = p.field().div(&f, p.lc());
    (q, factor)
}

/// Reduced Gröbner basis of the ideal generated by `gens` (all in one ring,
/// homogeneous).
pub fn buchberger(ctx: Ctx, gens: &[Poly]) -> Result<GroebnerBasis> {
    let mut b = Buchberger::new(ctx);
    b.add_generators(gens)?;
    Ok(b.finish())
}

/// Same as [`buchberger`] but the result carries the transformation matrix
/// expressing each basis element in terms of `gens`.
pub fn buchberger_tracked(ctx: Ctx, gens: &[Poly]) -> Result<GroebnerBasis> {
    let mut b = Buchberger::with_tracking(ctx, gens.len());
    b.add_generators(gens)?;
    Ok(b.finish())
}

/// Minimal generators of a monomial ideal.
pub fn minimalize_monomials(mut ms: Vec<Mono>) -> Vec<Mono> {
    ms.sort_by(|a, b| a.deg().cmp(&b.deg()).then(crate::polyring::MonoOrder::DEGREVLEX.cmp(b, a)));
    ms.dedup();
    let mut out: Vec<Mono> = Vec::new();
    for m in ms {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Monomials of degree `d` in `nvars` variables divisible by none of `lms`
/// (the standard monomials of a monomial ideal), in descending degrevlex
/// order. Branches are cut as soon as a partial monomial is divisible.
pub fn standard_monomials(lms: &[Mono], nvars: usize, d: u32) -> Vec<Mono> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, lms: &[Mono], out: &mut Vec<Mono>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left;
            let m = Mono::from_exps(cur);
            if !lms.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            cur[i] = 0;
            return;
        }
        for k in (0..=left).rev() {
            cur[i] = k;
            let partial = Mono::from_exps(cur);
            if k > 0 && lms.iter().any(|l| l.divides(&partial)) {
                continue;
            }
            rec(i + 1, left - k, cur, lms, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 && !lms.iter().any(|l| l.divides(&Mono::ONE)) {
            out.push(Mono::ONE);
        }
        return out;
    }
    let mut cur = vec![0u32; nvars];
    rec(0, d, &mut cur, lms, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Ring;

    fn r3() -> Ring {
        Ring::projective(3, Field::Rational)
    }

    fn gb(r: &Ring, gens: &[&str]) -> GroebnerBasis {
        let g: Vec<Poly> = gens.iter().map(|s| r.parse(s).unwrap()).collect();
        buchberger(r.ctx, &g).unwrap()
    }

    #[test]
    fn principal_monomial() {
        let r = r3();
        let g = gb(&r, &["x0"]);
        assert_eq!(g.polys(), &[r.parse("x0").unwrap()]);
    }

    #[test]
    fn twisted_cubic_initial_ideal() {
        let r = r3();
        let g = gb(&r, &["x1^2 - x0*x2", "x1*x2 - x0*x3", "x2^2 - x1*x3"]);
        let mut lms = g.initial_monomials();
        lms.sort_by(|a, b| r.order().cmp(b, a));
        let expect: Vec<Mono> = ["x1^2", "x1*x2", "x2^2"].iter().map(|s| r.parse(s).unwrap().lm()).collect();
        assert_eq!(lms, expect);
    }

    #[test]
    fn basis_is_idempotent_and_contains_generators() {
        let r = r3();
        let gens: Vec<Poly> = ["x0*x1 - x2^2", "x1^2 - x0*x3", "x0^2 + x1*x3"].iter().map(|s| r.parse(s).unwrap()).collect();
        let b = buchberger(r.ctx, &gens).unwrap();
        for g in &gens {
            assert!(b.contains(g));
        }
        let again = buchberger(r.ctx, b.polys()).unwrap();
        assert_eq!(again, b);
        assert!(!b.contains(&r.parse("x0*x1").unwrap()));
    }

    #[test]
    fn non_unit_leading_coefficients() {
        let r = r3();
        let g = gb(&r, &["x0*x2 - x1^2", "x3^2", "-x0 - 3*x1 + x2 - 2*x3", "-2*x1 + 3*x2"]);
        assert!(g.contains(&r.parse("2*x1 - 3*x2").unwrap()));
        assert!(!g.is_unit());
        let h = gb(&r, &["2*x0 + 3*x1", "3*x0^2 - x1*x2"]);
        assert!(h.contains(&r.parse("27*x1^2 - 4*x1*x2").unwrap()));
    }

    #[test]
    fn normal_form_disjoint_support() {
        let r = r3();
        let g = gb(&r, &["x3"]);
        let f = r.parse("x0*x2 - x1^2").unwrap();
        assert_eq!(g.normal_form(&f), f);
    }

    #[test]
    fn division_identity() {
        let r = r3();
        let divs: Vec<Poly> = ["x1^2 - x0*x2", "x1*x2 - x0*x3", "x2^2 - x1*x3"]
            .iter()
            .map(|s| r.parse(s).unwrap())
            .collect();
        let f = r.parse("x1^3*x2 + 5*x0*x3^3 - x2^4").unwrap();
        let (rem, q) = divide(&f, &divs);
        let mut acc = rem.clone();
        for (qi, gi) in q.iter().zip(&divs) {
            acc = &acc + &(qi * gi);
        }
        assert_eq!(acc, f);
        for t in rem.terms() {
            assert!(divs.iter().all(|g| !g.lm().divides(&t.0)));
        }
    }

    #[test]
    fn tracked_transform_reproduces_basis() {
        let r = r3();
        let gens: Vec<Poly> = ["x0*x1 - x2^2", "x1^2 - x0*x3", "x0^2 + x1*x3"].iter().map(|s| r.parse(s).unwrap()).collect();
        let g = buchberger_tracked(r.ctx, &gens).unwrap();
        let t = g.transform().unwrap();
        for (p, row) in g.polys().iter().zip(t) {
            let mut acc = r.zero();
            for (c, gi) in row.iter().zip(&gens) {
                acc = &acc + &(c * gi);
            }
            assert_eq!(&acc, p);
        }
        let plain = buchberger(r.ctx, &gens).unwrap();
        assert_eq!(plain, g);
    }

    #[test]
    fn rejects_inhomogeneous() {
        let r = r3();
        let f = r.parse("x0 + x1^2").unwrap();
        assert!(buchberger(r.ctx, &[f]).is_err());
    }
}
