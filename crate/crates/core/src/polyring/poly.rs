//! Sparse multivariate polynomials over a [`Field`].

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::monomial::{Mono, MonoOrder, MAX_VARS};
use super::scalar::{content, Field, Scalar};

/// The arithmetic context shared by every polynomial of a ring: variable
/// count, coefficient field and monomial order. It is `Copy`, so each
/// polynomial carries its own.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ctx {
    pub nvars: u8,
    pub field: Field,
    pub order: MonoOrder,
}

impl Ctx {
    pub fn new(nvars: usize, field: Field, order: MonoOrder) -> Ctx {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Ctx { nvars: nvars as u8, field, order }
    }

    pub fn n(&self) -> usize {
        self.nvars as usize
    }

    pub fn with_order(self, order: MonoOrder) -> Ctx {
        Ctx { order, ..self }
    }
}

/// A polynomial ring `K[x_0..x_{n-1}]` with printable variable names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    pub ctx: Ctx,
    names: Arc<Vec<String>>,
}

impl Ring {
    pub fn new(names: Vec<String>, field: Field, order: MonoOrder) -> Ring {
        Ring { ctx: Ctx::new(names.len(), field, order), names: Arc::new(names) }
    }

    /// `K[x0, ..., x{n}]` (that is, `n + 1` variables) with degrevlex.
    pub fn projective(n: usize, field: Field) -> Ring {
        Ring::new((0..=n).map(|i| format!("x{i}")).collect(), field, MonoOrder::DEGREVLEX)
    }

    /// The binary-form ring `K[t, u]` with `t > u`.
    pub fn binary(field: Field) -> Ring {
        Ring::new(vec!["t".into(), "u".into()], field, MonoOrder::DEGREVLEX)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn field(&self) -> Field {
        self.ctx.field
    }

    pub fn order(&self) -> MonoOrder {
        self.ctx.order
    }

    pub fn with_order(&self, order: MonoOrder) -> Ring {
        Ring { ctx: self.ctx.with_order(order), names: self.names.clone() }
    }

    pub fn with_field(&self, field: Field) -> Ring {
        Ring { ctx: Ctx { field, ..self.ctx }, names: self.names.clone() }
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self.ctx, i)
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.ctx)
    }

    pub fn one(&self) -> Poly {
        Poly::constant(self.ctx, Scalar::ONE)
    }

    pub fn constant(&self, c: Scalar) -> Poly {
        Poly::constant(self.ctx, c)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    /// Parses a polynomial written in the text grammar.
    pub fn parse(&self, s: &str) -> Result<Poly, crate::Error> {
        super::text::parse_poly(self, s)
    }

    pub fn fmt_poly(&self, f: &Poly) -> String {
        super::text::format_poly(self, f)
    }

    /// Appends variables with the given names at the end; `zero_weight`
    /// marks them as grading-weight 0.
    pub fn extend(&self, extra: &[&str], zero_weight: bool) -> Ring {
        let mut names: Vec<String> = self.names.to_vec();
        let base = names.len();
        names.extend(extra.iter().map(|s| s.to_string()));
        let mut order = self.ctx.order;
        if zero_weight {
            for i in 0..extra.len() {
                order.zero_mask |= 1 << (base + i);
            }
        }
        Ring::new(names, self.ctx.field, order)
    }
}

pub type Term = (Mono, Scalar);

/// A polynomial: terms strictly descending in the context's order, no zero
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ctx: Ctx,
    terms: Vec<Term>,
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names: Vec<String> = (0..self.ctx.n()).map(|i| format!("x{i}")).collect();
        let r = Ring::new(names, self.ctx.field, self.ctx.order);
        write!(f, "{}", r.fmt_poly(self))
    }
}

impl Poly {
    pub fn zero(ctx: Ctx) -> Poly {
        Poly { ctx, terms: Vec::new() }
    }

    pub fn constant(ctx: Ctx, c: Scalar) -> Poly {
        Poly::monomial(ctx, Mono::ONE, c)
    }

    pub fn monomial(ctx: Ctx, m: Mono, c: Scalar) -> Poly {
        let c = ctx.field.embed(&c);
        if c.is_zero() {
            Poly::zero(ctx)
        } else {
            Poly { ctx, terms: vec![(m, c)] }
        }
    }

    pub fn var(ctx: Ctx, i: usize) -> Poly {
        assert!(i < ctx.n(), "variable index out of range");
        Poly::monomial(ctx, Mono::var(i), Scalar::ONE)
    }

    /// Normalizes an arbitrary term list: embeds coefficients in the field,
    /// sorts, merges duplicates and drops zeros.
    pub fn from_terms(ctx: Ctx, mut terms: Vec<Term>) -> Poly {
        let ord = ctx.order;
        for t in terms.iter_mut() {
            t.1 = ctx.field.embed(&t.1);
        }
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = ctx.field.add(&last.1, &c);
                    if last.1.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            if !c.is_zero() {
                out.push((m, c));
            }
        }
        Poly { ctx, terms: out }
    }

    /// Trusts the caller that `terms` is already canonical.
    pub fn from_sorted(ctx: Ctx, terms: Vec<Term>) -> Poly {
        debug_assert!(terms.windows(2).all(|w| ctx.order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        Poly { ctx, terms }
    }

    #[inline]
    pub fn ctx(&self) -> Ctx {
        self.ctx
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.ctx.field
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading monomial; panics on zero.
    #[inline]
    pub fn lm(&self) -> Mono {
        self.terms[0].0
    }

    #[inline]
    pub fn lc(&self) -> &Scalar {
        &self.terms[0].1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Mono::ONE
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Largest total degree of a term, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.deg()).max()
    }

    /// The common (weighted) degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mask = self.ctx.order.zero_mask;
        let d = self.terms.first()?.0.wdeg(mask);
        if self.terms.iter().all(|t| t.0.wdeg(mask) == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Weighted degree of the leading term.
    pub fn wdeg(&self) -> u32 {
        self.lm().wdeg(self.ctx.order.zero_mask)
    }

    pub fn coeff(&self, m: &Mono) -> Scalar {
        let ord = self.ctx.order;
        match self.terms.binary_search_by(|t| ord.cmp(m, &t.0)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Scalar::ZERO,
        }
    }

    fn check(&self, o: &Poly) {
        assert!(self.ctx == o.ctx, "ring context mismatch: {:?} vs {:?}", self.ctx, o.ctx);
    }

    pub fn neg(&self) -> Poly {
        let f = self.ctx.field;
        Poly { ctx: self.ctx, terms: self.terms.iter().map(|(m, c)| (*m, f.neg(c))).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let c = self.ctx.field.embed(c);
        if c.is_zero() {
            return Poly::zero(self.ctx);
        }
        let f = self.ctx.field;
        Poly { ctx: self.ctx, terms: self.terms.iter().map(|(m, a)| (*m, f.mul(a, &c))).collect() }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Mono, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ctx);
        }
        let f = self.ctx.field;
        Poly {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), f.mul(a, c))).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Poly {
        Poly { ctx: self.ctx, terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect() }
    }

    /// `self + c * m * g`, merging two sorted term lists.
    pub fn add_mul_term(&self, c: &Scalar, m: &Mono, g: &Poly) -> Poly {
        self.check(g);
        if c.is_zero() || g.is_zero() {
            return self.clone();
        }
        let fld = self.ctx.field;
        let ord = self.ctx.order;
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        let a = &self.terms;
        let b = &g.terms;
        let mut bj: Option<Mono> = b.first().map(|t| t.0.mul(m));
        while i < a.len() || j < b.len() {
            let take = match (i < a.len(), bj) {
                (true, Some(bm)) => ord.cmp(&a[i].0, &bm),
                (true, None) => Ordering::Greater,
                (false, _) => Ordering::Less,
            };
            match take {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bj.unwrap(), fld.mul(c, &b[j].1)));
                    j += 1;
                    bj = b.get(j).map(|t| t.0.mul(m));
                }
                Ordering::Equal => {
                    let s = fld.add(&a[i].1, &fld.mul(c, &b[j].1));
                    if !s.is_zero() {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                    bj = b.get(j).map(|t| t.0.mul(m));
                }
            }
        }
        Poly { ctx: self.ctx, terms: out }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        self.add_mul_term(&Scalar::ONE, &Mono::ONE, o)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let m1 = self.ctx.field.neg(&Scalar::ONE);
        self.add_mul_term(&m1, &Mono::ONE, o)
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        self.check(o);
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.ctx);
        }
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        if small.len() == 1 {
            return big.mul_term(&small.terms[0].0, &small.terms[0].1);
        }
        let fld = self.ctx.field;
        let mut prods: Vec<Term> = Vec::with_capacity(self.len() * o.len());
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                prods.push((m1.mul(m2), fld.mul(c1, c2)));
            }
        }
        let ord = self.ctx.order;
        prods.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(prods.len());
        for (m, c) in prods {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = fld.add(&last.1, &c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|t| !t.1.is_zero());
        Poly { ctx: self.ctx, terms: out }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::constant(self.ctx, Scalar::ONE);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.ctx.field.inv(self.lc());
        self.scale(&inv)
    }

    /// Over the rationals: integer coefficients with gcd 1 and positive
    /// leading coefficient. Over `F_p`: monic.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        match self.ctx.field {
            Field::Prime(_) => self.monic(),
            Field::Rational => {
                let refs: Vec<&Scalar> = self.terms.iter().map(|t| &t.1).collect();
                let (g, l) = content(&refs);
                let mut factor = BigRational::new(l, g);
                if self.lc().is_negative() {
                    factor = -factor;
                }
                if factor.is_one() {
                    return self.clone();
                }
                let f = Scalar::from_big(factor);
                Poly {
                    ctx: self.ctx,
                    terms: self.terms.iter().map(|(m, c)| (*m, c.mul(&f))).collect(),
                }
            }
        }
    }

    /// Re-sorts the terms for another order on the same variables.
    pub fn with_order(&self, order: MonoOrder) -> Poly {
        let ctx = self.ctx.with_order(order);
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Poly { ctx, terms }
    }

    /// Re-reads the polynomial in another context with the same number of
    /// variables (coefficients are embedded into the new field).
    pub fn recast(&self, ctx: Ctx) -> Poly {
        assert_eq!(ctx.nvars, self.ctx.nvars);
        Poly::from_terms(ctx, self.terms.clone())
    }

    /// Renames variables: `x_i` becomes `x_{perm[i]}` in `ctx`.
    pub fn permute(&self, ctx: Ctx, perm: &[usize]) -> Poly {
        assert_eq!(perm.len(), self.ctx.n());
        Poly::from_terms(ctx, self.terms.iter().map(|(m, c)| (m.permute(perm), c.clone())).collect())
    }

    /// Embeds into a ring whose variables start at offset `by`.
    pub fn shift(&self, ctx: Ctx, by: usize) -> Poly {
        Poly::from_terms(ctx, self.terms.iter().map(|(m, c)| (m.shift(by), c.clone())).collect())
    }

    /// Evaluates at a point with exact arithmetic.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.ctx.n());
        let fld = self.ctx.field;
        let mut acc = Scalar::ZERO;
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, p) in point.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    v = fld.mul(&v, p);
                }
            }
            acc = fld.add(&acc, &v);
        }
        acc
    }

    /// Ring homomorphism sending `x_i` to `images[i]`; the result lives in the
    /// context of the images.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ctx.n());
        let ctx = images.first().map(|p| p.ctx).unwrap_or(self.ctx);
        let mut cache: Vec<Vec<Poly>> = vec![vec![Poly::constant(ctx, Scalar::ONE)]; images.len()];
        let mut acc = Poly::zero(ctx);
        for (m, c) in &self.terms {
            let mut v = Poly::constant(ctx, c.clone());
            for (i, img) in images.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e {
                    let next = cache[i].last().unwrap().mul(img);
                    cache[i].push(next);
                }
                v = v.mul(&cache[i][e]);
                if v.is_zero() {
                    break;
                }
            }
            acc = acc.add(&v);
        }
        acc
    }

    /// Largest power of `x_i` dividing every term.
    pub fn var_valuation(&self, i: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exp(i)).min().unwrap_or(0)
    }

    /// Divides every term by a monomial that divides all of them.
    pub fn div_mono(&self, m: &Mono) -> Poly {
        Poly {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(t, c)| (t.div(m), c.clone())).collect(),
        }
    }

    /// Part of the polynomial of (weighted) degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        let mask = self.ctx.order.zero_mask;
        Poly {
            ctx: self.ctx,
            terms: self.terms.iter().filter(|t| t.0.wdeg(mask) == d).cloned().collect(),
        }
    }

    /// Bitmask of all variables occurring in the polynomial.
    pub fn support(&self) -> u16 {
        self.terms.iter().fold(0, |a, t| a | t.0.support())
    }

    /// Integer coefficients, scaled by the lcm of denominators (rationals only).
    pub fn clear_denominators(&self) -> (Poly, BigInt) {
        let refs: Vec<&Scalar> = self.terms.iter().map(|t| &t.1).collect();
        let (_, l) = content(&refs);
        let f = Scalar::from_big(BigRational::from_integer(l.clone()));
        (self.scale(&f), l)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        Poly::add(self, o)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        Poly::sub(self, o)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        Poly::mul(self, o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::projective(3, Field::Rational)
    }

    #[test]
    fn cancellation() {
        let r = ring();
        let f = r.parse("x0*x2 - x1^2").unwrap();
        let g = r.parse("x1^2").unwrap();
        assert_eq!(&f + &g, r.parse("x0*x2").unwrap());
    }

    #[test]
    fn difference_of_squares() {
        let r = ring();
        let a = r.parse("x0 + x1").unwrap();
        let b = r.parse("x0 - x1").unwrap();
        assert_eq!(&a * &b, r.parse("x0^2 - x1^2").unwrap());
    }

    #[test]
    fn times_zero() {
        let r = ring();
        let f = r.parse("3*x0^2 - x1*x3 + 1/2*x2^2").unwrap();
        assert!((&f * &r.zero()).is_zero());
    }

    #[test]
    fn primitive_form() {
        let r = ring();
        let f = r.parse("-2/3*x0 + 4/9*x1").unwrap();
        assert_eq!(f.primitive(), r.parse("3*x0 - 2*x1").unwrap());
    }

    #[test]
    fn substitution_is_a_ring_map() {
        let r = ring();
        let b = Ring::binary(Field::Rational);
        let imgs: Vec<Poly> = (0..4).map(|i| b.parse(["t^3", "t^2*u", "t*u^2", "u^3"][i]).unwrap()).collect();
        let f = r.parse("x1*x3").unwrap();
        assert_eq!(f.substitute(&imgs), b.parse("t^2*u^4").unwrap());
        let g = r.parse("x1^2 - x0*x2").unwrap();
        assert!(g.substitute(&imgs).is_zero());
    }

    #[test]
    fn homogeneity() {
        let r = ring();
        assert_eq!(r.parse("x0*x1 + x3^2").unwrap().homogeneous_degree(), Some(2));
        assert_eq!(r.parse("x0 + x3^2").unwrap().homogeneous_degree(), None);
        let s = r.extend(&["s"], true);
        assert_eq!(s.parse("x3 + s*x0").unwrap().homogeneous_degree(), Some(1));
    }

    #[test]
    fn prime_field_arith() {
        let r = Ring::projective(1, Field::prime(5).unwrap());
        let f = r.parse("x0 + 2*x1").unwrap();
        assert_eq!(f.pow(5), r.parse("x0^5 + 2*x1^5").unwrap());
    }
}
