//! Binary forms in `K[t, u]`.

use super::monomial::Mono;
use super::poly::{Poly, Ring};
use super::scalar::{Field, Scalar};
use crate::Error;

/// A homogeneous polynomial in the two-variable ring `K[t, u]`.
pub type BinaryForm = Poly;

/// `t^a u^b`.
pub fn tu(ring: &Ring, a: u32, b: u32) -> BinaryForm {
    Poly::monomial(ring.ctx, Mono::from_exps(&[a, b]), Scalar::ONE)
}

/// Dense univariate coefficients, index = power of `t`.
fn dehomogenize(f: &Poly) -> Vec<Scalar> {
    let d = f.total_degree().unwrap_or(0) as usize;
    let mut v = vec![Scalar::ZERO; d + 1];
    for (m, c) in f.terms() {
        v[m.exp(0) as usize] = c.clone();
    }
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
    v
}

fn trim(v: &mut Vec<Scalar>) {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
}

fn monic(fld: Field, v: &[Scalar]) -> Vec<Scalar> {
    let inv = fld.inv(v.last().unwrap());
    v.iter().map(|c| fld.mul(c, &inv)).collect()
}

fn rem(fld: Field, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut a = a.to_vec();
    let lb = b.last().unwrap();
    while a.len() >= b.len() && !(a.len() == 1 && a[0].is_zero()) {
        let q = fld.div(a.last().unwrap(), lb);
        let shift = a.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            a[i + shift] = fld.sub(&a[i + shift], &fld.mul(&q, c));
        }
        a.pop();
        if a.is_empty() {
            a.push(Scalar::ZERO);
        }
        trim(&mut a);
    }
    a
}

fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(|c| c.is_zero())
}

fn ugcd(fld: Field, a: Vec<Scalar>, b: Vec<Scalar>) -> Vec<Scalar> {
    let (mut a, mut b) = (a, b);
    while !is_zero(&b) {
        let r = rem(fld, &a, &b);
        a = b;
        b = r;
    }
    monic(fld, &a)
}

/// Monic gcd of a list of binary forms. Zero forms are ignored; the gcd is
/// computed by splitting off powers of `t` and `u` and running Euclid on the
/// dehomogenized cofactors.
pub fn gcd_binary(forms: &[BinaryForm]) -> Result<BinaryForm, Error> {
    let nz: Vec<&Poly> = forms.iter().filter(|f| !f.is_zero()).collect();
    let Some(first) = nz.first() else {
        return Err(Error::Input("gcd of all-zero binary forms".into()));
    };
    let ctx = first.ctx();
    assert_eq!(ctx.n(), 2, "binary forms live in K[t,u]");
    let fld = ctx.field;
    let mut min_t = u32::MAX;
    let mut min_u = u32::MAX;
    let mut g: Option<Vec<Scalar>> = None;
    for f in &nz {
        if !f.is_homogeneous() {
            return Err(Error::Input("binary form is not homogeneous".into()));
        }
        let vt = f.var_valuation(0);
        let vu = f.var_valuation(1);
        min_t = min_t.min(vt);
        min_u = min_u.min(vu);
        let h = f.div_mono(&Mono::from_exps(&[vt, vu]));
        let dh = dehomogenize(&h);
        g = Some(match g {
            None => monic(fld, &dh),
            Some(prev) => ugcd(fld, prev, dh),
        });
    }
    let g = g.unwrap();
    let deg = (g.len() - 1) as u32;
    let terms: Vec<(Mono, Scalar)> = g
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (Mono::from_exps(&[i as u32 + min_t, deg - i as u32 + min_u]), c.clone()))
        .collect();
    Ok(Poly::from_terms(ctx, terms).monic())
}

/// True when the forms have no common zero on the projective line.
pub fn no_common_zero(forms: &[BinaryForm]) -> bool {
    match gcd_binary(forms) {
        Ok(g) => g.is_constant(),
        Err(_) => false,
    }
}

/// All degree-`d` monomials `t^{d-i} u^i`, `i = 0..=d`.
pub fn binary_basis(d: u32) -> Vec<Mono> {
    (0..=d).map(|i| Mono::from_exps(&[d - i, i])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Ring {
        Ring::binary(Field::Rational)
    }

    fn p(s: &str) -> Poly {
        b().parse(s).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(gcd_binary(&[p("t^2"), p("2*t*u"), p("u^2")]).unwrap(), p("1"));
        assert_eq!(gcd_binary(&[p("t*u"), p("t^2")]).unwrap(), p("t"));
        assert_eq!(gcd_binary(&[p("u^5"), p("t^3"), p("0")]).unwrap(), p("1"));
        assert!(gcd_binary(&[p("0")]).is_err());
    }

    #[test]
    fn shared_linear_factor() {
        let g = gcd_binary(&[p("t^2 - u^2"), p("t^2 + 2*t*u + u^2")]).unwrap();
        assert_eq!(g, p("t + u"));
        let g = gcd_binary(&[p("3*t^3*u - 3*t*u^3"), p("6*t^2*u^2 - 6*t*u^3")]).unwrap();
        assert_eq!(g, p("t^2*u - t*u^2"));
    }
}
