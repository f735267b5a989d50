//! Hilbert series of monomial ideals and the derived Hilbert function and
//! Hilbert polynomial.

use crate::groebner::minimalize_monomials;
use crate::polyring::{Mono, Scalar};
use crate::{Error, Result};

/// `HS(t) = numerator(t) / (1 - t)^nvars` for `R/I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub nvars: usize,
    /// Coefficients in ascending powers of `t`.
    pub numerator: Vec<i128>,
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_shifted(a: &mut Vec<i128>, b: &[i128], shift: usize, sign: i128) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (j, y) in b.iter().enumerate() {
        a[j + shift] += sign * y;
    }
}

fn trim(v: &mut Vec<i128>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

/// Numerator of the Hilbert series of `K[x_0..x_{n-1}] / ⟨gens⟩`.
pub fn monomial_numerator(gens: &[Mono], nvars: usize) -> Vec<i128> {
    let gens = minimalize_monomials(gens.to_vec());
    let mut v = numerator_rec(gens, nvars);
    trim(&mut v);
    v
}

fn numerator_rec(gens: Vec<Mono>, nvars: usize) -> Vec<i128> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.deg() == 0) {
        return vec![0];
    }
    // pairwise coprime generators: product of (1 - t^deg)
    let mut seen = 0u16;
    let mut coprime = true;
    for m in &gens {
        if seen & m.support() != 0 {
            coprime = false;
            break;
        }
        seen |= m.support();
    }
    if coprime {
        let mut acc = vec![1i128];
        for m in &gens {
            let mut f = vec![0i128; m.deg() as usize + 1];
            f[0] = 1;
            f[m.deg() as usize] = -1;
            acc = poly_mul(&acc, &f);
        }
        return acc;
    }
    // pivot on the variable occurring in most non-linear generators
    let mut counts = vec![0usize; nvars];
    for m in gens.iter().filter(|m| m.deg() > 1) {
        for (i, c) in counts.iter_mut().enumerate() {
            if m.exp(i) > 0 {
                *c += 1;
            }
        }
    }
    let (var, _) = counts.iter().enumerate().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0))).unwrap();
    // the smallest positive exponent keeps the pivot outside the ideal
    let e = gens.iter().map(|m| m.exp(var)).filter(|&e| e > 0).min().unwrap();
    let p = Mono::var_pow(var, e);
    // HS(I) = HS(I + p) + t^deg(p) HS(I : p)
    let mut plus: Vec<Mono> = gens.clone();
    plus.push(p);
    let plus = minimalize_monomials(plus);
    let colon: Vec<Mono> = gens.iter().map(|m| m.div(&m.gcd(&p))).collect();
    let colon = minimalize_monomials(colon);
    let mut a = numerator_rec(plus, nvars);
    let b = numerator_rec(colon, nvars);
    poly_add_shifted(&mut a, &b, e as usize, 1);
    a
}

fn binom(n: i128, k: i128) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Polynomial in `d` with rational coefficients, ascending powers.
pub type QPoly = Vec<Scalar>;

fn qpoly_mul_linear(p: &QPoly, c0: &Scalar) -> QPoly {
    // p * (d + c0)
    let mut out = vec![Scalar::ZERO; p.len() + 1];
    for (i, x) in p.iter().enumerate() {
        out[i + 1] = out[i + 1].add(x);
        out[i] = out[i].add(&x.mul(c0));
    }
    out
}

pub fn qpoly_eval(p: &QPoly, d: i64) -> Scalar {
    let x = Scalar::from_int(d);
    p.iter().rev().fold(Scalar::ZERO, |acc, c| acc.mul(&x).add(c))
}

fn qpoly_trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

impl HilbertSeries {
    /// `dim_K (R/I)_d`.
    pub fn value(&self, d: i64) -> i128 {
        if d < 0 {
            return 0;
        }
        let n = self.nvars as i128;
        self.numerator
            .iter()
            .enumerate()
            .map(|(k, c)| c * binom(d as i128 - k as i128 + n - 1, n - 1))
            .sum()
    }

    /// Writes the numerator as `(1 - t)^c Q(t)` with `Q(1) != 0`; returns
    /// `(c, Q)`.
    pub fn reduced(&self) -> (usize, Vec<i128>) {
        let mut q = self.numerator.clone();
        let mut c = 0;
        if q.iter().all(|x| *x == 0) {
            return (self.nvars, vec![0]);
        }
        while q.iter().sum::<i128>() == 0 {
            // divide by (1 - t)
            let mut out = vec![0i128; q.len() - 1];
            let mut acc = 0i128;
            for (i, slot) in out.iter_mut().enumerate() {
                acc += q[i];
                *slot = acc;
            }
            q = out;
            c += 1;
        }
        trim(&mut q);
        (c, q)
    }

    /// Krull dimension of `R/I` (0 for the unit ideal too).
    pub fn krull_dim(&self) -> usize {
        if self.numerator.iter().all(|x| *x == 0) {
            return 0;
        }
        self.nvars - self.reduced().0
    }

    /// The `h`-polynomial `Q` of [`HilbertSeries::reduced`]. For a curve it is
    /// the second difference of the Hilbert function.
    pub fn h_polynomial(&self) -> Vec<i128> {
        if self.numerator.iter().all(|x| *x == 0) {
            return vec![];
        }
        self.reduced().1
    }

    /// Hilbert polynomial as coefficients in `d` (ascending).
    pub fn polynomial(&self) -> QPoly {
        let dim = self.krull_dim();
        if dim == 0 {
            return vec![];
        }
        let q = self.reduced().1;
        let m = dim - 1;
        let mut fact = Scalar::ONE;
        for i in 1..=m {
            fact = fact.mul(&Scalar::from_int(i as i64));
        }
        let mut acc: QPoly = vec![Scalar::ZERO; m + 1];
        for (k, c) in q.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            // C(d - k + m, m) = prod_{i=1..m} (d - k + i) / m!
            let mut p: QPoly = vec![Scalar::ONE];
            for i in 1..=m {
                p = qpoly_mul_linear(&p, &Scalar::from_int(i as i64 - k as i64));
            }
            let cc = Scalar::from_int(*c as i64).div(&fact);
            for (slot, x) in acc.iter_mut().zip(&p) {
                *slot = slot.add(&x.mul(&cc));
            }
        }
        qpoly_trim(acc)
    }

    /// Smallest `d0 >= 0` with `HF(d) = HP(d)` for every `d >= d0`.
    pub fn regularity_index(&self) -> i64 {
        let hp = self.polynomial();
        let dim = self.krull_dim() as i64;
        let q = self.h_polynomial();
        let top = (q.len() as i64 - 1 - dim + 1).max(0);
        let mut d0 = top;
        while d0 > 0 {
            let d = d0 - 1;
            if qpoly_eval(&hp, d) != Scalar::from_int(self.value(d) as i64) {
                break;
            }
            d0 = d;
        }
        d0
    }
}

/// Curve data read off a linear Hilbert polynomial `P(t) = deg·t + 1 - g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    pub series: HilbertSeries,
    pub polynomial: QPoly,
    pub regularity_index: i64,
}

impl HilbertData {
    pub fn from_series(series: HilbertSeries) -> HilbertData {
        let polynomial = series.polynomial();
        let regularity_index = series.regularity_index();
        HilbertData { series, polynomial, regularity_index }
    }

    pub fn value(&self, d: i64) -> i128 {
        self.series.value(d)
    }

    pub fn values(&self, lo: i64, hi: i64) -> Vec<(i64, i128)> {
        (lo..=hi).map(|d| (d, self.value(d))).collect()
    }

    /// `(degree, genus)` when the polynomial is linear with integer
    /// coefficients.
    pub fn curve_data(&self) -> Option<(i64, i64)> {
        if self.polynomial.len() != 2 {
            return None;
        }
        let d = self.polynomial[1].as_i64()?;
        let c = self.polynomial[0].as_i64()?;
        Some((d, 1 - c))
    }

    /// Integer coefficients of the polynomial (ascending), if integral.
    pub fn integer_polynomial(&self) -> Option<Vec<i64>> {
        self.polynomial.iter().map(|c| c.as_i64()).collect()
    }

    /// Text form such as `6t - 2`.
    pub fn polynomial_string(&self) -> String {
        format_qpoly(&self.polynomial)
    }

    /// Recovers the polynomial from values alone: starting at `d0`, fits
    /// `max(3, dim)` consecutive values and verifies the fit on 3 more
    /// degrees, moving up until `cap`. The result must agree with the exact
    /// polynomial.
    pub fn window_check(&self, d0: i64, cap: i64) -> Result<i64> {
        let dim = self.series.krull_dim();
        let npts = dim.max(3);
        let mut start = d0.max(0);
        while start + npts as i64 + 3 <= cap {
            let pts: Vec<(i64, i128)> = (start..start + npts as i64).map(|d| (d, self.value(d))).collect();
            let fit = interpolate(&pts);
            let ok = (start + npts as i64..start + npts as i64 + 3)
                .all(|d| qpoly_eval(&fit, d) == Scalar::from_int(self.value(d) as i64));
            if ok {
                if qpoly_trim(fit) != self.polynomial {
                    return Err(Error::Invariant("Hilbert polynomial window disagrees with the series".into()));
                }
                return Ok(start);
            }
            start += 1;
        }
        Err(Error::Cap(format!("Hilbert function did not stabilise below degree {cap}")))
    }
}

/// Lagrange interpolation through integer points.
fn interpolate(pts: &[(i64, i128)]) -> QPoly {
    let mut acc: QPoly = vec![Scalar::ZERO; pts.len()];
    for (i, (xi, yi)) in pts.iter().enumerate() {
        let mut basis: QPoly = vec![Scalar::ONE];
        let mut denom = Scalar::ONE;
        for (j, (xj, _)) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = qpoly_mul_linear(&basis, &Scalar::from_int(-xj));
            denom = denom.mul(&Scalar::from_int(xi - xj));
        }
        let c = Scalar::from_int(*yi as i64).div(&denom);
        for (slot, b) in acc.iter_mut().zip(&basis) {
            *slot = slot.add(&b.mul(&c));
        }
    }
    qpoly_trim(acc)
}

/// `3/2t^2 + t - 4` style rendering (variable `t`).
pub fn format_qpoly(p: &QPoly) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let var = match k {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{k}"),
        };
        if var.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&var);
        } else {
            out.push_str(&format!("{a}{var}"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hs(gens: &[&[u32]], n: usize) -> HilbertSeries {
        let g: Vec<Mono> = gens.iter().map(|e| Mono::from_exps(e)).collect();
        HilbertSeries { nvars: n, numerator: monomial_numerator(&g, n) }
    }

    #[test]
    fn polynomial_ring() {
        let h = hs(&[], 2);
        for d in 0..6 {
            assert_eq!(h.value(d), d as i128 + 1);
        }
        assert_eq!(format_qpoly(&h.polynomial()), "t + 1");
    }

    #[test]
    fn twisted_cubic_initial_ideal() {
        // ⟨x1^2, x1x2, x2^2⟩ in 4 variables: 3t + 1
        let h = hs(&[&[0, 2, 0, 0], &[0, 1, 1, 0], &[0, 0, 2, 0]], 4);
        assert_eq!(format_qpoly(&h.polynomial()), "3t + 1");
        assert_eq!(h.h_polynomial(), vec![1, 2]);
        assert_eq!(h.krull_dim(), 2);
        assert_eq!(h.regularity_index(), 0);
    }

    #[test]
    fn artinian() {
        let h = hs(&[&[2, 0], &[0, 3]], 2);
        assert_eq!(h.krull_dim(), 0);
        assert_eq!((0..5).map(|d| h.value(d)).collect::<Vec<_>>(), vec![1, 2, 2, 1, 0]);
        assert!(h.polynomial().is_empty());
    }

    #[test]
    fn unit_ideal() {
        let h = hs(&[&[0, 0, 0]], 3);
        assert_eq!(h.value(0), 0);
        assert_eq!(h.krull_dim(), 0);
    }

    #[test]
    fn window_check_matches() {
        let h = HilbertData::from_series(hs(&[&[0, 2, 0, 0], &[0, 1, 1, 0], &[0, 0, 2, 0]], 4));
        assert!(h.window_check(4, 40).is_ok());
        assert_eq!(h.curve_data(), Some((3, 0)));
    }
}
