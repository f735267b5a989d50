//! Exact coefficients.
//!
//! A [`Scalar`] is a rational number kept in lowest terms. Values whose
//! numerator and denominator fit in `i64` stay inline; anything larger spills
//! into a boxed `BigRational`. The representation is canonical, so derived
//! equality and hashing are value equality.
//!
//! Prime-field elements reuse the same type: they are integers in `[0, p)` and
//! the arithmetic goes through [`Field`], which knows the modulus.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Scalar {
    pub const ZERO: Scalar = Scalar::Small(0, 1);
    pub const ONE: Scalar = Scalar::Small(1, 1);

    pub fn zero() -> Scalar {
        Scalar::ZERO
    }

    pub fn one() -> Scalar {
        Scalar::ONE
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::Small(n, 1)
    }

    /// Builds `n/d` in lowest terms. Panics on a zero denominator.
    pub fn from_frac(n: i64, d: i64) -> Scalar {
        assert!(d != 0, "zero denominator");
        Self::from_i128(n as i128, d as i128)
    }

    fn from_i128(n: i128, d: i128) -> Scalar {
        debug_assert!(d != 0);
        let g = gcd_i128(n, d);
        let (mut n, mut d) = if g > 1 { (n / g, d / g) } else { (n, d) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        if n == 0 {
            return Scalar::ZERO;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Scalar::Small(a, b),
            _ => Scalar::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    pub fn from_big(r: BigRational) -> Scalar {
        // BigRational::new already reduces; make sure the sign sits on top.
        let (n, d) = (r.numer().clone(), r.denom().clone());
        let (n, d) = if d.is_negative() { (-n, -d) } else { (n, d) };
        if n.is_zero() {
            return Scalar::ZERO;
        }
        match (n.to_i64(), d.to_i64()) {
            (Some(a), Some(b)) => Scalar::Small(a, b),
            _ => Scalar::Big(Box::new(BigRational::new_raw(n, d))),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Scalar::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Scalar::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Scalar::Small(_, d) => *d == 1,
            Scalar::Big(b) => b.denom().is_one(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Small(n, _) => *n < 0,
            Scalar::Big(b) => b.is_negative(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Scalar::Small(n, _) => BigInt::from(*n),
            Scalar::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Scalar::Small(_, d) => BigInt::from(*d),
            Scalar::Big(b) => b.denom().clone(),
        }
    }

    /// Returns the value as an `i64` when it is an integer that fits.
    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Scalar::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Small(n, d) => match n.checked_neg() {
                Some(m) => Scalar::Small(m, *d),
                None => Scalar::from_big(-self.to_big()),
            },
            Scalar::Big(b) => Scalar::from_big(-(**b).clone()),
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Small(a, b), Scalar::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == 1 && d == 1 {
                    return Self::from_i128(a + c, 1);
                }
                Self::from_i128(a * d + c * b, b * d)
            }
            _ => Scalar::from_big(self.to_big() + o.to_big()),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Small(a, b), Scalar::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == 1 && d == 1 {
                    return Self::from_i128(a - c, 1);
                }
                Self::from_i128(a * d - c * b, b * d)
            }
            _ => Scalar::from_big(self.to_big() - o.to_big()),
        }
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Small(a, b), Scalar::Small(c, d)) => {
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Scalar::from_big(self.to_big() * o.to_big()),
        }
    }

    /// Panics on division by zero.
    pub fn div(&self, o: &Scalar) -> Scalar {
        assert!(!o.is_zero(), "division by zero");
        match (self, o) {
            (Scalar::Small(a, b), Scalar::Small(c, d)) => {
                Self::from_i128(*a as i128 * *d as i128, *b as i128 * *c as i128)
            }
            _ => Scalar::from_big(self.to_big() / o.to_big()),
        }
    }

    pub fn inv(&self) -> Scalar {
        Scalar::ONE.div(self)
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Parses `p`, `-p` or `p/q` with arbitrary-size integers.
    pub fn parse(s: &str) -> Option<Scalar> {
        let s = s.trim();
        if s.is_empty() {
            return None;
        }
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let ok = |t: &str| {
            let t = t.strip_prefix('-').unwrap_or(t);
            !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
        };
        if !ok(n) || !ok(d) {
            return None;
        }
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Scalar::from_big(BigRational::new(n, d)))
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::ZERO
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Small(a, b), Scalar::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Small(n, 1) => write!(f, "{n}"),
            Scalar::Small(n, d) => write!(f, "{n}/{d}"),
            Scalar::Big(b) => {
                if b.denom().is_one() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

/// Coefficient field: the rationals or a prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u32),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= p {
        if p.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

impl Field {
    /// The prime field `F_p`; `None` unless `p` is a prime below 2^31.
    pub fn prime(p: u64) -> Option<Field> {
        if p < (1 << 31) && is_prime(p) {
            Some(Field::Prime(p as u32))
        } else {
            None
        }
    }

    pub fn tag(&self) -> String {
        match self {
            Field::Rational => "QQ".to_string(),
            Field::Prime(p) => format!("Fp:{p}"),
        }
    }

    pub fn parse_tag(s: &str) -> Option<Field> {
        match s {
            "QQ" | "Q" => Some(Field::Rational),
            _ => {
                let p: u64 = s.strip_prefix("Fp:")?.parse().ok()?;
                Field::prime(p)
            }
        }
    }

    /// Maps an arbitrary rational into the field. Panics when the denominator
    /// vanishes mod p.
    pub fn embed(&self, s: &Scalar) -> Scalar {
        match self {
            Field::Rational => s.clone(),
            Field::Prime(p) => {
                let p = *p as i64;
                let red = |x: &BigInt| -> i64 {
                    let m = x.mod_floor(&BigInt::from(p));
                    m.to_i64().unwrap()
                };
                let (n, d) = match s {
                    Scalar::Small(n, d) => (n.rem_euclid(p), d.rem_euclid(p)),
                    Scalar::Big(b) => (red(b.numer()), red(b.denom())),
                };
                assert!(d != 0, "denominator vanishes in F_{p}");
                if d == 1 {
                    Scalar::Small(n, 1)
                } else {
                    Scalar::Small((n as i128 * inv_mod(d, p) as i128 % p as i128) as i64, 1)
                }
            }
        }
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::from_int(n),
            Field::Prime(p) => Scalar::Small(n.rem_euclid(*p as i64), 1),
        }
    }

    #[inline]
    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rational => a.add(b),
            Field::Prime(p) => {
                let s = a.as_i64().unwrap() + b.as_i64().unwrap();
                let p = *p as i64;
                Scalar::Small(if s >= p { s - p } else { s }, 1)
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rational => a.sub(b),
            Field::Prime(p) => {
                let s = a.as_i64().unwrap() - b.as_i64().unwrap();
                Scalar::Small(if s < 0 { s + *p as i64 } else { s }, 1)
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            Field::Rational => a.neg(),
            Field::Prime(p) => {
                let v = a.as_i64().unwrap();
                Scalar::Small(if v == 0 { 0 } else { *p as i64 - v }, 1)
            }
        }
    }

    #[inline]
    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rational => a.mul(b),
            Field::Prime(p) => {
                let v = a.as_i64().unwrap() as i128 * b.as_i64().unwrap() as i128;
                Scalar::Small((v % *p as i128) as i64, 1)
            }
        }
    }

    pub fn inv(&self, a: &Scalar) -> Scalar {
        match self {
            Field::Rational => a.inv(),
            Field::Prime(p) => {
                let v = a.as_i64().unwrap();
                assert!(v != 0, "division by zero");
                Scalar::Small(inv_mod(v, *p as i64), 1)
            }
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rational => a.div(b),
            Field::Prime(_) => self.mul(a, &self.inv(b)),
        }
    }

    pub fn is_valid(&self, a: &Scalar) -> bool {
        match self {
            Field::Rational => true,
            Field::Prime(p) => matches!(a, Scalar::Small(v, 1) if *v >= 0 && *v < *p as i64),
        }
    }
}

fn inv_mod(a: i64, p: i64) -> i64 {
    let (mut t, mut nt) = (0i64, 1i64);
    let (mut r, mut nr) = (p, a.rem_euclid(p));
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    assert!(r == 1, "{a} not invertible mod {p}");
    t.rem_euclid(p)
}

/// Greatest common divisor of the numerators and lcm of the denominators of a
/// list of rationals; used to make polynomials primitive over the integers.
pub fn content(values: &[&Scalar]) -> (BigInt, BigInt) {
    let mut g: i128 = 0;
    let mut l: i128 = 1;
    let mut i = 0;
    while i < values.len() {
        if let Scalar::Small(n, d) = values[i] {
            let dd = *d as i128;
            let q = l / gcd_i128(l, dd);
            if let Some(x) = q.checked_mul(dd).filter(|x| *x < i64::MAX as i128) {
                g = gcd_i128(g, *n as i128);
                l = x;
                i += 1;
                continue;
            }
        }
        break;
    }
    let mut g = BigInt::from(g);
    let mut l = BigInt::from(l);
    for v in &values[i..] {
        g = g.gcd(&v.numer());
        l = l.lcm(&v.denom());
    }
    (g, l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        assert_eq!(Scalar::from_frac(2, -4), Scalar::Small(-1, 2));
        assert_eq!(Scalar::from_frac(0, -7), Scalar::ZERO);
        assert_eq!(Scalar::from_frac(6, 3), Scalar::from_int(2));
    }

    #[test]
    fn overflow_spills_and_returns() {
        let big = Scalar::from_int(i64::MAX);
        let sq = big.mul(&big);
        assert!(matches!(sq, Scalar::Big(_)));
        let back = sq.div(&big);
        assert_eq!(back, big);
        assert!(matches!(back, Scalar::Small(..)));
        assert_eq!(Scalar::from_int(i64::MIN).neg().neg(), Scalar::from_int(i64::MIN));
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "-3", "7/2", "-5/12", "123456789012345678901234567891/2"] {
            let v = Scalar::parse(s).unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!(Scalar::parse("4/6").unwrap().to_string(), "2/3");
        assert!(Scalar::parse("1/0").is_none());
        assert!(Scalar::parse("x").is_none());
    }

    #[test]
    fn prime_field_ops() {
        let f = Field::prime(7).unwrap();
        let a = f.from_int(3);
        let b = f.from_int(5);
        assert_eq!(f.add(&a, &b), Scalar::from_int(1));
        assert_eq!(f.mul(&a, &b), Scalar::from_int(1));
        assert_eq!(f.mul(&a, &f.inv(&a)), Scalar::ONE);
        assert_eq!(f.embed(&Scalar::from_frac(1, 2)), Scalar::from_int(4));
        assert!(Field::prime(9).is_none());
        assert_eq!(Field::parse_tag("Fp:101"), Field::prime(101));
    }

    #[test]
    fn content_mixed() {
        let a = Scalar::from_frac(4, 3);
        let b = Scalar::from_frac(6, 5);
        let (g, l) = content(&[&a, &b]);
        assert_eq!(g, BigInt::from(2));
        assert_eq!(l, BigInt::from(15));
    }
}
