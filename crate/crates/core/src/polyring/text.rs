//! Text grammar for polynomials.
//!
//! ```text
//! poly  := ['+'|'-'] term (('+'|'-') term)*
//! term  := factor ('*' factor)*
//! factor:= atom ['^' integer]
//! atom  := integer | integer '/' integer | var | '(' poly ')'
//! ```
//!
//! Printing only produces the flat form (no parentheses).
//!
//! `x, y, z, w` are accepted as aliases of the first four variables and
//! `t, u` of the first two, unless the ring already uses those names.

use num_bigint::BigInt;
use num_traits::Zero;

use super::monomial::Mono;
use super::poly::{Poly, Ring};
use super::scalar::{Field, Scalar};
use crate::Error;

fn alias_index(ring: &Ring, name: &str) -> Option<usize> {
    if let Some(i) = ring.var_index(name) {
        return Some(i);
    }
    let i = match name {
        "x" | "t" => 0,
        "y" | "u" => 1,
        "z" => 2,
        "w" => 3,
        _ => return None,
    };
    (i < ring.nvars()).then_some(i)
}

struct Parser<'a> {
    ring: &'a Ring,
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn bad(&self, why: &str) -> Error {
        Error::Input(format!("cannot parse polynomial `{}`: {why}", self.src))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly, Error> {
        let mut acc = Poly::zero(self.ring.ctx);
        let mut neg = false;
        if let Some(c @ ('+' | '-')) = self.peek() {
            neg = c == '-';
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(c @ ('+' | '-')) => {
                    neg = c == '-';
                    self.pos += 1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn max_exps(&self, p: &Poly) -> Vec<u64> {
        let mut out = vec![0u64; self.ring.nvars()];
        for (m, _) in p.terms() {
            for (i, slot) in out.iter_mut().enumerate() {
                *slot = (*slot).max(m.exp(i) as u64);
            }
        }
        out
    }

    fn term(&mut self) -> Result<Poly, Error> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.factor()?;
            let (a, b) = (self.max_exps(&acc), self.max_exps(&f));
            if a.iter().zip(&b).any(|(x, y)| x + y > u8::MAX as u64) {
                return Err(self.bad("exponent too large"));
            }
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<String, Error> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.bad("expected a number"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn factor(&mut self) -> Result<Poly, Error> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let e: u32 = self.integer()?.parse().map_err(|_| self.bad("bad exponent"))?;
        if self.max_exps(&base).iter().any(|x| x * e as u64 > u8::MAX as u64) {
            return Err(self.bad("exponent too large"));
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Poly, Error> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let p = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.bad("unbalanced parenthesis"));
                }
                self.pos += 1;
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => {
                let mut text = self.integer()?;
                if self.peek() == Some('/') {
                    self.pos += 1;
                    text.push('/');
                    text.push_str(&self.integer()?);
                }
                let c = Scalar::parse(&text).ok_or_else(|| self.bad(&format!("bad number `{text}`")))?;
                if let Field::Prime(p) = self.ring.field() {
                    if (c.denom() % BigInt::from(p)).is_zero() {
                        return Err(self.bad(&format!("denominator of `{text}` vanishes mod {p}")));
                    }
                }
                Ok(Poly::constant(self.ring.ctx, self.ring.field().embed(&c)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let i = alias_index(self.ring, &name).ok_or_else(|| self.bad(&format!("unknown variable `{name}`")))?;
                Ok(self.ring.var(i))
            }
            Some(c) => Err(self.bad(&format!("bad token `{c}`"))),
            None => Err(self.bad("unexpected end")),
        }
    }
}

pub fn parse_poly(ring: &Ring, src: &str) -> Result<Poly, Error> {
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::Input("empty polynomial".into()));
    }
    let mut p = Parser { ring, src, chars, pos: 0 };
    let f = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.bad(&format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(f)
}

fn format_mono(ring: &Ring, m: &Mono) -> String {
    let mut parts = Vec::new();
    for (i, name) in ring.names().iter().enumerate() {
        match m.exp(i) {
            0 => {}
            1 => parts.push(name.clone()),
            k => parts.push(format!("{name}^{k}")),
        }
    }
    parts.join("*")
}

/// Canonical text: terms in descending order, unit coefficients omitted.
pub fn format_poly(ring: &Ring, f: &Poly) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in f.terms().iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = format_mono(ring, m);
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{a}*{mono}"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::scalar::Field;

    #[test]
    fn roundtrip_canonical() {
        let r = Ring::projective(3, Field::Rational);
        for s in ["-x1^2 + x0*x2", "-1/2*x0^3 + 7*x1*x3^2 - 3", "x3^2", "0", "-x0", "5/3"] {
            let f = r.parse(s).unwrap();
            assert_eq!(r.fmt_poly(&f), s);
        }
    }

    #[test]
    fn aliases_and_noise() {
        let r = Ring::projective(3, Field::Rational);
        let f = r.parse(" x*z - y^2 + 2*w ").unwrap();
        assert_eq!(r.fmt_poly(&f), "-x1^2 + x0*x2 + 2*x3");
        let b = Ring::binary(Field::Rational);
        assert_eq!(b.fmt_poly(&b.parse("u^6 + t^4*u^2").unwrap()), "t^4*u^2 + u^6");
        assert_eq!(r.fmt_poly(&r.parse("-(x0)").unwrap()), "-x0");
        assert_eq!(r.fmt_poly(&r.parse("w*(x*z - y^2)").unwrap()), "-x1^2*x3 + x0*x2*x3");
        assert_eq!(r.parse("(x0 + x1)^2").unwrap(), r.parse("x0^2 + 2*x0*x1 + x1^2").unwrap());
        assert!(r.parse("(x0").is_err());
        assert!(r.parse("x0)").is_err());
        assert!(r.parse("2x0").is_err());
        assert!(r.parse("(x0*x1)^300").is_err());
        assert!(r.parse("x0^200*x0^100").is_err());
        assert!(r.parse("x9").is_err());
        assert!(r.parse("x0 +").is_err());
        assert!(r.parse("2*").is_err());
    }

    #[test]
    fn repeated_factors_combine() {
        let r = Ring::projective(2, Field::Rational);
        assert_eq!(r.fmt_poly(&r.parse("x0*x0*2*3/4").unwrap()), "3/2*x0^2");
        assert_eq!(r.fmt_poly(&r.parse("x1 - x1").unwrap()), "0");
    }
}
