//! Exponent vectors and monomial orders.

use std::cmp::Ordering;

/// Hard limit on the number of ring variables.
pub const MAX_VARS: usize = 16;

/// A monomial `x_0^{e_0} ... x_{k-1}^{e_{k-1}}`. Unused slots are zero, so
/// comparisons never need the variable count.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mono {
    e: [u8; MAX_VARS],
    deg: u16,
    sev: u16,
}

impl Mono {
    pub const ONE: Mono = Mono { e: [0; MAX_VARS], deg: 0, sev: 0 };

    pub fn one() -> Mono {
        Mono::ONE
    }

    /// Panics if an exponent exceeds 255 or there are too many variables.
    pub fn from_exps(exps: &[u32]) -> Mono {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        let mut m = Mono::ONE;
        for (i, &x) in exps.iter().enumerate() {
            assert!(x <= u8::MAX as u32, "exponent {x} too large");
            m.e[i] = x as u8;
        }
        m.refresh();
        m
    }

    pub fn var(i: usize) -> Mono {
        Mono::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, k: u32) -> Mono {
        assert!(i < MAX_VARS && k <= u8::MAX as u32);
        let mut m = Mono::ONE;
        m.e[i] = k as u8;
        m.refresh();
        m
    }

    fn refresh(&mut self) {
        let mut d = 0u16;
        let mut s = 0u16;
        for (i, &x) in self.e.iter().enumerate() {
            d += x as u16;
            if x > 0 {
                s |= 1 << i;
            }
        }
        self.deg = d;
        self.sev = s;
    }

    #[inline]
    pub fn deg(&self) -> u32 {
        self.deg as u32
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.e[i] as u32
    }

    pub fn exps(&self, nvars: usize) -> Vec<u32> {
        self.e[..nvars].iter().map(|&x| x as u32).collect()
    }

    /// Bitmask of variables that occur.
    #[inline]
    pub fn support(&self) -> u16 {
        self.sev
    }

    /// Degree with the variables in `zero_mask` counted as weight 0.
    #[inline]
    pub fn wdeg(&self, zero_mask: u16) -> u32 {
        if zero_mask & self.sev == 0 {
            return self.deg as u32;
        }
        let mut d = self.deg as u32;
        for i in 0..MAX_VARS {
            if zero_mask & (1 << i) != 0 {
                d -= self.e[i] as u32;
            }
        }
        d
    }

    /// Panics on exponent overflow.
    #[inline]
    pub fn mul(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for i in 0..MAX_VARS {
            r.e[i] = self.e[i].checked_add(o.e[i]).expect("exponent overflow");
        }
        r.deg = self.deg + o.deg;
        r.sev = self.sev | o.sev;
        r
    }

    #[inline]
    pub fn divides(&self, o: &Mono) -> bool {
        if self.sev & !o.sev != 0 || self.deg > o.deg {
            return false;
        }
        self.e.iter().zip(o.e.iter()).all(|(a, b)| a <= b)
    }

    /// `self / o`; the caller guarantees divisibility.
    #[inline]
    pub fn div(&self, o: &Mono) -> Mono {
        debug_assert!(o.divides(self));
        let mut r = *self;
        for i in 0..MAX_VARS {
            r.e[i] = self.e[i] - o.e[i];
        }
        r.refresh();
        r
    }

    pub fn checked_div(&self, o: &Mono) -> Option<Mono> {
        if o.divides(self) {
            Some(self.div(o))
        } else {
            None
        }
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for i in 0..MAX_VARS {
            r.e[i] = self.e[i].max(o.e[i]);
        }
        r.refresh();
        r
    }

    pub fn gcd(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for i in 0..MAX_VARS {
            r.e[i] = self.e[i].min(o.e[i]);
        }
        r.refresh();
        r
    }

    #[inline]
    pub fn coprime(&self, o: &Mono) -> bool {
        self.sev & o.sev == 0
    }

    /// Applies a variable permutation: variable `i` becomes `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Mono {
        let mut r = Mono::ONE;
        for (i, &p) in perm.iter().enumerate() {
            r.e[p] = self.e[i];
        }
        r.refresh();
        r
    }

    /// Keeps variables `from..from+len`, shifted to start at 0.
    pub fn slice(&self, from: usize, len: usize) -> Mono {
        let mut r = Mono::ONE;
        r.e[..len].copy_from_slice(&self.e[from..from + len]);
        r.refresh();
        r
    }

    /// Moves every exponent up by `by` slots (for embedding into a larger ring).
    pub fn shift(&self, by: usize) -> Mono {
        let mut r = Mono::ONE;
        for i in 0..MAX_VARS - by {
            r.e[i + by] = self.e[i];
        }
        assert!(self.e[MAX_VARS - by..].iter().all(|&x| x == 0));
        r.refresh();
        r
    }

    pub fn set_exp(&mut self, i: usize, k: u32) {
        assert!(k <= u8::MAX as u32);
        self.e[i] = k as u8;
        self.refresh();
    }
}

impl std::fmt::Debug for Mono {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let last = self.e.iter().rposition(|&x| x > 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.e[..last])
    }
}

/// Monomial order kinds. All orders put `x_0 > x_1 > ... > x_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    DegRevLex,
    Lex,
    /// Product of two graded reverse lexicographic orders: the first `k`
    /// variables form the first block and are eliminated first.
    Block(u8),
}

/// A monomial order plus the set of variables that carry grading weight 0.
///
/// Weight-0 variables (parameters) do not change the grading used for
/// homogeneity, but orders always compare the ordinary total degree, so
/// they remain well-orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MonoOrder {
    pub kind: OrderKind,
    pub zero_mask: u16,
}

impl MonoOrder {
    pub const DEGREVLEX: MonoOrder = MonoOrder { kind: OrderKind::DegRevLex, zero_mask: 0 };
    pub const LEX: MonoOrder = MonoOrder { kind: OrderKind::Lex, zero_mask: 0 };

    pub fn block(k: usize) -> MonoOrder {
        MonoOrder { kind: OrderKind::Block(k as u8), zero_mask: 0 }
    }

    pub fn with_zero_mask(self, mask: u16) -> MonoOrder {
        MonoOrder { zero_mask: mask, ..self }
    }

    pub fn name(&self) -> String {
        match self.kind {
            OrderKind::DegRevLex => "degrevlex".into(),
            OrderKind::Lex => "lex".into(),
            OrderKind::Block(k) => format!("block({k})"),
        }
    }

    pub fn parse_name(s: &str) -> Option<MonoOrder> {
        match s {
            "degrevlex" | "grevlex" => Some(MonoOrder::DEGREVLEX),
            "lex" => Some(MonoOrder::LEX),
            _ => {
                let k = s.strip_prefix("block(")?.strip_suffix(')')?.parse().ok()?;
                Some(MonoOrder::block(k))
            }
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        match self.kind {
            OrderKind::DegRevLex => {
                let c = a.deg.cmp(&b.deg);
                if c != Ordering::Equal {
                    return c;
                }
                revlex(a, b, 0, MAX_VARS)
            }
            OrderKind::Lex => {
                for i in 0..MAX_VARS {
                    let c = a.e[i].cmp(&b.e[i]);
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            }
            OrderKind::Block(k) => {
                let k = k as usize;
                let da: u32 = a.e[..k].iter().map(|&x| x as u32).sum();
                let db: u32 = b.e[..k].iter().map(|&x| x as u32).sum();
                let c = da.cmp(&db);
                if c != Ordering::Equal {
                    return c;
                }
                let c = revlex(a, b, 0, k);
                if c != Ordering::Equal {
                    return c;
                }
                let c = (a.deg as u32 - da).cmp(&(b.deg as u32 - db));
                if c != Ordering::Equal {
                    return c;
                }
                revlex(a, b, k, MAX_VARS)
            }
        }
    }
}

#[inline]
fn revlex(a: &Mono, b: &Mono, lo: usize, hi: usize) -> Ordering {
    for i in (lo..hi).rev() {
        if a.e[i] != b.e[i] {
            return b.e[i].cmp(&a.e[i]);
        }
    }
    Ordering::Equal
}

/// All monomials of total degree `d` in `nvars` variables, in descending
/// degrevlex order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Mono>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left;
            out.push(Mono::from_exps(cur));
            cur[i] = 0;
            return;
        }
        for k in (0..=left).rev() {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Mono::ONE);
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out.sort_by(|a, b| MonoOrder::DEGREVLEX.cmp(b, a));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: &[u32]) -> Mono {
        Mono::from_exps(v)
    }

    #[test]
    fn degrevlex_examples() {
        let o = MonoOrder::DEGREVLEX;
        // x1*x2 > x0*x3
        assert_eq!(o.cmp(&m(&[0, 1, 1, 0]), &m(&[1, 0, 0, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 2]), &m(&[1, 2])), Ordering::Equal);
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 1])), Ordering::Greater);
    }

    #[test]
    fn lex_prefers_first_variable() {
        assert_eq!(MonoOrder::LEX.cmp(&m(&[1, 0]), &m(&[0, 2])), Ordering::Greater);
    }

    #[test]
    fn block_eliminates_first_block() {
        let o = MonoOrder::block(1);
        // any monomial containing x0 beats any without it
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 1])), Ordering::Greater);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(b.div(&a), m(&[1, 0, 1]));
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[1, 3, 1]));
        assert!(m(&[1, 0]).coprime(&m(&[0, 4])));
    }

    #[test]
    fn weighted_degree() {
        let a = m(&[1, 2, 3]);
        assert_eq!(a.wdeg(0b100), 3);
        assert_eq!(a.wdeg(0), 6);
    }

    #[test]
    fn enumerate_degree() {
        let v = monomials_of_degree(3, 2);
        assert_eq!(v.len(), 6);
        assert_eq!(v[0], m(&[2, 0, 0]));
        assert_eq!(monomials_of_degree(4, 0), vec![Mono::ONE]);
    }
}
