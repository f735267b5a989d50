//! Sparse vectors in a graded free module `⊕ R(-d_i)` with a module order.

use std::cmp::Ordering;

use crate::polyring::{Ctx, Mono, Poly, Scalar};

/// `(monomial, component, coefficient)`.
pub type MTerm = (Mono, u32, Scalar);

/// Module monomial orders.
#[derive(Clone, Debug)]
pub enum ModOrder {
    /// Position over term: lower component index is larger, then the ring
    /// order.
    Pot,
    /// Schreyer order: compare `m * tot[c]` in the ring order, then the
    /// component rank (larger rank is larger).
    Schreyer { tot: Vec<Mono>, rank: Vec<u32> },
}

/// Arithmetic context of a free module.
#[derive(Clone, Debug)]
pub struct ModCtx {
    pub ctx: Ctx,
    pub order: ModOrder,
    pub twists: Vec<i64>,
}

impl ModCtx {
    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    #[inline]
    pub fn cmp(&self, a: (&Mono, u32), b: (&Mono, u32)) -> Ordering {
        let ord = self.ctx.order;
        match &self.order {
            ModOrder::Pot => b.1.cmp(&a.1).then_with(|| ord.cmp(a.0, b.0)),
            ModOrder::Schreyer { tot, rank } => {
                let ta = a.0.mul(&tot[a.1 as usize]);
                let tb = b.0.mul(&tot[b.1 as usize]);
                ord.cmp(&ta, &tb).then_with(|| rank[a.1 as usize].cmp(&rank[b.1 as usize]))
            }
        }
    }

    /// Degree of a term.
    pub fn deg(&self, t: &MTerm) -> i64 {
        t.0.deg() as i64 + self.twists[t.1 as usize]
    }

    /// Sorts descending and merges duplicate terms.
    pub fn normalize(&self, mut v: Vec<MTerm>) -> Vec<MTerm> {
        let fld = self.ctx.field;
        v.sort_by(|a, b| self.cmp((&b.0, b.1), (&a.0, a.1)));
        let mut out: Vec<MTerm> = Vec::with_capacity(v.len());
        for t in v {
            if let Some(last) = out.last_mut() {
                if last.0 == t.0 && last.1 == t.1 {
                    last.2 = fld.add(&last.2, &t.2);
                    if last.2.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            if !t.2.is_zero() {
                out.push(t);
            }
        }
        out
    }

    /// `v + c * m * w`.
    pub fn add_mul_term(&self, v: &[MTerm], c: &Scalar, m: &Mono, w: &[MTerm]) -> Vec<MTerm> {
        let fld = self.ctx.field;
        let mut out = Vec::with_capacity(v.len() + w.len());
        let (mut i, mut j) = (0, 0);
        let mut wj: Option<Mono> = w.first().map(|t| t.0.mul(m));
        while i < v.len() || j < w.len() {
            let ord = match (i < v.len(), wj) {
                (true, Some(wm)) => self.cmp((&v[i].0, v[i].1), (&wm, w[j].1)),
                (true, None) => Ordering::Greater,
                (false, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(v[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((wj.unwrap(), w[j].1, fld.mul(c, &w[j].2)));
                    j += 1;
                    wj = w.get(j).map(|t| t.0.mul(m));
                }
                Ordering::Equal => {
                    let s = fld.add(&v[i].2, &fld.mul(c, &w[j].2));
                    if !s.is_zero() {
                        out.push((v[i].0, v[i].1, s));
                    }
                    i += 1;
                    j += 1;
                    wj = w.get(j).map(|t| t.0.mul(m));
                }
            }
        }
        out
    }

    pub fn scale(&self, v: &[MTerm], c: &Scalar) -> Vec<MTerm> {
        let fld = self.ctx.field;
        if c.is_zero() {
            return Vec::new();
        }
        v.iter().map(|(m, k, a)| (*m, *k, fld.mul(a, c))).collect()
    }

    /// Splits a vector into one polynomial per component.
    pub fn to_columns(&self, v: &[MTerm]) -> Vec<Poly> {
        let mut parts: Vec<Vec<(Mono, Scalar)>> = vec![Vec::new(); self.rank()];
        for (m, c, a) in v {
            parts[*c as usize].push((*m, a.clone()));
        }
        parts.into_iter().map(|t| Poly::from_terms(self.ctx, t)).collect()
    }

    /// Builds a vector from one polynomial per component.
    pub fn from_columns(&self, col: &[Poly]) -> Vec<MTerm> {
        let mut v = Vec::new();
        for (c, p) in col.iter().enumerate() {
            for (m, a) in p.terms() {
                v.push((*m, c as u32, a.clone()));
            }
        }
        self.normalize(v)
    }
}
