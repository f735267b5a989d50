//! Schreyer frames: a (usually non-minimal) free resolution of `R/I` built
//! from a Gröbner basis, level by level, with the induced Schreyer orders.

use std::collections::HashMap;

use super::modvec::{MTerm, ModCtx, ModOrder};
use crate::groebner::{minimalize_monomials, GroebnerBasis};
use crate::polyring::{Ctx, Mono, Poly};
use crate::{Error, Result};

/// One level of the frame: elements of `F_{l-1}` (under its Schreyer
/// order) whose leading terms are distinct module monomials.
struct Level {
    mc: ModCtx,
    elems: Vec<Vec<MTerm>>,
}

impl Level {
    /// Context of the free module `F_l` whose basis is `elems`.
    fn next_ctx(&self) -> ModCtx {
        let ModOrder::Schreyer { tot, rank } = &self.mc.order else { unreachable!() };
        let k = self.elems.len();
        let tot_new: Vec<Mono> = self.elems.iter().map(|v| v[0].0.mul(&tot[v[0].1 as usize])).collect();
        let mut idx: Vec<usize> = (0..k).collect();
        idx.sort_by_key(|&i| (rank[self.elems[i][0].1 as usize], i));
        let mut rank_new = vec![0u32; k];
        for (pos, &i) in idx.iter().enumerate() {
            rank_new[i] = pos as u32;
        }
        let twists = self.elems.iter().map(|v| self.mc.deg(&v[0])).collect();
        ModCtx { ctx: self.mc.ctx, order: ModOrder::Schreyer { tot: tot_new, rank: rank_new }, twists }
    }

    /// Syzygies of the elements: a Gröbner basis of the syzygy module in the
    /// induced order, one element per minimal generator of each colon ideal.
    fn syzygies(&self, next: &ModCtx) -> Result<Vec<Vec<MTerm>>> {
        let fld = self.mc.ctx.field;
        let mut by_comp: HashMap<u32, Vec<usize>> = HashMap::new();
        for (k, v) in self.elems.iter().enumerate() {
            by_comp.entry(v[0].1).or_default().push(k);
        }
        let mut out = Vec::new();
        for (k, vk) in self.elems.iter().enumerate() {
            let (mk, ck) = (vk[0].0, vk[0].1);
            let earlier: Vec<usize> = by_comp[&ck].iter().cloned().filter(|&l| l < k).collect();
            if earlier.is_empty() {
                continue;
            }
            let quots: Vec<Mono> = earlier.iter().map(|&l| self.elems[l][0].0.lcm(&mk).div(&mk)).collect();
            let mins = minimalize_monomials(quots.clone());
            for q in mins {
                let l = earlier[quots.iter().position(|x| *x == q).unwrap()];
                let vl = &self.elems[l];
                let lcm = q.mul(&mk);
                let ql = lcm.div(&vl[0].0);
                // s = q * vk / lc(vk) - ql * vl / lc(vl)
                let a = fld.inv(&vk[0].2);
                let b = fld.neg(&fld.inv(&vl[0].2));
                let mut s = self.mc.add_mul_term(&[], &a, &q, vk);
                s = self.mc.add_mul_term(&s, &b, &ql, vl);
                let mut syz: Vec<MTerm> = vec![(q, k as u32, a.clone()), (ql, l as u32, b.clone())];
                while !s.is_empty() {
                    let (m, c) = (s[0].0, s[0].1);
                    let p = by_comp
                        .get(&c)
                        .and_then(|list| list.iter().find(|&&p| self.elems[p][0].0.divides(&m)))
                        .copied()
                        .ok_or_else(|| Error::Internal("Schreyer S-vector did not reduce to zero".into()))?;
                    let vp = &self.elems[p];
                    let qm = m.div(&vp[0].0);
                    let coef = fld.neg(&fld.div(&s[0].2, &vp[0].2));
                    s = self.mc.add_mul_term(&s, &coef, &qm, vp);
                    syz.push((qm, p as u32, coef));
                }
                let syz = next.normalize(syz);
                debug_assert!(syz[0].0 == q && syz[0].1 == k as u32);
                out.push(syz);
            }
        }
        Ok(out)
    }
}

/// Sorts elements so that, within one leading component, the exponent of
/// `var` in the leading monomial is non-decreasing. This bounds the length
/// of the frame by the number of variables.
fn sort_elems(elems: &mut [Vec<MTerm>], var: usize, ctx: Ctx) {
    let ord = ctx.order;
    elems.sort_by(|a, b| {
        a[0].1
            .cmp(&b[0].1)
            .then(a[0].0.exp(var).cmp(&b[0].0.exp(var)))
            .then(a[0].0.deg().cmp(&b[0].0.deg()))
            .then_with(|| ord.cmp(&b[0].0, &a[0].0))
    });
}

/// The frame maps as columns: `maps[i]` is `F_{i+1} -> F_i`, together with
/// the twists of every `F_i`.
pub struct Frame {
    pub twists: Vec<Vec<i64>>,
    pub cols: Vec<Vec<Vec<Poly>>>,
}

pub fn frame(gb: &GroebnerBasis) -> Result<Frame> {
    let ctx = gb.ctx();
    let n = ctx.n();
    let f0 = ModCtx { ctx, order: ModOrder::Schreyer { tot: vec![Mono::ONE], rank: vec![0] }, twists: vec![0] };
    let mut elems: Vec<Vec<MTerm>> = gb
        .polys()
        .iter()
        .map(|p| p.terms().iter().map(|(m, c)| (*m, 0u32, c.clone())).collect())
        .collect();
    sort_elems(&mut elems, 0, ctx);
    let mut level = Level { mc: f0, elems };
    let mut twists = vec![vec![0i64]];
    let mut cols = Vec::new();
    let mut depth = 1;
    while !level.elems.is_empty() {
        if depth > n + 1 {
            return Err(Error::Internal("resolution longer than the number of variables".into()));
        }
        let next = level.next_ctx();
        cols.push(level.elems.iter().map(|v| level.mc.to_columns(v)).collect());
        twists.push(next.twists.clone());
        let mut syz = level.syzygies(&next)?;
        sort_elems(&mut syz, depth % n, ctx);
        level = Level { mc: next, elems: syz };
        depth += 1;
    }
    Ok(Frame { twists, cols })
}
