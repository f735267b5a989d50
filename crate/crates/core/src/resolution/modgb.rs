//! Buchberger's algorithm for graded submodules of a free module, and
//! syzygies of a matrix by the stacked-identity trick.

use std::collections::BTreeMap;

use super::modvec::{MTerm, ModCtx, ModOrder};
use super::ModuleMap;
use crate::polyring::{Mono, Poly, Scalar};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct ModBuchberger {
    mc: ModCtx,
    basis: Vec<Vec<MTerm>>,
    active: Vec<bool>,
    pairs: BTreeMap<(i64, usize, usize), Mono>,
    pending: BTreeMap<(i64, usize), Vec<MTerm>>,
    counter: usize,
}

fn lead(v: &[MTerm]) -> (Mono, u32) {
    (v[0].0, v[0].1)
}

impl ModBuchberger {
    pub fn new(mc: ModCtx) -> ModBuchberger {
        ModBuchberger {
            mc,
            basis: Vec::new(),
            active: Vec::new(),
            pairs: BTreeMap::new(),
            pending: BTreeMap::new(),
            counter: 0,
        }
    }

    pub fn mctx(&self) -> &ModCtx {
        &self.mc
    }

    /// Queues homogeneous vectors.
    pub fn add(&mut self, v: Vec<MTerm>) -> Result<()> {
        let idx = self.counter;
        self.counter += 1;
        if v.is_empty() {
            return Ok(());
        }
        let d = self.mc.deg(&v[0]);
        if v.iter().any(|t| self.mc.deg(t) != d) {
            return Err(Error::Input("module element is not homogeneous".into()));
        }
        self.pending.insert((d, idx), v);
        Ok(())
    }

    /// Normal form modulo the active basis (field arithmetic, full reduction).
    pub fn reduce(&self, v: &[MTerm]) -> Vec<MTerm> {
        let fld = self.mc.ctx.field;
        let mut v = v.to_vec();
        let mut pos = 0;
        while pos < v.len() {
            let (m, c) = (v[pos].0, v[pos].1);
            let hit = (0..self.basis.len()).find(|&k| {
                self.active[k] && self.basis[k][0].1 == c && self.basis[k][0].0.divides(&m)
            });
            match hit {
                Some(k) => {
                    let g = &self.basis[k];
                    let q = m.div(&g[0].0);
                    let coef = fld.neg(&fld.div(&v[pos].2, &g[0].2));
                    v = self.mc.add_mul_term(&v, &coef, &q, g);
                }
                None => pos += 1,
            }
        }
        v
    }

    fn install(&mut self, h: Vec<MTerm>) {
        let fld = self.mc.ctx.field;
        let inv = fld.inv(&h[0].2);
        let h = self.mc.scale(&h, &inv);
        let k = self.basis.len();
        let (lh, ch) = lead(&h);
        let cands: Vec<(usize, Mono)> = (0..k)
            .filter(|&i| self.active[i] && self.basis[i][0].1 == ch)
            .map(|i| (i, self.basis[i][0].0.lcm(&lh)))
            .collect();
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            for b in 0..cands.len() {
                if a != b && keep[b] && cands[b].1.divides(&cands[a].1) && (cands[b].1 != cands[a].1 || b > a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        let basis = &self.basis;
        self.pairs.retain(|&(_, j, i), l| {
            if basis[i][0].1 != ch || !lh.divides(l) {
                return true;
            }
            let li = basis[i][0].0.lcm(&lh);
            let lj = basis[j][0].0.lcm(&lh);
            li == *l || lj == *l
        });
        for (a, (i, l)) in cands.into_iter().enumerate() {
            if keep[a] {
                let d = l.deg() as i64 + self.mc.twists[ch as usize];
                self.pairs.insert((d, k, i), l);
            }
        }
        for i in 0..k {
            if self.active[i] && self.basis[i][0].1 == ch && lh.divides(&self.basis[i][0].0) {
                self.active[i] = false;
            }
        }
        self.basis.push(h);
        self.active.push(true);
    }

    fn next_degree(&self) -> Option<i64> {
        let a = self.pending.keys().next().map(|k| k.0);
        let b = self.pairs.keys().next().map(|k| k.0);
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    pub fn compute_to(&mut self, limit: Option<i64>) {
        let fld = self.mc.ctx.field;
        while let Some(d) = self.next_degree() {
            if limit.is_some_and(|l| d > l) {
                break;
            }
            let keys: Vec<(i64, usize)> = self.pending.range((d, 0)..(d + 1, 0)).map(|(k, _)| *k).collect();
            for key in keys {
                let g = self.pending.remove(&key).unwrap();
                let r = self.reduce(&g);
                if !r.is_empty() {
                    self.install(r);
                }
            }
            while let Some((&key, _)) = self.pairs.iter().next() {
                if key.0 != d {
                    break;
                }
                let l = self.pairs.remove(&key).unwrap();
                let (_, j, i) = key;
                let f = &self.basis[i];
                let g = &self.basis[j];
                let a = l.div(&f[0].0);
                let b = l.div(&g[0].0);
                // both are monic
                let s = self.mc.add_mul_term(&f.iter().map(|(m, c, x)| (m.mul(&a), *c, x.clone())).collect::<Vec<_>>(), &fld.neg(&Scalar::ONE), &b, g);
                let r = self.reduce(&s);
                if !r.is_empty() {
                    self.install(r);
                }
            }
        }
    }

    /// Minimal Gröbner basis (active elements), after a complete run.
    pub fn basis(&mut self) -> Vec<Vec<MTerm>> {
        self.compute_to(None);
        (0..self.basis.len()).filter(|&k| self.active[k]).map(|k| self.basis[k].clone()).collect()
    }
}

/// Minimal generators among `vecs` (greedy by degree, then listed order).
pub fn minimal_subset(mc: &ModCtx, vecs: Vec<Vec<MTerm>>) -> Result<Vec<Vec<MTerm>>> {
    let mut items: Vec<(i64, usize, Vec<MTerm>)> =
        vecs.into_iter().enumerate().filter(|(_, v)| !v.is_empty()).map(|(i, v)| (mc.deg(&v[0]), i, v)).collect();
    items.sort_by_key(|x| (x.0, x.1));
    let mut mb = ModBuchberger::new(mc.clone());
    let mut kept = Vec::new();
    for (d, _, v) in items {
        mb.compute_to(Some(d));
        if mb.reduce(&v).is_empty() {
            continue;
        }
        mb.add(v.clone())?;
        kept.push(v);
    }
    Ok(kept)
}

/// Generators of the kernel of `m`, as the columns of a map into the source
/// of `m`. The generating set is minimal.
pub fn syzygies(m: &ModuleMap) -> Result<ModuleMap> {
    let ctx = m.ctx;
    let p = m.target.len();
    let q = m.source.len();
    if ctx.order.zero_mask != 0 {
        return Err(Error::Input("syzygies need a standard grading".into()));
    }
    let mut twists = m.target.clone();
    twists.extend(m.source.iter().cloned());
    let big = ModCtx { ctx, order: ModOrder::Pot, twists };
    let mut mb = ModBuchberger::new(big.clone());
    for j in 0..q {
        let mut v: Vec<MTerm> = Vec::new();
        for i in 0..p {
            for (mono, c) in m.entry(i, j).terms() {
                v.push((*mono, i as u32, c.clone()));
            }
        }
        v.push((Mono::ONE, (p + j) as u32, Scalar::ONE));
        mb.add(big.normalize(v))?;
    }
    let gb = mb.basis();
    let small = ModCtx { ctx, order: ModOrder::Pot, twists: m.source.clone() };
    let syz: Vec<Vec<MTerm>> = gb
        .into_iter()
        .filter(|v| v[0].1 as usize >= p)
        .map(|v| small.normalize(v.into_iter().map(|(mo, c, a)| (mo, c - p as u32, a)).collect()))
        .collect();
    let syz = minimal_subset(&small, syz)?;
    let mut syz: Vec<(i64, Vec<Poly>)> = syz.iter().map(|v| (small.deg(&v[0]), small.to_columns(v))).collect();
    syz.sort_by_key(|a| a.0);
    let source: Vec<i64> = syz.iter().map(|x| x.0).collect();
    let cols: Vec<Vec<Poly>> = syz.into_iter().map(|x| x.1).collect();
    Ok(ModuleMap::from_columns(ctx, m.source.clone(), source, cols))
}
