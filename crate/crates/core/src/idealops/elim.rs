//! Elimination, intersection, ideal quotients and saturation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{exact_div, random_linear_form, Ideal};
use crate::groebner::buchberger;
use crate::polyring::{Ctx, Mono, MonoOrder, OrderKind, Poly, Ring, Scalar};
use crate::{Error, Result};

/// `I ∩ K[remaining variables]`, returned in the ring of the remaining
/// variables (same names, same field, degrevlex).
pub fn eliminate(ideal: &Ideal, vars: &[usize]) -> Result<Ideal> {
    let ring = ideal.ring();
    let n = ring.nvars();
    if vars.iter().any(|&v| v >= n) {
        return Err(Error::Input("elimination variable out of range".into()));
    }
    let mut elim: Vec<usize> = vars.to_vec();
    elim.sort_unstable();
    elim.dedup();
    if elim.len() == n {
        return Err(Error::Input("cannot eliminate every variable".into()));
    }
    let keep: Vec<usize> = (0..n).filter(|i| !elim.contains(i)).collect();
    let mask = ring.order().zero_mask;
    let mut target_mask = 0u16;
    for (j, &i) in keep.iter().enumerate() {
        if mask & (1 << i) != 0 {
            target_mask |= 1 << j;
        }
    }
    let target = Ring::new(
        keep.iter().map(|&i| ring.names()[i].clone()).collect(),
        ring.field(),
        MonoOrder::DEGREVLEX.with_zero_mask(target_mask),
    );
    if elim.is_empty() {
        return Ideal::new(&target, ideal.gens().iter().map(|g| g.recast(target.ctx)).collect());
    }
    let gens = eliminate_gens(ring.ctx, ideal.gens(), &elim)?;
    let k = elim.len();
    let out = gens
        .into_iter()
        .map(|g| Poly::from_terms(target.ctx, g.terms().iter().map(|(m, c)| (m.slice(k, n - k), c.clone())).collect()))
        .collect();
    Ideal::new(&target, out)
}

/// Gröbner basis elements free of the `elim` variables, written in the
/// permuted context where the eliminated variables come first.
fn eliminate_gens(ctx: Ctx, gens: &[Poly], elim: &[usize]) -> Result<Vec<Poly>> {
    let n = ctx.n();
    let keep: Vec<usize> = (0..n).filter(|i| !elim.contains(i)).collect();
    let mut perm = vec![0usize; n];
    for (j, &i) in elim.iter().chain(keep.iter()).enumerate() {
        perm[i] = j;
    }
    let mut mask = 0u16;
    for (i, &p) in perm.iter().enumerate() {
        if ctx.order.zero_mask & (1 << i) != 0 {
            mask |= 1 << p;
        }
    }
    let order = MonoOrder { kind: OrderKind::Block(elim.len() as u8), zero_mask: mask };
    let pctx = Ctx::new(n, ctx.field, order);
    let pg: Vec<Poly> = gens.iter().map(|g| g.permute(pctx, &perm)).collect();
    let gb = buchberger(pctx, &pg)?;
    let k = elim.len();
    let low: u16 = if k >= 16 { u16::MAX } else { (1u16 << k) - 1 };
    Ok(gb.polys().iter().filter(|p| p.support() & low == 0).cloned().collect())
}

/// `I ∩ J` via a weight-0 auxiliary variable `s`: eliminate `s` from
/// `s·I + (1 - s)·J`.
pub fn intersect(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    if a.ring() != b.ring() {
        return Err(Error::Input("ideals live in different rings".into()));
    }
    let ring = a.ring();
    if a.is_zero() || b.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    if a.is_unit() {
        return Ok(b.clone());
    }
    if b.is_unit() {
        return Ok(a.clone());
    }
    let n = ring.nvars();
    if n + 1 > crate::polyring::MAX_VARS {
        return Err(Error::Input("too many variables for intersection".into()));
    }
    let mask = (ring.order().zero_mask << 1) | 1;
    let ectx = Ctx::new(n + 1, ring.field(), MonoOrder { kind: OrderKind::Block(1), zero_mask: mask });
    let s = Poly::var(ectx, 0);
    let one_minus_s = &Poly::constant(ectx, Scalar::ONE) - &s;
    let mut gens = Vec::new();
    for g in a.gens() {
        gens.push(&s * &g.shift(ectx, 1));
    }
    for g in b.gens() {
        gens.push(&one_minus_s * &g.shift(ectx, 1));
    }
    let gb = buchberger(ectx, &gens)?;
    let out = gb
        .polys()
        .iter()
        .filter(|p| p.support() & 1 == 0)
        .map(|p| Poly::from_terms(ring.ctx, p.terms().iter().map(|(m, c)| (m.slice(1, n), c.clone())).collect()))
        .collect();
    Ideal::new(ring, out)
}

/// `I : g`.
pub fn quotient_by(ideal: &Ideal, g: &Poly) -> Result<Ideal> {
    if g.is_zero() {
        return Err(Error::Input("quotient by the zero polynomial".into()));
    }
    let ring = ideal.ring();
    if g.is_constant() {
        return Ok(ideal.clone());
    }
    let gi = Ideal::new(ring, vec![g.clone()])?;
    let cap = intersect(ideal, &gi)?;
    let mut out = Vec::with_capacity(cap.gens().len());
    for h in cap.gens() {
        let q = exact_div(h, g).ok_or_else(|| Error::Internal("intersection element not divisible".into()))?;
        out.push(q);
    }
    Ideal::new(ring, out)
}

/// `I : J = ∩_g (I : g)` over the generators of `J`.
pub fn quotient(ideal: &Ideal, j: &Ideal) -> Result<Ideal> {
    if ideal.ring() != j.ring() {
        return Err(Error::Input("ideals live in different rings".into()));
    }
    if j.is_zero() {
        return Err(Error::Input("quotient by the zero ideal".into()));
    }
    let mut acc: Option<Ideal> = None;
    for g in j.gens() {
        let q = quotient_by(ideal, g)?;
        acc = Some(match acc {
            None => q,
            Some(a) => intersect(&a, &q)?,
        });
    }
    Ok(acc.unwrap())
}

/// `I : J^∞` by iterated quotients until the canonical basis stops
/// changing.
pub fn saturate_by(ideal: &Ideal, j: &Ideal) -> Result<Ideal> {
    let mut cur = ideal.clone();
    loop {
        let next = quotient(&cur, j)?;
        if next.equals(&cur) {
            return Ok(cur);
        }
        cur = next;
    }
}

/// `I : ℓ^∞` for `ℓ = x_last` via a degrevlex basis: divide every basis
/// element by its largest power of the last variable. Returns `None` when no
/// element is divisible (then `ℓ` is a non-zero-divisor and `I : ℓ^∞ = I`).
fn colon_last_var_power(ctx: Ctx, gens: &[Poly]) -> Result<Option<Vec<Poly>>> {
    let last = ctx.n() - 1;
    let gb = buchberger(ctx, gens)?;
    let mut changed = false;
    let mut out = Vec::with_capacity(gb.len());
    for p in gb.polys() {
        let v = p.var_valuation(last);
        if v > 0 {
            changed = true;
            out.push(p.div_mono(&Mono::var_pow(last, v)));
        } else {
            out.push(p.clone());
        }
    }
    Ok(changed.then_some(out))
}

/// Candidate linear forms for saturation, as coefficient vectors: `x_n`,
/// `x_0`, the remaining variables from `x_{n-1}` down, then seeded random
/// forms. A variable keeps the basis sparse, so all of them are tried
/// before a dense random change of coordinates.
fn candidates(ring: &Ring) -> impl Iterator<Item = Vec<Scalar>> + '_ {
    let n = ring.nvars();
    let unit = move |i: usize| {
        let mut v = vec![Scalar::ZERO; n];
        v[i] = Scalar::ONE;
        v
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut fixed = vec![unit(n - 1), unit(0)];
    fixed.extend((1..n.saturating_sub(1)).rev().map(unit));
    let randoms = (0..4).map(move |_| {
        let f = random_linear_form(ring, &mut rng);
        let mut v = vec![Scalar::ZERO; n];
        for (m, c) in f.terms() {
            let i = (0..n).find(|&i| m.exp(i) == 1).unwrap();
            v[i] = c.clone();
        }
        v
    });
    fixed.into_iter().chain(randoms)
}

/// `I : ℓ^∞` for a linear form `ℓ` with coefficient vector `c`.
pub(crate) fn colon_linear_power(ideal: &Ideal, c: &[Scalar]) -> Result<Option<Ideal>> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let ctx = ring.ctx.with_order(MonoOrder::DEGREVLEX);
    let fld = ring.field();
    // pick a pivot index p with c_p != 0 and move it to the last slot,
    // keeping the order of the other variables
    let Some(p) = (0..n).rev().find(|&i| !c[i].is_zero()) else {
        return Err(Error::Input("zero linear form".into()));
    };
    let perm: Vec<usize> = (0..n).map(|i| if i == p { n - 1 } else if i > p { i - 1 } else { i }).collect();
    let mut unperm = vec![0; n];
    for (i, &j) in perm.iter().enumerate() {
        unperm[j] = i;
    }
    let mut cc = vec![Scalar::ZERO; n];
    for (i, &j) in perm.iter().enumerate() {
        cc[j] = c[i].clone();
    }
    // φ: x_last ↦ (x_last - Σ_{i<last} c_i x_i) / c_last; then φ(ℓ) = x_last
    let inv = fld.inv(&cc[n - 1]);
    let mut fwd: Vec<Poly> = (0..n).map(|i| Poly::var(ctx, i)).collect();
    let mut img = Poly::var(ctx, n - 1);
    for (i, ci) in cc.iter().enumerate().take(n - 1) {
        if !ci.is_zero() {
            img = &img - &Poly::var(ctx, i).scale(ci);
        }
    }
    fwd[n - 1] = img.scale(&inv);
    let mut back: Vec<Poly> = (0..n).map(|i| Poly::var(ctx, i)).collect();
    let mut l = Poly::zero(ctx);
    for (i, ci) in cc.iter().enumerate() {
        if !ci.is_zero() {
            l = &l + &Poly::var(ctx, i).scale(ci);
        }
    }
    back[n - 1] = l;
    let moved: Vec<Poly> = ideal.gens().iter().map(|g| g.permute(ctx, &perm).substitute(&fwd)).collect();
    let Some(sat) = colon_last_var_power(ctx, &moved)? else {
        return Ok(None);
    };
    let orig: Vec<Poly> = sat
        .iter()
        .map(|g| g.substitute(&back).permute(ctx, &unperm).recast(ring.ctx))
        .collect();
    Ok(Some(Ideal::new(ring, orig)?))
}

/// `I : m^∞` for the irrelevant ideal `m`.
///
/// For a linear form `ℓ`, `S = I : ℓ^∞` always contains `I^sat`; when the
/// Hilbert polynomials of `S` and `I` agree, `S / I^sat` has finite length
/// and therefore `S = I^sat`. Candidates are tried in a fixed order; if none
/// is certified the iterated quotient `I : m` is used instead.
pub fn saturate(ideal: &Ideal) -> Result<Ideal> {
    let ring = ideal.ring();
    if ring.order().zero_mask != 0 {
        return saturate_by(ideal, &Ideal::maximal(ring));
    }
    if ideal.is_zero() {
        return Ok(ideal.clone());
    }
    if ideal.is_unit() {
        return Ok(ideal.clone());
    }
    let hp = ideal.hilbert()?.polynomial.clone();
    for c in candidates(ring) {
        if c.iter().all(|x| x.is_zero()) {
            continue;
        }
        match colon_linear_power(ideal, &c)? {
            None => return Ok(ideal.clone()),
            Some(s) => {
                if s.hilbert()?.polynomial == hp {
                    return Ok(s);
                }
            }
        }
    }
    saturate_by(ideal, &Ideal::maximal(ring))
}
