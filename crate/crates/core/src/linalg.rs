//! Sparse exact linear algebra: incremental row echelon forms, ranks and
//! kernels over a [`Field`].

use std::collections::{BTreeMap, HashMap};

use crate::polyring::{Ctx, Field, Mono, Poly, Scalar};

/// Sparse vector: `(column, value)` pairs, strictly increasing columns, no
/// zero values.
pub type SparseVec = Vec<(usize, Scalar)>;

/// `a + c * b`.
pub fn axpy(field: Field, a: &[(usize, Scalar)], c: &Scalar, b: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, field.mul(c, &b[j].1)));
            j += 1;
        } else {
            let s = field.add(&a[i].1, &field.mul(c, &b[j].1));
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(field: Field, v: &[(usize, Scalar)], c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(k, x)| (*k, field.mul(x, c))).collect()
}

/// Builds a sparse vector from a dense slice.
pub fn from_dense(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn to_dense(v: &[(usize, Scalar)], n: usize) -> Vec<Scalar> {
    let mut d = vec![Scalar::ZERO; n];
    for (i, x) in v {
        d[*i] = x.clone();
    }
    d
}

/// An incrementally built row echelon form. Every stored row has leading
/// coefficient 1 at its pivot column.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(field: Field) -> Echelon {
        Echelon { field, rows: BTreeMap::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &usize> {
        self.rows.keys()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn rows(&self) -> impl Iterator<Item = (&usize, &SparseVec)> {
        self.rows.iter()
    }

    /// Reduces `v` against every pivot it touches.
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let mut v: SparseVec = v.to_vec();
        let mut pos = 0;
        while pos < v.len() {
            let col = v[pos].0;
            if let Some(row) = self.rows.get(&col) {
                let c = self.field.neg(&v[pos].1);
                v = axpy(self.field, &v, &c, row);
                // entries before `pos` are untouched by the pivot row
            } else {
                pos += 1;
            }
        }
        v
    }

    /// Same as [`Echelon::reduce`] but also reports the combination of pivot
    /// rows that was subtracted, as `(pivot column, coefficient)`.
    pub fn reduce_tracked(&self, v: &[(usize, Scalar)]) -> (SparseVec, Vec<(usize, Scalar)>) {
        let mut v: SparseVec = v.to_vec();
        let mut used = Vec::new();
        let mut pos = 0;
        while pos < v.len() {
            let col = v[pos].0;
            if let Some(row) = self.rows.get(&col) {
                used.push((col, v[pos].1.clone()));
                let c = self.field.neg(&v[pos].1);
                v = axpy(self.field, &v, &c, row);
            } else {
                pos += 1;
            }
        }
        (v, used)
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds a row; returns its pivot column if it was independent.
    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> Option<usize> {
        let r = self.reduce(v);
        if r.is_empty() {
            return None;
        }
        let inv = self.field.inv(&r[0].1);
        let r = scale(self.field, &r, &inv);
        let col = r[0].0;
        self.rows.insert(col, r);
        Some(col)
    }

    /// Back-substitutes so every pivot column is zero in all other rows.
    pub fn into_rref(mut self) -> Echelon {
        let cols: Vec<usize> = self.rows.keys().rev().cloned().collect();
        for (k, &c) in cols.iter().enumerate() {
            let row = self.rows[&c].clone();
            for &c2 in &cols[k + 1..] {
                let other = &self.rows[&c2];
                if let Ok(i) = other.binary_search_by(|e| e.0.cmp(&c)) {
                    let f = self.field.neg(&other[i].1);
                    let new = axpy(self.field, other, &f, &row);
                    self.rows.insert(c2, new);
                }
            }
        }
        self
    }

    /// Kernel of the matrix whose rows were inserted, as vectors of length
    /// `ncols`.
    pub fn kernel(&self, ncols: usize) -> Vec<SparseVec> {
        let rref = self.clone().into_rref();
        let mut out = Vec::new();
        for free in 0..ncols {
            if rref.rows.contains_key(&free) {
                continue;
            }
            let mut v: SparseVec = vec![(free, Scalar::ONE)];
            for (&p, row) in &rref.rows {
                if let Ok(i) = row.binary_search_by(|e| e.0.cmp(&free)) {
                    v.push((p, self.field.neg(&row[i].1)));
                }
            }
            v.sort_by_key(|e| e.0);
            out.push(v);
        }
        out
    }
}

/// Rank of a list of sparse rows.
pub fn rank(field: Field, rows: &[SparseVec]) -> usize {
    let mut e = Echelon::new(field);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Kernel of the linear map `x ↦ Σ_j x_j · cols[j]`, i.e. the relations among
/// the given column vectors. Returns basis vectors indexed by column.
pub fn column_relations(field: Field, cols: &[SparseVec]) -> Vec<SparseVec> {
    // Row-reduce the transposed system tracking which columns were used.
    let mut ech = Echelon::new(field);
    let mut owners: BTreeMap<usize, SparseVec> = BTreeMap::new();
    let mut rels = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        let mut v = c.clone();
        let mut combo: SparseVec = vec![(j, Scalar::ONE)];
        let mut pos = 0;
        while pos < v.len() {
            let col = v[pos].0;
            if let Some(row) = ech.rows.get(&col) {
                let f = field.neg(&v[pos].1);
                v = axpy(field, &v, &f, row);
                combo = axpy(field, &combo, &f, &owners[&col]);
            } else {
                pos += 1;
            }
        }
        if v.is_empty() {
            rels.push(combo);
        } else {
            let inv = field.inv(&v[0].1);
            let col = v[0].0;
            ech.rows.insert(col, scale(field, &v, &inv));
            owners.insert(col, scale(field, &combo, &inv));
        }
    }
    rels
}

/// Coordinates of polynomials with respect to a fixed list of monomials.
#[derive(Clone, Debug, Default)]
pub struct MonoBasis {
    monos: Vec<Mono>,
    index: HashMap<Mono, usize>,
}

impl MonoBasis {
    pub fn new(monos: Vec<Mono>) -> MonoBasis {
        let index = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        MonoBasis { monos, index }
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monos(&self) -> &[Mono] {
        &self.monos
    }

    pub fn index_of(&self, m: &Mono) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinate vector of `f`, or `None` if `f` has a monomial outside the
    /// basis.
    pub fn coords(&self, f: &Poly) -> Option<SparseVec> {
        let mut v = Vec::with_capacity(f.len());
        for (m, c) in f.terms() {
            v.push((self.index_of(m)?, c.clone()));
        }
        v.sort_by_key(|e| e.0);
        Some(v)
    }

    pub fn poly(&self, ctx: Ctx, v: &[(usize, Scalar)]) -> Poly {
        Poly::from_terms(ctx, v.iter().map(|(i, c)| (self.monos[*i], c.clone())).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn dense(rows: &[&[i64]]) -> Vec<SparseVec> {
        rows.iter().map(|r| from_dense(&r.iter().map(|&x| q(x)).collect::<Vec<_>>())).collect()
    }

    fn apply(rows: &[SparseVec], v: &SparseVec, n: usize) -> Vec<Scalar> {
        let d = to_dense(v, n);
        rows.iter()
            .map(|r| r.iter().fold(Scalar::ZERO, |acc, (j, x)| acc.add(&x.mul(&d[*j]))))
            .collect()
    }

    #[test]
    fn rank_and_kernel() {
        let m = dense(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(Field::Rational, &m), 2);
        let mut e = Echelon::new(Field::Rational);
        for r in &m {
            e.insert(r);
        }
        let k = e.kernel(3);
        assert_eq!(k.len(), 1);
        assert!(apply(&m, &k[0], 3).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn relations_among_columns() {
        let cols = dense(&[&[1, 0], &[0, 1], &[1, 1], &[2, 2]]);
        let rels = column_relations(Field::Rational, &cols);
        assert_eq!(rels.len(), 2);
        for r in &rels {
            let mut acc: SparseVec = Vec::new();
            for (j, c) in r {
                acc = axpy(Field::Rational, &acc, c, &cols[*j]);
            }
            assert!(acc.is_empty());
        }
    }

    #[test]
    fn prime_field_rank_differs() {
        let m = dense(&[&[1, 1], &[1, 4]]);
        assert_eq!(rank(Field::Rational, &m), 2);
        assert_eq!(rank(Field::prime(3).unwrap(), &dense(&[&[1, 1], &[1, 1]])), 1);
    }
}
