//! Sparse Gauss–Jordan elimination over Q and F_p.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{HomlinError, SparseMat};
use crate::scalar::{Ring, Scalar};

trait Arith {
    type E: Clone;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn sub_mul(&self, a: &Self::E, c: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn from_scalar(&self, s: &Scalar) -> Self::E;
    fn to_scalar(&self, e: &Self::E) -> Scalar;
}

struct Rationals;

impl Arith for Rationals {
    type E = Scalar;
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn sub_mul(&self, a: &Scalar, c: &Scalar, b: &Scalar) -> Scalar {
        a - c * b
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn inv(&self, a: &Scalar) -> Scalar {
        a.recip()
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        -a
    }
    fn from_scalar(&self, s: &Scalar) -> Scalar {
        s.clone()
    }
    fn to_scalar(&self, e: &Scalar) -> Scalar {
        e.clone()
    }
}

struct PrimeField {
    p: u64,
    ring: Ring,
}

impl Arith for PrimeField {
    type E = u64;
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn sub_mul(&self, a: &u64, c: &u64, b: &u64) -> u64 {
        let p = self.p as u128;
        let prod = (*c as u128 * *b as u128) % p;
        ((*a as u128 + p - prod) % p) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat: a^(p-2).
        let (mut base, mut exp, mut acc) = (*a as u128, self.p - 2, 1u128);
        let p = self.p as u128;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn from_scalar(&self, s: &Scalar) -> u64 {
        self.ring.to_u64(&self.ring.element(s).expect("prime-field element"))
    }
    fn to_scalar(&self, e: &u64) -> Scalar {
        Scalar::from_integer(BigInt::from(*e))
    }
}

type Row<E> = Vec<(usize, E)>;

/// `v − c·p` for sorted sparse rows.
fn sub_scaled<F: Arith>(f: &F, v: &Row<F::E>, c: &F::E, p: &Row<F::E>) -> Row<F::E> {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        let take_v = j >= p.len() || (i < v.len() && v[i].0 < p[j].0);
        let take_p = i >= v.len() || (j < p.len() && p[j].0 < v[i].0);
        if take_v {
            out.push(v[i].clone());
            i += 1;
        } else if take_p {
            let val = f.neg(&f.mul(c, &p[j].1));
            if !f.is_zero(&val) {
                out.push((p[j].0, val));
            }
            j += 1;
        } else {
            let val = f.sub_mul(&v[i].1, c, &p[j].1);
            if !f.is_zero(&val) {
                out.push((v[i].0, val));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Echelon basis under construction: pivot column ↦ row with leading entry 1.
struct Echelon<'a, F: Arith> {
    f: &'a F,
    pivots: BTreeMap<usize, Row<F::E>>,
}

impl<'a, F: Arith> Echelon<'a, F> {
    fn new(f: &'a F) -> Self {
        Echelon { f, pivots: BTreeMap::new() }
    }

    /// Reduces `v` against every current pivot.
    fn reduce(&self, mut v: Row<F::E>) -> Row<F::E> {
        let mut idx = 0;
        while idx < v.len() {
            let (c, val) = (v[idx].0, v[idx].1.clone());
            if let Some(p) = self.pivots.get(&c) {
                v = sub_scaled(self.f, &v, &val, p);
            } else {
                idx += 1;
            }
        }
        v
    }

    /// Inserts `v` if it is independent; returns whether it was.
    fn insert(&mut self, v: Row<F::E>) -> bool {
        let v = self.reduce(v);
        let Some((lead, lv)) = v.first().cloned() else {
            return false;
        };
        let inv = self.f.inv(&lv);
        let v: Row<F::E> = v.into_iter().map(|(c, x)| (c, self.f.mul(&x, &inv))).collect();
        self.pivots.insert(lead, v);
        true
    }

    /// Fully reduced rows in increasing pivot order.
    fn into_rref(mut self) -> Vec<(usize, Row<F::E>)> {
        let leads: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for lead in leads {
            let row = self.pivots.remove(&lead).unwrap();
            let mut v = row;
            // Only pivots with larger lead can appear after position 0.
            let mut idx = 1;
            while idx < v.len() {
                let (c, val) = (v[idx].0, v[idx].1.clone());
                if let Some(p) = self.pivots.get(&c) {
                    v = sub_scaled(self.f, &v, &val, p);
                } else {
                    idx += 1;
                }
            }
            self.pivots.insert(lead, v);
        }
        self.pivots.into_iter().collect()
    }
}

fn convert<F: Arith>(f: &F, rows: Vec<Vec<(usize, Scalar)>>) -> Vec<Row<F::E>> {
    rows.into_iter()
        .map(|r| r.iter().map(|(c, v)| (*c, f.from_scalar(v))).filter(|(_, v)| !f.is_zero(v)).collect())
        .collect()
}

fn rref_rows<F: Arith>(f: &F, rows: Vec<Vec<(usize, Scalar)>>) -> Vec<(usize, Vec<(usize, Scalar)>)> {
    let mut ech = Echelon::new(f);
    for r in convert(f, rows) {
        ech.insert(r);
    }
    ech.into_rref()
        .into_iter()
        .map(|(lead, r)| (lead, r.iter().map(|(c, v)| (*c, f.to_scalar(v))).collect()))
        .collect()
}

fn rank_rows<F: Arith>(f: &F, rows: Vec<Vec<(usize, Scalar)>>) -> usize {
    let mut ech = Echelon::new(f);
    convert(f, rows).into_iter().filter(|r| ech.insert(r.clone())).count()
}

fn require_field(ring: Ring) -> Result<(), HomlinError> {
    if ring.is_field() {
        Ok(())
    } else {
        Err(HomlinError::NotAField(ring))
    }
}

/// Reduced row echelon form of a list of sparse rows: `(pivot column, row)`
/// pairs with leading entry one and zeros in every other pivot column.
pub fn rref(ring: Ring, rows: Vec<Vec<(usize, Scalar)>>) -> Result<Vec<(usize, Vec<(usize, Scalar)>)>, HomlinError> {
    require_field(ring)?;
    Ok(match ring {
        Ring::PrimeField(p) => rref_rows(&PrimeField { p, ring }, rows),
        _ => rref_rows(&Rationals, rows),
    })
}

pub fn rank(m: &SparseMat) -> Result<usize, HomlinError> {
    require_field(m.ring())?;
    // Column rank equals row rank; columns are already materialized.
    let cols: Vec<Vec<(usize, Scalar)>> = (0..m.cols()).map(|j| m.column(j).to_vec()).collect();
    Ok(match m.ring() {
        Ring::PrimeField(p) => rank_rows(&PrimeField { p, ring: m.ring() }, cols),
        _ => rank_rows(&Rationals, cols),
    })
}

/// Basis of the null space. Each vector has a distinguished free coordinate
/// equal to one where all other basis vectors vanish, and is zero on every
/// later free coordinate; vectors are ordered by that coordinate.
pub fn kernel_basis(m: &SparseMat) -> Result<Vec<Vec<Scalar>>, HomlinError> {
    let ring = m.ring();
    let reduced = rref(ring, m.row_vectors())?;
    let mut is_pivot = vec![false; m.cols()];
    for (lead, _) in &reduced {
        is_pivot[*lead] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols()).filter(|&j| !is_pivot[j]) {
        let mut v = vec![Scalar::zero(); m.cols()];
        v[free] = ring.one();
        for (lead, row) in &reduced {
            if let Ok(k) = row.binary_search_by_key(&free, |(c, _)| *c) {
                v[*lead] = ring.neg(&row[k].1);
            }
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Basis of the column space in reduced echelon form.
pub fn image_basis(m: &SparseMat) -> Result<Vec<Vec<Scalar>>, HomlinError> {
    let cols: Vec<Vec<(usize, Scalar)>> = (0..m.cols()).map(|j| m.column(j).to_vec()).collect();
    let reduced = rref(m.ring(), cols)?;
    Ok(reduced
        .into_iter()
        .map(|(_, row)| {
            let mut v = vec![Scalar::zero(); m.rows()];
            for (i, x) in row {
                v[i] = x;
            }
            v
        })
        .collect())
}

/// Some solution of `m·x = b`, or `None` when `b` is not in the column space.
/// Free variables are set to zero.
pub fn solve(m: &SparseMat, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, HomlinError> {
    let ring = m.ring();
    assert_eq!(b.len(), m.rows(), "right-hand side length mismatch");
    let mut rows = m.row_vectors();
    let aug = m.cols();
    for (i, r) in rows.iter_mut().enumerate() {
        let v = ring.element(&b[i]).map_err(|_| HomlinError::NotAField(ring))?;
        if !v.is_zero() {
            r.push((aug, v));
        }
    }
    let reduced = rref(ring, rows)?;
    let mut x = vec![Scalar::zero(); m.cols()];
    for (lead, row) in reduced {
        if lead == aug {
            return Ok(None);
        }
        if let Some((c, v)) = row.last() {
            if *c == aug {
                x[lead] = v.clone();
            }
        }
    }
    Ok(Some(x))
}

fn extend_rows<F: Arith>(f: &F, base: &[Vec<Scalar>], candidates: &[Vec<Scalar>]) -> Vec<usize> {
    let dense_to_sparse = |v: &Vec<Scalar>| -> Vec<(usize, Scalar)> {
        v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
    };
    let mut ech = Echelon::new(f);
    for r in convert(f, base.iter().map(dense_to_sparse).collect()) {
        ech.insert(r);
    }
    convert(f, candidates.iter().map(dense_to_sparse).collect())
        .into_iter()
        .enumerate()
        .filter(|(_, r)| ech.insert(r.clone()))
        .map(|(i, _)| i)
        .collect()
}

/// Indices of `candidates`, chosen greedily in order, that extend the span of
/// `base` to the span of `base ∪ candidates`.
pub fn independent_extension(
    ring: Ring,
    base: &[Vec<Scalar>],
    candidates: &[Vec<Scalar>],
) -> Result<Vec<usize>, HomlinError> {
    require_field(ring)?;
    Ok(match ring {
        Ring::PrimeField(p) => extend_rows(&PrimeField { p, ring }, base, candidates),
        _ => extend_rows(&Rationals, base, candidates),
    })
}
