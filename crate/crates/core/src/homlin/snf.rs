//! Smith normal form over Z.
//!
//! Boundary matrices of rack complexes are very sparse with mostly unit
//! entries, so unit pivots are eliminated first on the sparse structure. What
//! is left is usually tiny and goes through a dense least-remainder reduction.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{HomlinError, SparseMat};
use crate::scalar::Ring;

/// Entry budget for the dense stage.
pub const DEFAULT_DENSE_LIMIT: usize = 4_000_000;

/// Diagonal form `diag(1, …, 1, d_1, …, d_k, 0, …)` with `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Number of nonzero invariant factors.
    pub rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<BigInt>,
}

impl SmithForm {
    /// All nonzero invariant factors, ones included.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let ones = self.rank - self.torsion.len();
        std::iter::repeat(BigInt::one()).take(ones).chain(self.torsion.iter().cloned()).collect()
    }
}

type Row = Vec<(usize, BigInt)>;

fn sub_scaled(v: &Row, c: &BigInt, p: &Row) -> Row {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        if j >= p.len() || (i < v.len() && v[i].0 < p[j].0) {
            out.push(v[i].clone());
            i += 1;
        } else if i >= v.len() || p[j].0 < v[i].0 {
            out.push((p[j].0, -(c * &p[j].1)));
            j += 1;
        } else {
            let val = &v[i].1 - c * &p[j].1;
            if !val.is_zero() {
                out.push((v[i].0, val));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Removes unit pivots; returns their count and the surviving rows.
fn eliminate_units(m: &SparseMat) -> (usize, Vec<Row>) {
    let mut rows: Vec<Option<Row>> = m
        .row_vectors()
        .into_iter()
        .map(|r| Some(r.into_iter().map(|(j, v)| (j, v.to_integer())).collect()))
        .collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for (i, r) in rows.iter().enumerate() {
        for (j, _) in r.as_ref().unwrap() {
            col_rows[*j].insert(i);
        }
    }
    let mut queue: VecDeque<usize> = (0..rows.len()).collect();
    let mut queued = vec![true; rows.len()];
    let mut units = 0;
    while let Some(i) = queue.pop_front() {
        queued[i] = false;
        let Some(row) = rows[i].as_ref() else { continue };
        // Unit entry whose column touches the fewest rows.
        let Some((pc, pv)) = row
            .iter()
            .filter(|(_, v)| v.abs().is_one())
            .min_by_key(|(j, _)| col_rows[*j].len())
            .cloned()
        else {
            continue;
        };
        let pivot = rows[i].take().unwrap();
        for (j, _) in &pivot {
            col_rows[*j].remove(&i);
        }
        let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
        for r in targets {
            let old = rows[r].take().unwrap();
            let a = &old[old.binary_search_by_key(&pc, |(j, _)| *j).unwrap()].1;
            let c = a * &pv; // pv = ±1, so c = a / pv
            let new = sub_scaled(&old, &c, &pivot);
            for (j, _) in &old {
                col_rows[*j].remove(&r);
            }
            for (j, _) in &new {
                col_rows[*j].insert(r);
            }
            if !new.is_empty() {
                rows[r] = Some(new);
                if !queued[r] {
                    queued[r] = true;
                    queue.push_back(r);
                }
            }
        }
        units += 1;
        // Column `pc` is now zero outside the pivot row; column operations
        // clear the rest of the pivot row without touching other rows.
    }
    (units, rows.into_iter().flatten().filter(|r| !r.is_empty()).collect())
}

/// Diagonalizes a dense integer matrix; returns the nonzero diagonal.
///
/// Each step starts from the least nonzero entry of the active block, then
/// alternates row and column reduction, moving the least leftover entry of
/// the pivot row or column onto the diagonal until both are clear. Choosing
/// the global minimum first keeps entry growth in check.
fn dense_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for r in a.iter_mut() {
            r.swap(t, bj);
        }
        loop {
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..cols {
                        let v = &q * &a[t][j];
                        a[i][j] -= v;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for r in a.iter_mut().skip(t) {
                        let v = &q * &r[t];
                        r[j] -= v;
                    }
                }
            }
            // Least leftover in the pivot column (`true`) or row (`false`).
            let mut pick: Option<(bool, usize, BigInt)> = None;
            for i in t + 1..rows {
                if !a[i][t].is_zero() && pick.as_ref().map_or(true, |p| a[i][t].abs() < p.2) {
                    pick = Some((true, i, a[i][t].abs()));
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() && pick.as_ref().map_or(true, |p| a[t][j].abs() < p.2) {
                    pick = Some((false, j, a[t][j].abs()));
                }
            }
            match pick {
                None => break,
                Some((true, i, _)) => a.swap(t, i),
                Some((false, j, _)) => {
                    for r in a.iter_mut() {
                        r.swap(t, j);
                    }
                }
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

/// Turns a diagonal into a divisibility chain by repeated gcd/lcm exchange.
fn divisibility_chain(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

pub fn smith_form(m: &SparseMat) -> Result<SmithForm, HomlinError> {
    smith_form_with_limit(m, DEFAULT_DENSE_LIMIT)
}

/// Smith form of an integer matrix. Fails with `ResourceLimit` when the part
/// left after unit elimination exceeds `dense_limit` entries.
pub fn smith_form_with_limit(m: &SparseMat, dense_limit: usize) -> Result<SmithForm, HomlinError> {
    if m.ring() != Ring::Integers {
        return Err(HomlinError::RingMismatch { expected: Ring::Integers, found: m.ring() });
    }
    let (units, rest) = eliminate_units(m);
    let mut used: Vec<usize> = rest.iter().flat_map(|r| r.iter().map(|(j, _)| *j)).collect();
    used.sort_unstable();
    used.dedup();
    let size = rest.len() * used.len();
    if size > dense_limit {
        return Err(HomlinError::ResourceLimit { entries: size, limit: dense_limit });
    }
    let dense: Vec<Vec<BigInt>> = rest
        .iter()
        .map(|r| {
            let mut v = vec![BigInt::zero(); used.len()];
            for (j, x) in r {
                v[used.binary_search(j).unwrap()] = x.clone();
            }
            v
        })
        .collect();
    let chain = divisibility_chain(dense_diagonal(dense));
    let torsion: Vec<BigInt> = chain.iter().filter(|d| !d.is_one()).cloned().collect();
    Ok(SmithForm { rank: units + chain.len(), torsion })
}
