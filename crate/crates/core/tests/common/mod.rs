//! Dense reference implementations used to cross-check the library. Nothing
//! here calls into the code under test except to read rack tables.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rackcoh::rack::Rack;

/// Tuples of length `n` over `0..size`, lexicographic; with `quandle` set,
/// tuples with two equal neighbours are left out.
pub fn tuples(size: usize, n: usize, quandle: bool) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for t in &out {
            for x in 0..size {
                if quandle && t.last() == Some(&x) {
                    continue;
                }
                let mut u = t.clone();
                u.push(x);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// `∂(y, x_1..x_n) = Σ_i (−1)^i [(y, x without x_i) − (y∗x_i, (x_1◁x_i, .., x_{i−1}◁x_i, x_{i+1}, ..))]`
/// as a map from `(y, tuple)` to coefficient. `act[y][x] = y∗x`; `None` means
/// trivial coefficients.
pub fn boundary_of(rack: &Rack, act: Option<&[Vec<usize>]>, y: usize, t: &[usize], quandle: bool) -> BTreeMap<(usize, Vec<usize>), i64> {
    let table = rack.table();
    let mut out = BTreeMap::new();
    let degenerate = |u: &[usize]| quandle && u.windows(2).any(|w| w[0] == w[1]);
    for i in 0..t.len() {
        let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
        let mut lower: Vec<usize> = t.to_vec();
        lower.remove(i);
        if !degenerate(&lower) {
            *out.entry((y, lower)).or_insert(0) += sign;
        }
        let mut upper: Vec<usize> = Vec::with_capacity(t.len() - 1);
        for (j, &x) in t.iter().enumerate() {
            if j < i {
                upper.push(table[x][t[i]]);
            } else if j > i {
                upper.push(x);
            }
        }
        let yy = act.map_or(0, |a| a[y][t[i]]);
        if !degenerate(&upper) {
            *out.entry((yy, upper)).or_insert(0) -= sign;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Dense `∂_n` with rows indexed by `(tuple, y)` in the order of [`tuples`],
/// `y` fastest.
pub fn dense_boundary(rack: &Rack, act: Option<&[Vec<usize>]>, n: usize, quandle: bool) -> Vec<Vec<i64>> {
    let ny = act.map_or(1, <[Vec<usize>]>::len);
    let src = tuples(rack.size(), n, quandle);
    let dst = if n == 0 { Vec::new() } else { tuples(rack.size(), n - 1, quandle) };
    let index: BTreeMap<&Vec<usize>, usize> = dst.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut m = vec![vec![0i64; src.len() * ny]; dst.len() * ny];
    if n == 0 {
        return m;
    }
    for (j, t) in src.iter().enumerate() {
        for y in 0..ny {
            for ((yy, u), c) in boundary_of(rack, act, y, t, quandle) {
                m[index[&u] * ny + yy][j * ny + y] += c;
            }
        }
    }
    m
}

pub fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

/// Rank over Q by plain Gaussian elimination.
pub fn rank_q(m: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = m.iter().map(|r| r.iter().map(|v| BigRational::from_integer(v.clone())).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &pivot;
                for k in c..cols {
                    let v = &f * &a[rank][k];
                    a[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over F_p.
pub fn rank_mod(m: &[Vec<BigInt>], p: u64) -> usize {
    let pp = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|r| r.iter().map(|v| v.mod_floor(&pp).try_into().unwrap()).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = ((r as u128 * b as u128) % p as u128) as u64;
            }
            b = ((b as u128 * b as u128) % p as u128) as u64;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = pow(a[rank][c], p - 2);
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let f = (a[r][c] as u128 * inv as u128 % p as u128) as u64;
                for k in 0..cols {
                    let sub = (f as u128 * a[rank][k] as u128 % p as u128) as u64;
                    a[r][k] = (a[r][k] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Nonzero invariant factors by repeated smallest-pivot row and column
/// reduction.
pub fn smith_diagonal(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry in the remaining block.
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
        let mut clean = true;
        for i in t + 1..rows {
            if !a[i][t].is_zero() {
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
                clean &= a[i][t].is_zero();
            }
        }
        for j in t + 1..cols {
            if !a[t][j].is_zero() {
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let v = &q * &a[i][t];
                    a[i][j] -= v;
                }
                clean &= a[t][j].is_zero();
            }
        }
        if !clean {
            continue;
        }
        // Enforce divisibility: if some remaining entry is not a multiple of
        // the pivot, fold its row into the pivot row and go again.
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero())) {
            for j in t..cols {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// All `k`-subsets of `0..n`.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect()).collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Invariant factors as quotients of determinantal divisors: `d_k` is the gcd
/// of the `k×k` minors. Only for small matrices.
pub fn determinantal_factors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<BigInt>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect()).collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

/// `(betti, torsion)` of `ker ∂_n / im ∂_{n+1}` from dense matrices.
pub fn homology(lower: &[Vec<BigInt>], upper: &[Vec<BigInt>], dim: usize) -> (usize, Vec<BigInt>) {
    let r_low = if lower.is_empty() { 0 } else { rank_q(lower) };
    let r_up = rank_q(upper);
    let torsion = smith_diagonal(upper).into_iter().filter(|d| !d.is_one()).collect();
    (dim - r_low - r_up, torsion)
}

/// Sum of the signs of the `(p, q)`-shuffles.
pub fn signed_shuffles(p: usize, q: usize) -> i64 {
    let n = p + q;
    subsets(n, p)
        .into_iter()
        .map(|a| {
            let order: Vec<usize> = a.iter().copied().chain((0..n).filter(|i| !a.contains(i))).collect();
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| order[i] > order[j]).count();
            if inversions % 2 == 0 {
                1
            } else {
                -1
            }
        })
        .sum()
}

/// A rack table with one entry changed, and the position changed.
pub fn mutate(table: &[Vec<usize>], x: usize, y: usize) -> Vec<Vec<usize>> {
    let n = table.len();
    let mut t = table.to_vec();
    t[x][y] = (t[x][y] + 1) % n;
    t
}

/// Exhaustive R1/R2 check on a raw table.
pub fn is_rack_table(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    let r1 = (0..n).all(|y| {
        let mut seen = vec![false; n];
        (0..n).all(|x| !std::mem::replace(&mut seen[t[x][y]], true))
    });
    let r2 = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| t[t[x][y]][z] == t[t[x][z]][t[y][z]])));
    r1 && r2
}
