//! Face maps of the rack □-set on tuples, and unshuffle signs.

use crate::rack::Rack;

/// Result of a face map: the acting prefix (only for `δ^1`) and the shortened tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub prefix: Option<usize>,
    pub tuple: Vec<usize>,
}

/// `δ_i^ε` with 1-based `i`. `ε = 0` deletes position `i`; `ε = 1` also
/// replaces every earlier entry `x_j` by `x_j ◁ x_i` and reports `x_i` as prefix.
///
/// Returns `None` when `i` is out of `1..=len`.
pub fn face(rack: &Rack, i: usize, upper: bool, t: &[usize]) -> Option<Face> {
    if i == 0 || i > t.len() {
        return None;
    }
    let xi = t[i - 1];
    let mut out = Vec::with_capacity(t.len() - 1);
    if upper {
        out.extend(t[..i - 1].iter().map(|&x| rack.op(x, xi)));
    } else {
        out.extend_from_slice(&t[..i - 1]);
    }
    out.extend_from_slice(&t[i..]);
    Some(Face { prefix: upper.then_some(xi), tuple: out })
}

/// `δ_A^ε` for a set of 1-based positions, applying the largest index first on
/// the original tuple. Prefix letters are returned in application order, which
/// is their left-to-right order in the resulting monomial `x_{a_k} ⋯ x_{a_1} e_…`.
pub fn face_set(rack: &Rack, positions: &[usize], upper: bool, t: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut sorted = positions.to_vec();
    sorted.sort_unstable();
    let mut prefix = Vec::new();
    let mut cur = t.to_vec();
    for &i in sorted.iter().rev() {
        let f = face(rack, i, upper, &cur).expect("face index in range");
        prefix.extend(f.prefix);
        cur = f.tuple;
    }
    (prefix, cur)
}

/// Same composite as [`face_set`], evaluated smallest index first with the
/// index shifts of the □-set identities.
pub fn face_set_increasing(
    rack: &Rack,
    positions: &[usize],
    upper: bool,
    t: &[usize],
) -> (Vec<usize>, Vec<usize>) {
    let mut sorted = positions.to_vec();
    sorted.sort_unstable();
    let mut prefix = Vec::new();
    let mut cur = t.to_vec();
    for (removed, &i) in sorted.iter().enumerate() {
        let f = face(rack, i - removed, upper, &cur).expect("face index in range");
        prefix.extend(f.prefix);
        cur = f.tuple;
    }
    (prefix, cur)
}

/// Positions `1..=n` selected by the bits of `mask` (bit `k` ↦ position `k+1`).
pub fn subset_positions(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|k| mask >> k & 1 == 1).map(|k| k + 1).collect()
}

/// Signature of the unshuffle that lists `subset` (increasing) before its
/// complement in `1..=n`, as a boolean "is odd".
pub fn unshuffle_is_odd(subset: &[usize], n: usize) -> bool {
    // Each pair (a in A, c in A^c) with c < a is one inversion.
    let mut in_a = vec![false; n + 1];
    for &a in subset {
        in_a[a] = true;
    }
    let mut inversions = 0usize;
    let mut complement_seen = 0usize;
    for pos in 1..=n {
        if in_a[pos] {
            inversions += complement_seen;
        } else {
            complement_seen += 1;
        }
    }
    inversions % 2 == 1
}

/// `ε(A) = sgn(unshuffle A | A^c) · (−1)^{|A|·|A^c|}`, returned as "is negative".
pub fn epsilon_is_negative(subset: &[usize], n: usize) -> bool {
    let k = subset.len();
    unshuffle_is_odd(subset, n) ^ ((k * (n - k)) % 2 == 1)
}
