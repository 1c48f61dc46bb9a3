//! Exact linear algebra for homology: sparse matrices, Smith normal form over
//! Z and elimination over Q and F_p.

mod field;
mod snf;
mod sparse;

pub use field::{image_basis, independent_extension, kernel_basis, rank, rref, solve};
pub use snf::{smith_form, smith_form_with_limit, SmithForm, DEFAULT_DENSE_LIMIT};
pub use sparse::SparseMat;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::scalar::{Ring, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomlinError {
    #[error("{0} is not a field")]
    NotAField(Ring),
    #[error("expected a matrix over {expected}, found {found}")]
    RingMismatch { expected: Ring, found: Ring },
    #[error("composite of consecutive differentials is not zero")]
    NotAComplex,
    #[error("matrix shapes do not compose: {0}")]
    ShapeMismatch(String),
    #[error("dense elimination needs {entries} entries, limit is {limit}")]
    ResourceLimit { entries: usize, limit: usize },
}

/// One (co)homology group: free rank plus torsion invariant factors. Torsion is
/// always empty over a field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub degree: usize,
    pub ring: Ring,
    pub betti: usize,
    #[serde(serialize_with = "ser_bigints")]
    pub torsion: Vec<BigInt>,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|b| b.to_string()))
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.betti > 0 {
            parts.push(if self.betti == 1 { self.ring.to_string() } else { format!("{}^{}", self.ring, self.betti) });
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Rank of an integer matrix after base change to `ring`.
pub fn rank_over(m: &SparseMat, ring: Ring) -> Result<usize, HomlinError> {
    match ring {
        Ring::Integers => Ok(smith_form(m)?.rank),
        _ => rank(&m.to_ring(ring)),
    }
}

/// Homology at the middle of `incoming: C' → C` and `outgoing: C → C''`, both
/// integer matrices, with coefficients in `ring`. Works equally for chain and
/// cochain complexes.
pub fn homology(
    degree: usize,
    incoming: &SparseMat,
    outgoing: &SparseMat,
    ring: Ring,
) -> Result<HomologyGroup, HomlinError> {
    for m in [incoming, outgoing] {
        if m.ring() != Ring::Integers {
            return Err(HomlinError::RingMismatch { expected: Ring::Integers, found: m.ring() });
        }
    }
    if incoming.rows() != outgoing.cols() {
        return Err(HomlinError::ShapeMismatch(format!(
            "incoming map has {} rows, outgoing map has {} columns",
            incoming.rows(),
            outgoing.cols()
        )));
    }
    if !outgoing.mul(incoming).is_zero() {
        return Err(HomlinError::NotAComplex);
    }
    let dim = outgoing.cols();
    let rank_out = rank_over(outgoing, ring)?;
    let (rank_in, torsion) = match ring {
        Ring::Integers => {
            let s = smith_form(incoming)?;
            (s.rank, s.torsion)
        }
        _ => (rank(&incoming.to_ring(ring))?, Vec::new()),
    };
    Ok(HomologyGroup { degree, ring, betti: dim - rank_out - rank_in, torsion })
}

/// A preimage of `target` under `differential` over a field, if one exists.
pub fn preimage(target: &[Scalar], differential: &SparseMat, ring: Ring) -> Result<Option<Vec<Scalar>>, HomlinError> {
    solve(&differential.to_ring(ring), target)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[i64]]) -> SparseMat {
        let cols = rows.first().map_or(0, |r| r.len());
        let dense: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|&v| Scalar::from_integer(v.into())).collect()).collect();
        SparseMat::from_dense(Ring::Integers, &dense, cols)
    }

    #[test]
    fn real_projective_plane() {
        // Cellular chains of RP²: Z --2--> Z --0--> Z.
        let d2 = z(&[&[2]]);
        let d1 = z(&[&[0]]);
        let zero_out = SparseMat::zeros(0, 1, Ring::Integers);
        let zero_in = SparseMat::zeros(1, 0, Ring::Integers);
        let h1 = homology(1, &d2, &d1, Ring::Integers).unwrap();
        assert_eq!((h1.betti, h1.torsion.clone()), (0, vec![BigInt::from(2)]));
        assert_eq!(h1.to_string(), "Z/2");
        let h1_f2 = homology(1, &d2, &d1, Ring::PrimeField(2)).unwrap();
        assert_eq!(h1_f2.betti, 1);
        assert_eq!(homology(2, &zero_in, &d2, Ring::Rationals).unwrap().betti, 0);
        assert_eq!(homology(0, &d1, &zero_out, Ring::Integers).unwrap().betti, 1);
    }

    #[test]
    fn non_complex_and_shapes_are_rejected() {
        let a = z(&[&[1]]);
        assert_eq!(homology(0, &a, &a, Ring::Integers), Err(HomlinError::NotAComplex));
        let b = z(&[&[1, 0]]);
        assert!(matches!(homology(0, &b, &b, Ring::Integers), Err(HomlinError::ShapeMismatch(_))));
    }

    #[test]
    fn preimages() {
        let d = z(&[&[1, -1], &[-1, 1]]);
        let q = |v: i64| Scalar::from_integer(v.into());
        let x = preimage(&[q(3), q(-3)], &d, Ring::Rationals).unwrap().unwrap();
        assert_eq!(d.to_ring(Ring::Rationals).mul_vec(&x), vec![q(3), q(-3)]);
        assert_eq!(preimage(&[q(1), q(1)], &d, Ring::Rationals).unwrap(), None);
    }
}
