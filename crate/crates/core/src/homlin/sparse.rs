use num_traits::Zero;

use crate::scalar::{Ring, Scalar};

/// Column-major sparse matrix with exact entries in a tagged ring.
/// Each column is sorted by row index and stores no zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    rows: usize,
    cols: usize,
    ring: Ring,
    columns: Vec<Vec<(usize, Scalar)>>,
}

fn normalize(ring: Ring, rows: usize, mut col: Vec<(usize, Scalar)>) -> Vec<(usize, Scalar)> {
    col.sort_by_key(|(i, _)| *i);
    let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(col.len());
    for (i, v) in col {
        assert!(i < rows, "row index {i} out of range for {rows} rows");
        match out.last_mut() {
            Some((j, w)) if *j == i => *w = ring.add(w, &v),
            _ => out.push((i, ring.element(&v).expect("entry belongs to the ring"))),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

impl SparseMat {
    pub fn zeros(rows: usize, cols: usize, ring: Ring) -> SparseMat {
        SparseMat { rows, cols, ring, columns: vec![Vec::new(); cols] }
    }

    /// Builds a matrix from per-column entry lists; duplicates are summed and
    /// zeros dropped.
    pub fn from_columns(rows: usize, ring: Ring, columns: Vec<Vec<(usize, Scalar)>>) -> SparseMat {
        let cols = columns.len();
        let columns = columns.into_iter().map(|c| normalize(ring, rows, c)).collect();
        SparseMat { rows, cols, ring, columns }
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        ring: Ring,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> SparseMat {
        let mut columns = vec![Vec::new(); cols];
        for (i, j, v) in triplets {
            columns[j].push((i, v));
        }
        Self::from_columns(rows, ring, columns)
    }

    pub fn from_dense(ring: Ring, dense: &[Vec<Scalar>], cols: usize) -> SparseMat {
        let rows = dense.len();
        Self::from_triplets(
            rows,
            cols,
            ring,
            dense
                .iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, v)| (i, j, v.clone()))),
        )
    }

    pub fn identity(n: usize, ring: Ring) -> SparseMat {
        Self::from_triplets(n, n, ring, (0..n).map(|i| (i, i, ring.one())))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn column(&self, j: usize) -> &[(usize, Scalar)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.columns[j]
            .binary_search_by_key(&i, |(r, _)| *r)
            .map(|k| self.columns[j][k].1.clone())
            .unwrap_or_else(|_| Scalar::zero())
    }

    /// Row-major view: one sorted sparse vector per row.
    pub fn row_vectors(&self) -> Vec<Vec<(usize, Scalar)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                rows[*i].push((j, v.clone()));
            }
        }
        rows
    }

    pub fn transpose(&self) -> SparseMat {
        SparseMat { rows: self.cols, cols: self.rows, ring: self.ring, columns: self.row_vectors() }
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        assert_eq!(self.ring, other.ring, "ring mismatch in product");
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc: Vec<(usize, Scalar)> = Vec::new();
                for (k, v) in col {
                    for (i, w) in &self.columns[*k] {
                        acc.push((*i, self.ring.mul(v, w)));
                    }
                }
                acc
            })
            .collect();
        Self::from_columns(self.rows, self.ring, columns)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = vec![Scalar::zero(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            for (i, w) in col {
                out[*i] = self.ring.add(&out[*i], &self.ring.mul(w, &v[j]));
            }
        }
        out
    }

    /// Base change of an integer matrix (or identity when the ring is unchanged).
    pub fn to_ring(&self, ring: Ring) -> SparseMat {
        if ring == self.ring {
            return self.clone();
        }
        assert!(
            self.columns.iter().flatten().all(|(_, v)| v.is_integer()),
            "base change requires integer entries"
        );
        let columns = self
            .columns
            .iter()
            .map(|c| c.iter().map(|(i, v)| (*i, ring.from_int(&v.to_integer()))).collect())
            .collect();
        Self::from_columns(self.rows, ring, columns)
    }

    pub fn scaled(&self, s: &Scalar) -> SparseMat {
        let columns = self
            .columns
            .iter()
            .map(|c| c.iter().map(|(i, v)| (*i, self.ring.mul(v, s))).collect())
            .collect();
        Self::from_columns(self.rows, self.ring, columns)
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut d = vec![vec![Scalar::zero(); self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                d[*i][j] = v.clone();
            }
        }
        d
    }
}
