//! Rack and quandle chain and cochain complexes as explicit integer matrices.
//!
//! `C_n` has basis `Y × X^n` where `Y` is the coefficient X-set (a single point
//! for trivial coefficients). Basis index of `(x̄, y)` is `index(x̄)·|Y| + y`,
//! with tuples in mixed-radix order, last coordinate fastest.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cube;
pub use crate::cube::Face;
use crate::homlin::{self, HomlinError, HomologyGroup, SparseMat};
use crate::rack::{Rack, XSet};
use crate::scalar::{Ring, Scalar};
use crate::word::{BElement, BMonomial, WordEngine, WordError};

pub const DEFAULT_MAX_BASIS: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("face index {i} out of range for a tuple of length {len}")]
    IndexOutOfRange { i: usize, len: usize },
    #[error("the quandle complex requires a quandle")]
    NotAQuandle,
    #[error("basis of degree {degree} has {dim} elements, cap is {cap}")]
    DimensionOverflow { degree: usize, dim: usize, cap: usize },
    #[error("coefficient mismatch: {0}")]
    CoefficientMismatch(String),
    #[error("element is not homogeneous")]
    MixedDegrees,
    #[error(transparent)]
    Linear(#[from] HomlinError),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Rack,
    Quandle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Trivial,
    XSet(XSet),
}

impl Coefficients {
    pub fn size(&self) -> usize {
        match self {
            Coefficients::Trivial => 1,
            Coefficients::XSet(y) => y.size(),
        }
    }

    /// Right action `y ∗ x`.
    pub fn act(&self, y: usize, x: usize) -> usize {
        match self {
            Coefficients::Trivial => y,
            Coefficients::XSet(s) => s.act(y, x),
        }
    }

    /// Right action of a prefix word, letters applied left to right.
    pub fn act_word(&self, y: usize, word: &[usize]) -> usize {
        word.iter().fold(y, |y, &x| self.act(y, x))
    }
}

/// `δ_i^ε` on a tuple, 1-based.
pub fn face(rack: &Rack, i: usize, upper: bool, t: &[usize]) -> Result<Face, ComplexError> {
    cube::face(rack, i, upper, t).ok_or(ComplexError::IndexOutOfRange { i, len: t.len() })
}

/// Enumeration of `X^n`, or of tuples without adjacent repeats for the quandle
/// variant. Both are mixed-radix with the last coordinate fastest; in the
/// quandle case the digit of `x_j` skips the value `x_{j-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleBasis {
    size: usize,
    degree: usize,
    variant: Variant,
    len: usize,
}

impl TupleBasis {
    pub fn new(size: usize, degree: usize, variant: Variant) -> TupleBasis {
        let len = match (variant, degree) {
            (_, 0) => 1,
            (Variant::Rack, n) => size.saturating_pow(n as u32),
            (Variant::Quandle, n) => size.saturating_mul(size.saturating_sub(1).saturating_pow(n as u32 - 1)),
        };
        TupleBasis { size, degree, variant, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    fn radix(&self, j: usize) -> usize {
        match self.variant {
            Variant::Quandle if j > 0 => self.size - 1,
            _ => self.size,
        }
    }

    pub fn tuple(&self, mut index: usize) -> Vec<usize> {
        assert!(index < self.len, "basis index out of range");
        let mut digits = vec![0; self.degree];
        for j in (0..self.degree).rev() {
            let r = self.radix(j);
            digits[j] = index % r;
            index /= r;
        }
        if self.variant == Variant::Quandle {
            for j in 1..self.degree {
                if digits[j] >= digits[j - 1] {
                    digits[j] += 1;
                }
            }
        }
        digits
    }

    /// Index of a tuple, or `None` if it is not a basis element (wrong length,
    /// out of range, or degenerate in the quandle variant).
    pub fn index(&self, t: &[usize]) -> Option<usize> {
        if t.len() != self.degree {
            return None;
        }
        let mut index = 0;
        for (j, &x) in t.iter().enumerate() {
            if x >= self.size {
                return None;
            }
            let digit = match self.variant {
                Variant::Quandle if j > 0 => {
                    let prev = t[j - 1];
                    if x == prev {
                        return None;
                    }
                    if x > prev {
                        x - 1
                    } else {
                        x
                    }
                }
                _ => x,
            };
            index = index * self.radix(j) + digit;
        }
        Some(index)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.len).map(|i| self.tuple(i))
    }
}

/// A chain with exact coefficients, indexed like the basis of `C_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub degree: usize,
    pub ring: Ring,
    pub values: Vec<Scalar>,
}

/// A cochain, one `k[Y]`-value (a block of `|Y|` scalars) per basis tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub ring: Ring,
    pub values: Vec<Scalar>,
}

impl Cochain {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}

/// Boundary `∂_n: C_n → C_{n-1}` together with the data it was built from.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub source_degree: usize,
    pub variant: Variant,
    pub twisted: bool,
    pub matrix: SparseMat,
}

/// A rack together with a variant and a coefficient system.
#[derive(Debug)]
pub struct Complex {
    engine: WordEngine,
    variant: Variant,
    coefficients: Coefficients,
    max_basis: usize,
}

impl Complex {
    pub fn new(rack: Rack, variant: Variant, coefficients: Coefficients) -> Result<Complex, ComplexError> {
        if variant == Variant::Quandle && !rack.is_quandle() {
            return Err(ComplexError::NotAQuandle);
        }
        if let Coefficients::XSet(y) = &coefficients {
            if y.rack_id() != rack.id() {
                return Err(ComplexError::CoefficientMismatch("X-set is over a different rack".into()));
            }
        }
        Ok(Complex { engine: WordEngine::new(rack), variant, coefficients, max_basis: DEFAULT_MAX_BASIS })
    }

    pub fn with_max_basis(mut self, cap: usize) -> Complex {
        self.max_basis = cap;
        self
    }

    pub fn rack(&self) -> &Rack {
        self.engine.rack()
    }

    pub fn engine(&self) -> &WordEngine {
        &self.engine
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coefficients
    }

    pub fn max_basis(&self) -> usize {
        self.max_basis
    }

    /// Tuple basis of degree `n`, checked against the size cap.
    pub fn basis(&self, n: usize) -> Result<TupleBasis, ComplexError> {
        let b = TupleBasis::new(self.rack().size(), n, self.variant);
        let dim = b.len().saturating_mul(self.coefficients.size());
        if dim > self.max_basis {
            return Err(ComplexError::DimensionOverflow { degree: n, dim, cap: self.max_basis });
        }
        Ok(b)
    }

    pub fn dim(&self, n: usize) -> Result<usize, ComplexError> {
        Ok(self.basis(n)?.len() * self.coefficients.size())
    }

    /// Position of `(t, y)`, or `None` for a tuple outside the basis.
    fn position(&self, basis: &TupleBasis, t: &[usize], y: usize) -> Option<usize> {
        basis.index(t).map(|i| i * self.coefficients.size() + y)
    }

    /// `∂ = Σ_i (−1)^i (δ_i^0 − δ_i^1)`, the upper face acting on the
    /// coefficient by `y ↦ y ∗ x_i`. For `n = 0` this is the zero map to 0.
    pub fn boundary_matrix(&self, n: usize) -> Result<BoundaryMatrix, ComplexError> {
        let src = self.basis(n)?;
        let ny = self.coefficients.size();
        let matrix = if n == 0 {
            SparseMat::zeros(0, src.len() * ny, Ring::Integers)
        } else {
            let dst = self.basis(n - 1)?;
            let rack = self.rack();
            let mut columns = Vec::with_capacity(src.len() * ny);
            for t in src.iter() {
                for y in 0..ny {
                    let mut col = Vec::with_capacity(4 * n);
                    for i in 1..=n {
                        let s: i64 = if i % 2 == 0 { 1 } else { -1 };
                        let lo = cube::face(rack, i, false, &t).unwrap();
                        if let Some(r) = self.position(&dst, &lo.tuple, y) {
                            col.push((r, Scalar::from_integer(s.into())));
                        }
                        let up = cube::face(rack, i, true, &t).unwrap();
                        let yy = self.coefficients.act(y, t[i - 1]);
                        if let Some(r) = self.position(&dst, &up.tuple, yy) {
                            col.push((r, Scalar::from_integer((-s).into())));
                        }
                    }
                    columns.push(col);
                }
            }
            SparseMat::from_columns(dst.len() * ny, Ring::Integers, columns)
        };
        Ok(BoundaryMatrix {
            source_degree: n,
            variant: self.variant,
            twisted: matches!(self.coefficients, Coefficients::XSet(_)),
            matrix,
        })
    }

    /// Matrix of `d*: C^p → C^{p+1}`, precomposition with the bialgebra
    /// differential: `(d*f)(x̄) = Σ_i (−1)^{i−1} (f(δ_i^0 x̄) − x_i·f(δ_i^1 x̄))`.
    pub fn coboundary_matrix(&self, p: usize) -> Result<SparseMat, ComplexError> {
        let src = self.basis(p)?;
        let dst = self.basis(p + 1)?;
        let ny = self.coefficients.size();
        let rack = self.rack();
        let mut triplets = Vec::new();
        for (row_t, t) in dst.iter().enumerate() {
            for y in 0..ny {
                let row = row_t * ny + y;
                for i in 1..=p + 1 {
                    let s: i64 = if i % 2 == 1 { 1 } else { -1 };
                    let lo = cube::face(rack, i, false, &t).unwrap();
                    if let Some(c) = self.position(&src, &lo.tuple, y) {
                        triplets.push((row, c, Scalar::from_integer(s.into())));
                    }
                    // (x·v)[y] = v[y ∗ x]
                    let up = cube::face(rack, i, true, &t).unwrap();
                    let yy = self.coefficients.act(y, t[i - 1]);
                    if let Some(c) = self.position(&src, &up.tuple, yy) {
                        triplets.push((row, c, Scalar::from_integer((-s).into())));
                    }
                }
            }
        }
        Ok(SparseMat::from_triplets(dst.len() * ny, src.len() * ny, Ring::Integers, triplets))
    }

    /// `H_n` with coefficients in `ring`.
    pub fn homology(&self, n: usize, ring: Ring) -> Result<HomologyGroup, ComplexError> {
        let incoming = self.boundary_matrix(n + 1)?.matrix;
        let outgoing = self.boundary_matrix(n)?.matrix;
        Ok(homlin::homology(n, &incoming, &outgoing, ring)?)
    }

    /// `H^n` with coefficients in `ring`.
    pub fn cohomology(&self, n: usize, ring: Ring) -> Result<HomologyGroup, ComplexError> {
        let incoming = if n == 0 {
            SparseMat::zeros(self.dim(0)?, 0, Ring::Integers)
        } else {
            self.coboundary_matrix(n - 1)?
        };
        let outgoing = self.coboundary_matrix(n)?;
        Ok(homlin::homology(n, &incoming, &outgoing, ring)?)
    }

    pub fn zero_cochain(&self, degree: usize, ring: Ring) -> Result<Cochain, ComplexError> {
        Ok(Cochain { degree, ring, values: vec![Scalar::zero(); self.dim(degree)?] })
    }

    /// Cochain from a value block per basis tuple (values are reduced into `ring`).
    pub fn cochain(&self, degree: usize, ring: Ring, values: Vec<Scalar>) -> Result<Cochain, ComplexError> {
        let dim = self.dim(degree)?;
        if values.len() != dim {
            return Err(ComplexError::CoefficientMismatch(format!(
                "cochain has {} values, degree {degree} needs {dim}",
                values.len()
            )));
        }
        let values = values
            .iter()
            .map(|v| ring.element(v))
            .collect::<Result<_, _>>()
            .map_err(|e| ComplexError::CoefficientMismatch(e.to_string()))?;
        Ok(Cochain { degree, ring, values })
    }

    pub(crate) fn check_cochain(&self, f: &Cochain) -> Result<(), ComplexError> {
        let dim = self.dim(f.degree)?;
        if f.values.len() != dim {
            return Err(ComplexError::CoefficientMismatch(format!(
                "cochain has {} values, degree {} needs {dim}",
                f.values.len(),
                f.degree
            )));
        }
        Ok(())
    }

    /// Value of `f` on a tuple as a `k[Y]` block; zero off the basis.
    pub fn evaluate(&self, f: &Cochain, t: &[usize]) -> Vec<Scalar> {
        let ny = self.coefficients.size();
        if t.len() != f.degree {
            return vec![Scalar::zero(); ny];
        }
        let basis = TupleBasis::new(self.rack().size(), f.degree, self.variant);
        match basis.index(t) {
            Some(i) => f.values[i * ny..(i + 1) * ny].to_vec(),
            None => vec![Scalar::zero(); ny],
        }
    }

    /// Left action of a prefix word on a `k[Y]` block:
    /// `(p_1⋯p_k · v)[y] = v[(⋯(y ∗ p_1) ⋯) ∗ p_k]`.
    pub fn act_left(&self, word: &[usize], v: &[Scalar]) -> Vec<Scalar> {
        (0..v.len()).map(|y| v[self.coefficients.act_word(y, word)].clone()).collect()
    }

    /// Matrix form of `d*`.
    pub fn apply_coboundary(&self, f: &Cochain) -> Result<Cochain, ComplexError> {
        self.check_cochain(f)?;
        let d = self.coboundary_matrix(f.degree)?.to_ring(f.ring);
        Ok(Cochain { degree: f.degree + 1, ring: f.ring, values: d.mul_vec(&f.values) })
    }

    /// `d*f = f ∘ d`, evaluated through the bialgebra differential on each
    /// basis monomial with prefixes acting on the coefficients.
    pub fn cochain_differential(&self, f: &Cochain) -> Result<Cochain, ComplexError> {
        self.check_cochain(f)?;
        let ring = f.ring;
        let dst = self.basis(f.degree + 1)?;
        let mut values = Vec::with_capacity(dst.len() * self.coefficients.size());
        for t in dst.iter() {
            let du = self.engine.differential_monomial(&BMonomial::e_word(&t))?;
            let mut acc = vec![Scalar::zero(); self.coefficients.size()];
            for (m, c) in du.iter() {
                let v = self.act_left(m.a_word(), &self.evaluate(f, m.e_letters()));
                let c = ring.from_int(c);
                for (a, b) in acc.iter_mut().zip(v) {
                    *a = ring.add(a, &ring.mul(&c, &b));
                }
            }
            values.extend(acc);
        }
        Ok(Cochain { degree: f.degree + 1, ring, values })
    }

    /// A cochain `h` with `d*h = c`, or `None` when `c` is not a coboundary.
    /// `ring` must be a field.
    pub fn is_coboundary(&self, c: &Cochain) -> Result<Option<Cochain>, ComplexError> {
        self.check_cochain(c)?;
        if c.degree == 0 {
            return Ok(c.is_zero().then(|| Cochain { degree: 0, ring: c.ring, values: Vec::new() }));
        }
        let d = self.coboundary_matrix(c.degree - 1)?;
        Ok(homlin::preimage(&c.values, &d, c.ring)?.map(|values| Cochain { degree: c.degree - 1, ring: c.ring, values }))
    }

    /// `M ⊗_A (−)` applied to `y ⊗ u`: the monomial `a·e_w` goes to the basis
    /// element `(w, y·a)`. Degenerate words vanish in the quandle variant.
    pub fn project_to_chain(&self, u: &BElement, y: usize) -> Result<Chain, ComplexError> {
        if y >= self.coefficients.size() {
            return Err(ComplexError::CoefficientMismatch(format!("coefficient index {y} out of range")));
        }
        let degree = if u.is_zero() { 0 } else { u.homogeneous_degree().ok_or(ComplexError::MixedDegrees)? };
        let basis = self.basis(degree)?;
        let mut values = vec![BigInt::zero(); basis.len() * self.coefficients.size()];
        for (m, c) in u.iter() {
            let yy = self.coefficients.act_word(y, m.a_word());
            if let Some(p) = self.position(&basis, m.e_letters(), yy) {
                values[p] += c;
            }
        }
        Ok(Chain { degree, ring: Ring::Integers, values: values.into_iter().map(Scalar::from_integer).collect() })
    }

    /// Chain-level boundary through the matrix.
    pub fn boundary(&self, c: &Chain) -> Result<Chain, ComplexError> {
        if c.values.len() != self.dim(c.degree)? {
            return Err(ComplexError::CoefficientMismatch("chain length does not match its degree".into()));
        }
        let m = self.boundary_matrix(c.degree)?.matrix.to_ring(c.ring);
        Ok(Chain { degree: c.degree.saturating_sub(1), ring: c.ring, values: m.mul_vec(&c.values) })
    }
}
