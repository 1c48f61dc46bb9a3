//! Cup products on rack cochains, the commutativity homotopy, and cohomology
//! ring structure constants.
//!
//! A cochain of degree `p` is an A-linear map `B_p → k[Y]`; the product is the
//! convolution `(f ⊗ g) ∘ Δ` with the evaluation sign `(f⊗g)(b⊗b') =
//! (−1)^{|g||b|} f(b) ⊗ g(b')`. Values of the two factors multiply into
//! `k[Y × Y']` with the diagonal action.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use thiserror::Error;

use crate::complex::{Cochain, Coefficients, Complex, ComplexError, TupleBasis, Variant};
use crate::cube;
use crate::homlin::{self, HomlinError};
use crate::rack::{Rack, XSet};
use crate::scalar::{Ring, Scalar};
use crate::word::{BMonomial, TensorElement, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CupError {
    #[error("cochain does not belong to this context: {0}")]
    ContextMismatch(String),
    #[error("argument of degree {degree} is not a cocycle")]
    NotACocycle { degree: usize },
    #[error("degree {degree} exceeds the configured cap {cap}")]
    ResourceLimit { degree: usize, cap: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Linear(#[from] HomlinError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// One summand of the product formula on a target tuple: `±f(left) ⊗ prefix·g(right)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupTerm {
    pub left: usize,
    pub right: usize,
    pub prefix: Vec<usize>,
    pub negative: bool,
}

/// All summands of `f ⌣ g` for `|f| = p`, `|g| = q`, one row per basis tuple
/// of degree `p + q`. Indices refer to tuple bases, not to coefficient blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupTable {
    pub p: usize,
    pub q: usize,
    pub rows: Vec<Vec<CupTerm>>,
}

/// Two factor complexes and the target complex with product coefficients.
#[derive(Debug)]
pub struct CupContext {
    ring: Ring,
    left: Complex,
    right: Complex,
    target: Complex,
    tables: Mutex<BTreeMap<(usize, usize), Arc<CupTable>>>,
}

fn as_xset(rack: &Rack, c: &Coefficients) -> XSet {
    match c {
        Coefficients::Trivial => XSet::singleton(rack),
        Coefficients::XSet(y) => y.clone(),
    }
}

impl CupContext {
    /// Trivial coefficients on both factors.
    pub fn new(rack: Rack, variant: Variant, ring: Ring) -> Result<CupContext, CupError> {
        Self::with_coefficients(rack, variant, ring, Coefficients::Trivial, Coefficients::Trivial)
    }

    pub fn with_coefficients(
        rack: Rack,
        variant: Variant,
        ring: Ring,
        left: Coefficients,
        right: Coefficients,
    ) -> Result<CupContext, CupError> {
        let target = match (&left, &right) {
            (Coefficients::Trivial, Coefficients::Trivial) => Coefficients::Trivial,
            _ => Coefficients::XSet(as_xset(&rack, &left).product(&as_xset(&rack, &right))),
        };
        Ok(CupContext {
            ring,
            left: Complex::new(rack.clone(), variant, left)?,
            right: Complex::new(rack.clone(), variant, right)?,
            target: Complex::new(rack, variant, target)?,
            tables: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn with_max_basis(self, cap: usize) -> CupContext {
        CupContext {
            ring: self.ring,
            left: self.left.with_max_basis(cap),
            right: self.right.with_max_basis(cap),
            target: self.target.with_max_basis(cap),
            tables: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn left(&self) -> &Complex {
        &self.left
    }

    pub fn right(&self) -> &Complex {
        &self.right
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn rack(&self) -> &Rack {
        self.target.rack()
    }

    fn check(&self, side: &Complex, f: &Cochain) -> Result<(), CupError> {
        if f.ring != self.ring {
            return Err(CupError::ContextMismatch(format!("cochain over {}, context over {}", f.ring, self.ring)));
        }
        side.check_cochain(f).map_err(|e| CupError::ContextMismatch(e.to_string()))
    }

    /// `v ⊗ w` in `k[Y × Y']`.
    fn tensor_values(&self, v: &[Scalar], w: &[Scalar], sign_negative: bool, acc: &mut [Scalar]) {
        let r = self.ring;
        for (a, va) in v.iter().enumerate() {
            if va.is_zero() {
                continue;
            }
            for (b, wb) in w.iter().enumerate() {
                if wb.is_zero() {
                    continue;
                }
                let k = a * w.len() + b;
                acc[k] = r.add(&acc[k], &r.signed(&r.mul(va, wb), sign_negative));
            }
        }
    }

    /// Value of a cochain on a monomial `a·e_w`: `a · f(w)`.
    fn eval_monomial(side: &Complex, f: &Cochain, m: &BMonomial) -> Vec<Scalar> {
        side.act_left(m.a_word(), &side.evaluate(f, m.e_letters()))
    }

    /// `(−1)^{|g||b|} f(b) ⊗ g(b')` summed over a tensor.
    fn evaluate_tensor(&self, f: &Cochain, g: &Cochain, t: &TensorElement) -> Vec<Scalar> {
        let mut acc = vec![Scalar::zero(); self.target.coefficients().size()];
        for ((b, b2), c) in t.iter() {
            if b.degree() != f.degree || b2.degree() != g.degree {
                continue;
            }
            let v = Self::eval_monomial(&self.left, f, b);
            let w = Self::eval_monomial(&self.right, g, b2);
            let c = self.ring.from_int(c);
            let v: Vec<Scalar> = v.iter().map(|x| self.ring.mul(x, &c)).collect();
            self.tensor_values(&v, &w, g.degree * b.degree() % 2 == 1, &mut acc);
        }
        acc
    }

    /// Summands of `(f ⌣ g)(x̄) = (−1)^{pq} Σ_{|A|=q} ε(A) f(δ_A^0 x̄) ⊗ g(δ_{A^c}^1 x̄)`;
    /// the upper-face prefix acts on the value of `g`. Cached per `(p, q)`.
    pub fn table(&self, p: usize, q: usize) -> Result<Arc<CupTable>, CupError> {
        if let Some(t) = self.tables.lock().unwrap().get(&(p, q)) {
            return Ok(Arc::clone(t));
        }
        let n = p + q;
        if n >= 64 {
            return Err(CupError::ResourceLimit { degree: n, cap: 63 });
        }
        let rack = self.rack();
        let basis = self.target.basis(n)?;
        let variant = self.target.variant();
        let left = TupleBasis::new(rack.size(), p, variant);
        let right = TupleBasis::new(rack.size(), q, variant);
        let masks: Vec<u64> = (0..1u64 << n).filter(|m| m.count_ones() as usize == q).collect();
        let rows = basis
            .iter()
            .map(|t| {
                masks
                    .iter()
                    .filter_map(|&mask| {
                        let a = cube::subset_positions(mask, n);
                        let comp = cube::subset_positions(!mask & ((1u64 << n) - 1), n);
                        let (_, lower) = cube::face_set(rack, &a, false, &t);
                        let (prefix, upper) = cube::face_set(rack, &comp, true, &t);
                        Some(CupTerm {
                            left: left.index(&lower)?,
                            right: right.index(&upper)?,
                            prefix,
                            negative: cube::epsilon_is_negative(&a, n) ^ (p * q % 2 == 1),
                        })
                    })
                    .collect()
            })
            .collect();
        let table = Arc::new(CupTable { p, q, rows });
        self.tables.lock().unwrap().insert((p, q), Arc::clone(&table));
        Ok(table)
    }

    pub fn cup(&self, f: &Cochain, g: &Cochain) -> Result<Cochain, CupError> {
        self.check(&self.left, f)?;
        self.check(&self.right, g)?;
        let table = self.table(f.degree, g.degree)?;
        let (nl, nr) = (self.left.coefficients().size(), self.right.coefficients().size());
        let ny = self.target.coefficients().size();
        let mut values = Vec::with_capacity(table.rows.len() * ny);
        for row in &table.rows {
            let mut acc = vec![Scalar::zero(); ny];
            for term in row {
                let v = &f.values[term.left * nl..(term.left + 1) * nl];
                let w = &g.values[term.right * nr..(term.right + 1) * nr];
                if term.prefix.is_empty() || nr == 1 {
                    self.tensor_values(v, w, term.negative, &mut acc);
                } else {
                    self.tensor_values(v, &self.right.act_left(&term.prefix, w), term.negative, &mut acc);
                }
            }
            values.extend(acc);
        }
        Ok(Cochain { degree: f.degree + g.degree, ring: self.ring, values })
    }

    /// The same product computed as `(f ⊗ g) ∘ Δ` through the bialgebra.
    pub fn cup_via_coproduct(&self, f: &Cochain, g: &Cochain) -> Result<Cochain, CupError> {
        self.check(&self.left, f)?;
        self.check(&self.right, g)?;
        let n = f.degree + g.degree;
        let eng = self.target.engine();
        let basis = self.target.basis(n)?;
        let mut values = Vec::with_capacity(basis.len() * self.target.coefficients().size());
        for t in basis.iter() {
            let delta = eng.coproduct_monomial(&BMonomial::e_word(&t))?;
            values.extend(self.evaluate_tensor(f, g, &delta));
        }
        Ok(Cochain { degree: n, ring: self.ring, values })
    }

    /// `H(f, g) = (f ⊗ g) ∘ h` with the same evaluation sign as the product;
    /// for cocycles `d*H(f, g) = f ⌣ g − (−1)^{pq} g ⌣ f`.
    pub fn homotopy_cochain(&self, f: &Cochain, g: &Cochain) -> Result<Cochain, CupError> {
        self.check(&self.left, f)?;
        self.check(&self.right, g)?;
        for (side, c) in [(&self.left, f), (&self.right, g)] {
            if !side.apply_coboundary(c)?.is_zero() {
                return Err(CupError::NotACocycle { degree: c.degree });
            }
        }
        let n = f.degree + g.degree;
        if n == 0 {
            return Err(CupError::ContextMismatch("the homotopy needs total degree at least one".into()));
        }
        let eng = self.target.engine();
        let basis = self.target.basis(n - 1)?;
        let mut values = Vec::with_capacity(basis.len() * self.target.coefficients().size());
        for t in basis.iter() {
            let h = eng.homotopy_monomial(&BMonomial::e_word(&t))?;
            values.extend(self.evaluate_tensor(f, g, &h));
        }
        Ok(Cochain { degree: n - 1, ring: self.ring, values })
    }

    /// `(−1)^{|f|} d*f`, the differential for which the product satisfies
    /// `D(f ⌣ g) = Df ⌣ g + (−1)^{|f|} f ⌣ Dg`.
    pub fn signed_differential(side: &Complex, f: &Cochain) -> Result<Cochain, CupError> {
        let mut d = side.apply_coboundary(f)?;
        if f.degree % 2 == 1 {
            d.values = d.values.iter().map(|v| f.ring.neg(v)).collect();
        }
        Ok(d)
    }

    /// Basis cochain `1_{(t, y)}` on a factor.
    pub fn indicator(side: &Complex, ring: Ring, degree: usize, index: usize) -> Result<Cochain, CupError> {
        let mut f = side.zero_cochain(degree, ring)?;
        f.values[index] = ring.one();
        Ok(f)
    }
}

/// Products of cohomology classes in coordinates of chosen bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingStructure {
    pub ring: Ring,
    pub variant: Variant,
    pub max_degree: usize,
    /// Cocycle representatives of a basis of `H^p`, for `p = 0..=max_degree`.
    pub representatives: Vec<Vec<Cochain>>,
    pub products: Vec<Product>,
}

/// `[f_i] ⌣ [g_j]` with `f_i ∈ H^p`, `g_j ∈ H^q`, in the basis of `H^{p+q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product {
    pub p: usize,
    pub i: usize,
    pub q: usize,
    pub j: usize,
    pub coordinates: Vec<Scalar>,
}

impl RingStructure {
    pub fn dims(&self) -> Vec<usize> {
        self.representatives.iter().map(Vec::len).collect()
    }

    pub fn product(&self, p: usize, i: usize, q: usize, j: usize) -> Option<&[Scalar]> {
        self.products
            .iter()
            .find(|e| (e.p, e.i, e.q, e.j) == (p, i, q, j))
            .map(|e| e.coordinates.as_slice())
    }

    /// First pair violating `[f][g] = (−1)^{pq}[g][f]`, if any.
    pub fn graded_commutativity_witness(&self) -> Option<(usize, usize, usize, usize)> {
        for e in &self.products {
            let Some(other) = self.product(e.q, e.j, e.p, e.i) else { continue };
            let negative = e.p * e.q % 2 == 1;
            let expected: Vec<Scalar> = other.iter().map(|v| self.ring.signed(v, negative)).collect();
            if expected != e.coordinates {
                return Some((e.p, e.i, e.q, e.j));
            }
        }
        None
    }
}

/// Coordinates of the class of cocycle `c` in the basis `reps` of `H^n`.
pub fn class_coordinates(complex: &Complex, reps: &[Cochain], c: &Cochain) -> Result<Vec<Scalar>, CupError> {
    let ring = c.ring;
    let dim = complex.dim(c.degree)?;
    let mut columns: Vec<Vec<(usize, Scalar)>> = reps
        .iter()
        .map(|r| r.values.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect())
        .collect();
    if c.degree > 0 {
        let d = complex.coboundary_matrix(c.degree - 1)?.to_ring(ring);
        columns.extend((0..d.cols()).map(|j| d.column(j).to_vec()));
    }
    let m = homlin::SparseMat::from_columns(dim, ring, columns);
    let x = homlin::solve(&m, &c.values)?
        .ok_or_else(|| CupError::NotACocycle { degree: c.degree })?;
    Ok(x[..reps.len()].to_vec())
}

/// Cocycle representatives for a basis of `H^p`: kernel vectors of `d*`
/// chosen greedily, in kernel-basis order, to extend a basis of the image.
pub fn cohomology_representatives(complex: &Complex, p: usize, ring: Ring) -> Result<Vec<Cochain>, CupError> {
    let d_out = complex.coboundary_matrix(p)?.to_ring(ring);
    let kernel = homlin::kernel_basis(&d_out)?;
    let image = if p == 0 {
        Vec::new()
    } else {
        homlin::image_basis(&complex.coboundary_matrix(p - 1)?.to_ring(ring))?
    };
    let chosen = homlin::independent_extension(ring, &image, &kernel)?;
    Ok(chosen.into_iter().map(|k| Cochain { degree: p, ring, values: kernel[k].clone() }).collect())
}

/// Cohomology ring in degrees `0..=max_degree` with trivial coefficients over a field.
pub fn ring_structure(ctx: &CupContext, max_degree: usize, degree_cap: usize) -> Result<RingStructure, CupError> {
    if max_degree > degree_cap {
        return Err(CupError::ResourceLimit { degree: max_degree, cap: degree_cap });
    }
    let ring = ctx.ring();
    if !ring.is_field() {
        return Err(HomlinError::NotAField(ring).into());
    }
    let complex = ctx.target();
    let representatives: Vec<Vec<Cochain>> =
        (0..=max_degree).map(|p| cohomology_representatives(complex, p, ring)).collect::<Result<_, _>>()?;
    let mut products = Vec::new();
    for p in 0..=max_degree {
        for q in 0..=max_degree - p {
            for (i, f) in representatives[p].iter().enumerate() {
                for (j, g) in representatives[q].iter().enumerate() {
                    let c = ctx.cup(f, g)?;
                    let coordinates = class_coordinates(complex, &representatives[p + q], &c)?;
                    products.push(Product { p, i, q, j, coordinates });
                }
            }
        }
    }
    Ok(RingStructure { ring, variant: complex.variant(), max_degree, representatives, products })
}
