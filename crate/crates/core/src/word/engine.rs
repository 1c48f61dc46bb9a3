use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::One;

use super::element::{BElement, BMonomial, Tensor3Element, TensorElement, WordLetter};
use super::WordError;
use crate::cube;
use crate::rack::Rack;

pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

/// Canonical-form rewriting engine for `B(X)` over the integers.
///
/// Degree-zero words are compared in `A(X)` by exploring their orbit under the
/// adjacent moves `(a, b) ↦ (b, a ◁ b)` and their inverses; the
/// lexicographically smallest orbit element is the canonical representative.
/// Orbits are memoized, so the cache only ever grows by idempotent inserts.
pub struct WordEngine {
    rack: Rack,
    orbit_cap: usize,
    cache: RwLock<HashMap<Vec<usize>, Vec<usize>>>,
}

impl std::fmt::Debug for WordEngine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WordEngine").field("rack", &self.rack.id()).field("orbit_cap", &self.orbit_cap).finish()
    }
}

fn sign(negative: bool) -> BigInt {
    if negative {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}

impl WordEngine {
    pub fn new(rack: Rack) -> WordEngine {
        Self::with_orbit_cap(rack, DEFAULT_ORBIT_CAP)
    }

    pub fn with_orbit_cap(rack: Rack, orbit_cap: usize) -> WordEngine {
        WordEngine { rack, orbit_cap, cache: RwLock::new(HashMap::new()) }
    }

    pub fn rack(&self) -> &Rack {
        &self.rack
    }

    fn check_letters(&self, letters: impl IntoIterator<Item = usize>) -> Result<(), WordError> {
        let size = self.rack.size();
        for l in letters {
            if l >= size {
                return Err(WordError::LetterOutOfRange { letter: l, size });
            }
        }
        Ok(())
    }

    fn check_rack(&self, id: crate::rack::RackId) -> Result<(), WordError> {
        if id == self.rack.id() {
            Ok(())
        } else {
            Err(WordError::RackMismatch)
        }
    }

    /// Orbit-minimal representative of a degree-zero word.
    pub fn canonical_a_word(&self, word: &[usize]) -> Result<Vec<usize>, WordError> {
        if word.len() < 2 {
            return Ok(word.to_vec());
        }
        if let Some(c) = self.cache.read().expect("orbit cache poisoned").get(word) {
            return Ok(c.clone());
        }
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(word.to_vec());
        queue.push_back(word.to_vec());
        while let Some(w) = queue.pop_front() {
            for i in 0..w.len() - 1 {
                let (a, b) = (w[i], w[i + 1]);
                // x·y = y·(x ◁ y) and its inverse move.
                for (p, q) in [(b, self.rack.op(a, b)), (self.rack.inv_op(b, a), a)] {
                    let mut next = w.clone();
                    next[i] = p;
                    next[i + 1] = q;
                    if seen.insert(next.clone()) {
                        if seen.len() > self.orbit_cap {
                            return Err(WordError::OrbitLimitExceeded { cap: self.orbit_cap });
                        }
                        queue.push_back(next);
                    }
                }
            }
        }
        let canon = seen.iter().min().expect("orbit contains the word").clone();
        let mut cache = self.cache.write().expect("orbit cache poisoned");
        for w in seen {
            cache.insert(w, canon.clone());
        }
        Ok(canon)
    }

    /// Rewrites a mixed word into canonical form, pushing degree-zero letters
    /// left with `e_x · y = y · e_{x ◁ y}`. The rewrites never introduce a sign,
    /// so the returned sign is always `+1`.
    pub fn canonicalize(&self, letters: &[WordLetter]) -> Result<(i32, BMonomial), WordError> {
        self.check_letters(letters.iter().map(|l| match *l {
            WordLetter::Gen(x) | WordLetter::E(x) => x,
        }))?;
        let mut a = Vec::new();
        let mut e: Vec<usize> = Vec::new();
        for l in letters {
            match *l {
                WordLetter::Gen(y) => {
                    a.push(y);
                    for x in e.iter_mut() {
                        *x = self.rack.op(*x, y);
                    }
                }
                WordLetter::E(x) => e.push(x),
            }
        }
        Ok((1, BMonomial { a_word: self.canonical_a_word(&a)?, e_word: e }))
    }

    pub fn monomial(&self, a_word: &[usize], e_word: &[usize]) -> Result<BMonomial, WordError> {
        self.check_letters(a_word.iter().chain(e_word).copied())?;
        Ok(BMonomial { a_word: self.canonical_a_word(a_word)?, e_word: e_word.to_vec() })
    }

    pub fn element(&self, m: BMonomial) -> BElement {
        BElement::from_key(self.rack.id(), m)
    }

    pub fn zero(&self) -> BElement {
        BElement::zero(self.rack.id())
    }

    pub fn one(&self) -> BElement {
        self.element(BMonomial::unit())
    }

    pub fn gen(&self, x: usize) -> Result<BElement, WordError> {
        Ok(self.element(self.monomial(&[x], &[])?))
    }

    pub fn e(&self, x: usize) -> Result<BElement, WordError> {
        Ok(self.element(self.monomial(&[], &[x])?))
    }

    pub fn tensor_zero(&self) -> TensorElement {
        TensorElement::zero(self.rack.id())
    }

    pub fn tensor(&self, a: BMonomial, b: BMonomial) -> TensorElement {
        TensorElement::from_key(self.rack.id(), (a, b))
    }

    /// Product of canonical monomials: `(a·e)(a'·e') = (a a')·(e acted on by a')·e'`.
    pub fn mul_monomials(&self, m1: &BMonomial, m2: &BMonomial) -> Result<BMonomial, WordError> {
        if m2.a_word.is_empty() {
            let mut e = m1.e_word.clone();
            e.extend_from_slice(&m2.e_word);
            return Ok(BMonomial { a_word: m1.a_word.clone(), e_word: e });
        }
        let mut e = m1.e_word.clone();
        for &y in &m2.a_word {
            for x in e.iter_mut() {
                *x = self.rack.op(*x, y);
            }
        }
        e.extend_from_slice(&m2.e_word);
        let a_word = if m1.a_word.is_empty() {
            m2.a_word.clone()
        } else {
            let mut a = m1.a_word.clone();
            a.extend_from_slice(&m2.a_word);
            self.canonical_a_word(&a)?
        };
        Ok(BMonomial { a_word, e_word: e })
    }

    pub fn multiply(&self, u: &BElement, v: &BElement) -> Result<BElement, WordError> {
        self.check_rack(u.rack_id())?;
        self.check_rack(v.rack_id())?;
        let mut out = self.zero();
        for (m1, c1) in u.iter() {
            for (m2, c2) in v.iter() {
                out.add_term(self.mul_monomials(m1, m2)?, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Differential of a monomial via the super-Leibniz rule with
    /// `d(e_x) = 1 − x` and `d(x) = 0`.
    pub fn differential_monomial(&self, m: &BMonomial) -> Result<BElement, WordError> {
        let mut out = self.zero();
        let n = m.e_word.len();
        for i in 0..n {
            let s = sign(i % 2 == 1);
            let head = BMonomial { a_word: m.a_word.clone(), e_word: m.e_word[..i].to_vec() };
            let tail = BMonomial::e_word(&m.e_word[i + 1..]);
            // head · 1 · tail
            out.add_term(self.mul_monomials(&head, &tail)?, s.clone());
            // − head · x_i · tail
            let xi = BMonomial { a_word: vec![m.e_word[i]], e_word: Vec::new() };
            let with_x = self.mul_monomials(&self.mul_monomials(&head, &xi)?, &tail)?;
            out.add_term(with_x, -s);
        }
        Ok(out)
    }

    pub fn differential(&self, u: &BElement) -> Result<BElement, WordError> {
        self.check_rack(u.rack_id())?;
        let mut out = self.zero();
        for (m, c) in u.iter() {
            out.add_scaled(&self.differential_monomial(m)?, c);
        }
        Ok(out)
    }

    fn delta_generator(&self, x: usize) -> TensorElement {
        let mut t = self.tensor_zero();
        t.add_term(
            (BMonomial::e_word(&[x]), BMonomial { a_word: vec![x], e_word: Vec::new() }),
            BigInt::one(),
        );
        t.add_term((BMonomial::unit(), BMonomial::e_word(&[x])), BigInt::one());
        t
    }

    fn diagonal(&self, a_word: &[usize]) -> TensorElement {
        let a = BMonomial { a_word: a_word.to_vec(), e_word: Vec::new() };
        self.tensor(a.clone(), a)
    }

    /// Multiplicative coproduct of a monomial: `Δ(a) Δ(e_{x_1}) ⋯ Δ(e_{x_n})`
    /// with group-like degree-zero letters and Koszul signs.
    pub fn coproduct_monomial(&self, m: &BMonomial) -> Result<TensorElement, WordError> {
        let mut acc = self.diagonal(&m.a_word);
        for &x in &m.e_word {
            acc = self.tensor_multiply(&acc, &self.delta_generator(x))?;
        }
        Ok(acc)
    }

    pub fn coproduct(&self, u: &BElement) -> Result<TensorElement, WordError> {
        self.check_rack(u.rack_id())?;
        let mut out = self.tensor_zero();
        for (m, c) in u.iter() {
            out.add_scaled(&self.coproduct_monomial(m)?, c);
        }
        Ok(out)
    }

    /// Closed-form coproduct `Σ_A ε(A) δ_A^0(m) ⊗ δ_{A^c}^1(m)` over all subsets
    /// `A` of the `e`-positions. A nonempty prefix acts diagonally.
    pub fn coproduct_formula(&self, m: &BMonomial) -> Result<TensorElement, WordError> {
        let n = m.e_word.len();
        assert!(n < 64, "e-word too long for subset enumeration");
        let pure = BMonomial::e_word(&m.e_word);
        let mut out = self.tensor_zero();
        for mask in 0..(1u64 << n) {
            let a = cube::subset_positions(mask, n);
            let ac = cube::subset_positions(!mask & ((1u64 << n) - 1), n);
            let left = self.face_set(&a, false, &pure)?;
            let right = self.face_set(&ac, true, &pure)?;
            out.add_term((left, right), sign(cube::epsilon_is_negative(&a, n)));
        }
        if m.a_word.is_empty() {
            Ok(out)
        } else {
            self.tensor_multiply(&self.diagonal(&m.a_word), &out)
        }
    }

    /// A-linear face map `δ_i^ε` on a canonical monomial (1-based `i`);
    /// `None` when `i` exceeds the degree.
    pub fn face(&self, i: usize, upper: bool, m: &BMonomial) -> Result<Option<BMonomial>, WordError> {
        let Some(f) = cube::face(&self.rack, i, upper, &m.e_word) else {
            return Ok(None);
        };
        let mut a = m.a_word.clone();
        a.extend(f.prefix);
        Ok(Some(BMonomial { a_word: self.canonical_a_word(&a)?, e_word: f.tuple }))
    }

    /// `δ_A^ε`, largest index first.
    pub fn face_set(&self, positions: &[usize], upper: bool, m: &BMonomial) -> Result<BMonomial, WordError> {
        let (prefix, tuple) = cube::face_set(&self.rack, positions, upper, &m.e_word);
        let mut a = m.a_word.clone();
        a.extend(prefix);
        Ok(BMonomial { a_word: self.canonical_a_word(&a)?, e_word: tuple })
    }

    /// `δ_A^ε`, smallest index first with shifted indices.
    pub fn face_set_increasing(
        &self,
        positions: &[usize],
        upper: bool,
        m: &BMonomial,
    ) -> Result<BMonomial, WordError> {
        let (prefix, tuple) = cube::face_set_increasing(&self.rack, positions, upper, &m.e_word);
        let mut a = m.a_word.clone();
        a.extend(prefix);
        Ok(BMonomial { a_word: self.canonical_a_word(&a)?, e_word: tuple })
    }

    /// `(a⊗b)(a'⊗b') = (−1)^{|b||a'|} aa' ⊗ bb'`.
    pub fn tensor_multiply(&self, s: &TensorElement, t: &TensorElement) -> Result<TensorElement, WordError> {
        self.check_rack(s.rack_id())?;
        self.check_rack(t.rack_id())?;
        let mut out = self.tensor_zero();
        for ((a, b), c1) in s.iter() {
            for ((a2, b2), c2) in t.iter() {
                let negative = b.degree() * a2.degree() % 2 == 1;
                let key = (self.mul_monomials(a, a2)?, self.mul_monomials(b, b2)?);
                let c = c1 * c2;
                out.add_term(key, if negative { -c } else { c });
            }
        }
        Ok(out)
    }

    /// `(d⊗1 + 1⊗d)(a⊗b) = da⊗b + (−1)^{|a|} a⊗db`.
    pub fn tensor_d(&self, t: &TensorElement) -> Result<TensorElement, WordError> {
        self.check_rack(t.rack_id())?;
        let mut out = self.tensor_zero();
        for ((a, b), c) in t.iter() {
            for (da, c2) in self.differential_monomial(a)?.iter() {
                out.add_term((da.clone(), b.clone()), c * c2);
            }
            let s = sign(a.degree() % 2 == 1);
            for (db, c2) in self.differential_monomial(b)?.iter() {
                out.add_term((a.clone(), db.clone()), c * c2 * &s);
            }
        }
        Ok(out)
    }

    /// Signed flip `τ(a⊗b) = (−1)^{|a||b|} b⊗a`.
    pub fn tensor_flip(&self, t: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(t.rack_id());
        for ((a, b), c) in t.iter() {
            let negative = a.degree() * b.degree() % 2 == 1;
            out.add_term((b.clone(), a.clone()), if negative { -c.clone() } else { c.clone() });
        }
        out
    }

    /// `τ ∘ Δ`.
    pub fn flipped_coproduct(&self, u: &BElement) -> Result<TensorElement, WordError> {
        Ok(self.tensor_flip(&self.coproduct(u)?))
    }

    /// Homotopy `h` between `Δ` and `τΔ` on a monomial `a·e_{x_1}⋯e_{x_n}`:
    /// `(a⊗a) · Σ_i (−1)^{i−1} τΔ(e_{x_1})⋯τΔ(e_{x_{i−1}}) (e_{x_i}⊗e_{x_i}) Δ(e_{x_{i+1}})⋯Δ(e_{x_n})`.
    pub fn homotopy_monomial(&self, m: &BMonomial) -> Result<TensorElement, WordError> {
        let n = m.e_word.len();
        let mut out = self.tensor_zero();
        if n == 0 {
            return Ok(out);
        }
        // suffixes[i] = Δ(e_{x_{i+1}}) ⋯ Δ(e_{x_n}) (0-based i means positions after i).
        let mut suffixes = vec![self.diagonal(&[]); n];
        for i in (0..n - 1).rev() {
            suffixes[i] = self.tensor_multiply(&self.delta_generator(m.e_word[i + 1]), &suffixes[i + 1])?;
        }
        let mut prefix = self.diagonal(&m.a_word);
        for (i, &x) in m.e_word.iter().enumerate() {
            let ex = BMonomial::e_word(&[x]);
            let hx = self.tensor(ex.clone(), ex);
            let term = self.tensor_multiply(&self.tensor_multiply(&prefix, &hx)?, &suffixes[i])?;
            out.add_scaled(&term, &sign(i % 2 == 1));
            let flipped = self.tensor_flip(&self.delta_generator(x));
            prefix = self.tensor_multiply(&prefix, &flipped)?;
        }
        Ok(out)
    }

    pub fn homotopy(&self, u: &BElement) -> Result<TensorElement, WordError> {
        self.check_rack(u.rack_id())?;
        let mut out = self.tensor_zero();
        for (m, c) in u.iter() {
            out.add_scaled(&self.homotopy_monomial(m)?, c);
        }
        Ok(out)
    }

    fn require_quandle(&self) -> Result<(), WordError> {
        if self.rack.is_quandle() {
            Ok(())
        } else {
            Err(WordError::NotAQuandle)
        }
    }

    /// Image in `B^Q = B / ⟨e_x²⟩`: drops every monomial whose `e`-word has
    /// two equal adjacent letters.
    pub fn quandle_project(&self, u: &BElement) -> Result<BElement, WordError> {
        self.require_quandle()?;
        self.check_rack(u.rack_id())?;
        Ok(u.filtered(|m| !m.is_degenerate()))
    }

    /// Componentwise projection `B ⊗ B → B^Q ⊗ B^Q`.
    pub fn quandle_project_tensor(&self, t: &TensorElement) -> Result<TensorElement, WordError> {
        self.require_quandle()?;
        self.check_rack(t.rack_id())?;
        Ok(t.filtered(|(a, b)| !a.is_degenerate() && !b.is_degenerate()))
    }

    /// `(Δ⊗1)(t)`.
    pub fn coproduct_left(&self, t: &TensorElement) -> Result<Tensor3Element, WordError> {
        let mut out = Tensor3Element::zero(t.rack_id());
        for ((a, b), c) in t.iter() {
            for ((a1, a2), c2) in self.coproduct_monomial(a)?.iter() {
                out.add_term((a1.clone(), a2.clone(), b.clone()), c * c2);
            }
        }
        Ok(out)
    }

    /// `(1⊗Δ)(t)`.
    pub fn coproduct_right(&self, t: &TensorElement) -> Result<Tensor3Element, WordError> {
        let mut out = Tensor3Element::zero(t.rack_id());
        for ((a, b), c) in t.iter() {
            for ((b1, b2), c2) in self.coproduct_monomial(b)?.iter() {
                out.add_term((a.clone(), b1.clone(), b2.clone()), c * c2);
            }
        }
        Ok(out)
    }

    /// All canonical monomials with prefix length ≤ `max_prefix` (as words,
    /// deduplicated in `A`) and `e`-length ≤ `max_e`, in sorted order.
    pub fn monomials(&self, max_prefix: usize, max_e: usize) -> Result<Vec<BMonomial>, WordError> {
        let prefixes = self.canonical_prefixes(max_prefix)?;
        let mut out = Vec::new();
        for len in 0..=max_e {
            for e in words(self.rack.size(), len) {
                for a in &prefixes {
                    out.push(BMonomial { a_word: a.clone(), e_word: e.clone() });
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Canonical representatives of all degree-zero words of length ≤ `max_len`.
    pub fn canonical_prefixes(&self, max_len: usize) -> Result<Vec<Vec<usize>>, WordError> {
        let mut set = BTreeSet::new();
        for len in 0..=max_len {
            for w in words(self.rack.size(), len) {
                set.insert(self.canonical_a_word(&w)?);
            }
        }
        Ok(set.into_iter().collect())
    }
}

/// All words of the given length over `0..size`, in lexicographic order.
pub fn words(size: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..size).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}
