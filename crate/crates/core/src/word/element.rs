use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rack::RackId;

/// Canonical monomial `a · e_{x_1} ⋯ e_{x_n}` of `B(X)`: an orbit-minimal word in
/// the degree-zero generators followed by a word in the `e`-generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BMonomial {
    pub(crate) a_word: Vec<usize>,
    pub(crate) e_word: Vec<usize>,
}

impl BMonomial {
    pub fn unit() -> BMonomial {
        BMonomial { a_word: Vec::new(), e_word: Vec::new() }
    }

    /// Pure `e`-word; a canonical monomial with empty prefix.
    pub fn e_word(letters: &[usize]) -> BMonomial {
        BMonomial { a_word: Vec::new(), e_word: letters.to_vec() }
    }

    pub fn a_word(&self) -> &[usize] {
        &self.a_word
    }

    pub fn e_letters(&self) -> &[usize] {
        &self.e_word
    }

    pub fn degree(&self) -> usize {
        self.e_word.len()
    }

    pub fn is_unit(&self) -> bool {
        self.a_word.is_empty() && self.e_word.is_empty()
    }

    /// True when the `e`-word has two equal adjacent letters, i.e. the monomial
    /// lies in the ideal generated by the `e_x²`.
    pub fn is_degenerate(&self) -> bool {
        self.e_word.windows(2).any(|w| w[0] == w[1])
    }
}

impl fmt::Display for BMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self
            .a_word
            .iter()
            .map(usize::to_string)
            .chain(self.e_word.iter().map(|x| format!("e[{x}]")))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Letters of an uncanonicalized word in `B(X)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordLetter {
    Gen(usize),
    E(usize),
}

/// Finitely supported integer combination of basis keys, tagged with the rack
/// it belongs to. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combination<K: Ord> {
    rack: RackId,
    terms: BTreeMap<K, BigInt>,
}

/// An element of `B(X)`.
pub type BElement = Combination<BMonomial>;
/// An element of `B ⊗ B`.
pub type TensorElement = Combination<(BMonomial, BMonomial)>;
/// An element of `B ⊗ B ⊗ B`, used for coassociativity checks.
pub type Tensor3Element = Combination<(BMonomial, BMonomial, BMonomial)>;

impl<K: Ord + Clone> Combination<K> {
    pub fn zero(rack: RackId) -> Self {
        Combination { rack, terms: BTreeMap::new() }
    }

    pub fn from_key(rack: RackId, key: K) -> Self {
        let mut c = Self::zero(rack);
        c.add_term(key, BigInt::one());
        c
    }

    pub fn rack_id(&self) -> RackId {
        self.rack
    }

    pub fn terms(&self) -> &BTreeMap<K, BigInt> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, key: K, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &BigInt) {
        assert_eq!(self.rack, other.rack, "combinations over different racks");
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.rack);
        out.add_scaled(self, c);
        out
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filtered(&self, keep: impl Fn(&K) -> bool) -> Self {
        Combination {
            rack: self.rack,
            terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }

    /// Largest absolute coefficient, for reporting.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|v| v.abs()).max().unwrap_or_default()
    }
}

impl BElement {
    /// Common degree of all terms, or `None` if the element is zero or mixed.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(BMonomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }
}

impl TensorElement {
    /// Part of bidegree `(p, q)`.
    pub fn bidegree_part(&self, p: usize, q: usize) -> TensorElement {
        self.filtered(|(a, b)| a.degree() == p && b.degree() == q)
    }
}

impl<K: Ord + Clone> Add for &Combination<K> {
    type Output = Combination<K>;
    fn add(self, rhs: Self) -> Combination<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &BigInt::one());
        out
    }
}

impl<K: Ord + Clone> Sub for &Combination<K> {
    type Output = Combination<K>;
    fn sub(self, rhs: Self) -> Combination<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-BigInt::one());
        out
    }
}

impl<K: Ord + Clone> Neg for &Combination<K> {
    type Output = Combination<K>;
    fn neg(self) -> Combination<K> {
        self.scaled(&-BigInt::one())
    }
}

fn write_terms<K: Ord>(
    f: &mut fmt::Formatter<'_>,
    terms: &BTreeMap<K, BigInt>,
    render: impl Fn(&K) -> String,
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (k, c)) in terms.iter().enumerate() {
        let sign = if c.is_negative() { "-" } else if i > 0 { "+" } else { "" };
        let sep = if i > 0 { " " } else { "" };
        let mag = c.abs();
        let space = if i > 0 || c.is_negative() { " " } else { "" };
        if mag.is_one() {
            write!(f, "{sep}{sign}{space}{}", render(k))?;
        } else {
            write!(f, "{sep}{sign}{space}{mag}*{}", render(k))?;
        }
    }
    Ok(())
}

impl fmt::Display for BElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms, |m| format!("[{m}]"))
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms, |(a, b)| format!("[{a}]⊗[{b}]"))
    }
}
