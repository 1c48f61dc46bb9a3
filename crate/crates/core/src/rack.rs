//! Finite racks, quandles and X-sets stored as validated operation tables.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RackError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("entry table[{x}][{y}] = {value} is out of range")]
    EntryOutOfRange { x: usize, y: usize, value: usize },
    #[error("axiom R1 fails: column {y} is not a permutation")]
    R1Violation { y: usize },
    #[error("axiom R2 fails at (x, y, z) = ({x}, {y}, {z})")]
    R2Violation { x: usize, y: usize, z: usize },
    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),
    #[error("X-set action is not bijective for x = {x}")]
    BijectivityViolation { x: usize },
    #[error("X-set compatibility fails at (y, x, x') = ({y}, {x}, {x2})")]
    CompatibilityViolation { y: usize, x: usize, x2: usize },
    #[error("unknown builtin '{0}'")]
    UnknownBuiltin(String),
}

/// Fingerprint of a rack table, used to reject mixing elements of different racks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RackId(pub u64);

/// A finite rack: `op(x, y) = x ◁ y`, with every right translation a bijection
/// and right self-distributivity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rack {
    size: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    id: RackId,
}

fn column_inverse(size: usize, column: impl Fn(usize) -> usize) -> Option<Vec<usize>> {
    let mut inv = vec![usize::MAX; size];
    for x in 0..size {
        let v = column(x);
        if inv[v] != usize::MAX {
            return None;
        }
        inv[v] = x;
    }
    Some(inv)
}

impl Rack {
    /// Validates a square table (`table[x][y] = x ◁ y`) against R1 and R2.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Rack, RackError> {
        let size = table.len();
        if size == 0 {
            return Err(RackError::Shape("a rack must be nonempty".into()));
        }
        let mut flat = Vec::with_capacity(size * size);
        for (x, row) in table.iter().enumerate() {
            if row.len() != size {
                return Err(RackError::Shape(format!(
                    "row {x} has {} entries, expected {size}",
                    row.len()
                )));
            }
            for (y, &v) in row.iter().enumerate() {
                if v >= size {
                    return Err(RackError::EntryOutOfRange { x, y, value: v });
                }
                flat.push(v);
            }
        }
        let mut inverse = vec![0; size * size];
        for y in 0..size {
            let inv = column_inverse(size, |x| flat[x * size + y])
                .ok_or(RackError::R1Violation { y })?;
            for (z, x) in inv.into_iter().enumerate() {
                inverse[z * size + y] = x;
            }
        }
        let op = |a: usize, b: usize| flat[a * size + b];
        for x in 0..size {
            for y in 0..size {
                for z in 0..size {
                    if op(op(x, y), z) != op(op(x, z), op(y, z)) {
                        return Err(RackError::R2Violation { x, y, z });
                    }
                }
            }
        }
        let mut hasher = DefaultHasher::new();
        size.hash(&mut hasher);
        flat.hash(&mut hasher);
        Ok(Rack { size, id: RackId(hasher.finish()), table: flat, inverse })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn id(&self) -> RackId {
        self.id
    }

    /// `x ◁ y`.
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    /// The unique `x` with `x ◁ y = z`.
    #[inline]
    pub fn inv_op(&self, z: usize, y: usize) -> usize {
        self.inverse[z * self.size + y]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    /// Table `inv` with `inv[x ◁ y][y] = x`.
    pub fn inverse_table(&self) -> Vec<Vec<usize>> {
        self.inverse.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn is_quandle(&self) -> bool {
        (0..self.size).all(|x| self.op(x, x) == x)
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.size).all(|x| (0..self.size).all(|y| self.op(x, y) == x))
    }

    /// Orbits under `x ↦ x ◁ y`; forward closure suffices because every
    /// translation is a permutation of a finite set.
    pub fn orbits(&self) -> OrbitPartition {
        let mut representative = vec![usize::MAX; self.size];
        let mut blocks = Vec::new();
        for start in 0..self.size {
            if representative[start] != usize::MAX {
                continue;
            }
            let mut block = vec![start];
            representative[start] = start;
            let mut i = 0;
            while i < block.len() {
                let x = block[i];
                for y in 0..self.size {
                    let z = self.op(x, y);
                    if representative[z] == usize::MAX {
                        representative[z] = start;
                        block.push(z);
                    }
                }
                i += 1;
            }
            block.sort_unstable();
            blocks.push(block);
        }
        OrbitPartition { representative, blocks }
    }

    pub fn trivial(n: usize) -> Rack {
        Self::from_fn(n, |x, _| x)
    }

    /// Dihedral quandle `x ◁ y = 2y − x mod n`.
    pub fn dihedral(n: usize) -> Rack {
        Self::from_fn(n, |x, y| (2 * y + n - x % n) % n)
    }

    /// Cyclic rack `x ◁ y = x + 1 mod n` (not a quandle for n > 1).
    pub fn cyclic(n: usize) -> Rack {
        Self::from_fn(n, |x, _| (x + 1) % n)
    }

    /// Conjugation quandle `x ◁ y = y⁻¹ x y` of a finite group.
    pub fn conjugation(group: &Group) -> Rack {
        Self::from_fn(group.size(), |x, y| group.mul(group.inverse(y), group.mul(x, y)))
    }

    fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Rack {
        assert!(n >= 1, "rack size must be positive");
        let table: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| f(x, y)).collect()).collect();
        Rack::from_table(&table).expect("builtin family satisfies the rack axioms")
    }

    pub fn builtin(kind: &Builtin) -> Result<Rack, RackError> {
        let check = |n: usize| {
            if n == 0 {
                Err(RackError::Shape("builtin size must be at least 1".into()))
            } else {
                Ok(n)
            }
        };
        Ok(match kind {
            Builtin::Trivial(n) => Rack::trivial(check(*n)?),
            Builtin::Dihedral(n) => Rack::dihedral(check(*n)?),
            Builtin::Cyclic(n) => Rack::cyclic(check(*n)?),
            Builtin::Conjugation(g) => Rack::conjugation(g),
        })
    }
}

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    size: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl Group {
    pub fn from_table(table: &[Vec<usize>]) -> Result<Group, RackError> {
        let bad = |m: String| RackError::InvalidGroupTable(m);
        let size = table.len();
        if size == 0 || table.iter().any(|r| r.len() != size) {
            return Err(bad("table must be square and nonempty".into()));
        }
        if table.iter().flatten().any(|&v| v >= size) {
            return Err(bad("entry out of range".into()));
        }
        let mul = |a: usize, b: usize| table[a][b];
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(bad(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let identity = (0..size)
            .find(|&e| (0..size).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or_else(|| bad("no identity element".into()))?;
        let mut inverses = Vec::with_capacity(size);
        for a in 0..size {
            let inv = (0..size)
                .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                .ok_or_else(|| bad(format!("element {a} has no inverse")))?;
            inverses.push(inv);
        }
        Ok(Group { size, table: table.concat(), identity, inverses })
    }

    /// Symmetric group on `n` letters; elements are permutations in
    /// lexicographic order (element 0 is the identity), composed as functions
    /// `(σ·τ)(i) = σ(τ(i))`.
    pub fn symmetric(n: usize) -> Group {
        use itertools::Itertools;
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| index(&t.iter().map(|&i| s[i]).collect()))
                    .collect()
            })
            .collect();
        Group::from_table(&table).expect("symmetric group table is valid")
    }

    /// Cyclic group Z/n.
    pub fn cyclic(n: usize) -> Group {
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Group::from_table(&table).expect("cyclic group table is valid")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(<[usize]>::to_vec).collect()
    }
}

/// Named rack families: `trivial:n`, `dihedral:n`, `cyclic:n`,
/// `conjugation:S<n>` and `conjugation:Z<n>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Trivial(usize),
    Dihedral(usize),
    Cyclic(usize),
    Conjugation(Group),
}

impl FromStr for Builtin {
    type Err = RackError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || RackError::UnknownBuiltin(s.to_string());
        let (family, arg) = s.split_once(':').ok_or_else(unknown)?;
        let number = |t: &str| t.parse::<usize>().map_err(|_| unknown());
        match family {
            "trivial" => Ok(Builtin::Trivial(number(arg)?)),
            "dihedral" => Ok(Builtin::Dihedral(number(arg)?)),
            "cyclic" => Ok(Builtin::Cyclic(number(arg)?)),
            "conjugation" => {
                let group = if let Some(n) = arg.strip_prefix('S') {
                    let n = number(n)?;
                    if n == 0 || n > 5 {
                        return Err(unknown());
                    }
                    Group::symmetric(n)
                } else if let Some(n) = arg.strip_prefix('Z') {
                    let n = number(n)?;
                    if n == 0 {
                        return Err(unknown());
                    }
                    Group::cyclic(n)
                } else {
                    return Err(unknown());
                };
                Ok(Builtin::Conjugation(group))
            }
            _ => Err(unknown()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPartition {
    /// Smallest element of the orbit containing each index.
    pub representative: Vec<usize>,
    /// Orbits in order of their smallest element, each sorted.
    pub blocks: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// A set `Y` with a right action `y ∗ x` of a rack.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSet {
    size: usize,
    rack_size: usize,
    over: RackId,
    act: Vec<usize>,
    inverse: Vec<usize>,
}

impl XSet {
    /// Validates `act[y][x] = y ∗ x` against bijectivity and
    /// `(y ∗ x) ∗ x' = (y ∗ x') ∗ (x ◁ x')`.
    pub fn from_table(rack: &Rack, act: &[Vec<usize>]) -> Result<XSet, RackError> {
        let size = act.len();
        let n = rack.size();
        if size == 0 {
            return Err(RackError::Shape("an X-set must be nonempty".into()));
        }
        let mut flat = Vec::with_capacity(size * n);
        for (y, row) in act.iter().enumerate() {
            if row.len() != n {
                return Err(RackError::Shape(format!(
                    "action row {y} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (x, &v) in row.iter().enumerate() {
                if v >= size {
                    return Err(RackError::EntryOutOfRange { x: y, y: x, value: v });
                }
                flat.push(v);
            }
        }
        let mut inverse = vec![0; size * n];
        for x in 0..n {
            let inv = column_inverse(size, |y| flat[y * n + x])
                .ok_or(RackError::BijectivityViolation { x })?;
            for (z, y) in inv.into_iter().enumerate() {
                inverse[z * n + x] = y;
            }
        }
        let star = |y: usize, x: usize| flat[y * n + x];
        for y in 0..size {
            for x in 0..n {
                for x2 in 0..n {
                    if star(star(y, x), x2) != star(star(y, x2), rack.op(x, x2)) {
                        return Err(RackError::CompatibilityViolation { y, x, x2 });
                    }
                }
            }
        }
        Ok(XSet { size, rack_size: n, over: rack.id(), act: flat, inverse })
    }

    /// `Y = X` acting on itself by `◁`.
    pub fn regular(rack: &Rack) -> XSet {
        XSet::from_table(rack, &rack.table()).expect("a rack acts on itself")
    }

    /// One-point X-set; its linearization is the trivial module `k`.
    pub fn singleton(rack: &Rack) -> XSet {
        XSet::from_table(rack, &[vec![0; rack.size()]]).expect("the point is an X-set")
    }

    /// `Y × Y'` with the diagonal action; index `(y, y')` is `y·|Y'| + y'`.
    pub fn product(&self, other: &XSet) -> XSet {
        assert_eq!(self.over, other.over, "X-sets over different racks");
        let n = self.rack_size;
        let size = self.size * other.size;
        let mut act = vec![0; size * n];
        let mut inverse = vec![0; size * n];
        for a in 0..self.size {
            for b in 0..other.size {
                let y = a * other.size + b;
                for x in 0..n {
                    act[y * n + x] = self.act(a, x) * other.size + other.act(b, x);
                    inverse[y * n + x] = self.act_inv(a, x) * other.size + other.act_inv(b, x);
                }
            }
        }
        XSet { size, rack_size: n, over: self.over, act, inverse }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rack_id(&self) -> RackId {
        self.over
    }

    /// Right action `y ∗ x`.
    #[inline]
    pub fn act(&self, y: usize, x: usize) -> usize {
        self.act[y * self.rack_size + x]
    }

    /// Inverse of `− ∗ x`; this is the left action of `x` used for cochains.
    #[inline]
    pub fn act_inv(&self, y: usize, x: usize) -> usize {
        self.inverse[y * self.rack_size + x]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.act.chunks(self.rack_size).map(<[usize]>::to_vec).collect()
    }
}

impl fmt::Display for Rack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rack {}", self.size)?;
        for row in self.table.chunks(self.size) {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
