//! Colors (wire types), objects (wires in parallel), and the canonical basis
//! enumeration that indexes all matrix semantics.
//!
//! A color is a syntax tree over 0, 1, ⊕, ⊗. Colors are not quotiented; the
//! unit/associativity equivalence is decided through [`canon_color`]. An
//! object is an ordered list of colors. Its basis is enumerated by *names*: a
//! choice of a subset of wires together with one leaf per chosen wire. Wires
//! in parallel read as "either all together (⊗) or one of them (⊕)", which is
//! exactly what the name enumeration spells out.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

/// A wire type.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Color {
    /// Unit of ⊕; carries no data.
    Zero,
    /// Unit of ⊗; carries exactly one datum.
    One,
    /// Sum type.
    Plus(Arc<Color>, Arc<Color>),
    /// Pair type.
    Times(Arc<Color>, Arc<Color>),
}

impl Color {
    pub fn plus(a: Color, b: Color) -> Color {
        Color::Plus(Arc::new(a), Arc::new(b))
    }

    pub fn times(a: Color, b: Color) -> Color {
        Color::Times(Arc::new(a), Arc::new(b))
    }

    /// The Boolean color 1 ⊕ 1.
    pub fn bit() -> Color {
        Color::plus(Color::One, Color::One)
    }

    /// Right-nested ⊕ of `n` copies of 1; `n = 0` gives 0.
    pub fn oplus_units(n: usize) -> Color {
        let mut c = Color::Zero;
        if n > 0 {
            c = Color::One;
            for _ in 1..n {
                c = Color::plus(Color::One, c);
            }
        }
        c
    }

    /// Number of leaves of the distributive normal form; the dimension the
    /// color contributes to the semantics.
    pub fn dim(&self) -> usize {
        match self {
            Color::Zero => 0,
            Color::One => 1,
            Color::Plus(a, b) => a.dim() + b.dim(),
            Color::Times(a, b) => a.dim() * b.dim(),
        }
    }

    /// Syntactic depth, with 0 and 1 at depth zero.
    pub fn depth(&self) -> usize {
        match self {
            Color::Zero | Color::One => 0,
            Color::Plus(a, b) | Color::Times(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Human-readable labels for the leaves, in enumeration order.
    ///
    /// Leaves of `A ⊗ B` are enumerated with the left factor as the outer
    /// (slow) index, matching the Kronecker product convention.
    pub fn leaf_labels(&self) -> Vec<String> {
        match self {
            Color::Zero => vec![],
            Color::One => vec!["·".to_string()],
            Color::Plus(a, b) => {
                let mut out: Vec<String> =
                    a.leaf_labels().into_iter().map(|l| format!("L{l}")).collect();
                out.extend(b.leaf_labels().into_iter().map(|l| format!("R{l}")));
                out
            }
            Color::Times(a, b) => {
                let bs = b.leaf_labels();
                let mut out = Vec::with_capacity(self.dim());
                for la in a.leaf_labels() {
                    for lb in &bs {
                        out.push(format!("({la}⊗{lb})"));
                    }
                }
                out
            }
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Zero => write!(f, "0"),
            Color::One => write!(f, "1"),
            Color::Plus(a, b) => write!(f, "({a}+{b})"),
            Color::Times(a, b) => write!(f, "({a}*{b})"),
        }
    }
}

/// Canonical representative of the unit/associativity class of a color:
/// same-operator nests are flattened, 0 summands and 1 factors dropped, and
/// the result is re-nested to the right. Two colors are equivalent exactly
/// when their canonical forms are equal.
pub fn canon_color(c: &Color) -> Color {
    fn flatten_plus(c: Color, out: &mut Vec<Color>) {
        match c {
            Color::Zero => {}
            Color::Plus(a, b) => {
                flatten_plus((*a).clone(), out);
                flatten_plus((*b).clone(), out);
            }
            other => out.push(other),
        }
    }
    fn flatten_times(c: Color, out: &mut Vec<Color>) {
        match c {
            Color::One => {}
            Color::Times(a, b) => {
                flatten_times((*a).clone(), out);
                flatten_times((*b).clone(), out);
            }
            other => out.push(other),
        }
    }
    fn nest_right(mut parts: Vec<Color>, empty: Color, join: fn(Color, Color) -> Color) -> Color {
        match parts.len() {
            0 => empty,
            1 => parts.pop().unwrap(),
            _ => {
                let mut acc = parts.pop().unwrap();
                while let Some(p) = parts.pop() {
                    acc = join(p, acc);
                }
                acc
            }
        }
    }

    match c {
        Color::Zero => Color::Zero,
        Color::One => Color::One,
        Color::Plus(a, b) => {
            let mut parts = Vec::new();
            flatten_plus(canon_color(a), &mut parts);
            flatten_plus(canon_color(b), &mut parts);
            nest_right(parts, Color::Zero, Color::plus)
        }
        Color::Times(a, b) => {
            let mut parts = Vec::new();
            flatten_times(canon_color(a), &mut parts);
            flatten_times(canon_color(b), &mut parts);
            nest_right(parts, Color::One, Color::times)
        }
    }
}

/// Whether two colors are related by the unit/associativity equivalence.
pub fn colors_equivalent(a: &Color, b: &Color) -> bool {
    canon_color(a) == canon_color(b)
}

/// Wires in parallel. The empty object is written `[]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Obj(pub Vec<Color>);

impl Obj {
    pub fn empty() -> Obj {
        Obj(Vec::new())
    }

    pub fn single(c: Color) -> Obj {
        Obj(vec![c])
    }

    pub fn wires(&self) -> usize {
        self.0.len()
    }

    /// dim(∅) = 0, dim([A]) = dim(A), and appending a wire B to X gives
    /// dim(X)·dim(B) + dim(X) + dim(B).
    pub fn dim(&self) -> usize {
        let mut d = 0usize;
        let mut first = true;
        for c in &self.0 {
            if first {
                d = c.dim();
                first = false;
            } else {
                let b = c.dim();
                d = d * b + d + b;
            }
        }
        d
    }

    pub fn concat(&self, other: &Obj) -> Obj {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Obj(v)
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl From<Vec<Color>> for Obj {
    fn from(v: Vec<Color>) -> Obj {
        Obj(v)
    }
}

/// A basis name: the set of selected wires of an object together with one
/// leaf index per selected wire, kept sorted by wire. The empty name is the
/// extra basis vector of the full calculus.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct BasisName {
    entries: SmallVec<[(u16, u32); 4]>,
}

impl BasisName {
    pub fn empty() -> BasisName {
        BasisName::default()
    }

    pub fn singleton(wire: u16, leaf: u32) -> BasisName {
        let mut entries = SmallVec::new();
        entries.push((wire, leaf));
        BasisName { entries }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(u16, u32)] {
        &self.entries
    }

    /// Add a selection for a wire strictly beyond all current ones.
    pub fn push(&mut self, wire: u16, leaf: u32) {
        debug_assert!(self.entries.last().map_or(true, |&(w, _)| w < wire));
        self.entries.push((wire, leaf));
    }

    /// Merge a name over the first `split` wires with a name over the rest
    /// (whose wire indices are relative and get offset by `split`).
    pub fn merge_offset(left: &BasisName, right: &BasisName, split: u16) -> BasisName {
        let mut entries = left.entries.clone();
        for &(w, l) in &right.entries {
            entries.push((w + split, l));
        }
        BasisName { entries }
    }

    /// Split into the part on wires `< split` and the part on the rest,
    /// re-based to start at wire 0.
    pub fn split_at_wire(&self, split: u16) -> (BasisName, BasisName) {
        let mut left = BasisName::empty();
        let mut right = BasisName::empty();
        for &(w, l) in &self.entries {
            if w < split {
                left.entries.push((w, l));
            } else {
                right.entries.push((w - split, l));
            }
        }
        (left, right)
    }
}

impl fmt::Display for BasisName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "{{}}");
        }
        write!(f, "{{")?;
        for (i, (w, l)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}:{}", w + 1, l)?;
        }
        write!(f, "}}")
    }
}

/// Cached enumeration of an object's basis names.
///
/// `names` holds the functional enumeration; the full enumeration appends
/// exactly one empty name at index `names.len()`.
pub struct EnumTable {
    pub obj: Obj,
    pub names: Vec<BasisName>,
    index: HashMap<BasisName, u32>,
}

impl EnumTable {
    pub fn build(obj: &Obj) -> EnumTable {
        let names = enum_obj(obj);
        let mut index = HashMap::with_capacity(names.len() + 1);
        for (i, n) in names.iter().enumerate() {
            index.insert(n.clone(), i as u32);
        }
        index.insert(BasisName::empty(), names.len() as u32);
        EnumTable {
            obj: obj.clone(),
            names,
            index,
        }
    }

    /// Functional dimension.
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    /// Dimension including the extra empty name.
    pub fn dim_full(&self) -> usize {
        self.names.len() + 1
    }

    /// Index of a name in the full enumeration; the empty name is last.
    pub fn index_of(&self, name: &BasisName) -> Option<u32> {
        self.index.get(name).copied()
    }

    /// Name at a full-enumeration index.
    pub fn name_at(&self, i: usize) -> BasisName {
        if i == self.names.len() {
            BasisName::empty()
        } else {
            self.names[i].clone()
        }
    }
}

/// The functional basis enumeration of an object.
///
/// For the empty object it is empty. Appending a wire `B` to `X` yields the
/// blocks: all (name of X, leaf of B) pairs with the X name as the outer
/// index, then the names of X alone, then the leaves of B alone.
pub fn enum_obj(obj: &Obj) -> Vec<BasisName> {
    let mut names: Vec<BasisName> = Vec::new();
    for (wire, color) in obj.0.iter().enumerate() {
        let wire = wire as u16;
        let leaves = color.dim() as u32;
        if wire == 0 {
            names = (0..leaves).map(|l| BasisName::singleton(0, l)).collect();
            continue;
        }
        let mut next = Vec::with_capacity(names.len() * (leaves as usize + 1) + leaves as usize);
        for p in &names {
            for l in 0..leaves {
                let mut n = p.clone();
                n.push(wire, l);
                next.push(n);
            }
        }
        next.extend(names.iter().cloned());
        next.extend((0..leaves).map(|l| BasisName::singleton(wire, l)));
        names = next;
    }
    names
}

/// The full enumeration: the functional one plus the empty name, last.
pub fn enum_full(obj: &Obj) -> Vec<BasisName> {
    let mut names = enum_obj(obj);
    names.push(BasisName::empty());
    names
}

/// Which enumeration a regrouping permutation is computed over.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RegroupMode {
    Functional,
    Full,
}

/// Permutation between the enumeration of `left ++ right` and its block
/// regrouping.
///
/// In functional mode the blocks are: all (left name, right name) pairs with
/// the left name outer, then left names alone, then right names alone. In
/// full mode the blocks are all (full left name, full right name) pairs,
/// left-outer, which includes the empty selections.
///
/// The result maps block positions to positions in the enumeration of
/// `left ++ right`: `perm[i] = j` means block entry `i` is name `j`.
pub fn regroup_perm(left: &Obj, right: &Obj, mode: RegroupMode) -> Vec<usize> {
    let combined = left.concat(right);
    let table = EnumTable::build(&combined);
    let split = left.wires() as u16;
    let lefts = enum_obj(left);
    let rights = enum_obj(right);

    let mut block: Vec<BasisName> = Vec::new();
    match mode {
        RegroupMode::Functional => {
            for l in &lefts {
                for r in &rights {
                    block.push(BasisName::merge_offset(l, r, split));
                }
            }
            block.extend(lefts.iter().cloned());
            block.extend(rights.iter().map(|r| BasisName::merge_offset(&BasisName::empty(), r, split)));
        }
        RegroupMode::Full => {
            let mut lf = lefts.clone();
            lf.push(BasisName::empty());
            let mut rf = rights.clone();
            rf.push(BasisName::empty());
            for l in &lf {
                for r in &rf {
                    block.push(BasisName::merge_offset(l, r, split));
                }
            }
        }
    }

    block
        .iter()
        .map(|n| table.index_of(n).expect("regrouped name must exist") as usize)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub fn random_color<R: Rng>(rng: &mut R, depth: usize) -> Color {
        if depth == 0 || rng.random_bool(0.3) {
            if rng.random_bool(0.25) {
                Color::Zero
            } else {
                Color::One
            }
        } else {
            let a = random_color(rng, depth - 1);
            let b = random_color(rng, depth - 1);
            if rng.random_bool(0.5) {
                Color::plus(a, b)
            } else {
                Color::times(a, b)
            }
        }
    }

    #[test]
    fn leaf_counts() {
        let b = Color::bit();
        assert_eq!(b.dim(), 2);
        assert_eq!(b.leaf_labels().len(), 2);
        let bb = Color::times(Color::bit(), Color::bit());
        assert_eq!(bb.leaf_labels(), vec!["(L·⊗L·)", "(L·⊗R·)", "(R·⊗L·)", "(R·⊗R·)"]);
        assert_eq!(Color::times(Color::Zero, Color::bit()).dim(), 0);
    }

    #[test]
    fn dims() {
        assert_eq!(Color::bit().dim(), 2);
        assert_eq!(Obj(vec![Color::bit(), Color::bit()]).dim(), 8);
        assert_eq!(Obj::empty().dim(), 0);
        assert_eq!(Obj(vec![Color::One, Color::One, Color::One]).dim(), 7);
    }

    #[test]
    fn canon_examples() {
        let a = Color::bit();
        let b = Color::times(Color::One, Color::One);
        // (A ⊕ 0) ⊕ B = A ⊕ B
        assert_eq!(
            canon_color(&Color::plus(Color::plus(a.clone(), Color::Zero), b.clone())),
            canon_color(&Color::plus(a.clone(), b.clone()))
        );
        // 1 ⊗ (A ⊗ 1) = A
        assert_eq!(
            canon_color(&Color::times(Color::One, Color::times(a.clone(), Color::One))),
            canon_color(&a)
        );
        // associativity of ⊗
        let abc1 = Color::times(Color::times(a.clone(), b.clone()), Color::Zero);
        let abc2 = Color::times(a.clone(), Color::times(b.clone(), Color::Zero));
        assert_eq!(canon_color(&abc1), canon_color(&abc2));
        // no annihilation: A ⊗ 0 is not equivalent to 0
        assert_ne!(canon_color(&Color::times(a, Color::Zero)), Color::Zero);
    }

    #[test]
    fn canon_idempotent_and_congruent() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let c = random_color(&mut rng, 4);
            let k = canon_color(&c);
            assert_eq!(canon_color(&k), k);
            // rewriting by a unit rule preserves the canonical form
            let padded = Color::times(Color::One, Color::plus(c.clone(), Color::Zero));
            assert_eq!(canon_color(&padded), k);
        }
    }

    #[test]
    fn equivalent_colors_have_matching_leaves() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..200 {
            let c = random_color(&mut rng, 3);
            let padded = Color::plus(Color::Zero, Color::times(c.clone(), Color::One));
            assert!(colors_equivalent(&c, &padded));
            assert_eq!(c.dim(), padded.dim());
        }
    }

    #[test]
    fn enum_order_two_and_three_wires() {
        let ones2 = Obj(vec![Color::One, Color::One]);
        let names: Vec<String> = enum_obj(&ones2).iter().map(|n| n.to_string()).collect();
        assert_eq!(names, vec!["{1:0,2:0}", "{1:0}", "{2:0}"]);

        let ones3 = Obj(vec![Color::One, Color::One, Color::One]);
        let names: Vec<String> = enum_obj(&ones3).iter().map(|n| n.to_string()).collect();
        assert_eq!(
            names,
            vec![
                "{1:0,2:0,3:0}",
                "{1:0,3:0}",
                "{2:0,3:0}",
                "{1:0,2:0}",
                "{1:0}",
                "{2:0}",
                "{3:0}"
            ]
        );

        assert!(enum_obj(&Obj(vec![Color::Zero])).is_empty());
        assert_eq!(enum_full(&Obj::empty()).len(), 1);
        assert_eq!(enum_full(&Obj(vec![Color::One])).len(), 2);
        assert_eq!(enum_full(&Obj(vec![Color::bit()])).len(), 3);
    }

    #[test]
    fn enum_length_matches_dim() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let w = rng.random_range(0..4usize);
            let obj = Obj((0..w).map(|_| random_color(&mut rng, 2)).collect());
            assert_eq!(enum_obj(&obj).len(), obj.dim(), "{obj}");
        }
    }

    #[test]
    fn two_wire_block_structure() {
        let a = Color::bit();
        let b = Color::plus(Color::bit(), Color::One);
        let obj = Obj(vec![a.clone(), b.clone()]);
        let names = enum_obj(&obj);
        let (da, db) = (a.dim(), b.dim());
        assert_eq!(names.len(), da * db + da + db);
        for n in names.iter().take(da * db) {
            assert_eq!(n.entries().len(), 2);
        }
        for n in names.iter().skip(da * db).take(da) {
            assert_eq!(n.entries(), &[(0, n.entries()[0].1)]);
        }
        for n in names.iter().skip(da * db + da) {
            assert_eq!(n.entries()[0].0, 1);
        }
    }

    #[test]
    fn regroup_identity_on_two_unit_wires() {
        let one = Obj(vec![Color::One]);
        let perm = regroup_perm(&one, &one, RegroupMode::Functional);
        assert_eq!(perm, vec![0, 1, 2]);
    }

    #[test]
    fn regroup_full_with_empty_left() {
        let x = Obj(vec![Color::bit()]);
        let perm = regroup_perm(&Obj::empty(), &x, RegroupMode::Full);
        assert_eq!(perm.len(), x.dim() + 1);
        assert_eq!(perm, vec![0, 1, 2]);
    }
}
