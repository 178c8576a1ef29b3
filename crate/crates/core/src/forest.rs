//! Forest diagrams and the group structure of F on them.
//!
//! A diagram is stored as a finite window of a top and a bottom forest, each
//! with a pointer. Outside the window both forests are implicitly padded by
//! trivial trees. The `i`-th leaf of the top window is matched with the
//! `i`-th leaf of the bottom window, and padding leaves match in order.
//!
//! [`ForestDiagram`] always holds the canonical form: reduced (no opposing
//! grounded carets) and trimmed (no unpointed trivial/trivial column at either
//! edge of the window). Structural equality is therefore equality in F.
//! [`RawDiagram`] holds arbitrary, possibly unreduced, diagrams.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::tree::Tree;
use crate::word::{GroupWord, Letter};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("top window has {top} leaves but bottom window has {bottom}")]
    LeafCountMismatch { top: usize, bottom: usize },
    #[error("{forest} pointer {pointer} out of range for {len} trees")]
    PointerOutOfRange { forest: &'static str, pointer: usize, len: usize },
    #[error("{0} forest window is empty")]
    EmptyWindow(&'static str),
    #[error("diagram syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("diagram is not canonical; its canonical form is {0}")]
    NotCanonical(String),
}

/// A finite window of a bi-infinite forest with a distinguished tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointedForest {
    trees: Vec<Tree>,
    pointer: usize,
}

impl PointedForest {
    pub fn new(trees: Vec<Tree>, pointer: usize) -> Self {
        PointedForest { trees, pointer }
    }

    /// A single pointed trivial tree.
    pub fn trivial() -> Self {
        PointedForest { trees: vec![Tree::Leaf], pointer: 0 }
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn pointer(&self) -> usize {
        self.pointer
    }

    pub fn pointed_tree(&self) -> &Tree {
        &self.trees[self.pointer]
    }

    pub fn leaf_count(&self) -> usize {
        self.trees.iter().map(Tree::leaf_count).sum()
    }

    pub fn caret_count(&self) -> usize {
        self.trees.iter().map(Tree::caret_count).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.trees.iter().all(Tree::is_trivial)
    }

    /// Window-leaf index of the first leaf of every tree.
    pub fn tree_starts(&self) -> Vec<usize> {
        let mut acc = 0;
        self.trees
            .iter()
            .map(|t| {
                let s = acc;
                acc += t.leaf_count();
                s
            })
            .collect()
    }

    /// First and last window-leaf index of tree `idx`.
    pub fn leaf_range(&self, idx: usize) -> (usize, usize) {
        let start: usize = self.trees[..idx].iter().map(Tree::leaf_count).sum();
        (start, start + self.trees[idx].leaf_count() - 1)
    }

    /// Window-leaf range of the pointed tree.
    pub fn pointed_leaf_range(&self) -> (usize, usize) {
        self.leaf_range(self.pointer)
    }

    /// For every window leaf: the index of its tree and whether it is the
    /// left child of a caret.
    pub fn leaf_info(&self) -> Vec<(usize, bool)> {
        self.trees
            .iter()
            .enumerate()
            .flat_map(|(i, t)| t.left_child_flags().into_iter().map(move |f| (i, f)))
            .collect()
    }

    /// Tree index and in-tree offset of window leaf `leaf`.
    pub fn locate_leaf(&self, leaf: usize) -> Option<(usize, usize)> {
        let mut rest = leaf;
        for (i, t) in self.trees.iter().enumerate() {
            let n = t.leaf_count();
            if rest < n {
                return Some((i, rest));
            }
            rest -= n;
        }
        None
    }

    /// Window-leaf indices `i` with a grounded caret over leaves `i, i+1`.
    pub fn grounded_carets(&self) -> Vec<usize> {
        self.tree_starts()
            .into_iter()
            .zip(&self.trees)
            .flat_map(|(s, t)| t.grounded_carets().into_iter().map(move |o| s + o))
            .collect()
    }

    fn collapse_grounded(&mut self, leaf: usize) -> bool {
        match self.locate_leaf(leaf) {
            Some((i, off)) => self.trees[i].collapse_grounded(off),
            None => false,
        }
    }

    fn expand_leaf(&mut self, leaf: usize) {
        let (i, off) = self.locate_leaf(leaf).expect("leaf inside window");
        self.trees[i].replace_leaf(off, Tree::grounded());
    }

    fn check(&self, name: &'static str) -> Result<(), DiagramError> {
        if self.trees.is_empty() {
            return Err(DiagramError::EmptyWindow(name));
        }
        if self.pointer >= self.trees.len() {
            return Err(DiagramError::PointerOutOfRange {
                forest: name,
                pointer: self.pointer,
                len: self.trees.len(),
            });
        }
        Ok(())
    }
}

/// Trees separated by single spaces, the pointed one prefixed with `^`.
impl fmt::Display for PointedForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.trees.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if i == self.pointer {
                f.write_str("^")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// A forest diagram that need not be reduced or trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RawDiagram {
    pub top: PointedForest,
    pub bottom: PointedForest,
}

impl RawDiagram {
    pub fn new(top: PointedForest, bottom: PointedForest) -> Self {
        RawDiagram { top, bottom }
    }

    pub fn validate(&self) -> Result<(), DiagramError> {
        self.top.check("top")?;
        self.bottom.check("bottom")?;
        let (top, bottom) = (self.top.leaf_count(), self.bottom.leaf_count());
        if top != bottom {
            return Err(DiagramError::LeafCountMismatch { top, bottom });
        }
        Ok(())
    }

    /// Window-leaf indices `i` where a grounded top caret over leaves
    /// `i, i+1` opposes a grounded bottom caret over the same leaves.
    pub fn opposing_pairs(&self) -> Vec<usize> {
        let bottom = self.bottom.grounded_carets();
        self.top
            .grounded_carets()
            .into_iter()
            .filter(|i| bottom.binary_search(i).is_ok())
            .collect()
    }

    /// Remove the opposing pair at window leaf `leaf`. Returns false if there
    /// is none there.
    pub fn reduce_at(&mut self, leaf: usize) -> bool {
        if !self.opposing_pairs().contains(&leaf) {
            return false;
        }
        let a = self.top.collapse_grounded(leaf);
        let b = self.bottom.collapse_grounded(leaf);
        debug_assert!(a && b);
        true
    }

    /// Insert an opposing pair of grounded carets at window leaf `leaf`.
    pub fn expand_at(&mut self, leaf: usize) {
        self.top.expand_leaf(leaf);
        self.bottom.expand_leaf(leaf);
    }

    /// Prepend `k` matched trivial trees to both windows.
    pub fn pad_left(&mut self, k: usize) {
        for f in [&mut self.top, &mut self.bottom] {
            f.trees.splice(0..0, std::iter::repeat_n(Tree::Leaf, k));
            f.pointer += k;
        }
    }

    /// Append `k` matched trivial trees to both windows.
    pub fn pad_right(&mut self, k: usize) {
        for f in [&mut self.top, &mut self.bottom] {
            f.trees.extend(std::iter::repeat_n(Tree::Leaf, k));
        }
    }

    /// Drop unpointed trivial/trivial columns from both edges.
    pub fn trim(&mut self) {
        let mut left = 0;
        let max_left = self.top.trees.len().min(self.bottom.trees.len());
        while left < max_left
            && self.top.trees[left].is_trivial()
            && self.bottom.trees[left].is_trivial()
            && self.top.pointer != left
            && self.bottom.pointer != left
        {
            left += 1;
        }
        if left > 0 {
            for f in [&mut self.top, &mut self.bottom] {
                f.trees.drain(..left);
                f.pointer -= left;
            }
        }
        loop {
            let (nt, nb) = (self.top.trees.len(), self.bottom.trees.len());
            if nt > 1
                && nb > 1
                && self.top.trees[nt - 1].is_trivial()
                && self.bottom.trees[nb - 1].is_trivial()
                && self.top.pointer != nt - 1
                && self.bottom.pointer != nb - 1
            {
                self.top.trees.pop();
                self.bottom.trees.pop();
            } else {
                break;
            }
        }
    }

    /// Reduce every opposing pair, then trim.
    pub fn canonicalize(self) -> Result<ForestDiagram, DiagramError> {
        self.validate()?;
        Ok(self.canonicalize_valid())
    }

    fn canonicalize_valid(mut self) -> ForestDiagram {
        while let Some(&i) = self.opposing_pairs().first() {
            self.reduce_at(i);
        }
        self.trim();
        ForestDiagram(self)
    }
}

impl fmt::Display for RawDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.top, self.bottom)
    }
}

impl FromStr for RawDiagram {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_raw(s)
    }
}

/// Canonical forest diagram: one per element of F.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ForestDiagram(RawDiagram);

impl ForestDiagram {
    pub fn identity() -> Self {
        ForestDiagram(RawDiagram::new(PointedForest::trivial(), PointedForest::trivial()))
    }

    pub fn top(&self) -> &PointedForest {
        &self.0.top
    }

    pub fn bottom(&self) -> &PointedForest {
        &self.0.bottom
    }

    pub fn raw(&self) -> &RawDiagram {
        &self.0
    }

    pub fn into_raw(self) -> RawDiagram {
        self.0
    }

    pub fn is_identity(&self) -> bool {
        *self == ForestDiagram::identity()
    }

    pub fn leaf_count(&self) -> usize {
        self.0.top.leaf_count()
    }

    pub fn caret_count(&self) -> usize {
        self.0.top.caret_count() + self.0.bottom.caret_count()
    }

    /// True iff the bottom forest is trivial.
    pub fn is_semi_positive(&self) -> bool {
        self.0.bottom.is_trivial()
    }

    /// Left multiplication by one generator letter.
    pub fn apply(&self, letter: Letter) -> ForestDiagram {
        let mut d = self.0.clone();
        match letter {
            Letter::X0 => {
                if d.top.pointer + 1 == d.top.trees.len() {
                    d.pad_right(1);
                }
                d.top.pointer += 1;
            }
            Letter::X0Inv => {
                if d.top.pointer == 0 {
                    d.pad_left(1);
                }
                d.top.pointer -= 1;
            }
            Letter::X1 => {
                let p = d.top.pointer;
                if p + 1 == d.top.trees.len() {
                    d.pad_right(1);
                }
                let right = d.top.trees.remove(p + 1);
                let left = std::mem::take(&mut d.top.trees[p]);
                d.top.trees[p] = Tree::caret(left, right);
            }
            Letter::X1Inv => {
                let p = d.top.pointer;
                match std::mem::take(&mut d.top.trees[p]) {
                    Tree::Caret(l, r) => {
                        d.top.trees[p] = *l;
                        d.top.trees.insert(p + 1, *r);
                    }
                    Tree::Leaf => {
                        // Expand at the pointed leaf, then delete the new top caret.
                        let (leaf, _) = d.top.pointed_leaf_range();
                        d.bottom.expand_leaf(leaf);
                        d.top.trees.insert(p + 1, Tree::Leaf);
                    }
                }
            }
        }
        d.canonicalize_valid()
    }

    /// Fold a word over this diagram: the result is `w * self`.
    pub fn apply_word(&self, w: &GroupWord) -> ForestDiagram {
        w.letters().iter().rev().fold(self.clone(), |acc, &l| acc.apply(l))
    }

    pub fn from_word(w: &GroupWord) -> ForestDiagram {
        ForestDiagram::identity().apply_word(w)
    }

    /// Swap the two forests.
    pub fn inverse(&self) -> ForestDiagram {
        ForestDiagram(RawDiagram::new(self.0.bottom.clone(), self.0.top.clone()))
    }

    /// The product `self * other`.
    pub fn multiply(&self, other: &ForestDiagram) -> ForestDiagram {
        if self.is_semi_positive() {
            self.stack_on(other).expect("semi-positive left factor")
        } else {
            self.multiply_by_fold(other)
        }
    }

    /// `self * other` by folding a word for `self` over `other`.
    pub fn multiply_by_fold(&self, other: &ForestDiagram) -> ForestDiagram {
        other.apply_word(&self.to_word())
    }

    /// `self * other` for semi-positive `self` by stacking its top forest on
    /// the top forest of `other`: the leaves of `self` are glued to the roots
    /// of `other`, with the bottom pointer of `self` aligned to the top
    /// pointer of `other`. Returns `None` when `self` is not semi-positive.
    pub fn stack_on(&self, other: &ForestDiagram) -> Option<ForestDiagram> {
        if !self.is_semi_positive() {
            return None;
        }
        let upper = &self.0.top;
        let leaves = upper.leaf_count();
        let mut lower = other.0.clone();
        // Index in `lower.top` of the root receiving leaf 0 of `upper`.
        let mut first = lower.top.pointer as isize - self.0.bottom.pointer as isize;
        if first < 0 {
            lower.pad_left((-first) as usize);
            first = 0;
        }
        let first = first as usize;
        let end = first + leaves;
        if end > lower.top.trees.len() {
            let extra = end - lower.top.trees.len();
            lower.pad_right(extra);
        }
        let mut roots = std::mem::take(&mut lower.top.trees);
        let after = roots.split_off(end);
        let mut glued = roots.split_off(first);
        let mut trees = roots;
        {
            let mut subs = glued.drain(..);
            trees.extend(upper.trees.iter().map(|t| t.graft(&mut subs)));
        }
        trees.extend(after);
        lower.top = PointedForest::new(trees, first + upper.pointer);
        Some(lower.canonicalize_valid())
    }

    /// Some word representing this element, not necessarily geodesic.
    ///
    /// Writes the element as `T * B^-1` where `T` and `B` are semi-positive
    /// with top forests equal to the top and bottom forests here, and each of
    /// them is built from the identity tree by tree, left to right.
    pub fn to_word(&self) -> GroupWord {
        let top = build_instructions(&self.0.top);
        let bottom = build_instructions(&self.0.bottom);
        top.into_iter()
            .rev()
            .chain(bottom.into_iter().map(Letter::inverse))
            .collect::<GroupWord>()
            .free_reduce()
    }
}

/// Letters, in execution order, that turn the identity into the semi-positive
/// element whose top forest is `forest` and whose bottom pointer sits under
/// window leaf 0.
fn build_instructions(forest: &PointedForest) -> Vec<Letter> {
    fn build_tree(t: &Tree, out: &mut Vec<Letter>) {
        if let Tree::Caret(l, r) = t {
            build_tree(l, out);
            out.push(Letter::X0);
            build_tree(r, out);
            out.push(Letter::X0Inv);
            out.push(Letter::X1);
        }
    }
    let mut out = Vec::new();
    for (k, t) in forest.trees.iter().enumerate() {
        if k > 0 {
            out.push(Letter::X0);
        }
        build_tree(t, &mut out);
    }
    let last = forest.trees.len() - 1;
    out.extend(std::iter::repeat_n(Letter::X0Inv, last - forest.pointer));
    out
}

impl fmt::Display for ForestDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Parses the text form and rejects diagrams that are not canonical.
impl FromStr for ForestDiagram {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let raw = parse_raw(s)?;
        let canon = raw.clone().canonicalize()?;
        if canon.0 != raw {
            return Err(DiagramError::NotCanonical(canon.to_string()));
        }
        Ok(canon)
    }
}

/// Parse `top / bottom` without requiring canonical form. The structural
/// invariants (pointer in range, equal leaf counts) are still checked.
pub fn parse_raw(text: &str) -> Result<RawDiagram, DiagramError> {
    let text = text.trim();
    let sep = text.find(" / ").ok_or_else(|| DiagramError::Syntax {
        pos: 0,
        msg: "expected ' / ' between top and bottom forests".into(),
    })?;
    let top = parse_forest(&text[..sep], 0)?;
    let bottom = parse_forest(&text[sep + 3..], sep + 3)?;
    let raw = RawDiagram::new(top, bottom);
    raw.validate()?;
    Ok(raw)
}

fn parse_forest(text: &str, base: usize) -> Result<PointedForest, DiagramError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut trees = Vec::new();
    let mut pointer = None;
    let err = |pos: usize, msg: &str| DiagramError::Syntax { pos: base + pos, msg: msg.into() };
    loop {
        if bytes.get(pos) == Some(&b'^') {
            if pointer.is_some() {
                return Err(err(pos, "second pointer in forest"));
            }
            pointer = Some(trees.len());
            pos += 1;
        }
        trees.push(parse_tree(bytes, &mut pos).map_err(|p| err(p, "malformed tree"))?);
        match bytes.get(pos) {
            None => break,
            Some(b' ') => pos += 1,
            Some(_) => return Err(err(pos, "expected a single space between trees")),
        }
    }
    let pointer = pointer.ok_or_else(|| err(0, "forest has no '^' pointer"))?;
    Ok(PointedForest::new(trees, pointer))
}

fn parse_tree(bytes: &[u8], pos: &mut usize) -> Result<Tree, usize> {
    match bytes.get(*pos) {
        Some(b'.') => {
            *pos += 1;
            Ok(Tree::Leaf)
        }
        Some(b'(') => {
            *pos += 1;
            let l = parse_tree(bytes, pos)?;
            let r = parse_tree(bytes, pos)?;
            if bytes.get(*pos) != Some(&b')') {
                return Err(*pos);
            }
            *pos += 1;
            Ok(Tree::caret(l, r))
        }
        _ => Err(*pos),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    fn w(text: &str) -> ForestDiagram {
        ForestDiagram::from_word(&parse_word(text).unwrap())
    }

    fn d(text: &str) -> ForestDiagram {
        text.parse().unwrap()
    }

    #[test]
    fn identity_text() {
        assert_eq!(ForestDiagram::identity().to_string(), "^. / ^.");
        assert_eq!(d("^. / ^."), ForestDiagram::identity());
    }

    #[test]
    fn generator_actions_on_identity() {
        assert_eq!(w("x1").to_string(), "^(..) / ^. .");
        assert_eq!(w("x1^-1").to_string(), "^. . / ^(..)");
        assert_eq!(w("x0").to_string(), ". ^. / ^. .");
        assert_eq!(w("x0^-1").to_string(), "^. . / . ^.");
        assert_eq!(w("x0^-1 x0"), ForestDiagram::identity());
        assert_eq!(w("x1^-1 x1"), ForestDiagram::identity());
    }

    #[test]
    fn witness_shape_n2() {
        let l = w("x0^-2 x1 x0^3 x1^-2");
        assert_eq!(l.to_string(), ". ^. . (..) / ^((..).) . .");
        assert_eq!(l.caret_count(), 3);
    }

    #[test]
    fn single_reduction_gives_identity() {
        let raw: RawDiagram = "^(..) / ^(..)".parse().unwrap();
        assert_eq!(raw.opposing_pairs(), vec![0]);
        assert_eq!(raw.canonicalize().unwrap(), ForestDiagram::identity());
        assert_eq!(w("x1 x1^-1"), ForestDiagram::identity());
    }

    #[test]
    fn structural_errors() {
        assert_eq!(
            "^(..) / ^.".parse::<RawDiagram>(),
            Err(DiagramError::LeafCountMismatch { top: 2, bottom: 1 })
        );
        let bad = RawDiagram::new(PointedForest::new(vec![Tree::Leaf], 3), PointedForest::trivial());
        assert!(matches!(bad.canonicalize(), Err(DiagramError::PointerOutOfRange { .. })));
        assert!(matches!("^. . / ^. .".parse::<ForestDiagram>(), Err(DiagramError::NotCanonical(_))));
        assert!(matches!("^.  . / ^. .".parse::<RawDiagram>(), Err(DiagramError::Syntax { .. })));
        assert!(matches!(". / ^.".parse::<RawDiagram>(), Err(DiagramError::Syntax { .. })));
        assert!(matches!("^.^. / ^.".parse::<RawDiagram>(), Err(DiagramError::Syntax { .. })));
    }

    #[test]
    fn trim_keeps_pointed_columns() {
        let raw: RawDiagram = ". . ^(..) . / . ^. . . .".parse().unwrap();
        let c = raw.canonicalize().unwrap();
        assert_eq!(c.to_string(), ". ^(..) / ^. . .");
    }

    #[test]
    fn inverse_swaps() {
        assert_eq!(w("x1").inverse(), w("x1^-1"));
        assert_eq!(ForestDiagram::identity().inverse(), ForestDiagram::identity());
        assert_eq!(
            w("x0^-2 x1 x0^3 x1^-2").inverse(),
            w("x1^2 x0^-3 x1^-1 x0^2")
        );
    }

    #[test]
    fn semi_positive() {
        assert!(ForestDiagram::identity().is_semi_positive());
        assert!(!w("x1^-1").is_semi_positive());
        assert!(w("x0^-1 x1 x0 x1").is_semi_positive());
    }

    #[test]
    fn to_word_examples() {
        assert!(ForestDiagram::identity().to_word().is_empty());
        assert_eq!(w("x1").to_word(), parse_word("x1").unwrap());
        let l = w("x0^-2 x1 x0^3 x1^-2");
        assert_eq!(ForestDiagram::from_word(&l.to_word()), l);
    }

    #[test]
    fn stacking_matches_fold() {
        let f = w("x0^-1 x1 x0 x1 x0^2");
        let g = w("x1^-3 x0 x1^-1 x0^-2");
        assert_eq!(f.stack_on(&g).unwrap(), f.multiply_by_fold(&g));
        assert!(g.stack_on(&f).is_none());
    }

    #[test]
    fn expansion_then_reduction() {
        let mut raw = w("x0^-2 x1 x0^3 x1^-2").into_raw();
        raw.expand_at(2);
        raw.expand_at(0);
        assert_eq!(raw.opposing_pairs(), vec![0, 3]);
        assert!(!raw.reduce_at(1));
        assert_eq!(raw.canonicalize().unwrap(), w("x0^-2 x1 x0^3 x1^-2"));
    }
}
