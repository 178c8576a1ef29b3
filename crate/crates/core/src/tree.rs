//! Finite planar binary trees.
//!
//! A [`Tree`] is either a single leaf or a caret joining a left and a right
//! subtree. Leaves are ordered left to right, and most helpers here address
//! a leaf by its offset in that order.

use std::fmt;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    #[default]
    Leaf,
    Caret(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn caret(left: Tree, right: Tree) -> Tree {
        Tree::Caret(Box::new(left), Box::new(right))
    }

    /// The tree with a single grounded caret.
    pub fn grounded() -> Tree {
        Tree::caret(Tree::Leaf, Tree::Leaf)
    }

    /// Left vine with `carets` carets: `((..).)` for 2.
    pub fn left_vine(carets: usize) -> Tree {
        (0..carets).fold(Tree::Leaf, |acc, _| Tree::caret(acc, Tree::Leaf))
    }

    /// Right vine with `carets` carets: `(.(..))` for 2.
    pub fn right_vine(carets: usize) -> Tree {
        (0..carets).fold(Tree::Leaf, |acc, _| Tree::caret(Tree::Leaf, acc))
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Tree::Leaf)
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Caret(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    pub fn caret_count(&self) -> usize {
        self.leaf_count() - 1
    }

    pub fn height(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Caret(l, r) => 1 + l.height().max(r.height()),
        }
    }

    /// For every leaf in order, whether it is the left child of its caret.
    /// The leaf of a trivial tree is not.
    pub fn left_child_flags(&self) -> Vec<bool> {
        fn walk(t: &Tree, is_left: bool, out: &mut Vec<bool>) {
            match t {
                Tree::Leaf => out.push(is_left),
                Tree::Caret(l, r) => {
                    walk(l, true, out);
                    walk(r, false, out);
                }
            }
        }
        let mut out = Vec::with_capacity(self.leaf_count());
        walk(self, false, &mut out);
        out
    }

    /// Offsets `i` such that leaves `i` and `i + 1` hang from one grounded
    /// caret, in increasing order.
    pub fn grounded_carets(&self) -> Vec<usize> {
        fn walk(t: &Tree, base: usize, out: &mut Vec<usize>) -> usize {
            match t {
                Tree::Leaf => 1,
                Tree::Caret(l, r) => {
                    if l.is_trivial() && r.is_trivial() {
                        out.push(base);
                        return 2;
                    }
                    let nl = walk(l, base, out);
                    nl + walk(r, base + nl, out)
                }
            }
        }
        let mut out = Vec::new();
        walk(self, 0, &mut out);
        out
    }

    /// Replace the leaf at `offset` with `with`. Panics when the offset is
    /// out of range.
    pub fn replace_leaf(&mut self, offset: usize, with: Tree) {
        let mut with = Some(with);
        let hit = self.replace_leaf_inner(offset, &mut with);
        assert!(hit.is_none(), "leaf offset {offset} out of range");
    }

    // Returns Some(remaining offset) if the leaf lies beyond this subtree.
    fn replace_leaf_inner(&mut self, offset: usize, with: &mut Option<Tree>) -> Option<usize> {
        match self {
            Tree::Leaf => {
                if offset == 0 {
                    *self = with.take().expect("replacement consumed once");
                    None
                } else {
                    Some(offset - 1)
                }
            }
            Tree::Caret(l, r) => match l.replace_leaf_inner(offset, with) {
                None => None,
                Some(rest) => r.replace_leaf_inner(rest, with),
            },
        }
    }

    /// Collapse the grounded caret whose left leaf sits at `offset` into a
    /// single leaf. Returns false, leaving the tree untouched, if there is no
    /// such caret.
    pub fn collapse_grounded(&mut self, offset: usize) -> bool {
        fn walk(t: &mut Tree, offset: usize) -> Result<bool, usize> {
            match t {
                Tree::Leaf => Err(1),
                Tree::Caret(l, r) => {
                    if l.is_trivial() && r.is_trivial() {
                        if offset == 0 {
                            *t = Tree::Leaf;
                            return Ok(true);
                        }
                        return Err(2);
                    }
                    let nl = match walk(l, offset) {
                        Ok(done) => return Ok(done),
                        Err(n) => n,
                    };
                    if offset < nl {
                        return Ok(false);
                    }
                    walk(r, offset - nl).map_err(|nr| nl + nr)
                }
            }
        }
        matches!(walk(self, offset), Ok(true))
    }

    /// Substitute the `i`-th leaf by `subs[i]` for every leaf.
    pub fn graft(&self, subs: &mut impl Iterator<Item = Tree>) -> Tree {
        match self {
            Tree::Leaf => subs.next().expect("one substitute per leaf"),
            Tree::Caret(l, r) => {
                let l = l.graft(subs);
                let r = r.graft(subs);
                Tree::caret(l, r)
            }
        }
    }
}

/// Nested-parenthesis form: `.` for a leaf, `(LR)` for a caret.
impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => f.write_str("."),
            Tree::Caret(l, r) => write!(f, "({l}{r})"),
        }
    }
}
