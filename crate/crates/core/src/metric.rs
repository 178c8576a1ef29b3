//! Word length in `{x0, x1}` read directly off a forest diagram.
//!
//! Every space between consecutive leaves of the support gets a label in
//! each forest:
//!
//! * `L`: exterior and left of the forest's pointer,
//! * `N`: not `L`, and the leaf right of the space is a left child,
//! * `I`: interior and not `N`,
//! * `R`: exterior, right of the pointer, and not `N`.
//!
//! Top and bottom spaces pair up positionally and each pair gets a weight
//! from [`pair_weight`]. The length is the caret count plus the total weight.

use std::fmt;

use serde::Serialize;

use crate::forest::{ForestDiagram, PointedForest};
use crate::word::{GroupWord, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceLabel {
    L,
    N,
    I,
    R,
}

impl SpaceLabel {
    pub fn as_char(self) -> char {
        match self {
            SpaceLabel::L => 'L',
            SpaceLabel::N => 'N',
            SpaceLabel::I => 'I',
            SpaceLabel::R => 'R',
        }
    }
}

impl fmt::Display for SpaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Weight of a (top, bottom) space pair. Symmetric in its arguments.
pub fn pair_weight(a: SpaceLabel, b: SpaceLabel) -> u32 {
    use SpaceLabel::*;
    match (a, b) {
        (L, L) => 2,
        (L, _) | (_, L) => 1,
        (N, _) | (_, N) => 2,
        (R, R) => 2,
        (I, I) | (I, R) | (R, I) => 0,
    }
}

/// Inclusive range of window-leaf indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LeafInterval {
    pub min: usize,
    pub max: usize,
}

impl LeafInterval {
    pub fn leaves(&self) -> usize {
        self.max - self.min + 1
    }

    pub fn spaces(&self) -> usize {
        self.max - self.min
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceLabeling {
    pub support: LeafInterval,
    pub top: Vec<SpaceLabel>,
    pub bottom: Vec<SpaceLabel>,
    pub weights: Vec<u32>,
}

impl SpaceLabeling {
    pub fn top_string(&self) -> String {
        self.top.iter().map(|l| l.as_char()).collect()
    }

    pub fn bottom_string(&self) -> String {
        self.bottom.iter().map(|l| l.as_char()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LengthBreakdown {
    /// Total caret count, top plus bottom.
    pub carets: usize,
    pub top_carets: usize,
    pub bottom_carets: usize,
    /// Sum of the space-pair weights.
    pub x0_count: usize,
    pub total: usize,
}

/// Smallest leaf interval containing both pointed trees and every
/// nontrivial tree. On canonical diagrams this is the whole window.
pub fn support(v: &ForestDiagram) -> LeafInterval {
    let mut lo = usize::MAX;
    let mut hi = 0;
    for forest in [v.top(), v.bottom()] {
        for (i, t) in forest.trees().iter().enumerate() {
            if i == forest.pointer() || !t.is_trivial() {
                let (a, b) = forest.leaf_range(i);
                lo = lo.min(a);
                hi = hi.max(b);
            }
        }
    }
    LeafInterval { min: lo, max: hi }
}

pub fn width(v: &ForestDiagram) -> usize {
    support(v).spaces()
}

fn label_forest(forest: &PointedForest, sup: LeafInterval) -> Vec<SpaceLabel> {
    let info = forest.leaf_info();
    (sup.min..sup.max)
        .map(|i| {
            let (tree, _) = info[i];
            let (next_tree, next_is_left) = info[i + 1];
            let exterior = tree != next_tree;
            if exterior && tree < forest.pointer() {
                SpaceLabel::L
            } else if next_is_left {
                SpaceLabel::N
            } else if !exterior {
                SpaceLabel::I
            } else {
                SpaceLabel::R
            }
        })
        .collect()
}

pub fn label_spaces(v: &ForestDiagram) -> SpaceLabeling {
    let sup = support(v);
    let top = label_forest(v.top(), sup);
    let bottom = label_forest(v.bottom(), sup);
    let weights = top.iter().zip(&bottom).map(|(&a, &b)| pair_weight(a, b)).collect();
    SpaceLabeling { support: sup, top, bottom, weights }
}

pub fn length_breakdown(v: &ForestDiagram) -> LengthBreakdown {
    let labels = label_spaces(v);
    let top_carets = v.top().caret_count();
    let bottom_carets = v.bottom().caret_count();
    let x0_count = labels.weights.iter().map(|&w| w as usize).sum::<usize>();
    let carets = top_carets + bottom_carets;
    LengthBreakdown { carets, top_carets, bottom_carets, x0_count, total: carets + x0_count }
}

/// Word length of `v` in the Cayley graph.
pub fn length(v: &ForestDiagram) -> usize {
    length_breakdown(v).total
}

/// Pointed trees end on matched leaves and nothing nontrivial lies to the
/// right of either pointer.
pub fn is_left_sided(v: &ForestDiagram) -> bool {
    let (top, bottom) = (v.top(), v.bottom());
    top.pointed_leaf_range().1 == bottom.pointed_leaf_range().1
        && [top, bottom]
            .iter()
            .all(|f| f.trees()[f.pointer() + 1..].iter().all(|t| t.is_trivial()))
}

/// Mirror image of [`is_left_sided`]: pointed trees start on matched leaves
/// and nothing nontrivial lies to their left.
pub fn is_right_sided(v: &ForestDiagram) -> bool {
    let (top, bottom) = (v.top(), v.bottom());
    top.pointed_leaf_range().0 == bottom.pointed_leaf_range().0
        && [top, bottom]
            .iter()
            .all(|f| f.trees()[..f.pointer()].iter().all(|t| t.is_trivial()))
}

/// A minimum-length word for `v`.
///
/// Walks from `v` down to the identity, at each step taking the first letter
/// in [`Letter::ALL`] order whose neighbour is one shorter.
pub fn geodesic_word(v: &ForestDiagram) -> GroupWord {
    let mut current = v.clone();
    let mut len = length(&current);
    let mut stripped = Vec::with_capacity(len);
    while len > 0 {
        let (letter, next) = Letter::ALL
            .iter()
            .map(|&g| (g, current.apply(g)))
            .find(|(_, n)| length(n) + 1 == len)
            .expect("word length drops by one along some edge");
        stripped.push(letter.inverse());
        current = next;
        len -= 1;
    }
    GroupWord::from(stripped)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct X2Facts {
    pub commutes: bool,
    pub length_shift: i64,
}

/// The element `x2 = x0^-1 x1 x0`.
pub fn x2() -> ForestDiagram {
    ForestDiagram::from_word(&GroupWord::from(vec![Letter::X0Inv, Letter::X1, Letter::X0]))
}

/// Whether `v` commutes with `x2`, and how much left multiplication by `x2`
/// changes its length.
pub fn x2_facts(v: &ForestDiagram) -> X2Facts {
    let g = x2();
    let left = g.multiply(v);
    let right = v.multiply(&g);
    X2Facts {
        commutes: left == right,
        length_shift: length(&left) as i64 - length(v) as i64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    fn w(text: &str) -> ForestDiagram {
        ForestDiagram::from_word(&parse_word(text).unwrap())
    }

    #[test]
    fn weight_table() {
        use SpaceLabel::*;
        let order = [N, I, R, L];
        let table = [[2, 2, 2, 1], [2, 0, 0, 1], [2, 0, 2, 1], [1, 1, 1, 2]];
        for (i, &a) in order.iter().enumerate() {
            for (j, &b) in order.iter().enumerate() {
                assert_eq!(pair_weight(a, b), table[i][j], "{a}{b}");
            }
        }
    }

    #[test]
    fn generators_have_length_one() {
        assert_eq!(length(&ForestDiagram::identity()), 0);
        for g in Letter::ALL {
            assert_eq!(length(&ForestDiagram::identity().apply(g)), 1, "{g}");
        }
    }

    #[test]
    fn witness_labels_n2() {
        let l = w("x0^-2 x1 x0^3 x1^-2");
        let lab = label_spaces(&l);
        assert_eq!(lab.support, LeafInterval { min: 0, max: 4 });
        assert_eq!(lab.top_string(), "LRNI");
        assert_eq!(lab.bottom_string(), "IIRR");
        assert_eq!(lab.weights, vec![1, 0, 2, 0]);
        assert_eq!(width(&l), 4);
        assert!(!is_left_sided(&l));
    }

    #[test]
    fn support_of_small_elements() {
        assert_eq!(support(&ForestDiagram::identity()), LeafInterval { min: 0, max: 0 });
        assert_eq!(width(&ForestDiagram::identity()), 0);
        assert_eq!(support(&w("x1")), LeafInterval { min: 0, max: 1 });
    }

    #[test]
    fn sidedness() {
        assert!(is_left_sided(&ForestDiagram::identity()));
        assert!(is_right_sided(&ForestDiagram::identity()));
        // x1^-1 x1^-1: top `^. . .`, bottom `^((..).)`; the pointed top leaf
        // ends at leaf 0 while the bottom tree ends at leaf 2.
        let v = w("x1^-1 x1^-1");
        assert_eq!(v.to_string(), "^. . . / ^((..).)");
        assert!(!is_left_sided(&v));
        assert!(is_right_sided(&v));
        assert!(is_left_sided(&w("x1 x0^-1")));
        assert!(!is_left_sided(&w("x0^-1 x1^-1")));
    }

    #[test]
    fn geodesic_of_identity_is_empty() {
        assert!(geodesic_word(&ForestDiagram::identity()).is_empty());
        let l = w("x0^-2 x1 x0^3 x1^-2");
        let g = geodesic_word(&l);
        assert_eq!(g.len(), 6);
        assert_eq!(ForestDiagram::from_word(&g), l);
    }

    #[test]
    fn x2_on_identity() {
        assert_eq!(length(&x2()), 3);
        assert_eq!(
            x2_facts(&ForestDiagram::identity()),
            X2Facts { commutes: true, length_shift: 3 }
        );
    }
}
