use serde::Serialize;

use crate::forest::ForestDiagram;
use crate::metric::length;
use crate::word::GroupWord;

/// Position of the right foot (last leaf of the pointed top tree) relative
/// to the critical leaf (last leaf of the pointed bottom tree).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FootSide {
    Left,
    On,
    Right,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub index: usize,
    /// Letter applied to reach this vertex; none for the start.
    pub letter: Option<String>,
    pub element: String,
    pub length: usize,
    pub in_ball: bool,
    pub right_foot: usize,
    pub critical_leaf: usize,
    pub foot_on_critical: bool,
    pub side: FootSide,
    /// The foot crossed the critical leaf on this step without landing on it.
    pub jump: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PathTrace {
    pub start: String,
    pub word: String,
    pub radius: usize,
    pub steps: Vec<TraceStep>,
    /// First and last vertex index with the foot on the critical leaf.
    pub h_l: Option<usize>,
    pub h_r: Option<usize>,
    pub jumps: Vec<usize>,
    pub stays_in_ball: bool,
}

fn foot_and_critical(v: &ForestDiagram) -> (usize, usize) {
    (v.top().pointed_leaf_range().1, v.bottom().pointed_leaf_range().1)
}

/// Walk `word` from `start` (letters right to left) and record, for every
/// vertex, its length and where its right foot stands.
pub fn analyze_path(start: &ForestDiagram, word: &GroupWord, radius: usize) -> PathTrace {
    let mut steps = Vec::with_capacity(word.len() + 1);
    let mut cur = start.clone();
    let letters = std::iter::once(None).chain(word.letters().iter().rev().map(Some));
    let mut prev_side = None;
    for (index, letter) in letters.enumerate() {
        if let Some(&g) = letter {
            cur = cur.apply(g);
        }
        let len = length(&cur);
        let (right_foot, critical_leaf) = foot_and_critical(&cur);
        let side = match right_foot.cmp(&critical_leaf) {
            std::cmp::Ordering::Less => FootSide::Left,
            std::cmp::Ordering::Equal => FootSide::On,
            std::cmp::Ordering::Greater => FootSide::Right,
        };
        let jump = matches!(
            (prev_side, side),
            (Some(FootSide::Left), FootSide::Right) | (Some(FootSide::Right), FootSide::Left)
        );
        steps.push(TraceStep {
            index,
            letter: letter.map(|g| g.to_string()),
            element: cur.to_string(),
            length: len,
            in_ball: len <= radius,
            right_foot,
            critical_leaf,
            foot_on_critical: side == FootSide::On,
            side,
            jump,
        });
        prev_side = Some(side);
    }
    let on: Vec<usize> = steps.iter().filter(|s| s.foot_on_critical).map(|s| s.index).collect();
    PathTrace {
        start: start.to_string(),
        word: word.to_string(),
        radius,
        h_l: on.first().copied(),
        h_r: on.last().copied(),
        jumps: steps.iter().filter(|s| s.jump).map(|s| s.index).collect(),
        stays_in_ball: steps.iter().all(|s| s.in_ball),
        steps,
    }
}
