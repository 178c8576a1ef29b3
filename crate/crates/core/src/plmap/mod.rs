//! Elements of F as piecewise-linear homeomorphisms of the real line.
//!
//! A [`PLMap`] is given by finitely many dyadic breakpoints, with slopes
//! that are powers of two in between, and by translations `t + K-` and
//! `t + K+` on the two unbounded ends. [`to_plmap`] realises a forest
//! diagram: the bottom forest subdivides the domain, the top forest the
//! range, and pointed trees sit over `[0, 1)`.
//!
//! Everything is exact. With these conventions `to_plmap(f * g)` equals
//! `compose(to_plmap(f), to_plmap(g))`, i.e. `f` after `g`.

mod dyadic;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;
use thiserror::Error;

pub use dyadic::{Dyadic, ParseDyadicError};

use crate::forest::{ForestDiagram, PointedForest};
use crate::tree::Tree;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlError {
    #[error("breakpoints not strictly increasing at index {0}")]
    NotIncreasing(usize),
    #[error("slope between breakpoints {0} and {1} is not a power of two")]
    BadSlope(usize, usize),
    #[error("breakpoint {0} is off the translation tail")]
    TailMismatch(usize),
}

/// Normalized piecewise-linear homeomorphism with power-of-two slopes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PLMap {
    breakpoints: Vec<(Dyadic, Dyadic)>,
    k_minus: i64,
    k_plus: i64,
}

impl PLMap {
    pub fn identity() -> PLMap {
        PLMap::translation(0)
    }

    pub fn translation(k: i64) -> PLMap {
        PLMap { breakpoints: Vec::new(), k_minus: k, k_plus: k }
    }

    /// Build from breakpoints and tails, checking the homeomorphism
    /// conditions, then normalize.
    pub fn new(
        breakpoints: Vec<(Dyadic, Dyadic)>,
        k_minus: i64,
        k_plus: i64,
    ) -> Result<PLMap, PlError> {
        let m = PLMap { breakpoints, k_minus, k_plus };
        m.check()?;
        Ok(m.normalized())
    }

    pub fn breakpoints(&self) -> &[(Dyadic, Dyadic)] {
        &self.breakpoints
    }

    pub fn k_minus(&self) -> i64 {
        self.k_minus
    }

    pub fn k_plus(&self) -> i64 {
        self.k_plus
    }

    /// Strictly increasing breakpoints, power-of-two slopes and breakpoints
    /// consistent with both translation tails.
    pub fn check(&self) -> Result<(), PlError> {
        let bp = &self.breakpoints;
        for i in 1..bp.len() {
            if bp[i].0 <= bp[i - 1].0 || bp[i].1 <= bp[i - 1].1 {
                return Err(PlError::NotIncreasing(i));
            }
            if segment_slope(bp[i - 1], bp[i]).is_none() {
                return Err(PlError::BadSlope(i - 1, i));
            }
        }
        if let (Some(first), Some(last)) = (bp.first(), bp.last()) {
            if first.1 != first.0 + Dyadic::from_int(self.k_minus) {
                return Err(PlError::TailMismatch(0));
            }
            if last.1 != last.0 + Dyadic::from_int(self.k_plus) {
                return Err(PlError::TailMismatch(bp.len() - 1));
            }
        } else if self.k_minus != self.k_plus {
            return Err(PlError::TailMismatch(0));
        }
        Ok(())
    }

    /// Slope exponents of all bounded segments, left to right.
    pub fn slope_exponents(&self) -> Vec<i32> {
        self.breakpoints
            .windows(2)
            .map(|w| segment_slope(w[0], w[1]).expect("valid map"))
            .collect()
    }

    /// Drop breakpoints where the slope does not change.
    pub fn normalized(&self) -> PLMap {
        let bp = &self.breakpoints;
        let mut kept = Vec::with_capacity(bp.len());
        for i in 0..bp.len() {
            let before = if i == 0 { 0 } else { segment_slope(bp[i - 1], bp[i]).expect("valid map") };
            let after =
                if i + 1 == bp.len() { 0 } else { segment_slope(bp[i], bp[i + 1]).expect("valid map") };
            if before != after {
                kept.push(bp[i]);
            }
        }
        PLMap { breakpoints: kept, k_minus: self.k_minus, k_plus: self.k_plus }
    }

    pub fn evaluate(&self, t: Dyadic) -> Dyadic {
        let bp = &self.breakpoints;
        match (bp.first(), bp.last()) {
            (Some(first), _) if t <= first.0 => t + Dyadic::from_int(self.k_minus),
            (_, Some(last)) if t >= last.0 => t + Dyadic::from_int(self.k_plus),
            (None, None) => t + Dyadic::from_int(self.k_minus),
            _ => {
                let i = bp.partition_point(|p| p.0 <= t);
                let (a, b) = (bp[i - 1], bp[i]);
                let s = segment_slope(a, b).expect("valid map");
                a.1 + (t - a.0).mul_pow2(s)
            }
        }
    }

    pub fn inverse(&self) -> PLMap {
        PLMap {
            breakpoints: self.breakpoints.iter().map(|&(t, y)| (y, t)).collect(),
            k_minus: -self.k_minus,
            k_plus: -self.k_plus,
        }
    }

    /// `self` after `inner`.
    pub fn compose(&self, inner: &PLMap) -> PLMap {
        let inner_inv = inner.inverse();
        let mut ts: Vec<Dyadic> = inner
            .breakpoints
            .iter()
            .map(|p| p.0)
            .chain(self.breakpoints.iter().map(|p| inner_inv.evaluate(p.0)))
            .collect();
        ts.sort();
        ts.dedup();
        let breakpoints = ts.into_iter().map(|t| (t, self.evaluate(inner.evaluate(t)))).collect();
        PLMap {
            breakpoints,
            k_minus: self.k_minus + inner.k_minus,
            k_plus: self.k_plus + inner.k_plus,
        }
        .normalized()
    }
}

fn segment_slope(a: (Dyadic, Dyadic), b: (Dyadic, Dyadic)) -> Option<i32> {
    (b.1 - a.1).ratio_pow2(b.0 - a.0)
}

/// Structural equality of normal forms.
pub fn pl_equal(a: &PLMap, b: &PLMap) -> bool {
    a == b
}

pub fn pl_inverse(a: &PLMap) -> PLMap {
    a.inverse()
}

pub fn compose(a: &PLMap, b: &PLMap) -> PLMap {
    a.compose(b)
}

/// Left endpoints of the leaf intervals of a forest, plus the right end of
/// the window. Tree `i` covers `[i - pointer, i - pointer + 1)`.
fn leaf_grid(forest: &PointedForest) -> Vec<Dyadic> {
    fn walk(t: &Tree, start: Dyadic, depth: i32, out: &mut Vec<Dyadic>) {
        match t {
            Tree::Leaf => out.push(start),
            Tree::Caret(l, r) => {
                walk(l, start, depth + 1, out);
                walk(r, start + Dyadic::pow2(-(depth + 1)), depth + 1, out);
            }
        }
    }
    let mut out = Vec::with_capacity(forest.leaf_count() + 1);
    let base = -(forest.pointer() as i64);
    for (i, t) in forest.trees().iter().enumerate() {
        walk(t, Dyadic::from_int(base + i as i64), 0, &mut out);
    }
    out.push(Dyadic::from_int(base + forest.trees().len() as i64));
    out
}

pub fn to_plmap(v: &ForestDiagram) -> PLMap {
    let domain = leaf_grid(v.bottom());
    let range = leaf_grid(v.top());
    let k_minus = v.bottom().pointer() as i64 - v.top().pointer() as i64;
    let k_plus = (v.top().trees().len() as i64 - v.top().pointer() as i64)
        - (v.bottom().trees().len() as i64 - v.bottom().pointer() as i64);
    let m = PLMap { breakpoints: domain.into_iter().zip(range).collect(), k_minus, k_plus };
    debug_assert_eq!(m.check(), Ok(()));
    m.normalized()
}

/// `{"breakpoints": [[num, exp, num, exp], ...], "k_minus": K-, "k_plus": K+}`
impl Serialize for PLMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let bps: Vec<[i128; 4]> = self
            .breakpoints
            .iter()
            .map(|(t, y)| [t.numerator(), t.exponent() as i128, y.numerator(), y.exponent() as i128])
            .collect();
        let mut st = s.serialize_struct("PLMap", 3)?;
        st.serialize_field("breakpoints", &bps)?;
        st.serialize_field("k_minus", &self.k_minus)?;
        st.serialize_field("k_plus", &self.k_plus)?;
        st.end()
    }
}
