//! The Cayley graph of F for `{x0, x1}`.
//!
//! Vertices are canonical diagrams and there is an edge from `f` to `x f` for
//! every generator letter `x`, so a path spelled by a word is traversed by
//! applying its letters right to left. Graph distance is therefore
//! `d(u, v) = |v u^-1|`.
//!
//! Searches here take [`Limits`]; hitting one returns
//! [`CayleyError::Exhausted`] carrying what was explored, never a guess.

pub mod cache;
mod trace;
mod witness;

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::forest::ForestDiagram;
use crate::metric::length;
use crate::word::{GroupWord, Letter};

pub use trace::{analyze_path, FootSide, PathTrace, TraceStep};
pub use witness::{
    fixed_bottom_path, identity_path, bridge_path, shifted_pair, verify_in_ball_paths,
    verify_exit_triples, verify_witness, witness_word, witnesses, Check, InBallPathsReport,
    ExitTriplesReport, PathCheck, WitnessReport,
};

pub const DEFAULT_MAX_ELEMENTS: usize = 10_000_000;

#[derive(Clone, Debug)]
pub struct Limits {
    pub max_elements: usize,
    pub max_seconds: Option<f64>,
    pub cancel: Option<Arc<AtomicBool>>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_elements: DEFAULT_MAX_ELEMENTS, max_seconds: None, cancel: None }
    }
}

impl Limits {
    pub fn with_max_elements(max_elements: usize) -> Self {
        Limits { max_elements, ..Limits::default() }
    }

    fn guard(&self) -> Guard<'_> {
        Guard { limits: self, started: Instant::now() }
    }
}

struct Guard<'a> {
    limits: &'a Limits,
    started: Instant,
}

impl Guard<'_> {
    fn check(&self, elements: usize, what: &'static str) -> Result<(), CayleyError> {
        let elapsed = self.started.elapsed().as_secs_f64();
        let reason = if elements > self.limits.max_elements {
            Some(StopReason::MaxElements)
        } else if self.limits.max_seconds.is_some_and(|s| elapsed > s) {
            Some(StopReason::MaxSeconds)
        } else if self.limits.cancel.as_ref().is_some_and(|c| c.load(Ordering::Relaxed)) {
            Some(StopReason::Interrupted)
        } else {
            None
        };
        match reason {
            Some(reason) => Err(CayleyError::Exhausted { what, reason, elements, elapsed }),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    MaxElements,
    MaxSeconds,
    Interrupted,
}

#[derive(Debug, Error)]
pub enum CayleyError {
    #[error("{what} stopped ({reason:?}) after {elements} elements in {elapsed:.1}s")]
    Exhausted { what: &'static str, reason: StopReason, elements: usize, elapsed: f64 },
    #[error("ball cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// `[x0 v, x0^-1 v, x1 v, x1^-1 v]`.
pub fn neighbors(v: &ForestDiagram) -> [ForestDiagram; 4] {
    Letter::ALL.map(|g| v.apply(g))
}

/// Graph distance `|v u^-1|`, from the length formula.
pub fn distance(u: &ForestDiagram, v: &ForestDiagram) -> usize {
    length(&v.multiply(&u.inverse()))
}

/// The ball of radius `n` around the identity, grouped by sphere.
#[derive(Clone, Debug)]
pub struct Ball {
    radius: usize,
    spheres: Vec<Vec<ForestDiagram>>,
    depth: HashMap<ForestDiagram, usize>,
}

impl Ball {
    pub(crate) fn from_spheres(spheres: Vec<Vec<ForestDiagram>>) -> Ball {
        let depth = spheres
            .iter()
            .enumerate()
            .flat_map(|(d, s)| s.iter().map(move |v| (v.clone(), d)))
            .collect();
        Ball { radius: spheres.len() - 1, spheres, depth }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.depth.len()
    }

    pub fn is_empty(&self) -> bool {
        self.depth.is_empty()
    }

    /// Elements at distance exactly `d`, sorted by their text form.
    pub fn sphere(&self, d: usize) -> &[ForestDiagram] {
        &self.spheres[d]
    }

    /// The sub-ball of radius `r`.
    pub fn truncated(&self, r: usize) -> Ball {
        Ball::from_spheres(self.spheres.iter().take(r + 1).cloned().collect())
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        self.spheres.iter().map(Vec::len).collect()
    }

    pub fn contains(&self, v: &ForestDiagram) -> bool {
        self.depth.contains_key(v)
    }

    pub fn depth(&self, v: &ForestDiagram) -> Option<usize> {
        self.depth.get(v).copied()
    }

    /// All elements, sphere by sphere.
    pub fn iter(&self) -> impl Iterator<Item = (&ForestDiagram, usize)> {
        self.spheres.iter().enumerate().flat_map(|(d, s)| s.iter().map(move |v| (v, d)))
    }
}

fn sort_layer(layer: &mut [ForestDiagram]) {
    layer.sort_by_cached_key(|v| v.to_string());
}

/// Breadth-first enumeration of `B_n` with canonical-form dedup. Depth is the
/// BFS depth of first discovery and does not consult the length formula.
pub fn ball(n: usize, limits: &Limits) -> Result<Ball, CayleyError> {
    let guard = limits.guard();
    let mut seen: HashSet<ForestDiagram> = HashSet::from([ForestDiagram::identity()]);
    let mut spheres = vec![vec![ForestDiagram::identity()]];
    for _ in 0..n {
        let frontier = spheres.last().expect("nonempty");
        let candidates: Vec<ForestDiagram> = frontier.par_iter().flat_map_iter(neighbors).collect();
        let mut next = Vec::new();
        for c in candidates {
            if !seen.contains(&c) {
                seen.insert(c.clone());
                next.push(c);
            }
        }
        guard.check(seen.len(), "ball enumeration")?;
        sort_layer(&mut next);
        spheres.push(next);
    }
    Ok(Ball::from_spheres(spheres))
}

/// Shortest path from `u` to `v` inside the ball of radius `radius`, as a
/// word `w` with `w u = v`. Ball membership of each visited vertex comes from
/// the length formula, so the ball itself is never enumerated.
pub fn restricted_geodesic(
    u: &ForestDiagram,
    v: &ForestDiagram,
    radius: usize,
    limits: &Limits,
) -> Result<Option<GroupWord>, CayleyError> {
    if length(u) > radius || length(v) > radius {
        return Ok(None);
    }
    let guard = limits.guard();
    let mut parent: HashMap<ForestDiagram, Option<(ForestDiagram, Letter)>> =
        HashMap::from([(u.clone(), None)]);
    let mut queue = VecDeque::from([u.clone()]);
    while let Some(x) = queue.pop_front() {
        if &x == v {
            let mut letters = Vec::new();
            let mut cur = x;
            while let Some(Some((prev, g))) = parent.get(&cur) {
                letters.push(*g);
                cur = prev.clone();
            }
            // Collected last step first, which is the leftmost letter.
            return Ok(Some(GroupWord::from(letters)));
        }
        for g in Letter::ALL {
            let y = x.apply(g);
            if parent.contains_key(&y) || length(&y) > radius {
                continue;
            }
            parent.insert(y.clone(), Some((x.clone(), g)));
            queue.push_back(y);
        }
        guard.check(parent.len(), "restricted search")?;
    }
    Ok(None)
}

/// `d_{B_radius}(u, v)`, or `None` when no path stays in the ball.
pub fn restricted_distance(
    u: &ForestDiagram,
    v: &ForestDiagram,
    radius: usize,
    limits: &Limits,
) -> Result<Option<usize>, CayleyError> {
    Ok(restricted_geodesic(u, v, radius, limits)?.map(|w| w.len()))
}

/// Graph distance by bidirectional BFS, without the length formula.
pub fn bfs_distance(u: &ForestDiagram, v: &ForestDiagram, limits: &Limits) -> Result<usize, CayleyError> {
    if u == v {
        return Ok(0);
    }
    let guard = limits.guard();
    let mut from_u: HashMap<ForestDiagram, usize> = HashMap::from([(u.clone(), 0)]);
    let mut from_v: HashMap<ForestDiagram, usize> = HashMap::from([(v.clone(), 0)]);
    let mut fu = vec![u.clone()];
    let mut fv = vec![v.clone()];
    loop {
        let (frontier, mine, other) = if fu.len() <= fv.len() {
            (&mut fu, &mut from_u, &from_v)
        } else {
            (&mut fv, &mut from_v, &from_u)
        };
        let mut next = Vec::new();
        let mut best: Option<usize> = None;
        for x in frontier.iter() {
            let dx = mine[x];
            for y in neighbors(x) {
                if let Some(dy) = other.get(&y) {
                    let total = dx + 1 + dy;
                    best = Some(best.map_or(total, |b| b.min(total)));
                }
                if !mine.contains_key(&y) {
                    mine.insert(y.clone(), dx + 1);
                    next.push(y);
                }
            }
        }
        if let Some(b) = best {
            return Ok(b);
        }
        *frontier = next;
        guard.check(from_u.len() + from_v.len(), "bidirectional search")?;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvexityReport {
    pub n: usize,
    pub c: usize,
    /// Pair at graph distance 2 realising `c`, as diagram text.
    pub pair: (String, String),
    pub pairs_checked: usize,
}

/// `c(n)`: the largest in-ball distance between two elements of `B_n` that
/// are at graph distance 2, by exhaustive search.
pub fn convexity_c(n: usize, limits: &Limits) -> Result<ConvexityReport, CayleyError> {
    let b = ball(n, limits)?;
    convexity_in(&b, limits)
}

/// `c(radius)` computed from an already enumerated ball.
pub fn convexity_in(b: &Ball, limits: &Limits) -> Result<ConvexityReport, CayleyError> {
    let guard = limits.guard();
    let elems: Vec<&ForestDiagram> = b.iter().map(|(v, _)| v).collect();
    let index: HashMap<&ForestDiagram, usize> = elems.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let adj: Vec<[Option<usize>; 4]> = elems
        .par_iter()
        .map(|v| neighbors(v).map(|y| index.get(&y).copied()))
        .collect();
    guard.check(elems.len(), "convexity")?;

    // For every g: (max in-ball distance to a graph-distance-2 partner, partner, pairs).
    let per_source: Vec<(usize, usize, usize)> = (0..elems.len())
        .into_par_iter()
        .map(|g| {
            let mut dist = vec![usize::MAX; elems.len()];
            dist[g] = 0;
            let mut queue = VecDeque::from([g]);
            while let Some(x) = queue.pop_front() {
                for y in adj[x].iter().flatten() {
                    if dist[*y] == usize::MAX {
                        dist[*y] = dist[x] + 1;
                        queue.push_back(*y);
                    }
                }
            }
            let first: Vec<ForestDiagram> = neighbors(elems[g]).into();
            let mut partners: Vec<usize> = first
                .iter()
                .flat_map(neighbors)
                .filter(|h| h != elems[g] && !first.contains(h))
                .filter_map(|h| index.get(&h).copied())
                .collect();
            partners.sort_unstable();
            partners.dedup();
            let best = partners.iter().map(|&h| (dist[h], h)).max_by_key(|&(d, h)| (d, std::cmp::Reverse(h)));
            let (d, h) = best.unwrap_or((0, g));
            (d, h, partners.len())
        })
        .collect();
    let pairs_checked = per_source.iter().map(|p| p.2).sum();
    let (g, &(c, h, _)) = per_source
        .iter()
        .enumerate()
        .max_by_key(|&(g, &(d, _, _))| (d, std::cmp::Reverse(g)))
        .expect("ball is nonempty");
    Ok(ConvexityReport {
        n: b.radius(),
        c,
        pair: (elems[g].to_string(), elems[h].to_string()),
        pairs_checked,
    })
}
