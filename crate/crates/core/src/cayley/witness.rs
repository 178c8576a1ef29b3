//! The pair `l = x0^-2 x1 x0^(n+1) x1^-n`, `r = x0^2 l`, and checks that it
//! breaks minimal almost convexity: `l` and `r` have length `2n + 2`, are two
//! apart, yet every path between them inside `B_(2n+2)` has length `4n + 4`.

use serde::Serialize;

use super::{distance, restricted_distance, CayleyError, Limits};
use crate::forest::ForestDiagram;
use crate::metric::{label_spaces, length};
use crate::word::{parse_word, GroupWord, Letter};

fn word(text: &str) -> GroupWord {
    parse_word(text).expect("built-in word")
}

pub fn witness_word(n: usize) -> GroupWord {
    word(&format!("x0^-2 x1 x0^{} x1^-{n}", n + 1))
}

/// `(l, r)` for `n >= 1`.
pub fn witnesses(n: usize) -> (ForestDiagram, ForestDiagram) {
    assert!(n >= 1, "witnesses need n >= 1");
    let l = ForestDiagram::from_word(&witness_word(n));
    let r = l.apply(Letter::X0).apply(Letter::X0);
    (l, r)
}

/// In-ball path from `l` to `r` that keeps the bottom tree.
pub fn fixed_bottom_path(n: usize) -> GroupWord {
    word(&format!("(x1 x0^{}) (x1^-1 x0^-{n}) (x1^-1 x0^{n}) (x1 x0^{})", n + 1, 1 - n as i64))
}

/// In-ball path from `l` to `r` through the identity.
pub fn identity_path(n: usize) -> GroupWord {
    word(&format!(
        "(x1 x0^{}) (x1^-{n} x0^-1) (x1^-1 x0 x1^{}) (x1 x0^{})",
        n + 1,
        n as i64 - 1,
        1 - n as i64
    ))
}

/// The `n = 8` path that builds a bridge of top carets.
pub fn bridge_path() -> GroupWord {
    word("(x1 x0^7 x1^-4 x0^2) (x1^-1 x0^-4) (x1^-1 x0^4) (x1 x0^-2 x1^4 x0^-5)")
}

/// `l' = x1^-1 x0^-n x1 x0^n` and `r' = x0^2 l'`: same length as `l`, two
/// apart, and the geodesic between them leaves the ball too, but the
/// critical-line argument does not apply to them.
///
/// With a trailing `x0^(n-1)` instead, `l'` would have length `2n + 1`.
pub fn shifted_pair(n: usize) -> (ForestDiagram, ForestDiagram) {
    let l = ForestDiagram::from_word(&word(&format!("x1^-1 x0^-{n} x1 x0^{n}")));
    let r = l.apply(Letter::X0).apply(Letter::X0);
    (l, r)
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed, detail: detail.into() }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(name: impl Into<String>, got: T, want: T) -> Check {
        let passed = got == want;
        Check::new(name, passed, format!("got {got:?}, expected {want:?}"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub n: usize,
    pub l: String,
    pub r: String,
    pub length_l: usize,
    pub length_r: usize,
    pub distance: usize,
    pub radius: usize,
    /// `None` when the restricted search was skipped or ran out of budget.
    pub restricted_distance: Option<usize>,
    pub restricted_status: String,
    pub checks: Vec<Check>,
    /// All restricted-search checks ran to completion.
    pub complete: bool,
    pub passed: bool,
}

fn ones_then(n: usize, tail: &[u32]) -> Vec<u32> {
    let mut v = vec![1; n - 1];
    v.extend_from_slice(tail);
    v
}

/// Check the witness pair for `n`. With `full` unset the restricted search
/// is skipped and only the formula-based checks run.
pub fn verify_witness(n: usize, full: bool, limits: &Limits) -> WitnessReport {
    let (l, r) = witnesses(n);
    let x0l = l.apply(Letter::X0);
    let radius = 2 * n + 2;
    let mut checks = vec![
        Check::eq("length(l)", length(&l), radius),
        Check::eq("length(r)", length(&r), radius),
        Check::eq("length(x0 l)", length(&x0l), radius + 1),
        Check::eq("carets(l)", l.caret_count(), n + 1),
        Check::eq("carets(r)", r.caret_count(), n + 1),
        Check::eq("weights(l)", label_spaces(&l).weights, ones_then(n, &[0, 2, 0])),
        Check::eq("weights(r)", label_spaces(&r).weights, ones_then(n, &[1, 1, 0])),
        Check::eq("weights(x0 l)", label_spaces(&x0l).weights, ones_then(n, &[1, 2, 0])),
        Check::new(
            "same carets",
            l.top().trees() == r.top().trees() && l.bottom() == r.bottom(),
            "l and r differ only in the top pointer",
        ),
        Check::eq("d(l, r)", distance(&l, &r), 2),
    ];
    let mut restricted = None;
    let mut complete = true;
    let status = if !full {
        complete = false;
        "skipped".to_string()
    } else {
        match restricted_distance(&l, &r, radius, limits) {
            Ok(d) => {
                restricted = d;
                checks.push(Check::eq("restricted distance in B_(2n+2)", d, Some(4 * n + 4)));
                checks.push(Check::new(
                    "attains c = 2 * radius",
                    d == Some(2 * radius),
                    format!("radius {radius}, in-ball distance {d:?}"),
                ));
                match restricted_distance(&l, &r, radius + 1, limits) {
                    Ok(d1) => {
                        checks.push(Check::eq("restricted distance in B_(2n+3)", d1, Some(2)))
                    }
                    Err(e) => {
                        complete = false;
                        checks.push(Check::new("restricted distance in B_(2n+3)", true, format!("partial: {e}")))
                    }
                }
                "verified".to_string()
            }
            Err(e @ CayleyError::Exhausted { .. }) => {
                complete = false;
                format!("partial: {e}")
            }
            Err(e) => {
                complete = false;
                format!("error: {e}")
            }
        }
    };
    let passed = checks.iter().all(|c| c.passed);
    WitnessReport {
        n,
        l: l.to_string(),
        r: r.to_string(),
        length_l: length(&l),
        length_r: length(&r),
        distance: distance(&l, &r),
        radius,
        restricted_distance: restricted,
        restricted_status: status,
        checks,
        complete,
        passed,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PathCheck {
    pub name: String,
    pub word: String,
    pub steps: usize,
    pub expected_steps: usize,
    pub ends_at_target: bool,
    pub max_length: usize,
    pub radius: usize,
    pub visits_identity: bool,
    /// Whether the path is supposed to pass through the identity.
    pub identity_expected: Option<bool>,
    pub failure: Option<String>,
    pub passed: bool,
}

/// Walk `w` from `start`, letters right to left, and check it is an in-ball
/// path to `target` of the given length.
fn check_path(
    name: &str,
    w: &GroupWord,
    start: &ForestDiagram,
    target: &ForestDiagram,
    radius: usize,
    expected_steps: usize,
    identity_expected: Option<bool>,
) -> PathCheck {
    let mut failure = None;
    let mut cur = start.clone();
    let mut max_length = length(&cur);
    let mut visits_identity = cur.is_identity();
    for (step, &g) in w.letters().iter().rev().enumerate() {
        cur = cur.apply(g);
        let len = length(&cur);
        max_length = max_length.max(len);
        visits_identity |= cur.is_identity();
        if len > radius && failure.is_none() {
            failure = Some(format!("step {} ({g}) reaches length {len} > {radius}", step + 1));
        }
    }
    let ends_at_target = &cur == target;
    if !ends_at_target && failure.is_none() {
        failure = Some(format!("path ends at {cur}, not {target}"));
    }
    if w.len() != expected_steps && failure.is_none() {
        failure = Some(format!("{} steps, expected {expected_steps}", w.len()));
    }
    if let Some(expect) = identity_expected {
        if expect != visits_identity && failure.is_none() {
            failure = Some(format!("identity visited: {visits_identity}, expected {expect}"));
        }
    }
    PathCheck {
        name: name.to_string(),
        word: w.to_string(),
        steps: w.len(),
        expected_steps,
        ends_at_target,
        max_length,
        radius,
        visits_identity,
        identity_expected,
        passed: failure.is_none(),
        failure,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InBallPathsReport {
    pub n: usize,
    pub paths: Vec<PathCheck>,
    pub checks: Vec<Check>,
    /// `d_{B_(2n+2)}(l', r')`, reported without an expected value; `None` if
    /// not computed.
    pub prime_pair_restricted_distance: Option<usize>,
    pub passed: bool,
}

/// The worked in-ball paths for `n`, plus the pair that does not work. The
/// restricted distance of that pair is explored only when `explore` is set.
pub fn verify_in_ball_paths(n: usize, explore: Option<&Limits>) -> InBallPathsReport {
    let (l, r) = witnesses(n);
    let radius = 2 * n + 2;
    let steps = 4 * n + 4;
    let mut paths = vec![
        check_path("fixed bottom", &fixed_bottom_path(n), &l, &r, radius, steps, Some(false)),
        check_path("through identity", &identity_path(n), &l, &r, radius, steps, Some(true)),
    ];
    if n == 8 {
        paths.push(check_path("caret bridge", &bridge_path(), &l, &r, radius, steps, None));
    }
    let (lp, rp) = shifted_pair(n);
    let checks = vec![
        Check::eq("length(l')", length(&lp), radius),
        Check::eq("length(r')", length(&rp), radius),
        Check::eq("d(l', r')", distance(&lp, &rp), 2),
        Check::new(
            "x0 l' leaves the ball",
            length(&lp.apply(Letter::X0)) > radius,
            format!("length(x0 l') = {}", length(&lp.apply(Letter::X0))),
        ),
    ];
    let prime_pair_restricted_distance =
        explore.and_then(|lim| restricted_distance(&lp, &rp, radius, lim).ok().flatten());
    let passed = paths.iter().all(|p| p.passed) && checks.iter().all(|c| c.passed);
    InBallPathsReport { n, paths, checks, prime_pair_restricted_distance, passed }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExitTriplesReport {
    pub n: usize,
    pub h_r: String,
    pub triples: usize,
    pub through_h_r: usize,
    pub leaving_ball: usize,
    /// Triples that neither pass `h_r` nor leave the ball.
    pub exceptions: Vec<String>,
    /// Exceptions whose walk has an immediate backtrack `g g^-1` and so
    /// revisits a vertex.
    pub backtracking: usize,
    /// Exceptions that are genuine paths.
    pub counterexamples: Vec<String>,
    /// `h_r -> x1^-1 r -> r` stays inside the ball.
    pub final_segment_in_ball: bool,
    /// Every non-backtracking triple passes `h_r` or leaves the ball.
    pub passed: bool,
    /// Every one of the 64 triples does, backtracking or not.
    pub all_triples_pass: bool,
}

/// Enumerate the 64 three-letter walks out of `r` and check that each one
/// visits `h_r = x0^-1 x1^-1 r` or leaves `B_(2n+2)`. Walks that backtrack
/// revisit a vertex, so they cannot be the tail of a shortest path; they are
/// listed among the exceptions but do not fail [`ExitTriplesReport::passed`].
pub fn verify_exit_triples(n: usize) -> ExitTriplesReport {
    let (_, r) = witnesses(n);
    let radius = 2 * n + 2;
    let h_r = r.apply(Letter::X1Inv).apply(Letter::X0Inv);
    let mut report = ExitTriplesReport {
        n,
        h_r: h_r.to_string(),
        triples: 0,
        through_h_r: 0,
        leaving_ball: 0,
        exceptions: Vec::new(),
        backtracking: 0,
        counterexamples: Vec::new(),
        final_segment_in_ball: length(&r.apply(Letter::X1Inv)) <= radius && length(&h_r) <= radius,
        passed: false,
        all_triples_pass: false,
    };
    for a in Letter::ALL {
        for b in Letter::ALL {
            for c in Letter::ALL {
                report.triples += 1;
                let p1 = r.apply(a);
                let p2 = p1.apply(b);
                let p3 = p2.apply(c);
                let path = [&p1, &p2, &p3];
                if path.iter().any(|v| **v == h_r) {
                    report.through_h_r += 1;
                } else if path.iter().any(|v| length(v) > radius) {
                    report.leaving_ball += 1;
                } else {
                    let walk = format!("{a}, then {b}, then {c}");
                    if b == a.inverse() || c == b.inverse() {
                        report.backtracking += 1;
                    } else {
                        report.counterexamples.push(walk.clone());
                    }
                    report.exceptions.push(walk);
                }
            }
        }
    }
    report.passed = report.counterexamples.is_empty() && report.final_segment_in_ball;
    report.all_triples_pass = report.exceptions.is_empty() && report.final_segment_in_ball;
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_lengths_small_n() {
        for n in 1..=3 {
            let (l, r) = witnesses(n);
            assert_eq!(length(&l), 2 * n + 2);
            assert_eq!(length(&r), 2 * n + 2);
            assert_eq!(l.top().trees(), r.top().trees());
            assert_ne!(l.top().pointer(), r.top().pointer());
        }
    }

    #[test]
    fn example_words_have_length_4n_plus_4() {
        for n in 1..=6 {
            assert_eq!(fixed_bottom_path(n).len(), 4 * n + 4);
            assert_eq!(identity_path(n).len(), 4 * n + 4);
        }
        assert_eq!(bridge_path().len(), 36);
    }

    #[test]
    fn degenerate_n1_path_meets_identity() {
        // For n = 1, l = x1^-1 x2, and the bottom-preserving path runs
        // through x0^-1 x1^-1 x0 x1 l = 1.
        let (l, _) = witnesses(1);
        assert_eq!(l, ForestDiagram::from_word(&word("x1^-1 x0^-1 x1 x0")));
        let rep = verify_in_ball_paths(1, None);
        assert!(rep.paths[0].visits_identity);
    }

    #[test]
    fn shifted_pair_lengths() {
        for n in 2..=6 {
            let (lp, rp) = shifted_pair(n);
            assert_eq!(length(&lp), 2 * n + 2);
            assert_eq!(length(&rp), 2 * n + 2);
            assert_eq!(length(&lp.apply(Letter::X0)), 2 * n + 3);
            let short = ForestDiagram::from_word(&word(&format!("x1^-1 x0^-{n} x1 x0^{}", n - 1)));
            assert_eq!(distance(&lp, &rp), 2);
            assert_eq!(length(&short), 2 * n + 1);
        }
    }

    #[test]
    fn exit_exceptions_are_backtracks() {
        let rep = verify_exit_triples(2);
        assert_eq!(rep.triples, 64);
        assert!(rep.passed);
        assert_eq!(rep.backtracking, rep.exceptions.len());
        assert!(rep.counterexamples.is_empty());
    }
}
