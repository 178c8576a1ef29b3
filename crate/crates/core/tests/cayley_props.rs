mod common;

use common::{ball_of, elements, random_element, rng};
use rand::Rng;
use thompson_core::cayley::{
    analyze_path, bfs_distance, cache, convexity_c, distance, neighbors, restricted_distance,
    CayleyError, FootSide, Limits, StopReason,
};
use thompson_core::{length, ForestDiagram, Letter};

#[test]
fn formula_distance_matches_bfs_on_b5() {
    let b = elements(&ball_of(5));
    let mut rng = rng(41);
    let limits = Limits::default();
    for _ in 0..1000 {
        let u = &b[rng.gen_range(0..b.len())];
        let v = &b[rng.gen_range(0..b.len())];
        assert_eq!(distance(u, v), bfs_distance(u, v, &limits).unwrap(), "{u} -> {v}");
    }
}

#[test]
fn restricted_distance_bounds() {
    let b = elements(&ball_of(4));
    let mut rng = rng(42);
    let limits = Limits::default();
    for _ in 0..200 {
        let u = &b[rng.gen_range(0..b.len())];
        let v = &b[rng.gen_range(0..b.len())];
        let r = rng.gen_range(length(u).max(length(v))..=4);
        let d = restricted_distance(u, v, r, &limits).unwrap().expect("connected through the identity");
        assert!(d >= distance(u, v));
        assert!(d <= length(u) + length(v));
        let wide = restricted_distance(u, v, length(u) + length(v), &limits).unwrap();
        assert_eq!(wide, Some(distance(u, v)));
    }
}

#[test]
fn balls_are_nested_and_symmetric() {
    let b6 = ball_of(6);
    let b5 = ball_of(5);
    for (v, d) in b6.iter() {
        assert!(b6.contains(&v.inverse()));
        assert_eq!(b5.contains(v), d <= 5);
        assert_eq!(length(v), d);
    }
}

#[test]
fn ball_is_deterministic() {
    let a: Vec<String> = ball_of(5).iter().map(|(v, d)| format!("{v} {d}")).collect();
    let b: Vec<String> = ball_of(5).iter().map(|(v, d)| format!("{v} {d}")).collect();
    assert_eq!(a, b);
}

#[test]
fn b4_neighbours_stay_close() {
    let b4 = ball_of(4);
    assert_eq!(b4.len(), 161);
    for (v, d) in b4.iter() {
        let ns = neighbors(v);
        assert!(d == 0 || ns.iter().any(|n| length(n) + 1 == d));
        assert!(ns.iter().all(|n| length(n).abs_diff(d) == 1));
    }
}

#[test]
fn convexity_values_stay_in_bounds() {
    for n in 1..=4 {
        let rep = convexity_c(n, &Limits::default()).unwrap();
        assert!(2 <= rep.c && rep.c <= 2 * n, "c({n}) = {}", rep.c);
    }
}

#[test]
fn caps_produce_partial_errors() {
    match convexity_c(6, &Limits::with_max_elements(100)) {
        Err(CayleyError::Exhausted { reason: StopReason::MaxElements, .. }) => {}
        other => panic!("expected a capped search, got {other:?}"),
    }
}

#[test]
fn cache_round_trip_in_temp_dir() {
    let dir = tempfile::tempdir().unwrap();
    let (first, hit) = cache::load_or_build(dir.path(), 4, &Limits::default()).unwrap();
    assert!(!hit);
    let (second, hit) = cache::load_or_build(dir.path(), 4, &Limits::default()).unwrap();
    assert!(hit);
    assert_eq!(first.sphere_sizes(), second.sphere_sizes());
}

#[test]
fn traces_record_every_crossing() {
    let mut rng = rng(43);
    for _ in 0..300 {
        let start = random_element(&mut rng, 10);
        let w = common::random_word(&mut rng, 12);
        let t = analyze_path(&start, &w, 20);
        assert_eq!(t.steps.len(), w.len() + 1);
        assert_eq!(t.steps.last().unwrap().element, start.apply_word(&w).to_string());
        for pair in t.steps.windows(2) {
            let crossed = matches!(
                (pair[0].side, pair[1].side),
                (FootSide::Left, FootSide::Right) | (FootSide::Right, FootSide::Left)
            );
            assert_eq!(crossed, pair[1].jump);
            if crossed {
                assert!(t.jumps.contains(&pair[1].index));
            }
        }
    }
}

#[test]
fn walking_a_word_matches_folding() {
    let mut rng = rng(44);
    for _ in 0..200 {
        let v = random_element(&mut rng, 10);
        let mut cur = ForestDiagram::identity();
        for &g in v.to_word().letters().iter().rev() {
            cur = cur.apply(g);
        }
        assert_eq!(cur, v);
        assert_eq!(cur.apply(Letter::X0).apply(Letter::X0Inv), v);
    }
}
