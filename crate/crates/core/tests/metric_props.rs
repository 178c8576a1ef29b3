mod common;

use common::{ball_of, random_element, rng};
use thompson_core::cayley::witnesses;
use thompson_core::metric::{geodesic_word, is_left_sided, is_right_sided, length_breakdown, width};
use thompson_core::{length, ForestDiagram, Letter};

#[test]
fn length_is_inverse_symmetric() {
    let mut rng = rng(21);
    for _ in 0..1000 {
        let v = random_element(&mut rng, 20);
        assert_eq!(length(&v), length(&v.inverse()), "{v}");
    }
}

#[test]
fn length_is_one_lipschitz() {
    let mut rng = rng(22);
    for _ in 0..1000 {
        let v = random_element(&mut rng, 20);
        let l = length(&v) as i64;
        for g in Letter::ALL {
            assert!((length(&v.apply(g)) as i64 - l).abs() <= 1);
        }
    }
}

#[test]
fn geodesic_words_are_geodesic() {
    let mut rng = rng(23);
    for _ in 0..300 {
        let v = random_element(&mut rng, 16);
        let w = geodesic_word(&v);
        assert_eq!(w.len(), length(&v));
        assert_eq!(ForestDiagram::from_word(&w), v);
    }
}

#[test]
fn breakdown_adds_up() {
    for (v, d) in ball_of(5).iter() {
        let b = length_breakdown(v);
        assert_eq!(b.carets, v.caret_count());
        assert_eq!(b.total, b.carets + b.x0_count);
        assert_eq!(b.total, d);
    }
}

#[test]
fn width_of_witness() {
    for n in 1..=6 {
        let (l, _) = witnesses(n);
        assert_eq!(width(&l), n + 2);
    }
}

#[test]
fn sided_length_bounds_on_b6() {
    for (v, _) in ball_of(6).iter() {
        if is_left_sided(v) {
            assert!(length(v) >= 2 * width(v));
        }
        if is_right_sided(v) {
            assert!(length(v) >= width(v));
        }
    }
}
