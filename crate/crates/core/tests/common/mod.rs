#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thompson_core::cayley::{ball, Ball, Limits};
use thompson_core::{ForestDiagram, GroupWord, Letter};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_word(rng: &mut StdRng, max_len: usize) -> GroupWord {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| Letter::ALL[rng.gen_range(0..4)]).collect()
}

pub fn random_element(rng: &mut StdRng, max_len: usize) -> ForestDiagram {
    ForestDiagram::from_word(&random_word(rng, max_len))
}

pub fn ball_of(radius: usize) -> Ball {
    ball(radius, &Limits::default()).expect("small ball fits the default cap")
}

pub fn elements(b: &Ball) -> Vec<ForestDiagram> {
    b.iter().map(|(v, _)| v.clone()).collect()
}
