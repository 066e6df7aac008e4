#![allow(dead_code)]

use hnnkit::{preset, AbelianGroup, AnyGroup, FreeGroup, HnnGroup, Letter, Word, DEFAULT_ELEMENT_CAP};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn wise() -> HnnGroup<AbelianGroup> {
    match preset("wise", DEFAULT_ELEMENT_CAP).unwrap() {
        AnyGroup::HnnAbelian(g) => g,
        _ => unreachable!(),
    }
}

pub fn g2() -> HnnGroup<FreeGroup> {
    match preset("g2", DEFAULT_ELEMENT_CAP).unwrap() {
        AnyGroup::HnnFree(g) => g,
        _ => unreachable!(),
    }
}

pub fn z2(name: &str) -> AbelianGroup {
    match preset(name, DEFAULT_ELEMENT_CAP).unwrap() {
        AnyGroup::Abelian(g) => g,
        _ => unreachable!(),
    }
}

pub fn f2() -> FreeGroup {
    match preset("f2", DEFAULT_ELEMENT_CAP).unwrap() {
        AnyGroup::Free(g) => g,
        _ => unreachable!(),
    }
}

pub fn random_word(rng: &mut ChaCha8Rng, num_generators: usize, max_len: usize) -> Word {
    let n = rng.gen_range(0..=max_len);
    Word::from_letters((0..n).map(|_| Letter::from_code(rng.gen_range(0..2 * num_generators))).collect())
}

/// A random cyclic rotation of `r` or of its inverse.
pub fn random_conjugate(rng: &mut ChaCha8Rng, r: &Word) -> Word {
    let r = if rng.gen_bool(0.5) { r.invert() } else { r.clone() };
    let k = rng.gen_range(0..r.len().max(1));
    r.subword(k, r.len()).concat(&r.subword(0, k))
}

pub fn insert_at(w: &Word, pos: usize, r: &Word) -> Word {
    w.subword(0, pos).concat(r).concat(&w.subword(pos, w.len()))
}
