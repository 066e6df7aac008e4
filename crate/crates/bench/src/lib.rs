//! Shared fixtures for the benchmarks.

use hnnkit::{preset, AbelianGroup, AnyGroup, FreeGroup, HnnGroup, Letter, Word, DEFAULT_ELEMENT_CAP};

pub fn wise() -> HnnGroup<AbelianGroup> {
    match preset("wise", DEFAULT_ELEMENT_CAP).expect("shipped preset") {
        AnyGroup::HnnAbelian(g) => g,
        _ => unreachable!(),
    }
}

pub fn g2() -> HnnGroup<FreeGroup> {
    match preset("g2", DEFAULT_ELEMENT_CAP).expect("shipped preset") {
        AnyGroup::HnnFree(g) => g,
        _ => unreachable!(),
    }
}

pub fn z2_abcd() -> AbelianGroup {
    match preset("z2_abcd", DEFAULT_ELEMENT_CAP).expect("shipped preset") {
        AnyGroup::Abelian(g) => g,
        _ => unreachable!(),
    }
}

/// Deterministic pseudo-random words (xorshift), `count` of them of length `len`.
pub fn words(num_generators: usize, len: usize, count: usize) -> Vec<Word> {
    let mut x: u64 = 0x9e37_79b9_7f4a_7c15;
    (0..count)
        .map(|_| {
            Word::from_letters(
                (0..len)
                    .map(|_| {
                        x ^= x << 13;
                        x ^= x >> 7;
                        x ^= x << 17;
                        Letter::from_code((x % (2 * num_generators as u64)) as usize)
                    })
                    .collect(),
            )
        })
        .collect()
}
