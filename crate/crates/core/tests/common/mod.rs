#![allow(dead_code)]

use braidbox::{BraidWord, FreeWord, QuandleElement};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_letter(rng: &mut StdRng, n: usize) -> i32 {
    let i = rng.gen_range(1..n as i32);
    if rng.gen_bool(0.5) {
        i
    } else {
        -i
    }
}

pub fn random_word(rng: &mut StdRng, n: usize, max_len: usize) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len).map(|_| random_letter(rng, n)).collect();
    BraidWord::new(n, letters).unwrap()
}

/// A random word with `2 <= n <= max_n`.
pub fn random_braid(rng: &mut StdRng, max_n: usize, max_len: usize) -> BraidWord {
    let n = rng.gen_range(2..=max_n);
    random_word(rng, n, max_len)
}

pub fn random_free(rng: &mut StdRng, n: usize, max_len: usize) -> FreeWord {
    let len = rng.gen_range(0..=max_len);
    let raw: Vec<i32> = (0..len)
        .map(|_| {
            let k = rng.gen_range(1..=n as i32);
            if rng.gen_bool(0.5) {
                k
            } else {
                -k
            }
        })
        .collect();
    FreeWord::reduce(&raw, n).unwrap()
}

pub fn random_quandle(rng: &mut StdRng, n: usize, max_len: usize) -> QuandleElement {
    let conj = random_free(rng, n, max_len);
    QuandleElement::new(conj, rng.gen_range(1..=n)).unwrap()
}

pub fn concat(n: usize, parts: &[&[i32]]) -> BraidWord {
    BraidWord::new(n, parts.concat()).unwrap()
}

/// The two sides of every defining relation of `B_n`.
pub fn relations(n: usize) -> Vec<(Vec<i32>, Vec<i32>)> {
    let mut out = Vec::new();
    for i in 1..n as i32 - 1 {
        out.push((vec![i, i + 1, i], vec![i + 1, i, i + 1]));
    }
    for i in 1..n as i32 {
        for j in i + 2..n as i32 {
            out.push((vec![i, j], vec![j, i]));
        }
    }
    out
}
