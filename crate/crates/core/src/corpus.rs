//! Seeded test inputs shared by the CLI, the acceptance suite and the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DNA: &[u8; 4] = b"ACGT";

/// Prefix of length `len` of the Fibonacci word over `{a, b}`.
pub fn fibonacci(len: usize) -> Vec<u8> {
    let (mut a, mut b) = (b"a".to_vec(), b"ab".to_vec());
    while b.len() < len {
        let next = [b.as_slice(), a.as_slice()].concat();
        a = std::mem::replace(&mut b, next);
    }
    b.truncate(len);
    b
}

/// `count` strings with lengths in `1..=max_len`, each over the first
/// `1..=max_sigma` letters of `letters`.
pub fn random_strings(seed: u64, count: usize, max_len: usize, max_sigma: usize, letters: &[u8]) -> Vec<Vec<u8>> {
    assert!(max_sigma >= 1 && max_sigma <= letters.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            let sigma = rng.gen_range(1..=max_sigma);
            (0..len).map(|_| letters[rng.gen_range(0..sigma)]).collect()
        })
        .collect()
}

/// Every string of length `1..=max_len` over `letters`, shortest first.
pub fn all_strings(letters: &[u8], max_len: usize) -> impl Iterator<Item = Vec<u8>> + '_ {
    (1..=max_len).flat_map(move |len| {
        let total = letters.len().pow(len as u32);
        (0..total).map(move |mut k| {
            let mut s = vec![0u8; len];
            for slot in s.iter_mut().rev() {
                *slot = letters[k % letters.len()];
                k /= letters.len();
            }
            s
        })
    })
}
