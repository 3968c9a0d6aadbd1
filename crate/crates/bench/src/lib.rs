//! Inputs shared by the benchmarks.

use cdawg_cst::corpus::{self, DNA};
use cdawg_cst::{Cst, Mode, Text};

/// Named corpora: a Fibonacci prefix (highly repetitive) and a random DNA string.
pub fn corpora(len: usize) -> Vec<(&'static str, Vec<u8>)> {
    let mut dna = corpus::random_strings(42, 1, len, 4, DNA).remove(0);
    dna.resize(len, b'A');
    vec![("fibonacci", corpus::fibonacci(len)), ("dna", dna)]
}

pub fn index(raw: &[u8], mode: Mode) -> Cst {
    Cst::build(&Text::normalize(raw).unwrap(), mode).unwrap()
}
