//! Probe-count table over doubling prefixes of a text.

use cdawg_cst::probe::{self, OPS};
use cdawg_cst::{Cst, Mode, Text};

use crate::Failure;

/// Prefix lengths 1, 2, 4, ... below `len`, then `len` itself.
fn prefix_lengths(len: usize) -> Vec<usize> {
    let mut out: Vec<usize> = std::iter::successors(Some(1usize), |&m| Some(m * 2)).take_while(|&m| m < len).collect();
    out.push(len);
    out
}

pub fn run(raw: &[u8], mode: Mode, queries: usize, c: u64, seed: u64) -> Result<(), Failure> {
    if raw.is_empty() {
        return Err(cdawg_cst::Error::EmptyText.into());
    }
    print!("{:>9} {:>8} {:>7}", "n", "e_T", "e_T/n");
    for op in OPS {
        print!(" {op:>12}");
    }
    println!(" {:>9}", format!("{c}*lg2^2"));
    let mut over = Vec::new();
    for m in prefix_lengths(raw.len()) {
        let cst = Cst::build(&Text::normalize(&raw[..m])?, mode)?;
        let n = cst.n();
        let e = cst.cdawg().num_arcs();
        let bound = probe::bound(c, n);
        print!("{n:>9} {e:>8} {:>7.3}", e as f64 / n as f64);
        for row in probe::measure(&cst, queries, seed)? {
            print!(" {:>12.1}", row.mean);
            if row.max as f64 > bound {
                over.push(format!("{} at n={n}: {} probes > {bound:.0}", row.op, row.max));
            }
        }
        println!(" {bound:>9.0}");
    }
    match over.first() {
        None => Ok(()),
        Some(first) => Err(Failure {
            code: 2,
            msg: format!("probe bound exceeded {} times; first: {first}", over.len()),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefixes_double_then_end_at_the_input() {
        assert_eq!(prefix_lengths(1), [1]);
        assert_eq!(prefix_lengths(5), [1, 2, 4, 5]);
        assert_eq!(prefix_lengths(8), [1, 2, 4, 8]);
    }
}
