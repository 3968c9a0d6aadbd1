//! Probe counts of the logarithmic-time queries, measured with [`traced`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cst::Cst;
use crate::error::Result;
use crate::hpd::traced;

pub const OPS: [&str; 4] = ["selectLeaf", "isa", "lca", "strAncestor"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeSummary {
    pub op: &'static str,
    pub queries: usize,
    pub mean: f64,
    pub max: u64,
}

/// `c * log2(n)^2`, with `log2(n)` taken as at least 1.
pub fn bound(c: u64, n: usize) -> f64 {
    let lg = (n as f64).log2().max(1.0);
    c as f64 * lg * lg
}

/// Runs `queries` seeded random queries of each op in [`OPS`].
pub fn measure(cst: &Cst, queries: usize, seed: u64) -> Result<[ProbeSummary; 4]> {
    let n = cst.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut totals = [(0u64, 0u64); 4];
    for _ in 0..queries {
        let (r, s) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
        let p = rng.gen_range(1..=n);
        let leaf = cst.select_leaf(r)?;
        let d = rng.gen_range(0..=leaf.depth);
        let probes = [
            traced(|| cst.select_leaf(r)).1.probes,
            traced(|| cst.isa(p)).1.probes,
            traced(|| cst.lca(r.min(s), r.max(s))).1.probes,
            traced(|| cst.str_ancestor(leaf, d)).1.probes,
        ];
        for (t, k) in totals.iter_mut().zip(probes) {
            t.0 += k;
            t.1 = t.1.max(k);
        }
    }
    Ok(std::array::from_fn(|k| ProbeSummary {
        op: OPS[k],
        queries,
        mean: totals[k].0 as f64 / queries.max(1) as f64,
        max: totals[k].1,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdawg::Mode;
    use crate::textkit::Text;

    #[test]
    fn probes_are_counted_and_bounded() {
        let t = Text::normalize(&crate::corpus::fibonacci(300)).unwrap();
        let cst = Cst::build(&t, Mode::Full).unwrap();
        let rows = measure(&cst, 50, 1).unwrap();
        assert_eq!(rows, measure(&cst, 50, 1).unwrap());
        for row in rows {
            assert!(row.max > 0, "{row:?}");
            assert!(row.max as f64 <= bound(8, cst.n()), "{row:?}");
        }
        assert_eq!(bound(8, 2), 8.0);
    }
}
