//! Run-length encoded BWT with rank and select by binary search over runs.

use crate::error::{check_range, Error, Result};

/// One maximal run `bwt[start..=end] = c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub c: u32,
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rlbwt {
    pub(crate) n: u64,
    /// Run heads in position order.
    pub(crate) run_start: Vec<u64>,
    pub(crate) run_char: Vec<u32>,
    /// Per-character run directory in CSR layout: runs of `c` occupy
    /// `dir_offset[c]..dir_offset[c + 1]`.
    pub(crate) dir_offset: Vec<u64>,
    pub(crate) dir_start: Vec<u64>,
    pub(crate) dir_len: Vec<u64>,
    /// Occurrences of the run's character strictly before the run.
    pub(crate) dir_before: Vec<u64>,
    /// `c_array[a]` = number of symbols smaller than `a`, for `a` in `[0..=sigma + 1]`.
    pub(crate) c_array: Vec<u64>,
}

impl Rlbwt {
    /// Run-length encodes `bwt` (1-based semantics, symbols in `[0..=sigma]`).
    pub fn new(bwt: &[u32], sigma: u32) -> Rlbwt {
        let n = bwt.len();
        let mut run_start = Vec::new();
        let mut run_char = Vec::new();
        for (i, &c) in bwt.iter().enumerate() {
            if i == 0 || bwt[i - 1] != c {
                run_start.push(i as u64 + 1);
                run_char.push(c);
            }
        }
        let runs = run_start.len();
        let width = sigma as usize + 1;
        let mut per_char = vec![0u64; width + 1];
        for &c in &run_char {
            per_char[c as usize + 1] += 1;
        }
        for c in 1..per_char.len() {
            per_char[c] += per_char[c - 1];
        }
        let dir_offset = per_char.clone();
        let mut fill = per_char;
        let mut dir_start = vec![0; runs];
        let mut dir_len = vec![0; runs];
        let mut dir_before = vec![0; runs];
        let mut seen = vec![0u64; width];
        for r in 0..runs {
            let c = run_char[r] as usize;
            let end = if r + 1 < runs { run_start[r + 1] - 1 } else { n as u64 };
            let len = end - run_start[r] + 1;
            let slot = fill[c] as usize;
            fill[c] += 1;
            dir_start[slot] = run_start[r];
            dir_len[slot] = len;
            dir_before[slot] = seen[c];
            seen[c] += len;
        }
        let mut c_array = vec![0u64; width + 1];
        for c in 0..width {
            c_array[c + 1] = c_array[c] + seen[c];
        }
        Rlbwt {
            n: n as u64,
            run_start,
            run_char,
            dir_offset,
            dir_start,
            dir_len,
            dir_before,
            c_array,
        }
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn sigma(&self) -> u32 {
        (self.c_array.len() - 2) as u32
    }

    /// Number of runs `|R_T|`.
    pub fn num_runs(&self) -> usize {
        self.run_start.len()
    }

    pub fn runs(&self) -> impl Iterator<Item = Run> + '_ {
        (0..self.num_runs()).map(move |r| Run {
            c: self.run_char[r],
            start: self.run_start[r] as usize,
            end: if r + 1 < self.num_runs() {
                self.run_start[r + 1] as usize - 1
            } else {
                self.n as usize
            },
        })
    }

    /// `C[c]`: number of symbols smaller than `c`.
    pub fn c(&self, c: u32) -> usize {
        self.c_array[c as usize] as usize
    }

    /// Total occurrences of `c`.
    pub fn count(&self, c: u32) -> usize {
        (self.c_array[c as usize + 1] - self.c_array[c as usize]) as usize
    }

    /// Symbol at position `i`.
    pub fn access(&self, i: usize) -> Result<u32> {
        check_range("position", i, 1, self.len())?;
        let r = self.run_start.partition_point(|&s| s <= i as u64) - 1;
        Ok(self.run_char[r])
    }

    fn dir(&self, c: u32) -> std::ops::Range<usize> {
        self.dir_offset[c as usize] as usize..self.dir_offset[c as usize + 1] as usize
    }

    /// Occurrences of `c` in `bwt[1..=i]`. `i = 0` is accepted and yields 0.
    pub fn rank(&self, c: u32, i: usize) -> Result<usize> {
        check_range("position", i, 0, self.len())?;
        check_range("symbol", c as usize, 0, self.sigma() as usize)?;
        let dir = self.dir(c);
        let starts = &self.dir_start[dir.clone()];
        let k = starts.partition_point(|&s| s <= i as u64);
        if k == 0 {
            return Ok(0);
        }
        let slot = dir.start + k - 1;
        let inside = (i as u64 - self.dir_start[slot] + 1).min(self.dir_len[slot]);
        Ok((self.dir_before[slot] + inside) as usize)
    }

    /// Position of the `k`-th occurrence of `c`.
    pub fn select(&self, c: u32, k: usize) -> Result<usize> {
        check_range("symbol", c as usize, 0, self.sigma() as usize)?;
        check_range("occurrence", k, 1, self.count(c))?;
        let dir = self.dir(c);
        let before = &self.dir_before[dir.clone()];
        let slot = dir.start + before.partition_point(|&b| b < k as u64) - 1;
        Ok((self.dir_start[slot] + (k as u64 - self.dir_before[slot]) - 1) as usize)
    }

    /// The symbol `c` with `C[c] < p <= C[c + 1]`, i.e. the first symbol of the suffix of rank `p`.
    pub fn first_symbol(&self, p: usize) -> Result<u32> {
        check_range("rank", p, 1, self.len())?;
        Ok((self.c_array.partition_point(|&x| x < p as u64) - 1) as u32)
    }

    /// Interval of `cW` from the interval `[p..=q]` of `W`, or `None` when
    /// `cW` does not occur. Inside an equivalence class this is
    /// `p' = C[c] + rank_c(p)` and `q' = p' + q - p`.
    pub fn extend_left(&self, p: usize, q: usize, c: u32) -> Result<Option<(usize, usize)>> {
        if p == 0 || p > q {
            return Err(Error::InvalidRange { start: p, end: q });
        }
        let lo = self.c(c) + self.rank(c, p - 1)? + 1;
        let hi = self.c(c) + self.rank(c, q)?;
        Ok((lo <= hi).then_some((lo, hi)))
    }

    /// Drops the first symbol of the string with interval `[p..=q]`:
    /// `p' = select_c(p - C[c])`, `q' = p' + q - p`. Exact when the shorter
    /// string lies in the same equivalence class.
    pub fn contract_left(&self, p: usize, q: usize) -> Result<((usize, usize), u32)> {
        if p > q {
            return Err(Error::InvalidRange { start: p, end: q });
        }
        let c = self.first_symbol(p)?;
        let lo = self.select(c, p - self.c(c))?;
        Ok(((lo, lo + q - p), c))
    }
}
