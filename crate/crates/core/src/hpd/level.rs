//! Level-ancestor queries on a rooted tree given by parent pointers.

/// Which level-ancestor structure to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LaKind {
    /// Binary lifting, `O(n log n)` words, `O(log n)` per query.
    #[default]
    BinaryLifting,
    /// Long-path ladders plus jump pointers stored at leaves, `O(1)` per query.
    Ladder,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelAncestor {
    BinaryLifting(BinaryLifting),
    Ladder(Ladder),
}

impl LevelAncestor {
    /// `parent[root] == root`. `depth[v]` counts edges from the root.
    pub fn build(kind: LaKind, parent: &[usize], depth: &[usize]) -> LevelAncestor {
        match kind {
            LaKind::BinaryLifting => LevelAncestor::BinaryLifting(BinaryLifting::new(parent, depth)),
            LaKind::Ladder => LevelAncestor::Ladder(Ladder::new(parent, depth)),
        }
    }

    pub fn kind(&self) -> LaKind {
        match self {
            LevelAncestor::BinaryLifting(_) => LaKind::BinaryLifting,
            LevelAncestor::Ladder(_) => LaKind::Ladder,
        }
    }

    /// Ancestor of `v` at depth `d <= depth(v)`.
    #[inline]
    pub fn query(&self, v: usize, d: usize) -> usize {
        match self {
            LevelAncestor::BinaryLifting(b) => b.query(v, d),
            LevelAncestor::Ladder(l) => l.query(v, d),
        }
    }

    /// Highest ancestor `w` of `v` with `keep(w)`, given that `keep` holds on
    /// `v` and on an unbroken run of its ancestors; also returns the number of
    /// candidates tested. Binary lifting descends its jump table; the ladder
    /// variant binary searches with constant-time queries.
    #[inline]
    pub fn highest(&self, v: usize, mut keep: impl FnMut(usize) -> bool) -> (usize, u64) {
        let mut probes = 0;
        match self {
            LevelAncestor::BinaryLifting(b) => {
                let mut w = v;
                for level in b.up.iter().rev() {
                    let a = level[w];
                    // a clamped jump lands on the root, which is still a valid candidate
                    if b.depth[a] < b.depth[w] {
                        probes += 1;
                        if keep(a) {
                            w = a;
                        }
                    }
                }
                (w, probes)
            }
            LevelAncestor::Ladder(l) => {
                let (mut lo, mut hi, mut best) = (0, l.depth[v], v);
                while lo < hi {
                    let mid = (lo + hi).div_ceil(2);
                    let a = l.query(v, l.depth[v] - mid);
                    probes += 1;
                    if keep(a) {
                        lo = mid;
                        best = a;
                    } else {
                        hi = mid - 1;
                    }
                }
                (best, probes)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryLifting {
    pub(crate) depth: Vec<usize>,
    /// `up[k][v]` is the `2^k`-th ancestor of `v` (clamped at the root).
    pub(crate) up: Vec<Vec<usize>>,
}

impl BinaryLifting {
    pub fn new(parent: &[usize], depth: &[usize]) -> BinaryLifting {
        let max_depth = depth.iter().copied().max().unwrap_or(0);
        let mut up = vec![parent.to_vec()];
        let mut span = 1;
        while span < max_depth {
            let prev = up.last().unwrap();
            let next = prev.iter().map(|&p| prev[p]).collect();
            up.push(next);
            span *= 2;
        }
        BinaryLifting {
            depth: depth.to_vec(),
            up,
        }
    }

    pub fn query(&self, mut v: usize, d: usize) -> usize {
        debug_assert!(d <= self.depth[v]);
        let mut delta = self.depth[v] - d;
        let mut k = 0;
        while delta > 0 {
            if delta & 1 == 1 {
                v = self.up[k][v];
            }
            delta >>= 1;
            k += 1;
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ladder {
    pub(crate) depth: Vec<usize>,
    /// Bottom of the long path through each node.
    pub(crate) bottom: Vec<usize>,
    /// Ladder of each node's long path and the depth of its first entry.
    pub(crate) path_of: Vec<usize>,
    pub(crate) ladder_offset: Vec<usize>,
    pub(crate) ladder_top: Vec<usize>,
    pub(crate) ladders: Vec<usize>,
    /// Jump pointers of leaves: `jumps[jump_offset[leaf_slot[v]] + k]` is the `2^k`-th ancestor.
    pub(crate) leaf_slot: Vec<usize>,
    pub(crate) jump_offset: Vec<usize>,
    pub(crate) jumps: Vec<usize>,
}

impl Ladder {
    pub fn new(parent: &[usize], depth: &[usize]) -> Ladder {
        let n = parent.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(depth[v]));

        // height = longest downward path in edges; long child realizes it.
        let mut height = vec![0usize; n];
        let mut long_child = vec![usize::MAX; n];
        for &v in &order {
            let p = parent[v];
            if p != v && (long_child[p] == usize::MAX || height[v] + 1 > height[p]) {
                height[p] = height[v] + 1;
                long_child[p] = v;
            }
        }
        let mut bottom = vec![usize::MAX; n];
        let mut path_of = vec![usize::MAX; n];
        let mut ladder_offset = Vec::new();
        let mut ladder_top = Vec::new();
        let mut ladders = Vec::new();
        // Path heads: roots, and nodes that are not their parent's long child.
        let mut by_depth: Vec<usize> = (0..n).collect();
        by_depth.sort_by_key(|&v| depth[v]);
        for &head in &by_depth {
            let p = parent[head];
            if p != head && long_child[p] == head {
                continue;
            }
            let mut path = vec![head];
            while long_child[*path.last().unwrap()] != usize::MAX {
                path.push(long_child[*path.last().unwrap()]);
            }
            let id = ladder_offset.len();
            let len = path.len();
            let mut ext = Vec::new();
            let mut u = head;
            while ext.len() < len && parent[u] != u {
                u = parent[u];
                ext.push(u);
            }
            ext.reverse();
            ladder_offset.push(ladders.len());
            ladder_top.push(depth[head] - ext.len());
            ladders.extend_from_slice(&ext);
            ladders.extend_from_slice(&path);
            let b = *path.last().unwrap();
            for &v in &path {
                path_of[v] = id;
                bottom[v] = b;
            }
        }
        ladder_offset.push(ladders.len());

        let mut leaf_slot = vec![usize::MAX; n];
        let mut jump_offset = Vec::new();
        let mut jumps = Vec::new();
        for v in 0..n {
            if long_child[v] != usize::MAX {
                continue;
            }
            leaf_slot[v] = jump_offset.len();
            jump_offset.push(jumps.len());
            if depth[v] == 0 {
                continue;
            }
            // The 2^(k-1)-th ancestor w has height >= 2^(k-1), so its ladder
            // reaches the 2^k-th ancestor.
            let mut u = parent[v];
            jumps.push(u);
            let mut step = 2;
            while step <= depth[v] {
                let target = depth[v] - step;
                let path = path_of[u];
                u = ladders[ladder_offset[path] + target - ladder_top[path]];
                jumps.push(u);
                step *= 2;
            }
        }
        jump_offset.push(jumps.len());

        Ladder {
            depth: depth.to_vec(),
            bottom,
            path_of,
            ladder_offset,
            ladder_top,
            ladders,
            leaf_slot,
            jump_offset,
            jumps,
        }
    }

    fn ladder_at(&self, path: usize, d: usize) -> usize {
        self.ladders[self.ladder_offset[path] + d - self.ladder_top[path]]
    }

    pub fn query(&self, v: usize, d: usize) -> usize {
        debug_assert!(d <= self.depth[v]);
        if d == self.depth[v] {
            return v;
        }
        let leaf = self.bottom[v];
        let delta = self.depth[leaf] - d;
        let k = usize::BITS as usize - 1 - delta.leading_zeros() as usize;
        let w = self.jumps[self.jump_offset[self.leaf_slot[leaf]] + k];
        self.ladder_at(self.path_of[w], d)
    }
}
