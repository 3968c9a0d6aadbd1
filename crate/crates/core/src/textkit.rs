//! Text model and the brute-force oracle.
//!
//! Everything exposed here is 1-based: positions run over `1..=n`, ranks over
//! `1..=n`, and the last symbol of every [`Text`] is the separator `0`.
//! The oracle is deliberately naive. It sorts suffixes by direct comparison
//! and answers tree queries by walking an explicit pointer tree, so it can be
//! trusted on small inputs and used to check every other module.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

/// Largest alphabet accepted by [`Text::from_codes`].
pub const MAX_SIGMA: u32 = u16::MAX as u32;

/// A string over the dense alphabet `[1..sigma]` followed by the separator `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Text {
    symbols: Vec<u32>,
    sigma: u32,
    /// `source_map[c - 1]` is the original byte of code `c`, when the text came from bytes.
    source_map: Vec<u8>,
}

impl Text {
    /// Remaps `raw` to dense codes preserving byte order and appends the separator.
    ///
    /// Every byte value is an ordinary symbol; the separator is never read from input.
    pub fn normalize(raw: &[u8]) -> Result<Text> {
        if raw.is_empty() {
            return Err(Error::EmptyText);
        }
        let mut present = [false; 256];
        for &b in raw {
            present[b as usize] = true;
        }
        let source_map: Vec<u8> = (0..=255u8).filter(|&b| present[b as usize]).collect();
        let mut code = [0u32; 256];
        for (i, &b) in source_map.iter().enumerate() {
            code[b as usize] = i as u32 + 1;
        }
        let mut symbols: Vec<u32> = raw.iter().map(|&b| code[b as usize]).collect();
        symbols.push(0);
        Ok(Text {
            symbols,
            sigma: source_map.len() as u32,
            source_map,
        })
    }

    /// Builds a text from codes that already satisfy the dense-alphabet
    /// invariant. The trailing separator must not be included.
    pub fn from_codes(codes: &[u32]) -> Result<Text> {
        if codes.is_empty() {
            return Err(Error::EmptyText);
        }
        let sigma = codes.iter().copied().max().unwrap_or(0);
        if sigma > MAX_SIGMA {
            return Err(Error::AlphabetTooLarge(sigma as usize));
        }
        let mut seen = vec![false; sigma as usize + 1];
        for (i, &c) in codes.iter().enumerate() {
            if c == 0 {
                return Err(Error::InvalidSymbol {
                    position: i + 1,
                    symbol: c,
                });
            }
            seen[c as usize] = true;
        }
        if let Some(missing) = (1..=sigma).find(|&c| !seen[c as usize]) {
            return Err(Error::InvalidSymbol {
                position: 0,
                symbol: missing,
            });
        }
        let mut symbols = codes.to_vec();
        symbols.push(0);
        Ok(Text {
            symbols,
            sigma,
            source_map: Vec::new(),
        })
    }

    /// Length including the separator.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    /// All codes, separator included.
    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    /// Code at 1-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.symbols[i - 1]
    }

    /// Byte table for code `c` in `[1..sigma]`; empty for texts built from codes.
    pub fn source_map(&self) -> &[u8] {
        &self.source_map
    }

    /// Renders codes as bytes (`#` for the separator), falling back to
    /// `A`, `B`, ... when no byte table is present.
    pub fn render(&self, codes: &[u32]) -> Vec<u8> {
        render_codes(&self.source_map, codes)
    }
}

pub(crate) fn render_codes(source_map: &[u8], codes: &[u32]) -> Vec<u8> {
    codes
        .iter()
        .map(|&c| {
            if c == 0 {
                b'#'
            } else if let Some(&b) = source_map.get(c as usize - 1) {
                b
            } else {
                b'A'.wrapping_add((c - 1) as u8)
            }
        })
        .collect()
}

/// A node of the explicit oracle suffix tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StNode {
    /// String depth `|l(v)|`.
    pub depth: usize,
    /// Number of edges from the root.
    pub node_depth: usize,
    /// Leaf interval `[sp..ep]` in lexicographic rank order.
    pub sp: usize,
    pub ep: usize,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub link: Option<usize>,
}

impl StNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

/// Explicit ordered suffix tree. Nodes are numbered in preorder, root is `0`.
#[derive(Debug, Clone)]
pub struct SuffixTree {
    pub nodes: Vec<StNode>,
    /// `leaf_of_rank[r - 1]` is the leaf holding the suffix of rank `r`.
    pub leaf_of_rank: Vec<usize>,
    by_interval: HashMap<(usize, usize), usize>,
}

impl SuffixTree {
    pub const ROOT: usize = 0;

    pub fn node(&self, v: usize) -> &StNode {
        &self.nodes[v]
    }

    pub fn leaf(&self, rank: usize) -> usize {
        self.leaf_of_rank[rank - 1]
    }

    /// The node whose leaf interval is exactly `[sp..ep]`.
    pub fn node_of_interval(&self, sp: usize, ep: usize) -> Option<usize> {
        self.by_interval.get(&(sp, ep)).copied()
    }

    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        let (x, y) = (&self.nodes[a], &self.nodes[b]);
        x.sp <= y.sp && y.ep <= x.ep && x.depth <= y.depth
    }

    /// Lowest common ancestor by climbing parent pointers.
    pub fn lca(&self, a: usize, b: usize) -> usize {
        let mut u = a;
        while !self.is_ancestor(u, b) {
            u = self.nodes[u].parent.expect("root is an ancestor of everything");
        }
        u
    }

    /// Highest ancestor of `v` (inclusive) whose string depth is at least `d`.
    pub fn str_ancestor(&self, v: usize, d: usize) -> Option<usize> {
        self.climb(v, |n| n.depth >= d)
    }

    /// Highest ancestor of `v` (inclusive) whose node depth is at least `d`.
    pub fn ancestor(&self, v: usize, d: usize) -> Option<usize> {
        self.climb(v, |n| n.node_depth >= d)
    }

    fn climb(&self, v: usize, ok: impl Fn(&StNode) -> bool) -> Option<usize> {
        if !ok(&self.nodes[v]) {
            return None;
        }
        let mut u = v;
        while let Some(p) = self.nodes[u].parent {
            if !ok(&self.nodes[p]) {
                break;
            }
            u = p;
        }
        Some(u)
    }

    /// Leftmost leaf of the subtree rooted at `v`.
    pub fn leftmost_leaf(&self, v: usize) -> usize {
        self.leaf(self.nodes[v].sp)
    }

    pub fn rightmost_leaf(&self, v: usize) -> usize {
        self.leaf(self.nodes[v].ep)
    }
}

/// Suffix array, inverse, LCP, PLCP, BWT and suffix tree of a [`Text`],
/// computed by brute force.
#[derive(Debug, Clone)]
pub struct OracleIndex {
    pub n: usize,
    pub sigma: u32,
    /// `sa[r - 1]` is the starting position of the suffix of rank `r`.
    pub sa: Vec<usize>,
    /// `isa[i - 1]` is the rank of the suffix starting at `i`.
    pub isa: Vec<usize>,
    /// `lcp[r - 1]` compares ranks `r - 1` and `r`; `lcp[0] = 0`.
    pub lcp: Vec<usize>,
    pub plcp: Vec<usize>,
    pub bwt: Vec<u32>,
    /// `c[a]` counts the symbols smaller than `a`, for `a` in `[0..=sigma + 1]`.
    pub c: Vec<usize>,
    pub tree: SuffixTree,
    pub text: Vec<u32>,
}

impl OracleIndex {
    /// Sorts suffixes by direct comparison.
    pub fn build(t: &Text) -> OracleIndex {
        let s = t.symbols();
        let n = s.len();
        let mut sa: Vec<usize> = (1..=n).collect();
        sa.sort_unstable_by(|&a, &b| s[a - 1..].cmp(&s[b - 1..]));
        let mut isa = vec![0; n];
        for (r, &p) in sa.iter().enumerate() {
            isa[p - 1] = r + 1;
        }
        let mut lcp = vec![0; n];
        for r in 1..n {
            let (a, b) = (&s[sa[r - 1] - 1..], &s[sa[r] - 1..]);
            lcp[r] = a.iter().zip(b).take_while(|(x, y)| x == y).count();
        }
        OracleIndex::assemble(t, sa, isa, lcp)
    }

    /// Same result as [`OracleIndex::build`] in `O(n log^2 n)` time, by prefix
    /// doubling and Kasai's LCP scan; used for construction on large inputs.
    pub fn build_fast(t: &Text) -> OracleIndex {
        let s = t.symbols();
        let n = s.len();
        let mut sa: Vec<usize> = (0..n).collect();
        let mut rank: Vec<usize> = s.iter().map(|&c| c as usize).collect();
        let mut tmp = vec![0; n];
        let mut k = 1;
        loop {
            let key = |i: usize| (rank[i], if i + k < n { rank[i + k] + 1 } else { 0 });
            sa.sort_unstable_by_key(|&i| key(i));
            tmp[sa[0]] = 0;
            for r in 1..n {
                tmp[sa[r]] = tmp[sa[r - 1]] + usize::from(key(sa[r - 1]) != key(sa[r]));
            }
            std::mem::swap(&mut rank, &mut tmp);
            if rank[sa[n - 1]] == n - 1 {
                break;
            }
            k *= 2;
        }
        let sa: Vec<usize> = sa.into_iter().map(|i| i + 1).collect();
        let mut isa = vec![0; n];
        for (r, &p) in sa.iter().enumerate() {
            isa[p - 1] = r + 1;
        }
        let mut lcp = vec![0; n];
        let mut h = 0usize;
        for i in 0..n {
            let r = isa[i] - 1;
            if r == 0 {
                h = 0;
                continue;
            }
            let j = sa[r - 1] - 1;
            while i + h < n && j + h < n && s[i + h] == s[j + h] {
                h += 1;
            }
            lcp[r] = h;
            h = h.saturating_sub(1);
        }
        OracleIndex::assemble(t, sa, isa, lcp)
    }

    fn assemble(t: &Text, sa: Vec<usize>, isa: Vec<usize>, lcp: Vec<usize>) -> OracleIndex {
        let s = t.symbols();
        let n = s.len();
        let plcp = (1..=n).map(|i| lcp[isa[i - 1] - 1]).collect();
        let bwt = sa
            .iter()
            .map(|&p| if p == 1 { s[n - 1] } else { s[p - 2] })
            .collect();
        let sigma = t.sigma();
        let mut c = vec![0; sigma as usize + 2];
        for &x in s {
            c[x as usize + 1] += 1;
        }
        for a in 1..c.len() {
            c[a] += c[a - 1];
        }
        let tree = build_tree(&sa, &isa, &lcp);
        OracleIndex {
            n,
            sigma,
            sa,
            isa,
            lcp,
            plcp,
            bwt,
            c,
            tree,
            text: s.to_vec(),
        }
    }

    pub fn sa(&self, r: usize) -> usize {
        self.sa[r - 1]
    }

    pub fn isa(&self, i: usize) -> usize {
        self.isa[i - 1]
    }

    pub fn lcp(&self, r: usize) -> usize {
        self.lcp[r - 1]
    }

    pub fn plcp(&self, i: usize) -> usize {
        self.plcp[i - 1]
    }

    pub fn bwt(&self, r: usize) -> u32 {
        self.bwt[r - 1]
    }

    /// Occurrences of `c` in `bwt[1..=i]`, by scanning.
    pub fn rank(&self, c: u32, i: usize) -> usize {
        self.bwt[..i].iter().filter(|&&x| x == c).count()
    }

    /// Rank interval of `cW` given the interval `[sp..ep]` of `W`, or `None` if `cW` does not occur.
    pub fn extend_left(&self, sp: usize, ep: usize, c: u32) -> Option<(usize, usize)> {
        let base = self.c[c as usize];
        let lo = base + self.rank(c, sp - 1) + 1;
        let hi = base + self.rank(c, ep);
        (lo <= hi).then_some((lo, hi))
    }

    /// Label of suffix-tree node `v`.
    pub fn label(&self, v: usize) -> &[u32] {
        let node = self.tree.node(v);
        let p = self.sa(node.sp);
        &self.text[p - 1..p - 1 + node.depth]
    }

    /// Parent-child edge label length and first character of `v`'s in-edge.
    pub fn edge(&self, v: usize) -> Option<(u32, usize)> {
        let node = self.tree.node(v);
        let parent = self.tree.node(node.parent?);
        let p = self.sa(node.sp);
        Some((self.text[p - 1 + parent.depth], node.depth - parent.depth))
    }

    /// Number of internal nodes (right-maximal repeats, `ε` included).
    pub fn internal_nodes(&self) -> usize {
        self.tree.nodes.iter().filter(|v| !v.is_leaf()).count()
    }
}

fn build_tree(sa: &[usize], isa: &[usize], lcp: &[usize]) -> SuffixTree {
    #[derive(Clone, Copy)]
    enum Child {
        Leaf(usize),
        Internal(usize),
    }
    struct Tmp {
        depth: usize,
        sp: usize,
        ep: usize,
        children: Vec<Child>,
    }

    let n = sa.len();
    let mut arena: Vec<Tmp> = Vec::new();
    let mut stack: Vec<Tmp> = vec![Tmp {
        depth: 0,
        sp: 1,
        ep: n,
        children: Vec::new(),
    }];
    for r in 1..=n {
        let h = if r < n { lcp[r] } else { 0 };
        let mut pending = Child::Leaf(r);
        let mut pending_sp = r;
        while stack.last().map_or(false, |t| t.depth > h) {
            let mut x = stack.pop().unwrap();
            x.children.push(pending);
            x.ep = r;
            pending_sp = x.sp;
            arena.push(x);
            pending = Child::Internal(arena.len() - 1);
        }
        let top = stack.last_mut().unwrap();
        if top.depth == h {
            top.children.push(pending);
        } else {
            stack.push(Tmp {
                depth: h,
                sp: pending_sp,
                ep: r,
                children: vec![pending],
            });
        }
    }
    debug_assert_eq!(stack.len(), 1);
    arena.push(stack.pop().unwrap());
    let root_tmp = arena.len() - 1;

    let mut nodes: Vec<StNode> = Vec::with_capacity(2 * n);
    let mut leaf_of_rank = vec![0; n];
    // (child, parent in the final numbering, node depth)
    let mut todo: Vec<(Child, Option<usize>, usize)> = vec![(Child::Internal(root_tmp), None, 0)];
    while let Some((child, parent, node_depth)) = todo.pop() {
        let id = nodes.len();
        if let Some(p) = parent {
            nodes[p].children.push(id);
        }
        match child {
            Child::Leaf(r) => {
                leaf_of_rank[r - 1] = id;
                nodes.push(StNode {
                    depth: n - sa[r - 1] + 1,
                    node_depth,
                    sp: r,
                    ep: r,
                    parent,
                    children: Vec::new(),
                    link: None,
                });
            }
            Child::Internal(t) => {
                let tmp = &arena[t];
                nodes.push(StNode {
                    depth: tmp.depth,
                    node_depth,
                    sp: tmp.sp,
                    ep: tmp.ep,
                    parent,
                    children: Vec::with_capacity(tmp.children.len()),
                    link: None,
                });
                for &c in tmp.children.iter().rev() {
                    todo.push((c, Some(id), node_depth + 1));
                }
            }
        }
    }
    let by_interval = nodes
        .iter()
        .enumerate()
        .map(|(v, node)| ((node.sp, node.ep), v))
        .collect();
    let mut tree = SuffixTree {
        nodes,
        leaf_of_rank,
        by_interval,
    };

    let rmq = MinTable::new(lcp);
    for v in 1..tree.nodes.len() {
        let node = &tree.nodes[v];
        let link = if node.is_leaf() {
            let p = sa[node.sp - 1];
            if p == n {
                SuffixTree::ROOT
            } else {
                tree.leaf(isa[p])
            }
        } else if node.depth == 1 {
            SuffixTree::ROOT
        } else {
            let r = isa[sa[node.sp - 1]];
            let (a, b) = rmq.expand(r, node.depth - 1);
            tree.node_of_interval(a, b).expect("suffix link target is a node")
        };
        tree.nodes[v].link = Some(link);
    }
    tree
}

/// Sparse table of minima over an LCP array (1-based ranks).
struct MinTable {
    levels: Vec<Vec<usize>>,
}

impl MinTable {
    fn new(values: &[usize]) -> MinTable {
        let mut levels = vec![values.to_vec()];
        let mut width = 1;
        while 2 * width <= values.len() {
            let prev = levels.last().unwrap();
            let next = (0..=values.len() - 2 * width)
                .map(|i| prev[i].min(prev[i + width]))
                .collect();
            levels.push(next);
            width *= 2;
        }
        MinTable { levels }
    }

    /// Minimum of `lcp[a..=b]` (1-based, `a <= b`).
    fn min(&self, a: usize, b: usize) -> usize {
        let len = b - a + 1;
        let k = usize::BITS as usize - 1 - len.leading_zeros() as usize;
        self.levels[k][a - 1].min(self.levels[k][b + 1 - (1 << k) - 1])
    }

    /// Maximal rank interval around `r` whose suffixes share a prefix of length `h >= 1`.
    fn expand(&self, r: usize, h: usize) -> (usize, usize) {
        let n = self.levels[0].len();
        let (mut lo, mut hi) = (r, n);
        while lo < hi {
            let mid = (lo + hi + 1) / 2;
            if self.min(r + 1, mid) >= h {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let b = lo;
        let (mut lo, mut hi) = (1, r);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.min(mid + 1, r) >= h {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        (lo, b)
    }
}

/// All maximal repeats by enumerating substrings. Intended for short texts.
///
/// Left contexts are read on the circular text, so an occurrence at position
/// 1 is preceded by the separator.
pub fn maximal_repeats(t: &Text) -> BTreeSet<Vec<u32>> {
    let s = t.symbols();
    let n = s.len();
    let mut out = BTreeSet::new();
    let left_of = |p: usize| if p == 1 { s[n - 1] } else { s[p - 2] };

    let distinct = |it: &mut dyn Iterator<Item = u32>| it.collect::<BTreeSet<u32>>().len();
    if n > 1
        && distinct(&mut s.iter().copied()) > 1
        && distinct(&mut (1..=n).map(left_of)) > 1
    {
        out.insert(Vec::new());
    }
    for len in 1..n {
        let mut occ: HashMap<&[u32], Vec<usize>> = HashMap::new();
        for p in 1..=n - len {
            occ.entry(&s[p - 1..p - 1 + len]).or_default().push(p);
        }
        for (w, ps) in occ {
            if ps.len() < 2 {
                continue;
            }
            let right = distinct(&mut ps.iter().map(|&p| s[p - 1 + len]));
            let left = distinct(&mut ps.iter().map(|&p| left_of(p)));
            if right > 1 && left > 1 {
                out.insert(w.to_vec());
            }
        }
    }
    out
}
