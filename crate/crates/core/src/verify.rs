//! Oracle-equivalence and structural checks of a [`Cst`] against the
//! brute-force [`OracleIndex`]. Shared by the command-line `verify` command
//! and the test suites.

use std::collections::BTreeMap;
use std::fmt::{self, Debug};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cdawg::{Mode, SINK, SOURCE};
use crate::cst::{Cst, NodeId};
use crate::error::{Error, Result};
use crate::hpd::explicit::ExplicitTree;
use crate::hpd::Sum;
use crate::revgram::WEIGHT;
use crate::textkit::{maximal_repeats, OracleIndex, Text};

/// How many arguments each operation is checked on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coverage {
    /// Every valid argument, every pair for binary operations.
    Exhaustive,
    /// `queries` seeded random arguments per operation.
    Sampled { queries: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub op: &'static str,
    pub args: String,
    pub expected: String,
    pub got: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}): expected {}, got {}", self.op, self.args, self.expected, self.got)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: u64,
    /// Number of failed checks; only the first few are kept in `mismatches`.
    pub failures: u64,
    pub mismatches: Vec<Mismatch>,
    pub per_op: BTreeMap<&'static str, u64>,
}

impl Report {
    pub fn is_ok(&self) -> bool {
        self.failures == 0
    }

    pub fn merge(&mut self, other: Report) {
        self.checks += other.checks;
        self.failures += other.failures;
        let room = KEEP.saturating_sub(self.mismatches.len());
        self.mismatches.extend(other.mismatches.into_iter().take(room));
        for (op, k) in other.per_op {
            *self.per_op.entry(op).or_default() += k;
        }
    }
}

const KEEP: usize = 20;

/// Builds the index and the oracle for `text` and compares every operation.
pub fn verify_text(text: &Text, mode: Mode, coverage: Coverage) -> Result<Report> {
    let cst = Cst::build(text, mode)?;
    let oracle = OracleIndex::build(text);
    Ok(verify(&cst, &oracle, coverage))
}

/// Compares every operation of `cst` with the oracle.
pub fn verify(cst: &Cst, oracle: &OracleIndex, coverage: Coverage) -> Report {
    let mut c = Checker::new(cst, oracle, coverage);
    c.leaves();
    c.ranges();
    c.pairs();
    c.nodes();
    c.report.per_op = c.tally.into_iter().collect();
    c.report
}

/// Error variant name, the only part of an error the oracle predicts.
fn kind(e: &Error) -> &'static str {
    match e {
        Error::EmptyText => "EmptyText",
        Error::AlphabetTooLarge(_) => "AlphabetTooLarge",
        Error::InvalidSymbol { .. } => "InvalidSymbol",
        Error::OutOfRange { .. } => "OutOfRange",
        Error::InvalidRange { .. } => "InvalidRange",
        Error::ThresholdUnreachable { .. } => "ThresholdUnreachable",
        Error::NotALeaf => "NotALeaf",
        Error::Unsupported { .. } => "Unsupported",
        Error::CollapseRequired(_) => "CollapseRequired",
        Error::MalformedDag(_) => "MalformedDag",
        Error::Corrupt(_) => "Corrupt",
        Error::Version { .. } => "Version",
    }
}

type Expect<T> = std::result::Result<T, &'static str>;

/// What the oracle can say about a node: its string depth, its interval, and
/// its class as the closure length and interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct NodeView {
    depth: usize,
    lo: usize,
    hi: usize,
    class_len: usize,
    class_lo: usize,
    class_hi: usize,
    has_interval: bool,
}

struct Checker<'a> {
    cst: &'a Cst,
    o: &'a OracleIndex,
    rng: Option<ChaCha8Rng>,
    queries: usize,
    full: bool,
    /// Oracle view of every suffix-tree node.
    views: Vec<NodeView>,
    /// Leftmost deepest leaf below each node: by string depth and by node depth.
    deep_str: Vec<usize>,
    deep_node: Vec<usize>,
    /// Our identifier of every oracle node, found through `lca`.
    ids: Vec<Result<NodeId>>,
    /// Check counts by op; op names are static, so pointer equality finds them fast.
    tally: Vec<(&'static str, u64)>,
    report: Report,
}

impl<'a> Checker<'a> {
    fn new(cst: &'a Cst, o: &'a OracleIndex, coverage: Coverage) -> Checker<'a> {
        let (rng, queries) = match coverage {
            Coverage::Exhaustive => (None, 0),
            Coverage::Sampled { queries, seed } => (Some(ChaCha8Rng::seed_from_u64(seed)), queries),
        };
        let full = cst.mode() == Mode::Full;
        let tree = &o.tree;
        let views = (0..tree.nodes.len())
            .map(|x| {
                let node = tree.node(x);
                let (class_len, class_lo, class_hi) = closure(o, node.depth, node.sp, node.ep);
                NodeView {
                    depth: node.depth,
                    lo: node.sp,
                    hi: node.ep,
                    class_len,
                    class_lo,
                    class_hi,
                    has_interval: full,
                }
            })
            .collect();
        let mut deep_str = vec![0; tree.nodes.len()];
        let mut deep_node = vec![0; tree.nodes.len()];
        for x in (0..tree.nodes.len()).rev() {
            let node = tree.node(x);
            if node.is_leaf() {
                deep_str[x] = x;
                deep_node[x] = x;
                continue;
            }
            // children are in rank order; keep the first maximum
            let (mut bs, mut bn) = (deep_str[node.children[0]], deep_node[node.children[0]]);
            for &ch in &node.children[1..] {
                if tree.node(deep_str[ch]).depth > tree.node(bs).depth {
                    bs = deep_str[ch];
                }
                if tree.node(deep_node[ch]).node_depth > tree.node(bn).node_depth {
                    bn = deep_node[ch];
                }
            }
            deep_str[x] = bs;
            deep_node[x] = bn;
        }
        let ids = tree.nodes.iter().map(|node| cst.lca(node.sp, node.ep)).collect();
        Checker {
            cst,
            o,
            rng,
            queries,
            full,
            views,
            deep_str,
            deep_node,
            ids,
            tally: Vec::new(),
            report: Report::default(),
        }
    }

    fn check<T: PartialEq + Debug>(&mut self, op: &'static str, args: impl FnOnce() -> String, expected: Expect<T>, got: Expect<T>) {
        self.report.checks += 1;
        match self.tally.iter_mut().find(|(name, _)| std::ptr::eq(*name, op) || *name == op) {
            Some((_, k)) => *k += 1,
            None => self.tally.push((op, 1)),
        }
        if expected != got {
            self.report.failures += 1;
            if self.report.mismatches.len() < KEEP {
                self.report.mismatches.push(Mismatch {
                    op,
                    args: args(),
                    expected: format!("{expected:?}"),
                    got: format!("{got:?}"),
                });
            }
        }
    }

    fn view(&self, id: NodeId) -> Result<NodeView> {
        let (lo, hi) = self.cst.interval(id)?;
        let class_len = self.cst.cdawg().node(id.node).length;
        let (class_lo, class_hi) = self.cst.interval(NodeId {
            node: id.node,
            depth: class_len,
            interval: None,
        })?;
        Ok(NodeView {
            depth: id.depth,
            lo,
            hi,
            class_len,
            class_lo,
            class_hi,
            has_interval: id.interval.is_some(),
        })
    }

    fn got_node(&self, r: Result<NodeId>) -> Expect<NodeView> {
        r.and_then(|id| self.view(id)).map_err(|e| kind(&e))
    }

    fn got_opt(&self, r: Result<Option<NodeId>>) -> Expect<Option<NodeView>> {
        match r {
            Ok(Some(id)) => self.view(id).map(Some).map_err(|e| kind(&e)),
            Ok(None) => Ok(None),
            Err(e) => Err(kind(&e)),
        }
    }

    fn singles(&mut self, lo: usize, hi: usize) -> Vec<usize> {
        match &mut self.rng {
            None => (lo..=hi).collect(),
            Some(rng) => (0..self.queries).map(|_| rng.gen_range(lo..=hi)).collect(),
        }
    }

    /// Pairs `(i, j)` with `lo <= i <= j <= hi`, or all ordered pairs when `any_order`.
    fn pairs_in(&mut self, lo: usize, hi: usize, any_order: bool) -> Vec<(usize, usize)> {
        match &mut self.rng {
            None => {
                let mut out = Vec::new();
                for i in lo..=hi {
                    let from = if any_order { lo } else { i };
                    for j in from..=hi {
                        out.push((i, j));
                    }
                }
                out
            }
            Some(rng) => (0..self.queries)
                .map(|_| {
                    let (a, b) = (rng.gen_range(lo..=hi), rng.gen_range(lo..=hi));
                    if any_order {
                        (a, b)
                    } else {
                        (a.min(b), a.max(b))
                    }
                })
                .collect(),
        }
    }

    /// `(node, arg)` with `arg` in `range(node)`.
    fn node_args(&mut self, range: impl Fn(&OracleIndex, usize) -> (usize, usize)) -> Vec<(usize, usize)> {
        let count = self.o.tree.nodes.len();
        match &mut self.rng {
            None => {
                let mut out = Vec::new();
                for x in 0..count {
                    let (a, b) = range(self.o, x);
                    out.extend((a..=b).map(|k| (x, k)));
                }
                out
            }
            Some(rng) => (0..self.queries)
                .filter_map(|_| {
                    let x = rng.gen_range(0..count);
                    let (a, b) = range(self.o, x);
                    (a <= b).then(|| (x, rng.gen_range(a..=b)))
                })
                .collect(),
        }
    }

    fn node_list(&mut self) -> Vec<usize> {
        let count = self.o.tree.nodes.len();
        match &mut self.rng {
            None => (0..count).collect(),
            Some(rng) => (0..self.queries).map(|_| rng.gen_range(0..count)).collect(),
        }
    }

    fn id_of(&self, x: usize) -> Result<NodeId> {
        self.ids[x].clone()
    }

    fn leaves(&mut self) {
        let (cst, o) = (self.cst, self.o);
        let n = o.n;
        for i in self.singles(1, n) {
            let args = || i.to_string();
            let leaf = o.tree.leaf(i);
            let want = self.views[leaf];
            let got = cst.select_leaf(i);
            let g = self.got_node(got.clone());
            self.check("selectLeaf", args, Ok(want), g);
            self.check("leafRank", args, Ok(i), got.clone().and_then(|id| cst.leaf_rank(id)).map_err(|e| kind(&e)));
            self.check("locateLeaf", args, Ok(o.sa(i)), got.and_then(|id| cst.locate_leaf(id)).map_err(|e| kind(&e)));
            self.check("sa", args, Ok(o.sa(i)), cst.sa(i).map_err(|e| kind(&e)));
            self.check("lcp", args, Ok(o.lcp(i)), cst.lcp(i).map_err(|e| kind(&e)));
        }
        for i in self.singles(1, n) {
            let args = || i.to_string();
            self.check("isa", args, Ok(o.isa(i)), cst.isa(i).map_err(|e| kind(&e)));
            self.check("plcp", args, Ok(o.plcp(i)), cst.plcp(i).map_err(|e| kind(&e)));
            self.check("charAt", args, Ok(o.text[i - 1]), cst.char_at(i).map_err(|e| kind(&e)));
        }
        for bad in [0, n + 1] {
            let args = || bad.to_string();
            self.check("sa", args, Err("OutOfRange"), cst.sa(bad).map_err(|e| kind(&e)));
            self.check("isa", args, Err("OutOfRange"), cst.isa(bad).map_err(|e| kind(&e)));
            self.check("selectLeaf", args, Err("OutOfRange"), self.got_node(cst.select_leaf(bad)));
        }
    }

    fn ranges(&mut self) {
        let (cst, o) = (self.cst, self.o);
        let n = o.n;
        for (i, j) in self.pairs_in(1, n, false) {
            let args = || format!("{i}:{j}");
            self.check("saRange", args, Ok(o.sa[i - 1..j].to_vec()), cst.sa_range(i, j).map_err(|e| kind(&e)));
            self.check("isaRange", args, Ok(o.isa[i - 1..j].to_vec()), cst.isa_range(i, j).map_err(|e| kind(&e)));
            self.check("lcpRange", args, Ok(o.lcp[i - 1..j].to_vec()), cst.lcp_range(i, j).map_err(|e| kind(&e)));
            self.check("extract", args, Ok(o.text[i - 1..j].to_vec()), cst.extract(i, j).map_err(|e| kind(&e)));
        }
        if n >= 2 {
            self.check("extract", || "2:1".into(), Err("InvalidRange"), cst.extract(2, 1).map_err(|e| kind(&e)));
        }
    }

    fn pairs(&mut self) {
        let (cst, o) = (self.cst, self.o);
        let n = o.n;
        for (i, j) in self.pairs_in(1, n, false) {
            let want = self.views[o.tree.lca(o.tree.leaf(i), o.tree.leaf(j))];
            let got = self.got_node(cst.lca(i, j));
            self.check("lca", || format!("{i},{j}"), Ok(want), got);
        }
        for (p, q) in self.pairs_in(1, n, true) {
            let s = &o.text;
            let want = s[p - 1..].iter().zip(&s[q - 1..]).take_while(|(a, b)| a == b).count();
            self.check("lce", || format!("{p},{q}"), Ok(want), cst.lce(p, q).map_err(|e| kind(&e)));
        }
        for (i, j) in self.pairs_in(1, n, true) {
            let want = if i > j {
                Err("InvalidRange")
            } else {
                let pat = &o.text[i - 1..j];
                Ok((1..=n + 1 - pat.len()).filter(|&p| &o.text[p - 1..p - 1 + pat.len()] == pat).collect::<Vec<_>>())
            };
            self.check("internalPatternMatch", || format!("{i},{j}"), want, cst.internal_pattern_match(i, j).map_err(|e| kind(&e)));
        }
    }

    fn nodes(&mut self) {
        let (cst, o) = (self.cst, self.o);
        let tree = &o.tree;
        let sigma = o.sigma;

        for x in self.node_list() {
            let node = tree.node(x);
            let args = || format!("node [{}..{}] depth {}", node.sp, node.ep, node.depth);
            let id = match self.id_of(x) {
                Ok(id) => id,
                Err(e) => {
                    self.check("lca", args, Ok(self.views[x]), Err(kind(&e)));
                    continue;
                }
            };
            let g = self.got_node(Ok(id));
            self.check("nodeId", args, Ok(self.views[x]), g);
            let e = |r: Result<usize>| r.map_err(|e| kind(&e));
            self.check("depth", args, Ok(node.node_depth), e(cst.depth(id)));
            self.check("stringDepth", args, Ok(node.depth), e(cst.string_depth(id)));
            self.check("nLeaves", args, Ok(node.ep - node.sp + 1), e(cst.n_leaves(id)));
            let ds = tree.node(self.deep_str[x]);
            let dn = tree.node(self.deep_node[x]);
            self.check("height", args, Ok(ds.depth - node.depth), e(cst.height(id)));
            self.check("heightByDepth", args, Ok(dn.node_depth - node.node_depth), e(cst.height_by_depth(id)));
            let g = self.got_node(cst.deepest_node_by_string_depth(id));
            self.check("deepestNodeByStringDepth", args, Ok(self.views[self.deep_str[x]]), g);
            let g = self.got_node(cst.deepest_node_by_depth(id));
            self.check("deepestNodeByDepth", args, Ok(self.views[self.deep_node[x]]), g);
            let g = self.got_node(cst.leftmost_leaf(id));
            self.check("leftmostLeaf", args, Ok(self.views[tree.leftmost_leaf(x)]), g);
            let g = self.got_node(cst.rightmost_leaf(id));
            self.check("rightmostLeaf", args, Ok(self.views[tree.rightmost_leaf(x)]), g);
            let want = if node.is_leaf() { Ok(o.sa(node.sp)) } else { Err("NotALeaf") };
            self.check("locateLeaf", args, want, e(cst.locate_leaf(id)));
            let want = node.parent.map(|p| self.views[p]);
            let g = self.got_opt(cst.parent(id));
            self.check("parent", args, Ok(want), g);
            let want = node.children.first().map(|&c| self.views[c]);
            let g = self.got_opt(cst.first_child(id));
            self.check("firstChild", args, Ok(want), g);
            let want = node.parent.and_then(|p| {
                let sibs = &tree.node(p).children;
                let k = sibs.iter().position(|&s| s == x).unwrap();
                sibs.get(k + 1).map(|&s| self.views[s])
            });
            let g = self.got_opt(cst.next_sibling(id));
            self.check("nextSibling", args, Ok(want), g);
            let want = node.link.filter(|_| x != 0).map(|l| self.views[l]);
            let sl = cst.suffix_link(id);
            let g = self.got_opt(sl.clone());
            self.check("suffixLink", args, Ok(want), g);
            for c in 0..=sigma {
                let want = node
                    .children
                    .iter()
                    .find(|&&ch| o.edge(ch).unwrap().0 == c)
                    .map(|&ch| self.views[ch]);
                let g = self.got_opt(cst.child(id, c));
                self.check("child", || format!("{}, {c}", args()), Ok(want), g);
                let want = if self.full { Ok(self.weiner_oracle(x, c)) } else { Err("Unsupported") };
                let g = self.got_opt(cst.weiner_link(id, c));
                self.check("weinerLink", || format!("{}, {c}", args()), want, g);
            }
            if self.full && x != 0 {
                // the suffix link followed by the Weiner link of the dropped symbol returns
                let c = o.label(x)[0];
                let back = sl.and_then(|s| cst.weiner_link(s.unwrap(), c));
                let g = self.got_opt(back);
                self.check("weinerLink(suffixLink)", args, Ok(Some(self.views[x])), g);
            }
            let g = self.got_opt(Ok(cst.suffix_link_iter(id, 1).ok()));
            let want = Ok(Some(self.views[node.link.unwrap_or(0)]));
            self.check("suffixLinkIter", || format!("{}, 1", args()), want, g);
        }

        let depth_range = |o: &OracleIndex, x: usize| (0, o.tree.node(x).node_depth + 1);
        for (x, d) in self.node_args(depth_range) {
            let node = tree.node(x);
            let args = || format!("node [{}..{}] depth {}, {d}", node.sp, node.ep, node.depth);
            let Ok(id) = self.id_of(x) else { continue };
            let want = tree.ancestor(x, d).map(|a| self.views[a]).ok_or("ThresholdUnreachable");
            let g = self.got_node(cst.ancestor(id, d));
            self.check("ancestor", args, want, g);
        }
        let str_range = |o: &OracleIndex, x: usize| (0, o.tree.node(x).depth + 1);
        for (x, d) in self.node_args(str_range) {
            let node = tree.node(x);
            let args = || format!("node [{}..{}] depth {}, {d}", node.sp, node.ep, node.depth);
            let Ok(id) = self.id_of(x) else { continue };
            let want = tree.str_ancestor(x, d).map(|a| self.views[a]).ok_or("ThresholdUnreachable");
            let g = self.got_node(cst.str_ancestor(id, d));
            self.check("strAncestor", args, want, g);
            let mut y = x;
            for _ in 0..d {
                y = tree.node(y).link.unwrap_or(0);
            }
            let g = self.got_node(cst.suffix_link_iter(id, d));
            self.check("suffixLinkIter", args, Ok(self.views[y]), g);
        }
        let letter_range = |o: &OracleIndex, x: usize| (1, o.tree.node(x).depth);
        for (x, k) in self.node_args(letter_range) {
            let node = tree.node(x);
            let Ok(id) = self.id_of(x) else { continue };
            let want = o.label(x)[k - 1];
            let got = cst.letter(id, k).map_err(|e| kind(&e));
            self.check("letter", || format!("node [{}..{}] depth {}, {k}", node.sp, node.ep, node.depth), Ok(want), got);
        }
        let count = tree.nodes.len();
        let pairs: Vec<(usize, usize)> = match &mut self.rng {
            None => (0..count).flat_map(|a| (0..count).map(move |b| (a, b))).collect(),
            Some(rng) => (0..self.queries).map(|_| (rng.gen_range(0..count), rng.gen_range(0..count))).collect(),
        };
        for (a, b) in pairs {
            let (Ok(ia), Ok(ib)) = (self.id_of(a), self.id_of(b)) else { continue };
            let want = tree.is_ancestor(a, b);
            let got = cst.is_ancestor(ia, ib).map_err(|e| kind(&e));
            self.check("isAncestor", || format!("{a},{b}"), Ok(want), got);
        }
    }

    /// Locus of `c` + label(x): the shallowest node whose label extends it,
    /// found from any occurrence by brute force.
    fn weiner_oracle(&self, x: usize, c: u32) -> Option<NodeView> {
        let o = self.o;
        let mut pat = vec![c];
        pat.extend_from_slice(o.label(x));
        let n = o.n;
        let p = (1..=n + 1 - pat.len().min(n)).find(|&p| p + pat.len() - 1 <= n && o.text[p - 1..p - 1 + pat.len()] == pat[..])?;
        let leaf = o.tree.leaf(o.isa(p));
        o.tree.str_ancestor(leaf, pat.len()).map(|y| self.views[y])
    }
}

/// Extends `W` (string depth `len`, interval `[sp..ep]`) to the left while all
/// of its occurrences share the preceding symbol, which keeps it in the same
/// class; returns the closure's length and interval.
fn closure(o: &OracleIndex, mut len: usize, mut sp: usize, mut ep: usize) -> (usize, usize, usize) {
    loop {
        let c = o.bwt(sp);
        if c == 0 || (sp..=ep).any(|r| o.bwt(r) != c) {
            return (len, sp, ep);
        }
        let rows = (sp..=ep).map(|r| o.isa(o.sa(r) - 1));
        let (lo, hi) = rows.fold((usize::MAX, 0), |(a, b), r| (a.min(r), b.max(r)));
        debug_assert_eq!(hi - lo, ep - sp);
        sp = lo;
        ep = hi;
        len += 1;
    }
}

/// Structural properties of the index; returns one line per violation.
pub fn structural(cst: &Cst, oracle: &OracleIndex) -> Vec<String> {
    let mut bad = Vec::new();
    let c = cst.cdawg();
    let text = Text::from_codes(&oracle.text[..oracle.n - 1]).expect("oracle text is dense");

    let runs = 1 + oracle.bwt.windows(2).filter(|w| w[0] != w[1]).count();
    if runs > c.num_arcs() {
        bad.push(format!("runs {runs} exceed arcs {}", c.num_arcs()));
    }
    if let Some(rl) = c.rlbwt() {
        if rl.num_runs() != runs {
            bad.push(format!("stored runs {} differ from {runs}", rl.num_runs()));
        }
    }

    let mut labels = std::collections::BTreeSet::new();
    for v in 0..c.num_nodes() {
        if v == SINK {
            continue;
        }
        let id = NodeId {
            node: v,
            depth: c.node(v).length,
            interval: None,
        };
        match cst.label(id) {
            Ok(l) => {
                if !labels.insert(l) {
                    bad.push(format!("node {v} repeats a label"));
                }
            }
            Err(e) => bad.push(format!("label of node {v}: {e}")),
        }
    }
    let repeats = maximal_repeats(&text);
    if labels != repeats {
        bad.push(format!("{} node labels vs {} maximal repeats", labels.len(), repeats.len()));
    }
    if c.mode() == Mode::Full {
        for v in 2..c.num_nodes() {
            match c.check_equivalence_class(v) {
                Ok(Ok(())) => {}
                Ok(Err(viol)) => bad.push(format!("class of node {v}: {viol:?}")),
                Err(e) => bad.push(format!("class of node {v}: {e}")),
            }
        }
    }

    let g = cst.grammar();
    if let Err(e) = g.validate() {
        bad.push(format!("grammar: {e}"));
    }
    if g.expand() != oracle.text {
        bad.push("grammar does not expand to the text".into());
    }
    if let Ok(tree) = ExplicitTree::materialize(&g.to_dag(), &Sum, 4 * oracle.n + 4) {
        for i in 1..=oracle.n {
            let sum = tree.leaf_node(i).values[WEIGHT] as usize;
            if sum + 1 != oracle.isa(i) {
                bad.push(format!("leaf {i} weight sum {sum} + 1 != ISA {}", oracle.isa(i)));
                break;
            }
        }
    } else {
        bad.push("grammar tree has more than 4n nodes".into());
    }
    if c.node(SOURCE).leaves != oracle.n {
        bad.push("root does not cover every leaf".into());
    }
    bad
}
