//! CDAWG built by minimizing the oracle suffix tree.
//!
//! Every node stands for the equivalence class of a maximal repeat `W`: the
//! right-maximal suffixes `W[1..m], ..., W[k..m]`, identified here by their
//! *member index* `1..=k` (member `i` has string depth `length - i + 1`).
//! The sink is the class of all suffixes of the text, so its member `j` is the
//! suffix starting at position `j`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::rlbwt::Rlbwt;
use crate::textkit::{OracleIndex, SuffixTree};

pub type NodeRef = usize;
pub type ArcRef = usize;

pub const SOURCE: NodeRef = 0;
pub const SINK: NodeRef = 1;

/// Which representation to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// RLBWT, node intervals and Weiner arcs.
    #[default]
    Full,
    /// Graph annotations only.
    Lite,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Full => "full",
            Mode::Lite => "lite",
        }
    }
}

/// Leaf of maximum depth inside a subtree, relative to the subtree's root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Deepest {
    /// Leaf rank minus the subtree's first rank.
    pub rank_offset: usize,
    /// Leaf string depth minus the subtree root's string depth.
    pub str_offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CdawgNode {
    /// `|l(v)|` of the longest member.
    pub length: usize,
    /// Number of right-maximal strings in the class.
    pub size: usize,
    /// Leaves below any member.
    pub leaves: usize,
    /// String length from the longest member to its leftmost leaf.
    pub left: usize,
    /// String length from the longest member to its rightmost leaf.
    pub right_len: usize,
    /// Max leaf string depth below the node minus its own string depth.
    pub height_str: usize,
    /// Max node depth below the node minus its own node depth.
    pub height_depth: usize,
    pub deepest_str: Deepest,
    pub deepest_depth: Deepest,
    /// Class of `W[k+1..m]`, where `W[k..m]` is the shortest member.
    pub link: NodeRef,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CdawgArc {
    pub source: NodeRef,
    pub target: NodeRef,
    /// First symbol of the arc label.
    pub char: u32,
    /// Label length.
    pub right: usize,
    /// `sp(child) - sp(parent)` of every suffix-tree edge the arc generates.
    pub weight: usize,
}

/// Block of the target's members reached through one in-arc: members
/// `x + 1 ..= x + size(source)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Boundary {
    pub x: usize,
    pub arc: ArcRef,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeinerArc {
    pub char: u32,
    pub target: NodeRef,
    /// String depth of the locus of `cW`.
    pub depth: usize,
    /// The link is explicit (the locus is exactly `cW`).
    pub explicit: bool,
}

/// Data kept only in [`Mode::Full`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullData {
    /// `[first, last]` rank interval of each node's longest member.
    pub intervals: Vec<(usize, usize)>,
    pub rlbwt: Rlbwt,
    pub weiner_offset: Vec<usize>,
    pub weiner: Vec<WeinerArc>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cdawg {
    pub(crate) n: usize,
    pub(crate) sigma: u32,
    pub(crate) nodes: Vec<CdawgNode>,
    pub(crate) arc_offset: Vec<usize>,
    pub(crate) arcs: Vec<CdawgArc>,
    pub(crate) boundary_offset: Vec<usize>,
    pub(crate) boundaries: Vec<Boundary>,
    pub(crate) full: Option<FullData>,
}

/// Property violated by an equivalence class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassViolation {
    pub node: NodeRef,
    pub property: u8,
    pub member: usize,
    pub detail: String,
}

impl Cdawg {
    /// Minimizes the oracle suffix tree, merging nodes whose ordered subtrees
    /// agree on arc symbols, arc lengths and target classes.
    pub fn build(oracle: &OracleIndex, mode: Mode) -> Cdawg {
        let tree = &oracle.tree;
        let st_len = tree.nodes.len();
        let n = oracle.n;

        // Bottom-up signature hashing; nodes are in preorder, so walk backwards.
        let mut raw = vec![usize::MAX; st_len];
        let mut table: HashMap<Vec<(u32, usize, usize)>, usize> = HashMap::new();
        const RAW_SINK: usize = 0;
        let mut next_raw = 1;
        for v in (0..st_len).rev() {
            let node = tree.node(v);
            if node.is_leaf() {
                raw[v] = RAW_SINK;
                continue;
            }
            let sig: Vec<(u32, usize, usize)> = node
                .children
                .iter()
                .map(|&c| {
                    let (ch, len) = oracle.edge(c).unwrap();
                    (ch, len, raw[c])
                })
                .collect();
            raw[v] = *table.entry(sig).or_insert_with(|| {
                next_raw += 1;
                next_raw - 1
            });
        }

        // Deterministic numbering: source, sink, then first preorder appearance.
        let mut renum = vec![usize::MAX; next_raw];
        renum[raw[SuffixTree::ROOT]] = SOURCE;
        renum[RAW_SINK] = SINK;
        let mut count = 2;
        for &r in &raw {
            if renum[r] == usize::MAX {
                renum[r] = count;
                count += 1;
            }
        }
        let class: Vec<NodeRef> = raw.iter().map(|&r| renum[r]).collect();

        let mut rep = vec![usize::MAX; count];
        let mut shortest = vec![usize::MAX; count];
        let mut size = vec![0usize; count];
        for v in 0..st_len {
            let k = class[v];
            size[k] += 1;
            let d = tree.node(v).depth;
            if rep[k] == usize::MAX || d > tree.node(rep[k]).depth {
                rep[k] = v;
            }
            if shortest[k] == usize::MAX || d < tree.node(shortest[k]).depth {
                shortest[k] = v;
            }
        }

        // Deepest leaves of every suffix-tree subtree: (string depth, rank) and (node depth, rank).
        let mut deep_str = vec![(0usize, 0usize); st_len];
        let mut deep_node = vec![(0usize, 0usize); st_len];
        for v in (0..st_len).rev() {
            let node = tree.node(v);
            if node.is_leaf() {
                deep_str[v] = (node.depth, node.sp);
                deep_node[v] = (node.node_depth, node.sp);
                continue;
            }
            let mut bs = deep_str[node.children[0]];
            let mut bn = deep_node[node.children[0]];
            for &c in &node.children[1..] {
                if deep_str[c].0 > bs.0 {
                    bs = deep_str[c];
                }
                if deep_node[c].0 > bn.0 {
                    bn = deep_node[c];
                }
            }
            deep_str[v] = bs;
            deep_node[v] = bn;
        }

        let mut nodes = Vec::with_capacity(count);
        let mut arc_offset = Vec::with_capacity(count + 1);
        let mut arcs = Vec::new();
        for k in 0..count {
            let v = rep[k];
            let node = tree.node(v);
            let lm = tree.node(tree.leftmost_leaf(v));
            let rm = tree.node(tree.rightmost_leaf(v));
            let (ds, dsr) = deep_str[v];
            let (dn, dnr) = deep_node[v];
            let dn_leaf = tree.node(tree.leaf(dnr));
            let link = match tree.node(shortest[k]).link {
                Some(w) => class[w],
                None => SOURCE,
            };
            nodes.push(CdawgNode {
                length: node.depth,
                size: size[k],
                leaves: node.ep - node.sp + 1,
                left: lm.depth - node.depth,
                right_len: rm.depth - node.depth,
                height_str: ds - node.depth,
                height_depth: dn - node.node_depth,
                deepest_str: Deepest {
                    rank_offset: dsr - node.sp,
                    str_offset: ds - node.depth,
                },
                deepest_depth: Deepest {
                    rank_offset: dnr - node.sp,
                    str_offset: dn_leaf.depth - node.depth,
                },
                link,
            });
            arc_offset.push(arcs.len());
            for &c in &node.children {
                let (ch, len) = oracle.edge(c).unwrap();
                arcs.push(CdawgArc {
                    source: k,
                    target: class[c],
                    char: ch,
                    right: len,
                    weight: tree.node(c).sp - node.sp,
                });
            }
        }
        arc_offset.push(arcs.len());

        let mut incoming: Vec<Vec<Boundary>> = vec![Vec::new(); count];
        for (a, arc) in arcs.iter().enumerate() {
            let x = nodes[arc.target].length - (nodes[arc.source].length + arc.right);
            incoming[arc.target].push(Boundary { x, arc: a });
        }
        let mut boundary_offset = Vec::with_capacity(count + 1);
        let mut boundaries = Vec::with_capacity(arcs.len());
        for list in &mut incoming {
            list.sort_by_key(|b| b.x);
            boundary_offset.push(boundaries.len());
            boundaries.extend_from_slice(list);
        }
        boundary_offset.push(boundaries.len());

        let full = (mode == Mode::Full).then(|| {
            let rlbwt = Rlbwt::new(&oracle.bwt, oracle.sigma);
            let intervals: Vec<(usize, usize)> = rep
                .iter()
                .map(|&v| (tree.node(v).sp, tree.node(v).ep))
                .collect();
            let mut weiner_offset = Vec::with_capacity(count + 1);
            let mut weiner = Vec::new();
            for k in 0..count {
                weiner_offset.push(weiner.len());
                let (sp, ep) = intervals[k];
                for c in 1..=oracle.sigma {
                    if let Some((a, b)) = rlbwt.extend_left(sp, ep, c).unwrap() {
                        let locus = tree
                            .node_of_interval(a, b)
                            .expect("every interval of a substring has a locus");
                        let depth = tree.node(locus).depth;
                        weiner.push(WeinerArc {
                            char: c,
                            target: class[locus],
                            depth,
                            explicit: depth == nodes[k].length + 1,
                        });
                    }
                }
            }
            weiner_offset.push(weiner.len());
            FullData {
                intervals,
                rlbwt,
                weiner_offset,
                weiner,
            }
        });

        Cdawg {
            n,
            sigma: oracle.sigma,
            nodes,
            arc_offset,
            arcs,
            boundary_offset,
            boundaries,
            full,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    pub fn mode(&self) -> Mode {
        if self.full.is_some() {
            Mode::Full
        } else {
            Mode::Lite
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    /// `e_T`.
    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn node(&self, v: NodeRef) -> &CdawgNode {
        &self.nodes[v]
    }

    pub fn arc(&self, a: ArcRef) -> &CdawgArc {
        &self.arcs[a]
    }

    pub fn arcs(&self) -> &[CdawgArc] {
        &self.arcs
    }

    /// Global indices of `v`'s out-arcs, sorted by symbol.
    pub fn out_arcs(&self, v: NodeRef) -> std::ops::Range<ArcRef> {
        self.arc_offset[v]..self.arc_offset[v + 1]
    }

    /// Out-arc of `v` whose label starts with `c`.
    pub fn arc_by_char(&self, v: NodeRef, c: u32) -> Option<ArcRef> {
        let range = self.out_arcs(v);
        let slice = &self.arcs[range.clone()];
        slice
            .binary_search_by_key(&c, |a| a.char)
            .ok()
            .map(|i| range.start + i)
    }

    /// In-arc boundaries of `v`, sorted by `x`.
    pub fn boundaries(&self, v: NodeRef) -> &[Boundary] {
        &self.boundaries[self.boundary_offset[v]..self.boundary_offset[v + 1]]
    }

    /// The in-arc whose block contains member `j` of `v`, with the member index in the source.
    pub fn in_arc_of_member(&self, v: NodeRef, j: usize) -> Option<(ArcRef, usize)> {
        let bs = self.boundaries(v);
        let k = bs.partition_point(|b| b.x < j);
        if k == 0 {
            return None;
        }
        let b = bs[k - 1];
        let src = self.arcs[b.arc].source;
        (j - b.x <= self.nodes[src].size).then_some((b.arc, j - b.x))
    }

    pub fn full(&self) -> Option<&FullData> {
        self.full.as_ref()
    }

    pub fn rlbwt(&self) -> Option<&Rlbwt> {
        self.full.as_ref().map(|f| &f.rlbwt)
    }

    fn require_full(&self, op: &'static str) -> Result<&FullData> {
        self.full.as_ref().ok_or(Error::Unsupported { op, mode: "lite" })
    }

    /// Rank interval of the longest member of `v`.
    pub fn interval(&self, v: NodeRef) -> Option<(usize, usize)> {
        self.full.as_ref().map(|f| f.intervals[v])
    }

    /// Weiner arc of `v` labelled `c`.
    pub fn weiner_arc(&self, v: NodeRef, c: u32) -> Option<&WeinerArc> {
        let f = self.full.as_ref()?;
        let list = &f.weiner[f.weiner_offset[v]..f.weiner_offset[v + 1]];
        list.binary_search_by_key(&c, |w| w.char).ok().map(|i| &list[i])
    }

    pub fn weiner_arcs(&self, v: NodeRef) -> &[WeinerArc] {
        match &self.full {
            Some(f) => &f.weiner[f.weiner_offset[v]..f.weiner_offset[v + 1]],
            None => &[],
        }
    }

    pub fn rank(&self, c: u32, i: usize) -> Result<usize> {
        self.require_full("rank")?.rlbwt.rank(c, i)
    }

    pub fn select(&self, c: u32, k: usize) -> Result<usize> {
        self.require_full("select")?.rlbwt.select(c, k)
    }

    pub fn extend_left(&self, p: usize, q: usize, c: u32) -> Result<Option<(usize, usize)>> {
        self.require_full("extendLeft")?.rlbwt.extend_left(p, q, c)
    }

    pub fn contract_left(&self, p: usize, q: usize) -> Result<((usize, usize), u32)> {
        self.require_full("contractLeft")?.rlbwt.contract_left(p, q)
    }

    /// Rank intervals of members `1..=size` of `v`, derived by repeated contraction.
    pub fn member_intervals(&self, v: NodeRef) -> Result<Vec<(usize, usize)>> {
        let f = self.require_full("memberIntervals")?;
        let mut out = Vec::with_capacity(self.nodes[v].size);
        let mut cur = f.intervals[v];
        out.push(cur);
        for _ in 1..self.nodes[v].size {
            cur = f.rlbwt.contract_left(cur.0, cur.1)?.0;
            out.push(cur);
        }
        Ok(out)
    }

    /// Checks the BWT properties of `v`'s equivalence class: equal widths and
    /// exact single-step extensions (1, 3, 4), unary BWT ranges past the first
    /// member and a non-unary one for it (2), and arc weights that agree with
    /// the member intervals of every target (5).
    pub fn check_equivalence_class(&self, v: NodeRef) -> Result<Result<(), ClassViolation>> {
        if v == SOURCE || v == SINK {
            return Err(Error::OutOfRange {
                what: "class node",
                value: v,
                lo: 2,
                hi: self.nodes.len().saturating_sub(1),
            });
        }
        let rl = &self.require_full("checkEquivalenceClass")?.rlbwt;
        let fail = |property: u8, member: usize, detail: String| {
            Ok(Err(ClassViolation {
                node: v,
                property,
                member,
                detail,
            }))
        };
        let node = &self.nodes[v];
        let members = self.member_intervals(v)?;
        let width = node.leaves;
        let occ = |c: u32, (p, q): (usize, usize)| -> Result<usize> {
            Ok(rl.rank(c, q)? - rl.rank(c, p - 1)?)
        };
        let (p1, q1) = members[0];
        if q1 - p1 + 1 != width {
            return fail(1, 1, format!("width {} != {}", q1 - p1 + 1, width));
        }
        if occ(rl.access(p1)?, members[0])? == width {
            return fail(2, 1, "first member has a unary BWT range".into());
        }
        for i in 1..members.len() {
            let (p, q) = members[i];
            let c = rl.first_symbol(members[i - 1].0)?;
            if occ(c, members[i])? != q - p + 1 {
                return fail(2, i + 1, format!("BWT range not unary in symbol {c}"));
            }
            match rl.extend_left(p, q, c)? {
                Some(iv) if iv == members[i - 1] => {}
                other => {
                    return fail(3, i + 1, format!("extension gives {other:?}, expected {:?}", members[i - 1]))
                }
            }
            if rl.contract_left(members[i - 1].0, members[i - 1].1)? != ((p, q), c) {
                return fail(4, i, "contraction disagrees".into());
            }
        }
        for a in self.out_arcs(v) {
            let arc = self.arcs[a];
            let x = self
                .boundaries(arc.target)
                .iter()
                .find(|b| b.arc == a)
                .map(|b| b.x)
                .expect("every arc has a boundary");
            let targets = if arc.target == SINK {
                None
            } else {
                Some(self.member_intervals(arc.target)?)
            };
            for (i, &(p, _)) in members.iter().enumerate() {
                let j = x + i + 1;
                let (cp, cq) = match &targets {
                    Some(t) => t[j - 1],
                    None => {
                        let mut cur = f_interval(self, SINK);
                        for _ in 1..j {
                            cur = rl.contract_left(cur.0, cur.1)?.0;
                        }
                        cur
                    }
                };
                if cp < p || cp - p != arc.weight || cq - cp + 1 != self.nodes[arc.target].leaves {
                    return fail(
                        5,
                        i + 1,
                        format!("arc {a}: child interval [{cp}..{cq}] vs parent start {p}, weight {}", arc.weight),
                    );
                }
            }
        }
        Ok(Ok(()))
    }
}

fn f_interval(g: &Cdawg, v: NodeRef) -> (usize, usize) {
    g.interval(v).expect("full mode")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textkit::{maximal_repeats, Text};
    use std::collections::BTreeSet;

    fn build(s: &str) -> (Cdawg, OracleIndex) {
        let t = Text::normalize(s.as_bytes()).unwrap();
        let o = OracleIndex::build(&t);
        (Cdawg::build(&o, Mode::Full), o)
    }

    #[test]
    fn small_examples() {
        let (g, _) = build("AB");
        assert_eq!(g.num_nodes(), 2);
        assert_eq!(g.num_arcs(), 3);

        let (g, _) = build("AA");
        assert_eq!(g.num_nodes(), 3);
        assert_eq!(g.num_arcs(), 4);
        let a = g.arc_by_char(SOURCE, 1).unwrap();
        let mid = g.arc(a).target;
        assert_eq!(g.node(mid).length, 1);
        assert_eq!(g.out_arcs(mid).len(), 2);
        assert_eq!(g.interval(mid), Some((2, 3)));
        assert_eq!(g.check_equivalence_class(mid).unwrap(), Ok(()));
        assert!(g.check_equivalence_class(SOURCE).is_err());
    }

    #[test]
    fn repetitive_text() {
        let (g, o) = build("AGAGCGAGAGCGCGC");
        assert_eq!(g.n(), 16);
        assert!(g.rlbwt().unwrap().num_runs() <= g.num_arcs());
        let labels: BTreeSet<Vec<u32>> = (0..g.num_nodes())
            .filter(|&v| v != SINK)
            .map(|v| {
                let (sp, _) = g.interval(v).unwrap();
                let p = o.sa(sp);
                o.text[p - 1..p - 1 + g.node(v).length].to_vec()
            })
            .collect();
        assert_eq!(labels, maximal_repeats(&Text::normalize(b"AGAGCGAGAGCGCGC").unwrap()));
        for v in 2..g.num_nodes() {
            assert_eq!(g.check_equivalence_class(v).unwrap(), Ok(()), "node {v}");
        }
    }

    #[test]
    fn boundaries_tile_members() {
        let (g, _) = build("AGAGCGAGAGCGCGCAGAGCGA");
        for v in 1..g.num_nodes() {
            let mut next = 1;
            for b in g.boundaries(v) {
                assert_eq!(b.x + 1, next, "node {v}");
                next += g.node(g.arc(b.arc).source).size;
            }
            assert_eq!(next, g.node(v).size + 1, "node {v}");
        }
        assert!(g.boundaries(SOURCE).is_empty());
    }

    #[test]
    fn lite_mode_drops_bwt_data() {
        let t = Text::normalize(b"ABABAB").unwrap();
        let o = OracleIndex::build(&t);
        let lite = Cdawg::build(&o, Mode::Lite);
        let full = Cdawg::build(&o, Mode::Full);
        assert_eq!(lite.mode(), Mode::Lite);
        assert_eq!(lite.nodes, full.nodes);
        assert_eq!(lite.arcs, full.arcs);
        assert!(matches!(lite.rank(1, 1), Err(Error::Unsupported { .. })));
        assert!(lite.weiner_arcs(SOURCE).is_empty());
    }
}
