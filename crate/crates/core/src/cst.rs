//! Compressed suffix tree over the CDAWG.
//!
//! A suffix-tree node is named by the CDAWG node of its class, its string
//! depth and, in full mode, its rank interval. The tree generated by the
//! CDAWG is the suffix tree itself, so every query that needs to find a leaf
//! or an ancestor runs on a heavy path decomposition of the CDAWG; positions
//! are mapped to ranks through the decomposition of the reversed grammar.

use crate::cdawg::{Cdawg, Mode, NodeRef, SINK, SOURCE};
use crate::error::{check_range, Error, Result};
use crate::hpd::{HpdIndex, LaKind, OrderedDag};
use crate::revgram::{RevGrammar, WEIGHT};
use crate::textkit::{render_codes, OracleIndex, Text};

/// Forward channel: arc label lengths (string depth).
pub const RIGHT: usize = 0;
/// Forward channel: one per arc (node depth).
pub const UNIT: usize = 1;

/// Suffix-tree node identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeId {
    pub node: NodeRef,
    /// String depth of the represented node.
    pub depth: usize,
    /// Rank interval; `None` in lite mode.
    pub interval: Option<(usize, usize)>,
}

impl NodeId {
    pub fn is_leaf(&self) -> bool {
        self.node == SINK
    }

    pub fn is_root(&self) -> bool {
        self.node == SOURCE
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CstOptions {
    pub mode: Mode,
    pub level_ancestor: LaKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cst {
    pub(crate) source_map: Vec<u8>,
    pub(crate) cdawg: Cdawg,
    pub(crate) grammar: RevGrammar,
    pub(crate) fwd: HpdIndex,
    pub(crate) rev: HpdIndex,
}

impl Cst {
    pub fn build(text: &Text, mode: Mode) -> Result<Cst> {
        Cst::build_with(
            text,
            CstOptions {
                mode,
                ..CstOptions::default()
            },
        )
    }

    pub fn build_with(text: &Text, opts: CstOptions) -> Result<Cst> {
        let index = OracleIndex::build_fast(text);
        let cdawg = Cdawg::build(&index, opts.mode);
        Cst::from_cdawg(cdawg, text.source_map().to_vec(), opts.level_ancestor)
    }

    pub(crate) fn from_cdawg(cdawg: Cdawg, source_map: Vec<u8>, la: LaKind) -> Result<Cst> {
        let grammar = RevGrammar::build(&cdawg);
        let fwd = HpdIndex::build(&forward_dag(&cdawg), crate::hpd::Sum, la)?;
        let rev = HpdIndex::build(&grammar.to_dag(), crate::hpd::Sum, la)?;
        Ok(Cst {
            source_map,
            cdawg,
            grammar,
            fwd,
            rev,
        })
    }

    pub fn n(&self) -> usize {
        self.cdawg.n()
    }

    pub fn sigma(&self) -> u32 {
        self.cdawg.sigma()
    }

    pub fn mode(&self) -> Mode {
        self.cdawg.mode()
    }

    pub fn cdawg(&self) -> &Cdawg {
        &self.cdawg
    }

    pub fn grammar(&self) -> &RevGrammar {
        &self.grammar
    }

    /// Decomposition of the tree generated by the CDAWG, channels [`RIGHT`] and [`UNIT`].
    pub fn forward_hpd(&self) -> &HpdIndex {
        &self.fwd
    }

    /// Decomposition of the tree generated by the reversed grammar.
    pub fn reverse_hpd(&self) -> &HpdIndex {
        &self.rev
    }

    pub fn source_map(&self) -> &[u8] {
        &self.source_map
    }

    /// Original bytes of a code sequence; the separator renders as `#`.
    pub fn render(&self, codes: &[u32]) -> Vec<u8> {
        render_codes(&self.source_map, codes)
    }

    fn make(&self, node: NodeRef, depth: usize, lo: usize, hi: usize) -> NodeId {
        NodeId {
            node,
            depth,
            interval: (self.mode() == Mode::Full).then_some((lo, hi)),
        }
    }

    pub fn root(&self) -> NodeId {
        self.make(SOURCE, 0, 1, self.n())
    }

    /// Checks that `id` names a suffix-tree node.
    pub fn check_id(&self, id: NodeId) -> Result<()> {
        check_range("node", id.node, 0, self.cdawg.num_nodes() - 1)?;
        let v = self.cdawg.node(id.node);
        check_range("string depth", id.depth, v.length + 1 - v.size, v.length)?;
        if let Some((lo, hi)) = id.interval {
            if lo == 0 || hi > self.n() || hi + 1 < lo || hi + 1 - lo != v.leaves {
                return Err(Error::InvalidRange { start: lo, end: hi });
            }
        }
        Ok(())
    }

    /// Rank interval of `id`, recovered from its leftmost leaf when absent.
    pub fn interval(&self, id: NodeId) -> Result<(usize, usize)> {
        self.check_id(id)?;
        if let Some(iv) = id.interval {
            return Ok(iv);
        }
        let v = self.cdawg.node(id.node);
        let lo = self.isa(self.n() - (id.depth + v.left) + 1)?;
        Ok((lo, lo + v.leaves - 1))
    }

    // ---- leaves, SA, ISA, LCP, text ----

    /// The leaf of rank `i`.
    pub fn select_leaf(&self, i: usize) -> Result<NodeId> {
        let s = self.fwd.leaf_eval(RIGHT, i)?.value as usize;
        Ok(self.make(SINK, s, i, i))
    }

    pub fn sa(&self, i: usize) -> Result<usize> {
        Ok(self.n() + 1 - self.fwd.leaf_eval(RIGHT, i)?.value as usize)
    }

    pub fn sa_range(&self, i: usize, j: usize) -> Result<Vec<usize>> {
        let n = self.n();
        Ok(self
            .fwd
            .range_eval(RIGHT, i, j)?
            .iter()
            .map(|l| n + 1 - l.value as usize)
            .collect())
    }

    pub fn isa(&self, i: usize) -> Result<usize> {
        Ok(self.rev.leaf_eval(WEIGHT, i)?.value as usize + 1)
    }

    pub fn isa_range(&self, i: usize, j: usize) -> Result<Vec<usize>> {
        Ok(self
            .rev
            .range_eval(WEIGHT, i, j)?
            .iter()
            .map(|l| l.value as usize + 1)
            .collect())
    }

    /// Lowest common ancestor of the leaves of ranks `i` and `j`.
    pub fn lca(&self, i: usize, j: usize) -> Result<NodeId> {
        let hit = self.fwd.lca_map(RIGHT, i, j)?;
        Ok(self.make(hit.node, hit.value as usize, hit.lo, hit.hi))
    }

    pub fn lca_nodes(&self, a: NodeId, b: NodeId) -> Result<NodeId> {
        let (alo, ahi) = self.interval(a)?;
        let (blo, bhi) = self.interval(b)?;
        self.lca(alo.min(blo), ahi.max(bhi))
    }

    /// `LCP[k]`, with `LCP[1] = 0`.
    pub fn lcp(&self, k: usize) -> Result<usize> {
        check_range("rank", k, 1, self.n())?;
        if k == 1 {
            return Ok(0);
        }
        Ok(self.fwd.lca_map(RIGHT, k - 1, k)?.value as usize)
    }

    pub fn lcp_range(&self, i: usize, j: usize) -> Result<Vec<usize>> {
        check_range("rank", i, 1, self.n())?;
        let start = i.max(2) - 1;
        let leaves = self.fwd.range_eval(RIGHT, start, j)?;
        let mut out = Vec::with_capacity(j + 1 - i);
        if i == 1 {
            out.push(0);
        }
        out.extend(leaves.iter().skip(1).map(|l| l.join.unwrap() as usize));
        Ok(out)
    }

    pub fn plcp(&self, i: usize) -> Result<usize> {
        self.lcp(self.isa(i)?)
    }

    /// Symbol codes of `T[i..=j]`.
    pub fn extract(&self, i: usize, j: usize) -> Result<Vec<u32>> {
        Ok(self
            .rev
            .range_eval(WEIGHT, i, j)?
            .iter()
            .map(|l| l.payload as u32)
            .collect())
    }

    pub fn char_at(&self, i: usize) -> Result<u32> {
        Ok(self.rev.leaf_eval(WEIGHT, i)?.payload as u32)
    }

    // ---- depth and ancestors ----

    /// Number of arcs from the root.
    pub fn depth(&self, id: NodeId) -> Result<usize> {
        let (lo, hi) = self.interval(id)?;
        Ok(self.fwd.lca_map(UNIT, lo, hi)?.value as usize)
    }

    /// Highest ancestor of `id` at depth at least `d`.
    pub fn ancestor(&self, id: NodeId, d: usize) -> Result<NodeId> {
        let (lo, hi) = self.interval(id)?;
        match self.fwd.weighted_ancestor(UNIT, lo, hi, d as i64)? {
            Some(hit) => {
                let s = self.fwd.lca_map(RIGHT, hit.lo, hit.hi)?.value as usize;
                Ok(self.make(hit.node, s, hit.lo, hit.hi))
            }
            None => Err(Error::ThresholdUnreachable {
                threshold: d as u64,
                available: self.depth(id)? as u64,
            }),
        }
    }

    /// Highest ancestor of `id` with string depth at least `d`.
    pub fn str_ancestor(&self, id: NodeId, d: usize) -> Result<NodeId> {
        let (lo, hi) = self.interval(id)?;
        match self.fwd.weighted_ancestor(RIGHT, lo, hi, d as i64)? {
            Some(hit) => Ok(self.make(hit.node, hit.value as usize, hit.lo, hit.hi)),
            None => Err(Error::ThresholdUnreachable {
                threshold: d as u64,
                available: id.depth as u64,
            }),
        }
    }

    pub fn leftmost_leaf(&self, id: NodeId) -> Result<NodeId> {
        self.check_id(id)?;
        let v = self.cdawg.node(id.node);
        Ok(NodeId {
            node: SINK,
            depth: id.depth + v.left,
            interval: id.interval.map(|(lo, _)| (lo, lo)),
        })
    }

    pub fn rightmost_leaf(&self, id: NodeId) -> Result<NodeId> {
        self.check_id(id)?;
        let v = self.cdawg.node(id.node);
        Ok(NodeId {
            node: SINK,
            depth: id.depth + v.right_len,
            interval: id.interval.map(|(_, hi)| (hi, hi)),
        })
    }

    // ---- navigation ----

    pub fn string_depth(&self, id: NodeId) -> Result<usize> {
        self.check_id(id)?;
        Ok(id.depth)
    }

    pub fn n_leaves(&self, id: NodeId) -> Result<usize> {
        self.check_id(id)?;
        Ok(self.cdawg.node(id.node).leaves)
    }

    /// Largest string depth below `id` minus its own.
    pub fn height(&self, id: NodeId) -> Result<usize> {
        self.check_id(id)?;
        Ok(self.cdawg.node(id.node).height_str)
    }

    /// Largest node depth below `id` minus its own.
    pub fn height_by_depth(&self, id: NodeId) -> Result<usize> {
        self.check_id(id)?;
        Ok(self.cdawg.node(id.node).height_depth)
    }

    /// Text position of a leaf.
    pub fn locate_leaf(&self, id: NodeId) -> Result<usize> {
        self.check_id(id)?;
        if !id.is_leaf() {
            return Err(Error::NotALeaf);
        }
        Ok(self.n() - id.depth + 1)
    }

    /// Rank of a leaf.
    pub fn leaf_rank(&self, id: NodeId) -> Result<usize> {
        let p = self.locate_leaf(id)?;
        match id.interval {
            Some((lo, _)) => Ok(lo),
            None => self.isa(p),
        }
    }

    /// Whether `a` is an ancestor of `b` (reflexive).
    pub fn is_ancestor(&self, a: NodeId, b: NodeId) -> Result<bool> {
        let (alo, ahi) = self.interval(a)?;
        let (blo, bhi) = self.interval(b)?;
        Ok(alo <= blo && bhi <= ahi && a.depth <= b.depth)
    }

    /// Member index of `id` inside its class (1 = longest).
    fn member(&self, id: NodeId) -> usize {
        self.cdawg.node(id.node).length - id.depth + 1
    }

    pub fn parent(&self, id: NodeId) -> Result<Option<NodeId>> {
        self.check_id(id)?;
        if id.is_root() {
            return Ok(None);
        }
        let (a, _) = self
            .cdawg
            .in_arc_of_member(id.node, self.member(id))
            .ok_or_else(|| Error::Corrupt(format!("member {} of node {} has no in-arc", self.member(id), id.node)))?;
        let arc = self.cdawg.arc(a);
        Ok(Some(NodeId {
            node: arc.source,
            depth: id.depth - arc.right,
            interval: id.interval.map(|(lo, _)| {
                let plo = lo - arc.weight;
                (plo, plo + self.cdawg.node(arc.source).leaves - 1)
            }),
        }))
    }

    fn via_arc(&self, id: NodeId, a: usize) -> NodeId {
        let arc = self.cdawg.arc(a);
        NodeId {
            node: arc.target,
            depth: id.depth + arc.right,
            interval: id.interval.map(|(lo, _)| {
                let clo = lo + arc.weight;
                (clo, clo + self.cdawg.node(arc.target).leaves - 1)
            }),
        }
    }

    pub fn first_child(&self, id: NodeId) -> Result<Option<NodeId>> {
        self.check_id(id)?;
        let arcs = self.cdawg.out_arcs(id.node);
        Ok((!arcs.is_empty()).then(|| self.via_arc(id, arcs.start)))
    }

    /// Child whose edge label starts with `c`.
    pub fn child(&self, id: NodeId, c: u32) -> Result<Option<NodeId>> {
        self.check_id(id)?;
        check_range("symbol", c as usize, 0, self.sigma() as usize)?;
        Ok(self.cdawg.arc_by_char(id.node, c).map(|a| self.via_arc(id, a)))
    }

    pub fn next_sibling(&self, id: NodeId) -> Result<Option<NodeId>> {
        let Some(parent) = self.parent(id)? else {
            return Ok(None);
        };
        let (a, _) = self.cdawg.in_arc_of_member(id.node, self.member(id)).unwrap();
        let next = a + 1;
        Ok((next < self.cdawg.out_arcs(parent.node).end).then(|| self.via_arc(parent, next)))
    }

    pub fn suffix_link(&self, id: NodeId) -> Result<Option<NodeId>> {
        self.check_id(id)?;
        if id.is_root() {
            return Ok(None);
        }
        let v = self.cdawg.node(id.node);
        if self.member(id) < v.size {
            // same class: one row per row, by the select formula
            let interval = match id.interval {
                Some((lo, hi)) => Some(self.cdawg.contract_left(lo, hi)?.0),
                None => None,
            };
            return Ok(Some(NodeId {
                node: id.node,
                depth: id.depth - 1,
                interval,
            }));
        }
        let next = NodeId {
            node: v.link,
            depth: id.depth - 1,
            interval: None,
        };
        Ok(Some(match self.mode() {
            Mode::Full => NodeId {
                interval: Some(self.interval(next)?),
                ..next
            },
            Mode::Lite => next,
        }))
    }

    /// Locus of `cW`, where `W` is the label of `id`.
    pub fn weiner_link(&self, id: NodeId, c: u32) -> Result<Option<NodeId>> {
        self.check_id(id)?;
        if self.mode() == Mode::Lite {
            return Err(Error::Unsupported {
                op: "weinerLink",
                mode: "lite",
            });
        }
        check_range("symbol", c as usize, 0, self.sigma() as usize)?;
        if c == 0 {
            // the separator is only preceded by the text, never followed
            return if id.is_root() { self.select_leaf(1).map(Some) } else { Ok(None) };
        }
        let (lo, hi) = self.interval(id)?;
        let Some(ext) = self.cdawg.extend_left(lo, hi, c)? else {
            return Ok(None);
        };
        if self.member(id) > 1 {
            // all occurrences share one left symbol: the next longer member
            return Ok(Some(NodeId {
                node: id.node,
                depth: id.depth + 1,
                interval: Some(ext),
            }));
        }
        let w = self
            .cdawg
            .weiner_arc(id.node, c)
            .ok_or_else(|| Error::Corrupt(format!("missing Weiner arc {c} at node {}", id.node)))?;
        Ok(Some(NodeId {
            node: w.target,
            depth: w.depth,
            interval: Some(ext),
        }))
    }

    // ---- extensions ----

    /// Longest common prefix of the suffixes starting at `p` and `q`.
    pub fn lce(&self, p: usize, q: usize) -> Result<usize> {
        check_range("position", p, 1, self.n())?;
        check_range("position", q, 1, self.n())?;
        if p == q {
            return Ok(self.n() - p + 1);
        }
        Ok(self.lca(self.isa(p)?, self.isa(q)?)?.depth)
    }

    /// Sorted starting positions of every occurrence of `T[i..=j]`.
    pub fn internal_pattern_match(&self, i: usize, j: usize) -> Result<Vec<usize>> {
        check_range("position", i, 1, self.n())?;
        check_range("position", j, 1, self.n())?;
        if i > j {
            return Err(Error::InvalidRange { start: i, end: j });
        }
        let r = self.isa(i)?;
        let hit = self
            .fwd
            .weighted_ancestor(RIGHT, r, r, (j - i + 1) as i64)?
            .expect("the suffix at i is at least as long as the pattern");
        let mut occ = self.sa_range(hit.lo, hit.hi)?;
        occ.sort_unstable();
        Ok(occ)
    }

    /// `k`-th symbol of the label of `id`.
    pub fn letter(&self, id: NodeId, k: usize) -> Result<u32> {
        self.check_id(id)?;
        check_range("offset", k, 1, id.depth)?;
        let p = self.n() - (id.depth + self.cdawg.node(id.node).left) + 1;
        self.char_at(p + k - 1)
    }

    /// Label of `id` as symbol codes.
    pub fn label(&self, id: NodeId) -> Result<Vec<u32>> {
        self.check_id(id)?;
        if id.depth == 0 {
            return Ok(Vec::new());
        }
        let p = self.n() - (id.depth + self.cdawg.node(id.node).left) + 1;
        self.extract(p, p + id.depth - 1)
    }

    /// Leftmost leaf of largest string depth below `id`.
    pub fn deepest_node_by_string_depth(&self, id: NodeId) -> Result<NodeId> {
        self.check_id(id)?;
        let d = self.cdawg.node(id.node).deepest_str;
        Ok(self.deepest(id, d.rank_offset, d.str_offset))
    }

    /// Leftmost leaf of largest node depth below `id`.
    pub fn deepest_node_by_depth(&self, id: NodeId) -> Result<NodeId> {
        self.check_id(id)?;
        let d = self.cdawg.node(id.node).deepest_depth;
        Ok(self.deepest(id, d.rank_offset, d.str_offset))
    }

    fn deepest(&self, id: NodeId, rank_offset: usize, str_offset: usize) -> NodeId {
        NodeId {
            node: SINK,
            depth: id.depth + str_offset,
            interval: id.interval.map(|(lo, _)| (lo + rank_offset, lo + rank_offset)),
        }
    }

    /// Node reached from `id` by `i` suffix links; the root once `i >= depth`.
    pub fn suffix_link_iter(&self, id: NodeId, i: usize) -> Result<NodeId> {
        self.check_id(id)?;
        if i == 0 {
            return Ok(id);
        }
        if i >= id.depth {
            return Ok(self.root());
        }
        let v = self.cdawg.node(id.node);
        let n = self.n();
        let p = n - (id.depth + v.left) + 1;
        let q = n - (id.depth + v.right_len) + 1;
        self.lca(self.isa(p + i)?, self.isa(q + i)?)
    }
}

/// The CDAWG as an ordered DAG with channels [`RIGHT`] and [`UNIT`]; payloads are arc indices.
pub fn forward_dag(c: &Cdawg) -> OrderedDag {
    let mut dag = OrderedDag::new(c.num_nodes(), 2);
    for v in 0..c.num_nodes() {
        for a in c.out_arcs(v) {
            let arc = c.arc(a);
            dag.add_arc(v, arc.target, &[arc.right as u64, 1], a);
        }
    }
    dag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn repeats(mode: Mode) -> Cst {
        Cst::build(&Text::normalize(b"AGAGCGAGAGCGCGC").unwrap(), mode).unwrap()
    }

    #[test]
    fn repetitive_text_examples() {
        for mode in [Mode::Full, Mode::Lite] {
            let t = repeats(mode);
            assert_eq!(t.n(), 16);
            assert_eq!(t.select_leaf(2).unwrap().depth, 16);
            assert_eq!(t.sa_range(2, 2).unwrap(), vec![1]);
            assert_eq!(t.sa(1).unwrap(), 16);
            assert_eq!(t.isa(1).unwrap(), 2);
            assert_eq!(t.isa(16).unwrap(), 1);
            assert_eq!(t.lca(2, 3).unwrap().depth, 6);
            assert_eq!(t.render(&t.extract(1, 4).unwrap()), b"AGAG");
            assert_eq!(t.render(&t.extract(16, 16).unwrap()), b"#");
            let ag = t.internal_pattern_match(1, 2).unwrap();
            assert_eq!(ag, vec![1, 3, 7, 9]);
            assert_eq!(t.n_leaves(t.root()).unwrap(), 16);
            assert_eq!(t.lce(5, 5).unwrap(), 12);
        }
    }

    #[test]
    fn small_examples() {
        let t = Cst::build(&Text::normalize(b"AB").unwrap(), Mode::Full).unwrap();
        assert_eq!(t.select_leaf(1).unwrap().depth, 1);
        assert_eq!(t.cdawg().num_arcs(), 3);
        let t = Cst::build(&Text::normalize(b"AA").unwrap(), Mode::Full).unwrap();
        assert_eq!(t.lcp_range(1, 3).unwrap(), vec![0, 0, 1]);
        assert_eq!(t.isa_range(1, 3).unwrap(), vec![3, 2, 1]);
    }

    #[test]
    fn lite_mode_refuses_weiner_links_only() {
        let t = repeats(Mode::Lite);
        let root = t.root();
        assert_eq!(root.interval, None);
        assert_eq!(
            t.weiner_link(root, 1),
            Err(Error::Unsupported {
                op: "weinerLink",
                mode: "lite"
            })
        );
        assert_eq!(t.interval(root).unwrap(), (1, 16));
        let leaf = t.select_leaf(5).unwrap();
        assert_eq!(t.leaf_rank(leaf).unwrap(), 5);
    }

    #[test]
    fn errors() {
        let t = repeats(Mode::Full);
        assert!(matches!(t.sa(0), Err(Error::OutOfRange { .. })));
        assert!(matches!(t.sa(17), Err(Error::OutOfRange { .. })));
        assert!(matches!(t.internal_pattern_match(3, 2), Err(Error::InvalidRange { .. })));
        let leaf = t.select_leaf(3).unwrap();
        assert!(matches!(t.str_ancestor(leaf, leaf.depth + 1), Err(Error::ThresholdUnreachable { .. })));
        assert_eq!(t.locate_leaf(t.root()), Err(Error::NotALeaf));
        assert_eq!(t.parent(t.root()).unwrap(), None);
        let bad = NodeId {
            node: SINK,
            depth: 0,
            interval: None,
        };
        assert!(t.check_id(bad).is_err());
    }
}
