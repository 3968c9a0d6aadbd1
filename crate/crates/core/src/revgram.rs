//! Reversed, compacted CDAWG read as a grammar that generates exactly the text.
//!
//! Reversing every arc makes the CDAWG sink the root. The out-arcs of a node
//! are its CDAWG in-arcs ordered by boundary (longer class strings first), so
//! the `i`-th leaf of the generated tree is the suffix starting at `i`: its
//! weights sum to `ISA[i] - 1`, its label lengths to `n - i + 1`, and its last
//! arc leaves the CDAWG source with the symbol `T[i]`.

use crate::cdawg::{Cdawg, NodeRef, SINK, SOURCE};
use crate::error::Result;
use crate::hpd::OrderedDag;

/// Channel of [`RevGrammar::to_dag`] carrying suffix-array offsets.
pub const WEIGHT: usize = 0;
/// Channel carrying label lengths.
pub const EXT_LEN: usize = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RevArc {
    pub target: usize,
    /// Offset of the child's interval inside the parent's, summed over collapsed steps.
    pub weight: usize,
    /// Text symbols the step spells, summed over collapsed steps.
    pub ext_len: usize,
    /// First symbol of the CDAWG source arc this step ends with; set exactly
    /// on arcs into the sink.
    pub first_char: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RevGrammar {
    pub(crate) n: usize,
    /// CDAWG node of every grammar node; node 0 is the CDAWG sink, node 1 the source.
    pub(crate) cdawg_node: Vec<NodeRef>,
    pub(crate) arc_offset: Vec<usize>,
    pub(crate) arcs: Vec<RevArc>,
}

pub const ROOT: usize = 0;
pub const LEAF: usize = 1;

impl RevGrammar {
    pub fn build(c: &Cdawg) -> RevGrammar {
        let k = c.num_nodes();
        let indeg = |v: NodeRef| c.boundaries(v).len();
        // Nodes with one CDAWG in-arc are unary in the reversal and disappear.
        let kept = |v: NodeRef| v == SINK || v == SOURCE || indeg(v) != 1;

        let mut id = vec![usize::MAX; k];
        let mut cdawg_node = vec![SINK, SOURCE];
        id[SINK] = ROOT;
        id[SOURCE] = LEAF;
        for v in 2..k {
            if kept(v) {
                id[v] = cdawg_node.len();
                cdawg_node.push(v);
            }
        }

        // resolve[v]: where a step into v really lands, with accumulated metadata.
        // Computed source-first so the single predecessor is always resolved.
        let order = topological(c);
        let mut resolve: Vec<Option<RevArc>> = vec![None; k];
        for &v in &order {
            if kept(v) {
                resolve[v] = Some(RevArc {
                    target: id[v],
                    weight: 0,
                    ext_len: 0,
                    first_char: None,
                });
            } else {
                let b = c.boundaries(v)[0];
                resolve[v] = Some(step(c, b.arc, resolve[c.arc(b.arc).source].unwrap()));
            }
        }

        let mut arc_offset = Vec::with_capacity(cdawg_node.len() + 1);
        let mut arcs = Vec::new();
        for &v in &cdawg_node {
            arc_offset.push(arcs.len());
            for b in c.boundaries(v) {
                let into = resolve[c.arc(b.arc).source].unwrap();
                arcs.push(step(c, b.arc, into));
            }
        }
        arc_offset.push(arcs.len());
        RevGrammar {
            n: c.n(),
            cdawg_node,
            arc_offset,
            arcs,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_nodes(&self) -> usize {
        self.cdawg_node.len()
    }

    pub fn cdawg_node(&self, v: usize) -> NodeRef {
        self.cdawg_node[v]
    }

    pub fn out(&self, v: usize) -> &[RevArc] {
        &self.arcs[self.arc_offset[v]..self.arc_offset[v + 1]]
    }

    /// Number of arcs, i.e. symbol occurrences on right-hand sides.
    pub fn grammar_size(&self) -> usize {
        self.arcs.len()
    }

    /// Regenerates the text, separator included.
    pub fn expand(&self) -> Vec<u32> {
        let mut text = Vec::with_capacity(self.n);
        self.walk(&mut |ch| text.push(ch));
        text
    }

    /// Depth-first walk emitting leaf symbols left to right.
    fn walk(&self, emit: &mut impl FnMut(u32)) {
        // (node, next out-arc index)
        let mut stack = vec![(ROOT, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, k) = *top;
            let out = self.out(v);
            if k == out.len() {
                stack.pop();
                continue;
            }
            top.1 += 1;
            let a = out[k];
            match a.first_char {
                Some(ch) => emit(ch),
                None => stack.push((a.target, 0)),
            }
        }
    }

    /// Nodes whose in-arcs repeat a weight; empty when the grammar is valid.
    pub fn duplicate_in_weights(&self) -> Vec<usize> {
        let mut seen: Vec<Vec<usize>> = vec![Vec::new(); self.num_nodes()];
        for a in &self.arcs {
            seen[a.target].push(a.weight);
        }
        seen.iter_mut()
            .enumerate()
            .filter_map(|(v, w)| {
                w.sort_unstable();
                w.windows(2).any(|p| p[0] == p[1]).then_some(v)
            })
            .collect()
    }

    /// Two channels, [`WEIGHT`] and [`EXT_LEN`]; the payload of an arc into
    /// the sink is its first symbol.
    pub fn to_dag(&self) -> OrderedDag {
        let mut dag = OrderedDag::new(self.num_nodes(), 2);
        for v in 0..self.num_nodes() {
            for a in self.out(v) {
                let payload = a.first_char.map_or(usize::MAX, |c| c as usize);
                dag.add_arc(v, a.target, &[a.weight as u64, a.ext_len as u64], payload);
            }
        }
        dag
    }

    /// Checks the grammar against its CDAWG-independent invariants.
    pub fn validate(&self) -> Result<()> {
        use crate::error::Error;
        for v in 0..self.num_nodes() {
            let d = self.out(v).len();
            if v != LEAF && d < 2 {
                return Err(Error::CollapseRequired(v));
            }
            for a in self.out(v) {
                if (a.target == LEAF) != a.first_char.is_some() {
                    return Err(Error::Corrupt(format!("symbol label misplaced below node {v}")));
                }
            }
        }
        if let Some(&v) = self.duplicate_in_weights().first() {
            return Err(Error::Corrupt(format!("repeated in-weight at grammar node {v}")));
        }
        Ok(())
    }
}

/// Reversal of CDAWG arc `a` followed by the resolved continuation `into`.
fn step(c: &Cdawg, a: usize, into: RevArc) -> RevArc {
    let arc = c.arc(a);
    RevArc {
        target: into.target,
        weight: arc.weight + into.weight,
        ext_len: arc.right + into.ext_len,
        // the symbol belongs to the arc nearest the CDAWG source
        first_char: into.first_char.or((arc.source == SOURCE).then_some(arc.char)),
    }
}

/// CDAWG nodes with every node after all its predecessors.
fn topological(c: &Cdawg) -> Vec<NodeRef> {
    let k = c.num_nodes();
    let mut indeg: Vec<usize> = (0..k).map(|v| c.boundaries(v).len()).collect();
    let mut order = Vec::with_capacity(k);
    let mut stack = vec![SOURCE];
    while let Some(v) = stack.pop() {
        order.push(v);
        for a in c.out_arcs(v) {
            let t = c.arc(a).target;
            indeg[t] -= 1;
            if indeg[t] == 0 {
                stack.push(t);
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdawg::Mode;
    use crate::hpd::explicit::ExplicitTree;
    use crate::hpd::{HpdIndex, Sum};
    use crate::textkit::{OracleIndex, Text};
    use proptest::prelude::*;

    fn grammar(s: &[u8]) -> (RevGrammar, OracleIndex, Cdawg) {
        let t = Text::normalize(s).unwrap();
        let o = OracleIndex::build(&t);
        let c = Cdawg::build(&o, Mode::Lite);
        (RevGrammar::build(&c), o, c)
    }

    fn check(s: &[u8]) {
        let (g, o, _) = grammar(s);
        g.validate().unwrap();
        assert_eq!(g.expand(), o.text);
        let dag = g.to_dag();
        let tree = ExplicitTree::materialize(&dag, &Sum, 1 << 22).unwrap();
        assert_eq!(tree.num_leaves(), o.n);
        for i in 1..=o.n {
            let leaf = tree.leaf_node(i);
            assert_eq!(leaf.values[WEIGHT] as usize + 1, o.isa(i), "isa {i}");
            assert_eq!(leaf.values[EXT_LEN] as usize, o.n - i + 1);
            assert_eq!(leaf.in_payload, Some(o.text[i - 1] as usize));
        }
        // and through the implicit index
        let idx = HpdIndex::new(&dag).unwrap();
        for i in 1..=o.n {
            assert_eq!(idx.leaf_eval(WEIGHT, i).unwrap().value as usize + 1, o.isa(i));
        }
    }

    #[test]
    fn small_examples() {
        let (g, _, _) = grammar(b"AB");
        assert_eq!(g.grammar_size(), 3);
        assert_eq!(g.num_nodes(), 2);
        check(b"AB");
        check(b"AA");
        check(b"AGAGCGAGAGCGCGC");
    }

    #[test]
    fn repetitive_grammar_is_compacted() {
        let (g, _, c) = grammar(b"AGAGCGAGAGCGCGC");
        let unary = (2..c.num_nodes()).filter(|&v| c.boundaries(v).len() == 1).count();
        assert_eq!(g.num_nodes(), c.num_nodes() - unary);
        assert!(g.grammar_size() <= c.num_arcs());
        assert_eq!(g.grammar_size(), c.num_arcs() - unary);
    }

    #[test]
    fn fibonacci_grammar_stays_small() {
        let mut a = b"A".to_vec();
        let mut b = b"AB".to_vec();
        while b.len() < 4000 {
            let next = [b.clone(), a].concat();
            a = b;
            b = next;
        }
        let (g, _, _) = grammar(&b);
        assert!(g.grammar_size() < 200, "{}", g.grammar_size());
    }

    proptest! {
        #[test]
        fn reproduces_text_and_isa(s in "[ACGT]{1,60}") {
            check(s.as_bytes());
        }

        #[test]
        fn low_entropy_inputs(s in "(AB|ABA|B){1,20}") {
            check(s.as_bytes());
        }
    }
}
