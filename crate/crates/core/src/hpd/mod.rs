//! Heavy path decomposition of the ordered tree `T(G)` generated by a
//! single-source single-sink DAG `G`, without materializing `T(G)`.
//!
//! `G` is first expanded into a binary DAG `G'` by replacing every node of
//! out-degree `d > 2` with a chain of `d - 2` artificial nodes whose in-arcs
//! carry the identity. Every node then picks its heavy child (the one with
//! more leaves, the left one on ties); the heavy arcs form a spanning tree
//! `tau` of `G'` rooted at the sink. A root-to-leaf path of `T(G')` is a
//! sequence of heavy-path prefixes joined by light arcs, and since a light
//! arc at least halves the number of leaves below, at most `log2 N` light
//! arcs are taken. Inside one heavy path the exit point is found by binary
//! search with level-ancestor queries on `tau`.

pub mod explicit;
pub mod level;

use std::cell::Cell;
use std::fmt::Debug;

use crate::error::{check_range, Error, Result};
pub use level::{LaKind, LevelAncestor};

pub(crate) const NONE: usize = usize::MAX;

/// A group-valued path function: the value of a path is the product of
/// `lift(w)` over its arcs. `inverse` must make the product a group so that
/// path segments can be read off prefix values.
pub trait Telescoping {
    type Value: Copy + PartialEq + PartialOrd + Debug;
    fn lift(&self, weight: u64) -> Self::Value;
    fn identity(&self) -> Self::Value;
    fn combine(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn inverse(&self, a: Self::Value) -> Self::Value;
}

/// Plain weight sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Sum;

impl Telescoping for Sum {
    type Value = i64;
    #[inline]
    fn lift(&self, weight: u64) -> i64 {
        weight as i64
    }
    #[inline]
    fn identity(&self) -> i64 {
        0
    }
    #[inline]
    fn combine(&self, a: i64, b: i64) -> i64 {
        a + b
    }
    #[inline]
    fn inverse(&self, a: i64) -> i64 {
        -a
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DagArc {
    pub target: usize,
    /// One weight per channel.
    pub weights: Vec<u64>,
    /// Caller-defined label, reported for the last arc of a root-to-leaf path.
    pub payload: usize,
}

/// Ordered DAG with multi-channel arc weights; parallel arcs are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedDag {
    pub(crate) channels: usize,
    pub(crate) out: Vec<Vec<DagArc>>,
}

impl OrderedDag {
    pub fn new(num_nodes: usize, channels: usize) -> OrderedDag {
        OrderedDag {
            channels,
            out: vec![Vec::new(); num_nodes],
        }
    }

    /// Appends an arc after the existing out-arcs of `from`.
    pub fn add_arc(&mut self, from: usize, to: usize, weights: &[u64], payload: usize) {
        assert_eq!(weights.len(), self.channels, "one weight per channel");
        self.out[from].push(DagArc {
            target: to,
            weights: weights.to_vec(),
            payload,
        });
    }

    pub fn num_nodes(&self) -> usize {
        self.out.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn out(&self, v: usize) -> &[DagArc] {
        &self.out[v]
    }

    /// `(source, sink, topological order)`, or an error unless the graph is
    /// acyclic with exactly one source and one sink.
    pub fn endpoints(&self) -> Result<(usize, usize, Vec<usize>)> {
        let n = self.num_nodes();
        if n < 2 {
            return Err(Error::MalformedDag("fewer than two nodes".into()));
        }
        let mut indeg = vec![0usize; n];
        for arcs in &self.out {
            for a in arcs {
                if a.target >= n {
                    return Err(Error::MalformedDag(format!("arc to missing node {}", a.target)));
                }
                indeg[a.target] += 1;
            }
        }
        let sources: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let sinks: Vec<usize> = (0..n).filter(|&v| self.out[v].is_empty()).collect();
        if sources.len() != 1 || sinks.len() != 1 {
            return Err(Error::MalformedDag(format!(
                "{} sources and {} sinks",
                sources.len(),
                sinks.len()
            )));
        }
        let mut order = Vec::with_capacity(n);
        let mut stack = sources.clone();
        while let Some(v) = stack.pop() {
            order.push(v);
            for a in &self.out[v] {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        if order.len() != n {
            return Err(Error::MalformedDag("cycle".into()));
        }
        Ok((sources[0], sinks[0], order))
    }
}

/// Probe and light-arc counters of the queries run inside [`traced`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Trace {
    /// Level-ancestor queries, pointer hops and nodes enumerated.
    pub probes: u64,
    /// Light arcs taken, summed over all root-to-leaf descents.
    pub light_arcs: u64,
    /// Largest number of light arcs taken by one descent.
    pub max_light_arcs: u64,
}

thread_local! {
    static TRACE: Cell<Trace> = Cell::new(Trace::default());
}

#[inline]
fn probe(k: u64) {
    TRACE.with(|t| {
        let mut x = t.get();
        x.probes += k;
        t.set(x);
    });
}

#[inline]
fn record_descent(light: u64) {
    TRACE.with(|t| {
        let mut x = t.get();
        x.light_arcs += light;
        x.max_light_arcs = x.max_light_arcs.max(light);
        t.set(x);
    });
}

/// Runs `f` and returns what it computed together with the probes it made.
pub fn traced<R>(f: impl FnOnce() -> R) -> (R, Trace) {
    let saved = TRACE.with(|t| t.replace(Trace::default()));
    let r = f();
    let got = TRACE.with(|t| t.replace(saved));
    (r, got)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeafEval<V> {
    /// Path function from the root to the leaf.
    pub value: V,
    /// Payload of the last arc into the sink.
    pub payload: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeafValue<V> {
    pub value: V,
    pub payload: usize,
    /// Value at the lowest common ancestor with the previous leaf of the
    /// range; `None` for the first leaf.
    pub join: Option<V>,
}

/// A node of `T(G)`: the node of `G` it instantiates and its leaf interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeHit<V> {
    pub node: usize,
    pub value: V,
    pub lo: usize,
    pub hi: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Channel<V> {
    /// `f(P(v))`, the value of the heavy path from `v` down to the sink.
    pub(crate) count: Vec<V>,
    /// Lifted weights of the two out-arcs of every node of `G'`.
    pub(crate) arc: Vec<[V; 2]>,
}

/// Heavy path decomposition of `T(G)` with one value channel per weight channel of `G`.
#[derive(Debug, Clone, PartialEq)]
pub struct HpdIndex<F: Telescoping = Sum> {
    pub(crate) func: F,
    pub(crate) source: usize,
    pub(crate) sink: usize,
    /// Nodes `0..real_nodes` of `G'` are the nodes of `G`.
    pub(crate) real_nodes: usize,
    /// Node of `G` an artificial node belongs to (identity on real nodes).
    pub(crate) real: Vec<usize>,
    pub(crate) child: Vec<[usize; 2]>,
    /// `NONE` on arcs into artificial nodes.
    pub(crate) payload: Vec<[usize; 2]>,
    pub(crate) leaves: Vec<usize>,
    pub(crate) heavy_right: Vec<bool>,
    /// Depth in `tau`; the sink has depth 0.
    pub(crate) tdepth: Vec<usize>,
    /// Leaves hanging left (right) of `P(v)` inside the subtree of `v`.
    pub(crate) lcount: Vec<usize>,
    pub(crate) rcount: Vec<usize>,
    /// First node of `P(v)` whose light child is the left (right) one.
    pub(crate) lptr: Vec<usize>,
    pub(crate) rptr: Vec<usize>,
    /// Payload of the last arc of `P(v)`.
    pub(crate) tail: Vec<usize>,
    pub(crate) la: LevelAncestor,
    pub(crate) channels: Vec<Channel<F::Value>>,
}

impl HpdIndex<Sum> {
    pub fn new(dag: &OrderedDag) -> Result<HpdIndex<Sum>> {
        HpdIndex::build(dag, Sum, LaKind::default())
    }
}

impl<F: Telescoping> HpdIndex<F> {
    pub fn build(dag: &OrderedDag, func: F, la_kind: LaKind) -> Result<HpdIndex<F>> {
        let (source, sink, order) = dag.endpoints()?;
        let real_nodes = dag.num_nodes();
        for v in 0..real_nodes {
            if dag.out[v].len() == 1 {
                return Err(Error::CollapseRequired(v));
            }
        }

        let mut real: Vec<usize> = (0..real_nodes).collect();
        let mut child = vec![[NONE; 2]; real_nodes];
        let mut payload = vec![[NONE; 2]; real_nodes];
        // Source arc of every arc of G', per side: `NONE` on artificial arcs.
        let mut origin: Vec<[(usize, usize); 2]> = vec![[(NONE, NONE); 2]; real_nodes];
        for v in 0..real_nodes {
            let arcs = &dag.out[v];
            let d = arcs.len();
            if d == 0 {
                continue;
            }
            let mut at = v;
            for (k, a) in arcs.iter().enumerate().take(d - 2) {
                let x = real.len();
                real.push(v);
                child.push([NONE; 2]);
                payload.push([NONE; 2]);
                origin.push([(NONE, NONE); 2]);
                child[at] = [a.target, x];
                payload[at][0] = a.payload;
                origin[at][0] = (v, k);
                at = x;
            }
            child[at] = [arcs[d - 2].target, arcs[d - 1].target];
            payload[at] = [arcs[d - 2].payload, arcs[d - 1].payload];
            origin[at] = [(v, d - 2), (v, d - 1)];
        }
        let total = real.len();

        // Children before parents: artificial nodes of v follow v's chain backwards.
        let mut rev_order = Vec::with_capacity(total);
        for &v in order.iter().rev() {
            let mut chain = vec![v];
            while chain.len() < dag.out[v].len().saturating_sub(1) {
                let last = *chain.last().unwrap();
                chain.push(child[last][1]);
            }
            rev_order.extend(chain.into_iter().rev());
        }

        let mut leaves = vec![0usize; total];
        let mut heavy_right = vec![false; total];
        let mut tdepth = vec![0usize; total];
        let mut lcount = vec![0usize; total];
        let mut rcount = vec![0usize; total];
        let mut lptr = vec![NONE; total];
        let mut rptr = vec![NONE; total];
        let mut tail = vec![NONE; total];
        let mut parent = vec![sink; total];
        for &v in &rev_order {
            if v == sink {
                leaves[v] = 1;
                continue;
            }
            let [l, r] = child[v];
            leaves[v] = leaves[l]
                .checked_add(leaves[r])
                .ok_or_else(|| Error::MalformedDag("leaf count overflows".into()))?;
            let hr = leaves[r] > leaves[l];
            heavy_right[v] = hr;
            let h = if hr { r } else { l };
            parent[v] = h;
            tdepth[v] = tdepth[h] + 1;
            lcount[v] = lcount[h] + if hr { leaves[l] } else { 0 };
            rcount[v] = rcount[h] + if hr { 0 } else { leaves[r] };
            lptr[v] = if hr { v } else { lptr[h] };
            rptr[v] = if hr { rptr[h] } else { v };
            tail[v] = if h == sink { payload[v][hr as usize] } else { tail[h] };
        }

        let mut channels = Vec::with_capacity(dag.channels);
        for ch in 0..dag.channels {
            let arc: Vec<[F::Value; 2]> = origin
                .iter()
                .map(|sides| {
                    sides.map(|(v, k)| {
                        if v == NONE {
                            func.identity()
                        } else {
                            func.lift(dag.out[v][k].weights[ch])
                        }
                    })
                })
                .collect();
            let mut count = vec![func.identity(); total];
            for &v in &rev_order {
                if v != sink {
                    let side = heavy_right[v] as usize;
                    count[v] = func.combine(arc[v][side], count[child[v][side]]);
                }
            }
            channels.push(Channel { count, arc });
        }

        let la = LevelAncestor::build(la_kind, &parent, &tdepth);
        Ok(HpdIndex {
            func,
            source,
            sink,
            real_nodes,
            real,
            child,
            payload,
            leaves,
            heavy_right,
            tdepth,
            lcount,
            rcount,
            lptr,
            rptr,
            tail,
            la,
            channels,
        })
    }

    /// Number of leaves `N` of `T(G)`.
    pub fn num_leaves(&self) -> usize {
        self.leaves[self.source]
    }

    pub fn num_channels(&self) -> usize {
        self.channels.len()
    }

    /// Nodes of `G'`, artificial ones included.
    pub fn expanded_nodes(&self) -> usize {
        self.real.len()
    }

    pub fn real_nodes(&self) -> usize {
        self.real_nodes
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn la_kind(&self) -> LaKind {
        self.la.kind()
    }

    pub fn func(&self) -> &F {
        &self.func
    }

    /// Number of leaves below any instance of `v` in `T(G)`.
    pub fn leaves_below(&self, v: usize) -> usize {
        self.leaves[v]
    }

    fn channel(&self, ch: usize) -> Result<&Channel<F::Value>> {
        if ch >= self.channels.len() {
            return Err(Error::OutOfRange {
                what: "channel",
                value: ch,
                lo: 0,
                hi: self.channels.len().saturating_sub(1),
            });
        }
        Ok(&self.channels[ch])
    }

    /// `f` of the heavy-path segment from `u` down to `h` on `P(u)`.
    #[inline]
    fn seg(&self, c: &Channel<F::Value>, u: usize, h: usize) -> F::Value {
        self.func.combine(c.count[u], self.func.inverse(c.count[h]))
    }

    #[inline]
    fn light_side(&self, h: usize) -> usize {
        if self.heavy_right[h] {
            0
        } else {
            1
        }
    }

    /// Leaves of `child[h][side]` preceding it among `h`'s leaves.
    #[inline]
    fn side_offset(&self, h: usize, side: usize) -> usize {
        if side == 1 {
            self.leaves[self.child[h][0]]
        } else {
            0
        }
    }

    /// Largest `j` such that the node `h_j`, `j` steps down `P(u)`, has
    /// leaf `i` (relative to `u`) below it; returns `(j, h_j)`.
    #[inline]
    fn exit(&self, u: usize, i: usize) -> (usize, usize) {
        self.exit_both(u, i, i)
    }

    /// As [`Self::exit`] for the last node holding both leaves `i <= j`.
    fn exit_both(&self, u: usize, i: usize, j: usize) -> (usize, usize) {
        let inside = |h: usize| {
            let left = self.lcount[u] - self.lcount[h];
            let right = self.rcount[u] - self.rcount[h];
            left < i && j <= self.leaves[u] - right
        };
        let (h, probes) = self.la.highest(u, inside);
        probe(probes);
        (self.tdepth[u] - self.tdepth[h], h)
    }

    /// Whether leaves `i` and `j` of `h` (relative to it) both sit below its
    /// light child, i.e. leave `P(h)` together.
    #[inline]
    fn both_light(&self, h: usize, i: usize, j: usize) -> bool {
        let nl = self.leaves[self.child[h][0]];
        if self.heavy_right[h] {
            j <= nl
        } else {
            i > nl
        }
    }

    /// `f` from the root to leaf `i` and the payload of the leaf's in-arc.
    pub fn leaf_eval(&self, ch: usize, i: usize) -> Result<LeafEval<F::Value>> {
        let c = self.channel(ch)?;
        check_range("leaf", i, 1, self.num_leaves())?;
        let f = &self.func;
        let (mut u, mut rel, mut acc, mut incoming, mut light) = (self.source, i, f.identity(), NONE, 0);
        loop {
            let (j, h) = self.exit(u, rel);
            acc = f.combine(acc, self.seg(c, u, h));
            if h == self.sink {
                record_descent(light);
                let payload = if j > 0 { self.tail[u] } else { incoming };
                return Ok(LeafEval { value: acc, payload });
            }
            rel -= self.lcount[u] - self.lcount[h];
            let side = self.light_side(h);
            rel -= self.side_offset(h, side);
            acc = f.combine(acc, c.arc[h][side]);
            incoming = self.payload[h][side];
            u = self.child[h][side];
            light += 1;
        }
    }

    /// Follows leaves `i <= j` down together until they part. Returns the
    /// parting node of `G'`, its value, its first leaf (0-based) and the
    /// positions of `i` and `j` relative to it.
    fn split(&self, c: &Channel<F::Value>, i: usize, j: usize) -> (usize, F::Value, usize, usize, usize) {
        let f = &self.func;
        let (mut u, mut ri, mut rj, mut off, mut acc, mut light) = (self.source, i, j, 0, f.identity(), 0);
        loop {
            let (_, h) = self.exit_both(u, ri, rj);
            acc = f.combine(acc, self.seg(c, u, h));
            let shift = self.lcount[u] - self.lcount[h];
            off += shift;
            ri -= shift;
            rj -= shift;
            if h == self.sink || !self.both_light(h, ri, rj) {
                record_descent(light);
                return (h, acc, off, ri, rj);
            }
            let side = self.light_side(h);
            let s = self.side_offset(h, side);
            off += s;
            ri -= s;
            rj -= s;
            acc = f.combine(acc, c.arc[h][side]);
            u = self.child[h][side];
            light += 1;
        }
    }

    /// Maps a node of `G'` and its first leaf to the `T(G)` node it stands for.
    fn hit(&self, g: usize, value: F::Value, off: usize) -> NodeHit<F::Value> {
        let node = self.real[g];
        let hi = off + self.leaves[g];
        NodeHit {
            node,
            value,
            lo: hi - self.leaves[node] + 1,
            hi,
        }
    }

    /// Lowest common ancestor of leaves `i` and `j` in `T(G)`.
    pub fn lca_map(&self, ch: usize, i: usize, j: usize) -> Result<NodeHit<F::Value>> {
        let c = self.channel(ch)?;
        let n = self.num_leaves();
        check_range("leaf", i, 1, n)?;
        check_range("leaf", j, 1, n)?;
        let (i, j) = (i.min(j), i.max(j));
        let (g, value, off, _, _) = self.split(c, i, j);
        Ok(self.hit(g, value, off))
    }

    /// Highest ancestor of `lca(i, j)` whose value is at least `k`, or `None`
    /// when even `lca(i, j)` stays below `k`. Values must not decrease
    /// downwards, i.e. lifted weights are at least the identity.
    pub fn weighted_ancestor(
        &self,
        ch: usize,
        i: usize,
        j: usize,
        k: F::Value,
    ) -> Result<Option<NodeHit<F::Value>>> {
        let c = self.channel(ch)?;
        let n = self.num_leaves();
        check_range("leaf", i, 1, n)?;
        check_range("leaf", j, 1, n)?;
        let (i, j) = (i.min(j), i.max(j));
        let f = &self.func;
        let (mut u, mut ri, mut rj, mut off, mut acc, mut light) = (self.source, i, j, 0, f.identity(), 0);
        if acc >= k {
            return Ok(Some(self.hit(u, acc, 0)));
        }
        loop {
            let (_, h) = self.exit_both(u, ri, rj);
            let at_h = f.combine(acc, self.seg(c, u, h));
            if at_h >= k {
                // last node of P(u) still below k; values only grow down the path
                let (w, probes) = self.la.highest(u, |x| f.combine(acc, self.seg(c, u, x)) < k);
                probe(probes);
                let best = self.child[w][self.heavy_right[w] as usize];
                record_descent(light);
                let value = f.combine(acc, self.seg(c, u, best));
                let shift = self.lcount[u] - self.lcount[best];
                return Ok(Some(self.hit(best, value, off + shift)));
            }
            let shift = self.lcount[u] - self.lcount[h];
            if h == self.sink || !self.both_light(h, ri - shift, rj - shift) {
                record_descent(light);
                return Ok(None);
            }
            let side = self.light_side(h);
            let s = shift + self.side_offset(h, side);
            off += s;
            ri -= s;
            rj -= s;
            acc = f.combine(at_h, c.arc[h][side]);
            u = self.child[h][side];
            light += 1;
            if acc >= k {
                record_descent(light);
                return Ok(Some(self.hit(u, acc, off)));
            }
        }
    }

    /// Values of leaves `i..=j`, left to right, each with its payload and the
    /// value at its lowest common ancestor with the previous leaf.
    pub fn range_eval(&self, ch: usize, i: usize, j: usize) -> Result<Vec<LeafValue<F::Value>>> {
        let c = self.channel(ch)?;
        let n = self.num_leaves();
        check_range("leaf", i, 1, n)?;
        check_range("leaf", j, 1, n)?;
        if i > j {
            return Err(Error::InvalidRange { start: i, end: j });
        }
        let mut out = Vec::with_capacity(j - i + 1);
        if i == j {
            let e = self.leaf_eval(ch, i)?;
            out.push(LeafValue {
                value: e.value,
                payload: e.payload,
                join: None,
            });
            return Ok(out);
        }
        let f = &self.func;
        let (x, acc, _, ri, rj) = self.split(c, i, j);
        let [l, r] = self.child[x];
        let nl = self.leaves[l];
        self.suffix(c, l, ri, f.combine(acc, c.arc[x][0]), self.payload[x][0], None, &mut out);
        self.prefix(c, r, rj - nl, f.combine(acc, c.arc[x][1]), self.payload[x][1], Some(acc), &mut out);
        Ok(out)
    }

    /// Emits leaves `s..` of `u`'s subtree.
    #[allow(clippy::too_many_arguments)]
    fn suffix(
        &self,
        c: &Channel<F::Value>,
        u: usize,
        s: usize,
        acc: F::Value,
        incoming: usize,
        join: Option<F::Value>,
        out: &mut Vec<LeafValue<F::Value>>,
    ) {
        let f = &self.func;
        let (m, h) = self.exit(u, s);
        // nodes above h on P(u) whose right child is light, top-down
        let mut hang = Vec::new();
        let mut x = self.rptr[u];
        while x != NONE && self.tdepth[x] > self.tdepth[h] {
            probe(1);
            hang.push(x);
            x = self.rptr[self.child[x][0]];
        }
        let at_h = f.combine(acc, self.seg(c, u, h));
        if h == self.sink {
            let payload = if m > 0 { self.tail[u] } else { incoming };
            out.push(LeafValue { value: at_h, payload, join });
        } else {
            let rel = s - (self.lcount[u] - self.lcount[h]);
            let [l, r] = self.child[h];
            if self.heavy_right[h] {
                self.suffix(c, l, rel, f.combine(at_h, c.arc[h][0]), self.payload[h][0], join, out);
                self.full(c, r, f.combine(at_h, c.arc[h][1]), self.payload[h][1], Some(at_h), out);
            } else {
                let nl = self.leaves[l];
                self.suffix(c, r, rel - nl, f.combine(at_h, c.arc[h][1]), self.payload[h][1], join, out);
            }
        }
        for &x in hang.iter().rev() {
            let at_x = f.combine(acc, self.seg(c, u, x));
            self.full(c, self.child[x][1], f.combine(at_x, c.arc[x][1]), self.payload[x][1], Some(at_x), out);
        }
    }

    /// Emits leaves `..=e` of `u`'s subtree.
    #[allow(clippy::too_many_arguments)]
    fn prefix(
        &self,
        c: &Channel<F::Value>,
        u: usize,
        e: usize,
        acc: F::Value,
        incoming: usize,
        mut join: Option<F::Value>,
        out: &mut Vec<LeafValue<F::Value>>,
    ) {
        let f = &self.func;
        let (m, h) = self.exit(u, e);
        let mut x = self.lptr[u];
        while x != NONE && self.tdepth[x] > self.tdepth[h] {
            probe(1);
            let at_x = f.combine(acc, self.seg(c, u, x));
            self.full(c, self.child[x][0], f.combine(at_x, c.arc[x][0]), self.payload[x][0], join, out);
            join = Some(at_x);
            x = self.lptr[self.child[x][1]];
        }
        let at_h = f.combine(acc, self.seg(c, u, h));
        if h == self.sink {
            let payload = if m > 0 { self.tail[u] } else { incoming };
            out.push(LeafValue { value: at_h, payload, join });
            return;
        }
        let rel = e - (self.lcount[u] - self.lcount[h]);
        let [l, r] = self.child[h];
        if self.heavy_right[h] {
            self.prefix(c, l, rel, f.combine(at_h, c.arc[h][0]), self.payload[h][0], join, out);
        } else {
            self.full(c, l, f.combine(at_h, c.arc[h][0]), self.payload[h][0], join, out);
            let nl = self.leaves[l];
            self.prefix(c, r, rel - nl, f.combine(at_h, c.arc[h][1]), self.payload[h][1], Some(at_h), out);
        }
    }

    /// Emits every leaf below `u`.
    fn full(
        &self,
        c: &Channel<F::Value>,
        u: usize,
        acc: F::Value,
        incoming: usize,
        join: Option<F::Value>,
        out: &mut Vec<LeafValue<F::Value>>,
    ) {
        let f = &self.func;
        let mut stack = vec![(u, acc, incoming, join)];
        while let Some((v, a, p, jn)) = stack.pop() {
            probe(1);
            if v == self.sink {
                out.push(LeafValue {
                    value: a,
                    payload: p,
                    join: jn,
                });
                continue;
            }
            let [l, r] = self.child[v];
            stack.push((r, f.combine(a, c.arc[v][1]), self.payload[v][1], Some(a)));
            stack.push((l, f.combine(a, c.arc[v][0]), self.payload[v][0], jn));
        }
    }
}

/// Random single-source single-sink DAG with every non-sink node of
/// out-degree at least 2, nodes in topological order `0..k` (source 0, sink
/// `k - 1`). `next(b)` must return a uniform value in `0..b`.
/// Rejection-samples until the arc count fits `max_arcs`.
pub fn random_dag(
    next: &mut impl FnMut(usize) -> usize,
    max_nodes: usize,
    max_arcs: usize,
    max_weight: u64,
    channels: usize,
) -> OrderedDag {
    assert!(max_nodes >= 2 && max_arcs >= 2 * (max_nodes - 1), "arc budget too small");
    loop {
        let k = 2 + next(max_nodes - 1);
        let mut arcs: Vec<Vec<usize>> = vec![Vec::new(); k];
        for v in 1..k {
            let u = next(v);
            arcs[u].push(v);
        }
        for u in 0..k - 1 {
            while arcs[u].len() < 2 {
                let v = u + 1 + next(k - 1 - u);
                arcs[u].push(v);
            }
        }
        let mut total: usize = arcs.iter().map(Vec::len).sum();
        if total > max_arcs {
            continue;
        }
        let extra = next(max_arcs - total + 1);
        for _ in 0..extra {
            let u = next(k - 1);
            let v = u + 1 + next(k - 1 - u);
            arcs[u].push(v);
            total += 1;
        }
        let mut dag = OrderedDag::new(k, channels);
        let mut id = 0;
        for (u, targets) in arcs.iter_mut().enumerate() {
            // Fisher-Yates so the first arc is not always the tree arc
            for a in (1..targets.len()).rev() {
                let b = next(a + 1);
                targets.swap(a, b);
            }
            for &v in targets.iter() {
                let w: Vec<u64> = (0..channels).map(|_| next(max_weight as usize + 1) as u64).collect();
                dag.add_arc(u, v, &w, id);
                id += 1;
            }
        }
        debug_assert_eq!(dag.num_arcs(), total);
        return dag;
    }
}

#[cfg(test)]
mod tests;
