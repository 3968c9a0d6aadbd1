//! Explicit `T(G)` for small DAGs, used as the reference the implicit index
//! is checked against.

use std::collections::HashMap;

use super::{OrderedDag, Telescoping};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitNode<V> {
    /// Node of `G` this tree node instantiates.
    pub dag_node: usize,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Values from the root, one per channel.
    pub values: Vec<V>,
    /// Weights of the arc from the parent, one per channel.
    pub in_weights: Vec<u64>,
    pub in_payload: Option<usize>,
    pub lo: usize,
    pub hi: usize,
}

/// `T(G)` with nodes in preorder, the root at index 0.
#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitTree<V> {
    pub nodes: Vec<ExplicitNode<V>>,
    /// Leaf `i` (1-based) is `nodes[leaf[i - 1]]`.
    pub leaf: Vec<usize>,
}

impl<V: Copy + PartialOrd> ExplicitTree<V> {
    /// Expands `dag`; fails if `T(G)` would exceed `max_nodes` nodes.
    pub fn materialize<F: Telescoping<Value = V>>(dag: &OrderedDag, f: &F, max_nodes: usize) -> Result<ExplicitTree<V>> {
        let (source, _, _) = dag.endpoints()?;
        let channels = dag.channels();
        let mut nodes: Vec<ExplicitNode<V>> = Vec::new();
        let mut leaf = Vec::new();
        nodes.push(ExplicitNode {
            dag_node: source,
            parent: None,
            children: Vec::new(),
            values: vec![f.identity(); channels],
            in_weights: vec![0; channels],
            in_payload: None,
            lo: 0,
            hi: 0,
        });
        // preorder: push out-arcs in reverse so the first one pops first
        let mut stack: Vec<(usize, usize, usize)> = dag.out(source).iter().enumerate().rev().map(|(k, _)| (0, source, k)).collect();
        if dag.out(source).is_empty() {
            leaf.push(0);
        }
        while let Some((p, v, k)) = stack.pop() {
            if nodes.len() >= max_nodes {
                return Err(Error::MalformedDag(format!("tree exceeds {max_nodes} nodes")));
            }
            let a = &dag.out(v)[k];
            let id = nodes.len();
            let values = (0..channels).map(|c| f.combine(nodes[p].values[c], f.lift(a.weights[c]))).collect();
            nodes.push(ExplicitNode {
                dag_node: a.target,
                parent: Some(p),
                children: Vec::new(),
                values,
                in_weights: a.weights.clone(),
                in_payload: Some(a.payload),
                lo: 0,
                hi: 0,
            });
            nodes[p].children.push(id);
            if dag.out(a.target).is_empty() {
                leaf.push(id);
            }
            for k2 in (0..dag.out(a.target).len()).rev() {
                stack.push((id, a.target, k2));
            }
        }
        for (i, &x) in leaf.iter().enumerate() {
            nodes[x].lo = i + 1;
            nodes[x].hi = i + 1;
        }
        for x in (0..nodes.len()).rev() {
            if let Some(&first) = nodes[x].children.first() {
                let last = *nodes[x].children.last().unwrap();
                nodes[x].lo = nodes[first].lo;
                nodes[x].hi = nodes[last].hi;
            }
        }
        Ok(ExplicitTree { nodes, leaf })
    }

    pub fn num_leaves(&self) -> usize {
        self.leaf.len()
    }

    pub fn leaf_node(&self, i: usize) -> &ExplicitNode<V> {
        &self.nodes[self.leaf[i - 1]]
    }

    fn contains(&self, x: usize, i: usize) -> bool {
        self.nodes[x].lo <= i && i <= self.nodes[x].hi
    }

    /// Index of the lowest common ancestor of leaves `i` and `j`.
    pub fn lca(&self, i: usize, j: usize) -> usize {
        let mut x = self.leaf[i - 1];
        while !self.contains(x, j) {
            x = self.nodes[x].parent.unwrap();
        }
        x
    }

    /// Highest ancestor of `lca(i, j)` whose value on `channel` is at least `k`.
    pub fn weighted_ancestor(&self, channel: usize, i: usize, j: usize, k: V) -> Option<usize> {
        let mut path = vec![self.lca(i, j)];
        while let Some(p) = self.nodes[*path.last().unwrap()].parent {
            path.push(p);
        }
        path.into_iter().rev().find(|&x| self.nodes[x].values[channel] >= k)
    }

    /// Root-to-leaf depths in arcs, per leaf.
    pub fn leaf_depths(&self) -> Vec<usize> {
        self.leaf
            .iter()
            .map(|&x| {
                let (mut d, mut y) = (0, x);
                while let Some(p) = self.nodes[y].parent {
                    d += 1;
                    y = p;
                }
                d
            })
            .collect()
    }

    /// Minimal DAG generating this tree, i.e. `G(T)`.
    pub fn canonical(&self) -> Canonical {
        canonical(0, self.nodes.len(), |x| {
            self.nodes[x]
                .children
                .iter()
                .map(|&y| (self.nodes[y].in_weights.clone(), y))
                .collect()
        })
    }
}

/// A DAG in canonical form: isomorphic subgraphs merged and nodes numbered
/// in first-visit preorder from the root. Two DAGs generate the same
/// weighted ordered tree iff their canonical forms are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub out: Vec<Vec<(Vec<u64>, usize)>>,
}

impl Canonical {
    pub fn num_nodes(&self) -> usize {
        self.out.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }
}

/// Canonical form of `dag` (payloads ignored).
pub fn canonical_dag(dag: &OrderedDag) -> Result<Canonical> {
    let (source, _, _) = dag.endpoints()?;
    Ok(canonical(source, dag.num_nodes(), |v| {
        dag.out(v).iter().map(|a| (a.weights.clone(), a.target)).collect()
    }))
}

fn canonical(root: usize, n: usize, out: impl Fn(usize) -> Vec<(Vec<u64>, usize)>) -> Canonical {
    type Key = Vec<(Vec<u64>, usize)>;
    let mut class = vec![usize::MAX; n];
    let mut classes: HashMap<Key, usize> = HashMap::new();
    let mut class_out: Vec<Key> = Vec::new();
    // iterative post-order
    let mut stack = vec![(root, false)];
    while let Some((v, expanded)) = stack.pop() {
        if class[v] != usize::MAX {
            continue;
        }
        let arcs = out(v);
        if !expanded {
            stack.push((v, true));
            for (_, t) in arcs.iter().rev() {
                if class[*t] == usize::MAX {
                    stack.push((*t, false));
                }
            }
            continue;
        }
        let key: Key = arcs.into_iter().map(|(w, t)| (w, class[t])).collect();
        let next = classes.len();
        let id = *classes.entry(key.clone()).or_insert(next);
        if id == next {
            class_out.push(key);
        }
        class[v] = id;
    }
    // renumber by preorder over classes
    let mut number = vec![usize::MAX; class_out.len()];
    let mut order = Vec::new();
    let mut stack = vec![class[root]];
    while let Some(c) = stack.pop() {
        if number[c] != usize::MAX {
            continue;
        }
        number[c] = order.len();
        order.push(c);
        for (_, t) in class_out[c].iter().rev() {
            stack.push(*t);
        }
    }
    let out = order
        .iter()
        .map(|&c| class_out[c].iter().map(|(w, t)| (w.clone(), number[*t])).collect())
        .collect();
    Canonical { out }
}
