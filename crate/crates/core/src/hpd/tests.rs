use super::explicit::{canonical_dag, ExplicitTree};
use super::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Products of unimodular 2x2 matrices: a non-commutative group, so segment
/// values are only right if composed in path order.
#[derive(Debug, Clone, Copy)]
struct Unimodular;

impl Telescoping for Unimodular {
    type Value = [i128; 4];
    fn lift(&self, w: u64) -> [i128; 4] {
        let w = w as i128;
        [1 + w, w, 1, 1]
    }
    fn identity(&self) -> [i128; 4] {
        [1, 0, 0, 1]
    }
    fn combine(&self, a: [i128; 4], b: [i128; 4]) -> [i128; 4] {
        [
            a[0] * b[0] + a[1] * b[2],
            a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3],
        ]
    }
    fn inverse(&self, a: [i128; 4]) -> [i128; 4] {
        [a[3], -a[1], -a[2], a[0]]
    }
}

fn dag_from_seed(seed: u64, max_nodes: usize, max_arcs: usize) -> OrderedDag {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_dag(&mut |b| rng.gen_range(0..b), max_nodes, max_arcs, 8, 2)
}

fn check_against_tree<F: Telescoping>(dag: &OrderedDag, f: F, kind: LaKind) {
    let tree = ExplicitTree::materialize(dag, &f, 1 << 20).unwrap();
    let idx = HpdIndex::build(dag, f, kind).unwrap();
    let n = tree.num_leaves();
    assert_eq!(idx.num_leaves(), n);
    let log = usize::BITS - n.leading_zeros() - 1;
    for ch in 0..dag.channels() {
        for i in 1..=n {
            let (e, trace) = traced(|| idx.leaf_eval(ch, i).unwrap());
            let leaf = tree.leaf_node(i);
            assert_eq!(e.value, leaf.values[ch], "leaf {i}");
            assert_eq!(Some(e.payload), leaf.in_payload);
            assert!(trace.max_light_arcs <= log as u64 + 1);
        }
        for i in 1..=n {
            for j in i..=n {
                let want = &tree.nodes[tree.lca(i, j)];
                let got = idx.lca_map(ch, i, j).unwrap();
                assert_eq!((got.node, got.lo, got.hi), (want.dag_node, want.lo, want.hi), "lca {i} {j}");
                assert_eq!(got.value, want.values[ch]);
                assert_eq!(idx.lca_map(ch, j, i).unwrap(), got);

                let range = idx.range_eval(ch, i, j).unwrap();
                assert_eq!(range.len(), j - i + 1);
                for (t, lv) in range.iter().enumerate() {
                    let r = i + t;
                    assert_eq!(lv.value, tree.leaf_node(r).values[ch]);
                    assert_eq!(Some(lv.payload), tree.leaf_node(r).in_payload);
                    let join = (t > 0).then(|| tree.nodes[tree.lca(r - 1, r)].values[ch]);
                    assert_eq!(lv.join, join);
                }
            }
        }
    }
}

fn check_weighted(dag: &OrderedDag, kind: LaKind) {
    let tree = ExplicitTree::materialize(dag, &Sum, 1 << 20).unwrap();
    let idx = HpdIndex::build(dag, Sum, kind).unwrap();
    let n = tree.num_leaves();
    for ch in 0..dag.channels() {
        for i in 1..=n {
            for j in i..=n {
                let top = tree.nodes[tree.lca(i, j)].values[ch];
                for k in 0..=top + 1 {
                    let got = idx.weighted_ancestor(ch, i, j, k).unwrap();
                    let want = tree.weighted_ancestor(ch, i, j, k).map(|x| {
                        let node = &tree.nodes[x];
                        (node.dag_node, node.values[ch], node.lo, node.hi)
                    });
                    assert_eq!(got.map(|h| (h.node, h.value, h.lo, h.hi)), want, "wa {i} {j} {k}");
                }
            }
        }
    }
}

#[test]
fn random_dags_match_explicit_tree() {
    for seed in 0..60 {
        let dag = dag_from_seed(seed, 8, 16);
        for kind in [LaKind::BinaryLifting, LaKind::Ladder] {
            check_against_tree(&dag, Sum, kind);
            check_weighted(&dag, kind);
        }
        check_against_tree(&dag, Unimodular, LaKind::BinaryLifting);
    }
}

#[test]
fn tree_of_the_dag_collapses_back() {
    for seed in 0..100 {
        let dag = dag_from_seed(seed, 8, 16);
        let tree = ExplicitTree::materialize(&dag, &Sum, 1 << 20).unwrap();
        assert_eq!(tree.canonical(), canonical_dag(&dag).unwrap());
    }
}

#[test]
fn expansion_adds_out_degree_minus_two() {
    let mut dag = OrderedDag::new(3, 1);
    for k in 0..4 {
        dag.add_arc(0, 1, &[k], k as usize);
    }
    dag.add_arc(0, 2, &[7], 4);
    dag.add_arc(1, 2, &[1], 5);
    dag.add_arc(1, 2, &[2], 6);
    let idx = HpdIndex::new(&dag).unwrap();
    assert_eq!(idx.expanded_nodes(), 3 + 3);
    assert_eq!(idx.num_leaves(), 9);
    let vals: Vec<i64> = idx.range_eval(0, 1, 9).unwrap().iter().map(|l| l.value).collect();
    assert_eq!(vals, vec![1, 2, 2, 3, 3, 4, 4, 5, 7]);
    // an lca landing on an artificial node reports the real one
    let hit = idx.lca_map(0, 3, 9).unwrap();
    assert_eq!((hit.node, hit.lo, hit.hi, hit.value), (0, 1, 9, 0));
}

#[test]
fn malformed_inputs_are_rejected() {
    let mut one = OrderedDag::new(3, 1);
    one.add_arc(0, 1, &[1], 0);
    one.add_arc(0, 2, &[1], 1);
    one.add_arc(1, 2, &[1], 2);
    assert_eq!(HpdIndex::new(&one).unwrap_err(), Error::CollapseRequired(1));

    let mut two_sources = OrderedDag::new(3, 1);
    two_sources.add_arc(0, 2, &[1], 0);
    two_sources.add_arc(1, 2, &[1], 1);
    assert!(matches!(HpdIndex::new(&two_sources), Err(Error::MalformedDag(_))));

    let mut cyclic = OrderedDag::new(4, 1);
    cyclic.add_arc(0, 1, &[1], 0);
    cyclic.add_arc(0, 3, &[1], 1);
    cyclic.add_arc(1, 2, &[1], 2);
    cyclic.add_arc(1, 3, &[1], 3);
    cyclic.add_arc(2, 1, &[1], 4);
    cyclic.add_arc(2, 3, &[1], 5);
    assert!(matches!(HpdIndex::new(&cyclic), Err(Error::MalformedDag(_))));

    let idx = HpdIndex::new(&dag_from_seed(1, 5, 10)).unwrap();
    let n = idx.num_leaves();
    assert!(idx.leaf_eval(0, 0).is_err());
    assert!(idx.leaf_eval(0, n + 1).is_err());
    assert!(idx.leaf_eval(2, 1).is_err());
    assert!(matches!(idx.range_eval(0, 2, 1), Err(Error::InvalidRange { .. })));
}

#[test]
fn light_arcs_stay_logarithmic_on_a_deep_comb() {
    // node v -> v + 1 twice: T(G) is a complete binary tree of depth d
    let d = 20;
    let mut dag = OrderedDag::new(d + 1, 1);
    for v in 0..d {
        dag.add_arc(v, v + 1, &[1], 2 * v);
        dag.add_arc(v, v + 1, &[2], 2 * v + 1);
    }
    let idx = HpdIndex::new(&dag).unwrap();
    assert_eq!(idx.num_leaves(), 1 << d);
    for i in [1, 2, 12345, 1 << 19, (1 << d) - 1, 1 << d] {
        let (e, t) = traced(|| idx.leaf_eval(0, i).unwrap());
        // bit b of i - 1 chooses the weight-2 arc at level b
        let want = d as i64 + (i - 1).count_ones() as i64;
        assert_eq!(e.value, want);
        assert!(t.max_light_arcs <= d as u64 + 1);
        assert!(t.probes <= ((d + 1) * (d + 1)) as u64 * 2);
    }
}

proptest! {
    #[test]
    fn range_eval_matches_pointwise(seed in 0u64..10_000, a in 1usize..200, b in 1usize..200) {
        let dag = dag_from_seed(seed, 7, 14);
        let idx = HpdIndex::build(&dag, Sum, LaKind::Ladder).unwrap();
        let n = idx.num_leaves();
        let (i, j) = ((a - 1) % n + 1, (b - 1) % n + 1);
        let (i, j) = (i.min(j), i.max(j));
        let range = idx.range_eval(1, i, j).unwrap();
        for (t, lv) in range.iter().enumerate() {
            let e = idx.leaf_eval(1, i + t).unwrap();
            prop_assert_eq!((lv.value, lv.payload), (e.value, e.payload));
            if t > 0 {
                prop_assert_eq!(lv.join, Some(idx.lca_map(1, i + t - 1, i + t).unwrap().value));
            }
        }
    }
}
