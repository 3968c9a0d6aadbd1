//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::thread;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cdawg_cst::corpus::{self, all_strings};
use cdawg_cst::hpd::explicit::ExplicitTree;
use cdawg_cst::hpd::{random_dag, HpdIndex, OrderedDag, Sum};
use cdawg_cst::probe;
use cdawg_cst::verify::{self, Coverage, Report};
use cdawg_cst::{traced, Cst, CstOptions, LaKind, Mode, OracleIndex, Text};

const MODES: [Mode; 2] = [Mode::Full, Mode::Lite];
const SAMPLED: Coverage = Coverage::Sampled { queries: 1000, seed: 42 };

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn describe(r: &Report) -> String {
    match r.mismatches.first() {
        None => format!("{} checks, 0 mismatches", r.checks),
        Some(m) => format!("{} checks, {} mismatches; first: {m}", r.checks, r.failures),
    }
}

/// Splits `items` across the available cores; each worker folds its share
/// into its own pair of reports (oracle checks, structural checks).
fn parallel<T: Sync>(items: &[T], work: impl Fn(&T, &mut [Report; 2]) + Sync) -> [Report; 2] {
    let workers = thread::available_parallelism().map_or(1, |k| k.get()).min(items.len().max(1));
    let mut total = [Report::default(), Report::default()];
    thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let work = &work;
                s.spawn(move || {
                    let mut r = [Report::default(), Report::default()];
                    for item in items.iter().skip(w).step_by(workers) {
                        work(item, &mut r);
                    }
                    r
                })
            })
            .collect();
        for h in handles {
            let [a, b] = h.join().expect("worker panicked");
            total[0].merge(a);
            total[1].merge(b);
        }
    });
    total
}

fn structural_into(cst: &Cst, oracle: &OracleIndex, raw: &[u8], r: &mut Report) {
    r.checks += 1;
    for line in verify::structural(cst, oracle) {
        r.failures += 1;
        if r.mismatches.len() < 20 {
            r.mismatches.push(verify::Mismatch {
                op: "structural",
                args: String::from_utf8_lossy(raw).into_owned(),
                expected: "no violation".into(),
                got: line,
            });
        }
    }
}

/// Every string of length at most 12 over three letters; the two-letter
/// strings are the ones avoiding `c`, so both alphabets are covered.
/// Structural properties are checked on the same strings.
fn exhaustive(structural: &mut Report) -> Outcome {
    let strings: Vec<Vec<u8>> = all_strings(b"abc", 12).collect();
    let binary = strings.iter().filter(|s| !s.contains(&b'c')).count();
    let [r, s] = parallel(&strings, |raw, [r, s]| {
        let text = Text::normalize(raw).expect("nonempty");
        let oracle = OracleIndex::build(&text);
        for mode in MODES {
            let cst = Cst::build(&text, mode).expect("build");
            if mode == Mode::Full {
                structural_into(&cst, &oracle, raw, s);
            }
            r.merge(verify::verify(&cst, &oracle, Coverage::Exhaustive));
        }
    });
    structural.merge(s);
    outcome(r.is_ok(), format!("{} strings ({binary} binary), both modes, {}", strings.len(), describe(&r)))
}

fn random_suite() -> Vec<Vec<u8>> {
    corpus::random_strings(2024, 200, 200, 4, b"abcd")
}

fn randomized(structural: &mut Report) -> Outcome {
    let strings = random_suite();
    let [r, s] = parallel(&strings, |raw, [r, s]| {
        let text = Text::normalize(raw).expect("nonempty");
        let oracle = OracleIndex::build(&text);
        for mode in MODES {
            let cst = Cst::build(&text, mode).expect("build");
            if mode == Mode::Full {
                structural_into(&cst, &oracle, raw, s);
            }
            r.merge(verify::verify(&cst, &oracle, SAMPLED));
        }
    });
    structural.merge(s);
    outcome(r.is_ok(), format!("{} strings, both modes, {}", strings.len(), describe(&r)))
}

fn fibonacci_prefixes() -> Vec<Vec<u8>> {
    // the separator makes n one longer than the raw prefix
    (7..=14).map(|k| corpus::fibonacci((1 << k) - 1)).collect()
}

fn complexity(structural: &mut Report) -> Outcome {
    const C: u64 = 8;
    const TIGHT: [&str; 3] = ["selectLeaf", "isa", "lca"];
    let mut pass = true;
    let mut ratios = Vec::new();
    let mut worst = 0.0f64;
    for raw in fibonacci_prefixes() {
        let text = Text::normalize(&raw).expect("nonempty");
        let cst = Cst::build(&text, Mode::Full).expect("build");
        let n = cst.n();
        assert!(n.is_power_of_two());
        let bound = probe::bound(C, n);
        for row in probe::measure(&cst, 500, 7).expect("measure") {
            if !TIGHT.contains(&row.op) {
                continue;
            }
            worst = worst.max(row.max as f64 / bound);
            if row.max as f64 > bound {
                pass = false;
                eprintln!("{} at n={n}: {} probes > {bound:.0}", row.op, row.max);
            }
        }
        ratios.push(cst.cdawg().num_arcs() as f64 / n as f64);
        if n <= 1 << 11 {
            structural_into(&cst, &OracleIndex::build(&text), &raw, structural);
        }
    }
    let decreasing = ratios.windows(2).all(|w| w[1] < w[0]);
    let shown: Vec<String> = ratios.iter().map(|x| format!("{x:.3}")).collect();
    outcome(
        pass && decreasing,
        format!(
            "c={C}, n=2^7..2^14, max probes/bound {worst:.2}, e_T/n [{}]{}",
            shown.join(", "),
            if decreasing { "" } else { " not decreasing" }
        ),
    )
}

fn dag_from_seed(seed: u64) -> OrderedDag {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_dag(&mut |b| rng.gen_range(0..b), 8, 16, 8, 2)
}

/// Compares one DAG against its expanded tree; returns the first difference.
fn hpd_case(dag: &OrderedDag, kind: LaKind, checks: &mut u64) -> Result<(), String> {
    let tree = ExplicitTree::materialize(dag, &Sum, 1 << 20).map_err(|e| e.to_string())?;
    let idx = HpdIndex::build(dag, Sum, kind).map_err(|e| e.to_string())?;
    let n = tree.num_leaves();
    let light = (usize::BITS - n.leading_zeros() - 1) as u64 + 1;
    let mut expect = |ok: bool, what: String| {
        *checks += 1;
        if ok {
            Ok(())
        } else {
            Err(what)
        }
    };
    for ch in 0..dag.channels() {
        for i in 1..=n {
            let (e, t) = traced(|| idx.leaf_eval(ch, i));
            let e = e.map_err(|e| e.to_string())?;
            let leaf = tree.leaf_node(i);
            expect(e.value == leaf.values[ch] && Some(e.payload) == leaf.in_payload, format!("leafEval {i}"))?;
            expect(t.max_light_arcs <= light, format!("leafEval {i}: {} light arcs", t.max_light_arcs))?;
        }
        for i in 1..=n {
            for j in i..=n {
                let want = &tree.nodes[tree.lca(i, j)];
                let (got, t) = traced(|| idx.lca_map(ch, i, j));
                let got = got.map_err(|e| e.to_string())?;
                expect(
                    (got.node, got.value, got.lo, got.hi) == (want.dag_node, want.values[ch], want.lo, want.hi),
                    format!("lcaMap {i} {j}"),
                )?;
                expect(t.max_light_arcs <= light, format!("lcaMap {i} {j}: {} light arcs", t.max_light_arcs))?;

                let (range, t) = traced(|| idx.range_eval(ch, i, j));
                let range = range.map_err(|e| e.to_string())?;
                let same = range.len() == j - i + 1
                    && range.iter().enumerate().all(|(k, lv)| {
                        let r = i + k;
                        let join = (k > 0).then(|| tree.nodes[tree.lca(r - 1, r)].values[ch]);
                        lv.value == tree.leaf_node(r).values[ch]
                            && Some(lv.payload) == tree.leaf_node(r).in_payload
                            && lv.join == join
                    });
                expect(same, format!("rangeEval {i} {j}"))?;
                expect(t.max_light_arcs <= light, format!("rangeEval {i} {j}: {} light arcs", t.max_light_arcs))?;

                for k in 0..=want.values[ch] + 1 {
                    let (got, t) = traced(|| idx.weighted_ancestor(ch, i, j, k));
                    let got = got.map_err(|e| e.to_string())?.map(|h| (h.node, h.value, h.lo, h.hi));
                    let want = tree.weighted_ancestor(ch, i, j, k).map(|x| {
                        let node = &tree.nodes[x];
                        (node.dag_node, node.values[ch], node.lo, node.hi)
                    });
                    expect(got == want, format!("weightedAncestor {i} {j} {k}"))?;
                    expect(t.max_light_arcs <= light, format!("weightedAncestor {i} {j} {k}: light arcs"))?;
                }
            }
        }
    }
    Ok(())
}

fn hpd_suite() -> Outcome {
    let mut checks = 0;
    let mut failed = Vec::new();
    for seed in 0..500 {
        let dag = dag_from_seed(seed);
        for kind in [LaKind::BinaryLifting, LaKind::Ladder] {
            if let Err(what) = hpd_case(&dag, kind, &mut checks) {
                failed.push(format!("seed {seed} {kind:?}: {what}"));
            }
        }
    }
    let detail = match failed.first() {
        None => format!("500 DAGs, both level-ancestor kinds, {checks} checks, 0 mismatches"),
        Some(first) => format!("{} failing DAGs; first: {first}", failed.len()),
    };
    outcome(failed.is_empty(), detail)
}

fn serialization() -> Outcome {
    let mut inputs: Vec<Vec<u8>> = vec![b"AGAGCGAGAGCGCGC".to_vec(), b"mississippi".to_vec()];
    inputs.extend(random_suite());
    inputs.extend(fibonacci_prefixes().into_iter().take(4));
    let [r, _] = parallel(&inputs, |raw, [r, _]| {
        let text = Text::normalize(raw).expect("nonempty");
        let oracle = OracleIndex::build(&text);
        for mode in MODES {
            for level_ancestor in [LaKind::BinaryLifting, LaKind::Ladder] {
                let cst = Cst::build_with(&text, CstOptions { mode, level_ancestor }).expect("build");
                let bytes = cst.to_bytes();
                r.checks += 1;
                let back = match Cst::from_bytes(&bytes) {
                    Ok(back) => back,
                    Err(e) => {
                        r.failures += 1;
                        eprintln!("load failed for {}: {e}", String::from_utf8_lossy(raw));
                        continue;
                    }
                };
                if back.to_bytes() != bytes {
                    r.failures += 1;
                    eprintln!("re-save differs for {}", String::from_utf8_lossy(raw));
                }
                let before = verify::verify(&cst, &oracle, SAMPLED);
                let after = verify::verify(&back, &oracle, SAMPLED);
                if before != after {
                    r.failures += 1;
                    eprintln!("answers differ after load for {}", String::from_utf8_lossy(raw));
                }
                r.merge(after);
            }
        }
    });
    outcome(r.is_ok(), format!("{} inputs, both modes and level-ancestor kinds, {}", inputs.len(), describe(&r)))
}

fn main() -> ExitCode {
    let mut structural = Report::default();
    let mut results: Vec<(&str, Outcome, f64)> = Vec::new();
    let mut run = |name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let o = f();
        let secs = t.elapsed().as_secs_f64();
        println!("{} {name}: {} ({secs:.1}s)", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        results.push((name, o, secs));
    };
    run("C1 exhaustive oracle equivalence", &mut || exhaustive(&mut structural));
    run("C2 randomized oracle equivalence", &mut || randomized(&mut structural));
    run("C4 probe bound and e_T/n trend", &mut || complexity(&mut structural));
    run("C5 heavy path decomposition suite", &mut hpd_suite);
    run("C6 serialization round trip", &mut serialization);
    run("C3 structural properties", &mut || {
        outcome(structural.is_ok(), format!("{} test strings, {}", structural.checks, describe(&structural)))
    });
    let failed = results.iter().filter(|(_, o, _)| !o.pass).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
