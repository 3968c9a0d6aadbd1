use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cdawg_cst::{Cst, Mode, NodeId, Text};
use tempfile::TempDir;

const REPEATS: &[u8] = b"AGAGCGAGAGCGCGC";

fn cdcst(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdcst")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Fixture {
        Fixture {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str, bytes: &[u8]) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, bytes).unwrap();
        p
    }

    fn build(&self, name: &str, text: &[u8], extra: &[&str]) -> (PathBuf, Output) {
        let input = self.file(&format!("{name}.txt"), text);
        let index = self.dir.path().join(format!("{name}.idx"));
        let mut args = vec!["build", s(&input), s(&index)];
        args.extend_from_slice(extra);
        let out = cdcst(&args);
        assert!(out.status.success(), "{}", stderr(&out));
        (index, out)
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn query(index: &Path, op: &str, args: &[&str]) -> Output {
    let mut all = vec!["query", s(index), op];
    all.extend_from_slice(args);
    cdcst(&all)
}

fn answer(index: &Path, op: &str, args: &[&str]) -> Vec<String> {
    let out = query(index, op, args);
    assert!(out.status.success(), "{op} {args:?}: {}", stderr(&out));
    stdout(&out).lines().map(str::to_string).collect()
}

#[test]
fn build_reports_sizes_and_is_deterministic() {
    let fx = Fixture::new();
    let (ab, out) = fx.build("ab", b"AB", &[]);
    let line = stderr(&out);
    assert!(line.contains("n=3 ") && line.contains("e_T=3 "), "{line}");

    let (first_path, out) = fx.build("repeats", REPEATS, &[]);
    assert!(stderr(&out).contains("n=16 "));
    let first = std::fs::read(&first_path).unwrap();
    fx.build("repeats", REPEATS, &[]);
    assert_eq!(std::fs::read(&first_path).unwrap(), first);
    assert_ne!(std::fs::read(&ab).unwrap(), first);
}

#[test]
fn repetitive_text_queries() {
    let fx = Fixture::new();
    let (idx, _) = fx.build("repeats", REPEATS, &[]);
    assert_eq!(answer(&idx, "extract", &["1:4"]), ["AGAG"]);
    assert_eq!(answer(&idx, "isa", &["16"]), ["1"]);
    assert_eq!(answer(&idx, "ipm", &["1:2"]), ["1", "3", "7", "9"]);
    let t = Text::normalize(REPEATS).unwrap();
    let oracle = cdawg_cst::OracleIndex::build(&t);
    let want: Vec<String> = (1..=3).map(|r| oracle.sa(r).to_string()).collect();
    assert_eq!(answer(&idx, "sa", &["1:3"]), want);
}

fn show(cst: &Cst, id: NodeId) -> String {
    let (lo, hi) = cst.interval(id).unwrap();
    format!("{lo}:{hi} {}", id.depth)
}

fn show_opt(cst: &Cst, id: Option<NodeId>) -> String {
    id.map_or("none".to_string(), |id| show(cst, id))
}

/// Every op through the binary against the same call in process.
fn agrees_with_library(text: &[u8], mode: Mode, mode_flag: &str) {
    let fx = Fixture::new();
    let (idx, _) = fx.build("t", text, &["--mode", mode_flag]);
    let cst = Cst::build(&Text::normalize(text).unwrap(), mode).unwrap();
    assert_eq!(Cst::from_bytes(&std::fs::read(&idx).unwrap()).unwrap(), cst);
    let n = cst.n();
    let render = |c: u32| String::from_utf8(cst.render(&[c])).unwrap();
    let nums = |xs: Vec<usize>| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let whole = format!("1:{n}");

    assert_eq!(answer(&idx, "sa", &[&whole]), nums(cst.sa_range(1, n).unwrap()));
    assert_eq!(answer(&idx, "isa", &[&whole]), nums(cst.isa_range(1, n).unwrap()));
    assert_eq!(answer(&idx, "lcp", &[&whole]), nums(cst.lcp_range(1, n).unwrap()));
    let plcp: Vec<usize> = (1..=n).map(|i| cst.plcp(i).unwrap()).collect();
    assert_eq!(answer(&idx, "plcp", &[&whole]), nums(plcp));
    let body = format!("1:{}", n - 1);
    assert_eq!(answer(&idx, "extract", &[&body]), [String::from_utf8(text.to_vec()).unwrap()]);

    let step = (n / 5).max(1);
    for r in (1..=n).step_by(step) {
        let rs = r.to_string();
        let leaf = cst.select_leaf(r).unwrap();
        assert_eq!(answer(&idx, "selectleaf", &[&rs]), [show(&cst, leaf)]);
        for q in (r..=n).step_by(step) {
            let qs = q.to_string();
            let node = cst.lca(r, q).unwrap();
            let arg = format!("{r}:{q}");
            assert_eq!(answer(&idx, "lca", &[&rs, &qs]), [show(&cst, node)]);
            assert_eq!(answer(&idx, "lce", &[&rs, &qs]), [cst.lce(r, q).unwrap().to_string()]);
            assert_eq!(answer(&idx, "ipm", &[&arg]), nums(cst.internal_pattern_match(r, q).unwrap()));
            assert_eq!(answer(&idx, "parent", &[&arg]), [show_opt(&cst, cst.parent(node).unwrap())]);
            assert_eq!(answer(&idx, "suffixlink", &[&arg]), [show_opt(&cst, cst.suffix_link(node).unwrap())]);
            assert_eq!(answer(&idx, "depth", &[&arg]), [cst.depth(node).unwrap().to_string()]);
            assert_eq!(answer(&idx, "deepest", &[&arg]), [show(&cst, cst.deepest_node_by_string_depth(node).unwrap())]);
            assert_eq!(
                answer(&idx, "deepest", &[&arg, "depth"]),
                [show(&cst, cst.deepest_node_by_depth(node).unwrap())]
            );
            if node.depth > 0 {
                let k = node.depth.to_string();
                assert_eq!(answer(&idx, "letter", &[&arg, &k]), [render(cst.letter(node, node.depth).unwrap())]);
                let d = (node.depth / 2).to_string();
                assert_eq!(answer(&idx, "strancestor", &[&arg, &d]), [show(&cst, cst.str_ancestor(node, node.depth / 2).unwrap())]);
            }
            for d in 0..=cst.depth(node).unwrap() {
                let ds = d.to_string();
                assert_eq!(answer(&idx, "ancestor", &[&arg, &ds]), [show(&cst, cst.ancestor(node, d).unwrap())]);
            }
            assert_eq!(answer(&idx, "ancestor", &[&rs, "0"]), [show(&cst, cst.ancestor(leaf, 0).unwrap())]);
            for c in 1..=cst.sigma() {
                let cs = render(c);
                assert_eq!(answer(&idx, "child", &[&arg, &cs]), [show_opt(&cst, cst.child(node, c).unwrap())]);
                if mode == Mode::Full {
                    assert_eq!(
                        answer(&idx, "weinerlink", &[&arg, &cs]),
                        [show_opt(&cst, cst.weiner_link(node, c).unwrap())]
                    );
                }
            }
        }
    }
}

#[test]
fn answers_match_the_library() {
    agrees_with_library(REPEATS, Mode::Full, "full");
    agrees_with_library(REPEATS, Mode::Lite, "lite");
    agrees_with_library(b"mississippi", Mode::Full, "full");
    agrees_with_library(b"ACGTTGCAACGTTGCA", Mode::Lite, "lite");
}

#[test]
fn node_arguments_read_back() {
    let fx = Fixture::new();
    let (idx, _) = fx.build("repeats", REPEATS, &[]);
    assert_eq!(answer(&idx, "lca", &["root", "5"]), ["1:16 0"]);
    let node = answer(&idx, "child", &["root", "A"]).remove(0);
    let interval = node.split(' ').next().unwrap();
    assert_eq!(answer(&idx, "parent", &[interval]), ["1:16 0"]);
    assert_eq!(answer(&idx, "lca", &[interval, interval]), [node.clone()]);
    assert_eq!(answer(&idx, "child", &["root", "Z"]), ["none"]);
    assert_eq!(answer(&idx, "child", &["root", "#"]), ["1:1 1"]);
}

#[test]
fn exit_codes() {
    let fx = Fixture::new();
    let (full, _) = fx.build("repeats", REPEATS, &[]);
    let (lite, _) = fx.build("lite", REPEATS, &["--mode", "lite"]);

    assert_eq!(query(&full, "nosuchop", &[]).status.code(), Some(1));
    assert_eq!(query(&full, "sa", &["x"]).status.code(), Some(1));
    assert_eq!(query(&full, "sa", &["0"]).status.code(), Some(1));
    assert_eq!(query(&full, "lca", &["1"]).status.code(), Some(1));
    let out = query(&lite, "weinerlink", &["root", "A"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("lite"), "{}", stderr(&out));
    assert_eq!(cdcst(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(cdcst(&["--help"]).status.code(), Some(0));

    let missing = fx.dir.path().join("missing");
    assert_eq!(cdcst(&["stats", s(&missing)]).status.code(), Some(3));
    let empty = fx.file("empty.txt", b"");
    let out_path = fx.dir.path().join("e.idx");
    assert_eq!(cdcst(&["build", s(&empty), s(&out_path)]).status.code(), Some(1));
    let not_dna = fx.file("x.txt", b"ACGN");
    assert_eq!(cdcst(&["build", s(&not_dna), s(&out_path), "--alphabet", "dna"]).status.code(), Some(1));
    let dna = fx.file("d.txt", b"ACGTACGA");
    assert_eq!(cdcst(&["build", s(&dna), s(&out_path), "--alphabet", "dna"]).status.code(), Some(0));
}

#[test]
fn verify_accepts_good_input_and_rejects_corruption() {
    let fx = Fixture::new();
    let tiny = fx.file("aa.txt", b"AA");
    let out = cdcst(&["verify", s(&tiny)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out), "OK, 0 mismatches\n");

    let (idx, _) = fx.build("repeats", REPEATS, &["--mode", "lite", "--ladder"]);
    assert_eq!(stdout(&cdcst(&["verify", s(&idx)])), "OK, 0 mismatches\n");

    let mut bytes = std::fs::read(&idx).unwrap();
    let mid = bytes.len() / 2;
    bytes[mid] ^= 1;
    let bad = fx.file("bad.idx", &bytes);
    let out = cdcst(&["verify", s(&bad)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("checksum"), "{}", stderr(&out));

    let out = cdcst(&["verify", "--random", "20", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(stdout(&out), "OK, 0 mismatches\n");

    let big = fx.file("big.txt", &vec![b'a'; 10_001]);
    assert_eq!(cdcst(&["verify", s(&big)]).status.code(), Some(1));
}

#[test]
fn bench_and_stats() {
    let fx = Fixture::new();
    let one = fx.file("one.txt", b"A");
    let out = cdcst(&["bench", s(&one)]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 2, "header plus one row");

    let fib = fx.file("fib.txt", &cdawg_cst::corpus::fibonacci(1000));
    let out = cdcst(&["bench", s(&fib), "--queries", "50"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().count(), 1 + 11);
    // an impossible bound is reported as a failure
    assert_eq!(cdcst(&["bench", s(&fib), "--bound", "0"]).status.code(), Some(2));

    let (idx, _) = fx.build("repeats", REPEATS, &[]);
    let text = stdout(&cdcst(&["stats", s(&idx)]));
    assert!(text.contains("n: 16\n") && text.contains("e_T: ") && text.contains("grammar arcs: "), "{text}");
}
