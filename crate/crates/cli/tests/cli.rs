use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;
use tsfrechet::{AnnIndex, Curve1, CurveFile, IndexParams, Scale, Variant};

fn tsfrechet(args: &[&str], dir: &Path, workers: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tsfrechet"));
    cmd.args(args).current_dir(dir).env_remove("TSFRECHET_WORKERS");
    if let Some(w) = workers {
        cmd.env("TSFRECHET_WORKERS", w);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str], dir: &Path) -> Output {
    tsfrechet(args, dir, None)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

/// Pseudo-random integer curves in [-20, 20].
fn workload(n: usize, len: usize, salt: u64, tag: &str) -> String {
    let mut state = 0x9E37_79B9_7F4A_7C15u64 ^ salt;
    let mut out = String::new();
    for i in 0..n {
        out.push_str(&format!("{tag}{i}:"));
        let m = 2 + (i % (len - 1));
        for _ in 0..m {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            out.push_str(&format!(" {}", ((state >> 33) % 41) as i64 - 20));
        }
        out.push('\n');
    }
    out
}

fn build_args<'a>(input: &'a str, variant: &'a str, k: &'a str, out: &'a str) -> Vec<&'a str> {
    vec!["build", "--input", input, "--delta", "1", "--eps", "1", "--k", k, "--variant", variant, "--out", out]
}

#[test]
fn single_curve_linear_index_has_one_key() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "in.txt", "a: 0 4\n");
    let o = run(&build_args("in.txt", "two_plus_eps_linear", "2", "ix.bin"), dir.path());
    assert!(o.status.success(), "{o:?}");
    assert!(stdout(&o).contains("keys=1"), "{}", stdout(&o));
}

#[test]
fn bad_parameters_exit_with_one() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "in.txt", "a: 0 4\n");
    let k1 = run(&build_args("in.txt", "one_plus_eps", "1", "ix.bin"), dir.path());
    assert_eq!(k1.status.code(), Some(1));
    let mut eps = build_args("in.txt", "one_plus_eps", "2", "ix.bin");
    eps[6] = "1.5";
    assert_eq!(run(&eps, dir.path()).status.code(), Some(1));
    let unknown = run(&build_args("in.txt", "two_plus", "2", "ix.bin"), dir.path());
    assert_eq!(unknown.status.code(), Some(1));
    assert!(!dir.path().join("ix.bin").exists());
    write(dir.path(), "bad.txt", "a: 0 x\n");
    assert_eq!(run(&build_args("bad.txt", "one_plus_eps", "2", "ix.bin"), dir.path()).status.code(), Some(1));
}

#[test]
fn verified_match_and_no_match() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "in.txt", "a: 0 4\n");
    write(dir.path(), "q.txt", "near: 0 4\nfar: 100 104\n");
    for variant in Variant::ALL {
        let b = run(&build_args("in.txt", variant.name(), "2", "ix.bin"), dir.path());
        assert!(b.status.success(), "{b:?}");
        let q = run(&["query", "--index", "ix.bin", "--queries", "q.txt", "--verify"], dir.path());
        assert_eq!(q.status.code(), Some(0), "{variant}");
        assert_eq!(stdout(&q), "near MATCH a OK\nfar NOMATCH OK\n", "{variant}");
    }
}

#[test]
fn long_query_is_a_line_error() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "in.txt", "a: 0 4\n");
    write(dir.path(), "q.txt", "long: 0 3 1 4\nok: 0 4\n");
    run(&build_args("in.txt", "one_plus_eps", "2", "ix.bin"), dir.path());
    let q = run(&["query", "--index", "ix.bin", "--queries", "q.txt"], dir.path());
    assert_eq!(q.status.code(), Some(1));
    let out = stdout(&q);
    assert!(out.starts_with("long ERROR"), "{out}");
    assert!(out.ends_with("ok MATCH a\n"), "{out}");
}

#[test]
fn missing_or_corrupt_index_fails() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "q.txt", "q: 0 4\n");
    let missing = run(&["query", "--index", "nope.bin", "--queries", "q.txt"], dir.path());
    assert_eq!(missing.status.code(), Some(1));
    write(dir.path(), "junk.bin", "TSFI1234");
    let corrupt = run(&["query", "--index", "junk.bin", "--queries", "q.txt"], dir.path());
    assert_eq!(corrupt.status.code(), Some(1));
}

#[test]
fn build_and_query_are_byte_deterministic() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "in.txt", &workload(30, 8, 1, "p"));
    write(dir.path(), "q.txt", &workload(20, 3, 2, "q"));
    for variant in ["two_plus_eps_linear", "three_plus_eps", "one_plus_eps"] {
        let mut outputs = Vec::new();
        for (out, workers) in [("a.bin", None), ("b.bin", Some("3"))] {
            let b = tsfrechet(&build_args("in.txt", variant, "3", out), dir.path(), workers);
            assert!(b.status.success(), "{b:?}");
            let q = tsfrechet(&["query", "--index", out, "--queries", "q.txt"], dir.path(), workers);
            outputs.push(q.stdout);
        }
        let a = std::fs::read(dir.path().join("a.bin")).unwrap();
        let b = std::fs::read(dir.path().join("b.bin")).unwrap();
        assert_eq!(a, b, "{variant}");
        assert_eq!(outputs[0], outputs[1], "{variant}");
    }
}

#[test]
fn cli_answers_match_in_process_index() {
    let dir = TempDir::new().unwrap();
    let inputs_text = workload(25, 6, 3, "p");
    let queries_text = workload(15, 3, 4, "q");
    write(dir.path(), "in.txt", &inputs_text);
    write(dir.path(), "q.txt", &queries_text);
    let b = run(&build_args("in.txt", "three_plus_eps", "3", "ix.bin"), dir.path());
    assert!(b.status.success());
    let q = run(&["query", "--index", "ix.bin", "--queries", "q.txt"], dir.path());

    // eps = 1 and delta = 1 have no fractional digits, so one unit is 1/4
    let scale = Scale::from_units_per_one(4).unwrap();
    let inputs_file = CurveFile::parse(&inputs_text).unwrap();
    let inputs = inputs_file.to_curves_1d(&scale).unwrap();
    let queries: Vec<Curve1> = CurveFile::parse(&queries_text).unwrap().to_curves_1d(&scale).unwrap();
    let params = IndexParams::new(tsfrechet::Coord::new(4), tsfrechet::Rational::from_integer(1), 3, Variant::ThreePlusEps)
        .unwrap();
    let ix = AnnIndex::build(&inputs, params).unwrap();
    let ids = inputs_file.ids();
    let expected: String = queries
        .iter()
        .enumerate()
        .map(|(i, c)| match ix.query(c).unwrap().id() {
            Some(p) => format!("q{i} MATCH {}\n", ids[p as usize]),
            None => format!("q{i} NOMATCH\n"),
        })
        .collect();
    assert_eq!(stdout(&q), expected);
}

#[test]
fn gen_is_deterministic_and_planted_pairs_are_near() {
    let dir = TempDir::new().unwrap();
    let args = |prefix: &'static str| {
        vec!["gen", "--family", "one_d_3minus_eps", "--nA", "4", "--nB", "2", "--d", "4", "--seed", "7", "--plant",
            "--out-prefix", prefix]
    };
    assert!(run(&args("x"), dir.path()).status.success());
    assert!(run(&args("y"), dir.path()).status.success());
    for what in ["inputs", "queries", "manifest"] {
        let x = std::fs::read(dir.path().join(format!("x.{what}.txt"))).unwrap();
        let y = std::fs::read(dir.path().join(format!("y.{what}.txt"))).unwrap();
        assert_eq!(x, y, "{what}");
    }
    let manifest = std::fs::read_to_string(dir.path().join("x.manifest.txt")).unwrap();
    assert!(manifest.contains("planted=true\northogonal_pair=true\n"), "{manifest}");
    let scan = run(&["scan", "--inputs", "x.inputs.txt", "--queries", "x.queries.txt", "--delta", "1"], dir.path());
    assert!(scan.status.success());
    assert!(stdout(&scan).contains(" NEAR "), "{}", stdout(&scan));
}

#[test]
fn gen_planar_family_scans_at_delta_one() {
    let dir = TempDir::new().unwrap();
    let g = run(
        &["gen", "--family", "two_d_3minus_eps", "--nA", "3", "--nB", "3", "--d", "5", "--sparsity", "2", "--seed", "3",
            "--plant", "--out-prefix", "t"],
        dir.path(),
    );
    assert!(g.status.success(), "{g:?}");
    let scan = run(&["scan", "--inputs", "t.inputs.txt", "--queries", "t.queries.txt", "--delta", "1"], dir.path());
    assert!(stdout(&scan).contains(" NEAR "), "{}", stdout(&scan));
}

#[test]
fn gen_requires_sparsity_and_a_known_family() {
    let dir = TempDir::new().unwrap();
    for family in ["one_d_2minus_eps", "two_d_3minus_eps"] {
        let o = run(&["gen", "--family", family, "--nA", "2", "--nB", "2", "--d", "3", "--out-prefix", "g"], dir.path());
        assert_eq!(o.status.code(), Some(1), "{family}");
    }
    let o = run(&["gen", "--family", "nope", "--nA", "2", "--nB", "2", "--d", "3", "--out-prefix", "g"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

fn bench_args<'a>(queries: &'a str, variants: &'a str) -> Vec<&'a str> {
    vec![
        "bench", "--inputs", "in.txt", "--queries", queries, "--delta", "1", "--eps", "1", "--k", "2", "--variants",
        variants, "--verify",
    ]
}

#[test]
fn bench_reports_zero_violations() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "in.txt", &workload(50, 12, 5, "p"));
    write(dir.path(), "q.txt", &workload(30, 2, 6, "q"));
    let variants = "one_plus_eps,two_plus_eps_small_space,two_plus_eps_linear,three_plus_eps";
    let o = run(&bench_args("q.txt", variants), dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert_eq!(out.matches("verified=").count(), 4, "{out}");
    assert_eq!(out.matches(" violations=0").count(), 4, "{out}");
}

#[test]
fn bench_with_no_queries_and_bad_variant() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "in.txt", "a: 0 4\n");
    write(dir.path(), "empty.txt", "");
    let o = run(&bench_args("empty.txt", "two_plus_eps_linear"), dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("queries=0 "));
    assert!(stdout(&o).contains("answered=0 "));
    let bad = run(&bench_args("empty.txt", "two_plus_eps_linear,bogus"), dir.path());
    assert_eq!(bad.status.code(), Some(1));
}
