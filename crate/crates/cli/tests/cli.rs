use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn optsssp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_optsssp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Fresh scratch path unique to this test process.
fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("optsssp-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    let _ = fs::remove_file(&p);
    p
}

fn comment_value(text: &str, key: &str) -> u64 {
    let prefix = format!("# {key} ");
    text.lines().find_map(|l| l.strip_prefix(&prefix)).unwrap().parse().unwrap()
}

#[test]
fn gen_broom_header_and_determinism() {
    let a = optsssp(&["gen", "broom", "--t", "64", "--r", "4032", "--seed", "5"]);
    let b = optsssp(&["gen", "--family", "broom", "--t", "64", "--r", "4032", "--seed", "5"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("4097 4096 0 directed\n"));
}

#[test]
fn gen_dense_vertex_count() {
    let o = optsssp(&["gen", "dense", "--k", "16"]);
    assert!(stdout(&o).starts_with("272 "));
}

#[test]
fn gen_then_run_from_file() {
    let path = scratch("star.txt");
    assert!(optsssp(&["gen", "star", "--n", "30", "--out", path.to_str().unwrap()]).status.success());
    let o = optsssp(&["run", "--input", path.to_str().unwrap(), "--heap", "pairing"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let order: Vec<usize> = text.lines().filter(|l| !l.starts_with('#')).map(|l| l.parse().unwrap()).collect();
    assert_eq!(order.len(), 31);
    assert_eq!(order[0], 0);
}

#[test]
fn optimal_on_path_uses_no_comparisons() {
    let o = optsssp(&["run", "optimal", "--family", "path", "--n", "500", "--audit"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(comment_value(&text, "comparisons"), 0);
    assert_eq!(comment_value(&text, "forward_edges"), 499);
    let order: Vec<usize> = text.lines().filter(|l| !l.starts_with('#')).map(|l| l.parse().unwrap()).collect();
    assert_eq!(order, (0..500).collect::<Vec<_>>());
}

#[test]
fn binary_heap_pays_more_on_broom() {
    let run = |heap| {
        let o = optsssp(&["run", "--family", "broom", "--n", "16384", "--heap", heap]);
        comment_value(&stdout(&o), "comparisons")
    };
    assert!(run("binary") > 3 * run("workset"));
}

#[test]
fn audit_prints_one_report_row() {
    let o = optsssp(&["audit", "--family", "fan", "--n", "20"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("heap,n,arcs"));
    assert!(lines[1].contains(",true,"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(optsssp(&["gen", "--family", "nope", "--n", "3"]).status.code(), Some(1));
    assert_eq!(optsssp(&["gen", "broom"]).status.code(), Some(1));
    assert_eq!(optsssp(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(optsssp(&["run", "--family", "path"]).status.code(), Some(1));

    let undirected = scratch("undirected.txt");
    fs::write(&undirected, "2 1 0 undirected\n0 1 1\n").unwrap();
    assert_eq!(optsssp(&["run", "optimal", "--input", undirected.to_str().unwrap()]).status.code(), Some(1));

    let bad = scratch("bad.txt");
    fs::write(&bad, "2 1 0 directed\n0 1 0\n").unwrap();
    let o = optsssp(&["run", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn help_exits_zero() {
    assert_eq!(optsssp(&["--help"]).status.code(), Some(0));
}

#[test]
fn bench_appends_under_one_schema_header() {
    let path = scratch("bench.csv");
    let out = path.to_str().unwrap();
    let args = ["bench", "--family", "random_dag", "--n", "50,100", "--algo", "dijkstra,optimal", "--seed", "3", "--out", out];
    assert!(optsssp(&args).status.success());
    assert!(optsssp(&args).status.success());
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# schema v1");
    assert_eq!(
        lines[1],
        "family,n,m,heap,algo,comparisons,additions,cost_I,energy,log_linearizations,forward_edges,wall_ns"
    );
    // two sizes x (two heaps + optimal), written twice
    assert_eq!(lines.len(), 2 + 2 * 6);
    let strip = |l: &str| l.rsplit_once(',').unwrap().0.to_string();
    for i in 0..6 {
        assert_eq!(strip(lines[2 + i]), strip(lines[8 + i]), "rerun differs beyond wall_ns");
    }
}

#[test]
fn bench_refuses_foreign_csv() {
    let path = scratch("foreign.csv");
    fs::write(&path, "a,b\n").unwrap();
    let o = optsssp(&["bench", "--family", "path", "--n", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(fs::read_to_string(&path).unwrap(), "a,b\n");
}
