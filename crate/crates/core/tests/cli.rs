use std::fs;
use std::path::Path;

use planar_contraction::certificate::Certificate;
use planar_contraction::cli::run;
use planar_contraction::graph::io::parse_edge_list;
use tempfile::TempDir;

fn plancon(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("plancon").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn gen(dir: &TempDir, name: &str, args: &[&str]) -> String {
    let file = path(dir, name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &file]);
    let (code, _, err) = plancon(&full);
    assert_eq!(code, 0, "{err}");
    file
}

fn read(p: &str) -> String {
    fs::read_to_string(Path::new(p)).unwrap()
}

#[test]
fn gr_solves_with_one_triangle_edge() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "g5.txt", &["--family", "gr", "--r", "5"]);
    let (code, out, _) = plancon(&["solve", "-i", &g, "-k", "1"]);
    assert_eq!(code, 0);
    let cert = Certificate::parse(&out).unwrap();
    assert!(cert.verify(&parse_edge_list(&read(&g)).unwrap()));
    let edges = out.lines().find_map(|l| l.strip_prefix("edges:")).unwrap();
    let ids: Vec<u32> = edges.split_whitespace().map(|t| t.parse().unwrap()).collect();
    assert_eq!(ids.len(), 2);
    assert!(ids.iter().all(|&v| v < 3));

    let (code, _, _) = plancon(&["solve", "-i", &g, "-k", "0"]);
    assert_eq!(code, 1);
}

#[test]
fn gstar_oracle_says_yes() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "gs.txt", &["--family", "gstar", "--p", "2"]);
    let (code, out, _) = plancon(&["oracle", "-i", &g, "-k", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("answer: yes"));
}

#[test]
fn verify_accepts_and_rejects() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "g4.txt", &["--family", "gr", "--r", "4"]);
    let cert = path(&dir, "cert.txt");
    let (code, _, _) = plancon(&["solve", "-i", &g, "-k", "1", "-o", &cert]);
    assert_eq!(code, 0);
    assert_eq!(plancon(&["verify", "-i", &g, "--cert", &cert]).0, 0);

    // swap the contracted edge for one that does not planarize
    let text = read(&cert);
    let tampered: String = text
        .lines()
        .map(|l| if l.starts_with("edges:") { "edges: 3 4".to_string() } else { l.to_string() })
        .collect::<Vec<_>>()
        .join("\n");
    fs::write(&cert, tampered).unwrap();
    assert_eq!(plancon(&["verify", "-i", &g, "--cert", &cert]).0, 1);
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = gen(&dir, "a.txt", &["--family", "random", "--n", "9", "--m", "20", "--seed", "7"]);
    let b = gen(&dir, "b.txt", &["--family", "random", "--n", "9", "--m", "20", "--seed", "7"]);
    assert_eq!(read(&a), read(&b));
    let first = plancon(&["solve", "-i", &a, "-k", "2", "--jobs", "4"]);
    for _ in 0..3 {
        assert_eq!(plancon(&["solve", "-i", &a, "-k", "2", "--jobs", "4"]), first);
    }
    assert_eq!(plancon(&["oracle", "-i", &a, "-k", "2", "--jobs", "1"]).0, first.0);
}

#[test]
fn reduced_instance_keeps_the_answer() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "w.txt", &["--family", "wall", "--height", "11"]);
    let reduced = path(&dir, "r.txt");
    let stats = path(&dir, "stats.csv");
    let (code, _, err) = plancon(&["reduce", "-i", &g, "-k", "0", "-o", &reduced, "--stats", &stats]);
    assert_eq!(code, 0, "{err}");
    let text = read(&reduced);
    assert!(text.lines().any(|l| l.starts_with("# trace:")));
    let original = parse_edge_list(&read(&g)).unwrap();
    assert_eq!(parse_edge_list(&text).unwrap().n(), original.n() - 1);

    let (a, _, _) = plancon(&["oracle", "-i", &g, "-k", "0"]);
    let (b, _, _) = plancon(&["oracle", "-i", &reduced, "-k", "0"]);
    assert_eq!(a, b);

    let csv = read(&stats);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("iteration,vertices,wall_height"));
    assert_eq!(lines.next(), Some(format!("0,{},11", original.n()).as_str()));
}

#[test]
fn bad_input_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let (code, _, err) = plancon(&["solve", "-i", &path(&dir, "missing.txt"), "-k", "1"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());

    let bad = path(&dir, "bad.txt");
    fs::write(&bad, "0 1\n1 banana\n").unwrap();
    assert_eq!(plancon(&["oracle", "-i", &bad, "-k", "1"]).0, 2);

    let g = gen(&dir, "k5.txt", &["--family", "k5sub", "--p", "3"]);
    assert_eq!(plancon(&["oracle", "-i", &g, "-k", "3", "--cap", "10"]).0, 2);
    assert_eq!(plancon(&["frobnicate"]).0, 2);
}

#[test]
fn embed_reports_both_outcomes() {
    let dir = TempDir::new().unwrap();
    let grid = gen(&dir, "grid.txt", &["--family", "grid", "--rows", "3", "--cols", "3"]);
    assert_eq!(plancon(&["embed", "-i", &grid]).0, 0);
    let pet = gen(&dir, "pet.txt", &["--family", "petersen"]);
    let (code, out, _) = plancon(&["embed", "-i", &pet]);
    assert_eq!(code, 1);
    assert!(out.starts_with("kuratowski:"));
}
