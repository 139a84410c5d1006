use std::path::Path;
use std::process::{Command, Output};

use tridist::analysis::distinguishes;
use tridist::search::{minimize, MinimizeOptions};
use tridist::PaletteMode;
use tridist_cli::document::ColoringDocument;

fn tridist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tridist"))
        .args(args)
        .output()
        .expect("run tridist")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write_doc(dir: &Path, name: &str, n: usize, k: usize, mode: &str, colors: &[u16]) -> String {
    let path = dir.join(name);
    let cs: Vec<String> = colors.iter().map(|c| c.to_string()).collect();
    std::fs::write(
        &path,
        format!(
            r#"{{"format_version": 1, "n": {n}, "k": {k}, "mode": "{mode}", "colors": [{}]}}"#,
            cs.join(", ")
        ),
    )
    .unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn construct_modular_five() {
    let o = tridist(&["construct", "modular", "5"]);
    assert_eq!(code(&o), 0);
    let doc = ColoringDocument::parse(&stdout(&o)).unwrap();
    assert_eq!(doc.colors, vec![1, 2, 3, 3, 4, 0, 4, 0, 1, 2]);
    assert_eq!(doc.k, 5);
}

#[test]
fn construct_parity_mismatch_is_usage_error() {
    assert_eq!(code(&tridist(&["construct", "modular", "4"])), 2);
    assert_eq!(code(&tridist(&["construct", "even", "5"])), 2);
}

#[test]
fn construct_write_read_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, n) in [("modular", 3), ("modular", 9), ("even", 4), ("even", 10)] {
        let path = dir.path().join(format!("{kind}{n}.json"));
        let p = path.to_str().unwrap();
        let o = tridist(&["construct", kind, &n.to_string(), "-o", p]);
        assert_eq!(code(&o), 0, "{kind} {n}");
        let doc = ColoringDocument::load(&path).unwrap();
        let coloring = doc.coloring().unwrap();
        assert!(distinguishes(&coloring, PaletteMode::RainbowProper)
            .unwrap()
            .is_distinguishing());

        let v = tridist(&["verify", p]);
        assert_eq!(code(&v), 0, "{}", stdout(&v));
        assert!(stdout(&v).contains("status: DISTINGUISHING"));
    }
}

#[test]
fn verify_reports_collision_and_improper() {
    let dir = tempfile::tempdir().unwrap();
    let fig = write_doc(dir.path(), "fig.json", 4, 4, "multiset", &[1, 1, 1, 2, 3, 1]);
    let o = tridist(&["verify", &fig]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    // [0,0,1] and [0,1,1] differ as multisets but agree as sets
    let pair = write_doc(dir.path(), "pair.json", 4, 2, "multiset", &[0, 0, 1, 1, 1, 0]);
    assert_eq!(code(&tridist(&["verify", &pair])), 1);
    let set = tridist(&["verify", &fig, "--mode", "set"]);
    assert_eq!(code(&set), 0);
    let set = tridist(&["verify", &pair, "--mode", "set"]);
    assert_eq!(code(&set), 1);
    assert!(stdout(&set).contains("NOT DISTINGUISHING"));
    assert!(stdout(&set).contains("collision:"));

    let rainbow = tridist(&["verify", &fig, "--mode", "rainbow"]);
    assert_eq!(code(&rainbow), 1);
    assert!(stdout(&rainbow).contains("NOT PROPER"));
}

#[test]
fn verify_rejects_malformed_documents() {
    let dir = tempfile::tempdir().unwrap();
    let short = write_doc(dir.path(), "short.json", 4, 3, "set", &[0, 1]);
    let o = tridist(&["verify", &short]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("colors"));
    assert_eq!(code(&tridist(&["verify", "/nonexistent/doc.json"])), 2);
}

#[test]
fn capacity_table() {
    let o = tridist(&["capacity", "5"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let values: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().last().unwrap())
        .collect();
    assert_eq!(values, ["10", "25", "35"]);
}

#[test]
fn search_exit_codes() {
    let sat = tridist(&["search", "4", "-k", "3"]);
    assert_eq!(code(&sat), 0);
    assert!(stdout(&sat).contains("SAT"));

    let unsat = tridist(&["search", "5", "-k", "4", "--mode", "set"]);
    assert_eq!(code(&unsat), 1);
    assert!(stdout(&unsat).contains("UNSAT"));

    let limited = tridist(&["search", "7", "-k", "6", "--node-limit", "1000"]);
    assert_eq!(code(&limited), 3);
    assert!(stdout(&limited).contains("INCONCLUSIVE"));

    assert_eq!(code(&tridist(&["search", "6", "-k", "6", "--mode", "rainbow"])), 2);
    assert_eq!(code(&tridist(&["search", "6"])), 2);
}

#[test]
fn search_minimize_and_emit_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let p = path.to_str().unwrap();
    let o = tridist(&["search", "6", "--mode", "rainbow", "--proper", "--minimize", "--emit-witness", p]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("tau = 7"));
    let doc = ColoringDocument::load(&path).unwrap();
    assert_eq!(doc.k, 7);
    assert_eq!(code(&tridist(&["verify", p])), 0);

    let below = tridist(&["search", "6", "--minimize", "--search-below-bound"]);
    assert_eq!(code(&below), 0);
    assert!(stdout(&below).contains("tau = 5"));
    assert!(stdout(&below).contains("lower: k = 4: UNSAT"));
}

#[test]
fn bounds_agree_with_minimize() {
    for n in 3..=6 {
        let text = stdout(&tridist(&["bounds", &n.to_string()]));
        let value = |key: &str| -> usize {
            let line = text.lines().find(|l| l.starts_with(key)).unwrap();
            line.split_whitespace().last().unwrap().parse().unwrap()
        };
        let opts = MinimizeOptions::default();
        let proper = minimize(n, PaletteMode::RainbowProper, true, &opts).unwrap().tau;
        let multiset = minimize(n, PaletteMode::Multiset, false, &opts).unwrap().tau;
        let set = minimize(n, PaletteMode::Set, false, &opts).unwrap().tau;
        assert_eq!(value("tau_proper"), proper, "n = {n}");
        assert!(value("tau_multiset") <= multiset, "n = {n}");
        assert!(value("tau_set") <= set, "n = {n}");
        assert!(multiset <= set && set <= proper, "n = {n}");
    }
}

#[test]
fn export_formats() {
    let dir = tempfile::tempdir().unwrap();
    let doc = write_doc(dir.path(), "k3.json", 3, 3, "set", &[0, 1, 2]);

    let dot = stdout(&tridist(&["export", &doc, "--format", "dot"]));
    assert!(dot.starts_with("graph K3 {"));
    assert!(dot.contains("0 -- 1 [label=\"0\"];"));
    assert!(dot.contains("1 -- 2 [label=\"2\"];"));

    let csv = stdout(&tridist(&["export", &doc, "--format", "csv"]));
    assert_eq!(csv, "palette;count;triangles\n[0,1,2];1;(0,1,2)\n");

    let cnf = stdout(&tridist(&["export", "--format", "dimacs", "-n", "4", "-k", "3"]));
    assert!(cnf.lines().any(|l| l.starts_with("p cnf ")));
    assert_eq!(code(&tridist(&["export", "--format", "dimacs", "-n", "4"])), 2);
}

#[test]
fn conjecture_exit_reflects_failures() {
    let holds = tridist(&["conjecture", "6", "--mode", "multiset"]);
    assert_eq!(code(&holds), 0, "{}", stdout(&holds));
    let fails = tridist(&["conjecture", "5", "--mode", "set"]);
    assert_eq!(code(&fails), 1);
    assert!(stdout(&fails).contains("NO"));
}

#[test]
fn export_figure_census_has_four_rows() {
    let dir = tempfile::tempdir().unwrap();
    let fig = write_doc(dir.path(), "fig4.json", 4, 4, "multiset", &[1, 1, 1, 2, 3, 1]);
    let csv = stdout(&tridist(&["export", &fig, "--format", "csv", "--mode", "multiset"]));
    assert_eq!(csv.lines().count(), 5, "{csv}");
}
