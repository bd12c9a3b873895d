use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quotientope")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn hampath_examples() {
    let five = stdout(&["hampath", "--n", "3", "--fences", "1-3:{2}"]);
    assert_eq!(five.lines().count(), 5);
    assert_eq!(stdout(&["hampath", "--n", "2", "--fences", ""]), "1 2\n2 1\n");
    let tamari = stdout(&["hampath", "--n", "4", "--patterns", "2[31]"]);
    assert_eq!(tamari.lines().count(), 14);
    assert_eq!(tamari.lines().next(), Some("1 2 3 4"));
}

#[test]
fn hampath_lines_are_distinct_permutations_one_jump_apart() {
    let out = stdout(&["hampath", "--n", "5", "--fences", "1-4:{3};2-5:{}", "--annotate"]);
    let mut ids = std::collections::HashSet::new();
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for line in out.lines() {
        let (perm, class) = line.split_once(" # class=").unwrap();
        assert!(ids.insert(class.parse::<usize>().unwrap()));
        rows.push(perm.split(' ').map(|x| x.parse().unwrap()).collect());
    }
    for w in rows.windows(2) {
        // a jump rotates one contiguous block, so the entries that differ form an interval
        let diff: Vec<usize> = (0..5).filter(|&i| w[0][i] != w[1][i]).collect();
        assert!(diff.len() >= 2);
        assert_eq!(diff.last().unwrap() - diff[0] + 1, diff.len());
    }
}

#[test]
fn count_examples() {
    assert_eq!(stdout(&["count", "--n", "4", "--what", "congruences"]), "47\n");
    assert_eq!(stdout(&["count", "--n", "7", "--what", "regular"]), "17424\n");
    assert_eq!(stdout(&["count", "--n", "2", "--what", "vt-noniso"]), "1\n");
    assert_eq!(stdout(&["count", "--n", "7", "--what", "vertex-transitive"]), "132\n");
    assert_eq!(stdout(&["count", "--n", "4", "--what", "noniso"]), "19\n");
}

#[test]
fn count_verify_in_parallel() {
    for (what, value) in [("congruences", "47"), ("regular", "25"), ("vertex-transitive", "8"), ("vt-noniso", "4"), ("noniso", "19")] {
        assert_eq!(stdout(&["count", "--n", "4", "--what", what, "--verify", "--jobs", "3"]).trim(), value, "{what}");
    }
    assert_eq!(stdout(&["count", "--n", "5", "--what", "regular", "--verify", "--jobs", "4"]), "196\n");
}

#[test]
fn analyze_examples() {
    let report = |fences: &str| -> serde_json::Value {
        serde_json::from_str(&stdout(&["analyze", "--n", "4", "--fences", fences])).unwrap()
    };
    let perm = report("");
    assert_eq!(perm["classes"], 24);
    assert_eq!(perm["regular"], true);
    assert_eq!(perm["min_degree"], 3);
    assert_eq!(perm["vertex_transitive"], true);
    assert_eq!(perm["hamilton_cycle_found"], true);
    let tamari = report("1-3:{2};2-4:{3};1-4:{2,3};1-4:{2};1-4:{3}");
    assert_eq!(tamari["classes"], 14);
    assert_eq!(tamari["regular"], true);
    assert_eq!(tamari["vertex_transitive"], false);
    assert_eq!(report("1-4:{2}")["max_degree"], 4);
}

#[test]
fn export_sizes() {
    let count = |args: &[&str]| {
        let dot = stdout(args);
        let nodes = dot.lines().filter(|l| l.contains("[label=") && !l.contains("--")).count();
        let edges = dot.lines().filter(|l| l.contains(" -- ")).count();
        (nodes, edges)
    };
    assert_eq!(count(&["export", "--n", "3", "--fences", "1-3:{2}"]), (5, 5));
    assert_eq!(count(&["export", "--n", "2", "--fences", ""]), (2, 1));
    let cube = "1-3:{};1-3:{2};2-4:{};2-4:{3}";
    assert_eq!(count(&["export", "--n", "4", "--fences", cube]), (8, 12));
    let json: serde_json::Value = serde_json::from_str(&stdout(&["export", "--n", "4", "--fences", cube, "--format", "json"])).unwrap();
    assert_eq!(json["nodes"].as_array().unwrap().len(), 8);
    assert_eq!(json["edges"].as_array().unwrap().len(), 12);
}

#[test]
fn table_rows() {
    let table = stdout(&["table1", "--max-n", "7"]);
    let row = |name: &str| -> Vec<String> {
        table.lines().filter_map(|l| l.split('\t').collect::<Vec<_>>().first().filter(|r| **r == name).map(|_| l.split('\t').nth(2).unwrap().to_string())).collect()
    };
    assert_eq!(table.lines().next(), Some("row\tn\tvalue\tsource"));
    assert_eq!(row("Q"), ["1", "4", "47", "3322", "?", "?"]);
    assert_eq!(row("R"), ["1", "4", "25", "196", "1764", "17424"]);
    assert_eq!(row("V"), ["1", "4", "8", "22", "52", "132"]);
    assert_eq!(row("Q'"), ["1", "3", "19", "748", "?", "?"]);
    assert_eq!(row("R'"), ["1", "3", "10", "51", "?", "?"]);
    assert_eq!(row("V'"), ["1", "3", "4", "8", "11", "19"]);
    assert_eq!(row("min-degree"), ["1", "2", "3", "4", "5", "6"]);
    assert_eq!(row("max-degree"), ["1", "2", "4", "5", "7", "8"]);
    assert!(table.contains("Q\t6\t?\tunknown"));
    assert!(table.contains("R\t7\t17424\tformula"));
    assert!(table.contains("Q\t5\t3322\tenumeration"));
}

#[test]
fn patterns_listing() {
    let out = stdout(&["patterns", "--n", "5", "--patterns", "2[31]"]);
    assert_eq!(out.lines().filter(|l| !l.starts_with('#')).count(), 42);
    let baxter = stdout(&["patterns", "--n", "4", "--patterns", "2[41]3,3[41]2"]);
    assert_eq!(baxter.lines().filter(|l| !l.starts_with('#')).count(), 22);
    let json: serde_json::Value = serde_json::from_str(&stdout(&["patterns", "--n", "4", "--patterns", "2[31]", "--format", "json"])).unwrap();
    assert_eq!(json["classes"], 14);
    assert_eq!(json["avoiders"].as_array().unwrap().len(), 14);
}

#[test]
fn diagram_file_input() {
    let path = std::env::temp_dir().join(format!("quotientope-cli-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"n": 3, "fences": [{"a": 1, "b": 3, "left": [2]}]}"#).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&["hampath", "--diagram", p]).lines().count(), 5);
    std::fs::write(&path, r#"{"n": 4, "fences": [{"a": 1, "b": 3, "left": [2]}], "generators": false}"#).unwrap();
    assert_eq!(code(&["analyze", "--diagram", p]), 2);
    std::fs::write(&path, "not json").unwrap();
    assert_eq!(code(&["export", "--diagram", p]), 2);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["hampath", "--n", "3", "--fences", "1-3:{2}"]), 0);
    assert_eq!(code(&["hampath", "--n", "4", "--fences", "1-5:{}"]), 2);
    assert_eq!(code(&["hampath", "--n", "3", "--fences", "garbage"]), 2);
    assert_eq!(code(&["hampath", "--n", "3"]), 2);
    assert_eq!(code(&["hampath", "--n", "3", "--fences", "", "--patterns", "2[31]"]), 2);
    assert_eq!(code(&["patterns", "--n", "5", "--patterns", "23[51]4"]), 2);
    assert_eq!(code(&["count", "--n", "7", "--what", "congruences"]), 4);
    assert_eq!(code(&["count", "--n", "6", "--what", "regular", "--verify"]), 4);
    assert_eq!(code(&["hampath", "--n", "10", "--fences", ""]), 4);
    assert_eq!(code(&["hampath", "--n", "13", "--fences", ""]), 4);
    assert_eq!(code(&["count", "--n", "4", "--what", "everything"]), 2);
    let err = run(&["patterns", "--n", "5", "--patterns", "23[51]4"]);
    assert!(String::from_utf8_lossy(&err.stderr).contains("32[51]4"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["hampath", "--n", "5", "--fences", "2-5:{3,4}"][..],
        &["export", "--n", "4", "--fences", "1-4:{2}", "--format", "json"],
        &["analyze", "--n", "4", "--fences", "1-3:{}"],
        &["table1", "--max-n", "5"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}
