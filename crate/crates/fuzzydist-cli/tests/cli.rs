//! End-to-end checks of the command-line contract: argument handling,
//! exit statuses (0 success, 1 I/O/parse, 2 user input, 3 self-test
//! failure), output file shapes, and determinism.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fuzzydist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

// ---------------------------------------------------------------- dist

#[test]
fn dist_self_is_zero_to_six_decimals() {
    let out = run(&["dist", "fixture:table1", "Belgium", "Belgium", "--metric", "entropy"]);
    assert_eq!(code(&out), 0, "{out:?}");
    assert_eq!(stdout(&out), "0.000000\n");
}

#[test]
fn dist_defaults_to_the_entropy_metric() {
    let out = run(&["dist", "fixture:table1", "Hungary", "Russian Fed"]);
    assert_eq!(code(&out), 0, "{out:?}");
    assert_eq!(stdout(&out), "0.542212\n");

    let explicit = run(&["dist", "fixture:table1", "Hungary", "Russian Fed", "--metric", "entropy"]);
    assert_eq!(stdout(&explicit), stdout(&out));
}

#[test]
fn dist_unknown_entity_is_a_user_error_naming_it() {
    let out = run(&["dist", "fixture:table1", "Belgium", "Atlantis"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("Atlantis"), "stderr: {}", stderr(&out));
}

#[test]
fn dist_is_symmetric_on_the_printed_value() {
    let ab = run(&["dist", "fixture:table1", "Belgium", "Bulgaria"]);
    let ba = run(&["dist", "fixture:table1", "Bulgaria", "Belgium"]);
    assert_eq!(code(&ab), 0);
    assert_eq!(stdout(&ab), stdout(&ba));
    assert_eq!(stdout(&ab), "0.751433\n");
}

#[test]
fn metric_parameters_are_required_and_rejected_strictly() {
    // Missing required parameter.
    let out = run(&["dist", "fixture:table1", "Belgium", "Bulgaria", "--metric", "minkowski"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("--r"));

    let out = run(&["dist", "fixture:table1", "Belgium", "Bulgaria", "--metric", "weighted"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("--weights"));

    // Extraneous parameter for the chosen metric.
    let out = run(&["dist", "fixture:table1", "Belgium", "Bulgaria", "--metric", "entropy", "--r", "2"]);
    assert_eq!(code(&out), 2);

    let out = run(&["dist", "fixture:table1", "Belgium", "Bulgaria", "--metric", "s1", "--levels", "50"]);
    assert_eq!(code(&out), 2);

    // Out-of-range order.
    let out = run(&["dist", "fixture:table1", "Belgium", "Bulgaria", "--metric", "minkowski", "--r", "0.5"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn every_metric_computes_on_the_fixture() {
    for extra in [
        vec!["--metric", "entropy"],
        vec!["--metric", "minkowski", "--r", "2"],
        vec!["--metric", "hausdorff"],
        vec!["--metric", "hausdorff", "--levels", "50"],
        vec!["--metric", "s1"],
        vec!["--metric", "bonissone"],
    ] {
        let mut args = vec!["dist", "fixture:table1", "Belgium", "Bulgaria"];
        args.extend(&extra);
        let out = run(&args);
        assert_eq!(code(&out), 0, "args {args:?}: {}", stderr(&out));
        let value: f64 = stdout(&out).trim().parse().expect("numeric output");
        assert!(value.is_finite() && value >= 0.0);
    }
}

#[test]
fn uniform_weights_reproduce_the_plain_distance() {
    let dir = tempfile::tempdir().unwrap();
    let weights = dir.path().join("weights.csv");
    std::fs::write(&weights, "0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1\n").unwrap();

    let weighted = run(&[
        "dist", "fixture:table1", "Hungary", "Russian Fed",
        "--metric", "weighted", "--weights", weights.to_str().unwrap(),
    ]);
    assert_eq!(code(&weighted), 0, "{}", stderr(&weighted));
    assert_eq!(stdout(&weighted), "0.542212\n");
}

#[test]
fn weight_files_are_validated() {
    let dir = tempfile::tempdir().unwrap();

    // Wrong count: 9 weights for 10 attributes.
    let nine = dir.path().join("nine.csv");
    std::fs::write(&nine, "0.2,0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1\n").unwrap();
    let out = run(&[
        "dist", "fixture:table1", "Belgium", "Bulgaria",
        "--metric", "weighted", "--weights", nine.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("10"), "stderr: {}", stderr(&out));

    // Not summing to 1.
    let lopsided = dir.path().join("lopsided.csv");
    std::fs::write(&lopsided, "0.5,0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1\n").unwrap();
    let out = run(&[
        "dist", "fixture:table1", "Belgium", "Bulgaria",
        "--metric", "weighted", "--weights", lopsided.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);

    // Unparseable content is a parse failure, not a user error.
    let garbled = dir.path().join("garbled.csv");
    std::fs::write(&garbled, "0.1,oops,0.1\n").unwrap();
    let out = run(&[
        "dist", "fixture:table1", "Belgium", "Bulgaria",
        "--metric", "weighted", "--weights", garbled.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);

    // Missing file likewise.
    let out = run(&[
        "dist", "fixture:table1", "Belgium", "Bulgaria",
        "--metric", "weighted", "--weights", "/nonexistent/weights.csv",
    ]);
    assert_eq!(code(&out), 1);
}

// -------------------------------------------------------------- inputs

#[test]
fn missing_input_file_is_an_io_failure() {
    let out = run(&["dist", "/nonexistent/data.csv", "a", "b"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn malformed_csv_is_a_parse_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ragged.csv");
    std::fs::write(&path, "name,a,b\nx,0.1,0.2\ny,0.3\n").unwrap();
    let out = run(&["dist", path.to_str().unwrap(), "x", "y"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn out_of_range_values_need_normalize() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("raw.csv");
    std::fs::write(&path, "name,a,b\nx,1,9\ny,3,5\nz,2,7\n").unwrap();

    let out = run(&["dist", path.to_str().unwrap(), "x", "y"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("--normalize"), "stderr: {}", stderr(&out));

    let out = run(&["dist", path.to_str().unwrap(), "x", "y", "--normalize"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    // Columns rescale to {0, 0.5, 1}: disagreements 1 and 1 → entropy 0.
    assert_eq!(stdout(&out), "0.000000\n");
}

// -------------------------------------------------------------- matrix

#[test]
fn matrix_csv_shape_and_determinism() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for dir in [&dir_a, &dir_b] {
        let out = run(&[
            "matrix", "fixture:table1", "--metric", "entropy",
            "--out", dir.path().to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        assert!(stdout(&out).contains("matrix.csv"));
    }
    let a = std::fs::read(dir_a.path().join("matrix.csv")).unwrap();
    let b = std::fs::read(dir_b.path().join("matrix.csv")).unwrap();
    assert_eq!(a, b, "repeated runs are byte-identical");

    let text = String::from_utf8(a).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 29, "header plus 28 rows");
    assert!(lines[0].starts_with("name,Belgium,"));

    // Re-parses under the dataset loader (28 label-named columns).
    let data = fuzzydist::Dataset::from_csv_path(dir_a.path().join("matrix.csv"), true).unwrap();
    assert_eq!(data.n_entities(), 28);
    assert_eq!(data.n_attributes(), 28);
}

#[test]
fn matrix_of_identical_rows_is_zero_off_diagonal() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("twins.csv");
    std::fs::write(&input, "name,a,b\nfirst,0.5,0.25\nsecond,0.5,0.25\n").unwrap();
    let out = run(&[
        "matrix", input.to_str().unwrap(),
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = std::fs::read_to_string(dir.path().join("matrix.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[1], "first,0,0");
    assert_eq!(lines[2], "second,0,0");
}

#[test]
fn matrix_s1_entries_stay_in_unit_range() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "matrix", "fixture:table1", "--metric", "s1",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = std::fs::read_to_string(dir.path().join("matrix.csv")).unwrap();
    for line in text.lines().skip(1) {
        for cell in line.split(',').skip(1) {
            let v: f64 = cell.parse().unwrap();
            assert!((0.0..=1.0).contains(&v), "out of range: {v}");
        }
    }
}

#[test]
fn matrix_json_holds_labels_and_square_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "matrix", "fixture:table1", "--format", "json",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let bytes = std::fs::read(dir.path().join("matrix.json")).unwrap();
    let value: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(value["labels"].as_array().unwrap().len(), 28);
    let rows = value["values"].as_array().unwrap();
    assert_eq!(rows.len(), 28);
    assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 28));
    assert!(!dir.path().join("matrix.csv").exists(), "json mode writes json only");
}

#[test]
fn matrix_threads_do_not_change_the_bytes() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for (dir, threads) in [(&dir_a, "1"), (&dir_b, "7")] {
        let out = run(&[
            "matrix", "fixture:table1", "--threads", threads,
            "--out", dir.path().to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
    }
    assert_eq!(
        std::fs::read(dir_a.path().join("matrix.csv")).unwrap(),
        std::fs::read(dir_b.path().join("matrix.csv")).unwrap()
    );
}

// ------------------------------------------------------------- cluster

fn scatter_rows(dir: &Path) -> Vec<(usize, String, f64)> {
    let text = std::fs::read_to_string(dir.join("cluster_scatter.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "cluster_index,entity,distance_to_centroid");
    lines
        .map(|line| {
            let fields: Vec<&str> = line.split(',').collect();
            (fields[0].parse().unwrap(), fields[1].to_string(), fields[2].parse().unwrap())
        })
        .collect()
}

#[test]
fn cluster_fixture_defaults_give_five_populated_clusters() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "cluster", "fixture:table1",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let rows = scatter_rows(dir.path());
    assert_eq!(rows.len(), 28);
    let mut seen = std::collections::BTreeSet::new();
    for (cluster, _, distance) in &rows {
        assert!(*cluster < 5);
        assert!(distance.is_finite() && *distance >= 0.0);
        seen.insert(*cluster);
    }
    assert_eq!(seen.len(), 5, "all five clusters populated");

    let value: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("clusters.json")).unwrap()).unwrap();
    assert_eq!(value["model"]["k"], 5);
    assert_eq!(value["model"]["seed"], 42);
    assert_eq!(value["model"]["assignments"].as_array().unwrap().len(), 28);
    assert_eq!(value["report"]["clusters"].as_array().unwrap().len(), 5);
}

#[test]
fn cluster_k_one_holds_everyone() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "cluster", "fixture:table1", "--k", "1",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let rows = scatter_rows(dir.path());
    assert_eq!(rows.len(), 28);
    assert!(rows.iter().all(|(cluster, _, _)| *cluster == 0));
}

#[test]
fn cluster_k_equals_n_zeroes_every_distance() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "cluster", "fixture:table1", "--k", "28",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let rows = scatter_rows(dir.path());
    assert!(rows.iter().all(|(_, _, distance)| *distance == 0.0));
}

#[test]
fn cluster_invalid_k_is_a_user_error() {
    for k in ["0", "29"] {
        let dir = tempfile::tempdir().unwrap();
        let out = run(&[
            "cluster", "fixture:table1", "--k", k,
            "--out", dir.path().to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 2, "k={k}");
        assert!(!dir.path().join("clusters.json").exists(), "nothing written for k={k}");
    }
}

#[test]
fn cluster_runs_are_reproducible_byte_for_byte() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for dir in [&dir_a, &dir_b] {
        let out = run(&[
            "cluster", "fixture:table1", "--k", "5", "--seed", "7",
            "--out", dir.path().to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
    }
    assert_eq!(
        std::fs::read(dir_a.path().join("clusters.json")).unwrap(),
        std::fs::read(dir_b.path().join("clusters.json")).unwrap()
    );
    assert_eq!(
        std::fs::read(dir_a.path().join("cluster_scatter.csv")).unwrap(),
        std::fs::read(dir_b.path().join("cluster_scatter.csv")).unwrap()
    );
}

// ------------------------------------------------------------ profiles

#[test]
fn profiles_single_entity_matches_the_fixture_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "profiles", "fixture:table1", "Spain",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let text = std::fs::read_to_string(dir.path().join("profiles.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "entity,attribute,membership");
    assert_eq!(lines.len(), 11, "header plus ten attribute rows");

    // Independent read of Spain's row straight from the fixture file.
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/ess_round4_table1.csv");
    let raw = std::fs::read_to_string(fixture).unwrap();
    let spain = raw
        .lines()
        .find(|l| l.starts_with("Spain,"))
        .expect("Spain is in the fixture");
    let expected: Vec<f64> = spain.split(',').skip(1).map(|v| v.parse().unwrap()).collect();

    let got: Vec<f64> = lines[1..]
        .iter()
        .map(|l| {
            let fields: Vec<&str> = l.split(',').collect();
            assert_eq!(fields[0], "Spain");
            fields[2].parse().unwrap()
        })
        .collect();
    assert_eq!(got, expected);
}

#[test]
fn profiles_default_to_every_entity() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "profiles", "fixture:table1",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = std::fs::read_to_string(dir.path().join("profiles.csv")).unwrap();
    assert_eq!(text.lines().count(), 1 + 28 * 10);
}

#[test]
fn profiles_mixed_unknown_names_write_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "profiles", "fixture:table1", "Spain", "Narnia",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("Narnia"));
    assert!(!dir.path().join("profiles.csv").exists(), "all-or-nothing");
}

// ------------------------------------------------------------ selftest

#[test]
fn selftest_passes_and_reports_each_property() {
    let out = run(&["selftest", "--triples", "500"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.lines().filter(|l| l.starts_with("PASS ")).count() >= 10);
    assert!(!text.contains("FAIL"));
    assert!(text.contains("all 13 properties passed"));
}

#[test]
fn selftest_catches_an_injected_fault_with_status_3() {
    let out = run(&["selftest", "--triples", "300", "--inject-fault", "base10-asym"]);
    assert_eq!(code(&out), 3);
    let text = stdout(&out);
    assert!(text.contains("FAIL"));
    assert!(text.contains("first counterexample"));
}

#[test]
fn selftest_rejects_unknown_fault_names() {
    let out = run(&["selftest", "--inject-fault", "gremlins"]);
    assert_eq!(code(&out), 2);
}

// ------------------------------------------------------------- general

#[test]
fn usage_errors_exit_with_status_2() {
    let out = run(&["dist", "fixture:table1", "Belgium"]); // missing second name
    assert_eq!(code(&out), 2);

    let out = run(&["dist", "fixture:table1", "Belgium", "Bulgaria", "--metric", "nonsense"]);
    assert_eq!(code(&out), 2);

    let out = run(&["frobnicate"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn help_and_version_succeed() {
    let help = run(&["--help"]);
    assert_eq!(code(&help), 0);
    for subcommand in ["dist", "matrix", "cluster", "profiles", "selftest"] {
        assert!(stdout(&help).contains(subcommand));
    }
    let version = run(&["--version"]);
    assert_eq!(code(&version), 0);
}
