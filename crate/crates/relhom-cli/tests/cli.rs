use relhom_cli::{parse_machine, Machine, Status};
use std::io::Write;
use std::process::Command;

fn relhom(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_relhom")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn machine(args: &[&str]) -> (i32, Machine, String) {
    let (code, out, err) = relhom(args);
    let m = parse_machine(&out).unwrap_or_else(|e| panic!("{e}\n{out}\n{err}"));
    (code, m, out)
}

fn temp_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn ext_over_dual_numbers_is_constant() {
    let (code, m, _) = machine(&["ext", "kxx2", "k", "k", "--max", "6"]);
    assert_eq!(code, 0);
    assert_eq!(m.data["dims"], serde_json::json!([1, 1, 1, 1, 1, 1, 1]));
}

#[test]
fn dualizing_module_of_a3_is_semidualizing_within_the_bound() {
    let (code, m, out) = machine(&["semidualizing", "a3", "D"]);
    assert_eq!(code, 0);
    assert!(out.contains("holds (bounded N=8)"), "{out}");
    assert_eq!(m.status, Status::Holds);
    assert_eq!(m.data["verdict"]["bound"], 8);
}

#[test]
fn gorenstein_balance_over_a4() {
    let (code, m, _) = machine(&["balance", "a4", "--X", "gp:C", "--Y", "gi:C", "k", "k", "--max", "6"]);
    assert_eq!(code, 0);
    assert_eq!(m.data["resolved"], m.data["coresolved"]);
    assert_eq!(m.data["resolved"].as_array().unwrap().len(), 7);
    assert_eq!(m.data["left_quasiiso"], true);
    assert_eq!(m.data["right_quasiiso"], true);
}

#[test]
fn failed_property_exits_with_one() {
    // Every module is in GP_D over a3, so Ext_{GP_D}(k, k) misses the
    // absolute groups above degree 0.
    let (code, m, _) = machine(&["kappa", "a3", "k", "k", "--oracle", "gp:D", "--max", "2"]);
    assert_eq!(code, 1);
    assert_eq!(m.data["bijective"], serde_json::json!([true, false, false]));
}

#[test]
fn invalid_input_exits_with_two() {
    let (code, _, err) = relhom(&["ext", "kxx2", "nope", "k"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown module"), "{err}");
    let (code, _, err) = relhom(&["relext", "kxx2", "k", "k", "--oracle", "gp:k"]);
    assert_eq!(code, 2);
    assert!(err.contains("not semidualizing"), "{err}");
    let (code, _, _) = relhom(&["ext", "kxx2"]);
    assert_eq!(code, 2);
}

#[test]
fn check_validates_files() {
    let shipped = concat!(env!("CARGO_MANIFEST_DIR"), "/data/kxx2.ws");
    let (code, m, _) = machine(&["check", shipped]);
    assert_eq!(code, 0);
    assert_eq!(m.data["algebras"], serde_json::json!(["kxx2"]));

    let bad = temp_file("algebra t\n prime 5\n dim 2\n basis 1 x\n unit 1 0\n mult\n 1 0 | 0 1\n 0 1 | 1 0\n");
    let (code, _, err) = relhom(&["check", bad.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1"), "{err}");
}

#[test]
fn workspace_files_add_modules() {
    let ws = temp_file("module Q over kxx3\n dim 2\n action 1\n 1 0\n 0 1\n action x\n 0 0\n 1 0\n action x^2\n 0 0\n 0 0\n");
    let path = ws.path().to_str().unwrap();
    let (code, m, _) = machine(&["--workspace", path, "ext", "kxx3", "Q", "k", "--max", "3"]);
    assert_eq!(code, 0, "{m:?}");
    assert_eq!(m.data["dims"], serde_json::json!([1, 1, 1, 1]));
}

#[test]
fn les_of_the_cover_of_k_over_dual_numbers() {
    // 0 -> k -> A -> k -> 0 against N = k: Ext^n(A, k) = 0 for n > 0, so
    // every connecting map is an isomorphism between one-dimensional groups.
    let (code, m, _) = machine(&["les", "kxx2", "cover:k", "k", "--variant", "first", "--max", "4"]);
    assert_eq!(code, 0);
    assert_eq!(m.data["connecting_ranks"], serde_json::json!([1, 1, 1, 1]));
    let dims: Vec<u64> = m.data["slots"].as_array().unwrap().iter().map(|s| s["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 1, 1, 1, 0, 1, 1, 0, 1, 1, 0, 1, 1, 0, 1]);
}

#[test]
fn machine_blocks_are_deterministic() {
    for args in [
        vec!["relext", "a3", "k", "k", "--oracle", "inj", "--max", "3"],
        vec!["perfect", "kxx3", "Q"],
        vec!["verify", "--suite", "functors", "--seed", "5", "--cases", "4"],
    ] {
        let (_, a, _) = relhom(&args);
        let (_, b, _) = relhom(&args);
        assert_eq!(a, b, "{args:?}");
        let m = parse_machine(&a).unwrap();
        let back: Machine = serde_json::from_str(&m.emit()).unwrap();
        assert_eq!(back, m);
    }
}

#[test]
fn mutated_cone_is_caught() {
    let (code, m, out) = machine(&["verify", "--suite", "complexes", "--seed", "3", "--cases", "4", "--mutate", "cone-sign"]);
    assert_eq!(code, 1);
    assert!(out.contains("cone of the identity is exact"), "{out}");
    assert!(!m.data["failures"].as_array().unwrap().is_empty());
    let (code, _, _) = relhom(&["verify", "--suite", "complexes", "--seed", "3", "--cases", "4"]);
    assert_eq!(code, 0);
}

#[test]
fn every_suite_passes() {
    let (code, m, out) = machine(&["verify", "--suite", "all", "--seed", "42", "--cases", "8"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(m.data["failures"], serde_json::json!([]));
}

#[test]
fn emit_round_trips_through_check() {
    let (code, text, _) = relhom(&["emit", "a3"]);
    assert_eq!(code, 0);
    let f = temp_file(&text);
    let (code, m, _) = machine(&["check", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(m.data["modules"].as_array().unwrap().len(), 4);
}
