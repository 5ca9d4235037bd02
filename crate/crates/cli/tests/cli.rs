use std::process::{Command, Output};

fn ait(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ait"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = ait(args);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn run_c2_prints_the_rest_of_the_program() {
    let o = ait(&["run", "--machine", "c2", "--raw", "0101", "--budget", "10"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("Halted \"101\""));
}

#[test]
fn run_sd_with_prefix_and_payload() {
    let v = json(&[
        "run",
        "--machine",
        "sd",
        "--prefix",
        "(c(r)(q()))",
        "--payload",
        "0",
        "--json",
    ]);
    assert_eq!(v["report"]["status"], "halted");
    assert_eq!(v["report"]["output"]["bits"], "0");
    let v = json(&[
        "run",
        "--machine",
        "sd",
        "--prefix",
        "(r)",
        "--payload",
        "10",
        "--json",
    ]);
    assert_eq!(v["report"]["fault"], "PayloadOverrun");
}

#[test]
fn omega_exact_emits_value_and_bits() {
    let v = json(&["omega", "exact", "--L", "24", "--emit-bits", "12", "--json"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["config"]["L"], 24);
    assert_eq!(v["report"]["value"], "1/2^16");
    assert_eq!(v["report"]["bits"], "000000000000");
    assert!(v["config"].get("workers").is_none());
}

#[test]
fn fgh_eval_at_omega() {
    let o = ait(&["fgh", "eval", "--ordinal", "w", "--n", "2"]);
    assert_eq!(stdout(&o).trim(), "65536");
    let v = json(&["fgh", "eval", "--ordinal", "3", "--n", "3", "--json"]);
    assert_eq!(v["report"]["value"]["tower"], 4);
    assert_eq!(v["report"]["value"]["top"], "3");
}

#[test]
fn exit_codes() {
    assert_eq!(ait(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(ait(&["sweep", "--no-such-flag"]).status.code(), Some(1));
    assert_eq!(
        ait(&["fgh", "eval", "--ordinal", "w", "--n", "2", "--csv"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        ait(&["omega", "lower", "--machine", "c2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ait(&["fgh", "eval", "--ordinal", "1+w", "--n", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        ait(&["fgh", "dominate", "--alpha", "w", "--beta", "w"])
            .status
            .code(),
        Some(2)
    );
    let flipped = ait(&["fas", "omegabits", "--system", "omega-bits", "--flip", "3"]);
    assert_eq!(flipped.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&flipped.stderr).contains("bit 3"));
    assert_eq!(ait(&["--help"]).status.code(), Some(0));
}

#[test]
fn unsound_system_aborts_with_the_false_theorem() {
    let o = ait(&["fas", "ceiling", "--system", "unsound"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("(r)1"));
}

#[test]
fn reports_do_not_depend_on_workers() {
    for args in [
        vec!["sweep", "--machine", "sd", "--L", "40", "--json"],
        vec!["coding", "--L", "32", "--json"],
        vec!["omega", "lower", "--L", "32", "--B", "100", "--json"],
    ] {
        let mut one = args.clone();
        one.extend(["--workers", "1"]);
        let mut four = args.clone();
        four.extend(["--workers", "4"]);
        let (a, b) = (ait(&one), ait(&four));
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn config_file_with_flags_winning() {
    let path = std::env::temp_dir().join(format!("ait-cli-test-{}.toml", std::process::id()));
    std::fs::write(&path, "machine = \"total\"\nL = 32\nformat = \"json\"\n").unwrap();
    let p = path.to_str().unwrap();
    let v = json(&["omega", "lower", "--config", p]);
    assert_eq!(v["config"]["L"], 32);
    assert_eq!(v["report"]["machine"], "total");
    let v = json(&["omega", "lower", "--config", p, "--L", "16"]);
    assert_eq!(v["report"]["L"], 16);
    std::fs::write(&path, "colour = 3\n").unwrap();
    assert_eq!(ait(&["sweep", "--config", p]).status.code(), Some(1));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn csv_table_sorted_by_output() {
    let o = ait(&["sweep", "--machine", "total", "--L", "32", "--csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("output,h_upper,witness,minimal_count,prob")
    );
    let outputs: Vec<&str> = lines.map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(outputs, vec!["", "0", "1"]);
}

#[test]
fn bits_and_sexpr_helpers() {
    let v = json(&["bits", "kraft", "0", "10", "11", "--json"]);
    assert_eq!(v["report"]["kraft_sum"], "1/2^0");
    assert_eq!(v["report"]["prefix_free"], true);
    let o = ait(&["sexpr", "encode", "()"]);
    assert_eq!(stdout(&o).trim(), "0010100000101001");
    let o = ait(&["sexpr", "decode", "00101000001010011"]);
    assert!(stdout(&o).starts_with("()"));
}

#[test]
fn diagonal_and_dominance() {
    assert_eq!(
        stdout(&ait(&["diag", "--members", "3", "--n", "2"])).trim(),
        "7"
    );
    let v = json(&[
        "fgh", "dominate", "--alpha", "0", "--beta", "1", "--points", "1,2,3", "--json",
    ]);
    assert_eq!(v["report"]["first_crossing"], 1);
    assert_eq!(v["report"]["rows"][2]["f_beta"]["exact"], "256");
}
