use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dicke-hp"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn dicke-hp")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const TINY: &str = r#"
model = "dicke"
mode = "thermo"
lambda = [0.0, 0.25, 0.5, 0.75, 1.0]
"#;

const SMALL_ED: &str = r#"
model = "dicke"
mode = "ed"
lambda = { start = 0.2, stop = 0.8, points = 4 }
ed = { n_spins = [4, 8] }
"#;

#[test]
fn tiny_sweep_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "tiny.toml", TINY);
    let out = dir.path().join("tiny.csv");
    let o = run(&["sweep", "--config", s(&cfg), "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let got = std::fs::read_to_string(&out).unwrap();
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/tiny_thermo.csv");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&golden, &got).unwrap();
    }
    assert_eq!(got, std::fs::read_to_string(&golden).unwrap());
}

#[test]
fn output_is_independent_of_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "ed.toml", SMALL_ED);
    let outputs: Vec<Vec<u8>> = ["1", "4"]
        .iter()
        .map(|w| {
            let o = run(&["sweep", "--config", s(&cfg), "--workers", w, "--seed", "7"]);
            assert_eq!(code(&o), 0);
            o.stdout
        })
        .collect();
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(run(&["sweep", "--config", s(&cfg), "--seed", "7"]).stdout, outputs[0]);
}

#[test]
fn json_output_is_a_table() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "ed.toml", SMALL_ED);
    let o = run(&["sweep", "--config", s(&cfg), "--format", "json"]);
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let width = doc["columns"].as_array().unwrap().len();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.as_array().unwrap().len() == width));
    assert_eq!(doc["header"]["entropy_units"], "bits");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.toml", "model = \"dicke\"\nmode = \"thermo\"\nlambda = []\n");
    assert_eq!(code(&run(&["sweep", "--config", s(&empty)])), 2);
    let unknown = write(dir.path(), "unknown.toml", "model = \"dicke\"\nmode = \"thermo\"\nlambda = [0.1]\nlamda = 1\n");
    assert_eq!(code(&run(&["sweep", "--config", s(&unknown)])), 2);
    assert_eq!(code(&run(&["sweep", "--config", s(&dir.path().join("missing.toml"))])), 2);

    let ed = write(dir.path(), "ed.toml", SMALL_ED);
    let o = run(&["sweep", "--config", s(&ed), "--budget-nnz", "10"]);
    assert_eq!(code(&o), 3);
    // partial output still carries every row
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 9);

    let tiny = write(dir.path(), "tiny.toml", TINY);
    let blocked = write(dir.path(), "file", "");
    let o = run(&["sweep", "--config", s(&tiny), "--out", s(&blocked.join("x.csv"))]);
    assert_eq!(code(&o), 1);
}

#[test]
fn validate_config_reports_the_sweep_hash() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "tiny.toml", TINY);
    let o = run(&["validate-config", "--config", s(&cfg)]);
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let hash = doc["hash"].as_str().unwrap();
    let sweep = String::from_utf8(run(&["sweep", "--config", s(&cfg)]).stdout).unwrap();
    assert!(sweep.contains(&format!("# config_hash: {hash}")));

    // the same sweep written as JSON hashes identically
    let json = write(
        dir.path(),
        "tiny.json",
        r#"{"model": "dicke", "mode": "thermo", "lambda": [0.0, 0.25, 0.5, 0.75, 1.0]}"#,
    );
    let o = run(&["validate-config", "--config", s(&json)]);
    let doc2: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc2["hash"], doc["hash"]);
}

#[test]
fn fit_recovers_the_critical_exponent() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "near.toml",
        "model = \"dicke\"\nmode = \"thermo\"\nlambda = [0.49999999, 0.4999999, 0.499999, 0.49999, 0.49995, 0.5, 0.5001]\n",
    );
    let data = dir.path().join("near.csv");
    assert_eq!(code(&run(&["sweep", "--config", s(&cfg), "--out", s(&data)])), 0);
    let o = run(&["fit", "--input", s(&data), "--column", "hp", "--x", "lambda_c", "--center", "0.5", "--window", "1e-9:6e-5"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // the critical point itself and the far superradiant point drop out
    assert_eq!(report["n_samples"], 5);
    let exponent = report["exponent"].as_f64().unwrap();
    assert!((exponent + 0.25).abs() < 0.01, "exponent {exponent}");

    let junk = write(dir.path(), "junk.csv", "a,b\n1,2\n");
    assert_eq!(code(&run(&["fit", "--input", s(&junk), "--x", "a"])), 2);
    assert_eq!(code(&run(&["fit", "--input", s(&data), "--x", "lambda_c", "--window", "3:1"])), 2);
}

#[test]
fn figure_writes_files_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["figure", "--id", "1", "--out", s(dir.path()), "--max-n", "10"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let manifest: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("manifest.json")).unwrap()).unwrap();
    let files = manifest["files"].as_array().unwrap();
    assert_eq!(files.len(), 3);
    for f in files {
        assert!(dir.path().join(f["file"].as_str().unwrap()).exists());
        assert!(f["config_hash"].as_str().unwrap().starts_with("sha256:"));
    }
    assert!(manifest["deviations"].as_array().unwrap().iter().any(|d| d.as_str().unwrap().starts_with("inset")));
    assert_eq!(code(&run(&["figure", "--id", "4", "--out", s(dir.path())])), 2);
}
