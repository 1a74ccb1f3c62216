use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value as Json;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn parahom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parahom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn diagram_prints_json_and_csv() {
    let vpath = fixture("vpath.json");
    let json = parahom(&["diagram", &vpath, "--kind", "c", "--degree", "0"]);
    assert_eq!(code(&json), 0);
    assert_eq!(stdout(&json), "[{\"x\":0,\"y\":2,\"mult\":1}]\n");

    let csv = parahom(&["diagram", &vpath, "--kind", "closed", "--format", "csv"]);
    assert_eq!(code(&csv), 0);
    assert_eq!(stdout(&csv), "x,y,mult\n0,2,1\n");
}

#[test]
fn single_vertex_has_no_half_open_points() {
    let out = parahom(&["diagram", &fixture("point.json"), "--kind", "co"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "[]\n");
}

#[test]
fn bad_inputs_exit_with_two() {
    let malformed = parahom(&["diagram", &fixture("malformed.json"), "--kind", "c"]);
    assert_eq!(code(&malformed), 2);
    assert!(malformed.stdout.is_empty());
    assert!(!malformed.stderr.is_empty());

    let missing = parahom(&["diagram", &fixture("absent.json"), "--kind", "c"]);
    assert_eq!(code(&missing), 2);

    let unknown_kind = parahom(&["diagram", &fixture("vpath.json"), "--kind", "x"]);
    assert_eq!(code(&unknown_kind), 2);

    assert_eq!(code(&parahom(&[])), 2);
    assert_eq!(code(&parahom(&["--help"])), 0);
}

#[test]
fn measure_counts_bars_and_box_masses() {
    let vpath = fixture("vpath.json");
    let mu = parahom(&[
        "measure", &vpath, "--flavor", "mu-c", "--box", "-1", "0", "2", "3",
    ]);
    assert_eq!((code(&mu), stdout(&mu).as_str()), (0, "1\n"));

    let f = parahom(&[
        "measure", &vpath, "--flavor", "F", "--box", "-1", "0", "2", "3",
    ]);
    assert_eq!((code(&f), stdout(&f).as_str()), (0, "1\n"));

    let co = parahom(&[
        "measure", &vpath, "--flavor", "mu-co", "--box", "0", "1", "2", "inf",
    ]);
    assert_eq!((code(&co), stdout(&co).as_str()), (0, "1\n"));
}

#[test]
fn degenerate_boxes_are_rejected() {
    let vpath = fixture("vpath.json");
    for flavor in ["mu-c", "F", "T-above"] {
        let out = parahom(&[
            "measure", &vpath, "--flavor", flavor, "--box", "1", "0", "2", "3",
        ]);
        assert_eq!(code(&out), 2, "{flavor}");
    }
    let few = parahom(&["measure", &vpath, "--flavor", "F", "--box", "0", "1", "2"]);
    assert_eq!(code(&few), 2);
}

#[test]
fn verify_accepts_computed_bars_and_flags_a_corrupt_sidecar() {
    let cycle = fixture("cycle4.json");
    let good = parahom(&["verify", &cycle]);
    assert_eq!(code(&good), 0);
    let body: Json = serde_json::from_slice(&good.stdout).unwrap();
    assert_eq!(body["pass"], Json::Bool(true));

    let expected = parahom(&["verify", &cycle, "--expect", &fixture("cycle4.bars.json")]);
    assert_eq!(code(&expected), 0);

    let corrupt = parahom(&[
        "verify",
        &cycle,
        "--expect",
        &fixture("cycle4.corrupt.bars.json"),
    ]);
    assert_eq!(code(&corrupt), 1);
    let body: Json = serde_json::from_slice(&corrupt.stdout).unwrap();
    assert_eq!(body["pass"], Json::Bool(false));
    assert!(body["report"]["failed"].as_u64().unwrap() > 0);
}

#[test]
fn verify_runs_random_batches() {
    let out = parahom(&[
        "verify",
        "--random",
        "--count",
        "50",
        "--vertices",
        "6",
        "--max-dim",
        "2",
        "--seed",
        "11",
    ]);
    assert_eq!(code(&out), 0);
    let body: Json = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(body["count"], 50);
    let instances = body["instances"].as_array().unwrap();
    assert_eq!(instances.len(), 50);
    assert!(instances
        .iter()
        .enumerate()
        .all(|(i, x)| x["seed"] == 11 + i as u64));
}

#[test]
fn random_documents_are_deterministic_and_loadable() {
    let args = [
        "random",
        "--vertices",
        "7",
        "--max-dim",
        "3",
        "--density",
        "0.6",
        "--seed",
        "42",
    ];
    let (first, second) = (parahom(&args), parahom(&args));
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);

    let path = std::env::temp_dir().join(format!("parahom-random-{}.json", std::process::id()));
    std::fs::write(&path, &first.stdout).unwrap();
    let verified = parahom(&["verify", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code(&verified), 0);
}

#[test]
fn random_density_extremes() {
    let sparse: Json = serde_json::from_slice(
        &parahom(&["random", "--vertices", "5", "--density", "0", "--seed", "1"]).stdout,
    )
    .unwrap();
    let simplices = sparse["simplices"].as_array().unwrap();
    assert_eq!(simplices.len(), 5);
    assert!(simplices.iter().all(|s| s.as_array().unwrap().len() == 1));

    let full: Json = serde_json::from_slice(
        &parahom(&[
            "random",
            "--vertices",
            "4",
            "--max-dim",
            "2",
            "--density",
            "1",
            "--seed",
            "1",
        ])
        .stdout,
    )
    .unwrap();
    let sizes: Vec<usize> = full["simplices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_array().unwrap().len())
        .collect();
    assert_eq!(sizes.iter().filter(|&&n| n == 2).count(), 6);
    assert_eq!(sizes.iter().filter(|&&n| n == 3).count(), 4);
    assert!(sizes.iter().all(|&n| n <= 3));

    let bad = parahom(&["random", "--density", "1.5"]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn barcode_routes_agree() {
    let cycle = fixture("cycle4.json");
    let outputs: Vec<String> = ["pyramid", "masses", "zigzag"]
        .iter()
        .map(|route| {
            let out = parahom(&["barcodes", &cycle, "--route", route]);
            assert_eq!(code(&out), 0, "{route}");
            stdout(&out)
        })
        .collect();
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
    let bars: Json = serde_json::from_str(&outputs[0]).unwrap();
    assert_eq!(bars.as_array().unwrap().len(), 2);
}
