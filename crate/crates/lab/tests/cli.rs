use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graded-image-lab"))
        .args(args)
        .env_remove("GRADED_IMAGE_LAB_CONFIG")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("graded-image-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const UT4_Z3: &str = "UT(4) over GF(11) graded Z3 by [1,2,2]";

#[test]
fn check_identity_exit_codes() {
    let ok = lab(&["check-identity", "--algebra", UT4_Z3, "--poly", "deg y1=0, y2=0, z3=1 in Z3; f = [y1,y2]*z3"]);
    assert_eq!(code(&ok), 0, "{}", String::from_utf8_lossy(&ok.stderr));
    assert_eq!(json(&ok)["results"][0]["identity"], true);

    let not = lab(&["check-identity", "--algebra", "UT(2) over GF(7)", "--poly", "[x1,x2]"]);
    assert_eq!(code(&not), 1);
    let w = &json(&not)["results"][0]["witness"];
    assert_eq!(w["args"].as_array().unwrap().len(), 2);
    assert_ne!(w["value"], "0");

    let bad = lab(&["check-identity", "--algebra", "UT(2) over GF(7)", "--poly", "x1*x1 +"]);
    assert_eq!(code(&bad), 2);
    assert!(!bad.stderr.is_empty());
    assert!(bad.stdout.is_empty());
}

#[test]
fn classify_reports() {
    let o = lab(&["classify", "--algebra", "UT(3) over GF(7)", "--poly", "[x1,x2]"]);
    assert_eq!(code(&o), 0);
    let r = &json(&o)["results"][0];
    assert_eq!(r["predicted"]["name"], "J^1");
    assert_eq!(r["predicted"]["theorem"], "commutator-degree");
    assert_eq!(r["verdict"]["status"], "verified");
    assert_eq!(r["span"]["dim"], 3);
    assert_eq!(r["verdict"]["witnesses"].as_array().unwrap().len(), 3);

    let o = lab(&["classify", "--algebra", "UT(4) over GF(11) graded Z2 step", "--poly", "deg z1=1, y2=0, y3=0 in Z2; f = z1*[y2,y3]"]);
    assert_eq!(code(&o), 0);
    let r = &json(&o)["results"][0];
    assert_eq!(r["predicted"]["name"], "B_1,1");
    assert_eq!(r["verdict"]["status"], "verified");
}

#[test]
fn classify_rejects_corrupt_and_unsupported_algebras() {
    let corrupt = "UT(2) over GF(7) custom Z2; component 1: e(1,1), e(2,2); component 0: e(1,2)";
    assert_eq!(code(&lab(&["classify", "--algebra", corrupt, "--poly", "x1"])), 3);
    assert_eq!(code(&lab(&["classify", "--algebra", "UT(3) over GF(7) graded Z2 by [1]", "--poly", "x1"])), 3);
    assert_eq!(code(&lab(&["classify", "--algebra", "M(2) over GF(7)", "--poly", "x1*x2"])), 3);

    let file = scratch("custom.alg");
    std::fs::write(&file, "# a valid table\nUT(2) over GF(7) custom Z2\ncomponent 0: e(1,1), e(2,2)\ncomponent 1: e(1,2)\n").unwrap();
    let o = lab(&["span", "--algebra", file.to_str().unwrap(), "--poly", "deg z1=1, y2=0 in Z2; f = z1*y2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["results"][0]["basis"][0], "e(1,2)");
}

#[test]
fn central_scan() {
    let o = lab(&["central-scan", "--algebra", "UT(3) over GF(7) graded Z3 natural", "--samples", "1000"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["polynomials"], 1000);
    assert_eq!(r["counts"]["central"], 0);
    assert_eq!(r["counts"]["mismatch_bug"], 0);

    let one = lab(&["central-scan", "--algebra", "UT(2) over GF(7)", "--poly", "y1", "--samples", "1"]);
    assert_eq!(code(&one), 0);
    assert_eq!(json(&one)["results"][0]["verdict"], "proper");

    assert_eq!(code(&lab(&["central-scan", "--algebra", "UT(2) over GF(7)", "--samples", "0"])), 2);
}

#[test]
fn traceless() {
    let o = lab(&["traceless", "--poly", "[x1,x2]", "--size", "3", "--field", "GF(7)", "--samples", "50"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&o);
    assert_eq!(r["status"], "verified");
    assert_eq!(r["samples"].as_array().unwrap().len(), 50);

    let nested = lab(&["traceless", "--poly", "[[x1,x2],x3]", "--size", "3", "--field", "GF(7)"]);
    assert_eq!(code(&nested), 5);
    assert!(String::from_utf8_lossy(&nested.stderr).contains("hypothesis"));

    assert_eq!(code(&lab(&["traceless", "--poly", "[x1,x2]", "--size", "3", "--field", "GF(3)"])), 5);
}

#[test]
fn verify_against_a_given_target() {
    let alg = "UT(3) over GF(7)";
    let ok = lab(&["verify", "--algebra", alg, "--poly", "[x1,x2]", "--target", "J^1"]);
    assert_eq!(code(&ok), 0);
    assert_eq!(json(&ok)["results"][0]["verdict"]["status"], "verified");
    // J^2 is strictly smaller than the image
    let too_small = lab(&["verify", "--algebra", alg, "--poly", "[x1,x2]", "--target", "J^2"]);
    assert_eq!(code(&too_small), 4);
    assert_eq!(json(&too_small)["results"][0]["verdict"]["status"], "mismatch-bug");
}

#[test]
fn degree_and_corpus() {
    let o = lab(&["degree", "--poly", "[x1,x2]*[x3,x4]", "--field", "GF(7)"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["results"][0]["commutator_degree"], 2);

    let out = scratch("corpus.txt");
    let c = lab(&["corpus", "--algebra", "UT(3) over GF(7) graded Z2 step", "--samples", "25", "--seed", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&c), 0);
    assert!(c.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 25);
    let again = lab(&["corpus", "--algebra", "UT(3) over GF(7) graded Z2 step", "--samples", "25", "--seed", "3"]);
    assert_eq!(again.stdout, text.as_bytes());

    let s = lab(&["span", "--algebra", "UT(3) over GF(7) graded Z2 step", "--poly", out.to_str().unwrap()]);
    assert_eq!(code(&s), 0);
    assert_eq!(json(&s)["results"].as_array().unwrap().len(), 25);
}

#[test]
fn reports_are_deterministic_and_carry_the_seed() {
    let args = ["classify", "--algebra", "UT(3) over GF(7) graded Z3 natural", "--poly", "deg z1=1, y2=0 in Z3; f = z1*y2 + 2*y2*z1", "--seed", "77"];
    let a = lab(&args);
    let b = lab(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["header"]["seed"], 77);
    let c = lab(&["classify", "--algebra", "UT(3) over GF(7) graded Z3 natural", "--poly", "deg z1=1, y2=0 in Z3; f = z1*y2 + 2*y2*z1", "--seed", "78"]);
    assert_eq!(json(&c)["header"]["seed"], 78);

    let pretty = lab(&["classify", "--algebra", "UT(3) over GF(7)", "--poly", "[x1,x2]", "--pretty"]);
    let text = String::from_utf8(pretty.stdout).unwrap();
    assert!(text.starts_with("graded-image-lab classify | seed "));
    assert!(text.contains("J^1"));
}

#[test]
fn config_file_sits_between_flags_and_defaults() {
    let cfg = scratch("lab.toml");
    std::fs::write(&cfg, "field = \"GF(13)\"\nseed = 5\n").unwrap();
    let run = |extra: &[&str]| {
        let mut args = vec!["degree", "--poly", "x1*x2"];
        args.extend_from_slice(extra);
        let o = Command::new(env!("CARGO_BIN_EXE_graded-image-lab")).args(&args).env("GRADED_IMAGE_LAB_CONFIG", &cfg).output().unwrap();
        json(&o)["header"].clone()
    };
    let h = run(&[]);
    assert_eq!((h["field"].as_str(), h["seed"].as_u64()), (Some("GF(13)"), Some(5)));
    let h = run(&["--field", "GF(7)", "--seed", "9"]);
    assert_eq!((h["field"].as_str(), h["seed"].as_u64()), (Some("GF(7)"), Some(9)));
    let h = json(&lab(&["degree", "--poly", "x1*x2"]))["header"].clone();
    assert_eq!(h["field"], "GF(11)");

    std::fs::write(&cfg, "field = 7\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_graded-image-lab"))
        .args(["degree", "--poly", "x1"])
        .env("GRADED_IMAGE_LAB_CONFIG", &cfg)
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn selftest_subset_and_negative_control() {
    let a = lab(&["selftest", "--criterion", "2", "--criterion", "7"]);
    assert_eq!(code(&a), 0);
    let r = json(&a);
    assert_eq!(r["passed"], true);
    assert_eq!(r["criteria"].as_array().unwrap().len(), 2);
    assert_eq!(lab(&["selftest", "--criterion", "2", "--criterion", "7"]).stdout, a.stdout);

    let bug = lab(&["selftest", "--criterion", "9", "--inject-jordan-bug", "--pretty"]);
    assert_eq!(code(&bug), 1);
    let text = String::from_utf8(bug.stdout).unwrap();
    assert!(text.contains("FAIL"));
    assert!(text.contains("Jacobson"));

    assert_eq!(code(&lab(&["selftest", "--criterion", "12"])), 2);
}
