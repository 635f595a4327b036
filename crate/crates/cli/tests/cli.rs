use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn deltakit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deltakit"))
        .args(args)
        .env_remove("DELTAKIT_PRIME")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn validator() -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/output.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn set(v: &Value) -> Vec<String> {
    let mut s: Vec<String> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect();
    s.sort();
    s
}

#[test]
fn parity_is_deterministic_given_a_seed() {
    let k3 = fixture("k3.json");
    let args = ["parity", &k3, "--pairs", "1:2", "--seed", "7"];
    let (a, b) = (deltakit(&args), deltakit(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["value"], 0);
    assert_eq!(v["seed"], 7);
    assert_eq!(set(&v["witness"]), ["1", "2"]);
}

#[test]
fn intersect_finds_a_common_set() {
    let out = deltakit(&["intersect", &fixture("a.json"), &fixture("b.json"), "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let w = set(&json(&out)["witness"]);
    assert!(w.is_empty() || w == ["a", "b", "c", "d"], "{w:?}");
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = deltakit(&["intersect", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn invalid_instances_are_usage_errors() {
    for name in ["not_skew.json", "reserved.json", "missing.json"] {
        let out = deltakit(&["check-axioms", &fixture(name)]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        assert!(!out.stderr.is_empty());
    }
    let out = deltakit(&["check-axioms", &fixture("k3.json"), "--prime", "2147483647"]);
    assert_eq!(out.status.code(), Some(2));
    let out = deltakit(&["maxweight", &fixture("k3.json"), "--eps", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn nothing_found_exits_with_one() {
    let out = deltakit(&["intersect", &fixture("twist.json"), &fixture("edgeless.json"), "--seed", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert!(v.get("witness").is_none());
    assert!(String::from_utf8_lossy(&out.stderr).contains("no solution found"));
}

#[test]
fn randomized_failures_exit_with_three() {
    use deltakit::Error;
    use deltakit_cli::app::exit_code;
    assert_eq!(exit_code(&Error::RandomizationFailure { attempts: 3 }), 3);
    assert_eq!(exit_code(&Error::NoCommonSet), 1);
    assert_eq!(exit_code(&Error::NotFound), 1);
    assert_eq!(exit_code(&Error::Singular), 2);
}

#[test]
fn prime_comes_from_flag_then_environment() {
    let k3 = fixture("k3.json");
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_deltakit"));
        c.args(["maxweight", &k3, "--seed", "1"]).args(extra);
        match env {
            Some(p) => c.env("DELTAKIT_PRIME", p),
            None => c.env_remove("DELTAKIT_PRIME"),
        };
        c.output().unwrap().status.code()
    };
    assert_eq!(run(Some("4294967291"), &[]), Some(0));
    assert_eq!(run(Some("4294967295"), &[]), Some(2));
    assert_eq!(run(Some("not a number"), &[]), Some(2));
    assert_eq!(run(Some("4294967295"), &["--prime", "4294967291"]), Some(0));
}

#[test]
fn timing_is_opt_in() {
    let k3 = fixture("k3.json");
    let plain = json(&deltakit(&["maxweight", &k3, "--seed", "1"]));
    assert!(plain.get("timing_ms").is_none());
    let timed = json(&deltakit(&["maxweight", &k3, "--seed", "1", "--timing"]));
    assert!(timed["timing_ms"].as_f64().unwrap() >= 0.0);
}

#[test]
fn seed_defaults_to_entropy_and_is_echoed() {
    let out = deltakit(&["maxweight", &fixture("k3.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["seed"].is_u64());
    assert_eq!(v["eps"].as_f64().unwrap(), 1.0 / 1_048_576.0);
}

#[test]
fn solver_values() {
    let (a, b, k3) = (fixture("a.json"), fixture("b.json"), fixture("k3.json"));
    let run = |args: &[&str]| {
        let out = deltakit(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        json(&out)
    };
    assert_eq!(run(&["maxweight", &fixture("twist.json"), "--seed", "1"])["value"], 4);
    assert_eq!(run(&["maxweight", &k3, "--weights", "3=-1", "--seed", "1"])["value"], 0);
    let cover = run(&["cover", &a, &b, "--seed", "1"]);
    assert_eq!(cover["value"], 4);
    let dc = run(&["deltacover", &a, &k3, "--seed", "1"]);
    assert_eq!(dc["value"], 6);
    let p = run(&["partition", &a, &b, "--seed", "1"]);
    let (f1, f2) = (set(&p["witness"]["f1"]), set(&p["witness"]["f2"]));
    assert_eq!(f1.len() + f2.len(), 4);
    let wi = run(&["wintersect", &a, &b, "--weights", "a=2,b=1", "--seed", "1"]);
    assert_eq!(wi["value"], 3);
    assert_eq!(set(&wi["witness"]), ["a", "b", "c", "d"]);
    let par = run(&["parity", &fixture("projected.json"), "--seed", "1"]);
    assert_eq!(par["value"], 0);
}

#[test]
fn constructions_emit_readable_instances() {
    let dir = std::env::temp_dir().join(format!("deltakit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let [pr, tw, a, k3, c] =
        ["projected.json", "twist.json", "a.json", "k3.json", "contraction.json"].map(fixture);
    let cases: [&[&str]; 5] = [
        &["union", &pr, &tw, "--family"],
        &["deltasum", &a, &k3, "--family"],
        &["project", &c, "--set", "a,b", "--elementary", "--family"],
        &["convert", &tw, "--to", "contraction"],
        &["convert", &c, "--to", "twist"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let mut args = args.to_vec();
        args.extend(["--seed", "5"]);
        let out = deltakit(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let v = json(&out);
        let path = dir.join(format!("{i}.json"));
        std::fs::write(&path, v["value"].to_string()).unwrap();
        let check = deltakit(&["check-axioms", path.to_str().unwrap(), "--seed", "5"]);
        assert_eq!(check.status.code(), Some(0), "{args:?}");
        if let Some(fam) = v.get("family") {
            assert_eq!(&json(&check)["family"], fam, "{args:?}");
        }
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn outputs_validate_against_the_schema() {
    let validator = validator();
    let [a, b, k3, tw, el, mt] =
        ["a.json", "b.json", "k3.json", "twist.json", "edgeless.json", "matroid.json"].map(fixture);
    let runs: Vec<Vec<&str>> = vec![
        vec!["check-axioms", &k3],
        vec!["check-axioms", &mt],
        vec!["convert", &k3, "--to", "reduced"],
        vec!["union", &a, &b, "--family"],
        vec!["deltasum", &a, &b],
        vec!["project", &a, "--set", "a"],
        vec!["maxweight", &tw, "--timing"],
        vec!["cover", &a, &b],
        vec!["deltacover", &a, &b],
        vec!["intersect", &a, &b],
        vec!["intersect", &tw, &el],
        vec!["partition", &a, &b],
        vec!["parity", &k3, "--pairs", "1:2"],
        vec!["wintersect", &a, &b, "--reduce"],
    ];
    for args in runs {
        let out = deltakit(&args);
        assert!(matches!(out.status.code(), Some(0 | 1)), "{args:?}");
        let v = json(&out);
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
    let bad = serde_json::json!({"command": "parity", "seed": 1, "eps": 2.0});
    assert!(!validator.is_valid(&bad));
}

#[test]
fn bench_prints_csv() {
    let out = deltakit(&["bench", "--sizes", "", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "n,pfaffian_ms,rank_ms,deltasum_ms,parity_ms\n");
    let out = deltakit(&["bench", "--sizes", "8,16", "--seed", "1"]);
    let text = String::from_utf8_lossy(&out.stdout);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[1].starts_with("8,") && rows[2].starts_with("16,"));
    assert_eq!(deltakit(&["bench", "--sizes", "x"]).status.code(), Some(2));
}

// Timing-sensitive; run with `cargo test -- --ignored` on an idle machine.
#[test]
#[ignore]
fn rank_time_grows_roughly_cubically() {
    let out = deltakit(&["bench", "--sizes", "100,200,400", "--seed", "3"]);
    let text = String::from_utf8_lossy(&out.stdout);
    let rank: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    for w in rank.windows(2) {
        let ratio = w[1] / w[0];
        assert!((6.0..=12.0).contains(&ratio), "{rank:?}");
    }
}
