use std::process::{Command, Output};

fn qdensity(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdensity")).args(args).env_remove("QDENSITY_PRECISION_BITS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_prints_value_bound_and_terms() {
    let o = qdensity(&["eval", "--subset", "1 mod 3", "--q", "0.95", "--digits", "9"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("value = 0.333333333+0.000000000i"), "{text}");
    assert!(text.contains("bound = ") && text.contains("terms = "));
}

#[test]
fn eval_json_shape() {
    let o = qdensity(&["eval", "--subset", "1 mod 2", "--q", "0.5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let re: f64 = v["value"]["re"].as_str().unwrap().parse().unwrap();
    assert!((re - 0.439_437_9).abs() < 1e-7);
    assert!(v["bound"].as_f64().unwrap() <= 1e-12);
    assert!(v["terms"].as_u64().unwrap() > 0);
}

#[test]
fn eval_both_routes_and_z_mapping() {
    let o = qdensity(&["eval", "--subset", "1 mod 3", "--q", "-0.5+0.6i", "--route", "both", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let get = |route: &str| -> f64 { v[route]["value"]["re"].as_str().unwrap().parse().unwrap() };
    assert!((get("direct") - get("sieve")).abs() < 1e-11);

    let o = qdensity(&["eval", "--subset", "1 mod 2", "--z", "1+0.02i", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("input,value_re,value_im,bound,terms"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "1+0.02i");
    assert!((row[1].parse::<f64>().unwrap() - 0.5).abs() < 1e-7);
}

#[test]
fn eval_all_at_zero() {
    let o = qdensity(&["eval", "--subset", "all", "--q", "0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"]["re"], "0.0");
}

#[test]
fn exit_codes() {
    assert_eq!(qdensity(&["eval", "--subset", "1 mod", "--q", "0.5"]).status.code(), Some(2));
    assert_eq!(qdensity(&["eval", "--subset", "5 mod 3", "--q", "0.5"]).status.code(), Some(2));
    assert_eq!(qdensity(&["eval", "--subset", "all", "--z", "1-0.1i"]).status.code(), Some(2));
    assert_eq!(qdensity(&["table", "ex5.0"]).status.code(), Some(2));
    assert_eq!(qdensity(&["verify", "everything"]).status.code(), Some(2));
    let o = qdensity(&["eval", "--subset", "all", "--q", "0.9999", "--max-terms", "1000"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("resource limit"));
}

#[test]
fn precision_environment_variable() {
    let o = Command::new(env!("CARGO_BIN_EXE_qdensity"))
        .args(["eval", "--subset", "1 mod 3", "--q", "0.9i", "--format", "json"])
        .env("QDENSITY_PRECISION_BITS", "128")
        .output()
        .unwrap();
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let re: f64 = v["value"]["re"].as_str().unwrap().parse().unwrap();
    assert!((re - 0.294_214_9).abs() < 1e-6);

    let o = Command::new(env!("CARGO_BIN_EXE_qdensity"))
        .args(["eval", "--subset", "1 mod 3", "--q", "0.9"])
        .env("QDENSITY_PRECISION_BITS", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn table_csv_and_plot_data() {
    let o = qdensity(&["table", "ex4.2", "--digits", "6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 9);
    assert!(lines[8].starts_with("0.97,0.639893,"), "{}", lines[8]);

    let text = stdout(&qdensity(&["table", "ex1.1", "--plot-data"]));
    assert_eq!(text.lines().count(), 11);
    assert!(text.starts_with("x,value_re,value_im\n0.1,"));

    let v: serde_json::Value =
        serde_json::from_slice(&qdensity(&["table", "ex4.1-imag", "--format", "json"]).stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert_eq!(rows[8]["input"], "0.99i");
}

#[test]
fn table_check_and_output_file() {
    assert_eq!(qdensity(&["table", "ex4.2", "--check"]).status.code(), Some(0));
    let dir = std::env::temp_dir().join(format!("qdensity-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ex4.2.csv");
    let o = qdensity(&["table", "ex4.2", "--output", path.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("input,value_re"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn tables_are_deterministic() {
    let a = qdensity(&["table", "ex4.3", "--format", "json"]).stdout;
    let b = qdensity(&["table", "ex4.3", "--format", "json"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn verify_suites() {
    for args in [
        &["verify", "identities", "--order", "200"][..],
        &["verify", "corollary12", "--bound", "60"],
        &["verify", "oracle", "--bound", "40", "--subset", "2 mod 2"],
        &["verify", "duality"],
        &["verify", "sieve-vs-direct"],
        &["verify", "qbinomial"],
    ] {
        let o = qdensity(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["passed"], true);
    }
}

#[test]
fn density_outputs() {
    let text = stdout(&qdensity(&["density", "--subset", "kfree 2 5"]));
    assert!(text.starts_with("16/25 = 0.64\n"), "{text}");
    let text = stdout(&qdensity(&["density", "--subset", "kfree 4 5"]));
    assert!(text.contains("208/225 = 0.924444"));
    assert!(text.contains("90/pi^4 = 0.923938"));
    let text = stdout(&qdensity(&["density", "--subset", "1 mod 2 | 0 mod 2"]));
    assert_eq!(text.trim(), "1 = 1");
    let v: serde_json::Value =
        serde_json::from_slice(&qdensity(&["density", "--subset", "kfree 3 2", "--format", "json"]).stdout).unwrap();
    assert_eq!(v["density"], "7/8");
    assert!(v.get("reference").is_none());
}

#[test]
fn pell_records() {
    let v: serde_json::Value = serde_json::from_slice(&qdensity(&["pell", "--count", "3"]).stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(
        (rows[1]["x"].as_str(), rows[1]["y"].as_str(), rows[1]["m"].as_str()),
        (Some("49"), Some("20"), Some("-8"))
    );
    assert_eq!(rows[2]["square_pentagonal"], "9801");
}

#[test]
fn oracle_check_command() {
    let o = qdensity(&["oracle-check", "--subset", "kfree 2 3", "--bound", "25"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 26);
    assert_eq!(qdensity(&["oracle-check", "--subset", "all", "--bound", "500"]).status.code(), Some(3));
}
