//! Black-box tests of the `graphtec` binary.

use std::process::{Command, Output};

fn graphtec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphtec"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("process should not be signalled")
}

#[test]
fn help_exits_zero() {
    let out = graphtec(&["--help"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("montecarlo"));
}

#[test]
fn cost_csv_total_is_in_band() {
    let out = graphtec(&["cost", "--scenario", "US_SG"]);
    assert_eq!(exit_code(&out), 0);
    let csv = stdout(&out);
    assert!(csv.starts_with("# schema: breakdown.v1\n"), "header missing:\n{csv}");
    // the total row's final column is the breakeven price
    let total: f64 = csv
        .lines()
        .find(|l| l.starts_with("total,"))
        .unwrap()
        .rsplit(',')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!((7762.0..=9488.0).contains(&total), "total {total}");
}

#[test]
fn csv_and_json_agree_on_the_breakeven() {
    let csv_out = graphtec(&["cost", "--scenario", "CN_NG"]);
    let json_out = graphtec(&["cost", "--scenario", "CN_NG", "--format", "json"]);
    assert_eq!(exit_code(&csv_out), 0);
    assert_eq!(exit_code(&json_out), 0);
    let csv_total: f64 = stdout(&csv_out)
        .lines()
        .find(|l| l.starts_with("total,"))
        .unwrap()
        .rsplit(',')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    let json: serde_json::Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    let json_total = json["breakeven_price"].as_f64().unwrap();
    assert!((csv_total - json_total).abs() < 1e-6 * json_total);
}

#[test]
fn montecarlo_is_byte_deterministic() {
    let args = [
        "montecarlo", "--scenario", "US_NG", "--n", "500", "--seed", "42", "--prices", "7000",
    ];
    let first = graphtec(&args);
    let second = graphtec(&args);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());

    let reseeded = graphtec(&[
        "montecarlo", "--scenario", "US_NG", "--n", "500", "--seed", "43", "--prices", "7000",
    ]);
    assert_ne!(first.stdout, reseeded.stdout, "seed should change the draw");
}

#[test]
fn override_flag_shifts_the_cost() {
    let base = graphtec(&["cost", "--scenario", "US_SG"]);
    let cheap = graphtec(&[
        "cost", "--scenario", "US_SG", "--override", "factors.electricity_price=0.03",
    ]);
    assert_eq!(exit_code(&cheap), 0);
    let get = |o: &Output| -> f64 {
        stdout(o)
            .lines()
            .find(|l| l.starts_with("total,"))
            .unwrap()
            .rsplit(',')
            .next()
            .unwrap()
            .parse()
            .unwrap()
    };
    assert!(get(&cheap) < get(&base));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(exit_code(&graphtec(&["cost"])), 2, "missing --scenario");
    assert_eq!(exit_code(&graphtec(&["--no-such-flag"])), 2);
}

#[test]
fn validation_errors_exit_three() {
    let unknown = graphtec(&["cost", "--scenario", "ZZ_XX"]);
    assert_eq!(exit_code(&unknown), 3);
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("US_SG"), "should list valid names");

    let bad_param = graphtec(&["cost", "--scenario", "US_SG", "--override", "nope.nope=1"]);
    assert_eq!(exit_code(&bad_param), 3);

    let bad_value = graphtec(&["cost", "--scenario", "US_SG", "--override", "plant.capacity=x"]);
    assert_eq!(exit_code(&bad_value), 3);
}

#[test]
fn io_errors_exit_four() {
    let out = graphtec(&[
        "cost", "--scenario", "US_SG", "--out", "/nonexistent-dir/breakdown.csv",
    ]);
    assert_eq!(exit_code(&out), 4);
}

#[test]
fn out_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("projects.csv");
    let out = graphtec(&["projects", "--out", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.lines().count() > 9, "nine projects plus header");
}

#[test]
fn scenario_files_resolve_from_the_data_dir() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("cheap_power.toml"),
        "schema = 1\nbase = \"US_SG\"\n\n[overrides]\n\"factors.electricity_price\" = 0.03\n",
    )
    .unwrap();

    let by_env = Command::new(env!("CARGO_BIN_EXE_graphtec"))
        .env("GRAPHTEC_DATA_DIR", dir.path())
        .args(["cost", "--scenario", "cheap_power"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&by_env), 0);

    let by_path = graphtec(&[
        "cost", "--scenario", dir.path().join("cheap_power.toml").to_str().unwrap(),
    ]);
    assert_eq!(by_env.stdout, by_path.stdout);

    let by_override = graphtec(&[
        "cost", "--scenario", "US_SG", "--override", "factors.electricity_price=0.03",
    ]);
    assert_eq!(by_env.stdout, by_override.stdout);
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.toml");
    std::fs::write(&path, "schema = 1\nbase = \"US_SG\"\nnot valid toml here\n").unwrap();
    let out = graphtec(&["cost", "--scenario", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 3);
    assert!(
        String::from_utf8_lossy(&out.stderr).contains("line 3"),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn headroom_avoiding_everything_returns_the_target() {
    let out = graphtec(&[
        "headroom", "--scenario", "US_NG", "--target-price", "7000",
        "--avoid", "carbochlorination,spheronization,coating,plant",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let headroom: f64 = text
        .lines()
        .find(|l| l.starts_with("headroom,"))
        .unwrap()
        .rsplit(',')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!((headroom - 7000.0).abs() < 1e-6);
}
