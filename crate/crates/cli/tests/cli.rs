use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cellgrowth"))
        .args(args)
        .env_remove("CELLGROWTH_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn profile_csv_lists_partition_numbers() {
    let o = run(&["profile", "--expr", "mset_inf(set)", "--n", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let values: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().to_string())
        .collect();
    assert_eq!(
        values,
        ["1", "1", "2", "3", "5", "7", "11", "15", "22", "30", "42"]
    );
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let csv = run(&[
        "profile",
        "--expr",
        "union(mset_inf(set),seq_dlo(set))",
        "--n",
        "30",
    ]);
    let js = run(&[
        "profile",
        "--expr",
        "union(mset_inf(set),seq_dlo(set))",
        "--n",
        "30",
        "--format",
        "json",
    ]);
    assert_eq!(csv.status.code(), Some(0));
    assert_eq!(js.status.code(), Some(0));
    let rows = json(&js)["rows"].as_array().unwrap().clone();
    let lines: Vec<String> = stdout(&csv).lines().skip(1).map(String::from).collect();
    assert_eq!(rows.len(), lines.len());
    let cell = |v: &serde_json::Value| match v {
        serde_json::Value::Null => String::new(),
        serde_json::Value::String(s) => s.clone(),
        v => v
            .as_f64()
            .map(|x| x.to_string())
            .unwrap_or_else(|| v.to_string()),
    };
    for (row, line) in rows.iter().zip(&lines) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[0], row["n"].to_string());
        assert_eq!(fields[1], cell(&row["value"]));
        assert_eq!(fields[2], cell(&row["log_value"]));
        assert_eq!(fields[3], cell(&row["normalizer"]));
    }
}

#[test]
fn classify_reports_regime_as_json() {
    let o = run(&[
        "classify",
        "--expr",
        "mset_inf(mset_inf(set))",
        "--n",
        "256",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["regime"], "log_iterated");
    assert_eq!(v["depth"], 3);
    assert_eq!(v["order"], 256);
}

#[test]
fn classify_rejects_short_profiles() {
    let o = run(&["classify", "--expr", "set", "--n", "100"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn check_agrees_on_small_union() {
    let o = run(&[
        "check",
        "--expr",
        "mset(2,edge)",
        "--width",
        "2",
        "--n",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["agree"] == true));
}

#[test]
fn check_handles_dense_orders() {
    let o = run(&[
        "check",
        "--expr",
        "seq_dlo(set)",
        "--width",
        "5",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn witness_matches_known_count() {
    let o = run(&["witness", "--n", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["value"], "558");
    assert_eq!(v["methods_agreed"], true);
}

#[test]
fn witness_beyond_capacity_exits_two() {
    let o = run(&["witness", "--n", "40"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bounds_pass_on_product_fixture() {
    let o = run(&[
        "bounds",
        "--expr",
        "union(mset_inf(set),mset(3,edge))",
        "--n",
        "40",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!json(&o)["checks"].as_array().unwrap().is_empty());
}

#[test]
fn parse_errors_exit_one() {
    assert_eq!(
        run(&["profile", "--expr", "mset(0,set)"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["profile", "--expr", "nope"]).status.code(), Some(1));
    assert_eq!(
        run(&["profile", "--expr", "set", "--fin", "x.json"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["profile"]).status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn fin_file_is_a_leaf() {
    let dir = std::env::temp_dir().join(format!("cellgrowth-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c4.json");
    std::fs::write(
        &path,
        r#"{"universe":4,"relations":[{"name":"E","arity":2,"tuples":[[0,1],[1,0],[1,2],[2,1],[2,3],[3,2],[3,0],[0,3]]}]}"#,
    )
    .unwrap();
    let o = run(&["profile", "--fin", path.to_str().unwrap(), "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let values: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().to_string())
        .collect();
    // orbits of the dihedral group of order 8 on subsets of a 4-cycle
    assert_eq!(values, ["1", "1", "2", "1", "1"]);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn thread_setting_is_honoured_and_validated() {
    let ok = Command::new(env!("CARGO_BIN_EXE_cellgrowth"))
        .args(["witness", "--n", "5"])
        .env("CELLGROWTH_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_cellgrowth"))
        .args(["witness", "--n", "5"])
        .env("CELLGROWTH_THREADS", "-1")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

fn last_values(o: &Output) -> Vec<String> {
    stdout(o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().to_string())
        .collect()
}

#[test]
fn documented_profile_examples() {
    let p = last_values(&run(&[
        "profile",
        "--expr",
        "mset_inf(set)",
        "--n",
        "5",
        "--format",
        "csv",
    ]));
    assert_eq!(&p[4..], ["5", "7"]);
    assert_eq!(
        last_values(&run(&["profile", "--expr", "set", "--n", "3"])),
        ["1", "1", "1", "1"]
    );
    let fib = last_values(&run(&["profile", "--expr", "seq_dlo(kset(2))", "--n", "6"]));
    assert_eq!(fib.last().unwrap(), "13");
}

#[test]
fn documented_classify_examples() {
    let v = json(&run(&["classify", "--expr", "mset_inf(mset_inf(point))"]));
    assert_eq!(v["regime"], "stretched_exponential");
    assert_eq!(v["k"], 2);
    let v = json(&run(&["classify", "--expr", "kset(4)"]));
    assert_eq!(v["regime"], "finite");
    let v = json(&run(&[
        "classify",
        "--expr",
        "mset_inf(mset_inf(mset_inf(point)))",
    ]));
    assert_eq!(v["regime"], "log_iterated");
    assert_eq!(v["r"], 1);
    assert_eq!(v["k"], 1);
}

#[test]
fn documented_witness_examples() {
    for (n, expected) in [("1", "1"), ("2", "3"), ("4", "16")] {
        let o = run(&["witness", "--n", n]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(json(&o)["value"], expected);
    }
}

#[test]
fn documented_check_examples() {
    let o = run(&[
        "check",
        "--expr",
        "mset_inf(set)",
        "--width",
        "8",
        "--n",
        "8",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let values: Vec<String> = json(&o)["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["calculus"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(values, ["1", "1", "2", "3", "5", "7", "11", "15", "22"]);
    let o = run(&[
        "check",
        "--expr",
        "union(set,set)",
        "--width",
        "6",
        "--n",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    for (n, row) in json(&o)["rows"].as_array().unwrap().iter().enumerate() {
        assert_eq!(row["burnside"], (n + 1).to_string());
    }
}
