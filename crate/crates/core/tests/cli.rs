use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spin-invariants")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn conventions_are_byte_stable() {
    let a = run(&["conventions"]);
    let b = run(&["conventions"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    // the bare σ does not commute with ĥ, but every row stays inside P₊
    let failures: Vec<&str> = v["commutation_failures"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert!(failures.contains(&"pi^0") && failures.contains(&"Sigma[sigma]_x"));
    assert!(!failures.iter().any(|f| f.starts_with("Sigma[fw]") || f.starts_with("Pi_")));
    for row in v["commutation"].as_array().unwrap() {
        assert!(row["subspace_leakage"].as_f64().unwrap() < 1e-12, "{row}");
    }
}

#[test]
fn verify_passes_and_is_reproducible() {
    let args = ["verify", "--seed", "11", "--samples", "20", "--projector-samples", "50", "--bmt-runs", "2", "--steps", "300"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["seed"], 11);
}

#[test]
fn impossible_tolerance_fails_with_code_one() {
    let o = run(&["verify", "--tol", "Eq4_subspace=1e-30", "--samples", "10", "--projector-samples", "10", "--bmt-runs", "1", "--steps", "10"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_arguments_exit_two_with_one_line() {
    for args in [
        &["precess", "--b"][..],
        &["precess", "--b", "1,2"],
        &["precess", "--dtau", "-1"],
        &["verify", "--tol", "no_such_check=1e-3"],
        &["show", "Sigmax", "--variant", "stech"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        let err = stderr(&o);
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("error: "), "{err}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn divergence_exits_three() {
    let o = run(&["precess", "--b", "1,0,0", "--hfield", "0,0,1e300", "--dtau", "1", "--steps", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("error: divergence"));
}

#[test]
fn precess_csv_shape() {
    let o = run(&["precess", "--b", "0.4,0.1,0", "--g", "2.4", "--steps", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "tau,v0,vx,vy,vz,Phix,Phiy,Phiz,Pix,Piy,Piz,HdotPi,HtdotPi,PiNorm,AxisProj");
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 51);
    for r in &rows {
        assert_eq!(r.len(), 15);
        for col in [11, 12, 13, 14] {
            assert!((r[col] - rows[0][col]).abs() < 1e-10, "column {col}");
        }
    }
}

#[test]
fn zero_field_rows_are_constant() {
    let o = run(&["precess", "--b", "0.4,0.1,0", "--hfield", "0,0,0", "--steps", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    let tail = |l: &str| l.split_once(',').unwrap().1.to_string();
    for r in &rows {
        assert_eq!(tail(r), tail(rows[0]));
        assert!(r.ends_with(','), "axis projection is undefined without a field");
    }
}

#[test]
fn invariants_chains_agree() {
    let o = run(&["invariants", "--b", "0.7,-0.2,1.1", "--hfield", "0.3,0.5,-0.4", "--nu", "0.1,0.9,0.2", "--zeta", "-1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("helicity"));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(v.is_object());
}

#[test]
fn kinematic_chains_require_motion() {
    let o = run(&["invariants", "--kinematic"]);
    assert_ne!(o.status.code(), Some(0));
    assert_eq!(stderr(&o).lines().count(), 1);
}

#[test]
fn show_prints_operator() {
    let o = run(&["show", "gamma5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!o.stdout.is_empty());
}
