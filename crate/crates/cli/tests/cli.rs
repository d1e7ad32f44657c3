use std::io::Write;
use std::process::{Command, Output, Stdio};

use bgg_core::bggcore::{
    bgg_from_proxy, bgg_to_proxy, twisted_from_json, BuiltinDiagram, DiagramSpec,
};
use bgg_core::forms::{polyform_from_json, ProxyField};
use bgg_core::ratpoly::{rat, Poly};

fn bgg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bgg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn bgg_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bgg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_derham_passes() {
    let o = bgg(&["verify", "derham", "--n", "3", "--rmax", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS derham n=3"));
}

#[test]
fn verify_bgg_elasticity_passes() {
    let o = bgg(&["verify", "bgg", "--diagram", "elasticity", "--rmax", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn verify_twisted_json_report() {
    let o = bgg(&[
        "verify",
        "twisted",
        "--diagram",
        "hessian",
        "--rmax",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["passed"], true);
    assert!(v[0]["checks"][0]["identity"]
        .as_str()
        .unwrap()
        .contains("dP + Pd = I"));
}

#[test]
fn verify_polyseq_elasticity() {
    let o = bgg(&[
        "verify",
        "polyseq",
        "--name",
        "poly-elast",
        "--r",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["cohomology"], serde_json::json!([6, 0, 0, 0]));
}

#[test]
fn verify_abstract_small_batch() {
    let o = bgg(&["verify", "abstract", "--seed", "3", "--count", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn verify_abstract_input_complex() {
    let dir = std::env::temp_dir().join(format!("bgg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("complex.json");
    std::fs::write(&path, r#"{"dims":[1,1,1],"d":[[[0,0,"1"]],[]]}"#).unwrap();
    let o = bgg(&["verify", "abstract", "--complex", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("cohomology [0, 0, 1]"));
}

#[test]
fn dims_csv_has_constant_euler_characteristic() {
    let o = bgg(&[
        "dims",
        "--name",
        "poly-elast",
        "--r",
        "4",
        "--rmax",
        "6",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("name,r,slot,dim,rank_out,cohomology"));
    let rows: Vec<Vec<String>> = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    assert_eq!(rows.len(), 12);
    for r in 4..=6 {
        let chi: i64 = rows
            .iter()
            .filter(|row| row[1] == r.to_string())
            .map(|row| {
                let dim: i64 = row[3].parse().unwrap();
                if row[2].parse::<usize>().unwrap() % 2 == 0 {
                    dim
                } else {
                    -dim
                }
            })
            .sum();
        assert_eq!(chi, 6, "r = {r}");
    }
}

#[test]
fn dims_writes_out_file() {
    let dir = std::env::temp_dir().join(format!("bgg-cli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("hess.json");
    let o = bgg(&[
        "dims",
        "--name",
        "poly-hess",
        "--r",
        "4",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v[0]["euler_characteristic"], 4);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        bgg(&["verify", "bgg", "--diagram", "no-such"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(bgg(&["dims", "--name", "no-such"]).status.code(), Some(2));
    assert_eq!(bgg(&["verify", "polyseq"]).status.code(), Some(2));
    assert_eq!(
        bgg(&["verify", "derham", "--n", "7"]).status.code(),
        Some(2)
    );
    assert_eq!(bgg(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn bad_thread_count_is_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_bgg"))
        .args(["verify", "derham", "--rmax", "1"])
        .env("BGG_NUM_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn apply_koszul_to_constant_one_form() {
    let e1 =
        r#"{"n":3,"k":1,"value":"R","terms":[{"I":[1],"a":0,"monomial":[0,0,0],"coeff":"1"}]}"#;
    let o = bgg_stdin(&["apply", "koszul", "--format", "json"], e1);
    assert_eq!(o.status.code(), Some(0));
    let out = polyform_from_json(stdout(&o).trim()).unwrap();
    let expected =
        r#"{"n":3,"k":0,"value":"R","terms":[{"I":[],"a":0,"monomial":[1,0,0],"coeff":"1"}]}"#;
    assert_eq!(out, polyform_from_json(expected).unwrap());
}

#[test]
fn apply_d_twice_vanishes() {
    let u =
        r#"{"n":3,"k":1,"value":"R","terms":[{"I":[2],"a":0,"monomial":[1,2,0],"coeff":"-3/2"}]}"#;
    let once = bgg_stdin(&["apply", "d", "--format", "json"], u);
    let twice = bgg_stdin(&["apply", "d", "--format", "json"], &stdout(&once));
    assert!(polyform_from_json(stdout(&twice).trim()).unwrap().is_zero());
}

#[test]
fn apply_p1_elasticity_recovers_displacement() {
    // w = (x₂², 0, 0): w(0) = 0 and curl w(0) = 0, so 𝒫¹(def w) = w
    let spec = DiagramSpec::builtin(BuiltinDiagram::Elasticity);
    let x2 = Poly::var(3, 1);
    let w = ProxyField::Vector(vec![&x2 * &x2, Poly::zero(3), Poly::zero(3)]);
    let u = bgg_from_proxy(&spec, 0, &w).unwrap();
    let def_w = spec.bgg_d(&u).unwrap();
    let o = bgg_stdin(
        &[
            "apply",
            "bgg-p",
            "--diagram",
            "elasticity",
            "--format",
            "json",
        ],
        &def_w.to_json(),
    );
    assert_eq!(o.status.code(), Some(0));
    let got = twisted_from_json(stdout(&o).trim()).unwrap();
    assert_eq!(bgg_to_proxy(&spec, &got).unwrap(), w);

    // w = (x₂, 0, 0): curl w(0) = −e₃, and 𝒫¹(def w) = w + ½x × (−e₃)
    let w = ProxyField::Vector(vec![x2.clone(), Poly::zero(3), Poly::zero(3)]);
    let def_w = spec.bgg_d(&bgg_from_proxy(&spec, 0, &w).unwrap()).unwrap();
    let o = bgg_stdin(&["apply", "bgg-p", "--format", "json"], &def_w.to_json());
    let got = bgg_to_proxy(&spec, &twisted_from_json(stdout(&o).trim()).unwrap()).unwrap();
    let half = rat(1, 2);
    let expected = ProxyField::Vector(vec![
        x2.scale(&half),
        Poly::var(3, 0).scale(&half),
        Poly::zero(3),
    ]);
    assert_eq!(got, expected);
}

#[test]
fn apply_shape_mismatch_exits_2() {
    let row = r#"[{"n":3,"k":0,"value":"R","terms":[]}]"#;
    let o = bgg_stdin(&["apply", "bgg-d", "--diagram", "elasticity"], row);
    assert_eq!(o.status.code(), Some(2));
    let o = bgg_stdin(&["apply", "koszul"], "{not json");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let a = bgg(&[
        "verify", "abstract", "--seed", "11", "--count", "4", "--format", "json",
    ]);
    let b = bgg(&[
        "verify", "abstract", "--seed", "11", "--count", "4", "--format", "json",
    ]);
    assert_eq!(a.stdout, b.stdout);
}
