//! End-to-end tests of the command-line surface: exit codes, report schema,
//! golden JSON, and round-trips of the plain rendering.

use std::process::{Command, Output};

fn sbo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sbo-kit"))
        .args(args)
        .env_remove("SBO_KIT_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn exit_zero_on_passing_suite() {
    let out = sbo(&["verify", "gegenbauer", "--l", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("cases pass"));
}

#[test]
fn exit_one_on_verification_failure() {
    // An unreachable tolerance turns the numeric suite into a genuine
    // verification failure.
    let out = sbo(&["verify", "numeric", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
}

#[test]
fn exit_two_on_config_error() {
    let out = sbo(&["verify", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
    let out = sbo(&["verify", "weyl", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = sbo(&["print", "juhl"]); // missing --n
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_report_golden() {
    let out = sbo(&["verify", "juhl-form", "--n", "2", "--l", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let mut got: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for case in got["cases"].as_array_mut().unwrap() {
        case["millis"] = serde_json::json!(0);
    }
    let golden: serde_json::Value =
        serde_json::from_str(include_str!("golden/juhl_form_n2_l1.json")).unwrap();
    assert_eq!(got, golden);
}

#[test]
fn report_schema_fields() {
    let out = sbo(&["verify", "vanish", "--n", "2", "--grid", "-3..3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["version"], "v1");
    assert_eq!(v["suite"], "vanish");
    for case in v["cases"].as_array().unwrap() {
        for key in ["suite", "case", "status", "millis"] {
            assert!(case.get(key).is_some(), "missing field {}", key);
        }
    }
}

#[test]
fn print_juhl_round_trips() {
    for (n, l) in [("2", "1"), ("3", "2"), ("4", "5")] {
        let out = sbo(&["print", "juhl", "--n", n, "--l", l]);
        assert_eq!(out.status.code(), Some(0));
        let text = stdout(&out);
        let nn: usize = n.parse().unwrap();
        let parsed = sbo_kit::render::parse_const_op(text.trim(), nn).unwrap();
        let direct = sbo_kit::operators::juhl_symbol(nn, l.parse().unwrap());
        assert_eq!(parsed, direct, "round trip failed for n={} l={}", n, l);
    }
}

#[test]
fn print_branson_round_trips() {
    let out = sbo(&["print", "branson", "--n", "3", "--i", "1", "--l", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let parsed = sbo_kit::render::parse_form_operator(stdout(&out).trim(), 3, 1, 3, 1).unwrap();
    let direct = sbo_kit::operators::branson_operator(3, 1, 2);
    assert_eq!(parsed, direct);
}

#[test]
fn print_branson_l0() {
    let out = sbo(&["print", "branson", "--n", "4", "--i", "1", "--l", "0"]);
    let text = stdout(&out);
    // −(n/2 − i)·id = −1·id on every diagonal entry.
    assert!(text.lines().all(|l| l.is_empty() || l.contains("(-1)")));
    assert_eq!(text.lines().filter(|l| !l.is_empty()).count(), 4);
}

#[test]
fn latex_output_is_standalone() {
    let out = sbo(&["print", "juhl", "--n", "3", "--l", "2", "--format", "latex"]);
    let text = stdout(&out);
    assert!(text.starts_with("\\documentclass"));
    assert!(text.contains("\\begin{document}"));
    assert!(text.contains("\\end{document}"));
}

#[test]
fn vanish_verdicts() {
    let out = sbo(&["vanish", "--lambda", "1", "--nu", "1", "--i", "1", "--j", "1", "--n", "3"]);
    assert_eq!(stdout(&out).trim(), "vanishes: point (i,i)");
    let out = sbo(&["vanish", "--lambda", "0", "--nu", "0", "--i", "0", "--j", "0", "--n", "3"]);
    assert_eq!(stdout(&out).trim(), "vanishes: L_even");
    let out = sbo(&["vanish", "--lambda", "3", "--nu", "4", "--i", "1", "--j", "1", "--n", "3"]);
    assert_eq!(stdout(&out).trim(), "nonzero (off-parity)");
    let out = sbo(&[
        "vanish", "--lambda", "-3", "--nu", "-1", "--i", "1", "--j", "1", "--n", "3", "--kappa",
        "0",
    ]);
    assert_eq!(stdout(&out).trim(), "vanishes: L_even minus {ν=0}");
    // Rational literals parse.
    let out = sbo(&["vanish", "--lambda", "-5/2", "--nu", "-1/2", "--i", "0", "--j", "0", "--n", "2"]);
    assert_eq!(stdout(&out).trim(), "nonzero");
}

#[test]
fn vanish_json() {
    let out = sbo(&[
        "vanish", "--lambda", "1", "--nu", "1", "--i", "1", "--j", "1", "--n", "3", "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["vanishes"], true);
    assert_eq!(v["branch"], "point (i,i)");
}

#[test]
fn jobs_env_var_accepted() {
    let out = Command::new(env!("CARGO_BIN_EXE_sbo-kit"))
        .args(["verify", "gegenbauer", "--l", "3"])
        .env("SBO_KIT_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn eval_num_kernel_and_pairing() {
    let out = sbo(&[
        "eval-num", "kernel", "--n", "2", "--i", "0", "--j", "0", "--iset", "", "--jset", "",
        "--x", "1,1", "--lambda", "6", "--nu", "0",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    // a₊(6,0) = 1/(Γ(5/2)Γ(3)) ≈ 0.376126
    let line = stdout(&out);
    let v: f64 = line.split_whitespace().next().unwrap().parse().unwrap();
    assert!((v - 0.37612638903183752).abs() < 1e-9, "{}", line);

    let out = sbo(&[
        "eval-num", "pairing", "--n", "2", "--i", "0", "--j", "0", "--lambda", "9.5", "--nu",
        "0.25", "--tol", "1e-8",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("quadrature") && text.contains("continuation"));
}

#[test]
fn eval_num_residue_is_gated() {
    let out = sbo(&["eval-num", "residue", "--n", "3", "--i", "1", "--j", "1", "--m", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = sbo(&[
        "eval-num",
        "residue",
        "--n",
        "3",
        "--i",
        "1",
        "--j",
        "1",
        "--m",
        "0",
        "--lambda0",
        "16",
        "--extrapolate",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("relative difference"));
}
