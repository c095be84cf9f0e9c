use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zeta-moments"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn coeffs_csv_has_header_and_rows() {
    let o = run(&["coeffs", "--k", "1/2", "--limit", "100", "--output", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# zeta-moments "));
    assert!(lines[0].contains("precision_bits=192"));
    assert_eq!(lines[1], "n,num,den");
    assert_eq!(lines.len(), 102);
    assert_eq!(lines[2], "1,1,1");
    assert_eq!(lines[3], "2,1,2");
}

#[test]
fn json_output_leads_with_provenance() {
    let o = run(&["constants", "--name", "hk", "--s", "3", "--prime-cutoff", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let (head, body) = text.split_once('\n').unwrap();
    let head: serde_json::Value = serde_json::from_str(head).unwrap();
    assert_eq!(head["schema"], "provenance");
    assert_eq!(head["prime_cutoff"], "1000");
    let v: serde_json::Value = serde_json::from_str(body).unwrap();
    assert_eq!(v["schema"], "product-value");
    let x: f64 = v["value"].as_str().unwrap().parse().unwrap();
    assert!(x.is_finite() && x > 0.0);
}

#[test]
fn bad_flags_exit_two() {
    assert_eq!(run(&["coeffs", "--limit", "10", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["coeffs", "--limit", "10", "--jobs", "0"]).status.code(), Some(2));
    assert_eq!(run(&["moment", "--kind", "nope"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one_with_json() {
    let o = run(&["moment", "--kind", "first", "--t-max", "5"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(text.split_once('\n').unwrap().1).unwrap();
    assert_eq!(v["schema"], "error");
}

#[test]
fn output_identical_across_jobs() {
    let base = ["moment", "--kind", "second", "--t-max", "60,120", "--output", "csv", "--precision-bits", "128"];
    let one = run(&[&base[..], &["--jobs", "1"]].concat());
    let eight = run(&[&base[..], &["--jobs", "8"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, eight.stdout);
}
