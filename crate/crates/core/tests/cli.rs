use std::process::{Command, Output};

use alternating_tangles::flype::gamma_tilde_template;
use alternating_tangles::matrix_model::renormalized_model;
use alternating_tangles::series::Rational;

fn tangles(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tangles")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = tangles(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["series", "--function", "Gamma_template", "--order", "6", "--format", "json"][..],
        &["series", "--function", "F1", "--order", "8", "--format", "csv", "--digits", "5"],
        &["asymptotics", "--which", "tangles", "--digits", "12"],
        &["oracle", "--target", "two-point", "--n", "3", "--parallel", "2"],
    ] {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
}

#[test]
fn csv_round_trip() {
    let text = stdout(&["series", "--function", "F1", "--order", "10", "--format", "csv"]);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(reader.headers().unwrap(), vec!["function", "degree", "value"]);
    let f1 = renormalized_model(10).f1;
    let mut degrees = Vec::new();
    for record in reader.records() {
        let record = record.unwrap();
        assert_eq!(&record[0], "F1");
        let degree: usize = record[1].parse().unwrap();
        let value: Rational = record[2].parse().unwrap();
        assert!(record[2].contains('/'));
        assert_eq!(&value, &f1.coeffs()[degree]);
        degrees.push(degree);
    }
    assert_eq!(degrees, (1..=10).collect::<Vec<_>>());
}

#[test]
fn json_round_trip() {
    let text = stdout(&["series", "--function", "Gamma_tilde_template", "--order", "5", "--format", "json"]);
    let template = gamma_tilde_template(5);
    let mut seen = 0;
    for line in text.lines() {
        let record: serde_json::Value = serde_json::from_str(line).unwrap();
        let keys: Vec<&String> = record.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 4);
        let (m, n) = (record["m"].as_u64().unwrap() as usize, record["n"].as_u64().unwrap() as usize);
        let value: Rational = record["value"].as_str().unwrap().parse().unwrap();
        assert_eq!(Some(&value), template.get(m, n));
        seen += 1;
    }
    // every slot with m + n ≤ 5 except the vanishing constant term
    assert_eq!(seen, 21 - 1);
}

#[test]
fn json_decimal_is_optional() {
    let plain = stdout(&["series", "--function", "F1", "--order", "3", "--format", "json"]);
    assert!(!plain.contains("decimal"));
    let with = stdout(&["series", "--function", "F1", "--order", "3", "--format", "json", "--digits", "4"]);
    assert!(with.lines().nth(1).unwrap().contains(r#""decimal":"0.2500""#), "{with}");
}

#[test]
fn text_drops_unit_denominators() {
    let text = stdout(&["series", "--function", "Gamma", "--order", "3"]);
    assert_eq!(text, "Gamma\ng^1: 1\ng^2: 2\ng^3: 6\n");
}

#[test]
fn exit_codes() {
    assert_eq!(tangles(&["verify", "--order", "6"]).status.code(), Some(0));
    assert_eq!(tangles(&["verify", "--order", "6", "--inject", "corrupt-zeta"]).status.code(), Some(1));
    assert_eq!(tangles(&["series", "--function", "Gamma", "--order", "x"]).status.code(), Some(2));
    assert_eq!(tangles(&["oracle", "--target", "free-energy", "--n", "6"]).status.code(), Some(2));
    assert_eq!(tangles(&["--help"]).status.code(), Some(0));
}
