use std::io::Write;
use std::process::{Command, Output};

use massforge::lfdata::perm::dihedral_octic_model;
use massforge::{LaurentPoly, Rational};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_massforge"))
        .args(args)
        .env_remove("MASSFORGE_FIXTURES")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    serde_json::from_str(&stdout(&a)).unwrap()
}

fn poly_from_json(v: &Value) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for term in v.as_array().unwrap() {
        let c: Rational = massforge::exact::parse_rational(term[0].as_str().unwrap()).unwrap();
        p.add_term(-term[1].as_i64().unwrap(), c);
    }
    p
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn tame_mass_examples() {
    assert_eq!(
        stdout(&["tame-mass", "--group", "G2"]),
        "uniform: 1 + 2*q^-1 + 3*q^-2\n"
    );
    assert_eq!(stdout(&["tame-mass", "--group", "Trivial"]), "uniform: 1\n");
    let z3 = stdout(&["tame-mass", "--group", "Z3"]);
    assert!(z3.contains("q ≡ 1: 1 + 2*q^-2") && z3.contains("q ≡ 2: 1"));
    let gl1 = stdout(&["tame-mass", "--group", "Z3", "--z3-gl1"]);
    assert!(gl1.contains("q ≡ 1: 1 + 2*q^-1"));
}

#[test]
fn verify_checks_reproduce() {
    assert_eq!(stdout(&["verify", "g2-q2"]), "83/32 OK\n");
    assert_eq!(stdout(&["verify", "z2"]), "3/2 OK\n");
    assert_eq!(stdout(&["verify", "z2-doubled"]), "35/32 OK\n");
    assert_eq!(stdout(&["verify", "f2t"]), "15/14 OK\n");
    assert!(stdout(&["verify", "g2-char3"]).ends_with(" OK\n"));
    assert!(stdout(&["verify", "d2-d3-isos"]).ends_with(" OK\n"));
}

#[test]
fn human_and_json_agree() {
    for g in ["A3", "G2", "B2×A1", "Z3"] {
        let human = stdout(&["tame-mass", "--group", g]);
        let v = json(&["tame-mass", "--group", g]);
        let entries = v["quasi_poly"]["entries"].as_array().unwrap();
        if let Some(p) = human.strip_prefix("uniform: ") {
            let parsed: LaurentPoly = p.trim().parse().unwrap();
            assert_eq!(parsed, poly_from_json(&v["quasi_poly"]["uniform"]));
            for e in entries {
                assert_eq!(parsed, poly_from_json(&e["poly"]));
            }
        } else {
            assert!(v["quasi_poly"]["uniform"].is_null());
            for e in entries {
                let line = format!("q ≡ {}: ", e["residue"]);
                let text = human
                    .lines()
                    .find_map(|l| l.trim().strip_prefix(&line))
                    .unwrap();
                assert_eq!(
                    text.parse::<LaurentPoly>().unwrap(),
                    poly_from_json(&e["poly"])
                );
            }
        }
    }
    let human = stdout(&["genfun", "--series", "bn", "--order", "4"]);
    let v = json(&["genfun", "--series", "bn", "--order", "4"]);
    for (k, line) in human.lines().enumerate() {
        let p: LaurentPoly = line.split_once(": ").unwrap().1.parse().unwrap();
        assert_eq!(p, poly_from_json(&v["coefficients"][k]));
    }
    let v = json(&["verify", "g2-q2"]);
    assert_eq!(v["value"], "83/32");
    assert_eq!(v["ok"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["tame-mass"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["tame-mass", "--group", "Q8"]).status.code(), Some(1));
    assert_eq!(run(&["uniformity", "--group", "E6"]).status.code(), Some(1));
    assert_eq!(
        run(&["tame-mass", "--group", "A2", "--q", "3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["audit-d4"]).status.code(), Some(1));
}

#[test]
fn census_files() {
    let f = temp_file(r#"{"group_order": 2, "terms": [[2, 0], [2, 2], [4, 3]]}"#);
    let p = f.path().to_str().unwrap();
    assert_eq!(stdout(&["verify", "--census", p, "--q", "2"]), "3/2\n");
    assert_eq!(
        stdout(&["verify", "--census", p, "--q", "2", "--expect", "3/2"]),
        "3/2 OK\n"
    );
    let wrong = run(&["verify", "--census", p, "--q", "2", "--expect", "1"]);
    assert_eq!(wrong.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&wrong.stdout).contains("MISMATCH"));

    let bad = temp_file("{\"group_order\": 2,\n \"terms\": oops}");
    let out = run(&[
        "verify",
        "--census",
        bad.path().to_str().unwrap(),
        "--q",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn config_file() {
    let good = temp_file("cap = 10\n");
    let out = run(&[
        "--config",
        good.path().to_str().unwrap(),
        "tame-mass",
        "--group",
        "A3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap of 10"));
    let bad = temp_file("cap = 10\nturbo = true\n");
    let out = run(&[
        "--config",
        bad.path().to_str().unwrap(),
        "tame-mass",
        "--group",
        "A1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

fn cycles(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            continue;
        }
        let mut cyc = vec![];
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            cyc.push((x + 1).to_string());
            x = p[x];
        }
        out += &format!("({})", cyc.join(","));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

#[test]
fn c123_dihedral_files() {
    let (g, h) = dihedral_octic_model();
    let gf = temp_file(&format!(
        "# D4 acting on itself\ndegree 8\n{}\n",
        g.iter().map(|p| cycles(p)).collect::<Vec<_>>().join("\n")
    ));
    let hf = temp_file(&cycles(&h[0]));
    let args = [
        "c123",
        "--group",
        gf.path().to_str().unwrap(),
        "--subgroup",
        hf.path().to_str().unwrap(),
    ];
    let text = stdout(&args);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().all(|l| l.contains("c1 = 2, c2 = 1, c3 = 2")
        && l.contains("unique tower: true, aut equal: false")));
    let v = json(&args);
    assert_eq!(v["rows"][0]["c2"], 1);

    let two = temp_file("(1,2)\n");
    let p = two.path().to_str().unwrap();
    assert!(stdout(&["c123", "--group", p, "--subgroup", p]).contains("c1 = 1, c2 = 1, c3 = 1"));
    let bad = temp_file("(1,2\n");
    let out = run(&[
        "c123",
        "--group",
        bad.path().to_str().unwrap(),
        "--subgroup",
        p,
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn audit_d4_requires_every_degree() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/fixtures/lf");
    let out = run(&["audit-d4", "--fixtures", dir]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lacks degrees [4, 6, 8]"));
}
