use std::process::{Command, Output};

use gpspec_cli::dto::{from_json, EnergyDoc, FamilyDoc, SpectrumDoc, VerifyDoc};

fn gpspec(args: &[&str]) -> Output {
    gpspec_env(args, &[])
}

fn gpspec_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gpspec"));
    for var in ["GPSPEC_CACHE", "GPSPEC_DENSE_CAP", "GPSPEC_CHAR_CAP", "GPSPEC_CODEWORD_CAP", "GPSPEC_ELL_MAX"] {
        cmd.env_remove(var);
    }
    cmd.args(args).envs(env.iter().copied()).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn values(doc: &SpectrumDoc) -> Vec<(String, String)> {
    doc.spectrum.iter().map(|e| (e.value.clone(), e.mult.clone())).collect()
}

fn pairs(v: &[(&str, &str)]) -> Vec<(String, String)> {
    v.iter().map(|&(a, b)| (a.to_string(), b.to_string())).collect()
}

#[test]
fn spectrum_of_worked_example() {
    let o = gpspec(&["spectrum", "-k", "3", "-p", "7", "-m", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: SpectrumDoc = from_json(&stdout(&o)).unwrap();
    assert_eq!(values(&doc), pairs(&[("114", "1"), ("9", "114"), ("2", "114"), ("-12", "114")]));
    let pretty = stdout(&gpspec(&["spectrum", "-k", "3", "-p", "7", "-m", "3"]));
    assert!(pretty.starts_with("gp(k=3, q=7^3)\n"));
    assert!(pretty.contains("-12           114"));
}

#[test]
fn lifted_spectrum_matches_table_row() {
    let o = gpspec(&["spectrum", "-k", "4", "-p", "5", "--lift", "2", "--verify", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: SpectrumDoc = from_json(&stdout(&o)).unwrap();
    let nonprincipal: Vec<String> = doc.spectrum.iter().skip(1).map(|e| e.value.clone()).collect();
    assert_eq!(nonprincipal, ["456", "-69", "-144", "-244"]);
    assert_eq!(doc.principal, "97656");
    assert!(!doc.verify.is_empty() && doc.verify.iter().all(|c| c.status == "agree"));
}

#[test]
fn out_of_scope_exits_two() {
    let o = gpspec(&["spectrum", "-k", "3", "-p", "7", "-m", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("3 ∤ (q−1)/(p−1)"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    for args in [
        &["spectrum", "-k", "3", "-p", "8", "-m", "3"][..],
        &["spectrum", "-k", "3", "-p", "7", "-t", "2", "--lift", "1"],
        &["spectrum", "-k", "3", "-p", "7", "-m", "3", "--variant", "gpsum-comp"],
        &["family", "-k", "4", "-p", "5", "-s", "1"],
        &["spectrum", "-k", "3", "-p", "7"],
        &["bogus"],
    ] {
        assert_eq!(gpspec(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn equienergy_verdicts() {
    for (k, p, m, want) in [("3", "7", "6", true), ("3", "7", "3", false), ("4", "5", "8", true), ("4", "5", "4", false)] {
        let o = gpspec(&["equienergetic", "-k", k, "-p", p, "-m", m, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        let doc: EnergyDoc = from_json(&stdout(&o)).unwrap();
        assert_eq!(doc.equienergetic, want, "{k} {p} {m}");
        assert!(doc.criterion_agrees);
    }
}

#[test]
fn energy_reports_bounds_or_formula() {
    let csv = stdout(&gpspec(&["energy", "-k", "3", "-p", "7", "-m", "3", "--format", "csv"]));
    assert_eq!(csv, "quantity,value\nenergy,2736\nlower_bound,684\nupper_bound,3116\n");
    let csv = stdout(&gpspec(&["energy", "-k", "3", "-p", "5", "-m", "4", "--format", "csv"]));
    assert_eq!(csv, "quantity,value\nenergy,7072\nclosed_form,7072\n");
}

#[test]
fn family_hit_sets() {
    for (args, want) in [
        (&["family", "-k", "4", "-p", "5", "--ell-max", "5"][..], vec![2, 5]),
        (&["family", "-k", "3", "-p", "7", "-t", "3", "-s", "1", "--ell-max", "4"], vec![1, 3]),
        (&["family", "-k", "3", "-p", "31", "-t", "1", "--ell-max", "5"], vec![4, 5]),
        (&["family", "-k", "3", "-p", "13", "--ell-max", "0"], vec![]),
    ] {
        let mut a = args.to_vec();
        a.extend(["--format", "json"]);
        let o = gpspec(&a);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let doc: FamilyDoc = from_json(&stdout(&o)).unwrap();
        assert_eq!(doc.hits, want, "{args:?}");
    }
    let o = gpspec_env(&["family", "-k", "4", "-p", "5", "--format", "json"], &[("GPSPEC_ELL_MAX", "3")]);
    let doc: FamilyDoc = from_json(&stdout(&o)).unwrap();
    assert_eq!(doc.witnesses.len(), 3);
}

#[test]
fn tables_match_golden_files() {
    let golden = [
        include_str!("golden/table1.csv"),
        include_str!("golden/table2.csv"),
        include_str!("golden/table3.csv"),
    ];
    for (i, g) in golden.iter().enumerate() {
        let id = (i + 1).to_string();
        assert_eq!(stdout(&gpspec(&["tables", "--table", &id, "--format", "csv"])), *g, "table {id}");
    }
    assert_eq!(stdout(&gpspec(&["tables", "--format", "csv"])), golden.join("\n"));
    assert!(golden[0].contains("\n2,-1763,-83,7^21,"));
    assert!(golden[1].contains("\n5,10324,542,31^15,"));
    assert!(golden[2].contains("\n4,-527,168,5^16,"));
    assert!(golden[1].lines().any(|l| l.starts_with("# erratum")));
}

#[test]
fn lift_command_rows() {
    let o = gpspec(&["lift", "-k", "3", "-p", "7", "-s", "1", "--lift", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let golden = include_str!("golden/table1.csv");
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 4);
    for line in rows {
        assert!(golden.lines().any(|g| g == line), "{line}");
    }
}

#[test]
fn verify_single_graph_and_caps() {
    let o = gpspec(&["verify", "-k", "3", "-p", "2", "-m", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: VerifyDoc = from_json(&stdout(&o)).unwrap();
    assert_eq!(doc.mismatches, 0);
    let oracles: Vec<&str> = doc.checks.iter().map(|c| c.oracle.as_str()).collect();
    for name in ["character sums", "dense eigenvalues", "code weights"] {
        assert!(oracles.contains(&name), "{oracles:?}");
    }
    let tiny = [("GPSPEC_DENSE_CAP", "8"), ("GPSPEC_CHAR_CAP", "8"), ("GPSPEC_CODEWORD_CAP", "8")];
    let o = gpspec_env(&["verify", "-k", "3", "-p", "2", "-m", "4"], &tiny);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no oracle applies"));
    let o = gpspec_env(&["spectrum", "-k", "3", "-p", "2", "-m", "4", "--verify"], &[("GPSPEC_DENSE_CAP", "0")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_sweep() {
    let o = gpspec(&["verify", "--max-q", "64", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("k,p,m,variant,oracle,status,detail\n"));
    assert!(out.lines().skip(1).all(|l| l.contains(",agree,")));
    assert!(out.lines().any(|l| l.starts_with("3,5,2,gpsum,")));
}

#[test]
fn cache_hits_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let path_s = path.to_str().unwrap();
    let args = ["spectrum", "-k", "3", "-p", "7", "-t", "3", "-s", "1", "--lift", "3", "--format", "json"];
    let cold = gpspec(&args);
    let mut with_cache = args.to_vec();
    with_cache.extend(["--cache", path_s]);
    let first = gpspec(&with_cache);
    let second = gpspec(&with_cache);
    let via_env = gpspec_env(&args, &[("GPSPEC_CACHE", path_s)]);
    assert_eq!(cold.stdout, first.stdout);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, via_env.stdout);
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 1);
    let pretty = gpspec(&["spectrum", "-k", "3", "-p", "7", "-m", "3", "--cache", path_s]);
    assert_eq!(pretty.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 2);
    // failures are not cached
    gpspec(&["spectrum", "-k", "3", "-p", "7", "-m", "2", "--cache", path_s]);
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 2);
}

#[test]
fn help_and_version_exit_zero() {
    let o = gpspec(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    for cmd in ["spectrum", "energy", "equienergetic", "lift", "family", "verify", "tables"] {
        assert!(stdout(&o).contains(cmd), "{cmd}");
    }
    assert_eq!(gpspec(&["--version"]).status.code(), Some(0));
}
