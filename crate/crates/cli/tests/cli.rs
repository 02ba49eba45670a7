use std::fs;
use std::process::{Command, Output};

fn limpack(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_limpack"))
        .args(args)
        .env_remove("LIMPACK_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn construct_and_compute() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("fig1.g6");
    let o = limpack(&["construct", "fig1", "--out", g6.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(&g6).unwrap(), "Gs`?_O\n");

    let o = limpack(&["compute", g6.to_str().unwrap(), "--k", "2", "--total"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], 6);

    let o = limpack(&[
        "compute",
        g6.to_str().unwrap(),
        "--invariant",
        "partition",
        "--k",
        "2",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["witness"].as_array().unwrap().len(),
        v["value"].as_u64().unwrap() as usize
    );
}

#[test]
fn edge_list_input_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = dir.path().join("p4.txt");
    fs::write(&p4, "0 1\n1 2\n2 3\n").unwrap();
    let o = limpack(&[
        "compute",
        p4.to_str().unwrap(),
        "--format",
        "edgelist",
        "--invariant",
        "domination",
        "--total",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        (v["value"].clone(), v["witness"].clone()),
        (2.into(), serde_json::json!([1, 2]))
    );

    let looped = dir.path().join("loop.txt");
    fs::write(&looped, "4 4\n").unwrap();
    let o = limpack(&["compute", looped.to_str().unwrap(), "--format", "edgelist"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));

    let o = limpack(&[
        "compute",
        p4.to_str().unwrap(),
        "--format",
        "edgelist",
        "--cap-nodes",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = limpack(&["compute", dir.path().join("missing").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = limpack(&["no-such-command"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn product_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = dir.path().join("k2.g6");
    fs::write(&k2, "A_\n").unwrap();
    let o = limpack(&[
        "product",
        "rooted",
        k2.to_str().unwrap(),
        k2.to_str().unwrap(),
        "--root",
        "0",
        "--format",
        "graph6",
    ]);
    assert!(o.status.success());
    let out = dir.path().join("p.txt");
    let o = limpack(&[
        "product",
        "cartesian",
        k2.to_str().unwrap(),
        k2.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(&out).unwrap(), "Cr\n");
    let o = limpack(&[
        "product",
        "rooted",
        k2.to_str().unwrap(),
        k2.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bounds_subcommand_reports_fig1_sharp() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("fig1.g6");
    fs::write(&g6, "Gs`?_O\n").unwrap();
    let o = limpack(&["bounds", g6.to_str().unwrap(), "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let record = text
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
        .find(|v| v["theorem_id"] == "max_degree_bound")
        .unwrap();
    assert_eq!(record["status"], "sharp");
    assert!(text.lines().last().unwrap().contains("\"summary\""));
}

#[test]
fn verify_is_identical_across_jobs_and_env() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    let args = [
        "verify",
        "--corpus",
        "exhaustive:4",
        "--checks",
        "all",
        "--k",
        "1,2",
    ];
    let o = limpack(&[&args[..], &["--jobs", "1", "--out", a.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_limpack"))
        .args(args)
        .args(["--out", b.to_str().unwrap()])
        .env("LIMPACK_JOBS", "8")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let summary: serde_json::Value =
        serde_json::from_str(fs::read_to_string(&a).unwrap().lines().last().unwrap()).unwrap();
    assert_eq!(summary["summary"]["solid_violations"], 0);
    assert!(summary["summary"]["characterizations"]["omega_membership"]["rate"].is_number());
}

#[test]
fn verify_random_and_graph6_corpora() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    let o = limpack(&[
        "verify",
        "--corpus",
        "random:6,0.5,20",
        "--seed",
        "7",
        "--connected",
        "--checks",
        "max_degree_bound",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    let summary: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(summary["summary"]["seed"], 7);

    let file = dir.path().join("c.g6");
    fs::write(&file, "A_\nCh\n\nD?{\n").unwrap();
    let spec = format!("graph6:{}", file.display());
    let o = limpack(&[
        "verify",
        "--corpus",
        &spec,
        "--checks",
        "degree_sequence_bound",
        "--k",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);

    fs::write(&file, "A_\nA`\n").unwrap();
    let o = limpack(&[
        "verify",
        "--corpus",
        &spec,
        "--checks",
        "degree_sequence_bound",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = limpack(&["verify", "--corpus", "exhaustive:9"]);
    assert_eq!(o.status.code(), Some(2));
    let o = limpack(&["verify", "--corpus", "standard", "--checks", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn product_checks_exit_clean() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.jsonl");
    let o = limpack(&[
        "verify",
        "--corpus",
        "standard",
        "--checks",
        "cartesian,direct,rooted,corona",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"rooted_l2_formula\""));
}
