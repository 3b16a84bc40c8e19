//! The experiment runner's report contract: sweep and forced modes,
//! JSON-lines serialization, and byte-level determinism per seed.

use surfacesim::{run_experiment, ExperimentConfig};

fn to_json_lines(cfg: &ExperimentConfig) -> String {
    run_experiment(cfg)
        .unwrap()
        .iter()
        .map(|l| serde_json::to_string(l).unwrap())
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn sweep_mode_emits_one_record_per_outcome_vector() {
    let cfg = ExperimentConfig::from_json(
        r#"{"op":"rough_merge","h":2,"w":2,"conv":"first",
            "inputs":["|0>","|0>"],"forced":null}"#,
    )
    .unwrap();
    let lines = run_experiment(&cfg).unwrap();
    assert_eq!(lines.len(), 4, "two join bits sweep four vectors");
    for line in &lines {
        assert_eq!(line.mode, "sweep");
        assert!(line.pass, "forced {:?}: {:#?}", line.forced, line.checks);
        let parity: u8 = line.forced.as_ref().unwrap().iter().sum::<u8>() % 2;
        assert_eq!(line.branch, parity, "branch is the join parity");
    }
}

#[test]
fn split_sweep_covers_every_seam_vector() {
    let cfg = ExperimentConfig::from_json(
        r#"{"op":"rough_split","h":3,"w":7,"inputs":["|i+>"],"forced":null}"#,
    )
    .unwrap();
    let lines = run_experiment(&cfg).unwrap();
    assert_eq!(lines.len(), 4, "two seam bits sweep four vectors");
    assert!(lines.iter().all(|l| l.pass && l.branch == 0));
}

#[test]
fn forced_mode_runs_exactly_once() {
    let cfg = ExperimentConfig::from_json(
        r#"{"op":"smooth_merge","h":2,"w":2,"conv":"second",
            "inputs":["|0>","|1>"],"forced":[1,0]}"#,
    )
    .unwrap();
    let lines = run_experiment(&cfg).unwrap();
    assert_eq!(lines.len(), 1);
    let line = &lines[0];
    assert_eq!(line.mode, "forced");
    assert_eq!(line.forced, Some(vec![1, 0]));
    assert_eq!(line.outcomes, Some(vec![1, 0]));
    // |0⟩⊗|1⟩ is a −1 eigenstate of Z_L⊗Z_L: odd parity, branch 1.
    assert_eq!(line.branch, 1);
    assert!(line.pass, "{:#?}", line.checks);
}

#[test]
fn reports_are_byte_identical_per_seed() {
    let cfg = ExperimentConfig::from_json(
        r#"{"op":"rough_merge","h":3,"w":3,"conv":"second",
            "inputs":["|i+>","|+>"],"forced":null,"trials":200,"seed":9}"#,
    )
    .unwrap();
    assert_eq!(to_json_lines(&cfg), to_json_lines(&cfg));

    let sweep = ExperimentConfig::from_json(
        r#"{"op":"smooth_split","h":4,"w":3,"inputs":["|->"],"forced":null}"#,
    )
    .unwrap();
    assert_eq!(to_json_lines(&sweep), to_json_lines(&sweep));
}

#[test]
fn records_carry_the_full_evidence_schema() {
    let cfg = ExperimentConfig::from_json(
        r#"{"op":"rough_merge","h":2,"w":2,"conv":"first",
            "inputs":["|+>","|+>"],"forced":[0,0]}"#,
    )
    .unwrap();
    let line = &run_experiment(&cfg).unwrap()[0];
    let value: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(line).unwrap()).unwrap();
    for key in [
        "op", "conv", "h", "w", "mode", "input", "forced", "outcomes", "branch",
        "count", "trials", "checks", "max_error", "pass",
    ] {
        assert!(value.get(key).is_some(), "record lacks {key:?}");
    }
    let checks = value["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["what"] == "probability"));
    assert!(checks
        .iter()
        .all(|c| c.get("predicted").is_some() && c.get("observed").is_some()));
}
