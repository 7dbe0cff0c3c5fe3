//! Integration tests over the bundled scenario files and the report
//! emission path.

// 3.142 below is a training-time ratio, not pi.
#![allow(clippy::approx_constant)]

use std::path::{Path, PathBuf};

use tl6g::cli::{load_scenario, validate_file, write_reports, ReportFormat, RunConfig};
use tl6g::scenario::EventSpec;
use tl6g::simengine::run;

fn scenario_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

const BUNDLED: [&str; 3] = [
    "quantized-retune.json",
    "oran-ra-ee-ac.json",
    "hierarchy-three-models.json",
];

#[test]
fn bundled_scenarios_validate_clean() {
    for name in BUNDLED {
        let issues = validate_file(&scenario_path(name)).unwrap();
        assert!(issues.is_empty(), "{name}: {issues:?}");
    }
}

#[test]
fn quantized_retune_reproduces_speedup() {
    let scenario = load_scenario(&scenario_path("quantized-retune.json")).unwrap();
    let report = run(&scenario).unwrap();
    assert_eq!(report.pairs.len(), 1);
    let pair = &report.pairs[0];
    assert_eq!(pair.jobs, 1);
    assert!((pair.tau - 3.142).abs() <= 0.001, "tau = {}", pair.tau);
    assert!(pair.eta > 1.0);
    assert!(pair.positive);
    // Qat8 weights: 1e6 parameters at 8 bits.
    assert_eq!(pair.total_bits, 8_000_000);
}

#[test]
fn oran_scenario_reports_ra_ee_conflict() {
    let scenario = load_scenario(&scenario_path("oran-ra-ee-ac.json")).unwrap();
    let report = run(&scenario).unwrap();
    assert_eq!(report.conflicts.len(), 1);
    let conflict = &report.conflicts[0];
    assert_eq!(conflict.node, "oran1");
    assert_eq!(
        conflict.agents,
        ["ee1".to_string(), "ra1".to_string()].into()
    );
    assert_eq!(conflict.net_opposition, 3.0);
}

#[test]
fn oran_conflict_vanishes_outside_window() {
    let mut scenario = load_scenario(&scenario_path("oran-ra-ee-ac.json")).unwrap();
    for event in scenario.events.trace.iter_mut() {
        if let EventSpec::ResourceAction { agent, time_s, .. } = event {
            if agent == "ee1" {
                *time_s = 200.0;
            }
        }
    }
    let report = run(&scenario).unwrap();
    assert!(report.conflicts.is_empty());
}

#[test]
fn hierarchy_scenario_generates_all_models() {
    let scenario = load_scenario(&scenario_path("hierarchy-three-models.json")).unwrap();
    let report = run(&scenario).unwrap();
    // Cascade over three agents: 4 directed parameter pairs. Hierarchical
    // star: 6. Parallel trio: 6 feature pairs.
    assert_eq!(report.pairs.len(), 16);
    assert!(report.totals.jobs > 0);
}

#[test]
fn reports_byte_identical_for_fixed_seed() {
    for name in BUNDLED {
        let scenario = load_scenario(&scenario_path(name)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let (a, b) = (dir.path().join("a"), dir.path().join("b"));
        for out in [&a, &b] {
            let report = run(&scenario).unwrap();
            write_reports(&scenario, &report, out, ReportFormat::Json).unwrap();
        }
        for file in ["report.json", "utilization.csv", "quantization.csv"] {
            assert_eq!(
                std::fs::read(a.join(file)).unwrap(),
                std::fs::read(b.join(file)).unwrap(),
                "{name}/{file} differs"
            );
        }
    }
}

#[test]
fn conservation_across_bundled_scenarios() {
    for name in BUNDLED {
        let scenario = load_scenario(&scenario_path(name)).unwrap();
        let report = run(&scenario).unwrap();
        let util_total: u64 = report.utilization.iter().map(|u| u.bits).sum();
        assert_eq!(util_total, report.totals.bits, "{name}");
    }
}

#[test]
fn run_command_writes_reports_and_respects_validate_only() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let code = tl6g::cli::run_command(&RunConfig {
        scenario_path: scenario_path("quantized-retune.json"),
        output_dir: out.clone(),
        format: ReportFormat::Csv,
        seed_override: None,
        validate_only: false,
    });
    assert_eq!(code, 0);
    for file in ["report.csv", "utilization.csv", "quantization.csv"] {
        assert!(out.join(file).exists(), "{file} missing");
    }

    let out2 = dir.path().join("out2");
    let code = tl6g::cli::run_command(&RunConfig {
        scenario_path: scenario_path("quantized-retune.json"),
        output_dir: out2.clone(),
        format: ReportFormat::Csv,
        seed_override: None,
        validate_only: true,
    });
    assert_eq!(code, 0);
    assert!(!out2.exists());
}

#[test]
fn run_command_exit_codes_on_failure() {
    let dir = tempfile::tempdir().unwrap();
    // Missing scenario file.
    let code = tl6g::cli::run_command(&RunConfig {
        scenario_path: dir.path().join("missing.json"),
        output_dir: dir.path().join("out"),
        format: ReportFormat::Csv,
        seed_override: None,
        validate_only: false,
    });
    assert_eq!(code, 1);

    // Invalid scenario content.
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{}").unwrap();
    let code = tl6g::cli::run_command(&RunConfig {
        scenario_path: bad,
        output_dir: dir.path().join("out"),
        format: ReportFormat::Csv,
        seed_override: None,
        validate_only: false,
    });
    assert_eq!(code, 1);
}
