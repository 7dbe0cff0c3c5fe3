//! Acceptance suite. Each test covers one criterion and prints a single
//! PASS/FAIL line; run with `cargo test --test acceptance -- --nocapture`
//! to see the lines.

// 3.142 below is a training-time ratio, not pi.
#![allow(clippy::approx_constant)]

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tl6g::agents::{classify_domain_axis, classify_label_axis, DomainAxis, LabelAxis, TaxonomyError};
use tl6g::cli::{load_scenario, write_reports, ReportFormat};
use tl6g::costmodel::{
    compute_overhead, interaction_cost, BandwidthCostFn, ClassKind, DelayCostFn, OverheadParams,
    SecurityCostFn,
};
use tl6g::quantization::{payload_bits, predicted_accuracy, AccuracyModel, QuantScheme};
use tl6g::scheduler::{
    plan_non_rush, AuthorizedPipeline, DemandOutcome, InteractionClass, RushProfile, Scheduler,
};
use tl6g::simengine::run;

fn criterion(name: &str, body: impl FnOnce() + UnwindSafe) {
    match catch_unwind(body) {
        Ok(()) => println!("PASS {name}"),
        Err(cause) => {
            println!("FAIL {name}");
            resume_unwind(cause);
        }
    }
}

fn scenario_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

#[test]
fn speedup_reproduction() {
    criterion("speedup: quantized-retune tau = 3.142 +/- 0.001, runtime < 1 s", || {
        let started = Instant::now();
        let scenario = load_scenario(&scenario_path("quantized-retune.json")).unwrap();
        let report = run(&scenario).unwrap();
        assert_eq!(report.pairs.len(), 1);
        let tau = report.pairs[0].tau;
        assert!((tau - 3.142).abs() <= 0.001, "tau = {tau}");
        assert!(started.elapsed().as_secs_f64() < 1.0);
    });
}

#[test]
fn payload_reduction() {
    criterion("payload: 8-bit / 32-bit payload ratio is exactly 0.25", || {
        for n in [1u64, 1_000, 1_000_000] {
            let full = payload_bits(n, QuantScheme::Float32) as f64;
            for scheme in [QuantScheme::Default8, QuantScheme::Fbgemm8, QuantScheme::Qat8] {
                let ratio = payload_bits(n, scheme) as f64 / full;
                assert_eq!(ratio, 0.25, "n = {n}, scheme = {scheme:?}");
            }
        }
    });
}

#[test]
fn accuracy_constraints() {
    criterion(
        "accuracy: Qat8 = Fbgemm8 + 1.0, Float32 >= Qat8 >= Fbgemm8 >= Default8, retune restores",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            for _ in 0..500 {
                // Dyadic grid (sixteenths) so "exactly 1.0" is well posed.
                let base = rng.gen_range(800..1584) as f64 / 16.0;
                let fbgemm8 = -(rng.gen_range(16..160) as f64) / 16.0;
                let default8 = fbgemm8 - rng.gen_range(0..80) as f64 / 16.0;
                let model = AccuracyModel::new(base, fbgemm8, default8).unwrap();
                let acc = |s| predicted_accuracy(&model, s, false);
                let float32 = acc(QuantScheme::Float32);
                let qat8 = acc(QuantScheme::Qat8);
                let fbgemm8 = acc(QuantScheme::Fbgemm8);
                let default8 = acc(QuantScheme::Default8);
                assert_eq!(qat8 - fbgemm8, 1.0);
                assert!(float32 >= qat8 && qat8 >= fbgemm8 && fbgemm8 >= default8);
                for scheme in QuantScheme::ALL {
                    assert_eq!(predicted_accuracy(&model, scheme, true), float32);
                }
            }
        },
    );
}

#[test]
fn overhead_oracle_equivalence() {
    criterion("overhead: 1000 draws match straight-line oracle to 1e-12 relative, runtime < 1 s", || {
        let started = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..1000 {
            let alpha = [(); 4].map(|_| rng.gen_range(0.0..5.0));
            let m3 = rng.gen_range(0.1..5.0);
            let m2 = m3 + rng.gen_range(0.0..5.0);
            let m1 = m2 + rng.gen_range(0.0..5.0);
            let w_ref = rng.gen_range(0.5..2e6);
            let d_ref = rng.gen_range(0.01..10.0);
            let coeff = rng.gen_range(0.0..4.0);
            let params = OverheadParams {
                alpha,
                m_costs: [m1, m2, m3],
                f1: BandwidthCostFn::Linear { w_ref_bps: w_ref },
                f2: DelayCostFn::Reciprocal { d_ref_s: d_ref },
                h: SecurityCostFn { coefficient: coeff },
            };
            let w = rng.gen_range(1.0..1e8);
            let d = rng.gen_range(1e-3..100.0);
            let security = rng.gen_range(0..8u32);
            let (class, m) = match rng.gen_range(0..3) {
                0 => (ClassKind::RealTime, m1),
                1 => (ClassKind::NonRealTime, m2),
                _ => (ClassKind::OnDemand, m3),
            };
            let theta = compute_overhead(w, d, class, security, &params, None).unwrap();
            let oracle = alpha[0] * (w / w_ref)
                + alpha[1] * (d_ref / d)
                + alpha[2] * m
                + alpha[3] * coeff * security as f64;
            let scale = oracle.abs().max(1.0);
            assert!((theta - oracle).abs() / scale <= 1e-12, "{theta} vs {oracle}");
        }
        assert!(started.elapsed().as_secs_f64() < 1.0);
    });
}

#[test]
fn overhead_monotonicity() {
    criterion(
        "monotonicity: theta nondecreasing in W and security, nonincreasing in D, class-ordered",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(37);
            let draw_params = |rng: &mut ChaCha8Rng| {
                let m3 = rng.gen_range(0.1..5.0);
                let m2 = m3 + rng.gen_range(0.0..5.0);
                OverheadParams {
                    alpha: [(); 4].map(|_| rng.gen_range(0.01..5.0)),
                    m_costs: [m2 + rng.gen_range(0.0..5.0), m2, m3],
                    f1: BandwidthCostFn::Linear {
                        w_ref_bps: rng.gen_range(0.5..2e6),
                    },
                    f2: DelayCostFn::Reciprocal {
                        d_ref_s: rng.gen_range(0.01..10.0),
                    },
                    h: SecurityCostFn {
                        coefficient: rng.gen_range(0.0..4.0),
                    },
                }
            };
            for _ in 0..250 {
                let params = draw_params(&mut rng);
                let w = rng.gen_range(1.0..1e8);
                let d = rng.gen_range(1e-3..100.0);
                let sec = rng.gen_range(0..8u32);
                let theta =
                    |w, d, class, sec| compute_overhead(w, d, class, sec, &params, None).unwrap();

                let base = theta(w, d, ClassKind::NonRealTime, sec);
                let wider = theta(w + rng.gen_range(1.0..1e8), d, ClassKind::NonRealTime, sec);
                assert!(wider >= base);
                let slower = theta(w, d + rng.gen_range(1e-3..100.0), ClassKind::NonRealTime, sec);
                assert!(slower <= base);
                let secure = theta(w, d, ClassKind::NonRealTime, sec + 1);
                assert!(secure >= base);

                let rt = theta(w, d, ClassKind::RealTime, sec);
                let od = theta(w, d, ClassKind::OnDemand, sec);
                assert!(rt >= base && base >= od);
            }
        },
    );
}

#[test]
fn scheduler_invariants() {
    criterion(
        "scheduler: dispatch >= trigger, NRT inside windows, planning never raises cost, on-demand gated",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(53);
            let params = OverheadParams::default();
            for _ in 0..120 {
                // Random disjoint windows and a random trigger.
                let mut windows = Vec::new();
                let mut cursor = 0.0;
                for _ in 0..rng.gen_range(1..4) {
                    let start = cursor + rng.gen_range(0.0..3000.0);
                    let end = start + rng.gen_range(1.0..2000.0);
                    windows.push((start, end));
                    cursor = end;
                }
                let trigger = rng.gen_range(0.0..6000.0);
                let nrt = AuthorizedPipeline {
                    source: "A".to_string(),
                    target: "B".to_string(),
                    kind: tl6g::agents::KnowledgeKind::Parameter,
                    class: InteractionClass::NonRealTime {
                        windows: windows.clone(),
                    },
                    path_links: vec!["l1".to_string()],
                    bandwidth_bps: 10e6,
                    delay_s: 0.005,
                    payload_bits: 1000,
                    security_level: 0,
                };

                let mut scheduler = Scheduler::new();
                let Ok(mut jobs) = scheduler.on_knowledge_update("A", trigger, std::slice::from_ref(&nrt))
                else {
                    assert!(windows.iter().all(|(_, end)| *end <= trigger));
                    continue;
                };
                let in_window = |t: f64| windows.iter().any(|(s, e)| t >= *s && t < *e);
                for job in &jobs {
                    assert!(job.dispatch_time_s >= job.trigger_time_s);
                    assert!(in_window(job.dispatch_time_s));
                }

                let profile = RushProfile {
                    slots: (0..24).map(|_| rng.gen_range(0.0..2.0)).collect(),
                };
                let cost = |jobs: &[tl6g::scheduler::TransferJob]| -> f64 {
                    jobs.iter()
                        .map(|j| {
                            interaction_cost(
                                ClassKind::NonRealTime,
                                &params,
                                Some(profile.multiplier_at(j.dispatch_time_s)),
                            )
                        })
                        .sum()
                };
                let before = cost(&jobs);
                plan_non_rush(&mut jobs, &profile, &params);
                assert!(cost(&jobs) <= before + 1e-9);
                for job in &jobs {
                    assert!(job.dispatch_time_s >= job.trigger_time_s);
                    assert!(in_window(job.dispatch_time_s));
                }

                // On-demand gating: a request before any availability stays
                // pending; it dispatches only once knowledge exists.
                let od = AuthorizedPipeline {
                    class: InteractionClass::OnDemand,
                    ..nrt
                };
                let mut scheduler = Scheduler::new();
                let t_req = rng.gen_range(0.0..100.0);
                let outcome = scheduler.on_demand_request(t_req, &od).unwrap();
                assert!(matches!(outcome, DemandOutcome::Pending));
                let t_avail = t_req + rng.gen_range(0.0..100.0);
                let jobs = scheduler
                    .on_knowledge_update("A", t_avail, std::slice::from_ref(&od))
                    .unwrap();
                assert_eq!(jobs.len(), 1);
                assert!(jobs[0].dispatch_time_s >= t_req);
                assert!(jobs[0].dispatch_time_s >= t_avail);
            }
        },
    );
}

#[test]
fn taxonomy_truth_table() {
    criterion("taxonomy: label-axis truth table and domain-axis threshold rule", || {
        let scenario = tl6g::testutil::two_agent_scenario();
        let mut source = scenario.agent("A").unwrap().clone();
        let mut target = scenario.agent("B").unwrap().clone();

        let mut with_labels = |src: bool, tgt: bool| {
            source.domain.has_labels = src;
            target.domain.has_labels = tgt;
            classify_label_axis(&source, &target)
        };
        assert_eq!(with_labels(true, true).unwrap(), LabelAxis::Inductive);
        assert_eq!(with_labels(true, false).unwrap(), LabelAxis::Transductive);
        assert_eq!(with_labels(false, false).unwrap(), LabelAxis::Unsupervised);
        assert!(matches!(
            with_labels(false, true),
            Err(TaxonomyError::UnclassifiablePair)
        ));

        // Identical signatures sit at similarity 1; disjoint ones at 0.
        let mut near = scenario.agent("B").unwrap().clone();
        let source = scenario.agent("A").unwrap();
        assert_eq!(
            classify_domain_axis(source, &near, 0.9),
            DomainAxis::Homogeneous
        );
        near.domain.distribution_signature = vec![1.0, 0.0];
        assert_eq!(
            classify_domain_axis(source, &near, 0.9),
            DomainAxis::Heterogeneous
        );
    });
}

#[test]
fn conflict_detection() {
    criterion("conflicts: oran-ra-ee-ac has exactly one RA-vs-EE conflict, none outside the window", || {
        let scenario = load_scenario(&scenario_path("oran-ra-ee-ac.json")).unwrap();
        let report = run(&scenario).unwrap();
        assert_eq!(report.conflicts.len(), 1);
        let conflict = &report.conflicts[0];
        assert_eq!(conflict.node, "oran1");
        assert_eq!(
            conflict.agents,
            ["ee1".to_string(), "ra1".to_string()].into()
        );

        let mut moved = scenario;
        for event in moved.events.trace.iter_mut() {
            if let tl6g::scenario::EventSpec::ResourceAction { agent, time_s, .. } = event {
                if agent == "ee1" {
                    *time_s = 200.0;
                }
            }
        }
        assert!(run(&moved).unwrap().conflicts.is_empty());
    });
}

#[test]
fn determinism() {
    criterion("determinism: repeated runs produce byte-identical report files", || {
        for name in [
            "quantized-retune.json",
            "oran-ra-ee-ac.json",
            "hierarchy-three-models.json",
        ] {
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
                    "{name}/{file}"
                );
            }
        }
    });
}

#[test]
fn conservation() {
    criterion("conservation: dispatched payload bits equal the utilization table total", || {
        for name in [
            "quantized-retune.json",
            "oran-ra-ee-ac.json",
            "hierarchy-three-models.json",
        ] {
            let scenario = load_scenario(&scenario_path(name)).unwrap();
            let report = run(&scenario).unwrap();
            let util: u64 = report.utilization.iter().map(|u| u.bits).sum();
            assert_eq!(util, report.totals.bits, "{name}");
        }
    });
}

#[test]
fn negative_transfer_producible() {
    criterion("negative transfer: similarity 0 with factor 0.9 yields eta < 1 and positive = false", || {
        let mut scenario = tl6g::testutil::two_agent_scenario();
        scenario.negative_transfer_factor = 0.9;
        scenario.agents[1].domain.distribution_signature = vec![1.0, 0.0];
        scenario.agents[0].domain.distribution_signature = vec![0.0, 1.0];
        let report = run(&scenario).unwrap();
        assert_eq!(report.pairs.len(), 1);
        let pair = &report.pairs[0];
        assert!(pair.jobs >= 1);
        assert!(pair.eta < 1.0, "eta = {}", pair.eta);
        assert!(!pair.positive);
    });
}
