//! Discrete-event core: builds authorized pipelines from a scenario,
//! advances the event timeline through the scheduler, applies the effect
//! model, and aggregates the run report.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::agents::{
    admissible_knowledge_kinds, classify_domain_axis, classify_label_axis, domain_similarity,
    DomainAxis, KnowledgeKind, LabelAxis, LearningAgent, TlCategory,
};
use crate::costmodel::{self, compute_overhead, is_positive_tl};
use crate::governance::{authorize, detect_conflicts, Conflict, PipelineRequest, ResourceAction};
use crate::quantization::predicted_accuracy;
use crate::repository::{extract_knowledge, ExtractionSizing, KnowledgeArtifact, Repository};
use crate::scenario::{EventSpec, QuantizationConfig, Scenario, ValidationIssue};
use crate::scheduler::{
    plan_non_rush, sort_jobs, AuthorizedPipeline, DemandOutcome, InteractionClass, RushProfile,
    Scheduler, TransferJob,
};
use crate::topology::{generate_pairs, Tier};

/// Event kinds in their processing priority at equal times: windows open
/// before updates schedule into them, dispatches trail the triggers that
/// caused them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EventKind {
    WindowOpen,
    KnowledgeUpdate,
    DemandRequest,
    JobDispatch,
    ResourceAction,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub time_s: f64,
    pub kind: EventKind,
    pub subject: String,
}

impl Eq for Event {}

impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        self.time_s
            .partial_cmp(&other.time_s)
            .unwrap()
            .then_with(|| self.kind.cmp(&other.kind))
            .then_with(|| self.subject.cmp(&other.subject))
    }
}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairRecord {
    pub source: String,
    pub target: String,
    pub label_axis: Option<LabelAxis>,
    pub domain_axis: DomainAxis,
    pub kind: KnowledgeKind,
    pub jobs: u64,
    pub total_theta: f64,
    pub total_bits: u64,
    pub eta: f64,
    pub tau: f64,
    pub positive: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UtilizationRecord {
    pub link: String,
    pub bin_start_s: f64,
    pub bits: u64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Totals {
    pub theta: f64,
    pub bits: u64,
    pub jobs: u64,
    pub positive_pairs: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DenialRecord {
    pub source: String,
    pub target: String,
    pub reason: crate::governance::DenialReason,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct SimReport {
    pub pairs: Vec<PairRecord>,
    pub denials: Vec<DenialRecord>,
    pub conflicts: Vec<Conflict>,
    pub utilization: Vec<UtilizationRecord>,
    pub totals: Totals,
}

#[derive(Debug, Error)]
pub enum SimError {
    #[error("scenario failed validation:\n{}", .0.iter().map(|i| format!("  {i}")).collect::<Vec<_>>().join("\n"))]
    Validation(Vec<ValidationIssue>),
}

/// Maps received knowledge onto the target's post-transfer performance and
/// training time. A parameter transfer with a retune model cuts training to
/// the retune time; sufficient domain similarity lifts performance to the
/// quantization-predicted accuracy, insufficient similarity degrades the
/// baseline by the negative-transfer factor.
pub fn effect_model(
    target: &LearningAgent,
    artifacts: &[KnowledgeArtifact],
    quantization: &QuantizationConfig,
    similarity: f64,
    homogeneity_threshold: f64,
    negative_transfer_factor: f64,
) -> (f64, f64) {
    if artifacts.is_empty() {
        return (target.baseline_performance, target.baseline_training_time_s);
    }
    let has_parameter = artifacts.iter().any(|a| a.kind == KnowledgeKind::Parameter);
    let retuned = has_parameter
        && quantization
            .retune
            .as_ref()
            .map(|r| r.restores_accuracy)
            .unwrap_or(false);
    let t_tl = match &quantization.retune {
        Some(retune) if has_parameter => retune.retrain_time_s,
        _ => target.baseline_training_time_s,
    };
    let p_tl = if similarity >= homogeneity_threshold {
        predicted_accuracy(&quantization.accuracy_model(), quantization.scheme, retuned) / 100.0
    } else {
        target.baseline_performance * negative_transfer_factor
    };
    (p_tl.clamp(0.0, 1.0), t_tl)
}

struct PipelineSetup {
    pipeline: AuthorizedPipeline,
    share_fraction: f64,
    source_level: Tier,
}

/// Runs a scenario to completion and aggregates the report. The run is
/// fully deterministic for a fixed scenario (seeded randomness only feeds
/// synthetic trace generation).
pub fn run(scenario: &Scenario) -> Result<SimReport, SimError> {
    let issues = scenario.validate();
    if !issues.is_empty() {
        return Err(SimError::Validation(issues));
    }

    let sizing = ExtractionSizing {
        bits_per_weight: scenario.quantization.scheme.bits_per_weight(),
        relational_payload_bits: scenario.relational_payload_bits,
    };

    let (pipelines, denials) = build_pipelines(scenario, sizing);
    let events = build_events(scenario, &pipelines);

    let authorized: Vec<AuthorizedPipeline> =
        pipelines.iter().map(|p| p.pipeline.clone()).collect();
    let setup_by_flow: BTreeMap<(String, String, KnowledgeKind), &PipelineSetup> = pipelines
        .iter()
        .map(|p| {
            (
                (
                    p.pipeline.source.clone(),
                    p.pipeline.target.clone(),
                    p.pipeline.kind,
                ),
                p,
            )
        })
        .collect();

    let mut scheduler = Scheduler::new();
    let mut jobs: Vec<TransferJob> = Vec::new();
    let mut resource_actions: Vec<ResourceAction> = Vec::new();

    for event in &events {
        match event {
            EventSpec::Update { time_s, agent } => {
                match scheduler.on_knowledge_update(agent, *time_s, &authorized) {
                    Ok(mut new_jobs) => jobs.append(&mut new_jobs),
                    // A schedule with no future window drops the job.
                    Err(_) => continue,
                }
            }
            EventSpec::Demand {
                time_s,
                source,
                target,
            } => {
                // A demand names only the endpoints; serve it with the
                // first on-demand pipeline between them.
                let Some(setup) = pipelines.iter().find(|p| {
                    p.pipeline.source == *source
                        && p.pipeline.target == *target
                        && matches!(p.pipeline.class, InteractionClass::OnDemand)
                }) else {
                    continue;
                };
                match scheduler.on_demand_request(*time_s, &setup.pipeline) {
                    Ok(DemandOutcome::Dispatched(job)) => jobs.push(job),
                    Ok(DemandOutcome::Pending) | Err(_) => {}
                }
            }
            EventSpec::ResourceAction {
                time_s,
                agent,
                node,
                resource,
                delta,
            } => resource_actions.push(ResourceAction {
                agent: agent.clone(),
                node: node.clone(),
                resource: resource.clone(),
                delta: *delta,
                time_s: *time_s,
            }),
        }
    }

    // Non-rush planning per pipeline: the scenario-wide rush profile plus
    // the peak link load along the pipeline's path.
    for job in jobs.iter_mut() {
        let profile = effective_rush_profile(scenario, &job.pipeline);
        plan_non_rush(std::slice::from_mut(job), &profile, &scenario.overhead);
    }
    jobs.retain(|j| j.dispatch_time_s <= scenario.horizon_s);
    sort_jobs(&mut jobs);

    for job in jobs.iter_mut() {
        let profile = effective_rush_profile(scenario, &job.pipeline);
        job.theta = compute_overhead(
            job.pipeline.bandwidth_bps,
            job.pipeline.delay_s,
            job.pipeline.class.kind(),
            job.pipeline.security_level,
            &scenario.overhead,
            Some(profile.multiplier_at(job.dispatch_time_s)),
        )
        .expect("authorized pipeline has positive bandwidth and delay");
    }

    // Knowledge extraction into the repository and per-target delivery.
    let mut repository = Repository::new();
    let mut delivered: BTreeMap<(String, String, KnowledgeKind), Vec<KnowledgeArtifact>> =
        BTreeMap::new();
    for job in &jobs {
        let setup = setup_by_flow[&(
            job.pipeline.source.clone(),
            job.pipeline.target.clone(),
            job.pipeline.kind,
        )];
        let source = scenario.agent(&job.pipeline.source).expect("validated");
        let artifact = extract_knowledge(
            source,
            job.pipeline.kind,
            setup.share_fraction,
            setup.source_level,
            sizing,
            job.pipeline.security_level,
            &source.purpose,
            job.dispatch_time_s,
        );
        if let Ok(artifact) = artifact {
            let _ = repository.store(artifact.clone());
            delivered
                .entry((
                    job.pipeline.source.clone(),
                    job.pipeline.target.clone(),
                    job.pipeline.kind,
                ))
                .or_default()
                .push(artifact);
        }
    }

    // Per-pair records.
    let mut pair_records = Vec::new();
    let mut totals = Totals::default();
    for setup in &pipelines {
        let source = scenario.agent(&setup.pipeline.source).expect("validated");
        let target = scenario.agent(&setup.pipeline.target).expect("validated");
        let key = (
            setup.pipeline.source.clone(),
            setup.pipeline.target.clone(),
            setup.pipeline.kind,
        );
        let artifacts = delivered.get(&key).cloned().unwrap_or_default();
        let pair_jobs: Vec<&TransferJob> = jobs
            .iter()
            .filter(|j| {
                j.pipeline.source == key.0
                    && j.pipeline.target == key.1
                    && j.pipeline.kind == key.2
            })
            .collect();

        let similarity = domain_similarity(&source.domain, &target.domain).unwrap_or(0.0);
        let (p_tl, t_tl) = effect_model(
            target,
            &artifacts,
            &scenario.quantization,
            similarity,
            scenario.homogeneity_threshold,
            scenario.negative_transfer_factor,
        );
        let eta = costmodel::eta(p_tl, target.baseline_performance).expect("validated baseline");
        let tau =
            costmodel::tau(target.baseline_training_time_s, t_tl).expect("positive times");

        let total_theta: f64 = pair_jobs.iter().map(|j| j.theta).sum();
        let total_bits: u64 = pair_jobs.iter().map(|j| j.payload_bits).sum();
        let positive = is_positive_tl(eta, tau);

        totals.theta += total_theta;
        totals.bits += total_bits;
        totals.jobs += pair_jobs.len() as u64;
        if positive {
            totals.positive_pairs += 1;
        }

        pair_records.push(PairRecord {
            source: key.0,
            target: key.1,
            label_axis: classify_label_axis(source, target).ok(),
            domain_axis: classify_domain_axis(source, target, scenario.homogeneity_threshold),
            kind: setup.pipeline.kind,
            jobs: pair_jobs.len() as u64,
            total_theta,
            total_bits,
            eta,
            tau,
            positive,
        });
    }

    Ok(SimReport {
        pairs: pair_records,
        denials,
        conflicts: detect_conflicts(&resource_actions, scenario.conflict_window_s),
        utilization: bin_utilization(&jobs, scenario),
        totals,
    })
}

/// Each dispatched payload is attributed once, to the bottleneck link of
/// its path (same-node transfers land on a synthetic local link), so the
/// table's total equals the total dispatched bits.
fn bin_utilization(jobs: &[TransferJob], scenario: &Scenario) -> Vec<UtilizationRecord> {
    let mut bins: BTreeMap<(String, u64), u64> = BTreeMap::new();
    for job in jobs {
        let link = bottleneck_link(&job.pipeline, scenario);
        let bin = (job.dispatch_time_s / 3600.0).floor() as u64;
        *bins.entry((link, bin)).or_insert(0) += job.payload_bits;
    }
    bins.into_iter()
        .map(|((link, bin), bits)| UtilizationRecord {
            link,
            bin_start_s: bin as f64 * 3600.0,
            bits,
        })
        .collect()
}

/// First link along the path whose bandwidth equals the end-to-end minimum.
fn bottleneck_link(pipeline: &AuthorizedPipeline, scenario: &Scenario) -> String {
    pipeline
        .path_links
        .iter()
        .find(|id| {
            scenario
                .topology
                .link(id)
                .map(|l| l.bandwidth_bps <= pipeline.bandwidth_bps)
                .unwrap_or(false)
        })
        .or_else(|| pipeline.path_links.first())
        .cloned()
        .unwrap_or_else(|| format!("local:{}", pipeline.source))
}

fn effective_rush_profile(scenario: &Scenario, pipeline: &AuthorizedPipeline) -> RushProfile {
    let mut slots = scenario
        .rush_profile
        .clone()
        .unwrap_or_else(RushProfile::flat)
        .slots;
    if slots.is_empty() {
        slots = vec![0.0; 24];
    }
    for link_id in &pipeline.path_links {
        if let Some(link) = scenario.topology.link(link_id) {
            if let Some(profile) = &link.load_profile {
                for (slot, load) in slots.iter_mut().zip(profile) {
                    *slot = slot.max(*load);
                }
            }
        }
    }
    RushProfile { slots }
}

fn build_pipelines(
    scenario: &Scenario,
    _sizing: ExtractionSizing,
) -> (Vec<PipelineSetup>, Vec<DenialRecord>) {
    let mut requests: Vec<(String, String, KnowledgeKind, Option<InteractionClass>)> = Vec::new();

    for spec in &scenario.pipelines {
        requests.push((
            spec.source.clone(),
            spec.target.clone(),
            spec.kind,
            spec.class.clone(),
        ));
    }
    for spec in &scenario.interaction_models {
        let participant_ids: Vec<String> = if spec.agents.is_empty() {
            scenario.agents.iter().map(|a| a.id.clone()).collect()
        } else {
            spec.agents.clone()
        };
        let participants: Vec<(String, Tier)> = participant_ids
            .iter()
            .filter_map(|id| {
                let agent = scenario.agent(id)?;
                let tier = scenario.topology.node(&agent.node)?.tier;
                Some((id.clone(), tier))
            })
            .collect();
        let pairs = generate_pairs(
            &spec.model,
            &participants,
            spec.hierarchy.as_ref(),
            scenario.directed_cascade,
        )
        .unwrap_or_default();
        for (source, target) in pairs {
            requests.push((source, target, spec.kind, None));
        }
    }

    // First spec wins for a repeated (source, target, kind) triple.
    let mut seen = std::collections::BTreeSet::new();
    requests.retain(|(s, t, k, _)| seen.insert((s.clone(), t.clone(), *k)));

    let mut setups = Vec::new();
    let mut denials = Vec::new();
    for (source_id, target_id, kind, class) in requests {
        let (Some(source), Some(target)) =
            (scenario.agent(&source_id), scenario.agent(&target_id))
        else {
            continue;
        };
        let (Some(source_sla), Some(target_sla)) =
            (scenario.sla(&source_id), scenario.sla(&target_id))
        else {
            continue;
        };

        // Taxonomy-level admissibility: a kind the category cannot consume
        // is never requested.
        let category = TlCategory {
            label_axis: classify_label_axis(source, target).unwrap_or(LabelAxis::Unsupervised),
            domain_axis: classify_domain_axis(source, target, scenario.homogeneity_threshold),
            solution_axis: kind,
        };
        if !admissible_knowledge_kinds(&category).contains(&kind) {
            continue;
        }

        let class = class.unwrap_or_else(|| source_sla.class_for(&target_id).clone());
        let share_fraction = source_sla.shareable_kinds.get(&kind).copied().unwrap_or(1.0);
        let source_level = scenario
            .topology
            .node(&source.node)
            .map(|n| n.tier)
            .unwrap_or(Tier::Management);
        let payload_bits = payload_bits_for(source, kind, share_fraction, _sizing).max(1);

        let request = PipelineRequest {
            source: source_id.clone(),
            target: target_id.clone(),
            kind,
            class,
            initiator: crate::governance::Initiator::Orchestrator,
            payload_bits,
        };
        match authorize(
            &request,
            source,
            target,
            source_sla,
            target_sla,
            &scenario.topology,
            scenario.security_tolerance,
        ) {
            Ok(decision) => {
                if let Some(pipeline) = decision.pipeline {
                    setups.push(PipelineSetup {
                        pipeline,
                        share_fraction,
                        source_level,
                    });
                } else if let Some(reason) = decision.denial_reason {
                    denials.push(DenialRecord {
                        source: source_id,
                        target: target_id,
                        reason,
                    });
                }
            }
            Err(_) => continue,
        }
    }
    (setups, denials)
}

fn payload_bits_for(
    source: &LearningAgent,
    kind: KnowledgeKind,
    share_fraction: f64,
    sizing: ExtractionSizing,
) -> u64 {
    match kind {
        KnowledgeKind::Instance => {
            let shared = (share_fraction * source.domain.sample_count as f64).ceil() as u64;
            shared * source.domain.bits_per_sample
        }
        KnowledgeKind::Parameter => source.task.parameter_count * sizing.bits_per_weight,
        KnowledgeKind::Feature => source.domain.distribution_signature.len() as u64 * 64,
        KnowledgeKind::Relational => sizing.relational_payload_bits,
    }
}

/// Explicit trace events plus seeded synthetic periodic events, sorted by
/// (time, kind priority, subject).
fn build_events(scenario: &Scenario, pipelines: &[PipelineSetup]) -> Vec<EventSpec> {
    let mut events = scenario.events.trace.clone();

    if let Some(synthetic) = &scenario.events.synthetic {
        let mut rng = ChaCha8Rng::seed_from_u64(scenario.seed);
        let mut sources: Vec<String> = pipelines.iter().map(|p| p.pipeline.source.clone()).collect();
        sources.sort();
        sources.dedup();
        for source in &sources {
            let phase = rng.gen_range(0.0..synthetic.update_period_s);
            let mut t = phase;
            while t <= scenario.horizon_s {
                events.push(EventSpec::Update {
                    time_s: t,
                    agent: source.clone(),
                });
                t += synthetic.update_period_s;
            }
        }
        if let Some(demand_period) = synthetic.demand_period_s {
            let mut demand_pairs: Vec<(String, String)> = pipelines
                .iter()
                .filter(|p| matches!(p.pipeline.class, InteractionClass::OnDemand))
                .map(|p| (p.pipeline.source.clone(), p.pipeline.target.clone()))
                .collect();
            demand_pairs.sort();
            demand_pairs.dedup();
            for (source, target) in &demand_pairs {
                let phase = rng.gen_range(0.0..demand_period);
                let mut t = phase;
                while t <= scenario.horizon_s {
                    events.push(EventSpec::Demand {
                        time_s: t,
                        source: source.clone(),
                        target: target.clone(),
                    });
                    t += demand_period;
                }
            }
        }
    }

    events.sort_by(|a, b| {
        let key = |e: &EventSpec| -> (f64, u8, String) {
            match e {
                EventSpec::Update { time_s, agent } => (*time_s, 1, agent.clone()),
                EventSpec::Demand {
                    time_s,
                    source,
                    target,
                } => (*time_s, 2, format!("{source}/{target}")),
                EventSpec::ResourceAction { time_s, agent, .. } => (*time_s, 4, agent.clone()),
            }
        };
        let (ta, ka, sa) = key(a);
        let (tb, kb, sb) = key(b);
        ta.partial_cmp(&tb)
            .unwrap()
            .then_with(|| ka.cmp(&kb))
            .then_with(|| sa.cmp(&sb))
    });
    events
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantization::{QuantScheme, RetuneModel};
    use crate::testutil::two_agent_scenario;

    #[test]
    fn event_ordering_is_total() {
        let mut events = [Event {
                time_s: 5.0,
                kind: EventKind::ResourceAction,
                subject: "a".to_string(),
            },
            Event {
                time_s: 5.0,
                kind: EventKind::WindowOpen,
                subject: "w".to_string(),
            },
            Event {
                time_s: 5.0,
                kind: EventKind::KnowledgeUpdate,
                subject: "a".to_string(),
            },
            Event {
                time_s: 1.0,
                kind: EventKind::JobDispatch,
                subject: "j".to_string(),
            }];
        events.sort();
        assert_eq!(events[0].kind, EventKind::JobDispatch);
        assert_eq!(events[1].kind, EventKind::WindowOpen);
        assert_eq!(events[2].kind, EventKind::KnowledgeUpdate);
        assert_eq!(events[3].kind, EventKind::ResourceAction);
    }

    #[test]
    fn empty_trace_yields_empty_report() {
        let mut s = two_agent_scenario();
        s.events.trace.clear();
        let report = run(&s).unwrap();
        assert_eq!(report.totals.jobs, 0);
        assert_eq!(report.totals.bits, 0);
        assert_eq!(report.totals.theta, 0.0);
        // No transfer leaves the target at its baselines.
        assert_eq!(report.pairs[0].eta, 1.0);
        assert_eq!(report.pairs[0].tau, 1.0);
        assert!(!report.pairs[0].positive);
    }

    #[test]
    fn single_realtime_update_books_one_job() {
        let s = two_agent_scenario();
        let report = run(&s).unwrap();
        assert_eq!(report.totals.jobs, 1);
        let expected_theta = compute_overhead(
            10e6,
            0.005,
            crate::costmodel::ClassKind::RealTime,
            0,
            &s.overhead,
            Some(0.0),
        )
        .unwrap();
        assert!((report.totals.theta - expected_theta).abs() < 1e-12);
    }

    #[test]
    fn effect_model_parameter_with_retune() {
        let s = two_agent_scenario();
        let target = s.agent("B").unwrap();
        let quant = QuantizationConfig {
            scheme: QuantScheme::Qat8,
            retune: Some(RetuneModel {
                retrain_time_s: 196.0,
                full_train_time_s: 616.0,
                restores_accuracy: true,
            }),
            ..QuantizationConfig::default()
        };
        let artifact = KnowledgeArtifact {
            id: "x".to_string(),
            kind: KnowledgeKind::Parameter,
            level: Tier::RadioAccess,
            content_tag: "w".to_string(),
            payload_bits: 8,
            security_level: 0,
            source_agent: "A".to_string(),
            timestamp_s: 0.0,
        };
        let (p_tl, t_tl) = effect_model(target, &[artifact], &quant, 1.0, 0.9, 0.9);
        assert_eq!(t_tl, 196.0);
        assert!((p_tl - 0.94).abs() < 1e-12);
    }

    #[test]
    fn effect_model_negative_transfer() {
        let s = two_agent_scenario();
        let target = s.agent("B").unwrap();
        let artifact = KnowledgeArtifact {
            id: "x".to_string(),
            kind: KnowledgeKind::Parameter,
            level: Tier::RadioAccess,
            content_tag: "w".to_string(),
            payload_bits: 8,
            security_level: 0,
            source_agent: "A".to_string(),
            timestamp_s: 0.0,
        };
        let (p_tl, _) =
            effect_model(target, &[artifact], &QuantizationConfig::default(), 0.0, 0.9, 0.9);
        assert!((p_tl - target.baseline_performance * 0.9).abs() < 1e-12);
    }

    #[test]
    fn effect_model_no_artifacts_is_identity() {
        let s = two_agent_scenario();
        let target = s.agent("B").unwrap();
        let (p_tl, t_tl) =
            effect_model(target, &[], &QuantizationConfig::default(), 1.0, 0.9, 0.9);
        assert_eq!(p_tl, target.baseline_performance);
        assert_eq!(t_tl, target.baseline_training_time_s);
    }

    #[test]
    fn conservation_of_bits() {
        let s = two_agent_scenario();
        let report = run(&s).unwrap();
        let util_bits: u64 = report.utilization.iter().map(|u| u.bits).sum();
        assert_eq!(util_bits, report.totals.bits);
    }

    #[test]
    fn report_is_deterministic() {
        let s = two_agent_scenario();
        let a = serde_json::to_string(&run(&s).unwrap()).unwrap();
        let b = serde_json::to_string(&run(&s).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn positive_flag_matches_recomputation() {
        let s = two_agent_scenario();
        let report = run(&s).unwrap();
        for pair in &report.pairs {
            assert_eq!(pair.positive, is_positive_tl(pair.eta, pair.tau));
        }
    }

    #[test]
    fn invalid_scenario_is_rejected_before_processing() {
        let mut s = two_agent_scenario();
        s.horizon_s = -1.0;
        match run(&s) {
            Err(SimError::Validation(issues)) => {
                assert!(issues.iter().any(|i| i.path == "horizon_s"));
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }
}
