//! Shared in-memory fixtures used by unit and integration tests.

use std::collections::BTreeMap;

use crate::agents::{DomainDescriptor, KnowledgeKind, LearningAgent, TaskDescriptor};
use crate::governance::{InitiationConfig, Initiator, SlaPolicy};
use crate::scenario::{EventSpec, EventsConfig, PipelineSpec, QuantizationConfig, Scenario};
use crate::scheduler::InteractionClass;
use crate::topology::{Link, Node, Tier, Topology};

pub fn agent(id: &str, node: &str, purpose: &str) -> LearningAgent {
    LearningAgent {
        id: id.to_string(),
        node: node.to_string(),
        purpose: purpose.to_string(),
        domain: DomainDescriptor {
            feature_space_id: "ran_features".to_string(),
            distribution_signature: vec![0.5, 0.5],
            sample_count: 1000,
            has_labels: true,
            bits_per_sample: 512,
        },
        task: TaskDescriptor {
            label_space_id: "ran_labels".to_string(),
            function_signature: "mobilenet_v2".to_string(),
            parameter_count: 1_000_000,
            hyperparams: BTreeMap::new(),
        },
        baseline_performance: 0.9,
        baseline_training_time_s: 616.0,
    }
}

pub fn sla(agent_id: &str, peers: &[&str]) -> SlaPolicy {
    let mut shareable = BTreeMap::new();
    shareable.insert(KnowledgeKind::Parameter, 1.0);
    shareable.insert(KnowledgeKind::Instance, 0.5);
    shareable.insert(KnowledgeKind::Feature, 1.0);
    SlaPolicy {
        agent: agent_id.to_string(),
        trusted_sources: peers.iter().map(|p| p.to_string()).collect(),
        trusted_targets: peers.iter().map(|p| p.to_string()).collect(),
        shareable_kinds: shareable,
        security_level: 0,
        granularity: BTreeMap::new(),
        default_class: InteractionClass::RealTime,
        max_e2e_delay_s: 1.0,
        required_bandwidth_bps: 1e6,
    }
}

/// Two mutually trusting agents on adjacent nodes with one real-time
/// parameter pipeline and a single update event.
pub fn two_agent_scenario() -> Scenario {
    Scenario {
        horizon_s: 3600.0,
        seed: 42,
        homogeneity_threshold: 0.9,
        negative_transfer_factor: 0.9,
        security_tolerance: 0,
        directed_cascade: false,
        conflict_window_s: 1.0,
        initiation: InitiationConfig::default(),
        topology: Topology {
            nodes: vec![
                Node {
                    id: "oran1".to_string(),
                    tier: Tier::RadioAccess,
                    zone: "zone1".to_string(),
                },
                Node {
                    id: "oran2".to_string(),
                    tier: Tier::RadioAccess,
                    zone: "zone1".to_string(),
                },
            ],
            links: vec![Link {
                id: "l-oran1-oran2".to_string(),
                endpoints: ("oran1".to_string(), "oran2".to_string()),
                bandwidth_bps: 10e6,
                delay_s: 0.005,
                load_profile: None,
            }],
        },
        agents: vec![agent("A", "oran1", "RA"), agent("B", "oran2", "RA")],
        slas: vec![sla("A", &["B"]), sla("B", &["A"])],
        pipelines: vec![PipelineSpec {
            source: "A".to_string(),
            target: "B".to_string(),
            kind: KnowledgeKind::Parameter,
            class: None,
            initiator: Initiator::Orchestrator,
        }],
        interaction_models: Vec::new(),
        overhead: Default::default(),
        quantization: QuantizationConfig::default(),
        relational_payload_bits: 4096,
        rush_profile: None,
        events: EventsConfig {
            trace: vec![EventSpec::Update {
                time_s: 5.0,
                agent: "A".to_string(),
            }],
            synthetic: None,
        },
    }
}
