//! Scenario configuration: the single JSON document a run is loaded from,
//! plus full validation with field paths.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::agents::{KnowledgeKind, LearningAgent};
use crate::costmodel::OverheadParams;
use crate::governance::{initiation_allowed, InitiationConfig, Initiator, SlaPolicy};
use crate::quantization::{AccuracyModel, QuantScheme, RetuneModel};
use crate::scheduler::{InteractionClass, RushProfile};
use crate::topology::{InteractionModel, Topology};

/// One requested pipeline. When `class` is omitted the source SLA's
/// granularity for the target decides it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PipelineSpec {
    pub source: String,
    pub target: String,
    pub kind: KnowledgeKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<InteractionClass>,
    #[serde(default = "default_initiator")]
    pub initiator: Initiator,
}

fn default_initiator() -> Initiator {
    Initiator::Orchestrator
}

/// Pair generation over an interaction model. `agents` lists the ordered
/// participants (all agents in declaration order when empty); `kind` is
/// the knowledge kind the generated pipelines carry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InteractionModelSpec {
    pub model: InteractionModel,
    #[serde(default)]
    pub agents: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hierarchy: Option<BTreeMap<String, String>>,
    #[serde(default = "default_kind")]
    pub kind: KnowledgeKind,
}

fn default_kind() -> KnowledgeKind {
    KnowledgeKind::Parameter
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuantizationConfig {
    pub scheme: QuantScheme,
    pub base_accuracy: f64,
    pub fbgemm8_delta: f64,
    pub default8_delta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub retune: Option<RetuneModel>,
}

impl QuantizationConfig {
    pub fn accuracy_model(&self) -> AccuracyModel {
        AccuracyModel {
            base_accuracy: self.base_accuracy,
            fbgemm8_delta: self.fbgemm8_delta,
            default8_delta: self.default8_delta,
        }
    }
}

impl Default for QuantizationConfig {
    fn default() -> Self {
        QuantizationConfig {
            scheme: QuantScheme::Float32,
            base_accuracy: 94.0,
            fbgemm8_delta: -3.0,
            default8_delta: -4.0,
            retune: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EventSpec {
    Update {
        time_s: f64,
        agent: String,
    },
    Demand {
        time_s: f64,
        source: String,
        target: String,
    },
    ResourceAction {
        time_s: f64,
        agent: String,
        node: String,
        resource: String,
        delta: f64,
    },
}

impl EventSpec {
    pub fn time_s(&self) -> f64 {
        match self {
            EventSpec::Update { time_s, .. }
            | EventSpec::Demand { time_s, .. }
            | EventSpec::ResourceAction { time_s, .. } => *time_s,
        }
    }
}

/// Periodic synthetic trace generation; phases are drawn from the
/// scenario seed so traces stay reproducible.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SyntheticConfig {
    pub update_period_s: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub demand_period_s: Option<f64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct EventsConfig {
    #[serde(default)]
    pub trace: Vec<EventSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub synthetic: Option<SyntheticConfig>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Scenario {
    pub horizon_s: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_homogeneity_threshold")]
    pub homogeneity_threshold: f64,
    #[serde(default = "default_negative_transfer_factor")]
    pub negative_transfer_factor: f64,
    #[serde(default)]
    pub security_tolerance: u32,
    #[serde(default)]
    pub directed_cascade: bool,
    #[serde(default = "default_conflict_window")]
    pub conflict_window_s: f64,
    #[serde(default)]
    pub initiation: InitiationConfig,
    pub topology: Topology,
    pub agents: Vec<LearningAgent>,
    pub slas: Vec<SlaPolicy>,
    #[serde(default)]
    pub pipelines: Vec<PipelineSpec>,
    #[serde(default)]
    pub interaction_models: Vec<InteractionModelSpec>,
    #[serde(default)]
    pub overhead: OverheadParams,
    #[serde(default)]
    pub quantization: QuantizationConfig,
    #[serde(default = "default_relational_bits")]
    pub relational_payload_bits: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rush_profile: Option<RushProfile>,
    #[serde(default)]
    pub events: EventsConfig,
}

fn default_homogeneity_threshold() -> f64 {
    0.9
}

fn default_negative_transfer_factor() -> f64 {
    0.9
}

fn default_conflict_window() -> f64 {
    1.0
}

fn default_relational_bits() -> u64 {
    4096
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationIssue {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

impl Scenario {
    pub fn agent(&self, id: &str) -> Option<&LearningAgent> {
        self.agents.iter().find(|a| a.id == id)
    }

    pub fn sla(&self, agent_id: &str) -> Option<&SlaPolicy> {
        self.slas.iter().find(|s| s.agent == agent_id)
    }

    /// Collects every invariant violation with its field path.
    pub fn validate(&self) -> Vec<ValidationIssue> {
        let mut issues = Vec::new();
        let push = |issues: &mut Vec<ValidationIssue>, path: &str, message: String| {
            issues.push(ValidationIssue {
                path: path.to_string(),
                message,
            });
        };

        if self.horizon_s <= 0.0 {
            push(&mut issues, "horizon_s", "horizon must be > 0".to_string());
        }
        if !(0.0..=1.0).contains(&self.homogeneity_threshold) {
            push(
                &mut issues,
                "homogeneity_threshold",
                "must lie in [0, 1]".to_string(),
            );
        }
        if self.negative_transfer_factor < 0.0 || self.negative_transfer_factor >= 1.0 {
            push(
                &mut issues,
                "negative_transfer_factor",
                "must lie in [0, 1)".to_string(),
            );
        }
        if self.conflict_window_s <= 0.0 {
            push(&mut issues, "conflict_window_s", "must be > 0".to_string());
        }

        // Topology.
        let mut node_ids = std::collections::BTreeSet::new();
        for (i, node) in self.topology.nodes.iter().enumerate() {
            if !node_ids.insert(node.id.clone()) {
                push(
                    &mut issues,
                    &format!("topology.nodes[{i}].id"),
                    format!("duplicate node id {}", node.id),
                );
            }
        }
        for (i, link) in self.topology.links.iter().enumerate() {
            let path = format!("topology.links[{i}]");
            if link.bandwidth_bps <= 0.0 {
                push(&mut issues, &format!("{path}.bandwidth_bps"), "must be > 0".to_string());
            }
            if link.delay_s < 0.0 {
                push(&mut issues, &format!("{path}.delay_s"), "must be >= 0".to_string());
            }
            for endpoint in [&link.endpoints.0, &link.endpoints.1] {
                if !node_ids.contains(endpoint) {
                    push(
                        &mut issues,
                        &format!("{path}.endpoints"),
                        format!("unknown node {endpoint}"),
                    );
                }
            }
            if let Some(profile) = &link.load_profile {
                if profile.iter().any(|u| !(0.0..=1.0).contains(u)) {
                    push(
                        &mut issues,
                        &format!("{path}.load_profile"),
                        "utilization values must lie in [0, 1]".to_string(),
                    );
                }
            }
        }

        // Agents.
        let mut agent_ids = std::collections::BTreeSet::new();
        for (i, agent) in self.agents.iter().enumerate() {
            let path = format!("agents[{i}]");
            if !agent_ids.insert(agent.id.clone()) {
                push(&mut issues, &format!("{path}.id"), format!("duplicate agent id {}", agent.id));
            }
            if !node_ids.contains(&agent.node) {
                push(&mut issues, &format!("{path}.node"), format!("unknown node {}", agent.node));
            }
            if !(agent.baseline_performance > 0.0 && agent.baseline_performance <= 1.0) {
                push(
                    &mut issues,
                    &format!("{path}.baseline_performance"),
                    "must lie in (0, 1]".to_string(),
                );
            }
            if agent.baseline_training_time_s <= 0.0 {
                push(
                    &mut issues,
                    &format!("{path}.baseline_training_time_s"),
                    "must be > 0".to_string(),
                );
            }
            if agent.domain.bits_per_sample == 0 {
                push(
                    &mut issues,
                    &format!("{path}.domain.bits_per_sample"),
                    "must be > 0".to_string(),
                );
            }
            let signature = &agent.domain.distribution_signature;
            if signature.iter().any(|v| *v < 0.0) {
                push(
                    &mut issues,
                    &format!("{path}.domain.distribution_signature"),
                    "entries must be >= 0".to_string(),
                );
            } else if agent.domain.sample_count > 0 {
                let sum: f64 = signature.iter().sum();
                if (sum - 1.0).abs() > 1e-9 {
                    push(
                        &mut issues,
                        &format!("{path}.domain.distribution_signature"),
                        format!("must sum to 1 (got {sum})"),
                    );
                }
            }
        }

        // SLAs.
        let mut sla_agents = std::collections::BTreeSet::new();
        for (i, sla) in self.slas.iter().enumerate() {
            let path = format!("slas[{i}]");
            if !agent_ids.contains(&sla.agent) {
                push(&mut issues, &format!("{path}.agent"), format!("unknown agent {}", sla.agent));
            }
            if !sla_agents.insert(sla.agent.clone()) {
                push(&mut issues, &format!("{path}.agent"), format!("duplicate SLA for {}", sla.agent));
            }
            for (kind, fraction) in &sla.shareable_kinds {
                if !(*fraction > 0.0 && *fraction <= 1.0) {
                    push(
                        &mut issues,
                        &format!("{path}.shareable_kinds.{kind:?}"),
                        "share fraction must lie in (0, 1]".to_string(),
                    );
                }
            }
            if sla.max_e2e_delay_s <= 0.0 {
                push(&mut issues, &format!("{path}.max_e2e_delay_s"), "must be > 0".to_string());
            }
            if sla.required_bandwidth_bps <= 0.0 {
                push(
                    &mut issues,
                    &format!("{path}.required_bandwidth_bps"),
                    "must be > 0".to_string(),
                );
            }
            if sla.default_class.validate_windows().is_err() {
                push(
                    &mut issues,
                    &format!("{path}.default_class.windows"),
                    "windows must be sorted, non-overlapping, end > start".to_string(),
                );
            }
            for (peer, class) in &sla.granularity {
                if class.validate_windows().is_err() {
                    push(
                        &mut issues,
                        &format!("{path}.granularity.{peer}.windows"),
                        "windows must be sorted, non-overlapping, end > start".to_string(),
                    );
                }
            }
        }

        // Explicit pipelines.
        for (i, spec) in self.pipelines.iter().enumerate() {
            let path = format!("pipelines[{i}]");
            if spec.source == spec.target {
                push(&mut issues, &path, "source and target must differ".to_string());
            }
            for (field, id) in [("source", &spec.source), ("target", &spec.target)] {
                if !agent_ids.contains(id) {
                    push(&mut issues, &format!("{path}.{field}"), format!("unknown agent {id}"));
                }
                if !sla_agents.contains(id) {
                    push(&mut issues, &format!("{path}.{field}"), format!("no SLA for agent {id}"));
                }
            }
            if let Some(class) = &spec.class {
                if class.validate_windows().is_err() {
                    push(
                        &mut issues,
                        &format!("{path}.class.windows"),
                        "windows must be sorted, non-overlapping, end > start".to_string(),
                    );
                }
            }
            if !initiation_allowed(spec.initiator, &self.initiation) {
                push(
                    &mut issues,
                    &format!("{path}.initiator"),
                    format!("{:?} may not initiate under the configured mode", spec.initiator),
                );
            }
        }

        // Interaction models.
        for (i, spec) in self.interaction_models.iter().enumerate() {
            let path = format!("interaction_models[{i}]");
            let is_hierarchical = matches!(spec.model, InteractionModel::Hierarchical);
            if is_hierarchical != spec.hierarchy.is_some() {
                push(
                    &mut issues,
                    &format!("{path}.hierarchy"),
                    "parent map required exactly for the hierarchical model".to_string(),
                );
            }
            for id in spec.agents.iter().chain(
                spec.hierarchy
                    .iter()
                    .flat_map(|h| h.iter().flat_map(|(c, p)| [c, p])),
            ) {
                if !agent_ids.contains(id) {
                    push(&mut issues, &format!("{path}.agents"), format!("unknown agent {id}"));
                }
            }
        }

        // Overhead params.
        if let Err(e) = self.overhead.validate() {
            let field = match e {
                crate::costmodel::CostError::ClassCostOrdering(_) => "overhead.m_costs",
                crate::costmodel::CostError::NegativeAlpha => "overhead.alpha",
                _ => "overhead",
            };
            push(&mut issues, field, e.to_string());
        }

        // Quantization.
        if let Err(e) = self.quantization.accuracy_model().validate() {
            push(&mut issues, "quantization", e.to_string());
        }
        if let Some(retune) = &self.quantization.retune {
            if let Err(e) = retune.validate() {
                push(&mut issues, "quantization.retune", e.to_string());
            }
        }

        // Rush profile.
        if let Some(profile) = &self.rush_profile {
            if profile.slots.iter().any(|m| *m < 0.0 || !m.is_finite()) {
                push(&mut issues, "rush_profile.slots", "multipliers must be >= 0".to_string());
            }
        }

        // Events.
        for (i, event) in self.events.trace.iter().enumerate() {
            let path = format!("events.trace[{i}]");
            let t = event.time_s();
            if t < 0.0 || t > self.horizon_s {
                push(&mut issues, &format!("{path}.time_s"), "must lie in [0, horizon]".to_string());
            }
            let ids: Vec<&String> = match event {
                EventSpec::Update { agent, .. } => vec![agent],
                EventSpec::Demand { source, target, .. } => vec![source, target],
                EventSpec::ResourceAction { agent, .. } => vec![agent],
            };
            for id in ids {
                if !agent_ids.contains(id) {
                    push(&mut issues, &path, format!("unknown agent {id}"));
                }
            }
            if let EventSpec::ResourceAction { node, .. } = event {
                if !node_ids.contains(node) {
                    push(&mut issues, &path, format!("unknown node {node}"));
                }
            }
        }
        if let Some(synthetic) = &self.events.synthetic {
            if synthetic.update_period_s <= 0.0 {
                push(
                    &mut issues,
                    "events.synthetic.update_period_s",
                    "must be > 0".to_string(),
                );
            }
            if let Some(p) = synthetic.demand_period_s {
                if p <= 0.0 {
                    push(
                        &mut issues,
                        "events.synthetic.demand_period_s",
                        "must be > 0".to_string(),
                    );
                }
            }
        }

        issues
    }
}
