//! Application-plane SLA policies, management-plane authorization of
//! transfer pipelines, initiation modes, and resource-conflict detection.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::agents::{KnowledgeKind, LearningAgent};
use crate::scheduler::{AuthorizedPipeline, InteractionClass};
use crate::topology::Topology;

/// Per-agent SLA: who may be a counterpart, what may be shared, and the
/// bandwidth/delay/security bounds any pipeline must satisfy.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SlaPolicy {
    pub agent: String,
    #[serde(default)]
    pub trusted_sources: BTreeSet<String>,
    #[serde(default)]
    pub trusted_targets: BTreeSet<String>,
    /// Shareable kinds with their share fraction in (0, 1].
    pub shareable_kinds: BTreeMap<KnowledgeKind, f64>,
    pub security_level: u32,
    /// Interaction class per counterpart agent, falling back to `default_class`.
    #[serde(default)]
    pub granularity: BTreeMap<String, InteractionClass>,
    pub default_class: InteractionClass,
    pub max_e2e_delay_s: f64,
    pub required_bandwidth_bps: f64,
}

impl SlaPolicy {
    pub fn class_for(&self, counterpart: &str) -> &InteractionClass {
        self.granularity.get(counterpart).unwrap_or(&self.default_class)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Initiator {
    NetworkElement,
    Orchestrator,
    OttApplication,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitiationMode {
    Centralized,
    Decentralized,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InitiationConfig {
    pub mode: InitiationMode,
    #[serde(default)]
    pub ott_enabled: bool,
}

impl Default for InitiationConfig {
    fn default() -> Self {
        InitiationConfig {
            mode: InitiationMode::Centralized,
            ott_enabled: false,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PipelineRequest {
    pub source: String,
    pub target: String,
    pub kind: KnowledgeKind,
    pub class: InteractionClass,
    pub initiator: Initiator,
    pub payload_bits: u64,
}

/// Checked in this order; a denial carries the first failing check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DenialReason {
    NotTrustedTarget,
    NotTrustedSource,
    KindNotShareable,
    NoPath,
    DelayBoundViolated,
    BandwidthUnsatisfied,
    SecurityMismatch,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuthorizationDecision {
    pub granted: bool,
    pub pipeline: Option<AuthorizedPipeline>,
    pub denial_reason: Option<DenialReason>,
}

impl AuthorizationDecision {
    fn denied(reason: DenialReason) -> Self {
        AuthorizationDecision {
            granted: false,
            pipeline: None,
            denial_reason: Some(reason),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GovernanceError {
    #[error("unknown agent {0}")]
    UnknownAgent(String),
}

/// Decides whether a requested pipeline may be established. The checks run
/// in the fixed order of `DenialReason` so identical inputs always yield
/// the same decision and diagnostic.
pub fn authorize(
    request: &PipelineRequest,
    source: &LearningAgent,
    target: &LearningAgent,
    source_sla: &SlaPolicy,
    target_sla: &SlaPolicy,
    topology: &Topology,
    security_tolerance: u32,
) -> Result<AuthorizationDecision, GovernanceError> {
    if source_sla.agent != source.id || request.source != source.id {
        return Err(GovernanceError::UnknownAgent(request.source.clone()));
    }
    if target_sla.agent != target.id || request.target != target.id {
        return Err(GovernanceError::UnknownAgent(request.target.clone()));
    }

    if !source_sla.trusted_targets.contains(&request.target) {
        return Ok(AuthorizationDecision::denied(DenialReason::NotTrustedTarget));
    }
    if !target_sla.trusted_sources.contains(&request.source) {
        return Ok(AuthorizationDecision::denied(DenialReason::NotTrustedSource));
    }
    if !source_sla.shareable_kinds.contains_key(&request.kind) {
        return Ok(AuthorizationDecision::denied(DenialReason::KindNotShareable));
    }
    let path = match topology.path_between(&source.node, &target.node) {
        Ok(path) => path,
        Err(_) => return Ok(AuthorizationDecision::denied(DenialReason::NoPath)),
    };
    let delay_bound = source_sla.max_e2e_delay_s.min(target_sla.max_e2e_delay_s);
    if path.e2e_delay_s > delay_bound {
        return Ok(AuthorizationDecision::denied(DenialReason::DelayBoundViolated));
    }
    let bandwidth_floor = source_sla
        .required_bandwidth_bps
        .max(target_sla.required_bandwidth_bps);
    if path.e2e_bandwidth_bps < bandwidth_floor {
        return Ok(AuthorizationDecision::denied(DenialReason::BandwidthUnsatisfied));
    }
    let level_gap = source_sla.security_level.abs_diff(target_sla.security_level);
    if level_gap > security_tolerance {
        return Ok(AuthorizationDecision::denied(DenialReason::SecurityMismatch));
    }

    Ok(AuthorizationDecision {
        granted: true,
        pipeline: Some(AuthorizedPipeline {
            source: request.source.clone(),
            target: request.target.clone(),
            kind: request.kind,
            class: request.class.clone(),
            path_links: path.links,
            bandwidth_bps: path.e2e_bandwidth_bps,
            delay_s: path.e2e_delay_s,
            payload_bits: request.payload_bits,
            security_level: source_sla.security_level.max(target_sla.security_level),
        }),
        denial_reason: None,
    })
}

/// A resource adjustment an agent performs on a node at a point in time.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResourceAction {
    pub agent: String,
    pub node: String,
    pub resource: String,
    pub delta: f64,
    pub time_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conflict {
    pub node: String,
    pub resource: String,
    pub agents: BTreeSet<String>,
    pub net_opposition: f64,
}

/// Flags every (node, resource) where two distinct agents push in opposite
/// directions within some sliding window of the given length.
pub fn detect_conflicts(actions: &[ResourceAction], window_s: f64) -> Vec<Conflict> {
    let mut by_key: BTreeMap<(String, String), Vec<&ResourceAction>> = BTreeMap::new();
    for action in actions {
        by_key
            .entry((action.node.clone(), action.resource.clone()))
            .or_default()
            .push(action);
    }

    let mut conflicts = Vec::new();
    for ((node, resource), group) in by_key {
        // An action participates when some opposite-sign action from a
        // different agent lies within the window of it.
        let mut participating = vec![false; group.len()];
        for i in 0..group.len() {
            for j in 0..group.len() {
                if i == j {
                    continue;
                }
                let (a, b) = (group[i], group[j]);
                if a.agent != b.agent
                    && a.delta * b.delta < 0.0
                    && (a.time_s - b.time_s).abs() <= window_s
                {
                    participating[i] = true;
                    participating[j] = true;
                }
            }
        }
        let involved: Vec<&ResourceAction> = group
            .iter()
            .zip(&participating)
            .filter(|(_, p)| **p)
            .map(|(a, _)| *a)
            .collect();
        if involved.is_empty() {
            continue;
        }
        let positive: f64 = involved.iter().filter(|a| a.delta > 0.0).map(|a| a.delta).sum();
        let negative: f64 = involved.iter().filter(|a| a.delta < 0.0).map(|a| -a.delta).sum();
        conflicts.push(Conflict {
            node,
            resource,
            agents: involved.iter().map(|a| a.agent.clone()).collect(),
            net_opposition: positive.min(negative),
        });
    }
    conflicts
}

/// Who may initiate a transfer under the configured management mode.
pub fn initiation_allowed(initiator: Initiator, config: &InitiationConfig) -> bool {
    match initiator {
        Initiator::Orchestrator => true,
        Initiator::NetworkElement => config.mode == InitiationMode::Decentralized,
        Initiator::OttApplication => config.ott_enabled,
    }
}
