//! Training-plane knowledge repository: artifact storage by network level,
//! security-gated retrieval, knowledge extraction, and periodic patterns.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::agents::{KnowledgeKind, LearningAgent};
use crate::topology::Tier;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnowledgeArtifact {
    pub id: String,
    pub kind: KnowledgeKind,
    pub level: Tier,
    pub content_tag: String,
    pub payload_bits: u64,
    pub security_level: u32,
    pub source_agent: String,
    pub timestamp_s: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Period {
    Daily,
    Weekly,
    Seasonal { seconds: f64 },
}

impl Period {
    pub fn seconds(self) -> f64 {
        match self {
            Period::Daily => 86_400.0,
            Period::Weekly => 604_800.0,
            Period::Seasonal { seconds } => seconds,
        }
    }

    pub fn default_bins(self) -> usize {
        match self {
            Period::Daily => 24,
            Period::Weekly => 7,
            Period::Seasonal { .. } => 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodicProfile {
    pub period: Period,
    pub bins: Vec<f64>,
}

#[derive(Debug, Error, PartialEq)]
pub enum RepositoryError {
    #[error("artifact {0} already stored with different content")]
    DuplicateIdWithDifferentContent(String),
    #[error("cannot extract instances from an empty domain")]
    EmptyDomain,
}

#[derive(Debug, Default)]
pub struct Repository {
    artifacts: BTreeMap<String, KnowledgeArtifact>,
}

impl Repository {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.artifacts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.artifacts.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&KnowledgeArtifact> {
        self.artifacts.get(id)
    }

    /// Idempotent on identical content; re-storing an id with different
    /// content is rejected.
    pub fn store(&mut self, artifact: KnowledgeArtifact) -> Result<String, RepositoryError> {
        if let Some(existing) = self.artifacts.get(&artifact.id) {
            if *existing != artifact {
                return Err(RepositoryError::DuplicateIdWithDifferentContent(artifact.id));
            }
            return Ok(artifact.id);
        }
        let id = artifact.id.clone();
        self.artifacts.insert(id.clone(), artifact);
        Ok(id)
    }

    /// Matching artifacts the requester is cleared for, sorted by timestamp
    /// (id as tiebreak so the order is stable under insertion order).
    pub fn retrieve(
        &self,
        level: Tier,
        content_tag: &str,
        time_range: (f64, f64),
        requester_security_level: u32,
    ) -> Vec<&KnowledgeArtifact> {
        let (start, end) = time_range;
        let mut found: Vec<&KnowledgeArtifact> = self
            .artifacts
            .values()
            .filter(|a| {
                a.level == level
                    && a.content_tag == content_tag
                    && a.timestamp_s >= start
                    && a.timestamp_s <= end
                    && a.security_level <= requester_security_level
            })
            .collect();
        found.sort_by(|a, b| {
            a.timestamp_s
                .partial_cmp(&b.timestamp_s)
                .unwrap()
                .then_with(|| a.id.cmp(&b.id))
        });
        found
    }

    /// Writes the repository as one JSON record per line.
    pub fn persist_to<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        for artifact in self.artifacts.values() {
            serde_json::to_writer(&mut out, artifact)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

/// Sizes of extracted knowledge by kind; knobs the scenario config owns.
#[derive(Debug, Clone, Copy)]
pub struct ExtractionSizing {
    pub bits_per_weight: u64,
    pub relational_payload_bits: u64,
}

/// Builds a transferable artifact from an agent's domain and task. Payload
/// size depends on the kind: instance transfers share a fraction of the
/// dataset, parameter transfers carry the (possibly quantized) weights,
/// feature transfers carry the signature, relational transfers a
/// configured constant.
#[allow(clippy::too_many_arguments)]
pub fn extract_knowledge(
    agent: &LearningAgent,
    kind: KnowledgeKind,
    share_fraction: f64,
    level: Tier,
    sizing: ExtractionSizing,
    security_level: u32,
    content_tag: &str,
    timestamp_s: f64,
) -> Result<KnowledgeArtifact, RepositoryError> {
    let payload_bits = match kind {
        KnowledgeKind::Instance => {
            if agent.domain.sample_count == 0 {
                return Err(RepositoryError::EmptyDomain);
            }
            let shared = (share_fraction * agent.domain.sample_count as f64).ceil() as u64;
            shared * agent.domain.bits_per_sample
        }
        KnowledgeKind::Parameter => agent.task.parameter_count * sizing.bits_per_weight,
        KnowledgeKind::Feature => agent.domain.distribution_signature.len() as u64 * 64,
        KnowledgeKind::Relational => sizing.relational_payload_bits,
    };
    Ok(KnowledgeArtifact {
        id: format!("{}/{:?}/{}", agent.id, kind, timestamp_s),
        kind,
        level,
        content_tag: content_tag.to_string(),
        payload_bits,
        security_level,
        source_agent: agent.id.clone(),
        timestamp_s,
    })
}

/// Mean payload activity per bin of the period; the bin is selected by the
/// artifact timestamp modulo the period length.
pub fn aggregate_pattern(artifacts: &[KnowledgeArtifact], period: Period) -> PeriodicProfile {
    aggregate_pattern_binned(artifacts, period, period.default_bins())
}

pub fn aggregate_pattern_binned(
    artifacts: &[KnowledgeArtifact],
    period: Period,
    bin_count: usize,
) -> PeriodicProfile {
    let mut sums = vec![0.0; bin_count];
    let mut counts = vec![0u64; bin_count];
    let period_s = period.seconds();
    let bin_width = period_s / bin_count as f64;
    for artifact in artifacts {
        let phase = artifact.timestamp_s.rem_euclid(period_s);
        let bin = ((phase / bin_width) as usize).min(bin_count - 1);
        sums[bin] += artifact.payload_bits as f64;
        counts[bin] += 1;
    }
    let bins = sums
        .iter()
        .zip(&counts)
        .map(|(s, c)| if *c == 0 { 0.0 } else { s / *c as f64 })
        .collect();
    PeriodicProfile { period, bins }
}
