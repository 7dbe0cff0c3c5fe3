//! Learning-agent descriptors and classification of source-target pairs
//! into the transfer-learning taxonomy.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Feature-space side of an algorithm: an opaque feature-space id, a
/// normalized histogram standing in for the marginal distribution, and
/// the dataset size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainDescriptor {
    pub feature_space_id: String,
    pub distribution_signature: Vec<f64>,
    pub sample_count: u64,
    pub has_labels: bool,
    pub bits_per_sample: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskDescriptor {
    pub label_space_id: String,
    pub function_signature: String,
    pub parameter_count: u64,
    #[serde(default)]
    pub hyperparams: BTreeMap<String, String>,
}

/// One MAPE-K loop's analysis algorithm, hosted on a network node.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LearningAgent {
    pub id: String,
    pub node: String,
    pub purpose: String,
    pub domain: DomainDescriptor,
    pub task: TaskDescriptor,
    pub baseline_performance: f64,
    pub baseline_training_time_s: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LabelAxis {
    Transductive,
    Inductive,
    Unsupervised,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DomainAxis {
    Homogeneous,
    Heterogeneous,
}

/// Kind of transferable knowledge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KnowledgeKind {
    Instance,
    Feature,
    Parameter,
    Relational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TlCategory {
    pub label_axis: LabelAxis,
    pub domain_axis: DomainAxis,
    pub solution_axis: KnowledgeKind,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TaxonomyError {
    #[error("pair with labels only at the target has no category")]
    UnclassifiablePair,
    #[error("distribution signatures have different lengths ({0} vs {1})")]
    SignatureLengthMismatch(usize, usize),
    #[error("domain has no samples")]
    EmptyDomain,
}

/// Availability of labels on each side decides the label axis.
pub fn classify_label_axis(
    source: &LearningAgent,
    target: &LearningAgent,
) -> Result<LabelAxis, TaxonomyError> {
    match (source.domain.has_labels, target.domain.has_labels) {
        (true, false) => Ok(LabelAxis::Transductive),
        (true, true) => Ok(LabelAxis::Inductive),
        (false, false) => Ok(LabelAxis::Unsupervised),
        (false, true) => Err(TaxonomyError::UnclassifiablePair),
    }
}

/// Histogram-overlap similarity between two domain signatures: the sum of
/// bin-wise minima, 1 for identical signatures, 0 for disjoint support.
pub fn domain_similarity(
    a: &DomainDescriptor,
    b: &DomainDescriptor,
) -> Result<f64, TaxonomyError> {
    if a.sample_count == 0 || b.sample_count == 0 {
        return Err(TaxonomyError::EmptyDomain);
    }
    if a.distribution_signature.len() != b.distribution_signature.len() {
        return Err(TaxonomyError::SignatureLengthMismatch(
            a.distribution_signature.len(),
            b.distribution_signature.len(),
        ));
    }
    Ok(a.distribution_signature
        .iter()
        .zip(&b.distribution_signature)
        .map(|(x, y)| x.min(*y))
        .sum())
}

/// Homogeneous iff the feature spaces match and the signature overlap
/// clears the threshold; any mismatch (including incomparable domains)
/// is heterogeneous.
pub fn classify_domain_axis(
    source: &LearningAgent,
    target: &LearningAgent,
    homogeneity_threshold: f64,
) -> DomainAxis {
    if source.domain.feature_space_id != target.domain.feature_space_id {
        return DomainAxis::Heterogeneous;
    }
    match domain_similarity(&source.domain, &target.domain) {
        Ok(sim) if sim >= homogeneity_threshold => DomainAxis::Homogeneous,
        _ => DomainAxis::Heterogeneous,
    }
}

/// Knowledge kinds admissible at the taxonomy level. Raw instances from a
/// different feature space cannot be consumed directly, so heterogeneous
/// pairs lose instance-based transfer; SLA restrictions apply later.
pub fn admissible_knowledge_kinds(category: &TlCategory) -> Vec<KnowledgeKind> {
    match category.domain_axis {
        DomainAxis::Homogeneous => vec![
            KnowledgeKind::Instance,
            KnowledgeKind::Feature,
            KnowledgeKind::Parameter,
            KnowledgeKind::Relational,
        ],
        DomainAxis::Heterogeneous => vec![
            KnowledgeKind::Feature,
            KnowledgeKind::Parameter,
            KnowledgeKind::Relational,
        ],
    }
}
