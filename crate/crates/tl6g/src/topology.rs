//! Multi-tier network graph: nodes, links, minimum-delay paths, and
//! source-target pair generation for the three interaction models.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Network level a node belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tier {
    EndUser,
    RadioAccess,
    Core,
    OttService,
    Management,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Node {
    pub id: String,
    pub tier: Tier,
    pub zone: String,
}

/// Undirected link with symmetric properties. `load_profile`, when present,
/// is a 24-slot hourly utilization profile in [0,1] wrapping daily.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Link {
    pub id: String,
    pub endpoints: (String, String),
    pub bandwidth_bps: f64,
    pub delay_s: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub load_profile: Option<Vec<f64>>,
}

impl Link {
    /// Utilization at time `t` (seconds); constant 0 when no profile is set.
    pub fn utilization_at(&self, t: f64) -> f64 {
        match &self.load_profile {
            Some(slots) if !slots.is_empty() => {
                let hour = ((t / 3600.0).floor() as i64).rem_euclid(slots.len() as i64);
                slots[hour as usize]
            }
            _ => 0.0,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Topology {
    pub nodes: Vec<Node>,
    pub links: Vec<Link>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    pub links: Vec<String>,
    pub e2e_bandwidth_bps: f64,
    pub e2e_delay_s: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum InteractionModel {
    Cascade,
    Hierarchical,
    Parallel,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TopologyError {
    #[error("no path between {0} and {1}")]
    NoPath(String, String),
    #[error("unknown node {0}")]
    UnknownNode(String),
    #[error("hierarchical model requires a parent map")]
    MissingHierarchy,
    #[error("agent list is empty")]
    EmptyAgentList,
}

impl Topology {
    pub fn node(&self, id: &str) -> Option<&Node> {
        self.nodes.iter().find(|n| n.id == id)
    }

    pub fn link(&self, id: &str) -> Option<&Link> {
        self.links.iter().find(|l| l.id == id)
    }

    /// Minimum-total-delay path between `a` and `b`. Ties are broken by the
    /// lexicographically smallest link-id sequence so results are stable.
    pub fn path_between(&self, a: &str, b: &str) -> Result<Path, TopologyError> {
        if self.node(a).is_none() {
            return Err(TopologyError::UnknownNode(a.to_string()));
        }
        if self.node(b).is_none() {
            return Err(TopologyError::UnknownNode(b.to_string()));
        }
        if a == b {
            return Ok(Path {
                links: Vec::new(),
                e2e_bandwidth_bps: f64::INFINITY,
                e2e_delay_s: 0.0,
            });
        }

        let mut adjacency: BTreeMap<&str, Vec<&Link>> = BTreeMap::new();
        for link in &self.links {
            adjacency.entry(&link.endpoints.0).or_default().push(link);
            adjacency.entry(&link.endpoints.1).or_default().push(link);
        }

        // Dijkstra over (delay, link-id sequence); graphs are small enough
        // that a linear scan for the frontier minimum is fine.
        let mut best: BTreeMap<&str, (f64, Vec<String>)> = BTreeMap::new();
        let mut done: BTreeSet<&str> = BTreeSet::new();
        best.insert(a, (0.0, Vec::new()));

        loop {
            let current = best
                .iter()
                .filter(|(id, _)| !done.contains(*id))
                .min_by(|(_, (da, pa)), (_, (db, pb))| {
                    da.partial_cmp(db).unwrap().then_with(|| pa.cmp(pb))
                })
                .map(|(id, _)| *id);
            let Some(current) = current else { break };
            if current == b {
                break;
            }
            done.insert(current);
            let (delay, path) = best[current].clone();
            for link in adjacency.get(current).into_iter().flatten() {
                let other = if link.endpoints.0 == current {
                    link.endpoints.1.as_str()
                } else {
                    link.endpoints.0.as_str()
                };
                let cand_delay = delay + link.delay_s;
                let mut cand_path = path.clone();
                cand_path.push(link.id.clone());
                let improves = match best.get(other) {
                    None => true,
                    Some((d, p)) => {
                        cand_delay < *d || (cand_delay == *d && cand_path < *p)
                    }
                };
                if improves {
                    let other_ref = self
                        .nodes
                        .iter()
                        .find(|n| n.id == other)
                        .map(|n| n.id.as_str())
                        .unwrap_or(other);
                    best.insert(other_ref, (cand_delay, cand_path));
                }
            }
        }

        let (delay, link_ids) = best
            .remove(b)
            .ok_or_else(|| TopologyError::NoPath(a.to_string(), b.to_string()))?;
        let bandwidth = link_ids
            .iter()
            .map(|id| self.link(id).expect("link on path exists").bandwidth_bps)
            .fold(f64::INFINITY, f64::min);
        Ok(Path {
            links: link_ids,
            e2e_bandwidth_bps: bandwidth,
            e2e_delay_s: delay,
        })
    }
}

/// Generates directed source-target pairs for an interaction model.
///
/// Cascade walks the given agent order and pairs neighbors; hierarchical
/// pairs each child with its parent; parallel pairs same-tier peers.
/// All models emit both directions unless `directed_cascade` restricts
/// the cascade to its forward direction.
pub fn generate_pairs(
    model: &InteractionModel,
    agents: &[(String, Tier)],
    hierarchy: Option<&BTreeMap<String, String>>,
    directed_cascade: bool,
) -> Result<Vec<(String, String)>, TopologyError> {
    if agents.is_empty() {
        return Err(TopologyError::EmptyAgentList);
    }
    let mut pairs = Vec::new();
    match model {
        InteractionModel::Cascade => {
            for window in agents.windows(2) {
                let (s, t) = (&window[0].0, &window[1].0);
                if s == t {
                    continue;
                }
                pairs.push((s.clone(), t.clone()));
                if !directed_cascade {
                    pairs.push((t.clone(), s.clone()));
                }
            }
        }
        InteractionModel::Hierarchical => {
            let hierarchy = hierarchy.ok_or(TopologyError::MissingHierarchy)?;
            for (child, parent) in hierarchy {
                if child == parent {
                    continue;
                }
                pairs.push((child.clone(), parent.clone()));
                pairs.push((parent.clone(), child.clone()));
            }
        }
        InteractionModel::Parallel => {
            for i in 0..agents.len() {
                for j in (i + 1)..agents.len() {
                    if agents[i].1 == agents[j].1 && agents[i].0 != agents[j].0 {
                        pairs.push((agents[i].0.clone(), agents[j].0.clone()));
                        pairs.push((agents[j].0.clone(), agents[i].0.clone()));
                    }
                }
            }
        }
    }
    Ok(pairs)
}
