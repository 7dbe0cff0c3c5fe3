//! Turns knowledge-update and demand events into scheduled transfer jobs
//! per interaction class, including the non-rush-hour cost-reduction policy.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::agents::KnowledgeKind;
use crate::costmodel::{interaction_cost, ClassKind, OverheadParams};

/// Interaction class with its schedule. Non-real-time transfers carry
/// sorted, non-overlapping `[start, end)` windows in seconds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum InteractionClass {
    RealTime,
    NonRealTime { windows: Vec<(f64, f64)> },
    OnDemand,
}

impl InteractionClass {
    pub fn kind(&self) -> ClassKind {
        match self {
            InteractionClass::RealTime => ClassKind::RealTime,
            InteractionClass::NonRealTime { .. } => ClassKind::NonRealTime,
            InteractionClass::OnDemand => ClassKind::OnDemand,
        }
    }

    /// Windows must be sorted, non-overlapping, with end > start.
    pub fn validate_windows(&self) -> Result<(), ScheduleError> {
        if let InteractionClass::NonRealTime { windows } = self {
            let mut prev_end = f64::NEG_INFINITY;
            for &(start, end) in windows {
                if end <= start || start < prev_end {
                    return Err(ScheduleError::InvalidWindows);
                }
                prev_end = end;
            }
        }
        Ok(())
    }
}

/// An authorized transfer pipeline between a source-target pair over a
/// concrete network path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuthorizedPipeline {
    pub source: String,
    pub target: String,
    pub kind: KnowledgeKind,
    pub class: InteractionClass,
    pub path_links: Vec<String>,
    pub bandwidth_bps: f64,
    pub delay_s: f64,
    pub payload_bits: u64,
    pub security_level: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransferJob {
    pub pipeline: AuthorizedPipeline,
    pub trigger_time_s: f64,
    pub dispatch_time_s: f64,
    pub payload_bits: u64,
    pub theta: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum ScheduleError {
    #[error("non-real-time schedule has no window at or after the trigger")]
    NoFutureWindow,
    #[error("pipeline is not on-demand")]
    WrongClass,
    #[error("schedule windows must be sorted, non-overlapping, end > start")]
    InvalidWindows,
}

/// Outcome of an on-demand request.
#[derive(Debug, Clone, PartialEq)]
pub enum DemandOutcome {
    Dispatched(TransferJob),
    Pending,
}

/// Daily rush profile: 24 hourly multiplier slots, wrapping.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RushProfile {
    pub slots: Vec<f64>,
}

impl RushProfile {
    pub fn flat() -> Self {
        RushProfile { slots: vec![0.0; 24] }
    }

    pub fn multiplier_at(&self, t: f64) -> f64 {
        if self.slots.is_empty() {
            return 0.0;
        }
        let hour = ((t / 3600.0).floor() as i64).rem_euclid(self.slots.len() as i64);
        self.slots[hour as usize]
    }
}

fn make_job(pipeline: &AuthorizedPipeline, trigger: f64, dispatch: f64) -> TransferJob {
    TransferJob {
        pipeline: pipeline.clone(),
        trigger_time_s: trigger,
        dispatch_time_s: dispatch,
        payload_bits: pipeline.payload_bits,
        theta: 0.0,
    }
}

/// Earliest feasible dispatch instant at or after `t`: `t` itself when it
/// lies inside a window, otherwise the next window start.
fn earliest_in_windows(windows: &[(f64, f64)], t: f64) -> Option<f64> {
    for &(start, end) in windows {
        if t < end {
            return Some(t.max(start));
        }
    }
    None
}

/// Per-pipeline scheduler state: on-demand knowledge availability and
/// pending requests queued FIFO.
#[derive(Debug, Default)]
pub struct Scheduler {
    available: BTreeMap<(String, String), f64>,
    pending: BTreeMap<(String, String), VecDeque<f64>>,
}

impl Scheduler {
    pub fn new() -> Self {
        Self::default()
    }

    /// Handles a knowledge update at the source. Real-time pipelines
    /// dispatch immediately, non-real-time ones at the next schedule
    /// window, on-demand ones only record availability (and resolve any
    /// pending requests at this update time).
    pub fn on_knowledge_update(
        &mut self,
        source: &str,
        t: f64,
        pipelines: &[AuthorizedPipeline],
    ) -> Result<Vec<TransferJob>, ScheduleError> {
        let mut jobs = Vec::new();
        for pipeline in pipelines.iter().filter(|p| p.source == source) {
            match &pipeline.class {
                InteractionClass::RealTime => jobs.push(make_job(pipeline, t, t)),
                InteractionClass::NonRealTime { windows } => {
                    let dispatch =
                        earliest_in_windows(windows, t).ok_or(ScheduleError::NoFutureWindow)?;
                    jobs.push(make_job(pipeline, t, dispatch));
                }
                InteractionClass::OnDemand => {
                    let key = (pipeline.source.clone(), pipeline.target.clone());
                    self.available.insert(key.clone(), t);
                    if let Some(queue) = self.pending.get_mut(&key) {
                        while queue.pop_front().is_some() {
                            jobs.push(make_job(pipeline, t, t));
                        }
                    }
                }
            }
        }
        sort_jobs(&mut jobs);
        Ok(jobs)
    }

    /// Handles a target-initiated request on an on-demand pipeline.
    pub fn on_demand_request(
        &mut self,
        t: f64,
        pipeline: &AuthorizedPipeline,
    ) -> Result<DemandOutcome, ScheduleError> {
        if pipeline.class.kind() != ClassKind::OnDemand {
            return Err(ScheduleError::WrongClass);
        }
        let key = (pipeline.source.clone(), pipeline.target.clone());
        if self.available.contains_key(&key) {
            Ok(DemandOutcome::Dispatched(make_job(pipeline, t, t)))
        } else {
            self.pending.entry(key).or_default().push_back(t);
            Ok(DemandOutcome::Pending)
        }
    }
}

/// Stable job order: (dispatch time, source, target).
pub fn sort_jobs(jobs: &mut [TransferJob]) {
    jobs.sort_by(|a, b| {
        a.dispatch_time_s
            .partial_cmp(&b.dispatch_time_s)
            .unwrap()
            .then_with(|| a.pipeline.source.cmp(&b.pipeline.source))
            .then_with(|| a.pipeline.target.cmp(&b.pipeline.target))
    });
}

/// Moves each non-real-time job, within its own windows and at or after
/// its trigger, to the instant minimizing the rush-adjusted interaction
/// cost. Ties break toward the earliest instant, so a flat profile leaves
/// dispatch times unchanged.
pub fn plan_non_rush(
    jobs: &mut [TransferJob],
    rush_profile: &RushProfile,
    params: &OverheadParams,
) {
    for job in jobs.iter_mut() {
        let InteractionClass::NonRealTime { windows } = &job.pipeline.class else {
            continue;
        };
        let mut best: Option<(f64, f64)> = None; // (cost, time)
        for &(start, end) in windows {
            if end <= job.trigger_time_s {
                continue;
            }
            // The profile is an hourly step function, so candidate instants
            // are the feasible window start plus each hour boundary inside.
            let lo = start.max(job.trigger_time_s);
            let mut candidates = vec![lo];
            let mut hour = (lo / 3600.0).floor() * 3600.0 + 3600.0;
            while hour < end {
                if hour > lo {
                    candidates.push(hour);
                }
                hour += 3600.0;
            }
            for t in candidates {
                let cost = interaction_cost(
                    ClassKind::NonRealTime,
                    params,
                    Some(rush_profile.multiplier_at(t)),
                );
                let better = match best {
                    None => true,
                    Some((bc, bt)) => cost < bc || (cost == bc && t < bt),
                };
                if better {
                    best = Some((cost, t));
                }
            }
        }
        if let Some((_, t)) = best {
            job.dispatch_time_s = t;
        }
    }
}
