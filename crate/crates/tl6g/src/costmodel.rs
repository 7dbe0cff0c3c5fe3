//! Overhead cost of a knowledge transfer as a weighted sum of bandwidth,
//! delay, interaction-class, and security terms, plus the eta/tau metrics
//! and the positive-transfer predicate.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Interaction class without its schedule; the scheduler attaches windows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassKind {
    RealTime,
    NonRealTime,
    OnDemand,
}

/// Monotone-increasing cost term over required bandwidth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum BandwidthCostFn {
    Linear { w_ref_bps: f64 },
    Affine { slope_per_bps: f64, intercept: f64 },
    Log { w_ref_bps: f64 },
}

impl BandwidthCostFn {
    pub fn eval(&self, w_bps: f64) -> f64 {
        match self {
            BandwidthCostFn::Linear { w_ref_bps } => w_bps / w_ref_bps,
            BandwidthCostFn::Affine {
                slope_per_bps,
                intercept,
            } => slope_per_bps * w_bps + intercept,
            BandwidthCostFn::Log { w_ref_bps } => (1.0 + w_bps / w_ref_bps).ln(),
        }
    }
}

impl Default for BandwidthCostFn {
    fn default() -> Self {
        BandwidthCostFn::Linear { w_ref_bps: 1e6 }
    }
}

/// Monotone-decreasing cost term over the required end-to-end delay bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum DelayCostFn {
    Reciprocal { d_ref_s: f64 },
    NegExp { d_ref_s: f64 },
}

impl DelayCostFn {
    pub fn eval(&self, d_s: f64) -> f64 {
        match self {
            DelayCostFn::Reciprocal { d_ref_s } => d_ref_s / d_s,
            DelayCostFn::NegExp { d_ref_s } => (-d_s / d_ref_s).exp(),
        }
    }
}

impl Default for DelayCostFn {
    fn default() -> Self {
        DelayCostFn::Reciprocal { d_ref_s: 1.0 }
    }
}

/// Linear security cost: coefficient times the requested level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SecurityCostFn {
    pub coefficient: f64,
}

impl SecurityCostFn {
    pub fn eval(&self, level: u32) -> f64 {
        self.coefficient * level as f64
    }
}

impl Default for SecurityCostFn {
    fn default() -> Self {
        SecurityCostFn { coefficient: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverheadParams {
    pub alpha: [f64; 4],
    pub m_costs: [f64; 3],
    #[serde(default)]
    pub f1: BandwidthCostFn,
    #[serde(default)]
    pub f2: DelayCostFn,
    #[serde(default)]
    pub h: SecurityCostFn,
}

impl Default for OverheadParams {
    fn default() -> Self {
        OverheadParams {
            alpha: [1.0, 1.0, 1.0, 1.0],
            m_costs: [3.0, 2.0, 1.0],
            f1: BandwidthCostFn::default(),
            f2: DelayCostFn::default(),
            h: SecurityCostFn::default(),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum CostError {
    #[error("class costs must satisfy M1 >= M2 >= M3 > 0, got {0:?}")]
    ClassCostOrdering([f64; 3]),
    #[error("regularization weights must be >= 0")]
    NegativeAlpha,
    #[error("{0} is not monotone over the sampled range")]
    NotMonotone(&'static str),
    #[error("bandwidth must be > 0")]
    NonPositiveBandwidth,
    #[error("delay must be > 0")]
    NonPositiveDelay,
    #[error("baseline performance is zero")]
    ZeroBaselinePerformance,
    #[error("training time must be > 0")]
    ZeroTrainingTime,
}

impl OverheadParams {
    /// Rejects weight/class-cost violations and verifies the monotonicity
    /// contracts of f1, f2, and h by sampling.
    pub fn validate(&self) -> Result<(), CostError> {
        if self.alpha.iter().any(|a| *a < 0.0 || !a.is_finite()) {
            return Err(CostError::NegativeAlpha);
        }
        let [m1, m2, m3] = self.m_costs;
        if !(m1 >= m2 && m2 >= m3 && m3 > 0.0) {
            return Err(CostError::ClassCostOrdering(self.m_costs));
        }

        let w_samples = [1.0, 1e3, 1e5, 1e6, 1e7, 1e9];
        for pair in w_samples.windows(2) {
            if self.f1.eval(pair[1]) < self.f1.eval(pair[0]) {
                return Err(CostError::NotMonotone("f1"));
            }
        }
        let d_samples = [1e-4, 1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0];
        for pair in d_samples.windows(2) {
            if self.f2.eval(pair[1]) > self.f2.eval(pair[0]) {
                return Err(CostError::NotMonotone("f2"));
            }
        }
        for level in 0..8u32 {
            if self.h.eval(level + 1) < self.h.eval(level) {
                return Err(CostError::NotMonotone("h"));
            }
        }
        Ok(())
    }
}

/// Per-class interaction cost, optionally inflated by a rush-hour
/// multiplier taken from the load profile at dispatch time.
pub fn interaction_cost(
    class: ClassKind,
    params: &OverheadParams,
    rush_multiplier: Option<f64>,
) -> f64 {
    let base = match class {
        ClassKind::RealTime => params.m_costs[0],
        ClassKind::NonRealTime => params.m_costs[1],
        ClassKind::OnDemand => params.m_costs[2],
    };
    base * (1.0 + rush_multiplier.unwrap_or(0.0))
}

/// Weighted overhead of one transfer:
/// `alpha1*f1(W) + alpha2*f2(D) + alpha3*g(class) + alpha4*h(security)`.
pub fn compute_overhead(
    w_bps: f64,
    d_s: f64,
    class: ClassKind,
    security_level: u32,
    params: &OverheadParams,
    rush_multiplier: Option<f64>,
) -> Result<f64, CostError> {
    if w_bps <= 0.0 {
        return Err(CostError::NonPositiveBandwidth);
    }
    if d_s <= 0.0 {
        return Err(CostError::NonPositiveDelay);
    }
    Ok(params.alpha[0] * params.f1.eval(w_bps)
        + params.alpha[1] * params.f2.eval(d_s)
        + params.alpha[2] * interaction_cost(class, params, rush_multiplier)
        + params.alpha[3] * params.h.eval(security_level))
}

/// Performance ratio of the target with and without transfer.
pub fn eta(p_tl: f64, p_traditional: f64) -> Result<f64, CostError> {
    if p_traditional <= 0.0 {
        return Err(CostError::ZeroBaselinePerformance);
    }
    Ok(p_tl / p_traditional)
}

/// Training-time speedup of the target.
pub fn tau(t_traditional_s: f64, t_tl_s: f64) -> Result<f64, CostError> {
    if t_traditional_s <= 0.0 || t_tl_s <= 0.0 {
        return Err(CostError::ZeroTrainingTime);
    }
    Ok(t_traditional_s / t_tl_s)
}

/// Positive transfer requires both ratios to strictly exceed 1.
pub fn is_positive_tl(eta: f64, tau: f64) -> bool {
    eta > 1.0 && tau > 1.0
}
