//! Quantized parameter transfer: payload shrinkage per scheme, accuracy
//! deltas, and the retune-time speedup.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::costmodel::{self, CostError};

/// Weight encoding used for parameter-based transfer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QuantScheme {
    Float32,
    Default8,
    Fbgemm8,
    Qat8,
}

impl QuantScheme {
    pub fn bits_per_weight(self) -> u64 {
        match self {
            QuantScheme::Float32 => 32,
            _ => 8,
        }
    }

    pub const ALL: [QuantScheme; 4] = [
        QuantScheme::Float32,
        QuantScheme::Default8,
        QuantScheme::Fbgemm8,
        QuantScheme::Qat8,
    ];
}

#[derive(Debug, Error, PartialEq)]
pub enum QuantError {
    #[error("accuracy deltas must keep Float32 >= Qat8 >= Fbgemm8 >= Default8 with Qat8 exactly 1 point above Fbgemm8")]
    AccuracyOrdering,
    #[error("unknown quantization scheme")]
    UnknownScheme,
    #[error("retune times must be > 0 with retrain <= full training")]
    InvalidRetuneModel,
}

/// Accuracy in percentage points per scheme, expressed as the Float32
/// reference plus per-scheme offsets. The Qat8 offset is derived: it sits
/// exactly one point above Fbgemm8.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccuracyModel {
    pub base_accuracy: f64,
    pub fbgemm8_delta: f64,
    pub default8_delta: f64,
}

impl AccuracyModel {
    pub fn new(base_accuracy: f64, fbgemm8_delta: f64, default8_delta: f64) -> Result<Self, QuantError> {
        let model = AccuracyModel {
            base_accuracy,
            fbgemm8_delta,
            default8_delta,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<(), QuantError> {
        // Float32 >= Qat8 requires the Fbgemm8 offset to be at least one
        // point below zero; Default8 must not beat Fbgemm8.
        let qat8 = self.delta(QuantScheme::Qat8);
        if !(qat8 <= 0.0 && self.default8_delta <= self.fbgemm8_delta) {
            return Err(QuantError::AccuracyOrdering);
        }
        Ok(())
    }

    pub fn delta(&self, scheme: QuantScheme) -> f64 {
        match scheme {
            QuantScheme::Float32 => 0.0,
            QuantScheme::Default8 => self.default8_delta,
            QuantScheme::Fbgemm8 => self.fbgemm8_delta,
            QuantScheme::Qat8 => self.fbgemm8_delta + 1.0,
        }
    }
}

/// Retraining only the final layer at the target versus training from scratch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RetuneModel {
    pub retrain_time_s: f64,
    pub full_train_time_s: f64,
    #[serde(default = "default_true")]
    pub restores_accuracy: bool,
}

fn default_true() -> bool {
    true
}

impl RetuneModel {
    pub fn validate(&self) -> Result<(), QuantError> {
        if self.retrain_time_s <= 0.0
            || self.full_train_time_s <= 0.0
            || self.retrain_time_s > self.full_train_time_s
        {
            return Err(QuantError::InvalidRetuneModel);
        }
        Ok(())
    }
}

/// Size of a parameter payload under a scheme.
pub fn payload_bits(parameter_count: u64, scheme: QuantScheme) -> u64 {
    parameter_count * scheme.bits_per_weight()
}

/// Accuracy reached by the target: the Float32 reference after a retune,
/// otherwise the scheme's offset applied to it, clamped to [0, 100].
pub fn predicted_accuracy(model: &AccuracyModel, scheme: QuantScheme, retuned: bool) -> f64 {
    let raw = if retuned {
        model.base_accuracy
    } else {
        model.base_accuracy + model.delta(scheme)
    };
    raw.clamp(0.0, 100.0)
}

/// Training-time speedup from retuning instead of full training.
pub fn retune_speedup(model: &RetuneModel) -> Result<f64, CostError> {
    costmodel::tau(model.full_train_time_s, model.retrain_time_s)
}
