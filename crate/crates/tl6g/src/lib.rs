//! Deterministic discrete-event simulator of transfer-learning
//! orchestration in a multi-tier 6G-style network.
//!
//! The crate models learning agents hosted on network nodes, classifies
//! source-target pairs into the transfer-learning taxonomy, authorizes and
//! schedules knowledge transfers under SLA and interaction-class
//! constraints, and reports per-pair overhead and positive-transfer
//! metrics, including the quantized-transfer trade-off.

pub mod agents;
pub mod cli;
pub mod costmodel;
pub mod governance;
pub mod quantization;
pub mod repository;
pub mod scenario;
pub mod scheduler;
pub mod simengine;
pub mod topology;

#[doc(hidden)]
pub mod testutil;
