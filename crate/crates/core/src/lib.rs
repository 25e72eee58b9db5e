//! Scoring, fusion, cascading and evaluation for spoofing-aware speaker
//! verification (SASV).
//!
//! The crate turns embedding tables and per-system score files into fused
//! cascade decisions and challenge-style metrics:
//!
//! * [`ingest`] — trial / score / embedding / enrollment / manifest file
//!   formats, validation and joining;
//! * [`backend`] — cosine scoring with enrollment-score averaging;
//! * [`fusion`] — Z-score normalization and weighted score fusion;
//! * [`cascade`] — hard CM gating of fused ASV scores;
//! * [`metrics`] — EER, SASV-EER, a-DCF, Macro a-DCF and DET curves;
//! * [`syngen`] — seeded synthetic benchmarks with known error rates.

pub mod backend;
pub mod cascade;
pub mod error;
pub mod fsutil;
pub mod fusion;
pub mod ingest;
pub mod metrics;
mod normal;
pub mod syngen;

pub use error::{Error, Result};
pub use ingest::{LabeledScore, ScoreSet, Trial, TrialKey, TrialLabel};
