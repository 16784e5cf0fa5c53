//! Seed-corpus selection for translating a known, multilingual text into a new
//! low-resource language.
//!
//! The crate ranks the lines of a line-aligned parallel corpus so that human
//! translators can render the most useful sentences first, under a fixed word
//! budget. It also ships the scaffolding around that ranking: chrF/BLEU,
//! multi-source combination, shared test-set construction, and a planner for
//! staged multilingual training schedules.
//!
//! Module map:
//! * [`corpus`]: loading, tokenization, n-gram frequency tables, entity masking.
//! * [`scoring`]: per-sentence score functions and n-gram language models.
//! * [`selection`]: greedy budgeted selection with memoized score matrices, plus baselines.
//! * [`aggregation`]: language pools and multi-language score aggregation.
//! * [`evaluation`]: metrics, centeredness combination, intersection test sets.
//! * [`schedules`]: the 24 training schedules and their manifests.

pub mod aggregation;
pub mod corpus;
pub mod error;
pub mod evaluation;
pub mod schedules;
pub mod scoring;
pub mod selection;

pub use error::{Error, Result};
