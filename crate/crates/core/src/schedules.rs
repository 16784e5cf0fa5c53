//! The 24 training schedules and their manifests.
//!
//! A schedule is an ordered subset of five stages. Stage order is fixed; a
//! schedule must start from a pretrained model (`[M2M100]`) or from
//! multilingual pretraining on the source languages (`[N]^2`).
//!
//! Labels follow binary counting over the optional stages: `A`..`H` always
//! contain `[N]^2` and walk the subsets of the three later stages from all to
//! none; `I`..`X` always contain `[M2M100]` and walk the subsets of the other
//! four stages the same way.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::builtin_targets;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Stage {
    /// Start from the pretrained M2M100 checkpoint.
    P0,
    /// All source languages to all source languages.
    P1,
    /// Sources plus target, all directions.
    P2,
    /// Sources plus target into the target.
    P3,
    /// Target autoencoding.
    P4,
}

impl Stage {
    pub const ALL: [Stage; 5] = [Stage::P0, Stage::P1, Stage::P2, Stage::P3, Stage::P4];

    pub fn notation(&self) -> &'static str {
        match self {
            Stage::P0 => "[M2M100]",
            Stage::P1 => "[N]^2",
            Stage::P2 => "[N+1]^2",
            Stage::P3 => "[N+1]",
            Stage::P4 => "[1]^2",
        }
    }

    pub fn direction(&self) -> &'static str {
        match self {
            Stage::P0 => "pretrained",
            Stage::P1 => "N x N",
            Stage::P2 => "(N+1) x (N+1)",
            Stage::P3 => "(N+1) x 1",
            Stage::P4 => "autoencoder",
        }
    }

    pub fn data_scope(&self) -> &'static str {
        match self {
            Stage::P0 => "none",
            Stage::P1 => "sources",
            Stage::P2 | Stage::P3 => "sources+target",
            Stage::P4 => "target",
        }
    }

    /// Whether the stage trains on the target's seed corpus.
    pub fn uses_target(&self) -> bool {
        matches!(self, Stage::P2 | Stage::P3 | Stage::P4)
    }

    /// Early-stopping patience and validation interval in steps, plus the
    /// minimum number of steps before patience applies.
    pub fn patience(&self) -> Option<(u32, u32, Option<u64>)> {
        match self {
            Stage::P0 => None,
            Stage::P1 => Some((5, 1000, Some(190_000))),
            Stage::P2 => Some((5, 200, None)),
            Stage::P3 | Stage::P4 => Some((25, 50, None)),
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.notation())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Empty,
    NoPretraining,
    /// `stages[index]` does not come strictly after the stage before it.
    StageOrder {
        index: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => f.write_str("no stages"),
            Violation::NoPretraining => f.write_str("neither [M2M100] nor [N]^2 is present"),
            Violation::StageOrder { index } => write!(f, "stage {index} is out of order"),
        }
    }
}

/// Checks stage order first, then the pretraining requirement.
pub fn validate_schedule(stages: &[Stage]) -> std::result::Result<(), Violation> {
    if stages.is_empty() {
        return Err(Violation::Empty);
    }
    if let Some(i) = (1..stages.len()).find(|&i| stages[i] <= stages[i - 1]) {
        return Err(Violation::StageOrder { index: i });
    }
    if !stages.contains(&Stage::P0) && !stages.contains(&Stage::P1) {
        return Err(Violation::NoPretraining);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub label: char,
    pub stages: Vec<Stage>,
    pub uses_pretrained: bool,
}

/// Labels `A`..`X` in table order.
pub fn enumerate_schedules() -> Vec<Schedule> {
    let subset = |base: Stage, optional: &[Stage], mask: usize| {
        let mut stages = vec![base];
        for (bit, &stage) in optional.iter().enumerate() {
            if mask & (1 << (optional.len() - 1 - bit)) != 0 {
                stages.push(stage);
            }
        }
        stages
    };
    let without = (0..8).map(|i| subset(Stage::P1, &[Stage::P2, Stage::P3, Stage::P4], 7 - i));
    let with = (0..16).map(|i| subset(Stage::P0, &[Stage::P1, Stage::P2, Stage::P3, Stage::P4], 15 - i));
    without
        .chain(with)
        .zip('A'..='X')
        .map(|(stages, label)| Schedule {
            label,
            uses_pretrained: stages[0] == Stage::P0,
            stages,
        })
        .collect()
}

pub fn schedule(label: &str) -> Result<Schedule> {
    let mut chars = label.chars();
    let c = match (chars.next(), chars.next()) {
        (Some(c), None) => c.to_ascii_uppercase(),
        _ => return Err(Error::UnknownSchedule(label.to_string())),
    };
    enumerate_schedules()
        .into_iter()
        .find(|s| s.label == c)
        .ok_or_else(|| Error::UnknownSchedule(label.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub name: String,
    pub parameters: String,
    pub encoder_layers: u32,
    pub decoder_layers: u32,
    pub hidden_size: u32,
    pub attention_heads: u32,
    pub word_vec_size: u32,
    pub ffn_hidden_units: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub batch_size: Option<u32>,
    pub label_smoothing: f64,
    pub learning_rate: f64,
    pub finetune_learning_rate: f64,
    pub dropout: f64,
    pub attention_dropout: f64,
    pub optimizer: String,
    pub decay_method: String,
}

impl ModelConfig {
    /// The transformer trained from scratch (schedules without M2M100).
    pub fn transformer() -> Self {
        ModelConfig {
            name: "transformer".into(),
            parameters: "~100M".into(),
            encoder_layers: 6,
            decoder_layers: 6,
            hidden_size: 512,
            attention_heads: 8,
            word_vec_size: 512,
            ffn_hidden_units: 2048,
            batch_size: Some(6000),
            label_smoothing: 0.1,
            learning_rate: 2.5,
            finetune_learning_rate: 1.0,
            dropout: 0.1,
            attention_dropout: 0.1,
            optimizer: "adam".into(),
            decay_method: "noam".into(),
        }
    }

    pub fn m2m100() -> Self {
        ModelConfig {
            name: "m2m100".into(),
            parameters: "~418M".into(),
            encoder_layers: 12,
            decoder_layers: 12,
            hidden_size: 1024,
            attention_heads: 16,
            word_vec_size: 1024,
            ffn_hidden_units: 4096,
            batch_size: None,
            label_smoothing: 0.2,
            learning_rate: 0.0002,
            finetune_learning_rate: 0.00005,
            dropout: 0.1,
            attention_dropout: 0.1,
            optimizer: "adam".into(),
            decay_method: "noam".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DataSplit {
    pub train: f64,
    pub valid: f64,
    pub test: f64,
}

impl DataSplit {
    pub const PRETRAINING: DataSplit = DataSplit {
        train: 80.0,
        valid: 10.0,
        test: 10.0,
    };
    pub const SEED: DataSplit = DataSplit {
        train: 3.0,
        valid: 0.2,
        test: 96.8,
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BpeConfig {
    pub target_size: u32,
    pub combined_size: u32,
}

impl Default for BpeConfig {
    fn default() -> Self {
        BpeConfig {
            target_size: 3000,
            combined_size: 9000,
        }
    }
}

/// Target-specific inputs of a manifest.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub target: String,
    pub target_name: String,
    pub sources: Vec<String>,
    /// Seed-corpus ranking consumed by the stages that use target data.
    pub ranking: Option<String>,
    pub bpe: BpeConfig,
}

impl ExperimentConfig {
    /// Config of a built-in target, looked up by code or (case-insensitive) name.
    pub fn for_target(key: &str) -> Result<Self> {
        let preset = builtin_targets()
            .iter()
            .find(|t| t.code == key || t.name.eq_ignore_ascii_case(key))
            .ok_or_else(|| Error::UnknownLanguage(key.to_string()))?;
        Ok(ExperimentConfig {
            target: preset.code.into(),
            target_name: preset.name.into(),
            sources: preset.source_codes(),
            ranking: None,
            bpe: BpeConfig::default(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageManifest {
    pub stage: Stage,
    pub notation: String,
    pub direction: String,
    pub data_scope: String,
    pub languages: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub learning_rate: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub patience: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub update_interval: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_steps: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<DataSplit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranking: Option<String>,
}

/// Inert description of one experiment for an external trainer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schedule: char,
    pub uses_pretrained: bool,
    pub target: String,
    pub target_name: String,
    pub sources: Vec<String>,
    pub model: ModelConfig,
    pub bpe: BpeConfig,
    pub stages: Vec<StageManifest>,
}

impl Manifest {
    /// The schedule this manifest describes, revalidated.
    pub fn schedule(&self) -> Result<Schedule> {
        let stages: Vec<Stage> = self.stages.iter().map(|s| s.stage).collect();
        validate_schedule(&stages).map_err(Error::InvalidSchedule)?;
        Ok(Schedule {
            label: self.schedule,
            uses_pretrained: stages[0] == Stage::P0,
            stages,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("manifest fields are TOML-representable")
    }
}

pub fn emit_manifest(schedule: &Schedule, config: &ExperimentConfig) -> Result<Manifest> {
    validate_schedule(&schedule.stages).map_err(Error::InvalidSchedule)?;
    let model = if schedule.uses_pretrained {
        ModelConfig::m2m100()
    } else {
        ModelConfig::transformer()
    };
    let mut sources = config.sources.clone();
    sources.sort();
    let mut with_target = sources.clone();
    with_target.push(config.target.clone());
    with_target.sort();

    let mut trained = 0;
    let stages = schedule
        .stages
        .iter()
        .map(|&stage| {
            let patience = stage.patience();
            let learning_rate = patience.map(|_| {
                trained += 1;
                if trained == 1 {
                    model.learning_rate
                } else {
                    model.finetune_learning_rate
                }
            });
            StageManifest {
                stage,
                notation: stage.notation().into(),
                direction: stage.direction().into(),
                data_scope: stage.data_scope().into(),
                languages: match stage {
                    Stage::P0 => Vec::new(),
                    Stage::P1 => sources.clone(),
                    Stage::P2 | Stage::P3 => with_target.clone(),
                    Stage::P4 => vec![config.target.clone()],
                },
                learning_rate,
                patience: patience.map(|p| p.0),
                update_interval: patience.map(|p| p.1),
                min_steps: patience.and_then(|p| p.2),
                split: match stage {
                    Stage::P0 => None,
                    Stage::P1 => Some(DataSplit::PRETRAINING),
                    _ => Some(DataSplit::SEED),
                },
                ranking: if stage.uses_target() {
                    config.ranking.clone()
                } else {
                    None
                },
            }
        })
        .collect();
    Ok(Manifest {
        schedule: schedule.label,
        uses_pretrained: schedule.uses_pretrained,
        target: config.target.clone(),
        target_name: config.target_name.clone(),
        sources,
        model,
        bpe: config.bpe,
        stages,
    })
}

pub fn parse_manifest(text: &str) -> Result<Manifest> {
    let manifest: Manifest = toml::from_str(text).map_err(|e| Error::ManifestFormat(e.to_string()))?;
    manifest.schedule()?;
    Ok(manifest)
}
