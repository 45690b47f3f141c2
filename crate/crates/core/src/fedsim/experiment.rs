//! Repeated end-to-end runs and their summary table.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::benefit::estimate_benefit;
use super::data::{generate, Preset, SyntheticConfig};
use super::model::PolyRegressor;
use super::train::{derive_seed, train, Grouping, Method, TrainConfig};
use crate::error::Result;
use crate::graph::Instance;
use crate::partition::{min_clique_cover, scc_coalitions, CoverMode};
use crate::selector::select_all;

pub const AGGREGATION_RULE: &str =
    "self weight = max benefit over collaborators, collaborator j weight = w[j][i], normalized to sum 1";

/// Everything needed to run an experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub label: String,
    pub synthetic: SyntheticConfig,
    pub competing_edges: Vec<(usize, usize)>,
    /// Fixed benefit matrix; estimated per repetition when absent.
    pub benefit: Option<Vec<Vec<f64>>>,
    pub training: TrainConfig,
    pub methods: Vec<Method>,
}

impl ExperimentSpec {
    pub fn preset(preset: Preset, seed: u64) -> Self {
        Self {
            label: preset.name().to_string(),
            synthetic: preset.config(seed),
            competing_edges: preset.competing_edges(),
            benefit: None,
            training: TrainConfig::default(),
            methods: Method::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MethodSummary {
    pub method: Method,
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MethodScores {
    pub method: Method,
    pub mse: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepetitionRecord {
    pub seed: u64,
    pub train_seed: u64,
    pub usage_edges: Vec<(usize, usize)>,
    pub clique_cover: Vec<Vec<usize>>,
    pub cover_mode: CoverMode,
    pub coalitions: Vec<Vec<usize>>,
    pub scores: Vec<MethodScores>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub label: String,
    pub n: usize,
    pub aggregation_rule: String,
    pub summary: Vec<MethodSummary>,
    pub synthetic: SyntheticConfig,
    pub training: TrainConfig,
    pub competing_edges: Vec<(usize, usize)>,
    pub repetitions: Vec<RepetitionRecord>,
}

impl ExperimentReport {
    pub fn summary_for(&self, method: Method) -> Option<&MethodSummary> {
        self.summary.iter().find(|s| s.method == method)
    }

    /// Participants as rows, methods as columns, `mean±std` cells.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("participant");
        for s in &self.summary {
            out.push(',');
            out.push_str(s.method.name());
        }
        out.push('\n');
        for i in 0..self.n {
            write!(out, "v{}", i + 1).unwrap();
            for s in &self.summary {
                write!(out, ",{:.4}±{:.4}", s.mean[i], s.std[i]).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Mean and sample standard deviation (zero for a single value).
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, var.sqrt())
}

/// Instance built from a preset's competing graph and an estimated benefit
/// graph for the given seed.
pub fn preset_instance(preset: Preset, seed: u64, training: &TrainConfig) -> Result<Instance> {
    let cfg = preset.config(seed);
    let task = generate(&cfg)?;
    let regressor = PolyRegressor::new(cfg.degree);
    let w = estimate_benefit(&task, &regressor, training, derive_seed(seed, 1))?;
    let mut competing = vec![vec![false; cfg.n]; cfg.n];
    for (a, b) in preset.competing_edges() {
        competing[a][b] = true;
        competing[b][a] = true;
    }
    Instance::new(competing, w)
}

fn run_repetition(spec: &ExperimentSpec, rep: usize) -> Result<RepetitionRecord> {
    let seed = spec.synthetic.seed.wrapping_add(rep as u64);
    let train_seed = derive_seed(seed, 1);
    let cfg = SyntheticConfig {
        seed,
        ..spec.synthetic.clone()
    };
    let task = generate(&cfg)?;
    let regressor = PolyRegressor::new(cfg.degree);
    let benefit = match &spec.benefit {
        Some(w) => w.clone(),
        None => estimate_benefit(&task, &regressor, &spec.training, train_seed)?,
    };
    let mut competing = vec![vec![false; cfg.n]; cfg.n];
    for &(a, b) in &spec.competing_edges {
        competing[a][b] = true;
        competing[b][a] = true;
    }
    let instance = Instance::new(competing, benefit)?;
    let (usage, _) = select_all(&instance);
    let cover = min_clique_cover(&instance);
    let coalitions = scc_coalitions(&instance, &cover);

    let scores = spec
        .methods
        .iter()
        .map(|&method| {
            let grouping = match method {
                Method::Local | Method::FedAvg => Grouping::Partition(&cover),
                Method::Ce => Grouping::Partition(&coalitions),
                Method::FedCompetitors => Grouping::Usage {
                    usage: &usage,
                    instance: &instance,
                },
            };
            let result = train(&task, &regressor, grouping, method, &spec.training, train_seed)?;
            Ok(MethodScores {
                method,
                mse: result.mse,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(RepetitionRecord {
        seed,
        train_seed,
        usage_edges: usage.edges(),
        clique_cover: cover.groups,
        cover_mode: cover.mode,
        coalitions: coalitions.groups,
        scores,
    })
}

/// Runs every repetition (in parallel; results are ordered by repetition)
/// and summarizes per method and participant.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.synthetic.validate()?;
    let reps = spec.training.repetitions.max(1);
    let repetitions = (0..reps)
        .into_par_iter()
        .map(|rep| run_repetition(spec, rep))
        .collect::<Result<Vec<_>>>()?;

    let n = spec.synthetic.n;
    let summary = spec
        .methods
        .iter()
        .enumerate()
        .map(|(m, &method)| {
            let (mean, std) = (0..n)
                .map(|i| {
                    let vals: Vec<f64> = repetitions.iter().map(|r| r.scores[m].mse[i]).collect();
                    mean_std(&vals)
                })
                .unzip();
            MethodSummary { method, mean, std }
        })
        .collect();

    Ok(ExperimentReport {
        label: spec.label.clone(),
        n,
        aggregation_rule: AGGREGATION_RULE.to_string(),
        summary,
        synthetic: spec.synthetic.clone(),
        training: spec.training.clone(),
        competing_edges: spec.competing_edges.clone(),
        repetitions,
    })
}
