//! Federated training pipelines over a synthetic task.
//!
//! Every pipeline is a sequence of rounds over per-participant models. A
//! round mixes models according to a fixed [`MixingPlan`] and runs local SGD
//! epochs; the order of the two phases depends on the method. Each
//! participant shuffles with its own seeded stream, so a participant's model
//! depends only on its own data and on the models it mixes in.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::data::{ParticipantData, SyntheticTask};
use super::model::{ModelParams, Regressor};
use crate::error::{Error, Result};
use crate::graph::{Instance, UsageGraph};
use crate::partition::{Partition, PartitionKind};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrainConfig {
    pub rounds: usize,
    pub local_epochs: usize,
    pub learning_rate: f64,
    /// Mini-batch size; `None` means one full-batch step per epoch.
    pub batch_size: Option<usize>,
    pub repetitions: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            rounds: 100,
            local_epochs: 5,
            learning_rate: 0.002,
            batch_size: Some(64),
            repetitions: 10,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Local,
    FedAvg,
    Ce,
    FedCompetitors,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Local, Method::FedAvg, Method::Ce, Method::FedCompetitors];

    pub fn name(self) -> &'static str {
        match self {
            Method::Local => "local",
            Method::FedAvg => "fedavg",
            Method::Ce => "ce",
            Method::FedCompetitors => "fedcompetitors",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s.to_ascii_lowercase())
            .ok_or_else(|| format!("unknown method '{s}'"))
    }
}

/// What a method trains over.
#[derive(Clone, Copy, Debug)]
pub enum Grouping<'a> {
    Partition(&'a Partition),
    Usage {
        usage: &'a UsageGraph,
        instance: &'a Instance,
    },
}

/// Per-participant mixing weights, `(source, weight)` with the participant
/// itself listed first.
#[derive(Clone, Debug, PartialEq)]
pub struct MixingPlan {
    pub weights: Vec<Vec<(usize, f64)>>,
}

impl MixingPlan {
    pub fn isolated(n: usize) -> Self {
        Self {
            weights: (0..n).map(|i| vec![(i, 1.0)]).collect(),
        }
    }

    /// Every member of a group gets the sample-count-weighted group average.
    pub fn group_average(partition: &Partition, train_sizes: &[usize]) -> Self {
        let mut weights = vec![Vec::new(); train_sizes.len()];
        for group in &partition.groups {
            let total: usize = group.iter().map(|&k| train_sizes[k]).sum();
            let row: Vec<(usize, f64)> = group
                .iter()
                .map(|&k| (k, train_sizes[k] as f64 / total as f64))
                .collect();
            for &i in group {
                weights[i] = row.clone();
            }
        }
        Self { weights }
    }

    /// Participant `i` averages its own model, weighted by its strongest
    /// collaborator's benefit, with each collaborator `j` weighted by the
    /// benefit `w[j][i]`. Without collaborators it keeps its own model.
    pub fn personalized(usage: &UsageGraph, instance: &Instance) -> Self {
        let weights = (0..usage.n())
            .map(|i| {
                let collab: Vec<(usize, f64)> = usage
                    .collaborators(i)
                    .into_iter()
                    .map(|j| (j, instance.benefit(j, i)))
                    .collect();
                if collab.is_empty() {
                    return vec![(i, 1.0)];
                }
                let alpha = collab.iter().map(|c| c.1).fold(0.0, f64::max);
                let total = alpha + collab.iter().map(|c| c.1).sum::<f64>();
                std::iter::once((i, alpha / total))
                    .chain(collab.into_iter().map(|(j, w)| (j, w / total)))
                    .collect()
            })
            .collect();
        Self { weights }
    }

    /// Largest deviation of a row sum from one.
    pub fn normalization_error(&self) -> f64 {
        self.weights
            .iter()
            .map(|row| (row.iter().map(|w| w.1).sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    fn mix(&self, models: &[ModelParams]) -> Vec<ModelParams> {
        self.weights
            .iter()
            .map(|row| ModelParams::weighted_sum(row.iter().map(|&(k, w)| (w, &models[k]))))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Phase {
    /// Local epochs, then mixing (FedAvg-style server averaging).
    TrainThenMix,
    /// Mixing, then local epochs (personalized aggregation).
    MixThenTrain,
}

/// Final models and validation MSE of one training run.
#[derive(Clone, Debug, PartialEq)]
pub struct MethodResult {
    pub method: Method,
    pub models: Vec<ModelParams>,
    pub mse: Vec<f64>,
}

/// splitmix64 finalizer, used to derive independent seeds.
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn participant_rng(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    rng
}

struct LocalTrainer<'a, R: Regressor> {
    regressor: &'a R,
    config: &'a TrainConfig,
}

impl<R: Regressor> LocalTrainer<'_, R> {
    fn epochs(
        &self,
        params: &mut ModelParams,
        data: &ParticipantData,
        order: &mut [usize],
        rng: &mut ChaCha8Rng,
    ) -> f64 {
        let m = data.train_len();
        let batch = self.config.batch_size.unwrap_or(m).clamp(1, m.max(1));
        let mut grad = vec![0.0; params.0.len()];
        let mut xs = Vec::with_capacity(batch);
        let mut ys = Vec::with_capacity(batch);
        let mut last = 0.0;
        for _ in 0..self.config.local_epochs {
            if self.config.batch_size.is_some() {
                order.shuffle(rng);
            }
            for chunk in order.chunks(batch) {
                xs.clear();
                ys.clear();
                xs.extend(chunk.iter().map(|&k| data.x_train[k]));
                ys.extend(chunk.iter().map(|&k| data.y_train[k]));
                last = self.regressor.loss_grad(params, &xs, &ys, &mut grad);
                for (p, g) in params.0.iter_mut().zip(&grad) {
                    *p -= self.config.learning_rate * g;
                }
            }
        }
        last
    }
}

fn run_rounds<R: Regressor>(
    task: &SyntheticTask,
    regressor: &R,
    config: &TrainConfig,
    plan: &MixingPlan,
    phase: Phase,
    seed: u64,
) -> Result<Vec<ModelParams>> {
    let n = task.n();
    let trainer = LocalTrainer { regressor, config };
    let mut rngs: Vec<ChaCha8Rng> = (0..n).map(|i| participant_rng(seed, i)).collect();
    let mut orders: Vec<Vec<usize>> = task
        .participants
        .iter()
        .map(|p| (0..p.train_len()).collect())
        .collect();
    let mut models = vec![regressor.init(); n];

    for round in 0..config.rounds {
        if phase == Phase::MixThenTrain {
            models = plan.mix(&models);
        }
        for i in 0..n {
            let loss = trainer.epochs(&mut models[i], &task.participants[i], &mut orders[i], &mut rngs[i]);
            if !loss.is_finite() || !models[i].is_finite() {
                return Err(Error::TrainingDiverged {
                    participant: i,
                    round,
                    detail: format!("loss {loss}, parameters {:?}", models[i].0),
                });
            }
        }
        if phase == Phase::TrainThenMix {
            models = plan.mix(&models);
        }
    }
    Ok(models)
}

/// Validation MSE of `params` on participant `i`'s held-out data.
pub fn validation_mse<R: Regressor>(regressor: &R, task: &SyntheticTask, i: usize, params: &ModelParams) -> f64 {
    let (xs, ys) = task.participants[i].validation();
    regressor.mse(params, xs, ys)
}

/// Independent local training of every participant, as used by
/// [`Method::Local`].
pub fn train_local<R: Regressor>(
    task: &SyntheticTask,
    regressor: &R,
    config: &TrainConfig,
    seed: u64,
) -> Result<MethodResult> {
    let n = task.n();
    let models = run_rounds(task, regressor, config, &MixingPlan::isolated(n), Phase::TrainThenMix, seed)?;
    let mse = (0..n).map(|i| validation_mse(regressor, task, i, &models[i])).collect();
    Ok(MethodResult {
        method: Method::Local,
        models,
        mse,
    })
}

/// Trains `method` over `grouping` and scores every participant.
pub fn train<R: Regressor>(
    task: &SyntheticTask,
    regressor: &R,
    grouping: Grouping<'_>,
    method: Method,
    config: &TrainConfig,
    seed: u64,
) -> Result<MethodResult> {
    let n = task.n();
    let sizes: Vec<usize> = task.participants.iter().map(ParticipantData::train_len).collect();
    let mismatch = |why: &str| Err(Error::GroupingMismatch(format!("{method}: {why}")));
    let (plan, phase) = match (method, grouping) {
        (Method::Local, Grouping::Partition(p)) if p.is_partition_of(n) => {
            (MixingPlan::isolated(n), Phase::TrainThenMix)
        }
        (Method::FedAvg, Grouping::Partition(p))
            if p.kind == PartitionKind::CliqueCover && p.is_partition_of(n) =>
        {
            (MixingPlan::group_average(p, &sizes), Phase::TrainThenMix)
        }
        (Method::Ce, Grouping::Partition(p))
            if p.kind == PartitionKind::SccCoalitions && p.is_partition_of(n) =>
        {
            (MixingPlan::group_average(p, &sizes), Phase::TrainThenMix)
        }
        (Method::FedCompetitors, Grouping::Usage { usage, instance })
            if usage.n() == n && instance.n() == n =>
        {
            (MixingPlan::personalized(usage, instance), Phase::MixThenTrain)
        }
        (Method::FedCompetitors, _) => return mismatch("expects a usage graph over all participants"),
        (Method::Local, _) => return mismatch("expects a partition of all participants"),
        (Method::FedAvg, _) => return mismatch("expects a clique cover of all participants"),
        (Method::Ce, _) => return mismatch("expects SCC coalitions of all participants"),
    };
    let err = plan.normalization_error();
    if err > 1e-9 {
        return Err(Error::GroupingMismatch(format!(
            "{method}: mixing weights off by {err}"
        )));
    }
    let models = run_rounds(task, regressor, config, &plan, phase, seed)?;
    let mse = (0..n).map(|i| validation_mse(regressor, task, i, &models[i])).collect();
    Ok(MethodResult { method, models, mse })
}
