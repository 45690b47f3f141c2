//! Cross-training estimate of the benefit graph.
//!
//! `w[j][i]` is how much lower participant `i`'s validation error gets when
//! it swaps its own locally trained model for `j`'s, floored at zero.

use super::data::SyntheticTask;
use super::model::Regressor;
use super::train::{train_local, validation_mse, TrainConfig};
use crate::error::Result;

pub fn estimate_benefit<R: Regressor>(
    task: &SyntheticTask,
    regressor: &R,
    config: &TrainConfig,
    seed: u64,
) -> Result<Vec<Vec<f64>>> {
    let local = train_local(task, regressor, config, seed)?;
    let n = task.n();
    let mut w = vec![vec![0.0; n]; n];
    for i in 0..n {
        let own = local.mse[i];
        for j in (0..n).filter(|&j| j != i) {
            let cross = validation_mse(regressor, task, i, &local.models[j]);
            w[j][i] = (own - cross).max(0.0);
        }
    }
    Ok(w)
}
