//! Regression models shared by every participant.

use serde::{Deserialize, Serialize};

/// Flat parameter vector of a [`Regressor`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams(pub Vec<f64>);

impl ModelParams {
    pub fn zeros(dim: usize) -> Self {
        Self(vec![0.0; dim])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }

    /// `sum_k weight_k * params_k`, accumulated in the given order.
    pub fn weighted_sum<'a>(parts: impl IntoIterator<Item = (f64, &'a ModelParams)>) -> Self {
        let mut iter = parts.into_iter();
        let (w0, p0) = iter.next().expect("at least one model");
        let mut acc: Vec<f64> = p0.0.iter().map(|v| w0 * v).collect();
        for (w, p) in iter {
            for (a, v) in acc.iter_mut().zip(&p.0) {
                *a += w * v;
            }
        }
        Self(acc)
    }
}

/// A scalar-input regressor trained on mean squared error.
pub trait Regressor: Sync {
    fn num_params(&self) -> usize;

    fn init(&self) -> ModelParams {
        ModelParams::zeros(self.num_params())
    }

    fn predict(&self, params: &ModelParams, x: f64) -> f64;

    /// Mean squared error over the batch; its gradient is written to `grad`.
    fn loss_grad(&self, params: &ModelParams, xs: &[f64], ys: &[f64], grad: &mut [f64]) -> f64;

    fn mse(&self, params: &ModelParams, xs: &[f64], ys: &[f64]) -> f64 {
        if xs.is_empty() {
            return 0.0;
        }
        xs.iter()
            .zip(ys)
            .map(|(&x, &y)| (self.predict(params, x) - y).powi(2))
            .sum::<f64>()
            / xs.len() as f64
    }
}

/// Linear head over the features `1, x, x^2, ..., x^degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyRegressor {
    pub degree: usize,
}

impl PolyRegressor {
    pub fn new(degree: usize) -> Self {
        Self { degree }
    }

    fn features(&self, x: f64, out: &mut [f64]) {
        let mut p = 1.0;
        for f in out.iter_mut() {
            *f = p;
            p *= x;
        }
    }
}

impl Regressor for PolyRegressor {
    fn num_params(&self) -> usize {
        self.degree + 1
    }

    fn predict(&self, params: &ModelParams, x: f64) -> f64 {
        // Horner
        params.0.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    fn loss_grad(&self, params: &ModelParams, xs: &[f64], ys: &[f64], grad: &mut [f64]) -> f64 {
        grad.fill(0.0);
        if xs.is_empty() {
            return 0.0;
        }
        let mut phi = vec![0.0; self.num_params()];
        let mut loss = 0.0;
        for (&x, &y) in xs.iter().zip(ys) {
            self.features(x, &mut phi);
            let r = phi.iter().zip(&params.0).map(|(f, c)| f * c).sum::<f64>() - y;
            loss += r * r;
            for (g, f) in grad.iter_mut().zip(&phi) {
                *g += r * f;
            }
        }
        let m = xs.len() as f64;
        for g in grad.iter_mut() {
            *g *= 2.0 / m;
        }
        loss / m
    }
}
