//! Synthetic polynomial regression tasks with feature and label skew.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fraction of each participant's samples used for training.
pub const TRAIN_FRACTION: f64 = 0.8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SyntheticConfig {
    pub n: usize,
    /// Standard deviation of the per-participant weight perturbation.
    pub rho: f64,
    #[serde(default = "default_degree")]
    pub degree: usize,
    #[serde(default = "default_noise")]
    pub noise_std: f64,
    pub samples: Vec<usize>,
    #[serde(default)]
    pub flipped: Vec<bool>,
    #[serde(default)]
    pub seed: u64,
}

fn default_degree() -> usize {
    3
}

fn default_noise() -> f64 {
    0.1
}

impl SyntheticConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.n == 0 {
            return bad("n must be positive".into());
        }
        if self.samples.len() != self.n {
            return bad(format!("{} sample counts for {} participants", self.samples.len(), self.n));
        }
        if !self.flipped.is_empty() && self.flipped.len() != self.n {
            return bad(format!("{} flip flags for {} participants", self.flipped.len(), self.n));
        }
        if let Some(i) = self.samples.iter().position(|&m| m == 0) {
            return bad(format!("participant {i} has no samples"));
        }
        if !(self.rho.is_finite() && self.rho >= 0.0) {
            return bad(format!("rho = {} must be finite and nonnegative", self.rho));
        }
        if !(self.noise_std.is_finite() && self.noise_std >= 0.0) {
            return bad(format!("noise_std = {} must be finite and nonnegative", self.noise_std));
        }
        if self.degree == 0 {
            return bad("degree must be positive".into());
        }
        Ok(())
    }

    pub fn is_flipped(&self, i: usize) -> bool {
        self.flipped.get(i).copied().unwrap_or(false)
    }
}

/// The two fixed eight-participant scenarios.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    /// Quantity skew: four large and four small participants, tiny feature
    /// drift, small participants each competing with one large one.
    WeakNonIid,
    /// Equal sizes, labels of the last four participants flipped.
    StrongNonIid,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::WeakNonIid => "weak_noniid",
            Preset::StrongNonIid => "strong_noniid",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "weak_noniid" => Some(Preset::WeakNonIid),
            "strong_noniid" => Some(Preset::StrongNonIid),
            _ => None,
        }
    }

    pub fn config(self, seed: u64) -> SyntheticConfig {
        let (samples, flipped) = match self {
            Preset::WeakNonIid => (
                vec![2000, 2000, 100, 100, 2000, 2000, 100, 100],
                vec![false; 8],
            ),
            Preset::StrongNonIid => (
                vec![2000; 8],
                vec![false, false, false, false, true, true, true, true],
            ),
        };
        SyntheticConfig {
            n: 8,
            rho: 0.01,
            degree: 3,
            noise_std: 0.1,
            samples,
            flipped,
            seed,
        }
    }

    /// Competing pairs, 0-based.
    pub fn competing_edges(self) -> Vec<(usize, usize)> {
        match self {
            Preset::WeakNonIid => vec![
                (0, 4),
                (0, 5),
                (1, 4),
                (1, 5),
                (0, 6),
                (1, 7),
                (2, 4),
                (3, 5),
            ],
            Preset::StrongNonIid => vec![
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (4, 6),
                (4, 7),
                (5, 6),
                (5, 7),
            ],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParticipantData {
    /// Ground-truth coefficients of `x, x^2, ..., x^degree`.
    pub weights: Vec<f64>,
    pub flipped: bool,
    pub x_train: Vec<f64>,
    pub y_train: Vec<f64>,
    pub x_val: Vec<f64>,
    pub y_val: Vec<f64>,
}

impl ParticipantData {
    /// Validation split, or the training split when there is nothing held out
    /// (single-sample participants).
    pub fn validation(&self) -> (&[f64], &[f64]) {
        if self.x_val.is_empty() {
            (&self.x_train, &self.y_train)
        } else {
            (&self.x_val, &self.y_val)
        }
    }

    pub fn train_len(&self) -> usize {
        self.x_train.len()
    }

    /// Noise-free label for `x`.
    pub fn target(&self, x: f64) -> f64 {
        let sign = if self.flipped { -1.0 } else { 1.0 };
        sign * self
            .weights
            .iter()
            .enumerate()
            .map(|(l, u)| u * x.powi(l as i32 + 1))
            .sum::<f64>()
    }

    /// Replaces every sample with zeros, keeping the sizes.
    pub fn zeroed(&self) -> Self {
        let z = |v: &Vec<f64>| vec![0.0; v.len()];
        Self {
            weights: self.weights.clone(),
            flipped: self.flipped,
            x_train: z(&self.x_train),
            y_train: z(&self.y_train),
            x_val: z(&self.x_val),
            y_val: z(&self.y_val),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SyntheticTask {
    pub config: SyntheticConfig,
    /// Coefficients shared by every participant before perturbation.
    pub shared: Vec<f64>,
    pub participants: Vec<ParticipantData>,
}

impl SyntheticTask {
    pub fn n(&self) -> usize {
        self.participants.len()
    }
}

fn train_len(m: usize) -> usize {
    let k = ((m as f64) * TRAIN_FRACTION).floor() as usize;
    if m >= 2 {
        k.clamp(1, m - 1)
    } else {
        m
    }
}

/// Draws a task. Shared coefficients come from stream 0 of the seeded
/// generator and participant `i` draws from stream `i + 1`, so a
/// participant's data does not depend on anyone else's sample count.
pub fn generate(config: &SyntheticConfig) -> Result<SyntheticTask> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let shared: Vec<f64> = (0..config.degree).map(|_| rng.random::<f64>()).collect();

    let participants = (0..config.n)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(i as u64 + 1);
            let weights: Vec<f64> = shared
                .iter()
                .map(|v| v + config.rho * rng.sample::<f64, _>(StandardNormal))
                .collect();
            let mut p = ParticipantData {
                weights,
                flipped: config.is_flipped(i),
                x_train: Vec::new(),
                y_train: Vec::new(),
                x_val: Vec::new(),
                y_val: Vec::new(),
            };
            let m = config.samples[i];
            let k = train_len(m);
            for s in 0..m {
                let x = rng.random_range(-1.0..=1.0);
                let y = p.target(x) + config.noise_std * rng.sample::<f64, _>(StandardNormal);
                if s < k {
                    p.x_train.push(x);
                    p.y_train.push(y);
                } else {
                    p.x_val.push(x);
                    p.y_val.push(y);
                }
            }
            p
        })
        .collect();

    Ok(SyntheticTask {
        config: config.clone(),
        shared,
        participants,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_match_scenarios() {
        let weak = Preset::WeakNonIid.config(0);
        assert_eq!(weak.rho, 0.01);
        assert_eq!(weak.samples, vec![2000, 2000, 100, 100, 2000, 2000, 100, 100]);
        assert!(weak.flipped.iter().all(|f| !f));
        let strong = Preset::StrongNonIid.config(0);
        assert_eq!(strong.samples, vec![2000; 8]);
        assert_eq!(
            strong.flipped,
            vec![false, false, false, false, true, true, true, true]
        );
        assert_eq!(Preset::parse("weak_noniid"), Some(Preset::WeakNonIid));
        assert_eq!(Preset::parse("other"), None);
    }

    #[test]
    fn zero_rho_shares_weights() {
        let cfg = SyntheticConfig {
            rho: 0.0,
            ..Preset::WeakNonIid.config(3)
        };
        let task = generate(&cfg).unwrap();
        for p in &task.participants {
            assert_eq!(p.weights, task.shared);
        }
    }

    #[test]
    fn labels_follow_the_model() {
        let cfg = SyntheticConfig {
            noise_std: 0.0,
            ..Preset::StrongNonIid.config(5)
        };
        let task = generate(&cfg).unwrap();
        for p in &task.participants {
            for (x, y) in p.x_train.iter().zip(&p.y_train) {
                assert!(x.abs() <= 1.0);
                let expect: f64 = p.weights.iter().enumerate().map(|(l, u)| u * x.powi(l as i32 + 1)).sum();
                let expect = if p.flipped { -expect } else { expect };
                assert!((y - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn split_is_eighty_twenty() {
        let task = generate(&Preset::WeakNonIid.config(1)).unwrap();
        assert_eq!(task.participants[0].x_train.len(), 1600);
        assert_eq!(task.participants[0].x_val.len(), 400);
        assert_eq!(task.participants[2].x_train.len(), 80);
        assert_eq!(task.participants[2].x_val.len(), 20);
        assert_eq!(train_len(1), 1);
        assert_eq!(train_len(2), 1);
        assert_eq!(train_len(4), 3);
    }

    #[test]
    fn generation_is_seeded() {
        let a = generate(&Preset::WeakNonIid.config(9)).unwrap();
        let b = generate(&Preset::WeakNonIid.config(9)).unwrap();
        let c = generate(&Preset::WeakNonIid.config(10)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn participant_streams_are_independent_of_sizes() {
        let mut cfg = Preset::WeakNonIid.config(2);
        let a = generate(&cfg).unwrap();
        cfg.samples[0] = 10;
        let b = generate(&cfg).unwrap();
        assert_eq!(a.participants[1], b.participants[1]);
    }

    #[test]
    fn invalid_configs() {
        let base = Preset::WeakNonIid.config(0);
        for cfg in [
            SyntheticConfig { rho: -1.0, ..base.clone() },
            SyntheticConfig { noise_std: f64::NAN, ..base.clone() },
            SyntheticConfig { samples: vec![1; 7], ..base.clone() },
            SyntheticConfig { samples: vec![0; 8], ..base.clone() },
            SyntheticConfig { flipped: vec![true; 3], ..base.clone() },
            SyntheticConfig { n: 0, samples: vec![], flipped: vec![], ..base.clone() },
        ] {
            assert!(matches!(generate(&cfg), Err(Error::InvalidConfig(_))));
        }
    }
}
