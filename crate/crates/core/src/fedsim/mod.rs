//! Desk-scale federated training on synthetic regression tasks.

pub mod benefit;
pub mod data;
pub mod experiment;
pub mod model;
pub mod train;

pub use benefit::estimate_benefit;
pub use data::{generate, ParticipantData, Preset, SyntheticConfig, SyntheticTask};
pub use experiment::{
    preset_instance, run_experiment, ExperimentReport, ExperimentSpec, MethodSummary,
};
pub use model::{ModelParams, PolyRegressor, Regressor};
pub use train::{train, train_local, Grouping, Method, MethodResult, MixingPlan, TrainConfig};
