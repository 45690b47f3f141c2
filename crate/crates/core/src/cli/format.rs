//! TOML file formats for instances, usage graphs, simulation configs and
//! command outputs.
//!
//! Node references are 0-based integers or the labels `"v1"`..`"vn"`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::fedsim::{Method, SyntheticConfig, TrainConfig};
use crate::graph::{Instance, UsageGraph};
use crate::oracle::OracleVerdict;
use crate::selector::{SelectionTrace, Verdict};

/// Failure to read a file, with a location when the parser provides one.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub source: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "{}:{l}:{c}: {}", self.source, self.message),
            _ => write!(f, "{}: {}", self.source, self.message),
        }
    }
}

/// Either a parse failure or a well-formed file describing something invalid.
#[derive(Debug, Clone, PartialEq)]
pub enum LoadError {
    Parse(ParseError),
    Invalid(Error),
}

impl From<Error> for LoadError {
    fn from(e: Error) -> Self {
        LoadError::Invalid(e)
    }
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Parse(e) => e.fmt(f),
            LoadError::Invalid(e) => e.fmt(f),
        }
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

pub fn parse_toml<T: for<'de> Deserialize<'de>>(text: &str, source: &str) -> Result<T, ParseError> {
    toml::from_str(text).map_err(|e| {
        let (line, column) = match e.span() {
            Some(span) => {
                let (l, c) = line_col(text, span.start);
                (Some(l), Some(c))
            }
            None => (None, None),
        };
        ParseError {
            source: source.to_string(),
            line,
            column,
            message: e.message().to_string(),
        }
    })
}

pub fn to_toml<T: Serialize>(value: &T) -> String {
    toml::to_string(value).expect("output types serialize to TOML")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NodeRef {
    Index(usize),
    Label(String),
}

impl NodeRef {
    pub fn resolve(&self, n: usize) -> Result<usize, Error> {
        let idx = match self {
            NodeRef::Index(i) => *i,
            NodeRef::Label(s) => s
                .strip_prefix('v')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&k| k >= 1)
                .map(|k| k - 1)
                .ok_or_else(|| Error::InvalidInstance(format!("bad node label '{s}'")))?,
        };
        if idx < n {
            Ok(idx)
        } else {
            Err(Error::NodeOutOfRange { node: idx, n })
        }
    }
}

fn resolve_pairs(pairs: &[(NodeRef, NodeRef)], n: usize) -> Result<Vec<(usize, usize)>, Error> {
    pairs
        .iter()
        .map(|(a, b)| Ok((a.resolve(n)?, b.resolve(n)?)))
        .collect()
}

fn resolve_weighted(edges: &[(NodeRef, NodeRef, f64)], n: usize) -> Result<Vec<(usize, usize, f64)>, Error> {
    edges
        .iter()
        .map(|(a, b, w)| Ok((a.resolve(n)?, b.resolve(n)?, *w)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    #[serde(default)]
    pub competing_edges: Vec<(NodeRef, NodeRef)>,
    #[serde(default)]
    pub benefit_edges: Vec<(NodeRef, NodeRef, f64)>,
}

impl InstanceFile {
    pub fn from_instance(instance: &Instance) -> Self {
        Self {
            n: instance.n(),
            competing_edges: instance
                .competing_edges()
                .into_iter()
                .map(|(a, b)| (NodeRef::Index(a), NodeRef::Index(b)))
                .collect(),
            benefit_edges: instance
                .benefit_edges()
                .into_iter()
                .map(|(j, i, w)| (NodeRef::Index(j), NodeRef::Index(i), w))
                .collect(),
        }
    }

    pub fn to_instance(&self) -> Result<Instance, Error> {
        Instance::from_edges(
            self.n,
            &resolve_pairs(&self.competing_edges, self.n)?,
            &resolve_weighted(&self.benefit_edges, self.n)?,
        )
    }
}

pub fn parse_instance(text: &str, source: &str) -> Result<Instance, LoadError> {
    let file: InstanceFile = parse_toml(text, source).map_err(LoadError::Parse)?;
    Ok(file.to_instance()?)
}

pub fn write_instance(instance: &Instance) -> String {
    to_toml(&InstanceFile::from_instance(instance))
}

/// Usage graph as an edge list. `select` output carries the same keys, so it
/// can be fed back in directly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UsageFile {
    pub n: usize,
    #[serde(default)]
    pub edges: Vec<(NodeRef, NodeRef)>,
}

pub fn parse_usage(text: &str, source: &str, instance: &Instance) -> Result<UsageGraph, LoadError> {
    let file: UsageFile = parse_toml(text, source).map_err(LoadError::Parse)?;
    if file.n != instance.n() {
        return Err(LoadError::Invalid(Error::InvalidInstance(format!(
            "usage graph has {} nodes, instance has {}",
            file.n,
            instance.n()
        ))));
    }
    let edges = resolve_pairs(&file.edges, file.n)?;
    Ok(UsageGraph::from_edges(file.n, &edges, Some(instance))?)
}

fn bits(m: Vec<Vec<bool>>) -> Vec<Vec<u8>> {
    m.into_iter()
        .map(|row| row.into_iter().map(u8::from).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub node: usize,
    pub weight: f64,
    pub accepted: bool,
    pub s_plus: Vec<usize>,
    pub s_minus: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub participant: usize,
    pub objective: f64,
    pub candidates: Vec<CandidateRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelectOutput {
    pub n: usize,
    pub lop: Vec<f64>,
    pub order: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub x: Vec<Vec<u8>>,
    pub closure: Vec<Vec<u8>>,
    pub steps: Vec<StepRecord>,
}

impl SelectOutput {
    pub fn new(usage: &UsageGraph, trace: &SelectionTrace) -> Self {
        let steps = trace
            .steps
            .iter()
            .map(|s| StepRecord {
                participant: s.participant,
                objective: s.objective,
                candidates: s
                    .candidates
                    .iter()
                    .map(|c| {
                        let (s_plus, s_minus) = match &c.verdict {
                            Verdict::Accepted => (vec![], vec![]),
                            Verdict::Rejected { s_plus, s_minus } => (s_plus.clone(), s_minus.clone()),
                        };
                        CandidateRecord {
                            node: c.node,
                            weight: c.weight,
                            accepted: c.accepted(),
                            s_plus,
                            s_minus,
                        }
                    })
                    .collect(),
            })
            .collect();
        Self {
            n: usage.n(),
            lop: trace.lop.clone(),
            order: trace.order.clone(),
            edges: usage.edges(),
            x: bits(usage.x_matrix()),
            closure: bits(usage.closure_matrix()),
            steps,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub from: usize,
    pub to: usize,
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyOutput {
    pub feasible: bool,
    pub closure_check: bool,
    /// `"pass"`, `"fail"`, or `"skipped"` when the instance is too large.
    pub path_check: String,
    pub violations: Vec<ViolationRecord>,
    pub oracle: Vec<OracleVerdict>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionOutput {
    pub n: usize,
    pub mode: crate::partition::CoverMode,
    pub clique_cover: Vec<Vec<usize>>,
    pub scc_coalitions: Vec<Vec<usize>>,
}

/// Custom simulation config. Benefit edges, when present, replace the
/// per-repetition estimate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulateFile {
    pub n: usize,
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
    #[serde(default)]
    pub competing_edges: Vec<(NodeRef, NodeRef)>,
    pub benefit_edges: Option<Vec<(NodeRef, NodeRef, f64)>>,
    pub methods: Option<Vec<Method>>,
    #[serde(default)]
    pub training: TrainConfig,
}

fn default_degree() -> usize {
    3
}

fn default_noise() -> f64 {
    0.1
}

impl SimulateFile {
    pub fn synthetic(&self) -> SyntheticConfig {
        SyntheticConfig {
            n: self.n,
            rho: self.rho,
            degree: self.degree,
            noise_std: self.noise_std,
            samples: self.samples.clone(),
            flipped: self.flipped.clone(),
            seed: self.seed,
        }
    }

    pub fn competing(&self) -> Result<Vec<(usize, usize)>, Error> {
        resolve_pairs(&self.competing_edges, self.n)
    }

    /// Dense benefit matrix, validated together with the competing graph.
    pub fn benefit(&self) -> Result<Option<Vec<Vec<f64>>>, Error> {
        let Some(edges) = &self.benefit_edges else {
            return Ok(None);
        };
        let inst = Instance::from_edges(self.n, &self.competing()?, &resolve_weighted(edges, self.n)?)?;
        Ok(Some(inst.benefit_matrix()))
    }
}
