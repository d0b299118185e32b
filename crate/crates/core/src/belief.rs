//! Joint beliefs over models and parameter grids.
//!
//! A [`JointBelief`] is stored factorized: a distribution over models and, for
//! each model, a distribution over that model's parameter grid. Updates are
//! carried out in log space and re-derive the factorization.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dist::{kl_of, DiscreteDist, Support};
use crate::error::{Error, Result};
use crate::models::{ParamPoint, ResponseModel};

/// Relative log-mass floor applied to posterior atoms before renormalization.
pub const LOG_FLOOR: f64 = 690.0;

/// Whether a belief is the experimenter's specified prior or the population distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    Specified,
    Population,
}

/// The inferential target of a utility or metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FocusKind {
    /// Parameters of a single, known model.
    Parameter,
    Model,
    /// The model together with its parameters.
    Joint,
}

impl FocusKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FocusKind::Parameter => "parameter",
            FocusKind::Model => "model",
            FocusKind::Joint => "joint",
        }
    }
}

/// A single value of the focus.
#[derive(Debug, Clone, Copy)]
pub enum FocusValue<'a> {
    Model(&'a str),
    Param(&'a [f64]),
}

/// Borrowed focus marginal.
#[derive(Debug, Clone, Copy)]
pub enum Marginal<'a> {
    Model(&'a DiscreteDist<String>),
    Param(&'a DiscreteDist<ParamPoint>),
}

impl Marginal<'_> {
    pub fn masses(&self) -> &[f64] {
        match self {
            Marginal::Model(d) => d.masses(),
            Marginal::Param(d) => d.masses(),
        }
    }

    /// `KL(self || other)`; the two marginals must share a support.
    pub fn kl_to(&self, other: &Marginal<'_>) -> Result<f64> {
        let aligned = match (self, other) {
            (Marginal::Model(a), Marginal::Model(b)) => a.support().aligned(b.support()),
            (Marginal::Param(a), Marginal::Param(b)) => a.support().aligned(b.support()),
            _ => false,
        };
        if !aligned {
            return Err(Error::Shape("focus marginals have different supports".into()));
        }
        Ok(kl_of(self.masses(), other.masses()))
    }
}

/// Serializable masses of a belief, for trial logs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BeliefSnapshot {
    pub model_probs: Vec<f64>,
    pub param_masses: Vec<Vec<f64>>,
}

/// Per-model predictive quantities at one stimulus.
#[derive(Debug, Clone)]
pub(crate) struct ModelPredictive {
    /// Index of the stimulus in this model's stimulus space.
    pub stimulus: usize,
    /// `p(y | x, m)`.
    pub focal: Vec<f64>,
    /// `Σ_θ p(θ | m) H(Y | x, θ, m)`.
    pub mean_row_entropy: f64,
}

#[derive(Debug, Clone)]
pub struct JointBelief {
    models: Vec<Arc<ResponseModel>>,
    model_probs: DiscreteDist<String>,
    param_dists: Vec<DiscreteDist<ParamPoint>>,
    role: Role,
    floor_events: u64,
}

impl JointBelief {
    /// Builds a belief from model weights and one parameter distribution per model.
    pub fn new(
        models: Vec<Arc<ResponseModel>>,
        model_weights: Vec<f64>,
        param_dists: Vec<DiscreteDist<ParamPoint>>,
        role: Role,
    ) -> Result<Self> {
        if models.is_empty() {
            return Err(Error::Shape("a belief needs at least one model".into()));
        }
        if models.len() != param_dists.len() {
            return Err(Error::Shape(format!(
                "{} models but {} parameter distributions",
                models.len(),
                param_dists.len()
            )));
        }
        for (model, dist) in models.iter().zip(&param_dists) {
            if !dist.support().aligned(model.grid()) {
                return Err(Error::Shape(format!(
                    "parameter distribution does not match the grid of model '{}'",
                    model.id()
                )));
            }
            if !model.responses().aligned(models[0].responses()) {
                return Err(Error::Shape(format!(
                    "model '{}' has a different response set from '{}'",
                    model.id(),
                    models[0].id()
                )));
            }
        }
        let ids = Support::new(models.iter().map(|m| m.id().to_string()).collect())
            .map_err(|_| Error::Shape("duplicate model identifiers".into()))?;
        let model_probs = DiscreteDist::from_weights(ids, model_weights)?;
        Ok(JointBelief {
            models,
            model_probs,
            param_dists,
            role,
            floor_events: 0,
        })
    }

    /// A belief over a single model.
    pub fn single(
        model: Arc<ResponseModel>,
        params: DiscreteDist<ParamPoint>,
        role: Role,
    ) -> Result<Self> {
        JointBelief::new(vec![model], vec![1.0], vec![params], role)
    }

    pub fn models(&self) -> &[Arc<ResponseModel>] {
        &self.models
    }

    pub fn model_probs(&self) -> &DiscreteDist<String> {
        &self.model_probs
    }

    pub fn param_dist(&self, model: usize) -> &DiscreteDist<ParamPoint> {
        &self.param_dists[model]
    }

    pub fn param_dists(&self) -> &[DiscreteDist<ParamPoint>] {
        &self.param_dists
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn with_role(mut self, role: Role) -> Self {
        self.role = role;
        self
    }

    /// Number of posterior atoms raised to the log-mass floor so far.
    pub fn floor_events(&self) -> u64 {
        self.floor_events
    }

    pub fn is_single_model(&self) -> bool {
        self.models.len() == 1
    }

    pub fn responses(&self) -> &Support<f64> {
        self.models[0].responses()
    }

    pub fn model_index(&self, id: &str) -> Result<usize> {
        self.models
            .iter()
            .position(|m| m.id() == id)
            .ok_or_else(|| Error::Lookup(format!("model '{id}'")))
    }

    /// Same models, stimulus spaces and parameter grids.
    pub fn same_structure(&self, other: &JointBelief) -> bool {
        self.models.len() == other.models.len()
            && self.models.iter().zip(&other.models).all(|(a, b)| {
                a.id() == b.id() && a.stimuli() == b.stimuli() && a.grid().aligned(b.grid())
            })
    }

    pub(crate) fn model_predictives(&self, x: f64) -> Result<Vec<ModelPredictive>> {
        self.models
            .iter()
            .zip(&self.param_dists)
            .map(|(model, dist)| {
                let s = model.stimulus_index(x)?;
                let mut focal = vec![0.0; model.n_responses()];
                let mut mean_row_entropy = 0.0;
                for (t, &p) in dist.masses().iter().enumerate() {
                    if p > 0.0 {
                        for (acc, &l) in focal.iter_mut().zip(model.row(s, t)) {
                            *acc += p * l;
                        }
                        mean_row_entropy += p * model.row_entropy(s, t);
                    }
                }
                Ok(ModelPredictive {
                    stimulus: s,
                    focal,
                    mean_row_entropy,
                })
            })
            .collect()
    }

    pub(crate) fn mixture(&self, per_model: &[ModelPredictive]) -> Vec<f64> {
        let mut out = vec![0.0; self.responses().len()];
        for (pm, &w) in per_model.iter().zip(self.model_probs.masses()) {
            if w > 0.0 {
                for (acc, &p) in out.iter_mut().zip(&pm.focal) {
                    *acc += w * p;
                }
            }
        }
        out
    }

    fn response_dist(&self, mass: Vec<f64>) -> DiscreteDist<f64> {
        let total: f64 = mass.iter().sum();
        let mass = mass.into_iter().map(|p| p / total).collect();
        DiscreteDist::from_normalized(self.responses().clone(), mass)
    }

    /// `p(y | x) = Σ_m p(m) Σ_θ p(y | x, θ, m) p(θ | m)`.
    pub fn prior_predictive(&self, x: f64) -> Result<DiscreteDist<f64>> {
        let per_model = self.model_predictives(x)?;
        Ok(self.response_dist(self.mixture(&per_model)))
    }

    /// Predictive distribution conditioned on one focus value.
    ///
    /// For a model, this mixes over the model's parameter distribution; for a
    /// parameter point it is the raw likelihood row and does not depend on the belief.
    pub fn focal_predictive(&self, x: f64, phi: FocusValue<'_>) -> Result<DiscreteDist<f64>> {
        match phi {
            FocusValue::Model(id) => {
                let m = self.model_index(id)?;
                let model = &self.models[m];
                let s = model.stimulus_index(x)?;
                let mut focal = vec![0.0; model.n_responses()];
                for (t, &p) in self.param_dists[m].masses().iter().enumerate() {
                    for (acc, &l) in focal.iter_mut().zip(model.row(s, t)) {
                        *acc += p * l;
                    }
                }
                Ok(self.response_dist(focal))
            }
            FocusValue::Param(theta) => {
                if !self.is_single_model() {
                    return Err(Error::AmbiguousFocus(self.models.len()));
                }
                let model = &self.models[0];
                let s = model.stimulus_index(x)?;
                let t = model
                    .grid()
                    .iter()
                    .position(|p| p[..] == *theta)
                    .ok_or_else(|| Error::Lookup(format!("parameter point {theta:?}")))?;
                Ok(self.response_dist(model.row(s, t).to_vec()))
            }
        }
    }

    /// Posterior after observing response `y` to stimulus `x`.
    pub fn update(&self, x: f64, y: f64) -> Result<JointBelief> {
        let mut floors = 0u64;
        let mut log_model = Vec::with_capacity(self.models.len());
        let mut params = Vec::with_capacity(self.models.len());
        for ((model, dist), &pm) in self
            .models
            .iter()
            .zip(&self.param_dists)
            .zip(self.model_probs.masses())
        {
            let s = model.stimulus_index(x)?;
            let r = model.response_index(y)?;
            let mut logs: Vec<f64> = dist
                .masses()
                .iter()
                .enumerate()
                .map(|(t, &p)| {
                    if p > 0.0 {
                        p.ln() + model.log_row(s, t)[r]
                    } else {
                        f64::NEG_INFINITY
                    }
                })
                .collect();
            match normalize_logs(&mut logs, &mut floors) {
                Some((mass, log_evidence)) => {
                    params.push(DiscreteDist::from_normalized(dist.support().clone(), mass));
                    log_model.push(if pm > 0.0 {
                        pm.ln() + log_evidence
                    } else {
                        f64::NEG_INFINITY
                    });
                }
                None => {
                    // the observation rules this model out entirely
                    params.push(dist.clone());
                    log_model.push(f64::NEG_INFINITY);
                }
            }
        }
        let (model_mass, _) = normalize_logs(&mut log_model, &mut floors)
            .ok_or(Error::ImpossibleObservation { stimulus: x, response: y })?;
        Ok(JointBelief {
            models: self.models.clone(),
            model_probs: DiscreteDist::from_normalized(
                self.model_probs.support().clone(),
                model_mass,
            ),
            param_dists: params,
            role: self.role,
            floor_events: self.floor_events + floors,
        })
    }

    /// `p(y | x, m1) / p(y | x, m2)` under the current parameter distributions.
    ///
    /// Returns `f64::INFINITY` when only the denominator vanishes.
    pub fn bayes_factor(&self, x: f64, y: f64, m1: &str, m2: &str) -> Result<f64> {
        let num = self.focal_predictive(x, FocusValue::Model(m1))?;
        let den = self.focal_predictive(x, FocusValue::Model(m2))?;
        let r = self.models[0].response_index(y)?;
        let (a, b) = (num.masses()[r], den.masses()[r]);
        match (a > 0.0, b > 0.0) {
            (_, true) => Ok(a / b),
            (true, false) => Ok(f64::INFINITY),
            (false, false) => Err(Error::ImpossibleObservation { stimulus: x, response: y }),
        }
    }

    /// Distribution of the focus.
    pub fn marginal(&self, focus: FocusKind) -> Result<Marginal<'_>> {
        match focus {
            FocusKind::Model => Ok(Marginal::Model(&self.model_probs)),
            FocusKind::Parameter if self.is_single_model() => {
                Ok(Marginal::Param(&self.param_dists[0]))
            }
            FocusKind::Parameter => Err(Error::AmbiguousFocus(self.models.len())),
            FocusKind::Joint => Err(Error::UnsupportedFocus("joint".into())),
        }
    }

    pub fn snapshot(&self) -> BeliefSnapshot {
        BeliefSnapshot {
            model_probs: self.model_probs.masses().to_vec(),
            param_masses: self
                .param_dists
                .iter()
                .map(|d| d.masses().to_vec())
                .collect(),
        }
    }
}

/// Exponentiates and normalizes log weights in place, flooring finite entries
/// more than [`LOG_FLOOR`] below the maximum. Returns the masses and the log of
/// the normalizing constant, or `None` if every weight is zero.
fn normalize_logs(logs: &mut [f64], floors: &mut u64) -> Option<(Vec<f64>, f64)> {
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return None;
    }
    for l in logs.iter_mut() {
        if l.is_finite() && *l - top < -LOG_FLOOR {
            *l = top - LOG_FLOOR;
            *floors += 1;
        }
    }
    let weights: Vec<f64> = logs.iter().map(|&l| (l - top).exp()).collect();
    let total: f64 = weights.iter().sum();
    Some((
        weights.into_iter().map(|w| w / total).collect(),
        top + total.ln(),
    ))
}
