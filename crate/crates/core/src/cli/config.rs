//! The TOML study schema and its resolution into experiment cells.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::belief::{FocusKind, JointBelief, Role};
use crate::dist::{beta_weights, normal_weights, DiscreteDist};
use crate::efd::PopulationConvention;
use crate::error::{Error, Result};
use crate::models::{
    builtin_family, integer_bins, irt_grid, retention_candidates, retention_grid, ParamPoint,
    ResponseModel, RETENTION_FIXED_DELAYS,
};
use crate::policy::DesignKind;
use crate::sim::ExperimentConfig;
use crate::utility::UtilityKind;

/// Utility names accepted in configs. UCB uses the study focus and `ucb_weight`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UtilityName {
    MiParameter,
    MiModel,
    TotalEntropy,
    Ucb,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default = "default_irt_points")]
    pub irt_points: usize,
    #[serde(default = "default_retention_cells")]
    pub retention_cells: usize,
    /// Gaussian mean grid is the integers in `-gauss_mu_half..=gauss_mu_half`.
    #[serde(default = "default_gauss_mu_half")]
    pub gauss_mu_half: i32,
    #[serde(default = "default_gauss_bins_half")]
    pub gauss_bins_half: i32,
}

fn default_irt_points() -> usize {
    31
}
fn default_retention_cells() -> usize {
    50
}
fn default_gauss_mu_half() -> i32 {
    30
}
fn default_gauss_bins_half() -> i32 {
    40
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            irt_points: default_irt_points(),
            retention_cells: default_retention_cells(),
            gauss_mu_half: default_gauss_mu_half(),
            gauss_bins_half: default_gauss_bins_half(),
        }
    }
}

/// One model's share of a belief: a weight and one distribution per parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub model: String,
    #[serde(default = "one")]
    pub weight: f64,
    pub params: Vec<String>,
}

fn one() -> f64 {
    1.0
}

/// A named prior or population: either `model` + `params` or `components`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeliefSpec {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ComponentSpec>,
}

impl BeliefSpec {
    pub fn components(&self) -> Result<Vec<ComponentSpec>> {
        match (&self.model, &self.params, self.components.is_empty()) {
            (Some(model), Some(params), true) => Ok(vec![ComponentSpec {
                model: model.clone(),
                weight: 1.0,
                params: params.clone(),
            }]),
            (None, None, false) => Ok(self.components.clone()),
            _ => Err(Error::Config(format!(
                "belief '{}' needs either model + params or components",
                self.id
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionSpec {
    pub id: String,
    pub prior: String,
    pub population: String,
    /// Reported as `prior_id`; defaults to the prior's id.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prior_label: Option<String>,
    /// Reported as `population_id`; defaults to the population's id.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub population_label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudyConfig {
    pub seed: u64,
    pub trials: usize,
    pub reps: usize,
    #[serde(default = "default_focus")]
    pub focus: FocusKind,
    #[serde(default = "default_designs")]
    pub designs: Vec<DesignKind>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub utilities: Vec<UtilityName>,
    #[serde(default = "one")]
    pub ucb_weight: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidates: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_stimuli: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_repeats: Option<usize>,
    #[serde(default)]
    pub track_efd: bool,
    #[serde(default)]
    pub condition_population: PopulationConvention,
    #[serde(default)]
    pub snapshots: bool,
    #[serde(default)]
    pub grid: GridConfig,
    pub priors: Vec<BeliefSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub populations: Vec<BeliefSpec>,
    pub conditions: Vec<ConditionSpec>,
}

fn default_focus() -> FocusKind {
    FocusKind::Parameter
}

fn default_designs() -> Vec<DesignKind> {
    vec![DesignKind::Ado]
}

/// Parses and validates a study, filling every default.
pub fn parse_config(text: &str) -> Result<StudyConfig> {
    let raw: StudyConfig = toml::from_str(text).map_err(|e| {
        let line = e
            .span()
            .map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1)
            .unwrap_or(0);
        Error::ConfigParse {
            line,
            message: e.message().trim().to_string(),
        }
    })?;
    let resolved = raw.resolve()?;
    Study::build(&resolved)?;
    Ok(resolved)
}

/// TOML text that parses back to the same config.
pub fn emit_config(cfg: &StudyConfig) -> Result<String> {
    toml::to_string(cfg).map_err(|e| Error::Config(e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Paradigm {
    Irt,
    Retention,
    Gaussian,
}

fn paradigm(model: &str) -> Result<Paradigm> {
    match model {
        "irt" => Ok(Paradigm::Irt),
        "pow" | "exp" => Ok(Paradigm::Retention),
        "gauss-a" | "gauss-b" => Ok(Paradigm::Gaussian),
        other => builtin_family(other, &[]).map(|_| Paradigm::Irt),
    }
}

impl StudyConfig {
    fn beliefs(&self) -> impl Iterator<Item = &BeliefSpec> {
        self.priors.iter().chain(&self.populations)
    }

    fn paradigm(&self) -> Result<Paradigm> {
        let mut found = None;
        for spec in self.beliefs() {
            for c in spec.components()? {
                let p = paradigm(&c.model)?;
                if found.is_some_and(|f| f != p) {
                    return Err(Error::Config(
                        "models from different paradigms cannot share a study".into(),
                    ));
                }
                found = Some(p);
            }
        }
        found.ok_or_else(|| Error::Config("no priors given".into()))
    }

    /// Fills candidates, fixed design and utilities from the paradigm and focus.
    pub fn resolve(mut self) -> Result<StudyConfig> {
        let paradigm = self.paradigm()?;
        if self.candidates.is_none() {
            self.candidates = Some(match paradigm {
                Paradigm::Irt => irt_grid(self.grid.irt_points),
                Paradigm::Retention => retention_candidates(),
                Paradigm::Gaussian => vec![0.0],
            });
        }
        if self.fixed_stimuli.is_none() {
            self.fixed_stimuli = Some(match paradigm {
                Paradigm::Irt => irt_grid(self.grid.irt_points),
                Paradigm::Retention => RETENTION_FIXED_DELAYS.to_vec(),
                Paradigm::Gaussian => vec![0.0],
            });
        }
        if self.fixed_repeats.is_none() {
            let n = self.fixed_stimuli.as_ref().map_or(1, Vec::len).max(1);
            self.fixed_repeats = Some(self.trials.div_ceil(n).max(1));
        }
        if self.utilities.is_empty() {
            self.utilities = vec![match self.focus {
                FocusKind::Parameter => UtilityName::MiParameter,
                FocusKind::Model => UtilityName::MiModel,
                FocusKind::Joint => UtilityName::TotalEntropy,
            }];
        }
        Ok(self)
    }

    pub fn utility_kinds(&self) -> Vec<UtilityKind> {
        self.utilities
            .iter()
            .map(|u| match u {
                UtilityName::MiParameter => UtilityKind::MiParameter,
                UtilityName::MiModel => UtilityKind::MiModel,
                UtilityName::TotalEntropy => UtilityKind::TotalEntropy,
                UtilityName::Ucb => UtilityKind::Ucb {
                    focus: self.focus,
                    weight: self.ucb_weight,
                },
            })
            .collect()
    }
}

/// A parsed one-dimensional distribution string.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AxisDist {
    Normal { mu: f64, sigma: f64 },
    Beta { alpha: f64, beta: f64 },
    Uniform,
    Point(f64),
}

impl AxisDist {
    /// Parses `normal(mu, sigma)`, `beta(a, b)`, `uniform` or `point(v)`.
    pub fn parse(s: &str) -> Result<AxisDist> {
        let s = s.trim();
        let bad = || Error::Config(format!("cannot parse distribution '{s}'"));
        if s == "uniform" {
            return Ok(AxisDist::Uniform);
        }
        let open = s.find('(').ok_or_else(bad)?;
        let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let args = inner
            .split(',')
            .map(|a| a.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<Vec<f64>>>()?;
        match (s[..open].trim(), args.as_slice()) {
            ("normal", &[mu, sigma]) => Ok(AxisDist::Normal { mu, sigma }),
            ("beta", &[alpha, beta]) => Ok(AxisDist::Beta { alpha, beta }),
            ("point", &[v]) => Ok(AxisDist::Point(v)),
            _ => Err(bad()),
        }
    }

    /// Unnormalized weights at `points`.
    pub fn weights(&self, points: &[f64]) -> Result<Vec<f64>> {
        match *self {
            AxisDist::Normal { mu, sigma } => normal_weights(mu, sigma, points),
            AxisDist::Beta { alpha, beta } => beta_weights(alpha, beta, points),
            AxisDist::Uniform => Ok(vec![1.0; points.len()]),
            AxisDist::Point(v) => {
                let w: Vec<f64> = points
                    .iter()
                    .map(|&p| if (p - v).abs() < 1e-9 { 1.0 } else { 0.0 })
                    .collect();
                if w.iter().all(|&x| x == 0.0) {
                    return Err(Error::Config(format!("point({v}) is not on the grid")));
                }
                Ok(w)
            }
        }
    }
}

/// Product-form masses over `grid` with one distribution per coordinate.
pub fn product_masses(grid: &[ParamPoint], axes: &[AxisDist]) -> Result<Vec<f64>> {
    let dims = grid.first().map_or(0, Vec::len);
    if axes.len() != dims {
        return Err(Error::Config(format!(
            "{} parameter distributions given for a {dims}-parameter model",
            axes.len()
        )));
    }
    let mut lookup: Vec<HashMap<u64, f64>> = Vec::with_capacity(dims);
    for (d, axis) in axes.iter().enumerate() {
        let mut values: Vec<f64> = grid.iter().map(|p| p[d]).collect();
        values.sort_by(f64::total_cmp);
        values.dedup();
        let w = axis.weights(&values)?;
        lookup.push(values.iter().map(|v| v.to_bits()).zip(w).collect());
    }
    Ok(grid
        .iter()
        .map(|p| p.iter().zip(&lookup).map(|(v, l)| l[&v.to_bits()]).product())
        .collect())
}

/// One resolved cell together with its labels.
#[derive(Debug, Clone)]
pub struct Study {
    pub cells: Vec<ExperimentConfig>,
    /// Specified beliefs by prior id, in config order.
    pub priors: Vec<(String, JointBelief)>,
    /// `(prior label, population label, specified, population)` per distinct condition pair.
    pub pairs: Vec<(String, String, JointBelief, JointBelief)>,
}

impl Study {
    pub fn build(cfg: &StudyConfig) -> Result<Study> {
        let cfg = cfg.clone().resolve()?;
        let mut stimuli: Vec<f64> = cfg
            .candidates
            .iter()
            .chain(&cfg.fixed_stimuli)
            .flatten()
            .copied()
            .collect();
        stimuli.sort_by(f64::total_cmp);
        stimuli.dedup();
        let bins = integer_bins(cfg.grid.gauss_bins_half);

        let mut models: HashMap<String, Arc<ResponseModel>> = HashMap::new();
        let mut model_for = |id: &str| -> Result<Arc<ResponseModel>> {
            if let Some(m) = models.get(id) {
                return Ok(m.clone());
            }
            let grid: Vec<ParamPoint> = match paradigm(id)? {
                Paradigm::Irt => irt_grid(cfg.grid.irt_points).into_iter().map(|t| vec![t]).collect(),
                Paradigm::Retention => retention_grid(cfg.grid.retention_cells),
                Paradigm::Gaussian => integer_bins(cfg.grid.gauss_mu_half)
                    .into_iter()
                    .map(|m| vec![m])
                    .collect(),
            };
            let m = Arc::new(ResponseModel::new(
                builtin_family(id, &bins)?,
                stimuli.clone(),
                crate::dist::Support::new(grid)?,
            )?);
            models.insert(id.to_string(), m.clone());
            Ok(m)
        };

        // every belief lists its models in one canonical order so grids line up
        let mut order: Vec<String> = Vec::new();
        for spec in cfg.beliefs() {
            for c in spec.components()? {
                if !order.contains(&c.model) {
                    order.push(c.model);
                }
            }
        }
        let mut build = |spec: &BeliefSpec, role: Role| -> Result<JointBelief> {
            let comps = spec.components()?;
            let mut ms = Vec::new();
            let mut weights = Vec::new();
            let mut dists = Vec::new();
            for id in &order {
                let model = model_for(id)?;
                let (w, masses) = match comps.iter().find(|c| &c.model == id) {
                    Some(c) => {
                        let axes = c
                            .params
                            .iter()
                            .map(|p| AxisDist::parse(p))
                            .collect::<Result<Vec<_>>>()?;
                        (c.weight, product_masses(model.grid(), &axes)?)
                    }
                    None => (0.0, vec![1.0; model.grid().len()]),
                };
                if comps.iter().filter(|c| &c.model == id).count() > 1 {
                    return Err(Error::Config(format!(
                        "belief '{}' lists model '{id}' twice",
                        spec.id
                    )));
                }
                dists.push(DiscreteDist::from_weights(model.grid().clone(), masses).map_err(
                    |e| Error::Config(format!("belief '{}': {e}", spec.id)),
                )?);
                weights.push(w);
                ms.push(model);
            }
            JointBelief::new(ms, weights, dists, role)
                .map_err(|e| Error::Config(format!("belief '{}': {e}", spec.id)))
        };

        let mut priors = Vec::new();
        for spec in &cfg.priors {
            if priors.iter().any(|(id, _)| id == &spec.id) {
                return Err(Error::Config(format!("duplicate prior id '{}'", spec.id)));
            }
            priors.push((spec.id.clone(), build(spec, Role::Specified)?));
        }
        let mut pops: Vec<(String, JointBelief)> = Vec::new();
        for spec in &cfg.populations {
            if pops.iter().any(|(id, _)| id == &spec.id) {
                return Err(Error::Config(format!("duplicate population id '{}'", spec.id)));
            }
            pops.push((spec.id.clone(), build(spec, Role::Population)?));
        }
        let find_pop = |id: &str| {
            pops.iter()
                .find(|(p, _)| p == id)
                .map(|(_, b)| b.clone())
                .or_else(|| {
                    priors
                        .iter()
                        .find(|(p, _)| p == id)
                        .map(|(_, b)| b.clone().with_role(Role::Population))
                })
                .ok_or_else(|| Error::Config(format!("unknown population '{id}'")))
        };

        if cfg.conditions.is_empty() {
            return Err(Error::Config("no conditions given".into()));
        }
        if cfg.designs.is_empty() {
            return Err(Error::Config("no designs given".into()));
        }
        let utilities = cfg.utility_kinds();
        let mut cells = Vec::new();
        let mut pairs = Vec::new();
        for cond in &cfg.conditions {
            let specified = priors
                .iter()
                .find(|(p, _)| p == &cond.prior)
                .map(|(_, b)| b.clone())
                .ok_or_else(|| Error::Config(format!("unknown prior '{}'", cond.prior)))?;
            let population = find_pop(&cond.population)?;
            let prior_id = cond.prior_label.clone().unwrap_or_else(|| cond.prior.clone());
            let population_id = cond
                .population_label
                .clone()
                .unwrap_or_else(|| cond.population.clone());
            if !pairs.iter().any(|(p, q, _, _): &(String, String, _, _)| p == &prior_id && q == &population_id) {
                pairs.push((prior_id.clone(), population_id.clone(), specified.clone(), population.clone()));
            }
            for &design in &cfg.designs {
                let kinds: &[UtilityKind] = if design == DesignKind::Ado { &utilities } else { &utilities[..1] };
                for &utility in kinds {
                    let cell = ExperimentConfig {
                        condition_id: cond.id.clone(),
                        prior_id: prior_id.clone(),
                        population_id: population_id.clone(),
                        specified: specified.clone(),
                        population: population.clone(),
                        design,
                        utility,
                        candidates: cfg.candidates.clone().unwrap_or_default(),
                        fixed_stimuli: cfg.fixed_stimuli.clone().unwrap_or_default(),
                        fixed_repeats: cfg.fixed_repeats.unwrap_or(1),
                        trials: cfg.trials,
                        reps: cfg.reps,
                        seed: cfg.seed,
                        focus: cfg.focus,
                        track_efd: cfg.track_efd,
                        condition_population: cfg.condition_population,
                        snapshots: cfg.snapshots,
                    };
                    cell.validate().map_err(|e| {
                        Error::Config(format!("condition '{}' ({}): {e}", cond.id, design.as_str()))
                    })?;
                    cells.push(cell);
                }
            }
        }
        Ok(Study { cells, priors, pairs })
    }
}
