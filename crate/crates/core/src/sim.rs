//! Simulated experiments: ground-truth sampling, the trial loop, replication
//! batches and the mean/SE summaries of the probability assigned to the truth.

use std::collections::HashMap;

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::belief::{BeliefSnapshot, FocusKind, JointBelief, LOG_FLOOR};
use crate::efd::{expected_focal_divergence, population_after, PopulationConvention};
use crate::error::{Error, Result};
use crate::policy::{make_fixed_schedule, DesignKind, DesignPolicy};
use crate::rng::{stream, Purpose};
use crate::utility::UtilityKind;

/// Label used in outputs for designs that do not maximize a utility.
pub const NO_UTILITY: &str = "none";
/// Population id of rows pooled over populations.
pub const POOLED: &str = "*";
/// Fraction of floored records above which a summary is flagged.
pub const FLOOR_FLAG_FRACTION: f64 = 0.01;

/// One cell of a study: a single design, specified prior and population.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub condition_id: String,
    pub prior_id: String,
    pub population_id: String,
    pub specified: JointBelief,
    pub population: JointBelief,
    pub design: DesignKind,
    /// Maximized by ADO; ignored by the other designs.
    pub utility: UtilityKind,
    /// ADO and random candidates.
    pub candidates: Vec<f64>,
    /// Stimuli of the fixed design, each shown `fixed_repeats` times.
    pub fixed_stimuli: Vec<f64>,
    pub fixed_repeats: usize,
    pub trials: usize,
    pub reps: usize,
    pub seed: u64,
    /// Focus whose true value is scored.
    pub focus: FocusKind,
    pub track_efd: bool,
    pub condition_population: PopulationConvention,
    pub snapshots: bool,
}

impl ExperimentConfig {
    pub fn utility_label(&self) -> String {
        match self.design {
            DesignKind::Ado => self.utility.label().to_string(),
            _ => NO_UTILITY.to_string(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.reps == 0 {
            return Err(Error::Config("reps must be at least 1".into()));
        }
        if !self.specified.same_structure(&self.population) {
            return Err(Error::Shape(
                "specified prior and population resolve onto different models or grids".into(),
            ));
        }
        match self.design {
            DesignKind::Ado => {
                self.utility.validate_for(&self.specified)?;
                if self.candidates.is_empty() {
                    return Err(Error::Config("empty candidate list".into()));
                }
            }
            DesignKind::Random if self.candidates.is_empty() => {
                return Err(Error::Config("empty candidate list".into()));
            }
            DesignKind::Fixed => {
                let len = self.fixed_stimuli.len() * self.fixed_repeats;
                if len < self.trials {
                    return Err(Error::Config(format!(
                        "fixed schedule has {len} entries but {} trials were requested",
                        self.trials
                    )));
                }
            }
            _ => {}
        }
        if self.focus == FocusKind::Parameter && !self.specified.is_single_model() {
            return Err(Error::AmbiguousFocus(self.specified.models().len()));
        }
        if self.track_efd && self.focus == FocusKind::Joint {
            return Err(Error::UnsupportedFocus("EFD tracking with a joint focus".into()));
        }
        Ok(())
    }
}

/// Index of the true model and of its true grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroundTruth {
    pub model: usize,
    pub param: usize,
}

/// Draws `(m*, θ*)` from the population's model probabilities and grid masses.
pub fn sample_ground_truth<R: Rng + ?Sized>(pop: &JointBelief, rng: &mut R) -> Result<GroundTruth> {
    let mut pick = |w: &[f64]| {
        WeightedIndex::new(w)
            .map_err(|e| Error::InvalidDistribution(e.to_string()))
            .map(|d| d.sample(&mut *rng))
    };
    let model = pick(pop.model_probs().masses())?;
    let param = pick(pop.param_dist(model).masses())?;
    Ok(GroundTruth { model, param })
}

/// One line of a trial log. Trial 0 scores the prior before any data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub condition_id: String,
    pub design: DesignKind,
    pub utility_kind: String,
    pub prior_id: String,
    pub population_id: String,
    pub rep: usize,
    pub trial: usize,
    pub stimulus: Option<f64>,
    pub response: Option<f64>,
    pub utility: Option<f64>,
    pub true_model: String,
    pub true_params: Vec<f64>,
    #[serde(with = "ext_f64")]
    pub log_p_true: f64,
    pub p_true: f64,
    pub floored: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub efd: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snapshot: Option<BeliefSnapshot>,
}

/// Serializes non-finite floats as strings, since JSON has no infinity.
mod ext_f64 {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if v.is_nan() {
            s.serialize_str("nan")
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Text(t) => match t.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(serde::de::Error::custom(format!("bad float '{other}'"))),
            },
        }
    }
}

/// Probability of the true focus value under `b`, and whether it sits at the floor.
fn score(b: &JointBelief, truth: GroundTruth, focus: FocusKind) -> (f64, f64, bool) {
    let at_floor = |masses: &[f64], i: usize| {
        let top = masses.iter().copied().fold(0.0, f64::max);
        masses[i] > 0.0 && masses[i].ln() - top.ln() <= -LOG_FLOOR + 1e-6
    };
    let pm = b.model_probs().masses();
    let pp = b.param_dist(truth.model).masses();
    let (p, floored) = match focus {
        FocusKind::Model => (pm[truth.model], at_floor(pm, truth.model)),
        FocusKind::Parameter => (pp[truth.param], at_floor(pp, truth.param)),
        FocusKind::Joint => (
            pm[truth.model] * pp[truth.param],
            at_floor(pm, truth.model) || at_floor(pp, truth.param),
        ),
    };
    (p.ln(), p, floored)
}

/// Trial log and final floor count of one replication.
#[derive(Debug, Clone)]
pub struct Replication {
    pub records: Vec<TrialRecord>,
    pub floor_events: u64,
}

pub fn run_replication(cfg: &ExperimentConfig, rep: usize) -> Result<Replication> {
    cfg.validate()?;
    let r = rep as u64;
    let truth = sample_ground_truth(&cfg.population, &mut stream(cfg.seed, r, Purpose::GroundTruth))?;
    let mut responses_rng = stream(cfg.seed, r, Purpose::Responses);
    let mut selection_rng = stream(cfg.seed, r, Purpose::Selection);
    let policy = match cfg.design {
        DesignKind::Ado => DesignPolicy::Ado(cfg.utility),
        DesignKind::Random => DesignPolicy::Random,
        DesignKind::Fixed => DesignPolicy::Fixed(make_fixed_schedule(
            &cfg.fixed_stimuli,
            cfg.fixed_repeats,
            &mut stream(cfg.seed, r, Purpose::Schedule),
        )),
    };

    let true_model = cfg.population.models()[truth.model].clone();
    let true_params = true_model.grid()[truth.param].clone();
    let utility_kind = cfg.utility_label();
    let record = |trial, b: &JointBelief| {
        let (log_p_true, p_true, floored) = score(b, truth, cfg.focus);
        TrialRecord {
            condition_id: cfg.condition_id.clone(),
            design: cfg.design,
            utility_kind: utility_kind.clone(),
            prior_id: cfg.prior_id.clone(),
            population_id: cfg.population_id.clone(),
            rep,
            trial,
            stimulus: None,
            response: None,
            utility: None,
            true_model: true_model.id().to_string(),
            true_params: true_params.clone(),
            log_p_true,
            p_true,
            floored,
            efd: None,
            snapshot: cfg.snapshots.then(|| b.snapshot()),
        }
    };

    let mut belief = cfg.specified.clone();
    let mut history = Vec::with_capacity(cfg.trials);
    let mut records = Vec::with_capacity(cfg.trials + 1);
    records.push(record(0, &belief));
    for trial in 1..=cfg.trials {
        let sel = policy.select(trial - 1, &belief, &cfg.candidates, &mut selection_rng)?;
        let x = sel.stimulus;
        let efd = if cfg.track_efd {
            let pop = population_after(&cfg.population, &history, cfg.condition_population)?;
            Some(expected_focal_divergence(&belief, &pop, x, cfg.focus)?)
        } else {
            None
        };
        let s = true_model.stimulus_index(x)?;
        let row = true_model.row(s, truth.param);
        let r = WeightedIndex::new(row)
            .map_err(|e| Error::InvalidDistribution(e.to_string()))?
            .sample(&mut responses_rng);
        let y = true_model.responses()[r];
        belief = belief.update(x, y)?;
        history.push((x, y));
        let mut rec = record(trial, &belief);
        rec.stimulus = Some(x);
        rec.response = Some(y);
        rec.utility = sel.utility;
        rec.efd = efd;
        records.push(rec);
    }
    Ok(Replication {
        records,
        floor_events: belief.floor_events(),
    })
}

/// All replications of one or more cells, in cell then replication order.
#[derive(Debug, Clone, Default)]
pub struct BatchOutput {
    pub records: Vec<TrialRecord>,
    pub floor_events: u64,
}

/// Runs every replication of every cell in parallel and gathers them in order.
pub fn run_cells(cells: &[ExperimentConfig]) -> Result<BatchOutput> {
    for cell in cells {
        cell.validate()?;
    }
    let jobs: Vec<(usize, usize)> = cells
        .iter()
        .enumerate()
        .flat_map(|(c, cell)| (0..cell.reps).map(move |rep| (c, rep)))
        .collect();
    let reps = jobs
        .par_iter()
        .map(|&(c, rep)| {
            run_replication(&cells[c], rep).map_err(|e| Error::Replication {
                rep,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = BatchOutput::default();
    for r in reps {
        out.floor_events += r.floor_events;
        out.records.extend(r.records);
    }
    Ok(out)
}

pub fn run_batch(cfg: &ExperimentConfig) -> Result<BatchOutput> {
    run_cells(std::slice::from_ref(cfg))
}

/// Runs `f` on a pool with `workers` threads, or the global pool when `None`.
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(f()),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Error::Config(format!("worker pool: {e}"))),
    }
}

/// Mean and standard error of one metric over the replications of a group.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub condition_id: String,
    pub design: String,
    pub utility_kind: String,
    pub prior_id: String,
    pub population_id: String,
    pub trial: usize,
    pub mean_log_p_true: f64,
    pub se_log: f64,
    pub mean_p_true: f64,
    pub se_linear: f64,
    pub n_reps: usize,
}

impl SummaryRow {
    pub const HEADER: &'static str = "condition_id,design,utility_kind,prior_id,population_id,trial,mean_log_p_true,se_log,mean_p_true,se_linear,n_reps";
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryTable {
    pub rows: Vec<SummaryRow>,
    pub floored_records: usize,
    pub total_records: usize,
}

impl SummaryTable {
    /// More than one percent of records had the truth at the floor.
    pub fn flagged(&self) -> bool {
        self.total_records > 0
            && self.floored_records as f64 > FLOOR_FLAG_FRACTION * self.total_records as f64
    }

    pub fn find(&self, condition: &str, design: &str, utility: &str, prior: &str, population: &str, trial: usize) -> Option<&SummaryRow> {
        self.rows.iter().find(|r| {
            r.condition_id == condition
                && r.design == design
                && r.utility_kind == utility
                && r.prior_id == prior
                && r.population_id == population
                && r.trial == trial
        })
    }
}

/// Mean and standard error (sample sd over root n; zero for one value).
pub fn mean_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

type GroupKey = (String, String, String, String, String, usize);

/// Per-cell rows, then rows pooled over populations for every
/// `(condition, design, utility, prior)` seen with more than one population.
pub fn summarize(records: &[TrialRecord]) -> SummaryTable {
    let mut order: Vec<GroupKey> = Vec::new();
    let mut groups: HashMap<GroupKey, Vec<&TrialRecord>> = HashMap::new();
    let mut populations: HashMap<(String, String, String, String), Vec<String>> = HashMap::new();
    for rec in records {
        for pop in [rec.population_id.as_str(), POOLED] {
            let key = (
                rec.condition_id.clone(),
                rec.design.as_str().to_string(),
                rec.utility_kind.clone(),
                rec.prior_id.clone(),
                pop.to_string(),
                rec.trial,
            );
            groups
                .entry(key.clone())
                .or_insert_with(|| {
                    order.push(key);
                    Vec::new()
                })
                .push(rec);
        }
        let pops = populations
            .entry((
                rec.condition_id.clone(),
                rec.design.as_str().to_string(),
                rec.utility_kind.clone(),
                rec.prior_id.clone(),
            ))
            .or_default();
        if !pops.contains(&rec.population_id) {
            pops.push(rec.population_id.clone());
        }
    }
    let (cell_keys, pooled_keys): (Vec<GroupKey>, Vec<GroupKey>) =
        order.into_iter().partition(|k| k.4 != POOLED);
    let pooled_keys = pooled_keys.into_iter().filter(|k| {
        populations[&(k.0.clone(), k.1.clone(), k.2.clone(), k.3.clone())].len() > 1
    });
    let rows = cell_keys
        .into_iter()
        .chain(pooled_keys)
        .map(|key| {
            let mut recs = groups[&key].clone();
            recs.sort_by(|a, b| (&a.population_id, a.rep).cmp(&(&b.population_id, b.rep)));
            let logs: Vec<f64> = recs.iter().map(|r| r.log_p_true).collect();
            let lins: Vec<f64> = recs.iter().map(|r| r.p_true).collect();
            let (mean_log_p_true, se_log) = mean_se(&logs);
            let (mean_p_true, se_linear) = mean_se(&lins);
            let (condition_id, design, utility_kind, prior_id, population_id, trial) = key;
            SummaryRow {
                condition_id,
                design,
                utility_kind,
                prior_id,
                population_id,
                trial,
                mean_log_p_true,
                se_log,
                mean_p_true,
                se_linear,
                n_reps: recs.len(),
            }
        })
        .collect();
    SummaryTable {
        rows,
        floored_records: records.iter().filter(|r| r.floored).count(),
        total_records: records.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belief::Role;
    use crate::dist::{discretize_normal, DiscreteDist, Support};
    use crate::models::{irt_grid, ResponseFamily, ResponseModel};
    use std::sync::Arc;

    fn irt_belief(model: &Arc<ResponseModel>, mu: f64, sd: f64, role: Role) -> JointBelief {
        let d = discretize_normal(mu, sd, &irt_grid(31)).unwrap();
        let params = DiscreteDist::from_weights(model.grid().clone(), d.masses().to_vec()).unwrap();
        JointBelief::single(model.clone(), params, role).unwrap()
    }

    fn irt_cfg(design: DesignKind, spec_mu: f64, pop_mu: f64, reps: usize) -> ExperimentConfig {
        let model = Arc::new(ResponseModel::irt(31).unwrap());
        ExperimentConfig {
            condition_id: "c".into(),
            prior_id: "p".into(),
            population_id: "q".into(),
            specified: irt_belief(&model, spec_mu, 1.0, Role::Specified),
            population: irt_belief(&model, pop_mu, 1.0, Role::Population),
            design,
            utility: UtilityKind::MiParameter,
            candidates: irt_grid(31),
            fixed_stimuli: irt_grid(31),
            fixed_repeats: 1,
            trials: 31,
            reps,
            seed: 7,
            focus: FocusKind::Parameter,
            track_efd: false,
            condition_population: PopulationConvention::Fixed,
            snapshots: false,
        }
    }

    #[test]
    fn boundaries_are_rejected() {
        let mut cfg = irt_cfg(DesignKind::Ado, 0.0, 0.0, 1);
        cfg.trials = 0;
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));
        let mut cfg = irt_cfg(DesignKind::Ado, 0.0, 0.0, 1);
        cfg.reps = 0;
        assert!(cfg.validate().is_err());
        let mut cfg = irt_cfg(DesignKind::Fixed, 0.0, 0.0, 1);
        cfg.trials = 32;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn degenerate_population_fixes_truth() {
        let model = Arc::new(ResponseModel::irt(31).unwrap());
        let pop = JointBelief::single(
            model.clone(),
            DiscreteDist::point(model.grid().clone(), 12).unwrap(),
            Role::Population,
        )
        .unwrap();
        for rep in 0..20 {
            let t = sample_ground_truth(&pop, &mut stream(1, rep, Purpose::GroundTruth)).unwrap();
            assert_eq!(t, GroundTruth { model: 0, param: 12 });
        }
    }

    #[test]
    fn ground_truth_frequencies_match_masses() {
        let model = Arc::new(ResponseModel::irt(31).unwrap());
        let pop = irt_belief(&model, 0.5, 1.0, Role::Population);
        let mut rng = stream(5, 0, Purpose::GroundTruth);
        let n = 10_000;
        let mut counts = vec![0usize; 31];
        for _ in 0..n {
            counts[sample_ground_truth(&pop, &mut rng).unwrap().param] += 1;
        }
        for (c, &p) in counts.iter().zip(pop.param_dist(0).masses()) {
            let sd = (n as f64 * p * (1.0 - p)).sqrt();
            assert!((*c as f64 - n as f64 * p).abs() <= 3.0 * sd.max(1.0), "{c} vs {p}");
        }
    }

    #[derive(Debug)]
    struct Flat;
    impl ResponseFamily for Flat {
        fn id(&self) -> &str {
            "flat"
        }
        fn param_names(&self) -> &[&'static str] {
            &["k"]
        }
        fn responses(&self) -> &[f64] {
            &[0.0, 1.0]
        }
        fn response_probs(&self, _x: f64, _theta: &[f64], out: &mut [f64]) {
            out.fill(0.5);
        }
    }

    #[test]
    fn constant_likelihood_keeps_metric_constant() {
        let grid = Support::new((0..4).map(|k| vec![k as f64]).collect()).unwrap();
        let model = Arc::new(ResponseModel::new(Arc::new(Flat), vec![0.0, 1.0], grid).unwrap());
        let spec = JointBelief::single(
            model.clone(),
            DiscreteDist::from_weights(model.grid().clone(), vec![1.0, 2.0, 3.0, 4.0]).unwrap(),
            Role::Specified,
        )
        .unwrap();
        let mut cfg = irt_cfg(DesignKind::Random, 0.0, 0.0, 1);
        cfg.population = spec.clone().with_role(Role::Population);
        cfg.specified = spec;
        cfg.candidates = vec![0.0, 1.0];
        cfg.trials = 15;
        let recs = run_replication(&cfg, 0).unwrap().records;
        assert_eq!(recs.len(), 16);
        assert!(recs.iter().all(|r| (r.log_p_true - recs[0].log_p_true).abs() < 1e-12));
    }

    #[test]
    fn replication_is_deterministic_and_well_formed() {
        let mut cfg = irt_cfg(DesignKind::Ado, 0.0, 2.0, 3);
        cfg.track_efd = true;
        let a = run_replication(&cfg, 2).unwrap().records;
        let b = run_replication(&cfg, 2).unwrap().records;
        assert_eq!(a, b);
        assert_eq!(a[0].trial, 0);
        assert!(a[0].stimulus.is_none());
        for r in &a[1..] {
            assert!(r.stimulus.is_some() && r.utility.is_some() && r.efd.is_some());
            assert!((r.log_p_true - r.p_true.ln()).abs() < 1e-12);
        }
        let batch = run_batch(&cfg).unwrap();
        assert_eq!(&batch.records[64..], &a[..]);
    }

    #[test]
    fn fixed_design_shows_every_item_once() {
        let cfg = irt_cfg(DesignKind::Fixed, 0.0, 0.0, 1);
        let recs = run_replication(&cfg, 0).unwrap().records;
        let mut shown: Vec<f64> = recs[1..].iter().map(|r| r.stimulus.unwrap()).collect();
        shown.sort_by(f64::total_cmp);
        assert_eq!(shown, irt_grid(31));
    }

    #[test]
    fn records_round_trip_through_json() {
        let mut cfg = irt_cfg(DesignKind::Ado, 0.0, 2.0, 1);
        cfg.snapshots = true;
        let recs = run_replication(&cfg, 0).unwrap().records;
        for r in recs {
            let line = serde_json::to_string(&r).unwrap();
            assert_eq!(serde_json::from_str::<TrialRecord>(&line).unwrap(), r);
        }
        let mut r = run_replication(&irt_cfg(DesignKind::Ado, 0.0, 2.0, 1), 0).unwrap().records[0].clone();
        r.log_p_true = f64::NEG_INFINITY;
        let back: TrialRecord = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back.log_p_true, f64::NEG_INFINITY);
    }

    #[test]
    fn summary_statistics() {
        assert_eq!(mean_se(&[3.0]), (3.0, 0.0));
        let (m, se) = mean_se(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((se - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);

        let one = summarize(&run_batch(&irt_cfg(DesignKind::Fixed, 0.0, 0.0, 1)).unwrap().records);
        assert!(one.rows.iter().all(|r| r.n_reps == 1 && r.se_log == 0.0));
        assert_eq!(one.rows.len(), 32);
    }

    #[test]
    fn summary_matches_independent_replications_and_pools() {
        let a = irt_cfg(DesignKind::Ado, 0.0, 2.0, 4);
        let mut b = irt_cfg(DesignKind::Ado, 0.0, -2.0, 4);
        b.population_id = "q2".into();
        let out = run_cells(&[a.clone(), b.clone()]).unwrap();
        let table = summarize(&out.records);
        let last: Vec<f64> = (0..4)
            .map(|rep| run_replication(&a, rep).unwrap().records[31].log_p_true)
            .collect();
        let row = table.find("c", "ado", "mi-parameter", "p", "q", 31).unwrap();
        assert_eq!(row.mean_log_p_true, last.iter().sum::<f64>() / 4.0);
        let pooled = table.find("c", "ado", "mi-parameter", "p", POOLED, 31).unwrap();
        assert_eq!(pooled.n_reps, 8);
        assert_eq!(table.rows.len(), 32 * 3);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let cfg = irt_cfg(DesignKind::Ado, 0.0, 2.0, 6);
        let one = with_workers(Some(1), || run_batch(&cfg)).unwrap().unwrap();
        let four = with_workers(Some(4), || run_batch(&cfg)).unwrap().unwrap();
        assert_eq!(one.records, four.records);
    }
}
