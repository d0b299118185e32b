//! Likelihood families with finite response sets.
//!
//! A [`ResponseFamily`] maps a stimulus and a parameter point to a probability
//! row over its responses. [`ResponseModel`] binds a family to a stimulus space
//! and a parameter grid and tabulates every row once, together with the row's
//! log probabilities and entropy, so utilities and updates never re-evaluate
//! the likelihood formula.

use std::fmt;
use std::sync::Arc;

use crate::dist::{entropy_of, unit_midpoints, Support};
use crate::error::{Error, Result};

/// A point in a model's parameter space.
pub type ParamPoint = Vec<f64>;

/// Item discrimination of the one-parameter IRT model.
pub const IRT_DISCRIMINATION: f64 = 2.72;
/// Lower asymptote of the IRT model (guessing on a five-alternative item).
pub const IRT_GUESS_FLOOR: f64 = 0.2;
/// Standard deviation of responses under Gaussian toy Model A.
pub const GAUSS_A_SD: f64 = 10.0;
/// Standard deviation of responses under Gaussian toy Model B.
pub const GAUSS_B_SD: f64 = 11.0;
/// Retention delays of the benchmark fixed design, in seconds.
pub const RETENTION_FIXED_DELAYS: [f64; 10] = [0.0, 1.0, 2.0, 4.0, 7.0, 12.0, 21.0, 35.0, 59.0, 99.0];

const STIMULUS_MATCH_TOLERANCE: f64 = 1e-9;
const ROW_SUM_TOLERANCE: f64 = 1e-12;

/// Probability of a correct response to an item of difficulty `x` at proficiency `theta`.
pub fn irt_likelihood(x: f64, theta: f64) -> f64 {
    IRT_GUESS_FLOOR
        + (1.0 - IRT_GUESS_FLOOR) / (1.0 + (-IRT_DISCRIMINATION * (theta - x)).exp())
}

/// Power-law retention: probability of recall after `x` seconds.
pub fn pow_likelihood(x: f64, a: f64, b: f64) -> f64 {
    a * (x + 1.0).powf(-b)
}

/// Exponential retention: probability of recall after `x` seconds.
pub fn exp_likelihood(x: f64, a: f64, b: f64) -> f64 {
    a * (-b * x).exp()
}

/// The two models of the Gaussian toy comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaussianModel {
    A,
    B,
}

impl GaussianModel {
    pub fn sd(self) -> f64 {
        match self {
            GaussianModel::A => GAUSS_A_SD,
            GaussianModel::B => GAUSS_B_SD,
        }
    }
}

/// Integer bin centers `-half..=half`.
pub fn integer_bins(half: i32) -> Vec<f64> {
    (-half..=half).map(f64::from).collect()
}

/// Default response bins of the Gaussian toy: integer centers -40..40.
pub fn default_gauss_bins() -> Vec<f64> {
    integer_bins(40)
}

/// Mass of the bin centered at `y_bin` under `model` with mean `mu`, on the default bins.
/// Returns 0 for a value that is not a bin center.
pub fn gaussian_pair_likelihood(model: GaussianModel, mu: f64, y_bin: f64) -> f64 {
    let bins = default_gauss_bins();
    let row = gaussian_bin_row(model.sd(), mu, &bins);
    bins.iter()
        .position(|&b| (b - y_bin).abs() < STIMULUS_MATCH_TOLERANCE)
        .map_or(0.0, |i| row[i])
}

fn gaussian_bin_row(sd: f64, mu: f64, bins: &[f64]) -> Vec<f64> {
    let mut row: Vec<f64> = bins
        .iter()
        .map(|&y| {
            let z = (y - mu) / sd;
            (-0.5 * z * z).exp()
        })
        .collect();
    let total: f64 = row.iter().sum();
    for p in &mut row {
        *p /= total;
    }
    row
}

/// A likelihood family over a finite response set.
pub trait ResponseFamily: Send + Sync + fmt::Debug {
    /// Identifier used in configs and outputs.
    fn id(&self) -> &str;

    fn param_names(&self) -> &[&'static str];

    /// Ordered response atoms.
    fn responses(&self) -> &[f64];

    /// Writes `p(y | x, theta)` for every response into `out`.
    fn response_probs(&self, x: f64, theta: &[f64], out: &mut [f64]);
}

fn binary(out: &mut [f64], p_one: f64) {
    out[0] = 1.0 - p_one;
    out[1] = p_one;
}

const BINARY: [f64; 2] = [0.0, 1.0];

/// One-parameter IRT with a guessing floor. Parameter: `theta`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Irt;

impl ResponseFamily for Irt {
    fn id(&self) -> &str {
        "irt"
    }
    fn param_names(&self) -> &[&'static str] {
        &["theta"]
    }
    fn responses(&self) -> &[f64] {
        &BINARY
    }
    fn response_probs(&self, x: f64, theta: &[f64], out: &mut [f64]) {
        binary(out, irt_likelihood(x, theta[0]));
    }
}

/// Power-law forgetting curve. Parameters: `a`, `b`.
#[derive(Debug, Clone, Copy, Default)]
pub struct PowerRetention;

impl ResponseFamily for PowerRetention {
    fn id(&self) -> &str {
        "pow"
    }
    fn param_names(&self) -> &[&'static str] {
        &["a", "b"]
    }
    fn responses(&self) -> &[f64] {
        &BINARY
    }
    fn response_probs(&self, x: f64, theta: &[f64], out: &mut [f64]) {
        binary(out, pow_likelihood(x, theta[0], theta[1]));
    }
}

/// Exponential forgetting curve. Parameters: `a`, `b`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExpRetention;

impl ResponseFamily for ExpRetention {
    fn id(&self) -> &str {
        "exp"
    }
    fn param_names(&self) -> &[&'static str] {
        &["a", "b"]
    }
    fn responses(&self) -> &[f64] {
        &BINARY
    }
    fn response_probs(&self, x: f64, theta: &[f64], out: &mut [f64]) {
        binary(out, exp_likelihood(x, theta[0], theta[1]));
    }
}

/// Normal responses with mean `mu`, binned onto fixed centers and renormalized.
/// The stimulus is ignored.
#[derive(Debug, Clone)]
pub struct GaussianBins {
    id: &'static str,
    sd: f64,
    bins: Vec<f64>,
}

impl GaussianBins {
    pub fn new(model: GaussianModel, bins: Vec<f64>) -> Self {
        let id = match model {
            GaussianModel::A => "gauss-a",
            GaussianModel::B => "gauss-b",
        };
        GaussianBins {
            id,
            sd: model.sd(),
            bins,
        }
    }
}

impl ResponseFamily for GaussianBins {
    fn id(&self) -> &str {
        self.id
    }
    fn param_names(&self) -> &[&'static str] {
        &["mu"]
    }
    fn responses(&self) -> &[f64] {
        &self.bins
    }
    fn response_probs(&self, _x: f64, theta: &[f64], out: &mut [f64]) {
        out.copy_from_slice(&gaussian_bin_row(self.sd, theta[0], &self.bins));
    }
}

/// Model identifiers accepted in configs.
pub const BUILTIN_MODEL_IDS: [&str; 5] = ["irt", "pow", "exp", "gauss-a", "gauss-b"];

/// Looks up a built-in family by identifier. Gaussian families use `gauss_bins`.
pub fn builtin_family(id: &str, gauss_bins: &[f64]) -> Result<Arc<dyn ResponseFamily>> {
    Ok(match id {
        "irt" => Arc::new(Irt),
        "pow" => Arc::new(PowerRetention),
        "exp" => Arc::new(ExpRetention),
        "gauss-a" => Arc::new(GaussianBins::new(GaussianModel::A, gauss_bins.to_vec())),
        "gauss-b" => Arc::new(GaussianBins::new(GaussianModel::B, gauss_bins.to_vec())),
        other => {
            return Err(Error::Config(format!(
                "unknown model '{other}' (expected one of {})",
                BUILTIN_MODEL_IDS.join(", ")
            )))
        }
    })
}

/// `n` equally spaced points from -3 to 3.
pub fn irt_grid(n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.0];
    }
    (0..n)
        .map(|i| 3.0 * (2.0 * i as f64 - (n - 1) as f64) / (n - 1) as f64)
        .collect()
}

/// Product of unit-interval midpoint grids for `(a, b)`, `a` varying slowest.
pub fn retention_grid(cells: usize) -> Vec<ParamPoint> {
    let axis = unit_midpoints(cells);
    axis.iter()
        .flat_map(|&a| axis.iter().map(move |&b| vec![a, b]))
        .collect()
}

/// Integer delays `0..=100`.
pub fn retention_candidates() -> Vec<f64> {
    (0..=100).map(f64::from).collect()
}

/// A family bound to a stimulus space and parameter grid, with tabulated rows.
pub struct ResponseModel {
    family: Arc<dyn ResponseFamily>,
    stimuli: Vec<f64>,
    grid: Support<ParamPoint>,
    responses: Support<f64>,
    probs: Vec<f64>,
    log_probs: Vec<f64>,
    entropies: Vec<f64>,
}

impl fmt::Debug for ResponseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ResponseModel")
            .field("id", &self.id())
            .field("stimuli", &self.stimuli.len())
            .field("grid", &self.grid.len())
            .field("responses", &self.responses.len())
            .finish()
    }
}

impl ResponseModel {
    /// Tabulates `family` over every stimulus and grid point, checking each row
    /// is a probability distribution.
    pub fn new(
        family: Arc<dyn ResponseFamily>,
        stimuli: Vec<f64>,
        grid: Support<ParamPoint>,
    ) -> Result<Self> {
        if stimuli.is_empty() {
            return Err(Error::Shape("empty stimulus space".into()));
        }
        let n_params = family.param_names().len();
        if let Some(bad) = grid.iter().find(|p| p.len() != n_params) {
            return Err(Error::Shape(format!(
                "model '{}' expects {n_params} parameters, grid point has {}",
                family.id(),
                bad.len()
            )));
        }
        let responses = Support::new(family.responses().to_vec())?;
        let n_resp = responses.len();
        let n_cells = stimuli.len() * grid.len();
        let mut probs = vec![0.0; n_cells * n_resp];
        for (s, &x) in stimuli.iter().enumerate() {
            for (t, theta) in grid.iter().enumerate() {
                let start = (s * grid.len() + t) * n_resp;
                let row = &mut probs[start..start + n_resp];
                family.response_probs(x, theta, row);
                let total: f64 = row.iter().sum();
                if row.iter().any(|p| !(0.0..=1.0).contains(p))
                    || (total - 1.0).abs() > ROW_SUM_TOLERANCE
                {
                    return Err(Error::Parameter(format!(
                        "model '{}' gives an invalid response row at x = {x}, theta = {theta:?}",
                        family.id()
                    )));
                }
            }
        }
        let log_probs = probs.iter().map(|p| p.ln()).collect();
        let entropies = probs.chunks_exact(n_resp).map(entropy_of).collect();
        Ok(ResponseModel {
            family,
            stimuli,
            grid,
            responses,
            probs,
            log_probs,
            entropies,
        })
    }

    /// IRT on `points` equally spaced proficiencies, with the same points as stimuli.
    pub fn irt(points: usize) -> Result<Self> {
        let grid = irt_grid(points);
        let support = Support::new(grid.iter().map(|&t| vec![t]).collect())?;
        ResponseModel::new(Arc::new(Irt), grid, support)
    }

    pub fn id(&self) -> &str {
        self.family.id()
    }

    pub fn family(&self) -> &Arc<dyn ResponseFamily> {
        &self.family
    }

    pub fn param_names(&self) -> &[&'static str] {
        self.family.param_names()
    }

    pub fn stimuli(&self) -> &[f64] {
        &self.stimuli
    }

    pub fn grid(&self) -> &Support<ParamPoint> {
        &self.grid
    }

    pub fn responses(&self) -> &Support<f64> {
        &self.responses
    }

    pub fn n_responses(&self) -> usize {
        self.responses.len()
    }

    pub fn stimulus_index(&self, x: f64) -> Result<usize> {
        self.stimuli
            .iter()
            .position(|&s| (s - x).abs() <= STIMULUS_MATCH_TOLERANCE)
            .ok_or_else(|| {
                Error::Shape(format!(
                    "stimulus {x} is outside the stimulus space of model '{}'",
                    self.id()
                ))
            })
    }

    pub fn response_index(&self, y: f64) -> Result<usize> {
        self.responses
            .iter()
            .position(|&r| (r - y).abs() <= STIMULUS_MATCH_TOLERANCE)
            .ok_or_else(|| {
                Error::Shape(format!(
                    "response {y} is not in the response set of model '{}'",
                    self.id()
                ))
            })
    }

    /// `p(. | x_s, theta_t)` as a slice over responses.
    pub fn row(&self, s: usize, t: usize) -> &[f64] {
        let n = self.responses.len();
        let start = (s * self.grid.len() + t) * n;
        &self.probs[start..start + n]
    }

    pub fn log_row(&self, s: usize, t: usize) -> &[f64] {
        let n = self.responses.len();
        let start = (s * self.grid.len() + t) * n;
        &self.log_probs[start..start + n]
    }

    /// Entropy of the row at `(s, t)`.
    pub fn row_entropy(&self, s: usize, t: usize) -> f64 {
        self.entropies[s * self.grid.len() + t]
    }

    /// `p(y | x, theta)` for values on the model's stimulus, grid and response sets.
    pub fn likelihood(&self, x: f64, theta: &[f64], y: f64) -> Result<f64> {
        let s = self.stimulus_index(x)?;
        let t = self
            .grid
            .iter()
            .position(|p| p[..] == *theta)
            .ok_or_else(|| Error::Lookup(format!("{theta:?} is not a grid point")))?;
        let r = self.response_index(y)?;
        Ok(self.row(s, t)[r])
    }
}
