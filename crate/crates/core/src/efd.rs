//! Expected focal divergence: how far responses drawn from the population are
//! expected to move the specified focus distribution, and its split into
//! response variability, surprisal and hindsight.

use serde::{Deserialize, Serialize};

use crate::belief::{FocusKind, JointBelief};
use crate::dist::{entropy_of, kl_of, DiscreteDist};
use crate::error::{Error, Result};
use crate::utility::mi_utility;

/// The three additive terms of the expected focal divergence, in nats.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EfdBreakdown {
    /// Entropy of the population response distribution.
    pub response_variability: f64,
    /// `KL(population responses || specified prior predictive)`.
    pub surprisal: f64,
    /// Expected posterior log likelihood of the responses; usually negative.
    pub hindsight: f64,
    pub total: f64,
}

/// Whether the population belief is conditioned on the observed history.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PopulationConvention {
    /// Population held at its initial value.
    #[default]
    Fixed,
    HistoryConditioned,
}

/// The population belief to use after `history` under `convention`.
pub fn population_after(
    pop: &JointBelief,
    history: &[(f64, f64)],
    convention: PopulationConvention,
) -> Result<JointBelief> {
    match convention {
        PopulationConvention::Fixed => Ok(pop.clone()),
        PopulationConvention::HistoryConditioned => history
            .iter()
            .try_fold(pop.clone(), |b, &(x, y)| b.update(x, y)),
    }
}

/// Distribution of responses to `x` across the population.
pub fn response_distribution(pop: &JointBelief, x: f64) -> Result<DiscreteDist<f64>> {
    pop.prior_predictive(x)
}

fn check_compatible(spec: &JointBelief, pop: &JointBelief, focus: FocusKind) -> Result<()> {
    if !spec.same_structure(pop) {
        return Err(Error::Shape(
            "specified and population beliefs use different models or grids".into(),
        ));
    }
    if focus == FocusKind::Joint {
        return Err(Error::UnsupportedFocus("joint".into()));
    }
    Ok(())
}

/// `Σ_y p0(y | x) KL(p1(φ | y, x) || p1(φ))`.
///
/// Returns `f64::INFINITY` if the population produces a response the specified
/// belief considers impossible.
pub fn expected_focal_divergence(
    spec: &JointBelief,
    pop: &JointBelief,
    x: f64,
    focus: FocusKind,
) -> Result<f64> {
    check_compatible(spec, pop, focus)?;
    let prior = spec.marginal(focus)?;
    let p0 = pop.prior_predictive(x)?;
    let p1 = spec.prior_predictive(x)?;
    let mut total = 0.0;
    for ((&y, w), &q) in p0.iter().zip(p1.masses()) {
        if w > 0.0 {
            if q <= 0.0 {
                return Ok(f64::INFINITY);
            }
            let post = spec.update(x, y)?;
            total += w * post.marginal(focus)?.kl_to(&prior)?;
        }
    }
    Ok(total)
}

/// Focus weights and their predictive rows under the specified belief.
fn focal_rows(spec: &JointBelief, x: f64, focus: FocusKind) -> Result<Vec<(f64, Vec<f64>)>> {
    match focus {
        FocusKind::Parameter => {
            if !spec.is_single_model() {
                return Err(Error::AmbiguousFocus(spec.models().len()));
            }
            let model = &spec.models()[0];
            let s = spec.model_predictives(x)?[0].stimulus;
            Ok(spec
                .param_dist(0)
                .masses()
                .iter()
                .enumerate()
                .map(|(t, &p)| (p, model.row(s, t).to_vec()))
                .collect())
        }
        FocusKind::Model => {
            let per_model = spec.model_predictives(x)?;
            Ok(spec
                .model_probs()
                .masses()
                .iter()
                .zip(per_model)
                .map(|(&p, pm)| (p, pm.focal))
                .collect())
        }
        FocusKind::Joint => Err(Error::UnsupportedFocus("joint".into())),
    }
}

/// Splits the expected focal divergence into its three terms using direct
/// Bayes-rule posteriors.
pub fn efd_decomposition(
    spec: &JointBelief,
    pop: &JointBelief,
    x: f64,
    focus: FocusKind,
) -> Result<EfdBreakdown> {
    check_compatible(spec, pop, focus)?;
    let p0 = pop.prior_predictive(x)?;
    let p1 = spec.prior_predictive(x)?;
    let rows = focal_rows(spec, x, focus)?;

    let response_variability = entropy_of(p0.masses());
    let surprisal = kl_of(p0.masses(), p1.masses());
    let mut hindsight = 0.0;
    for (r, (&w, &q)) in p0.masses().iter().zip(p1.masses()).enumerate() {
        if w <= 0.0 {
            continue;
        }
        if q <= 0.0 {
            hindsight = f64::NEG_INFINITY;
            break;
        }
        let inner: f64 = rows
            .iter()
            .filter(|(p, row)| *p > 0.0 && row[r] > 0.0)
            .map(|(p, row)| (p * row[r] / q) * row[r].ln())
            .sum();
        hindsight += w * inner;
    }
    Ok(EfdBreakdown {
        response_variability,
        surprisal,
        hindsight,
        total: response_variability + surprisal + hindsight,
    })
}

/// One stimulus of an EFD surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EfdRow {
    pub stimulus: f64,
    pub breakdown: EfdBreakdown,
    /// The specified belief's own utility for the same focus.
    pub global_utility: f64,
}

/// Decomposition and global utility at every candidate, from the initial beliefs.
pub fn efd_surface(
    spec: &JointBelief,
    pop: &JointBelief,
    candidates: &[f64],
    focus: FocusKind,
) -> Result<Vec<EfdRow>> {
    candidates
        .iter()
        .map(|&x| {
            Ok(EfdRow {
                stimulus: x,
                breakdown: efd_decomposition(spec, pop, x, focus)?,
                global_utility: mi_utility(spec, x, focus)?,
            })
        })
        .collect()
}

/// Evidence that population responses to `x` provide for `m1` over `m2`
/// under the specified parameter priors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvidenceSummary {
    /// `Σ_y p0(y | x) ln BF(m1, m2)`.
    pub expected_log_bf: f64,
    /// Population mass of responses with `BF(m1, m2) < 1`.
    pub mass_favoring_m2: f64,
}

pub fn expected_log_bayes_factor(
    spec: &JointBelief,
    pop: &JointBelief,
    x: f64,
    m1: &str,
    m2: &str,
) -> Result<EvidenceSummary> {
    if !spec.same_structure(pop) {
        return Err(Error::Shape(
            "specified and population beliefs use different models or grids".into(),
        ));
    }
    let p0 = pop.prior_predictive(x)?;
    let mut expected_log_bf = 0.0;
    let mut mass_favoring_m2 = 0.0;
    for (&y, w) in p0.iter() {
        if w > 0.0 {
            let bf = spec.bayes_factor(x, y, m1, m2)?;
            expected_log_bf += w * bf.ln();
            if bf < 1.0 {
                mass_favoring_m2 += w;
            }
        }
    }
    Ok(EvidenceSummary {
        expected_log_bf,
        mass_favoring_m2,
    })
}
