//! Global utilities of a candidate stimulus under the specified belief.
//!
//! Mutual-information utilities are computed as `H(Y | x) - E_φ H(Y | x, φ)`
//! from tabulated row entropies. [`mi_utility_via_kl`] takes the other route,
//! averaging the focal divergence of actual posterior updates, and serves as an
//! independent check on the first.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::belief::{FocusKind, JointBelief};
use crate::dist::entropy_of;
use crate::error::{Error, Result};

/// Which global utility ADO maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UtilityKind {
    MiParameter,
    MiModel,
    TotalEntropy,
    /// Mutual information with `focus` plus `weight` times the predictive entropy.
    Ucb { focus: FocusKind, weight: f64 },
}

impl UtilityKind {
    pub fn label(&self) -> &'static str {
        match self {
            UtilityKind::MiParameter => "mi-parameter",
            UtilityKind::MiModel => "mi-model",
            UtilityKind::TotalEntropy => "total-entropy",
            UtilityKind::Ucb { .. } => "ucb",
        }
    }

    pub fn focus(&self) -> FocusKind {
        match self {
            UtilityKind::MiParameter => FocusKind::Parameter,
            UtilityKind::MiModel => FocusKind::Model,
            UtilityKind::TotalEntropy => FocusKind::Joint,
            UtilityKind::Ucb { focus, .. } => *focus,
        }
    }

    /// Checks the kind can be evaluated on `belief`.
    pub fn validate_for(&self, belief: &JointBelief) -> Result<()> {
        match self.focus() {
            FocusKind::Parameter if !belief.is_single_model() => {
                Err(Error::AmbiguousFocus(belief.models().len()))
            }
            FocusKind::Joint if !matches!(self, UtilityKind::TotalEntropy) => {
                Err(Error::UnsupportedFocus("joint".into()))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for UtilityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// `I(Φ; Y | x)` for a parameter or model focus.
pub fn mi_utility(b: &JointBelief, x: f64, focus: FocusKind) -> Result<f64> {
    let per_model = b.model_predictives(x)?;
    let h_y = entropy_of(&b.mixture(&per_model));
    let conditional = match focus {
        FocusKind::Parameter => {
            if !b.is_single_model() {
                return Err(Error::AmbiguousFocus(b.models().len()));
            }
            per_model[0].mean_row_entropy
        }
        FocusKind::Model => per_model
            .iter()
            .zip(b.model_probs().masses())
            .filter(|(_, &w)| w > 0.0)
            .map(|(pm, &w)| w * entropy_of(&pm.focal))
            .sum(),
        FocusKind::Joint => {
            return Err(Error::UnsupportedFocus(
                "joint focus; use total_entropy_utility".into(),
            ))
        }
    };
    Ok((h_y - conditional).max(0.0))
}

/// `Σ_y p(y | x) KL(p(φ | y, x) || p(φ))`, evaluated through posterior updates.
pub fn mi_utility_via_kl(b: &JointBelief, x: f64, focus: FocusKind) -> Result<f64> {
    if focus == FocusKind::Joint {
        return Err(Error::UnsupportedFocus(
            "joint focus; use total_entropy_utility".into(),
        ));
    }
    let prior = b.marginal(focus)?;
    let predictive = b.prior_predictive(x)?;
    let mut total = 0.0;
    for (&y, py) in predictive.iter() {
        if py > 0.0 {
            let post = b.update(x, y)?;
            total += py * post.marginal(focus)?.kl_to(&prior)?;
        }
    }
    Ok(total)
}

/// Mutual information between the joint `(m, θ)` state and the response.
///
/// On a single-model belief this reduces to the parameter-focus utility.
pub fn total_entropy_utility(b: &JointBelief, x: f64) -> Result<f64> {
    if b.is_single_model() {
        log::warn!("total entropy utility on a single-model belief reduces to mi-parameter");
    }
    let per_model = b.model_predictives(x)?;
    let h_y = entropy_of(&b.mixture(&per_model));
    let conditional: f64 = per_model
        .iter()
        .zip(b.model_probs().masses())
        .filter(|(_, &w)| w > 0.0)
        .map(|(pm, &w)| w * pm.mean_row_entropy)
        .sum();
    Ok((h_y - conditional).max(0.0))
}

/// Mutual information plus predictive entropy.
pub fn ucb_utility(b: &JointBelief, x: f64, focus: FocusKind) -> Result<f64> {
    ucb_utility_weighted(b, x, focus, 1.0)
}

/// Mutual information plus `weight` times the predictive entropy.
pub fn ucb_utility_weighted(b: &JointBelief, x: f64, focus: FocusKind, weight: f64) -> Result<f64> {
    let mi = mi_utility(b, x, focus)?;
    let h_y = entropy_of(b.prior_predictive(x)?.masses());
    Ok(mi + weight * h_y)
}

/// Evaluates `kind` at stimulus `x`.
pub fn evaluate(b: &JointBelief, x: f64, kind: UtilityKind) -> Result<f64> {
    match kind {
        UtilityKind::MiParameter => mi_utility(b, x, FocusKind::Parameter),
        UtilityKind::MiModel => mi_utility(b, x, FocusKind::Model),
        UtilityKind::TotalEntropy => total_entropy_utility(b, x),
        UtilityKind::Ucb { focus, weight } => ucb_utility_weighted(b, x, focus, weight),
    }
}

/// Utility of every candidate, in candidate order.
pub fn surface(b: &JointBelief, candidates: &[f64], kind: UtilityKind) -> Result<Vec<f64>> {
    candidates.iter().map(|&x| evaluate(b, x, kind)).collect()
}
