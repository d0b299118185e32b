//! Finite discrete distributions and the information measures built on them.
//!
//! All quantities are in nats. Supports are validated once and shared, so that
//! distributions produced by repeated Bayesian updates can be compared for
//! alignment by pointer before falling back to atomwise equality.

use std::ops::Deref;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Tolerance on the total mass of a constructed distribution.
pub const MASS_TOLERANCE: f64 = 1e-12;

/// An ordered, non-empty, duplicate-free list of atoms.
#[derive(Debug)]
pub struct Support<A>(Arc<[A]>);

impl<A> Clone for Support<A> {
    fn clone(&self) -> Self {
        Support(Arc::clone(&self.0))
    }
}

impl<A: PartialEq> Support<A> {
    pub fn new(atoms: Vec<A>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidDistribution("empty support".into()));
        }
        for (i, a) in atoms.iter().enumerate() {
            if atoms[..i].contains(a) {
                return Err(Error::InvalidDistribution(format!(
                    "duplicate atom at position {i}"
                )));
            }
        }
        Ok(Support(atoms.into()))
    }

    /// Same atoms in the same order.
    pub fn aligned(&self, other: &Support<A>) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0[..] == other.0[..]
    }

    pub fn position(&self, atom: &A) -> Option<usize> {
        self.0.iter().position(|a| a == atom)
    }
}

impl<A> Deref for Support<A> {
    type Target = [A];
    fn deref(&self) -> &[A] {
        &self.0
    }
}

/// Probability masses over a finite support.
#[derive(Debug, Clone)]
pub struct DiscreteDist<A> {
    support: Support<A>,
    mass: Vec<f64>,
}

impl<A: PartialEq> DiscreteDist<A> {
    /// Normalizes non-negative weights onto a validated support.
    pub fn from_weights(support: Support<A>, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != support.len() {
            return Err(Error::Shape(format!(
                "{} weights for {} atoms",
                weights.len(),
                support.len()
            )));
        }
        let mass = normalize_weights(weights)?;
        Ok(DiscreteDist { support, mass })
    }

    pub fn uniform(support: Support<A>) -> Self {
        let n = support.len();
        DiscreteDist {
            support,
            mass: vec![1.0 / n as f64; n],
        }
    }

    /// Point mass on the atom at `index`.
    pub fn point(support: Support<A>, index: usize) -> Result<Self> {
        if index >= support.len() {
            return Err(Error::Shape(format!(
                "index {index} outside support of {}",
                support.len()
            )));
        }
        let mut mass = vec![0.0; support.len()];
        mass[index] = 1.0;
        Ok(DiscreteDist { support, mass })
    }

    pub fn mass_of(&self, atom: &A) -> Option<f64> {
        self.support.position(atom).map(|i| self.mass[i])
    }

    fn check_aligned(&self, other: &DiscreteDist<A>) -> Result<()> {
        if self.support.aligned(&other.support) {
            Ok(())
        } else {
            Err(Error::Shape("distributions have different supports".into()))
        }
    }
}

impl<A> DiscreteDist<A> {
    /// Masses already known to be normalized and aligned with `support`.
    pub(crate) fn from_normalized(support: Support<A>, mass: Vec<f64>) -> Self {
        debug_assert_eq!(support.len(), mass.len());
        debug_assert!((mass.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        DiscreteDist { support, mass }
    }

    pub fn support(&self) -> &Support<A> {
        &self.support
    }

    pub fn masses(&self) -> &[f64] {
        &self.mass
    }

    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&A, f64)> + '_ {
        self.support.iter().zip(self.mass.iter().copied())
    }

    pub fn is_degenerate(&self) -> bool {
        self.mass.iter().filter(|&&p| p > 0.0).count() == 1
    }
}

/// Masses proportional to `weights`.
pub fn normalize(weights: &[f64]) -> Result<DiscreteDist<usize>> {
    if weights.is_empty() {
        return Err(Error::InvalidDistribution("empty support".into()));
    }
    let support = Support((0..weights.len()).collect::<Vec<_>>().into());
    DiscreteDist::from_weights(support, weights.to_vec())
}

pub(crate) fn normalize_weights(mut weights: Vec<f64>) -> Result<Vec<f64>> {
    if let Some(bad) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
        return Err(Error::InvalidDistribution(format!(
            "weight {bad} is not a finite non-negative number"
        )));
    }
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return Err(Error::InvalidDistribution("all weights are zero".into()));
    }
    for w in &mut weights {
        *w /= total;
    }
    Ok(weights)
}

/// Shannon entropy, `-Σ p ln p` with `0 ln 0 = 0`.
pub fn entropy<A>(d: &DiscreteDist<A>) -> f64 {
    entropy_of(&d.mass)
}

/// `Σ p ln(p/q)`. Returns `f64::INFINITY` when `p` puts mass where `q` has none.
pub fn kl_divergence<A: PartialEq>(p: &DiscreteDist<A>, q: &DiscreteDist<A>) -> Result<f64> {
    p.check_aligned(q)?;
    Ok(kl_of(&p.mass, &q.mass))
}

/// `-Σ p ln q`; equals `entropy(p) + kl_divergence(p, q)`.
pub fn cross_entropy<A: PartialEq>(p: &DiscreteDist<A>, q: &DiscreteDist<A>) -> Result<f64> {
    p.check_aligned(q)?;
    Ok(cross_entropy_of(&p.mass, &q.mass))
}

pub(crate) fn entropy_of(p: &[f64]) -> f64 {
    let h: f64 = p
        .iter()
        .filter(|&&pi| pi > 0.0)
        .map(|&pi| -pi * pi.ln())
        .sum();
    h.max(0.0)
}

pub(crate) fn kl_of(p: &[f64], q: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (&pi, &qi) in p.iter().zip(q) {
        if pi > 0.0 {
            if qi <= 0.0 {
                return f64::INFINITY;
            }
            acc += pi * (pi / qi).ln();
        }
    }
    acc.max(0.0)
}

pub(crate) fn cross_entropy_of(p: &[f64], q: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (&pi, &qi) in p.iter().zip(q) {
        if pi > 0.0 {
            if qi <= 0.0 {
                return f64::INFINITY;
            }
            acc -= pi * qi.ln();
        }
    }
    acc
}

/// Unnormalized normal density at each point.
pub fn normal_weights(mu: f64, sigma: f64, points: &[f64]) -> Result<Vec<f64>> {
    if !(sigma > 0.0 && sigma.is_finite()) || !mu.is_finite() {
        return Err(Error::Parameter(format!(
            "normal({mu}, {sigma}) needs finite mu and sigma > 0"
        )));
    }
    Ok(points
        .iter()
        .map(|&x| {
            let z = (x - mu) / sigma;
            (-0.5 * z * z).exp()
        })
        .collect())
}

/// Unnormalized Beta density at each point of (0, 1), rescaled so the largest weight is 1.
pub fn beta_weights(alpha: f64, beta: f64, points: &[f64]) -> Result<Vec<f64>> {
    if !(alpha > 0.0 && beta > 0.0 && alpha.is_finite() && beta.is_finite()) {
        return Err(Error::Parameter(format!(
            "beta({alpha}, {beta}) needs positive shape parameters"
        )));
    }
    if let Some(x) = points.iter().find(|&&x| !(x > 0.0 && x < 1.0)) {
        return Err(Error::Parameter(format!(
            "beta density evaluated outside (0, 1) at {x}"
        )));
    }
    let logs: Vec<f64> = points
        .iter()
        .map(|&x| (alpha - 1.0) * x.ln() + (beta - 1.0) * (1.0 - x).ln())
        .collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(logs.into_iter().map(|l| (l - top).exp()).collect())
}

/// Normal density evaluated at grid points and renormalized.
pub fn discretize_normal(mu: f64, sigma: f64, grid: &[f64]) -> Result<DiscreteDist<f64>> {
    if grid.is_empty() || grid.windows(2).any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less)) {
        return Err(Error::Parameter(
            "grid must be non-empty and strictly increasing".into(),
        ));
    }
    let weights = normal_weights(mu, sigma, grid)?;
    DiscreteDist::from_weights(Support::new(grid.to_vec())?, weights)
}

/// Cell midpoints `(k + 0.5) / n` on the unit interval.
pub fn unit_midpoints(n_cells: usize) -> Vec<f64> {
    (0..n_cells)
        .map(|k| (k as f64 + 0.5) / n_cells as f64)
        .collect()
}

/// Beta density at the `n_cells` unit-interval midpoints, renormalized.
pub fn discretize_beta(alpha: f64, beta: f64, n_cells: usize) -> Result<DiscreteDist<f64>> {
    if n_cells < 2 {
        return Err(Error::Parameter("need at least two cells".into()));
    }
    let grid = unit_midpoints(n_cells);
    let weights = beta_weights(alpha, beta, &grid)?;
    DiscreteDist::from_weights(Support::new(grid)?, weights)
}
