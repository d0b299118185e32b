//! Stimulus selection: greedy ADO, shuffled fixed schedules and uniform random
//! choice.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::belief::JointBelief;
use crate::error::{Error, Result};
use crate::utility::{evaluate, UtilityKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DesignKind {
    Ado,
    Fixed,
    Random,
}

impl DesignKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DesignKind::Ado => "ado",
            DesignKind::Fixed => "fixed",
            DesignKind::Random => "random",
        }
    }
}

/// A chosen stimulus, with the utility that won it when there was one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Selection {
    pub index: usize,
    pub stimulus: f64,
    pub utility: Option<f64>,
}

/// Index of the first maximum. NaN never wins.
pub fn argmax_first(values: &[f64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &v) in values.iter().enumerate() {
        if v.is_nan() {
            continue;
        }
        match best {
            Some((_, b)) if v <= b => {}
            _ => best = Some((i, v)),
        }
    }
    best.map(|(i, _)| i)
}

/// The candidate with the highest utility under `b`; ties go to the lowest index.
pub fn ado_select(b: &JointBelief, candidates: &[f64], kind: UtilityKind) -> Result<Selection> {
    if candidates.is_empty() {
        return Err(Error::Config("empty candidate list".into()));
    }
    let values = candidates
        .par_iter()
        .map(|&x| evaluate(b, x, kind))
        .collect::<Result<Vec<f64>>>()?;
    let index = argmax_first(&values)
        .ok_or_else(|| Error::Config("no candidate has a finite utility".into()))?;
    Ok(Selection {
        index,
        stimulus: candidates[index],
        utility: Some(values[index]),
    })
}

/// Each stimulus `repeats` times, in shuffled order.
pub fn make_fixed_schedule<R: Rng + ?Sized>(stimuli: &[f64], repeats: usize, rng: &mut R) -> Vec<f64> {
    let mut schedule: Vec<f64> = stimuli
        .iter()
        .flat_map(|&x| std::iter::repeat_n(x, repeats))
        .collect();
    schedule.shuffle(rng);
    schedule
}

pub fn random_select<R: Rng + ?Sized>(candidates: &[f64], rng: &mut R) -> Result<Selection> {
    if candidates.is_empty() {
        return Err(Error::Config("empty candidate list".into()));
    }
    let index = rng.gen_range(0..candidates.len());
    Ok(Selection {
        index,
        stimulus: candidates[index],
        utility: None,
    })
}

/// A design method as used within one replication.
#[derive(Debug, Clone, PartialEq)]
pub enum DesignPolicy {
    Ado(UtilityKind),
    Fixed(Vec<f64>),
    Random,
}

impl DesignPolicy {
    pub fn kind(&self) -> DesignKind {
        match self {
            DesignPolicy::Ado(_) => DesignKind::Ado,
            DesignPolicy::Fixed(_) => DesignKind::Fixed,
            DesignPolicy::Random => DesignKind::Random,
        }
    }

    /// The stimulus for zero-based `trial`.
    pub fn select<R: Rng + ?Sized>(
        &self,
        trial: usize,
        b: &JointBelief,
        candidates: &[f64],
        rng: &mut R,
    ) -> Result<Selection> {
        match self {
            DesignPolicy::Ado(kind) => ado_select(b, candidates, *kind),
            DesignPolicy::Fixed(schedule) => {
                let stimulus = *schedule.get(trial).ok_or_else(|| {
                    Error::Config(format!(
                        "fixed schedule has {} entries, trial {} requested",
                        schedule.len(),
                        trial + 1
                    ))
                })?;
                Ok(Selection {
                    index: trial,
                    stimulus,
                    utility: None,
                })
            }
            DesignPolicy::Random => random_select(candidates, rng),
        }
    }
}
