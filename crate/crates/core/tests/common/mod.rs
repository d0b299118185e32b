//! Random beliefs over every built-in family, shared by the integration tests.

#![allow(dead_code)]

use std::sync::Arc;

use ado_core::belief::{FocusKind, JointBelief, Role};
use ado_core::dist::{DiscreteDist, Support};
use ado_core::models::{
    builtin_family, default_gauss_bins, integer_bins, irt_grid, retention_grid, ResponseModel,
};
use rand::Rng;

pub fn config_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("examples/configs")
        .join(name)
}

/// Models for one family group, sharing stimuli and response sets.
pub struct Family {
    pub name: &'static str,
    pub models: Vec<Arc<ResponseModel>>,
}

fn model(id: &str, stimuli: Vec<f64>, grid: Vec<Vec<f64>>) -> Arc<ResponseModel> {
    let fam = builtin_family(id, &default_gauss_bins()).unwrap();
    Arc::new(ResponseModel::new(fam, stimuli, Support::new(grid).unwrap()).unwrap())
}

pub fn families() -> Vec<Family> {
    let delays = vec![0.0, 1.0, 2.0, 5.0, 10.0, 35.0, 100.0];
    let mu: Vec<Vec<f64>> = integer_bins(12).into_iter().map(|m| vec![m]).collect();
    let irt = irt_grid(31).into_iter().map(|t| vec![t]).collect();
    vec![
        Family { name: "irt", models: vec![model("irt", irt_grid(31), irt)] },
        Family { name: "pow", models: vec![model("pow", delays.clone(), retention_grid(6))] },
        Family { name: "exp", models: vec![model("exp", delays.clone(), retention_grid(6))] },
        Family { name: "gauss-a", models: vec![model("gauss-a", vec![0.0], mu.clone())] },
        Family { name: "gauss-b", models: vec![model("gauss-b", vec![0.0], mu.clone())] },
        Family {
            name: "pow+exp",
            models: vec![
                model("pow", delays.clone(), retention_grid(6)),
                model("exp", delays, retention_grid(6)),
            ],
        },
        Family {
            name: "gauss-a+b",
            models: vec![model("gauss-a", vec![0.0], mu.clone()), model("gauss-b", vec![0.0], mu)],
        },
    ]
}

fn weights<R: Rng>(n: usize, zeros: bool, rng: &mut R) -> Vec<f64> {
    loop {
        let w: Vec<f64> = (0..n)
            .map(|_| {
                if zeros && rng.gen_bool(0.3) {
                    0.0
                } else {
                    rng.gen_range(0.05..1.0f64).powi(3)
                }
            })
            .collect();
        if w.iter().any(|&x| x > 0.0) {
            return w;
        }
    }
}

/// A random belief over `fam`; `zeros` allows zero-mass atoms.
pub fn random_belief<R: Rng>(fam: &Family, role: Role, zeros: bool, rng: &mut R) -> JointBelief {
    let dists = fam
        .models
        .iter()
        .map(|m| DiscreteDist::from_weights(m.grid().clone(), weights(m.grid().len(), zeros, rng)).unwrap())
        .collect();
    JointBelief::new(fam.models.clone(), weights(fam.models.len(), zeros, rng), dists, role).unwrap()
}

pub fn focus_for(fam: &Family) -> FocusKind {
    if fam.models.len() == 1 {
        FocusKind::Parameter
    } else {
        FocusKind::Model
    }
}

pub fn random_stimulus<R: Rng>(fam: &Family, rng: &mut R) -> f64 {
    let s = fam.models[0].stimuli();
    s[rng.gen_range(0..s.len())]
}
