//! Invariants of the utilities and the divergence decomposition over every
//! built-in family.

mod common;

use std::sync::Arc;

use ado_core::belief::{FocusKind, JointBelief, Role};
use ado_core::dist::{DiscreteDist, Support};
use ado_core::efd::{efd_decomposition, expected_focal_divergence};
use ado_core::models::ResponseModel;
use ado_core::utility::{mi_utility, mi_utility_via_kl, total_entropy_utility};
use common::{families, focus_for, random_belief, random_stimulus};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

fn entropy_of(p: &[f64]) -> f64 {
    -p.iter().filter(|&&q| q > 0.0).map(|&q| q * q.ln()).sum::<f64>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mi_is_bounded_and_matches_the_kl_route(seed: u64, zeros: bool) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for fam in families() {
            let b = random_belief(&fam, Role::Specified, zeros, &mut rng);
            let x = random_stimulus(&fam, &mut rng);
            let focus = focus_for(&fam);
            let mi = mi_utility(&b, x, focus).unwrap();
            let kl = mi_utility_via_kl(&b, x, focus).unwrap();
            let h_focus = entropy_of(b.marginal(focus).unwrap().masses());
            let h_y = entropy_of(b.prior_predictive(x).unwrap().masses());
            prop_assert!(mi >= 0.0);
            prop_assert!(mi <= h_focus.min(h_y) + TOL, "{}: {mi} > min({h_focus}, {h_y})", fam.name);
            prop_assert!((mi - kl).abs() < TOL, "{}: {mi} vs {kl}", fam.name);
        }
    }

    #[test]
    fn total_entropy_obeys_the_chain_rule(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for fam in families() {
            let b = random_belief(&fam, Role::Specified, false, &mut rng);
            let x = random_stimulus(&fam, &mut rng);
            let te = total_entropy_utility(&b, x).unwrap();
            let expected = if b.is_single_model() {
                mi_utility(&b, x, FocusKind::Parameter).unwrap()
            } else {
                let within: f64 = b
                    .models()
                    .iter()
                    .zip(b.model_probs().masses())
                    .enumerate()
                    .map(|(k, (m, &w))| {
                        let sub = JointBelief::single(m.clone(), b.param_dist(k).clone(), Role::Specified).unwrap();
                        w * mi_utility(&sub, x, FocusKind::Parameter).unwrap()
                    })
                    .sum();
                mi_utility(&b, x, FocusKind::Model).unwrap() + within
            };
            prop_assert!((te - expected).abs() < TOL, "{}: {te} vs {expected}", fam.name);
        }
    }

    #[test]
    fn relabelling_grid_points_changes_nothing(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for fam in families().into_iter().filter(|f| f.models.len() == 1) {
            let b = random_belief(&fam, Role::Specified, true, &mut rng);
            let model = &fam.models[0];
            let mut order: Vec<usize> = (0..model.grid().len()).collect();
            order.shuffle(&mut rng);
            let grid: Vec<_> = order.iter().map(|&i| model.grid()[i].clone()).collect();
            let permuted = Arc::new(
                ResponseModel::new(model.family().clone(), model.stimuli().to_vec(), Support::new(grid).unwrap())
                    .unwrap(),
            );
            let masses = order.iter().map(|&i| b.param_dist(0).masses()[i]).collect();
            let p = DiscreteDist::from_weights(permuted.grid().clone(), masses).unwrap();
            let pb = JointBelief::single(permuted, p, Role::Specified).unwrap();
            let x = random_stimulus(&fam, &mut rng);
            let a = mi_utility(&b, x, FocusKind::Parameter).unwrap();
            let c = mi_utility(&pb, x, FocusKind::Parameter).unwrap();
            prop_assert!((a - c).abs() < TOL, "{}: {a} vs {c}", fam.name);
        }
    }

    #[test]
    fn divergence_terms_add_up(seed: u64, zeros: bool) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for fam in families() {
            let spec = random_belief(&fam, Role::Specified, false, &mut rng);
            let pop = random_belief(&fam, Role::Population, zeros, &mut rng);
            let x = random_stimulus(&fam, &mut rng);
            let focus = focus_for(&fam);
            let d = efd_decomposition(&spec, &pop, x, focus).unwrap();
            let efd = expected_focal_divergence(&spec, &pop, x, focus).unwrap();
            prop_assert!(d.response_variability >= 0.0 && d.surprisal >= -TOL);
            prop_assert!((d.response_variability + d.surprisal + d.hindsight - d.total).abs() < TOL);
            prop_assert!((d.total - efd).abs() < 1e-8, "{}: {} vs {efd}", fam.name, d.total);
            prop_assert!(efd >= -TOL);
        }
    }

    #[test]
    fn matching_population_gives_the_global_utility(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for fam in families() {
            let spec = random_belief(&fam, Role::Specified, false, &mut rng);
            let pop = spec.clone().with_role(Role::Population);
            let x = random_stimulus(&fam, &mut rng);
            let focus = focus_for(&fam);
            let d = efd_decomposition(&spec, &pop, x, focus).unwrap();
            prop_assert!(d.surprisal.abs() < TOL);
            prop_assert!((d.total - mi_utility(&spec, x, focus).unwrap()).abs() < TOL, "{}", fam.name);
        }
    }
}
