//! Sequential posterior updates and Bayes factors.

use std::sync::Arc;

use ado_core::belief::{FocusKind, JointBelief, Role};
use ado_core::dist::{discretize_beta, discretize_normal, DiscreteDist, Support};
use ado_core::models::{builtin_family, irt_grid, retention_candidates, retention_grid, ResponseModel};

fn main() -> ado_core::Result<()> {
    let model = Arc::new(ResponseModel::irt(31)?);
    let prior = discretize_normal(0.0, 1.0, &irt_grid(31))?;
    let params = DiscreteDist::from_weights(model.grid().clone(), prior.masses().to_vec())?;
    let mut b = JointBelief::single(model, params, Role::Specified)?;

    for (x, y) in [(0.0, 1.0), (1.0, 1.0), (2.0, 0.0), (1.4, 1.0)] {
        b = b.update(x, y)?;
        let m = b.marginal(FocusKind::Parameter)?;
        let mean: f64 = b.param_dist(0).iter().map(|(t, p)| t[0] * p).sum();
        println!("after x = {x:>4}, y = {y}: posterior mean θ {mean:+.3}, max mass {:.3}", m.masses().iter().cloned().fold(0.0, f64::max));
    }

    // power law versus exponential forgetting on a coarse grid
    let cells = 10;
    let grid = Support::new(retention_grid(cells))?;
    let stimuli = retention_candidates();
    let pow = Arc::new(ResponseModel::new(builtin_family("pow", &[])?, stimuli.clone(), grid.clone())?);
    let exp = Arc::new(ResponseModel::new(builtin_family("exp", &[])?, stimuli, grid)?);
    let a = discretize_beta(2.0, 1.0, cells)?;
    let product = |b_axis: &DiscreteDist<f64>| {
        let w: Vec<f64> = a.masses().iter().flat_map(|pa| b_axis.masses().iter().map(move |pb| pa * pb)).collect();
        DiscreteDist::from_weights(pow.grid().clone(), w)
    };
    let pow_params = product(&discretize_beta(1.0, 4.0, cells)?)?;
    let exp_params = product(&discretize_beta(1.0, 80.0, cells)?)?;
    let mut b = JointBelief::new(vec![pow, exp], vec![0.5, 0.5], vec![pow_params, exp_params], Role::Specified)?;
    for (x, y) in [(1.0, 1.0), (40.0, 1.0), (100.0, 0.0)] {
        println!("BF(pow, exp) for y = {y} at delay {x}: {:.4}", b.bayes_factor(x, y, "pow", "exp")?);
        b = b.update(x, y)?;
    }
    println!("posterior model probabilities {:?}", b.model_probs().masses());
    Ok(())
}
