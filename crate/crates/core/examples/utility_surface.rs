//! Utility surfaces over the item-response candidates.

use std::sync::Arc;

use ado_core::belief::{FocusKind, JointBelief, Role};
use ado_core::dist::{discretize_normal, DiscreteDist};
use ado_core::models::{irt_grid, ResponseModel};
use ado_core::policy::ado_select;
use ado_core::utility::{surface, UtilityKind};

fn main() -> ado_core::Result<()> {
    let model = Arc::new(ResponseModel::irt(31)?);
    let candidates = irt_grid(31);
    let mi = UtilityKind::MiParameter;
    let ucb = UtilityKind::Ucb { focus: FocusKind::Parameter, weight: 1.0 };
    for sd in [0.65, 1.0, 2.0] {
        let prior = discretize_normal(0.0, sd, &candidates)?;
        let params = DiscreteDist::from_weights(model.grid().clone(), prior.masses().to_vec())?;
        let b = JointBelief::single(model.clone(), params, Role::Specified)?;
        let u = surface(&b, &candidates, mi)?;
        let v = surface(&b, &candidates, ucb)?;
        let best = ado_select(&b, &candidates, mi)?;
        println!("prior normal(0, {sd}): ADO picks x = {:+.1} with U = {:.4}", best.stimulus, best.utility.unwrap_or(0.0));
        for (i, x) in candidates.iter().enumerate().step_by(5) {
            println!("  x {x:+.1}  mi {:.4}  ucb {:.4}", u[i], v[i]);
        }
    }
    Ok(())
}
