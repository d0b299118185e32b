//! How far ADO's own utility is from the focal divergence a population delivers,
//! and the three terms that make up the difference.

use std::sync::Arc;

use ado_core::belief::{FocusKind, JointBelief, Role};
use ado_core::dist::{discretize_normal, DiscreteDist};
use ado_core::efd::efd_surface;
use ado_core::models::{irt_grid, ResponseModel};
use ado_core::policy::ado_select;
use ado_core::utility::UtilityKind;

fn belief(model: &Arc<ResponseModel>, mu: f64, role: Role) -> ado_core::Result<JointBelief> {
    let d = discretize_normal(mu, 1.0, &irt_grid(31))?;
    let p = DiscreteDist::from_weights(model.grid().clone(), d.masses().to_vec())?;
    JointBelief::single(model.clone(), p, role)
}

fn main() -> ado_core::Result<()> {
    let model = Arc::new(ResponseModel::irt(31)?);
    let candidates = irt_grid(31);
    let spec = belief(&model, 0.0, Role::Specified)?;
    let chosen = ado_select(&spec, &candidates, UtilityKind::MiParameter)?;
    println!("specified prior normal(0, 1); ADO picks x = {}", chosen.stimulus);
    for mu in [-2.0, 0.0, 2.0] {
        let pop = belief(&model, mu, Role::Population)?;
        println!("\npopulation normal({mu}, 1)");
        println!("{:>6} {:>9} {:>9} {:>9} {:>9} {:>9}", "x", "variab.", "surpr.", "hindsight", "EFD", "U");
        for r in efd_surface(&spec, &pop, &candidates, FocusKind::Parameter)?.iter().step_by(3) {
            let b = r.breakdown;
            println!(
                "{:>6.1} {:>9.4} {:>9.4} {:>9.4} {:>9.4} {:>9.4}",
                r.stimulus, b.response_variability, b.surprisal, b.hindsight, b.total, r.global_utility
            );
        }
    }
    Ok(())
}
