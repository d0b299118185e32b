//! ADO against a shuffled fixed design on the item-response task, with a
//! misinformed specified prior.
//!
//! `cargo run --release --example irt_ado_vs_fixed [reps]`

use ado_core::cli::{parse_config, run_study};

fn main() -> ado_core::Result<()> {
    let reps: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(100);
    let cfg = parse_config(&format!(
        r#"
seed = 11
trials = 31
reps = {reps}
designs = ["ado", "fixed", "random"]

[[priors]]
id = "n(0,1)"
model = "irt"
params = ["normal(0, 1)"]

[[populations]]
id = "n(2,1)"
model = "irt"
params = ["normal(2, 1)"]

[[conditions]]
id = "irt"
prior = "n(0,1)"
population = "n(2,1)"
"#
    ))?;
    let out = run_study(&cfg, None)?;
    println!("mean log p(θ*) ± SE over {reps} replications");
    println!("{:>5} {:>16} {:>16} {:>16}", "trial", "ado", "fixed", "random");
    for trial in (0..=31).step_by(5).chain([31]) {
        let cell = |design: &str, util: &str| {
            let r = out.summary.find("irt", design, util, "n(0,1)", "n(2,1)", trial).unwrap();
            format!("{:.3} ± {:.3}", r.mean_log_p_true, r.se_log)
        };
        println!(
            "{trial:>5} {:>16} {:>16} {:>16}",
            cell("ado", "mi-parameter"),
            cell("fixed", "none"),
            cell("random", "none")
        );
    }
    println!("manifest {}", out.manifest.id);
    Ok(())
}
