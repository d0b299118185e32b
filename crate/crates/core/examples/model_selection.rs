//! Power law versus exponential forgetting when the specified parameter priors
//! are misinformed, comparing the model-focused and total-entropy utilities.
//!
//! `cargo run --release --example model_selection [reps] [cells]`

use ado_core::cli::{load_config, run_study};
use ado_core::sim::POOLED;

fn main() -> ado_core::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().ok());
    let reps = args.next().flatten().unwrap_or(10);
    let cells = args.next().flatten().unwrap_or(20);
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/configs/retention_selection.toml");
    let mut cfg = load_config(&path)?;
    cfg.reps = reps;
    cfg.grid.retention_cells = cells;
    let out = run_study(&cfg, None)?;
    for (setup, prior) in [("popunif", "diffuse-data"), ("popcmpk", "flat")] {
        println!("{setup} (specified prior {prior}): mean log p(m*)");
        println!("{:>5} {:>10} {:>14} {:>10}", "trial", "mi-model", "total-entropy", "fixed");
        for trial in [0, 5, 10, 25, 50, 100] {
            let get = |d: &str, u: &str| out.summary.find(setup, d, u, prior, POOLED, trial).unwrap().mean_log_p_true;
            println!(
                "{trial:>5} {:>10.3} {:>14.3} {:>10.3}",
                get("ado", "mi-model"),
                get("ado", "total-entropy"),
                get("fixed", "none")
            );
        }
    }
    Ok(())
}
