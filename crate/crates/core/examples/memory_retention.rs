//! Power-law retention estimation under four kinds of specified prior, pooled
//! over two populations. Uses the bundled study config with fewer replications
//! and a coarser grid unless told otherwise.
//!
//! `cargo run --release --example memory_retention [reps] [cells]`

use ado_core::cli::{load_config, run_study};
use ado_core::sim::POOLED;

fn main() -> ado_core::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().ok());
    let reps = args.next().flatten().unwrap_or(10);
    let cells = args.next().flatten().unwrap_or(20);
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/configs/retention_estimation.toml");
    let mut cfg = load_config(&path)?;
    cfg.reps = reps;
    cfg.grid.retention_cells = cells;
    let out = run_study(&cfg, None)?;
    println!("trial-100 mean log p(θ*), pooled over populations ({reps} reps per cell, {cells}x{cells} grid)");
    for prior in ["informative", "misinformative", "uninformative-parameter", "uninformative-data"] {
        let get = |d: &str, u: &str| out.summary.find("retention", d, u, prior, POOLED, 100).unwrap();
        let (a, f) = (get("ado", "mi-parameter"), get("fixed", "none"));
        println!(
            "{prior:>24}: ado {:.3} ± {:.3}   fixed {:.3} ± {:.3}",
            a.mean_log_p_true, a.se_log, f.mean_log_p_true, f.se_log
        );
    }
    Ok(())
}
