//! Two Gaussian models that differ only in spread. Data from a population of
//! Model A participants whose means vary more than the specified prior allows
//! look, on average, like evidence for the wider Model B.

use ado_core::cli::{load_config, Study};
use ado_core::efd::expected_log_bayes_factor;
use ado_core::utility::{mi_utility, total_entropy_utility};
use ado_core::FocusKind;

fn main() -> ado_core::Result<()> {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/configs/gaussian_pair.toml");
    let study = Study::build(&load_config(&path)?)?;
    let (_, _, spec, pop) = &study.pairs[0];
    for y in [0.0, 10.0, 20.0, 30.0] {
        println!("BF(A, B) at y = {y:>4}: {:.4}", spec.bayes_factor(0.0, y, "gauss-a", "gauss-b")?);
    }
    let ev = expected_log_bayes_factor(spec, pop, 0.0, "gauss-a", "gauss-b")?;
    println!("expected ln BF(A, B) under the population: {:.5}", ev.expected_log_bf);
    println!("share of population responses favoring B: {:.3}", ev.mass_favoring_m2);
    println!("model-focus utility {:.5}, total entropy utility {:.5}",
        mi_utility(spec, 0.0, FocusKind::Model)?, total_entropy_utility(spec, 0.0)?);
    Ok(())
}
