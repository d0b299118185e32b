//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::fs;
use std::sync::OnceLock;
use std::time::Instant;

use ado_core::belief::{FocusKind, Role};
use ado_core::cli::{load_config, run_study, run_to_dir, RunOutput, Study};
use ado_core::cli::output::read_trials;
use ado_core::dist::{discretize_normal, DiscreteDist};
use ado_core::efd::{efd_decomposition, expected_focal_divergence, expected_log_bayes_factor};
use ado_core::models::{irt_grid, ResponseModel};
use ado_core::policy::ado_select;
use ado_core::sim::{summarize, SummaryRow, SummaryTable, POOLED};
use ado_core::utility::{mi_utility, mi_utility_via_kl, UtilityKind};
use ado_core::JointBelief;
use common::{config_path, families, focus_for, random_belief, random_stimulus};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn run(name: &str) -> RunOutput {
    let cfg = load_config(&config_path(name)).expect("config");
    run_study(&cfg, None).expect("run")
}

fn row<'a>(t: &'a SummaryTable, cond: &str, design: &str, util: &str, prior: &str, pop: &str, trial: usize) -> &'a SummaryRow {
    t.find(cond, design, util, prior, pop, trial)
        .unwrap_or_else(|| panic!("missing row {cond}/{design}/{util}/{prior}/{pop}/{trial}"))
}

/// Standard error of a difference of two independent means.
fn se_diff(a: &SummaryRow, b: &SummaryRow) -> f64 {
    a.se_log.hypot(b.se_log)
}

fn irt_normal(model: &std::sync::Arc<ResponseModel>, mu: f64, sd: f64, role: Role) -> JointBelief {
    let d = discretize_normal(mu, sd, &irt_grid(31)).unwrap();
    let p = DiscreteDist::from_weights(model.grid().clone(), d.masses().to_vec()).unwrap();
    JointBelief::single(model.clone(), p, role).unwrap()
}

fn decomposition_identity() -> Outcome {
    let fams = families();
    let mut rng = ChaCha20Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for i in 0..500 {
        let fam = &fams[i % fams.len()];
        let spec = random_belief(fam, Role::Specified, false, &mut rng);
        let pop = random_belief(fam, Role::Population, true, &mut rng);
        let x = random_stimulus(fam, &mut rng);
        let f = focus_for(fam);
        let efd = expected_focal_divergence(&spec, &pop, x, f).unwrap();
        let b = efd_decomposition(&spec, &pop, x, f).unwrap();
        worst = worst.max((efd - b.total).abs());
    }
    outcome(worst <= 1e-9, format!("500 instances over {} families, max |error| {worst:.2e}", fams.len()))
}

fn utility_forms_agree() -> Outcome {
    let fams = families();
    let mut rng = ChaCha20Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for i in 0..500 {
        let fam = &fams[i % fams.len()];
        let b = random_belief(fam, Role::Specified, rng.gen_bool(0.5), &mut rng);
        let x = random_stimulus(fam, &mut rng);
        let f = focus_for(fam);
        let u = mi_utility(&b, x, f).unwrap();
        let v = mi_utility_via_kl(&b, x, f).unwrap();
        worst = worst.max((u - v).abs());
    }
    outcome(worst <= 1e-10, format!("500 instances, max |error| {worst:.2e}"))
}

fn informative_identity() -> Outcome {
    let model = std::sync::Arc::new(ResponseModel::irt(31).unwrap());
    let spec = irt_normal(&model, 0.0, 1.0, Role::Specified);
    let pop = irt_normal(&model, 0.0, 1.0, Role::Population);
    let worst = irt_grid(31)
        .into_iter()
        .map(|x| {
            let u = mi_utility(&spec, x, FocusKind::Parameter).unwrap();
            let e = expected_focal_divergence(&spec, &pop, x, FocusKind::Parameter).unwrap();
            (u - e).abs()
        })
        .fold(0.0, f64::max);
    outcome(worst <= 1e-10, format!("31 candidates, max |U - EFD| {worst:.2e}"))
}

fn efd_orderings() -> Outcome {
    let model = std::sync::Arc::new(ResponseModel::irt(31).unwrap());
    let spec = irt_normal(&model, 0.0, 1.0, Role::Specified);
    let low = irt_normal(&model, -2.0, 1.0, Role::Population);
    let high = irt_normal(&model, 2.0, 1.0, Role::Population);
    let sel = ado_select(&spec, &irt_grid(31), UtilityKind::MiParameter).unwrap();
    let x = sel.stimulus;
    let u = sel.utility.unwrap();
    let bl = efd_decomposition(&spec, &low, x, FocusKind::Parameter).unwrap();
    let bh = efd_decomposition(&spec, &high, x, FocusKind::Parameter).unwrap();
    let pass = bl.total > u
        && u > bh.total
        && bl.response_variability > bh.response_variability
        && bl.surprisal > bh.surprisal;
    outcome(
        pass,
        format!(
            "x* = {x}: EFD low {:.4} > U {u:.4} > EFD high {:.4}; variability {:.4} vs {:.4}; surprisal {:.4} vs {:.4}",
            bl.total, bh.total, bl.response_variability, bh.response_variability, bl.surprisal, bh.surprisal
        ),
    )
}

fn irt_study() -> Outcome {
    let out = run("irt_priors.toml");
    let t = &out.summary;
    let mi = "mi-parameter";
    let cells = [
        ("population", "misinformative", "n(-2,1)"),
        ("population", "informative", "n(0,1)"),
        ("population", "misinformative", "n(2,1)"),
        ("uncontrolled", "informative", "n(2,1)"),
        ("uncontrolled", "misinformative", "n(2,1)"),
        ("uncontrolled", "uninformative", "n(2,1)"),
        ("controlled", "informative", "n(0,1)"),
        ("controlled", "misinformative", "n(0,1)"),
        ("controlled", "uninformative", "n(0,1)"),
    ];
    let mut notes = Vec::new();
    let mut a_ok = true;
    let mut min_ratio = f64::INFINITY;
    for (c, p, q) in cells {
        let ado = row(t, c, "ado", mi, p, q, 31);
        let fixed = row(t, c, "fixed", "none", p, q, 31);
        let gap = ado.mean_log_p_true - fixed.mean_log_p_true;
        let se = se_diff(ado, fixed);
        min_ratio = min_ratio.min(gap / se);
        a_ok &= gap > 2.0 * se;
    }
    notes.push(format!("(a) {} min gap/SE {min_ratio:.1}", if a_ok { "ok" } else { "no" }));

    let fixed_inf = row(t, "population", "fixed", "none", "informative", "n(0,1)", 31).mean_log_p_true;
    let worst_mis = ["n(-2,1)", "n(2,1)"]
        .iter()
        .map(|q| row(t, "population", "ado", mi, "misinformative", q, 31).mean_log_p_true)
        .fold(f64::INFINITY, f64::min);
    let b_ok = worst_mis > fixed_inf;
    notes.push(format!(
        "(b) {} ado misinformed {worst_mis:.3} vs fixed informed {fixed_inf:.3}",
        if b_ok { "ok" } else { "no" }
    ));

    let mut c_ok = true;
    for (cond, q) in [("uncontrolled", "n(2,1)"), ("controlled", "n(0,1)")] {
        for (design, util) in [("ado", mi), ("fixed", "none")] {
            let wide = row(t, cond, design, util, "uninformative", q, 31).mean_log_p_true;
            let narrow = row(t, cond, design, util, "misinformative", q, 31).mean_log_p_true;
            c_ok &= wide >= narrow;
            notes.push(format!("(c) {cond}/{design} {wide:.3} vs {narrow:.3}"));
        }
    }
    outcome(a_ok && b_ok && c_ok, notes.join("; "))
}

fn retention_estimation() -> Outcome {
    let out = run("retention_estimation.toml");
    let t = &out.summary;
    let mut pass = true;
    let mut notes = Vec::new();
    for prior in ["informative", "misinformative", "uninformative-parameter", "uninformative-data"] {
        let ado = row(t, "retention", "ado", "mi-parameter", prior, POOLED, 100);
        let fixed = row(t, "retention", "fixed", "none", prior, POOLED, 100);
        let gap = ado.mean_log_p_true - fixed.mean_log_p_true;
        let se = se_diff(ado, fixed);
        pass &= gap > 2.0 * se;
        notes.push(format!("{prior} gap {gap:.3} (2SE {:.3})", 2.0 * se));
    }
    outcome(pass, notes.join("; "))
}

fn selection_run() -> &'static RunOutput {
    static OUT: OnceLock<RunOutput> = OnceLock::new();
    OUT.get_or_init(|| run("retention_selection.toml"))
}

fn prior_of(cond: &str) -> &'static str {
    if cond == "popunif" {
        "diffuse-data"
    } else {
        "flat"
    }
}

fn selection_bias() -> Outcome {
    let t = &selection_run().summary;
    let traj = |cond: &str, design: &str, util: &str| -> Vec<f64> {
        (0..=100)
            .map(|k| row(t, cond, design, util, prior_of(cond), POOLED, k).mean_log_p_true)
            .collect()
    };
    let half = 0.5f64.ln();
    let mut pass = true;
    let mut notes = Vec::new();
    for cond in ["popunif", "popcmpk"] {
        let ado = traj(cond, "ado", "mi-model");
        let fixed = traj(cond, "fixed", "none");
        let low = ado[1..=25].iter().copied().fold(f64::INFINITY, f64::min);
        let early_ado = ado[1..=25].iter().sum::<f64>() / 25.0;
        let early_fixed = fixed[1..=25].iter().sum::<f64>() / 25.0;
        pass &= low < half && early_ado < early_fixed;
        notes.push(format!(
            "{cond}: min {low:.3} vs ln .5; early ado {early_ado:.3} < fixed {early_fixed:.3}"
        ));
    }
    for (design, util) in [("ado", "mi-model"), ("fixed", "none")] {
        let param = traj("popcmpk", design, util)[100];
        let data = traj("popunif", design, util)[100];
        pass &= param > data;
        notes.push(format!("trial 100 {design}: flat prior {param:.3} > diffuse-data prior {data:.3}"));
    }
    outcome(pass, notes.join("; "))
}

fn total_entropy_comparison() -> Outcome {
    let t = &selection_run().summary;
    let mut notes = Vec::new();
    let mut pass = true;
    for (cond, should_win) in [("popunif", true), ("popcmpk", false)] {
        let te = row(t, cond, "ado", "total-entropy", prior_of(cond), POOLED, 100);
        let mi = row(t, cond, "ado", "mi-model", prior_of(cond), POOLED, 100);
        let diff = te.mean_log_p_true - mi.mean_log_p_true;
        let se = se_diff(te, mi);
        let wins = diff > 2.0 * se;
        pass &= wins == should_win;
        notes.push(format!(
            "{cond}: total-entropy {:.3} ± {:.3} vs mi-model {:.3} ± {:.3} (diff {diff:.3}, 2SE {:.3})",
            te.mean_log_p_true,
            te.se_log,
            mi.mean_log_p_true,
            mi.se_log,
            2.0 * se
        ));
    }
    outcome(pass, notes.join("; "))
}

fn toy_bias() -> Outcome {
    let cfg = load_config(&config_path("gaussian_pair.toml")).unwrap();
    let study = Study::build(&cfg).unwrap();
    let (_, _, spec, pop) = &study.pairs[0];
    let ev = expected_log_bayes_factor(spec, pop, 0.0, "gauss-a", "gauss-b").unwrap();
    outcome(
        ev.expected_log_bf < 0.0,
        format!(
            "E[ln BF(A,B)] = {:.5}; population mass favoring B {:.3}",
            ev.expected_log_bf, ev.mass_favoring_m2
        ),
    )
}

fn golden_run() -> Outcome {
    let cfg = load_config(&config_path("irt_golden.toml")).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let mut logs = Vec::new();
    for (i, workers) in [Some(1), Some(4), Some(1), None].into_iter().enumerate() {
        let out = dir.path().join(format!("run{i}"));
        run_to_dir(&cfg, &out, workers).unwrap();
        logs.push((
            fs::read(out.join("trials.jsonl")).unwrap(),
            fs::read(out.join("summary.csv")).unwrap(),
        ));
    }
    let same = logs.windows(2).all(|w| w[0] == w[1]);
    let (id, recs) = read_trials(&logs[0].0[..]).unwrap();
    let mut again = Vec::new();
    ado_core::cli::output::write_summary(&mut again, &id, &summarize(&recs)).unwrap();
    let resummarized = again == logs[0].1;
    outcome(
        same && resummarized && recs.len() == 10 * 32,
        format!(
            "{} runs across worker counts identical: {same}; re-summarized bit-exact: {resummarized}",
            logs.len()
        ),
    )
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "decomposition identity", decomposition_identity),
        (2, "utility forms agree", utility_forms_agree),
        (3, "informative prior identity", informative_identity),
        (4, "focal divergence orderings", efd_orderings),
        (5, "item-response study", irt_study),
        (6, "retention estimation", retention_estimation),
        (7, "model-selection bias", selection_bias),
        (8, "total entropy utility", total_entropy_comparison),
        (9, "toy Bayes factor bias", toy_bias),
        (10, "deterministic golden run", golden_run),
    ];
    let mut failed = 0;
    for (n, name, check) in criteria {
        let start = Instant::now();
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {n:>2} {}: {name} [{:.1}s] {}",
            if o.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
