//! Discrete distributions and the information measures on them.

use ado_core::dist::{
    cross_entropy, discretize_beta, discretize_normal, entropy, kl_divergence, normalize,
};
use ado_core::models::irt_grid;

fn main() -> ado_core::Result<()> {
    let p = normalize(&[9.0, 1.0])?;
    let q = normalize(&[1.0, 1.0])?;
    println!("p = {:?}, q = {:?}", p.masses(), q.masses());
    println!("H(p)     = {:.6} nats", entropy(&p));
    println!("KL(p||q) = {:.6}", kl_divergence(&p, &q)?);
    println!("CE(p,q)  = {:.6} = H(p) + KL(p||q)", cross_entropy(&p, &q)?);

    let prior = discretize_normal(0.0, 1.0, &irt_grid(31))?;
    let wide = discretize_normal(0.0, 2.0, &irt_grid(31))?;
    println!("\nnormal(0, 1) on 31 points: H = {:.4}", entropy(&prior));
    println!("normal(0, 2) on 31 points: H = {:.4}", entropy(&wide));
    println!("KL(n(0,1) || n(0,2)) = {:.4}", kl_divergence(&prior, &wide)?);

    for (a, b) in [(1.0, 1.0), (2.0, 1.0), (1.0, 4.0), (1.0, 80.0)] {
        let d = discretize_beta(a, b, 10)?;
        let mean: f64 = d.iter().map(|(x, m)| x * m).sum();
        println!("beta({a}, {b}) on 10 cells: mean {mean:.3}, H = {:.3}", entropy(&d));
    }
    Ok(())
}
