//! Response curves of the built-in models.

use ado_core::models::{
    exp_likelihood, gaussian_pair_likelihood, irt_likelihood, pow_likelihood, GaussianModel,
};

fn main() {
    println!("item response, p(correct) by difficulty x");
    println!("{:>6} {:>8} {:>8} {:>8}", "x", "θ=-2", "θ=0", "θ=2");
    for x in [-3.0, -1.5, 0.0, 1.5, 3.0] {
        println!(
            "{x:>6.1} {:>8.4} {:>8.4} {:>8.4}",
            irt_likelihood(x, -2.0),
            irt_likelihood(x, 0.0),
            irt_likelihood(x, 2.0)
        );
    }

    println!("\nretention, p(recall) by delay for a = 0.9, b = 0.4");
    for x in [0.0, 1.0, 5.0, 20.0, 100.0] {
        println!("{x:>6} pow {:.4}  exp {:.4}", pow_likelihood(x, 0.9, 0.4), exp_likelihood(x, 0.9, 0.4));
    }

    println!("\nbinned gaussian responses at mu = 0");
    for y in [0.0, 10.0, 20.0, 30.0, 40.0] {
        println!(
            "{y:>6} A {:.5}  B {:.5}",
            gaussian_pair_likelihood(GaussianModel::A, 0.0, y),
            gaussian_pair_likelihood(GaussianModel::B, 0.0, y)
        );
    }
}
