//! Range and kernel projections, numerical rank, and range inclusion tests.

use opeq::harness::rng::InstanceRng;
use opeq::projections::{projection_quad, range_equal, range_inclusion};
use opeq::ToleranceConfig;

fn main() -> opeq::Result<()> {
    let tol = ToleranceConfig::default();
    let mut rng = InstanceRng::new(11);
    let a = rng.rank_matrix(5, 4, 2);
    let q = projection_quad(&a, &tol);
    println!("rank A = {}", q.rank);
    println!("trace P_A = {:.3}, trace N_A = {:.3}", q.p_a.trace().re, q.n_a.trace().re);

    let inside = &a * &rng.gaussian_matrix(4, 3);
    let outside = rng.gaussian_matrix(5, 1);
    let d = range_inclusion(&inside, &a, &tol)?;
    println!("R(A·G) ⊆ R(A): {} (residual {:.1e})", d.holds, d.residual);
    let d = range_inclusion(&outside, &a, &tol)?;
    println!("R(g) ⊆ R(A):   {} (residual {:.1e})", d.holds, d.residual);

    let b = &a * &rng.gaussian_matrix(4, 4);
    println!("R(A·M) = R(A): {}", range_equal(&a, &b, &tol)?.holds);
    Ok(())
}
