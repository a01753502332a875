//! AX = C: reduced solution, general solution and the Douglas factor
//! λ = ‖A†C‖², certified by CC* ≼ λ·AA*.

use opeq::douglas::{douglas_factor, general_solution, majorization_probe, reduced_solution, solve_scaled_equality};
use opeq::harness::generate::{generate, Family, InstanceSpec, Shape};
use opeq::ToleranceConfig;

fn main() -> opeq::Result<()> {
    let tol = ToleranceConfig::default();
    let mut spec = InstanceSpec::new(Family::ScaledEqualityPair, 5, Shape::new(5, 1, 4, 1, 1));
    spec.lambda = Some(2.5);
    let inst = generate(&spec)?;
    let (a, c) = (inst.op("A"), inst.op("C"));

    let r = reduced_solution(a, c, &tol)?;
    println!("reduced solution residual {:.1e}, ‖D − P_A*·D‖ = {:.1e}", r.residual, r.reduced_certificate);
    println!("λ = ‖D‖₂² = {:.6}", r.lambda_factor);

    let w = opeq::harness::rng::InstanceRng::new(9).gaussian_matrix(a.cols(), c.cols());
    let x = general_solution(a, &r, &w, &tol)?;
    println!("general solution residual {:.1e}", (&(a * &x) - c).frobenius_norm());

    let gram = a * &a.adjoint();
    println!("probe at λ:          {}", majorization_probe(&gram, c, r.lambda_factor * (1.0 + 1e-8)).holds);
    println!("probe at 0.999·λ:    {}", majorization_probe(&gram, c, r.lambda_factor * 0.999).holds);
    println!("douglas_factor:      {:?}", douglas_factor(a, c, &tol)?);

    let s = solve_scaled_equality(a, c, 2.5, &tol)?;
    println!("scaled equality: residual {:.1e}", s.residual);
    Ok(())
}
