//! AX + BY = C when A*B = 0, with the majorization certificate
//! CC* ≼ λ(AA* + BB*).

use opeq::harness::generate::{generate, Family, InstanceSpec, Shape};
use opeq::sylvester::solve_ax_by_orthogonal;
use opeq::ToleranceConfig;

fn main() -> opeq::Result<()> {
    let tol = ToleranceConfig::default();
    let inst = generate(&InstanceSpec::new(Family::OrthogonalPair, 4, Shape::new(6, 3, 4, 4, 1)))?;
    let s = solve_ax_by_orthogonal(inst.op("A"), inst.op("B"), inst.op("C"), &tol)?;
    println!("‖A*B‖ relative: {:.1e}", s.orthogonality);
    println!("residual:       {:.1e}", s.residual);
    println!("λ = {:.4}, majorization holds: {}", s.lambda, s.majorization.holds);
    println!("off-diagonal block of P_T*: {:.1e} (anomaly: {})", s.off_block, s.off_block_anomaly);
    Ok(())
}
