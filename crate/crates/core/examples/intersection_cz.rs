//! R(A) ∩ R(B) from the kernel projection of [A −B], and positive solutions
//! of AXA* + BYB* = CZ built from its blocks.

use opeq::congruence::{range_intersection, solve_congruence_cz};
use opeq::harness::generate::{generate, Family, InstanceSpec, Shape};
use opeq::ToleranceConfig;

fn main() -> opeq::Result<()> {
    let tol = ToleranceConfig::default();
    let inst = generate(&InstanceSpec::new(Family::IntersectingPair, 1, Shape::new(6, 6, 5, 5, 1)))?;
    let (a, b, c) = (inst.op("A"), inst.op("B"), inst.op("C"));

    let r = range_intersection(a, b, &tol)?;
    println!("dim R(A) ∩ R(B) = {} (rank formula {})", r.dim, r.dim_by_rank);
    println!("X² + Z*Z − X: {:.1e}, AX − BZ: {:.1e}", r.block_identity_residual, r.cross_residual);
    println!("R((AXA*)^½) inside the intersection: {}", r.sqrt_inclusion.holds);

    let s = solve_congruence_cz(a, b, c, &tol)?;
    let rep = &s.report;
    println!("min eig x = {:.1e}, min eig y = {:.1e}", rep.min_eig_x, rep.min_eig_y);
    println!("‖x‖ = {:.3}, ‖y‖ = {:.3}, ‖z‖ = {:.3}", rep.norm_x, rep.norm_y, rep.norm_z);
    println!("‖CZ − (AXA* + BYB*)‖ relative: {:.1e}", rep.residual);
    Ok(())
}
