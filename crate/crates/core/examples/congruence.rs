//! AXA* + BYB* = C: the hypotheses, the two solvability criteria and the
//! explicit solution, on a small worked case and a generated one.

use opeq::congruence::{diagnose_congruence, solvability_necessity_check, solve_congruence};
use opeq::harness::generate::{generate, Family, InstanceSpec, Shape};
use opeq::{ComplexMatrix, Error, ToleranceConfig};

fn main() -> opeq::Result<()> {
    let tol = ToleranceConfig::default();
    let a = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
    let c = ComplexMatrix::from_real_rows(&[&[0.0, 0.0], &[1.0, 0.0]])?;

    let s = solve_congruence(&a, &ComplexMatrix::identity(2), &c, &tol)?;
    println!("B = I:          residual {:.1e}", s.residual);
    match solve_congruence(&a, &ComplexMatrix::from_diagonal(&[0.0, 1.0]), &c, &tol) {
        Err(Error::NotSolvable { condition, residual }) => println!("B = diag(0,1):  fails {condition} (residual {residual:.2})"),
        other => println!("unexpected: {:?}", other.map(|s| s.residual)),
    }

    let inst = generate(&InstanceSpec::new(Family::CongruenceSolvable, 2, Shape::new(6, 6, 6, 6, 1)))?;
    let (a, b, c) = (inst.op("A"), inst.op("B"), inst.op("C"));
    let d = diagnose_congruence(a, b, c, &tol)?;
    println!("generated: hypotheses {}, solvable {}", d.hypotheses_hold, d.solvable);
    let s = solve_congruence(a, b, c, &tol)?;
    let n = solvability_necessity_check(a, b, c, &s.x, &s.y, &tol)?;
    println!("generated: residual {:.1e}, necessity {}", s.residual, n.pass);
    Ok(())
}
