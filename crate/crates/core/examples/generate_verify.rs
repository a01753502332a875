//! Seeded instance generation for every family, matrix files, and
//! independent verification of a solution.

use opeq::cli::{parse_matrix, render_matrix};
use opeq::harness::generate::{generate, Family, InstanceSpec, Shape};
use opeq::harness::verify::verify;
use opeq::sylvester::solve_ax_yb;
use opeq::ToleranceConfig;

fn main() -> opeq::Result<()> {
    let tol = ToleranceConfig::default();
    for family in Family::ALL {
        let inst = generate(&InstanceSpec::new(family, 42, Shape::default()))?;
        let shapes: Vec<String> = inst.operators.iter().map(|(k, m)| format!("{k} {}x{}", m.rows(), m.cols())).collect();
        println!("{family:<32} {}", shapes.join(", "));
    }

    let inst = generate(&InstanceSpec::new(Family::SylvesterSolvable, 42, Shape::default()))?;
    let text = render_matrix(inst.op("C"), None);
    let (back, _) = parse_matrix(&text)?;
    println!("C round trips through JSON: {}", &back == inst.op("C"));

    let s = solve_ax_yb(inst.op("A"), inst.op("B"), inst.op("C"), None, &tol)?;
    let solution = [("X".to_string(), s.x.clone()), ("Y".to_string(), s.y.clone())].into();
    let cert = verify("sylvester", &inst.operators, &solution, &tol)?;
    println!("certificate pass: {}", cert.pass);

    let wrong = [("X".to_string(), s.x.scale(0.0)), ("Y".to_string(), s.y.scale(0.0))].into();
    let cert = verify("sylvester", &inst.operators, &wrong, &tol)?;
    println!("zero solution: pass {}, residual {:?}", cert.pass, cert.residual("residual").map(|r| r.value));
    Ok(())
}
