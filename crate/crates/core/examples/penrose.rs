//! Moore–Penrose inverse of a rank-deficient complex matrix, with the four
//! Penrose identities checked numerically.

use opeq::spectral::{pinv, svd};
use opeq::{c64, ComplexMatrix, ToleranceConfig};

fn main() -> opeq::Result<()> {
    let tol = ToleranceConfig::default();
    // rank 2: the third row is the sum of the first two
    let a = ComplexMatrix::from_row_major(
        3,
        3,
        vec![
            c64(1.0, 0.0), c64(0.0, 1.0), c64(2.0, 0.0),
            c64(0.0, -1.0), c64(1.0, 0.0), c64(0.0, 0.5),
            c64(1.0, -1.0), c64(1.0, 1.0), c64(2.0, 0.5),
        ],
    )?;
    let dec = svd(&a)?;
    println!("singular values: {:?}", dec.singular_values);
    println!("numerical rank:  {}", dec.rank(&tol));

    let g = pinv(&a, &tol);
    let ag = &a * &g;
    let ga = &g * &a;
    println!("‖AGA − A‖  = {:.2e}", (&(&ag * &a) - &a).frobenius_norm());
    println!("‖GAG − G‖  = {:.2e}", (&(&ga * &g) - &g).frobenius_norm());
    println!("‖(AG)* − AG‖ = {:.2e}", ag.hermitian_defect());
    println!("‖(GA)* − GA‖ = {:.2e}", ga.hermitian_defect());
    Ok(())
}
