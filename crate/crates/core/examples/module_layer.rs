//! Operators on the Hilbert module (M_k)^n: the algebra-valued inner product,
//! right module action, adjoint pairing and module linearity.

use opeq::harness::rng::InstanceRng;
use opeq::module::{
    adjoint, adjoint_pairing_defect, check_module_linearity, inner_product, modulus, AlgebraElement, ModuleContext,
    ModuleElement, ModuleOperator,
};

fn main() -> opeq::Result<()> {
    let mut rng = InstanceRng::new(3);
    let k = 2;
    let (dom, cod) = (ModuleContext::new(k, 3)?, ModuleContext::new(k, 2)?);
    let a = ModuleOperator::random(dom, cod, &mut rng)?;
    println!("A: (M_{k})^3 -> (M_{k})^2 stored as {:?}", a.data().shape());

    let x = ModuleElement::random(dom, &mut rng);
    let s = AlgebraElement::random(k, &mut rng);
    let ip = inner_product(&x, &x.right_action(&s)?)?;
    println!("<x, x·s> is {}x{}, |x| has norm {:.3}", ip.k(), ip.k(), modulus(&x).norm());

    println!("pairing defect  {:.1e}", adjoint_pairing_defect(&a, 20, 1)?);
    let lin = check_module_linearity(&a, 20, 2)?;
    println!("linearity       {:.1e} (pass: {})", lin.max_deviation, lin.pass);
    println!("A* stored as    {:?}", adjoint(&a).data().shape());
    Ok(())
}
