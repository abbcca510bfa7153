//! Product-to-sum in the quantum torus, its action on `V_p(T)` and the limit map `η`.

use wrt_limits::qtorus::{eta_of_stack, genus_one_trace, product_to_sum, HomClass, QTSym};

fn main() -> wrt_limits::Result<()> {
    let (x, y) = (HomClass::new(1, 0), HomClass::new(0, 1));
    println!("(1,0) * (0,1) = {:?}", product_to_sum(x, y));
    for n in 0..=6 {
        println!("eta((1,0)^{n}) = {}", eta_of_stack(&vec![x; n]));
    }
    let stack = [HomClass::new(1, 1), x, y];
    println!("eta((1,1)(1,0)(0,1)) = {}", eta_of_stack(&stack));
    let el = QTSym::sym(x).multiply(&QTSym::sym(x));
    for p in [6, 8, 12] {
        println!("genus one trace of <1,0>^2 at p = {p}: {:?}", genus_one_trace(&el, p)?);
    }
    Ok(())
}
