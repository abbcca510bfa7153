//! Color-3 state sums, certificates and degree budgets on the built-in curve corpus.

use wrt_limits::amu::{corpus, euler_certificate, p_gamma3};

fn main() {
    println!("{:<28} {:>3} {:>10} {:>6}  {}", "curve", "N", "verdict", "span", "P_{γ,3}");
    for c in corpus::all() {
        let n = c.curve.vertex_count();
        let verdict = match euler_certificate(&c.curve) {
            Ok(cert) => format!("{:?}", cert.verdict).to_uppercase(),
            Err(e) => format!("error: {e}"),
        };
        match p_gamma3(&c.curve) {
            Ok(p) => {
                let span = p.max_exp().zip(p.min_exp()).map(|(hi, lo)| hi - lo).unwrap_or(0);
                println!("{:<28} {n:>3} {verdict:>10} {span:>6}  {p}", c.name);
            }
            Err(e) => println!("{:<28} {n:>3} {verdict:>10} {:>6}  ({e})", c.name, "-"),
        }
    }
}
