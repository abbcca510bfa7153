//! Exact traces approaching the limit polynomial at rate `1/p`.

use wrt_limits::qtorus::HomClass;
use wrt_limits::trace::{convergence_report, AnnularLink, Subject, WeightedMulticurve};
use wrt_limits::verlinde::spines;

fn main() -> wrt_limits::Result<()> {
    let subjects = [
        ("genus 1, w = (2,0)", Subject::Weighted(WeightedMulticurve::new(spines::genus_one_surgery(), vec![HomClass::new(2, 0)])?)),
        ("genus 2, w = (2,0)", Subject::Weighted(WeightedMulticurve::new(spines::genus_two_surgery(), vec![HomClass::new(2, 0)])?)),
        (
            "genus 2, stack (1,1)(1,0)(0,1)",
            Subject::Annular {
                link: AnnularLink::single(vec![HomClass::new(1, 1), HomClass::new(1, 0), HomClass::new(0, 1)]),
                graph: spines::genus_two_surgery(),
            },
        ),
    ];
    let u = 0.3;
    for (name, s) in &subjects {
        println!("{name}: P_L = {}", s.p_limit());
        println!("{:>5} {:>5} {:>12} {:>12} {:>12}", "p", "k", "re", "im", "p*err");
        for row in convergence_report(s, u, &[8, 16, 32, 64, 128])? {
            println!("{:>5} {:>5} {:>12.6} {:>12.6} {:>12.6}", row.p, row.k, row.re, row.im, row.p_times_err);
        }
    }
    Ok(())
}
