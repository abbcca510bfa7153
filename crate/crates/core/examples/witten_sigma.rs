//! Exact traces on a genus two surface against the push-forward integral.

use wrt_limits::asymptotics::witten_compare;
use wrt_limits::qtorus::HomClass;
use wrt_limits::trace::WeightedMulticurve;
use wrt_limits::verlinde::spines;

fn main() -> wrt_limits::Result<()> {
    for w in [(1, 0), (2, 0), (0, 1), (1, 1)] {
        let mc = WeightedMulticurve::new(spines::genus_two_surgery(), vec![HomClass::new(w.0, w.1)])?;
        println!("w = {w:?}");
        println!("{:>5} {:>12} {:>12} {:>12} {:>10}", "p", "ev_re", "ev_im", "integral", "gap");
        for row in witten_compare(&mc, 1, &[40, 80, 160], 400)? {
            println!("{:>5} {:>12.6} {:>12.6} {:>12.6} {:>10.6}", row.p, row.ev_re, row.ev_im, row.integral, row.gap);
        }
    }
    Ok(())
}
