//! Interior lattice points of scaled boxes against the face-sum bound.

use wrt_limits::verlinde::{lattice_bound_check, LatticeKind};

fn main() -> wrt_limits::Result<()> {
    println!("{:<8} {:<12} {:>4} {:>10} {:>12} {:>10} {:>10}", "lattice", "box", "r", "count", "vol/covol", "deviation", "bound");
    for kind in [LatticeKind::Unit, LatticeKind::EvenSum] {
        for dims in [vec![1], vec![2, 1], vec![1, 1, 1], vec![3, 2, 1]] {
            for r in [5, 20, 50] {
                let rep = lattice_bound_check(&dims, kind, r)?;
                println!(
                    "{:<8} {:<12} {:>4} {:>10} {:>12.1} {:>10.1} {:>10.1}",
                    format!("{kind:?}"),
                    format!("{dims:?}"),
                    r,
                    rep.interior_count,
                    rep.volume_ratio,
                    rep.deviation,
                    rep.bound
                );
            }
        }
    }
    Ok(())
}
