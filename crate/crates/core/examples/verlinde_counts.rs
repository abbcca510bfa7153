//! Admissible coloring counts on standard spines, with and without boundary colors.

use wrt_limits::verlinde::{count_colorings, spines, verlinde_dim};

fn main() -> wrt_limits::Result<()> {
    let closed = [("genus 1", spines::genus_one()), ("genus 2", spines::theta()), ("genus 3", spines::k4()), ("genus 4", spines::necklace(4))];
    print!("{:>4}", "p");
    for (name, _) in &closed {
        print!(" {name:>10}");
    }
    println!();
    for r in 3..=10u32 {
        print!("{:>4}", 2 * r);
        for (_, g) in &closed {
            print!(" {:>10}", verlinde_dim(g, r)?);
        }
        println!();
    }
    let cut = spines::genus_two_surgery();
    let r = 6;
    let by_color: Vec<u128> = (1..r).map(|c| count_colorings(&cut, &[c, c], r)).collect::<Result<_, _>>()?;
    println!("genus two cut open at p = {}: counts by leg color {by_color:?}", 2 * r);
    Ok(())
}
