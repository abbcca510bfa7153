//! Lattice point count versus volume on axis-aligned boxes, with the Voronoi face bound.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeKind {
    /// `ℤⁿ`
    Unit,
    /// Integer points with even coordinate sum.
    EvenSum,
}

impl LatticeKind {
    pub fn covolume(self) -> f64 {
        match self {
            LatticeKind::Unit => 1.0,
            LatticeKind::EvenSum => 2.0,
        }
    }

    /// Covering radius in dimension `n`.
    pub fn covering_radius(self, n: usize) -> f64 {
        match self {
            LatticeKind::Unit => (n as f64).sqrt() / 2.0,
            LatticeKind::EvenSum if n == 1 => 1.0,
            LatticeKind::EvenSum => ((n as f64).sqrt() / 2.0).max(1.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub sides: Vec<u64>,
    pub lattice: LatticeKind,
    pub interior_count: u128,
    pub volume_ratio: f64,
    pub deviation: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Volume of the unit ball in dimension `c`.
fn ball_volume(c: usize) -> f64 {
    match c {
        0 => 1.0,
        1 => 2.0,
        _ => ball_volume(c - 2) * 2.0 * PI / c as f64,
    }
}

/// Check `|#(int P ∩ Λ) − vol P / covol Λ| ≤ Σ_F b_{c_F} vol F ρ^{c_F} / covol Λ` on `P = Π [0, r·d_i]`.
pub fn lattice_bound_check(box_dims: &[u64], lattice: LatticeKind, r: u64) -> Result<BoundReport> {
    let n = box_dims.len();
    if n == 0 || n > 4 {
        return Err(Error::Invalid(format!("box dimension {n} outside 1..=4")));
    }
    if r == 0 || box_dims.iter().any(|d| *d == 0) {
        return Err(Error::Invalid("box sides must be positive".into()));
    }
    let sides: Vec<u64> = box_dims.iter().map(|d| d * r).collect();
    let total: u128 = sides.iter().map(|s| (s - 1) as u128).product();
    let interior_count = match lattice {
        LatticeKind::Unit => total,
        LatticeKind::EvenSum => {
            // (#even − #odd) factorizes over coordinates
            let signed: i128 = sides
                .iter()
                .map(|s| {
                    let m = (s - 1) as i128;
                    let evens = m / 2;
                    evens - (m - evens)
                })
                .product();
            ((total as i128 + signed) / 2) as u128
        }
    };
    let covol = lattice.covolume();
    let rho = lattice.covering_radius(n);
    let volume: f64 = sides.iter().map(|s| *s as f64).product();
    let volume_ratio = volume / covol;
    // faces of codimension c: choose the c fixed coordinates, two choices each
    let mut bound = 0.0;
    for mask in 1u32..(1 << n) {
        let c = mask.count_ones() as usize;
        let face: f64 = (0..n).filter(|i| mask & (1 << i) == 0).map(|i| sides[i] as f64).product();
        bound += (1u64 << c) as f64 * ball_volume(c) * face * rho.powi(c as i32);
    }
    bound /= covol;
    let deviation = (interior_count as f64 - volume_ratio).abs();
    Ok(BoundReport {
        sides,
        lattice,
        interior_count,
        volume_ratio,
        deviation,
        bound,
        pass: deviation <= bound + 1e-9,
    })
}
