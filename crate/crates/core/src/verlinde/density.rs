//! Normalized slice densities `f(x) = vol(P̂ ∩ V̂_x) / vol(P̂)` estimated by counting.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{BoundaryTable, ColoredGraph, Counter};
use crate::{Error, Result};

/// Counts over the tracked edges at one probe level, ready for repeated evaluation.
#[derive(Debug, Clone)]
pub struct SliceDensity {
    table: BoundaryTable,
    total: u128,
    r_probe: u32,
    tracked: Vec<usize>,
}

impl SliceDensity {
    pub fn new(g_closed: &ColoredGraph, tracked: &[usize], r_probe: u32) -> Result<Self> {
        if !g_closed.is_closed() {
            return Err(Error::MalformedPresentation("slice density needs a closed graph".into()));
        }
        if let Some(e) = tracked.iter().find(|e| **e >= g_closed.edges().len()) {
            return Err(Error::OutOfRange(format!("tracked edge {e} does not exist")));
        }
        let counter = Counter::new(g_closed, r_probe)?;
        let table = counter.edge_table(tracked)?;
        let total = counter.count(&[])?;
        Ok(Self { table, total, r_probe, tracked: tracked.to_vec() })
    }

    pub fn r_probe(&self) -> u32 {
        self.r_probe
    }

    pub fn tracked(&self) -> &[usize] {
        &self.tracked
    }

    /// Exact estimate: `r^k` times the mean count over the unit cube at `⌊x·r⌋`, divided by the total.
    pub fn eval_exact(&self, x: &[BigRational]) -> Result<BigRational> {
        let k = self.tracked.len();
        if x.len() != k {
            return Err(Error::Invalid(format!("expected {k} coordinates, got {}", x.len())));
        }
        let zero = BigRational::zero();
        let one = BigRational::one();
        let r = BigInt::from(self.r_probe);
        let mut base = Vec::with_capacity(k);
        for xi in x {
            if *xi <= zero || *xi >= one {
                return Err(Error::OutOfRange(format!("slice coordinate {xi} not in (0,1)")));
            }
            let scaled = xi * BigRational::from_integer(r.clone());
            base.push(scaled.floor().to_integer().to_u32().expect("coordinate below r"));
        }
        let mut sum = 0u128;
        for corner in 0u32..(1 << k) {
            let colors: Vec<u32> = base.iter().enumerate().map(|(i, b)| b + ((corner >> i) & 1)).collect();
            sum += self.table.get(&colors);
        }
        if sum == 0 {
            return Err(Error::DegenerateSlice);
        }
        let num = BigInt::from(sum) * r.pow(k as u32);
        let den = BigInt::from(self.total) << k;
        Ok(BigRational::new(num, den))
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        let exact: Vec<BigRational> = x
            .iter()
            .map(|v| BigRational::from_float(*v).ok_or_else(|| Error::Invalid(format!("coordinate {v} is not finite"))))
            .collect::<Result<_>>()?;
        Ok(self.eval_exact(&exact)?.to_f64().unwrap_or(f64::NAN))
    }
}

/// One-shot estimate of `f(x)` with `tracked` edges pinned near `x·r_probe`.
pub fn slice_density(g_closed: &ColoredGraph, tracked: &[usize], x: &[BigRational], r_probe: u32) -> Result<BigRational> {
    SliceDensity::new(g_closed, tracked, r_probe)?.eval_exact(x)
}
