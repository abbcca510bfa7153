//! Riemann sums against roots of unity, their three limit regimes, exact Fourier integrals of
//! piecewise polynomials, and the push-forward integral compared with exact traces.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{check_level, RootSpec};
use crate::trace::{trace_weighted, WeightedMulticurve};
use crate::verlinde::SliceDensity;
use crate::{Error, Result};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Polynomial with rational coefficients, lowest degree first.
pub type RatPoly = Vec<BigRational>;

fn poly_eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn poly_derivative(p: &[BigRational]) -> RatPoly {
    p.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect()
}

/// Compactly supported function, polynomial on each `[b_i, b_{i+1}]` and zero elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewisePoly {
    breakpoints: Vec<BigRational>,
    pieces: Vec<RatPoly>,
}

impl PiecewisePoly {
    pub fn new(breakpoints: Vec<BigRational>, pieces: Vec<RatPoly>) -> Result<Self> {
        if breakpoints.len() != pieces.len() + 1 && !(breakpoints.is_empty() && pieces.is_empty()) {
            return Err(Error::Invalid(format!(
                "{} breakpoints need {} pieces, got {}",
                breakpoints.len(),
                breakpoints.len().saturating_sub(1),
                pieces.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid("breakpoints must increase strictly".into()));
        }
        Ok(Self { breakpoints, pieces })
    }

    pub fn zero() -> Self {
        Self { breakpoints: Vec::new(), pieces: Vec::new() }
    }

    /// `min(x, 1 − x)` on `[0, 1]`.
    pub fn tent() -> Self {
        let b = vec![rat(0, 1), rat(1, 2), rat(1, 1)];
        let pieces = vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(-1, 1)]];
        Self { breakpoints: b, pieces }
    }

    /// The constant `c` on `[a, b]`, discontinuous at the ends.
    pub fn indicator(a: BigRational, b: BigRational, c: BigRational) -> Result<Self> {
        Self::new(vec![a, b], vec![vec![c]])
    }

    /// Linear interpolation through `(knots_i, values_i)` plus a cubic bump
    /// `bumps_i·(x − x_i)(x − x_{i+1})(x − mid_i)` on each interval.
    pub fn from_knots(knots: &[BigRational], values: &[BigRational], bumps: &[BigRational]) -> Result<Self> {
        if knots.len() < 2 || values.len() != knots.len() || bumps.len() + 1 != knots.len() {
            return Err(Error::Invalid("knots, values and bumps have inconsistent lengths".into()));
        }
        let two = rat(2, 1);
        let mut pieces = Vec::new();
        for i in 0..bumps.len() {
            let (x0, x1) = (&knots[i], &knots[i + 1]);
            let slope = (&values[i + 1] - &values[i]) / (x1 - x0);
            // v_i + slope (x − x0)
            let linear = vec![&values[i] - &slope * x0, slope];
            let mid = (x0 + x1) / &two;
            // (x − x0)(x − x1)(x − mid) expanded
            let (s1, s2, s3) = (x0 + x1 + &mid, x0 * x1 + x0 * &mid + x1 * &mid, x0 * x1 * &mid);
            let cubic = [-s3, s2, -s1, BigRational::one()];
            let mut piece: RatPoly = vec![BigRational::zero(); 4];
            for (k, c) in linear.into_iter().enumerate() {
                piece[k] += c;
            }
            for (k, c) in cubic.iter().enumerate() {
                piece[k] += c * &bumps[i];
            }
            pieces.push(piece);
        }
        Self::new(knots.to_vec(), pieces)
    }

    /// A continuous piecewise cubic on `[0, 1]` vanishing at both ends, with `pieces` equal
    /// intervals, knot values in `[−1, 1]` and bump sizes in `[−2, 2]`, all in steps of `1/8`.
    pub fn random_cubic<R: rand::Rng>(rng: &mut R, pieces: usize) -> Result<Self> {
        if pieces == 0 {
            return Err(Error::Invalid("a piecewise cubic needs at least one piece".into()));
        }
        let knots: Vec<BigRational> = (0..=pieces).map(|i| rat(i as i64, pieces as i64)).collect();
        let values: Vec<BigRational> = (0..=pieces)
            .map(|i| if i == 0 || i == pieces { rat(0, 1) } else { rat(rng.gen_range(-8..=8), 8) })
            .collect();
        let bumps: Vec<BigRational> = (0..pieces).map(|_| rat(rng.gen_range(-16..=16), 8)).collect();
        Self::from_knots(&knots, &values, &bumps)
    }

    pub fn breakpoints(&self) -> &[BigRational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[RatPoly] {
        &self.pieces
    }

    /// `[min, max]` of the support, if any.
    pub fn support(&self) -> Option<(&BigRational, &BigRational)> {
        Some((self.breakpoints.first()?, self.breakpoints.last()?))
    }

    /// Continuous everywhere, support ends included.
    pub fn is_continuous(&self) -> bool {
        let n = self.pieces.len();
        (0..=n).all(|i| {
            let x = &self.breakpoints[i];
            let left = if i == 0 { BigRational::zero() } else { poly_eval(&self.pieces[i - 1], x) };
            let right = if i == n { BigRational::zero() } else { poly_eval(&self.pieces[i], x) };
            left == right
        })
    }

    /// Exact value; at an inner breakpoint the right piece is used.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let Some((lo, hi)) = self.support() else { return BigRational::zero() };
        if x < lo || x > hi {
            return BigRational::zero();
        }
        let i = match self.breakpoints.binary_search(x) {
            Ok(i) => i.min(self.pieces.len() - 1),
            Err(i) => i - 1,
        };
        poly_eval(&self.pieces[i], x)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        BigRational::from_float(x).map(|q| to_f64(&self.eval(&q))).unwrap_or(f64::NAN)
    }

    /// `∫ f`, exact.
    pub fn integral(&self) -> BigRational {
        let mut total = BigRational::zero();
        for (i, piece) in self.pieces.iter().enumerate() {
            let anti: RatPoly = std::iter::once(BigRational::zero())
                .chain(piece.iter().enumerate().map(|(k, c)| c / BigRational::from_integer((k as i64 + 1).into())))
                .collect();
            total += poly_eval(&anti, &self.breakpoints[i + 1]) - poly_eval(&anti, &self.breakpoints[i]);
        }
        total
    }
}

/// `∫ e^{iπtx} f(x) dx`, integrating each piece by parts exactly.
pub fn fourier_integral_omega(f: &PiecewisePoly, t: &BigRational) -> Complex64 {
    if t.is_zero() {
        return Complex64::new(to_f64(&f.integral()), 0.0);
    }
    let omega = PI * to_f64(t);
    let i_omega = Complex64::new(0.0, omega);
    // phase e^{iπtx} from the exact reduction of t·x mod 2
    let phase = |x: &BigRational| {
        let tx = t * x;
        let two = BigRational::from_integer(2.into());
        let reduced = &tx - (&tx / &two).floor() * &two;
        Complex64::from_polar(1.0, PI * to_f64(&reduced))
    };
    let mut total = Complex64::new(0.0, 0.0);
    for (i, piece) in f.pieces.iter().enumerate() {
        let (a, b) = (&f.breakpoints[i], &f.breakpoints[i + 1]);
        let mut deriv = piece.clone();
        let mut denom = i_omega;
        let mut sign = 1.0;
        while !deriv.is_empty() {
            let at_b = to_f64(&poly_eval(&deriv, b));
            let at_a = to_f64(&poly_eval(&deriv, a));
            total += sign * (phase(b) * at_b - phase(a) * at_a) / denom;
            deriv = poly_derivative(&deriv);
            denom *= i_omega;
            sign = -sign;
        }
    }
    total
}

/// `∫ e^{2iπσx} f(x) dx`.
pub fn fourier_integral(f: &PiecewisePoly, sigma: i64) -> Complex64 {
    fourier_integral_omega(f, &BigRational::from_integer((2 * sigma).into()))
}

/// `(1/p) Σ_n A^{2βn} f(n/p)` at `A = exp(iπ·angle)`.
pub fn h_sum_angle(f: &PiecewisePoly, beta: u32, p: u32, angle: f64) -> Complex64 {
    let Some((lo, hi)) = f.support() else { return Complex64::new(0.0, 0.0) };
    let pq = BigRational::from_integer(p.into());
    let n_lo = (lo * &pq).ceil().to_integer().to_i64().expect("support fits");
    let n_hi = (hi * &pq).floor().to_integer().to_i64().expect("support fits");
    let mut total = Complex64::new(0.0, 0.0);
    for n in n_lo..=n_hi {
        let v = to_f64(&f.eval(&rat(n, p as i64)));
        if v != 0.0 {
            let ph = (2.0 * beta as f64 * n as f64 * angle).rem_euclid(2.0);
            total += Complex64::from_polar(v, PI * ph);
        }
    }
    total / p as f64
}

/// `H_p = (1/p) Σ_n A_p^{2βn} f(n/p)` at a primitive root.
pub fn h_sum(f: &PiecewisePoly, beta: u32, root: &RootSpec) -> Complex64 {
    let Some((lo, hi)) = f.support() else { return Complex64::new(0.0, 0.0) };
    let p = root.p as i64;
    let pq = BigRational::from_integer(p.into());
    let n_lo = (lo * &pq).ceil().to_integer().to_i64().expect("support fits");
    let n_hi = (hi * &pq).floor().to_integer().to_i64().expect("support fits");
    let mut total = Complex64::new(0.0, 0.0);
    for n in n_lo..=n_hi {
        let v = to_f64(&f.eval(&rat(n, p)));
        if v != 0.0 {
            // A^{2βn} = exp(iπ · (2βkn mod 2p)/p), reduced exactly
            let e = (2 * beta as i64 * root.k as i64 * n).rem_euclid(2 * p);
            total += Complex64::from_polar(v, PI * e as f64 / p as f64);
        }
    }
    total / p as f64
}

/// How a root sequence `A_p` approaches `u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum RootRule {
    /// `A_p = u·exp(iπσ/(βp))`.
    Offset { sigma: i64 },
    /// `A_p = u·exp(iπθ_p)` with `θ_p = p^{−exponent}`.
    PowerLaw { exponent: f64 },
    /// The primitive root nearest to `u`, ties to the smaller `k`.
    Nearest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "UPPERCASE")]
pub enum Regime {
    /// `u^{2β} ≠ 1`: `H_p = O(1/p)`.
    Case1,
    /// `u^{2β} = 1` and `pθ_p → ∞`: `H_p = O(1/(pθ_p))`.
    Case2,
    /// `u^{2β} = 1` and `pθ_p = σ/β`: `H_p → ∫ e^{2iπσx} f`.
    Case3 { sigma: i64 },
}

/// Sort a root sequence into the three limit regimes, `u = exp(iπ·u_angle)`.
pub fn regime_classify(u_angle: &BigRational, beta: u32, rule: RootRule) -> Result<Regime> {
    if beta == 0 {
        return Err(Error::Invalid("beta must be positive".into()));
    }
    // u^{2β} = 1 iff β·u_angle is an integer
    if !(u_angle * BigRational::from_integer(beta.into())).is_integer() {
        return Ok(Regime::Case1);
    }
    match rule {
        RootRule::Offset { sigma } if sigma.is_odd() => Ok(Regime::Case3 { sigma }),
        RootRule::Offset { sigma } => Err(Error::NotClassifiable(format!("sigma = {sigma} is even"))),
        RootRule::PowerLaw { exponent } if exponent > 0.0 && exponent < 1.0 => Ok(Regime::Case2),
        RootRule::PowerLaw { exponent } if exponent == 1.0 && beta == 1 => Ok(Regime::Case3 { sigma: 1 }),
        RootRule::PowerLaw { exponent } => {
            Err(Error::NotClassifiable(format!("θ_p = p^-{exponent} fixes neither divergence nor σ")))
        }
        RootRule::Nearest => {
            // βpθ_p over a window of levels; constant means case 3
            let u = to_f64(u_angle);
            let mut seen = None;
            for p in (100..=400).step_by(2) {
                let root = RootSpec::nearest(p, u)?;
                let theta_p = ((root.k as f64 / p as f64 - u + 1.0).rem_euclid(2.0) - 1.0) * p as f64;
                let s = (theta_p * beta as f64).round() as i64;
                if (theta_p * beta as f64 - s as f64).abs() > 1e-6 || s % 2 == 0 || seen.is_some_and(|v| v != s) {
                    return Err(Error::NotClassifiable("nearest roots do not keep pθ_p constant".into()));
                }
                seen = Some(s);
            }
            Ok(Regime::Case3 { sigma: seen.expect("nonempty window") })
        }
    }
}

/// `∫_{[0,1]^k} Π_j 2cos(ω_j x_j) f(x) dx` for the counting estimate of the slice density.
///
/// The estimate is constant on cells of side `1/r`, so each cell integrates in closed form.
pub fn density_integral(density: &SliceDensity, omegas: &[f64]) -> Result<f64> {
    let k = density.tracked().len();
    if omegas.len() != k {
        return Err(Error::Invalid(format!("{k} tracked edges but {} frequencies", omegas.len())));
    }
    let r = density.r_probe() as i64;
    let cell = |j: usize, b: i64| -> f64 {
        let (x0, x1) = (b as f64 / r as f64, (b + 1) as f64 / r as f64);
        let w = omegas[j];
        if w == 0.0 {
            2.0 * (x1 - x0)
        } else {
            2.0 * ((w * x1).sin() - (w * x0).sin()) / w
        }
    };
    let mut total = 0.0;
    let mut base = vec![0i64; k];
    loop {
        // cells touching 0 or 1 contribute through their interior points only
        let x: Vec<BigRational> = base.iter().map(|b| rat(2 * b + 1, 2 * r)).collect();
        let value = match density.eval_exact(&x) {
            Ok(v) => to_f64(&v),
            Err(Error::DegenerateSlice) => 0.0,
            Err(e) => return Err(e),
        };
        if value != 0.0 {
            total += value * (0..k).map(|j| cell(j, base[j])).product::<f64>();
        }
        let mut j = 0;
        loop {
            if j == k {
                return Ok(total);
            }
            base[j] += 1;
            if base[j] < r {
                break;
            }
            base[j] = 0;
            j += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WittenRow {
    pub p: u32,
    pub sigma: i64,
    pub ev_re: f64,
    pub ev_im: f64,
    pub integral: f64,
    /// Change of the integral between probes `r` and `r/2`.
    pub integral_err: f64,
    pub gap: f64,
}

/// Compare `ev_{A_p^σ} tr_p[γ, w]`, `A_p = −e^{iπ/p}`, with `∫ Π_j 2cos(πσa_j x_j) f(x) dx`
/// (zero when `Σ b_j` is odd).
pub fn witten_compare(mc: &WeightedMulticurve, sigma: i64, p_list: &[i64], r_probe: u32) -> Result<Vec<WittenRow>> {
    for &p in p_list {
        check_level(p)?;
        if sigma.gcd(&(2 * p)) != 1 {
            return Err(Error::BadSigma { sigma, two_p: 2 * p });
        }
    }
    let (closed, tracked) = mc.graph.glue_closed_tracked();
    let genus = closed.cycle_rank();
    if genus < 2 || closed.components() != 1 {
        return Err(Error::Invalid(format!("witten_compare needs a connected surface of genus ≥ 2, got genus {genus}")));
    }
    let b_sum: i64 = mc.weights.iter().map(|w| w.b).sum();
    let (integral, integral_err) = if b_sum.is_odd() {
        (0.0, 0.0)
    } else {
        let omegas: Vec<f64> = mc.weights.iter().map(|w| PI * (sigma * w.a) as f64).collect();
        let fine = density_integral(&SliceDensity::new(&closed, &tracked, r_probe)?, &omegas)?;
        let coarse = density_integral(&SliceDensity::new(&closed, &tracked, (r_probe / 2).max(3))?, &omegas)?;
        (fine, (fine - coarse).abs())
    };
    p_list
        .iter()
        .map(|&p| {
            let root = RootSpec::new(p, sigma * (p + 1))?;
            let ev = trace_weighted(mc, p)?.ev_root(&root)?;
            Ok(WittenRow {
                p: p as u32,
                sigma,
                ev_re: ev.re,
                ev_im: ev.im,
                integral,
                integral_err,
                gap: (ev - Complex64::new(integral, 0.0)).norm(),
            })
        })
        .collect()
}
