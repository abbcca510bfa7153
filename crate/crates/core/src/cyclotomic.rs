//! Arithmetic in `ℤ[A]/(A^{2p} − 1)` with an exact rational scale, plus roots of unity.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::laurent::LaurentPoly;
use crate::{Error, Result};

/// Check `p = 2r ≥ 6`.
pub fn check_level(p: i64) -> Result<u32> {
    if p < 6 || p % 2 != 0 || p > u32::MAX as i64 / 4 {
        return Err(Error::BadLevel(p));
    }
    Ok(p as u32)
}

/// `δ^p_i`: one iff `p | i`. The period is `p`, not `2p`.
pub fn delta_p(i: i64, p: i64) -> u8 {
    (i.rem_euclid(p) == 0) as u8
}

/// `scale · Σ_{n<2p} coeffs[n] A^n` with `A^{2p} = 1`.
#[derive(Clone)]
pub struct CycElem {
    p: u32,
    coeffs: Vec<BigInt>,
    scale: BigRational,
}

impl CycElem {
    pub fn zero(p: u32) -> Self {
        Self {
            p,
            coeffs: vec![BigInt::zero(); 2 * p as usize],
            scale: BigRational::one(),
        }
    }

    pub fn one(p: u32) -> Self {
        Self::monomial(p, 1, 0)
    }

    /// `c · A^e`, exponent reduced mod `2p`.
    pub fn monomial(p: u32, c: impl Into<BigInt>, e: i64) -> Self {
        let mut x = Self::zero(p);
        x.coeffs[e.rem_euclid(2 * p as i64) as usize] = c.into();
        x
    }

    pub fn from_coeffs(p: u32, coeffs: Vec<BigInt>, scale: BigRational) -> Result<Self> {
        if coeffs.len() != 2 * p as usize {
            return Err(Error::Invalid(format!("expected {} coefficients, got {}", 2 * p, coeffs.len())));
        }
        Ok(Self { p, coeffs, scale })
    }

    pub fn from_laurent(poly: &LaurentPoly, p: u32) -> Self {
        let mut x = Self::zero(p);
        for (e, c) in poly.terms() {
            x.coeffs[e.rem_euclid(2 * p as i64) as usize] += c;
        }
        x
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn scale(&self) -> &BigRational {
        &self.scale
    }

    pub fn add_term(&mut self, e: i64, c: &BigInt) {
        assert!(self.scale.is_one(), "add_term on a scaled element");
        self.coeffs[e.rem_euclid(2 * self.p as i64) as usize] += c;
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero() || self.coeffs.iter().all(Zero::is_zero)
    }

    fn same_level(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::MismatchedLevel(self.p, other.p));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        if self.scale == other.scale {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
            return Ok(Self { p: self.p, coeffs, scale: self.scale.clone() });
        }
        // common scale gcd(num)/lcm(den) keeps both rescalings integral
        let (a, b) = (self.scale.numer(), self.scale.denom());
        let (c, d) = (other.scale.numer(), other.scale.denom());
        let g = a.gcd(c);
        let common = if g.is_zero() { BigRational::one() } else { BigRational::new(g, b.lcm(d)) };
        let k1 = int_ratio(&self.scale, &common);
        let k2 = int_ratio(&other.scale, &common);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x * &k1 + y * &k2).collect();
        Ok(Self { p: self.p, coeffs, scale: common })
    }

    pub fn neg(&self) -> Self {
        Self {
            p: self.p,
            coeffs: self.coeffs.clone(),
            scale: -self.scale.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        let n = 2 * self.p as usize;
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                coeffs[(i + j) % n] += a * b;
            }
        }
        Ok(Self { p: self.p, coeffs, scale: &self.scale * &other.scale })
    }

    pub fn scalar_mul(&self, k: &BigRational) -> Self {
        Self {
            p: self.p,
            coeffs: self.coeffs.clone(),
            scale: &self.scale * k,
        }
    }

    /// Multiply by `A^e`.
    pub fn shift(&self, e: i64) -> Self {
        let n = 2 * self.p as i64;
        let mut coeffs = vec![BigInt::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(i as i64 + e).rem_euclid(n) as usize] = c.clone();
        }
        Self { p: self.p, coeffs, scale: self.scale.clone() }
    }

    /// Coefficients with the scale absorbed.
    pub fn rational_coeffs(&self) -> Vec<BigRational> {
        self.coeffs.iter().map(|c| &self.scale * BigRational::from_integer(c.clone())).collect()
    }

    /// Equality in `ℚ[A]/(A^{2p} − 1)`.
    pub fn eq_ring(&self, other: &Self) -> bool {
        self.p == other.p && self.rational_coeffs() == other.rational_coeffs()
    }

    /// Canonical image in `K_p = ℚ[A]/(φ_{2p})`, as coefficients of `1, A, …, A^{φ(2p)−1}`.
    pub fn to_field(&self) -> Vec<BigRational> {
        let phi = cyclotomic_poly(2 * self.p as u64);
        let mut rem: Vec<BigInt> = self.coeffs.clone();
        let deg = phi.len() - 1;
        for top in (deg..rem.len()).rev() {
            let c = std::mem::take(&mut rem[top]);
            if c.is_zero() {
                continue;
            }
            // φ is monic: subtract c·A^{top−deg}·φ
            for (j, f) in phi.iter().enumerate().take(deg) {
                rem[top - deg + j] -= &c * f;
            }
        }
        rem.truncate(deg);
        rem.into_iter().map(|c| &self.scale * BigRational::from_integer(c)).collect()
    }

    /// Equality in the cyclotomic field, i.e. at every primitive `2p`-th root.
    pub fn eq_in_field(&self, other: &Self) -> bool {
        self.p == other.p && self.to_field() == other.to_field()
    }

    pub fn ev_root(&self, root: &RootSpec) -> Result<Complex64> {
        if root.p != self.p {
            return Err(Error::MismatchedLevel(self.p, root.p));
        }
        Ok(self.ev_angle(root.k as f64 / self.p as f64))
    }

    /// Evaluate at `A = exp(iπt)`.
    pub fn ev_angle(&self, t: f64) -> Complex64 {
        let s = self.scale.to_f64().unwrap_or(f64::NAN);
        let sum: Complex64 = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| {
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), std::f64::consts::PI * t * n as f64)
            })
            .sum();
        sum * s
    }

    /// Max coefficient after folding with `A^p = −1`; an upper bound for the infimum norm.
    pub fn norm_upper_bound(&self) -> BigRational {
        let p = self.p as usize;
        (0..p)
            .map(|m| &self.coeffs[m] - &self.coeffs[m + p])
            .map(|c| (&self.scale * BigRational::from_integer(c)).abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

fn int_ratio(s: &BigRational, common: &BigRational) -> BigInt {
    let q = s / common;
    debug_assert!(q.is_integer());
    q.to_integer()
}

impl PartialEq for CycElem {
    fn eq(&self, other: &Self) -> bool {
        self.eq_ring(other)
    }
}

impl fmt::Debug for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycElem(p={}, {}·[", self.p, self.scale)?;
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*A^{n}")?;
        }
        write!(f, "])")
    }
}

/// Integer coefficients of `φ_n`, lowest degree first.
pub fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.clone();
    }
    // x^n − 1 divided by φ_d for every proper divisor d
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n % d == 0) {
        num = poly_div_monic(&num, &cyclotomic_poly(d));
    }
    cache.lock().unwrap().insert(n, num.clone());
    num
}

fn poly_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        for (j, f) in den.iter().enumerate() {
            rem[i + j] -= &c * f;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// A primitive `2p`-th root `A_p = exp(iπk/p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootSpec {
    pub p: u32,
    pub k: u32,
}

impl RootSpec {
    pub fn new(p: i64, k: i64) -> Result<Self> {
        let p = check_level(p)?;
        let two_p = 2 * p as i64;
        let k = k.rem_euclid(two_p);
        if k.gcd(&two_p) != 1 {
            return Err(Error::Invalid(format!("k = {k} is not coprime to 2p = {two_p}")));
        }
        Ok(Self { p, k: k as u32 })
    }

    /// `A_p = −exp(iπ/p)`, i.e. `k = p + 1`.
    pub fn minus_first(p: i64) -> Result<Self> {
        Self::new(p, p + 1)
    }

    pub fn angle(&self) -> f64 {
        self.k as f64 / self.p as f64
    }

    pub fn value(&self) -> Complex64 {
        Complex64::from_polar(1.0, std::f64::consts::PI * self.angle())
    }

    /// Primitive root nearest to `exp(iπt)`; ties go to the smaller `k`.
    pub fn nearest(p: i64, t: f64) -> Result<Self> {
        let roots = primitive_roots(p)?;
        let dist = |r: &RootSpec| {
            let d = (r.angle() - t).rem_euclid(2.0);
            d.min(2.0 - d)
        };
        let mut best = roots[0];
        for r in &roots[1..] {
            if dist(r) < dist(&best) - 1e-15 {
                best = *r;
            }
        }
        Ok(best)
    }
}

/// All `k ∈ [1, 2p)` coprime to `2p`, sorted.
pub fn primitive_roots(p: i64) -> Result<Vec<RootSpec>> {
    let p32 = check_level(p)?;
    let two_p = 2 * p;
    Ok((1..two_p)
        .filter(|k| k.gcd(&two_p) == 1)
        .map(|k| RootSpec { p: p32, k: k as u32 })
        .collect())
}

#[derive(Serialize, Deserialize)]
struct CycJson {
    p: u32,
    scale: String,
    coeffs: Vec<String>,
}

impl Serialize for CycElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycJson {
            p: self.p,
            scale: format!("{}/{}", self.scale.numer(), self.scale.denom()),
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = CycJson::deserialize(d)?;
        let scale = parse_rational(&j.scale).map_err(D::Error::custom)?;
        let coeffs = j
            .coeffs
            .iter()
            .map(|c| c.parse::<BigInt>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        CycElem::from_coeffs(j.p, coeffs, scale).map_err(D::Error::custom)
    }
}

/// Parse `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Invalid(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n.trim().parse().map_err(|_| bad())?, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}
