//! Laurent polynomials in `A^{±1}` with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Finitely supported `Σ c_n A^n`; zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

/// Outcome of the zero / unit / large dichotomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Dichotomy {
    Zero,
    Unit,
    Large,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub kind: Dichotomy,
    /// `Σ |c_n|²`; it equals the mean of `|P|²` over the unit circle.
    pub mass: BigInt,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · A^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    /// `A^e`.
    pub fn a_pow(e: i64) -> Self {
        Self::monomial(1, e)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Quantum integer `[2] = A² + A⁻²`; a trivial circle is `−[2]`.
    pub fn quantum_two() -> Self {
        Self::from_terms([(2, 1), (-2, 1)])
    }

    pub fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `inf{n : P = Σ_{-n}^{n} c_i A^i}`, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        let lo = self.min_exp()?;
        let hi = self.max_exp()?;
        Some(lo.unsigned_abs().max(hi.unsigned_abs()))
    }

    /// Multiply by `A^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitute `A ↦ A⁻¹`.
    pub fn mirror(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        let (d_hi, d_lead) = d.coeffs.iter().next_back().map(|(e, c)| (*e, c.clone()))?;
        let d_span = d_hi - d.min_exp()?;
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some(r_hi) = rem.max_exp() {
            if r_hi - rem.min_exp().unwrap() < d_span {
                return None;
            }
            let lead = rem.coeff(r_hi);
            let (q, r) = lead.div_rem(&d_lead);
            if !r.is_zero() {
                return None;
            }
            let term = LaurentPoly::monomial(q, r_hi - d_hi);
            rem -= &(&term * d);
            quot += &term;
        }
        Some(quot)
    }

    /// `Σ c_n u^n` for an arbitrary complex `u`.
    pub fn eval(&self, u: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(e, c)| u.powi(*e as i32) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    /// Evaluate at `u = exp(iπt)`.
    pub fn eval_circle(&self, t: f64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(e, c)| {
                let phase = std::f64::consts::PI * t * (*e as f64);
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), phase)
            })
            .sum()
    }

    /// `Σ |c_n|²`.
    pub fn l2_mass(&self) -> BigInt {
        self.coeffs.values().map(|c| c * c).sum()
    }

    /// Zero, a unit `±A^m`, or anything else (whose sup norm on the circle exceeds one).
    pub fn parseval_classify(&self) -> Classification {
        let mass = self.l2_mass();
        let kind = if self.is_zero() {
            Dichotomy::Zero
        } else if mass.is_one() {
            Dichotomy::Unit
        } else {
            Dichotomy::Large
        };
        Classification { kind, mass }
    }

    pub fn is_unit(&self) -> bool {
        self.parseval_classify().kind == Dichotomy::Unit
    }
}

impl fmt::Display for LaurentPoly {
    /// `2*A^1 - 1*A^-3`; the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{c}*A^{e}")?,
                (0, true) => write!(f, "-{}*A^{e}", c.abs())?,
                (_, false) => write!(f, " + {c}*A^{e}")?,
                (_, true) => write!(f, " - {}*A^{e}", c.abs())?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl std::str::FromStr for LaurentPoly {
    type Err = crate::Error;

    /// Parses the [`Display`](fmt::Display) format, e.g. `3*A^2 - A^-1 + 4`.
    fn from_str(s: &str) -> crate::Result<Self> {
        let bad = || crate::Error::Invalid(format!("cannot parse polynomial {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body
                .char_indices()
                .skip(1)
                .find(|&(i, c)| (c == '+' || c == '-') && !body[..i].ends_with('^'))
                .map(|(i, _)| i)
                .unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            let (c, e) = match term.split_once('A') {
                None => (term.parse::<BigInt>().map_err(|_| bad())?, 0),
                Some((c, e)) => {
                    let c = c.trim_end_matches('*');
                    let c = if c.is_empty() { BigInt::one() } else { c.parse().map_err(|_| bad())? };
                    let e = match e.strip_prefix('^') {
                        Some(e) => e.parse::<i64>().map_err(|_| bad())?,
                        None if e.is_empty() => 1,
                        None => return Err(bad()),
                    };
                    (c, e)
                }
            };
            out.add_term(e, c * sign);
        }
        Ok(out)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let m: BTreeMap<String, String> =
            self.coeffs.iter().map(|(e, c)| (e.to_string(), c.to_string())).collect();
        m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let m = BTreeMap::<String, String>::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (e, c) in m {
            let e: i64 = e.parse().map_err(D::Error::custom)?;
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, -c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc = LaurentPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn difference_of_squares() {
        let p = lp(&[(1, 1), (-1, 1)]) * lp(&[(1, 1), (-1, -1)]);
        assert_eq!(p, lp(&[(2, 1), (-2, -1)]));
    }

    #[test]
    fn square_expansion() {
        let q = LaurentPoly::quantum_two();
        assert_eq!(&q * &q, lp(&[(4, 1), (0, 2), (-4, 1)]));
        assert!((lp(&[(3, 4)]) * LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn degrees() {
        assert_eq!(lp(&[(3, 1), (0, 2), (-1, -1)]).degree(), Some(3));
        assert_eq!(LaurentPoly::constant(5).degree(), Some(0));
        assert_eq!(LaurentPoly::zero().degree(), None);
    }

    #[test]
    fn circle_values() {
        let i_val = LaurentPoly::quantum_two().eval_circle(0.5);
        assert!((i_val - Complex64::new(-2.0, 0.0)).norm() < 1e-12);
        assert!((lp(&[(1, 2)]).eval_circle(0.0) - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        // u = e^{iπ/4}: u⁴ = −1, so A⁴ + 2 + A⁻⁴ = −1 + 2 − 1 = 0... computed directly
        let p = lp(&[(4, 1), (0, 2), (-4, 1)]);
        let u = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        let direct = u.powi(4) + 2.0 + u.powi(-4);
        assert!((p.eval_circle(0.25) - direct).norm() < 1e-12);
    }

    #[test]
    fn dichotomy() {
        assert_eq!(lp(&[(5, -1)]).parseval_classify().kind, Dichotomy::Unit);
        assert_eq!(LaurentPoly::zero().parseval_classify().kind, Dichotomy::Zero);
        let c = lp(&[(1, 1), (-1, 1)]).parseval_classify();
        assert_eq!(c.kind, Dichotomy::Large);
        assert_eq!(c.mass, BigInt::from(2));
    }

    #[test]
    fn display_and_parse_roundtrip() {
        let p = lp(&[(1, 2), (-3, -1), (0, 7)]);
        assert_eq!(p.to_string(), "2*A^1 + 7*A^0 - 1*A^-3");
        assert_eq!(p.to_string().parse::<LaurentPoly>().unwrap(), p);
        assert_eq!("A^2 - A^-2 + 3".parse::<LaurentPoly>().unwrap(), lp(&[(2, 1), (-2, -1), (0, 3)]));
        assert_eq!("0".parse::<LaurentPoly>().unwrap(), LaurentPoly::zero());
    }

    #[test]
    fn json_roundtrip() {
        let p = lp(&[(1, 2), (-3, -1)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"-3":"-1","1":"2"}"#);
        assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), p);
    }

    #[test]
    fn exact_division_by_quantum_two() {
        let q = LaurentPoly::quantum_two();
        let p = lp(&[(3, 1), (0, -2), (-5, 4)]);
        assert_eq!((&p * &q).div_exact(&q), Some(p));
        assert_eq!(LaurentPoly::one().div_exact(&q), None);
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i64..=6, -5i64..=5), 0..6).prop_map(|t| LaurentPoly::from_terms(t))
    }

    proptest! {
        #[test]
        fn ring_axioms(p in small_poly(), q in small_poly(), r in small_poly()) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn degree_subadditive(p in small_poly(), q in small_poly()) {
            if let (Some(dp), Some(dq)) = (p.degree(), q.degree()) {
                let dpq = (&p * &q).degree().unwrap();
                prop_assert!(dpq <= dp + dq);
                // extreme exponents on the same side add up
                let (ph, qh) = (p.max_exp().unwrap(), q.max_exp().unwrap());
                let (pl, ql) = (p.min_exp().unwrap(), q.min_exp().unwrap());
                let pick = |lo: i64, hi: i64| if hi.abs() >= lo.abs() { hi } else { lo };
                let (ep, eq) = (pick(pl, ph), pick(ql, qh));
                if ep.signum() == eq.signum() && ep.abs() as u64 == dp && eq.abs() as u64 == dq {
                    prop_assert_eq!(dpq, dp + dq);
                }
            }
        }

        #[test]
        fn large_mass_exceeds_one_somewhere(p in small_poly()) {
            if p.l2_mass() >= BigInt::from(2) {
                let best = (0..1024)
                    .map(|j| p.eval_circle(2.0 * j as f64 / 1024.0).norm())
                    .fold(0.0f64, f64::max);
                prop_assert!(best > 1.0);
            }
        }

        #[test]
        fn division_inverts_multiplication(p in small_poly(), q in small_poly()) {
            if !q.is_zero() {
                prop_assert_eq!((&p * &q).div_exact(&q), Some(p));
            }
        }
    }
}
