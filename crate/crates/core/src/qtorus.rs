//! The symmetric quantum torus, i.e. the skein algebra of `T × [0,1]`.
//!
//! Elements are stored in the basis `⟨a,b⟩ = M^a L^b + M^{-a} L^{-b}` (one key per
//! orbit `(a,b) ~ (−a,−b)`) plus the empty skein. Framed torus curves are
//! `(a,b)_T = (−1)^{a+b} A^{−ab} ⟨a,b⟩`, and `⟨0,0⟩ = 2·∅`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{check_level, delta_p, CycElem};
use crate::laurent::LaurentPoly;
use crate::{Error, Result};

/// A homology class `(a, b)` of the torus: `a` along the curve, `b` along `S¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HomClass {
    pub a: i64,
    pub b: i64,
}

impl HomClass {
    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    /// `det(self, other) = ad − bc`.
    pub fn det(self, other: HomClass) -> i64 {
        self.a * other.b - self.b * other.a
    }

    pub fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Representative with `a > 0`, or `a = 0` and `b > 0`.
    pub fn canonical(self) -> Self {
        if self.a < 0 || (self.a == 0 && self.b < 0) {
            self.neg()
        } else {
            self
        }
    }
}

impl From<(i64, i64)> for HomClass {
    fn from((a, b): (i64, i64)) -> Self {
        Self::new(a, b)
    }
}

/// A `ℤ[A^{±1}]`-combination of `⟨a,b⟩` and the empty skein.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct QTSym {
    empty: LaurentPoly,
    terms: BTreeMap<HomClass, LaurentPoly>,
}

impl QTSym {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The empty skein, the unit of the algebra.
    pub fn empty() -> Self {
        Self::scalar(LaurentPoly::one())
    }

    pub fn scalar(c: LaurentPoly) -> Self {
        Self { empty: c, terms: BTreeMap::new() }
    }

    /// `⟨a,b⟩`.
    pub fn sym(x: impl Into<HomClass>) -> Self {
        let mut out = Self::zero();
        out.add_sym(x.into(), &LaurentPoly::one());
        out
    }

    /// The framed curve `(a,b)_T`.
    pub fn torus(x: impl Into<HomClass>) -> Self {
        let mut out = Self::zero();
        out.add_torus(x.into(), &LaurentPoly::one());
        out
    }

    /// `self += c·⟨x⟩`.
    pub fn add_sym(&mut self, x: HomClass, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        if x.is_zero() {
            self.empty += &c.scale(&BigInt::from(2));
            return;
        }
        let key = x.canonical();
        let slot = self.terms.entry(key).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `self += c·(x)_T`.
    pub fn add_torus(&mut self, x: HomClass, c: &LaurentPoly) {
        let sign = if (x.a + x.b).rem_euclid(2) == 0 { 1 } else { -1 };
        self.add_sym(x, &c.shift(-x.a * x.b).scale(&BigInt::from(sign)));
    }

    pub fn empty_coeff(&self) -> &LaurentPoly {
        &self.empty
    }

    /// Nontrivial terms in the `⟨a,b⟩` basis, keyed by canonical representative.
    pub fn sym_terms(&self) -> impl Iterator<Item = (HomClass, &LaurentPoly)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    /// Coefficient of `(x)_T` when `self` is rewritten in the framed-curve basis.
    /// For `x = (0,0)` this is the empty-skein coefficient.
    pub fn torus_coeff(&self, x: HomClass) -> LaurentPoly {
        if x.is_zero() {
            return self.empty.clone();
        }
        let sym = self.terms.get(&x.canonical()).cloned().unwrap_or_default();
        let sign = if (x.a + x.b).rem_euclid(2) == 0 { 1 } else { -1 };
        sym.shift(x.a * x.b).scale(&BigInt::from(sign))
    }

    pub fn is_zero(&self) -> bool {
        self.empty.is_zero() && self.terms.is_empty()
    }

    pub fn add(&self, other: &QTSym) -> QTSym {
        let mut out = self.clone();
        out.empty += &other.empty;
        for (k, v) in &other.terms {
            out.add_sym(*k, v);
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> QTSym {
        let mut out = QTSym::scalar(&self.empty * c);
        for (k, v) in &self.terms {
            out.add_sym(*k, &(v * c));
        }
        out
    }

    /// Bilinear product; `⟨a,b⟩⟨c,d⟩ = A^{−2bc}⟨a+c,b+d⟩ + A^{2bc}⟨a−c,b−d⟩`.
    pub fn multiply(&self, other: &QTSym) -> QTSym {
        let mut out = QTSym::scalar(&self.empty * &other.empty);
        for (k, v) in &other.terms {
            out.add_sym(*k, &(&self.empty * v));
        }
        for (k, v) in &self.terms {
            out.add_sym(*k, &(v * &other.empty));
        }
        for (x, u) in &self.terms {
            for (y, v) in &other.terms {
                let uv = u * v;
                let bc = x.b * y.a;
                out.add_sym(HomClass::new(x.a + y.a, x.b + y.b), &uv.shift(-2 * bc));
                out.add_sym(HomClass::new(x.a - y.a, x.b - y.b), &uv.shift(2 * bc));
            }
        }
        out
    }

    /// The limit map: every nontrivial `⟨a,b⟩` goes to zero.
    pub fn eta(&self) -> LaurentPoly {
        self.empty.clone()
    }

    /// Operator on `V_p(T)` in the basis `e_1, …, e_{r−1}`.
    pub fn operator_matrix(&self, p: i64) -> Result<Matrix> {
        let p32 = check_level(p)?;
        let n = (p / 2 - 1) as usize;
        let mut m = Matrix::identity(p32, n).scale_poly(&self.empty);
        for (k, v) in &self.terms {
            let t = torus_operator_matrix(k.a, k.b, p)?.scale_poly(v);
            m = m.add(&t);
        }
        Ok(m)
    }
}

impl fmt::Display for QTSym {
    /// One `(a,b):polynomial` term per line in the `⟨a,b⟩` basis; `(0,0)` is the empty skein.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lines = Vec::new();
        if !self.empty.is_zero() {
            lines.push(format!("(0,0):{}", self.empty));
        }
        for (k, v) in &self.terms {
            lines.push(format!("({},{}):{}", k.a, k.b, v));
        }
        if lines.is_empty() {
            lines.push("(0,0):0".to_string());
        }
        write!(f, "{}", lines.join("\n"))
    }
}

impl fmt::Debug for QTSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QTSym[{}]", self.to_string().replace('\n', "; "))
    }
}

/// `(x)_T · (y)_T = A^{det}(x+y)_T + A^{−det}(x−y)_T`, returned in the `⟨a,b⟩` basis.
pub fn product_to_sum(x: HomClass, y: HomClass) -> QTSym {
    let d = x.det(y);
    let mut out = QTSym::zero();
    out.add_torus(HomClass::new(x.a + y.a, x.b + y.b), &LaurentPoly::a_pow(d));
    out.add_torus(HomClass::new(x.a - y.a, x.b - y.b), &LaurentPoly::a_pow(-d));
    out
}

/// Partial sums of `x₀ + ε₁x₁ + ⋯` with the accumulated area exponents.
fn signed_path_sums(classes: &[HomClass]) -> HashMap<HomClass, LaurentPoly> {
    let mut states: HashMap<HomClass, LaurentPoly> = HashMap::new();
    states.insert(classes[0], LaurentPoly::one());
    for &x in &classes[1..] {
        let mut next: HashMap<HomClass, LaurentPoly> = HashMap::with_capacity(states.len() * 2);
        for (s, poly) in &states {
            for step in [x, x.neg()] {
                let target = HomClass::new(s.a + step.a, s.b + step.b);
                *next.entry(target).or_default() += &poly.shift(s.det(step));
            }
        }
        next.retain(|_, v| !v.is_zero());
        states = next;
    }
    states
}

/// `(x₀)_T ⋯ (x_k)_T = Σ_ε A^{Σ_j det(x₀+⋯+ε_{j−1}x_{j−1}, ε_j x_j)} (x₀ + ε₁x₁ + ⋯ + ε_k x_k)_T`.
pub fn expand_ordered_product(classes: &[HomClass]) -> Result<QTSym> {
    if classes.is_empty() {
        return Err(Error::Invalid("empty product of torus classes".into()));
    }
    let mut sums: Vec<_> = signed_path_sums(classes).into_iter().collect();
    sums.sort_by_key(|(k, _)| *k);
    let mut out = QTSym::zero();
    for (x, poly) in sums {
        out.add_torus(x, &poly);
    }
    Ok(out)
}

/// `η((x₀)_T ⋯ (x_k)_T)`: twice the area-weighted count of closed sign paths.
///
/// An empty stack is the empty skein and gives `1`.
pub fn eta_of_stack(classes: &[HomClass]) -> LaurentPoly {
    if classes.is_empty() {
        return LaurentPoly::one();
    }
    let closed = signed_path_sums(classes).remove(&HomClass::new(0, 0)).unwrap_or_default();
    closed.scale(&BigInt::from(2))
}

/// `[(a,b), 3] = (2a, 2b)_T + ∅` for a primitive class.
pub fn color3_curve(c: HomClass) -> Result<QTSym> {
    if c.a.gcd(&c.b) != 1 {
        return Err(Error::NotPrimitive(c.a, c.b));
    }
    let mut out = QTSym::torus(HomClass::new(2 * c.a, 2 * c.b));
    out.empty += &LaurentPoly::one();
    Ok(out)
}

/// Square matrix of `CycElem`; column `l` is the image of `e_{l+1}`.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    p: u32,
    n: usize,
    entries: Vec<CycElem>,
}

impl Matrix {
    pub fn zero(p: u32, n: usize) -> Self {
        Self { p, n, entries: vec![CycElem::zero(p); n * n] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zero(p, n);
        for i in 0..n {
            m.entries[i * n + i] = CycElem::one(p);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Entry in row `m`, column `l` (zero based).
    pub fn get(&self, m: usize, l: usize) -> &CycElem {
        &self.entries[m * self.n + l]
    }

    fn set(&mut self, m: usize, l: usize, v: CycElem) {
        self.entries[m * self.n + l] = v;
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b).unwrap()).collect();
        Matrix { p: self.p, n: self.n, entries }
    }

    pub fn scale_poly(&self, c: &LaurentPoly) -> Matrix {
        let c = CycElem::from_laurent(c, self.p);
        let entries = self.entries.iter().map(|a| if a.is_zero() { a.clone() } else { a.mul(&c).unwrap() }).collect();
        Matrix { p: self.p, n: self.n, entries }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zero(self.p, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = CycElem::zero(self.p);
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b).unwrap()).unwrap();
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn trace(&self) -> CycElem {
        (0..self.n).fold(CycElem::zero(self.p), |acc, i| acc.add(self.get(i, i)).unwrap())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.chunks(self.n)).finish()
    }
}

/// Matrix of `⟨a,b⟩` on `V_p(T)`:
/// `⟨⟨a,b⟩e_l, e_m⟩ = A^{2a(l+b)}(δ_{l+b−m} − δ_{l+b+m}) + A^{2a(b−l)}(δ_{l−b−m} − δ_{l−b+m})`.
pub fn torus_operator_matrix(a: i64, b: i64, p: i64) -> Result<Matrix> {
    let p32 = check_level(p)?;
    let r = p / 2;
    let n = (r - 1) as usize;
    let mut out = Matrix::zero(p32, n);
    for l in 1..r {
        for m in 1..r {
            let mut x = CycElem::zero(p32);
            let d1 = delta_p(l + b - m, p) as i64 - delta_p(l + b + m, p) as i64;
            let d2 = delta_p(l - b - m, p) as i64 - delta_p(l - b + m, p) as i64;
            if d1 != 0 {
                x.add_term(2 * a * (l + b), &BigInt::from(d1));
            }
            if d2 != 0 {
                x.add_term(2 * a * (b - l), &BigInt::from(d2));
            }
            out.set((m - 1) as usize, (l - 1) as usize, x);
        }
    }
    Ok(out)
}

/// Trace of the operator of `x` on `V_p(T)` divided by `dim V_p(T)`: the genus-one `tr_p`.
pub fn genus_one_trace(x: &QTSym, p: i64) -> Result<CycElem> {
    let m = x.operator_matrix(p)?;
    let dim = BigInt::from(p / 2 - 1);
    Ok(m.trace().scalar_mul(&num_rational::BigRational::new(BigInt::one(), dim)))
}
