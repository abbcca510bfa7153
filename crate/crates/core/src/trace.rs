//! Normalized traces `tr_p` of skeins in `Σ × S¹`, their limits, and convergence tables.
//!
//! A surface is presented by a graph `Γ` with leg pairs `(p_j, q_j)`; gluing each pair gives a
//! spine `Γ̂` of `Σ`. Curve `j` runs through the junction of pair `j`, and a skein on the torus
//! over that curve acts on the color carried across it. With `C(n, m)` the number of admissible
//! colorings of `Γ` with `p_j ↦ n_j`, `q_j ↦ m_j`,
//!
//! `tr_p = Σ_{n,m} Π_j ⟨O_j e_{n_j}, e_{m_j}⟩ · C(n, m) / Z_p`, where `Z_p = dim V_p(Σ)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{check_level, CycElem, RootSpec};
use crate::laurent::LaurentPoly;
use crate::qtorus::{eta_of_stack, expand_ordered_product, HomClass, QTSym};
use crate::verlinde::{verlinde_dim, BoundaryTable, ColoredGraph, Counter};
use crate::{Error, Result};

/// Full leg tables are built when they have at most this many cells.
const FULL_TABLE_CELLS: usize = 1 << 22;

/// Disjoint curves `γ_j` (one per leg pair) carrying `⟨a_j, b_j⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedMulticurve {
    pub graph: ColoredGraph,
    pub weights: Vec<HomClass>,
}

impl WeightedMulticurve {
    pub fn new(graph: ColoredGraph, weights: Vec<HomClass>) -> Result<Self> {
        if weights.len() != graph.pairing().len() {
            return Err(Error::MalformedPresentation(format!(
                "{} weights for {} leg pairs",
                weights.len(),
                graph.pairing().len()
            )));
        }
        Ok(Self { graph, weights })
    }

    pub fn is_zero_weight(&self) -> bool {
        self.weights.iter().all(|w| w.is_zero())
    }
}

/// Banded link in annular position: each annulus `γ_j × S¹` carries framed curves
/// `(x₀)_T, …, (x_k)_T` stacked at increasing heights.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AnnularLink {
    pub components: Vec<(usize, Vec<HomClass>)>,
    pub trivial_circles: u32,
}

impl AnnularLink {
    pub fn new(components: Vec<(usize, Vec<HomClass>)>, trivial_circles: u32) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for (id, stack) in &components {
            if !seen.insert(*id) {
                return Err(Error::MalformedPresentation(format!("annulus {id} listed twice")));
            }
            if stack.is_empty() {
                return Err(Error::MalformedPresentation(format!("annulus {id} has an empty stack")));
            }
        }
        Ok(Self { components, trivial_circles })
    }

    /// A single stack on annulus 0.
    pub fn single(stack: Vec<HomClass>) -> Self {
        Self { components: vec![(0, stack)], trivial_circles: 0 }
    }

    fn check_against(&self, g: &ColoredGraph) -> Result<()> {
        for (id, _) in &self.components {
            if *id >= g.pairing().len() {
                return Err(Error::MalformedPresentation(format!(
                    "annulus {id} but the graph has {} leg pairs",
                    g.pairing().len()
                )));
            }
        }
        Ok(())
    }

    /// The skein carried by each annulus, in the `⟨a,b⟩` basis.
    fn annulus_skeins(&self, n_annuli: usize) -> Result<Vec<QTSym>> {
        let mut out = vec![QTSym::empty(); n_annuli];
        for (id, stack) in &self.components {
            out[*id] = expand_ordered_product(stack)?;
        }
        Ok(out)
    }
}

/// `(−A² − A^{−2})^c`, the value of `c` trivial circles.
fn trivial_factor(c: u32) -> LaurentPoly {
    (-LaurentPoly::quantum_two()).pow(c)
}

/// Sparse operator on `V_p(T)`: column `n` lists `(m, Σ coef·A^exp)` with exponents mod `2p`.
#[derive(Debug, Clone)]
struct AnnulusOperator {
    columns: Vec<Vec<(u32, Vec<(u32, i128)>)>>,
}

impl AnnulusOperator {
    fn from_skein(x: &QTSym, p: u32) -> Result<Self> {
        let r = p as i64 / 2;
        let two_p = 2 * p as i64;
        let mut columns = Vec::with_capacity(r as usize - 1);
        let to_i128 = |c: &BigInt| -> Result<i128> {
            i128::try_from(c).map_err(|_| Error::ResourceCap("coefficient exceeds 128 bits".into()))
        };
        for n in 1..r {
            let mut col: BTreeMap<u32, BTreeMap<u32, i128>> = BTreeMap::new();
            let mut push = |m: i64, e: i64, c: i128| {
                let slot = col.entry(m as u32).or_default().entry(e.rem_euclid(two_p) as u32).or_default();
                *slot += c;
            };
            for (e, c) in x.empty_coeff().terms() {
                push(n, e, to_i128(c)?);
            }
            for (hc, poly) in x.sym_terms() {
                let (a, b) = (hc.a, hc.b);
                for eps in [1i64, -1] {
                    for zeta in [1i64, -1] {
                        let m = (zeta * (n + eps * b)).rem_euclid(p as i64);
                        if m < 1 || m >= r {
                            continue;
                        }
                        let base = 2 * eps * a * n + 2 * a * b;
                        for (e, c) in poly.terms() {
                            push(m, base + e, zeta as i128 * to_i128(c)?);
                        }
                    }
                }
            }
            columns.push(
                col.into_iter()
                    .map(|(m, terms)| (m, terms.into_iter().filter(|(_, c)| *c != 0).collect::<Vec<_>>()))
                    .filter(|(_, t)| !t.is_empty())
                    .collect(),
            );
        }
        Ok(Self { columns })
    }
}

enum Counts<'g> {
    Table(BoundaryTable),
    Pinned(Counter<'g>),
}

impl Counts<'_> {
    fn get(&self, colors: &[u32]) -> Result<u128> {
        match self {
            Counts::Table(t) => Ok(t.get(colors)),
            Counts::Pinned(c) => c.count(colors),
        }
    }
}

fn overflow() -> Error {
    Error::ResourceCap("trace accumulator exceeds 128 bits".into())
}

/// `Σ_{n,m} Π_j ⟨O_j e_{n_j}, e_{m_j}⟩ C(n, m) / Z_p`.
fn trace_operators(g: &ColoredGraph, ops: &[AnnulusOperator], p: u32) -> Result<CycElem> {
    let r = p / 2;
    let k = ops.len();
    let closed = g.glue_closed();
    let z = verlinde_dim(&closed, r)?;
    let counter = Counter::new(g, r)?;
    let cells = (r as usize - 1).checked_pow(g.legs().len() as u32).unwrap_or(usize::MAX);
    let counts = if cells <= FULL_TABLE_CELLS {
        Counts::Table(counter.leg_table()?)
    } else {
        Counts::Pinned(counter)
    };
    let n_outer = (r as usize - 1).pow(k as u32);
    let two_p = 2 * p as usize;
    let pairing = g.pairing().to_vec();
    let n_legs = g.legs().len();

    let partial = |idx: usize| -> Result<Vec<i128>> {
        let mut acc = vec![0i128; two_p];
        let mut n = Vec::with_capacity(k);
        let mut rest = idx;
        for _ in 0..k {
            n.push(rest % (r as usize - 1));
            rest /= r as usize - 1;
        }
        let cols: Vec<&Vec<(u32, Vec<(u32, i128)>)>> = (0..k).map(|j| &ops[j].columns[n[j]]).collect();
        if cols.iter().any(|c| c.is_empty()) {
            return Ok(acc);
        }
        let mut choice = vec![0usize; k];
        let mut colors = vec![0u32; n_legs];
        loop {
            for j in 0..k {
                colors[pairing[j].0] = n[j] as u32 + 1;
                colors[pairing[j].1] = cols[j][choice[j]].0;
            }
            let c = counts.get(&colors)?;
            if c != 0 {
                let c = i128::try_from(c).map_err(|_| overflow())?;
                // product of the chosen column polynomials
                let mut poly: Vec<(u32, i128)> = vec![(0, c)];
                for j in 0..k {
                    let mut next = Vec::with_capacity(poly.len() * cols[j][choice[j]].1.len());
                    for (e1, c1) in &poly {
                        for (e2, c2) in &cols[j][choice[j]].1 {
                            next.push(((e1 + e2) % two_p as u32, c1.checked_mul(*c2).ok_or_else(overflow)?));
                        }
                    }
                    poly = next;
                }
                for (e, v) in poly {
                    acc[e as usize] = acc[e as usize].checked_add(v).ok_or_else(overflow)?;
                }
            }
            // next choice tuple
            let mut j = 0;
            loop {
                if j == k {
                    return Ok(acc);
                }
                choice[j] += 1;
                if choice[j] < cols[j].len() {
                    break;
                }
                choice[j] = 0;
                j += 1;
            }
        }
    };

    let total = (0..n_outer)
        .into_par_iter()
        .map(partial)
        .try_reduce(
            || vec![0i128; two_p],
            |a, b| a.iter().zip(&b).map(|(x, y)| x.checked_add(*y).ok_or_else(overflow)).collect(),
        )?;
    let coeffs = total.into_iter().map(BigInt::from).collect();
    let scale = BigRational::new(BigInt::one(), BigInt::from(z));
    CycElem::from_coeffs(p, coeffs, scale)
}

/// Exact `tr_p([γ, w])`.
pub fn trace_weighted(mc: &WeightedMulticurve, p: i64) -> Result<CycElem> {
    let p = check_level(p)?;
    let ops = mc
        .weights
        .iter()
        .map(|w| AnnulusOperator::from_skein(&QTSym::sym(*w), p))
        .collect::<Result<Vec<_>>>()?;
    trace_operators(&mc.graph, &ops, p)
}

/// Exact `tr_p` of a link in annular position over the surface presented by `graph`.
pub fn trace_annular(link: &AnnularLink, graph: &ColoredGraph, p: i64) -> Result<CycElem> {
    let p = check_level(p)?;
    link.check_against(graph)?;
    let ops = link
        .annulus_skeins(graph.pairing().len())?
        .iter()
        .map(|x| AnnulusOperator::from_skein(x, p))
        .collect::<Result<Vec<_>>>()?;
    let value = trace_operators(graph, &ops, p)?;
    value.mul(&CycElem::from_laurent(&trivial_factor(link.trivial_circles), p))
}

/// Either presentation of a skein in `Σ × S¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subject {
    Weighted(WeightedMulticurve),
    Annular { link: AnnularLink, graph: ColoredGraph },
}

impl Subject {
    pub fn trace(&self, p: i64) -> Result<CycElem> {
        match self {
            Subject::Weighted(mc) => trace_weighted(mc, p),
            Subject::Annular { link, graph } => trace_annular(link, graph, p),
        }
    }

    pub fn p_limit(&self) -> LaurentPoly {
        match self {
            Subject::Weighted(mc) => p_limit_weighted(mc),
            Subject::Annular { link, .. } => p_limit_annular(link),
        }
    }
}

/// `η([γ, w])`: `2^k` when every weight vanishes, `0` otherwise.
pub fn p_limit_weighted(mc: &WeightedMulticurve) -> LaurentPoly {
    if mc.is_zero_weight() {
        LaurentPoly::constant(BigInt::one() << mc.weights.len())
    } else {
        LaurentPoly::zero()
    }
}

/// `P_L` for a link in annular position: the product of the stack limits and the circle factor.
pub fn p_limit_annular(link: &AnnularLink) -> LaurentPoly {
    link.components
        .iter()
        .fold(trivial_factor(link.trivial_circles), |acc, (_, stack)| acc * eta_of_stack(stack))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub p: u32,
    pub k: u32,
    pub re: f64,
    pub im: f64,
    pub abs_err: f64,
    pub p_times_err: f64,
}

/// Compare `ev_{A_p} tr_p` with `P_L(u)`, `u = exp(iπ·u_angle)`, at the primitive root nearest to `u`.
pub fn convergence_report(subject: &Subject, u_angle: f64, p_list: &[i64]) -> Result<Vec<ConvergenceRow>> {
    let limit = subject.p_limit().eval_circle(u_angle);
    p_list
        .iter()
        .map(|&p| {
            let root = RootSpec::nearest(p, u_angle)?;
            let value: Complex64 = subject.trace(p)?.ev_root(&root)?;
            let err = (value - limit).norm();
            Ok(ConvergenceRow { p: root.p, k: root.k, re: value.re, im: value.im, abs_err: err, p_times_err: p as f64 * err })
        })
        .collect()
}
