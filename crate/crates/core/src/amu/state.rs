//! Smoothings of double points, edge deletions, and the color-3 state sum.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{certify, RayCrossing, RibbonCurve};
use crate::laurent::LaurentPoly;
use super::torus::{eta_link, Passage};
use crate::{Error, Result};

/// Per double point: `+1` positive smoothing, `−1` negative smoothing, `0` kept.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Smoothing(pub Vec<i8>);

impl Smoothing {
    pub fn keep_all(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// The `index`-th smoothing in base 3, digit `0, 1, 2` meaning `0, +1, −1`.
    pub fn from_index(n: usize, mut index: u64) -> Self {
        let mut s = Vec::with_capacity(n);
        for _ in 0..n {
            s.push(match index % 3 {
                0 => 0,
                1 => 1,
                _ => -1,
            });
            index /= 3;
        }
        Self(s)
    }

    /// `(a, b, n)`: positive, negative and kept vertices.
    pub fn counts(&self) -> (usize, usize, usize) {
        let a = self.0.iter().filter(|x| **x == 1).count();
        let b = self.0.iter().filter(|x| **x == -1).count();
        (a, b, self.0.len() - a - b)
    }
}

/// An edge of the smoothed graph: consecutive darts through smoothed vertices.
#[derive(Debug, Clone)]
pub(crate) struct Chain {
    pub darts: Vec<usize>,
    pub closed: bool,
}

impl Chain {
    fn reversed(&self) -> Chain {
        Chain { darts: self.darts.iter().rev().map(|d| d ^ 1).collect(), closed: self.closed }
    }
}

/// The graph `Γ_S` of a smoothing, described on the darts of the original curve.
pub(crate) struct StateGraph<'a> {
    pub curve: &'a RibbonCurve,
    pub s: Vec<i8>,
    /// Half-edge paired with `h` by the smoothing at its vertex, `usize::MAX` if kept.
    pub partner: Vec<usize>,
    pub chains: Vec<Chain>,
    /// Chain of every original edge.
    pub chain_of: Vec<usize>,
}

impl<'a> StateGraph<'a> {
    pub fn new(curve: &'a RibbonCurve, s: &Smoothing, over: &[usize]) -> Result<Self> {
        let n = curve.vertex_count();
        if s.0.len() != n {
            return Err(Error::Invalid(format!("smoothing has {} entries for {n} double points", s.0.len())));
        }
        if s.0.iter().any(|x| !(-1..=1).contains(x)) {
            return Err(Error::Invalid("smoothing entries must be -1, 0 or 1".into()));
        }
        let mut partner = vec![usize::MAX; 2 * curve.edge_count()];
        for (v, rot) in curve.rotations().iter().enumerate() {
            let o = over[v];
            // positive: the over strand turns counterclockwise onto the under strand
            let pairs = match s.0[v] {
                1 => [(o + 1, o + 2), (o + 3, o)],
                -1 => [(o, o + 1), (o + 2, o + 3)],
                _ => continue,
            };
            for (i, j) in pairs {
                let (x, y) = (rot[i % 4], rot[j % 4]);
                partner[x] = y;
                partner[y] = x;
            }
        }
        let mut g = Self { curve, s: s.0.clone(), partner, chains: Vec::new(), chain_of: vec![usize::MAX; curve.edge_count()] };
        g.build_chains();
        Ok(g)
    }

    fn kept(&self, h: usize) -> bool {
        matches!(self.curve.slot(h), Some((v, _)) if self.s[v] == 0)
    }

    fn build_chains(&mut self) {
        let edges = self.curve.edge_count();
        for start in 0..2 * edges {
            if !self.kept(start) || self.chain_of[start / 2] != usize::MAX {
                continue;
            }
            let mut darts = vec![start];
            let mut g = start ^ 1;
            while !self.kept(g) {
                let next = self.partner[g];
                darts.push(next);
                g = next ^ 1;
            }
            self.push_chain(Chain { darts, closed: false });
        }
        for e in 0..edges {
            if self.chain_of[e] != usize::MAX {
                continue;
            }
            let mut darts = vec![2 * e];
            let mut g = 2 * e + 1;
            while self.curve.slot(g).is_some() {
                let next = self.partner[g];
                if next == 2 * e {
                    break;
                }
                darts.push(next);
                g = next ^ 1;
            }
            self.push_chain(Chain { darts, closed: true });
        }
    }

    fn push_chain(&mut self, c: Chain) {
        for d in &c.darts {
            self.chain_of[d / 2] = self.chains.len();
        }
        self.chains.push(c);
    }

    pub fn live(&self, h: usize, deleted: &[bool]) -> bool {
        !deleted[self.chain_of[h / 2]]
    }

    /// The dart following `d` on the boundary of the ribbon surface of `Γ_{S,ξ}`.
    pub fn next_dart(&self, d: usize, deleted: &[bool]) -> usize {
        let g = d ^ 1;
        match self.curve.slot(g) {
            None => d,
            Some((v, _)) if self.s[v] != 0 => self.partner[g],
            Some(_) => (1..=4).map(|k| self.curve.rot_next(g, k)).find(|h| self.live(*h, deleted)).expect("g is live"),
        }
    }

    /// Boundary curves of `Γ_{S,ξ}` as dart cycles.
    pub fn boundary_cycles(&self, deleted: &[bool]) -> Vec<Vec<usize>> {
        let n = 2 * self.curve.edge_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || !self.live(start, deleted) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                cycle.push(d);
                d = self.next_dart(d, deleted);
            }
            out.push(cycle);
        }
        out
    }

    /// Boundary circles of isolated discs: kept vertices with every edge deleted, and deleted closed chains.
    pub fn isolated_discs(&self, deleted: &[bool]) -> usize {
        let vertices = self
            .curve
            .rotations()
            .iter()
            .enumerate()
            .filter(|(v, rot)| self.s[*v] == 0 && rot.iter().all(|h| !self.live(*h, deleted)))
            .count();
        let circles = self.chains.iter().zip(deleted).filter(|(c, del)| c.closed && **del).count();
        vertices + circles
    }
}

/// Ray passages of one boundary curve, in order along it.
fn passages(cycle: &[usize], chart: &[Vec<RayCrossing>], marked: Option<usize>) -> Vec<Passage> {
    let mut out = Vec::new();
    for &d in cycle {
        let e = d / 2;
        let dir: i8 = if d % 2 == 0 { 1 } else { -1 };
        let crossings: Box<dyn Iterator<Item = &RayCrossing>> =
            if dir > 0 { Box::new(chart[e].iter()) } else { Box::new(chart[e].iter().rev()) };
        for c in crossings {
            let travel = dir * c.sign;
            // the dart runs on the right of the edge, which is outwards when moving counterclockwise
            out.push(Passage { key: 2 * c.height + travel as i64, dir: travel, marked: marked == Some(e) });
        }
    }
    out
}

/// `η` of the boundary link of `Γ_{S,ξ}`, lifted by one turn along the marked edge.
pub(crate) fn boundary_eta(g: &StateGraph, deleted: &[bool], chart: &[Vec<RayCrossing>]) -> Result<LaurentPoly> {
    let marked = g.curve.marked_edge();
    let mut curves: Vec<Vec<Passage>> =
        g.boundary_cycles(deleted).iter().map(|c| passages(c, chart, marked)).collect();
    curves.extend((0..g.isolated_discs(deleted)).map(|_| Vec::new()));
    let slope = marked.map_or(1, |m| chart[m][0].sign);
    eta_link(&curves, slope)
}

const STATE_CAP: u128 = 1 << 26;

/// `P_{γ,3} = Σ_{S,ξ} A^{4(a−b)} [2]^{n−s} η(∂Γ̂_{S,ξ})`, exact in `ℤ[A^{±1}]`.
pub fn p_gamma3(curve: &RibbonCurve) -> Result<LaurentPoly> {
    let chart = curve
        .annular_position()
        .ok_or_else(|| Error::NotAnnularlyResolvable("the curve has no annular position".into()))?;
    if let Some(g) = curve.surface_genus() {
        if g < 2 {
            return Err(Error::Invalid(format!("capped surface has genus {g}, the color-3 bound needs genus at least 2")));
        }
    }
    if let Some(m) = curve.marked_edge() {
        if chart[m].len() != 1 {
            return Err(Error::NotAnnularlyResolvable("the marked edge must cross the ray exactly once".into()));
        }
    }
    let n = curve.vertex_count();
    let edges = curve.edge_count();
    let work = 3u128.pow(n as u32).saturating_mul(1u128 << edges.min(100));
    if work > STATE_CAP {
        return Err(Error::ResourceCap(format!("{n} double points on {edges} edges exceed the state cap 2^26")));
    }
    let over = curve.later_strands()?;
    let q2 = LaurentPoly::quantum_two();
    let q2_pows: Vec<LaurentPoly> = (0..=edges + n).map(|k| q2.pow(k as u32)).collect();
    let partials: Vec<LaurentPoly> = (0..3u64.pow(n as u32))
        .into_par_iter()
        .map(|idx| -> Result<LaurentPoly> {
            let s = Smoothing::from_index(n, idx);
            let (a, b, kept) = s.counts();
            let g = StateGraph::new(curve, &s, &over)?;
            let m = g.chains.len();
            let mut acc = LaurentPoly::zero();
            for mask in 0u64..(1 << m) {
                let deleted: Vec<bool> = (0..m).map(|i| mask >> i & 1 == 1).collect();
                let del = mask.count_ones() as usize;
                let eta = boundary_eta(&g, &deleted, chart)?;
                if eta.is_zero() {
                    continue;
                }
                // every term carries [2]^{edges}, divided out once at the end
                acc += &(&eta * &q2_pows[kept + edges - del]);
            }
            Ok(acc.shift(4 * (a as i64 - b as i64)))
        })
        .collect::<Result<_>>()?;
    let mut total = LaurentPoly::zero();
    for p in &partials {
        total += p;
    }
    total
        .div_exact(&q2_pows[edges])
        .ok_or_else(|| Error::NotAnnularlyResolvable("[2] denominators do not cancel in the state sum".into()))
}

/// Materialize `Γ_S`: kept double points stay, smoothed ones disappear and their edges merge.
///
/// Edge `i` of the result is the `i`-th edge of `Γ_S` in the numbering used by
/// [`super::degree_accounting`]. Caps are recomputed for the new faces.
pub fn smooth(curve: &RibbonCurve, s: &Smoothing) -> Result<RibbonCurve> {
    let over = if s.0.iter().all(|x| *x == 0) { vec![0; curve.vertex_count()] } else { curve.later_strands()? };
    let g = StateGraph::new(curve, s, &over)?;
    let marked = curve.marked_edge();
    let chains: Vec<Chain> = g
        .chains
        .iter()
        .map(|c| match marked {
            Some(m) if c.darts.contains(&(2 * m + 1)) => c.reversed(),
            _ => c.clone(),
        })
        .collect();
    let mut new_half = vec![usize::MAX; 2 * curve.edge_count()];
    for (i, c) in chains.iter().enumerate() {
        if !c.closed {
            new_half[c.darts[0]] = 2 * i;
            new_half[c.darts.last().unwrap() ^ 1] = 2 * i + 1;
        }
    }
    let rotations: Vec<Vec<usize>> = curve
        .rotations()
        .iter()
        .enumerate()
        .filter(|(v, _)| s.0[*v] == 0)
        .map(|(_, rot)| rot.iter().map(|h| new_half[*h]).collect())
        .collect();
    let annular = curve.annular_position().map(|chart| {
        chains
            .iter()
            .map(|c| {
                let mut out = Vec::new();
                for &d in &c.darts {
                    let list = &chart[d / 2];
                    if d % 2 == 0 {
                        out.extend(list.iter().copied());
                    } else {
                        out.extend(list.iter().rev().map(|x| RayCrossing::new(x.height, -x.sign)));
                    }
                }
                out
            })
            .collect()
    });
    let new_marked = marked.map(|m| g.chain_of[m]);
    let bare = RibbonCurve::new(chains.len(), rotations.clone(), new_marked, Vec::new(), annular.clone())?;
    if curve.face_caps().is_empty() {
        return Ok(bare);
    }
    // old dart → new dart, then regions of the complement → caps
    let mut new_dart = vec![usize::MAX; 2 * curve.edge_count()];
    for (i, c) in chains.iter().enumerate() {
        new_dart[c.darts[0]] = 2 * i;
        new_dart[c.darts.last().unwrap() ^ 1] = 2 * i + 1;
    }
    let none = vec![false; g.chains.len()];
    let regions = certify::complement(&g, &none);
    let mut caps: Vec<Vec<usize>> = vec![Vec::new(); regions.regions.len()];
    for cycle in g.boundary_cycles(&none) {
        let d = *cycle.iter().find(|d| new_dart[**d] != usize::MAX).expect("every boundary cycle starts a new edge");
        let r = regions.region_of_dart(d);
        caps[r].push(bare.face_of(new_dart[d]));
    }
    let face_caps = caps
        .into_iter()
        .zip(&regions.regions)
        .filter(|(faces, _)| !faces.is_empty())
        .map(|(mut faces, reg)| {
            faces.sort_unstable();
            let genus = (2 - reg.chi - faces.len() as i64) / 2;
            super::FaceCap::new(faces, genus as u32)
        })
        .collect();
    RibbonCurve::new(chains.len(), rotations, new_marked, face_caps, annular)
}
