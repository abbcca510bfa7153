//! Euler-incompressibility certificates and the degree bookkeeping of a single state.
//!
//! Topology of the complement is computed on a refinement of the capped surface: every
//! double point gets a center, four ports on its half-edges, four spokes, four corner
//! edges and four triangles; circles get one vertex; caps are glued along the faces.
//! Both kinds of smoothing and all edge deletions are subcomplexes of this refinement.

use serde::{Deserialize, Serialize};

use super::state::{Smoothing, StateGraph};
use super::{find, union, RibbonCurve};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Certified,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub reason: String,
    /// Edges of an Eulerian cycle that is null-homologous mod 2, when one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
}

pub(crate) struct Region {
    pub chi: i64,
}

pub(crate) struct Complement {
    pub regions: Vec<Region>,
    /// Euler characteristic of every connected component of `Γ_{S,ξ}`.
    pub components: Vec<i64>,
    cap_region: Vec<usize>,
    face_cap: Vec<usize>,
    face_of: Vec<usize>,
}

impl Complement {
    /// Region on the right of a dart.
    pub fn region_of_dart(&self, d: usize) -> usize {
        self.cap_region[self.face_cap[self.face_of[d]]]
    }
}

/// Cells of the refinement, with dimension and the cells in their boundary.
struct Cells {
    dim: Vec<u8>,
    /// Ports exist on edges with ends, circle vertices on circles.
    exists: Vec<bool>,
    boundary: Vec<Vec<usize>>,
    caps: usize,
    cap_chi: Vec<i64>,
}

struct Layout {
    n: usize,
    e: usize,
}

impl Layout {
    fn center(&self, v: usize) -> usize {
        v
    }
    fn port(&self, h: usize) -> usize {
        self.n + h
    }
    fn circle_vertex(&self, e: usize) -> usize {
        self.n + 2 * self.e + e
    }
    fn edge(&self, e: usize) -> usize {
        self.n + 3 * self.e + e
    }
    fn spoke(&self, v: usize, i: usize) -> usize {
        self.n + 4 * self.e + 4 * v + i
    }
    fn corner(&self, v: usize, i: usize) -> usize {
        self.n + 4 * self.e + 4 * self.n + 4 * v + i
    }
    fn triangle(&self, v: usize, i: usize) -> usize {
        self.n + 4 * self.e + 8 * self.n + 4 * v + i
    }
    fn cap(&self, k: usize) -> usize {
        self.n + 4 * self.e + 12 * self.n + k
    }
}

fn refine(curve: &RibbonCurve) -> (Layout, Cells) {
    let lay = Layout { n: curve.vertex_count(), e: curve.edge_count() };
    let total = lay.cap(curve.face_caps().len());
    let mut dim = vec![0u8; total];
    let mut boundary = vec![Vec::new(); total];
    let mut exists = vec![true; total];
    for e in 0..lay.e {
        let circle = curve.is_circle(e);
        exists[lay.port(2 * e)] = !circle;
        exists[lay.port(2 * e + 1)] = !circle;
        exists[lay.circle_vertex(e)] = circle;
        let id = lay.edge(e);
        dim[id] = 1;
        boundary[id] = if curve.is_circle(e) {
            vec![lay.circle_vertex(e)]
        } else {
            vec![lay.port(2 * e), lay.port(2 * e + 1)]
        };
    }
    for (v, rot) in curve.rotations().iter().enumerate() {
        for i in 0..4 {
            let (h, k) = (rot[i], rot[(i + 1) % 4]);
            dim[lay.spoke(v, i)] = 1;
            boundary[lay.spoke(v, i)] = vec![lay.center(v), lay.port(h)];
            dim[lay.corner(v, i)] = 1;
            boundary[lay.corner(v, i)] = vec![lay.port(h), lay.port(k)];
            dim[lay.triangle(v, i)] = 2;
            boundary[lay.triangle(v, i)] = vec![
                lay.spoke(v, i),
                lay.spoke(v, (i + 1) % 4),
                lay.corner(v, i),
                lay.center(v),
                lay.port(h),
                lay.port(k),
            ];
        }
    }
    for (k, cap) in curve.face_caps().iter().enumerate() {
        let id = lay.cap(k);
        dim[id] = 2;
        for &f in &cap.faces {
            for &d in &curve.faces()[f] {
                let e = d / 2;
                let ends = boundary[lay.edge(e)].clone();
                boundary[id].push(lay.edge(e));
                boundary[id].extend(ends);
                if let Some((v, i)) = curve.slot(d ^ 1) {
                    boundary[id].push(lay.corner(v, i));
                }
            }
        }
    }
    let cap_chi = curve.face_caps().iter().map(|c| c.euler_char()).collect();
    (lay, Cells { dim, exists, boundary, caps: curve.face_caps().len(), cap_chi })
}

/// Components of `Γ_{S,ξ}` and of its complement in the capped surface.
pub(crate) fn complement(g: &StateGraph, deleted: &[bool]) -> Complement {
    let curve = g.curve;
    let (lay, cells) = refine(curve);
    let total = cells.dim.len();
    let mut in_h = vec![false; total];
    for e in 0..lay.e {
        let live = !deleted[g.chain_of[e]];
        if curve.is_circle(e) {
            in_h[lay.circle_vertex(e)] = true;
            in_h[lay.edge(e)] = live;
        } else {
            in_h[lay.edge(e)] = live;
            in_h[lay.port(2 * e)] = live;
            in_h[lay.port(2 * e + 1)] = live;
        }
    }
    for (v, rot) in curve.rotations().iter().enumerate() {
        if g.s[v] == 0 {
            in_h[lay.center(v)] = true;
        }
        for i in 0..4 {
            let (h, k) = (rot[i], rot[(i + 1) % 4]);
            let live = g.live(h, deleted);
            if g.s[v] == 0 {
                in_h[lay.spoke(v, i)] = live;
            } else if g.partner[h] == k {
                in_h[lay.corner(v, i)] = live;
            }
        }
    }
    // a deleted circle of Γ_S leaves a point behind
    for (c, del) in g.chains.iter().zip(deleted) {
        if c.closed && *del && !curve.is_circle(c.darts[0] / 2) {
            in_h[lay.port(c.darts[0])] = true;
        }
    }
    let mut parent: Vec<usize> = (0..total).collect();
    for id in 0..total {
        for &b in &cells.boundary[id] {
            if in_h[id] == in_h[b] {
                union(&mut parent, id, b);
            }
        }
    }
    let mut label = vec![usize::MAX; total];
    let mut regions: Vec<Region> = Vec::new();
    let mut components: Vec<i64> = Vec::new();
    let mut comp_label = vec![usize::MAX; total];
    for id in 0..total {
        if !cells.exists[id] {
            continue;
        }
        let is_cap = id >= lay.cap(0);
        let root = find(&mut parent, id);
        let sign = if is_cap { cells.cap_chi[id - lay.cap(0)] } else if cells.dim[id] == 1 { -1 } else { 1 };
        if in_h[id] {
            if comp_label[root] == usize::MAX {
                comp_label[root] = components.len();
                components.push(0);
            }
            components[comp_label[root]] += sign;
        } else {
            if label[root] == usize::MAX {
                label[root] = regions.len();
                regions.push(Region { chi: 0 });
            }
            regions[label[root]].chi += sign;
        }
    }
    let cap_region = (0..cells.caps).map(|k| label[find(&mut parent, lay.cap(k))]).collect();
    let mut face_cap = vec![0; curve.faces().len()];
    for (k, cap) in curve.face_caps().iter().enumerate() {
        for &f in &cap.faces {
            face_cap[f] = k;
        }
    }
    let face_of = (0..2 * lay.e).map(|d| curve.face_of(d)).collect();
    Complement { regions, components, cap_region, face_cap, face_of }
}

/// Sufficient conditions for "no Eulerian cycle bounds a disc".
///
/// Certified when the complement is a single region, or when no connected even
/// subgraph is null-homologous mod 2 in the capped surface. Enumeration is capped at
/// 12 edges.
pub fn euler_certificate(curve: &RibbonCurve) -> Result<Certificate> {
    if curve.face_caps().is_empty() {
        return Err(Error::Invalid("the certificate needs face caps".into()));
    }
    if curve.face_caps().len() == 1 {
        return Ok(Certificate {
            verdict: Verdict::Certified,
            reason: "the complement of the curve is a single region".into(),
            witness: None,
        });
    }
    let edges = curve.edge_count();
    if edges > 12 {
        return Err(Error::ResourceCap(format!("Eulerian cycle enumeration is capped at 12 edges, got {edges}")));
    }
    // boundaries of the caps span the null-homologous cycles
    let mut basis: Vec<u64> = Vec::new();
    for cap in curve.face_caps() {
        let mut vec = 0u64;
        for &f in &cap.faces {
            for &d in &curve.faces()[f] {
                vec ^= 1 << (d / 2);
            }
        }
        insert(&mut basis, vec);
    }
    for mask in 1u64..(1 << edges) {
        if !even_and_connected(curve, mask) || reduce(&basis, mask) != 0 {
            continue;
        }
        return Ok(Certificate {
            verdict: Verdict::Unknown,
            reason: "an Eulerian cycle is null-homologous mod 2".into(),
            witness: Some((0..edges).filter(|e| mask >> e & 1 == 1).collect()),
        });
    }
    Ok(Certificate {
        verdict: Verdict::Certified,
        reason: "no Eulerian cycle is null-homologous mod 2".into(),
        witness: None,
    })
}

fn reduce(basis: &[u64], mut v: u64) -> u64 {
    for b in basis {
        v = v.min(v ^ b);
    }
    v
}

fn insert(basis: &mut Vec<u64>, v: u64) {
    let r = reduce(basis, v);
    if r != 0 {
        basis.push(r);
        basis.sort_unstable_by(|a, b| b.cmp(a));
    }
}

fn even_and_connected(curve: &RibbonCurve, mask: u64) -> bool {
    let mut parent: Vec<usize> = (0..curve.edge_count()).collect();
    for rot in curve.rotations() {
        let inside: Vec<usize> = rot.iter().filter(|h| mask >> (*h / 2) & 1 == 1).copied().collect();
        if inside.len() % 2 == 1 {
            return false;
        }
        for h in &inside[..inside.len().saturating_sub(1)] {
            union(&mut parent, h / 2, inside[inside.len() - 1] / 2);
        }
    }
    let mut roots = (0..curve.edge_count()).filter(|e| mask >> e & 1 == 1).map(|e| find(&mut parent, e));
    let first = roots.next();
    roots.all(|r| Some(r) == first)
}

/// Quantities of the degree bound for one state `(S, ξ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub smoothing: Smoothing,
    /// Deleted edges of `Γ_S`, in the numbering of [`super::smooth`].
    pub deleted: Vec<usize>,
    /// Kept double points.
    pub n: usize,
    /// Edges of `Γ_{S,ξ}` between double points.
    pub e: usize,
    /// Surviving circles without double points.
    pub circles: usize,
    /// Points left by deleted circles.
    pub points: usize,
    /// Boundary curves around simply connected components.
    pub u: usize,
    /// Other boundary curves bounding a disc.
    pub v: usize,
    pub a: usize,
    pub b: usize,
    pub s: usize,
    pub c: usize,
    /// `e + u ≤ 2·(n + points)`.
    pub edges_ok: bool,
    /// `v ≤ n + points`.
    pub discs_ok: bool,
    /// `4|a − b| + 2(n − s + c)`.
    pub budget: i64,
}

fn report(g: &StateGraph, smoothing: &Smoothing, deleted: &[bool]) -> DegreeReport {
    let cx = complement(g, deleted);
    let (a, b, n) = smoothing.counts();
    let live = |i: usize| !deleted[i];
    let e = (0..g.chains.len()).filter(|i| live(*i) && !g.chains[*i].closed).count();
    let circles = (0..g.chains.len()).filter(|i| live(*i) && g.chains[*i].closed).count();
    let points = (0..g.chains.len()).filter(|i| !live(*i) && g.chains[*i].closed).count();
    let u = cx.components.iter().filter(|chi| **chi == 1).count();
    let v = cx.regions.iter().filter(|r| r.chi == 1).count();
    let s = deleted.iter().filter(|x| **x).count();
    let c = u + v;
    let verts = n + points;
    DegreeReport {
        smoothing: smoothing.clone(),
        deleted: (0..deleted.len()).filter(|i| deleted[*i]).collect(),
        n,
        e,
        circles,
        points,
        u,
        v,
        a,
        b,
        s,
        c,
        edges_ok: e + u <= 2 * verts,
        discs_ok: v <= verts,
        budget: 4 * (a as i64 - b as i64).abs() + 2 * (n as i64 - s as i64 + c as i64),
    }
}

fn over_strands(curve: &RibbonCurve, s: &Smoothing) -> Result<Vec<usize>> {
    if s.0.iter().all(|x| *x == 0) {
        Ok(vec![0; curve.vertex_count()])
    } else {
        curve.later_strands()
    }
}

/// Report for one state; `xi` lists deleted edges of `Γ_S`.
pub fn degree_accounting(curve: &RibbonCurve, s: &Smoothing, xi: &[usize]) -> Result<DegreeReport> {
    if curve.face_caps().is_empty() {
        return Err(Error::Invalid("degree accounting needs face caps".into()));
    }
    let g = StateGraph::new(curve, s, &over_strands(curve, s)?)?;
    let mut deleted = vec![false; g.chains.len()];
    for &i in xi {
        *deleted
            .get_mut(i)
            .ok_or_else(|| Error::OutOfRange(format!("edge {i} of the smoothed graph does not exist")))? = true;
    }
    Ok(report(&g, s, &deleted))
}

/// Every state whose budget reaches at least `4N`.
pub fn extremal_states(curve: &RibbonCurve) -> Result<Vec<DegreeReport>> {
    if curve.face_caps().is_empty() {
        return Err(Error::Invalid("degree accounting needs face caps".into()));
    }
    let n = curve.vertex_count();
    if n > 6 {
        return Err(Error::ResourceCap(format!("state enumeration is capped at 6 double points, got {n}")));
    }
    let over = if n == 0 { Vec::new() } else { curve.later_strands()? };
    let mut out = Vec::new();
    for idx in 0..3u64.pow(n as u32) {
        let s = Smoothing::from_index(n, idx);
        let g = StateGraph::new(curve, &s, &over)?;
        for mask in 0u64..(1 << g.chains.len()) {
            let deleted: Vec<bool> = (0..g.chains.len()).map(|i| mask >> i & 1 == 1).collect();
            let r = report(&g, &s, &deleted);
            if r.budget >= 4 * n as i64 {
                out.push(r);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::{corpus, FaceCap};
    use super::*;

    #[test]
    fn independent_circles_are_certified() {
        let cert = euler_certificate(&corpus::parallel_cores()).unwrap();
        assert_eq!(cert.verdict, Verdict::Certified);
        assert!(cert.reason.contains("null-homologous"));
    }

    #[test]
    fn homologous_loops_are_unknown() {
        let cert = euler_certificate(&corpus::homologous_figure_eight()).unwrap();
        assert_eq!(cert.verdict, Verdict::Unknown);
        assert_eq!(cert.witness, Some(vec![0, 1]));
    }

    #[test]
    fn one_face_filling_is_certified() {
        let c = corpus::one_face_filling();
        assert_eq!(c.faces().len(), 1);
        assert_eq!(c.surface_genus(), Some(2));
        let cert = euler_certificate(&c).unwrap();
        assert_eq!(cert.verdict, Verdict::Certified);
        assert!(cert.reason.contains("single region"));
    }

    #[test]
    fn separating_circle_is_not_certified() {
        let c = corpus::simple_core();
        let sep = RibbonCurve::new(
            1,
            vec![],
            None,
            vec![FaceCap::new(vec![0], 1), FaceCap::new(vec![1], 1)],
            None,
        )
        .unwrap();
        assert_eq!(euler_certificate(&c).unwrap().verdict, Verdict::Certified);
        assert_eq!(euler_certificate(&sep).unwrap().verdict, Verdict::Unknown);
    }

    #[test]
    fn disjoint_circles_are_tight() {
        let c = corpus::parallel_cores();
        let r = degree_accounting(&c, &Smoothing(vec![]), &[]).unwrap();
        assert_eq!((r.n, r.e, r.u, r.v), (0, 0, 0, 0));
        assert!(r.edges_ok && r.discs_ok);
    }

    #[test]
    fn figure_eight_kept() {
        let c = corpus::homologous_figure_eight();
        let r = degree_accounting(&c, &Smoothing(vec![0]), &[]).unwrap();
        assert_eq!((r.n, r.e, r.u), (1, 2, 0));
        assert!(r.edges_ok);
        // the outer face is a disc
        assert_eq!(r.v, 1);
    }

    #[test]
    fn deleting_everything_leaves_a_point() {
        let c = corpus::homologous_figure_eight();
        let r = degree_accounting(&c, &Smoothing(vec![0]), &[0, 1]).unwrap();
        assert_eq!((r.u, r.v, r.s), (1, 0, 2));
        let cx_regions = r.c;
        assert_eq!(cx_regions, 1);
    }

    #[test]
    fn certified_curves_reach_the_budget_only_when_fully_smoothed() {
        for c in corpus::all() {
            if c.curve.face_caps().is_empty() || c.curve.vertex_count() == 0 {
                continue;
            }
            if euler_certificate(&c.curve).unwrap().verdict != Verdict::Certified {
                continue;
            }
            let n = c.curve.vertex_count();
            for r in extremal_states(&c.curve).unwrap() {
                assert!(r.budget <= 4 * n as i64, "{}: {r:?}", c.name);
                let total = r.smoothing.0.iter().all(|x| *x == 1) || r.smoothing.0.iter().all(|x| *x == -1);
                assert!(total, "{}: {r:?}", c.name);
            }
        }
    }
}
