//! Curves with transverse double points drawn on a capped ribbon surface, the color-3
//! state sum `P_{γ,3}`, and the combinatorial certificates used to bound its degree.
//!
//! Half-edge `2e` is the tail of edge `e` and `2e + 1` its head. Every vertex lists its
//! four half-edges counterclockwise, and the curve runs straight through a vertex, from a
//! half-edge to the one two steps further in the rotation. An edge whose half-edges appear
//! at no vertex is a circle without double points.
//!
//! Faces are the boundary cycles of the ribbon neighborhood. A dart is a half-edge `h`
//! read as "walk along edge `h/2` starting from the end `h`, keeping the ribbon on the
//! left"; faces are numbered in order of their smallest dart.
//!
//! The annular chart, when present, fixes a radial ray in an annulus containing the
//! curve and lists for every edge where it crosses that ray: the radial height and the
//! direction (`+1` counterclockwise when walking from tail to head). The lift to
//! `annulus × S¹` stays at one level except for a single positive turn where the marked
//! edge crosses the ray, so the marked edge must cross it exactly once. At double points
//! the strand reached second when walking on from the marked edge is on top.

mod certify;
pub mod corpus;
mod state;
mod torus;

pub use certify::{degree_accounting, euler_certificate, extremal_states, Certificate, DegreeReport, Verdict};
pub use state::{p_gamma3, smooth, Smoothing};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// One crossing of an edge with the radial ray of the annular chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayCrossing {
    pub height: i64,
    pub sign: i8,
}

impl RayCrossing {
    pub const fn new(height: i64, sign: i8) -> Self {
        Self { height, sign }
    }
}

/// A compact surface of the given genus glued onto the listed faces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceCap {
    pub faces: Vec<usize>,
    pub genus: u32,
}

impl FaceCap {
    pub fn new(faces: Vec<usize>, genus: u32) -> Self {
        Self { faces, genus }
    }

    /// Euler characteristic `2 − 2g − b`.
    pub fn euler_char(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.faces.len() as i64
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CurveJson {
    edges: usize,
    half_edge_rotations: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    marked_edge: Option<usize>,
    #[serde(default)]
    face_caps: Vec<FaceCap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    annular_position: Option<Vec<Vec<RayCrossing>>>,
}

/// A 4-valent ribbon graph with an optional marked (oriented) edge, capping data and annular chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonCurve {
    edges: usize,
    rotations: Vec<[usize; 4]>,
    marked_edge: Option<usize>,
    face_caps: Vec<FaceCap>,
    annular: Option<Vec<Vec<RayCrossing>>>,
    /// `(vertex, slot)` of each half-edge, `None` on circles.
    slot: Vec<Option<(usize, usize)>>,
    faces: Vec<Vec<usize>>,
    face_of: Vec<usize>,
}

/// Every problem found in a curve description; empty means valid.
pub fn curve_diagnostics(
    edges: usize,
    rotations: &[Vec<usize>],
    marked_edge: Option<usize>,
    annular: Option<&[Vec<RayCrossing>]>,
) -> Vec<String> {
    let mut out = Vec::new();
    let mut used = vec![0u8; 2 * edges];
    for (v, rot) in rotations.iter().enumerate() {
        if rot.len() != 4 {
            out.push(format!("vertex arity: vertex {v} has {} half-edges, expected 4", rot.len()));
        }
        for &h in rot {
            match used.get_mut(h) {
                Some(u) => *u += 1,
                None => out.push(format!("vertex {v}: half-edge {h} does not exist")),
            }
        }
    }
    for (h, u) in used.iter().enumerate() {
        if *u > 1 {
            out.push(format!("rotation system: half-edge {h} appears {u} times"));
        }
    }
    for e in 0..edges {
        if used[2 * e] != used[2 * e + 1] && used[2 * e].max(used[2 * e + 1]) == 1 {
            out.push(format!("edge {e}: only one end is attached to a vertex"));
        }
    }
    if let Some(m) = marked_edge {
        if m >= edges {
            out.push(format!("marked edge {m} does not exist"));
        }
    }
    if let Some(chart) = annular {
        if chart.len() != edges {
            out.push(format!("annular position lists {} edges, expected {edges}", chart.len()));
        }
        let mut heights: Vec<i64> = chart.iter().flatten().map(|c| c.height).collect();
        if chart.iter().flatten().any(|c| c.sign != 1 && c.sign != -1) {
            out.push("annular position: crossing signs must be +1 or -1".into());
        }
        heights.sort_unstable();
        if heights.windows(2).any(|w| w[0] == w[1]) {
            out.push("annular position: crossing heights must be distinct".into());
        }
    }
    out
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

impl RibbonCurve {
    pub fn new(
        edges: usize,
        rotations: Vec<Vec<usize>>,
        marked_edge: Option<usize>,
        face_caps: Vec<FaceCap>,
        annular: Option<Vec<Vec<RayCrossing>>>,
    ) -> Result<Self> {
        let diag = curve_diagnostics(edges, &rotations, marked_edge, annular.as_deref());
        if !diag.is_empty() {
            return Err(Error::MalformedCurve(diag.join("; ")));
        }
        let rotations: Vec<[usize; 4]> = rotations.iter().map(|r| [r[0], r[1], r[2], r[3]]).collect();
        let mut slot = vec![None; 2 * edges];
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &h) in rot.iter().enumerate() {
                slot[h] = Some((v, i));
            }
        }
        let mut curve = Self { edges, rotations, marked_edge, face_caps, annular, slot, faces: vec![], face_of: vec![] };
        curve.trace_faces();
        let cap_diag = curve.cap_diagnostics();
        if !cap_diag.is_empty() {
            return Err(Error::MalformedCurve(cap_diag.join("; ")));
        }
        if curve.annular.is_some() {
            if let Some(g) = curve.ribbon_genus_of_components().into_iter().find(|g| *g != 0) {
                return Err(Error::MalformedCurve(format!(
                    "annular position given but a ribbon component has genus {g}"
                )));
            }
        }
        Ok(curve)
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let j: CurveJson = serde_json::from_value(value.clone()).map_err(|e| Error::Invalid(format!("curve: {e}")))?;
        Self::new(j.edges, j.half_edge_rotations, j.marked_edge, j.face_caps, j.annular_position)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = CurveJson {
            edges: self.edges,
            half_edge_rotations: self.rotations.iter().map(|r| r.to_vec()).collect(),
            marked_edge: self.marked_edge,
            face_caps: self.face_caps.clone(),
            annular_position: self.annular.clone(),
        };
        serde_json::to_value(j).expect("curve serializes")
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// Number of double points.
    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn rotations(&self) -> &[[usize; 4]] {
        &self.rotations
    }

    pub fn marked_edge(&self) -> Option<usize> {
        self.marked_edge
    }

    pub fn face_caps(&self) -> &[FaceCap] {
        &self.face_caps
    }

    pub fn annular_position(&self) -> Option<&[Vec<RayCrossing>]> {
        self.annular.as_deref()
    }

    /// Dart cycles of the ribbon boundary.
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_of(&self, dart: usize) -> usize {
        self.face_of[dart]
    }

    pub(crate) fn slot(&self, h: usize) -> Option<(usize, usize)> {
        self.slot[h]
    }

    /// Edges without double points on them.
    pub fn is_circle(&self, e: usize) -> bool {
        self.slot[2 * e].is_none()
    }

    /// Next half-edge counterclockwise at the same vertex.
    pub(crate) fn rot_next(&self, h: usize, k: usize) -> usize {
        let (v, i) = self.slot[h].expect("half-edge at a vertex");
        self.rotations[v][(i + k) % 4]
    }

    fn trace_faces(&mut self) {
        let n = 2 * self.edges;
        let mut face_of = vec![usize::MAX; n];
        let mut faces = Vec::new();
        for start in 0..n {
            if face_of[start] != usize::MAX {
                continue;
            }
            let mut cycle = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = faces.len();
                cycle.push(d);
                let g = d ^ 1;
                d = if self.slot[g].is_some() { self.rot_next(g, 1) } else { d };
                if d == start {
                    break;
                }
            }
            faces.push(cycle);
        }
        self.faces = faces;
        self.face_of = face_of;
    }

    /// Connected components of the ribbon graph, as a label per edge.
    pub(crate) fn edge_components(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.edges).collect();
        for rot in &self.rotations {
            for h in &rot[1..] {
                union(&mut parent, rot[0] / 2, h / 2);
            }
        }
        (0..self.edges).map(|e| find(&mut parent, e)).collect()
    }

    fn ribbon_genus_of_components(&self) -> Vec<i64> {
        let comp = self.edge_components();
        let mut roots: Vec<usize> = comp.clone();
        roots.sort_unstable();
        roots.dedup();
        roots
            .iter()
            .map(|&root| {
                let verts = self.rotations.iter().filter(|r| comp[r[0] / 2] == root).count() as i64;
                let edges = (0..self.edges).filter(|e| comp[*e] == root && !self.is_circle(*e)).count() as i64;
                let faces = self.faces.iter().filter(|f| comp[f[0] / 2] == root).count() as i64;
                (2 - (verts - edges + faces)) / 2
            })
            .collect()
    }

    fn cap_diagnostics(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.face_caps.is_empty() {
            return out;
        }
        let mut seen = vec![0usize; self.faces.len()];
        for (i, cap) in self.face_caps.iter().enumerate() {
            if cap.faces.is_empty() {
                out.push(format!("cap {i} is glued to no face"));
            }
            for &f in &cap.faces {
                match seen.get_mut(f) {
                    Some(s) => *s += 1,
                    None => out.push(format!("cap {i}: face {f} does not exist (there are {})", self.faces.len())),
                }
            }
        }
        for (f, s) in seen.iter().enumerate() {
            if *s != 1 {
                out.push(format!("face {f} is capped {s} times, expected once"));
            }
        }
        if out.is_empty() && !self.capped_surface_connected() {
            out.push("capped surface is disconnected".into());
        }
        out
    }

    fn capped_surface_connected(&self) -> bool {
        let comp = self.edge_components();
        let mut parent: Vec<usize> = (0..self.edges).collect();
        for e in 0..self.edges {
            union(&mut parent, e, comp[e]);
        }
        for cap in &self.face_caps {
            for f in &cap.faces[1..] {
                union(&mut parent, self.faces[cap.faces[0]][0] / 2, self.faces[*f][0] / 2);
            }
        }
        (0..self.edges).all(|e| find(&mut parent, e) == find(&mut parent, 0))
    }

    /// Genus of the closed surface obtained by capping all faces; `None` without caps.
    pub fn surface_genus(&self) -> Option<i64> {
        if self.face_caps.is_empty() {
            return None;
        }
        let graph_edges = (0..self.edges).filter(|e| !self.is_circle(*e)).count() as i64;
        let chi = self.rotations.len() as i64 - graph_edges + self.face_caps.iter().map(FaceCap::euler_char).sum::<i64>();
        Some((2 - chi) / 2)
    }

    /// Visit order of the double points from the marked edge: for every vertex, the
    /// rotation slot (`0` or `1`) of the strand traversed second. Requires one closed curve.
    pub(crate) fn later_strands(&self) -> Result<Vec<usize>> {
        if self.rotations.is_empty() {
            return Ok(Vec::new());
        }
        let m = self
            .marked_edge
            .ok_or_else(|| Error::Invalid("a curve with double points needs a marked edge".into()))?;
        let mut visits = vec![Vec::new(); self.rotations.len()];
        let mut h = 2 * m;
        let mut steps = 0;
        loop {
            let g = h ^ 1;
            let Some((v, i)) = self.slot[g] else {
                return Err(Error::Invalid("the marked edge lies on a circle without double points".into()));
            };
            visits[v].push(i % 2);
            h = self.rot_next(g, 2);
            steps += 1;
            if h == 2 * m {
                break;
            }
        }
        if steps != 2 * self.rotations.len() {
            return Err(Error::Invalid("double points are only ordered on the marked component".into()));
        }
        Ok(visits.iter().map(|v| v[1]).collect())
    }
}
