//! Trivalent graphs, admissible colorings and everything counted with them.

mod count;
mod density;
mod lattice;
pub mod spines;

pub use count::{BoundaryTable, Counter};
pub use density::{slice_density, SliceDensity};
pub use lattice::{lattice_bound_check, BoundReport, LatticeKind};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Trivalent,
    Leg,
}

/// An edge joins two vertices; an edge with no ends is a circle without vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub ends: Option<(usize, usize)>,
}

/// Trivalent graph with boundary legs paired as `(p_i, q_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    vertices: Vec<VertexKind>,
    edges: Vec<Edge>,
    legs: Vec<usize>,
    pairing: Vec<(usize, usize)>,
    /// Incident edges of each vertex, a loop edge listed twice.
    incidence: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<VertexKind>,
    edges: Vec<Vec<usize>>,
    #[serde(default)]
    legs: Vec<usize>,
    #[serde(default)]
    pairing: Vec<(usize, usize)>,
}

/// Every diagnostic found in a graph description; empty means valid.
pub fn graph_diagnostics(
    vertices: &[VertexKind],
    edges: &[Edge],
    legs: &[usize],
    pairing: &[(usize, usize)],
) -> Vec<String> {
    let mut out = Vec::new();
    let mut degree = vec![0usize; vertices.len()];
    for (i, e) in edges.iter().enumerate() {
        if let Some((v, w)) = e.ends {
            for x in [v, w] {
                match degree.get_mut(x) {
                    Some(d) => *d += 1,
                    None => out.push(format!("edge {i}: vertex {x} does not exist")),
                }
            }
        }
    }
    for (v, (kind, d)) in vertices.iter().zip(&degree).enumerate() {
        let want = match kind {
            VertexKind::Trivalent => 3,
            VertexKind::Leg => 1,
        };
        if *d != want {
            out.push(format!("vertex arity: vertex {v} ({kind:?}) has degree {d}, expected {want}"));
        }
    }
    let mut seen = vec![false; vertices.len()];
    for (i, &v) in legs.iter().enumerate() {
        match vertices.get(v) {
            Some(VertexKind::Leg) if !seen[v] => seen[v] = true,
            Some(VertexKind::Leg) => out.push(format!("leg {i}: vertex {v} listed twice")),
            _ => out.push(format!("leg {i}: vertex {v} is not a leg vertex")),
        }
    }
    for (v, kind) in vertices.iter().enumerate() {
        if *kind == VertexKind::Leg && !seen[v] {
            out.push(format!("leg vertex {v} missing from the leg list"));
        }
    }
    let mut used = vec![false; legs.len()];
    for &(i, j) in pairing {
        for x in [i, j] {
            match used.get_mut(x) {
                Some(u) if !*u => *u = true,
                Some(_) => out.push(format!("pairing: leg {x} used twice")),
                None => out.push(format!("pairing: leg {x} does not exist")),
            }
        }
    }
    if !pairing.is_empty() && used.iter().any(|u| !u) {
        out.push("pairing is not a perfect matching on legs".into());
    }
    out
}

impl ColoredGraph {
    pub fn new(
        vertices: Vec<VertexKind>,
        edges: Vec<Edge>,
        legs: Vec<usize>,
        pairing: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let diag = graph_diagnostics(&vertices, &edges, &legs, &pairing);
        if !diag.is_empty() {
            return Err(Error::MalformedPresentation(diag.join("; ")));
        }
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            if let Some((v, w)) = e.ends {
                incidence[v].push(i);
                incidence[w].push(i);
            }
        }
        Ok(Self { vertices, edges, legs, pairing, incidence })
    }

    /// Build from `(v, w)` pairs; `None` is a circle without vertices.
    pub fn from_parts(
        vertices: Vec<VertexKind>,
        edges: &[Option<(usize, usize)>],
        legs: Vec<usize>,
        pairing: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let edges = edges.iter().map(|&ends| Edge { ends }).collect();
        Self::new(vertices, edges, legs, pairing)
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let j: GraphJson = serde_json::from_value(value.clone()).map_err(|e| Error::Invalid(format!("graph: {e}")))?;
        let mut edges = Vec::new();
        for (i, e) in j.edges.iter().enumerate() {
            edges.push(Edge {
                ends: match e.as_slice() {
                    [] => None,
                    [v, w] => Some((*v, *w)),
                    _ => return Err(Error::MalformedPresentation(format!("edge {i} must list 0 or 2 vertices"))),
                },
            });
        }
        Self::new(j.vertices, edges, j.legs, j.pairing)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = GraphJson {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(|e| e.ends.map(|(v, w)| vec![v, w]).unwrap_or_default()).collect(),
            legs: self.legs.clone(),
            pairing: self.pairing.clone(),
        };
        serde_json::to_value(j).expect("graph serializes")
    }

    pub fn vertices(&self) -> &[VertexKind] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    pub fn pairing(&self) -> &[(usize, usize)] {
        &self.pairing
    }

    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn is_closed(&self) -> bool {
        self.legs.is_empty()
    }

    /// The edge carrying leg `i`.
    pub fn leg_edge(&self, i: usize) -> usize {
        self.incidence[self.legs[i]][0]
    }

    /// Trivalent vertices with their three incident edges.
    pub fn trivalent(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        self.vertices
            .iter()
            .enumerate()
            .filter(|(_, k)| **k == VertexKind::Trivalent)
            .map(|(v, _)| {
                let inc = &self.incidence[v];
                [inc[0], inc[1], inc[2]]
            })
    }

    /// Merge each leg pair `(p_j, q_j)` into one internal edge.
    ///
    /// Returns the closed graph and, for each pair, the id of the edge through the junction.
    pub fn glue_closed_tracked(&self) -> (ColoredGraph, Vec<usize>) {
        if self.pairing.is_empty() {
            return (self.clone(), Vec::new());
        }
        #[derive(Clone, Copy, PartialEq)]
        enum End {
            Vertex(usize),
            Junction(usize),
        }
        let mut junction_of = vec![usize::MAX; self.vertices.len()];
        for (j, &(a, b)) in self.pairing.iter().enumerate() {
            junction_of[self.legs[a]] = j;
            junction_of[self.legs[b]] = j;
        }
        let mut new_id = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for (v, k) in self.vertices.iter().enumerate() {
            if *k == VertexKind::Trivalent {
                new_id[v] = vertices.len();
                vertices.push(*k);
            }
        }
        let end = |v: usize| match self.vertices[v] {
            VertexKind::Trivalent => End::Vertex(new_id[v]),
            VertexKind::Leg => End::Junction(junction_of[v]),
        };
        // every junction has exactly two edge slots
        let mut at_junction: Vec<Vec<usize>> = vec![Vec::new(); self.pairing.len()];
        let mut ends = Vec::new();
        let mut out_edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            match e.ends {
                Some((v, w)) => {
                    ends.push((end(v), end(w)));
                    for x in [end(v), end(w)] {
                        if let End::Junction(j) = x {
                            at_junction[j].push(i);
                        }
                    }
                }
                None => ends.push((End::Junction(usize::MAX), End::Junction(usize::MAX))),
            }
        }
        let mut visited = vec![false; self.edges.len()];
        let mut tracked = vec![usize::MAX; self.pairing.len()];
        // walk from `start` along edge `e`, crossing junctions, until a trivalent vertex
        let walk = |e0: usize, from: End, visited: &mut Vec<bool>, passed: &mut Vec<usize>| -> Option<End> {
            let (mut e, mut from) = (e0, from);
            loop {
                visited[e] = true;
                let (a, b) = ends[e];
                let to = if a == from { b } else { a };
                match to {
                    End::Vertex(_) => return Some(to),
                    End::Junction(j) => {
                        passed.push(j);
                        let slots = &at_junction[j];
                        let next = if slots[0] == e && !visited[slots[1]] {
                            slots[1]
                        } else if slots[1] == e && !visited[slots[0]] {
                            slots[0]
                        } else if slots[0] == slots[1] || visited[slots[0]] && visited[slots[1]] {
                            return None;
                        } else {
                            unreachable!("junction slots inconsistent")
                        };
                        e = next;
                        from = to;
                    }
                }
            }
        };
        for (i, e) in self.edges.iter().enumerate() {
            if visited[i] {
                continue;
            }
            if e.ends.is_none() {
                visited[i] = true;
                out_edges.push(Edge { ends: None });
                continue;
            }
            let (a, b) = ends[i];
            let start = match (a, b) {
                (End::Vertex(_), _) => a,
                (_, End::Vertex(_)) => b,
                _ => continue,
            };
            let mut passed = Vec::new();
            let stop = walk(i, start, &mut visited, &mut passed);
            let (End::Vertex(x), Some(End::Vertex(y))) = (start, stop) else { unreachable!() };
            for j in passed {
                tracked[j] = out_edges.len();
            }
            out_edges.push(Edge { ends: Some((x, y)) });
        }
        // remaining edges form circles through junctions only
        for i in 0..self.edges.len() {
            if visited[i] {
                continue;
            }
            let End::Junction(j0) = ends[i].0 else { unreachable!() };
            let mut passed = vec![j0];
            walk(i, End::Junction(j0), &mut visited, &mut passed);
            for j in passed {
                tracked[j] = out_edges.len();
            }
            out_edges.push(Edge { ends: None });
        }
        let g = ColoredGraph::new(vertices, out_edges, Vec::new(), Vec::new()).expect("gluing preserves validity");
        (g, tracked)
    }

    pub fn glue_closed(&self) -> ColoredGraph {
        self.glue_closed_tracked().0
    }

    /// Number of connected components, circles without vertices included.
    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut comps = self.vertices.len();
        for e in &self.edges {
            match e.ends {
                Some((v, w)) => {
                    let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                    if a != b {
                        parent[a] = b;
                        comps -= 1;
                    }
                }
                None => comps += 1,
            }
        }
        comps
    }

    /// `dim H₁(Γ; ℤ/2) = #E − #V + #components`, a circle without vertices counting once.
    pub fn cycle_rank(&self) -> usize {
        let circles = self.edges.iter().filter(|e| e.ends.is_none()).count();
        let with_ends = self.edges.len() - circles;
        with_ends + (self.components() - circles) - self.vertices.len() + circles
    }

    /// Index of the coloring lattice in `ℤ^E`: `2^{#E − dim H₁(Γ; ℤ/2)}`.
    pub fn covolume_index(&self) -> u128 {
        1u128 << (self.edges.len() - self.cycle_rank())
    }
}

/// Interior lattice point test at a vertex: odd sum, strict triangle inequalities, sum `< 2r`.
pub fn is_admissible(i: u32, j: u32, k: u32, r: u32) -> Result<bool> {
    for c in [i, j, k] {
        if c < 1 || c >= r {
            return Err(Error::OutOfRange(format!("color {c} not in 1..{}", r - 1)));
        }
    }
    Ok(admissible(i, j, k, r))
}

#[inline]
pub(crate) fn admissible(i: u32, j: u32, k: u32, r: u32) -> bool {
    let s = i + j + k;
    s % 2 == 1 && i < j + k && j < i + k && k < i + j && s < 2 * r
}

/// Exact count of admissible colorings extending `boundary` (one color per leg).
pub fn count_colorings(g: &ColoredGraph, boundary: &[u32], r: u32) -> Result<u128> {
    if boundary.len() != g.legs().len() {
        return Err(Error::UnassignedLeg(boundary.len().min(g.legs().len())));
    }
    for &c in boundary {
        if c < 1 || c >= r {
            return Err(Error::OutOfRange(format!("boundary color {c} not in 1..{}", r - 1)));
        }
    }
    Counter::new(g, r)?.count(boundary)
}

/// `dim V_p(Σ)` for the surface whose spine is the closed graph `g`, with `p = 2r`.
pub fn verlinde_dim(g: &ColoredGraph, r: u32) -> Result<u128> {
    if !g.is_closed() {
        return Err(Error::MalformedPresentation("verlinde_dim needs a closed graph".into()));
    }
    count_colorings(g, &[], r)
}
