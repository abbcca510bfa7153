//! Exact coloring counts by variable elimination over edge colors.

use std::collections::{BTreeSet, HashMap};
use std::sync::Mutex;

use rayon::prelude::*;

use super::{admissible, ColoredGraph};
use crate::{Error, Result};

/// Tables larger than this many cells are refused.
const MAX_TABLE: usize = 1 << 26;

#[derive(Debug, Clone, Copy)]
enum Slot {
    Var(usize),
    Fixed(u32),
}

#[derive(Debug, Clone)]
enum Factor {
    /// Vertex admissibility, evaluated on demand.
    Vertex([Slot; 3]),
    /// Dense table over `scope`, colors `1..r` mapped to `0..r−1`, first variable fastest.
    Table { scope: Vec<usize>, data: Vec<u128> },
    Const(u128),
}

impl Factor {
    fn scope(&self) -> Vec<usize> {
        match self {
            Factor::Vertex(slots) => {
                let mut s: Vec<usize> = slots
                    .iter()
                    .filter_map(|s| match s {
                        Slot::Var(v) => Some(*v),
                        Slot::Fixed(_) => None,
                    })
                    .collect();
                s.sort_unstable();
                s.dedup();
                s
            }
            Factor::Table { scope, .. } => scope.clone(),
            Factor::Const(_) => Vec::new(),
        }
    }

    #[inline]
    fn eval(&self, colors: &[u32], r: u32) -> u128 {
        match self {
            Factor::Vertex(slots) => {
                let c = |s: &Slot| match s {
                    Slot::Var(v) => colors[*v],
                    Slot::Fixed(c) => *c,
                };
                admissible(c(&slots[0]), c(&slots[1]), c(&slots[2]), r) as u128
            }
            Factor::Table { scope, data } => {
                let mut idx = 0usize;
                for &v in scope.iter().rev() {
                    idx = idx * (r as usize - 1) + (colors[v] as usize - 1);
                }
                data[idx]
            }
            Factor::Const(c) => *c,
        }
    }
}

/// Counts indexed by boundary colors, `C(c_1, …, c_m)` for the chosen kept edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryTable {
    pub r: u32,
    /// Number of kept coordinates.
    pub arity: usize,
    /// Dense data, first coordinate fastest, colors `1..r` stored at `0..r−1`.
    pub data: Vec<u128>,
}

impl BoundaryTable {
    pub fn get(&self, colors: &[u32]) -> u128 {
        let mut idx = 0usize;
        for &c in colors.iter().rev() {
            if c < 1 || c >= self.r {
                return 0;
            }
            idx = idx * (self.r as usize - 1) + (c as usize - 1);
        }
        self.data[idx]
    }

    pub fn total(&self) -> u128 {
        self.data.iter().sum()
    }
}

/// Coloring counter for one graph at one `r`, with a cache of pinned-boundary queries.
pub struct Counter<'g> {
    graph: &'g ColoredGraph,
    r: u32,
    cache: Mutex<HashMap<Vec<u32>, u128>>,
}

impl<'g> Counter<'g> {
    pub fn new(graph: &'g ColoredGraph, r: u32) -> Result<Self> {
        if r < 3 {
            return Err(Error::BadLevel(2 * r as i64));
        }
        Ok(Self { graph, r, cache: Mutex::new(HashMap::new()) })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Count with every leg pinned to the given color.
    pub fn count(&self, boundary: &[u32]) -> Result<u128> {
        if boundary.len() != self.graph.legs().len() {
            return Err(Error::UnassignedLeg(boundary.len().min(self.graph.legs().len())));
        }
        if let Some(v) = self.cache.lock().unwrap().get(boundary) {
            return Ok(*v);
        }
        let mut pinned: HashMap<usize, u32> = HashMap::new();
        for (i, &c) in boundary.iter().enumerate() {
            let e = self.graph.leg_edge(i);
            if c < 1 || c >= self.r {
                return Ok(0);
            }
            if let Some(old) = pinned.insert(e, c) {
                if old != c {
                    return Ok(0);
                }
            }
        }
        let t = contract(self.graph, self.r, &pinned, &[])?;
        let v = t.data[0];
        self.cache.lock().unwrap().insert(boundary.to_vec(), v);
        Ok(v)
    }

    /// Full table over the leg colors, in leg order.
    pub fn leg_table(&self) -> Result<BoundaryTable> {
        let edges: Vec<usize> = (0..self.graph.legs().len()).map(|i| self.graph.leg_edge(i)).collect();
        self.edge_table(&edges)
    }

    /// Full table over the colors of the given edges (repeats allowed).
    pub fn edge_table(&self, edges: &[usize]) -> Result<BoundaryTable> {
        let mut distinct: Vec<usize> = edges.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let inner = contract(self.graph, self.r, &HashMap::new(), &distinct)?;
        if distinct.len() == edges.len() && distinct == edges {
            return Ok(inner);
        }
        // expand to the requested coordinate list
        let n = self.r as usize - 1;
        let size = checked_size(n, edges.len())?;
        let mut data = vec![0u128; size];
        let mut colors = vec![1u32; edges.len()];
        for cell in data.iter_mut() {
            let mut per_edge: HashMap<usize, u32> = HashMap::new();
            let consistent = edges.iter().zip(&colors).all(|(e, c)| *per_edge.entry(*e).or_insert(*c) == *c);
            if consistent {
                let key: Vec<u32> = distinct.iter().map(|e| per_edge[e]).collect();
                *cell = inner.get(&key);
            }
            advance(&mut colors, self.r);
        }
        Ok(BoundaryTable { r: self.r, arity: edges.len(), data })
    }
}

fn checked_size(n: usize, arity: usize) -> Result<usize> {
    let mut size = 1usize;
    for _ in 0..arity {
        size = size
            .checked_mul(n)
            .filter(|s| *s <= MAX_TABLE)
            .ok_or_else(|| Error::ResourceCap(format!("table with {arity} coordinates of {n} colors")))?;
    }
    Ok(size)
}

fn advance(colors: &mut [u32], r: u32) {
    for c in colors.iter_mut() {
        if *c + 1 < r {
            *c += 1;
            return;
        }
        *c = 1;
    }
}

/// Eliminate every edge color except `kept`; returns the table over `kept`.
fn contract(g: &ColoredGraph, r: u32, pinned: &HashMap<usize, u32>, kept: &[usize]) -> Result<BoundaryTable> {
    let n_edges = g.edges().len();
    let n = r as usize - 1;
    let slot = |e: usize| match pinned.get(&e) {
        Some(c) => Slot::Fixed(*c),
        None => Slot::Var(e),
    };
    let mut factors: Vec<Factor> = g.trivalent().map(|[a, b, c]| Factor::Vertex([slot(a), slot(b), slot(c)])).collect();
    // edges touched by no factor contribute a free choice of color
    let mut touched = vec![false; n_edges];
    for f in &factors {
        for v in f.scope() {
            touched[v] = true;
        }
    }
    let kept_set: BTreeSet<usize> = kept.iter().copied().collect();
    let mut free = 1u128;
    for e in 0..n_edges {
        if !touched[e] && !pinned.contains_key(&e) && !kept_set.contains(&e) {
            free = free.checked_mul(n as u128).ok_or_else(|| Error::ResourceCap("count overflow".into()))?;
        }
    }
    factors.push(Factor::Const(free));

    let mut remaining: BTreeSet<usize> =
        (0..n_edges).filter(|e| touched[*e] && !pinned.contains_key(e) && !kept_set.contains(e)).collect();
    while !remaining.is_empty() {
        // greedy minimum degree: smallest union scope, ties to the lowest edge id
        let mut best: Option<(usize, usize, Vec<usize>)> = None;
        for &x in &remaining {
            let mut union: BTreeSet<usize> = BTreeSet::new();
            for f in factors.iter().filter(|f| f.scope().contains(&x)) {
                union.extend(f.scope());
            }
            union.remove(&x);
            let size = union.len();
            if best.as_ref().is_none_or(|(s, _, _)| size < *s) {
                best = Some((size, x, union.into_iter().collect()));
            }
        }
        let (_, x, scope) = best.unwrap();
        remaining.remove(&x);
        let (involved, rest): (Vec<Factor>, Vec<Factor>) = factors.into_iter().partition(|f| f.scope().contains(&x));
        factors = rest;
        factors.push(eliminate(&involved, x, scope, n_edges, r)?);
    }

    // combine what is left over the kept coordinates
    let scope: Vec<usize> = kept.to_vec();
    let size = checked_size(n, scope.len())?;
    let data: Vec<u128> = (0..size)
        .into_par_iter()
        .map(|idx| {
            let mut colors = vec![1u32; n_edges];
            decode(idx, &scope, n, &mut colors);
            for (e, c) in pinned {
                colors[*e] = *c;
            }
            factors.iter().map(|f| f.eval(&colors, r)).fold(1u128, |a, b| a.saturating_mul(b))
        })
        .collect();
    if data.contains(&u128::MAX) {
        return Err(Error::ResourceCap("count overflow".into()));
    }
    Ok(BoundaryTable { r, arity: scope.len(), data })
}

fn decode(mut idx: usize, scope: &[usize], n: usize, colors: &mut [u32]) {
    for &v in scope {
        colors[v] = (idx % n) as u32 + 1;
        idx /= n;
    }
}

fn eliminate(involved: &[Factor], x: usize, scope: Vec<usize>, n_edges: usize, r: u32) -> Result<Factor> {
    let n = r as usize - 1;
    let size = checked_size(n, scope.len())?;
    let compute = |idx: usize| -> u128 {
        let mut colors = vec![1u32; n_edges];
        decode(idx, &scope, n, &mut colors);
        let mut total = 0u128;
        for c in 1..r {
            colors[x] = c;
            let mut prod = 1u128;
            for f in involved {
                prod = prod.saturating_mul(f.eval(&colors, r));
                if prod == 0 {
                    break;
                }
            }
            total = total.saturating_add(prod);
        }
        total
    };
    let data: Vec<u128> = if size >= 4096 {
        (0..size).into_par_iter().map(compute).collect()
    } else {
        (0..size).map(compute).collect()
    };
    if data.contains(&u128::MAX) {
        return Err(Error::ResourceCap("count overflow".into()));
    }
    Ok(if scope.is_empty() { Factor::Const(data[0]) } else { Factor::Table { scope, data } })
}
