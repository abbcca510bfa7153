//! Standard spines of closed surfaces and of their one-curve surgeries.

use super::{ColoredGraph, VertexKind};

use VertexKind::{Leg, Trivalent};

fn build(vertices: Vec<VertexKind>, edges: &[Option<(usize, usize)>], legs: Vec<usize>, pairing: Vec<(usize, usize)>) -> ColoredGraph {
    ColoredGraph::from_parts(vertices, edges, legs, pairing).expect("standard spine is valid")
}

/// Genus one: a single circle.
pub fn genus_one() -> ColoredGraph {
    build(vec![], &[None], vec![], vec![])
}

/// Genus one cut along a meridian: one edge between two legs.
pub fn genus_one_surgery() -> ColoredGraph {
    build(vec![Leg, Leg], &[Some((0, 1))], vec![0, 1], vec![(0, 1)])
}

/// Two vertices joined by three edges.
pub fn theta() -> ColoredGraph {
    build(vec![Trivalent, Trivalent], &[Some((0, 1)), Some((0, 1)), Some((0, 1))], vec![], vec![])
}

/// The theta graph cut open along one edge; gluing the legs gives back [`theta`].
pub fn genus_two_surgery() -> ColoredGraph {
    build(
        vec![Trivalent, Trivalent, Leg, Leg],
        &[Some((0, 1)), Some((0, 1)), Some((0, 2)), Some((1, 3))],
        vec![2, 3],
        vec![(0, 1)],
    )
}

/// Complete graph on four vertices, a genus three spine.
pub fn k4() -> ColoredGraph {
    build(
        vec![Trivalent; 4],
        &[Some((0, 1)), Some((0, 2)), Some((0, 3)), Some((1, 2)), Some((1, 3)), Some((2, 3))],
        vec![],
        vec![],
    )
}

/// Cycle of `g − 1` double-edged beads, genus `g ≥ 2`.
pub fn necklace(g: usize) -> ColoredGraph {
    assert!(g >= 2, "necklace needs genus at least 2");
    let beads = g - 1;
    let mut edges = Vec::new();
    for i in 0..beads {
        let (u, w) = (2 * i, 2 * i + 1);
        edges.push(Some((u, w)));
        edges.push(Some((u, w)));
        edges.push(Some((w, 2 * ((i + 1) % beads))));
    }
    build(vec![Trivalent; 2 * beads], &edges, vec![], vec![])
}

/// Loop, bar, `g − 2` double-edged beads, bar, loop; genus `g ≥ 2`.
pub fn chain(g: usize) -> ColoredGraph {
    assert!(g >= 2, "chain needs genus at least 2");
    let n = 2 * g - 2;
    let mut edges = vec![Some((0, 0))];
    for i in (0..n).step_by(2) {
        edges.push(Some((i, i + 1)));
        if i + 2 < n {
            edges.push(Some((i + 1, i + 2)));
            edges.push(Some((i + 1, i + 2)));
        }
    }
    edges.push(Some((n - 1, n - 1)));
    build(vec![Trivalent; n], &edges, vec![], vec![])
}

/// A standard closed spine of genus `g ≥ 1`.
pub fn standard(g: usize) -> ColoredGraph {
    match g {
        0 => panic!("genus zero has no trivalent spine"),
        1 => genus_one(),
        2 => theta(),
        _ => necklace(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_from_cycle_rank() {
        assert_eq!(genus_one().cycle_rank(), 1);
        assert_eq!(theta().cycle_rank(), 2);
        assert_eq!(k4().cycle_rank(), 3);
        for g in 2..7 {
            assert_eq!(necklace(g).cycle_rank(), g);
            assert_eq!(chain(g).cycle_rank(), g);
            assert_eq!(standard(g).cycle_rank(), g);
        }
    }
}
