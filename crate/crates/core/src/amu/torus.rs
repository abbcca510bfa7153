//! Kauffman bracket of a lifted boundary link, projected onto the torus `core × S¹`.
//!
//! The annulus is squashed into a thin band around the core of the torus, radius
//! becoming the interval factor. Curves are disjoint inside the band. Only the turn
//! along the marked edge leaves it: the two sides of the marked edge wrap once
//! around the circle factor next to the ray, crossing every other strand that passes
//! the ray there. The strand at larger radius is over. Expanding those crossings
//! leaves disjoint simple curves on the torus, whose `η` is a central binomial.

use crate::laurent::LaurentPoly;
use crate::{Error, Result};

/// One passage of a boundary curve through the ray.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Passage {
    /// Radial order of the passage; distinct for distinct passages.
    pub key: i64,
    /// `+1` when moving counterclockwise.
    pub dir: i8,
    /// The passage is the turn along the marked edge.
    pub marked: bool,
}

const CROSSING_CAP: usize = 24;

struct Wire {
    ends: [usize; 2],
    theta: i64,
    circle: i64,
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `η` of the lifted link whose components cross the ray at `curves`, closed curves that
/// never reach the ray being trivial. `slope` is the direction, counterclockwise or not,
/// in which the marked edge runs forward through the ray.
pub(crate) fn eta_link(curves: &[Vec<Passage>], slope: i8) -> Result<LaurentPoly> {
    let arcs: Vec<Passage> = curves.iter().flatten().copied().collect();
    let na = arcs.len();
    let left = |a: usize| 2 * a;
    let right = |a: usize| 2 * a + 1;

    // outside the strip each curve runs from one passage to the next without crossings
    let mut partner_fixed = vec![usize::MAX; 2 * na];
    let mut base = 0;
    for c in curves {
        for i in 0..c.len() {
            let (a, b) = (base + i, base + (i + 1) % c.len());
            let exit = if arcs[a].dir > 0 { right(a) } else { left(a) };
            let entry = if arcs[b].dir > 0 { left(b) } else { right(b) };
            partner_fixed[exit] = entry;
            partner_fixed[entry] = exit;
        }
        base += c.len();
    }

    let marked: Vec<usize> = (0..na).filter(|a| arcs[*a].marked).collect();
    let plain: Vec<usize> = (0..na).filter(|a| !arcs[*a].marked).collect();
    let ncross = marked.len() * plain.len();
    if ncross > CROSSING_CAP {
        return Err(Error::ResourceCap(format!("{ncross} crossings near the ray exceed the cap {CROSSING_CAP}")));
    }
    let cross = |mi: usize, pi: usize| mi * plain.len() + pi;
    let port = |c: usize, p: usize| 2 * na + 4 * c + p;
    const E: usize = 0;
    const N: usize = 1;
    const W: usize = 2;
    const S: usize = 3;
    let nodes = 2 * na + 4 * ncross;

    let mut wires = Vec::new();
    let lay = |a: usize, through: Vec<(usize, usize)>, cut: Option<usize>, wires: &mut Vec<Wire>| {
        let mut pts = vec![left(a)];
        for (inn, out) in through {
            pts.push(inn);
            pts.push(out);
        }
        pts.push(right(a));
        for (k, pair) in pts.chunks(2).enumerate() {
            wires.push(Wire {
                ends: [pair[0], pair[1]],
                theta: i64::from(k == 0),
                circle: if cut == Some(k) { slope as i64 } else { 0 },
            });
        }
    };

    // along a plain strand the marked strands appear outermost first when the turn climbs
    let mut marked_order: Vec<usize> = (0..marked.len()).collect();
    marked_order.sort_by_key(|&mi| arcs[marked[mi]].key * slope as i64);
    marked_order.reverse();
    for (pi, &a) in plain.iter().enumerate() {
        let through = marked_order.iter().map(|&mi| (port(cross(mi, pi), W), port(cross(mi, pi), E))).collect();
        lay(a, through, None, &mut wires);
    }
    let (m_in, m_out) = if slope > 0 { (S, N) } else { (N, S) };
    for (mi, &a) in marked.iter().enumerate() {
        let k = arcs[a].key;
        let mut above: Vec<usize> = (0..plain.len()).filter(|pi| arcs[plain[*pi]].key > k).collect();
        let mut below: Vec<usize> = (0..plain.len()).filter(|pi| arcs[plain[*pi]].key < k).collect();
        above.sort_by_key(|pi| arcs[plain[*pi]].key);
        below.sort_by_key(|pi| arcs[plain[*pi]].key);
        let (first, second) = if slope > 0 {
            (above, below)
        } else {
            above.reverse();
            below.reverse();
            (below, above)
        };
        let cut = first.len();
        let through =
            first.iter().chain(&second).map(|&pi| (port(cross(mi, pi), m_in), port(cross(mi, pi), m_out))).collect();
        lay(a, through, Some(cut), &mut wires);
    }
    let mut wire_at = vec![(usize::MAX, 0usize); nodes];
    for (w, wire) in wires.iter().enumerate() {
        wire_at[wire.ends[0]] = (w, 0);
        wire_at[wire.ends[1]] = (w, 1);
    }
    // over strand of each crossing as a port offset: 0 for the plain strand, 1 for the turn
    let over: Vec<usize> = (0..ncross)
        .map(|c| {
            let (mi, pi) = (c / plain.len().max(1), c % plain.len().max(1));
            usize::from(arcs[marked[mi]].key > arcs[plain[pi]].key)
        })
        .collect();

    let circle = -LaurentPoly::quantum_two();
    let mut total = LaurentPoly::zero();
    let mut partner = partner_fixed.clone();
    partner.resize(nodes, usize::MAX);
    let mut seen = vec![false; nodes];
    for state in 0u64..(1 << ncross) {
        let mut a_minus_b = 0i64;
        for (c, &o) in over.iter().enumerate() {
            let pairs = if state >> c & 1 == 0 {
                a_minus_b += 1;
                [(o + 1, o + 2), (o + 3, o)]
            } else {
                a_minus_b -= 1;
                [(o, o + 1), (o + 2, o + 3)]
            };
            for (x, y) in pairs {
                let (x, y) = (port(c, x % 4), port(c, y % 4));
                partner[x] = y;
                partner[y] = x;
            }
        }
        seen.iter_mut().for_each(|s| *s = false);
        let mut trivial = 0u32;
        let mut essential: Vec<(i64, i64)> = Vec::new();
        for start in 0..nodes {
            if seen[start] {
                continue;
            }
            let (mut theta, mut wind) = (0i64, 0i64);
            let mut node = start;
            loop {
                let (w, side) = wire_at[node];
                let wire = &wires[w];
                let sign = if side == 0 { 1 } else { -1 };
                theta += sign * wire.theta;
                wind += sign * wire.circle;
                seen[node] = true;
                let far = wire.ends[1 - side];
                seen[far] = true;
                node = partner[far];
                if node == start {
                    break;
                }
            }
            if (theta, wind) == (0, 0) {
                trivial += 1;
            } else {
                essential.push((theta, wind));
            }
        }
        let k = essential.len() as u64;
        if k % 2 == 1 {
            continue;
        }
        if let Some(&(x, y)) = essential.first() {
            if essential.iter().any(|&(u, v)| u * y != v * x) {
                return Err(Error::NotAnnularlyResolvable("resolved torus curves are not parallel".into()));
            }
        }
        let weight = LaurentPoly::monomial(binomial(k, k / 2), a_minus_b);
        total += &(&weight * &circle.pow(trivial));
    }
    let trivial_away = curves.iter().filter(|c| c.is_empty()).count() as u32;
    Ok(&total * &circle.pow(trivial_away))
}
