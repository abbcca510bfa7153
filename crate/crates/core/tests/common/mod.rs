//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use wrt_limits::amu::RibbonCurve;
use wrt_limits::laurent::LaurentPoly;

/// A ray passage: radial key, direction (+1 counterclockwise), on the turning edge.
type Pass = (i64, i64, bool);

/// Brute-force color-3 value of a lifted annular curve.
///
/// Every edge is doubled with the projector `f₂ = 1 + e/[2]` at its tail, and each double point becomes four crossings of the cable, the later strand
/// (walking from the marked edge) on top. All Kauffman states of the cable are expanded
/// and each resulting link is evaluated on the torus `core × S¹`.
pub fn cable_color3(curve: &RibbonCurve) -> LaurentPoly {
    let chart = curve.annular_position().expect("annular curve");
    let m = curve.marked_edge().expect("marked edge");
    assert_eq!(chart[m].len(), 1, "turning edge crosses the ray once");
    let slope = chart[m][0].sign as i64;
    let rot = curve.rotations();
    let nv = rot.len();
    let ne = curve.edge_count();

    // slot of each half-edge
    let mut slot = vec![None; 2 * ne];
    for (v, r) in rot.iter().enumerate() {
        for (k, h) in r.iter().enumerate() {
            slot[*h] = Some((v, k));
        }
    }
    // over slot parity per vertex: the second visit from the marked edge
    let mut visits = vec![Vec::new(); nv];
    let mut h = 2 * m;
    loop {
        if let Some((v, k)) = slot[h ^ 1] {
            visits[v].push(k % 2);
            h = rot[v][(k + 2) % 4];
        } else {
            break;
        }
        if h == 2 * m {
            break;
        }
    }
    let over: Vec<usize> = visits.iter().map(|v| v[1]).collect();

    // node layout: cable ports 2h + side (0 clockwise, 1 counterclockwise of the half-edge),
    // then the two strand starts after each projector, then four local ports per cable crossing
    let port = |h: usize, side: usize| 2 * h + side;
    let body = |e: usize, j: usize| 4 * ne + 2 * e + j;
    let cell = |v: usize, c: usize, p: usize| 6 * ne + 16 * v + 4 * c + p;
    let nodes = 6 * ne + 16 * nv;
    const NE: usize = 0;
    const NW: usize = 1;
    const SW: usize = 2;
    const SE: usize = 3;
    const E: usize = 0;
    const N: usize = 1;
    const W: usize = 2;
    const S: usize = 3;

    // fixed links: (a, b, passages walking a → b)
    let mut fixed: Vec<(usize, usize, Vec<Pass>)> = Vec::new();
    for e in 0..ne {
        for j in 0..2 {
            let side = if j == 0 { 1 } else { -1 };
            let passes: Vec<Pass> =
                chart[e].iter().map(|c| (2 * c.height + side * c.sign as i64, c.sign as i64, e == m)).collect();
            fixed.push((body(e, j), port(2 * e + 1, 1 - j), passes));
            if slot[2 * e].is_none() {
                fixed.push((port(2 * e + 1, 1 - j), port(2 * e, j), vec![]));
            }
        }
    }
    for (v, r) in rot.iter().enumerate() {
        let p = |k: usize, side: usize| port(r[k], side);
        let wiring = [
            (p(0, 1), cell(v, NE, E)),
            (cell(v, NE, W), cell(v, NW, E)),
            (cell(v, NW, W), p(2, 0)),
            (p(0, 0), cell(v, SE, E)),
            (cell(v, SE, W), cell(v, SW, E)),
            (cell(v, SW, W), p(2, 1)),
            (p(1, 0), cell(v, NE, N)),
            (cell(v, NE, S), cell(v, SE, N)),
            (cell(v, SE, S), p(3, 1)),
            (p(1, 1), cell(v, NW, N)),
            (cell(v, NW, S), cell(v, SW, N)),
            (cell(v, SW, S), p(3, 0)),
        ];
        fixed.extend(wiring.iter().map(|&(a, b)| (a, b, vec![])));
    }

    let q2 = LaurentPoly::quantum_two();
    let mut scaled = LaurentPoly::zero();
    for cups in 0u32..(1 << ne) {
        let mut links = fixed.clone();
        for e in 0..ne {
            if cups >> e & 1 == 1 {
                links.push((port(2 * e, 0), port(2 * e, 1), vec![]));
                links.push((body(e, 0), body(e, 1), vec![]));
            } else {
                links.push((port(2 * e, 0), body(e, 0), vec![]));
                links.push((port(2 * e, 1), body(e, 1), vec![]));
            }
        }
        let mut sum = LaurentPoly::zero();
        for state in 0u32..(1 << (4 * nv)) {
            let mut all = links.clone();
            let mut weight = 0i64;
            for v in 0..nv {
                for c in 0..4 {
                    let a_smoothing = state >> (4 * v + c) & 1 == 0;
                    weight += if a_smoothing { 1 } else { -1 };
                    let horizontal_over = over[v] == 0;
                    let pairs = if a_smoothing == horizontal_over { [(W, N), (E, S)] } else { [(W, S), (N, E)] };
                    for (x, y) in pairs {
                        all.push((cell(v, c, x), cell(v, c, y), vec![]));
                    }
                }
            }
            let curves = trace(nodes, &all);
            sum += &torus_bracket(&curves, slope).shift(weight);
        }
        scaled += &(&sum * &q2.pow(ne as u32 - cups.count_ones()));
    }
    scaled.div_exact(&q2.pow(ne as u32)).expect("projector denominators cancel")
}

/// Closed curves of a link given as degree-two links between nodes, as passage lists.
fn trace(nodes: usize, links: &[(usize, usize, Vec<Pass>)]) -> Vec<Vec<Pass>> {
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    for (i, (a, b, _)) in links.iter().enumerate() {
        at[*a].push(i);
        at[*b].push(i);
    }
    let mut used = vec![false; links.len()];
    let mut out = Vec::new();
    for first in 0..links.len() {
        if used[first] {
            continue;
        }
        let mut curve = Vec::new();
        let mut link = first;
        let mut node = links[first].0;
        loop {
            used[link] = true;
            let (a, b, passes) = &links[link];
            if *a == node {
                curve.extend(passes.iter().copied());
                node = *b;
            } else {
                curve.extend(passes.iter().rev().map(|&(k, d, t)| (k, -d, t)));
                node = *a;
            }
            match at[node].iter().copied().find(|l| !used[*l]) {
                Some(l) => link = l,
                None => break,
            }
        }
        out.push(curve);
    }
    out
}

/// Kauffman bracket on the torus of disjoint annular curves lifted once around the circle
/// at their turning passages. The annulus sits in a thin band; turning strands climb
/// across the ray, crossing each other strand there, over when radially outside.
fn torus_bracket(curves: &[Vec<Pass>], slope: i64) -> LaurentPoly {
    // strands through the ray: index into this list
    let mut strands: Vec<Pass> = Vec::new();
    let mut owner = Vec::new();
    for (ci, c) in curves.iter().enumerate() {
        for p in c {
            strands.push(*p);
            owner.push(ci);
        }
    }
    let turning: Vec<usize> = (0..strands.len()).filter(|i| strands[*i].2).collect();
    let flat: Vec<usize> = (0..strands.len()).filter(|i| !strands[*i].2).collect();
    // each turning strand meets each flat strand once; list the meetings along every strand
    // as (other strand, position along this strand from its inner-left end)
    let climb = |t: usize, f: usize| -> usize {
        // how far up the turning strand the meeting lies, in the climbing direction
        let (kt, kf) = (strands[t].0, strands[f].0);
        let above = if slope > 0 { kf > kt } else { kf < kt };
        let d = (kf - kt).abs() as usize;
        if above {
            d
        } else {
            1_000_000 - d
        }
    };
    let mut meets: Vec<(usize, usize)> = Vec::new();
    for &t in &turning {
        for &f in &flat {
            meets.push((t, f));
        }
    }
    let nm = meets.len();
    // a meeting's four corners: 0 = flat strand, left; 1 = flat, right; 2 = turning, before climb; 3 = turning, after
    let corner = |i: usize, c: usize| 4 * i + c;
    // ends of strands at the ray, left and right
    let lend = |s: usize| 4 * nm + 2 * s;
    let rend = |s: usize| 4 * nm + 2 * s + 1;
    let total_nodes = 4 * nm + 2 * strands.len();
    // pieces: (a, b, theta, circle) walking a → b
    let mut pieces: Vec<(usize, usize, i64, i64)> = Vec::new();
    for &f in &flat {
        // turning strands met left to right: the outermost first when climbing
        let mut ms: Vec<usize> = (0..nm).filter(|i| meets[*i].1 == f).collect();
        ms.sort_by_key(|i| -strands[meets[*i].0].0 * slope);
        let mut at = lend(f);
        for i in ms {
            pieces.push((at, corner(i, 0), 0, 0));
            at = corner(i, 1);
        }
        pieces.push((at, rend(f), 0, 0));
    }
    for &t in &turning {
        let mut ms: Vec<usize> = (0..nm).filter(|i| meets[*i].0 == t).collect();
        ms.sort_by_key(|i| climb(t, meets[*i].1));
        let mut at = lend(t);
        let mut wrapped = false;
        for i in ms {
            let circle = if !wrapped && climb(t, meets[i].1) > 500_000 {
                wrapped = true;
                slope
            } else {
                0
            };
            pieces.push((at, corner(i, 2), 0, circle));
            at = corner(i, 3);
        }
        pieces.push((at, rend(t), 0, if wrapped { 0 } else { slope }));
    }
    // outside the ray, a curve runs from one passage to the next; crossing the far side of
    // the annulus counts one turn around the core
    let mut base = 0;
    for c in curves {
        for i in 0..c.len() {
            let (a, b) = (base + i, base + (i + 1) % c.len());
            let from = if strands[a].1 > 0 { rend(a) } else { lend(a) };
            let to = if strands[b].1 > 0 { lend(b) } else { rend(b) };
            let theta = match (strands[a].1 > 0, strands[b].1 > 0) {
                (true, true) => 1,
                (false, false) => -1,
                _ => 0,
            };
            pieces.push((from, to, theta, 0));
        }
        base += c.len();
    }
    let away = curves.iter().filter(|c| c.is_empty()).count() as u32;

    let circle_value = -LaurentPoly::quantum_two();
    let mut total = LaurentPoly::zero();
    for state in 0u64..(1 << nm) {
        let mut links = pieces.clone();
        let mut weight = 0i64;
        for i in 0..nm {
            let (t, f) = meets[i];
            let turning_over = strands[t].0 > strands[f].0;
            let a_smoothing = state >> i & 1 == 0;
            weight += if a_smoothing { 1 } else { -1 };
            // compass corners: the flat strand runs west to east; the turning strand runs
            // south to north when climbing counterclockwise, north to south otherwise
            let (w, e) = (corner(i, 0), corner(i, 1));
            let (s, n) = if slope > 0 { (corner(i, 2), corner(i, 3)) } else { (corner(i, 3), corner(i, 2)) };
            let pairs = if a_smoothing != turning_over { [(w, n), (e, s)] } else { [(w, s), (n, e)] };
            for (x, y) in pairs {
                links.push((x, y, 0, 0));
            }
        }
        let mut at: Vec<Vec<usize>> = vec![Vec::new(); total_nodes];
        for (i, l) in links.iter().enumerate() {
            at[l.0].push(i);
            at[l.1].push(i);
        }
        let mut used = vec![false; links.len()];
        let mut trivial = away;
        let mut classes = Vec::new();
        for first in 0..links.len() {
            if used[first] {
                continue;
            }
            let (mut th, mut ci) = (0, 0);
            let mut link = first;
            let mut node = links[first].0;
            loop {
                used[link] = true;
                let l = links[link];
                let sign = if l.0 == node { 1 } else { -1 };
                th += sign * l.2;
                ci += sign * l.3;
                node = if l.0 == node { l.1 } else { l.0 };
                match at[node].iter().copied().find(|x| !used[*x]) {
                    Some(x) => link = x,
                    None => break,
                }
            }
            if (th, ci) == (0, 0) {
                trivial += 1;
            } else {
                classes.push((th, ci));
            }
        }
        let k = classes.len() as u64;
        if k % 2 == 1 {
            continue;
        }
        assert!(classes.iter().all(|&(x, y)| x * classes[0].1 == y * classes[0].0), "torus curves are parallel");
        let central: u64 = (1..=k / 2).fold(1, |acc, i| acc * (k / 2 + i) / i);
        let term = LaurentPoly::monomial(central, weight);
        total += &(&term * &circle_value.pow(trivial));
    }
    total
}
