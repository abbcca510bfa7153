//! Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned below.
//!
//! Criteria whose target values disagree with what the definitions compute are still
//! evaluated as stated and print FAIL; `EXPECTED_FAILURES` lists them so that the
//! suite notices both regressions and unexpected changes.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wrt_limits::amu::{corpus, p_gamma3};
use wrt_limits::asymptotics::{density_integral, fourier_integral, h_sum_angle, witten_compare, PiecewisePoly};
use wrt_limits::cyclotomic::{CycElem, RootSpec};
use wrt_limits::laurent::{Dichotomy, LaurentPoly};
use wrt_limits::qtorus::{eta_of_stack, torus_operator_matrix, HomClass, QTSym};
use wrt_limits::trace::{convergence_report, trace_weighted, AnnularLink, Subject, WeightedMulticurve};
use wrt_limits::verlinde::{lattice_bound_check, spines, ColoredGraph, Counter, LatticeKind, SliceDensity, VertexKind};

/// Criteria that cannot hold as stated; the reasons are recorded with the project notes.
const EXPECTED_FAILURES: [u32; 3] = [4, 5, 8];

/// Headroom over a constant fitted on the lower levels.
const HEADROOM: f64 = 1.2;
const TENT_LIMIT_TOL: f64 = 1e-3;
const CLOSED_FORM_TOL: f64 = 1e-9;
const SIGMA_GAP_TOL: f64 = 0.05;
const LATTICE_SLACK: f64 = 1e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(n: u32, t: Instant, o: Outcome) -> bool {
    let secs = t.elapsed().as_secs_f64();
    println!("criterion {n} {} ({secs:.1} s): {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    o.pass
}

fn hc(a: i64, b: i64) -> HomClass {
    HomClass::new(a, b)
}

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n - k + i) / i)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

// 1 --------------------------------------------------------------------------------------

fn criterion_1() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for p in [6, 8, 10, 12] {
        let mats: BTreeMap<(i64, i64), _> = (-3..=3)
            .flat_map(|a| (-3..=3).map(move |b| (a, b)))
            .map(|(a, b)| ((a, b), torus_operator_matrix(a, b, p).unwrap()))
            .collect();
        for (&x, mx) in &mats {
            for (&y, my) in &mats {
                let prod = QTSym::sym(x).multiply(&QTSym::sym(y)).operator_matrix(p).unwrap();
                let want = mx.mul(my);
                let n = want.size();
                let same = (0..n).all(|i| (0..n).all(|j| prod.get(i, j).eq_in_field(want.get(i, j))));
                checked += 1;
                if !same {
                    bad.push(format!("p={p} {x:?}*{y:?}"));
                }
            }
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("{checked} products, mismatches {bad:?}") }
}

// 2 --------------------------------------------------------------------------------------

fn criterion_2() -> Outcome {
    let mut bad = Vec::new();
    for n in 0..=12u64 {
        let want = if n % 2 == 0 { binomial(n, n / 2) } else { 0 };
        let got = eta_of_stack(&vec![hc(1, 0); n as usize]);
        if got != LaurentPoly::constant(want) {
            bad.push(format!("(1,0)^{n}: {got}"));
        }
    }
    for a in -4..=4 {
        for b in -4..=4 {
            if (a, b) != (0, 0) && !QTSym::sym(hc(a, b)).eta().is_zero() {
                bad.push(format!("<{a},{b}>"));
            }
        }
    }
    if QTSym::empty().eta() != LaurentPoly::one() {
        bad.push("empty".into());
    }
    Outcome { pass: bad.is_empty(), detail: format!("stacks n<=12, brackets |a|,|b|<=4, empty; wrong {bad:?}") }
}

// 3 --------------------------------------------------------------------------------------

/// Every graph with `n` trivalent and `l` leg vertices, up to relabelling trivalent vertices.
fn graphs(n: usize, l: usize) -> Vec<Vec<(usize, usize)>> {
    let half: Vec<usize> = (0..n).flat_map(|v| [v, v, v]).chain(n..n + l).collect();
    let mut out = BTreeSet::new();
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for k in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|q| (0..=k).map(move |i| {
                let mut r = q.clone();
                r.insert(i, k);
                r
            }))
            .collect();
    }
    fn matchings(rest: &[usize], acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some((&first, tail)) = rest.split_first() else {
            out.push(acc.clone());
            return;
        };
        for i in 0..tail.len() {
            acc.push((first, tail[i]));
            let mut next = tail.to_vec();
            next.remove(i);
            matchings(&next, acc, out);
            acc.pop();
        }
    }
    let mut all = Vec::new();
    matchings(&half, &mut Vec::new(), &mut all);
    for m in all {
        let key = perms
            .iter()
            .map(|q| {
                let relabel = |v: usize| if v < n { q[v] } else { v };
                let mut e: Vec<(usize, usize)> = m
                    .iter()
                    .map(|&(a, b)| {
                        let (a, b) = (relabel(a), relabel(b));
                        (a.min(b), a.max(b))
                    })
                    .collect();
                e.sort();
                e
            })
            .min()
            .expect("at least the identity");
        out.insert(key);
    }
    out.into_iter().collect()
}

fn admissible(i: u32, j: u32, k: u32, r: u32) -> bool {
    let s = i + j + k;
    s % 2 == 1 && i < j + k && j < i + k && k < i + j && s < 2 * r
}

/// Coloring counts by plain enumeration, keyed by the colors on the leg edges.
fn brute_counts(n: usize, l: usize, edges: &[Option<(usize, usize)>], r: u32) -> HashMap<Vec<u32>, u128> {
    let leg_edge: Vec<usize> = (n..n + l)
        .map(|v| edges.iter().position(|e| matches!(e, Some((a, b)) if *a == v || *b == v)).unwrap())
        .collect();
    let at: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut inc = Vec::new();
            for (i, e) in edges.iter().enumerate() {
                if let Some((a, b)) = e {
                    inc.extend(std::iter::repeat(i).take((*a == v) as usize + (*b == v) as usize));
                }
            }
            inc
        })
        .collect();
    let mut colors = vec![1u32; edges.len()];
    let mut out = HashMap::new();
    'next: loop {
        if at.iter().all(|e| admissible(colors[e[0]], colors[e[1]], colors[e[2]], r)) {
            *out.entry(leg_edge.iter().map(|&e| colors[e]).collect()).or_insert(0) += 1;
        }
        for c in colors.iter_mut() {
            if *c + 1 < r {
                *c += 1;
                continue 'next;
            }
            *c = 1;
        }
        return out;
    }
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    let mut tested = 0;
    let shapes = [(0, 2), (0, 4), (1, 1), (1, 3), (2, 0), (2, 2), (2, 4), (3, 1), (3, 3), (4, 0)];
    for (n, l) in shapes {
        for g in graphs(n, l) {
            let mut variants = vec![g.iter().map(|&e| Some(e)).collect::<Vec<_>>()];
            if g.len() < 6 {
                let mut with_circle = variants[0].clone();
                with_circle.push(None);
                variants.push(with_circle);
            }
            for edges in variants {
                let kinds: Vec<VertexKind> =
                    (0..n).map(|_| VertexKind::Trivalent).chain((0..l).map(|_| VertexKind::Leg)).collect();
                let graph = ColoredGraph::from_parts(kinds, &edges, (n..n + l).collect(), vec![]).unwrap();
                tested += 1;
                for r in 3..=8u32 {
                    let brute = brute_counts(n, l, &edges, r);
                    let counter = Counter::new(&graph, r).unwrap();
                    let mut boundary = vec![1u32; l];
                    loop {
                        let got = counter.count(&boundary).unwrap();
                        let want = brute.get(&boundary).copied().unwrap_or(0);
                        if got != want && bad.len() < 5 {
                            bad.push(format!("{edges:?} r={r} boundary {boundary:?}: {got} vs {want}"));
                        }
                        let Some(i) = boundary.iter().position(|c| *c + 1 < r) else { break };
                        boundary[..i].iter_mut().for_each(|c| *c = 1);
                        boundary[i] += 1;
                    }
                }
            }
        }
    }
    let theta: Vec<u128> = [3, 4].iter().map(|&r| Counter::new(&spines::theta(), r).unwrap().count(&[]).unwrap()).collect();
    if theta != [4, 10] {
        bad.push(format!("theta at p=6,8: {theta:?}"));
    }
    for r in 3..=30u32 {
        let d = Counter::new(&spines::genus_one(), r).unwrap().count(&[]).unwrap();
        if d != (r - 1) as u128 {
            bad.push(format!("genus one r={r}: {d}"));
        }
    }
    // genus two: third differences constant and positive, fourth differences zero
    let dims: Vec<i128> = (3..=40u32).map(|r| Counter::new(&spines::theta(), r).unwrap().count(&[]).unwrap() as i128).collect();
    let mut diff = dims.clone();
    for _ in 0..3 {
        diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
    }
    let cubic = diff[0] > 0 && diff.iter().all(|d| *d == diff[0]);
    if !cubic {
        bad.push(format!("genus two third differences {diff:?}"));
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("{tested} graphs with <= 6 edges, r <= 8; theta 4, 10; genus one r-1 to p=60; genus two cubic; wrong {bad:?}"),
    }
}

// 4 --------------------------------------------------------------------------------------

fn genus_one_trace(w: (i64, i64), p: i64) -> CycElem {
    let mc = WeightedMulticurve::new(spines::genus_one_surgery(), vec![hc(w.0, w.1)]).unwrap();
    trace_weighted(&mc, p).unwrap()
}

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    for p in (6..=60).step_by(2) {
        let pu = p as u32;
        let r = p / 2;
        let one = CycElem::one(pu);
        let forms = [
            ((0, 0), one.scalar_mul(&rat(2, 1))),
            ((1, 0), one.scalar_mul(&rat(-2, r - 1))),
            ((0, 1), CycElem::zero(pu)),
        ];
        for (w, want) in forms {
            let got = genus_one_trace(w, p);
            if !got.eq_in_field(&want) && bad.len() < 6 {
                let ev = got.ev_root(&RootSpec::minus_first(p).unwrap()).unwrap();
                bad.push(format!("p={p} w={w:?}: ev {:.6}", ev.re));
            }
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("genus one, p = 6..60; mismatches {bad:?}") }
}

// 5 --------------------------------------------------------------------------------------

fn criterion_5() -> Outcome {
    let u = 0.3;
    let levels = [8, 12, 16, 24, 32, 48, 64, 96, 128, 192, 256, 320, 400];
    let split = 128;
    let subjects = vec![
        ("genus1 (2,0)", Subject::Weighted(WeightedMulticurve::new(spines::genus_one_surgery(), vec![hc(2, 0)]).unwrap())),
        ("genus2 (2,0)", Subject::Weighted(WeightedMulticurve::new(spines::genus_two_surgery(), vec![hc(2, 0)]).unwrap())),
        ("genus2 (1,1)", Subject::Weighted(WeightedMulticurve::new(spines::genus_two_surgery(), vec![hc(1, 1)]).unwrap())),
        ("genus2 (0,2)", Subject::Weighted(WeightedMulticurve::new(spines::genus_two_surgery(), vec![hc(0, 2)]).unwrap())),
        (
            "genus2 stack (1,0)(1,0)",
            Subject::Annular {
                link: AnnularLink::single(vec![hc(1, 0), hc(1, 0)]),
                graph: spines::genus_two_surgery(),
            },
        ),
        (
            "genus1 stack (1,1)(1,0)(0,1)",
            Subject::Annular {
                link: AnnularLink::single(vec![hc(1, 1), hc(1, 0), hc(0, 1)]),
                graph: spines::genus_one_surgery(),
            },
        ),
        (
            "genus2 stack (1,1)(1,0)(0,1)",
            Subject::Annular {
                link: AnnularLink::single(vec![hc(1, 1), hc(1, 0), hc(0, 1)]),
                graph: spines::genus_two_surgery(),
            },
        ),
    ];
    let mut pass = true;
    let mut notes = Vec::new();
    for (name, s) in &subjects {
        let rows = convergence_report(s, u, &levels).unwrap();
        let head = rows.iter().filter(|r| r.p < split).map(|r| r.p_times_err).fold(0.0, f64::max);
        let tail = rows.iter().filter(|r| r.p >= split).map(|r| r.p_times_err).fold(0.0, f64::max);
        let ok = tail <= HEADROOM * head + 1e-12;
        pass &= ok;
        notes.push(format!("{name}: fitted C {head:.4}, max over p>={split} {tail:.4}"));
    }
    // the genus-one (1,0) product against its closed form 2p/(r-1)
    let mut worst: f64 = 0.0;
    for p in (6..=400).step_by(2) {
        let ev = genus_one_trace((1, 0), p).ev_root(&RootSpec::minus_first(p).unwrap()).unwrap();
        let r = (p / 2) as f64;
        worst = worst.max((p as f64 * ev.norm() - 2.0 * p as f64 / (r - 1.0)).abs());
    }
    let closed = worst <= CLOSED_FORM_TOL;
    notes.push(format!("genus1 (1,0) closed form off by up to {worst:.4}"));
    Outcome { pass: pass && closed, detail: notes.join("; ") }
}

// 6 --------------------------------------------------------------------------------------

/// `C` fitted on `p <= 100`, then `|H_p|·scale(p) <= 1.2·C` checked up to 400.
fn fitted(label: &str, levels: &[u32], err: impl Fn(u32) -> f64) -> (bool, String) {
    let head = levels.iter().filter(|&&p| p <= 100).map(|&p| err(p)).fold(0.0, f64::max);
    let tail = levels.iter().filter(|&&p| p > 100).map(|&p| err(p)).fold(0.0, f64::max);
    (tail <= HEADROOM * head, format!("{label} C {head:.3e} tail {tail:.3e}"))
}

fn criterion_6() -> Outcome {
    let levels: Vec<u32> = (20..=400).step_by(2).collect();
    let mut functions = vec![("tent", PiecewisePoly::tent())];
    for seed in [1, 2] {
        functions.push(("cubic", PiecewisePoly::random_cubic(&mut ChaCha8Rng::seed_from_u64(seed), 4).unwrap()));
    }
    let mut pass = true;
    let mut notes = Vec::new();
    for (i, (name, f)) in functions.iter().enumerate() {
        let label = format!("{name}{i}");
        let checks = [
            fitted(&format!("{label} case1"), &levels, |p| p as f64 * h_sum_angle(f, 1, p, 1.0 / 3.0 + 1.0 / p as f64).norm()),
            fitted(&format!("{label} case2"), &levels, |p| {
                let theta = (p as f64).powf(-0.5);
                p as f64 * theta * h_sum_angle(f, 1, p, theta).norm()
            }),
            fitted(&format!("{label} case3"), &levels, |p| {
                p as f64 * (h_sum_angle(f, 1, p, 1.0 / p as f64) - fourier_integral(f, 1)).norm()
            }),
        ];
        for (ok, note) in checks {
            pass &= ok;
            notes.push(note);
        }
    }
    let tent = fourier_integral(&PiecewisePoly::tent(), 1);
    let tent_ok = (tent - Complex64::new(-1.0 / (PI * PI), 0.0)).norm() <= TENT_LIMIT_TOL;
    notes.push(format!("tent limit {:.6}", tent.re));
    Outcome { pass: pass && tent_ok, detail: notes.join("; ") }
}

// 7 --------------------------------------------------------------------------------------

fn ball(c: usize) -> f64 {
    [1.0, 2.0, PI, 4.0 * PI / 3.0][c]
}

/// Interior points of `Π (0, s_i)` on the lattice, by enumeration.
fn brute_interior(sides: &[u64], even: bool) -> u128 {
    if sides.iter().any(|s| *s < 2) {
        return 0;
    }
    let mut x = vec![1u64; sides.len()];
    let mut count = 0;
    'next: loop {
        if !even || x.iter().sum::<u64>() % 2 == 0 {
            count += 1;
        }
        for (xi, s) in x.iter_mut().zip(sides) {
            if *xi + 2 <= *s {
                *xi += 1;
                continue 'next;
            }
            *xi = 1;
        }
        return count;
    }
}

/// `Σ_F b_{c_F} vol F ρ^{c_F} / covol` summed over the faces of the box.
fn face_sum(sides: &[u64], covol: f64, rho: f64) -> f64 {
    let n = sides.len();
    let mut total = 0.0;
    // a face fixes each coordinate low, high, or leaves it free
    for code in 0..3usize.pow(n as u32) {
        let (mut c, mut vol, mut k) = (0, 1.0, code);
        for s in sides {
            if k % 3 == 2 {
                vol *= *s as f64;
            } else {
                c += 1;
            }
            k /= 3;
        }
        if c > 0 {
            total += ball(c) * vol * rho.powi(c as i32);
        }
    }
    total / covol
}

fn criterion_7() -> Outcome {
    let mut boxes = 0;
    let mut bad = Vec::new();
    let mut dims_list: Vec<Vec<u64>> = Vec::new();
    for n in 1..=3 {
        let mut d = vec![1u64; n];
        loop {
            dims_list.push(d.clone());
            let Some(i) = d.iter().position(|x| *x < 3) else { break };
            d[..i].iter_mut().for_each(|x| *x = 1);
            d[i] += 1;
        }
    }
    for dims in &dims_list {
        let n = dims.len();
        for r in 1..=50u64 {
            for (kind, even, covol, rho) in [
                (LatticeKind::Unit, false, 1.0, (n as f64).sqrt() / 2.0),
                (LatticeKind::EvenSum, true, 2.0, 1.0),
            ] {
                let rep = lattice_bound_check(dims, kind, r).unwrap();
                boxes += 1;
                let sides: Vec<u64> = dims.iter().map(|d| d * r).collect();
                let points: u64 = sides.iter().product();
                if points <= 200_000 && rep.interior_count != brute_interior(&sides, even) {
                    bad.push(format!("{kind:?} {sides:?}: count {}", rep.interior_count));
                }
                let want_bound = face_sum(&sides, covol, rho);
                if (rep.bound - want_bound).abs() > 1e-9 * want_bound.max(1.0) {
                    bad.push(format!("{kind:?} {sides:?}: bound {} vs {want_bound}", rep.bound));
                }
                let vol: f64 = sides.iter().map(|s| *s as f64).product::<f64>() / covol;
                if (rep.interior_count as f64 - vol).abs() > want_bound + LATTICE_SLACK {
                    bad.push(format!("{kind:?} {sides:?}: deviation exceeds the face sum"));
                }
            }
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("{boxes} boxes in dims 1-3, r <= 50; violations {bad:?}") }
}

// 8 --------------------------------------------------------------------------------------

fn criterion_8() -> Outcome {
    let levels = [40, 80, 160];
    let r_probe = 1000;
    let mc = WeightedMulticurve::new(spines::genus_two_surgery(), vec![hc(1, 0)]).unwrap();
    let (closed, tracked) = mc.graph.glue_closed_tracked();
    let density = SliceDensity::new(&closed, &tracked, r_probe).unwrap();
    // ∫ 2cos(2πx) f_θ(x) dx on a grid of mesh 1/1000
    let target = density_integral(&density, &[2.0 * PI]).unwrap();
    let gaps: Vec<f64> = levels
        .iter()
        .map(|&p| {
            let ev = trace_weighted(&mc, p).unwrap().ev_root(&RootSpec::minus_first(p).unwrap()).unwrap();
            (ev - Complex64::new(target, 0.0)).norm()
        })
        .collect();
    let monotone = gaps.windows(2).all(|w| w[1] < w[0]);
    let small = gaps[2] < SIGMA_GAP_TOL;
    let mut odd_ok = true;
    let mut odd = Vec::new();
    for w in [(0, 1), (1, 1), (2, 1)] {
        let mc = WeightedMulticurve::new(spines::genus_two_surgery(), vec![hc(w.0, w.1)]).unwrap();
        let ev = trace_weighted(&mc, 160).unwrap().ev_root(&RootSpec::minus_first(160).unwrap()).unwrap();
        odd_ok &= ev.norm() < SIGMA_GAP_TOL;
        odd.push(format!("{w:?} {:.2e}", ev.norm()));
    }
    // the same comparison through the library, whose integrand uses frequency πσa
    let lib: Vec<String> = witten_compare(&mc, 1, &levels, r_probe)
        .unwrap()
        .iter()
        .map(|row| format!("{:.2e}", row.gap))
        .collect();
    Outcome {
        pass: monotone && small && odd_ok,
        detail: format!(
            "integral {target:.4}, gaps {:?} (monotone {monotone}); odd cases {odd:?}; library gaps {lib:?}",
            gaps.iter().map(|g| format!("{g:.4}")).collect::<Vec<_>>()
        ),
    }
}

// 9 --------------------------------------------------------------------------------------

fn criterion_9() -> Outcome {
    let mut bad = Vec::new();
    let core = p_gamma3(&corpus::simple_core()).unwrap();
    if core != LaurentPoly::one() || core.parseval_classify().kind != Dichotomy::Unit {
        bad.push(format!("simple core gives {core}"));
    }
    let mut resolved = 0;
    for c in corpus::annular() {
        match p_gamma3(&c.curve) {
            Ok(p) => {
                resolved += 1;
                let span = p.degree().unwrap_or(0);
                if span > 4 * c.curve.vertex_count() as u64 {
                    bad.push(format!("{}: span {span}", c.name));
                }
            }
            Err(e) => bad.push(format!("{}: {e}", c.name)),
        }
    }
    let eight = corpus::annular_figure_eight();
    let fast = p_gamma3(&eight).unwrap();
    let slow = common::cable_color3(&eight);
    if fast != slow {
        bad.push(format!("figure eight {fast} vs cable {slow}"));
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("simple core {core}; {resolved} annular curves divide by [2] exactly; figure eight {fast} = cable {slow}; wrong {bad:?}"),
    }
}

#[test]
fn acceptance() {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut failed = Vec::new();
    for (n, f) in criteria {
        let t = Instant::now();
        if !report(n, t, f()) {
            failed.push(n);
        }
    }
    println!("failing criteria {failed:?}, expected {EXPECTED_FAILURES:?}");
    assert_eq!(failed, EXPECTED_FAILURES, "the set of failing criteria changed");
}
