//! Small curves used by tests, examples and the command line.

use super::{FaceCap, RayCrossing, RibbonCurve};

#[derive(Debug, Clone)]
pub struct CorpusCurve {
    pub name: &'static str,
    pub curve: RibbonCurve,
}

/// The core of an annulus whose complement caps to a genus two surface, marked once.
pub fn simple_core() -> RibbonCurve {
    RibbonCurve::new(1, vec![], Some(0), vec![FaceCap::new(vec![0, 1], 1)], Some(vec![vec![RayCrossing::new(10, 1)]]))
        .expect("simple core is valid")
}

/// Two parallel unmarked cores; the annulus between them is a cap of its own.
pub fn parallel_cores() -> RibbonCurve {
    RibbonCurve::new(
        2,
        vec![],
        None,
        vec![FaceCap::new(vec![0, 3], 0), FaceCap::new(vec![1, 2], 1)],
        Some(vec![vec![RayCrossing::new(10, 1)], vec![RayCrossing::new(20, 1)]]),
    )
    .expect("parallel cores are valid")
}

/// Closure of a positive braid word in the annulus, every strand turning counterclockwise.
///
/// Letter `i` crosses the strands at radial positions `i` and `i + 1`. The ribbon graph is
/// planar; the two faces touching the annulus boundary share one cap of genus one and
/// every other face is capped by a disc, giving a closed surface of genus two.
pub fn braid_closure(strands: usize, word: &[usize], marked_edge: usize) -> RibbonCurve {
    assert!(word.iter().all(|i| i + 1 < strands), "braid letter out of range");
    // half-edges at vertex j: outer-out, inner-out, inner-in, outer-in
    let mut rot = vec![[usize::MAX; 4]; word.len()];
    let mut chart = Vec::new();
    let mut edges = 0;
    for q in 0..strands {
        let touches: Vec<(usize, bool)> = word
            .iter()
            .enumerate()
            .filter(|(_, i)| **i == q || **i + 1 == q)
            .map(|(j, i)| (j, *i + 1 == q))
            .collect();
        let height = 10 * (q as i64 + 1);
        if touches.is_empty() {
            chart.push(vec![RayCrossing::new(height, 1)]);
            edges += 1;
            continue;
        }
        for (k, &(j, outer)) in touches.iter().enumerate() {
            let (next, next_outer) = touches[(k + 1) % touches.len()];
            let e = edges;
            edges += 1;
            rot[j][if outer { 0 } else { 1 }] = 2 * e;
            rot[next][if next_outer { 3 } else { 2 }] = 2 * e + 1;
            chart.push(if k + 1 == touches.len() { vec![RayCrossing::new(height, 1)] } else { vec![] });
        }
    }
    let rotations: Vec<Vec<usize>> = rot.iter().map(|r| r.to_vec()).collect();
    let bare = RibbonCurve::new(edges, rotations.clone(), Some(marked_edge), vec![], Some(chart.clone()))
        .expect("braid closure is a valid ribbon graph");
    // faces meeting the ray in one gap between strands bound one planar region; the regions
    // at the two ends of the ray touch the annulus boundary and share a cap of genus one
    let key = |d: usize| -> Option<i64> {
        let c = chart[d / 2].first()?;
        let travel = if d % 2 == 0 { c.sign as i64 } else { -(c.sign as i64) };
        Some(2 * c.height + travel)
    };
    let mut keyed: Vec<(i64, usize)> = (0..2 * edges).filter_map(|d| key(d).map(|k| (k, bare.face_of(d)))).collect();
    keyed.sort();
    let nf = bare.faces().len();
    let mut parent: Vec<usize> = (0..nf).collect();
    super::union(&mut parent, keyed[0].1, keyed[keyed.len() - 1].1);
    for gap in keyed[1..keyed.len() - 1].chunks(2) {
        super::union(&mut parent, gap[0].1, gap[1].1);
    }
    let boundary = super::find(&mut parent, keyed[0].1);
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for f in 0..nf {
        groups.entry(super::find(&mut parent, f)).or_default().push(f);
    }
    let caps = groups.into_iter().map(|(root, faces)| FaceCap::new(faces, u32::from(root == boundary))).collect();
    RibbonCurve::new(edges, rotations, Some(marked_edge), caps, Some(chart)).expect("capped braid closure is valid")
}

/// The `(2,1)` curve: twice around the annulus with one double point.
pub fn annular_figure_eight() -> RibbonCurve {
    braid_closure(2, &[0], 0)
}

/// An `∞`-shaped curve whose two lobes are homologous: the outside is a disc.
pub fn homologous_figure_eight() -> RibbonCurve {
    RibbonCurve::new(
        2,
        vec![vec![0, 2, 3, 1]],
        Some(0),
        vec![FaceCap::new(vec![0, 2], 1), FaceCap::new(vec![1], 0)],
        None,
    )
    .expect("figure eight is valid")
}

/// A closed curve with three double points whose ribbon neighborhood has a single
/// boundary circle; capping it with a disc gives genus two.
pub fn one_face_filling() -> RibbonCurve {
    RibbonCurve::new(
        6,
        vec![vec![11, 3, 0, 4], vec![1, 7, 2, 8], vec![5, 10, 6, 9]],
        Some(0),
        vec![FaceCap::new(vec![0], 0)],
        None,
    )
    .expect("filling curve is valid")
}

pub fn all() -> Vec<CorpusCurve> {
    vec![
        CorpusCurve { name: "simple-core", curve: simple_core() },
        CorpusCurve { name: "parallel-cores", curve: parallel_cores() },
        CorpusCurve { name: "figure-eight-2-1", curve: annular_figure_eight() },
        CorpusCurve { name: "figure-eight-2-1-other-base", curve: braid_closure(2, &[0], 1) },
        CorpusCurve { name: "braid-s1s2", curve: braid_closure(3, &[0, 1], 0) },
        CorpusCurve { name: "braid-s1-cubed", curve: braid_closure(2, &[0, 0, 0], 2) },
        CorpusCurve { name: "figure-eight-and-core", curve: braid_closure(3, &[0], 0) },
        CorpusCurve { name: "core-inside-marked-core", curve: braid_closure(2, &[], 1) },
        CorpusCurve { name: "figure-eight-homologous", curve: homologous_figure_eight() },
        CorpusCurve { name: "one-face-filling", curve: one_face_filling() },
    ]
}

/// Curves carrying an annular chart, on which the state sum runs.
pub fn annular() -> Vec<CorpusCurve> {
    all().into_iter().filter(|c| c.curve.annular_position().is_some()).collect()
}

pub fn by_name(name: &str) -> Option<RibbonCurve> {
    all().into_iter().find(|c| c.name == name).map(|c| c.curve)
}
