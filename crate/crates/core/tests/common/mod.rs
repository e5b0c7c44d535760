//! Fixtures shared by the integration tests.
#![allow(dead_code)]

use plumbing_core::graph::Vertex;
use plumbing_core::{build_context, invariants, parse_graph, validate, CurveConfig, LatticeContext, Rational, ResolutionGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn star() -> ResolutionGraph {
    parse_graph(
        "vertex c e=-1\nvertex l1 e=-4\nvertex l2 e=-4\nvertex l3 e=-4\nvertex l4 e=-10\n\
         edge c l1\nedge c l2\nedge c l3\nedge c l4\n",
    )
    .unwrap()
}

/// Embedded resolution of the plane cusp `y² = x³`.
pub fn cusp() -> ResolutionGraph {
    parse_graph("vertex a e=-3\nvertex b e=-2\nvertex c e=-1\nedge a c\nedge b c\n").unwrap()
}

/// `A_{n-1}`: chain of `n-1` curves of self-intersection −2.
pub fn a_chain(n: usize) -> ResolutionGraph {
    ResolutionGraph::chain(&vec![-2; n - 1])
}

/// Star with legs of the given lengths, all weights −2 except the centre.
pub fn star_shaped(center: i64, legs: &[&[i64]]) -> ResolutionGraph {
    let mut vertices = vec![Vertex::new("c", center)];
    let mut edges = Vec::new();
    for (l, leg) in legs.iter().enumerate() {
        let mut prev = 0;
        for (k, &e) in leg.iter().enumerate() {
            vertices.push(Vertex::new(format!("l{l}_{k}"), e));
            let idx = vertices.len() - 1;
            edges.push((prev, idx));
            prev = idx;
        }
    }
    ResolutionGraph::new(vertices, edges, Vec::new()).unwrap()
}

pub fn d4() -> ResolutionGraph {
    star_shaped(-2, &[&[-2], &[-2], &[-2]])
}

pub fn e6() -> ResolutionGraph {
    star_shaped(-2, &[&[-2], &[-2, -2], &[-2, -2]])
}

pub fn e7() -> ResolutionGraph {
    star_shaped(-2, &[&[-2], &[-2, -2], &[-2, -2, -2]])
}

pub fn e8() -> ResolutionGraph {
    star_shaped(-2, &[&[-2], &[-2, -2], &[-2, -2, -2, -2]])
}

/// Named rational fixtures used across suites.
pub fn rational_fixtures() -> Vec<(&'static str, ResolutionGraph)> {
    vec![
        ("A1", a_chain(2)),
        ("A3", a_chain(4)),
        ("A6", a_chain(7)),
        ("blowup", ResolutionGraph::chain(&[-1])),
        ("cusp", cusp()),
        ("D4", d4()),
        ("E6", e6()),
        ("E7", e7()),
        ("E8", e8()),
        ("1/5(1,2)", ResolutionGraph::chain(&[-3, -2])),
        ("1/7(1,3)", ResolutionGraph::chain(&[-3, -2, -2])),
        ("1/19(1,7)", ResolutionGraph::chain(&[-3, -4, -2])),
        ("star(-3;-2,-3,-5)", star_shaped(-3, &[&[-2], &[-3], &[-5]])),
        ("star(-2;-3,-3,-3)", star_shaped(-2, &[&[-3], &[-3], &[-3]])),
    ]
}

/// Random tree on `n` vertices with weights drawn from `weights`.
pub fn random_tree(rng: &mut ChaCha8Rng, n: usize, weights: &[i64]) -> ResolutionGraph {
    let vertices = (0..n)
        .map(|i| Vertex::new(format!("v{i}"), weights[rng.gen_range(0..weights.len())]))
        .collect();
    let edges = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    ResolutionGraph::new(vertices, edges, Vec::new()).unwrap()
}

/// Deterministic corpus of negative definite trees passing Artin's
/// criterion, `|H| ≤ max_order`.
pub fn random_rational_corpus(seed: u64, count: usize, max_order: u64) -> Vec<ResolutionGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        assert!(attempts < 100_000, "corpus generator is stuck");
        let n = rng.gen_range(1..=8);
        let g = random_tree(&mut rng, n, &[-1, -2, -2, -2, -3, -3, -4, -5, -6]);
        if !validate(&g).ok() {
            continue;
        }
        let ctx = build_context(&g).unwrap();
        if ctx.order() > max_order.into() {
            continue;
        }
        if invariants::is_rational(&ctx).unwrap() {
            out.push(g);
        }
    }
    out
}

/// Small negative definite trees (rational or not) with `≤ max_vertices`
/// vertices and `|H| ≤ max_order`, no −1 curves.
pub fn random_small_corpus(seed: u64, count: usize, max_vertices: usize, max_order: u64) -> Vec<ResolutionGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(1..=max_vertices);
        let g = random_tree(&mut rng, n, &[-2, -2, -2, -3, -3, -4, -5]);
        if !validate(&g).ok() {
            continue;
        }
        if build_context(&g).unwrap().order() <= max_order.into() {
            out.push(g);
        }
    }
    out
}

pub fn random_curve(rng: &mut ChaCha8Rng, n: usize, max_arrows: u64, name: &str) -> CurveConfig {
    loop {
        let arrows: Vec<u64> = (0..n)
            .map(|_| if rng.gen_bool(0.4) { rng.gen_range(1..=max_arrows) } else { 0 })
            .collect();
        let c = CurveConfig::new(name, arrows);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn ctx(g: &ResolutionGraph) -> LatticeContext {
    build_context(g).unwrap()
}

/// Where a single point blow-up happens.
#[derive(Clone, Copy, Debug)]
pub enum BlowUp {
    /// A generic point of `E_v`.
    Generic(usize),
    /// The point where one branch of curve `curve` meets `E_v`.
    Arrow { vertex: usize, curve: usize },
    /// The intersection point of the two ends of edge `edge`.
    Edge(usize),
}

/// Blows up one point of the resolution and transports the curves' arrows.
pub fn blow_up(g: &ResolutionGraph, at: BlowUp) -> ResolutionGraph {
    let mut vertices = g.vertices().to_vec();
    let mut edges = g.edges().to_vec();
    let mut curves: Vec<CurveConfig> = g.curves().to_vec();
    let w = vertices.len();
    vertices.push(Vertex::new("new", -1));
    for c in &mut curves {
        c.arrows.push(0);
    }
    match at {
        BlowUp::Generic(v) => {
            vertices[v].euler -= 1;
            edges.push((v, w));
        }
        BlowUp::Arrow { vertex, curve } => {
            assert!(curves[curve].arrows[vertex] > 0, "no arrow to blow up");
            vertices[vertex].euler -= 1;
            edges.push((vertex, w));
            curves[curve].arrows[vertex] -= 1;
            curves[curve].arrows[w] += 1;
        }
        BlowUp::Edge(e) => {
            let (a, b) = edges.remove(e);
            vertices[a].euler -= 1;
            vertices[b].euler -= 1;
            edges.push((a, w));
            edges.push((w, b));
        }
    }
    ResolutionGraph::new(vertices, edges, curves).unwrap()
}
