//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use confspace::chain::{homology, ChainComplex, ChainMap, Coefficients, ZigzagDiagram};
use confspace::complex::{OrderedComplex, SimplicialMap};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn betti(c: &ChainComplex) -> Vec<usize> {
    homology(c, Coefficients::Rational).unwrap().betti().to_vec()
}

/// Coefficients of `(1 + t)(1 + 2t)...(1 + (k-1)t)`.
pub fn poincare_polynomial(k: usize) -> Vec<usize> {
    let mut p = vec![1usize];
    for i in 1..k {
        let mut next = vec![0; p.len() + 1];
        for (d, &c) in p.iter().enumerate() {
            next[d] += c;
            next[d + 1] += i * c;
        }
        p = next;
    }
    p
}

/// Product of two Poincare polynomials, trailing zeros removed.
pub fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Alternating sum of a Betti vector.
pub fn euler(b: &[usize]) -> i64 {
    b.iter().enumerate().map(|(d, &x)| if d % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

/// A graph on `n` vertices with each edge present with probability `p`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> OrderedComplex {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut simplices: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                simplices.push(vec![i, j]);
            }
        }
    }
    OrderedComplex::new(names, simplices).unwrap()
}

/// A random graph `E` with random simplicial maps into `a` and `b`: each
/// vertex gets random images, and an edge is kept only when both images
/// are simplices.
pub fn random_span(
    rng: &mut ChaCha8Rng,
    a: &OrderedComplex,
    b: &OrderedComplex,
    n: usize,
) -> (SimplicialMap, SimplicialMap) {
    let fa: Vec<usize> = (0..n).map(|_| rng.gen_range(0..a.vertex_count())).collect();
    let fb: Vec<usize> = (0..n).map(|_| rng.gen_range(0..b.vertex_count())).collect();
    let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut simplices: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let ok = |k: &OrderedComplex, u: usize, v: usize| {
        let mut s = vec![u, v];
        s.sort_unstable();
        s.dedup();
        k.contains(&s)
    };
    for i in 0..n {
        for j in i + 1..n {
            if ok(a, fa[i], fa[j]) && ok(b, fb[i], fb[j]) && rng.gen_bool(0.7) {
                simplices.push(vec![i, j]);
            }
        }
    }
    let e = OrderedComplex::new(names, simplices).unwrap();
    (
        SimplicialMap::new(e.clone(), a.clone(), fa).unwrap(),
        SimplicialMap::new(e, b.clone(), fb).unwrap(),
    )
}

/// A random zigzag of graph complexes with `odd` odd nodes, together with
/// the Euler characteristics of its odd and even nodes.
pub fn random_zigzag(rng: &mut ChaCha8Rng, odd: usize) -> (ZigzagDiagram, Vec<i64>, Vec<i64>) {
    let odd_nodes: Vec<OrderedComplex> = (0..odd)
        .map(|_| {
            let n = rng.gen_range(1..=6);
            random_graph(rng, n, 0.5)
        })
        .collect();
    let chains: Vec<Arc<ChainComplex>> = odd_nodes.iter().map(|k| Arc::new(k.chains())).collect();
    let mut maps: Vec<(ChainMap, ChainMap)> = Vec::new();
    let mut even_euler = Vec::new();
    for p in 0..odd - 1 {
        let n = rng.gen_range(1..=5);
        let (l, r) = random_span(rng, &odd_nodes[p], &odd_nodes[p + 1], n);
        even_euler.push(l.source().euler_characteristic());
        let e = Arc::new(l.source().chains());
        maps.push((
            l.induced_map_between(e.clone(), chains[p].clone()),
            r.induced_map_between(e, chains[p + 1].clone()),
        ));
    }
    let odd_euler = odd_nodes.iter().map(OrderedComplex::euler_characteristic).collect();
    let z = if maps.is_empty() {
        ZigzagDiagram::single(chains[0].clone())
    } else {
        let (left, right): (Vec<_>, Vec<_>) = maps.into_iter().unzip();
        let even = left.iter().map(|m| m.source().clone()).collect();
        ZigzagDiagram::new(chains, even, left, right).unwrap()
    };
    (z, odd_euler, even_euler)
}
