//! Refinements of complexes that preserve the homotopy type.

use super::{OrderedComplex, Simplex};
use crate::{Error, Result};

/// Iterated barycentric subdivision.
///
/// The vertices of one round are the simplices of the input, ordered
/// lexicographically by their vertex lists and named `{a,b,...}`.
pub fn barycentric_subdivide(k: &OrderedComplex, rounds: usize) -> OrderedComplex {
    let mut current = k.clone();
    for _ in 0..rounds {
        current = subdivide_once(&current);
    }
    current
}

fn subdivide_once(k: &OrderedComplex) -> OrderedComplex {
    let mut simplices: Vec<&Simplex> = k.iter_simplices().collect();
    simplices.sort();
    let names: Vec<String> = simplices
        .iter()
        .map(|s| {
            let parts: Vec<&str> = s.iter().map(|&v| k.vertices()[v].as_str()).collect();
            format!("{{{}}}", parts.join(","))
        })
        .collect();
    let position = |s: &[usize]| {
        simplices.binary_search_by(|t| t.as_slice().cmp(s)).expect("face is a simplex")
    };
    let mut facets = Vec::new();
    for f in k.facets() {
        // Every ordering of the vertices of a facet gives one maximal flag.
        let mut order: Vec<usize> = f.clone();
        loop {
            let mut flag = Vec::with_capacity(order.len());
            for i in 1..=order.len() {
                let mut face = order[..i].to_vec();
                face.sort_unstable();
                flag.push(position(&face));
            }
            facets.push(flag);
            if !next_permutation(&mut order) {
                break;
            }
        }
    }
    OrderedComplex::from_facets(names, facets).expect("subdivision is a valid complex")
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("successor exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Replaces every edge of a graph by a path of `factor` edges. New vertices
/// follow the original ones, edge by edge, and are named `a~b~i`.
pub fn subdivide_edges(k: &OrderedComplex, factor: usize) -> Result<OrderedComplex> {
    if let Some(d) = k.dim().filter(|&d| d > 1) {
        return Err(Error::NotAGraph(d));
    }
    if factor == 0 {
        return Err(Error::InvalidArgument("subdivision factor must be positive".into()));
    }
    let mut names: Vec<String> = k.vertices().to_vec();
    let mut facets: Vec<Simplex> = k.simplices(0).to_vec();
    for e in k.simplices(1) {
        let (a, b) = (e[0], e[1]);
        let mut prev = a;
        for i in 1..factor {
            names.push(format!("{}~{}~{i}", k.vertices()[a], k.vertices()[b]));
            let v = names.len() - 1;
            facets.push(vec![prev, v]);
            prev = v;
        }
        facets.push(vec![prev, b]);
    }
    OrderedComplex::from_facets(names, facets)
}
