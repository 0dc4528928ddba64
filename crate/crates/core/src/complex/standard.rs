//! Small named complexes used as inputs and test fixtures.

use super::OrderedComplex;

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

fn build(n: usize, facets: Vec<Vec<usize>>) -> OrderedComplex {
    OrderedComplex::from_facets(names(n), facets).expect("standard complex is valid")
}

/// A single vertex.
pub fn point() -> OrderedComplex {
    build(1, vec![vec![0]])
}

/// Two isolated vertices (the 0-sphere).
pub fn two_points() -> OrderedComplex {
    build(2, vec![vec![0], vec![1]])
}

/// The path `P_n` with `n` edges and `n + 1` vertices.
pub fn path(n: usize) -> OrderedComplex {
    if n == 0 {
        return point();
    }
    build(n + 1, (0..n).map(|i| vec![i, i + 1]).collect())
}

/// The cycle graph `C_n`, `n >= 3`.
pub fn cycle(n: usize) -> OrderedComplex {
    assert!(n >= 3, "a cycle needs at least three vertices");
    build(n, (0..n).map(|i| vec![i, (i + 1) % n]).collect())
}

/// The full `d`-simplex.
pub fn simplex(d: usize) -> OrderedComplex {
    build(d + 1, vec![(0..=d).collect()])
}

/// The boundary of the `d`-simplex, a `(d-1)`-sphere.
pub fn simplex_boundary(d: usize) -> OrderedComplex {
    build(
        d + 1,
        (0..=d).map(|skip| (0..=d).filter(|&v| v != skip).collect()).collect(),
    )
}

/// The six-vertex triangulation of the real projective plane.
pub fn rp2() -> OrderedComplex {
    let faces = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 1, 5],
        [1, 2, 4],
        [2, 3, 5],
        [1, 3, 4],
        [1, 3, 5],
        [2, 4, 5],
    ];
    build(6, faces.iter().map(|f| f.to_vec()).collect())
}

/// Two triangles glued at the vertex `v0`.
pub fn figure_eight() -> OrderedComplex {
    build(5, vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![0, 3], vec![3, 4], vec![0, 4]])
}

/// A star with `legs` edges attached to the centre `v0`.
pub fn star(legs: usize) -> OrderedComplex {
    build(legs + 1, (1..=legs).map(|i| vec![0, i]).collect())
}
