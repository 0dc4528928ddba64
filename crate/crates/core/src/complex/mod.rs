//! Finite abstract simplicial complexes with a total order on the vertices.

mod cells;
mod io;
mod product;
pub mod standard;
mod subdivide;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::chain::{ChainComplex, ChainMap, SparseMatrix};
use crate::{Error, Result};

pub use cells::CellProduct;
pub use io::{parse_complex, write_complex};
pub use product::{constrained_subcomplex, staircase_product, ProductComplex, Subcomplex};
pub use subdivide::{barycentric_subdivide, subdivide_edges};

/// A simplex, as the strictly increasing list of its vertex indices.
pub type Simplex = Vec<usize>;

/// A finite simplicial complex whose vertices carry a fixed total order
/// (their declaration order).
///
/// Simplices are stored per dimension, each list sorted lexicographically.
/// The complex is closed under taking nonempty faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedComplex {
    vertices: Vec<String>,
    simplices: Vec<Vec<Simplex>>,
    lookup: HashMap<Simplex, usize>,
}

/// Summary produced by [`OrderedComplex::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub f_vector: Vec<usize>,
    pub euler: i64,
}

impl OrderedComplex {
    /// Builds a complex from an explicit simplex list, which must already be
    /// closed under faces. Fails on the first offending simplex.
    pub fn new(vertices: Vec<String>, simplices: Vec<Simplex>) -> Result<Self> {
        check_vertex_names(&vertices)?;
        let n = vertices.len();
        let name = |s: &[usize]| describe(&vertices, s);
        let mut set: BTreeSet<(usize, Simplex)> = BTreeSet::new();
        for mut s in simplices {
            if s.is_empty() {
                return Err(Error::InvalidComplex("empty simplex".into()));
            }
            if let Some(&bad) = s.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidComplex(format!(
                    "simplex references undeclared vertex index {bad}"
                )));
            }
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidComplex(format!(
                    "simplex {} repeats a vertex",
                    name(&s)
                )));
            }
            set.insert((s.len() - 1, s));
        }
        for (_, s) in &set {
            if s.len() < 2 {
                continue;
            }
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                if !set.contains(&(face.len() - 1, face.clone())) {
                    return Err(Error::InvalidComplex(format!(
                        "simplex {} is missing its face {}",
                        name(s),
                        name(&face)
                    )));
                }
            }
        }
        Ok(Self::from_sorted_set(vertices, set))
    }

    /// Builds the smallest complex containing the given simplices.
    pub fn from_facets(vertices: Vec<String>, facets: Vec<Simplex>) -> Result<Self> {
        let n = vertices.len();
        let mut set: BTreeSet<(usize, Simplex)> = BTreeSet::new();
        for mut f in facets {
            f.sort_unstable();
            f.dedup();
            if f.is_empty() {
                return Err(Error::InvalidComplex("empty simplex".into()));
            }
            if let Some(&bad) = f.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidComplex(format!(
                    "simplex references undeclared vertex index {bad}"
                )));
            }
            if set.contains(&(f.len() - 1, f.clone())) {
                continue;
            }
            for s in nonempty_subsets(&f) {
                set.insert((s.len() - 1, s));
            }
        }
        check_vertex_names(&vertices)?;
        Ok(Self::from_sorted_set(vertices, set))
    }

    /// Convenience constructor from vertex names and facets given by name.
    pub fn from_named(vertices: &[&str], facets: &[&[&str]]) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let index: HashMap<&str, usize> =
            vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut list = Vec::with_capacity(facets.len());
        for f in facets {
            let mut s = Vec::with_capacity(f.len());
            for v in *f {
                let i = index.get(v).ok_or_else(|| {
                    Error::InvalidComplex(format!("simplex references undeclared vertex {v}"))
                })?;
                s.push(*i);
            }
            list.push(s);
        }
        Self::from_facets(names, list)
    }

    fn from_sorted_set(vertices: Vec<String>, set: BTreeSet<(usize, Simplex)>) -> Self {
        let mut simplices: Vec<Vec<Simplex>> = Vec::new();
        let mut lookup = HashMap::with_capacity(set.len());
        for (d, s) in set {
            while simplices.len() <= d {
                simplices.push(Vec::new());
            }
            lookup.insert(s.clone(), simplices[d].len());
            simplices[d].push(s);
        }
        OrderedComplex { vertices, simplices, lookup }
    }

    /// The empty complex.
    pub fn empty() -> Self {
        OrderedComplex { vertices: Vec::new(), simplices: Vec::new(), lookup: HashMap::new() }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// Dimension of the complex; `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    /// Simplices of dimension `d`, sorted lexicographically.
    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.simplices.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All simplices, by increasing dimension.
    pub fn iter_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().flatten()
    }

    pub fn num_simplices(&self) -> usize {
        self.lookup.len()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.lookup.contains_key(s)
    }

    /// Position of `s` inside `self.simplices(s.len() - 1)`.
    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.lookup.get(s).copied()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(d, s)| if d % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    /// Maximal simplices, by increasing dimension.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut covered: BTreeSet<&Simplex> = BTreeSet::new();
        for s in self.simplices.iter().skip(1).flatten() {
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                if let Some(idx) = self.index_of(&f) {
                    covered.insert(&self.simplices[f.len() - 1][idx]);
                }
            }
        }
        self.iter_simplices().filter(|s| !covered.contains(s)).cloned().collect()
    }

    pub fn is_graph(&self) -> bool {
        self.dim().is_none_or(|d| d <= 1)
    }

    /// Re-checks the structural invariants and reports the f-vector and Euler
    /// characteristic.
    pub fn validate(&self) -> Result<ValidationReport> {
        let all: Vec<Simplex> = self.iter_simplices().cloned().collect();
        let rebuilt = OrderedComplex::new(self.vertices.clone(), all)?;
        debug_assert_eq!(&rebuilt, self);
        Ok(ValidationReport {
            f_vector: self.f_vector(),
            euler: self.euler_characteristic(),
        })
    }

    /// Human readable name of a simplex, e.g. `[a,b]`.
    pub fn simplex_label(&self, s: &[usize]) -> String {
        describe(&self.vertices, s)
    }

    /// Degree of every vertex in the 1-skeleton.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for e in self.simplices(1) {
            deg[e[0]] += 1;
            deg[e[1]] += 1;
        }
        deg
    }

    /// Simplicial chain complex with incidence signs from the vertex order.
    pub fn chains(&self) -> ChainComplex {
        let labels: Vec<Vec<String>> = self
            .simplices
            .iter()
            .map(|list| list.iter().map(|s| self.simplex_label(s)).collect())
            .collect();
        let mut boundaries = Vec::with_capacity(self.simplices.len());
        for (d, list) in self.simplices.iter().enumerate() {
            if d == 0 {
                boundaries.push(SparseMatrix::zeros(0, list.len()));
                continue;
            }
            let cols = list
                .iter()
                .map(|s| {
                    let mut col: Vec<(usize, i64)> = (0..s.len())
                        .map(|i| {
                            let mut f = s.clone();
                            f.remove(i);
                            let row = self.lookup[&f];
                            (row, if i % 2 == 0 { 1 } else { -1 })
                        })
                        .collect();
                    col.sort_unstable();
                    col
                })
                .collect();
            boundaries.push(SparseMatrix::from_columns(self.simplices[d - 1].len(), cols));
        }
        ChainComplex::from_parts_unchecked(labels, boundaries)
    }
}

impl fmt::Display for OrderedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_complex(self))
    }
}

fn describe(vertices: &[String], s: &[usize]) -> String {
    let names: Vec<&str> = s
        .iter()
        .map(|&v| vertices.get(v).map(String::as_str).unwrap_or("?"))
        .collect();
    format!("[{}]", names.join(","))
}

fn check_vertex_names(vertices: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for v in vertices {
        if v.is_empty() || v.chars().any(char::is_whitespace) {
            return Err(Error::InvalidComplex(format!("bad vertex name {v:?}")));
        }
        if !seen.insert(v.as_str()) {
            return Err(Error::InvalidComplex(format!("vertex {v} declared twice")));
        }
    }
    Ok(())
}

fn nonempty_subsets(s: &[usize]) -> impl Iterator<Item = Simplex> + '_ {
    (1u64..(1u64 << s.len())).map(move |mask| {
        s.iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &v)| v)
            .collect()
    })
}

/// A vertex map between ordered complexes sending simplices to simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: OrderedComplex,
    target: OrderedComplex,
    assignment: Vec<usize>,
}

impl SimplicialMap {
    pub fn new(
        source: OrderedComplex,
        target: OrderedComplex,
        assignment: Vec<usize>,
    ) -> Result<Self> {
        if assignment.len() != source.vertex_count() {
            return Err(Error::NotSimplicial(format!(
                "assignment has {} entries for {} source vertices",
                assignment.len(),
                source.vertex_count()
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&v| v >= target.vertex_count()) {
            return Err(Error::NotSimplicial(format!("target vertex {bad} out of range")));
        }
        let map = SimplicialMap { source, target, assignment };
        for s in map.source.iter_simplices() {
            let img = map.image(s);
            if !map.target.contains(&img) {
                return Err(Error::NotSimplicial(format!(
                    "image of {} is not a simplex of the target",
                    map.source.simplex_label(s)
                )));
            }
        }
        Ok(map)
    }

    pub fn identity(k: &OrderedComplex) -> Self {
        SimplicialMap {
            source: k.clone(),
            target: k.clone(),
            assignment: (0..k.vertex_count()).collect(),
        }
    }

    pub fn source(&self) -> &OrderedComplex {
        &self.source
    }

    pub fn target(&self) -> &OrderedComplex {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Sorted, deduplicated image of a simplex.
    pub fn image(&self, s: &[usize]) -> Simplex {
        let mut img: Simplex = s.iter().map(|&v| self.assignment[v]).collect();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &SimplicialMap) -> Result<SimplicialMap> {
        if self.target != next.source {
            return Err(Error::NotSimplicial("composition of incompatible maps".into()));
        }
        Ok(SimplicialMap {
            source: self.source.clone(),
            target: next.target.clone(),
            assignment: self.assignment.iter().map(|&v| next.assignment[v]).collect(),
        })
    }

    /// Induced map on simplicial chains. Degenerate images map to zero;
    /// otherwise the sign is that of the permutation sorting the image.
    pub fn induced_map(&self) -> ChainMap {
        self.induced_map_between(Arc::new(self.source.chains()), Arc::new(self.target.chains()))
    }

    /// As [`induced_map`](Self::induced_map), reusing already computed chain
    /// complexes of the source and target.
    pub fn induced_map_between(
        &self,
        source: Arc<ChainComplex>,
        target: Arc<ChainComplex>,
    ) -> ChainMap {
        let top = source.len();
        let mut matrices = Vec::with_capacity(top);
        for d in 0..top {
            let cols = self
                .source
                .simplices(d)
                .iter()
                .map(|s| {
                    let img: Vec<usize> = s.iter().map(|&v| self.assignment[v]).collect();
                    let mut sorted = img.clone();
                    sorted.sort_unstable();
                    if sorted.windows(2).any(|w| w[0] == w[1]) {
                        return Vec::new();
                    }
                    let row = self.target.index_of(&sorted).expect("image is a simplex");
                    vec![(row, permutation_sign(&img))]
                })
                .collect();
            matrices.push(SparseMatrix::from_columns(target.dim(d), cols));
        }
        ChainMap::from_parts_unchecked(source, target, matrices)
    }
}

fn permutation_sign(values: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] > values[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Pairwise distinctness conditions `a_u != a_v` on the coordinates of a
/// `k`-fold product. Pairs are stored as `(u, v)` with `1 <= v < u <= k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConstraintSet {
    arity: usize,
    pairs: BTreeSet<(usize, usize)>,
}

impl ConstraintSet {
    pub fn empty(arity: usize) -> Self {
        ConstraintSet { arity, pairs: BTreeSet::new() }
    }

    /// Every pair of coordinates: the deleted-product condition.
    pub fn full(arity: usize) -> Self {
        let pairs = (1..=arity).flat_map(|u| (1..u).map(move |v| (u, v))).collect();
        ConstraintSet { arity, pairs }
    }

    pub fn new(arity: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = ConstraintSet::empty(arity);
        for (u, v) in pairs {
            set.insert(u, v)?;
        }
        Ok(set)
    }

    /// Adds `a_u != a_v`; the pair may be given in either order.
    pub fn insert(&mut self, u: usize, v: usize) -> Result<()> {
        let (hi, lo) = if u > v { (u, v) } else { (v, u) };
        if lo == 0 || hi > self.arity || hi == lo {
            return Err(Error::Arity(format!(
                "pair ({u},{v}) invalid for arity {}",
                self.arity
            )));
        }
        self.pairs.insert((hi, lo));
        Ok(())
    }

    pub fn with(&self, u: usize, v: usize) -> Result<Self> {
        let mut s = self.clone();
        s.insert(u, v)?;
        Ok(s)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        let key = if u > v { (u, v) } else { (v, u) };
        self.pairs.contains(&key)
    }

    pub fn is_superset(&self, other: &ConstraintSet) -> bool {
        self.pairs.is_superset(&other.pairs)
    }

    pub fn union(&self, other: &ConstraintSet) -> Result<Self> {
        if self.arity != other.arity {
            return Err(Error::Arity(format!(
                "cannot merge constraints of arity {} and {}",
                self.arity, other.arity
            )));
        }
        let mut s = self.clone();
        s.pairs.extend(other.pairs.iter().copied());
        Ok(s)
    }

    pub fn mentions(&self, coord: usize) -> bool {
        self.pairs.iter().any(|&(u, v)| u == coord || v == coord)
    }

    /// Same pairs, viewed in a larger arity.
    pub fn lift(&self, arity: usize) -> Result<Self> {
        if arity < self.arity {
            return Err(Error::Arity(format!("cannot lift arity {} to {arity}", self.arity)));
        }
        Ok(ConstraintSet { arity, pairs: self.pairs.clone() })
    }

    /// Pairs not involving coordinates above `arity`.
    pub fn restrict(&self, arity: usize) -> Self {
        ConstraintSet {
            arity,
            pairs: self.pairs.iter().copied().filter(|&(u, _)| u <= arity).collect(),
        }
    }
}

impl fmt::Display for ConstraintSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.pairs.iter().map(|(u, v)| format!("({u},{v})")).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{homology, Coefficients};
    use standard::*;

    #[test]
    fn solid_triangle_report() {
        let k = simplex(2);
        let report = k.validate().unwrap();
        assert_eq!(report.f_vector, vec![3, 3, 1]);
        assert_eq!(report.euler, 1);
    }

    #[test]
    fn cycle_is_valid_with_zero_euler() {
        let report = cycle(6).validate().unwrap();
        assert_eq!(report.f_vector, vec![6, 6]);
        assert_eq!(report.euler, 0);
    }

    #[test]
    fn undeclared_vertex_is_rejected() {
        let err = OrderedComplex::new(vec!["a".into()], vec![vec![0, 1]]).unwrap_err();
        assert!(matches!(err, Error::InvalidComplex(_)));
        let err = OrderedComplex::from_named(&["a", "b"], &[&["a", "c"]]).unwrap_err();
        assert!(err.to_string().contains("undeclared vertex c"));
    }

    #[test]
    fn missing_face_names_the_simplex() {
        let names = vec!["a".to_string(), "b".to_string()];
        let err = OrderedComplex::new(names, vec![vec![0], vec![0, 1]]).unwrap_err();
        assert_eq!(err.to_string(), "invalid complex: simplex [a,b] is missing its face [b]");
    }

    #[test]
    fn facets_of_boundary_of_tetrahedron() {
        let k = simplex_boundary(3);
        assert_eq!(k.facets().len(), 4);
        assert!(k.facets().iter().all(|f| f.len() == 3));
    }

    #[test]
    fn chains_of_point_and_circle() {
        let h = homology(&point().chains(), Coefficients::Rational).unwrap();
        assert_eq!(h.betti(), &[1]);
        let h = homology(&cycle(3).chains(), Coefficients::Rational).unwrap();
        assert_eq!(h.betti(), &[1, 1]);
    }

    #[test]
    fn identity_induces_identity() {
        let k = simplex(3);
        let f = SimplicialMap::identity(&k).induced_map();
        for d in 0..=3 {
            let n = k.simplices(d).len();
            assert_eq!(f.matrix(d), &SparseMatrix::identity(n));
        }
    }

    #[test]
    fn non_simplicial_assignment_is_rejected() {
        // Collapsing an edge of C_6 onto two non-adjacent vertices of C_6.
        let c = cycle(6);
        let mut a: Vec<usize> = (0..6).collect();
        a[1] = 3;
        let err = SimplicialMap::new(c.clone(), c, a).unwrap_err();
        assert!(matches!(err, Error::NotSimplicial(_)));
    }

    #[test]
    fn induced_map_respects_orientation() {
        // Reflection of C_4 reverses the fundamental class.
        let c = cycle(4);
        let refl = SimplicialMap::new(c.clone(), c.clone(), vec![0, 3, 2, 1]).unwrap();
        let f = refl.induced_map();
        let fundamental: Vec<i64> = {
            // 01 + 12 + 23 - 03, in sorted edge order [0,1],[0,3],[1,2],[2,3]
            vec![1, -1, 1, 1]
        };
        let image = f.matrix(1).mul_vec(&fundamental).unwrap();
        let negated: Vec<i64> = fundamental.iter().map(|x| -x).collect();
        assert_eq!(image, negated);
    }

    #[test]
    fn constraint_set_normalizes_pairs() {
        let mut d = ConstraintSet::empty(3);
        d.insert(1, 3).unwrap();
        assert!(d.contains(3, 1));
        assert_eq!(d.pairs().collect::<Vec<_>>(), vec![(3, 1)]);
        assert!(d.insert(2, 2).is_err());
        assert!(d.insert(4, 1).is_err());
        assert_eq!(ConstraintSet::full(3).len(), 3);
        assert_eq!(ConstraintSet::full(3).to_string(), "{(2,1),(3,1),(3,2)}");
    }
}
