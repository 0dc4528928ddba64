//! Staircase (ordered) triangulations of products and their deleted
//! subcomplexes.

use super::{ConstraintSet, OrderedComplex, Simplex, SimplicialMap};
use crate::{Error, Result};

/// A product complex together with the coordinates of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductComplex {
    complex: OrderedComplex,
    factors: Vec<OrderedComplex>,
    coords: Vec<Vec<usize>>,
}

/// A subcomplex together with its inclusion into the ambient complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcomplex {
    pub complex: OrderedComplex,
    pub inclusion: SimplicialMap,
}

impl ProductComplex {
    pub fn complex(&self) -> &OrderedComplex {
        &self.complex
    }

    pub fn factors(&self) -> &[OrderedComplex] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    /// Coordinates of vertex `v`, one vertex index per factor.
    pub fn coords(&self, v: usize) -> &[usize] {
        &self.coords[v]
    }

    /// Looks a vertex up by its coordinates.
    pub fn vertex_at(&self, coords: &[usize]) -> Option<usize> {
        self.coords.binary_search_by(|c| c.as_slice().cmp(coords)).ok()
    }

    /// Projection onto factor `i` (0-based).
    pub fn projection(&self, i: usize) -> Result<SimplicialMap> {
        let factor = self
            .factors
            .get(i)
            .ok_or_else(|| Error::Arity(format!("no factor {i} in a {}-fold product", self.arity())))?;
        let assignment = self.coords.iter().map(|c| c[i]).collect();
        SimplicialMap::new(self.complex.clone(), factor.clone(), assignment)
    }

    /// The map to `target` forgetting the last coordinate; `target` must be
    /// the product of the first `arity - 1` factors.
    pub fn forget_last(&self, target: &ProductComplex) -> Result<SimplicialMap> {
        if target.factors.as_slice() != &self.factors[..self.arity().saturating_sub(1)] {
            return Err(Error::Arity("forget_last target is not the truncated product".into()));
        }
        let assignment = self
            .coords
            .iter()
            .map(|c| target.vertex_at(&c[..c.len() - 1]).expect("truncated vertex exists"))
            .collect();
        SimplicialMap::new(self.complex.clone(), target.complex.clone(), assignment)
    }

    /// Restricts a map out of this product to a subcomplex given by its
    /// inclusion.
    pub fn restrict(map: &SimplicialMap, sub: &Subcomplex) -> Result<SimplicialMap> {
        sub.inclusion.then(map)
    }
}

/// The staircase triangulation of `factors[0] x ... x factors[r-1]`.
///
/// Vertices are coordinate tuples in lexicographic order, named `(a,b,...)`.
/// A set of tuples is a simplex when it is a chain in the coordinatewise
/// order whose projection to every factor spans a simplex. A single factor
/// is returned unchanged.
pub fn staircase_product(factors: &[OrderedComplex]) -> Result<ProductComplex> {
    if factors.is_empty() {
        return Err(Error::InvalidArgument("staircase product of no factors".into()));
    }
    if factors.len() == 1 {
        let k = &factors[0];
        return Ok(ProductComplex {
            complex: k.clone(),
            factors: factors.to_vec(),
            coords: (0..k.vertex_count()).map(|v| vec![v]).collect(),
        });
    }
    let mut coords: Vec<Vec<usize>> = vec![Vec::new()];
    for f in factors {
        coords = coords
            .into_iter()
            .flat_map(|c| {
                (0..f.vertex_count()).map(move |v| {
                    let mut c = c.clone();
                    c.push(v);
                    c
                })
            })
            .collect();
    }
    let names = coords
        .iter()
        .map(|c| {
            let parts: Vec<&str> =
                c.iter().zip(factors).map(|(&v, f)| f.vertices()[v].as_str()).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let radix: Vec<usize> = factors.iter().map(OrderedComplex::vertex_count).collect();
    let index_of = |c: &[usize]| c.iter().zip(&radix).fold(0usize, |acc, (&x, &r)| acc * r + x);

    let facet_lists: Vec<Vec<Simplex>> = factors.iter().map(OrderedComplex::facets).collect();
    let mut facets: Vec<Simplex> = Vec::new();
    let mut choice = vec![0usize; factors.len()];
    'outer: loop {
        let chosen: Vec<&Simplex> =
            choice.iter().zip(&facet_lists).map(|(&i, l)| &l[i]).collect();
        for_each_shuffle(&chosen, &mut |walk| {
            facets.push(walk.iter().map(|c| index_of(c)).collect());
        });
        for i in (0..choice.len()).rev() {
            choice[i] += 1;
            if choice[i] < facet_lists[i].len() {
                continue 'outer;
            }
            choice[i] = 0;
        }
        break;
    }
    let complex = OrderedComplex::from_facets(names, facets)?;
    Ok(ProductComplex { complex, factors: factors.to_vec(), coords })
}

/// Calls `visit` with every monotone lattice walk through the product of the
/// given simplices, as the list of visited coordinate tuples.
fn for_each_shuffle(simplices: &[&Simplex], visit: &mut dyn FnMut(&[Vec<usize>])) {
    let mut pos = vec![0usize; simplices.len()];
    let mut walk = vec![simplices.iter().map(|s| s[0]).collect::<Vec<_>>()];
    fn rec(
        simplices: &[&Simplex],
        pos: &mut Vec<usize>,
        walk: &mut Vec<Vec<usize>>,
        visit: &mut dyn FnMut(&[Vec<usize>]),
    ) {
        let mut moved = false;
        for i in 0..simplices.len() {
            if pos[i] + 1 < simplices[i].len() {
                moved = true;
                pos[i] += 1;
                let mut next = walk.last().expect("walk is nonempty").clone();
                next[i] = simplices[i][pos[i]];
                walk.push(next);
                rec(simplices, pos, walk, visit);
                walk.pop();
                pos[i] -= 1;
            }
        }
        if !moved {
            visit(walk);
        }
    }
    rec(simplices, &mut pos, &mut walk, visit);
}

/// The subcomplex of `p` of simplices whose `u`-th and `v`-th coordinate
/// projections are vertex-disjoint for every pair `(u, v)` of `d`.
pub fn constrained_subcomplex(p: &ProductComplex, d: &ConstraintSet) -> Result<Subcomplex> {
    if d.arity() != p.arity() {
        return Err(Error::Arity(format!(
            "constraints of arity {} on a {}-fold product",
            d.arity(),
            p.arity()
        )));
    }
    if !d.is_empty() && p.factors.iter().any(|f| f != &p.factors[0]) {
        return Err(Error::InvalidArgument(
            "distinctness constraints need a power of a single complex".into(),
        ));
    }
    let pairs: Vec<(usize, usize)> = d.pairs().map(|(u, v)| (u - 1, v - 1)).collect();
    let keep = |s: &[usize]| {
        pairs.iter().all(|&(u, v)| {
            s.iter().all(|&a| s.iter().all(|&b| p.coords[a][u] != p.coords[b][v]))
        })
    };
    let vertices: Vec<usize> =
        (0..p.complex.vertex_count()).filter(|&v| keep(&[v])).collect();
    let mut renumber = vec![usize::MAX; p.complex.vertex_count()];
    for (i, &v) in vertices.iter().enumerate() {
        renumber[v] = i;
    }
    let simplices: Vec<Simplex> = p
        .complex
        .iter_simplices()
        .filter(|s| keep(s))
        .map(|s| s.iter().map(|&v| renumber[v]).collect())
        .collect();
    let names = vertices.iter().map(|&v| p.complex.vertices()[v].clone()).collect();
    let complex = OrderedComplex::new(names, simplices)?;
    let inclusion = SimplicialMap::new(complex.clone(), p.complex.clone(), vertices)?;
    Ok(Subcomplex { complex, inclusion })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{homology, Coefficients};
    use crate::complex::standard::*;

    fn betti(k: &OrderedComplex) -> Vec<usize> {
        homology(&k.chains(), Coefficients::Rational).unwrap().betti().to_vec()
    }

    #[test]
    fn square_is_split_along_diagonal() {
        let p = staircase_product(&[simplex(1), simplex(1)]).unwrap();
        assert_eq!(p.complex().f_vector(), vec![4, 5, 2]);
        assert_eq!(p.complex().vertices(), &["(v0,v0)", "(v0,v1)", "(v1,v0)", "(v1,v1)"]);
    }

    #[test]
    fn product_with_point_is_isomorphic() {
        let k = cycle(4);
        let p = staircase_product(&[k.clone(), point()]).unwrap();
        assert_eq!(p.complex().f_vector(), k.f_vector());
        let proj = p.projection(0).unwrap();
        assert_eq!(proj.assignment(), &[0, 1, 2, 3]);
    }

    #[test]
    fn torus() {
        let p = staircase_product(&[cycle(6), cycle(6)]).unwrap();
        assert_eq!(p.complex().euler_characteristic(), 0);
        assert_eq!(betti(p.complex()), vec![1, 2, 1]);
    }

    #[test]
    fn empty_factor_list_is_rejected() {
        assert!(staircase_product(&[]).is_err());
    }

    #[test]
    fn deleted_edge_is_two_points() {
        let p = staircase_product(&[path(1), path(1)]).unwrap();
        let d = ConstraintSet::full(2);
        let sub = constrained_subcomplex(&p, &d).unwrap();
        assert_eq!(sub.complex.f_vector(), vec![2]);
    }

    #[test]
    fn deleted_triangle_is_hexagon() {
        let p = staircase_product(&[cycle(3), cycle(3)]).unwrap();
        let sub = constrained_subcomplex(&p, &ConstraintSet::full(2)).unwrap();
        assert_eq!(sub.complex.f_vector(), vec![6, 6]);
        assert_eq!(betti(&sub.complex), vec![1, 1]);
    }

    #[test]
    fn no_constraints_keeps_everything() {
        let p = staircase_product(&[cycle(3), cycle(3)]).unwrap();
        let sub = constrained_subcomplex(&p, &ConstraintSet::empty(2)).unwrap();
        assert_eq!(&sub.complex, p.complex());
    }

    #[test]
    fn arity_mismatch() {
        let p = staircase_product(&[cycle(3), cycle(3)]).unwrap();
        assert!(matches!(
            constrained_subcomplex(&p, &ConstraintSet::full(3)),
            Err(Error::Arity(_))
        ));
    }

    #[test]
    fn forget_last_is_simplicial() {
        let k = path(2);
        let p3 = staircase_product(&[k.clone(), k.clone(), k.clone()]).unwrap();
        let p2 = staircase_product(&[k.clone(), k.clone()]).unwrap();
        let f = p3.forget_last(&p2).unwrap();
        assert_eq!(f.target(), p2.complex());
    }
}
