mod common;

use std::sync::Arc;

use confspace::chain::{homology, ChainComplex, Coefficients, SparseMatrix};
use confspace::complex::standard::*;
use confspace::complex::{
    barycentric_subdivide, constrained_subcomplex, parse_complex, staircase_product,
    subdivide_edges, write_complex, CellProduct, ConstraintSet, OrderedComplex,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{betti, convolve, random_graph};

fn arb_graph(max_vertices: usize) -> impl Strategy<Value = OrderedComplex> {
    (any::<u64>(), 1..=max_vertices).prop_map(|(seed, n)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_graph(&mut rng, n, 0.5)
    })
}

fn arb_constraints(arity: usize) -> impl Strategy<Value = ConstraintSet> {
    let pairs: Vec<(usize, usize)> =
        (1..=arity).flat_map(|v| (v + 1..=arity).map(move |u| (u, v))).collect();
    proptest::sample::subsequence(pairs.clone(), 0..=pairs.len())
        .prop_map(move |ps| ConstraintSet::new(arity, ps).unwrap())
}

/// Relative chains `C(Y) / C(X)` for a subcomplex given by kept indices,
/// built directly from the boundary matrices.
fn quotient(y: &ChainComplex, keep: &[Vec<usize>]) -> ChainComplex {
    let rest: Vec<Vec<usize>> = (0..y.len())
        .map(|d| (0..y.dim(d)).filter(|i| keep.get(d).is_none_or(|k| !k.contains(i))).collect())
        .collect();
    let labels = (0..y.len()).map(|d| rest[d].iter().map(|&i| y.labels(d)[i].clone()).collect()).collect();
    let boundaries = (0..y.len())
        .map(|d| {
            if d == 0 {
                SparseMatrix::zeros(0, rest[0].len())
            } else {
                y.boundary(d).select(&rest[d - 1], &rest[d])
            }
        })
        .collect();
    ChainComplex::from_parts(labels, boundaries).unwrap()
}

#[test]
fn text_format_round_trips() {
    for k in [rp2(), figure_eight(), path(3), simplex(3)] {
        let back = parse_complex(&write_complex(&k)).unwrap();
        assert_eq!(back, k);
    }
}

#[test]
fn parse_errors_name_the_line() {
    let err = parse_complex("vertex a\nvertex b\nsimplex a c\n").unwrap_err();
    assert!(err.to_string().starts_with("line 3"), "{err}");
    let err = parse_complex("vertex a\nvertex a\n").unwrap_err();
    assert!(err.to_string().starts_with("line 2"), "{err}");
    let err = parse_complex("vertx a\n").unwrap_err();
    assert!(err.to_string().starts_with("line 1"), "{err}");
}

#[test]
fn integral_homology_of_the_projective_plane() {
    let h = homology(&rp2().chains(), Coefficients::Integral).unwrap();
    assert_eq!(h.betti(), &[1]);
    assert_eq!(h.torsion_row(), "1:2");
    let q = homology(&rp2().chains(), Coefficients::Rational).unwrap();
    assert_eq!(q.betti(), &[1]);
}

#[test]
fn deleted_square_of_a_triangle_boundary() {
    // F_2(S^1) ~ S^1; the deleted product of a 3-cycle is a 6-cycle.
    let p = staircase_product(&[cycle(3), cycle(3)]).unwrap();
    let d = constrained_subcomplex(&p, &ConstraintSet::full(2)).unwrap();
    assert_eq!(d.complex.f_vector(), vec![6, 6]);
    assert_eq!(betti(&d.complex.chains()), vec![1, 1]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn euler_characteristic_is_multiplicative(a in arb_graph(5), b in arb_graph(5)) {
        let p = staircase_product(&[a.clone(), b.clone()]).unwrap();
        prop_assert_eq!(
            p.complex().euler_characteristic(),
            a.euler_characteristic() * b.euler_characteristic()
        );
        prop_assert_eq!(betti(&p.complex().chains()), convolve(&betti(&a.chains()), &betti(&b.chains())));
    }

    #[test]
    fn more_constraints_give_subcomplexes(
        k in arb_graph(4),
        c in arb_constraints(3),
        extra in arb_constraints(3),
    ) {
        let p = staircase_product(&[k.clone(), k.clone(), k.clone()]).unwrap();
        let small = constrained_subcomplex(&p, &c.union(&extra).unwrap()).unwrap();
        let big = constrained_subcomplex(&p, &c).unwrap();
        for s in small.complex.iter_simplices() {
            let image = small.inclusion.image(s);
            let in_big: Vec<usize> = image
                .iter()
                .map(|&v| big.inclusion.assignment().iter().position(|&w| w == v).unwrap())
                .collect();
            prop_assert!(big.complex.contains(&in_big));
        }
    }

    #[test]
    fn permuting_coordinates_preserves_homology(k in arb_graph(4), c in arb_constraints(3), rot in 0usize..3) {
        // Rotate coordinate labels 1 -> 2 -> 3 -> 1 `rot` times.
        let r = |x: usize| (x - 1 + rot) % 3 + 1;
        let moved = ConstraintSet::new(3, c.pairs().map(|(u, v)| (r(u).max(r(v)), r(u).min(r(v))))).unwrap();
        let cells = CellProduct::new(&k, 3).unwrap();
        let a = cells.constrained(&c).unwrap();
        let b = cells.constrained(&moved).unwrap();
        prop_assert_eq!(betti(a.source()), betti(b.source()));
    }

    #[test]
    fn cells_and_staircase_agree(k in arb_graph(4), c in arb_constraints(2)) {
        let p = staircase_product(&[k.clone(), k.clone()]).unwrap();
        let simplicial = constrained_subcomplex(&p, &c).unwrap();
        let cells = CellProduct::new(&k, 2).unwrap().constrained(&c).unwrap();
        prop_assert_eq!(betti(&simplicial.complex.chains()), betti(cells.source()));
    }

    #[test]
    fn subdivision_preserves_homology(k in arb_graph(5), f in 1usize..4) {
        let b = betti(&k.chains());
        prop_assert_eq!(betti(&subdivide_edges(&k, f).unwrap().chains()), b.clone());
        prop_assert_eq!(betti(&barycentric_subdivide(&k, 1).chains()), b);
    }

    #[test]
    fn kunneth_for_tensor_products(a in arb_graph(5), b in arb_graph(5)) {
        let t = a.chains().tensor(&b.chains()).unwrap();
        prop_assert_eq!(betti(&t), convolve(&betti(&a.chains()), &betti(&b.chains())));
    }

    #[test]
    fn cone_of_an_inclusion_is_the_quotient(k in arb_graph(6), c in arb_constraints(2)) {
        // Puppe: the cone of X -> Y computes H(Y, X).
        let cells = CellProduct::new(&k, 2).unwrap();
        let incl = cells.constrained(&c).unwrap();
        let keep = cells.admissible(&c).unwrap();
        let cone = incl.mapping_cone();
        let oracle = quotient(cells.ambient(), &keep);
        prop_assert_eq!(betti(&cone), betti(&oracle));
        prop_assert_eq!(
            cone.euler_characteristic(),
            cells.ambient().euler_characteristic() - incl.source().euler_characteristic()
        );
    }

    #[test]
    fn chain_text_round_trips(k in arb_graph(5)) {
        let c = Arc::new(k.chains());
        let back = ChainComplex::from_text(&c.to_text()).unwrap();
        prop_assert_eq!(&back, &*c);
    }
}
