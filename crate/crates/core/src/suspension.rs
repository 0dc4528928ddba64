//! The suspension tower at three particles.
//!
//! For a graph `A` certified for three particles, the space `C` is the
//! homotopy colimit of
//!
//! ```text
//! F_3(A) <- F_3(A) x S^0 -> F_2(A) x A x S^0
//! ```
//!
//! where the left arrow forgets the sign and the right arrow includes
//! `F_3(A)` into `F_2(A) x A`. It has the homology of the node `E_2^3(A)` of
//! the tower, and collapsing `Z^3 = F_2(A) x A x S^0` leaves the suspension
//! of `F_3(A)` with a disjoint base point.

use std::sync::Arc;

use crate::chain::{hocolim_zigzag, homology, ChainComplex, Coefficients, HomologySummary, ZigzagDiagram};
use crate::combinatorics::IndexTuple;
use crate::complex::standard::two_points;
use crate::complex::{
    constrained_subcomplex, staircase_product, ConstraintSet, OrderedComplex, SimplicialMap,
};
use crate::config::{abrams_condition, deleted_product_model, homeomorphic};
use crate::tower::{assemble_tower, base_zigzag, restrict_diagram, TowerOptions};
use crate::{Error, Result};

fn require_certified(k_complex: &OrderedComplex, k: usize) -> Result<()> {
    if !k_complex.is_graph() {
        return Err(Error::NotCertified(format!(
            "the input has dimension {}, not a graph",
            k_complex.dim().unwrap_or(0)
        )));
    }
    let report = abrams_condition(k_complex, k)?;
    if !report.holds() {
        return Err(Error::NotCertified(format!(
            "subdivision too coarse for {k} particles: {}",
            report.describe(k_complex)
        )));
    }
    Ok(())
}

/// The chain-level space `C` with the pieces used to build it.
#[derive(Clone, Debug)]
pub struct SuspensionSpace {
    /// Chains of the hocolim `C`.
    pub complex: Arc<ChainComplex>,
    /// Chains of the deleted-product model of `F_3(A)`.
    pub f3: Arc<ChainComplex>,
    /// Chains of `Z^3 = F_2(A) x A x S^0`, with its inclusion into `C`.
    pub z3: Arc<ChainComplex>,
    pub z3_inclusion: crate::chain::ChainMap,
}

/// Builds `C` from staircase models. The two composites
/// `F_3(A) x S^0 -> A^3` through either side of the zigzag are checked to
/// agree as simplicial maps before chains are taken.
pub fn build_c(k_complex: &OrderedComplex) -> Result<SuspensionSpace> {
    require_certified(k_complex, 3)?;
    let cube = staircase_product(&[k_complex.clone(), k_complex.clone(), k_complex.clone()])?;
    let f3 = deleted_product_model(k_complex, 3)?;
    let z = constrained_subcomplex(&cube, &ConstraintSet::new(3, [(2, 1)])?)?;
    let ends = two_points();
    let f3s = staircase_product(&[f3.complex.clone(), ends.clone()])?;
    let zs = staircase_product(&[z.complex.clone(), ends])?;

    // F_3 -> Z through A^3.
    let mut into_z = vec![usize::MAX; cube.complex().vertex_count()];
    for (v, &w) in z.inclusion.assignment().iter().enumerate() {
        into_z[w] = v;
    }
    let f3_to_z: Vec<usize> = f3.inclusion.assignment().iter().map(|&w| into_z[w]).collect();
    if f3_to_z.contains(&usize::MAX) {
        return Err(Error::Internal("the F_3 model is not contained in F_2 x A".into()));
    }

    let left = f3s.projection(0)?;
    let right_assignment = (0..f3s.complex().vertex_count())
        .map(|v| {
            let c = f3s.coords(v);
            zs.vertex_at(&[f3_to_z[c[0]], c[1]])
                .ok_or_else(|| Error::Internal("missing vertex of Z x S^0".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let right = SimplicialMap::new(f3s.complex().clone(), zs.complex().clone(), right_assignment)?;

    let via_left = left.then(&f3.inclusion)?;
    let via_right = right.then(&zs.projection(0)?)?.then(&z.inclusion)?;
    if via_left != via_right {
        return Err(Error::Internal("the two composites into A^3 differ".into()));
    }

    let f3_chains = Arc::new(f3.complex.chains());
    let f3s_chains = Arc::new(f3s.complex().chains());
    let zs_chains = Arc::new(zs.complex().chains());
    let l = left.induced_map_between(f3s_chains.clone(), f3_chains.clone());
    let r = right.induced_map_between(f3s_chains.clone(), zs_chains.clone());
    let diagram =
        ZigzagDiagram::new(vec![f3_chains.clone(), zs_chains.clone()], vec![f3s_chains], vec![l], vec![r])?;
    let h = hocolim_zigzag(&diagram)?;
    let z3_inclusion = h.odd_inclusions[1].clone();
    Ok(SuspensionSpace { complex: h.complex, f3: f3_chains, z3: zs_chains, z3_inclusion })
}

/// The node `E_2^3(A)`: the level zigzag over the chamber `(1)`,
/// restricted by `a_2 != a_1`.
pub fn build_e23(k_complex: &OrderedComplex) -> Result<ChainComplex> {
    require_certified(k_complex, 3)?;
    let base = base_zigzag(&IndexTuple::new(vec![1])?, 3)?;
    let restricted = restrict_diagram(&base, &ConstraintSet::new(2, [(2, 1)])?)?;
    restricted.hocolim(k_complex)
}

/// The mapping cone of `Z^3 -> C`, a chain model of `Sigma F_3(A)_+`.
pub fn sigma_cofiber(space: &SuspensionSpace) -> ChainComplex {
    space.z3_inclusion.mapping_cone()
}

/// Homology of every piece of the suspension tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuspensionReport {
    pub c: HomologySummary,
    pub e23: HomologySummary,
    pub cofiber: HomologySummary,
    pub f3: HomologySummary,
}

impl SuspensionReport {
    /// `C` and `E_2^3` have equal homology.
    pub fn c_matches_e23(&self) -> bool {
        self.c == self.e23
    }

    /// `H_n(cofiber) = H_(n-1)(F_3)` for all `n`, and `H_0(cofiber) = 0`.
    pub fn shift_law_holds(&self) -> bool {
        let shifted = |n: usize| if n == 0 { 0 } else { self.f3.betti_at(n - 1) };
        let top = self.cofiber.betti().len().max(self.f3.betti().len() + 1);
        (0..top).all(|n| self.cofiber.betti_at(n) == shifted(n))
            && (0..top).all(|n| {
                let expected: &[_] = if n == 0 { &[] } else { self.f3.torsion_at(n - 1) };
                self.cofiber.torsion_at(n) == expected
            })
    }
}

/// Builds `C`, `E_2^3`, the cofiber and the `F_3` model, and computes
/// their homology.
pub fn suspension_report(k_complex: &OrderedComplex, coeff: Coefficients) -> Result<SuspensionReport> {
    let space = build_c(k_complex)?;
    let e23 = build_e23(k_complex)?;
    Ok(SuspensionReport {
        c: homology(&space.complex, coeff)?,
        e23: homology(&e23, coeff)?,
        cofiber: homology(&sigma_cofiber(&space), coeff)?,
        f3: homology(&space.f3, coeff)?,
    })
}

/// One compared quantity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonRow {
    pub quantity: String,
    pub a: HomologySummary,
    pub b: HomologySummary,
}

impl ComparisonRow {
    pub fn passed(&self) -> bool {
        self.a == self.b
    }
}

/// Result of [`invariance_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub k: usize,
    pub rows: Vec<ComparisonRow>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(ComparisonRow::passed)
    }
}

/// Compares the towers `E^k` of two subdivisions of a common graph and, at
/// `k = 3`, their suspension cofibers.
///
/// Both inputs must be certified for `k` particles (for `k <= 2`, for two).
pub fn invariance_check(
    a: &OrderedComplex,
    b: &OrderedComplex,
    k: usize,
    opts: TowerOptions,
    coeff: Coefficients,
) -> Result<InvarianceReport> {
    if !homeomorphic(a, b)? {
        return Err(Error::InvalidArgument(
            "the inputs are not subdivisions of a common graph".into(),
        ));
    }
    require_certified(a, k.max(2))?;
    require_certified(b, k.max(2))?;
    let mut rows = vec![ComparisonRow {
        quantity: format!("tower E^{k}"),
        a: assemble_tower(a, k, opts)?.homology(coeff)?,
        b: assemble_tower(b, k, opts)?.homology(coeff)?,
    }];
    if k == 3 {
        rows.push(ComparisonRow {
            quantity: "suspension cofiber".into(),
            a: homology(&sigma_cofiber(&build_c(a)?), coeff)?,
            b: homology(&sigma_cofiber(&build_c(b)?), coeff)?,
        });
    }
    Ok(InvarianceReport { k, rows })
}
