//! The tower `E^k(A)`: a homotopy colimit of constrained powers of `A`
//! modelling `F_k(A x R)`.
//!
//! Particles `1..k` live in `A x R`. A tower state records how their
//! heights compare: an ordered partition of the particles into height
//! blocks, lowest block first. Particles in a common block share a height,
//! so their `A`-coordinates must differ. The node of a state is the
//! subpower of `A^k` cut out by those distinctness constraints.
//!
//! A state `x` lies below `y` when `y` refines `x`, i.e. `y` separates
//! particles that `x` keeps at equal height. Then the node of `x` is
//! contained in the node of `y`, and the tower is the homotopy colimit over
//! this poset.
//!
//! States are coded by generalized index tuples `(s_2, ..., s_k)`. If the
//! particles `1..m-1` form `b` blocks, then `s_m` lies in `1..=2b+1`:
//!
//! * `s_m = 2q + 1` puts particle `m` in a new block above the lowest `q`
//!   blocks.
//! * `s_m = 2q` puts it into block `q`.
//!
//! All-odd codes are exactly the index tuples, i.e. the `k!` chambers.
//! Fixing the code of particles `1..k-1` leaves the zigzag
//! `1 > 2 < 3 > ... < 2b+1` of positions for particle `k`. Its odd
//! positions are unconstrained in the last coordinate. Its even positions
//! (walls) force `a_k` to avoid every particle of the block being crossed.

use std::fmt;
use std::sync::Arc;

use crate::chain::{
    hocolim_zigzag, homology, ChainComplex, ChainMap, Coefficients, HomologySummary,
    PosetDiagram, ZigzagDiagram,
};
use crate::combinatorics::{ranks, wall_relabel, IndexTuple, RankSequence};
use crate::complex::{
    constrained_subcomplex, staircase_product, CellProduct, ConstraintSet, OrderedComplex,
    SimplicialMap,
};
use crate::config::abrams_condition;
use crate::{Error, Result};

/// Default largest number of particles accepted by [`assemble_tower`].
pub const DEFAULT_MAX_K: usize = 4;

/// Default cap on the number of generators of an assembled complex.
pub const DEFAULT_BUDGET: usize = 5_000_000;

/// Limits applied while assembling a tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TowerOptions {
    pub max_k: usize,
    pub budget: usize,
}

impl Default for TowerOptions {
    fn default() -> Self {
        TowerOptions { max_k: DEFAULT_MAX_K, budget: DEFAULT_BUDGET }
    }
}

/// An ordered partition of the particles `1..k` into height blocks.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TowerState {
    k: usize,
    blocks: Vec<Vec<usize>>,
}

impl TowerState {
    /// The state with the given generalized index tuple `(s_2, ..., s_k)`;
    /// `k = 0` is written as `None`.
    pub fn from_code(k: usize, code: &[usize]) -> Result<Self> {
        if k == 0 {
            if !code.is_empty() {
                return Err(Error::InvalidArgument("no code entries for zero particles".into()));
            }
            return Ok(TowerState { k: 0, blocks: Vec::new() });
        }
        if code.len() + 1 != k {
            return Err(Error::InvalidArgument(format!(
                "a state of {k} particles has {} code entries, got {}",
                k - 1,
                code.len()
            )));
        }
        let mut state = TowerState { k: 1, blocks: vec![vec![1]] };
        for &s in code {
            state = state.extend(s)?;
        }
        Ok(state)
    }

    /// Adds particle `k + 1` at position `s` of the zigzag over `self`.
    pub fn extend(&self, s: usize) -> Result<Self> {
        let b = self.blocks.len();
        let m = self.k + 1;
        if s == 0 || s > 2 * b + 1 {
            return Err(Error::InvalidArgument(format!(
                "position {s} for particle {m} outside 1..={}",
                2 * b + 1
            )));
        }
        let mut blocks = self.blocks.clone();
        if s % 2 == 1 {
            blocks.insert(s / 2, vec![m]);
        } else {
            blocks[s / 2 - 1].push(m);
        }
        Ok(TowerState { k: m, blocks })
    }

    /// Number of particles.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Height blocks, lowest first, particles sorted inside each block.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// The generalized index tuple of this state.
    pub fn code(&self) -> Vec<usize> {
        let mut code = Vec::with_capacity(self.k.saturating_sub(1));
        for m in 2..=self.k {
            let restricted = self.restrict(m);
            let (q, block) = restricted
                .blocks
                .iter()
                .enumerate()
                .find(|(_, b)| b.contains(&m))
                .expect("particle is placed");
            if block.len() == 1 {
                code.push(2 * q + 1);
            } else {
                // Blocks below q are unchanged by removing particle m.
                code.push(2 * (q + 1));
            }
        }
        code
    }

    /// The state of the particles `1..=m`.
    pub fn restrict(&self, m: usize) -> TowerState {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().copied().filter(|&x| x <= m).collect::<Vec<_>>())
            .filter(|b| !b.is_empty())
            .collect();
        TowerState { k: m.min(self.k), blocks }
    }

    /// The state with the last particle forgotten.
    pub fn forget_last(&self) -> TowerState {
        self.restrict(self.k.saturating_sub(1))
    }

    /// Whether every block is a single particle.
    pub fn is_chamber(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    /// For a chamber, its index tuple.
    pub fn index_tuple(&self) -> Option<IndexTuple> {
        if self.k == 0 || !self.is_chamber() {
            return None;
        }
        IndexTuple::new(self.code()).ok()
    }

    /// For a chamber, the particles from lowest to highest.
    pub fn rank_sequence(&self) -> Option<RankSequence> {
        if !self.is_chamber() {
            return None;
        }
        RankSequence::new(self.blocks.iter().map(|b| b[0]).collect()).ok()
    }

    /// One distinctness constraint per pair of particles sharing a block.
    pub fn constraints(&self) -> ConstraintSet {
        let mut c = ConstraintSet::empty(self.k);
        for b in &self.blocks {
            for (i, &u) in b.iter().enumerate() {
                for &v in &b[..i] {
                    c.insert(u, v).expect("particles are within arity");
                }
            }
        }
        c
    }

    /// Whether `self` refines `other`: every block of `other` is a union of
    /// consecutive blocks of `self`.
    pub fn refines(&self, other: &TowerState) -> bool {
        if self.k != other.k {
            return false;
        }
        let mut it = self.blocks.iter();
        for big in &other.blocks {
            let mut covered = 0;
            while covered < big.len() {
                let Some(small) = it.next() else { return false };
                if !small.iter().all(|x| big.contains(x)) {
                    return false;
                }
                covered += small.len();
            }
        }
        it.next().is_none()
    }
}

impl fmt::Display for TowerState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.code().iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All states of `k` particles, ordered lexicographically by code.
pub fn enumerate_states(k: usize) -> Vec<TowerState> {
    if k == 0 {
        return vec![TowerState { k: 0, blocks: Vec::new() }];
    }
    let mut states = vec![TowerState { k: 1, blocks: vec![vec![1]] }];
    for _ in 2..=k {
        states = states
            .iter()
            .flat_map(|s| (1..=2 * s.blocks.len() + 1).map(move |p| s.extend(p).expect("in range")))
            .collect();
    }
    states
}

/// A constrained subcomplex of the staircase power `K^k`, with its
/// projection to `K^(k-1)`.
#[derive(Clone, Debug)]
pub struct ConstraintNode {
    pub constraints: ConstraintSet,
    pub realized: OrderedComplex,
    pub projection: SimplicialMap,
}

impl ConstraintNode {
    /// Realizes `constraints` (arity at least 2) inside the staircase power.
    pub fn realize(k_complex: &OrderedComplex, constraints: &ConstraintSet) -> Result<Self> {
        let k = constraints.arity();
        if k < 2 {
            return Err(Error::Arity("constraint nodes need at least two coordinates".into()));
        }
        let big = staircase_product(&vec![k_complex.clone(); k])?;
        let small = staircase_product(&vec![k_complex.clone(); k - 1])?;
        let sub = constrained_subcomplex(&big, constraints)?;
        let projection = sub.inclusion.then(&big.forget_last(&small)?)?;
        Ok(ConstraintNode { constraints: constraints.clone(), realized: sub.complex, projection })
    }
}

/// One level of the tower: the zigzag of positions `1, 2, ..., 2b+1` of
/// the top particle over a fixed state of the others, as constraint sets.
/// Even positions map into both odd neighbours.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelDiagram {
    pub arity: usize,
    pub nodes: Vec<ConstraintSet>,
}

impl LevelDiagram {
    /// Checks the arrow condition: every even node's constraints contain
    /// those of both neighbours, so the arrows are subcomplex inclusions.
    pub fn check(&self) -> Result<()> {
        if self.nodes.len().is_multiple_of(2) {
            return Err(Error::Shape("a level zigzag has an odd number of positions".into()));
        }
        for p in (1..self.nodes.len()).step_by(2) {
            for q in [p - 1, p + 1] {
                if !self.nodes[p].is_superset(&self.nodes[q]) {
                    return Err(Error::Internal(format!(
                        "arrow {} -> {} is not an inclusion",
                        p + 1,
                        q + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Staircase realization of every node.
    pub fn realize(&self, k_complex: &OrderedComplex) -> Result<Vec<ConstraintNode>> {
        self.nodes.iter().map(|c| ConstraintNode::realize(k_complex, c)).collect()
    }

    /// Homotopy colimit of the zigzag, with nodes realized as product-cell
    /// complexes.
    pub fn hocolim(&self, k_complex: &OrderedComplex) -> Result<ChainComplex> {
        self.check()?;
        let cells = CellProduct::new(k_complex, self.arity)?;
        let incl = self.nodes.iter().map(|c| cells.constrained(c)).collect::<Result<Vec<_>>>()?;
        let z = if incl.len() == 1 {
            ZigzagDiagram::single(incl[0].source().clone())
        } else {
            let mut maps = Vec::new();
            for p in (1..incl.len()).step_by(2) {
                let l = subcomplex_map(&incl[p], &incl[p - 1])?;
                let r = subcomplex_map(&incl[p], &incl[p + 1])?;
                maps.push((l, r));
            }
            share_nodes(maps)?
        };
        Ok(Arc::try_unwrap(hocolim_zigzag(&z)?.complex).unwrap_or_else(|c| (*c).clone()))
    }
}

/// The inclusion `A -> B` of two subcomplexes of a common ambient complex,
/// given their inclusions.
fn subcomplex_map(a: &ChainMap, b: &ChainMap) -> Result<ChainMap> {
    let src = a.source();
    let tgt = b.source();
    let mut matrices = Vec::with_capacity(src.len());
    for d in 0..src.len() {
        let positions: Vec<usize> = if d < tgt.len() {
            b.matrix(d).columns().iter().map(|c| c[0].0).collect()
        } else {
            Vec::new()
        };
        let cols = a
            .matrix(d)
            .columns()
            .iter()
            .map(|c| {
                let amb = c[0].0;
                positions
                    .binary_search(&amb)
                    .map(|i| vec![(i, 1)])
                    .map_err(|_| Error::Internal("node is not contained in its target".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        matrices.push(crate::chain::SparseMatrix::from_columns(tgt.dim(d), cols));
    }
    ChainMap::new(src.clone(), tgt.clone(), matrices)
}

/// Builds a zigzag from `(left, right)` pairs whose shared odd nodes are
/// equal but possibly distinct allocations.
fn share_nodes(maps: Vec<(ChainMap, ChainMap)>) -> Result<ZigzagDiagram> {
    let mut odd = vec![maps[0].0.target().clone()];
    let mut even = Vec::new();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (l, r) in maps {
        let prev = odd.last().expect("nonempty").clone();
        let l = ChainMap::from_parts_unchecked(
            l.source().clone(),
            prev,
            (0..l.source().len()).map(|d| l.matrix(d).clone()).collect(),
        );
        let r = ChainMap::from_parts_unchecked(
            l.source().clone(),
            r.target().clone(),
            (0..l.source().len()).map(|d| r.matrix(d).clone()).collect(),
        );
        even.push(l.source().clone());
        odd.push(r.target().clone());
        left.push(l);
        right.push(r);
    }
    ZigzagDiagram::new(odd, even, left, right)
}

/// The first level zigzag over a chamber: for `prefix` in the index set of
/// `k - 1` particles, position `2p` constrains `a_k != a_(j_p)` where
/// `j_p` is the particle of rank `p`; odd positions are unconstrained.
pub fn base_zigzag(prefix: &IndexTuple, k: usize) -> Result<LevelDiagram> {
    if k < 2 || prefix.k() != k - 1 {
        return Err(Error::InvalidArgument(format!(
            "prefix {prefix} does not describe {} particles",
            k.saturating_sub(1)
        )));
    }
    let order = ranks(prefix)?;
    let mut nodes = Vec::with_capacity(2 * k - 1);
    for p in 1..k {
        nodes.push(ConstraintSet::empty(k));
        nodes.push(ConstraintSet::new(k, [(k, order.at(p))])?);
    }
    nodes.push(ConstraintSet::empty(k));
    let level = LevelDiagram { arity: k, nodes };
    level.check()?;
    Ok(level)
}

/// Adds the constraints `extra` (which must not involve the top
/// coordinate) to every node of a level.
pub fn restrict_diagram(d: &LevelDiagram, extra: &ConstraintSet) -> Result<LevelDiagram> {
    if extra.arity() > d.arity || extra.mentions(d.arity) {
        return Err(Error::InvalidArgument(format!(
            "restriction {extra} involves coordinate {}",
            d.arity
        )));
    }
    let lifted = extra.lift(d.arity)?;
    let nodes = d.nodes.iter().map(|n| n.union(&lifted)).collect::<Result<Vec<_>>>()?;
    Ok(LevelDiagram { arity: d.arity, nodes })
}

/// The three states around the wall where the top particle crosses block
/// `p` of `prefix`: the chambers below and above, and the wall state where
/// it shares block `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallCrossing {
    pub below: TowerState,
    pub wall: TowerState,
    pub above: TowerState,
    /// For chamber prefixes, the relabeling of rank positions between the
    /// two sides.
    pub relabel: Option<Vec<usize>>,
}

/// Computes the wall states and checks that the wall node includes into
/// both neighbours. An inclusion failure is an internal inconsistency.
pub fn cross_wall(prefix: &TowerState, p: usize) -> Result<WallCrossing> {
    let b = prefix.blocks().len();
    if p == 0 || p > b {
        return Err(Error::InvalidArgument(format!("wall {p} outside 1..={b}")));
    }
    let below = prefix.extend(2 * p - 1)?;
    let wall = prefix.extend(2 * p)?;
    let above = prefix.extend(2 * p + 1)?;
    for side in [&below, &above] {
        if !wall.constraints().is_superset(&side.constraints()) || !side.refines(&wall) {
            return Err(Error::Internal(format!("wall {wall} does not include into {side}")));
        }
    }
    let relabel = if prefix.is_chamber() {
        let w = wall_relabel(p, b)?;
        let lo = below.rank_sequence().expect("chamber");
        let hi = above.rank_sequence().expect("chamber");
        if (1..=b + 1).any(|q| hi.at(q) != lo.at(w[q - 1])) {
            return Err(Error::Internal(format!("wall {wall}: rank relabeling mismatch")));
        }
        Some(w)
    } else {
        None
    };
    Ok(WallCrossing { below, wall, above, relabel })
}

/// The full diagram of the tower for `k` particles.
#[derive(Clone, Debug)]
pub struct TowerDiagram {
    k: usize,
    states: Vec<TowerState>,
    cells: CellProduct,
    poset: PosetDiagram,
}

impl TowerDiagram {
    pub fn new(k_complex: &OrderedComplex, k: usize) -> Result<Self> {
        let states = enumerate_states(k);
        let cells = CellProduct::new(k_complex, k)?;
        let mut nodes = Vec::with_capacity(states.len());
        for s in &states {
            nodes.push(cells.admissible(&s.constraints())?);
        }
        let above: Vec<Vec<usize>> = states
            .iter()
            .map(|x| {
                (0..states.len()).filter(|&j| states[j] != *x && states[j].refines(x)).collect()
            })
            .collect();
        let names = states.iter().map(TowerState::to_string).collect();
        let poset = PosetDiagram::new(cells.ambient().clone(), names, nodes, above)?;
        let diagram = TowerDiagram { k, states, cells, poset };
        diagram.check_walls()?;
        Ok(diagram)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn states(&self) -> &[TowerState] {
        &self.states
    }

    pub fn cells(&self) -> &CellProduct {
        &self.cells
    }

    pub fn poset(&self) -> &PosetDiagram {
        &self.poset
    }

    pub fn state_index(&self, s: &TowerState) -> Option<usize> {
        self.states.binary_search_by(|t| t.code().cmp(&s.code())).ok()
    }

    /// Covering relations `x < y` with nothing in between.
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.states.len() {
            for &y in self.poset.above(x) {
                if !self.poset.above(x).iter().any(|&z| self.poset.above(z).contains(&y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// The level zigzag of the top particle over a state of the others.
    pub fn level(&self, prefix: &TowerState) -> Result<LevelDiagram> {
        if prefix.k() + 1 != self.k {
            return Err(Error::Arity("prefix must have one particle fewer".into()));
        }
        let nodes = (1..=2 * prefix.blocks().len() + 1)
            .map(|s| Ok(prefix.extend(s)?.constraints()))
            .collect::<Result<Vec<_>>>()?;
        Ok(LevelDiagram { arity: self.k, nodes })
    }

    /// Every wall crossing of the top particle.
    pub fn walls(&self) -> Result<Vec<WallCrossing>> {
        let mut out = Vec::new();
        if self.k < 2 {
            return Ok(out);
        }
        for prefix in enumerate_states(self.k - 1) {
            for p in 1..=prefix.blocks().len() {
                out.push(cross_wall(&prefix, p)?);
            }
        }
        Ok(out)
    }

    fn check_walls(&self) -> Result<()> {
        for w in self.walls()? {
            let (b, m, a) = (
                self.state_index(&w.below),
                self.state_index(&w.wall),
                self.state_index(&w.above),
            );
            let (Some(b), Some(m), Some(a)) = (b, m, a) else {
                return Err(Error::Internal("wall state missing from the diagram".into()));
            };
            if !self.poset.above(m).contains(&b) || !self.poset.above(m).contains(&a) {
                return Err(Error::Internal(format!("wall {} is not below its chambers", w.wall)));
            }
        }
        Ok(())
    }

    /// Number of generators of the assembled complex.
    pub fn generator_count(&self) -> usize {
        self.poset.generator_count()
    }
}

/// An assembled tower level with its projection to the previous level.
#[derive(Clone, Debug)]
pub struct Tower {
    pub k: usize,
    pub complex: Arc<ChainComplex>,
    pub projection: ChainMap,
    /// Whether the input graph satisfies the subdivision bound for `F_k`,
    /// which every node of the tower needs (a block may hold all `k`
    /// particles).
    pub certified: bool,
}

impl Tower {
    pub fn homology(&self, coeff: Coefficients) -> Result<HomologySummary> {
        homology(&self.complex, coeff)
    }
}

fn build_level(
    k_complex: &OrderedComplex,
    k: usize,
    budget: usize,
) -> Result<(TowerDiagram, crate::chain::PosetHocolim)> {
    let diagram = TowerDiagram::new(k_complex, k)?;
    let needed = diagram.generator_count();
    if needed > budget {
        return Err(Error::ResourceCap { needed, budget });
    }
    let h = diagram.poset.hocolim()?;
    Ok((diagram, h))
}

/// The chain complex of `E^k(K)` alone (`k = 0` gives a point).
pub fn tower_complex(k_complex: &OrderedComplex, k: usize, opts: TowerOptions) -> Result<Arc<ChainComplex>> {
    check_k(k, opts, 0)?;
    Ok(build_level(k_complex, k, opts.budget)?.1.complex)
}

fn check_k(k: usize, opts: TowerOptions, min: usize) -> Result<()> {
    if k < min || k > opts.max_k {
        return Err(Error::InvalidArgument(format!(
            "k = {k} outside the supported range {min}..={}",
            opts.max_k
        )));
    }
    Ok(())
}

/// Assembles `E^k(K)` and its projection to `E^(k-1)(K)`.
pub fn assemble_tower(k_complex: &OrderedComplex, k: usize, opts: TowerOptions) -> Result<Tower> {
    check_k(k, opts, 1)?;
    if k_complex.vertex_count() == 0 {
        return Err(Error::InvalidComplex("the input complex is empty".into()));
    }
    let (top, top_h) = build_level(k_complex, k, opts.budget)?;
    let (low, low_h) = build_level(k_complex, k - 1, opts.budget)?;
    top_h.complex.check_boundaries()?;
    let phi: Vec<usize> = top
        .states
        .iter()
        .map(|s| low.state_index(&s.forget_last()).expect("restricted state exists"))
        .collect();
    let cells = top.cells.forget_last(&low.cells)?;
    let projection = top.poset.induced_map(&top_h, &low.poset, &low_h, &phi, &cells)?;
    let certified = k_complex.is_graph() && abrams_condition(k_complex, k.max(2))?.holds();
    Ok(Tower { k, complex: top_h.complex, projection, certified })
}

/// `E^k (x) C(K x {two points})`, the model of the boundary of the next
/// tower level. `k = 0` gives `K x {two points}`.
#[derive(Clone, Debug)]
pub struct BoundaryModel {
    pub k: usize,
    pub complex: ChainComplex,
}

impl BoundaryModel {
    pub fn homology(&self, coeff: Coefficients) -> Result<HomologySummary> {
        homology(&self.complex, coeff)
    }
}

pub fn boundary_model(k_complex: &OrderedComplex, k: usize, opts: TowerOptions) -> Result<BoundaryModel> {
    let e = tower_complex(k_complex, k, opts)?;
    let ends = staircase_product(&[k_complex.clone(), crate::complex::standard::two_points()])?;
    let complex = e.tensor(&ends.complex().chains())?;
    Ok(BoundaryModel { k, complex })
}
