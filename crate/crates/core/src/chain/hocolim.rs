//! Homotopy colimits at chain level.
//!
//! Both constructions are the normalized chains of the simplicial
//! replacement. A generator is a strictly increasing chain
//! `x_0 < ... < x_n` in the indexing poset together with a cell `c` of the
//! node at `x_0`, in degree `n + |c|`, with
//!
//! ```text
//! d(x_0 < ... < x_n ; c) = sum_i (-1)^i (x_0 < ... ^x_i ... < x_n ; c)
//!                          + (-1)^n (x_0 < ... < x_n ; dc)
//! ```
//!
//! where dropping `x_0` pushes `c` forward along the map `x_0 -> x_1`.

use std::collections::HashMap;
use std::sync::Arc;

use super::{ChainComplex, ChainMap, SparseMatrix};
use crate::{Error, Result};

/// A zigzag `O_0 <- E_0 -> O_1 <- E_1 -> ... -> O_m` of chain complexes.
#[derive(Clone, Debug)]
pub struct ZigzagDiagram {
    odd: Vec<Arc<ChainComplex>>,
    even: Vec<Arc<ChainComplex>>,
    left: Vec<ChainMap>,
    right: Vec<ChainMap>,
}

impl ZigzagDiagram {
    /// `left[p]: E_p -> O_p` and `right[p]: E_p -> O_(p+1)`.
    pub fn new(
        odd: Vec<Arc<ChainComplex>>,
        even: Vec<Arc<ChainComplex>>,
        left: Vec<ChainMap>,
        right: Vec<ChainMap>,
    ) -> Result<Self> {
        if odd.is_empty() || even.len() + 1 != odd.len() || left.len() != even.len() || right.len() != even.len() {
            return Err(Error::Shape(format!(
                "zigzag with {} odd nodes, {} even nodes, {} left and {} right maps",
                odd.len(),
                even.len(),
                left.len(),
                right.len()
            )));
        }
        for p in 0..even.len() {
            for (map, target, side) in [(&left[p], &odd[p], "left"), (&right[p], &odd[p + 1], "right")] {
                if map.source() != &even[p] || map.target() != target {
                    return Err(Error::Shape(format!("{side} map {p} does not match its nodes")));
                }
            }
        }
        Ok(ZigzagDiagram { odd, even, left, right })
    }

    /// A zigzag whose maps are given as complexes and maps only:
    /// `maps[p] = (left_p, right_p)`; nodes are read off the maps.
    pub fn from_maps(maps: Vec<(ChainMap, ChainMap)>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::Shape("use ZigzagDiagram::single for a one-node diagram".into()));
        }
        let mut odd = vec![maps[0].0.target().clone()];
        let mut even = Vec::new();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (l, r) in maps {
            even.push(l.source().clone());
            odd.push(r.target().clone());
            left.push(l);
            right.push(r);
        }
        Self::new(odd, even, left, right)
    }

    pub fn single(node: Arc<ChainComplex>) -> Self {
        ZigzagDiagram { odd: vec![node], even: Vec::new(), left: Vec::new(), right: Vec::new() }
    }

    pub fn odd_nodes(&self) -> &[Arc<ChainComplex>] {
        &self.odd
    }

    pub fn even_nodes(&self) -> &[Arc<ChainComplex>] {
        &self.even
    }

    pub fn left_maps(&self) -> &[ChainMap] {
        &self.left
    }

    pub fn right_maps(&self) -> &[ChainMap] {
        &self.right
    }

    /// Applies `f` to every node and `g` to every map, e.g. tensoring with
    /// a fixed complex.
    pub fn map_nodes(
        &self,
        f: impl Fn(&Arc<ChainComplex>) -> Result<ChainComplex>,
        g: impl Fn(&ChainMap) -> Result<ChainMap>,
    ) -> Result<Self> {
        if self.even.is_empty() {
            return Ok(Self::single(Arc::new(f(&self.odd[0])?)));
        }
        let maps = self
            .left
            .iter()
            .zip(&self.right)
            .map(|(l, r)| Ok((g(l)?, g(r)?)))
            .collect::<Result<Vec<_>>>()?;
        // Rebuild with shared node objects so adjacent maps agree.
        let mut odd: Vec<Arc<ChainComplex>> = Vec::new();
        let mut even = Vec::new();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (p, (l, r)) in maps.into_iter().enumerate() {
            if p == 0 {
                odd.push(l.target().clone());
            }
            let l = rebase(l, None, Some(odd[p].clone()))?;
            even.push(l.source().clone());
            let r = rebase(r, Some(even[p].clone()), None)?;
            odd.push(r.target().clone());
            left.push(l);
            right.push(r);
        }
        Self::new(odd, even, left, right)
    }
}

fn rebase(
    f: ChainMap,
    source: Option<Arc<ChainComplex>>,
    target: Option<Arc<ChainComplex>>,
) -> Result<ChainMap> {
    let s = source.unwrap_or_else(|| f.source().clone());
    let t = target.unwrap_or_else(|| f.target().clone());
    if *s != **f.source() || *t != **f.target() {
        return Err(Error::Shape("adjacent maps disagree on a shared node".into()));
    }
    let matrices = (0..s.len()).map(|d| f.matrix(d).clone()).collect();
    Ok(ChainMap::from_parts_unchecked(s, t, matrices))
}

/// Homotopy colimit of a zigzag, with the inclusions of the odd and even
/// nodes.
#[derive(Clone, Debug)]
pub struct ZigzagHocolim {
    pub complex: Arc<ChainComplex>,
    pub odd_inclusions: Vec<ChainMap>,
    pub even_inclusions: Vec<ChainMap>,
}

/// Total complex `(+) O_p (+) E_p (+) E_p[1] (+) E_p[1]`: every arrow of
/// the zigzag contributes a shifted copy of its source with
/// `d(arrow c) = f(c) - c - arrow(dc)`.
///
/// Basis order per degree: odd nodes, then for each even node `p` the node
/// itself, its left arrow copy and its right arrow copy.
pub fn hocolim_zigzag(z: &ZigzagDiagram) -> Result<ZigzagHocolim> {
    let len = z
        .odd
        .iter()
        .map(|c| c.len())
        .chain(z.even.iter().map(|c| c.len() + 1))
        .max()
        .unwrap_or(0);
    // Block layout per degree.
    #[derive(Clone, Copy)]
    enum Block {
        Odd(usize),
        Even(usize),
        Arrow(usize, bool),
    }
    let mut blocks = Vec::new();
    blocks.extend((0..z.odd.len()).map(Block::Odd));
    for p in 0..z.even.len() {
        blocks.push(Block::Even(p));
        blocks.push(Block::Arrow(p, false));
        blocks.push(Block::Arrow(p, true));
    }
    let size = |b: Block, d: usize| match b {
        Block::Odd(p) => z.odd[p].dim(d),
        Block::Even(p) => z.even[p].dim(d),
        Block::Arrow(p, _) => {
            if d == 0 {
                0
            } else {
                z.even[p].dim(d - 1)
            }
        }
    };
    let offsets: Vec<Vec<usize>> = (0..len)
        .map(|d| {
            let mut acc = 0;
            blocks
                .iter()
                .map(|&b| {
                    let s = acc;
                    acc += size(b, d);
                    s
                })
                .collect()
        })
        .collect();
    let total = |d: usize| blocks.iter().map(|&b| size(b, d)).sum::<usize>();
    let block_index = |b: Block| match b {
        Block::Odd(p) => p,
        Block::Even(p) => z.odd.len() + 3 * p,
        Block::Arrow(p, right) => z.odd.len() + 3 * p + 1 + right as usize,
    };

    let mut labels = Vec::with_capacity(len);
    let mut boundaries = Vec::with_capacity(len);
    for d in 0..len {
        let mut l = Vec::with_capacity(total(d));
        let mut cols: Vec<Vec<(usize, i64)>> = Vec::with_capacity(total(d));
        for &b in &blocks {
            match b {
                Block::Odd(p) | Block::Even(p) => {
                    let (node, tag) = match b {
                        Block::Odd(_) => (&z.odd[p], format!("O{p}")),
                        _ => (&z.even[p], format!("E{p}")),
                    };
                    for j in 0..node.dim(d) {
                        l.push(format!("{tag}:{}", node.labels(d)[j]));
                        let col = if d == 0 {
                            Vec::new()
                        } else {
                            let base = offsets[d - 1][block_index(b)];
                            node.boundary(d).column(j).iter().map(|&(r, v)| (base + r, v)).collect()
                        };
                        cols.push(col);
                    }
                }
                Block::Arrow(p, right) => {
                    if d == 0 {
                        continue;
                    }
                    let e = &z.even[p];
                    let (f, target, tag) = if right {
                        (&z.right[p], p + 1, "R")
                    } else {
                        (&z.left[p], p, "L")
                    };
                    for j in 0..e.dim(d - 1) {
                        l.push(format!("{tag}{p}:{}", e.labels(d - 1)[j]));
                        let mut col = Vec::new();
                        let ob = offsets[d - 1][block_index(Block::Odd(target))];
                        col.extend(f.matrix(d - 1).column(j).iter().map(|&(r, v)| (ob + r, v)));
                        col.push((offsets[d - 1][block_index(Block::Even(p))] + j, -1));
                        if d >= 2 {
                            let ab = offsets[d - 1][block_index(b)];
                            col.extend(e.boundary(d - 1).column(j).iter().map(|&(r, v)| (ab + r, -v)));
                        }
                        cols.push(col);
                    }
                }
            }
        }
        let rows = if d == 0 { 0 } else { total(d - 1) };
        labels.push(l);
        boundaries.push(SparseMatrix::from_columns(rows, cols));
    }
    let complex = Arc::new(ChainComplex::from_parts_unchecked(labels, boundaries));
    let inclusion = |node: &Arc<ChainComplex>, b: Block| {
        let matrices = (0..node.len())
            .map(|d| {
                let base = offsets[d][block_index(b)];
                SparseMatrix::from_columns(
                    complex.dim(d),
                    (0..node.dim(d)).map(|j| vec![(base + j, 1)]).collect(),
                )
            })
            .collect();
        ChainMap::from_parts_unchecked(node.clone(), complex.clone(), matrices)
    };
    let odd_inclusions = z.odd.iter().enumerate().map(|(p, n)| inclusion(n, Block::Odd(p))).collect();
    let even_inclusions = z.even.iter().enumerate().map(|(p, n)| inclusion(n, Block::Even(p))).collect();
    Ok(ZigzagHocolim { complex, odd_inclusions, even_inclusions })
}

/// A diagram of subcomplexes of one ambient chain complex, indexed by a
/// finite poset, whose arrows are inclusions.
///
/// Nodes are given as per-degree sorted lists of ambient generators; the
/// order relation must be transitive, and `x < y` requires the node at `x`
/// to be contained in the node at `y`.
#[derive(Clone, Debug)]
pub struct PosetDiagram {
    ambient: Arc<ChainComplex>,
    names: Vec<String>,
    nodes: Vec<Vec<Vec<usize>>>,
    above: Vec<Vec<usize>>,
}

impl PosetDiagram {
    /// `above[x]` lists every `y` with `x < y`.
    pub fn new(
        ambient: Arc<ChainComplex>,
        names: Vec<String>,
        nodes: Vec<Vec<Vec<usize>>>,
        mut above: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = names.len();
        if nodes.len() != n || above.len() != n {
            return Err(Error::Shape("one node and one upper set per poset element".into()));
        }
        for list in &mut above {
            list.sort_unstable();
            list.dedup();
        }
        for x in 0..n {
            for &y in &above[x] {
                if y >= n || y == x || above[y].contains(&x) {
                    return Err(Error::Shape(format!("relation {x} < {y} is not a strict order")));
                }
                if let Some(&z) = above[y].iter().find(|z| !above[x].contains(z)) {
                    return Err(Error::Shape(format!("order not transitive at {x} < {y} < {z}")));
                }
                if !contains(&nodes[y], &nodes[x]) {
                    return Err(Error::Internal(format!(
                        "node {} is not contained in node {}",
                        names[x], names[y]
                    )));
                }
            }
        }
        Ok(PosetDiagram { ambient, names, nodes, above })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn node(&self, x: usize) -> &[Vec<usize>] {
        &self.nodes[x]
    }

    pub fn above(&self, x: usize) -> &[usize] {
        &self.above[x]
    }

    pub fn ambient(&self) -> &Arc<ChainComplex> {
        &self.ambient
    }

    fn chains(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut stack: Vec<Vec<u32>> = (0..self.len() as u32).rev().map(|x| vec![x]).collect();
        while let Some(ch) = stack.pop() {
            let last = *ch.last().expect("chains are nonempty") as usize;
            for &y in self.above[last].iter().rev() {
                let mut next = ch.clone();
                next.push(y as u32);
                stack.push(next);
            }
            out.push(ch);
        }
        out
    }

    fn node_size(&self, x: usize) -> usize {
        self.nodes[x].iter().map(Vec::len).sum()
    }

    /// Number of generators of the homotopy colimit, without building it.
    pub fn generator_count(&self) -> usize {
        // Chains starting at x: 1 + sum over y > x of chains starting at y.
        let mut starting = vec![0usize; self.len()];
        let mut order: Vec<usize> = (0..self.len()).collect();
        // x < y implies above[y] is strictly smaller than above[x].
        order.sort_by_key(|&x| self.above[x].len());
        for &x in &order {
            starting[x] = 1 + self.above[x].iter().map(|&y| starting[y]).sum::<usize>();
        }
        (0..self.len()).map(|x| starting[x].saturating_mul(self.node_size(x))).sum()
    }

    /// The Bousfield–Kan homotopy colimit.
    pub fn hocolim(&self) -> Result<PosetHocolim> {
        let chains = self.chains();
        let chain_index: HashMap<Vec<u32>, u32> =
            chains.iter().enumerate().map(|(i, c)| (c.clone(), i as u32)).collect();
        let top = chains.iter().map(Vec::len).max().unwrap_or(1) - 1 + self.ambient.len();
        // Generators per degree: (chain, ambient degree, ambient index).
        let mut gens: Vec<Vec<(u32, usize, usize)>> = vec![Vec::new(); top];
        for (ci, ch) in chains.iter().enumerate() {
            let n = ch.len() - 1;
            for (cd, list) in self.nodes[ch[0] as usize].iter().enumerate() {
                for &cell in list {
                    gens[n + cd].push((ci as u32, cd, cell));
                }
            }
        }
        let index: HashMap<(u32, usize, usize), usize> = gens
            .iter()
            .flat_map(|l| l.iter().enumerate().map(|(i, &g)| (g, i)))
            .collect();
        let mut labels = Vec::with_capacity(top);
        let mut boundaries = Vec::with_capacity(top);
        for d in 0..top {
            let mut l = Vec::with_capacity(gens[d].len());
            let mut cols = Vec::with_capacity(gens[d].len());
            for &(ci, cd, cell) in &gens[d] {
                let ch = &chains[ci as usize];
                let names: Vec<&str> = ch.iter().map(|&x| self.names[x as usize].as_str()).collect();
                l.push(format!("{}|{}", names.join("<"), self.ambient.labels(cd)[cell]));
                let n = ch.len() - 1;
                let mut col = Vec::new();
                if n > 0 {
                    for i in 0..=n {
                        let mut face = ch.clone();
                        face.remove(i);
                        let fi = chain_index[&face];
                        let row = index[&(fi, cd, cell)];
                        col.push((row, if i % 2 == 0 { 1 } else { -1 }));
                    }
                }
                if cd > 0 {
                    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
                    for &(r, v) in self.ambient.boundary(cd).column(cell) {
                        col.push((index[&(ci, cd - 1, r)], sign * v));
                    }
                }
                cols.push(col);
            }
            let rows = if d == 0 { 0 } else { gens[d - 1].len() };
            labels.push(l);
            boundaries.push(SparseMatrix::from_columns(rows, cols));
        }
        let complex = Arc::new(ChainComplex::from_parts_unchecked(labels, boundaries));
        Ok(PosetHocolim { complex, chains, index, top })
    }

    /// The map of homotopy colimits induced by an order-preserving map
    /// `phi` of indexing posets and a chain map `cells` of ambients sending
    /// each node into the node of its image. Degenerate image chains
    /// (repeated elements) map to zero.
    pub fn induced_map(
        &self,
        source: &PosetHocolim,
        target_diagram: &PosetDiagram,
        target: &PosetHocolim,
        phi: &[usize],
        cells: &ChainMap,
    ) -> Result<ChainMap> {
        if phi.len() != self.len() {
            return Err(Error::Shape("poset map has the wrong length".into()));
        }
        let chain_lookup: HashMap<&[u32], u32> =
            target.chains.iter().enumerate().map(|(i, c)| (c.as_slice(), i as u32)).collect();
        let src = &source.complex;
        let tgt = &target.complex;
        let mut matrices = Vec::with_capacity(src.len());
        let mut by_degree: Vec<Vec<(u32, usize, usize)>> = vec![Vec::new(); src.len()];
        for (&g, &i) in &source.index {
            let d = source.chains[g.0 as usize].len() - 1 + g.1;
            by_degree[d].push((g.0, g.1, g.2));
            debug_assert!(i < src.dim(d));
        }
        for (d, list) in by_degree.iter_mut().enumerate() {
            list.sort_by_key(|g| source.index[g]);
            let mut cols = Vec::with_capacity(list.len());
            for &(ci, cd, cell) in list.iter() {
                let ch = &source.chains[ci as usize];
                let image: Vec<u32> = ch.iter().map(|&x| phi[x as usize] as u32).collect();
                if image.windows(2).any(|w| w[0] == w[1]) {
                    cols.push(Vec::new());
                    continue;
                }
                let ti = *chain_lookup.get(image.as_slice()).ok_or_else(|| {
                    Error::Internal("poset map does not preserve the order".into())
                })?;
                let mut col = Vec::new();
                if cd < cells.source().len() {
                    for &(r, v) in cells.matrix(cd).column(cell) {
                        if target_diagram.nodes[image[0] as usize]
                            .get(cd)
                            .is_none_or(|n| n.binary_search(&r).is_err())
                        {
                            return Err(Error::Internal(
                                "cell map leaves the node of the image element".into(),
                            ));
                        }
                        col.push((target.index[&(ti, cd, r)], v));
                    }
                }
                cols.push(col);
            }
            matrices.push(SparseMatrix::from_columns(tgt.dim(d), cols));
        }
        ChainMap::new(src.clone(), tgt.clone(), matrices)
    }
}

/// Output of [`PosetDiagram::hocolim`].
#[derive(Clone, Debug)]
pub struct PosetHocolim {
    pub complex: Arc<ChainComplex>,
    chains: Vec<Vec<u32>>,
    index: HashMap<(u32, usize, usize), usize>,
    top: usize,
}

impl PosetHocolim {
    /// Number of nondegenerate chains of the indexing poset.
    pub fn chain_count(&self) -> usize {
        self.chains.len()
    }

    /// Length of the longest chain plus the ambient dimension.
    pub fn degrees(&self) -> usize {
        self.top
    }
}

fn contains(big: &[Vec<usize>], small: &[Vec<usize>]) -> bool {
    small.iter().enumerate().all(|(d, s)| {
        let b = big.get(d).map(Vec::as_slice).unwrap_or(&[]);
        s.iter().all(|x| b.binary_search(x).is_ok())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{homology, Coefficients};
    use crate::complex::standard::*;
    use crate::complex::SimplicialMap;

    fn betti(c: &ChainComplex) -> Vec<usize> {
        homology(c, Coefficients::Rational).unwrap().betti().to_vec()
    }

    fn collapse(k: &crate::complex::OrderedComplex) -> ChainMap {
        SimplicialMap::new(k.clone(), point(), vec![0; k.vertex_count()]).unwrap().induced_map()
    }

    fn shared(l: ChainMap, r: ChainMap) -> (ChainMap, ChainMap) {
        let r = ChainMap::from_parts_unchecked(
            l.source().clone(),
            r.target().clone(),
            (0..l.source().len()).map(|d| r.matrix(d).clone()).collect(),
        );
        (l, r)
    }

    #[test]
    fn suspension_of_two_points_is_a_circle() {
        let (l, r) = shared(collapse(&two_points()), collapse(&two_points()));
        let z = ZigzagDiagram::from_maps(vec![(l, r)]).unwrap();
        let h = hocolim_zigzag(&z).unwrap();
        h.complex.check_boundaries().unwrap();
        assert_eq!(betti(&h.complex), vec![1, 1]);
        for inc in h.odd_inclusions.iter().chain(&h.even_inclusions) {
            inc.check().unwrap();
        }
    }

    #[test]
    fn identity_zigzag() {
        let x = Arc::new(figure_eight().chains());
        let z = ZigzagDiagram::new(
            vec![x.clone(), x.clone()],
            vec![x.clone()],
            vec![ChainMap::identity(x.clone())],
            vec![ChainMap::identity(x.clone())],
        )
        .unwrap();
        let h = hocolim_zigzag(&z).unwrap();
        assert_eq!(betti(&h.complex), betti(&x));
    }

    #[test]
    fn single_node_is_the_node() {
        let x = Arc::new(cycle(4).chains());
        let h = hocolim_zigzag(&ZigzagDiagram::single(x.clone())).unwrap();
        assert_eq!(h.complex.dims(), x.dims());
        assert_eq!(betti(&h.complex), vec![1, 1]);
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let x = Arc::new(cycle(4).chains());
        assert!(ZigzagDiagram::new(vec![x.clone()], vec![x.clone()], vec![], vec![]).is_err());
    }

    #[test]
    fn poset_hocolim_of_a_zigzag_matches() {
        // pt <- S^0 -> pt as subcomplexes of the ambient two-point complex:
        // the two points are nodes 0 and 2, the pair is node 1.
        let ambient = Arc::new(two_points().chains());
        let names = vec!["a".to_string(), "ab".to_string(), "b".to_string()];
        let nodes = vec![vec![vec![0]], vec![vec![0, 1]], vec![vec![1]]];
        // Inclusions go from smaller to larger: a < ab, b < ab.
        let above = vec![vec![1], vec![], vec![1]];
        let p = PosetDiagram::new(ambient, names, nodes, above).unwrap();
        assert_eq!(p.generator_count(), 2 + 1 + 1 + 2);
        let h = p.hocolim().unwrap();
        h.complex.check_boundaries().unwrap();
        // The poset has a top element, so the colimit is the top node.
        assert_eq!(betti(&h.complex), vec![2]);
    }

    #[test]
    fn poset_rejects_non_inclusions() {
        let ambient = Arc::new(two_points().chains());
        let names = vec!["a".to_string(), "b".to_string()];
        let nodes = vec![vec![vec![0]], vec![vec![1]]];
        let err = PosetDiagram::new(ambient, names, nodes, vec![vec![1], vec![]]).unwrap_err();
        assert!(matches!(err, Error::Internal(_)));
    }
}
