//! Product cells: the cell structure on `K^k` whose cells are tuples of
//! simplices of `K`.
//!
//! This is the cubical (Eilenberg–Zilber) model of a power. For a graph the
//! subcomplex of tuples with pairwise vertex-disjoint carriers is the
//! discretized configuration space. It is much smaller than the staircase
//! triangulation while having the same homotopy type.

use std::collections::HashMap;
use std::sync::Arc;

use super::{ConstraintSet, OrderedComplex, Simplex};
use crate::chain::{ChainComplex, ChainMap, SparseMatrix};
use crate::{Error, Result};

/// The product-cell structure on the `arity`-fold power of `base`.
#[derive(Clone, Debug)]
pub struct CellProduct {
    base: OrderedComplex,
    arity: usize,
    /// Simplices of the base, by dimension then lexicographically.
    base_cells: Vec<Simplex>,
    base_dims: Vec<usize>,
    /// Product cells grouped by dimension, each list in lexicographic order.
    cells: Vec<Vec<Vec<u32>>>,
    position: HashMap<Vec<u32>, (usize, usize)>,
    ambient: Arc<ChainComplex>,
}

impl CellProduct {
    pub fn new(base: &OrderedComplex, arity: usize) -> Result<Self> {
        let base_cells: Vec<Simplex> = base.iter_simplices().cloned().collect();
        let base_dims: Vec<usize> = base_cells.iter().map(|s| s.len() - 1).collect();
        let n = base_cells.len();
        let total = n
            .checked_pow(arity as u32)
            .filter(|&t| t <= u32::MAX as usize)
            .ok_or(Error::ResourceCap { needed: usize::MAX, budget: u32::MAX as usize })?;
        if n == 0 && arity > 0 {
            return Err(Error::InvalidComplex("product cells of an empty complex".into()));
        }
        let top = base.dim().unwrap_or(0) * arity;
        let mut cells: Vec<Vec<Vec<u32>>> = vec![Vec::new(); top + 1];
        let mut tuple = vec![0u32; arity];
        for _ in 0..total {
            let d: usize = tuple.iter().map(|&c| base_dims[c as usize]).sum();
            cells[d].push(tuple.clone());
            for i in (0..arity).rev() {
                tuple[i] += 1;
                if (tuple[i] as usize) < n {
                    break;
                }
                tuple[i] = 0;
            }
        }
        let position = cells
            .iter()
            .enumerate()
            .flat_map(|(d, l)| l.iter().enumerate().map(move |(i, c)| (c.clone(), (d, i))))
            .collect();
        let mut product = CellProduct {
            base: base.clone(),
            arity,
            base_cells,
            base_dims,
            cells,
            position,
            ambient: Arc::new(ChainComplex::empty()),
        };
        product.ambient = Arc::new(product.build_ambient());
        Ok(product)
    }

    pub fn base(&self) -> &OrderedComplex {
        &self.base
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Chain complex of the whole power, one generator per cell.
    pub fn ambient(&self) -> &Arc<ChainComplex> {
        &self.ambient
    }

    /// Cells of dimension `d` as tuples of base simplex ids.
    pub fn cells(&self, d: usize) -> &[Vec<u32>] {
        self.cells.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn num_cells(&self) -> usize {
        self.position.len()
    }

    /// `(dimension, index)` of a cell.
    pub fn locate(&self, cell: &[u32]) -> Option<(usize, usize)> {
        self.position.get(cell).copied()
    }

    /// The base simplex with id `id`.
    pub fn base_simplex(&self, id: u32) -> &Simplex {
        &self.base_cells[id as usize]
    }

    pub fn cell_label(&self, cell: &[u32]) -> String {
        let parts: Vec<String> = cell
            .iter()
            .map(|&c| {
                let s = &self.base_cells[c as usize];
                let names: Vec<&str> = s.iter().map(|&v| self.base.vertices()[v].as_str()).collect();
                names.join("-")
            })
            .collect();
        format!("({})", parts.join(","))
    }

    /// Whether a cell satisfies the distinctness constraints `d`.
    pub fn admits(&self, cell: &[u32], d: &ConstraintSet) -> bool {
        d.pairs().all(|(u, v)| {
            let a = &self.base_cells[cell[u - 1] as usize];
            let b = &self.base_cells[cell[v - 1] as usize];
            a.iter().all(|x| !b.contains(x))
        })
    }

    /// Per dimension, the sorted indices of the cells admitted by `d`.
    /// Always a subcomplex, since faces of disjoint carriers are disjoint.
    pub fn admissible(&self, d: &ConstraintSet) -> Result<Vec<Vec<usize>>> {
        self.check_arity(d)?;
        Ok(self
            .cells
            .iter()
            .map(|l| (0..l.len()).filter(|&i| self.admits(&l[i], d)).collect())
            .collect())
    }

    /// Chain complex of the constrained subcomplex, with its inclusion into
    /// [`ambient`](Self::ambient).
    pub fn constrained(&self, d: &ConstraintSet) -> Result<ChainMap> {
        let keep = self.admissible(d)?;
        let sub = self.ambient.subcomplex(&keep)?;
        Ok(sub)
    }

    fn check_arity(&self, d: &ConstraintSet) -> Result<()> {
        if d.arity() != self.arity {
            return Err(Error::Arity(format!(
                "constraints of arity {} on a {}-fold power",
                d.arity(),
                self.arity
            )));
        }
        Ok(())
    }

    fn boundary_of(&self, cell: &[u32]) -> Vec<(Vec<u32>, i64)> {
        let mut out = Vec::new();
        let mut sign = 1i64;
        for (i, &c) in cell.iter().enumerate() {
            let s = &self.base_cells[c as usize];
            if s.len() > 1 {
                for j in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(j);
                    let id = self.base_id(&face);
                    let mut t = cell.to_vec();
                    t[i] = id;
                    out.push((t, if j % 2 == 0 { sign } else { -sign }));
                }
            }
            if self.base_dims[c as usize] % 2 == 1 {
                sign = -sign;
            }
        }
        out
    }

    fn base_id(&self, s: &[usize]) -> u32 {
        let d = s.len() - 1;
        let offset: usize = (0..d).map(|i| self.base.simplices(i).len()).sum();
        (offset + self.base.index_of(s).expect("face of a simplex is a simplex")) as u32
    }

    fn build_ambient(&self) -> ChainComplex {
        let labels = self
            .cells
            .iter()
            .map(|l| l.iter().map(|c| self.cell_label(c)).collect())
            .collect();
        let mut boundaries = Vec::with_capacity(self.cells.len());
        for (d, list) in self.cells.iter().enumerate() {
            let rows = if d == 0 { 0 } else { self.cells[d - 1].len() };
            let cols = list
                .iter()
                .map(|c| {
                    let mut col: Vec<(usize, i64)> = self
                        .boundary_of(c)
                        .into_iter()
                        .map(|(f, s)| (self.position[&f].1, s))
                        .collect();
                    col.sort_unstable();
                    col
                })
                .collect();
            boundaries.push(SparseMatrix::from_columns(rows, cols));
        }
        ChainComplex::from_parts_unchecked(labels, boundaries)
    }

    /// The cellular map `K^k -> K^(k-1)` forgetting the last factor. Cells
    /// whose last factor is not a vertex collapse and map to zero.
    pub fn forget_last(&self, target: &CellProduct) -> Result<ChainMap> {
        if self.arity == 0 || target.arity + 1 != self.arity || target.base != self.base {
            return Err(Error::Arity("forget_last target is not the truncated power".into()));
        }
        let matrices = self
            .cells
            .iter()
            .enumerate()
            .map(|(d, list)| {
                let cols = list
                    .iter()
                    .map(|c| {
                        let (last, rest) = c.split_last().expect("arity is positive");
                        if self.base_dims[*last as usize] != 0 {
                            return Vec::new();
                        }
                        let (td, ti) = target.position[rest];
                        debug_assert_eq!(td, d);
                        vec![(ti, 1)]
                    })
                    .collect();
                SparseMatrix::from_columns(target.cells(d).len(), cols)
            })
            .collect();
        ChainMap::new(self.ambient.clone(), target.ambient.clone(), matrices)
    }
}
