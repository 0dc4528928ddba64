//! Free integer chain complexes with chosen bases, and chain maps.

use std::fmt::Write as _;
use std::sync::Arc;

use super::SparseMatrix;
use crate::{Error, Result};

/// A bounded chain complex of free abelian groups in degrees `0..len()`.
///
/// `boundary(d)` is the matrix of `C_d -> C_(d-1)`, of shape
/// `dim(d-1) x dim(d)`; `boundary(0)` has no rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    labels: Vec<Vec<String>>,
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn empty() -> Self {
        ChainComplex { labels: Vec::new(), boundaries: Vec::new() }
    }

    /// One generator in degree 0.
    pub fn point() -> Self {
        ChainComplex {
            labels: vec![vec!["pt".to_string()]],
            boundaries: vec![SparseMatrix::zeros(0, 1)],
        }
    }

    /// Builds a complex, checking shapes and `d o d = 0`.
    pub fn from_parts(labels: Vec<Vec<String>>, boundaries: Vec<SparseMatrix>) -> Result<Self> {
        let c = Self::from_parts_unchecked(labels, boundaries);
        c.check_boundaries()?;
        Ok(c)
    }

    /// Builds a complex from data known to be valid. Construction sites use
    /// this to avoid re-checking large complexes; `check_boundaries` remains
    /// available.
    pub fn from_parts_unchecked(labels: Vec<Vec<String>>, boundaries: Vec<SparseMatrix>) -> Self {
        ChainComplex { labels, boundaries }
    }

    /// Number of degrees stored (one more than the top degree).
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.iter().all(Vec::is_empty)
    }

    /// Rank of the chain group in degree `d` (zero beyond the top).
    pub fn dim(&self, d: usize) -> usize {
        self.labels.get(d).map_or(0, Vec::len)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.labels.iter().map(Vec::len).sum()
    }

    pub fn labels(&self, d: usize) -> &[String] {
        self.labels.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Boundary `C_d -> C_(d-1)`; requires `d < len()`.
    pub fn boundary(&self, d: usize) -> &SparseMatrix {
        &self.boundaries[d]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.labels
            .iter()
            .enumerate()
            .map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// Checks matrix shapes and that consecutive boundaries compose to zero.
    pub fn check_boundaries(&self) -> Result<()> {
        if self.labels.len() != self.boundaries.len() {
            return Err(Error::Shape("one boundary matrix per degree expected".into()));
        }
        for d in 0..self.len() {
            let b = &self.boundaries[d];
            let rows = if d == 0 { 0 } else { self.dim(d - 1) };
            if b.nrows() != rows || b.ncols() != self.dim(d) {
                return Err(Error::Shape(format!(
                    "boundary in degree {d} is {}x{}, expected {rows}x{}",
                    b.nrows(),
                    b.ncols(),
                    self.dim(d)
                )));
            }
            if d >= 2 && !self.boundaries[d - 1].mul(b)?.is_zero() {
                return Err(Error::Shape(format!("boundary squares to nonzero in degree {d}")));
            }
        }
        Ok(())
    }

    /// The subcomplex spanned by the given generators (per degree, sorted
    /// indices), returned as its inclusion map.
    pub fn subcomplex(self: &Arc<Self>, keep: &[Vec<usize>]) -> Result<ChainMap> {
        let top = keep.iter().rposition(|k| !k.is_empty()).map_or(0, |t| t + 1);
        let mut labels = Vec::with_capacity(top);
        let mut boundaries = Vec::with_capacity(top);
        let mut inclusions = Vec::with_capacity(top);
        for d in 0..top {
            let kept = &keep[d];
            if kept.windows(2).any(|w| w[0] >= w[1]) || kept.last().is_some_and(|&i| i >= self.dim(d)) {
                return Err(Error::Shape(format!("bad generator selection in degree {d}")));
            }
            labels.push(kept.iter().map(|&i| self.labels[d][i].clone()).collect());
            let rows: &[usize] = if d == 0 { &[] } else { &keep[d - 1] };
            let b = self.boundaries[d].select(rows, kept);
            if d > 0 {
                let total: usize = kept.iter().map(|&j| self.boundaries[d].column(j).len()).sum();
                if b.nnz() != total {
                    return Err(Error::Shape(format!(
                        "selection is not a subcomplex in degree {d}"
                    )));
                }
            }
            boundaries.push(b);
            inclusions.push(SparseMatrix::from_columns(
                self.dim(d),
                kept.iter().map(|&i| vec![(i, 1)]).collect(),
            ));
        }
        let sub = Arc::new(ChainComplex { labels, boundaries });
        Ok(ChainMap::from_parts_unchecked(sub, self.clone(), inclusions))
    }

    /// Degree shift by `n`: generators of degree `d` move to `d + n`.
    /// Negative shifts are allowed only if nothing lands below degree 0.
    pub fn shift(&self, n: i64) -> Result<ChainComplex> {
        if n >= 0 {
            let n = n as usize;
            let mut labels = vec![Vec::new(); n];
            let mut boundaries: Vec<SparseMatrix> = (0..n).map(|_| SparseMatrix::zeros(0, 0)).collect();
            labels.extend(self.labels.iter().cloned());
            for (d, b) in self.boundaries.iter().enumerate() {
                if d == 0 && n > 0 {
                    boundaries.push(SparseMatrix::zeros(0, b.ncols()));
                } else {
                    boundaries.push(b.clone());
                }
            }
            Ok(ChainComplex { labels, boundaries })
        } else {
            let m = n.unsigned_abs() as usize;
            if (0..m.min(self.len())).any(|d| self.dim(d) > 0) {
                return Err(Error::InvalidArgument(format!(
                    "shift by {n} would produce negative degrees"
                )));
            }
            if m >= self.len() {
                return Ok(ChainComplex::empty());
            }
            let labels = self.labels[m..].to_vec();
            let mut boundaries = self.boundaries[m..].to_vec();
            boundaries[0] = SparseMatrix::zeros(0, labels[0].len());
            Ok(ChainComplex { labels, boundaries })
        }
    }

    /// `self (+) other`, generators of `self` first in every degree.
    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        let len = self.len().max(other.len());
        let mut labels = Vec::with_capacity(len);
        let mut boundaries = Vec::with_capacity(len);
        for d in 0..len {
            let mut l: Vec<String> = self.labels(d).to_vec();
            l.extend(other.labels(d).iter().cloned());
            labels.push(l);
            let (r0, r1) = if d == 0 { (0, 0) } else { (self.dim(d - 1), other.dim(d - 1)) };
            boundaries.push(SparseMatrix::blocks(
                (r0, r1),
                (self.dim(d), other.dim(d)),
                self.boundaries.get(d),
                None,
                None,
                other.boundaries.get(d),
            ));
        }
        ChainComplex { labels, boundaries }
    }

    /// Index of `(p, i, j)` inside degree `p + q` of `self (x) other`, where
    /// `i` indexes `self_p` and `j` indexes `other_q`.
    fn tensor_offsets(&self, other: &ChainComplex) -> Vec<Vec<usize>> {
        // offsets[n][p]: start of the (p, n - p) block in degree n.
        let len = (self.len() + other.len()).saturating_sub(1);
        (0..len)
            .map(|n| {
                let mut acc = 0;
                (0..=n)
                    .map(|p| {
                        let start = acc;
                        if n - p < other.len() {
                            acc += self.dim(p) * other.dim(n - p);
                        }
                        start
                    })
                    .collect()
            })
            .collect()
    }

    /// Tensor product with `d(a (x) b) = da (x) b + (-1)^|a| a (x) db`.
    /// Basis of degree `n`: pairs ordered by the degree of the left factor,
    /// then lexicographically.
    pub fn tensor(&self, other: &ChainComplex) -> Result<ChainComplex> {
        let len = (self.len() + other.len()).saturating_sub(1);
        let offsets = self.tensor_offsets(other);
        let mut labels = Vec::with_capacity(len);
        let mut boundaries = Vec::with_capacity(len);
        for n in 0..len {
            let mut l = Vec::new();
            let mut cols = Vec::new();
            for p in 0..=n.min(self.len().saturating_sub(1)) {
                let q = n - p;
                if q >= other.len() {
                    continue;
                }
                for i in 0..self.dim(p) {
                    for j in 0..other.dim(q) {
                        l.push(format!("{}⊗{}", self.labels[p][i], other.labels[q][j]));
                        let mut col = Vec::new();
                        if p > 0 {
                            for &(r, v) in self.boundaries[p].column(i) {
                                col.push((offsets[n - 1][p - 1] + r * other.dim(q) + j, v));
                            }
                        }
                        if q > 0 {
                            let sign = if p % 2 == 0 { 1 } else { -1 };
                            for &(r, v) in other.boundaries[q].column(j) {
                                col.push((offsets[n - 1][p] + i * other.dim(q - 1) + r, sign * v));
                            }
                        }
                        cols.push(col);
                    }
                }
            }
            let rows = if n == 0 { 0 } else { labels.last().map_or(0, |l: &Vec<String>| l.len()) };
            labels.push(l);
            boundaries.push(SparseMatrix::from_columns(rows, cols));
        }
        Ok(ChainComplex { labels, boundaries })
    }

    /// Line-based serialization: `degree d n`, `basis d i label`,
    /// `boundary d row col value`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for d in 0..self.len() {
            let _ = writeln!(out, "degree {d} {}", self.dim(d));
            for (i, l) in self.labels[d].iter().enumerate() {
                let _ = writeln!(out, "basis {d} {i} {l}");
            }
        }
        for d in 1..self.len() {
            for (r, c, v) in self.boundaries[d].triplets() {
                let _ = writeln!(out, "boundary {d} {r} {c} {v}");
            }
        }
        out
    }

    /// Parses [`to_text`](Self::to_text) output and re-checks `d o d = 0`.
    pub fn from_text(text: &str) -> Result<ChainComplex> {
        let mut labels: Vec<Vec<String>> = Vec::new();
        let mut entries: Vec<Vec<(usize, usize, i64)>> = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let err = |m: &str| Error::Parse { line, message: m.to_string() };
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let mut parts = t.splitn(4, ' ');
            let kw = parts.next().unwrap_or_default();
            let num = |s: Option<&str>| -> Result<usize> {
                s.and_then(|x| x.parse().ok()).ok_or_else(|| err("expected a number"))
            };
            match kw {
                "degree" => {
                    let d = num(parts.next())?;
                    let size = num(parts.next())?;
                    if d != labels.len() {
                        return Err(err("degrees must be listed in order"));
                    }
                    labels.push(vec![String::new(); size]);
                    entries.push(Vec::new());
                }
                "basis" => {
                    let d = num(parts.next())?;
                    let i = num(parts.next())?;
                    let slot = labels
                        .get_mut(d)
                        .and_then(|l| l.get_mut(i))
                        .ok_or_else(|| err("basis index out of range"))?;
                    *slot = parts.next().unwrap_or_default().to_string();
                }
                "boundary" => {
                    let rest: Vec<&str> = t.split_whitespace().skip(1).collect();
                    let [d, r, c, v] = rest.as_slice() else {
                        return Err(err("expected boundary d row col value"));
                    };
                    let d: usize = d.parse().map_err(|_| err("bad degree"))?;
                    let r: usize = r.parse().map_err(|_| err("bad row"))?;
                    let c: usize = c.parse().map_err(|_| err("bad column"))?;
                    let v: i64 = v.parse().map_err(|_| err("bad value"))?;
                    if d == 0 || d >= labels.len() || r >= labels[d - 1].len() || c >= labels[d].len() {
                        return Err(err("boundary entry out of range"));
                    }
                    entries[d].push((r, c, v));
                }
                _ => return Err(err("unknown keyword")),
            }
        }
        let boundaries = (0..labels.len())
            .map(|d| {
                let rows = if d == 0 { 0 } else { labels[d - 1].len() };
                SparseMatrix::from_triplets(rows, labels[d].len(), &entries[d])
            })
            .collect::<Result<Vec<_>>>()?;
        ChainComplex::from_parts(labels, boundaries)
    }
}

/// A degree-preserving map of chain complexes commuting with boundaries.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: Arc<ChainComplex>,
    target: Arc<ChainComplex>,
    matrices: Vec<SparseMatrix>,
}

impl PartialEq for ChainMap {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.matrices == other.matrices
    }
}

impl ChainMap {
    /// Builds a chain map, checking shapes and `d f = f d`.
    pub fn new(
        source: Arc<ChainComplex>,
        target: Arc<ChainComplex>,
        matrices: Vec<SparseMatrix>,
    ) -> Result<Self> {
        let f = Self::from_parts_unchecked(source, target, matrices);
        f.check()?;
        Ok(f)
    }

    pub fn from_parts_unchecked(
        source: Arc<ChainComplex>,
        target: Arc<ChainComplex>,
        matrices: Vec<SparseMatrix>,
    ) -> Self {
        ChainMap { source, target, matrices }
    }

    pub fn identity(c: Arc<ChainComplex>) -> Self {
        let matrices = (0..c.len()).map(|d| SparseMatrix::identity(c.dim(d))).collect();
        ChainMap { source: c.clone(), target: c, matrices }
    }

    pub fn zero(source: Arc<ChainComplex>, target: Arc<ChainComplex>) -> Self {
        let matrices = (0..source.len())
            .map(|d| SparseMatrix::zeros(target.dim(d), source.dim(d)))
            .collect();
        ChainMap { source, target, matrices }
    }

    pub fn source(&self) -> &Arc<ChainComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ChainComplex> {
        &self.target
    }

    /// Matrix of `f_d`, of shape `target.dim(d) x source.dim(d)`.
    pub fn matrix(&self, d: usize) -> &SparseMatrix {
        &self.matrices[d]
    }

    /// Checks shapes and commutation with the boundaries.
    pub fn check(&self) -> Result<()> {
        if self.matrices.len() != self.source.len() {
            return Err(Error::NotAChainMap("one matrix per source degree expected".into()));
        }
        for d in 0..self.source.len() {
            let m = &self.matrices[d];
            if m.ncols() != self.source.dim(d) || m.nrows() != self.target.dim(d) {
                return Err(Error::NotAChainMap(format!("matrix in degree {d} has the wrong shape")));
            }
            if d == 0 {
                continue;
            }
            let lhs = if d < self.target.len() {
                self.target.boundary(d).mul(m)?
            } else {
                SparseMatrix::zeros(self.target.dim(d - 1), self.source.dim(d))
            };
            let rhs = self.matrices[d - 1].mul(self.source.boundary(d))?;
            if lhs != rhs {
                return Err(Error::NotAChainMap(format!("fails to commute with d in degree {d}")));
            }
        }
        Ok(())
    }

    /// `next o self`.
    pub fn then(&self, next: &ChainMap) -> Result<ChainMap> {
        if !Arc::ptr_eq(&self.target, &next.source) && self.target != next.source {
            return Err(Error::NotAChainMap("composition of incompatible maps".into()));
        }
        let matrices = (0..self.source.len())
            .map(|d| {
                if d < next.matrices.len() {
                    next.matrices[d].mul(&self.matrices[d])
                } else {
                    Ok(SparseMatrix::zeros(next.target.dim(d), self.source.dim(d)))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ChainMap { source: self.source.clone(), target: next.target.clone(), matrices })
    }

    /// The mapping cone: `Cone_n = X_(n-1) (+) Y_n` with
    /// `d(x, y) = (-dx, f x + dy)`.
    pub fn mapping_cone(&self) -> ChainComplex {
        let x = &*self.source;
        let y = &*self.target;
        let len = (x.len() + 1).max(y.len());
        let mut labels = Vec::with_capacity(len);
        let mut boundaries = Vec::with_capacity(len);
        for n in 0..len {
            let xn1 = if n == 0 { 0 } else { x.dim(n - 1) };
            let mut l: Vec<String> = if n == 0 {
                Vec::new()
            } else {
                x.labels(n - 1).iter().map(|s| format!("cone({s})")).collect()
            };
            l.extend(y.labels(n).iter().cloned());
            labels.push(l);
            if n == 0 {
                boundaries.push(SparseMatrix::zeros(0, y.dim(0)));
                continue;
            }
            let xn2 = if n >= 2 { x.dim(n - 2) } else { 0 };
            let neg_dx = (n >= 2 && n - 1 < x.len()).then(|| x.boundary(n - 1).neg());
            let f = self.matrices.get(n - 1);
            let dy = (n < y.len()).then(|| y.boundary(n));
            boundaries.push(SparseMatrix::blocks(
                (xn2, y.dim(n - 1)),
                (xn1, y.dim(n)),
                neg_dx.as_ref(),
                None,
                f,
                dy,
            ));
        }
        ChainComplex { labels, boundaries }
    }

    /// `f (x) g : A (x) C -> B (x) D`, between freshly built tensor products.
    pub fn tensor(&self, g: &ChainMap) -> Result<ChainMap> {
        let src = Arc::new(self.source.tensor(&g.source)?);
        let tgt = Arc::new(self.target.tensor(&g.target)?);
        let so = self.source.tensor_offsets(&g.source);
        let to = self.target.tensor_offsets(&g.target);
        let mut matrices = Vec::with_capacity(src.len());
        for n in 0..src.len() {
            let mut cols = Vec::with_capacity(src.dim(n));
            for p in 0..=n.min(self.source.len().saturating_sub(1)) {
                let q = n - p;
                if q >= g.source.len() {
                    continue;
                }
                debug_assert_eq!(cols.len(), so[n][p]);
                for i in 0..self.source.dim(p) {
                    for j in 0..g.source.dim(q) {
                        let mut col = Vec::new();
                        for &(a, u) in self.matrices[p].column(i) {
                            for &(b, v) in g.matrices[q].column(j) {
                                let w = u.checked_mul(v).ok_or(Error::Overflow("tensor of maps"))?;
                                col.push((to[n][p] + a * g.target.dim(q) + b, w));
                            }
                        }
                        cols.push(col);
                    }
                }
            }
            matrices.push(SparseMatrix::from_columns(tgt.dim(n), cols));
        }
        ChainMap::new(src, tgt, matrices)
    }
}
