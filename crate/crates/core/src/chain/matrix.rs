//! Column-major sparse integer matrices with overflow-checked arithmetic.

use std::fmt;

use crate::{Error, Result};

/// A sparse `rows x cols` integer matrix. Each column is a list of
/// `(row, value)` pairs, strictly increasing in `row`, with nonzero values.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { rows: n, cols: (0..n).map(|i| vec![(i, 1)]).collect() }
    }

    /// Builds a matrix from columns. Entries are sorted, equal rows are
    /// summed, and zeros are dropped.
    pub fn from_columns(rows: usize, cols: Vec<Vec<(usize, i64)>>) -> Self {
        let cols = cols.into_iter().map(normalize).collect::<Vec<_>>();
        debug_assert!(cols.iter().flatten().all(|&(r, _)| r < rows));
        SparseMatrix { rows, cols }
    }

    /// Builds a matrix from `(row, col, value)` triples.
    pub fn from_triplets(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> Result<Self> {
        let mut c = vec![Vec::new(); cols];
        for &(r, j, v) in entries {
            if r >= rows || j >= cols {
                return Err(Error::Shape(format!("entry ({r},{j}) outside {rows}x{cols}")));
            }
            c[j].push((r, v));
        }
        Ok(Self::from_columns(rows, c))
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let cols = (0..ncols)
            .map(|j| (0..nrows).filter(|&i| rows[i][j] != 0).map(|i| (i, rows[i][j])).collect())
            .collect();
        SparseMatrix { rows: nrows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vec<(usize, i64)>] {
        &self.cols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.cols[j]
            .binary_search_by_key(&i, |&(r, _)| r)
            .map_or(0, |k| self.cols[j][k].1)
    }

    /// Entries as `(row, col, value)`, column by column.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |&(i, v)| (i, j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.ncols()]; self.rows];
        for (i, j, v) in self.triplets() {
            out[i][j] = v;
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut cols = vec![Vec::new(); self.rows];
        for (i, j, v) in self.triplets() {
            cols[i].push((j, v));
        }
        SparseMatrix { rows: self.ncols(), cols }
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.ncols() != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.ncols(),
                other.rows,
                other.ncols()
            )));
        }
        let mut acc = vec![0i64; self.rows];
        let mut touched: Vec<usize> = Vec::new();
        let mut cols = Vec::with_capacity(other.ncols());
        for col in &other.cols {
            for &(k, b) in col {
                for &(i, a) in &self.cols[k] {
                    if acc[i] == 0 {
                        touched.push(i);
                    }
                    let p = a.checked_mul(b).ok_or(Error::Overflow("matrix product"))?;
                    acc[i] = acc[i].checked_add(p).ok_or(Error::Overflow("matrix product"))?;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let c: Vec<(usize, i64)> =
                touched.iter().filter(|&&i| acc[i] != 0).map(|&i| (i, acc[i])).collect();
            for &i in &touched {
                acc[i] = 0;
            }
            touched.clear();
            cols.push(c);
        }
        Ok(SparseMatrix { rows: self.rows, cols })
    }

    pub fn mul_vec(&self, x: &[i64]) -> Result<Vec<i64>> {
        if x.len() != self.ncols() {
            return Err(Error::Shape(format!("vector of length {} for {} columns", x.len(), self.ncols())));
        }
        let mut out = vec![0i64; self.rows];
        for (i, j, v) in self.triplets() {
            let p = v.checked_mul(x[j]).ok_or(Error::Overflow("matrix-vector product"))?;
            out[i] = out[i].checked_add(p).ok_or(Error::Overflow("matrix-vector product"))?;
        }
        Ok(out)
    }

    /// `self + sign * other`.
    pub fn add_scaled(&self, other: &SparseMatrix, sign: i64) -> Result<SparseMatrix> {
        if self.rows != other.rows || self.ncols() != other.ncols() {
            return Err(Error::Shape("adding matrices of different shapes".into()));
        }
        let mut cols = Vec::with_capacity(self.ncols());
        for (a, b) in self.cols.iter().zip(&other.cols) {
            let mut c = a.clone();
            for &(i, v) in b {
                let s = v.checked_mul(sign).ok_or(Error::Overflow("matrix sum"))?;
                c.push((i, s));
            }
            cols.push(checked_normalize(c)?);
        }
        Ok(SparseMatrix { rows: self.rows, cols })
    }

    pub fn neg(&self) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols.iter().map(|c| c.iter().map(|&(i, v)| (i, -v)).collect()).collect(),
        }
    }

    /// Block matrix `[[a, b], [c, d]]`; any block may be `None` (zero).
    pub fn blocks(
        rows: (usize, usize),
        cols: (usize, usize),
        a: Option<&SparseMatrix>,
        b: Option<&SparseMatrix>,
        c: Option<&SparseMatrix>,
        d: Option<&SparseMatrix>,
    ) -> SparseMatrix {
        let mut out = vec![Vec::new(); cols.0 + cols.1];
        let mut place = |m: Option<&SparseMatrix>, r0: usize, c0: usize| {
            if let Some(m) = m {
                for (i, j, v) in m.triplets() {
                    out[c0 + j].push((r0 + i, v));
                }
            }
        };
        place(a, 0, 0);
        place(c, rows.0, 0);
        place(b, 0, cols.0);
        place(d, rows.0, cols.0);
        SparseMatrix::from_columns(rows.0 + rows.1, out)
    }

    /// Kronecker product `self (x) other`: entry `((i,k),(j,l)) = a_ij b_kl`,
    /// pairs indexed row-major.
    pub fn kronecker(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        let mut cols = Vec::with_capacity(self.ncols() * other.ncols());
        for ca in &self.cols {
            for cb in &other.cols {
                let mut c = Vec::with_capacity(ca.len() * cb.len());
                for &(i, a) in ca {
                    for &(k, b) in cb {
                        let v = a.checked_mul(b).ok_or(Error::Overflow("kronecker product"))?;
                        c.push((i * other.rows + k, v));
                    }
                }
                cols.push(c);
            }
        }
        Ok(SparseMatrix { rows: self.rows * other.rows, cols })
    }

    /// Keeps the given rows and columns, renumbered in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut map = vec![usize::MAX; self.rows];
        for (new, &old) in rows.iter().enumerate() {
            map[old] = new;
        }
        let out = cols
            .iter()
            .map(|&j| {
                self.cols[j]
                    .iter()
                    .filter(|&&(i, _)| map[i] != usize::MAX)
                    .map(|&(i, v)| (map[i], v))
                    .collect()
            })
            .collect();
        SparseMatrix::from_columns(rows.len(), out)
    }
}

fn normalize(mut c: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    checked_normalize(std::mem::take(&mut c)).expect("entries fit in i64")
}

fn checked_normalize(mut c: Vec<(usize, i64)>) -> Result<Vec<(usize, i64)>> {
    c.sort_unstable_by_key(|&(i, _)| i);
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(c.len());
    for (i, v) in c {
        match out.last_mut() {
            Some((j, w)) if *j == i => {
                *w = w.checked_add(v).ok_or(Error::Overflow("matrix entry"))?;
            }
            _ => out.push((i, v)),
        }
    }
    out.retain(|&(_, v)| v != 0);
    Ok(out)
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix {}x{} ", self.rows, self.ncols())?;
        f.debug_list().entries(self.triplets()).finish()
    }
}
