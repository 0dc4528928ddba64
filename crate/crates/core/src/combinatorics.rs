//! Index tuples, representative heights on the line, and the induced
//! orderings of particles.
//!
//! An index tuple `(i_2, ..., i_k)` has odd entries with `1 <= i_m <= 2m-1`;
//! `i_m = 2a + 1` places particle `m` above exactly `a` of the particles
//! `1..m-1`. There are `k!` tuples, in bijection with the orderings of `k`
//! points on the line.

use std::fmt;

use num_rational::Ratio;
use num_traits::Signed;

use crate::{Error, Result};

/// An element of the index set of size `k!`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexTuple(Vec<usize>);

impl IndexTuple {
    /// Validates parity and range: entry `m` (for particle `m >= 2`) must be
    /// odd and at most `2m - 1`.
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        for (pos, &e) in entries.iter().enumerate() {
            let m = pos + 2;
            if e % 2 == 0 || e > 2 * m - 1 {
                return Err(Error::InvalidArgument(format!(
                    "entry {e} for particle {m} must be odd and in 1..={}",
                    2 * m - 1
                )));
            }
        }
        Ok(IndexTuple(entries))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// Number of particles.
    pub fn k(&self) -> usize {
        self.0.len() + 1
    }

    /// The tuple extended by one more entry.
    pub fn extend(&self, entry: usize) -> Result<Self> {
        let mut e = self.0.clone();
        e.push(entry);
        Self::new(e)
    }

    /// The tuple without its last entry.
    pub fn prefix(&self) -> Option<Self> {
        let (_, rest) = self.0.split_last()?;
        Some(IndexTuple(rest.to_vec()))
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All index tuples for `k` particles, in lexicographic order.
pub fn enumerate_index_tuples(k: usize) -> Result<Vec<IndexTuple>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let mut out = vec![Vec::new()];
    for m in 2..=k {
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                (0..m).map(move |a| {
                    let mut t = t.clone();
                    t.push(2 * a + 1);
                    t
                })
            })
            .collect();
    }
    Ok(out.into_iter().map(IndexTuple).collect())
}

/// Heights `t_1, ..., t_k` of `k` distinct points on the line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeightVector(Vec<Ratio<i64>>);

impl HeightVector {
    /// Checks `t_1 = 0`, pairwise distinctness and `|t_m| <= m - 1`.
    pub fn new(t: Vec<Ratio<i64>>) -> Result<Self> {
        if t.first().is_some_and(|t1| *t1 != Ratio::from_integer(0)) {
            return Err(Error::InvalidArgument("the first height must be 0".into()));
        }
        for (i, x) in t.iter().enumerate() {
            let bound = Ratio::from_integer(i as i64);
            if x.abs() > bound {
                return Err(Error::InvalidArgument(format!(
                    "height {x} of particle {} exceeds {bound}",
                    i + 1
                )));
            }
            if t[..i].contains(x) {
                return Err(Error::InvalidArgument(format!("height {x} repeated")));
            }
        }
        Ok(HeightVector(t))
    }

    pub fn values(&self) -> &[Ratio<i64>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Particles (1-based) sorted by increasing height.
    pub fn order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (1..=self.0.len()).collect();
        idx.sort_by(|&a, &b| self.0[a - 1].cmp(&self.0[b - 1]));
        idx
    }
}

impl fmt::Display for HeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Ratio::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The representative heights of an index tuple.
///
/// `t_1 = 0`; particle `m + 1` with entry `2a + 1` goes to `-m` when
/// `a = 0`, to `+m` when `a = m`, and otherwise to the midpoint between the
/// `a`-th and `(a+1)`-th lowest of the heights already placed.
pub fn heights(i: &IndexTuple) -> Result<HeightVector> {
    let i = IndexTuple::new(i.0.clone())?;
    let mut t = vec![Ratio::from_integer(0i64)];
    for (pos, &e) in i.0.iter().enumerate() {
        let m = pos + 1; // particles already placed
        let a = (e - 1) / 2;
        let next = if a == 0 {
            Ratio::from_integer(-(m as i64))
        } else if a == m {
            Ratio::from_integer(m as i64)
        } else {
            let mut sorted = t.clone();
            sorted.sort();
            (sorted[a - 1] + sorted[a]) / 2
        };
        t.push(next);
    }
    HeightVector::new(t)
}

/// A permutation `(j_1, ..., j_k)` listing particles by increasing height.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankSequence(Vec<usize>);

impl RankSequence {
    /// Checks that `j` is a permutation of `1..=k`.
    pub fn new(j: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; j.len()];
        for &x in &j {
            if x == 0 || x > j.len() || std::mem::replace(&mut seen[x - 1], true) {
                return Err(Error::InvalidArgument(format!("{j:?} is not a permutation")));
            }
        }
        Ok(RankSequence(j))
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    /// The particle of rank `p` (1-based).
    pub fn at(&self, p: usize) -> usize {
        self.0[p - 1]
    }

    /// The rank (1-based) of particle `j`.
    pub fn rank_of(&self, j: usize) -> usize {
        self.0.iter().position(|&x| x == j).expect("particle present") + 1
    }

    /// Whether the heights increase along this sequence.
    pub fn consistent_with(&self, h: &HeightVector) -> bool {
        self.0.len() == h.len() && self.0.windows(2).all(|w| h.0[w[0] - 1] < h.0[w[1] - 1])
    }
}

impl fmt::Display for RankSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The particles of an index tuple ordered by height.
pub fn ranks(i: &IndexTuple) -> Result<RankSequence> {
    RankSequence::new(heights(i)?.order())
}

/// The transposition of `p` and `p + 1` on `{1, ..., alpha + 1}`, as the
/// list of images of `1, ..., alpha + 1`.
///
/// When a new particle crosses the particle of rank `p` from below, its
/// rank moves from `p` to `p + 1`. The orderings on the two sides of the
/// wall differ by this relabeling of rank positions.
pub fn wall_relabel(p: usize, alpha: usize) -> Result<Vec<usize>> {
    if p == 0 || p > alpha {
        return Err(Error::InvalidArgument(format!("wall position {p} outside 1..={alpha}")));
    }
    let mut v: Vec<usize> = (1..=alpha + 1).collect();
    v.swap(p - 1, p);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    fn tuple(e: &[usize]) -> IndexTuple {
        IndexTuple::new(e.to_vec()).unwrap()
    }

    #[test]
    fn small_index_sets() {
        assert_eq!(enumerate_index_tuples(1).unwrap(), vec![tuple(&[])]);
        assert_eq!(enumerate_index_tuples(2).unwrap(), vec![tuple(&[1]), tuple(&[3])]);
        assert_eq!(enumerate_index_tuples(5).unwrap().len(), 120);
        assert!(enumerate_index_tuples(0).is_err());
    }

    #[test]
    fn tuple_validation() {
        assert!(IndexTuple::new(vec![2]).is_err());
        assert!(IndexTuple::new(vec![5]).is_err());
        assert!(IndexTuple::new(vec![3, 5]).is_ok());
        assert!(IndexTuple::new(vec![3, 7]).is_err());
    }

    #[test]
    fn height_examples() {
        assert_eq!(heights(&tuple(&[1])).unwrap().values(), &[r(0, 1), r(-1, 1)]);
        assert_eq!(heights(&tuple(&[3])).unwrap().values(), &[r(0, 1), r(1, 1)]);
        assert_eq!(heights(&tuple(&[1, 5])).unwrap().values(), &[r(0, 1), r(-1, 1), r(2, 1)]);
        assert_eq!(heights(&tuple(&[3, 3])).unwrap().values(), &[r(0, 1), r(1, 1), r(1, 2)]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ranks(&tuple(&[1])).unwrap().values(), &[2, 1]);
        assert_eq!(ranks(&tuple(&[3])).unwrap().values(), &[1, 2]);
        assert_eq!(ranks(&tuple(&[1, 1])).unwrap().values(), &[3, 2, 1]);
    }

    #[test]
    fn wall_relabel_examples() {
        assert_eq!(wall_relabel(1, 2).unwrap(), vec![2, 1, 3]);
        let w = wall_relabel(2, 4).unwrap();
        assert_eq!(w[3], 4);
        let twice: Vec<usize> = w.iter().map(|&x| w[x - 1]).collect();
        assert_eq!(twice, vec![1, 2, 3, 4, 5]);
        assert!(wall_relabel(3, 2).is_err());
        assert!(wall_relabel(0, 2).is_err());
    }

    #[test]
    fn height_vector_invariants_are_checked() {
        assert!(HeightVector::new(vec![r(0, 1), r(2, 1)]).is_err());
        assert!(HeightVector::new(vec![r(0, 1), r(0, 1)]).is_err());
        assert!(HeightVector::new(vec![r(1, 2)]).is_err());
        assert!(RankSequence::new(vec![1, 1]).is_err());
    }

    fn arb_tuple() -> impl Strategy<Value = IndexTuple> {
        (1usize..=7).prop_flat_map(|k| {
            let parts: Vec<_> = (2..=k).map(|m| (0..m).prop_map(|a| 2 * a + 1).boxed()).collect();
            parts.prop_map(|e| IndexTuple::new(e).unwrap())
        })
    }

    proptest! {
        #[test]
        fn extension_restricts(i in arb_tuple(), a in 0usize..8) {
            let a = a % (i.k() + 1);
            let ext = i.extend(2 * a + 1).unwrap();
            let h = heights(&ext).unwrap();
            let base = heights(&i).unwrap();
            prop_assert_eq!(&h.values()[..i.k()], base.values());
            let before = ranks(&i).unwrap();
            let after = ranks(&ext).unwrap();
            prop_assert_eq!(after.at(a + 1), ext.k());
            let kept: Vec<usize> = after.values().iter().copied().filter(|&j| j != ext.k()).collect();
            prop_assert_eq!(kept.as_slice(), before.values());
            prop_assert!(after.consistent_with(&h));
        }

        #[test]
        fn prefix_inverts_extend(i in arb_tuple(), a in 0usize..8) {
            let a = a % (i.k() + 1);
            prop_assert_eq!(i.extend(2 * a + 1).unwrap().prefix().unwrap(), i);
        }
    }
}
