//! Sparse integer matrices and exact rank by fraction-free elimination.
//!
//! Elimination runs in `i64` with checked arithmetic and restarts over
//! `BigInt` as soon as any intermediate value overflows.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sparse integer matrix stored by columns; each column is sorted by row
/// index and holds no explicit zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets, summing duplicates.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, i64)>) -> Self {
        let mut acc: Vec<HashMap<usize, i64>> = vec![HashMap::new(); cols];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r}, {c}) outside a {rows}x{cols} matrix");
            *acc[c].entry(r).or_insert(0) += v;
        }
        let cols = acc
            .into_iter()
            .map(|m| {
                let mut col: Vec<(usize, i64)> = m.into_iter().filter(|&(_, v)| v != 0).collect();
                col.sort_unstable();
                col
            })
            .collect();
        SparseMatrix { rows, cols }
    }

    /// Builds a matrix from ready-made columns (unsorted entries and
    /// duplicates are allowed).
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        let cols = columns
            .into_iter()
            .map(|mut col| {
                col.sort_unstable_by_key(|&(r, _)| r);
                let mut out: Vec<(usize, i64)> = Vec::with_capacity(col.len());
                for (r, v) in col {
                    assert!(r < rows, "row {r} outside a matrix with {rows} rows");
                    match out.last_mut() {
                        Some((lr, lv)) if *lr == r => *lv += v,
                        _ => out.push((r, v)),
                    }
                }
                out.retain(|&(_, v)| v != 0);
                out
            })
            .collect();
        SparseMatrix { rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, c: usize) -> &[(usize, i64)] {
        &self.cols[c]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.cols[c]
            .binary_search_by_key(&r, |&(row, _)| row)
            .map(|i| self.cols[c][i].1)
            .unwrap_or(0)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = vec![Vec::new(); self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                t[r].push((c, v));
            }
        }
        SparseMatrix {
            rows: self.cols.len(),
            cols: t,
        }
    }

    /// `self * rhs`, accumulated in `i128`. Returns `None` if an entry of the
    /// product does not fit in an `i64`.
    pub fn mul(&self, rhs: &SparseMatrix) -> Option<SparseMatrix> {
        assert_eq!(self.cols(), rhs.rows, "dimension mismatch in matrix product");
        let mut cols = Vec::with_capacity(rhs.cols());
        for col in &rhs.cols {
            let mut acc: HashMap<usize, i128> = HashMap::new();
            for &(k, b) in col {
                for &(r, a) in &self.cols[k] {
                    *acc.entry(r).or_insert(0) += a as i128 * b as i128;
                }
            }
            let mut out = Vec::with_capacity(acc.len());
            for (r, v) in acc {
                if v != 0 {
                    out.push((r, i64::try_from(v).ok()?));
                }
            }
            out.sort_unstable();
            cols.push(out);
        }
        Some(SparseMatrix { rows: self.rows, cols })
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        let cols: Vec<Vec<(usize, i64)>> = self.cols.iter().filter(|c| !c.is_empty()).cloned().collect();
        match eliminate::<i64>(cols) {
            Some(r) => r,
            None => {
                let big = self
                    .cols
                    .iter()
                    .filter(|c| !c.is_empty())
                    .map(|c| c.iter().map(|&(r, v)| (r, BigInt::from(v))).collect())
                    .collect();
                eliminate::<BigInt>(big).expect("big-integer elimination cannot overflow")
            }
        }
    }
}

/// Integer-like scalars for elimination; `None` signals overflow.
trait Scalar: Clone + Sized {
    fn is_zero(&self) -> bool;
    fn mul_c(&self, other: &Self) -> Option<Self>;
    fn sub_c(&self, other: &Self) -> Option<Self>;
    fn gcd_c(&self, other: &Self) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl Scalar for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul_c(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn sub_c(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn gcd_c(&self, other: &Self) -> Self {
        // gcd of i64::MIN with itself overflows; treat that as a unit gcd
        if (*self == i64::MIN || *other == i64::MIN) && (*self == 0 || *other == 0 || self == other) {
            return 1;
        }
        self.gcd(other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
}

impl Scalar for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_c(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub_c(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn gcd_c(&self, other: &Self) -> Self {
        self.gcd(other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

type SparseVec<T> = Vec<(usize, T)>;

/// Incremental echelon form keyed by leading index; returns the rank, or
/// `None` on overflow.
fn eliminate<T: Scalar>(mut vectors: Vec<SparseVec<T>>) -> Option<usize> {
    vectors.sort_by_key(Vec::len);
    let mut pivots: HashMap<usize, SparseVec<T>> = HashMap::new();
    for mut v in vectors {
        while let Some(p) = v.first().and_then(|(lead, _)| pivots.get(lead)) {
            v = reduce(&v, p)?;
        }
        if let Some(&(lead, _)) = v.first() {
            pivots.insert(lead, v);
        }
    }
    Some(pivots.len())
}

/// `(p/g)·v − (a/g)·pivot` where `a`, `p` are the leading coefficients and
/// `g = gcd(a, p)`, followed by division by the content.
fn reduce<T: Scalar>(v: &SparseVec<T>, pivot: &SparseVec<T>) -> Option<SparseVec<T>> {
    let a = &v[0].1;
    let p = &pivot[0].1;
    let g = a.gcd_c(p);
    let (a, p) = (a.div_exact(&g), p.div_exact(&g));
    let mut out: SparseVec<T> = Vec::with_capacity(v.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < v.len() || j < pivot.len() {
        let take_v = j >= pivot.len() || (i < v.len() && v[i].0 < pivot[j].0);
        let take_p = i >= v.len() || (j < pivot.len() && pivot[j].0 < v[i].0);
        let (idx, val) = if take_v {
            let r = (v[i].0, v[i].1.mul_c(&p)?);
            i += 1;
            r
        } else if take_p {
            let zero = a.sub_c(&a)?;
            let r = (pivot[j].0, zero.sub_c(&pivot[j].1.mul_c(&a)?)?);
            j += 1;
            r
        } else {
            let r = (v[i].0, v[i].1.mul_c(&p)?.sub_c(&pivot[j].1.mul_c(&a)?)?);
            i += 1;
            j += 1;
            r
        };
        if !val.is_zero() {
            out.push((idx, val));
        }
    }
    if let Some((_, first)) = out.first() {
        let mut content = first.clone();
        for (_, x) in &out[1..] {
            if content.is_unit() {
                break;
            }
            content = content.gcd_c(x);
        }
        if !content.is_unit() && !content.is_zero() {
            for (_, x) in out.iter_mut() {
                *x = x.div_exact(&content);
            }
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        SparseMatrix::from_triplets(
            r,
            c,
            rows.iter()
                .enumerate()
                .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &v)| (i, j, v))),
        )
    }

    #[test]
    fn small_ranks() {
        assert_eq!(dense(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(dense(&[&[1, 2], &[3, 4]]).rank(), 2);
        assert_eq!(SparseMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(dense(&[&[0, 0, 1], &[0, 1, 1], &[1, 1, 1]]).rank(), 3);
    }

    #[test]
    fn rank_of_transpose_matches() {
        let m = dense(&[&[2, 4, 6, 8], &[1, 3, 5, 7], &[3, 7, 11, 15]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 3;
        let m = dense(&[&[big, big - 1, 7], &[big - 2, big, 3], &[5, 11, big]]);
        assert_eq!(m.rank(), 3);
        let m = dense(&[&[big, big - 1], &[2 * (big / 2), 2 * ((big - 1) / 2)]]);
        assert!(m.rank() >= 1);
    }

    #[test]
    fn product_and_lookup() {
        let a = dense(&[&[1, 1], &[0, 1]]);
        let b = dense(&[&[1, -1], &[0, 1]]);
        let p = a.mul(&b).unwrap();
        assert_eq!(p, dense(&[&[1, 0], &[0, 1]]));
        assert_eq!(p.get(1, 1), 1);
        assert_eq!(p.get(0, 1), 0);
    }
}
