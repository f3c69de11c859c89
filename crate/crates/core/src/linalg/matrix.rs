use std::fmt;

use smallvec::SmallVec;

use super::Prime;
use crate::error::{Error, Result};

type Entries = SmallVec<[u8; 16]>;

/// A dense matrix over `F_p`, entries stored row-major as reduced residues.
///
/// Equality, hashing and ordering go through the entry bytes, so matrices can key
/// group-algebra coefficients directly.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GfMatrix {
    rows: usize,
    cols: usize,
    p: Prime,
    entries: Entries,
}

/// Output of [`GfMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: GfMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl GfMatrix {
    /// Builds a matrix from row-major integer entries, reducing each mod `p`.
    pub fn new(p: Prime, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(GfMatrix {
            rows,
            cols,
            p,
            entries: entries.iter().map(|&v| p.reduce(v)).collect(),
        })
    }

    pub fn from_rows(p: Prime, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let flat: Vec<i64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::new(p, rows.len(), cols, &flat)
    }

    pub(crate) fn from_residues(p: Prime, rows: usize, cols: usize, entries: Entries) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        GfMatrix {
            rows,
            cols,
            p,
            entries,
        }
    }

    pub fn zero(p: Prime, rows: usize, cols: usize) -> Self {
        GfMatrix {
            rows,
            cols,
            p,
            entries: SmallVec::from_elem(0, rows * cols),
        }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// The permutation matrix sending `e_k` to `e_{perm[k]}`, so that
    /// `permutation(a∘b) = permutation(a)·permutation(b)`.
    pub fn permutation(p: Prime, perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zero(p, n, n);
        for (k, &image) in perm.iter().enumerate() {
            m.entries[image * n + k] = 1;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.entries[r * self.cols + c] = v % self.p.get() as u8;
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..self.cols).all(|c| self.get(r, c) == (r == c) as u8))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|r| (0..r.min(self.cols)).all(|c| self.get(r, c) == 0))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.entries[c * self.rows + r] = self.get(r, c);
            }
        }
        out
    }

    /// Matrix product; panics on incompatible shapes or primes.
    pub fn mul(&self, other: &GfMatrix) -> GfMatrix {
        assert_eq!(self.cols, other.rows, "incompatible shapes");
        assert_eq!(self.p, other.p, "mixed primes");
        let p = self.p.get();
        let mut entries: Entries = SmallVec::from_elem(0, self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = 0u32;
                for k in 0..self.cols {
                    acc += self.get(r, k) as u32 * other.get(k, c) as u32;
                }
                entries[r * other.cols + c] = (acc % p) as u8;
            }
        }
        GfMatrix {
            rows: self.rows,
            cols: other.cols,
            p: self.p,
            entries,
        }
    }

    pub fn checked_mul(&self, other: &GfMatrix) -> Result<GfMatrix> {
        if self.cols != other.rows || self.p != other.p {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul(other))
    }

    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols);
        let p = self.p.get();
        (0..self.rows)
            .map(|r| {
                let acc: u32 = (0..self.cols)
                    .map(|c| self.get(r, c) as u32 * v[c] as u32)
                    .sum();
                (acc % p) as u8
            })
            .collect()
    }

    /// Reduced row echelon form, rank and pivot columns.
    pub fn rref(&self) -> Rref {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = p.inv(m.get(row, col));
            for c in 0..m.cols {
                let v = p.mul(m.get(row, c), inv);
                m.entries[row * m.cols + c] = v;
            }
            for r in 0..m.rows {
                let f = m.get(r, col);
                if r != row && f != 0 {
                    for c in 0..m.cols {
                        let v = p.sub(m.get(r, c), p.mul(f, m.get(row, c)));
                        m.entries[r * m.cols + c] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref {
            matrix: m,
            rank: row,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<GfMatrix> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&GfMatrix::identity(self.p, n))?;
        let r = aug.rref();
        if r.pivots.iter().copied().take(n).ne(0..n) || r.rank < n {
            return Err(Error::Singular);
        }
        Ok(r.matrix.submatrix(0..n, n..2 * n))
    }

    /// Basis (as rows) of `{x : self·x = 0}`.
    pub fn null_space(&self) -> GfMatrix {
        let p = self.p;
        let r = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !r.pivots.contains(c)).collect();
        let mut basis = GfMatrix::zero(p, free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            basis.entries[k * self.cols + f] = 1;
            for (i, &pc) in r.pivots.iter().enumerate() {
                basis.entries[k * self.cols + pc] = p.neg(r.matrix.get(i, f));
            }
        }
        basis
    }

    pub fn hstack(&self, other: &GfMatrix) -> Result<GfMatrix> {
        if self.rows != other.rows {
            return Err(Error::Shape("hstack row mismatch".into()));
        }
        let cols = self.cols + other.cols;
        let mut out = GfMatrix::zero(self.p, self.rows, cols);
        for r in 0..self.rows {
            out.entries[r * cols..r * cols + self.cols].copy_from_slice(self.row(r));
            out.entries[r * cols + self.cols..(r + 1) * cols].copy_from_slice(other.row(r));
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &GfMatrix) -> Result<GfMatrix> {
        if self.cols != other.cols {
            return Err(Error::Shape("vstack column mismatch".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(GfMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            p: self.p,
            entries,
        })
    }

    pub fn submatrix(
        &self,
        rows: std::ops::Range<usize>,
        cols: std::ops::Range<usize>,
    ) -> GfMatrix {
        let (nr, nc) = (rows.len(), cols.len());
        let mut entries = SmallVec::with_capacity(nr * nc);
        for r in rows {
            for c in cols.clone() {
                entries.push(self.get(r, c));
            }
        }
        GfMatrix {
            rows: nr,
            cols: nc,
            p: self.p,
            entries,
        }
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Row operation `row[target] += factor * row[source]`.
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: u8) {
        let p = self.p;
        for c in 0..self.cols {
            let v = p.add(self.get(target, c), p.mul(factor, self.get(source, c)));
            self.entries[target * self.cols + c] = v;
        }
    }

    /// Column operation `col[target] += factor * col[source]`.
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, factor: u8) {
        let p = self.p;
        for r in 0..self.rows {
            let v = p.add(self.get(r, target), p.mul(factor, self.get(r, source)));
            self.entries[r * self.cols + target] = v;
        }
    }

    pub(crate) fn scale_col(&mut self, c: usize, factor: u8) {
        let p = self.p;
        for r in 0..self.rows {
            let v = p.mul(self.get(r, c), factor);
            self.entries[r * self.cols + c] = v;
        }
    }
}

/// The block-diagonal matrix `diag(a, b)`.
pub fn block_embed(a: &GfMatrix, b: &GfMatrix) -> Result<GfMatrix> {
    if !a.is_square() || !b.is_square() {
        return Err(Error::Shape("block_embed needs square blocks".into()));
    }
    block_diagonal(a, b)
}

/// Block-diagonal placement of arbitrary rectangular blocks.
pub fn block_diagonal(a: &GfMatrix, b: &GfMatrix) -> Result<GfMatrix> {
    if a.p != b.p {
        return Err(Error::Shape("blocks over different primes".into()));
    }
    let rows = a.rows + b.rows;
    let cols = a.cols + b.cols;
    let mut out = GfMatrix::zero(a.p, rows, cols);
    for r in 0..a.rows {
        for c in 0..a.cols {
            out.entries[r * cols + c] = a.get(r, c);
        }
    }
    for r in 0..b.rows {
        for c in 0..b.cols {
            out.entries[(a.rows + r) * cols + a.cols + c] = b.get(r, c);
        }
    }
    Ok(out)
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ";")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u32) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = GfMatrix::identity(p(2), 2);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);

        let z = GfMatrix::zero(p(3), 2, 2);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rank_one_over_f5() {
        // second row is twice the first
        let m = GfMatrix::from_rows(p(5), &[&[1, 2], &[2, 4]]).unwrap();
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(
            r.matrix,
            GfMatrix::from_rows(p(5), &[&[1, 2], &[0, 0]]).unwrap()
        );
    }

    #[test]
    fn inverse_round_trip() {
        let m = GfMatrix::from_rows(p(3), &[&[1, 2, 0], &[0, 1, 1], &[2, 0, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let singular = GfMatrix::from_rows(p(3), &[&[1, 2], &[2, 1]]).unwrap();
        assert!(matches!(singular.inverse(), Err(Error::Singular)));
    }

    #[test]
    fn null_space_is_annihilated() {
        let m = GfMatrix::from_rows(p(3), &[&[1, 1, 0, 2], &[0, 1, 2, 2]]).unwrap();
        let ns = m.null_space();
        assert_eq!(ns.rows(), 2);
        for r in 0..ns.rows() {
            assert!(m.apply(ns.row(r)).iter().all(|&v| v == 0));
        }
    }

    #[test]
    fn permutation_matrices_compose() {
        let a = [1, 2, 0];
        let b = [0, 2, 1];
        let ab: Vec<usize> = (0..3).map(|k| a[b[k]]).collect();
        let pa = GfMatrix::permutation(p(2), &a);
        let pb = GfMatrix::permutation(p(2), &b);
        assert_eq!(pa.mul(&pb), GfMatrix::permutation(p(2), &ab));
    }

    #[test]
    fn block_embed_examples() {
        let one = GfMatrix::identity(p(2), 1);
        assert_eq!(
            block_embed(&one, &one).unwrap(),
            GfMatrix::identity(p(2), 2)
        );
        let b = GfMatrix::from_rows(p(2), &[&[1, 1], &[0, 1]]).unwrap();
        let expect = GfMatrix::from_rows(p(2), &[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]]).unwrap();
        assert_eq!(block_embed(&one, &b).unwrap(), expect);
        let rect = GfMatrix::zero(p(2), 2, 1);
        assert!(block_embed(&one, &rect).is_err());
    }
}
