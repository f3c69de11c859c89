//! Exact coefficient rings: `Z`, the `p`-local rationals `Z_(p)`, and `F_p`, with dense
//! matrices and rank computations over them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Prime;

/// Which ring a coefficient lives in. Two values can only be combined when tags agree.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RingTag {
    Integers,
    LocalRationals(Prime),
    PrimeField(Prime),
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Integers => write!(f, "Z"),
            RingTag::LocalRationals(p) => write!(f, "Z_({p})"),
            RingTag::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

pub trait Ring: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn tag(&self) -> RingTag;
    fn zero(&self) -> Self::Elem;
    fn from_int(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Inverse in the ring itself, `None` for non-units.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn render(&self, a: &Self::Elem) -> String;

    /// Pivot columns of a column echelon sweep, computed over the fraction field.
    /// The rank of `m` is the length of the result.
    fn pivot_columns(&self, m: &Mat<Self>) -> Vec<usize>;

    fn one(&self) -> Self::Elem {
        self.from_int(1)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }
}

/// The integers.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Integers;

/// Rationals whose denominators are prime to `p`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct LocalRationals {
    p: Prime,
}

/// The prime field `F_p`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: Prime,
}

impl LocalRationals {
    pub fn new(p: Prime) -> Self {
        LocalRationals { p }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    /// `num/den` as a `p`-local number; fails when the reduced denominator is divisible by `p`.
    pub fn ratio(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        if den.is_zero() {
            return Err(Error::NotInvertible("0".into()));
        }
        let q = BigRational::new(num.clone(), den.clone());
        self.check(&q)?;
        Ok(q)
    }

    pub fn is_local(&self, q: &BigRational) -> bool {
        !(q.denom() % BigInt::from(self.p.get())).is_zero()
    }

    fn check(&self, q: &BigRational) -> Result<()> {
        if self.is_local(q) {
            Ok(())
        } else {
            Err(Error::NotInvertible(format!(
                "denominator of {q} at p = {}",
                self.p
            )))
        }
    }

    /// Reduction `Z_(p) -> F_p`.
    pub fn reduce(&self, q: &BigRational) -> u32 {
        let p = BigInt::from(self.p.get());
        let num = q.numer().mod_floor(&p).to_u32().expect("residue");
        let den = q.denom().mod_floor(&p).to_u8().expect("residue");
        self.p.mul(num as u8, self.p.inv(den)) as u32
    }
}

impl PrimeField {
    pub fn new(p: Prime) -> Self {
        PrimeField { p }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }
}

impl Ring for Integers {
    type Elem = BigInt;

    fn tag(&self) -> RingTag {
        RingTag::Integers
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn from_int(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn from_bigint(&self, v: &BigInt) -> BigInt {
        v.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        (a.abs().is_one()).then(|| a.clone())
    }
    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn pivot_columns(&self, m: &Mat<Self>) -> Vec<usize> {
        bareiss_pivots(m.rows, m.cols, m.data.clone())
    }
    fn add_assign(&self, a: &mut BigInt, b: &BigInt) {
        *a += b;
    }
}

impl Ring for LocalRationals {
    type Elem = BigRational;

    fn tag(&self) -> RingTag {
        RingTag::LocalRationals(self.p)
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn from_int(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        let s = a + b;
        debug_assert!(self.is_local(&s));
        s
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        let s = a * b;
        debug_assert!(self.is_local(&s));
        s
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            return None;
        }
        let r = a.recip();
        self.is_local(&r).then_some(r)
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn pivot_columns(&self, m: &Mat<Self>) -> Vec<usize> {
        // clear denominators row by row, then eliminate fraction-free
        let mut data = Vec::with_capacity(m.data.len());
        for r in 0..m.rows {
            let row = &m.data[r * m.cols..(r + 1) * m.cols];
            let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            data.extend(row.iter().map(|q| q.numer() * (&lcm / q.denom())));
        }
        bareiss_pivots(m.rows, m.cols, data)
    }
    fn add_assign(&self, a: &mut BigRational, b: &BigRational) {
        *a += b;
    }
}

impl Ring for PrimeField {
    type Elem = u32;

    fn tag(&self) -> RingTag {
        RingTag::PrimeField(self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn from_int(&self, v: i64) -> u32 {
        self.p.reduce(v) as u32
    }
    fn from_bigint(&self, v: &BigInt) -> u32 {
        v.mod_floor(&BigInt::from(self.p.get()))
            .to_u32()
            .expect("residue")
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        (a + b) % self.p.get()
    }
    fn neg(&self, a: &u32) -> u32 {
        (self.p.get() - a) % self.p.get()
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (a * b) % self.p.get()
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        (*a != 0).then(|| self.p.inv(*a as u8) as u32)
    }
    fn render(&self, a: &u32) -> String {
        a.to_string()
    }
    fn pivot_columns(&self, m: &Mat<Self>) -> Vec<usize> {
        let p = self.p.get();
        let mut data = m.data.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == rows {
                break;
            }
            let Some(pr) = (row..rows).find(|&r| data[r * cols + col] != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..cols {
                    data.swap(pr * cols + c, row * cols + c);
                }
            }
            let inv = self.p.inv(data[row * cols + col] as u8) as u32;
            for r in row + 1..rows {
                let f = data[r * cols + col] * inv % p;
                if f != 0 {
                    for c in col..cols {
                        data[r * cols + c] =
                            (data[r * cols + c] + p * p - f * data[row * cols + c]) % p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }
}

/// Fraction-free Gaussian elimination; returns pivot columns (hence the rank over `Q`).
///
/// Each pivot step multiplies by the current pivot and divides exactly by the previous
/// one, which keeps entries equal to minors of the input.
fn bareiss_pivots(rows: usize, cols: usize, mut data: Vec<BigInt>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        // smallest nonzero pivot in this column keeps entries small
        let Some(pr) = (row..rows)
            .filter(|&r| !data[r * cols + col].is_zero())
            .min_by_key(|&r| data[r * cols + col].magnitude().bits())
        else {
            continue;
        };
        if pr != row {
            for c in 0..cols {
                data.swap(pr * cols + c, row * cols + c);
            }
        }
        let pivot = data[row * cols + col].clone();
        for r in row + 1..rows {
            let f = data[r * cols + col].clone();
            for c in col..cols {
                let v = &pivot * &data[r * cols + c] - &f * &data[row * cols + c];
                data[r * cols + c] = v / &prev;
            }
        }
        prev = pivot;
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// A dense matrix over a [`Ring`].
#[derive(Clone, Debug)]
pub struct Mat<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    data: Vec<R::Elem>,
}

impl<R: Ring> PartialEq for Mat<R> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<R: Ring> Mat<R> {
    pub fn zeros(ring: &R, rows: usize, cols: usize) -> Self {
        Mat {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    pub fn from_fn(
        ring: &R,
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> R::Elem,
    ) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Mat {
            ring: ring.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(ring: &R, dim: usize, columns: &[Vec<R::Elem>]) -> Self {
        Self::from_fn(ring, dim, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &R::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: R::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &R::Elem) {
        let k = r * self.cols + c;
        self.ring.add_assign(&mut self.data[k], v);
    }

    pub fn column(&self, c: usize) -> Vec<R::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.ring.is_zero(x))
    }

    pub fn mul(&self, other: &Mat<R>) -> Result<Mat<R>> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ring = &self.ring;
        let mut out = Mat::zeros(ring, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if ring.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !ring.is_zero(b) {
                        let prod = ring.mul(a, b);
                        out.add_at(r, c, &prod);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Mat<R>) -> Result<Mat<R>> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("matrix sum of different shapes".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Ok(Mat {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &Mat<R>) -> Result<Mat<R>> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("matrix difference of different shapes".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.ring.sub(a, b))
            .collect();
        Ok(Mat {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, s: &R::Elem) -> Mat<R> {
        let data = self.data.iter().map(|a| self.ring.mul(a, s)).collect();
        Mat {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn transpose(&self) -> Mat<R> {
        Mat::from_fn(&self.ring, self.cols, self.rows, |r, c| {
            self.get(c, r).clone()
        })
    }

    pub fn apply(&self, v: &[R::Elem]) -> Vec<R::Elem> {
        let ring = &self.ring;
        (0..self.rows)
            .map(|r| {
                let mut acc = ring.zero();
                for (c, x) in v.iter().enumerate() {
                    let a = self.get(r, c);
                    if !ring.is_zero(a) && !ring.is_zero(x) {
                        ring.add_assign(&mut acc, &ring.mul(a, x));
                    }
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Mat<R>) -> Result<Mat<R>> {
        if self.rows != other.rows {
            return Err(Error::Shape("hstack row mismatch".into()));
        }
        let cols = self.cols + other.cols;
        Ok(Mat::from_fn(&self.ring, self.rows, cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        }))
    }

    /// Rank over the fraction field of the coefficient ring.
    pub fn rank(&self) -> usize {
        self.pivot_columns().len()
    }

    /// Indices of a maximal set of linearly independent columns, leftmost first.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.ring.pivot_columns(self)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kronecker(&self, other: &Mat<R>) -> Mat<R> {
        let ring = &self.ring;
        Mat::from_fn(
            ring,
            self.rows * other.rows,
            self.cols * other.cols,
            |r, c| {
                ring.mul(
                    self.get(r / other.rows, c / other.cols),
                    other.get(r % other.rows, c % other.cols),
                )
            },
        )
    }

    pub fn render(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.ring.render(self.get(r, c)))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u32) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn local_rationals_reject_p_in_denominator() {
        let r = LocalRationals::new(p(3));
        assert!(r.ratio(&BigInt::from(1), &BigInt::from(16)).is_ok());
        assert!(r.ratio(&BigInt::from(1), &BigInt::from(6)).is_err());
        // 3/6 = 1/2 is local after reduction
        assert!(r.ratio(&BigInt::from(3), &BigInt::from(6)).is_ok());
        assert!(r.inv(&r.from_int(3)).is_none());
        assert_eq!(
            r.inv(&r.from_int(2)),
            Some(BigRational::new(1.into(), 2.into()))
        );
    }

    #[test]
    fn reduction_mod_p() {
        let r = LocalRationals::new(p(5));
        let q = r.ratio(&BigInt::from(3), &BigInt::from(4)).unwrap();
        // 3 * 4^{-1} = 3 * 4 = 12 = 2 mod 5
        assert_eq!(r.reduce(&q), 2);
        assert_eq!(r.reduce(&r.from_int(-1)), 4);
    }

    #[test]
    fn ranks_over_each_ring() {
        let rows = [[1i64, 2, 3], [2, 4, 6], [1, 0, 1]];
        let z = Mat::from_fn(&Integers, 3, 3, |r, c| BigInt::from(rows[r][c]));
        assert_eq!(z.rank(), 2);
        let q = Mat::from_fn(&LocalRationals::new(p(2)), 3, 3, |r, c| {
            BigRational::new(rows[r][c].into(), 3.into())
        });
        assert_eq!(q.rank(), 2);
        // mod 2 the middle row vanishes and the outer rows agree
        let f = PrimeField::new(p(2));
        let m2 = Mat::from_fn(&f, 3, 3, |r, c| f.from_int(rows[r][c]));
        assert_eq!(m2.rank(), 1);
        // mod 3 a 2x2 minor vanishes: [[1,2],[2,1]] has det -3
        let f3 = PrimeField::new(p(3));
        let m3 = Mat::from_fn(&f3, 2, 2, |r, c| f3.from_int([[1, 2], [2, 1]][r][c]));
        assert_eq!(m3.rank(), 1);
    }

    #[test]
    fn pivot_columns_pick_independent_columns() {
        let cols = [[1i64, 0], [2, 0], [0, 1]];
        let m = Mat::from_fn(&Integers, 2, 3, |r, c| BigInt::from(cols[c][r]));
        assert_eq!(m.pivot_columns(), vec![0, 2]);
    }
}
