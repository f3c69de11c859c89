//! Sparse integer matrices and their Smith invariant factors.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A column-sparse integer matrix; each column is sorted by row index with no zero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl SparseIntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Result<Self> {
        let cols = columns.len();
        let mut out = SparseIntMatrix::zero(rows, cols);
        for (c, column) in columns.into_iter().enumerate() {
            for (r, v) in column {
                if r >= rows {
                    return Err(Error::Shape(format!("row {r} outside {rows} rows")));
                }
                out.add_at(r, c, v);
            }
        }
        Ok(out)
    }

    pub fn from_triples(
        rows: usize,
        cols: usize,
        triples: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self> {
        let mut out = SparseIntMatrix::zero(rows, cols);
        for (r, c, v) in triples {
            if r >= rows || c >= cols {
                return Err(Error::Shape(format!(
                    "entry ({r}, {c}) outside {rows}×{cols}"
                )));
            }
            out.add_at(r, c, v);
        }
        Ok(out)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(usize, i64)] {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.columns[c]
            .binary_search_by_key(&r, |e| e.0)
            .map_or(0, |k| self.columns[c][k].1)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Nonzero entries in column-major order.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)))
    }

    fn add_at(&mut self, r: usize, c: usize, v: i64) {
        let col = &mut self.columns[c];
        match col.binary_search_by_key(&r, |e| e.0) {
            Ok(k) => {
                col[k].1 += v;
                if col[k].1 == 0 {
                    col.remove(k);
                }
            }
            Err(k) if v != 0 => col.insert(k, (r, v)),
            Err(_) => {}
        }
    }

    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = vec![0i64; self.rows];
        for (c, &x) in v.iter().enumerate() {
            if x != 0 {
                for &(r, a) in &self.columns[c] {
                    out[r] += a * x;
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "{}×{} times {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = SparseIntMatrix::zero(self.rows, other.cols);
        for (c, col) in other.columns.iter().enumerate() {
            for &(k, b) in col {
                for &(r, a) in &self.columns[k] {
                    out.add_at(r, c, a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (r, c, v) in self.triples() {
            out[r][c] = v;
        }
        out
    }

    /// Nonzero invariant factors, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        smith_invariants(self)
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form diagonal of `m`, zeros dropped.
///
/// Unit pivots are eliminated sparsely first, cheapest fill-in first; whatever is left is
/// reduced densely over big integers.
pub fn smith_invariants(m: &SparseIntMatrix) -> Vec<BigInt> {
    let mut rows: Vec<Vec<(usize, i64)>> = vec![Vec::new(); m.rows];
    for (r, c, v) in m.triples() {
        rows[r].push((c, v));
    }
    for row in &mut rows {
        row.sort_unstable();
    }
    let mut in_column: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols];
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            in_column[c].insert(r);
        }
    }
    let mut live_rows: BTreeSet<usize> = (0..m.rows).filter(|&r| !rows[r].is_empty()).collect();
    let mut units = 0usize;

    'pivoting: loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for &r in &live_rows {
            let len = rows[r].len();
            for &(c, v) in &rows[r] {
                if v.abs() == 1 {
                    let cost = (len - 1) * (in_column[c].len() - 1);
                    if best.is_none_or(|(b, _, _)| cost < b) {
                        best = Some((cost, r, c));
                    }
                }
            }
        }
        let Some((_, pr, pc)) = best else { break };
        let pivot_row = rows[pr].clone();
        let s = pivot_row.iter().find(|e| e.0 == pc).unwrap().1;
        let targets: Vec<usize> = in_column[pc].iter().copied().filter(|&r| r != pr).collect();
        let mut updates = Vec::with_capacity(targets.len());
        for &r in &targets {
            let a = rows[r].iter().find(|e| e.0 == pc).unwrap().1;
            match combine(&rows[r], &pivot_row, a * s) {
                Some(new_row) => updates.push((r, new_row)),
                None => break 'pivoting,
            }
        }
        for (r, new_row) in updates {
            for &(c, _) in &rows[r] {
                in_column[c].remove(&r);
            }
            for &(c, _) in &new_row {
                in_column[c].insert(r);
            }
            if new_row.is_empty() {
                live_rows.remove(&r);
            }
            rows[r] = new_row;
        }
        for &(c, _) in &pivot_row {
            in_column[c].remove(&pr);
        }
        rows[pr].clear();
        live_rows.remove(&pr);
        units += 1;
    }

    let live_cols: Vec<usize> = (0..m.cols).filter(|&c| !in_column[c].is_empty()).collect();
    let col_pos = |c: usize| live_cols.binary_search(&c).unwrap();
    let mut dense: Vec<Vec<BigInt>> = live_rows
        .iter()
        .map(|&r| {
            let mut row = vec![BigInt::zero(); live_cols.len()];
            for &(c, v) in &rows[r] {
                row[col_pos(c)] = BigInt::from(v);
            }
            row
        })
        .collect();
    let mut factors = vec![BigInt::one(); units];
    factors.extend(dense_smith(&mut dense));
    factors
}

/// `row - factor·pivot`, or `None` on overflow.
fn combine(row: &[(usize, i64)], pivot: &[(usize, i64)], factor: i64) -> Option<Vec<(usize, i64)>> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut a, mut b) = (0, 0);
    while a < row.len() || b < pivot.len() {
        let next = match (row.get(a), pivot.get(b)) {
            (Some(&(ca, va)), Some(&(cb, _))) if ca < cb => {
                a += 1;
                (ca, va)
            }
            (Some(&(ca, va)), Some(&(cb, vb))) if ca == cb => {
                a += 1;
                b += 1;
                (ca, va.checked_sub(factor.checked_mul(vb)?)?)
            }
            (_, Some(&(cb, vb))) => {
                b += 1;
                (cb, factor.checked_mul(vb)?.checked_neg()?)
            }
            (Some(&(ca, va)), None) => {
                a += 1;
                (ca, va)
            }
            (None, None) => unreachable!(),
        };
        if next.1 != 0 {
            out.push(next);
        }
    }
    Some(out)
}

fn dense_smith(a: &mut [Vec<BigInt>]) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..m.min(n) {
        let Some((r, c)) = smallest(a, t..m, t..n) else {
            break;
        };
        a.swap(t, r);
        swap_cols(a, t, c);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for k in t..n {
                        let d = &q * &a[t][k];
                        a[i][k] -= d;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let d = &q * &row[t];
                        row[j] -= d;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                // a remainder smaller than the pivot is left in its row or column
                if let Some((r, _)) = smallest(a, t + 1..m, t..t + 1) {
                    a.swap(t, r);
                }
                if let Some((_, c)) = smallest(a, t..t + 1, t + 1..n) {
                    if a[t][c].abs() < a[t][t].abs() || a[t][t].is_zero() {
                        swap_cols(a, t, c);
                    }
                }
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    for k in t..n {
                        let v = a[i][k].clone();
                        a[t][k] += v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

fn smallest(
    a: &[Vec<BigInt>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in rows {
        for c in cols.clone() {
            if !a[r][c].is_zero() && best.is_none_or(|(br, bc)| a[r][c].abs() < a[br][bc].abs()) {
                best = Some((r, c));
            }
        }
    }
    best
}

fn swap_cols(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> SparseIntMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let triples = rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (r, c, v)));
        SparseIntMatrix::from_triples(rows.len(), cols, triples).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diagonal_with_torsion() {
        assert_eq!(m(&[&[2, 0], &[0, 3]]).invariant_factors(), ints(&[1, 6]));
        assert_eq!(
            m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]).invariant_factors(),
            ints(&[2, 6, 12])
        );
    }

    #[test]
    fn unit_phase_and_zero_matrix() {
        assert_eq!(m(&[&[1, 1], &[1, 1]]).invariant_factors(), ints(&[1]));
        assert!(SparseIntMatrix::zero(3, 2).invariant_factors().is_empty());
        assert_eq!(
            m(&[&[1, 2, 0], &[0, 2, 2]]).invariant_factors(),
            ints(&[1, 2])
        );
    }

    #[test]
    fn product_and_apply() {
        let a = m(&[&[1, -1, 0], &[0, 1, -1]]);
        let b = m(&[&[1], &[1], &[1]]);
        assert!(a.mul(&b).unwrap().is_zero());
        assert_eq!(a.apply(&[3, 2, 1]).unwrap(), vec![1, 1]);
        assert_eq!(a.get(1, 2), -1);
        assert_eq!(a.nnz(), 4);
    }
}
