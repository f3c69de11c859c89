use std::collections::{HashMap, VecDeque};

use itertools::Itertools;
use serde::Serialize;

use super::{block_embed, GfMatrix, Prime};
use crate::error::{Error, Result};

/// Sign of a permutation given as an image list.
pub fn permutation_sign(perm: &[usize]) -> i64 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = perm[k];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    (0..n).permutations(n).collect()
}

/// The `(i, j)`-shuffles: permutations of `0..i+j` increasing on `0..i` and on `i..i+j`.
///
/// These are left coset representatives of `Σ_i × Σ_j` under composition.
pub fn shuffles(i: usize, j: usize) -> Vec<Vec<usize>> {
    let n = i + j;
    (0..n)
        .combinations(i)
        .map(|first| {
            let rest = (0..n).filter(|k| !first.contains(k));
            first.iter().copied().chain(rest).collect()
        })
        .collect()
}

/// The subgroup families of `GL_n(F_p)` used throughout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GroupKind {
    /// `GL_n`.
    General,
    /// Invertible upper-triangular matrices `B_n`.
    Borel,
    /// Permutation matrices `Σ_n`.
    Permutations,
    /// `U_{i,j}`: matrices `(I_i *; 0 I_j)`.
    Unipotent { i: usize, j: usize },
    /// Upper unitriangular matrices, a Sylow `p`-subgroup.
    UpperUnitriangular,
    /// `P_W` for `W` the span of the first `i` coordinates: `(A *; 0 D)`.
    Parabolic { i: usize },
    /// `GL_i × GL_j` block-diagonally.
    BlockGeneral { i: usize, j: usize },
    /// Matrices acting as the identity on the first `d` coordinates: `(I_d *; 0 GL)`.
    FixingFirst { d: usize },
}

/// An explicitly enumerated subgroup of `GL_n(F_p)` with sorted elements.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    n: usize,
    p: Prime,
    elements: Vec<GfMatrix>,
    index: HashMap<GfMatrix, usize>,
}

impl MatrixGroup {
    pub fn from_elements(n: usize, p: Prime, mut elements: Vec<GfMatrix>) -> Self {
        elements.sort();
        elements.dedup();
        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, g)| (g, i))
            .collect();
        MatrixGroup {
            n,
            p,
            elements,
            index,
        }
    }

    /// The subgroup generated by `generators`, by breadth-first closure.
    pub fn generated_by(n: usize, p: Prime, generators: &[GfMatrix]) -> Self {
        let id = GfMatrix::identity(p, n);
        let mut seen: HashMap<GfMatrix, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in generators {
                let h = g.mul(s);
                if seen.insert(h.clone(), ()).is_none() {
                    queue.push_back(h);
                }
            }
        }
        Self::from_elements(n, p, seen.into_keys().collect())
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GfMatrix] {
        &self.elements
    }

    pub fn contains(&self, g: &GfMatrix) -> bool {
        self.index.contains_key(g)
    }

    pub fn index_of(&self, g: &GfMatrix) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// A small generating set, chosen greedily in element order.
    pub fn generators(&self) -> Vec<GfMatrix> {
        let mut gens = Vec::new();
        let mut span = MatrixGroup::generated_by(self.n, self.p, &gens);
        for g in &self.elements {
            if !span.contains(g) {
                gens.push(g.clone());
                span = MatrixGroup::generated_by(self.n, self.p, &gens);
                if span.order() == self.order() {
                    break;
                }
            }
        }
        gens
    }

    /// Checks closure, identity and inverses on every element.
    pub fn verify_axioms(&self) -> bool {
        let id = GfMatrix::identity(self.p, self.n);
        self.contains(&id)
            && self.elements.iter().all(|g| {
                g.inverse().map(|gi| self.contains(&gi)).unwrap_or(false)
                    && self.elements.iter().all(|h| self.contains(&g.mul(h)))
            })
    }
}

fn all_vectors(n: usize, p: Prime) -> Vec<Vec<u8>> {
    let q = p.get() as usize;
    (0..q.pow(n as u32))
        .map(|mut code| {
            let mut v = vec![0u8; n];
            for slot in v.iter_mut().rev() {
                *slot = (code % q) as u8;
                code /= q;
            }
            v
        })
        .collect()
}

fn nonzero_residues(p: Prime) -> std::ops::Range<u8> {
    1..p.get() as u8
}

/// All `rows × cols` matrices whose columns are linearly independent, i.e. the mod-`p`
/// Stiefel variety `V_cols(F_p^rows)` when `cols ≤ rows`.
fn injective_matrices(rows: usize, cols: usize, p: Prime) -> Vec<GfMatrix> {
    if cols > rows {
        return Vec::new();
    }
    let vectors = all_vectors(rows, p);
    let mut out = Vec::new();
    let mut chosen: Vec<&Vec<u8>> = Vec::with_capacity(cols);
    fn extend<'a>(
        rows: usize,
        cols: usize,
        p: Prime,
        vectors: &'a [Vec<u8>],
        chosen: &mut Vec<&'a Vec<u8>>,
        out: &mut Vec<GfMatrix>,
    ) {
        if chosen.len() == cols {
            let mut m = GfMatrix::zero(p, rows, cols);
            for (c, v) in chosen.iter().enumerate() {
                for r in 0..rows {
                    m.set(r, c, v[r]);
                }
            }
            out.push(m);
            return;
        }
        for v in vectors {
            chosen.push(v);
            let k = chosen.len();
            let mut m = GfMatrix::zero(p, k, rows);
            for (i, w) in chosen.iter().enumerate() {
                for r in 0..rows {
                    m.set(i, r, w[r]);
                }
            }
            if m.rank() == k {
                extend(rows, cols, p, vectors, chosen, out);
            }
            chosen.pop();
        }
    }
    extend(rows, cols, p, &vectors, &mut chosen, &mut out);
    out.sort();
    out
}

/// The mod-`p` Stiefel variety `V_d(F_p^n)`: all `n × d` matrices of rank `d`.
///
/// Empty when `d > n`; the single `n × 0` matrix when `d = 0`.
pub fn stiefel(n: usize, d: usize, p: Prime) -> Vec<GfMatrix> {
    injective_matrices(n, d, p)
}

/// Enumerates one of the distinguished subgroups of `GL_n(F_p)`.
pub fn enumerate_group(kind: &GroupKind, n: usize, p: Prime) -> Result<MatrixGroup> {
    let elements = match *kind {
        GroupKind::General => injective_matrices(n, n, p),
        GroupKind::Borel => upper_triangular(n, p, false),
        GroupKind::UpperUnitriangular => upper_triangular(n, p, true),
        GroupKind::Permutations => permutations(n)
            .iter()
            .map(|s| GfMatrix::permutation(p, s))
            .collect(),
        GroupKind::Unipotent { i, j } => {
            if i + j != n {
                return Err(Error::InvalidParameters(format!(
                    "U({i},{j}) inside GL_{n}"
                )));
            }
            let id_i = GfMatrix::identity(p, i);
            let id_j = GfMatrix::identity(p, j);
            block_upper(&[id_i], &[id_j], i, j, p)
        }
        GroupKind::Parabolic { i } => {
            if i > n {
                return Err(Error::InvalidParameters(format!(
                    "parabolic of rank {i} inside GL_{n}"
                )));
            }
            block_upper(
                &injective_matrices(i, i, p),
                &injective_matrices(n - i, n - i, p),
                i,
                n - i,
                p,
            )
        }
        GroupKind::BlockGeneral { i, j } => {
            if i + j != n {
                return Err(Error::InvalidParameters(format!(
                    "GL_{i} x GL_{j} inside GL_{n}"
                )));
            }
            let left = injective_matrices(i, i, p);
            let right = injective_matrices(j, j, p);
            left.iter()
                .cartesian_product(right.iter())
                .map(|(a, b)| block_embed(a, b))
                .collect::<Result<_>>()?
        }
        GroupKind::FixingFirst { d } => {
            if d > n {
                return Err(Error::InvalidParameters(format!(
                    "fixing {d} coordinates inside GL_{n}"
                )));
            }
            block_upper(
                &[GfMatrix::identity(p, d)],
                &injective_matrices(n - d, n - d, p),
                d,
                n - d,
                p,
            )
        }
    };
    Ok(MatrixGroup::from_elements(n, p, elements))
}

fn upper_triangular(n: usize, p: Prime, unitriangular: bool) -> Vec<GfMatrix> {
    let above: Vec<(usize, usize)> = (0..n)
        .flat_map(|r| (r + 1..n).map(move |c| (r, c)))
        .collect();
    let diagonals: Vec<Vec<u8>> = if unitriangular {
        vec![vec![1; n]]
    } else {
        (0..n)
            .map(|_| nonzero_residues(p))
            .multi_cartesian_product()
            .collect()
    };
    let diagonals = if n == 0 { vec![vec![]] } else { diagonals };
    let mut out = Vec::new();
    for diag in &diagonals {
        for fill in all_vectors(above.len(), p) {
            let mut m = GfMatrix::zero(p, n, n);
            for (k, &d) in diag.iter().enumerate() {
                m.set(k, k, d);
            }
            for (&(r, c), &v) in above.iter().zip(&fill) {
                m.set(r, c, v);
            }
            out.push(m);
        }
    }
    out
}

/// All `(A X; 0 D)` with `A` from `tops`, `D` from `bottoms`, `X` arbitrary `i × j`.
fn block_upper(
    tops: &[GfMatrix],
    bottoms: &[GfMatrix],
    i: usize,
    j: usize,
    p: Prime,
) -> Vec<GfMatrix> {
    let n = i + j;
    let mut out = Vec::new();
    for a in tops {
        for d in bottoms {
            let base = block_embed(a, d).expect("square blocks");
            for fill in all_vectors(i * j, p) {
                let mut m = base.clone();
                for r in 0..i {
                    for c in 0..j {
                        m.set(r, i + c, fill[r * j + c]);
                    }
                }
                debug_assert_eq!(m.rows(), n);
                out.push(m);
            }
        }
    }
    out
}

/// A Bruhat factorization `M = a·σ·b` with `a, b` upper triangular and `σ` a
/// permutation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruhatFactorization {
    pub left: GfMatrix,
    pub permutation: Vec<usize>,
    pub right: GfMatrix,
}

impl BruhatFactorization {
    pub fn permutation_matrix(&self) -> GfMatrix {
        GfMatrix::permutation(self.left.prime(), &self.permutation)
    }

    pub fn product(&self) -> GfMatrix {
        self.left.mul(&self.permutation_matrix()).mul(&self.right)
    }
}

/// Factors an invertible matrix as `a·σ·b` with `a, b ∈ B_n` and `σ ∈ Σ_n`.
///
/// Sweeps columns left to right. Entries in rows that already hold a pivot are cleared
/// by column operations against earlier columns; the lowest remaining nonzero becomes the
/// pivot and clears the rows above it. Both kinds of operation are upper triangular.
pub fn bruhat_factor(m: &GfMatrix) -> Result<BruhatFactorization> {
    if !m.is_invertible() {
        return Err(Error::Singular);
    }
    let p = m.prime();
    let n = m.rows();
    let mut work = m.clone();
    // work = row_ops · m · col_ops at every step
    let mut row_ops = GfMatrix::identity(p, n);
    let mut col_ops = GfMatrix::identity(p, n);
    let mut pivot_row_of_col = vec![usize::MAX; n];
    let mut used = vec![false; n];

    for col in 0..n {
        for prev in 0..col {
            let r = pivot_row_of_col[prev];
            let v = work.get(r, col);
            if v != 0 {
                // pivots are normalised to 1
                let f = p.neg(v);
                work.add_col_multiple(col, prev, f);
                col_ops.add_col_multiple(col, prev, f);
            }
        }
        let pivot = (0..n)
            .rev()
            .find(|&r| !used[r] && work.get(r, col) != 0)
            .ok_or(Error::Singular)?;
        for r in 0..pivot {
            let v = work.get(r, col);
            if !used[r] && v != 0 {
                let f = p.neg(p.mul(v, p.inv(work.get(pivot, col))));
                work.add_row_multiple(r, pivot, f);
                row_ops.add_row_multiple(r, pivot, f);
            }
        }
        let inv = p.inv(work.get(pivot, col));
        work.scale_col(col, inv);
        col_ops.scale_col(col, inv);
        used[pivot] = true;
        pivot_row_of_col[col] = pivot;
    }

    // work is now the permutation matrix e_col -> e_{pivot_row_of_col[col]}
    let permutation = pivot_row_of_col;
    debug_assert_eq!(work, GfMatrix::permutation(p, &permutation));
    Ok(BruhatFactorization {
        left: row_ops.inverse()?,
        permutation,
        right: col_ops.inverse()?,
    })
}

/// Factors every element of `GL_n(F_p)` and checks each factor and the reconstruction.
pub fn bruhat_check(n: usize, p: Prime) -> Result<serde_json::Value> {
    let gl = enumerate_group(&GroupKind::General, n, p)?;
    let mut cells: HashMap<Vec<usize>, usize> = HashMap::new();
    for g in gl.elements() {
        let f = bruhat_factor(g)?;
        let ok = f.left.is_upper_triangular()
            && f.right.is_upper_triangular()
            && f.left.is_invertible()
            && f.right.is_invertible()
            && f.product() == *g;
        if !ok {
            return Err(Error::verification(
                "bruhat",
                serde_json::json!({ "element": g.to_string(), "left": f.left.to_string(), "right": f.right.to_string() }),
            ));
        }
        *cells.entry(f.permutation).or_default() += 1;
    }
    let mut sizes: Vec<usize> = cells.values().copied().collect();
    sizes.sort_unstable();
    Ok(serde_json::json!({ "elements": gl.order(), "cells": cells.len(), "cell_sizes": sizes }))
}
