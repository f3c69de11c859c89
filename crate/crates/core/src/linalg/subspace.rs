use std::fmt;

use smallvec::SmallVec;

use super::{GfMatrix, Prime};
use crate::error::{Error, Result};

/// A subspace of `F_p^n`, held in canonical form: the nonzero rows of the RREF of any
/// spanning set. Two subspaces are equal iff their canonical bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    // dimension first so that sorting groups subspaces by dimension
    dim: usize,
    basis: GfMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// The span of the rows of `vectors`.
    pub fn span(vectors: &GfMatrix) -> Self {
        let r = vectors.rref();
        let basis = r.matrix.submatrix(0..r.rank, 0..vectors.cols());
        Subspace {
            dim: r.rank,
            basis,
            pivots: r.pivots,
        }
    }

    pub fn span_of(p: Prime, ambient: usize, vectors: &[Vec<u8>]) -> Self {
        let flat: SmallVec<[u8; 16]> = vectors.iter().flat_map(|v| v.iter().copied()).collect();
        Self::span(&GfMatrix::from_residues(p, vectors.len(), ambient, flat))
    }

    pub fn zero(p: Prime, ambient: usize) -> Self {
        Subspace {
            dim: 0,
            basis: GfMatrix::zero(p, 0, ambient),
            pivots: vec![],
        }
    }

    pub fn full(p: Prime, ambient: usize) -> Self {
        Subspace {
            dim: ambient,
            basis: GfMatrix::identity(p, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(p: Prime, ambient: usize, coords: impl IntoIterator<Item = usize>) -> Self {
        let vectors: Vec<Vec<u8>> = coords
            .into_iter()
            .map(|i| (0..ambient).map(|k| (k == i) as u8).collect())
            .collect();
        Self::span_of(p, ambient, &vectors)
    }

    /// Wraps an RREF basis that is already canonical.
    pub(crate) fn from_rref(basis: GfMatrix, pivots: Vec<usize>) -> Self {
        Subspace {
            dim: basis.rows(),
            basis,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn prime(&self) -> Prime {
        self.basis.prime()
    }

    pub fn basis(&self) -> &GfMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim == self.ambient_dim()
    }

    pub fn is_proper_nonzero(&self) -> bool {
        !self.is_zero() && !self.is_full()
    }

    pub fn contains_vector(&self, v: &[u8]) -> bool {
        let row = GfMatrix::from_residues(self.prime(), 1, v.len(), v.iter().copied().collect());
        self.basis
            .vstack(&row)
            .map(|m| m.rank() == self.dim)
            .unwrap_or(false)
    }

    /// Whether `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        if self.dim > other.dim {
            return false;
        }
        match other.basis.vstack(&self.basis) {
            Ok(m) => m.rank() == other.dim,
            Err(_) => false,
        }
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        Ok(Subspace::span(&self.basis.vstack(&other.basis)?))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::Shape("subspaces of different ambient spaces".into()));
        }
        let p = self.prime();
        let n = self.ambient_dim();
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(p, n));
        }
        // left kernel of [B1; B2]: c1 B1 + c2 B2 = 0, then c1 B1 spans the intersection
        let stacked = self.basis.vstack(&other.basis)?;
        let kernel = stacked.transpose().null_space();
        let mut vectors = Vec::with_capacity(kernel.rows());
        for k in 0..kernel.rows() {
            let coeffs = &kernel.row(k)[..self.dim];
            let mut v = vec![0u8; n];
            for (i, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    for (j, slot) in v.iter_mut().enumerate() {
                        *slot = p.add(*slot, p.mul(c, self.basis.get(i, j)));
                    }
                }
            }
            vectors.push(v);
        }
        Ok(Subspace::span_of(p, n, &vectors))
    }

    /// The image `g·W` of this subspace under an invertible matrix.
    pub fn image(&self, g: &GfMatrix) -> Subspace {
        if self.is_zero() {
            return self.clone();
        }
        Subspace::span(&self.basis.mul(&g.transpose()))
    }

    pub fn is_invariant_under(&self, g: &GfMatrix) -> bool {
        self.image(g) == *self
    }

    /// Embeds `W ⊆ F_p^k` into `F_p^total` on the coordinates `offset..offset+k`.
    pub fn embed(&self, offset: usize, total: usize) -> Subspace {
        let k = self.ambient_dim();
        let p = self.prime();
        let mut entries = SmallVec::from_elem(0u8, self.dim * total);
        for r in 0..self.dim {
            for c in 0..k {
                entries[r * total + offset + c] = self.basis.get(r, c);
            }
        }
        let pivots = self.pivots.iter().map(|c| c + offset).collect();
        Subspace::from_rref(GfMatrix::from_residues(p, self.dim, total, entries), pivots)
    }
}

/// All subspaces of `F_p^n`, optionally only those of one dimension, in canonical order.
pub fn enumerate_subspaces(n: usize, p: Prime, dim: Option<usize>) -> Result<Vec<Subspace>> {
    let dims: Vec<usize> = match dim {
        Some(d) if d > n => return Err(Error::DimensionOutOfRange { dim: d, ambient: n }),
        Some(d) => vec![d],
        None => (0..=n).collect(),
    };
    let q = p.get() as u8;
    let mut out = Vec::new();
    for d in dims {
        for pivots in itertools::Itertools::combinations(0..n, d) {
            // free slots: (row, col) with col > pivot[row] and col not a pivot
            let free: Vec<(usize, usize)> = (0..d)
                .flat_map(|r| {
                    let pivots = &pivots;
                    (pivots[r] + 1..n)
                        .filter(move |c| !pivots.contains(c))
                        .map(move |c| (r, c))
                })
                .collect();
            let mut values = vec![0u8; free.len()];
            loop {
                let mut m = GfMatrix::zero(p, d, n);
                for (r, &pc) in pivots.iter().enumerate() {
                    m.set(r, pc, 1);
                }
                for (&(r, c), &v) in free.iter().zip(&values) {
                    m.set(r, c, v);
                }
                out.push(Subspace::from_rref(m, pivots.clone()));
                // odometer increment
                let mut k = 0;
                while k < values.len() {
                    values[k] += 1;
                    if values[k] < q {
                        break;
                    }
                    values[k] = 0;
                    k += 1;
                }
                if k == values.len() {
                    break;
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.basis)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::linalg::gaussian_binomial;

    fn p(v: u32) -> Prime {
        Prime::new(v).unwrap()
    }

    fn all_vectors(n: usize, p: Prime) -> Vec<Vec<u8>> {
        let q = p.get() as usize;
        (0..q.pow(n as u32))
            .map(|mut code| {
                (0..n)
                    .map(|_| {
                        let v = (code % q) as u8;
                        code /= q;
                        v
                    })
                    .collect()
            })
            .collect()
    }

    // Oracle: span every subset of at most `n` vectors and collect distinct point sets.
    fn brute_force_count(n: usize, p: Prime, dim: usize) -> usize {
        let vectors = all_vectors(n, p);
        let mut seen: HashSet<Vec<Vec<u8>>> = HashSet::new();
        for k in 0..=dim {
            for choice in itertools::Itertools::combinations(vectors.iter(), k) {
                // the point set of the span, computed by enumerating linear combinations
                let mut points: HashSet<Vec<u8>> = HashSet::new();
                for coeffs in all_vectors(k, p) {
                    let mut v = vec![0u8; n];
                    for (c, w) in coeffs.iter().zip(&choice) {
                        for j in 0..n {
                            v[j] = p.add(v[j], p.mul(*c, w[j]));
                        }
                    }
                    points.insert(v);
                }
                if points.len() == p.power(dim as u32) as usize {
                    let mut sorted: Vec<_> = points.into_iter().collect();
                    sorted.sort();
                    seen.insert(sorted);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn subspace_counts_match_examples() {
        assert_eq!(enumerate_subspaces(2, p(3), Some(1)).unwrap().len(), 4);
        let zero = enumerate_subspaces(2, p(2), Some(0)).unwrap();
        assert_eq!(zero.len(), 1);
        assert!(zero[0].is_zero());
        assert_eq!(enumerate_subspaces(3, p(2), Some(1)).unwrap().len(), 7);
        assert!(matches!(
            enumerate_subspaces(2, p(2), Some(3)),
            Err(Error::DimensionOutOfRange { .. })
        ));
    }

    #[test]
    fn counts_agree_with_brute_force_and_gaussian_binomial() {
        for (n, q) in [(1, 2), (2, 2), (2, 3), (3, 2)] {
            for d in 0..=n {
                let listed = enumerate_subspaces(n, p(q), Some(d)).unwrap();
                let distinct: HashSet<_> = listed.iter().cloned().collect();
                assert_eq!(distinct.len(), listed.len());
                assert_eq!(listed.len() as u64, gaussian_binomial(n, d, p(q)));
                assert_eq!(
                    listed.len(),
                    brute_force_count(n, p(q), d),
                    "n={n} p={q} d={d}"
                );
            }
        }
    }

    #[test]
    fn canonical_form_ignores_spanning_set() {
        let a = Subspace::span_of(p(3), 3, &[vec![1, 1, 0], vec![0, 1, 2]]);
        let b = Subspace::span_of(p(3), 3, &[vec![1, 2, 2], vec![2, 2, 0]]);
        assert_eq!(a, b);
    }

    #[test]
    fn lattice_operations() {
        let q = p(2);
        let x = Subspace::coordinate(q, 3, [0, 1]);
        let y = Subspace::coordinate(q, 3, [1, 2]);
        assert_eq!(x.intersection(&y).unwrap(), Subspace::coordinate(q, 3, [1]));
        assert!(x.sum(&y).unwrap().is_full());
        assert!(Subspace::coordinate(q, 3, [1]).is_subspace_of(&x));
        assert!(!x.is_subspace_of(&y));
    }

    #[test]
    fn image_under_matrix() {
        let q = p(3);
        let g = GfMatrix::from_rows(q, &[&[0, 1], &[1, 0]]).unwrap();
        let l = Subspace::coordinate(q, 2, [0]);
        assert_eq!(l.image(&g), Subspace::coordinate(q, 2, [1]));
    }
}
