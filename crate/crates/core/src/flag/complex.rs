use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::snf::SparseIntMatrix;
use crate::error::{Error, Result};
use crate::linalg::{enumerate_subspaces, Flag, GfMatrix, Prime, Subspace};

/// Which subspaces are vertices, and which chains of them are simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexMode {
    /// Proper nonzero subspaces.
    B,
    /// All subspaces; a chain may touch the zero space or the whole space but not both.
    BDiamond,
    /// Proper nonzero subspaces invariant under every listed matrix.
    FixedSubposet(Vec<GfMatrix>),
}

/// The nerve of a poset of subspaces of `F_p^n`.
///
/// Vertices are sorted by dimension, so a simplex is an increasing list of vertex indices and
/// its orientation is the order of increasing dimension.
#[derive(Clone, Debug)]
pub struct OrderComplex {
    p: Prime,
    n: usize,
    mode: ComplexMode,
    vertices: Vec<Subspace>,
    vertex_index: HashMap<Subspace, usize>,
    simplices: Vec<Vec<Vec<usize>>>,
    simplex_index: Vec<HashMap<Vec<usize>, usize>>,
}

impl OrderComplex {
    pub fn build(mode: ComplexMode, n: usize, p: Prime) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters(
                "the ambient dimension must be positive".into(),
            ));
        }
        if let ComplexMode::FixedSubposet(gens) = &mode {
            if let Some(g) = gens
                .iter()
                .find(|g| g.rows() != n || g.cols() != n || g.prime() != p || !g.is_invertible())
            {
                return Err(Error::InvalidParameters(format!(
                    "{g} is not in GL_{n}(F_{p})"
                )));
            }
        }
        let mut vertices: Vec<Subspace> = enumerate_subspaces(n, p, None)?
            .into_iter()
            .filter(|w| match &mode {
                ComplexMode::B => w.is_proper_nonzero(),
                ComplexMode::BDiamond => true,
                ComplexMode::FixedSubposet(gens) => {
                    w.is_proper_nonzero() && gens.iter().all(|g| w.is_invariant_under(g))
                }
            })
            .collect();
        vertices.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
        let vertex_index = vertices
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, w)| (w, k))
            .collect();

        let above: Vec<Vec<usize>> = (0..vertices.len())
            .into_par_iter()
            .map(|v| {
                (v + 1..vertices.len())
                    .filter(|&w| {
                        vertices[v].dim() < vertices[w].dim()
                            && vertices[v].is_subspace_of(&vertices[w])
                    })
                    .collect()
            })
            .collect();
        let forbidden = |chain: &[usize]| {
            mode == ComplexMode::BDiamond
                && chain.first().is_some_and(|&v| vertices[v].is_zero())
                && chain.last().is_some_and(|&v| vertices[v].is_full())
        };
        let chains: Vec<Vec<Vec<usize>>> = (0..vertices.len())
            .into_par_iter()
            .map(|start| {
                let mut found = Vec::new();
                let mut stack = vec![vec![start]];
                while let Some(chain) = stack.pop() {
                    for &w in above[*chain.last().unwrap()].iter().rev() {
                        let mut longer = chain.clone();
                        longer.push(w);
                        stack.push(longer);
                    }
                    if !forbidden(&chain) {
                        found.push(chain);
                    }
                }
                found
            })
            .collect();

        let mut simplices: Vec<Vec<Vec<usize>>> = Vec::new();
        for chain in chains.into_iter().flatten() {
            let k = chain.len() - 1;
            if simplices.len() <= k {
                simplices.resize(k + 1, Vec::new());
            }
            simplices[k].push(chain);
        }
        for level in &mut simplices {
            level.sort();
        }
        let simplex_index = simplices
            .iter()
            .map(|level| {
                level
                    .iter()
                    .cloned()
                    .enumerate()
                    .map(|(k, s)| (s, k))
                    .collect()
            })
            .collect();
        Ok(OrderComplex {
            p,
            n,
            mode,
            vertices,
            vertex_index,
            simplices,
            simplex_index,
        })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> &ComplexMode {
        &self.mode
    }

    pub fn vertices(&self) -> &[Subspace] {
        &self.vertices
    }

    pub fn vertex_index(&self, w: &Subspace) -> Option<usize> {
        self.vertex_index.get(w).copied()
    }

    /// Highest simplex dimension, `-1` for the empty complex.
    pub fn dimension(&self) -> i64 {
        self.simplices.len() as i64 - 1
    }

    pub fn count(&self, k: i64) -> usize {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.simplices.get(k))
            .map_or(0, Vec::len)
    }

    /// The vertex chains of the `k`-simplices, in canonical order.
    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn flag(&self, k: usize, index: usize) -> Flag {
        let spaces = self.simplices[k][index]
            .iter()
            .map(|&v| self.vertices[v].clone())
            .collect();
        Flag::new(self.p, self.n, spaces).expect("simplices are chains")
    }

    pub fn flags(&self, k: usize) -> Vec<Flag> {
        (0..self.count(k as i64)).map(|i| self.flag(k, i)).collect()
    }

    /// Index of a flag among the simplices of its dimension.
    pub fn index_of(&self, flag: &Flag) -> Option<usize> {
        let chain: Option<Vec<usize>> =
            flag.spaces().iter().map(|w| self.vertex_index(w)).collect();
        let chain = chain?;
        self.simplex_index
            .get(chain.len().checked_sub(1)?)?
            .get(&chain)
            .copied()
    }

    /// The simplex permutation induced by `g`, which must preserve the vertex set.
    ///
    /// Orientations are preserved because `g` preserves dimensions.
    pub fn permutation(&self, g: &GfMatrix, k: usize) -> Result<Vec<usize>> {
        let vertex_image: Vec<usize> = self
            .vertices
            .iter()
            .map(|w| {
                self.vertex_index(&w.image(g)).ok_or_else(|| {
                    Error::InvalidParameters(format!("{g} does not preserve the vertex set"))
                })
            })
            .collect::<Result<_>>()?;
        Ok(self
            .simplices(k)
            .iter()
            .map(|s| {
                let image: Vec<usize> = s.iter().map(|&v| vertex_image[v]).collect();
                self.simplex_index[k][&image]
            })
            .collect())
    }

    /// Simplicial chains, augmented when `reduced`.
    pub fn chain_complex(&self, reduced: bool) -> Result<ChainComplex> {
        let top = self.dimension();
        let low = if reduced { -1 } else { 0 };
        let mut dims = Vec::new();
        let mut boundaries = Vec::new();
        if reduced {
            dims.push(1);
        }
        for k in 0..=top {
            let k = k as usize;
            dims.push(self.simplices[k].len());
            if k == 0 {
                if reduced {
                    let columns = vec![vec![(0, 1)]; self.simplices[0].len()];
                    boundaries.push(SparseIntMatrix::from_columns(1, columns)?);
                }
                continue;
            }
            let columns = self.simplices[k]
                .par_iter()
                .map(|s| {
                    let mut col: Vec<(usize, i64)> = (0..s.len())
                        .map(|drop| {
                            let mut face = s.clone();
                            face.remove(drop);
                            let sign = if drop % 2 == 0 { 1 } else { -1 };
                            (self.simplex_index[k - 1][&face], sign)
                        })
                        .collect();
                    col.sort_unstable();
                    col
                })
                .collect();
            boundaries.push(SparseIntMatrix::from_columns(
                self.simplices[k - 1].len(),
                columns,
            )?);
        }
        ChainComplex::new(low, dims, boundaries)
    }

    pub fn homology(&self, reduced: bool) -> Result<HomologyResult> {
        Ok(self.chain_complex(reduced)?.homology())
    }
}

/// `C_low ← C_{low+1} ← ··· ← C_top` with integer boundary matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    low: i64,
    dims: Vec<usize>,
    boundaries: Vec<SparseIntMatrix>,
}

impl ChainComplex {
    /// `boundaries[k]` maps degree `low + k + 1` to degree `low + k`.
    pub fn new(low: i64, dims: Vec<usize>, boundaries: Vec<SparseIntMatrix>) -> Result<Self> {
        if boundaries.len() + 1 != dims.len().max(1) {
            return Err(Error::Shape(format!(
                "{} boundaries for {} chain groups",
                boundaries.len(),
                dims.len()
            )));
        }
        for (k, d) in boundaries.iter().enumerate() {
            if d.rows() != dims[k] || d.cols() != dims[k + 1] {
                return Err(Error::Shape(format!(
                    "boundary out of degree {} has the wrong shape",
                    low + k as i64 + 1
                )));
            }
        }
        for (k, pair) in boundaries.windows(2).enumerate() {
            if !pair[0].mul(&pair[1])?.is_zero() {
                return Err(Error::Internal(format!(
                    "∂∘∂ ≠ 0 out of degree {}",
                    low + k as i64 + 2
                )));
            }
        }
        Ok(ChainComplex {
            low,
            dims,
            boundaries,
        })
    }

    pub fn lowest_degree(&self) -> i64 {
        self.low
    }

    pub fn top_degree(&self) -> i64 {
        self.low + self.dims.len() as i64 - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, k: i64) -> usize {
        self.slot(k).map_or(0, |s| self.dims[s])
    }

    fn slot(&self, k: i64) -> Option<usize> {
        usize::try_from(k - self.low)
            .ok()
            .filter(|&s| s < self.dims.len())
    }

    /// `∂_k : C_k → C_{k-1}`, if both groups are present.
    pub fn boundary(&self, k: i64) -> Option<&SparseIntMatrix> {
        self.slot(k)
            .and_then(|s| s.checked_sub(1))
            .map(|s| &self.boundaries[s])
    }

    pub fn homology(&self) -> HomologyResult {
        let factors: Vec<Vec<BigInt>> = self
            .boundaries
            .par_iter()
            .map(SparseIntMatrix::invariant_factors)
            .collect();
        let degrees = (0..self.dims.len())
            .map(|s| {
                let out = if s == 0 { 0 } else { factors[s - 1].len() };
                let incoming = factors.get(s);
                let rank_in = incoming.map_or(0, Vec::len);
                let torsion = incoming
                    .map(|f| {
                        f.iter()
                            .filter(|d| **d > BigInt::from(1))
                            .cloned()
                            .collect()
                    })
                    .unwrap_or_default();
                HomologyGroup {
                    degree: self.low + s as i64,
                    rank: self.dims[s] - out - rank_in,
                    torsion,
                }
            })
            .collect();
        HomologyResult { degrees }
    }

    /// Plain-text export: a header line, then one block per boundary matrix with 0-based
    /// `row col value` triples.
    pub fn export(&self) -> String {
        let mut out = String::new();
        let dims: Vec<String> = self.dims.iter().map(usize::to_string).collect();
        writeln!(
            out,
            "chain-complex low {} dims {}",
            self.low,
            dims.join(" ")
        )
        .unwrap();
        for (s, d) in self.boundaries.iter().enumerate() {
            writeln!(
                out,
                "boundary degree {} rows {} cols {} nnz {}",
                self.low + s as i64 + 1,
                d.rows(),
                d.cols(),
                d.nnz()
            )
            .unwrap();
            for (r, c, v) in d.triples() {
                writeln!(out, "{r} {c} {v}").unwrap();
            }
        }
        out
    }

    pub fn import(text: &str) -> Result<Self> {
        let bad = |what: &str| {
            Error::InvalidParameters(format!("malformed chain complex export: {what}"))
        };
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: Vec<&str> = lines
            .next()
            .ok_or_else(|| bad("empty"))?
            .split_whitespace()
            .collect();
        if header.len() < 4
            || header[0] != "chain-complex"
            || header[1] != "low"
            || header[3] != "dims"
        {
            return Err(bad("header"));
        }
        let low: i64 = header[2].parse().map_err(|_| bad("low degree"))?;
        let dims: Vec<usize> = header[4..]
            .iter()
            .map(|t| t.parse().map_err(|_| bad("dims")))
            .collect::<Result<_>>()?;
        let mut boundaries = Vec::new();
        while let Some(line) = lines.next() {
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 9 || f[0] != "boundary" {
                return Err(bad(line));
            }
            let num = |t: &str| t.parse::<usize>().map_err(|_| bad(line));
            let (rows, cols, nnz) = (num(f[4])?, num(f[6])?, num(f[8])?);
            let mut triples = Vec::with_capacity(nnz);
            for _ in 0..nnz {
                let t: Vec<&str> = lines
                    .next()
                    .ok_or_else(|| bad("missing entries"))?
                    .split_whitespace()
                    .collect();
                if t.len() != 3 {
                    return Err(bad("entry"));
                }
                triples.push((
                    num(t[0])?,
                    num(t[1])?,
                    t[2].parse::<i64>().map_err(|_| bad("entry"))?,
                ));
            }
            boundaries.push(SparseIntMatrix::from_triples(rows, cols, triples)?);
        }
        ChainComplex::new(low, dims, boundaries)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub degree: i64,
    pub rank: usize,
    #[serde(serialize_with = "as_strings")]
    pub torsion: Vec<BigInt>,
}

fn as_strings<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(BigInt::to_string))
}

/// Free rank and torsion coefficients in each degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyResult {
    pub degrees: Vec<HomologyGroup>,
}

impl HomologyResult {
    pub fn rank(&self, k: i64) -> usize {
        self.degrees
            .iter()
            .find(|h| h.degree == k)
            .map_or(0, |h| h.rank)
    }

    pub fn torsion(&self, k: i64) -> &[BigInt] {
        self.degrees
            .iter()
            .find(|h| h.degree == k)
            .map_or(&[], |h| &h.torsion)
    }

    pub fn is_torsion_free(&self) -> bool {
        self.degrees.iter().all(|h| h.torsion.is_empty())
    }

    /// Every group vanishes.
    pub fn is_acyclic(&self) -> bool {
        self.degrees
            .iter()
            .all(|h| h.rank == 0 && h.torsion.is_empty())
    }

    /// Free of the given rank in degree `k` and zero elsewhere.
    pub fn is_concentrated(&self, k: i64, rank: usize) -> bool {
        self.is_torsion_free()
            && self
                .degrees
                .iter()
                .all(|h| h.rank == if h.degree == k { rank } else { 0 })
            && (rank == 0 || self.degrees.iter().any(|h| h.degree == k))
    }

    pub fn nonzero(&self) -> Vec<&HomologyGroup> {
        self.degrees
            .iter()
            .filter(|h| h.rank > 0 || !h.torsion.is_empty())
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
    fn plane_over_f3() {
        let b = OrderComplex::build(ComplexMode::B, 2, p(3)).unwrap();
        assert_eq!((b.count(0), b.count(1)), (4, 0));
        let h = b.homology(true).unwrap();
        assert!(h.is_concentrated(0, 3));

        let d = OrderComplex::build(ComplexMode::BDiamond, 2, p(3)).unwrap();
        assert_eq!((d.count(0), d.count(1), d.count(2)), (6, 8, 0));
        assert!(d.homology(true).unwrap().is_concentrated(1, 3));
    }

    #[test]
    fn line_is_empty() {
        let b = OrderComplex::build(ComplexMode::B, 1, p(5)).unwrap();
        assert_eq!(b.dimension(), -1);
        assert!(b.homology(true).unwrap().is_concentrated(-1, 1));
        assert!(b.homology(false).unwrap().is_acyclic());
    }

    #[test]
    fn three_space_over_f2() {
        let b = OrderComplex::build(ComplexMode::B, 3, p(2)).unwrap();
        assert_eq!((b.count(0), b.count(1)), (14, 21));
        assert!(b.homology(true).unwrap().is_concentrated(1, 8));
        let unreduced = b.homology(false).unwrap();
        assert_eq!((unreduced.rank(0), unreduced.rank(1)), (1, 8));
    }

    #[test]
    fn faces_are_simplices() {
        let b = OrderComplex::build(ComplexMode::BDiamond, 3, p(2)).unwrap();
        for k in 1..=b.dimension() as usize {
            for s in b.simplices(k) {
                for drop in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(drop);
                    assert!(b.simplex_index[k - 1].contains_key(&face));
                }
            }
        }
    }

    #[test]
    fn fixed_subposet_of_a_transvection() {
        let u = GfMatrix::from_rows(p(2), &[&[1, 1], &[0, 1]]).unwrap();
        let k = OrderComplex::build(ComplexMode::FixedSubposet(vec![u]), 2, p(2)).unwrap();
        assert_eq!(k.vertices(), &[Subspace::coordinate(p(2), 2, [0])]);
        assert!(k.homology(true).unwrap().is_acyclic());
    }

    #[test]
    fn export_round_trip() {
        let c = OrderComplex::build(ComplexMode::B, 3, p(2))
            .unwrap()
            .chain_complex(true)
            .unwrap();
        let text = c.export();
        assert!(text.starts_with("chain-complex low -1 dims 1 14 21"));
        assert_eq!(ChainComplex::import(&text).unwrap(), c);
    }

    #[test]
    fn rejects_non_complexes() {
        let d1 = SparseIntMatrix::from_triples(1, 1, [(0, 0, 1)]).unwrap();
        let d2 = SparseIntMatrix::from_triples(1, 1, [(0, 0, 1)]).unwrap();
        assert!(matches!(
            ChainComplex::new(0, vec![1, 1, 1], vec![d1, d2]),
            Err(Error::Internal(_))
        ));
    }

    #[test]
    fn torsion_is_reported() {
        // the real projective plane's cellular chains: Z ← Z ← Z with maps 0 and 2
        let d1 = SparseIntMatrix::zero(1, 1);
        let d2 = SparseIntMatrix::from_triples(1, 1, [(0, 0, 2)]).unwrap();
        let h = ChainComplex::new(0, vec![1, 1, 1], vec![d1, d2])
            .unwrap()
            .homology();
        assert_eq!(h.rank(0), 1);
        assert_eq!(h.rank(1), 0);
        assert_eq!(h.torsion(1), &[BigInt::from(2)]);
        assert_eq!(h.rank(2), 0);
    }
}
