use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::complex::{ComplexMode, OrderComplex};
use crate::algebra::{
    b_bar, block_b_bar, block_sigma_bar, shuffle_bar, sigma_bar, u_bar, AlgebraElement,
};
use crate::error::{Error, Result};
use crate::linalg::{
    block_diagonal, enumerate_group, enumerate_subspaces, permutation_sign, permutations, Flag,
    GfMatrix, GroupKind, MatrixGroup, Prime, Subspace,
};
use crate::module::{Coefficients, MatrixRepresentation, ModuleData};
use crate::ring::{Integers, Mat, PrimeField, Ring};

/// Sign relating the chain-level join product to the algebraic Steinberg product.
pub const JOIN_SIGN: i64 = 1;

/// An integral chain on the top simplices of the flag complex, `C_{n-2}`.
///
/// For `n = 1` the complex is empty and the single top generator is the empty simplex in
/// degree `-1`.
pub type TopChain = Vec<i64>;

fn top_len(k: &OrderComplex) -> usize {
    match k.ambient_dim() {
        1 => 1,
        n => k.count(n as i64 - 2),
    }
}

fn top_index(k: &OrderComplex, flag: &Flag) -> Option<usize> {
    match k.ambient_dim() {
        1 => flag.is_empty().then_some(0),
        _ => k.index_of(flag),
    }
}

fn require_b(k: &OrderComplex) -> Result<()> {
    if *k.mode() != ComplexMode::B {
        return Err(Error::InvalidParameters(
            "cycles live on the proper flag complex".into(),
        ));
    }
    Ok(())
}

fn require_gl(k: &OrderComplex, m: &GfMatrix) -> Result<()> {
    let n = k.ambient_dim();
    if m.rows() != n || m.cols() != n || m.prime() != k.prime() {
        return Err(Error::Shape(format!(
            "{m} is not an {n}×{n} matrix over F_{}",
            k.prime()
        )));
    }
    if !m.is_invertible() {
        return Err(Error::Singular);
    }
    Ok(())
}

/// `s_m = Σ_σ sign(σ)·(⟨v_σ(1)⟩ ⊂ ⟨v_σ(1), v_σ(2)⟩ ⊂ ···)` for the columns `v_k` of `m`.
pub fn steinberg_cycle(k: &OrderComplex, m: &GfMatrix) -> Result<TopChain> {
    require_b(k)?;
    require_gl(k, m)?;
    let n = k.ambient_dim();
    let mut chain = vec![0i64; top_len(k)];
    for sigma in permutations(n) {
        let flag = Flag::from_columns(&m.mul(&GfMatrix::permutation(k.prime(), &sigma)))?;
        let idx = top_index(k, &flag)
            .ok_or_else(|| Error::Internal(format!("{flag} is not a top simplex")))?;
        chain[idx] += permutation_sign(&sigma);
    }
    Ok(chain)
}

/// `g·c`, moving every top simplex by `g`.
pub fn act_on_top(k: &OrderComplex, g: &GfMatrix, chain: &[i64]) -> Result<TopChain> {
    require_gl(k, g)?;
    if k.ambient_dim() == 1 {
        return Ok(chain.to_vec());
    }
    let perm = k.permutation(g, k.ambient_dim() - 2)?;
    let mut out = vec![0; chain.len()];
    for (s, &x) in chain.iter().enumerate() {
        out[perm[s]] += x;
    }
    Ok(out)
}

/// All complete flags of `F_p^n`, in canonical order.
pub fn complete_flags(n: usize, p: Prime) -> Result<Vec<Flag>> {
    if n == 1 {
        return Ok(vec![Flag::new(p, 1, Vec::new())?]);
    }
    Ok(OrderComplex::build(ComplexMode::B, n, p)?.flags(n - 2))
}

/// The complete flags transverse to `f`.
pub fn transverse_basis(f: &Flag, p: Prime) -> Result<Vec<Flag>> {
    if !f.is_complete() {
        return Err(Error::InvalidParameters(format!(
            "{f} is not a complete flag"
        )));
    }
    let mut out = Vec::new();
    for w in complete_flags(f.ambient_dim(), p)? {
        if w.is_transverse_to(f)? {
            out.push(w);
        }
    }
    Ok(out)
}

/// For `w` transverse to `f`: the matrix whose `i`-th column spans `W_i ∩ F_{n-i+1}`, with
/// `W_n = F_n` the whole space.
///
/// Its columns are adapted to `w`, so `s` of this matrix has coefficient `1` on `w` and `0` on
/// every other flag transverse to `f`.
pub fn transverse_frame(w: &Flag, f: &Flag, p: Prime) -> Result<GfMatrix> {
    if !w.is_transverse_to(f)? {
        return Err(Error::InvalidParameters(format!(
            "{w} is not transverse to {f}"
        )));
    }
    let n = w.ambient_dim();
    let full = Subspace::full(p, n);
    let member = |flag: &Flag, k: usize| {
        if k == n {
            full.clone()
        } else {
            flag.spaces()[k - 1].clone()
        }
    };
    let mut columns = Vec::with_capacity(n);
    for i in 1..=n {
        let line = member(w, i).intersection(&member(f, n - i + 1))?;
        if line.dim() != 1 {
            return Err(Error::Internal(format!(
                "W_{i} ∩ F_{} has dimension {}",
                n - i + 1,
                line.dim()
            )));
        }
        columns.push(line.basis().row(0).to_vec());
    }
    let entries: Vec<i64> = (0..n)
        .flat_map(|r| columns.iter().map(move |c| c[r] as i64))
        .collect();
    GfMatrix::new(p, n, n, &entries)
}

/// Top homology of the flag complex of `F_p^n`, with basis the cycles `s` of the transverse
/// frames against the standard flag.
#[derive(Clone, Debug)]
pub struct TopHomology {
    complex: OrderComplex,
    gl: MatrixGroup,
    standard: Flag,
    basis: Vec<Flag>,
    frames: Vec<GfMatrix>,
    positions: Vec<usize>,
    cycles: Vec<TopChain>,
    module: ModuleData,
}

impl TopHomology {
    pub fn new(n: usize, p: Prime) -> Result<Self> {
        let complex = OrderComplex::build(ComplexMode::B, n, p)?;
        let gl = enumerate_group(&GroupKind::General, n, p)?;
        let standard = Flag::standard(n, p);
        let basis = transverse_basis(&standard, p)?;
        let frames: Vec<GfMatrix> = basis
            .iter()
            .map(|w| transverse_frame(w, &standard, p))
            .collect::<Result<_>>()?;
        let positions: Vec<usize> = basis
            .iter()
            .map(|w| {
                top_index(&complex, w)
                    .ok_or_else(|| Error::Internal(format!("{w} is not a top simplex")))
            })
            .collect::<Result<_>>()?;
        let cycles: Vec<TopChain> = frames
            .iter()
            .map(|m| steinberg_cycle(&complex, m))
            .collect::<Result<_>>()?;
        for (j, c) in cycles.iter().enumerate() {
            if positions
                .iter()
                .enumerate()
                .any(|(i, &pos)| c[pos] != i64::from(i == j))
            {
                return Err(Error::Internal(format!(
                    "cycle of {} is not unitriangular",
                    basis[j]
                )));
            }
        }
        let dim = basis.len();
        let table: Vec<(GfMatrix, Vec<i64>)> = gl
            .elements()
            .par_iter()
            .map(|g| {
                let mut matrix = vec![0i64; dim * dim];
                for (j, cycle) in cycles.iter().enumerate() {
                    let moved = act_on_top(&complex, g, cycle)?;
                    for (i, x) in coordinates_in(&positions, &cycles, &moved)?
                        .into_iter()
                        .enumerate()
                    {
                        matrix[i * dim + j] = x;
                    }
                }
                Ok((g.clone(), matrix))
            })
            .collect::<Result<_>>()?;
        let label = format!("H_{}(B_{n}) over F_{p}", n as i64 - 2);
        let module: ModuleData = Arc::new(MatrixRepresentation::new(
            n,
            p,
            dim,
            Coefficients::Integral,
            table.into_iter().collect(),
            label,
        )?);
        Ok(TopHomology {
            complex,
            gl,
            standard,
            basis,
            frames,
            positions,
            cycles,
            module,
        })
    }

    pub fn complex(&self) -> &OrderComplex {
        &self.complex
    }

    pub fn group(&self) -> &MatrixGroup {
        &self.gl
    }

    pub fn standard_flag(&self) -> &Flag {
        &self.standard
    }

    pub fn basis(&self) -> &[Flag] {
        &self.basis
    }

    pub fn frames(&self) -> &[GfMatrix] {
        &self.frames
    }

    pub fn cycles(&self) -> &[TopChain] {
        &self.cycles
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn module(&self) -> ModuleData {
        self.module.clone()
    }

    pub fn cycle(&self, m: &GfMatrix) -> Result<TopChain> {
        steinberg_cycle(&self.complex, m)
    }

    /// Coordinates of a top cycle in the basis; fails if `c` is not in the span.
    pub fn coordinates(&self, c: &[i64]) -> Result<Vec<i64>> {
        coordinates_in(&self.positions, &self.cycles, c)
    }

    /// `Σ x_g [g·F] / |B_n|` for a right `B_n`-invariant `x`.
    pub fn push_forward(&self, x: &AlgebraElement<Integers>) -> Result<TopChain> {
        let mut sums = vec![BigInt::zero(); top_len(&self.complex)];
        for (g, coeff) in x.terms() {
            let flag = self.standard.image(g);
            let idx = top_index(&self.complex, &flag)
                .ok_or_else(|| Error::Internal(format!("{flag} is not a top simplex")))?;
            sums[idx] += coeff;
        }
        let borel = BigInt::from(borel_order(
            self.complex.ambient_dim(),
            self.complex.prime(),
        ));
        sums.into_iter()
            .map(|s| {
                let (q, r) = s.div_rem(&borel);
                if !r.is_zero() {
                    return Err(Error::InvalidParameters(
                        "element is not invariant under the Borel subgroup".into(),
                    ));
                }
                q.to_i64()
                    .ok_or_else(|| Error::Internal("coefficient overflow".into()))
            })
            .collect()
    }
}

fn coordinates_in(positions: &[usize], cycles: &[TopChain], c: &[i64]) -> Result<Vec<i64>> {
    let coords: Vec<i64> = positions.iter().map(|&pos| c[pos]).collect();
    let mut rebuilt = vec![0i64; c.len()];
    for (x, cycle) in coords.iter().zip(cycles) {
        for (r, v) in rebuilt.iter_mut().zip(cycle) {
            *r += x * v;
        }
    }
    if rebuilt != c {
        return Err(Error::InvalidParameters(
            "chain is not a combination of Steinberg cycles".into(),
        ));
    }
    Ok(coords)
}

fn borel_order(n: usize, p: Prime) -> u64 {
    (p.get() as u64 - 1).pow(n as u32) * p.power((n * (n - 1) / 2) as u32)
}

pub fn top_homology_module(n: usize, p: Prime) -> Result<ModuleData> {
    Ok(TopHomology::new(n, p)?.module())
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameters("n must be positive".into()));
    }
    Ok(())
}

fn integer_rank(vectors: &[Vec<i64>], len: usize) -> usize {
    let z = Integers;
    let columns: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    Mat::from_columns(&z, len, &columns).rank()
}

/// `∂s_m = 0` and `g·s_m = s_{gm}` for all `g, m`, and the cycles span a lattice of rank
/// `p^{C(n,2)}`.
pub fn cycle_check(n: usize, p: Prime) -> Result<Value> {
    if n < 2 {
        return Err(Error::InvalidParameters(
            "Steinberg cycles need n ≥ 2".into(),
        ));
    }
    let complex = OrderComplex::build(ComplexMode::B, n, p)?;
    let gl = enumerate_group(&GroupKind::General, n, p)?;
    let chains = complex.chain_complex(true)?;
    let boundary = chains.boundary(n as i64 - 2).expect("top boundary exists");
    let cycles: Vec<TopChain> = gl
        .elements()
        .par_iter()
        .map(|m| steinberg_cycle(&complex, m))
        .collect::<Result<_>>()?;
    for (m, s) in gl.elements().iter().zip(&cycles) {
        if boundary.apply(s)?.iter().any(|&x| x != 0) {
            return Err(Error::verification(
                "steinberg-cycles",
                json!({ "boundary_nonzero_for": m.to_string() }),
            ));
        }
    }
    let perms: Vec<Vec<usize>> = gl
        .elements()
        .par_iter()
        .map(|g| complex.permutation(g, n - 2))
        .collect::<Result<_>>()?;
    let failure = gl
        .elements()
        .par_iter()
        .zip(&perms)
        .find_map_any(|(g, perm)| {
            gl.elements().iter().zip(&cycles).find_map(|(m, s)| {
                let mut moved = vec![0; s.len()];
                for (k, &x) in s.iter().enumerate() {
                    moved[perm[k]] += x;
                }
                let gm = gl.index_of(&g.mul(m)).expect("closed");
                (moved != cycles[gm]).then(|| (g.to_string(), m.to_string()))
            })
        });
    if let Some((g, m)) = failure {
        return Err(Error::verification(
            "steinberg-cycles",
            json!({ "equivariance_fails": { "g": g, "m": m } }),
        ));
    }
    let rank = integer_rank(&cycles, top_len(&complex));
    let expected = p.power((n * (n - 1) / 2) as u32) as usize;
    let top_homology = chains.homology().rank(n as i64 - 2);
    if rank != expected || top_homology != expected {
        return Err(Error::verification(
            "steinberg-cycles",
            json!({ "span_rank": rank, "top_homology_rank": top_homology, "expected": expected }),
        ));
    }
    Ok(json!({
        "cycles": cycles.len(),
        "top_simplices": top_len(&complex),
        "boundary_zero": true,
        "equivariant": true,
        "span_rank": rank,
        "top_homology_rank": top_homology,
    }))
}

/// The top homology module matches `span{m·Σ̄_n B̄_n}` inside `Z[GL_n(F_p)]` under `s_m ↔ m Σ̄_n B̄_n`.
pub fn top_homology_iso_check(n: usize, p: Prime) -> Result<Value> {
    check_n(n)?;
    let top = TopHomology::new(n, p)?;
    let z = Integers;
    let steinberg = sigma_bar(&z, n, p).mul(&b_bar(&z, n, p))?;
    let generator = |m: &GfMatrix| AlgebraElement::basis(&z, m.clone()).mul(&steinberg);
    for m in top.group().elements() {
        let image = top.push_forward(&generator(m)?)?;
        if image != top.cycle(m)? {
            return Err(Error::verification(
                "top-homology",
                json!({ "push_forward_differs_at": m.to_string() }),
            ));
        }
    }
    let basis: Vec<AlgebraElement<Integers>> =
        top.frames().iter().map(generator).collect::<Result<_>>()?;
    let module = top.module();
    for g in top.group().elements() {
        let action = crate::module::action_matrix(&z, module.as_ref(), g)?;
        for (j, x) in basis.iter().enumerate() {
            let lhs = AlgebraElement::basis(&z, g.clone()).mul(x)?;
            let mut rhs = AlgebraElement::zero(&z, n, p);
            for (i, y) in basis.iter().enumerate() {
                rhs = rhs.add(&y.scale(action.get(i, j)))?;
            }
            if lhs != rhs {
                return Err(Error::verification(
                    "top-homology",
                    json!({ "structure_constants_differ": { "g": g.to_string(), "basis_index": j } }),
                ));
            }
        }
    }
    let order = top.group().order();
    let vectors: Vec<Vec<i64>> = top
        .group()
        .elements()
        .iter()
        .map(|m| {
            let x = generator(m)?;
            let mut v = vec![0i64; order];
            for (h, c) in x.terms() {
                v[top.group().index_of(h).expect("closed")] = c.to_i64().expect("small");
            }
            Ok(v)
        })
        .collect::<Result<_>>()?;
    let algebra_rank = integer_rank(&vectors, order);
    if algebra_rank != top.rank() {
        return Err(Error::verification(
            "top-homology",
            json!({ "algebra_span_rank": algebra_rank, "homology_rank": top.rank() }),
        ));
    }
    Ok(json!({
        "rank": top.rank(),
        "basis": top.basis().iter().map(Flag::to_string).collect::<Vec<_>>(),
        "push_forward_matches": true,
        "structure_constants_match": true,
    }))
}

/// Chain-level product of top chains of `B_i` and `B_j`: complete each flag by `0` and the
/// whole space, walk every lattice path, and sum `W'_a ⊕ W''_b` over the interior vertices with
/// sign `(-1)^{inversions}`, the first factor's steps counting as earlier.
pub fn join_product(
    left: &OrderComplex,
    a: &[i64],
    right: &OrderComplex,
    b: &[i64],
    target: &OrderComplex,
) -> Result<TopChain> {
    let (i, j) = (left.ambient_dim(), right.ambient_dim());
    let n = i + j;
    if target.ambient_dim() != n {
        return Err(Error::Shape(format!(
            "product of B_{i} and B_{j} lands in B_{n}"
        )));
    }
    let p = target.prime();
    let padded = |k: &OrderComplex, index: usize, offset: usize| -> Vec<Subspace> {
        let d = k.ambient_dim();
        let inner: Vec<Subspace> = if d == 1 {
            Vec::new()
        } else {
            k.flag(d - 2, index).spaces().to_vec()
        };
        std::iter::once(Subspace::zero(p, d))
            .chain(inner)
            .chain(std::iter::once(Subspace::full(p, d)))
            .map(|w| w.embed(offset, n))
            .collect()
    };
    let paths: Vec<(Vec<usize>, i64)> = (0..n)
        .combinations(i)
        .map(|first| {
            let mut inversions = 0;
            for (rank, &pos) in first.iter().enumerate() {
                inversions += pos - rank;
            }
            (first, if inversions % 2 == 0 { 1 } else { -1 })
        })
        .collect();
    let mut out = vec![0i64; top_len(target)];
    for (x, &ca) in a.iter().enumerate().filter(|e| *e.1 != 0) {
        let wa = padded(left, x, 0);
        for (y, &cb) in b.iter().enumerate().filter(|e| *e.1 != 0) {
            let wb = padded(right, y, i);
            for (first, sign) in &paths {
                let (mut s, mut t) = (0, 0);
                let mut spaces = Vec::with_capacity(n - 1);
                for step in 0..n - 1 {
                    if first.contains(&step) {
                        s += 1;
                    } else {
                        t += 1;
                    }
                    spaces.push(wa[s].sum(&wb[t])?);
                }
                let flag = Flag::new(p, n, spaces)?;
                let idx = top_index(target, &flag)
                    .ok_or_else(|| Error::Internal(format!("{flag} is not a top simplex")))?;
                out[idx] += sign * ca * cb;
            }
        }
    }
    Ok(out)
}

/// Compares the join product of Steinberg cycles with the algebraic product
/// `(m' ⊕ m'')·Σ̄_shuf·Ū·(Σ̄_i B̄_i ⊠ Σ̄_j B̄_j)` pushed to chains, on all pairs of basis cycles.
pub fn join_product_check(i: usize, j: usize, p: Prime) -> Result<Value> {
    check_n(i)?;
    check_n(j)?;
    let (left, right, whole) = (
        TopHomology::new(i, p)?,
        TopHomology::new(j, p)?,
        TopHomology::new(i + j, p)?,
    );
    let z = Integers;
    let factor = |k: usize| sigma_bar(&z, k, p).mul(&b_bar(&z, k, p));
    let operator = shuffle_bar(&z, i, j, p)
        .mul(&u_bar(&z, i, j, p))?
        .mul(&factor(i)?.boxtimes(&factor(j)?)?)?;
    let mut chain_matrix = Vec::new();
    let mut algebra_matrix = Vec::new();
    for (a, ma) in left.frames().iter().enumerate() {
        for (b, mb) in right.frames().iter().enumerate() {
            let chain = join_product(
                left.complex(),
                &left.cycles()[a],
                right.complex(),
                &right.cycles()[b],
                whole.complex(),
            )?;
            let y = AlgebraElement::basis(&z, block_diagonal(ma, mb)?).mul(&operator)?;
            let algebraic: TopChain = whole
                .push_forward(&y)?
                .into_iter()
                .map(|x| JOIN_SIGN * x)
                .collect();
            if chain != algebraic {
                return Err(Error::verification(
                    "join-product",
                    json!({ "pair": [left.basis()[a].to_string(), right.basis()[b].to_string()], "chain": chain, "algebra": algebraic }),
                ));
            }
            chain_matrix.push(whole.coordinates(&chain)?);
            algebra_matrix.push(whole.coordinates(&algebraic)?);
        }
    }
    Ok(json!({
        "sign": JOIN_SIGN,
        "source_rank": left.rank() * right.rank(),
        "target_rank": whole.rank(),
        "columns": chain_matrix,
    }))
}

fn binomial2(k: usize) -> u32 {
    (k * k.saturating_sub(1) / 2) as u32
}

/// For `W` spanned by the first `i` coordinates: the complements of `W` number `p^{i(n-i)}`;
/// the exponents add up; and `Z[P_W]·(Σ_i×Σ_{n-i})‾(B_i×B_{n-i})‾ → Z[GL_n]·Σ̄_n B̄_n`,
/// `A·(Σ×Σ)‾(B×B)‾ ↦ A·Σ̄_n B̄_n`, is a well-defined isomorphism, by ranks over `Q` and `F_p`.
pub fn prop10_check(n: usize, i: usize, p: Prime) -> Result<Value> {
    if i == 0 || i >= n {
        return Err(Error::InvalidParameters(format!(
            "need 0 < i < n, got i = {i}, n = {n}"
        )));
    }
    let w = Subspace::coordinate(p, n, 0..i);
    let mut complements = 0u64;
    for s in enumerate_subspaces(n, p, Some(n - i))? {
        if w.intersection(&s)?.is_zero() {
            complements += 1;
        }
    }
    let expected_complements = p.power((i * (n - i)) as u32);
    if complements != expected_complements {
        return Err(Error::verification(
            "prop10",
            json!({ "clause": "complements", "count": complements, "expected": expected_complements }),
        ));
    }
    let exponent = binomial2(i) + (i * (n - i)) as u32 + binomial2(n - i);
    if exponent != binomial2(n) {
        return Err(Error::verification(
            "prop10",
            json!({ "clause": "dimension", "exponent": exponent }),
        ));
    }
    let rational = parabolic_ranks(&Integers, n, i, p)?;
    let modular = parabolic_ranks(&PrimeField::new(p), n, i, p)?;
    let expected = p.power(binomial2(n)) as usize;
    for (field, r) in [("Q", &rational), ("F_p", &modular)] {
        if r.target != expected
            || r.whole != expected
            || r.source != r.target
            || r.stacked != r.source
        {
            return Err(Error::verification(
                "prop10",
                json!({ "clause": "surjectivity", "field": field, "ranks": r.to_json(), "expected": expected }),
            ));
        }
    }
    Ok(json!({
        "complements": complements,
        "exponent": exponent,
        "ranks_Q": rational.to_json(),
        "ranks_F_p": modular.to_json(),
    }))
}

struct ParabolicRanks {
    source: usize,
    target: usize,
    whole: usize,
    stacked: usize,
}

impl ParabolicRanks {
    fn to_json(&self) -> Value {
        json!({ "source": self.source, "image": self.target, "steinberg": self.whole, "graph": self.stacked })
    }
}

fn parabolic_ranks<R: Ring>(ring: &R, n: usize, i: usize, p: Prime) -> Result<ParabolicRanks> {
    let gl = enumerate_group(&GroupKind::General, n, p)?;
    let parabolic = enumerate_group(&GroupKind::Parabolic { i }, n, p)?;
    let levi = block_sigma_bar(ring, i, n - i, p).mul(&block_b_bar(ring, i, n - i, p))?;
    let steinberg = sigma_bar(ring, n, p).mul(&b_bar(ring, n, p))?;
    let order = gl.order();
    let vector = |x: &AlgebraElement<R>| -> Vec<R::Elem> {
        let mut v = vec![ring.zero(); order];
        for (g, c) in x.terms() {
            v[gl.index_of(g).expect("closed")] = c.clone();
        }
        v
    };
    let translate =
        |a: &GfMatrix, x: &AlgebraElement<R>| AlgebraElement::basis(ring, a.clone()).mul(x);
    let mut source = Vec::new();
    let mut target = Vec::new();
    let mut stacked = Vec::new();
    for a in parabolic.elements() {
        let s = vector(&translate(a, &levi)?);
        let t = vector(&translate(a, &steinberg)?);
        stacked.push(s.iter().chain(&t).cloned().collect::<Vec<_>>());
        source.push(s);
        target.push(t);
    }
    let whole: Vec<Vec<R::Elem>> = gl
        .elements()
        .iter()
        .map(|g| Ok(vector(&translate(g, &steinberg)?)))
        .collect::<Result<_>>()?;
    Ok(ParabolicRanks {
        source: Mat::from_columns(ring, order, &source).rank(),
        target: Mat::from_columns(ring, order, &target).rank(),
        whole: Mat::from_columns(ring, order, &whole).rank(),
        stacked: Mat::from_columns(ring, 2 * order, &stacked).rank(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u32) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn identity_cycle_in_the_plane() {
        let q = p(2);
        let k = OrderComplex::build(ComplexMode::B, 2, q).unwrap();
        let s = steinberg_cycle(&k, &GfMatrix::identity(q, 2)).unwrap();
        let e1 = k.vertex_index(&Subspace::coordinate(q, 2, [0])).unwrap();
        let e2 = k.vertex_index(&Subspace::coordinate(q, 2, [1])).unwrap();
        let mut expected = vec![0; 3];
        expected[e1] = 1;
        expected[e2] = -1;
        assert_eq!(s, expected);
    }

    #[test]
    fn transverse_counts() {
        for (n, q, count) in [(2, 2, 2), (2, 3, 3), (3, 2, 8)] {
            let f = Flag::standard(n, p(q));
            assert_eq!(transverse_basis(&f, p(q)).unwrap().len(), count);
        }
        let partial = Flag::new(p(2), 3, vec![Subspace::coordinate(p(2), 3, [0])]).unwrap();
        assert!(transverse_basis(&partial, p(2)).is_err());
    }

    #[test]
    fn singular_matrices_have_no_cycle() {
        let k = OrderComplex::build(ComplexMode::B, 2, p(2)).unwrap();
        let m = GfMatrix::from_rows(p(2), &[&[1, 1], &[1, 1]]).unwrap();
        assert!(matches!(steinberg_cycle(&k, &m), Err(Error::Singular)));
    }

    #[test]
    fn small_cycle_checks() {
        cycle_check(2, p(2)).unwrap();
        cycle_check(2, p(3)).unwrap();
    }

    #[test]
    fn top_homology_dimensions() {
        assert_eq!(top_homology_module(2, p(2)).unwrap().dim(), 2);
        assert_eq!(top_homology_module(2, p(3)).unwrap().dim(), 3);
        assert_eq!(top_homology_module(1, p(3)).unwrap().dim(), 1);
        top_homology_iso_check(2, p(2)).unwrap();
    }

    #[test]
    fn join_of_two_points() {
        let w = join_product_check(1, 1, p(2)).unwrap();
        assert_eq!(w["target_rank"], 2);
        assert_eq!(w["columns"].as_array().unwrap().len(), 1);
    }

    #[test]
    fn prop10_small() {
        let w = prop10_check(2, 1, p(2)).unwrap();
        assert_eq!(w["complements"], 2);
        assert_eq!(w["ranks_Q"]["image"], 2);
        assert!(prop10_check(2, 2, p(2)).is_err());
    }
}
