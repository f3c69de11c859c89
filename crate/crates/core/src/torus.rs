//! Mod-`p` homology of `B(Z/p)^n` as a graded `GL_n(F_p)`-module, graded tensor products and
//! dimension series of Steinberg summands.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{enumerate_group, GfMatrix, GroupKind, Prime};
use crate::module::{
    act, verify_homomorphism, Action, Coefficients, ModuleData, PermutationModule, Representation,
    Trivial, Zero,
};
use crate::ring::PrimeField;
use crate::steinberg::{idempotent, IdempotentKind};

/// How `GL_n` acts on the polynomial realization.
///
/// Monomials in generators `x_i` (and `y_i` for odd `p`) are a basis of cohomology, on which
/// `A` acts by the substitution `x_j ↦ Σ_i A_ij x_i`, written `S(A)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Duality {
    /// Homology as the dual of cohomology: `ρ(g) = S(gᵀ)ᵀ`. Degree one is the natural module.
    Homology,
    /// The substitution action itself, `ρ(g) = S(g)`, read as a module on the same monomials.
    PlainSubstitution,
}

impl fmt::Display for Duality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Duality::Homology => "homology",
            Duality::PlainSubstitution => "plain-substitution",
        })
    }
}

/// `x_I · y^a`, with `I` a set of exterior generators (odd `p` only).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exterior: Vec<bool>,
    powers: Vec<u32>,
}

impl Monomial {
    fn one(n: usize) -> Self {
        Monomial {
            exterior: vec![false; n],
            powers: vec![0; n],
        }
    }

    pub fn degree(&self, p: Prime) -> usize {
        let gen = polynomial_degree(p);
        self.exterior.iter().filter(|&&b| b).count()
            + gen * self.powers.iter().sum::<u32>() as usize
    }

    fn sort_key(&self) -> Vec<u32> {
        self.exterior
            .iter()
            .map(|&b| u32::from(b))
            .chain(self.powers.iter().copied())
            .collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &b) in self.exterior.iter().enumerate() {
            if b {
                parts.push(format!("x{}", i + 1));
            }
        }
        for (i, &a) in self.powers.iter().enumerate() {
            match a {
                0 => {}
                1 => parts.push(format!("y{}", i + 1)),
                _ => parts.push(format!("y{}^{a}", i + 1)),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(""))
        }
    }
}

fn polynomial_degree(p: Prime) -> usize {
    if p.get() == 2 {
        1
    } else {
        2
    }
}

/// Degree-`k` monomials, in descending lexicographic order of exponents.
pub fn monomials(n: usize, p: Prime, k: usize) -> Vec<Monomial> {
    let gen = polynomial_degree(p);
    let exterior_sets: Vec<Vec<bool>> = if p.get() == 2 {
        vec![vec![false; n]]
    } else {
        (0..1u32 << n)
            .map(|mask| (0..n).map(|i| mask >> i & 1 == 1).collect())
            .collect()
    };
    let mut out = Vec::new();
    for ext in exterior_sets {
        let r = ext.iter().filter(|&&b| b).count();
        if r > k || !(k - r).is_multiple_of(gen) {
            continue;
        }
        for powers in compositions((k - r) / gen, n) {
            out.push(Monomial {
                exterior: ext.clone(),
                powers,
            });
        }
    }
    out.sort_by(|a, b| b.sort_key().cmp(&a.sort_key()));
    out
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

type Polynomial = BTreeMap<Monomial, u8>;

/// `poly · (Σ_i column[i]·z_i)` with `z` exterior or polynomial generators.
fn times_linear(poly: &Polynomial, column: &[u8], exterior: bool, p: Prime) -> Polynomial {
    let mut out = Polynomial::new();
    for (m, &c) in poly {
        for (i, &a) in column.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let mut next = m.clone();
            let mut coeff = p.mul(c, a);
            if exterior {
                if m.exterior[i] {
                    continue;
                }
                next.exterior[i] = true;
                // x_i moves left past every x_j with j > i
                let passes = m.exterior[i + 1..].iter().filter(|&&b| b).count();
                if passes % 2 == 1 {
                    coeff = p.neg(coeff);
                }
            } else {
                next.powers[i] += 1;
            }
            let entry = out.entry(next).or_insert(0);
            *entry = p.add(*entry, coeff);
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// The matrix of the substitution `x_j ↦ Σ_i A_ij x_i` on the given monomials.
fn substitution(
    a: &GfMatrix,
    basis: &[Monomial],
    index: &HashMap<Monomial, usize>,
    p: Prime,
) -> Vec<i64> {
    let n = a.rows();
    let dim = basis.len();
    let mut matrix = vec![0i64; dim * dim];
    for (col, m) in basis.iter().enumerate() {
        let mut poly = Polynomial::from([(Monomial::one(n), 1u8)]);
        for j in (0..n).filter(|&j| m.exterior[j]) {
            poly = times_linear(&poly, &a.column(j), true, p);
        }
        for j in 0..n {
            for _ in 0..m.powers[j] {
                poly = times_linear(&poly, &a.column(j), false, p);
            }
        }
        for (image, c) in poly {
            matrix[index[&image] * dim + col] = i64::from(c);
        }
    }
    matrix
}

/// One degree of the torus homology.
#[derive(Clone, Debug)]
pub struct TorusPiece {
    n: usize,
    p: Prime,
    k: usize,
    duality: Duality,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl TorusPiece {
    pub fn new(n: usize, p: Prime, k: usize, duality: Duality) -> Self {
        let basis = monomials(n, p, k);
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        TorusPiece {
            n,
            p,
            k,
            duality,
            basis,
            index,
        }
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }
}

impl Representation for TorusPiece {
    fn degree(&self) -> usize {
        self.n
    }
    fn prime(&self) -> Prime {
        self.p
    }
    fn dim(&self) -> usize {
        self.basis.len()
    }
    fn coefficients(&self) -> Coefficients {
        Coefficients::ModP
    }
    fn action(&self, g: &GfMatrix) -> Result<Action> {
        if g.rows() != self.n || g.cols() != self.n || g.prime() != self.p {
            return Err(Error::Shape(format!(
                "{g} does not act on {}",
                self.label()
            )));
        }
        let dim = self.dim();
        Ok(Action::Matrix(match self.duality {
            Duality::PlainSubstitution => substitution(g, &self.basis, &self.index, self.p),
            Duality::Homology => {
                let s = substitution(&g.transpose(), &self.basis, &self.index, self.p);
                (0..dim * dim)
                    .map(|k| s[(k % dim) * dim + k / dim])
                    .collect()
            }
        }))
    }
    fn label(&self) -> String {
        format!(
            "H_{}(B(Z/{})^{}; F_{}) [{}]",
            self.k, self.p, self.n, self.p, self.duality
        )
    }
}

/// Graded ranks, indexed by degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct DimensionSeries(pub Vec<u64>);

impl DimensionSeries {
    /// `1` in degree zero, truncated at `max_degree`.
    pub fn unit(max_degree: usize) -> Self {
        let mut v = vec![0; max_degree + 1];
        v[0] = 1;
        DimensionSeries(v)
    }

    pub fn max_degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn get(&self, k: usize) -> u64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    /// Cauchy product, truncated to the shorter length.
    pub fn convolve(&self, other: &DimensionSeries) -> DimensionSeries {
        let len = self.0.len().min(other.0.len());
        DimensionSeries(
            (0..len)
                .map(|k| (0..=k).map(|i| self.0[i] * other.0[k - i]).sum())
                .collect(),
        )
    }

    pub fn scale(&self, s: u64) -> DimensionSeries {
        DimensionSeries(self.0.iter().map(|x| x * s).collect())
    }

    pub fn add(&self, other: &DimensionSeries) -> DimensionSeries {
        let len = self.0.len().max(other.0.len());
        DimensionSeries((0..len).map(|k| self.get(k) + other.get(k)).collect())
    }

    /// The first degree where the two series differ.
    pub fn first_difference(&self, other: &DimensionSeries) -> Option<usize> {
        (0..self.0.len().max(other.0.len())).find(|&k| self.get(k) != other.get(k))
    }
}

impl fmt::Display for DimensionSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A `GL_n(F_p)`-module in each degree `0..=max_degree`.
#[derive(Clone, Debug)]
pub struct GradedGLModule {
    n: usize,
    p: Prime,
    pieces: Vec<ModuleData>,
}

impl GradedGLModule {
    pub fn new(n: usize, p: Prime, pieces: Vec<ModuleData>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidParameters(
                "a graded module needs degree 0".into(),
            ));
        }
        if let Some(m) = pieces.iter().find(|m| m.degree() != n || m.prime() != p) {
            return Err(Error::Shape(format!(
                "{} is not a GL_{n}(F_{p}) module",
                m.label()
            )));
        }
        Ok(GradedGLModule { n, p, pieces })
    }

    /// The trivial module in degree zero and nothing above.
    pub fn sphere(n: usize, p: Prime, max_degree: usize) -> Self {
        let mut pieces: Vec<ModuleData> = vec![Arc::new(Trivial::mod_p(n, p))];
        pieces.extend((0..max_degree).map(|_| Arc::new(Zero::new(n, p)) as ModuleData));
        GradedGLModule { n, p, pieces }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn max_degree(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn piece(&self, k: usize) -> &ModuleData {
        &self.pieces[k]
    }

    pub fn pieces(&self) -> &[ModuleData] {
        &self.pieces
    }

    pub fn dims(&self) -> DimensionSeries {
        DimensionSeries(self.pieces.iter().map(|m| m.dim() as u64).collect())
    }

    /// `ρ(g)ρ(h) = ρ(gh)` on all pairs of `elements`, in every degree.
    pub fn verify_actions(&self, elements: &[GfMatrix]) -> Result<()> {
        let field = PrimeField::new(self.p);
        self.pieces
            .par_iter()
            .try_for_each(|m| verify_homomorphism(&field, m.as_ref(), elements))
    }
}

pub fn torus_homology(n: usize, p: Prime, max_degree: usize, duality: Duality) -> GradedGLModule {
    let pieces = (0..=max_degree)
        .map(|k| Arc::new(TorusPiece::new(n, p, k, duality)) as ModuleData)
        .collect();
    GradedGLModule { n, p, pieces }
}

/// `⊕_{i+j=k} M_i ⊗ N_j` as a module over the block-diagonal `GL_a × GL_b ⊆ GL_{a+b}`.
#[derive(Debug)]
pub struct KunnethPiece {
    a: usize,
    b: usize,
    p: Prime,
    parts: Vec<(ModuleData, ModuleData)>,
}

impl KunnethPiece {
    fn split(&self, g: &GfMatrix) -> Result<(GfMatrix, GfMatrix)> {
        let n = self.a + self.b;
        if g.rows() != n || g.cols() != n || g.prime() != self.p {
            return Err(Error::Shape(format!("{g} is not in GL_{n}(F_{})", self.p)));
        }
        let upper = g.submatrix(0..self.a, self.a..n);
        let lower = g.submatrix(self.a..n, 0..self.a);
        if !upper.is_zero() || !lower.is_zero() {
            return Err(Error::InvalidParameters(format!(
                "{g} is not block diagonal"
            )));
        }
        Ok((
            g.submatrix(0..self.a, 0..self.a),
            g.submatrix(self.a..n, self.a..n),
        ))
    }
}

impl Representation for KunnethPiece {
    fn degree(&self) -> usize {
        self.a + self.b
    }
    fn prime(&self) -> Prime {
        self.p
    }
    fn dim(&self) -> usize {
        self.parts.iter().map(|(m, n)| m.dim() * n.dim()).sum()
    }
    fn coefficients(&self) -> Coefficients {
        Coefficients::ModP
    }
    fn action(&self, g: &GfMatrix) -> Result<Action> {
        let (g1, g2) = self.split(g)?;
        let dim = self.dim();
        let q = self.p.get() as i64;
        let mut out = vec![0i64; dim * dim];
        let mut offset = 0;
        for (m, n) in &self.parts {
            let (dm, dn) = (m.dim(), n.dim());
            let (am, an) = (dense(m.action(&g1)?, dm), dense(n.action(&g2)?, dn));
            let d = dm * dn;
            for r in 0..d {
                for c in 0..d {
                    let v = am[(r / dn) * dm + c / dn] * an[(r % dn) * dn + c % dn];
                    out[(offset + r) * dim + offset + c] = v.rem_euclid(q);
                }
            }
            offset += d;
        }
        Ok(Action::Matrix(out))
    }
    fn label(&self) -> String {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|(m, n)| format!("{} ⊗ {}", m.label(), n.label()))
            .collect();
        parts.join(" ⊕ ")
    }
}

fn dense(action: Action, dim: usize) -> Vec<i64> {
    match action {
        Action::Matrix(m) => m,
        Action::Permutation(perm) => {
            let mut m = vec![0; dim * dim];
            for (k, &image) in perm.iter().enumerate() {
                m[image * dim + k] = 1;
            }
            m
        }
    }
}

/// Graded tensor product over `GL_a × GL_b`, embedded block-diagonally in `GL_{a+b}`.
pub fn kunneth(m: &GradedGLModule, n: &GradedGLModule) -> Result<GradedGLModule> {
    if m.p != n.p {
        return Err(Error::InvalidParameters(format!(
            "primes {} and {} differ",
            m.p, n.p
        )));
    }
    if m.max_degree() != n.max_degree() {
        return Err(Error::InvalidParameters(format!(
            "truncations {} and {} differ",
            m.max_degree(),
            n.max_degree()
        )));
    }
    let pieces = (0..=m.max_degree())
        .map(|k| {
            let parts = (0..=k)
                .map(|i| (m.pieces[i].clone(), n.pieces[k - i].clone()))
                .collect();
            Arc::new(KunnethPiece {
                a: m.n,
                b: n.n,
                p: m.p,
                parts,
            }) as ModuleData
        })
        .collect();
    Ok(GradedGLModule {
        n: m.n + n.n,
        p: m.p,
        pieces,
    })
}

/// Ranks over `F_p` of an idempotent acting in each degree.
pub fn idempotent_dim_series(m: &GradedGLModule, kind: &IdempotentKind) -> Result<DimensionSeries> {
    let field = PrimeField::new(m.p);
    let e = idempotent(&field, kind, m.n, m.p)?;
    let ranks: Vec<u64> = m
        .pieces
        .par_iter()
        .map(|piece| {
            Ok(if piece.dim() == 0 {
                0
            } else {
                act(&e, piece.as_ref())?.rank() as u64
            })
        })
        .collect::<Result<_>>()?;
    Ok(DimensionSeries(ranks))
}

pub fn steinberg_dim_series(m: &GradedGLModule) -> Result<DimensionSeries> {
    idempotent_dim_series(m, &IdempotentKind::Steinberg)
}

/// The coefficient functors `F` tested against the Stiefel splitting.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoefficientFunctor {
    /// `F(V) = S^0`: the trivial module in degree zero.
    Sphere,
    /// `F(V) = B(V)_+`: the torus homology.
    Torus(Duality),
}

impl fmt::Display for CoefficientFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientFunctor::Sphere => f.write_str("sphere"),
            CoefficientFunctor::Torus(d) => write!(f, "torus[{d}]"),
        }
    }
}

impl CoefficientFunctor {
    pub fn module(&self, n: usize, p: Prime, max_degree: usize) -> GradedGLModule {
        match self {
            CoefficientFunctor::Sphere => GradedGLModule::sphere(n, p, max_degree),
            CoefficientFunctor::Torus(d) => torus_homology(n, p, max_degree, *d),
        }
    }

    /// Graded dimensions of `F(F_p^n)`, including `n = 0`.
    pub fn dims(&self, n: usize, p: Prime, max_degree: usize) -> DimensionSeries {
        match self {
            CoefficientFunctor::Sphere => DimensionSeries::unit(max_degree),
            CoefficientFunctor::Torus(_) => DimensionSeries(
                (0..=max_degree)
                    .map(|k| monomials(n, p, k).len() as u64)
                    .collect(),
            ),
        }
    }

    /// `e_n` ranks on `F(F_p^n)`, with `e_0 = 1`.
    pub fn steinberg_series(
        &self,
        n: usize,
        p: Prime,
        max_degree: usize,
    ) -> Result<DimensionSeries> {
        if n == 0 {
            return Ok(self.dims(0, p, max_degree));
        }
        steinberg_dim_series(&self.module(n, p, max_degree))
    }
}

fn binomial2(k: usize) -> u32 {
    (k * k.saturating_sub(1) / 2) as u32
}

/// Graded dimensions of `e_n(F_p[V_d(F_p^n)] ⊗ F(F_p^n))`.
pub fn stiefel_summand_series(
    f: CoefficientFunctor,
    n: usize,
    d: usize,
    p: Prime,
    max_degree: usize,
) -> Result<DimensionSeries> {
    let stiefel: ModuleData = Arc::new(PermutationModule::stiefel(n, d, p));
    let coefficients = f.module(n, p, max_degree);
    let pieces = coefficients
        .pieces()
        .iter()
        .map(|piece| {
            Ok(Arc::new(crate::module::Tensor::new(stiefel.clone(), piece.clone())?) as ModuleData)
        })
        .collect::<Result<_>>()?;
    steinberg_dim_series(&GradedGLModule::new(n, p, pieces)?)
}

/// Predicted dimensions `p^{C(d,2)}·dims F(F_p^d) ⊛ (e_{n-d} ranks on F(F_p^{n-d}))`.
pub fn stiefel_prediction(
    f: CoefficientFunctor,
    n: usize,
    d: usize,
    p: Prime,
    max_degree: usize,
) -> Result<DimensionSeries> {
    let free = f.dims(d, p, max_degree);
    let rest = f.steinberg_series(n - d, p, max_degree)?;
    Ok(free.convolve(&rest).scale(p.power(binomial2(d))))
}

/// Degree-wise dimension identity for the splitting of `e_n` on a Stiefel permutation module.
pub fn lemma17_rank_check(
    n: usize,
    d: usize,
    p: Prime,
    f: CoefficientFunctor,
    max_degree: usize,
) -> Result<Value> {
    if n == 0 || d > n {
        return Err(Error::InvalidParameters(format!(
            "need 0 ≤ d ≤ n and n ≥ 1, got d = {d}, n = {n}"
        )));
    }
    if f.dims(0, p, max_degree) != DimensionSeries::unit(max_degree) {
        return Err(Error::verification(
            "lemma17",
            json!({ "axiom": "F(0) is the unit" }),
        ));
    }
    let line = f.dims(1, p, max_degree);
    let mut power = DimensionSeries::unit(max_degree);
    for _ in 0..n {
        power = power.convolve(&line);
    }
    if power != f.dims(n, p, max_degree) {
        return Err(Error::verification(
            "lemma17",
            json!({ "axiom": "Künneth", "n": n }),
        ));
    }
    let lhs = stiefel_prediction(f, n, d, p, max_degree)?;
    let rhs = stiefel_summand_series(f, n, d, p, max_degree)?;
    if let Some(k) = lhs.first_difference(&rhs) {
        return Err(Error::verification(
            "lemma17",
            json!({ "degree": k, "predicted": lhs.0, "computed": rhs.0, "functor": f.to_string() }),
        ));
    }
    Ok(
        json!({ "functor": f.to_string(), "series": rhs.0, "stiefel_size": crate::linalg::stiefel_count(n, d, p) }),
    )
}

/// Checks the graded action is a homomorphism on all of `GL_n` and that degree one is the
/// natural module under the homology convention.
pub fn torus_action_check(n: usize, p: Prime, max_degree: usize) -> Result<Value> {
    let gl = enumerate_group(&GroupKind::General, n, p)?;
    let mut dims = BTreeMap::new();
    for duality in [Duality::Homology, Duality::PlainSubstitution] {
        let m = torus_homology(n, p, max_degree, duality);
        m.verify_actions(gl.elements())?;
        dims.insert(duality.to_string(), m.dims().0);
    }
    if max_degree >= 1 {
        let piece = TorusPiece::new(n, p, 1, Duality::Homology);
        for g in gl.elements() {
            let Action::Matrix(m) = piece.action(g)? else {
                unreachable!()
            };
            let natural: Vec<i64> = g.entries().iter().map(|&v| i64::from(v)).collect();
            // basis x_1, …, x_n in that order
            if m != natural {
                return Err(Error::verification(
                    "torus-action",
                    json!({ "degree_one_differs_at": g.to_string() }),
                ));
            }
        }
    }
    Ok(json!({ "dims": dims, "degree_one_natural": true }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u32) -> Prime {
        Prime::new(v).unwrap()
    }

    fn dims(n: usize, q: u32, d: usize) -> Vec<u64> {
        torus_homology(n, p(q), d, Duality::Homology).dims().0
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(dims(1, 2, 3), vec![1, 1, 1, 1]);
        assert_eq!(dims(2, 2, 2), vec![1, 2, 3]);
        assert_eq!(dims(1, 3, 2), vec![1, 1, 1]);
        assert_eq!(dims(2, 3, 3), vec![1, 2, 3, 4]);
    }

    #[test]
    fn deg_lex_order() {
        let names: Vec<String> = monomials(2, p(2), 2)
            .iter()
            .map(|m| m.to_string())
            .collect();
        assert_eq!(names, ["y1^2", "y1y2", "y2^2"]);
        let names: Vec<String> = monomials(2, p(3), 2)
            .iter()
            .map(|m| m.to_string())
            .collect();
        assert_eq!(names, ["x1x2", "y1", "y2"]);
    }

    #[test]
    fn exterior_signs() {
        // the swap sends x1x2 to x2x1 = -x1x2
        let swap = GfMatrix::permutation(p(3), &[1, 0]);
        let piece = TorusPiece::new(2, p(3), 2, Duality::PlainSubstitution);
        let Action::Matrix(m) = piece.action(&swap).unwrap() else {
            panic!()
        };
        assert_eq!(m[0], 2);
    }

    #[test]
    fn actions_are_homomorphisms() {
        torus_action_check(2, p(2), 4).unwrap();
        torus_action_check(2, p(3), 3).unwrap();
        torus_action_check(1, p(5), 3).unwrap();
    }

    #[test]
    fn kunneth_series() {
        let m = torus_homology(1, p(2), 2, Duality::Homology);
        assert_eq!(kunneth(&m, &m).unwrap().dims().0, vec![1, 2, 3]);
        let t = torus_homology(1, p(3), 2, Duality::Homology);
        assert_eq!(kunneth(&t, &t).unwrap().dims().get(2), 3);
        let other = torus_homology(1, p(2), 3, Duality::Homology);
        assert!(kunneth(&m, &other).is_err());
        assert!(kunneth(&m, &t).is_err());
    }

    #[test]
    fn steinberg_series_examples() {
        let s = |n, q, d| {
            steinberg_dim_series(&torus_homology(n, p(q), d, Duality::Homology))
                .unwrap()
                .0
        };
        assert_eq!(s(1, 2, 3), vec![1, 1, 1, 1]);
        // −1 negates both x and y, so e_1 = (1 + [−1])/2 kills them
        assert_eq!(s(1, 3, 2), vec![1, 0, 0]);
        assert_eq!(s(2, 2, 0), vec![0]);
    }

    #[test]
    fn small_lemma17() {
        lemma17_rank_check(2, 2, p(2), CoefficientFunctor::Sphere, 0).unwrap();
        let w = lemma17_rank_check(2, 1, p(2), CoefficientFunctor::Sphere, 2).unwrap();
        assert_eq!(w["series"], json!([1, 0, 0]));
        lemma17_rank_check(2, 1, p(2), CoefficientFunctor::Torus(Duality::Homology), 2).unwrap();
    }
}
