//! Finite-dimensional representations of subgroups of `GL_n(F_p)` and the linear action of
//! group-algebra elements on them.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::linalg::{enumerate_group, stiefel, GfMatrix, GroupKind, Prime, Subspace};
use crate::ring::{Mat, Ring, RingTag};

/// Whether a module is defined over the integers or only over `F_p`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Coefficients {
    /// Integer matrices; usable over any coefficient ring.
    Integral,
    /// Residues mod `p`; usable only over `F_p`.
    ModP,
}

/// The matrix of a single group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    /// `e_k ↦ e_{perm[k]}`.
    Permutation(Vec<usize>),
    /// Dense row-major matrix with integer entries.
    Matrix(Vec<i64>),
}

pub trait Representation: Send + Sync {
    /// The `n` of `GL_n(F_p)`.
    fn degree(&self) -> usize;
    fn prime(&self) -> Prime;
    fn dim(&self) -> usize;
    fn coefficients(&self) -> Coefficients;
    fn action(&self, g: &GfMatrix) -> Result<Action>;
    fn label(&self) -> String;
}

/// A shared handle to a representation.
pub type ModuleData = Arc<dyn Representation>;

impl fmt::Debug for dyn Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.label(), self.dim())
    }
}

fn check_group_element(m: &dyn Representation, g: &GfMatrix) -> Result<()> {
    if g.rows() != m.degree() || g.cols() != m.degree() || g.prime() != m.prime() {
        return Err(Error::Shape(format!(
            "{g} does not act on a GL_{}(F_{}) module",
            m.degree(),
            m.prime()
        )));
    }
    Ok(())
}

/// Whether values in `ring` can be combined with matrices of this module.
pub fn check_ring<R: Ring>(ring: &R, m: &dyn Representation) -> Result<()> {
    match (m.coefficients(), ring.tag()) {
        (Coefficients::Integral, _) => Ok(()),
        (Coefficients::ModP, RingTag::PrimeField(q)) if q == m.prime() => Ok(()),
        (Coefficients::ModP, tag) => Err(Error::RingMismatch(format!(
            "{} is defined over F_{} only, not {tag}",
            m.label(),
            m.prime()
        ))),
    }
}

/// The matrix of one group element over `ring`.
pub fn action_matrix<R: Ring>(ring: &R, m: &dyn Representation, g: &GfMatrix) -> Result<Mat<R>> {
    check_ring(ring, m)?;
    let dim = m.dim();
    let mut out = Mat::zeros(ring, dim, dim);
    accumulate(&mut out, &ring.one(), &m.action(g)?, dim)?;
    Ok(out)
}

fn accumulate<R: Ring>(out: &mut Mat<R>, c: &R::Elem, action: &Action, dim: usize) -> Result<()> {
    match action {
        Action::Permutation(perm) => {
            if perm.len() != dim {
                return Err(Error::Shape(format!(
                    "permutation of {} points on a {dim}-dim module",
                    perm.len()
                )));
            }
            for (k, &image) in perm.iter().enumerate() {
                out.add_at(image, k, c);
            }
        }
        Action::Matrix(entries) => {
            if entries.len() != dim * dim {
                return Err(Error::Shape(format!(
                    "{} entries for a {dim}-dim module",
                    entries.len()
                )));
            }
            let ring = out.ring().clone();
            for (k, &v) in entries.iter().enumerate() {
                if v != 0 {
                    out.add_at(k / dim, k % dim, &ring.mul(c, &ring.from_int(v)));
                }
            }
        }
    }
    Ok(())
}

/// The linear map `Σ_g x_g ρ(g)`.
pub fn act<R: Ring>(x: &AlgebraElement<R>, m: &dyn Representation) -> Result<Mat<R>> {
    let ring = x.ring();
    check_ring(ring, m)?;
    if x.degree() != m.degree() || x.prime() != m.prime() {
        return Err(Error::Shape(format!(
            "element of GL_{}(F_{}) acting on {}",
            x.degree(),
            x.prime(),
            m.label()
        )));
    }
    let dim = m.dim();
    let mut out = Mat::zeros(ring, dim, dim);
    for (g, c) in x.terms() {
        accumulate(&mut out, c, &m.action(g)?, dim)?;
    }
    Ok(out)
}

/// Checks `ρ(g)ρ(h) = ρ(gh)` for all pairs drawn from `elements`.
pub fn verify_homomorphism<R: Ring>(
    ring: &R,
    m: &dyn Representation,
    elements: &[GfMatrix],
) -> Result<()> {
    let mats: Vec<Mat<R>> = elements
        .iter()
        .map(|g| action_matrix(ring, m, g))
        .collect::<Result<_>>()?;
    for (g, rg) in elements.iter().zip(&mats) {
        for (h, rh) in elements.iter().zip(&mats) {
            if rg.mul(rh)? != action_matrix(ring, m, &g.mul(h))? {
                return Err(Error::verification(
                    "module-homomorphism",
                    serde_json::json!({ "module": m.label(), "g": g.to_string(), "h": h.to_string() }),
                ));
            }
        }
    }
    Ok(())
}

/// The one-dimensional trivial module.
#[derive(Clone, Debug)]
pub struct Trivial {
    n: usize,
    p: Prime,
    coefficients: Coefficients,
}

impl Trivial {
    pub fn new(n: usize, p: Prime) -> Self {
        Trivial {
            n,
            p,
            coefficients: Coefficients::Integral,
        }
    }

    pub fn mod_p(n: usize, p: Prime) -> Self {
        Trivial {
            n,
            p,
            coefficients: Coefficients::ModP,
        }
    }
}

impl Representation for Trivial {
    fn degree(&self) -> usize {
        self.n
    }
    fn prime(&self) -> Prime {
        self.p
    }
    fn dim(&self) -> usize {
        1
    }
    fn coefficients(&self) -> Coefficients {
        self.coefficients
    }
    fn action(&self, g: &GfMatrix) -> Result<Action> {
        check_group_element(self, g)?;
        Ok(Action::Permutation(vec![0]))
    }
    fn label(&self) -> String {
        format!("trivial GL_{}(F_{})", self.n, self.p)
    }
}

/// The zero module.
#[derive(Clone, Debug)]
pub struct Zero {
    n: usize,
    p: Prime,
}

impl Zero {
    pub fn new(n: usize, p: Prime) -> Self {
        Zero { n, p }
    }
}

impl Representation for Zero {
    fn degree(&self) -> usize {
        self.n
    }
    fn prime(&self) -> Prime {
        self.p
    }
    fn dim(&self) -> usize {
        0
    }
    fn coefficients(&self) -> Coefficients {
        Coefficients::Integral
    }
    fn action(&self, g: &GfMatrix) -> Result<Action> {
        check_group_element(self, g)?;
        Ok(Action::Permutation(Vec::new()))
    }
    fn label(&self) -> String {
        "0".into()
    }
}

/// `F_p^n` with `GL_n` acting by matrix multiplication.
#[derive(Clone, Debug)]
pub struct Natural {
    n: usize,
    p: Prime,
}

impl Natural {
    pub fn new(n: usize, p: Prime) -> Self {
        Natural { n, p }
    }
}

impl Representation for Natural {
    fn degree(&self) -> usize {
        self.n
    }
    fn prime(&self) -> Prime {
        self.p
    }
    fn dim(&self) -> usize {
        self.n
    }
    fn coefficients(&self) -> Coefficients {
        Coefficients::ModP
    }
    fn action(&self, g: &GfMatrix) -> Result<Action> {
        check_group_element(self, g)?;
        Ok(Action::Matrix(
            g.entries().iter().map(|&v| v as i64).collect(),
        ))
    }
    fn label(&self) -> String {
        format!("F_{}^{}", self.p, self.n)
    }
}

/// How a group element moves a point of a [`PermutationModule`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PointAction {
    /// Points are matrices with `n` rows and `g·x` is the matrix product.
    LeftMultiply,
    /// Points are RREF bases of subspaces and `g·W` is the image subspace.
    Subspace,
}

/// The permutation module `Z[S]` of a finite `GL_n`-set `S`.
#[derive(Clone, Debug)]
pub struct PermutationModule {
    n: usize,
    p: Prime,
    points: Vec<GfMatrix>,
    index: HashMap<GfMatrix, usize>,
    rule: PointAction,
    label: String,
}

impl PermutationModule {
    /// The points must form a set closed under the action; closure is checked lazily, when
    /// an image falls outside the set.
    pub fn from_points(
        n: usize,
        p: Prime,
        points: Vec<GfMatrix>,
        rule: PointAction,
        label: impl Into<String>,
    ) -> Self {
        let index = points
            .iter()
            .enumerate()
            .map(|(k, x)| (x.clone(), k))
            .collect();
        PermutationModule {
            n,
            p,
            points,
            index,
            rule,
            label: label.into(),
        }
    }

    /// `Z[GL_n]` with `GL_n` acting by left multiplication.
    pub fn regular(n: usize, p: Prime) -> Self {
        let group = enumerate_group(&GroupKind::General, n, p).expect("GL_n");
        Self::from_points(
            n,
            p,
            group.elements().to_vec(),
            PointAction::LeftMultiply,
            format!("Z[GL_{n}(F_{p})]"),
        )
    }

    /// `Z[V_d(F_p^n)]`, the injective `n×d` matrices.
    pub fn stiefel(n: usize, d: usize, p: Prime) -> Self {
        Self::from_points(
            n,
            p,
            stiefel(n, d, p),
            PointAction::LeftMultiply,
            format!("Z[V_{d}(F_{p}^{n})]"),
        )
    }

    /// `Z[Gr_d(F_p^n)]`, the `d`-dimensional subspaces.
    pub fn subspaces(n: usize, d: usize, p: Prime) -> Result<Self> {
        let points = crate::linalg::enumerate_subspaces(n, p, Some(d))?
            .into_iter()
            .map(|w| w.basis().clone())
            .collect();
        Ok(Self::from_points(
            n,
            p,
            points,
            PointAction::Subspace,
            format!("Z[Gr_{d}(F_{p}^{n})]"),
        ))
    }

    pub fn points(&self) -> &[GfMatrix] {
        &self.points
    }

    pub fn index_of(&self, x: &GfMatrix) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn move_point(&self, g: &GfMatrix, x: &GfMatrix) -> GfMatrix {
        match self.rule {
            PointAction::LeftMultiply => g.mul(x),
            PointAction::Subspace => {
                let w = Subspace::span(x);
                w.image(g).basis().clone()
            }
        }
    }
}

impl Representation for PermutationModule {
    fn degree(&self) -> usize {
        self.n
    }
    fn prime(&self) -> Prime {
        self.p
    }
    fn dim(&self) -> usize {
        self.points.len()
    }
    fn coefficients(&self) -> Coefficients {
        Coefficients::Integral
    }
    fn action(&self, g: &GfMatrix) -> Result<Action> {
        check_group_element(self, g)?;
        let perm = self
            .points
            .iter()
            .map(|x| {
                let y = self.move_point(g, x);
                self.index_of(&y).ok_or_else(|| {
                    Error::InvalidParameters(format!("{} is not closed: {y}", self.label))
                })
            })
            .collect::<Result<_>>()?;
        Ok(Action::Permutation(perm))
    }
    fn label(&self) -> String {
        self.label.clone()
    }
}

/// A representation given by an explicit matrix for every group element.
#[derive(Clone, Debug)]
pub struct MatrixRepresentation {
    n: usize,
    p: Prime,
    dim: usize,
    coefficients: Coefficients,
    table: HashMap<GfMatrix, Vec<i64>>,
    label: String,
}

impl MatrixRepresentation {
    pub fn new(
        n: usize,
        p: Prime,
        dim: usize,
        coefficients: Coefficients,
        table: HashMap<GfMatrix, Vec<i64>>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if let Some((g, m)) = table.iter().find(|(_, m)| m.len() != dim * dim) {
            return Err(Error::Shape(format!(
                "matrix of {g} has {} entries, expected {}",
                m.len(),
                dim * dim
            )));
        }
        Ok(MatrixRepresentation {
            n,
            p,
            dim,
            coefficients,
            table,
            label: label.into(),
        })
    }
}

impl Representation for MatrixRepresentation {
    fn degree(&self) -> usize {
        self.n
    }
    fn prime(&self) -> Prime {
        self.p
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn coefficients(&self) -> Coefficients {
        self.coefficients
    }
    fn action(&self, g: &GfMatrix) -> Result<Action> {
        check_group_element(self, g)?;
        self.table
            .get(g)
            .map(|m| Action::Matrix(m.clone()))
            .ok_or_else(|| {
                Error::InvalidParameters(format!("{g} is outside the group of {}", self.label))
            })
    }
    fn label(&self) -> String {
        self.label.clone()
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

/// The tensor product `M ⊗ N` with diagonal action, basis `m_a ⊗ n_b` in order `a·dim N + b`.
#[derive(Clone, Debug)]
pub struct Tensor {
    left: ModuleData,
    right: ModuleData,
}

impl Tensor {
    pub fn new(left: ModuleData, right: ModuleData) -> Result<Self> {
        if left.degree() != right.degree() || left.prime() != right.prime() {
            return Err(Error::Shape(format!(
                "{} ⊗ {}: different groups",
                left.label(),
                right.label()
            )));
        }
        Ok(Tensor { left, right })
    }
}

impl Representation for Tensor {
    fn degree(&self) -> usize {
        self.left.degree()
    }
    fn prime(&self) -> Prime {
        self.left.prime()
    }
    fn dim(&self) -> usize {
        self.left.dim() * self.right.dim()
    }
    fn coefficients(&self) -> Coefficients {
        if self.left.coefficients() == Coefficients::Integral
            && self.right.coefficients() == Coefficients::Integral
        {
            Coefficients::Integral
        } else {
            Coefficients::ModP
        }
    }
    fn action(&self, g: &GfMatrix) -> Result<Action> {
        let (da, db) = (self.left.dim(), self.right.dim());
        match (self.left.action(g)?, self.right.action(g)?) {
            (Action::Permutation(a), Action::Permutation(b)) => {
                let perm = (0..da * db).map(|k| a[k / db] * db + b[k % db]).collect();
                Ok(Action::Permutation(perm))
            }
            (a, b) => {
                let (a, b) = (dense(a, da), dense(b, db));
                let dim = da * db;
                let mut m = vec![0i64; dim * dim];
                let reduce = self.coefficients() == Coefficients::ModP;
                let p = self.prime().get() as i64;
                for r in 0..dim {
                    for c in 0..dim {
                        let v = a[(r / db) * da + c / db] * b[(r % db) * db + c % db];
                        m[r * dim + c] = if reduce { v.rem_euclid(p) } else { v };
                    }
                }
                Ok(Action::Matrix(m))
            }
        }
    }
    fn label(&self) -> String {
        format!("({}) ⊗ ({})", self.left.label(), self.right.label())
    }
}

/// The contragredient `M*`, where `g` acts by the transpose of `ρ(g⁻¹)`.
#[derive(Clone, Debug)]
pub struct Contragredient {
    inner: ModuleData,
}

impl Contragredient {
    pub fn new(inner: ModuleData) -> Self {
        Contragredient { inner }
    }
}

impl Representation for Contragredient {
    fn degree(&self) -> usize {
        self.inner.degree()
    }
    fn prime(&self) -> Prime {
        self.inner.prime()
    }
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn coefficients(&self) -> Coefficients {
        self.inner.coefficients()
    }
    fn action(&self, g: &GfMatrix) -> Result<Action> {
        let dim = self.dim();
        Ok(match self.inner.action(&g.inverse()?)? {
            // permutation matrices are orthogonal, so the dual of g⁻¹ is g itself
            Action::Permutation(_) => self.inner.action(g)?,
            Action::Matrix(m) => Action::Matrix(
                (0..dim * dim)
                    .map(|k| m[(k % dim) * dim + k / dim])
                    .collect(),
            ),
        })
    }
    fn label(&self) -> String {
        format!("({})*", self.inner.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{c, sigma_bar, unit_inverse, AlgebraElement};
    use crate::linalg::{enumerate_group, GroupKind};
    use crate::ring::{Integers, LocalRationals, PrimeField};

    fn p(v: u32) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn identity_acts_as_identity() {
        let q = LocalRationals::new(p(3));
        let m = PermutationModule::subspaces(2, 1, p(3)).unwrap();
        assert_eq!(m.dim(), 4);
        let one = AlgebraElement::one(&q, 2, p(3));
        assert_eq!(act(&one, &m).unwrap(), Mat::identity(&q, 4));
    }

    #[test]
    fn alternating_sum_kills_trivial_module() {
        let z = Integers;
        let s = sigma_bar(&z, 2, p(2));
        assert!(act(&s, &Trivial::new(2, p(2))).unwrap().is_zero());
    }

    #[test]
    fn averaging_over_units_of_f3() {
        // e_1 over F_3 is half the sum over F_3^×
        let q = LocalRationals::new(p(3));
        let units = enumerate_group(&GroupKind::General, 1, p(3)).unwrap();
        let e1 =
            AlgebraElement::group_sum(&q, &units).scale(&unit_inverse(&q, &c(1, p(3))).unwrap());
        let m = act(&e1, &PermutationModule::regular(1, p(3))).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn module_sizes() {
        assert_eq!(PermutationModule::stiefel(2, 1, p(2)).dim(), 3);
        assert_eq!(PermutationModule::regular(2, p(2)).dim(), 6);
        assert_eq!(PermutationModule::stiefel(3, 0, p(2)).dim(), 1);
    }

    #[test]
    fn mod_p_modules_refuse_other_rings() {
        let x = AlgebraElement::one(&LocalRationals::new(p(3)), 2, p(3));
        assert!(matches!(
            act(&x, &Natural::new(2, p(3))),
            Err(Error::RingMismatch(_))
        ));
        let y = AlgebraElement::one(&PrimeField::new(p(3)), 2, p(3));
        assert!(matches!(
            act(&y, &Natural::new(3, p(3))),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn constructed_modules_are_representations() {
        let gl = enumerate_group(&GroupKind::General, 2, p(3)).unwrap();
        let f = PrimeField::new(p(3));
        let nat: ModuleData = Arc::new(Natural::new(2, p(3)));
        let lines: ModuleData = Arc::new(PermutationModule::subspaces(2, 1, p(3)).unwrap());
        let modules: Vec<ModuleData> = vec![
            nat.clone(),
            lines.clone(),
            Arc::new(Tensor::new(nat.clone(), lines.clone()).unwrap()),
            Arc::new(Tensor::new(nat.clone(), nat.clone()).unwrap()),
            Arc::new(Contragredient::new(nat.clone())),
        ];
        let sample: Vec<_> = gl.elements().iter().step_by(5).cloned().collect();
        for m in &modules {
            verify_homomorphism(&f, m.as_ref(), &sample).unwrap();
        }
    }

    #[test]
    fn act_is_multiplicative() {
        let q = LocalRationals::new(p(2));
        let gl = enumerate_group(&GroupKind::General, 2, p(2)).unwrap();
        let x = AlgebraElement::from_terms(
            &q,
            2,
            p(2),
            gl.elements()
                .iter()
                .enumerate()
                .map(|(k, g)| (g.clone(), q.from_int(k as i64 - 2))),
        )
        .unwrap();
        let y = sigma_bar(&q, 2, p(2));
        let m = PermutationModule::stiefel(2, 1, p(2));
        let lhs = act(&x.mul(&y).unwrap(), &m).unwrap();
        let rhs = act(&x, &m).unwrap().mul(&act(&y, &m).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
