//! Group algebras of subgroups of `GL_n(F_p)` over an exact coefficient [`Ring`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{
    block_embed, enumerate_group, permutation_sign, permutations, shuffles, GfMatrix, GroupKind,
    MatrixGroup, Prime,
};
use crate::ring::{LocalRationals, PrimeField, Ring};

// below this many support pairs a product runs on one thread
const PARALLEL_THRESHOLD: usize = 1 << 14;

/// A finite formal combination `Σ x_g g` of invertible `n×n` matrices over `F_p`.
///
/// Zero coefficients are never stored, and terms iterate in matrix order, so equality and
/// printing are canonical.
#[derive(Clone)]
pub struct AlgebraElement<R: Ring> {
    ring: R,
    n: usize,
    p: Prime,
    coeffs: BTreeMap<GfMatrix, R::Elem>,
}

impl<R: Ring> PartialEq for AlgebraElement<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.tag() == other.ring.tag()
            && self.n == other.n
            && self.p == other.p
            && self.coeffs == other.coeffs
    }
}

impl<R: Ring> AlgebraElement<R> {
    pub fn zero(ring: &R, n: usize, p: Prime) -> Self {
        AlgebraElement {
            ring: ring.clone(),
            n,
            p,
            coeffs: BTreeMap::new(),
        }
    }

    /// The unit `δ_I`.
    pub fn one(ring: &R, n: usize, p: Prime) -> Self {
        Self::basis(ring, GfMatrix::identity(p, n))
    }

    /// The basis element `δ_g`.
    pub fn basis(ring: &R, g: GfMatrix) -> Self {
        let (n, p) = (g.rows(), g.prime());
        let mut coeffs = BTreeMap::new();
        coeffs.insert(g, ring.one());
        AlgebraElement {
            ring: ring.clone(),
            n,
            p,
            coeffs,
        }
    }

    /// Sums coefficients of repeated matrices and drops zeros.
    pub fn from_terms(
        ring: &R,
        n: usize,
        p: Prime,
        terms: impl IntoIterator<Item = (GfMatrix, R::Elem)>,
    ) -> Result<Self> {
        let mut out = Self::zero(ring, n, p);
        for (g, c) in terms {
            if g.rows() != n || g.cols() != n || g.prime() != p {
                return Err(Error::Shape(format!("{g} is not in GL_{n}(F_{p})")));
            }
            out.add_term(g, &c);
        }
        out.coeffs.retain(|_, c| !ring.is_zero(c));
        Ok(out)
    }

    fn from_int_terms(
        ring: &R,
        n: usize,
        p: Prime,
        terms: impl IntoIterator<Item = (GfMatrix, i64)>,
    ) -> Self {
        Self::from_terms(
            ring,
            n,
            p,
            terms.into_iter().map(|(g, c)| (g, ring.from_int(c))),
        )
        .expect("distinguished elements live in GL_n")
    }

    /// `Σ_{g∈G} g`.
    pub fn group_sum(ring: &R, group: &MatrixGroup) -> Self {
        Self::from_int_terms(
            ring,
            group.degree(),
            group.prime(),
            group.elements().iter().map(|g| (g.clone(), 1)),
        )
    }

    fn add_term(&mut self, g: GfMatrix, c: &R::Elem) {
        match self.coeffs.get_mut(&g) {
            Some(slot) => self.ring.add_assign(slot, c),
            None => {
                self.coeffs.insert(g, c.clone());
            }
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn support(&self) -> impl Iterator<Item = &GfMatrix> {
        self.coeffs.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GfMatrix, &R::Elem)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, g: &GfMatrix) -> R::Elem {
        self.coeffs
            .get(g)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.ring.tag() != other.ring.tag() {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.ring.tag(),
                other.ring.tag()
            )));
        }
        if self.n != other.n || self.p != other.p {
            return Err(Error::Shape(format!(
                "GL_{}(F_{}) vs GL_{}(F_{})",
                self.n, self.p, other.n, other.p
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (g, c) in &other.coeffs {
            out.add_term(g.clone(), c);
        }
        out.coeffs.retain(|_, c| !self.ring.is_zero(c));
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| self.ring.neg(c))
    }

    pub fn scale(&self, s: &R::Elem) -> Self {
        self.map_coeffs(|c| self.ring.mul(c, s))
    }

    fn map_coeffs(&self, f: impl Fn(&R::Elem) -> R::Elem) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(g, c)| (g.clone(), f(c)))
            .filter(|(_, c)| !self.ring.is_zero(c))
            .collect();
        AlgebraElement {
            ring: self.ring.clone(),
            n: self.n,
            p: self.p,
            coeffs,
        }
    }

    /// The convolution product `Σ_{gh=k} x_g y_h`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let ring = &self.ring;
        let right: Vec<(&GfMatrix, &R::Elem)> = other.coeffs.iter().collect();
        let left: Vec<(&GfMatrix, &R::Elem)> = self.coeffs.iter().collect();
        let accumulate = |chunk: &[(&GfMatrix, &R::Elem)]| {
            let mut acc: HashMap<GfMatrix, R::Elem> = HashMap::new();
            for (g, a) in chunk {
                for (h, b) in &right {
                    let prod = ring.mul(a, b);
                    let k = g.mul(h);
                    match acc.get_mut(&k) {
                        Some(slot) => ring.add_assign(slot, &prod),
                        None => {
                            acc.insert(k, prod);
                        }
                    }
                }
            }
            acc
        };
        let acc = if left.len() * right.len() < PARALLEL_THRESHOLD {
            accumulate(&left)
        } else {
            let chunk = left.len().div_ceil(rayon::current_num_threads() * 4).max(1);
            left.par_chunks(chunk)
                .map(accumulate)
                .reduce(HashMap::new, |mut a, b| {
                    for (k, v) in b {
                        match a.get_mut(&k) {
                            Some(slot) => ring.add_assign(slot, &v),
                            None => {
                                a.insert(k, v);
                            }
                        }
                    }
                    a
                })
        };
        let coeffs = acc.into_iter().filter(|(_, c)| !ring.is_zero(c)).collect();
        Ok(AlgebraElement {
            ring: ring.clone(),
            n: self.n,
            p: self.p,
            coeffs,
        })
    }

    /// Product of a sequence of elements, left to right.
    pub fn product(factors: &[&Self]) -> Result<Self> {
        let (first, rest) = factors
            .split_first()
            .ok_or_else(|| Error::InvalidParameters("empty product".into()))?;
        rest.iter().try_fold((*first).clone(), |acc, x| acc.mul(x))
    }

    /// The anti-involution `g ↦ g⁻¹`, extended linearly.
    pub fn antipode(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(g, c)| {
                (
                    g.inverse().expect("group elements are invertible"),
                    c.clone(),
                )
            })
            .collect();
        AlgebraElement {
            ring: self.ring.clone(),
            n: self.n,
            p: self.p,
            coeffs,
        }
    }

    /// The image of `x ⊗ y` under the block embedding `GL_i × GL_j → GL_{i+j}`.
    pub fn boxtimes(&self, other: &Self) -> Result<Self> {
        if self.ring.tag() != other.ring.tag() {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.ring.tag(),
                other.ring.tag()
            )));
        }
        if self.p != other.p {
            return Err(Error::Shape("block product over different primes".into()));
        }
        let ring = &self.ring;
        let mut terms = Vec::with_capacity(self.coeffs.len() * other.coeffs.len());
        for (g, a) in &self.coeffs {
            for (h, b) in &other.coeffs {
                terms.push((block_embed(g, h)?, ring.mul(a, b)));
            }
        }
        Self::from_terms(ring, self.n + other.n, self.p, terms)
    }

    /// Whether `x·x = x`.
    pub fn is_idempotent(&self) -> Result<bool> {
        Ok(self.mul(self)? == *self)
    }

    /// First matrix (in canonical order) where two elements differ, with both coefficients.
    pub fn first_difference(&self, other: &Self) -> Option<(GfMatrix, String, String)> {
        let keys: std::collections::BTreeSet<&GfMatrix> =
            self.coeffs.keys().chain(other.coeffs.keys()).collect();
        keys.into_iter().find_map(|g| {
            let (a, b) = (self.coeff(g), other.coeff(g));
            (a != b).then(|| (g.clone(), self.ring.render(&a), self.ring.render(&b)))
        })
    }
}

impl AlgebraElement<LocalRationals> {
    /// Reduction of coefficients `Z_(p) → F_p`.
    pub fn reduce_mod_p(&self) -> AlgebraElement<PrimeField> {
        let field = PrimeField::new(self.ring.prime());
        let coeffs = self
            .coeffs
            .iter()
            .map(|(g, c)| (g.clone(), self.ring.reduce(c)))
            .filter(|(_, c)| *c != 0)
            .collect();
        AlgebraElement {
            ring: field,
            n: self.n,
            p: self.p,
            coeffs,
        }
    }
}

impl<R: Ring> fmt::Debug for AlgebraElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (g, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}·{g}", self.ring.render(c))?;
        }
        Ok(())
    }
}

/// `c_n = (p - 1)(p^2 - 1)···(p^n - 1)`, with `c_0 = 1`.
pub fn c(n: usize, p: Prime) -> BigInt {
    let q = BigInt::from(p.get());
    (1..=n).fold(BigInt::one(), |acc, i| acc * (q.pow(i as u32) - 1))
}

/// The inverse of an integer that must be a unit of `ring`.
pub fn unit_inverse<R: Ring>(ring: &R, v: &BigInt) -> Result<R::Elem> {
    ring.inv(&ring.from_bigint(v))
        .ok_or_else(|| Error::NotInvertible(format!("{v} in {}", ring.tag())))
}

/// `Σ_{σ∈Σ_n} (-1)^σ σ`.
pub fn sigma_bar<R: Ring>(ring: &R, n: usize, p: Prime) -> AlgebraElement<R> {
    let terms = permutations(n)
        .into_iter()
        .map(|s| (GfMatrix::permutation(p, &s), permutation_sign(&s)));
    AlgebraElement::from_int_terms(ring, n, p, terms)
}

/// The sum of the Borel subgroup of invertible upper-triangular matrices.
pub fn b_bar<R: Ring>(ring: &R, n: usize, p: Prime) -> AlgebraElement<R> {
    let group = enumerate_group(&GroupKind::Borel, n, p).expect("Borel subgroup");
    AlgebraElement::group_sum(ring, &group)
}

/// The sum of the block unipotent subgroup `(I_i *; 0 I_j)` of `GL_{i+j}`.
pub fn u_bar<R: Ring>(ring: &R, i: usize, j: usize, p: Prime) -> AlgebraElement<R> {
    let group = enumerate_group(&GroupKind::Unipotent { i, j }, i + j, p)
        .expect("block unipotent subgroup");
    AlgebraElement::group_sum(ring, &group)
}

/// The signed sum of the `(i, j)`-shuffle permutation matrices.
pub fn shuffle_bar<R: Ring>(ring: &R, i: usize, j: usize, p: Prime) -> AlgebraElement<R> {
    let terms = shuffles(i, j)
        .into_iter()
        .map(|s| (GfMatrix::permutation(p, &s), permutation_sign(&s)));
    AlgebraElement::from_int_terms(ring, i + j, p, terms)
}

/// `(Σ_i × Σ_j)‾`, the signed sum of the block permutation subgroup.
pub fn block_sigma_bar<R: Ring>(ring: &R, i: usize, j: usize, p: Prime) -> AlgebraElement<R> {
    sigma_bar(ring, i, p)
        .boxtimes(&sigma_bar(ring, j, p))
        .expect("same ring")
}

/// `(B_i × B_j)‾`.
pub fn block_b_bar<R: Ring>(ring: &R, i: usize, j: usize, p: Prime) -> AlgebraElement<R> {
    b_bar(ring, i, p)
        .boxtimes(&b_bar(ring, j, p))
        .expect("same ring")
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;
    use crate::linalg::{enumerate_group, GroupKind};
    use crate::ring::Integers;

    fn p(v: u32) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn constants() {
        assert_eq!(c(0, p(5)), BigInt::from(1));
        assert_eq!(c(1, p(2)), BigInt::from(1));
        assert_eq!(c(2, p(3)), BigInt::from(16));
        assert_eq!(c(3, p(2)), BigInt::from(21));
    }

    #[test]
    fn distinguished_supports() {
        let z = Integers;
        assert_eq!(sigma_bar(&z, 1, p(3)), AlgebraElement::one(&z, 1, p(3)));
        assert_eq!(b_bar(&z, 2, p(2)).support_len(), 2);
        assert_eq!(b_bar(&z, 2, p(3)).support_len(), 12);
        assert_eq!(u_bar(&z, 1, 1, p(3)).support_len(), 3);
        assert_eq!(shuffle_bar(&z, 1, 2, p(2)).support_len(), 3);
        let swap = GfMatrix::permutation(p(2), &[1, 0]);
        let expected = AlgebraElement::from_terms(
            &z,
            2,
            p(2),
            [
                (GfMatrix::identity(p(2), 2), BigInt::from(1)),
                (swap, BigInt::from(-1)),
            ],
        )
        .unwrap();
        assert_eq!(shuffle_bar(&z, 1, 1, p(2)), expected);
    }

    #[test]
    fn sigma_bar_squares_to_twice_itself() {
        let q = LocalRationals::new(p(3));
        let s = sigma_bar(&q, 2, p(3));
        assert_eq!(s.mul(&s).unwrap(), s.scale(&q.from_int(2)));
    }

    #[test]
    fn basis_elements_multiply_as_the_group() {
        let z = Integers;
        let sym = enumerate_group(&GroupKind::Permutations, 3, p(2)).unwrap();
        for g in sym.elements() {
            for h in sym.elements() {
                let prod = AlgebraElement::basis(&z, g.clone())
                    .mul(&AlgebraElement::basis(&z, h.clone()))
                    .unwrap();
                assert_eq!(prod, AlgebraElement::basis(&z, g.mul(h)));
            }
        }
    }

    #[test]
    fn mismatched_operands_are_rejected() {
        let a = AlgebraElement::one(&LocalRationals::new(p(2)), 2, p(2));
        let b = AlgebraElement::one(&LocalRationals::new(p(3)), 2, p(2));
        assert!(matches!(a.mul(&b), Err(Error::RingMismatch(_))));
        let c3 = AlgebraElement::one(&LocalRationals::new(p(2)), 3, p(2));
        assert!(a.add(&c3).is_err());
    }

    #[test]
    fn units_of_local_rings() {
        let q = LocalRationals::new(p(3));
        assert_eq!(
            unit_inverse(&q, &BigInt::from(16)).unwrap(),
            BigRational::new(1.into(), 16.into())
        );
        assert!(unit_inverse(&q, &BigInt::from(3)).is_err());
        assert!(unit_inverse(&Integers, &BigInt::from(2)).is_err());
    }

    #[test]
    fn reduction_is_a_ring_map() {
        let q = LocalRationals::new(p(3));
        let x = b_bar(&q, 2, p(3)).scale(&unit_inverse(&q, &BigInt::from(2)).unwrap());
        let y = sigma_bar(&q, 2, p(3));
        let lhs = x.mul(&y).unwrap().reduce_mod_p();
        let rhs = x.reduce_mod_p().mul(&y.reduce_mod_p()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn antipode_reverses_products() {
        let z = Integers;
        let x = b_bar(&z, 2, p(3));
        let y = sigma_bar(&z, 2, p(3));
        assert_eq!(
            x.mul(&y).unwrap().antipode(),
            y.antipode().mul(&x.antipode()).unwrap()
        );
    }
}
