//! Steinberg idempotents, the product on Steinberg summands, and the identities relating them.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{
    b_bar, block_b_bar, block_sigma_bar, c, shuffle_bar, sigma_bar, u_bar, unit_inverse,
    AlgebraElement,
};
use crate::error::{Error, Result};
use crate::linalg::{enumerate_group, GfMatrix, GroupKind, Prime};
use crate::module::{act, action_matrix, check_ring, Representation, Tensor};
use crate::ring::{LocalRationals, Mat, PrimeField, Ring};

/// Which idempotent of the group algebra of `GL_n` to use.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum IdempotentKind {
    /// `e_n = c_n⁻¹ Σ̄_n B̄_n`.
    Steinberg,
    /// `ê_n = c_n⁻¹ B̄_n Σ̄_n`.
    Conjugate,
    /// `e_{i_1} ⊠ ··· ⊠ e_{i_k}` for the given block sizes.
    Block(Vec<usize>),
}

impl fmt::Display for IdempotentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdempotentKind::Steinberg => write!(f, "e"),
            IdempotentKind::Conjugate => write!(f, "ê"),
            IdempotentKind::Block(parts) => {
                let parts: Vec<String> = parts.iter().map(|i| format!("e_{i}")).collect();
                write!(f, "{}", parts.join("⊠"))
            }
        }
    }
}

/// The Steinberg idempotent `e_n` together with its parameters.
#[derive(Clone, Debug)]
pub struct SteinbergIdempotent<R: Ring> {
    pub n: usize,
    pub p: Prime,
    pub element: AlgebraElement<R>,
}

impl<R: Ring> SteinbergIdempotent<R> {
    pub fn new(ring: &R, n: usize, p: Prime) -> Result<Self> {
        Ok(SteinbergIdempotent {
            n,
            p,
            element: steinberg_idempotent(ring, n, p)?,
        })
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameters("n must be at least 1".into()));
    }
    Ok(())
}

/// `e_n = c_n⁻¹ Σ̄_n B̄_n`. Fails over rings where `c_n` is not a unit.
pub fn steinberg_idempotent<R: Ring>(ring: &R, n: usize, p: Prime) -> Result<AlgebraElement<R>> {
    check_n(n)?;
    let scale = unit_inverse(ring, &c(n, p))?;
    Ok(sigma_bar(ring, n, p).mul(&b_bar(ring, n, p))?.scale(&scale))
}

/// `ê_n = c_n⁻¹ B̄_n Σ̄_n`.
pub fn conjugate_idempotent<R: Ring>(ring: &R, n: usize, p: Prime) -> Result<AlgebraElement<R>> {
    check_n(n)?;
    let scale = unit_inverse(ring, &c(n, p))?;
    Ok(b_bar(ring, n, p).mul(&sigma_bar(ring, n, p))?.scale(&scale))
}

/// `e_{i_1} ⊠ ··· ⊠ e_{i_k}` inside the group algebra of `GL_{i_1+···+i_k}`.
pub fn block_idempotent<R: Ring>(ring: &R, parts: &[usize], p: Prime) -> Result<AlgebraElement<R>> {
    let (first, rest) = parts
        .split_first()
        .ok_or_else(|| Error::InvalidParameters("no blocks".into()))?;
    rest.iter()
        .try_fold(steinberg_idempotent(ring, *first, p)?, |acc, &k| {
            acc.boxtimes(&steinberg_idempotent(ring, k, p)?)
        })
}

pub fn idempotent<R: Ring>(
    ring: &R,
    kind: &IdempotentKind,
    n: usize,
    p: Prime,
) -> Result<AlgebraElement<R>> {
    let e = match kind {
        IdempotentKind::Steinberg => steinberg_idempotent(ring, n, p)?,
        IdempotentKind::Conjugate => conjugate_idempotent(ring, n, p)?,
        IdempotentKind::Block(parts) => block_idempotent(ring, parts, p)?,
    };
    if e.degree() != n {
        return Err(Error::InvalidParameters(format!(
            "{kind} does not live in GL_{n}"
        )));
    }
    Ok(e)
}

/// The Steinberg product `Σ̄_shuf(i,j)·Ū_{i,j}` as an element of the group algebra of `GL_{i+j}`.
pub fn product_element<R: Ring>(
    ring: &R,
    i: usize,
    j: usize,
    p: Prime,
) -> Result<AlgebraElement<R>> {
    check_n(i)?;
    check_n(j)?;
    shuffle_bar(ring, i, j, p).mul(&u_bar(ring, i, j, p))
}

/// The permutation `k ↦ k + j mod (i + j)` exchanging a block of size `i` with one of size `j`.
pub fn rotation(i: usize, j: usize) -> Vec<usize> {
    (0..i + j).map(|k| (k + j) % (i + j)).collect()
}

/// `c_{i+j} / (c_i c_j)` as an integer (it is the Gaussian binomial coefficient).
pub fn product_scalar(i: usize, j: usize, p: Prime) -> BigInt {
    c(i + j, p) / (c(i, p) * c(j, p))
}

/// A basis of the summand `eM`, together with its rank.
#[derive(Clone, Debug)]
pub struct SummandBasis<R: Ring> {
    pub module: String,
    pub idempotent: IdempotentKind,
    pub basis: Vec<Vec<R::Elem>>,
    pub rank: usize,
}

/// Linearly independent columns of `m`, spanning its image.
pub fn image_basis<R: Ring>(m: &Mat<R>) -> Vec<Vec<R::Elem>> {
    m.pivot_columns().into_iter().map(|c| m.column(c)).collect()
}

/// The summand `eM` cut out by an idempotent, with an explicit basis.
pub fn summand<R: Ring>(
    ring: &R,
    kind: &IdempotentKind,
    m: &dyn Representation,
) -> Result<SummandBasis<R>> {
    let e = idempotent(ring, kind, m.degree(), m.prime())?;
    let basis = image_basis(&act(&e, m)?);
    Ok(SummandBasis {
        module: m.label(),
        idempotent: kind.clone(),
        rank: basis.len(),
        basis,
    })
}

/// `|G| · coeff_I(e)`, the trace of left multiplication by `e` on the regular module.
/// For an idempotent over a field of characteristic zero this is the rank of `eR`.
pub fn regular_trace(e: &AlgebraElement<LocalRationals>) -> Result<BigInt> {
    let order = crate::linalg::general_linear_order(e.degree(), e.prime());
    let coeff = e.coeff(&GfMatrix::identity(e.prime(), e.degree()))
        * num_rational::BigRational::from_integer(order.into());
    if !coeff.is_integer() {
        return Err(Error::verification(
            "regular-trace",
            json!({ "trace": coeff.to_string() }),
        ));
    }
    Ok(coeff.to_integer())
}

fn mismatch<R: Ring>(
    check: &'static str,
    x: &AlgebraElement<R>,
    y: &AlgebraElement<R>,
    extra: Value,
) -> Error {
    let mut witness = json!({ "first_difference": null });
    if let Some((g, a, b)) = x.first_difference(y) {
        witness["first_difference"] = json!({ "element": g.to_string(), "lhs": a, "rhs": b });
    }
    if let (Value::Object(w), Value::Object(e)) = (&mut witness, extra) {
        w.extend(e);
    }
    Error::verification(check, witness)
}

/// `e_n² = e_n` and `ê_n² = ê_n` over `Z_(p)`, and reduction mod `p` commutes with building `e_n`.
pub fn idempotent_check(n: usize, p: Prime) -> Result<Value> {
    let q = LocalRationals::new(p);
    let e = steinberg_idempotent(&q, n, p)?;
    let e2 = e.mul(&e)?;
    if e2 != e {
        return Err(mismatch("idempotent", &e2, &e, json!({ "element": "e" })));
    }
    let hat = conjugate_idempotent(&q, n, p)?;
    let hat2 = hat.mul(&hat)?;
    if hat2 != hat {
        return Err(mismatch(
            "idempotent",
            &hat2,
            &hat,
            json!({ "element": "ê" }),
        ));
    }
    let direct = steinberg_idempotent(&PrimeField::new(p), n, p)?;
    let reduced = e.reduce_mod_p();
    if reduced != direct {
        return Err(mismatch(
            "idempotent",
            &reduced,
            &direct,
            json!({ "element": "e mod p" }),
        ));
    }
    if direct.mul(&direct)? != direct {
        return Err(Error::verification(
            "idempotent",
            json!({ "element": "e over F_p" }),
        ));
    }
    Ok(json!({
        "c_n": c(n, p).to_string(),
        "support": e.support_len(),
        "conjugate_support": hat.support_len(),
        "reduction_commutes": true,
    }))
}

/// `Σ̄_n B̄_n Σ̄_n B̄_n = c_n Σ̄_n B̄_n` over the integers.
pub fn steinberg_lemma_check(n: usize, p: Prime) -> Result<Value> {
    check_n(n)?;
    let z = crate::ring::Integers;
    let x = sigma_bar(&z, n, p).mul(&b_bar(&z, n, p))?;
    let lhs = x.mul(&x)?;
    let cn = c(n, p);
    let rhs = x.scale(&cn);
    if lhs != rhs {
        return Err(mismatch(
            "steinberg-lemma",
            &lhs,
            &rhs,
            json!({ "c_n": cn.to_string() }),
        ));
    }
    Ok(
        json!({ "c_n": cn.to_string(), "lhs_support": lhs.support_len(), "rhs_support": rhs.support_len() }),
    )
}

/// The identities between block sums that underlie the product formula.
///
/// The shuffle identity holds with the shuffle sum on the left of the block sum; the reversed
/// order is reported separately, as `shuffle_right`.
pub fn block_identities_check(i: usize, j: usize, p: Prime) -> Result<Value> {
    check_n(i)?;
    check_n(j)?;
    let z = crate::ring::Integers;
    let n = i + j;
    let u = u_bar(&z, i, j, p);
    let bb = block_b_bar(&z, i, j, p);
    let ss = block_sigma_bar(&z, i, j, p);
    let shuf = shuffle_bar(&z, i, j, p);
    let b = b_bar(&z, n, p);
    let s = sigma_bar(&z, n, p);
    let checks = [
        ("unipotent_borel", u.mul(&bb)?, b.clone()),
        ("borel_unipotent", bb.mul(&u)?, b),
        ("shuffle_left", shuf.mul(&ss)?, s.clone()),
        ("unipotent_commutes", u.mul(&ss)?, ss.mul(&u)?),
    ];
    for (name, lhs, rhs) in &checks {
        if lhs != rhs {
            return Err(mismatch(
                "block-identities",
                lhs,
                rhs,
                json!({ "identity": name }),
            ));
        }
    }
    let shuffle_right = ss.mul(&shuf)? == s;
    Ok(json!({
        "unipotent_borel": true,
        "borel_unipotent": true,
        "shuffle_left": true,
        "unipotent_commutes": true,
        "shuffle_right": shuffle_right,
    }))
}

/// `Σ̄_shuf(i,j)·Ū_{i,j}·(e_i ⊠ e_j) = (c_{i+j}/(c_i c_j))·e_{i+j}` over `Z_(p)`.
pub fn product_identity_check(i: usize, j: usize, p: Prime) -> Result<Value> {
    let q = LocalRationals::new(p);
    let lhs = product_element(&q, i, j, p)?.mul(&block_idempotent(&q, &[i, j], p)?)?;
    let scalar = product_scalar(i, j, p);
    let rhs = steinberg_idempotent(&q, i + j, p)?.scale(&q.from_bigint(&scalar));
    if lhs != rhs {
        return Err(mismatch(
            "product-identity",
            &lhs,
            &rhs,
            json!({ "scalar": scalar.to_string() }),
        ));
    }
    Ok(json!({ "scalar": scalar.to_string(), "support": lhs.support_len() }))
}

fn vectors_json<R: Ring>(ring: &R, v: &[R::Elem]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(ring.render(x))).collect())
}

fn first_bad<R: Ring>(
    ring: &R,
    check: &'static str,
    basis: &[Vec<R::Elem>],
    f: impl Fn(&[R::Elem]) -> Result<(Vec<R::Elem>, Vec<R::Elem>)>,
) -> Result<()> {
    for (k, v) in basis.iter().enumerate() {
        let (lhs, rhs) = f(v)?;
        if lhs != rhs {
            return Err(Error::verification(
                check,
                json!({ "basis_index": k, "lhs": vectors_json(ring, &lhs), "rhs": vectors_json(ring, &rhs) }),
            ));
        }
    }
    Ok(())
}

/// The maps `e_nM ⇄ ê_nM` given by `B̄_n` and `Σ̄_n` compose to `c_n` in both orders.
pub fn conjugate_iso_check<R: Ring>(ring: &R, m: &dyn Representation) -> Result<Value> {
    let (n, p) = (m.degree(), m.prime());
    check_ring(ring, m)?;
    let b = act(&b_bar(ring, n, p), m)?;
    let s = act(&sigma_bar(ring, n, p), m)?;
    let e = act(&steinberg_idempotent(ring, n, p)?, m)?;
    let hat = act(&conjugate_idempotent(ring, n, p)?, m)?;
    let cn = ring.from_bigint(&c(n, p));
    let (e_basis, hat_basis) = (image_basis(&e), image_basis(&hat));
    // B̄ sends eM into êM, Σ̄ sends êM into eM, and the round trips are c_n
    first_bad(ring, "conjugate-iso", &e_basis, |x| {
        let y = b.apply(x);
        Ok((hat.apply(&y), y))
    })?;
    first_bad(ring, "conjugate-iso", &hat_basis, |y| {
        let x = s.apply(y);
        Ok((e.apply(&x), x))
    })?;
    first_bad(ring, "conjugate-iso", &e_basis, |x| {
        Ok((
            s.apply(&b.apply(x)),
            x.iter().map(|v| ring.mul(v, &cn)).collect(),
        ))
    })?;
    first_bad(ring, "conjugate-iso", &hat_basis, |y| {
        Ok((
            b.apply(&s.apply(y)),
            y.iter().map(|v| ring.mul(v, &cn)).collect(),
        ))
    })?;
    if e_basis.len() != hat_basis.len() {
        return Err(Error::verification(
            "conjugate-iso",
            json!({ "rank_e": e_basis.len(), "rank_conjugate": hat_basis.len() }),
        ));
    }
    Ok(json!({ "module": m.label(), "ring": ring.tag().to_string(), "rank": e_basis.len() }))
}

/// Dimension of the coinvariants `M_G`, the cokernel of `⊕_s (ρ(s) − 1)` over generators `s`.
pub fn coinvariant_rank<R: Ring>(
    ring: &R,
    m: &dyn Representation,
    generators: &[GfMatrix],
) -> Result<usize> {
    let dim = m.dim();
    let id = Mat::identity(ring, dim);
    let mut stacked = Mat::zeros(ring, dim, 0);
    for g in generators {
        stacked = stacked.hstack(&action_matrix(ring, m, g)?.sub(&id)?)?;
    }
    Ok(dim - stacked.rank())
}

/// `rank e_nM = rank (St_n ⊗ M)_{GL_n}`, where `st` realizes the Steinberg module.
pub fn coinvariants_iso_check<R: Ring>(
    ring: &R,
    st: crate::module::ModuleData,
    m: crate::module::ModuleData,
) -> Result<Value> {
    let (n, p) = (m.degree(), m.prime());
    let summand_rank = summand(ring, &IdempotentKind::Steinberg, m.as_ref())?.rank;
    let gens = enumerate_group(&GroupKind::General, n, p)?.generators();
    let tensor = Tensor::new(st, m.clone())?;
    let coinvariants = coinvariant_rank(ring, &tensor, &gens)?;
    let witness = json!({
        "module": m.label(),
        "ring": ring.tag().to_string(),
        "summand_rank": summand_rank,
        "coinvariant_rank": coinvariants,
    });
    if summand_rank != coinvariants {
        return Err(Error::verification("coinvariants-iso", witness));
    }
    Ok(witness)
}

/// Scaling by `c_i c_j / c_{i+j}` and applying `e_i ⊠ e_j`, then the Steinberg product,
/// is the identity on `e_{i+j}M`.
pub fn retraction_check<R: Ring>(
    ring: &R,
    i: usize,
    j: usize,
    m: &dyn Representation,
) -> Result<Value> {
    let p = m.prime();
    if i + j != m.degree() {
        return Err(Error::InvalidParameters(format!(
            "{i} + {j} != {}",
            m.degree()
        )));
    }
    let e = act(&steinberg_idempotent(ring, i + j, p)?, m)?;
    let block = act(&block_idempotent(ring, &[i, j], p)?, m)?;
    let product = act(&product_element(ring, i, j, p)?, m)?;
    let scale = ring.mul(
        &ring.from_bigint(&(c(i, p) * c(j, p))),
        &unit_inverse(ring, &c(i + j, p))?,
    );
    let basis = image_basis(&e);
    first_bad(ring, "retraction", &basis, |v| {
        let f: Vec<R::Elem> = block.apply(v).iter().map(|x| ring.mul(x, &scale)).collect();
        Ok((product.apply(&f), v.to_vec()))
    })?;
    Ok(json!({ "module": m.label(), "ring": ring.tag().to_string(), "rank": basis.len() }))
}

/// Both composites `(e_i⊠e_j⊠e_k)M → e_{i+j+k}M` agree: first as elements of the group
/// algebra, then on a basis of the summand.
pub fn associativity_check<R: Ring>(
    ring: &R,
    i: usize,
    j: usize,
    k: usize,
    m: &dyn Representation,
) -> Result<Value> {
    let p = m.prime();
    if i + j + k != m.degree() {
        return Err(Error::InvalidParameters(format!(
            "{i} + {j} + {k} != {}",
            m.degree()
        )));
    }
    let id = |d: usize| AlgebraElement::one(ring, d, p);
    let first_left = product_element(ring, i, j, p)?.boxtimes(&id(k))?;
    let then_left = product_element(ring, i + j, k, p)?;
    let first_right = id(i).boxtimes(&product_element(ring, j, k, p)?)?;
    let then_right = product_element(ring, i, j + k, p)?;
    let block = block_idempotent(ring, &[i, j, k], p)?;
    let left = then_left.mul(&first_left)?.mul(&block)?;
    let right = then_right.mul(&first_right)?.mul(&block)?;
    if left != right {
        return Err(mismatch(
            "assoc-comm",
            &left,
            &right,
            json!({ "diagram": "associativity" }),
        ));
    }
    // the intermediate maps land in the intermediate summands
    let mid_left = act(&block_idempotent(ring, &[i + j, k], p)?, m)?;
    let mid_right = act(&block_idempotent(ring, &[i, j + k], p)?, m)?;
    let (fl, tl) = (act(&first_left, m)?, act(&then_left, m)?);
    let (fr, tr) = (act(&first_right, m)?, act(&then_right, m)?);
    let basis = image_basis(&act(&block, m)?);
    first_bad(ring, "assoc-comm", &basis, |v| {
        let y = fl.apply(v);
        Ok((mid_left.apply(&y), y))
    })?;
    first_bad(ring, "assoc-comm", &basis, |v| {
        let y = fr.apply(v);
        Ok((mid_right.apply(&y), y))
    })?;
    first_bad(ring, "assoc-comm", &basis, |v| {
        Ok((tl.apply(&fl.apply(v)), tr.apply(&fr.apply(v))))
    })?;
    Ok(json!({ "module": m.label(), "ring": ring.tag().to_string(), "rank": basis.len() }))
}

/// Result of comparing the two sides of the commutativity triangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutativityReport {
    /// `e_i ⊠ e_j = σ⁻¹ (e_j ⊠ e_i) σ` for the rotation `σ`.
    pub conjugation: bool,
    /// The product after `σ` equals the direct product on `(e_i⊠e_j)M`.
    pub commutes: bool,
    /// They agree after multiplying one side by `(-1)^{ij}`.
    pub commutes_up_to_sign: bool,
    /// They agree up to `(-1)^{ij}` on `(e_i⊠e_j)e_{i+j}M`, the image of the retraction.
    pub commutes_on_retraction_image_up_to_sign: bool,
    pub rank: usize,
    pub retraction_image_rank: usize,
}

/// Compares `x ↦ Σ̄_shuf(j,i)Ū_{j,i}σx` with `x ↦ Σ̄_shuf(i,j)Ū_{i,j}x` on `(e_i⊠e_j)M`.
pub fn commutativity_report<R: Ring>(
    ring: &R,
    i: usize,
    j: usize,
    m: &dyn Representation,
) -> Result<CommutativityReport> {
    let p = m.prime();
    if i + j != m.degree() {
        return Err(Error::InvalidParameters(format!(
            "{i} + {j} != {}",
            m.degree()
        )));
    }
    let sigma = AlgebraElement::basis(ring, GfMatrix::permutation(p, &rotation(i, j)));
    let sigma_inv = sigma.antipode();
    let eij = block_idempotent(ring, &[i, j], p)?;
    let eji = block_idempotent(ring, &[j, i], p)?;
    let conjugation = sigma_inv.mul(&eji)?.mul(&sigma)? == eij;
    let via = act(&product_element(ring, j, i, p)?.mul(&sigma)?, m)?;
    let direct = act(&product_element(ring, i, j, p)?, m)?;
    let basis = image_basis(&act(&eij, m)?);
    let sign = ring.from_int(if (i * j).is_multiple_of(2) { 1 } else { -1 });
    let agree = |basis: &[Vec<R::Elem>], sign: &R::Elem| {
        basis.iter().all(|v| {
            let b = direct.apply(v);
            via.apply(v)
                .iter()
                .map(|x| ring.mul(x, sign))
                .collect::<Vec<_>>()
                == b
        })
    };
    let image = image_basis(&act(&eij.mul(&steinberg_idempotent(ring, i + j, p)?)?, m)?);
    Ok(CommutativityReport {
        conjugation,
        commutes: agree(&basis, &ring.one()),
        commutes_up_to_sign: agree(&basis, &sign),
        commutes_on_retraction_image_up_to_sign: agree(&image, &sign),
        rank: basis.len(),
        retraction_image_rank: image.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{PermutationModule, Trivial};

    fn p(v: u32) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn e1_over_f2_is_the_unit() {
        let f = PrimeField::new(p(2));
        assert_eq!(
            steinberg_idempotent(&f, 1, p(2)).unwrap(),
            AlgebraElement::one(&f, 1, p(2))
        );
    }

    #[test]
    fn integers_cannot_host_the_idempotent() {
        assert!(matches!(
            steinberg_idempotent(&crate::ring::Integers, 2, p(2)),
            Err(Error::NotInvertible(_))
        ));
        assert!(matches!(
            steinberg_idempotent(&crate::ring::Integers, 2, p(3)),
            Err(Error::NotInvertible(_))
        ));
    }

    #[test]
    fn small_idempotents() {
        for (n, q) in [(1, 2), (1, 3), (2, 2), (2, 3)] {
            idempotent_check(n, p(q)).unwrap();
            steinberg_lemma_check(n, p(q)).unwrap();
        }
    }

    #[test]
    fn lemma_for_gl1_f3() {
        // B̄_1 is the sum over F_3^×, which squares to twice itself
        let w = steinberg_lemma_check(1, p(3)).unwrap();
        assert_eq!(w["c_n"], "2");
    }

    #[test]
    fn product_scalars() {
        assert_eq!(product_scalar(1, 1, p(2)), BigInt::from(3));
        assert_eq!(product_scalar(1, 1, p(3)), BigInt::from(4));
        assert_eq!(product_scalar(1, 2, p(2)), BigInt::from(7));
        assert_eq!(product_scalar(2, 1, p(2)), BigInt::from(7));
    }

    #[test]
    fn rotation_exchanges_blocks() {
        assert_eq!(rotation(1, 2), vec![2, 0, 1]);
        assert_eq!(rotation(2, 1), vec![1, 2, 0]);
    }

    #[test]
    fn summand_of_regular_module() {
        let q = LocalRationals::new(p(2));
        let s = summand(
            &q,
            &IdempotentKind::Steinberg,
            &PermutationModule::regular(2, p(2)),
        )
        .unwrap();
        assert_eq!(s.rank, 2);
        let s3 = summand(
            &LocalRationals::new(p(3)),
            &IdempotentKind::Steinberg,
            &PermutationModule::regular(2, p(3)),
        )
        .unwrap();
        assert_eq!(s3.rank, 3);
    }

    #[test]
    fn trace_formula_matches_rank() {
        let q = LocalRationals::new(p(3));
        let e = steinberg_idempotent(&q, 2, p(3)).unwrap();
        assert_eq!(regular_trace(&e).unwrap(), BigInt::from(3));
    }

    #[test]
    fn conjugate_iso_on_trivial_and_regular() {
        let q = LocalRationals::new(p(2));
        let w = conjugate_iso_check(&q, &Trivial::new(2, p(2))).unwrap();
        assert_eq!(w["rank"], 0);
        let w = conjugate_iso_check(&q, &PermutationModule::regular(2, p(2))).unwrap();
        assert_eq!(w["rank"], 2);
    }

    #[test]
    fn retraction_on_regular_module() {
        let q = LocalRationals::new(p(3));
        retraction_check(&q, 1, 1, &PermutationModule::regular(2, p(3))).unwrap();
    }
}
