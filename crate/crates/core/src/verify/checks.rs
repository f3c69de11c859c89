use serde_json::{json, Value};

use super::{Check, Outcome, Params};
use crate::equivariant::{
    contractible_summand_report, fixed_point_index_report, hom_partition_check, make_pgroup,
    product_compatibility_sweep, theorem15_graded_check, GroupSpec, PGroup, VectorGroup,
};
use crate::error::{Error, Result};
use crate::flag::{
    cycle_check, join_product_check, prop10_check, top_homology_iso_check, unipotent_fixed_check,
    ComplexMode, OrderComplex,
};
use crate::linalg::{
    bruhat_check, enumerate_group, general_linear_order, p_subgroups_up_to_conjugacy, GroupKind,
    Prime,
};
use crate::module::{ModuleData, PermutationModule};
use crate::ring::LocalRationals;
use crate::steinberg::{
    associativity_check, block_identities_check, commutativity_report, idempotent_check,
    product_identity_check, retraction_check, steinberg_lemma_check, summand, IdempotentKind,
};
use crate::torus::{lemma17_rank_check, CoefficientFunctor, Duality};

/// Largest `GL_n(F_p)` the group-algebra checks will touch.
const ALGEBRA_LIMIT: u64 = 25_000;
/// Largest group whose regular module is used as the test module.
const REGULAR_LIMIT: u64 = 200;

fn need<T: Copy>(v: Option<T>, name: &str) -> Result<T> {
    Params::need(v, name)
}

fn binomial2(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

fn positive(v: usize, name: &str) -> Result<usize> {
    if v == 0 {
        return Err(Error::InvalidParameters(format!(
            "`{name}` must be positive"
        )));
    }
    Ok(v)
}

fn too_big(n: usize, p: Prime) -> Option<Outcome> {
    let order = general_linear_order(n, p);
    (order > ALGEBRA_LIMIT)
        .then(|| Outcome::Skip(format!("|GL_{n}(F_{p})| = {order} exceeds {ALGEBRA_LIMIT}")))
}

/// The regular module when it is small, otherwise the lines of `F_p^n`.
fn test_module(n: usize, p: Prime) -> ModuleData {
    if general_linear_order(n, p) <= REGULAR_LIMIT {
        std::sync::Arc::new(PermutationModule::regular(n, p))
    } else {
        std::sync::Arc::new(PermutationModule::stiefel(n, 1, p))
    }
}

fn group(params: &Params) -> Result<PGroup> {
    let spec: GroupSpec = params
        .group
        .as_deref()
        .ok_or_else(|| Error::InvalidParameters("missing parameter `group`".into()))?
        .parse()?;
    make_pgroup(&spec)
}

pub(super) fn dispatch(check: Check, params: &Params) -> Result<Outcome> {
    let p = params.prime()?;
    match check {
        Check::Idempotent => idempotent(need(params.n, "n")?, p),
        Check::SteinbergLemma => {
            let n = positive(need(params.n, "n")?, "n")?;
            match too_big(n, p) {
                Some(skip) => Ok(skip),
                None => Ok(Outcome::Pass(steinberg_lemma_check(n, p)?)),
            }
        }
        Check::ProductIdentity => {
            let (i, j) = (need(params.i, "i")?, need(params.j, "j")?);
            if let Some(skip) = too_big(i + j, p) {
                return Ok(skip);
            }
            let identity = product_identity_check(i, j, p)?;
            let blocks = block_identities_check(i, j, p)?;
            Ok(Outcome::Pass(
                json!({ "product": identity, "block_identities": blocks }),
            ))
        }
        Check::Retraction => {
            let (i, j) = (need(params.i, "i")?, need(params.j, "j")?);
            if let Some(skip) = too_big(i + j, p) {
                return Ok(skip);
            }
            let m = test_module(i + j, p);
            Ok(Outcome::Pass(retraction_check(
                &LocalRationals::new(p),
                i,
                j,
                m.as_ref(),
            )?))
        }
        Check::AssocComm => assoc_comm(
            need(params.i, "i")?,
            need(params.j, "j")?,
            params.k.unwrap_or(1),
            p,
        ),
        Check::FlagHomology => flag_homology(positive(need(params.n, "n")?, "n")?, p),
        Check::Cycles => {
            let n = positive(need(params.n, "n")?, "n")?;
            let cycles = cycle_check(n, p)?;
            let iso = top_homology_iso_check(n, p)?;
            Ok(Outcome::Pass(
                json!({ "cycles": cycles, "isomorphism": iso }),
            ))
        }
        Check::JoinProduct => Ok(Outcome::Pass(join_product_check(
            need(params.i, "i")?,
            need(params.j, "j")?,
            p,
        )?)),
        Check::Prop10 => Ok(Outcome::Pass(prop10_check(
            need(params.n, "n")?,
            need(params.i, "i")?,
            p,
        )?)),
        Check::Bruhat => {
            let n = positive(need(params.n, "n")?, "n")?;
            match too_big(n, p) {
                Some(skip) => Ok(skip),
                None => Ok(Outcome::Pass(bruhat_check(n, p)?)),
            }
        }
        Check::UnipotentFixed => unipotent_fixed(positive(need(params.n, "n")?, "n")?, p),
        Check::HomPartition => Ok(Outcome::Pass(hom_partition_check(
            &group(params)?,
            need(params.n, "n")?,
            p,
        )?)),
        Check::Lemma17 => lemma17(
            need(params.n, "n")?,
            need(params.d, "d")?,
            p,
            need(params.max_degree, "max_degree")?,
        ),
        Check::Theorem15 => {
            let g = group(params)?;
            Ok(Outcome::Pass(theorem15_graded_check(
                &g,
                need(params.n, "n")?,
                p,
                need(params.max_degree, "max_degree")?,
            )?))
        }
        Check::FixedPointIndex => {
            fixed_point_index(&group(params)?, positive(need(params.n, "n")?, "n")?, p)
        }
        Check::ProductCompat => {
            let g = group(params)?;
            Ok(Outcome::Pass(product_compatibility_sweep(
                &g,
                need(params.i, "i")?,
                need(params.j, "j")?,
                p,
            )?))
        }
    }
}

fn idempotent(n: usize, p: Prime) -> Result<Outcome> {
    if let Some(skip) = too_big(n, p) {
        return Ok(skip);
    }
    let mut witness = idempotent_check(n, p)?;
    if n > 0 && general_linear_order(n, p) <= REGULAR_LIMIT {
        let regular = PermutationModule::regular(n, p);
        let rank = summand(
            &LocalRationals::new(p),
            &IdempotentKind::Steinberg,
            &regular,
        )?
        .rank as u64;
        let expected = p.power(binomial2(n));
        witness["regular_rank"] = json!(rank);
        witness["expected_rank"] = json!(expected);
        if rank != expected {
            return Err(Error::verification("idempotent", witness));
        }
    }
    Ok(Outcome::Pass(witness))
}

fn assoc_comm(i: usize, j: usize, k: usize, p: Prime) -> Result<Outcome> {
    if let Some(skip) = too_big(i + j + k, p) {
        return Ok(skip);
    }
    let q = LocalRationals::new(p);
    let associativity = associativity_check(&q, i, j, k, test_module(i + j + k, p).as_ref())?;
    let two = test_module(i + j, p);
    let commutativity = commutativity_report(&q, i, j, two.as_ref())?;
    let witness = json!({
        "associativity": associativity,
        "commutativity": commutativity,
        "commutativity_module": two.label(),
    });
    if commutativity.commutes {
        Ok(Outcome::Pass(witness))
    } else {
        Err(Error::verification("assoc-comm", witness))
    }
}

fn flag_homology(n: usize, p: Prime) -> Result<Outcome> {
    let b = OrderComplex::build(ComplexMode::B, n, p)?;
    let reduced = b.homology(true)?;
    let diamond = OrderComplex::build(ComplexMode::BDiamond, n, p)?.homology(true)?;
    let rank = p.power(binomial2(n)) as usize;
    let top = n as i64 - 2;
    let witness = json!({
        "vertices": b.vertices().len(),
        "simplices": (0..=b.dimension().max(-1)).map(|k| b.count(k)).collect::<Vec<_>>(),
        "expected_rank": rank,
        "degree": top,
        "reduced": reduced,
        "suspension": diamond,
    });
    if reduced.is_concentrated(top, rank) && diamond.is_concentrated(top + 1, rank) {
        Ok(Outcome::Pass(witness))
    } else {
        Err(Error::verification("flag-homology", witness))
    }
}

fn unipotent_fixed(n: usize, p: Prime) -> Result<Outcome> {
    if let Some(skip) = too_big(n, p) {
        return Ok(skip);
    }
    let classes = p_subgroups_up_to_conjugacy(n, p)?;
    let mut rows = Vec::new();
    for u in &classes {
        rows.push(unipotent_fixed_check(u)?);
    }
    Ok(Outcome::Pass(
        json!({ "classes": classes.len(), "subgroups": rows }),
    ))
}

fn lemma17(n: usize, d: usize, p: Prime, max_degree: usize) -> Result<Outcome> {
    let mut rows = serde_json::Map::new();
    for f in [
        CoefficientFunctor::Sphere,
        CoefficientFunctor::Torus(Duality::Homology),
        CoefficientFunctor::Torus(Duality::PlainSubstitution),
    ] {
        rows.insert(f.to_string(), lemma17_rank_check(n, d, p, f, max_degree)?);
    }
    Ok(Outcome::Pass(Value::Object(rows)))
}

fn fixed_point_index(h: &PGroup, n: usize, p: Prime) -> Result<Outcome> {
    if let Some(skip) = too_big(n, p) {
        return Ok(skip);
    }
    let gl = enumerate_group(&GroupKind::General, n, p)?;
    let general = fixed_point_index_report(h, &gl)?;
    let abelian = fixed_point_index_report(h, &VectorGroup { n, p })?;
    let summands = contractible_summand_report(h, n, p)?;
    Ok(Outcome::Pass(
        json!({ "general_linear": general, "vector_group": abelian, "summands": summands }),
    ))
}
