use std::collections::HashMap;

use serde_json::{json, Value};

use super::complex::{ComplexMode, OrderComplex};
use crate::error::{Error, Result};
use crate::linalg::{
    all_subgroups, enumerate_group, normalizer, GfMatrix, GroupKind, MatrixGroup, Subspace,
};

/// `{v : g v = v for every generator g}`.
pub fn common_fixed_space(
    generators: &[GfMatrix],
    n: usize,
    p: crate::linalg::Prime,
) -> Result<Subspace> {
    let mut stacked = GfMatrix::zero(p, 0, n);
    for g in generators {
        let mut shifted = g.clone();
        for k in 0..n {
            shifted.set(k, k, p.sub(g.get(k, k), 1));
        }
        stacked = stacked.vstack(&shifted)?;
    }
    Ok(Subspace::span(&stacked.null_space()))
}

/// Contractibility of the poset of `U`-invariant proper nonzero subspaces for a nontrivial
/// `p`-group `U`, and of its further fixed points under every subgroup of the normalizer.
pub fn unipotent_fixed_check(u: &MatrixGroup) -> Result<Value> {
    let (n, p) = (u.degree(), u.prime());
    let order = u.order();
    if order == 1 {
        return Err(Error::InvalidParameters(
            "the subgroup must be nontrivial".into(),
        ));
    }
    let q = p.get() as usize;
    let mut rest = order;
    while rest.is_multiple_of(q) {
        rest /= q;
    }
    if rest != 1 {
        return Err(Error::NotPGroup(order));
    }
    let gens = u.generators();
    let fixed = common_fixed_space(&gens, n, p)?;
    if !fixed.is_proper_nonzero() {
        return Err(Error::verification(
            "unipotent-fixed",
            json!({ "clause": "fixed space", "dimension": fixed.dim(), "ambient": n }),
        ));
    }

    let poset = OrderComplex::build(ComplexMode::FixedSubposet(gens.clone()), n, p)?;
    let homology = poset.homology(true)?;
    if !homology.is_acyclic() {
        return Err(Error::verification(
            "unipotent-fixed",
            json!({ "clause": "fixed poset", "homology": homology, "vertices": poset.vertices().len() }),
        ));
    }

    for w in poset.vertices() {
        let meet = fixed.intersection(w)?;
        let ok = !meet.is_zero() && poset.vertex_index(&meet).is_some();
        if !ok {
            return Err(Error::verification(
                "unipotent-fixed",
                json!({ "clause": "retraction", "subspace": w.to_string(), "meet": meet.to_string() }),
            ));
        }
    }
    for s in poset.simplices(1) {
        let (a, b) = (&poset.vertices()[s[0]], &poset.vertices()[s[1]]);
        if !fixed
            .intersection(a)?
            .is_subspace_of(&fixed.intersection(b)?)
        {
            return Err(Error::verification(
                "unipotent-fixed",
                json!({ "clause": "monotone", "edge": [a.to_string(), b.to_string()] }),
            ));
        }
    }

    let gl = enumerate_group(&GroupKind::General, n, p)?;
    let norm = normalizer(u, &gl)?;
    let subgroups = all_subgroups(&norm);
    let mut by_vertices: HashMap<Vec<Subspace>, bool> = HashMap::new();
    for gamma in &subgroups {
        let mut all = gens.clone();
        all.extend(gamma.generators());
        let sub = OrderComplex::build(ComplexMode::FixedSubposet(all), n, p)?;
        let key = sub.vertices().to_vec();
        if let Some(&acyclic) = by_vertices.get(&key) {
            debug_assert!(acyclic);
            continue;
        }
        let h = sub.homology(true)?;
        if !h.is_acyclic() {
            let gamma_gens: Vec<String> =
                gamma.generators().iter().map(GfMatrix::to_string).collect();
            return Err(Error::verification(
                "unipotent-fixed",
                json!({ "clause": "normalizer fixed points", "subgroup": gamma_gens, "homology": h }),
            ));
        }
        by_vertices.insert(key, true);
    }

    Ok(json!({
        "order": order,
        "generators": gens.iter().map(GfMatrix::to_string).collect::<Vec<_>>(),
        "fixed_space": fixed.to_string(),
        "fixed_poset_vertices": poset.vertices().len(),
        "fixed_poset_dimension": poset.dimension(),
        "normalizer_order": norm.order(),
        "normalizer_subgroups": subgroups.len(),
        "distinct_fixed_posets": by_vertices.len(),
    }))
}
