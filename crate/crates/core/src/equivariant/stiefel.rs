use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::family::{frattini_family, intersect, FamilyMember, FrattiniFamily};
use super::homs::{enumerate_homs, GroupHom, VectorGroup};
use super::pgroup::PGroup;
use crate::error::{Error, Result};
use crate::linalg::{block_diagonal, stiefel_count, GfMatrix, Prime};
use crate::module::{ModuleData, PermutationModule, PointAction, Tensor};
use crate::torus::{
    steinberg_dim_series, stiefel_prediction, CoefficientFunctor, DimensionSeries, Duality,
    GradedGLModule,
};

type Hom = GroupHom<Vec<u8>>;

fn require_prime(g: &PGroup, p: Prime) -> Result<()> {
    match g.prime() {
        Some(q) if q != p => Err(Error::InvalidParameters(format!(
            "{} is a {q}-group, not a {p}-group",
            g.name()
        ))),
        _ => Ok(()),
    }
}

/// Greedy ordered basis of `G/H`: the least element outside the current span, repeatedly,
/// drawn from `pool` (all of `G` when `None`).
pub fn quotient_basis(g: &PGroup, h: &[usize], pool: Option<&[usize]>) -> Result<Vec<usize>> {
    let candidates: Vec<usize> = pool.map_or_else(|| (0..g.order()).collect(), <[usize]>::to_vec);
    let mut basis = Vec::new();
    let mut span = h.to_vec();
    for x in candidates {
        if span.len() == g.order() {
            break;
        }
        if span.binary_search(&x).is_err() {
            basis.push(x);
            let gens: Vec<usize> = h.iter().chain(&basis).copied().collect();
            span = g.generated(&gens);
        }
    }
    if span.len() != g.order() {
        return Err(Error::InvalidParameters(
            "the pool does not generate the quotient".into(),
        ));
    }
    Ok(basis)
}

/// The `n × d` matrix whose columns are the values of `f` on `basis`.
pub fn stiefel_point(f: &Hom, basis: &[usize], n: usize, p: Prime) -> GfMatrix {
    let mut m = GfMatrix::zero(p, n, basis.len());
    for (c, &b) in basis.iter().enumerate() {
        for (r, &v) in f.image(b).iter().enumerate() {
            m.set(r, c, v);
        }
    }
    m
}

/// A generating set of `GL_n(F_p)`: all transvections `I + E_ij` and all `diag(λ, 1, …, 1)`.
pub fn gl_generators(n: usize, p: Prime) -> Vec<GfMatrix> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut t = GfMatrix::identity(p, n);
                t.set(i, j, 1);
                out.push(t);
            }
        }
    }
    if n > 0 {
        for lambda in 2..p.get() as u8 {
            let mut d = GfMatrix::identity(p, n);
            d.set(0, 0, lambda);
            out.push(d);
        }
    }
    out
}

fn compose(a: &GfMatrix, f: &Hom) -> Vec<Vec<u8>> {
    f.images().iter().map(|v| a.apply(v)).collect()
}

fn partition_by_kernel(homs: &[Hom]) -> BTreeMap<Vec<usize>, Vec<&Hom>> {
    let mut out: BTreeMap<Vec<usize>, Vec<&Hom>> = BTreeMap::new();
    for f in homs {
        out.entry(f.kernel()).or_default().push(f);
    }
    out
}

/// Partitions `Hom(G, F_p^n)` by kernel and identifies each part with a Stiefel variety.
pub fn hom_partition_check(g: &PGroup, n: usize, p: Prime) -> Result<Value> {
    require_prime(g, p)?;
    let family = frattini_family(g)?;
    let homs = enumerate_homs(g, &VectorGroup { n, p });
    let parts = partition_by_kernel(&homs);
    for kernel in parts.keys() {
        if family.find(kernel).is_none() {
            return Err(Error::verification(
                "hom-partition",
                json!({ "clause": "kernel outside the family", "kernel": kernel }),
            ));
        }
    }
    let generators = gl_generators(n, p);
    let mut rows = Vec::new();
    let mut predicted_total = 0u64;
    for member in family.members() {
        let part = parts.get(&member.elements).map_or(&[][..], Vec::as_slice);
        let expected = if member.d <= n {
            stiefel_count(n, member.d, p)
        } else {
            0
        };
        predicted_total += expected;
        let mismatch = |clause: &str, extra: Value| {
            Error::verification(
                "hom-partition",
                json!({ "clause": clause, "subgroup": member.elements, "d": member.d, "detail": extra }),
            )
        };
        if part.len() as u64 != expected {
            return Err(mismatch(
                "cardinality",
                json!({ "homs": part.len(), "stiefel": expected }),
            ));
        }
        if part.is_empty() {
            rows.push(json!({ "subgroup": member.elements, "d": member.d, "homs": 0, "summand": "empty" }));
            continue;
        }
        let basis = quotient_basis(g, &member.elements, None)?;
        let points: BTreeMap<&Hom, GfMatrix> = part
            .iter()
            .map(|&f| (f, stiefel_point(f, &basis, n, p)))
            .collect();
        let distinct: BTreeSet<&GfMatrix> = points.values().collect();
        if distinct.len() != points.len() {
            return Err(mismatch("injectivity", Value::Null));
        }
        if let Some(m) = distinct.iter().find(|m| m.rank() != member.d) {
            return Err(mismatch("rank", json!(m.to_string())));
        }
        let by_images: BTreeMap<Vec<Vec<u8>>, &GfMatrix> = points
            .iter()
            .map(|(f, m)| (f.images().to_vec(), m))
            .collect();
        for a in &generators {
            for (f, m) in &points {
                let moved = by_images
                    .get(&compose(a, f))
                    .ok_or_else(|| mismatch("closure", json!(a.to_string())))?;
                if **moved != a.mul(m) {
                    return Err(mismatch(
                        "equivariance",
                        json!({ "generator": a.to_string(), "point": m.to_string() }),
                    ));
                }
            }
        }
        rows.push(json!({ "subgroup": member.elements, "d": member.d, "homs": part.len(), "basis": basis }));
    }
    let d_min = family.minimal().d as u32;
    let expected_total = (p.get() as u64).pow(n as u32 * d_min);
    if homs.len() as u64 != predicted_total || homs.len() as u64 != expected_total {
        return Err(Error::verification(
            "hom-partition",
            json!({ "clause": "total", "homs": homs.len(), "stiefel_sum": predicted_total, "power": expected_total }),
        ));
    }
    Ok(
        json!({ "group": g.name(), "homs": homs.len(), "stiefel_sum": predicted_total, "parts": rows }),
    )
}

fn hom_module(
    n: usize,
    p: Prime,
    homs: &[&Hom],
    generators: &[usize],
    label: String,
) -> ModuleData {
    let points = homs
        .iter()
        .map(|f| stiefel_point(f, generators, n, p))
        .collect();
    Arc::new(PermutationModule::from_points(
        n,
        p,
        points,
        PointAction::LeftMultiply,
        label,
    ))
}

fn graded_with(points: ModuleData, coefficients: &GradedGLModule) -> Result<GradedGLModule> {
    let pieces = coefficients
        .pieces()
        .iter()
        .map(|piece| Ok(Arc::new(Tensor::new(points.clone(), piece.clone())?) as ModuleData))
        .collect::<Result<_>>()?;
    GradedGLModule::new(coefficients.rank(), coefficients.prime(), pieces)
}

fn theorem15_for(
    g: &PGroup,
    family: &FrattiniFamily,
    homs: &[Hom],
    n: usize,
    p: Prime,
    max_degree: usize,
    duality: Duality,
) -> Result<Value> {
    let functor = CoefficientFunctor::Torus(duality);
    let coefficients = functor.module(n, p, max_degree);
    let parts = partition_by_kernel(homs);
    let gens = g.generators().to_vec();
    let rows: Vec<(Value, DimensionSeries, Option<usize>)> = family
        .members()
        .par_iter()
        .map(|member| {
            let part = parts.get(&member.elements).map_or(&[][..], Vec::as_slice);
            if member.d > n {
                let zero = DimensionSeries(vec![0; max_degree + 1]);
                let row = json!({ "subgroup": member.elements, "d": member.d, "summand": "empty", "series": zero.0 });
                return Ok((row, zero, (!part.is_empty()).then_some(0)));
            }
            let label = format!("F_{p}[Hom_H]");
            let computed = steinberg_dim_series(&graded_with(hom_module(n, p, part, &gens, label), &coefficients)?)?;
            let predicted = stiefel_prediction(functor, n, member.d, p, max_degree)?;
            let diff = computed.first_difference(&predicted);
            let row = json!({
                "subgroup": member.elements,
                "d": member.d,
                "homs": part.len(),
                "series": computed.0,
                "predicted": predicted.0,
                "equal": diff.is_none(),
            });
            Ok((row, computed, diff))
        })
        .collect::<Result<_>>()?;
    let all: Vec<&Hom> = homs.iter().collect();
    let total = steinberg_dim_series(&graded_with(
        hom_module(n, p, &all, &gens, format!("F_{p}[Hom]")),
        &coefficients,
    )?)?;
    let sum = rows
        .iter()
        .fold(DimensionSeries(vec![0; max_degree + 1]), |acc, r| {
            acc.add(&r.1)
        });
    let failures: Vec<Value> = rows
        .iter()
        .filter_map(|(row, _, diff)| {
            diff.map(|k| json!({ "subgroup": row["subgroup"], "degree": k }))
        })
        .collect();
    Ok(json!({
        "table": rows.iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
        "aggregate": { "sum": sum.0, "total": total.0, "equal": sum == total },
        "failures": failures,
    }))
}

/// Degree-wise mod-`p` dimension identity behind the Stiefel splitting, per member of `𝒞`
/// and in aggregate, under both conventions for the torus action.
pub fn theorem15_graded_check(g: &PGroup, n: usize, p: Prime, max_degree: usize) -> Result<Value> {
    require_prime(g, p)?;
    if n == 0 {
        return Err(Error::InvalidParameters("n must be positive".into()));
    }
    let family = frattini_family(g)?;
    let homs = enumerate_homs(g, &VectorGroup { n, p });
    let mut conventions = serde_json::Map::new();
    let mut ok = true;
    for duality in [Duality::Homology, Duality::PlainSubstitution] {
        let report = theorem15_for(g, &family, &homs, n, p, max_degree, duality)?;
        ok &= report["failures"].as_array().is_some_and(Vec::is_empty)
            && report["aggregate"]["equal"] == true;
        conventions.insert(duality.to_string(), report);
    }
    let witness = json!({
        "scope": "graded mod-p homology dimensions",
        "group": g.name(),
        "homs": homs.len(),
        "conventions": conventions,
    });
    if ok {
        Ok(witness)
    } else {
        Err(Error::verification("theorem15", witness))
    }
}

fn coordinates_mod(
    g: &PGroup,
    h: &[usize],
    basis: &[usize],
    x: usize,
    p: usize,
) -> Option<Vec<u8>> {
    let d = basis.len();
    (0..p.pow(d as u32)).find_map(|code| {
        let coeffs: Vec<usize> = (0..d).map(|i| code / p.pow(i as u32) % p).collect();
        let word = basis
            .iter()
            .zip(&coeffs)
            .fold(0, |acc, (&b, &c)| g.mul(acc, g.pow(b, c)));
        h.binary_search(&g.mul(g.inv(word), x))
            .is_ok()
            .then(|| coeffs.iter().map(|&c| c as u8).collect())
    })
}

/// Block inclusion of Stiefel points agrees with pairing homomorphisms, for transverse
/// `H, K ∈ 𝒞`, after the quotient bases are adapted to the pair.
pub fn product_compatibility_check(
    g: &PGroup,
    m: usize,
    n: usize,
    h: &[usize],
    k: &[usize],
    p: Prime,
) -> Result<Value> {
    require_prime(g, p)?;
    let family = frattini_family(g)?;
    let member = |s: &[usize]| -> Result<FamilyMember> {
        let mut sorted = s.to_vec();
        sorted.sort_unstable();
        family
            .find(&sorted)
            .cloned()
            .ok_or_else(|| Error::InvalidParameters(format!("{s:?} is not in the family")))
    };
    let (hm, km) = (member(h)?, member(k)?);
    if !family.transverse(&hm, &km) {
        return Err(Error::InvalidParameters(
            "the subgroups are not transverse".into(),
        ));
    }
    let meet = family
        .find(&intersect(&hm.elements, &km.elements))
        .cloned()
        .unwrap();
    let u = quotient_basis(g, &hm.elements, Some(&km.elements))?;
    let w = quotient_basis(g, &km.elements, Some(&hm.elements))?;
    let joint: Vec<usize> = u.iter().chain(&w).copied().collect();
    let gens: Vec<usize> = meet.elements.iter().chain(&joint).copied().collect();
    if joint.len() != meet.d || g.generated(&gens).len() != g.order() {
        return Err(Error::verification(
            "product-compat",
            json!({ "clause": "adapted basis", "u": u, "w": w }),
        ));
    }

    let left: Vec<Hom> = enumerate_homs(g, &VectorGroup { n: m, p })
        .into_iter()
        .filter(|f| f.kernel() == hm.elements)
        .collect();
    let right: Vec<Hom> = enumerate_homs(g, &VectorGroup { n, p })
        .into_iter()
        .filter(|f| f.kernel() == km.elements)
        .collect();

    // the canonical basis differs from the adapted one by a fixed change of basis
    let q = p.get() as usize;
    let change = |sub: &[usize], canonical: &[usize], adapted: &[usize]| -> Result<GfMatrix> {
        let mut c = GfMatrix::zero(p, adapted.len(), canonical.len());
        for (j, &b) in canonical.iter().enumerate() {
            let coords = coordinates_mod(g, sub, adapted, b, q)
                .ok_or_else(|| Error::Internal("basis element outside the span".into()))?;
            for (i, v) in coords.into_iter().enumerate() {
                c.set(i, j, v);
            }
        }
        Ok(c)
    };
    let h_canonical = quotient_basis(g, &hm.elements, None)?;
    let k_canonical = quotient_basis(g, &km.elements, None)?;
    let ch = change(&hm.elements, &h_canonical, &u)?;
    let ck = change(&km.elements, &k_canonical, &w)?;

    for f2 in &right {
        if stiefel_point(f2, &k_canonical, n, p) != stiefel_point(f2, &w, n, p).mul(&ck) {
            return Err(Error::verification(
                "product-compat",
                json!({ "clause": "change of basis", "side": "right" }),
            ));
        }
    }
    let mut pairs = 0usize;
    for f1 in &left {
        let a = stiefel_point(f1, &u, m, p);
        if stiefel_point(f1, &h_canonical, m, p) != a.mul(&ch) {
            return Err(Error::verification(
                "product-compat",
                json!({ "clause": "change of basis", "side": "left" }),
            ));
        }
        for f2 in &right {
            let b = stiefel_point(f2, &w, n, p);
            let paired: Vec<Vec<u8>> = (0..g.order())
                .map(|x| f1.image(x).iter().chain(f2.image(x)).copied().collect())
                .collect();
            let f = GroupHom::from_images(paired);
            if f.kernel() != meet.elements {
                return Err(Error::verification(
                    "product-compat",
                    json!({ "clause": "paired kernel", "kernel": f.kernel() }),
                ));
            }
            let block = block_diagonal(&a, &b)?;
            let point = stiefel_point(&f, &joint, m + n, p);
            if point != block || block.rank() != meet.d {
                return Err(Error::verification(
                    "product-compat",
                    json!({ "clause": "block inclusion", "left": a.to_string(), "right": b.to_string(), "paired": point.to_string() }),
                ));
            }
            pairs += 1;
        }
    }
    let expected = if hm.d <= m && km.d <= n {
        stiefel_count(m, hm.d, p) * stiefel_count(n, km.d, p)
    } else {
        0
    };
    if pairs as u64 != expected {
        return Err(Error::verification(
            "product-compat",
            json!({ "clause": "pair count", "pairs": pairs, "expected": expected }),
        ));
    }
    Ok(json!({
        "group": g.name(),
        "h": hm.elements,
        "k": km.elements,
        "d": [hm.d, km.d, meet.d],
        "adapted_bases": { "h": u, "k": w },
        "canonical_bases": { "h": h_canonical, "k": k_canonical },
        "pairs_checked": pairs,
    }))
}

/// Every transverse pair in `𝒞` with `d(H) ≤ m` and `d(K) ≤ n`, checked in turn.
pub fn product_compatibility_sweep(g: &PGroup, m: usize, n: usize, p: Prime) -> Result<Value> {
    let family = frattini_family(g)?;
    let mut checked = Vec::new();
    for a in family.members() {
        for b in family.members() {
            if a.d <= m && b.d <= n && family.transverse(a, b) {
                let w = product_compatibility_check(g, m, n, &a.elements, &b.elements, p)?;
                checked.push(json!({ "h": a.elements, "k": b.elements, "pairs_checked": w["pairs_checked"] }));
            }
        }
    }
    Ok(json!({ "group": g.name(), "m": m, "n": n, "transverse_pairs": checked }))
}
