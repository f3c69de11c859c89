use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::json;

use super::homs::{enumerate_homs, VectorGroup};
use super::pgroup::PGroup;
use crate::error::{Error, Result};
use crate::linalg::gaussian_binomial;

/// A normal subgroup with elementary abelian quotient, and the rank `d` of that quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyMember {
    pub elements: Vec<usize>,
    pub d: usize,
}

/// The family `𝒞` of a `p`-group, sorted by decreasing size.
#[derive(Clone, Debug, Serialize)]
pub struct FrattiniFamily {
    members: Vec<FamilyMember>,
    minimal: usize,
}

impl FrattiniFamily {
    pub fn members(&self) -> &[FamilyMember] {
        &self.members
    }

    /// The least member `F`.
    pub fn minimal(&self) -> &FamilyMember {
        &self.members[self.minimal]
    }

    pub fn find(&self, elements: &[usize]) -> Option<&FamilyMember> {
        self.members.iter().find(|m| m.elements == elements)
    }

    /// `d(H ∩ K) = d(H) + d(K)`.
    pub fn transverse(&self, h: &FamilyMember, k: &FamilyMember) -> bool {
        let meet = intersect(&h.elements, &k.elements);
        self.find(&meet).is_some_and(|m| m.d == h.d + k.d)
    }
}

pub(crate) fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter()
        .copied()
        .filter(|x| b.binary_search(x).is_ok())
        .collect()
}

fn log_p(mut m: usize, p: usize) -> usize {
    let mut k = 0;
    while m > 1 {
        m /= p;
        k += 1;
    }
    k
}

/// `G/H` is elementary abelian iff every `p`-th power and every commutator lies in `H`.
fn has_elementary_quotient(g: &PGroup, h: &[usize], p: usize) -> bool {
    let inside = |x: usize| h.binary_search(&x).is_ok();
    (0..g.order()).all(|x| {
        inside(g.pow(x, p))
            && (0..g.order()).all(|y| inside(g.mul(g.mul(x, y), g.inv(g.mul(y, x)))))
    })
}

/// Builds `𝒞`, checking closure under intersection and the order-reversing bijection with
/// subspaces of `Hom(G, F_p)` given by annihilators.
pub fn frattini_family(g: &PGroup) -> Result<FrattiniFamily> {
    let Some(prime) = g.prime() else {
        let whole = FamilyMember {
            elements: vec![0],
            d: 0,
        };
        return Ok(FrattiniFamily {
            members: vec![whole],
            minimal: 0,
        });
    };
    let p = prime.get() as usize;
    let mut members: Vec<FamilyMember> = g
        .subgroups()
        .into_iter()
        .filter(|h| g.is_normal(h) && has_elementary_quotient(g, h, p))
        .map(|h| FamilyMember {
            d: log_p(g.order() / h.len(), p),
            elements: h,
        })
        .collect();
    members.sort_by(|a, b| a.d.cmp(&b.d).then_with(|| a.elements.cmp(&b.elements)));

    let keys: BTreeSet<&Vec<usize>> = members.iter().map(|m| &m.elements).collect();
    for a in &members {
        for b in &members {
            let meet = intersect(&a.elements, &b.elements);
            if !keys.contains(&meet) {
                return Err(Error::verification(
                    "frattini-family",
                    json!({ "clause": "intersection", "left": a.elements, "right": b.elements }),
                ));
            }
        }
    }
    let minimal = members
        .iter()
        .position(|m| m.d == members.iter().map(|x| x.d).max().unwrap())
        .unwrap();
    let top = members[minimal].d;
    if members.iter().filter(|m| m.d == top).count() != 1 {
        return Err(Error::verification(
            "frattini-family",
            json!({ "clause": "unique minimum" }),
        ));
    }

    let characters = enumerate_homs(g, &VectorGroup { n: 1, p: prime });
    let annihilator = |h: &[usize]| -> BTreeSet<usize> {
        (0..characters.len())
            .filter(|&c| h.iter().all(|&x| characters[c].image(x)[0] == 0))
            .collect()
    };
    let annihilators: Vec<BTreeSet<usize>> =
        members.iter().map(|m| annihilator(&m.elements)).collect();
    let subspace_count: u64 = (0..=top).map(|k| gaussian_binomial(top, k, prime)).sum();
    let distinct: BTreeSet<&BTreeSet<usize>> = annihilators.iter().collect();
    if members.len() as u64 != subspace_count || distinct.len() != members.len() {
        return Err(Error::verification(
            "frattini-family",
            json!({ "clause": "bijection", "members": members.len(), "subspaces": subspace_count }),
        ));
    }
    for (a, m) in annihilators.iter().zip(&members) {
        if a.len() != prime.power(m.d as u32) as usize {
            return Err(Error::verification(
                "frattini-family",
                json!({ "clause": "annihilator size", "subgroup": m.elements, "size": a.len() }),
            ));
        }
    }
    for (i, a) in members.iter().enumerate() {
        for (j, b) in members.iter().enumerate() {
            let below = b
                .elements
                .iter()
                .all(|x| a.elements.binary_search(x).is_ok());
            if below != annihilators[i].is_subset(&annihilators[j]) {
                return Err(Error::verification(
                    "frattini-family",
                    json!({ "clause": "order reversal", "left": a.elements, "right": b.elements }),
                ));
            }
        }
    }
    Ok(FrattiniFamily { members, minimal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivariant::pgroup::{make_pgroup, GroupSpec};

    fn family(s: &str) -> FrattiniFamily {
        frattini_family(&make_pgroup(&s.parse::<GroupSpec>().unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn klein_four_uses_every_subgroup() {
        let f = family("C2^2");
        assert_eq!(f.members().len(), 5);
        assert_eq!(f.minimal().elements, vec![0]);
        assert_eq!(f.minimal().d, 2);
    }

    #[test]
    fn cyclic_four() {
        let f = family("C4");
        let ds: Vec<usize> = f.members().iter().map(|m| m.d).collect();
        assert_eq!(ds, vec![0, 1]);
        assert_eq!(f.minimal().elements.len(), 2);
    }

    #[test]
    fn quaternion_minimum_is_the_center() {
        let q = make_pgroup(&GroupSpec::Quaternion8).unwrap();
        let f = frattini_family(&q).unwrap();
        assert_eq!(f.minimal().elements, q.center());
        assert_eq!(f.minimal().d, 2);
    }

    #[test]
    fn heisenberg_and_trivial() {
        let f = family("Heis3");
        assert_eq!((f.minimal().elements.len(), f.minimal().d), (3, 2));
        assert_eq!(f.members().len(), 1 + 4 + 1);
        assert_eq!(family("1").members().len(), 1);
    }

    #[test]
    fn coordinate_kernels_are_transverse() {
        let f = family("C2^2");
        let lines: Vec<&FamilyMember> = f.members().iter().filter(|m| m.d == 1).collect();
        assert!(f.transverse(lines[0], lines[1]));
        assert!(!f.transverse(lines[0], lines[0]));
    }
}
